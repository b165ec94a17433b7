import asyncio
import logging
import sys

from permpoly.permpoly import main
from permpoly.types import (
    FieldException,
    PermArrayException,
    PermpolyUsageException,
    PolyException,
    SearchException,
)


def _main() -> None:
    try:
        # Exit code of 1 is reserved for exception-based exits and oracle mismatches.
        sys.exit(asyncio.get_event_loop().run_until_complete(main()))
    except PermpolyUsageException as e:
        logging.error(str(e))
        sys.exit(2)
    except FieldException as e:
        logging.error(f"Field error: {e}")
        sys.exit(3)
    except PolyException as e:
        logging.error(f"Polynomial error: {e}")
        sys.exit(4)
    except SearchException as e:
        logging.error(f"Search failed: {e}")
        sys.exit(5)
    except PermArrayException as e:
        logging.error(f"Permutation array error: {e}")
        sys.exit(6)


if __name__ == "__main__":
    _main()
