from typing import Callable, Dict

import pytest

from permpoly.field import Field, build_field
from permpoly.registry import load_registry


@pytest.fixture(scope="session")
def gf() -> Callable[[int], Field]:
    """
    Fields built from the bundled registry, shared across the session.
    """
    registry = load_registry()
    cache: Dict[int, Field] = {}

    def build(q: int) -> Field:
        if q not in cache:
            cache[q] = build_field(registry.spec_for(q))
        return cache[q]

    return build
