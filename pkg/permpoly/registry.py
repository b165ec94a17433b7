import configparser
import logging
import os
from typing import Dict, List, Optional, Tuple

from sympy import factorint

from permpoly.types import FieldSpec, PermpolyUsageException

REGISTRY_ENV_VAR = "PERMPOLY_REGISTRY_PATH"
DATA_DIR = os.path.join(os.path.dirname(os.path.abspath(__file__)), "data")
BUNDLED_REGISTRY = os.path.join(DATA_DIR, "registry.ini")


def parse_coeffs(text: str) -> Tuple[int, ...]:
    """
    Parse a comma separated coefficient list such as "1,3,3".
    """
    try:
        return tuple(int(c) for c in text.replace(" ", "").split(",") if c != "")
    except ValueError:
        raise PermpolyUsageException(f'"{text}" is not a comma separated list of integers')


class Registry:
    """
    Default primitive polynomial for each supported field order. The bundled file is read
    first and the file named by PERMPOLY_REGISTRY_PATH, if any, overrides entries in it.
    """

    specs: Dict[int, FieldSpec]

    def __init__(self, paths: List[str]):
        self.specs = {}
        parser = configparser.ConfigParser()
        read = parser.read(paths)
        for path in paths:
            if path not in read:
                logging.warning(f"Registry file {path} could not be read")

        for section in parser.sections():
            try:
                q = int(section)
                spec = FieldSpec(
                    p=parser.getint(section, "p"),
                    m=parser.getint(section, "m"),
                    prim_poly=parse_coeffs(parser.get(section, "prim_poly")),
                )
            except (ValueError, configparser.Error) as e:
                raise PermpolyUsageException(f"Bad registry entry [{section}]: {e}")
            if spec.q != q:
                raise PermpolyUsageException(
                    f"Registry entry [{section}] describes GF({spec.p}^{spec.m}) = GF({spec.q})"
                )
            self.specs[q] = spec

    def spec_for(self, q: int) -> FieldSpec:
        if q not in self.specs:
            raise PermpolyUsageException(
                f"No primitive polynomial registered for q={q}; pass --prim-poly or add it"
                f" to the file named by {REGISTRY_ENV_VAR}"
            )
        return self.specs[q]

    def orders(self) -> List[int]:
        return sorted(self.specs)


def load_registry(override_path: Optional[str] = None) -> Registry:
    paths = [BUNDLED_REGISTRY]
    override = override_path or os.environ.get(REGISTRY_ENV_VAR, "")
    if override:
        paths.append(os.path.expanduser(override))
    return Registry(paths)


def resolve_spec(
    registry: Registry,
    q: Optional[int] = None,
    p: Optional[int] = None,
    m: Optional[int] = None,
    prim_poly: Optional[str] = None,
) -> FieldSpec:
    """
    Work out the field from whichever of q, (p, m) and prim_poly the user gave.
    """
    if p is not None:
        m = m or 1
        if q is not None and q != p**m:
            raise PermpolyUsageException(f"--q {q} doesn't match --p {p} --m {m}")
        q = p**m
    elif m is not None:
        raise PermpolyUsageException("--m requires --p")

    if q is None:
        raise PermpolyUsageException("Need either --q or --p/--m to pick a field")

    if prim_poly is None:
        return registry.spec_for(q)

    coeffs = parse_coeffs(prim_poly)
    if p is None:
        factors = factorint(q)
        if len(factors) == 1:
            ((base, exp),) = factors.items()
            p, m = int(base), int(exp)
        else:
            # Not a prime power; building the field reports it
            p, m = q, 1
    return FieldSpec(p=p, m=m or 1, prim_poly=coeffs)
