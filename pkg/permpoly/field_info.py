import argparse
from typing import List

from permpoly.field import Field
from permpoly.permpoly import get_field


def frobenius_cycles(f: Field) -> List[List[int]]:
    """
    Orbits of x -> x^p on the whole field, each listed in visiting order from its smallest
    element.
    """
    seen = set()
    cycles = []
    for x in range(f.q):
        if x in seen:
            continue
        cycle = [x]
        y = f.frobenius(x)
        while y != x:
            cycle.append(y)
            y = f.frobenius(y)
        seen.update(cycle)
        cycles.append(cycle)
    return cycles


async def main(args: argparse.Namespace) -> int:
    f = get_field(args)
    print(f"{f} = GF({f.p}^{f.m}), prim_poly {f.spec.prim_poly_text()}")
    print("index exponent vector frobenius")
    for x in f.elements():
        exponent = "-" if x == 0 else str(f.log(x))
        vector = "".join(str(c) for c in f.element_vector(x))
        print(f"{x} {exponent} {vector} {f.frobenius(x)}")

    cycles = frobenius_cycles(f)
    print(f"G-cycles: {len(cycles)}")
    for cycle in cycles:
        print(" -> ".join(str(x) for x in cycle))
    return 0
