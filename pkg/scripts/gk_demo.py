"""A random element of the big cell of G(Q>0) as a totally positive matrix.

Prints the matrix, its smallest minor and the number of distinct positive
real roots of its characteristic polynomial.
"""

from __future__ import annotations

import argparse
import random
from fractions import Fraction

from totpos import gmonoid, matrix_oracle
from totpos.coxeter import type_A
from totpos.semifield import PosRational


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--n", type=int, default=3, help="matrix size")
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()

    graph = type_A(args.n - 1)
    w0 = graph.weyl.longest_element()
    chart = gmonoid.canonical_chart(graph, w0, w0)
    rng = random.Random(args.seed)
    coords = [PosRational(Fraction(rng.randint(1, 9), rng.randint(1, 9))) for _ in chart]
    g = gmonoid.evaluate_chart(graph, chart, coords)
    m = matrix_oracle.evaluate(g)

    print(gmonoid.format_element(g))
    width = max(len(str(x)) for row in m.rows for x in row)
    for row in m.rows:
        print("  " + "  ".join(str(x).rjust(width) for x in row))
    rows, cols, value = min(m.minors(), key=lambda r: r[2])
    print(f"smallest minor: rows {rows} cols {cols} = {value}")
    p = matrix_oracle.charpoly(m)
    print(f"det = {m.det()}, positive real eigenvalues: {matrix_oracle.sturm_positive_roots(p)} of {m.n}")


if __name__ == "__main__":
    main()
