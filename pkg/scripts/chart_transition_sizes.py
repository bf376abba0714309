"""Size of the subtraction-free transition maps on the big cell of A1 or A2.

For a sample of chart pairs, extract the transition map symbolically and
report the number of monomials in numerators and denominators.
"""

from __future__ import annotations

import argparse
import random
import statistics
import time

from totpos import chevalley, gmonoid
from totpos.coxeter import cartan_type


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--type", default="A2", choices=["A1", "A2"])
    parser.add_argument("--pairs", type=int, default=40)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()

    graph = cartan_type(args.type)
    w0 = graph.weyl.longest_element()
    charts = gmonoid.charts(graph, w0, w0)
    canonical = gmonoid.canonical_chart(graph, w0, w0)
    rng = random.Random(args.seed)
    print(f"{args.type}: {len(charts)} charts of the big cell, {len(canonical)} coordinates")

    sizes, free = [], 0
    t0 = time.perf_counter()
    for _ in range(args.pairs):
        h = rng.choice(charts)
        t = chevalley.transition_map(graph, canonical, h)
        sizes.append(t.nterms())
        free += t.subtraction_free
    elapsed = time.perf_counter() - t0
    print(f"canonical -> random chart, {args.pairs} samples in {elapsed:.1f}s")
    print(f"  terms: min {min(sizes)}, median {statistics.median(sizes)}, max {max(sizes)}")
    print(f"  subtraction-free certificates: {free}/{args.pairs}")


if __name__ == "__main__":
    main()
