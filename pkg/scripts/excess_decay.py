#!/usr/bin/env python3
"""Empirical decay of the excess-variant convergence monitor.

Runs the excess rule on a few fixtures, prints the total-excess trace a^t,
the per-round decay ratio, and the rounds actually needed to fall below
delta next to the geometric estimate log(delta)/log(alpha). The geometric
rate treats alpha as the per-round shrink factor; receipts that land above
the threshold at neighbors can slow the decay, so the measured ratio is the
honest number.
"""

import math
import random
import sys

sys.path.insert(0, "src")

from chargediff.diffusion import DiffusionConfig, Variant
from chargediff.engine import compute_bounds, run_query
from chargediff.generators import erdos_renyi_connected, preferential_attachment, star


def show(name, g, seed, alpha, eps, delta):
    cfg = DiffusionConfig(
        alpha=alpha, epsilon=eps, variant=Variant.EXCESS, delta=delta, max_iterations=5000
    )
    res = run_query(g, seed, cfg)
    trace = res.excess_trace
    ratios = [b / a for a, b in zip(trace, trace[1:]) if a > 0]
    bound = compute_bounds(g, cfg).excess_stop_bound
    print(f"== {name} (alpha={alpha}, epsilon={eps}, delta={delta}) ==")
    head = ", ".join(f"{a:.5f}" for a in trace[:8])
    print(f"a^t: {head}{', ...' if len(trace) > 8 else ''}")
    if ratios:
        print(f"mean decay ratio: {sum(ratios) / len(ratios):.4f} (alpha = {alpha})")
    print(
        f"stopped after {res.iterations} rounds; "
        f"log(delta)/log(alpha) = {bound:.2f}; terminated={res.terminated}"
    )
    print()


def main() -> None:
    rng = random.Random(42)
    show("star, 10 leaves, seed center", star(10), 0, 0.5, 0.1, 0.01)
    show("random sparse graph, n=80", erdos_renyi_connected(80, 4.0, rng), 5, 0.5, 0.08, 8e-4)
    show("hub-heavy graph, n=120", preferential_attachment(120, 2, rng), 0, 0.4, 0.06, 6e-4)
    print("the star decays at exactly alpha per round (single transmitter), hitting")
    print(f"the log(delta)/log(alpha) estimate, e.g. {math.log(0.01) / math.log(0.5):.2f} -> 7 rounds.")
    print("on wider graphs receipts push neighbors back above the threshold, so the")
    print("measured ratio sits between alpha and 1 and the stop comes later than the")
    print("geometric estimate; the trace itself stays non-increasing throughout.")


if __name__ == "__main__":
    main()
