"""Shared generators for the test suite."""

import numpy as np

from towerglue.errors import InvalidInput
from towerglue.rotation_graph import RotationGraph


def random_rotation_graph(rng, max_vertices=5, degrees=(4, 6)):
    """Random rotation system with even degrees, or None if the draw is invalid."""
    nv = int(rng.integers(1, max_vertices + 1))
    deg = rng.choice(degrees, nv)
    slots = [f"h{v}_{j}" for v in range(nv) for j in range(deg[v])]
    order = list(rng.permutation(len(slots)))
    pairs = [(slots[order[i]], slots[order[i + 1]]) for i in range(0, len(order), 2)]
    cycles = []
    for v in range(nv):
        cyc = [f"h{v}_{j}" for j in range(deg[v])]
        rng.shuffle(cyc)
        cycles.append(cyc)
    try:
        return RotationGraph.from_cycles(pairs, cycles)
    except InvalidInput:
        return None
