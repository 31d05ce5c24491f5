"""Shared test helpers."""

import random

from smoothfano.lattice import determinant


def random_unimodular(rng: random.Random, d: int, bound: int = 3, steps: int = 6):
    """A random integer matrix with determinant +-1 and entries in
    [-bound, bound], built from elementary row operations."""
    while True:
        m = [[int(i == j) for j in range(d)] for i in range(d)]
        for _ in range(steps):
            op = rng.randrange(3)
            i, j = rng.sample(range(d), 2) if d > 1 else (0, 0)
            if op == 0 and d > 1:
                k = rng.choice((-1, 1))
                m[i] = [a + k * b for a, b in zip(m[i], m[j])]
            elif op == 1 and d > 1:
                m[i], m[j] = m[j], m[i]
            else:
                m[i] = [-a for a in m[i]]
        if all(abs(a) <= bound for row in m for a in row):
            assert abs(determinant(m)) == 1
            return m


def transform(m, points):
    return [tuple(sum(a * b for a, b in zip(row, x)) for row in m) for x in points]
