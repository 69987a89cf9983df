"""Shared random constructions for the test suite."""

import numpy as np

from vncat import Arrow, UnitaryRep, dagger


def random_matrix(rng, rows, cols):
    return rng.standard_normal((rows, cols)) + 1j * rng.standard_normal((rows, cols))


def random_arrow(rng, dom, cod, ctx):
    h = ctx.hdim
    return Arrow(dom, cod, ctx, random_matrix(rng, cod.dim * h, dom.dim * h))


def random_unitary(rng, n):
    q, r = np.linalg.qr(random_matrix(rng, n, n))
    return q * (np.diag(r) / np.abs(np.diag(r)))


def random_closed_set(rng, universe, count):
    """Dagger-closed generator list: random arrows plus their daggers."""
    objs = universe.objects
    out = []
    for _ in range(count):
        dom = objs[rng.integers(len(objs))]
        cod = objs[rng.integers(len(objs))]
        g = random_arrow(rng, dom, cod, universe.ctx)
        out.extend((g, dagger(g)))
    return out


def conjugated_regular_rep(group, rng):
    """Unitary rep of any finite group: the regular one twisted by a random unitary."""
    n = group.order
    w = random_unitary(rng, n)
    mats = []
    for g in range(n):
        p = np.zeros((n, n), dtype=complex)
        for j in range(n):
            p[group.mul(g, j), j] = 1.0
        mats.append(w @ p @ w.conj().T)
    return UnitaryRep(group, tuple(mats))
