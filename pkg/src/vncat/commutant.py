"""Commutants and double commutants over a finite object universe.

The commutant of a set of generator arrows consists of every arrow whose
two interchange defects against every generator vanish.  Both defects are
linear in the unknown arrow, so each hom pair reduces to the kernel of a
stacked constraint matrix, found by SVD.  Hom-space bases are orthonormal
in the trace inner product, ordered by the SVD and phase-normalized so the
largest-magnitude entry of each basis vector is real positive; identical
inputs therefore produce identical bases.

Generator sets must be closed under dagger.  Closure is checked at the
level of spans (the constraints only see the span), so a computed basis of
a dagger-closed subspace passes even when no individual basis arrow is the
dagger of another.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Sequence

import numpy as np

from .category import Arrow, Context, Obj, dagger
from .linalg import as_matrix, kron, nullspace, swap_perm

__all__ = [
    "ObjectUniverse",
    "HomSubspace",
    "FinPremonCat",
    "standard_universe",
    "span_category",
    "span_basis",
    "star_closure",
    "is_star_closed",
    "commutant",
    "double_commutant",
    "VnReport",
    "is_von_neumann",
    "subspace_contains",
    "subspace_equal",
    "endo_algebra",
    "classical_commutant",
    "generated_star_algebra",
]

# Row budget before the accumulated constraint stack is collapsed onto the
# surviving kernel; bounds memory without changing the result.
_ROW_BUDGET = 8192


@dataclass(frozen=True)
class ObjectUniverse:
    """Finite list of objects closed over by the engine; must hold a unit."""

    objects: tuple[Obj, ...]
    ctx: Context

    def __post_init__(self):
        object.__setattr__(self, "objects", tuple(self.objects))
        if not self.objects:
            raise ValueError("universe needs at least one object")
        names = [o.name for o in self.objects]
        if len(set(names)) != len(names):
            raise ValueError("universe object names must be unique")
        if not any(o.dim == 1 for o in self.objects):
            raise ValueError("universe must contain a unit object of dim 1")

    @property
    def unit(self) -> Obj:
        return next(o for o in self.objects if o.dim == 1)

    def pairs(self):
        return [(a, b) for a in self.objects for b in self.objects]


def span_category(gens: Sequence[Arrow], universe: ObjectUniverse, tol: float = 1e-9) -> FinPremonCat:
    """Category whose hom spaces are the spans of the given arrows."""
    by_pair: dict = {}
    for g in gens:
        if g.ctx != universe.ctx:
            raise ValueError("generator context differs from the universe context")
        by_pair.setdefault((g.dom, g.cod), []).append(g)
    homs = {}
    for d, c in universe.pairs():
        arrows = by_pair.get((d, c), [])
        basis = span_basis([a.mat for a in arrows], tol) if arrows else []
        homs[(d, c)] = HomSubspace(
            d, c, tuple(Arrow(d, c, universe.ctx, m) for m in basis)
        )
    return FinPremonCat(universe, homs)


def standard_universe(ctx: Context, dims=(1, 2, 3), gens: Sequence[Arrow] = ()) -> ObjectUniverse:
    """Universe with one object per default dim plus all generator endpoints."""
    objs: list[Obj] = []
    names: set[str] = set()
    for g in gens:
        for o in (g.dom, g.cod):
            if o.name not in names:
                objs.append(o)
                names.add(o.name)
    for d in sorted(set(dims)):
        if any(o.dim == d for o in objs):
            continue
        name = "I" if d == 1 else f"X{d}"
        if name in names:
            name = f"U{d}"
        objs.append(Obj(name, d))
        names.add(name)
    if not any(o.dim == 1 for o in objs):
        objs.append(Obj("I", 1))
    objs.sort(key=lambda o: (o.dim, o.name))
    return ObjectUniverse(tuple(objs), ctx)


@dataclass(frozen=True)
class HomSubspace:
    dom: Obj
    cod: Obj
    basis: tuple[Arrow, ...] = field(default_factory=tuple)

    @property
    def dim(self) -> int:
        return len(self.basis)


@dataclass(frozen=True)
class FinPremonCat:
    """Hom subspaces for every ordered pair of universe objects."""

    universe: ObjectUniverse
    homs: dict

    def hom(self, dom: Obj, cod: Obj) -> HomSubspace:
        return self.homs[(dom, cod)]

    def dims(self) -> list[tuple[Obj, Obj, int]]:
        return [(d, c, self.homs[(d, c)].dim) for d, c in self.universe.pairs()]

    def all_arrows(self) -> list[Arrow]:
        out = []
        for d, c in self.universe.pairs():
            out.extend(self.homs[(d, c)].basis)
        return out


# -- vec helpers (column stacking everywhere) --------------------------------


def _vec(m: np.ndarray) -> np.ndarray:
    return m.reshape(-1, order="F")


def _unvec(v: np.ndarray, rows: int, cols: int) -> np.ndarray:
    return v.reshape(rows, cols, order="F")


def _phase_normalize(v: np.ndarray) -> np.ndarray:
    k = int(np.argmax(np.abs(v)))
    a = v[k]
    if abs(a) == 0.0:
        return v
    return v * (a.conjugate() / abs(a))


def span_basis(mats: Sequence[np.ndarray], tol: float = 1e-9) -> list[np.ndarray]:
    """Orthonormal basis (trace inner product) for the span of ``mats``."""
    mats = [as_matrix(m) for m in mats]
    if not mats:
        return []
    shape = mats[0].shape
    if any(m.shape != shape for m in mats):
        raise ValueError("span_basis needs matrices of a single shape")
    cols = np.column_stack([_vec(m) for m in mats])
    u, s, _ = np.linalg.svd(cols, full_matrices=False)
    if s.size == 0 or s[0] == 0.0:
        return []
    keep = s > tol * s[0]
    return [_unvec(_phase_normalize(u[:, i]), *shape) for i in range(int(keep.sum()))]


# -- dagger closure of generator sets -----------------------------------------


def _group_by_hom(gens: Sequence[Arrow]) -> dict:
    table: dict = {}
    for g in gens:
        table.setdefault((g.dom, g.cod), []).append(g)
    return table


def _missing_daggers(gens: Sequence[Arrow], tol: float) -> list[Arrow]:
    table = _group_by_hom(gens)
    spans = {
        key: span_basis([g.mat for g in lst], tol) for key, lst in table.items()
    }
    missing = []
    for g in gens:
        gd = dagger(g)
        basis = spans.get((gd.dom, gd.cod), [])
        v = _vec(gd.mat)
        r = v.copy()
        for b in basis:
            bv = _vec(b)
            r = r - bv * (bv.conj() @ r)
        if np.linalg.norm(r) > tol * max(1.0, np.linalg.norm(v)):
            missing.append(gd)
    return missing


def is_star_closed(gens: Sequence[Arrow], tol: float = 1e-9) -> bool:
    """True when each generator's dagger lies in the span at the flipped pair."""
    return not _missing_daggers(gens, tol)


def star_closure(gens: Sequence[Arrow], tol: float = 1e-9) -> list[Arrow]:
    """Extend ``gens`` with whatever daggers their spans are missing."""
    return list(gens) + _missing_daggers(gens, tol)


# -- constraint assembly -------------------------------------------------------
#
# Every term of both interchange defects has the shape F -> CL (I_k (x) F) CR.
# On column-stacked F (p x q) that linear map has the dense matrix
#   M[(b*m + a), (y*p + x)] = sum_u CL[a, u*p + x] * CR[u*q + y, b],
# assembled below with one einsum per term.


def _sandwich(cl: np.ndarray, cr: np.ndarray, k: int, p: int, q: int) -> np.ndarray:
    m = cl.shape[0]
    n = cr.shape[1]
    cl3 = cl.reshape(m, k, p)
    cr3 = cr.reshape(k, q, n)
    out = np.einsum("aux,uyb->bayx", cl3, cr3)
    return np.ascontiguousarray(out).reshape(n * m, q * p)


@lru_cache(maxsize=None)
def _swap_eye(m: int, n: int, h: int) -> np.ndarray:
    """swap_perm(m, n) (x) eye(h), cached read-only."""
    s = kron(swap_perm(m, n), np.eye(h))
    s.setflags(write=False)
    return s


@lru_cache(maxsize=None)
def _eye(n: int) -> np.ndarray:
    e = np.eye(n, dtype=np.complex128)
    e.setflags(write=False)
    return e


def _eye_kron(k: int, g: np.ndarray) -> np.ndarray:
    """eye(k) (x) g by direct block writes; np.kron is slow at this size."""
    m, n = g.shape
    out = np.zeros((k * m, k * n), dtype=np.complex128)
    idx = np.arange(k)
    out.reshape(k, m, k, n)[idx, :, idx, :] = g
    return out


def _whisker_right_mat(gmat: np.ndarray, dx: int, dy: int, da: int, h: int) -> np.ndarray:
    return _swap_eye(da, dy, h) @ _eye_kron(da, gmat) @ _swap_eye(dx, da, h)


def _constraint_blocks(g: Arrow, dom: Obj, cod: Obj):
    """Constraint matrices (zeta, eta) that a candidate dom -> cod must kill."""
    h = g.ctx.hdim
    dx, dy = g.dom.dim, g.cod.dim
    db, dd = dom.dim, cod.dim
    p, q = dd * h, db * h
    gm = np.asarray(g.mat)

    wrb = _whisker_right_mat(gm, dx, dy, db, h)
    wrd = _whisker_right_mat(gm, dx, dy, dd, h)
    zeta = _sandwich(_eye(dy * p), wrb, dy, p, q) - _sandwich(wrd, _eye(dx * q), dx, p, q)

    cl3 = _eye_kron(dd, gm) @ _swap_eye(dx, dd, h)
    cr3 = _swap_eye(db, dx, h)
    cl4 = _swap_eye(dy, dd, h)
    cr4 = _swap_eye(db, dy, h) @ _eye_kron(db, gm)
    eta = _sandwich(cl3, cr3, dx, p, q) - _sandwich(cl4, cr4, dy, p, q)
    return zeta, eta


def _solve_pair(gens: Sequence[Arrow], dom: Obj, cod: Obj, ctx: Context, tol: float) -> HomSubspace:
    h = ctx.hdim
    n = (dom.dim * h) * (cod.dim * h)
    basis_cols = np.eye(n, dtype=np.complex128)

    pending: list[np.ndarray] = []
    pending_rows = 0

    def collapse():
        nonlocal basis_cols, pending, pending_rows
        if not pending:
            return
        stack = np.vstack(pending)
        pending = []
        pending_rows = 0
        k = stack @ basis_cols
        kern = nullspace(k, tol, atol=tol)
        basis_cols = basis_cols @ kern

    for g in gens:
        if basis_cols.shape[1] == 0:
            break
        zeta, eta = _constraint_blocks(g, dom, cod)
        pending.extend((zeta, eta))
        pending_rows += zeta.shape[0] + eta.shape[0]
        if pending_rows >= _ROW_BUDGET:
            collapse()
    collapse()

    arrows = tuple(
        Arrow(dom, cod, ctx, _unvec(_phase_normalize(basis_cols[:, i]), cod.dim * h, dom.dim * h))
        for i in range(basis_cols.shape[1])
    )
    return HomSubspace(dom, cod, arrows)


def commutant(
    gens: Sequence[Arrow],
    universe: ObjectUniverse,
    tol: float = 1e-9,
    *,
    auto_close: bool = False,
    workers: int = 1,
) -> FinPremonCat:
    """Arrows between universe objects that interchange with every generator.

    ``gens`` must be dagger-closed up to span; pass ``auto_close=True`` to
    have the missing daggers appended instead of rejected.  The empty set
    yields the full hom space at every pair.
    """
    gens = list(gens)
    for g in gens:
        if g.ctx != universe.ctx:
            raise ValueError("generator context differs from the universe context")
    if auto_close:
        gens = star_closure(gens, tol)
    elif not is_star_closed(gens, tol):
        raise ValueError("generator set is not dagger-closed; pass auto_close=True to extend it")

    pairs = universe.pairs()

    def solve(pair):
        d, c = pair
        return _solve_pair(gens, d, c, universe.ctx, tol)

    if workers == 1:
        solved = [solve(p) for p in pairs]
    else:
        max_workers = workers if workers > 0 else None
        with ThreadPoolExecutor(max_workers=max_workers) as pool:
            solved = list(pool.map(solve, pairs))
    return FinPremonCat(universe, {pair: sub for pair, sub in zip(pairs, solved)})


def double_commutant(
    gens: Sequence[Arrow],
    universe: ObjectUniverse,
    tol: float = 1e-9,
    *,
    auto_close: bool = False,
    workers: int = 1,
) -> FinPremonCat:
    """Commutant of the commutant; always contains the span of ``gens``."""
    first = commutant(gens, universe, tol, auto_close=auto_close, workers=workers)
    return commutant(first.all_arrows(), universe, tol, workers=workers)


@dataclass(frozen=True)
class VnReport:
    passed: bool
    failures: tuple[tuple[Obj, Obj, int, int], ...]
    closure: FinPremonCat


def is_von_neumann(cat: FinPremonCat, tol: float = 1e-9, workers: int = 1) -> VnReport:
    """Whether ``cat`` equals its own double commutant pair by pair.

    The category's hom bases are dagger-closed automatically before the
    closure is taken, so non-self-adjoint spans are probed rather than
    rejected; they simply fail the comparison.
    """
    closure = double_commutant(
        cat.all_arrows(), cat.universe, tol, auto_close=True, workers=workers
    )
    failures = []
    for d, c in cat.universe.pairs():
        a = cat.homs[(d, c)]
        b = closure.homs[(d, c)]
        if not subspace_equal(a, b, tol):
            failures.append((d, c, a.dim, b.dim))
    return VnReport(not failures, tuple(failures), closure)


# -- subspace comparisons ------------------------------------------------------


def subspace_contains(a: HomSubspace, b: HomSubspace, tol: float = 1e-9) -> bool:
    """True when span(b) is inside span(a); hom pairs must match."""
    if a.dom != b.dom or a.cod != b.cod:
        raise ValueError("subspaces live on different hom pairs")
    if b.dim == 0:
        return True
    abasis = span_basis([f.mat for f in a.basis], tol)
    for f in b.basis:
        v = _vec(f.mat)
        r = v.copy()
        for bb in abasis:
            bv = _vec(bb)
            r = r - bv * (bv.conj() @ r)
        if np.linalg.norm(r) > tol * max(1.0, np.linalg.norm(v)):
            return False
    return True


def subspace_equal(a: HomSubspace, b: HomSubspace, tol: float = 1e-9) -> bool:
    return subspace_contains(a, b, tol) and subspace_contains(b, a, tol)


def endo_algebra(cat: FinPremonCat) -> list[np.ndarray]:
    """Raw hidden-space matrices of the unit endomorphism basis."""
    unit = cat.universe.unit
    return [np.asarray(f.mat) for f in cat.homs[(unit, unit)].basis]


# -- classical matrix-algebra oracles -----------------------------------------
#
# Independent route used by tests: ordinary commutants of square matrices,
# with no premonoidal machinery involved.


def classical_commutant(mats: Sequence[np.ndarray], tol: float = 1e-9) -> list[np.ndarray]:
    """Basis of {s : s m = m s for all m}; input must be star-closed in span."""
    mats = [as_matrix(m) for m in mats]
    if not mats:
        raise ValueError("classical_commutant needs at least one matrix")
    n = mats[0].shape[0]
    if any(m.shape != (n, n) for m in mats):
        raise ValueError("classical_commutant needs square matrices of one size")
    sb = span_basis(mats, tol)
    for m in mats:
        v = _vec(m.conj().T)
        r = v.copy()
        for b in sb:
            bv = _vec(b)
            r = r - bv * (bv.conj() @ r)
        if np.linalg.norm(r) > tol * max(1.0, np.linalg.norm(v)):
            raise ValueError("matrix list is not closed under conjugate transpose")
    eye = np.eye(n)
    rows = [kron(m.T, eye) - kron(eye, m) for m in mats]
    kern = nullspace(np.vstack(rows), tol, atol=tol)
    return [_unvec(_phase_normalize(kern[:, i]), n, n) for i in range(kern.shape[1])]


def generated_star_algebra(mats: Sequence[np.ndarray], tol: float = 1e-9) -> list[np.ndarray]:
    """Basis of the unital *-algebra generated by ``mats`` (fixed point of products)."""
    mats = [as_matrix(m) for m in mats]
    if not mats:
        raise ValueError("generated_star_algebra needs at least one matrix")
    n = mats[0].shape[0]
    if any(m.shape != (n, n) for m in mats):
        raise ValueError("generated_star_algebra needs square matrices of one size")
    basis = span_basis(
        [np.eye(n, dtype=np.complex128)] + mats + [m.conj().T for m in mats], tol
    )
    while True:
        products = [a @ b for a in basis for b in basis]
        grown = span_basis(basis + products, tol)
        if len(grown) == len(basis):
            return grown
        basis = grown
