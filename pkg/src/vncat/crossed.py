"""Discrete crossed products by finite group actions on the hidden factor.

A unitary representation of a finite group G on the hidden space H acts on
arrows by conjugation of the hidden factor.  The crossed product enlarges
the hidden space to H (x) l2(G) and is generated by two families: the
image of the original generators twisted fibrewise by the action, and the
left regular translations of the group.  The double commutant of their
union over the enlarged context is the crossed product category.

Basis convention on the enlarged hidden space: index ``i*|G| + k`` for
``h_i (x) delta_k`` (hidden factor major, group minor).
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations

import numpy as np

from .category import Arrow, Context, compose, dagger, unit_obj, whisker_left
from .commutant import FinPremonCat, ObjectUniverse, double_commutant
from .linalg import as_matrix, kron, operator_norm

__all__ = [
    "FiniteGroup",
    "trivial_group",
    "cyclic_group",
    "symmetric_group",
    "UnitaryRep",
    "trivial_rep",
    "regular_rep",
    "CrossedContext",
    "act",
    "lambda_embed",
    "pi_embed",
    "covariance_residual",
    "crossed_product",
]


@dataclass(frozen=True)
class FiniteGroup:
    """Finite group as labelled elements with a multiplication table.

    ``table[i][j]`` is the index of ``elements[i] * elements[j]``.  The
    constructor checks closure shape, a two-sided identity, inverses, and
    associativity, so a bad table never gets further than construction.
    """

    elements: tuple[str, ...]
    table: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        object.__setattr__(self, "elements", tuple(self.elements))
        object.__setattr__(self, "table", tuple(tuple(r) for r in self.table))
        n = len(self.elements)
        if n == 0:
            raise ValueError("group needs at least one element")
        if len(set(self.elements)) != n:
            raise ValueError("group element labels must be distinct")
        if len(self.table) != n or any(len(r) != n for r in self.table):
            raise ValueError("multiplication table must be square of the element count")
        for r in self.table:
            if any(not (0 <= v < n) for v in r):
                raise ValueError("multiplication table entries must index elements")
        ident = None
        for e in range(n):
            if all(self.table[e][j] == j and self.table[j][e] == j for j in range(n)):
                ident = e
                break
        if ident is None:
            raise ValueError("multiplication table has no two-sided identity")
        object.__setattr__(self, "_identity", ident)
        inv = [None] * n
        for i in range(n):
            for j in range(n):
                if self.table[i][j] == ident and self.table[j][i] == ident:
                    inv[i] = j
                    break
            if inv[i] is None:
                raise ValueError(f"element {self.elements[i]!r} has no inverse")
        object.__setattr__(self, "_inverse", tuple(inv))
        for i in range(n):
            for j in range(n):
                for k in range(n):
                    if self.table[self.table[i][j]][k] != self.table[i][self.table[j][k]]:
                        raise ValueError("multiplication table is not associative")

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def identity(self) -> int:
        return self._identity

    def mul(self, i: int, j: int) -> int:
        return self.table[i][j]

    def inverse(self, i: int) -> int:
        return self._inverse[i]

    def index(self, g) -> int:
        """Accepts an element label or an index; returns the index."""
        if isinstance(g, str):
            try:
                return self.elements.index(g)
            except ValueError:
                raise ValueError(f"unknown group element {g!r}") from None
        i = int(g)
        if not (0 <= i < self.order):
            raise ValueError(f"group element index {i} out of range")
        return i


def trivial_group() -> FiniteGroup:
    return FiniteGroup(("e",), ((0,),))


def cyclic_group(n: int) -> FiniteGroup:
    if n < 1:
        raise ValueError("cyclic group needs n >= 1")
    labels = tuple("e" if k == 0 else f"r{k}" for k in range(n))
    table = tuple(tuple((i + j) % n for j in range(n)) for i in range(n))
    return FiniteGroup(labels, table)


def symmetric_group(n: int) -> FiniteGroup:
    """Permutations of n points; composition applies the right factor first."""
    if not 1 <= n <= 6:
        raise ValueError("symmetric group supported for 1 <= n <= 6")
    perms = sorted(permutations(range(n)))
    idx = {p: i for i, p in enumerate(perms)}
    labels = tuple("".join(str(v) for v in p) for p in perms)
    table = tuple(
        tuple(idx[tuple(p[q[i]] for i in range(n))] for q in perms) for p in perms
    )
    return FiniteGroup(labels, table)


@dataclass(frozen=True)
class UnitaryRep:
    """Unitary matrices indexed like the group elements.

    Validation checks unitarity, the identity, and the homomorphism law on
    all element pairs; ``validate=False`` skips those checks and exists for
    negative controls that need a deliberately broken family.
    """

    group: FiniteGroup
    mats: tuple[np.ndarray, ...]
    validate: bool = True

    def __post_init__(self):
        mats = tuple(as_matrix(m) for m in self.mats)
        if len(mats) != self.group.order:
            raise ValueError("need exactly one matrix per group element")
        d = mats[0].shape[0]
        if any(m.shape != (d, d) for m in mats):
            raise ValueError("representation matrices must be square of one size")
        frozen = []
        for m in mats:
            m = m.copy()
            m.setflags(write=False)
            frozen.append(m)
        object.__setattr__(self, "mats", tuple(frozen))
        if self.validate:
            eye = np.eye(d)
            for lbl, m in zip(self.group.elements, self.mats):
                if operator_norm(m.conj().T @ m - eye) > 1e-10 * max(1.0, operator_norm(m)):
                    raise ValueError(f"matrix for {lbl!r} is not unitary")
            if operator_norm(self.mats[self.group.identity] - eye) > 1e-10:
                raise ValueError("identity element must map to the identity matrix")
            for i in range(self.group.order):
                for j in range(self.group.order):
                    want = self.mats[self.group.mul(i, j)]
                    got = self.mats[i] @ self.mats[j]
                    if operator_norm(got - want) > 1e-10 * max(1.0, operator_norm(want)):
                        raise ValueError(
                            "matrices do not respect the multiplication table at "
                            f"({self.group.elements[i]!r}, {self.group.elements[j]!r})"
                        )

    @property
    def hdim(self) -> int:
        return self.mats[0].shape[0]

    def mat(self, g) -> np.ndarray:
        return self.mats[self.group.index(g)]


def trivial_rep(group: FiniteGroup, hdim: int) -> UnitaryRep:
    eye = np.eye(hdim, dtype=np.complex128)
    return UnitaryRep(group, tuple(eye for _ in range(group.order)))


def regular_rep(group: FiniteGroup) -> UnitaryRep:
    """Left regular representation by exact permutation matrices."""
    return UnitaryRep(group, tuple(_translation(group, g) for g in range(group.order)))


def _translation(group: FiniteGroup, g: int) -> np.ndarray:
    n = group.order
    p = np.zeros((n, n), dtype=np.complex128)
    for j in range(n):
        p[group.mul(g, j), j] = 1.0
    return p


@dataclass(frozen=True)
class CrossedContext:
    """Base context plus acting group; ``tilde`` is the enlarged context."""

    base: Context
    group: FiniteGroup

    @property
    def tilde(self) -> Context:
        return Context(self.base.hdim * self.group.order)


def _check_rep(rep: UnitaryRep, ctx: Context):
    if rep.hdim != ctx.hdim:
        raise ValueError("representation dimension differs from the hidden dimension")


def act(g, f: Arrow, rep: UnitaryRep) -> Arrow:
    """Conjugate the hidden factor of ``f`` by the unitary of ``g``."""
    _check_rep(rep, f.ctx)
    u = rep.mat(g)
    left = kron(np.eye(f.cod.dim), u)
    right = kron(np.eye(f.dom.dim), u.conj().T)
    return Arrow(f.dom, f.cod, f.ctx, left @ f.mat @ right)


def lambda_embed(g, cc: CrossedContext) -> Arrow:
    """Left translation by ``g`` as a unit endo-arrow of the enlarged context."""
    gi = cc.group.index(g)
    unit = unit_obj()
    mat = kron(np.eye(cc.base.hdim), _translation(cc.group, gi))
    return Arrow(unit, unit, cc.tilde, mat)


def pi_embed(f: Arrow, rep: UnitaryRep, cc: CrossedContext) -> Arrow:
    """Fibrewise twisted copy of ``f`` on the enlarged hidden space.

    The fibre over group index k carries ``act(k^-1, f)``; restricted to
    unit endo-arrows this is the classical formula sending the section
    ``zeta`` to ``g -> (g^-1 . a)(zeta(g))``.
    """
    if f.ctx != cc.base:
        raise ValueError("arrow context differs from the crossed base context")
    _check_rep(rep, cc.base)
    if rep.group is not cc.group and rep.group != cc.group:
        raise ValueError("representation group differs from the crossed group")
    n = cc.group.order
    h = cc.base.hdim
    out = np.zeros(
        (f.cod.dim * h * n, f.dom.dim * h * n), dtype=np.complex128
    )
    for k in range(n):
        acted = act(cc.group.inverse(k), f, rep).mat
        ekk = np.zeros((n, n), dtype=np.complex128)
        ekk[k, k] = 1.0
        out += kron(acted, ekk)
    return Arrow(f.dom, f.cod, cc.tilde, out)


def covariance_residual(g, f: Arrow, rep: UnitaryRep, cc: CrossedContext) -> float:
    """Operator-norm defect of pi(g . f) = (id (x) lam(g)) pi(f) (id (x) lam(g))*.

    Zero (to rounding) for every valid representation; breaks visibly when
    the representation fails the homomorphism law.
    """
    lam = lambda_embed(g, cc)
    lhs = pi_embed(act(g, f, rep), rep, cc)
    conj_l = whisker_left(f.cod, lam)
    conj_r = dagger(whisker_left(f.dom, lam))
    rhs = compose(conj_l, compose(pi_embed(f, rep, cc), conj_r))
    return operator_norm(lhs.mat - rhs.mat)


def crossed_product(
    gens,
    rep: UnitaryRep,
    universe: ObjectUniverse,
    tol: float = 1e-9,
    *,
    auto_close: bool = False,
    workers: int = 1,
) -> FinPremonCat:
    """Double commutant of the twisted generators plus all group translations.

    Returns a category over the enlarged context; its universe carries the
    same objects as the input universe.
    """
    _check_rep(rep, universe.ctx)
    cc = CrossedContext(universe.ctx, rep.group)
    tilde_universe = ObjectUniverse(universe.objects, cc.tilde)
    embedded = [pi_embed(f, rep, cc) for f in gens]
    embedded += [lambda_embed(g, cc) for g in range(rep.group.order)]
    return double_commutant(
        embedded, tilde_universe, tol, auto_close=auto_close, workers=workers
    )
