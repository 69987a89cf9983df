"""Premonoidal category of finite-dimensional Hilbert spaces over a hidden factor.

An arrow X -> Y is a complex matrix acting on X (x) H for a fixed hidden
space H of dimension ``hdim``; composition is matrix product and the dagger
is the conjugate transpose.  The tensor X (x) A on objects is honest, but on
arrows only the two whiskerings exist, and the interchange law fails in
general.  Arrows for which it never fails are exactly those of the form
``fhat (x) id_H``, and ``central_factor`` recovers ``fhat``.

Basis convention: lexicographic with the left factor major, so the basis
vector ``e_i (x) h_j`` of X (x) H sits at index ``i*hdim + j``.  Unit and
associativity isomorphisms are identities in this encoding (dim-1 factors
are elided when forming tensor objects), which keeps whisker matrices
literal Kronecker conjugates.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .linalg import as_matrix, factor_out_identity, kron, operator_norm, swap_perm

__all__ = [
    "Context",
    "Obj",
    "Arrow",
    "unit_obj",
    "tensor_obj",
    "arrow",
    "identity_arrow",
    "central_arrow",
    "compose",
    "dagger",
    "whisker_left",
    "whisker_right",
    "rtimes",
    "ltimes",
    "interchange_residuals",
    "symmetry",
    "pair_swap",
    "pair_swap_family",
    "central_factor",
    "cstar_residuals",
    "arrow_close",
]


@dataclass(frozen=True)
class Context:
    """Fixes the hidden space dimension shared by every arrow."""

    hdim: int

    def __post_init__(self):
        if self.hdim < 1:
            raise ValueError("hdim must be a positive integer")


@dataclass(frozen=True)
class Obj:
    """A named finite-dimensional space; equality is by (name, dim)."""

    name: str
    dim: int

    def __post_init__(self):
        if self.dim < 1:
            raise ValueError(f"object {self.name!r} needs dim >= 1")


def unit_obj() -> Obj:
    return Obj("I", 1)


def tensor_obj(a: Obj, b: Obj) -> Obj:
    """Tensor product object; dim-1 factors are elided (strict unit)."""
    if a.dim == 1:
        return b
    if b.dim == 1:
        return a
    return Obj(f"{a.name}*{b.name}", a.dim * b.dim)


@dataclass(frozen=True, eq=False)
class Arrow:
    """An arrow dom -> cod: a (cod.dim*hdim) x (dom.dim*hdim) matrix."""

    dom: Obj
    cod: Obj
    ctx: Context
    mat: np.ndarray

    def __post_init__(self):
        m = as_matrix(self.mat)
        want = (self.cod.dim * self.ctx.hdim, self.dom.dim * self.ctx.hdim)
        if m.shape != want:
            raise ValueError(
                f"arrow {self.dom.name} -> {self.cod.name} needs shape {want}, got {m.shape}"
            )
        m = m.copy()
        m.setflags(write=False)
        object.__setattr__(self, "mat", m)

    def norm(self) -> float:
        return operator_norm(self.mat)

    def __add__(self, other: "Arrow") -> "Arrow":
        _same_hom(self, other)
        return Arrow(self.dom, self.cod, self.ctx, self.mat + other.mat)

    def __sub__(self, other: "Arrow") -> "Arrow":
        _same_hom(self, other)
        return Arrow(self.dom, self.cod, self.ctx, self.mat - other.mat)

    def __mul__(self, scalar) -> "Arrow":
        return Arrow(self.dom, self.cod, self.ctx, self.mat * complex(scalar))

    __rmul__ = __mul__

    def __neg__(self) -> "Arrow":
        return self * (-1.0)


def _same_hom(f: Arrow, g: Arrow):
    if f.ctx != g.ctx or f.dom != g.dom or f.cod != g.cod:
        raise ValueError("arrows live in different hom spaces")


def arrow(dom: Obj, cod: Obj, ctx: Context, mat) -> Arrow:
    return Arrow(dom, cod, ctx, as_matrix(mat))


def identity_arrow(a: Obj, ctx: Context) -> Arrow:
    return Arrow(a, a, ctx, np.eye(a.dim * ctx.hdim, dtype=np.complex128))


def central_arrow(fhat, dom: Obj, cod: Obj, ctx: Context) -> Arrow:
    """The arrow ``fhat (x) id_H`` for a plain cod.dim x dom.dim matrix."""
    m = as_matrix(fhat)
    if m.shape != (cod.dim, dom.dim):
        raise ValueError(f"expected shape {(cod.dim, dom.dim)}, got {m.shape}")
    return Arrow(dom, cod, ctx, kron(m, np.eye(ctx.hdim)))


def compose(g: Arrow, f: Arrow) -> Arrow:
    """g after f."""
    if f.ctx != g.ctx:
        raise ValueError("context mismatch")
    if f.cod != g.dom:
        raise ValueError(f"cannot compose: {f.cod} != {g.dom}")
    return Arrow(f.dom, g.cod, f.ctx, g.mat @ f.mat)


def dagger(f: Arrow) -> Arrow:
    return Arrow(f.cod, f.dom, f.ctx, f.mat.conj().T)


def whisker_left(a: Obj, f: Arrow) -> Arrow:
    """id_a (x) f : a (x) dom -> a (x) cod."""
    return Arrow(
        tensor_obj(a, f.dom),
        tensor_obj(a, f.cod),
        f.ctx,
        kron(np.eye(a.dim), f.mat),
    )


def whisker_right(f: Arrow, a: Obj) -> Arrow:
    """f (x) id_a : dom (x) a -> cod (x) a.

    Conjugates the left whisker by the factor swap; the hidden factor is
    untouched, so the swap acts on the visible part only.
    """
    h = f.ctx.hdim
    left = kron(swap_perm(a.dim, f.cod.dim), np.eye(h))
    right = kron(swap_perm(f.dom.dim, a.dim), np.eye(h))
    return Arrow(
        tensor_obj(f.dom, a),
        tensor_obj(f.cod, a),
        f.ctx,
        left @ kron(np.eye(a.dim), f.mat) @ right,
    )


def ltimes(g: Arrow, f: Arrow) -> Arrow:
    """g |x f: g runs first on the left factor, then f on the right factor."""
    return compose(whisker_left(g.cod, f), whisker_right(g, f.dom))


def rtimes(g: Arrow, f: Arrow) -> Arrow:
    """g x| f: f runs first on the right factor, then g on the left factor."""
    return compose(whisker_right(g, f.cod), whisker_left(g.dom, f))


def interchange_residuals(f: Arrow, g: Arrow) -> tuple[float, float]:
    """Operator norms (||f |x g - f x| g||, ||g |x f - g x| f||).

    Both vanish for every g exactly when f is central.
    """
    za = operator_norm(ltimes(f, g).mat - rtimes(f, g).mat)
    zb = operator_norm(ltimes(g, f).mat - rtimes(g, f).mat)
    return (za, zb)


def symmetry(a: Obj, b: Obj, ctx: Context) -> Arrow:
    """The swap a (x) b -> b (x) a as a central permutation arrow."""
    return central_arrow(swap_perm(a.dim, b.dim), tensor_obj(a, b), tensor_obj(b, a), ctx)


def pair_swap(i: int, j: int, ctx: Context) -> Arrow:
    """Rank-two partial swap on the hidden object: the canonical non-central arrow.

    Sends h_i (x) h_j and h_j (x) h_i to each other and kills every other
    basis vector.  Self-adjoint.  Requires hdim >= 2 and i != j.
    """
    h = ctx.hdim
    if h < 2:
        raise ValueError("pair_swap needs hdim >= 2")
    if not (0 <= i < h and 0 <= j < h) or i == j:
        raise ValueError("pair_swap needs distinct indices inside the hidden basis")
    hobj = Obj("H", h)
    m = np.zeros((h * h, h * h), dtype=np.complex128)
    m[j * h + i, i * h + j] = 1.0
    m[i * h + j, j * h + i] = 1.0
    return Arrow(hobj, hobj, ctx, m)


def pair_swap_family(ctx: Context) -> list[Arrow]:
    """All pair_swap(i, j) with i < j; empty at hdim 1.

    The commutant of this family is exactly the central slice at every hom
    pair, which is what makes it the canonical centrality probe.
    """
    h = ctx.hdim
    return [pair_swap(i, j, ctx) for i in range(h) for j in range(i + 1, h)]


def central_factor(f: Arrow, tol: float = 1e-9):
    """The visible factor fhat with f = fhat (x) id_H, or None."""
    return factor_out_identity(f.mat, f.dom.dim, f.cod.dim, f.ctx.hdim, tol)


def cstar_residuals(s: Arrow, t: Arrow, a: Obj) -> dict[str, float]:
    """Numerical defects of the C*-identities for composable s, t.

    submult: max(0, ||s.t|| - ||s||*||t||); cstar_id: | ||s*.s|| - ||s||^2 |;
    whisker_*_norm: | ||a (x) s|| - ||s|| | and | ||s (x) a|| - ||s|| |.
    All are zero in exact arithmetic.
    """
    ns = s.norm()
    nt = t.norm()
    return {
        "submult": max(0.0, compose(s, t).norm() - ns * nt),
        "cstar_id": abs(compose(dagger(s), s).norm() - ns * ns),
        "whisker_left_norm": abs(whisker_left(a, s).norm() - ns),
        "whisker_right_norm": abs(whisker_right(s, a).norm() - ns),
    }


def arrow_close(f: Arrow, g: Arrow, tol: float = 1e-9) -> bool:
    """Same hom space and operator-norm distance within tol (relative)."""
    if f.ctx != g.ctx or f.dom != g.dom or f.cod != g.cod:
        return False
    scale = max(1.0, f.norm(), g.norm())
    return operator_norm(f.mat - g.mat) <= tol * scale
