import numpy as np
import pytest
from numpy.testing import assert_allclose

from vncat import (
    Arrow,
    Context,
    Obj,
    ObjectUniverse,
    central_factor,
    classical_commutant,
    commutant,
    dagger,
    double_commutant,
    endo_algebra,
    generated_star_algebra,
    is_star_closed,
    is_von_neumann,
    pair_swap_family,
    span_basis,
    span_category,
    standard_universe,
    star_closure,
    subspace_contains,
    subspace_equal,
)
from helpers import random_arrow, random_closed_set

CTX = Context(2)
UNI = standard_universe(CTX)
I = UNI.unit
ONEOBJ = ObjectUniverse((Obj("I", 1),), CTX)

SX = np.array([[0, 1], [1, 0]], dtype=complex)
NIL = np.array([[0, 1], [0, 0]], dtype=complex)


def test_universe_validation():
    with pytest.raises(ValueError):
        ObjectUniverse((), CTX)
    with pytest.raises(ValueError):
        ObjectUniverse((Obj("A", 2),), CTX)
    with pytest.raises(ValueError):
        ObjectUniverse((Obj("A", 1), Obj("A", 2)), CTX)
    assert UNI.unit.dim == 1
    assert len(UNI.pairs()) == len(UNI.objects) ** 2


def test_standard_universe_contents():
    dims = sorted(o.dim for o in UNI.objects)
    assert dims == [1, 2, 3]
    a = Obj("Q", 5)
    uni = standard_universe(CTX, gens=[random_arrow(np.random.default_rng(0), a, a, CTX)])
    assert any(o == a for o in uni.objects)


def test_span_basis_orthonormal_and_deterministic():
    r = np.random.default_rng(1)
    mats = [r.standard_normal((3, 3)) + 1j * r.standard_normal((3, 3)) for _ in range(2)]
    mats.append(mats[0] + 2 * mats[1])  # dependent
    b1 = span_basis(mats)
    b2 = span_basis([m.copy() for m in mats])
    assert len(b1) == 2
    for x in b1:
        assert_allclose(np.linalg.norm(x), 1.0, atol=1e-12)
        # phase convention: largest entry is real positive
        peak = x.flat[np.argmax(np.abs(x))]
        assert abs(peak.imag) < 1e-12 and peak.real > 0
    for x, y in zip(b1, b2):
        assert np.array_equal(x, y)
    assert span_basis([]) == []
    assert span_basis([np.zeros((2, 2))]) == []


def test_star_closure_helpers():
    r = np.random.default_rng(2)
    g = random_arrow(r, I, I, CTX)
    assert not is_star_closed([g])
    closed = star_closure([g])
    assert is_star_closed(closed)
    assert len(closed) == 2
    # closed in span without being closed elementwise
    n = Arrow(I, I, CTX, NIL)
    mixed = [n, n + dagger(n)]
    assert is_star_closed(mixed)
    assert star_closure(mixed) == mixed
    # self-adjoint generator needs nothing
    sx = Arrow(I, I, CTX, SX)
    assert is_star_closed([sx])


def test_commutant_rejects_open_sets():
    r = np.random.default_rng(3)
    g = random_arrow(r, I, I, CTX)
    with pytest.raises(ValueError):
        commutant([g], UNI)
    commutant([g], UNI, auto_close=True)  # fine


def test_commutant_rejects_foreign_context():
    g = Arrow(I, I, Context(3), np.zeros((3, 3)))
    with pytest.raises(ValueError):
        commutant([g], UNI)


def test_empty_commutant_is_full():
    cat = commutant([], UNI)
    for d, c, n in cat.dims():
        assert n == (d.dim * CTX.hdim) * (c.dim * CTX.hdim)


def test_pair_swap_commutant_is_centre():
    cat = commutant(pair_swap_family(CTX), UNI)
    for d, c, n in cat.dims():
        assert n == d.dim * c.dim
        for f in cat.homs[(d, c)].basis:
            assert central_factor(f, 1e-8) is not None


def test_double_commutant_of_nothing_is_centre():
    cat = double_commutant([], UNI)
    for d, c, n in cat.dims():
        assert n == d.dim * c.dim


def test_hidden_diagonal_generator_dims():
    # an endomorphism of the unit acting as diag(1, -1) on the hidden space
    # constrains every hom to (visible anything) x (diagonal hidden part)
    g = Arrow(I, I, CTX, np.diag([1.0, -1.0]))
    cat = commutant([g], UNI)
    for d, c, n in cat.dims():
        assert n == d.dim * c.dim * 2


def test_trivial_hidden_space_commutant_is_full():
    ctx1 = Context(1)
    uni = standard_universe(ctx1)
    g = Arrow(uni.unit, uni.unit, ctx1, np.array([[2.0]]))
    cat = commutant([g], uni)
    for d, c, n in cat.dims():
        assert n == d.dim * c.dim


def test_generators_inside_double_commutant():
    r = np.random.default_rng(5)
    gens = random_closed_set(r, UNI, 2)
    dc = double_commutant(gens, UNI)
    spanned = span_category(gens, UNI)
    for pair in UNI.pairs():
        assert subspace_contains(dc.homs[pair], spanned.homs[pair], 1e-8)


def test_commutant_of_generic_set_is_centre_and_triple_matches():
    r = np.random.default_rng(6)
    gens = random_closed_set(r, UNI, 2)
    first = commutant(gens, UNI)
    for d, c, n in first.dims():
        assert n == d.dim * c.dim
    second = commutant(first.all_arrows(), UNI)
    third = commutant(second.all_arrows(), UNI)
    for pair in UNI.pairs():
        assert subspace_equal(first.homs[pair], third.homs[pair], 1e-8)


def test_is_von_neumann_accepts_closures():
    cat = double_commutant([], UNI)
    rep = is_von_neumann(cat)
    assert rep.passed
    assert rep.failures == ()


def test_is_von_neumann_rejects_nilpotent_span():
    unit = ONEOBJ.unit
    n = Arrow(unit, unit, CTX, NIL)
    cat = span_category([n, dagger(n)], ONEOBJ)
    rep = is_von_neumann(cat)
    assert not rep.passed
    assert len(rep.failures) == 1
    d, c, have, want = rep.failures[0]
    assert (d, c, have, want) == (unit, unit, 2, 4)
    assert rep.closure.homs[(unit, unit)].dim == 4


def test_endo_algebra_matches_classical_star_algebra():
    r = np.random.default_rng(3)
    m = r.standard_normal((2, 2)) + 1j * r.standard_normal((2, 2))
    unit = ONEOBJ.unit
    dc = double_commutant([Arrow(unit, unit, CTX, m)], ONEOBJ, auto_close=True)
    engine = endo_algebra(dc)
    classical = generated_star_algebra([m])
    assert len(engine) == len(classical) == 4
    assert len(span_basis(engine + classical)) == 4


def test_endo_algebra_universe_invariance():
    m = SX
    unit = ONEOBJ.unit
    small = double_commutant([Arrow(unit, unit, CTX, m)], ONEOBJ)
    big = double_commutant([Arrow(I, I, CTX, m)], UNI)
    es, eb = endo_algebra(small), endo_algebra(big)
    assert len(es) == len(eb)
    assert len(span_basis(list(es) + list(eb))) == len(es)


def test_engine_commutant_matches_classical_on_unit():
    unit = ONEOBJ.unit
    sx = Arrow(unit, unit, CTX, SX)
    cat = commutant([sx], ONEOBJ)
    assert cat.homs[(unit, unit)].dim == len(classical_commutant([SX])) == 2


def test_classical_commutant_oracles():
    assert len(classical_commutant([SX])) == 2
    assert len(classical_commutant([np.eye(3)])) == 9
    got = classical_commutant([np.diag([1.0, 2.0, 3.0])])
    assert len(got) == 3
    for b in got:
        assert_allclose(b, np.diag(np.diag(b)), atol=1e-12)
    with pytest.raises(ValueError):
        classical_commutant([])
    with pytest.raises(ValueError):
        classical_commutant([NIL])  # not star-closed


def test_generated_star_algebra_oracles():
    assert len(generated_star_algebra([NIL])) == 4
    assert len(generated_star_algebra([np.diag([1.0, 2.0])])) == 2
    # permutation generating the cyclic group algebra inside M_3
    p = np.roll(np.eye(3), 1, axis=0)
    assert len(generated_star_algebra([p])) == 3


def test_classical_double_commutant_cross_check():
    r = np.random.default_rng(8)
    m = r.standard_normal((3, 3)) + 1j * r.standard_normal((3, 3))
    alg = generated_star_algebra([m])
    dc = classical_commutant(classical_commutant([m, m.conj().T]))
    assert len(alg) == len(dc)
    assert len(span_basis(alg + dc)) == len(alg)


def test_workers_match_serial():
    r = np.random.default_rng(9)
    gens = random_closed_set(r, UNI, 1)
    a = commutant(gens, UNI)
    b = commutant(gens, UNI, workers=2)
    for pair in UNI.pairs():
        ba, bb = a.homs[pair].basis, b.homs[pair].basis
        assert len(ba) == len(bb)
        for x, y in zip(ba, bb):
            assert np.array_equal(x.mat, y.mat)


def test_commutant_runs_are_byte_identical():
    r = np.random.default_rng(10)
    gens = random_closed_set(r, UNI, 1)
    a = commutant(gens, UNI)
    b = commutant([Arrow(g.dom, g.cod, g.ctx, g.mat.copy()) for g in gens], UNI)
    for pair in UNI.pairs():
        for x, y in zip(a.homs[pair].basis, b.homs[pair].basis):
            assert np.array_equal(x.mat, y.mat)


def test_subspace_comparisons():
    r = np.random.default_rng(11)
    f = random_arrow(r, I, I, CTX)
    g = random_arrow(r, I, I, CTX)
    from vncat import HomSubspace

    s2 = HomSubspace(I, I, (f, g))
    s1 = HomSubspace(I, I, (f,))
    s0 = HomSubspace(I, I, ())
    assert subspace_contains(s2, s1)
    assert not subspace_contains(s1, s2)
    assert subspace_contains(s1, s0)
    assert subspace_equal(s2, s2)
    other = HomSubspace(I, UNI.objects[1], ())
    with pytest.raises(ValueError):
        subspace_contains(s1, other)


def test_span_category_groups_by_hom():
    r = np.random.default_rng(12)
    x = next(o for o in UNI.objects if o.dim == 2)
    f = random_arrow(r, I, x, CTX)
    cat = span_category([f, 2 * f], UNI)
    assert cat.homs[(I, x)].dim == 1
    assert cat.homs[(x, I)].dim == 0
    assert len(cat.all_arrows()) == 1
