import itertools
import random
from fractions import Fraction

import pytest

from _util import det_f_matrix, random_unimodular
from nestedforms import oracle
from nestedforms.arith import is_fundamental, kronecker
from nestedforms.errors import PreconditionError
from nestedforms.forms import IDENTITY, S, Form, IntMatrix2, T_pow, act
from nestedforms.nesting import (
    LiftIndex,
    decompose_det_f,
    descend,
    exceptional_orbit,
    fiber,
    integral_conjugate,
    lift_g,
    normalize_for_descent,
    primitive_lift_indices,
    semi_equivalent,
    to_principal_lift,
)
from nestedforms.reduction import class_set, equivalent, normalize_coprime

FUNDAMENTAL = [D for D in range(-200, -2) if is_fundamental(D)]


def _divides_matrix(f, M):
    return all(v % f == 0 for v in M)


@pytest.mark.parametrize("f", [3, 5, 7, 11])
def test_lift_index_matrices(f):
    for g in range(f + 1):
        R = LiftIndex(g, f).matrix()
        assert R.det == f
    assert LiftIndex(f, f).matrix() == IntMatrix2(1, 0, 0, f)
    assert LiftIndex(1, f).matrix() == IntMatrix2(f, 1, 0, 1)
    with pytest.raises(PreconditionError):
        LiftIndex(f + 1, f)
    with pytest.raises(PreconditionError):
        LiftIndex(-1, f)


@pytest.mark.parametrize("f", [3, 5, 7, 11])
def test_lift_matrices_pairwise_inequivalent(f):
    # R_g U = R_h would make R_g^-1 R_h = adj(R_g) R_h / f integral
    for g, h in itertools.product(range(f + 1), repeat=2):
        Rg, Rh = LiftIndex(g, f).matrix(), LiftIndex(h, f).matrix()
        assert _divides_matrix(f, Rg.adjugate() @ Rh) == (g == h)


def test_lift_g_examples():
    assert lift_g(Form(1, 0, 1), LiftIndex(3, 3)) == Form(1, 0, 9)
    assert lift_g(Form(1, 0, 1), LiftIndex(0, 3)) == Form(9, 0, 1)
    Q = lift_g(Form(1, 1, 1), LiftIndex(1, 5))
    assert Q == Form(25, 15, 3) and Q.disc == -75


def test_lift_g_matches_direct_expansion():
    for D in FUNDAMENTAL[:30]:
        for q in class_set(D):
            for f in (3, 5, 7):
                for g in range(f + 1):
                    Q = lift_g(q, LiftIndex(g, f))
                    assert tuple(Q) == oracle.direct_lift(tuple(q), g, f)
                    assert Q.disc == D * f * f


def test_lift_g_rejects_non_primitive():
    with pytest.raises(PreconditionError):
        lift_g(Form(2, 2, 2), LiftIndex(0, 3))


def test_primitive_lift_indices_examples():
    assert [i.g for i in primitive_lift_indices(Form(1, 0, 1), 3)] == [0, 1, 2, 3]
    assert [i.g for i in primitive_lift_indices(Form(1, 1, 6), 3)] == [1, 3]
    assert [i.g for i in primitive_lift_indices(Form(1, 1, 1), 3)] == [0, 2, 3]


def test_primitive_lift_indices_count_and_primitivity():
    for D in FUNDAMENTAL:
        for q in class_set(D):
            for f in (3, 5, 7, 11, 13):
                q1, _ = normalize_coprime(q, f)
                idx = [i.g for i in primitive_lift_indices(q1, f)]
                assert len(idx) == f - kronecker(D, f)
                direct = [g for g in range(f + 1) if lift_g(q1, LiftIndex(g, f)).is_primitive]
                assert idx == direct


def test_primitive_lift_indices_errors():
    with pytest.raises(PreconditionError, match="normalize_coprime"):
        primitive_lift_indices(Form(3, 1, 2), 3)
    with pytest.raises(PreconditionError):
        primitive_lift_indices(Form(1, 0, 1), 9)
    with pytest.raises(PreconditionError):
        primitive_lift_indices(Form(1, 0, 1), 2)


def test_decompose_examples():
    assert decompose_det_f(IntMatrix2(1, 0, 0, 3), 3) == (LiftIndex(3, 3), IDENTITY)
    assert decompose_det_f(IntMatrix2(3, 1, 0, 1), 3) == (LiftIndex(1, 3), IDENTITY)
    idx, U = decompose_det_f(IntMatrix2(2, 1, 1, 2), 3)
    assert idx.g == 2 and U == IntMatrix2(0, -1, 1, 2)
    assert idx.matrix() @ U == IntMatrix2(2, 1, 1, 2)


@pytest.mark.parametrize("f", [2, 3, 5, 7, 11])
def test_decompose_random(f):
    rng = random.Random(f)
    for _ in range(500):
        M = det_f_matrix(rng, f)
        idx, U = decompose_det_f(M, f)
        assert U.det == 1 and idx.matrix() @ U == M
        hits = [h for h in range(f + 1) if _divides_matrix(f, LiftIndex(h, f).matrix().adjugate() @ M)]
        assert hits == [idx.g]


def test_decompose_errors():
    with pytest.raises(PreconditionError):
        decompose_det_f(IntMatrix2(1, 0, 0, 5), 3)
    with pytest.raises(PreconditionError):
        decompose_det_f(IntMatrix2(1, 0, 0, 9), 9)


def test_normalize_for_descent_examples():
    assert normalize_for_descent(Form(1, 0, 9), 3) == (Form(1, 0, 9), IDENTITY)
    Q, M = normalize_for_descent(Form(1, 6, 18), 3)
    assert Q.a == 1 and Q.b % 3 == 0 and Q.c % 9 == 0
    assert act(Form(1, 6, 18), M) == Q and M.det == 1
    with pytest.raises(PreconditionError, match="not coprime"):
        normalize_for_descent(Form(25, 15, 3), 5)


def test_normalize_for_descent_random():
    rng = random.Random(3)
    for _ in range(500):
        D = rng.choice(FUNDAMENTAL)
        f = rng.choice([3, 5, 7, 11])
        Q0 = act(rng.choice(class_set(D * f * f).members), random_unimodular(rng))
        Q1, _ = normalize_coprime(Q0, f)
        Q, M = normalize_for_descent(Q1, f)
        assert act(Q1, M) == Q and Q.a == Q1.a
        assert Q.b % f == 0 and Q.c % (f * f) == 0


def test_descend_examples():
    r = descend(Form(1, 0, 9), 3)
    assert r.base == Form(1, 0, 1)
    assert act(r.base, r.matrix) == Form(1, 0, 9) and r.matrix.det == 3
    r = descend(Form(25, 15, 3), 5)
    assert r.base == Form(1, 1, 1)
    assert act(r.base, r.matrix) == Form(25, 15, 3) and r.matrix.det == 5


def test_descend_roundtrip_minus23():
    for q in class_set(-23):
        q1, _ = normalize_coprime(q, 3)
        for idx in primitive_lift_indices(q1, 3):
            Q = lift_g(q1, idx)
            r = descend(Q, 3)
            assert equivalent(r.base, q) is not None
            assert r.base == q


def test_descend_errors():
    with pytest.raises(PreconditionError):
        descend(Form(1, 1, 6), 3)  # 9 does not divide -23
    with pytest.raises(PreconditionError):
        descend(Form(1, 0, 9), 9)
    with pytest.raises(PreconditionError):
        descend(Form(1, 0, 4), 2)
    with pytest.raises(PreconditionError):
        descend(Form(3, 0, 27), 3)


def test_descend_non_maximal_base_chains():
    # disc -4 * 81: two steps of f = 3
    for Q in class_set(-4 * 81):
        r1 = descend(Q, 3)
        assert r1.base.disc == -36
        r2 = descend(r1.base, 3)
        assert r2.base == Form(1, 0, 1)
        assert act(r2.base, r2.matrix @ r1.matrix) == Q


def test_descend_indefinite():
    q = Form(1, 1, -1)
    for f in (3, 5, 7):
        for g in range(f + 1):
            Q = lift_g(q, LiftIndex(g, f))
            if not Q.is_primitive:
                continue
            Q = act(Q, T_pow(2) @ S)
            r = descend(Q, f)
            assert r.base.disc == 5 and act(r.base, r.matrix) == Q


def _brute_base_classes(Q, f):
    """Reduced q of disc D with some primitive q.R_g orbit-equivalent to Q."""
    D = Q.disc // (f * f)
    found = set()
    for q in oracle.reduced_primitive_forms(D):
        for g in range(f + 1):
            L = oracle.direct_lift(q, g, f)
            if Form(*L).is_primitive and oracle.orbit_equivalent(L, tuple(Q)):
                found.add(q)
                break
    return found


@pytest.mark.parametrize("D, f", [(-23, 3), (-20, 3), (-4, 5), (-3, 7), (-56, 5), (-39, 3)])
def test_descent_map_well_defined_by_brute_force(D, f):
    for Q in class_set(D * f * f):
        bases = _brute_base_classes(Q, f)
        assert bases == {tuple(descend(Q, f).base)}


def test_semi_equivalent_examples():
    rng = random.Random(9)
    Q = lift_g(Form(2, 1, 3), LiftIndex(3, 3))
    for _ in range(20):
        assert semi_equivalent(Q, act(Q, random_unimodular(rng)), 3)
    q = Form(1, 0, 1)
    assert semi_equivalent(lift_g(q, LiftIndex(0, 5)), lift_g(q, LiftIndex(1, 5)), 5)
    assert not semi_equivalent(lift_g(Form(2, 1, 3), LiftIndex(3, 3)), lift_g(Form(1, 1, 6), LiftIndex(3, 3)), 3)
    with pytest.raises(PreconditionError):
        semi_equivalent(Form(1, 0, 9), Form(1, 0, 25), 3)


def test_semi_equivalence_coarser_than_equivalence():
    for D, f in [(-23, 3), (-47, 5), (-84, 3)]:
        members = class_set(D * f * f).members
        for Q1, Q2 in itertools.combinations_with_replacement(members, 2):
            if equivalent(Q1, Q2) is not None:
                assert semi_equivalent(Q1, Q2, f)
            assert semi_equivalent(Q1, Q2, f) == (descend(Q1, f).base == descend(Q2, f).base)


def test_to_principal_lift_examples():
    assert to_principal_lift(Form(1, 0, 1), LiftIndex(3, 3)) == (Form(1, 0, 1), IDENTITY)
    q0, V = to_principal_lift(Form(1, 0, 1), LiftIndex(0, 3))
    assert q0 == Form(1, 0, 1)
    assert act(q0, IntMatrix2(1, 0, 0, 3) @ V) == Form(9, 0, 1) == lift_g(Form(1, 0, 1), LiftIndex(0, 3))
    q0, V = to_principal_lift(Form(1, 1, 6), LiftIndex(1, 3))
    assert q0 == Form(8, -3, 1)
    assert act(q0, IntMatrix2(1, 0, 0, 3) @ V) == lift_g(Form(1, 1, 6), LiftIndex(1, 3))


def test_to_principal_lift_random():
    for D in FUNDAMENTAL[:40]:
        for q in class_set(D):
            for f in (3, 5, 7):
                for g in range(f + 1):
                    q0, V = to_principal_lift(q, LiftIndex(g, f))
                    assert V.det == 1
                    assert act(q0, LiftIndex(f, f).matrix() @ V) == lift_g(q, LiftIndex(g, f))
                    assert equivalent(q0, q) is not None


def test_integral_conjugate_examples():
    q = Form(1, 1, 6)
    assert integral_conjugate(IDENTITY, 3, q) == IDENTITY
    assert integral_conjugate(T_pow(1), 3, q) is None
    assert integral_conjugate(T_pow(2), 5, q) is None
    assert integral_conjugate(T_pow(3), 3, q) == IntMatrix2(1, 1, 0, 1)
    with pytest.raises(PreconditionError):
        integral_conjugate(IDENTITY, 3, Form(3, 1, 2))


def _fractional_action_integral(q, U, f):
    p, r, s, t = U
    P, R, Sx, Tx = Fraction(p), Fraction(r, f), Fraction(f * s), Fraction(t)
    qq = lambda x, y: q.a * x * x + q.b * x * y + q.c * y * y
    coeffs = (qq(P, Sx), qq(P + R, Sx + Tx) - qq(P, Sx) - qq(R, Tx), qq(R, Tx))
    return all(c.denominator == 1 for c in coeffs)


def test_integral_conjugate_falsification_search():
    rng = random.Random(13)
    for _ in range(5000):
        D = rng.choice(FUNDAMENTAL)
        f = rng.choice([3, 5, 7, 11, 15, 9])
        q = act(rng.choice(class_set(D).members), random_unimodular(rng))
        if q.a % 3 == 0 or q.a % 5 == 0 or q.a % 7 == 0 or q.a % 11 == 0:
            continue
        U = random_unimodular(rng, length=8)
        V = integral_conjugate(U, f, q)
        assert (V is not None) == _fractional_action_integral(q, U, f)
        if V is not None:
            assert V.det == 1
            assert LiftIndex(f, f).matrix() @ U == V @ LiftIndex(f, f).matrix()


def test_fiber_examples():
    classes = fiber(Form(1, 1, 6), 3)
    assert len(classes) == 2 and all(len(c.indices) == 1 for c in classes)
    classes = fiber(Form(1, 0, 1), 5)
    assert len(primitive_lift_indices(Form(1, 0, 1), 5)) == 4
    assert len(classes) == 2 == len(class_set(-100))
    classes = fiber(Form(1, 1, 1), 5)
    assert len(primitive_lift_indices(Form(1, 1, 1), 5)) == 6
    assert len(classes) == 2 == len(class_set(-75))


def test_fiber_errors():
    with pytest.raises(PreconditionError):
        fiber(Form(3, 1, 2), 3)
    with pytest.raises(PreconditionError):
        fiber(Form(1, 1, -1), 3)


@pytest.mark.parametrize("q, f", [((1, 1, 6), 3), ((2, 1, 3), 5), ((1, 0, 1), 5), ((1, 1, 1), 5), ((1, 0, 5), 7), ((3, 2, 7), 11)])
def test_fiber_matches_orbit_oracle(q, f):
    q = Form(*q)
    report = oracle.exhaustive_fiber_check(tuple(q), f)
    assert not report.inconclusive
    assert {frozenset(c.indices) for c in fiber(q, f)} == {frozenset(g) for g in report.groups}


def test_every_class_is_some_lift():
    for D in FUNDAMENTAL[:50]:
        for f in (3, 5, 7):
            above = set()
            for q in class_set(D):
                q1, _ = normalize_coprime(q, f)
                above |= {c.form for c in fiber(q1, f)}
            assert above == set(class_set(D * f * f).members)


@pytest.mark.parametrize("f", [3, 5, 7, 11, 13, 17])
def test_exceptional_orbits(f):
    for D, q in ((-4, Form(1, 0, 1)), (-3, Form(1, 1, 1))):
        size = 2 if D == -4 else 3
        for c in fiber(q, f):
            assert len(c.indices) == size
            for g in c.indices:
                assert exceptional_orbit(g, f, D) == frozenset(c.indices)
