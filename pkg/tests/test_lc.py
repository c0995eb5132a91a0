import random

import pytest

from conftest import plane, ring_32, ring_32_s, ring_42, ring_42_s, ring_53
from fsegre.errors import PreconditionError
from fsegre.graded import RingSpec, a_invariant_ci, hilbert_series
from fsegre.lc import (GradedDimFunction, a_invariant_segre, is_cm_segre, kunneth, lc_dim_oracle, lc_table_ci,
                       ring_dim_function, segre_lc_table, semigroup_conductor, semigroup_members,
                       top_lc_function)


def _closure(gens, hi):
    # plain set closure, independent of the DP in the library
    reach = {0}
    frontier = [0]
    while frontier:
        n = frontier.pop()
        for g in gens:
            m = n + g
            if m <= hi and m not in reach:
                reach.add(m)
                frontier.append(m)
    return reach


@pytest.mark.parametrize("gens", [(21, 14, 6), (5, 4, 4), (3, 5), (6, 10, 15), (4, 6), (7,), (2, 2), (9, 12, 20)])
def test_conductor_brute_force(gens):
    g, c = semigroup_conductor(gens)
    norm = [x // g for x in gens]
    hi = c + 3 * max(norm) + 10
    reach = _closure(norm, hi)
    assert all(n in reach for n in range(c, hi + 1))
    assert c == 0 or (c - 1) not in reach
    assert semigroup_members(norm, hi) == [n in reach for n in range(hi + 1)]


def test_conductor_examples():
    assert semigroup_conductor((21, 14, 6)) == (1, 44)
    assert semigroup_conductor((5, 4, 4)) == (1, 12)
    assert semigroup_conductor((2, 2)) == (2, 0)


def test_top_lc_examples():
    R = lc_table_ci(ring_42())
    assert R[2].support(0, 200) == [1]
    S = lc_table_ci(ring_42_s())
    assert S[2].support(0, 200) == [2, 3, 7]
    for k in (0, 1):
        assert R[k].is_zero() and S[k].is_zero()
    hs = hilbert_series(ring_42())
    for n in range(-80, 10):
        assert R[2].positive(n) == (hs.coefficient(1 - n) > 0)
    P = lc_table_ci(plane(5))
    for n in range(-40, 6):
        assert P[2](n) == max(-n - 1, 0)


def test_lc_table_needs_ci():
    R = RingSpec.make(3, "abcd", ["a*c - b^2", "b*d - c^2", "a*d - b*c"], complete_intersection=False)
    with pytest.raises(PreconditionError):
        lc_table_ci(R)


def test_kunneth_examples():
    T = segre_lc_table(ring_42(), ring_42_s())
    assert T.dim == 3
    for k in range(3):
        assert T[k].is_zero()
    assert T[3].max_support() == -5
    D = segre_lc_table(RingSpec.make(3, "xy"), RingSpec.make(3, "uv"))
    assert all(D[k].is_zero() for k in range(3))
    det = RingSpec.make(3, "xyzw", ["x*w - y*z"])
    assert D[3].max_support() == a_invariant_ci(det) == -2


def test_kunneth_cusp_family_witness():
    R, S = ring_53(7), plane(7)
    T = segre_lc_table(R, S)
    assert not T[2].is_zero()
    cm, w = is_cm_segre(R, S)
    assert not cm and w.k == 2
    n = w.degree
    hr, hs = hilbert_series(R), hilbert_series(S)
    r_n, s_n = hr.coefficient(n), hs.coefficient(n)
    h2r = hr.coefficient(a_invariant_ci(R) - n)
    h2s = hs.coefficient(a_invariant_ci(S) - n)
    assert (r_n and h2s) or (h2r and s_n)
    assert w.dim == r_n * h2s + h2r * s_n == T[2](n)


def test_kunneth_requires_depth_two():
    one = RingSpec.make(3, "x")
    with pytest.raises(PreconditionError):
        segre_lc_table(one, plane(3))
    zero = GradedDimFunction.zero()
    bad = lc_table_ci(plane(3))
    from fsegre.lc import LCTable
    nonzero_h1 = LCTable(2, (zero, bad[2], bad[2]))
    with pytest.raises(PreconditionError):
        kunneth(nonzero_h1, bad, (hilbert_series(plane(3)), hilbert_series(plane(3))))


def test_is_cm_examples():
    assert is_cm_segre(ring_42(), ring_42_s()) == (True, None)
    assert is_cm_segre(RingSpec.make(2, "xy"), RingSpec.make(2, "uv"))[0]
    for p in (7, 11, 13):
        assert not is_cm_segre(ring_53(p), plane(p))[0]


def test_a_invariant_segre_examples():
    assert a_invariant_segre(ring_42(), ring_42_s()) == -5
    assert a_invariant_segre(RingSpec.make(2, "xy"), RingSpec.make(2, "uv")) == -2
    assert a_invariant_segre(ring_42(), plane(7)) == -5


SURFACES = [ring_32(), ring_32_s(), ring_42(), ring_42_s(), plane(7), plane(7, (2, 3)),
            RingSpec.make(5, [("x", 2), ("y", 3), ("z", 4)], ["x^2 - z"]),
            RingSpec.make(5, "xyz", ["x^3 + y^3 + z^3"])]


def test_cm_symmetry():
    for a in SURFACES:
        for b in SURFACES:
            if a.p != b.p:
                continue
            assert is_cm_segre(a, b)[0] == is_cm_segre(b, a)[0]
            assert a_invariant_segre(a, b) == a_invariant_segre(b, a)


def _direct(a, b, k, n):
    """dim [H^k(R#S)]_n for CI surfaces, multiplied out degree by degree."""
    ha, hb = hilbert_series(a), hilbert_series(b)
    aa, ab = a_invariant_ci(a), a_invariant_ci(b)
    r = lambda m: ha.coefficient(m) if m >= 0 else 0
    s = lambda m: hb.coefficient(m) if m >= 0 else 0
    top_r = lambda m: r(aa - m)
    top_s = lambda m: s(ab - m)
    if k == 2:
        return r(n) * top_s(n) + top_r(n) * s(n)
    if k == 3:
        return top_r(n) * top_s(n)
    return 0


@pytest.mark.parametrize("pair", [(ring_42(), ring_42_s()), (ring_53(7), plane(7)), (ring_32(), ring_32_s()),
                                  (ring_42(), plane(7, (2, 3)))])
def test_kunneth_self_consistency(pair):
    a, b = pair
    T = segre_lc_table(a, b)
    for n in range(-60, 11):
        for k in range(4):
            assert T[k](n) == _direct(a, b, k, n), (k, n)


def _emitted_functions():
    out = []
    for ring in SURFACES:
        hs = hilbert_series(ring)
        out.append((ring_dim_function(hs), lambda n, hs=hs: hs.coefficient(n) if n >= 0 else 0))
        a = a_invariant_ci(ring)
        out.append((top_lc_function(hs, a), lambda n, hs=hs, a=a: hs.coefficient(a - n) if a - n >= 0 else 0))
    for a, b in [(ring_42(), ring_42_s()), (ring_53(7), plane(7))]:
        T = segre_lc_table(a, b)
        for k in range(4):
            out.append((T[k], lambda n, a=a, b=b, k=k: _direct(a, b, k, n)))
    return out


def test_certificate_soundness():
    rng = random.Random(0)
    for f, exact in _emitted_functions():
        for _ in range(200):
            n = f.lo - rng.randint(1, 400)
            assert f.positive(n) == (exact(n) > 0), n
            m = f.hi + rng.randint(1, 400)
            assert f.positive(m) == (exact(m) > 0), m


def test_dim_function_helpers():
    z = GradedDimFunction.zero()
    assert z.is_zero() and z.first_nonzero() is None and z.max_support() is None
    f = lc_table_ci(ring_42())[2]
    assert f.max_support() == 1
    with pytest.raises(ValueError):
        f.min_support()
    d = f.to_dict()
    assert d["below"]["period"] == 1 and d["above"] is None


def test_oracle_examples():
    R = ring_42()
    assert lc_dim_oracle(R, ("y", "z"), 1)[0] == 1
    assert lc_dim_oracle(R, ("y", "z"), 0)[0] == 0
    E = ring_32()
    assert a_invariant_ci(E) == -1
    assert lc_dim_oracle(E, ("y", "z"), -1)[0] == 1
    assert lc_dim_oracle(E, ("y", "z"), 0)[0] == 0


@pytest.mark.parametrize("ring", [ring_32(), ring_42(), ring_42_s(), RingSpec.make(5, "xyz", ["x^3 + y^3 + z^3"])],
                         ids=["cusp_p2", "cusp_p7", "quartic_p7", "fermat"])
def test_dual_formula_vs_oracle(ring):
    hs = hilbert_series(ring)
    a = a_invariant_ci(ring)
    sop = [ring.names[-2], ring.names[-1]]
    for n in range(-15, a + 3):
        want = hs.coefficient(a - n) if a - n >= 0 else 0
        assert lc_dim_oracle(ring, sop, n)[0] == want, n
