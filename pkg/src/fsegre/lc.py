"""Graded local cohomology dimensions of complete intersections and their
Segre products.

A :class:`GradedDimFunction` stores exact values on a finite window plus a
positivity certificate for each infinite tail.  Tails come from numerical
semigroups: beyond the conductor, R_n != 0 exactly when g | n, where g is
the gcd of the weights.  That is sound for domains, and is re-checked
against exact values on the last full period of every window.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd
from typing import Callable

from .arith import GF, rref, weighted_monomials
from .errors import PreconditionError
from .graded import HilbertSeries, RingSpec, a_invariant_ci, hilbert_series


def _lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


def semigroup_conductor(generators) -> tuple[int, int]:
    """(g, c): g is the gcd of the generators and c the conductor of the
    numerical semigroup generated by generators/g, i.e. the least c such that
    every integer >= c is attainable."""
    gens = [int(x) for x in generators if x]
    if not gens or any(x < 0 for x in gens):
        raise ValueError("need positive generators")
    g = 0
    for x in gens:
        g = gcd(g, x)
    norm = sorted({x // g for x in gens})
    smallest = norm[0]
    reach = [True]
    last_gap = -1
    n = 0
    while n - last_gap < smallest or n == 0:
        n += 1
        ok = any(n >= w and reach[n - w] for w in norm)
        reach.append(ok)
        if not ok:
            last_gap = n
    return g, last_gap + 1


def semigroup_members(generators, hi: int) -> list[bool]:
    """Attainability of 0..hi as nonnegative combinations of generators."""
    reach = [False] * (hi + 1)
    if hi >= 0:
        reach[0] = True
    for n in range(1, hi + 1):
        reach[n] = any(n >= w and reach[n - w] for w in generators)
    return reach


@dataclass(frozen=True)
class Tail:
    period: int
    pattern: tuple  # pattern[n % period]: is dim > 0 at n

    def positive(self, n: int) -> bool:
        return self.pattern[n % self.period]

    def any(self) -> bool:
        return any(self.pattern)

    @staticmethod
    def combine(a: Tail | None, b: Tail | None, op) -> Tail | None:
        if a is None and b is None:
            return None
        a = a or Tail(1, (False,))
        b = b or Tail(1, (False,))
        L = _lcm(a.period, b.period)
        pat = tuple(op(a.positive(r), b.positive(r)) for r in range(L))
        if not any(pat):
            return None
        return Tail(L, pat)


@dataclass(frozen=True)
class GradedDimFunction:
    """n -> dim of a graded piece, for all n in Z.

    Inside [lo, hi] values are explicit.  Below lo (resp. above hi) the
    dimension is 0 when ``below`` (resp. ``above``) is None, and otherwise
    positive exactly where the tail pattern says so.  ``exact`` evaluates the
    dimension anywhere.
    """

    lo: int
    hi: int
    values: tuple
    below: Tail | None = None
    above: Tail | None = None
    exact: Callable | None = field(default=None, compare=False, repr=False)

    @classmethod
    def zero(cls) -> GradedDimFunction:
        return cls(0, -1, (), None, None, lambda n: 0)

    @classmethod
    def from_callable(cls, fn, lo, hi, below=None, above=None) -> GradedDimFunction:
        return cls(lo, hi, tuple(fn(n) for n in range(lo, hi + 1)), below, above, fn)

    def __call__(self, n: int) -> int:
        if self.lo <= n <= self.hi:
            return self.values[n - self.lo]
        tail = self.below if n < self.lo else self.above
        if tail is None:
            return 0
        if self.exact is None:
            raise ValueError(f"no exact evaluator outside the window at n={n}")
        return self.exact(n)

    def positive(self, n: int) -> bool:
        if self.lo <= n <= self.hi:
            return self.values[n - self.lo] > 0
        tail = self.below if n < self.lo else self.above
        return tail is not None and tail.positive(n)

    def is_zero(self) -> bool:
        return (not any(self.values)
                and not (self.below and self.below.any())
                and not (self.above and self.above.any()))

    def is_finite(self) -> bool:
        return not (self.below and self.below.any()) and not (self.above and self.above.any())

    def support(self, lo: int, hi: int) -> list[int]:
        return [n for n in range(lo, hi + 1) if self.positive(n)]

    def first_nonzero(self) -> int | None:
        """Some degree with positive dimension (window first, then tails)."""
        for n in range(self.lo, self.hi + 1):
            if self.values[n - self.lo]:
                return n
        if self.above and self.above.any():
            for n in range(self.hi + 1, self.hi + 1 + self.above.period):
                if self.above.positive(n):
                    return n
        if self.below and self.below.any():
            for n in range(self.lo - 1, self.lo - 1 - self.below.period, -1):
                if self.below.positive(n):
                    return n
        return None

    def max_support(self) -> int | None:
        """Largest degree with positive dimension; None for the zero function.
        Raises if the support is unbounded above."""
        if self.above and self.above.any():
            raise ValueError("support is unbounded above")
        for n in range(self.hi, self.lo - 1, -1):
            if self.values[n - self.lo]:
                return n
        if self.below and self.below.any():
            for n in range(self.lo - 1, self.lo - 1 - self.below.period, -1):
                if self.below.positive(n):
                    return n
        return None

    def min_support(self) -> int | None:
        if self.below and self.below.any():
            raise ValueError("support is unbounded below")
        for n in range(self.lo, self.hi + 1):
            if self.values[n - self.lo]:
                return n
        if self.above and self.above.any():
            for n in range(self.hi + 1, self.hi + 1 + self.above.period):
                if self.above.positive(n):
                    return n
        return None

    def to_dict(self) -> dict:
        def tail(t):
            return None if t is None else {"period": t.period, "positive_residues":
                                            [r for r, b in enumerate(t.pattern) if b]}
        return {"window": [self.lo, self.hi], "values": list(self.values),
                "below": tail(self.below), "above": tail(self.above)}


def _hull(fs):
    live = [f for f in fs if f.hi >= f.lo]
    if not live:
        return 0, -1
    return min(f.lo for f in live), max(f.hi for f in live)


def dim_product(f: GradedDimFunction, g: GradedDimFunction) -> GradedDimFunction:
    """Degreewise product (dimension of a Segre-type tensor)."""
    if f.is_zero() or g.is_zero():
        return GradedDimFunction.zero()
    lo, hi = _hull([f, g])
    below = Tail.combine(f.below, g.below, lambda a, b: a and b) if f.below and g.below else None
    above = Tail.combine(f.above, g.above, lambda a, b: a and b) if f.above and g.above else None
    return GradedDimFunction.from_callable(lambda n: f(n) * g(n), lo, hi, below, above)


def dim_sum(fs) -> GradedDimFunction:
    fs = [f for f in fs if not f.is_zero()]
    if not fs:
        return GradedDimFunction.zero()
    lo, hi = _hull(fs)
    below = above = None
    for f in fs:
        below = Tail.combine(below, f.below, lambda a, b: a or b)
        above = Tail.combine(above, f.above, lambda a, b: a or b)
    return GradedDimFunction.from_callable(lambda n: sum(f(n) for f in fs), lo, hi, below, above)


def _checked_tail(fn, g: int, start: int, step: int, pattern_at) -> None:
    for n in range(start, start + step * g, step):
        if (fn(n) > 0) != pattern_at(n):
            raise PreconditionError(
                f"Hilbert function positivity at degree {n} disagrees with the semigroup "
                "certificate (is the ring a domain?)")


def ring_dim_function(hs: HilbertSeries, extra: int = 0) -> GradedDimFunction:
    """n -> dim R_n, certificate from the semigroup of the series' weights."""
    g, c = semigroup_conductor(hs.denominator)
    hi = c * g + g + extra
    vals = hs.coefficients(hi, 0)
    above = Tail(g, tuple(r == 0 for r in range(g)))

    def exact(n):
        return hs.coefficient(n) if n >= 0 else 0

    _checked_tail(exact, g, c * g, 1, lambda n: n % g == 0)
    return GradedDimFunction(0, hi, tuple(vals), None, above, exact)


def top_lc_function(hs: HilbertSeries, a: int, extra: int = 0) -> GradedDimFunction:
    """n -> dim [H^d_m(R)]_n = dim R_{a-n} for a graded complete intersection
    (graded duality with omega_R = R(a))."""
    g, c = semigroup_conductor(hs.denominator)
    lo = a - (c * g + g + extra)

    def exact(n):
        return hs.coefficient(a - n) if a - n >= 0 else 0

    below = Tail(g, tuple((a - r) % g == 0 for r in range(g)))
    _checked_tail(exact, g, a - c * g, -1, lambda n: (a - n) % g == 0)
    return GradedDimFunction.from_callable(exact, lo, a, below, None)


@dataclass(frozen=True)
class LCTable:
    """dim [H^k_m(M)]_n for k = 0..dim."""

    dim: int
    entries: tuple
    terms: dict = field(default_factory=dict, compare=False)

    def __getitem__(self, k: int) -> GradedDimFunction:
        if 0 <= k < len(self.entries):
            return self.entries[k]
        return GradedDimFunction.zero()

    def to_dict(self) -> dict:
        return {"dim": self.dim, "H": {str(k): f.to_dict() for k, f in enumerate(self.entries)}}


def lc_table_ci(ring: RingSpec) -> LCTable:
    if not ring.complete_intersection:
        raise PreconditionError("lc_table_ci needs the complete-intersection flag")
    d = ring.dim
    if d < 1:
        raise PreconditionError("ring has dimension 0")
    top = top_lc_function(hilbert_series(ring), a_invariant_ci(ring))
    return LCTable(d, tuple([GradedDimFunction.zero()] * d + [top]))


def kunneth(m_table: LCTable, n_table: LCTable, ring_series) -> LCTable:
    """Local cohomology of M#N from that of M and N, degreewise:

    H^k(M#N)_n = M_n H^k(N)_n + H^k(M)_n N_n + sum_{i+j=k+1} H^i(M)_n H^j(N)_n
    """
    for name, t in (("first", m_table), ("second", n_table)):
        if not (t[0].is_zero() and t[1].is_zero()):
            raise PreconditionError(f"{name} factor has nonvanishing H^0 or H^1")
    hs_m, hs_n = ring_series
    M = ring_dim_function(hs_m)
    N = ring_dim_function(hs_n)
    dm, dn = m_table.dim, n_table.dim
    d = dm + dn - 1
    entries = []
    terms = {}
    for k in range(d + 1):
        parts = []
        if not n_table[k].is_zero():
            parts.append((f"M#H^{k}(N)", dim_product(M, n_table[k])))
        if not m_table[k].is_zero():
            parts.append((f"H^{k}(M)#N", dim_product(m_table[k], N)))
        for i in range(0, k + 2):
            j = k + 1 - i
            if m_table[i].is_zero() or n_table[j].is_zero():
                continue
            parts.append((f"H^{i}(M)#H^{j}(N)", dim_product(m_table[i], n_table[j])))
        parts = [(lbl, f) for lbl, f in parts if not f.is_zero()]
        terms[k] = parts
        entries.append(dim_sum([f for _, f in parts]))
    return LCTable(d, tuple(entries), terms)


def _segre_table(a: RingSpec, b: RingSpec) -> LCTable:
    for r in (a, b):
        if not r.complete_intersection:
            raise PreconditionError("Segre factors must be complete intersections")
        if r.dim < 2:
            raise PreconditionError(f"factor {r} has dimension {r.dim} < 2")
    return kunneth(lc_table_ci(a), lc_table_ci(b), (hilbert_series(a), hilbert_series(b)))


@dataclass(frozen=True)
class CMWitness:
    k: int
    degree: int
    term: str
    dim: int


def is_cm_segre(a: RingSpec, b: RingSpec) -> tuple[bool, CMWitness | None]:
    """Cohen-Macaulayness of R#S, decided exactly from the Kunneth table."""
    table = _segre_table(a, b)
    for k in range(table.dim):
        for label, f in table.terms[k]:
            n = f.first_nonzero()
            if n is not None:
                label = label.replace("M", "R").replace("N", "S")
                return False, CMWitness(k, n, label, f(n))
    return True, None


def a_invariant_segre(a: RingSpec, b: RingSpec) -> int:
    table = _segre_table(a, b)
    top = table[table.dim].max_support()
    if top is None:
        raise PreconditionError("top local cohomology of the Segre product vanishes")
    return top


def segre_lc_table(a: RingSpec, b: RingSpec) -> LCTable:
    return _segre_table(a, b)


# --- brute-force Cech oracle ----------------------------------------------------


def lc_dim_oracle(ring: RingSpec, sop, n: int, t_max: int = 40, patience: int = 4) -> tuple[int, int]:
    """dim [H^2_m(R)]_n from truncated Cech cokernels, by plain linear algebra
    in the ambient polynomial ring (no Groebner bases, no duality).

    At truncation t the degree-n part of coker(R_g1 + R_g2 -> R_g1g2), with
    denominators capped at (g1 g2)^t, is (P / (rels, g1^t, g2^t))_D with
    D = n + t (deg g1 + deg g2).  Returns (value, t) once ``patience``
    consecutive truncations agree.
    """
    if ring.complete_intersection and ring.dim != 2:
        raise PreconditionError("the Cech oracle needs a 2-dimensional ring")
    names = ring.names
    i1, i2 = (names.index(s) if isinstance(s, str) else s for s in sop)
    w = ring.weights
    F = GF(ring.p)
    rels = [f.terms for f in ring.relations]
    rel_degs = [f.degree() for f in ring.relations]
    history = []
    for t in range(1, t_max + 1):
        D = n + t * (w[i1] + w[i2])
        if D < 0 or t * min(w[i1], w[i2]) <= abs(n):
            continue
        monos = weighted_monomials(w, D)
        if not monos:
            history.append(0)
        else:
            index = {e: k for k, e in enumerate(monos)}
            rows = []
            for rel, rd in zip(rels, rel_degs):
                for m in weighted_monomials(w, D - rd) if D >= rd else []:
                    v = [0] * len(monos)
                    for e, c in rel.items():
                        v[index[tuple(a + b for a, b in zip(e, m))]] = c
                    rows.append(v)
            for i in (i1, i2):
                for e in monos:
                    if e[i] >= t:
                        v = [0] * len(monos)
                        v[index[e]] = 1
                        rows.append(v)
            rank = len(rref(rows, F, len(monos))[1]) if rows else 0
            history.append(len(monos) - rank)
        if len(history) >= patience and len(set(history[-patience:])) == 1:
            return history[-1], t
    raise PreconditionError(f"Cech truncations did not stabilise by t={t_max} (values {history})")
