"""Frobenius-based singularity tests.

Fedder's criterion, Frobenius closure membership, and the top local
cohomology H^2_m(R) of a two-dimensional complete intersection handled as
Cech classes [r / (g1^a g2^b)] over a homogeneous system of parameters
(g1, g2).  Bounded searches return three-valued verdicts.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Sequence

from .arith import GF, ExactMatrix, kernel_basis
from .errors import PreconditionError
from .graded import RingSpec, a_invariant_ci, hilbert_series
from .poly import (Ideal, Poly, PolyRing, bracket_power, frobenius_bracket_maximal,
                   frobenius_power, ideal_colon, infer_variables)

CONFIRMED = "confirmed"
REFUTED = "refuted"
INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class FrobeniusVerdict:
    """``outcome`` is confirmed (at exponent ``e``), refuted, or inconclusive
    up to ``e_max``.  A bounded search is never reported as refuted."""

    outcome: str
    e: int | None
    e_max: int
    evidence: str = ""

    @property
    def confirmed(self) -> bool:
        return self.outcome == CONFIRMED

    def to_dict(self) -> dict:
        return {"verdict": self.outcome, "e": self.e, "e_max": self.e_max, "evidence": self.evidence}


# --- Fedder -------------------------------------------------------------------


def _as_poly(p: int, f) -> Poly:
    if isinstance(f, Poly):
        if f.ring.p != p:
            raise PreconditionError(f"polynomial lives over F_{f.ring.p}, not F_{p}")
        return f
    ring = PolyRing.make(infer_variables(f) or ["x"], p=p)
    return ring(f)


def fedder_principal(p: int, f) -> bool:
    """F-purity of F_p[x]/(f): f^(p-1) not in (x_1^p, ..., x_n^p)."""
    f = _as_poly(p, f)
    return not frobenius_bracket_maximal(f.ring, p).contains(f ** (p - 1))


def fedder_general(I: Ideal, p: int | None = None) -> bool:
    """F-purity of P/I: (I^[p] : I) not contained in m^[p]."""
    ring = I.ring
    p = ring.p if p is None else p
    if p != ring.p:
        raise PreconditionError(f"ideal lives over F_{ring.p}, not F_{p}")
    colon = ideal_colon(bracket_power(I, p), I)
    m = frobenius_bracket_maximal(ring, p)
    return any(not m.contains(g) for g in colon.gens)


# --- Frobenius closure --------------------------------------------------------------


def frobenius_closure_member(ring: RingSpec, I, g, e_max: int) -> FrobeniusVerdict:
    """Search e <= e_max with g^(p^e) in I^[p^e] + (relations)."""
    P = ring.poly_ring
    if not isinstance(I, Ideal):
        I = Ideal([P(x) for x in I], P)
    g = P(g)
    p = ring.p
    for e in range(0, e_max + 1):
        q = p ** e
        big = bracket_power(I, q) + ring.ideal
        if big.contains(frobenius_power(g, e)):
            return FrobeniusVerdict(CONFIRMED, e, e_max,
                                    f"{g}^{q} lies in the bracket power of {I.gens and [str(x) for x in I.gens]}")
    return FrobeniusVerdict(INCONCLUSIVE, None, e_max, f"no membership for e <= {e_max}")


# --- Cech classes ------------------------------------------------------------------


def _sop_index(ring: RingSpec, sop) -> tuple[int, int]:
    out = []
    for s in sop:
        if isinstance(s, str):
            if s not in ring.names:
                raise PreconditionError(f"unknown variable {s!r} in system of parameters")
            out.append(ring.names.index(s))
        else:
            out.append(int(s))
    if len(out) != 2 or out[0] == out[1]:
        raise PreconditionError("a system of parameters here is two distinct variables")
    return out[0], out[1]


@lru_cache(maxsize=256)
def _quotient_ideal(ring: RingSpec, i1: int, i2: int, a: int, b: int) -> Ideal:
    P = ring.poly_ring
    return Ideal(list(ring.relations) + [P.gen(i1) ** a, P.gen(i2) ** b], P)


@lru_cache(maxsize=256)
def check_sop(ring: RingSpec, i1: int, i2: int) -> bool:
    """True iff R/(g1, g2) is finite-dimensional (every variable has a pure
    power among the leading monomials)."""
    lms = _quotient_ideal(ring, i1, i2, 1, 1).leading_monomials()
    for v in range(ring.nvars):
        if not any(m[v] > 0 and sum(m) == m[v] for m in lms):
            return False
    return True


def _require_surface(ring: RingSpec):
    if not ring.complete_intersection or ring.dim != 2:
        raise PreconditionError("Cech classes need a 2-dimensional complete intersection")


def default_sop(ring: RingSpec) -> tuple[int, int]:
    """The lexicographically last pair of variables that is a system of
    parameters."""
    _require_surface(ring)
    n = ring.nvars
    pairs = sorted(((i, j) for i in range(n) for j in range(i + 1, n)), reverse=True)
    for i, j in pairs:
        if check_sop(ring, i, j):
            return i, j
    raise PreconditionError(f"no pair of variables of {ring} is a system of parameters")


def _resolve_sop(ring: RingSpec, sop) -> tuple[int, int]:
    _require_surface(ring)
    if sop is None:
        return default_sop(ring)
    i1, i2 = _sop_index(ring, sop)
    if not check_sop(ring, i1, i2):
        raise PreconditionError(f"({ring.names[i1]}, {ring.names[i2]}) is not a system of parameters")
    return i1, i2


@dataclass(frozen=True)
class CechClass:
    """[numerator / (g1^a g2^b)] in H^2_m(R)."""

    ring: RingSpec = field(repr=False)
    numerator: Poly
    a: int
    b: int
    sop: tuple

    @property
    def degree(self) -> int:
        w = self.ring.weights
        if not self.numerator:
            raise ValueError("the zero numerator has no degree; use cech_is_zero")
        return self.numerator.degree() - self.a * w[self.sop[0]] - self.b * w[self.sop[1]]

    def nominal_degree(self, numerator_degree: int) -> int:
        w = self.ring.weights
        return numerator_degree - self.a * w[self.sop[0]] - self.b * w[self.sop[1]]

    def __str__(self):
        g1, g2 = (self.ring.names[i] for i in self.sop)
        den = "*".join(f"{g}^{k}" if k > 1 else g for g, k in ((g1, self.a), (g2, self.b)))
        return f"[({self.numerator})/({den})]"


def cech_make(ring: RingSpec, r, a: int, b: int, sop=None) -> CechClass:
    i1, i2 = _resolve_sop(ring, sop)
    if a < 1 or b < 1:
        raise PreconditionError("Cech exponents must be positive")
    r = ring.reduce(ring.poly_ring(r))
    if not r.is_homogeneous():
        raise PreconditionError(f"numerator {r} is not homogeneous")
    return CechClass(ring, r, a, b, (i1, i2))


def cech_is_zero(cls: CechClass) -> bool:
    return _quotient_ideal(cls.ring, cls.sop[0], cls.sop[1], cls.a, cls.b).contains(cls.numerator)


def cech_frobenius(cls: CechClass, e: int = 1) -> CechClass:
    """[r/(g1^a g2^b)] -> [r^q/(g1^(qa) g2^(qb))], q = p^e."""
    q = cls.ring.p ** e
    r = cls.ring.reduce(frobenius_power(cls.numerator, e))
    return CechClass(cls.ring, r, cls.a * q, cls.b * q, cls.sop)


def cech_scale(cls: CechClass, c) -> CechClass:
    c = cls.ring.poly_ring(c)
    if not c.is_homogeneous():
        raise PreconditionError(f"multiplier {c} is not homogeneous")
    return CechClass(cls.ring, cls.ring.reduce(c * cls.numerator), cls.a, cls.b, cls.sop)


def _lift(cls: CechClass, a: int, b: int) -> Poly:
    P = cls.ring.poly_ring
    i1, i2 = cls.sop
    return cls.numerator * P.gen(i1) ** (a - cls.a) * P.gen(i2) ** (b - cls.b)


def cech_add(x: CechClass, y: CechClass, scale: int = 1) -> CechClass:
    if x.ring != y.ring or x.sop != y.sop:
        raise PreconditionError("classes live over different rings or parameters")
    a, b = max(x.a, y.a), max(x.b, y.b)
    r = _lift(x, a, b) + _lift(y, a, b).scale(scale)
    return CechClass(x.ring, x.ring.reduce(r), a, b, x.sop)


def cech_equal(x: CechClass, y: CechClass) -> bool:
    return cech_is_zero(cech_add(x, y, -1))


def cech_expand(cls: CechClass, da: int, db: int) -> CechClass:
    """Same class, written over g1^(a+da) g2^(b+db)."""
    a, b = cls.a + da, cls.b + db
    return CechClass(cls.ring, cls.ring.reduce(_lift(cls, a, b)), a, b, cls.sop)


def expected_h2_dim(ring: RingSpec, n: int) -> int:
    """dim [H^2_m(R)]_n = dim R_{a(R) - n}."""
    return hilbert_series(ring).coefficient(a_invariant_ci(ring) - n)


def h2_basis(ring: RingSpec, n: int, sop=None, max_exponent: int = 16) -> list[CechClass]:
    """Basis of [H^2_m(R)]_n: classes [m / (g1^A g2^B)] with m a standard
    monomial of R/(g1^A, g2^B) of degree n + A deg g1 + B deg g2, for the
    first (A, B) (ordered by A+B, then A) whose count matches the dual
    dimension."""
    i1, i2 = _resolve_sop(ring, sop)
    want = expected_h2_dim(ring, n)
    w = ring.weights
    P = ring.poly_ring
    if want == 0:
        return []
    for s in range(2, 2 * max_exponent + 1):
        for A in range(max(1, s - max_exponent), min(s - 1, max_exponent) + 1):
            B = s - A
            D = n + A * w[i1] + B * w[i2]
            if D < 0:
                continue
            monos = _quotient_ideal(ring, i1, i2, A, B).standard_monomials(D)
            if len(monos) == want:
                return [CechClass(ring, P.monomial(m), A, B, (i1, i2)) for m in monos]
    raise PreconditionError(
        f"could not span [H^2]_{n} (dimension {want}) with exponents up to {max_exponent}")


@dataclass
class InjectivityResult:
    injective: bool
    witnesses: list  # nonzero CechClass elements killed by F^e
    checked: dict = field(default_factory=dict)  # degree -> dim [H^2]_n

    def __bool__(self):
        return self.injective


def _window_degrees(window) -> list[int]:
    if isinstance(window, tuple) and len(window) == 2 and all(isinstance(x, int) for x in window):
        lo, hi = window
        return list(range(lo, hi + 1))
    return list(window)


def frobenius_injective_window(ring: RingSpec, sop=None, window: Iterable = (), e: int = 1,
                               max_exponent: int = 16) -> InjectivityResult:
    """Is F^e injective on [H^2_m(R)]_n for every n in the window?  F^e is
    F_p-linear, so this is a rank computation on each graded piece."""
    i1, i2 = _resolve_sop(ring, sop)
    F = GF(ring.p)
    q = ring.p ** e
    witnesses = []
    checked = {}
    for n in _window_degrees(window):
        basis = h2_basis(ring, n, (i1, i2), max_exponent)
        checked[n] = len(basis)
        if not basis:
            continue
        A, B = basis[0].a, basis[0].b
        target = _quotient_ideal(ring, i1, i2, q * A, q * B)
        images = [target.normal_form(frobenius_power(c.numerator, e)) for c in basis]
        monos = sorted({m for img in images for m in img.terms})
        if not monos:
            kernel = [tuple(int(i == j) for i in range(len(basis))) for j in range(len(basis))]
        else:
            rows = tuple(tuple(img.terms.get(m, 0) for img in images) for m in monos)
            kernel = kernel_basis(ExactMatrix(rows, F, len(basis)))
        for vec in kernel:
            num = ring.poly_ring.zero()
            for c, cls in zip(vec, basis):
                if c:
                    num = num + cls.numerator.scale(c)
            witnesses.append(CechClass(ring, num, A, B, (i1, i2)))
    return InjectivityResult(not witnesses, witnesses, checked)


def segre_frational_probe(r_ring: RingSpec, s_ring: RingSpec, eta: tuple, c: tuple, e_max: int) -> FrobeniusVerdict:
    """Search e <= e_max with c1 F^e(eta1) != 0 and c2 F^e(eta2) != 0, so the
    decomposable class (c1⊗c2) F^e(eta1⊗eta2) is nonzero in H^d(R#S)."""
    eta1, eta2 = eta
    c1, c2 = r_ring.poly_ring(c[0]), s_ring.poly_ring(c[1])
    if cech_is_zero(eta1) or cech_is_zero(eta2):
        raise PreconditionError("classes must be nonzero")
    if eta1.degree != eta2.degree:
        raise PreconditionError(f"class degrees differ: {eta1.degree} vs {eta2.degree}")
    if not (c1 and c2 and c1.is_homogeneous() and c2.is_homogeneous()):
        raise PreconditionError("multipliers must be nonzero and homogeneous")
    if c1.degree() != c2.degree():
        raise PreconditionError(f"multiplier degrees differ: {c1.degree()} vs {c2.degree()}")
    for e in range(1, e_max + 1):
        f1, f2 = cech_frobenius(eta1, e), cech_frobenius(eta2, e)
        dead = [name for name, f in (("eta1", f1), ("eta2", f2)) if cech_is_zero(f)]
        if dead:
            return FrobeniusVerdict(INCONCLUSIVE, None, e_max,
                                    f"F^{e} kills {' and '.join(dead)}; every larger power does too")
        if not cech_is_zero(cech_scale(f1, c1)) and not cech_is_zero(cech_scale(f2, c2)):
            return FrobeniusVerdict(CONFIRMED, e, e_max, f"c1*F^{e}(eta1) and c2*F^{e}(eta2) are nonzero")
    return FrobeniusVerdict(INCONCLUSIVE, None, e_max, f"some product vanished for every e <= {e_max}")
