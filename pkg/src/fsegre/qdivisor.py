"""Q-divisors on the projective line and their section rings.

Homogeneous coordinates are (u : v).  A finite point t is the zero of the
linear form u - t*v; the point at infinity is the zero of v.  So ``0`` is
{u = 0}, ``INF`` is {v = 0} and ``-1`` is {u = -v}.

Binary forms of degree d are coefficient tuples c with c[j] the coefficient
of u^(d-j) v^j.  A rational function is a binary form over a product of
linear forms (a dict point -> exponent) of the same degree.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from .arith import QQ, ExactMatrix, Field, field_for, kernel_basis, weighted_monomials
from .errors import ParseError, PreconditionError
from .graded import GradedAlgebra, HilbertSeries, discover_presentation

INF = "inf"


def _point(t, field: Field):
    if isinstance(t, str):
        s = t.strip().lower()
        if s in ("inf", "infinity", "∞"):
            return INF
        t = Fraction(s)
    if t == INF:
        return INF
    return field.coerce(t)


def _point_key(t):
    return (1, 0) if t == INF else (0, t)


def _point_str(t, field: Field = QQ) -> str:
    if t == INF:
        return "inf"
    if field.p is not None and t > field.p // 2:
        return str(t - field.p)
    return str(t)


# --- binary forms ----------------------------------------------------------------


def linear_form(t, field: Field) -> tuple:
    if t == INF:
        return (0, 1)
    return (field.coerce(1), field.neg(t))


def bf_mul(a: tuple, b: tuple, field: Field) -> tuple:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            if y != 0:
                out[i + j] = field.add(out[i + j], field.mul(x, y))
    return tuple(out)


def bf_power(f: tuple, k: int, field: Field) -> tuple:
    out = (field.coerce(1),)
    for _ in range(k):
        out = bf_mul(out, f, field)
    return out


def bf_divide_linear(f: tuple, t, field: Field):
    """f / (linear form of t), or None when it does not divide."""
    if len(f) < 2:
        return None if any(x != 0 for x in f) else f
    if t == INF:
        return f[1:] if f[0] == 0 else None
    # synthetic division of f(u, 1) by (u - t)
    q = [f[0]]
    for c in f[1:]:
        q.append(field.add(c, field.mul(t, q[-1])))
    if q[-1] != 0:
        return None
    return tuple(q[:-1])


def bf_order(f: tuple, t, field: Field) -> int:
    if all(x == 0 for x in f):
        raise ValueError("order of the zero form")
    k = 0
    while True:
        g = bf_divide_linear(f, t, field)
        if g is None:
            return k
        f, k = g, k + 1


def bf_from_factors(factors: dict, field: Field) -> tuple:
    out = (field.coerce(1),)
    for t, k in factors.items():
        out = bf_mul(out, bf_power(linear_form(t, field), k, field), field)
    return out


def _vanishing_rows(d: int, t, m: int, field: Field) -> list:
    """Linear conditions on the coefficients of a degree-d form for it to
    vanish to order >= m at t."""
    rows = []
    if t == INF:
        for j in range(min(m, d + 1)):
            rows.append(tuple(field.coerce(1) if i == j else 0 for i in range(d + 1)))
        return rows
    one = field.coerce(1)
    for i in range(m):
        row = []
        for j in range(d + 1):
            e = d - j
            if e < i:
                row.append(0)
                continue
            # coefficient of s^i in (t + s)^e
            c = field.mul(field.coerce(math.comb(e, i)), _fpow(t, e - i, field, one))
            row.append(c)
        rows.append(tuple(row))
    return rows


def _fpow(x, k, field, one):
    out = one
    for _ in range(k):
        out = field.mul(out, x)
    return out


def _format_factor(t, k, field: Field) -> str:
    if t == INF:
        base = "v"
    elif t == 0:
        base = "u"
    else:
        c = field.neg(t)
        if field.p is not None and c > field.p // 2:
            c = c - field.p
        base = f"(u + {c}*v)" if c != 1 else "(u + v)"
        if c == -1:
            base = "(u - v)"
        elif c < 0 and c != -1:
            base = f"(u - {-c}*v)"
    return base if k == 1 else f"{base}^{k}"


def format_form(f: tuple, field: Field) -> str:
    d = len(f) - 1
    pieces = []
    for j, c in enumerate(f):
        if c == 0:
            continue
        if field.p is not None and c > field.p // 2:
            c = c - field.p
        mono = "*".join(x for x in (
            "" if d - j == 0 else ("u" if d - j == 1 else f"u^{d - j}"),
            "" if j == 0 else ("v" if j == 1 else f"v^{j}")) if x)
        if not mono:
            term = str(abs(c))
        elif abs(c) == 1:
            term = mono
        else:
            term = f"{abs(c)}*{mono}"
        sign = "-" if c < 0 else "+"
        pieces.append((sign, term))
    if not pieces:
        return "0"
    s = ("-" if pieces[0][0] == "-" else "") + pieces[0][1]
    for sign, term in pieces[1:]:
        s += f" {sign} {term}"
    return s


# --- rational functions ------------------------------------------------------------


@dataclass(frozen=True)
class RationalFunctionP1:
    """numerator / prod(linear form of t ^ k for t, k in denominator)."""

    numerator: tuple
    denominator: tuple  # sorted (point, exponent) pairs, exponents > 0
    field: Field = QQ

    def __post_init__(self):
        den = dict(self.denominator)
        if len(self.numerator) - 1 != sum(den.values()):
            raise ValueError("numerator degree must equal denominator degree")
        items = tuple(sorted(((t, k) for t, k in den.items() if k), key=lambda x: _point_key(x[0])))
        object.__setattr__(self, "denominator", items)

    @classmethod
    def from_factors(cls, numerator: dict, denominator: dict, field=QQ) -> RationalFunctionP1:
        """Build from factored form, e.g. {INF: 2, -1: 1} over {0: 3} is
        v^2 (u + v) / u^3."""
        field = field_for(field)
        num = {_point(t, field): k for t, k in numerator.items()}
        den = {_point(t, field): k for t, k in denominator.items()}
        return cls(bf_from_factors(num, field), tuple(den.items()), field)

    @property
    def den(self) -> dict:
        return dict(self.denominator)

    def is_zero(self) -> bool:
        return all(x == 0 for x in self.numerator)

    def order_at(self, t) -> int:
        t = _point(t, self.field)
        return bf_order(self.numerator, t, self.field) - self.den.get(t, 0)

    def poles(self) -> dict:
        out = {}
        for t in self.den:
            k = self.order_at(t)
            if k < 0:
                out[t] = k
        return out

    def is_section_of(self, E: QDivisorP1) -> bool:
        """g in H^0(E): div(g) + E >= 0."""
        if self.is_zero():
            return True
        E = E.floor()
        points = set(self.den) | set(E.coeffs)
        return all(self.order_at(t) + E.coeffs.get(t, 0) >= 0 for t in points)

    def reduced(self) -> RationalFunctionP1:
        num, den = self.numerator, self.den
        for t in list(den):
            while den[t] and (q := bf_divide_linear(num, t, self.field)) is not None:
                num = q
                den[t] -= 1
        return RationalFunctionP1(num, tuple(den.items()), self.field)

    def over(self, den: dict) -> tuple:
        """Numerator of self rewritten over the denominator ``den``."""
        F = self.field
        num = self.numerator
        mine = self.den
        for t in set(mine) | set(den):
            k = den.get(t, 0) - mine.get(t, 0)
            if k > 0:
                num = bf_mul(num, bf_power(linear_form(t, F), k, F), F)
            for _ in range(-k):
                num = bf_divide_linear(num, t, F)
                if num is None:
                    raise ValueError("function has a pole outside the target denominator")
        return num

    def __mul__(self, other: RationalFunctionP1) -> RationalFunctionP1:
        den = self.den
        for t, k in other.den.items():
            den[t] = den.get(t, 0) + k
        return RationalFunctionP1(bf_mul(self.numerator, other.numerator, self.field),
                                  tuple(den.items()), self.field)

    def proportional_to(self, other: RationalFunctionP1) -> bool:
        """True iff self = c * other for a nonzero constant c."""
        F = self.field
        a = bf_mul(self.numerator, bf_from_factors(other.den, F), F)
        b = bf_mul(other.numerator, bf_from_factors(self.den, F), F)
        if all(x == 0 for x in a) or all(x == 0 for x in b):
            return False
        i = next(j for j, x in enumerate(a) if x != 0)
        if b[i] == 0:
            return False
        c = F.mul(a[i], F.inv(b[i]))
        return all(x == F.mul(c, y) for x, y in zip(a, b))

    def __str__(self):
        F = self.field
        num = self.numerator
        if self.is_zero():
            return "0"
        pulled = []
        for t in sorted(set(self.den) | {0, INF, F.coerce(-1)}, key=_point_key):
            k = 0
            while (q := bf_divide_linear(num, t, F)) is not None and len(num) > 1:
                num, k = q, k + 1
            if k:
                pulled.append(_format_factor(t, k, F))
        rest = format_form(num, F)
        if len(num) > 1:
            pulled.append(f"({rest})" if "+" in rest or " - " in rest else rest)
        elif rest != "1":
            pulled.insert(0, rest)
        top = "*".join(pulled) or "1"
        den = "*".join(_format_factor(t, k, F) for t, k in self.denominator)
        return top if not den else f"{top}/({den})" if "*" in den else f"{top}/{den}"


# --- divisors ----------------------------------------------------------------------


class QDivisorP1:
    """sum q_i * (t_i) with rational q_i and distinct points t_i."""

    def __init__(self, coeffs=None, field=QQ):
        self.field = field_for(field)
        out = {}
        for t, q in dict(coeffs or {}).items():
            t = _point(t, self.field)
            q = Fraction(q)
            out[t] = out.get(t, Fraction(0)) + q
        self.coeffs = {t: q for t, q in sorted(out.items(), key=lambda x: _point_key(x[0])) if q}

    def _new(self, coeffs):
        return QDivisorP1(coeffs, self.field)

    @property
    def degree(self) -> Fraction:
        return sum(self.coeffs.values(), Fraction(0))

    def support(self) -> list:
        return list(self.coeffs)

    def __getitem__(self, t):
        return self.coeffs.get(_point(t, self.field), Fraction(0))

    def __add__(self, other: QDivisorP1):
        out = dict(self.coeffs)
        for t, q in other.coeffs.items():
            out[t] = out.get(t, 0) + q
        return self._new(out)

    def __neg__(self):
        return self._new({t: -q for t, q in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, n):
        return self._new({t: q * n for t, q in self.coeffs.items()})

    __rmul__ = __mul__

    def __eq__(self, other):
        return isinstance(other, QDivisorP1) and self.coeffs == other.coeffs and self.field == other.field

    def __hash__(self):
        return hash(tuple(self.coeffs.items()))

    def floor(self) -> IntDivisorP1:
        return IntDivisorP1({t: math.floor(q) for t, q in self.coeffs.items()}, self.field)

    def fractional_part(self) -> QDivisorP1:
        """D' = sum ((s_i - 1)/s_i) (t_i), s_i the denominator of q_i."""
        return self._new({t: Fraction(q.denominator - 1, q.denominator) for t, q in self.coeffs.items()})

    def is_integral(self) -> bool:
        return all(q.denominator == 1 for q in self.coeffs.values())

    def is_ample(self) -> bool:
        return self.degree > 0

    def to_dict(self) -> dict:
        base = "Q" if self.field.p is None else self.field.p
        return {"base": base,
                "points": [{"point": _point_str(t, self.field), "coeff": str(q)} for t, q in self.coeffs.items()]}

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for t, q in self.coeffs.items():
            parts.append(f"{q}({_point_str(t, self.field)})")
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self):
        return f"QDivisorP1({self})"


class IntDivisorP1(QDivisorP1):
    def __init__(self, coeffs=None, field=QQ):
        super().__init__(coeffs, field)
        if not self.is_integral():
            raise ValueError(f"non-integral coefficients in {self}")
        self.coeffs = {t: int(q) for t, q in self.coeffs.items()}

    @property
    def degree(self) -> int:
        return sum(self.coeffs.values())


def floor_divisor(D: QDivisorP1) -> IntDivisorP1:
    return D.floor()


def fractional_part(D: QDivisorP1) -> QDivisorP1:
    return D.fractional_part()


def floor_identity_check(D: QDivisorP1, n: int) -> bool:
    """-floor(-nD) == floor(D' + nD)."""
    lhs = -((-n * D).floor())
    rhs = (D.fractional_part() + n * D).floor()
    return lhs.coeffs == rhs.coeffs


def canonical_divisor(field=QQ) -> IntDivisorP1:
    return IntDivisorP1({INF: -2}, field)


# --- Riemann-Roch spaces -------------------------------------------------------------


def _positive_part(E: QDivisorP1) -> dict:
    return {t: int(k) for t, k in E.coeffs.items() if k > 0}


def riemann_roch_space(E: QDivisorP1) -> list[RationalFunctionP1]:
    """Basis of H^0(P^1, O(floor(E))), numerators in reduced echelon form
    over the canonical denominator prod l_t^max(e_t, 0)."""
    E = E.floor()
    F = E.field
    if E.degree < 0:
        return []
    den = _positive_part(E)
    d = sum(den.values())
    rows = []
    for t, k in E.coeffs.items():
        if k < 0:
            rows.extend(_vanishing_rows(d, t, -k, F))
    basis = kernel_basis(ExactMatrix(tuple(rows), F, d + 1))
    den_items = tuple(den.items())
    return [RationalFunctionP1(tuple(v), den_items, F) for v in basis]


def riemann_roch_dim(E: QDivisorP1) -> int:
    return max(E.floor().degree + 1, 0)


# --- section rings ---------------------------------------------------------------------


class _SectionAlgebra(GradedAlgebra):
    def __init__(self, D: QDivisorP1):
        if not D.is_ample():
            raise PreconditionError(f"divisor {D} is not ample (degree {D.degree})")
        self.D = D
        self.field = D.field
        self._den: dict = {}
        self._basis: dict = {}

    def den(self, n):
        if n not in self._den:
            self._den[n] = _positive_part((n * self.D).floor())
        return self._den[n]

    def dim(self, n):
        return riemann_roch_dim(n * self.D)

    def vector_length(self, n):
        return sum(self.den(n).values()) + 1

    def basis_vectors(self, n):
        if n not in self._basis:
            self._basis[n] = [g.numerator for g in riemann_roch_space(n * self.D)]
        return self._basis[n]

    def element(self, vec, n) -> RationalFunctionP1:
        return RationalFunctionP1(tuple(vec), tuple(self.den(n).items()), self.field)

    def multiply(self, x, m, y, n):
        g = self.element(x, m) * self.element(y, n)
        return g.over(self.den(m + n))


@dataclass
class SectionRingPresentation:
    """Generators f_i T^(d_i) of the section ring of D and relations among
    them (dicts exponent -> coefficient, variables in generator order)."""

    divisor: QDivisorP1
    generators: list  # (degree, RationalFunctionP1)
    relations: list  # (degree, {exp: coeff})
    degree_bound: int

    @property
    def degrees(self) -> list[int]:
        return [d for d, _ in self.generators]

    def relation_strings(self, names=None) -> list[str]:
        names = names or [f"g{i + 1}" for i in range(len(self.generators))]
        return [format_relation(r, names, self.divisor.field) for _, r in self.relations]


def format_relation(rel: dict, names, field: Field = QQ) -> str:
    pieces = []
    for e, c in sorted(rel.items(), reverse=True):
        if field.p is not None and c > field.p // 2:
            c = c - field.p
        mono = "*".join(n if k == 1 else f"{n}^{k}" for n, k in zip(names, e) if k) or "1"
        sign = "-" if c < 0 else "+"
        c = abs(c)
        pieces.append((sign, mono if c == 1 else f"{c}*{mono}"))
    if not pieces:
        return "0"
    s = ("-" if pieces[0][0] == "-" else "") + pieces[0][1]
    for sign, term in pieces[1:]:
        s += f" {sign} {term}"
    return s


def demazure_presentation(D: QDivisorP1, degree_bound: int) -> SectionRingPresentation:
    alg = _SectionAlgebra(D)
    pres = discover_presentation(alg, degree_bound, certify=False)
    gens = [(d, alg.element(v, d)) for d, v in pres.generators]
    return SectionRingPresentation(D, gens, pres.relations, degree_bound)


def section_ring_generators(D: QDivisorP1, degree_bound: int) -> list:
    """Minimal homogeneous generators (degree, f) of the section ring of D up
    to ``degree_bound``."""
    return demazure_presentation(D, degree_bound).generators


def find_relation(D: QDivisorP1, generators: list, n: int) -> list[dict]:
    """All linear dependencies in degree n among monomials in the given
    generators (a basis of the kernel, as exponent -> coefficient dicts)."""
    alg = _SectionAlgebra(D)
    F = D.field
    degs = [d for d, _ in generators]
    monos = weighted_monomials(degs, n)
    if not monos:
        return []
    den = alg.den(n)
    cols = []
    for e in monos:
        g = RationalFunctionP1((F.coerce(1),), (), F)
        for (d, f), k in zip(generators, e):
            for _ in range(k):
                g = g * f
        cols.append(g.over(den))
    length = alg.vector_length(n)
    rows = tuple(tuple(c[r] for c in cols) for r in range(length))
    kernel = kernel_basis(ExactMatrix(rows, F, len(monos)))
    return [{monos[i]: c for i, c in enumerate(k) if c != 0} for k in kernel]


def section_hilbert(D: QDivisorP1, window) -> list[int]:
    lo, hi = (0, window) if isinstance(window, int) else window
    return [riemann_roch_dim(n * D) for n in range(lo, hi + 1)]


def omega_hilbert(D: QDivisorP1, window) -> list[int]:
    """dim of the degree-n piece of the canonical module,
    H^0(floor(K + D' + nD))."""
    lo, hi = (0, window) if isinstance(window, int) else window
    K = canonical_divisor(D.field)
    Dp = D.fractional_part()
    return [riemann_roch_dim(K + Dp + n * D) for n in range(lo, hi + 1)]


def a_invariant_from_omega(D: QDivisorP1) -> int:
    """a = -min{n : omega_n != 0}."""
    if not D.is_ample():
        raise PreconditionError(f"divisor {D} is not ample")
    K = canonical_divisor(D.field)
    Dp = D.fractional_part()
    # deg(K + D' + nD) >= 0 is necessary; start just below that bound
    n = math.floor((2 - Dp.degree) / D.degree) - 2
    while riemann_roch_dim(K + Dp + n * D) == 0:
        n += 1
    return -n


# --- divisor files -----------------------------------------------------------------------


def parse_divisor(text: str, source: str = "<divisor>") -> QDivisorP1:
    """JSON with ``points`` [{"point": "0" | "inf" | "s/t", "coeff": "s/t"}]
    and optional ``base`` ("Q" or a prime)."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{source}: not valid JSON ({exc})") from None
    if not isinstance(doc, dict) or "points" not in doc:
        raise ParseError(f"{source}: missing field 'points'")
    base = doc.get("base", "Q")
    try:
        field = field_for(base)
    except (ValueError, TypeError) as exc:
        raise ParseError(f"{source}: bad base {base!r} ({exc})") from None
    if not isinstance(doc["points"], list):
        raise ParseError(f"{source}: field 'points' must be a list")
    coeffs: dict = {}
    for i, item in enumerate(doc["points"]):
        if not isinstance(item, dict) or "point" not in item or "coeff" not in item:
            raise ParseError(f"{source}: points[{i}] needs 'point' and 'coeff'")
        try:
            t = _point(str(item["point"]), field)
            q = Fraction(str(item["coeff"]))
        except (ValueError, ZeroDivisionError) as exc:
            raise ParseError(f"{source}: points[{i}]: {exc}") from None
        if t in coeffs:
            raise ParseError(f"{source}: points[{i}]: repeated point {item['point']}")
        coeffs[t] = q
    return QDivisorP1(coeffs, field)


def load_divisor(path) -> QDivisorP1:
    with open(path) as fh:
        return parse_divisor(fh.read(), str(path))


def dump_divisor(D: QDivisorP1) -> str:
    return json.dumps(D.to_dict(), indent=2) + "\n"


# --- the weighted hypersurface z^p = x^2 + y^3 as a section ring ---------------------------


def remark_divisor(p: int, k: int, field=QQ) -> QDivisorP1:
    """The divisor whose section ring is F[x, y, z]/(x^2 + y^3 - z^p) with
    weights 3p, 2p, 6, for p = 6k + 1 or p = 6k - 1."""
    h = Fraction(1, 2)
    t = Fraction(1, 3)
    if p == 6 * k + 1:
        return QDivisorP1({0: h, INF: -t, -1: Fraction(-k, p)}, field)
    if p == 6 * k - 1:
        return QDivisorP1({INF: t, -1: Fraction(k, p), 0: -h}, field)
    raise PreconditionError(f"p = {p} is neither 6k+1 nor 6k-1 for k = {k}")


def remark_generators(p: int, k: int, field=QQ) -> list:
    """Expected generators (degree, f) for z, y, x in that order."""
    F = field_for(field)
    mk = RationalFunctionP1.from_factors
    if p == 6 * k + 1:
        return [
            (6, mk({INF: 2, -1: 1}, {0: 3}, F)),
            (2 * p, mk({INF: 4 * k + 1, -1: 2 * k}, {0: 6 * k + 1}, F)),
            (3 * p, mk({INF: 6 * k + 1, -1: 3 * k}, {0: 9 * k + 1}, F)),
        ]
    if p == 6 * k - 1:
        return [
            (6, mk({0: 3}, {INF: 2, -1: 1}, F)),
            (2 * p, mk({0: 6 * k - 1}, {INF: 4 * k - 1, -1: 2 * k}, F)),
            (3 * p, mk({0: 9 * k - 1}, {INF: 6 * k - 1, -1: 3 * k}, F)),
        ]
    raise PreconditionError(f"p = {p} is neither 6k+1 nor 6k-1 for k = {k}")


def verify_remark(p: int, k: int, field=QQ, degree_bound: int | None = None,
                  window: int = 60) -> dict:
    """Check that the section ring of :func:`remark_divisor` is generated in
    degrees 6, 2p, 3p by the expected functions, with one relation in
    degree 6p of the shape z^p = c1 x^2 + c2 y^3, and that its Hilbert
    function matches that hypersurface on [0, window]."""
    F = field_for(field)
    D = remark_divisor(p, k, F)
    bound = degree_bound if degree_bound is not None else 6 * p + 8
    pres = demazure_presentation(D, bound)
    expected = remark_generators(p, k, F)
    degrees = sorted(pres.degrees)
    degrees_ok = degrees == [6, 2 * p, 3 * p]
    gens_ok = False
    if degrees_ok:
        by_deg = {d: f for d, f in pres.generators}
        gens_ok = all(by_deg[d].proportional_to(f) for d, f in expected)
    # relation among the expected generators, named z, y, x
    rels = find_relation(D, expected, 6 * p)
    rel_str = format_relation(rels[0], ("z", "y", "x"), F) if len(rels) == 1 else None
    shape_ok = (len(rels) == 1 and set(rels[0]) == {(p, 0, 0), (0, 3, 0), (0, 0, 2)})
    found_rel_degrees = sorted(d for d, _ in pres.relations)
    # the hypersurface Hilbert function depends only on the degrees
    hyp_series = HilbertSeries.from_ci([6 * p], (3 * p, 2 * p, 6))
    hyp_ok = shape_ok and hyp_series.coefficients(window) == section_hilbert(D, window)
    return {
        "p": p,
        "k": k,
        "divisor": str(D),
        "generator_degrees": degrees,
        "generators": [f"{f} T^{d}" for d, f in pres.generators],
        "degrees_match": degrees_ok,
        "generators_match": gens_ok,
        "relation_degrees": found_rel_degrees,
        "relation": rel_str,
        "relation_shape_match": shape_ok,
        "hilbert_match": hyp_ok,
        "ok": degrees_ok and gens_ok and shape_ok and hyp_ok and found_rel_degrees == [6 * p],
    }
