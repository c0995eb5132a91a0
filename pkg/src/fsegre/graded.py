"""Graded ring presentations, Hilbert series, Segre and Veronese operations."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from math import gcd
from typing import Sequence

from .arith import GF, EchelonSpan, Field, count_weighted_monomials, kernel_basis, ExactMatrix, weighted_monomials
from .errors import ParseError, PreconditionError
from .poly import Ideal, Poly, PolyRing, is_power_of, reduce_poly


@dataclass(frozen=True)
class RingSpec:
    """F_p[vars]/(relations) with positive integer weights.

    ``complete_intersection`` is the user's assertion that the relations form
    a regular sequence; it unlocks the closed-form Hilbert series.
    """

    p: int
    names: tuple
    weights: tuple
    relations: tuple = ()
    complete_intersection: bool = True

    def __post_init__(self):
        if any(int(w) < 1 for w in self.weights):
            raise PreconditionError(f"variable weights must be >= 1, got {self.weights}")
        ring = self.poly_ring
        rels = []
        for r in self.relations:
            f = ring(r)
            if not f:
                raise PreconditionError("zero relation")
            if not f.is_homogeneous():
                raise PreconditionError(f"relation {f} is not homogeneous for weights {self.weights}")
            rels.append(f)
        object.__setattr__(self, "relations", tuple(rels))

    @classmethod
    def make(cls, p: int, variables, relations=(), complete_intersection: bool = True) -> RingSpec:
        """``variables`` is a list of (name, weight) pairs or a string of
        one-letter names (all of weight 1)."""
        if isinstance(variables, str):
            variables = [(v, 1) for v in variables]
        names = tuple(n for n, _ in variables)
        weights = tuple(int(w) for _, w in variables)
        return cls(int(p), names, weights, tuple(relations), complete_intersection)

    @cached_property
    def poly_ring(self) -> PolyRing:
        return PolyRing(tuple(self.names), tuple(self.weights), self.p)

    @cached_property
    def ideal(self) -> Ideal:
        return Ideal(list(self.relations), self.poly_ring)

    def __call__(self, text) -> Poly:
        return self.poly_ring(text)

    @property
    def nvars(self) -> int:
        return len(self.names)

    @property
    def dim(self) -> int:
        self._need_ci("dim")
        return self.nvars - len(self.relations)

    def relation_degrees(self) -> list[int]:
        return [f.degree() for f in self.relations]

    def reduce(self, f) -> Poly:
        """Normal form modulo the relations."""
        return self.ideal.normal_form(f)

    def standard_monomials(self, degree: int) -> list[tuple]:
        return self.ideal.standard_monomials(degree)

    def _need_ci(self, what):
        if not self.complete_intersection:
            raise PreconditionError(f"{what} needs the complete-intersection flag")

    def to_dict(self) -> dict:
        return {
            "char": self.p,
            "vars": [{"name": n, "deg": w} for n, w in zip(self.names, self.weights)],
            "relations": [str(f) for f in self.relations],
            "complete_intersection": self.complete_intersection,
        }

    def __str__(self):
        vs = ", ".join(f"{n}:{w}" for n, w in zip(self.names, self.weights))
        rel = ", ".join(str(f) for f in self.relations)
        return f"F_{self.p}[{vs}]/({rel})"


# --- ring files ---------------------------------------------------------------


def parse_ring(text: str, source: str = "<ring>") -> RingSpec:
    """Parse the JSON ring file format (fields ``char``, ``vars``,
    ``relations`` and optional ``complete_intersection``)."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{source}: not valid JSON ({exc})") from None
    if not isinstance(doc, dict):
        raise ParseError(f"{source}: top level must be an object")
    for key in ("char", "vars", "relations"):
        if key not in doc:
            raise ParseError(f"{source}: missing field '{key}'")
    p = doc["char"]
    if not isinstance(p, int):
        raise ParseError(f"{source}: field 'char' must be an integer")
    variables = []
    if not isinstance(doc["vars"], list):
        raise ParseError(f"{source}: field 'vars' must be a list")
    for i, v in enumerate(doc["vars"]):
        if not isinstance(v, dict) or "name" not in v or "deg" not in v:
            raise ParseError(f"{source}: vars[{i}] needs 'name' and 'deg'")
        if not isinstance(v["deg"], int):
            raise ParseError(f"{source}: vars[{i}].deg must be an integer")
        variables.append((str(v["name"]), v["deg"]))
    rels = doc["relations"]
    if not isinstance(rels, list) or not all(isinstance(r, str) for r in rels):
        raise ParseError(f"{source}: field 'relations' must be a list of strings")
    ci = doc.get("complete_intersection", True)
    try:
        return RingSpec.make(p, variables, rels, bool(ci))
    except ParseError as exc:
        raise ParseError(f"{source}: relations: {exc}") from None
    except ValueError as exc:
        if isinstance(exc, PreconditionError):
            raise PreconditionError(f"{source}: {exc}") from None
        raise ParseError(f"{source}: {exc}") from None


def load_ring(path) -> RingSpec:
    with open(path) as fh:
        return parse_ring(fh.read(), str(path))


def dump_ring(ring: RingSpec) -> str:
    return json.dumps(ring.to_dict(), indent=2) + "\n"


# --- Hilbert series -----------------------------------------------------------


def _window(window) -> tuple[int, int]:
    if isinstance(window, int):
        return 0, window
    lo, hi = window
    return int(lo), int(hi)


@dataclass(frozen=True)
class HilbertSeries:
    """numerator(t) / prod(1 - t^d for d in denominator)."""

    numerator: tuple
    denominator: tuple

    def __post_init__(self):
        num = list(self.numerator)
        while len(num) > 1 and num[-1] == 0:
            num.pop()
        object.__setattr__(self, "numerator", tuple(num))
        object.__setattr__(self, "denominator", tuple(sorted(self.denominator)))
        if any(d < 1 for d in self.denominator):
            raise ValueError("denominator degrees must be positive")

    @classmethod
    def from_ci(cls, relation_degrees: Sequence[int], weights: Sequence[int]) -> HilbertSeries:
        num = [1]
        for d in relation_degrees:
            nxt = num + [0] * d
            for i, c in enumerate(num):
                nxt[i + d] -= c
            num = nxt
        return cls(tuple(num), tuple(weights))

    def coefficients(self, hi: int, lo: int = 0) -> list[int]:
        if hi < 0:
            return [0] * (hi - lo + 1) if hi >= lo else []
        base = count_weighted_monomials(self.denominator, hi)
        out = []
        for n in range(lo, hi + 1):
            if n < 0:
                out.append(0)
                continue
            out.append(sum(c * base[n - i] for i, c in enumerate(self.numerator) if i <= n))
        return out

    def coefficient(self, n: int) -> int:
        return self.coefficients(n, n)[0] if n >= 0 else 0

    def __mul__(self, other: HilbertSeries) -> HilbertSeries:
        num = [0] * (len(self.numerator) + len(other.numerator) - 1)
        for i, a in enumerate(self.numerator):
            for j, b in enumerate(other.numerator):
                num[i + j] += a * b
        return HilbertSeries(tuple(num), self.denominator + other.denominator)

    def __str__(self):
        terms = []
        for i, c in enumerate(self.numerator):
            if not c:
                continue
            mono = "" if i == 0 else ("t" if i == 1 else f"t^{i}")
            if i == 0:
                s = str(abs(c))
            else:
                s = mono if abs(c) == 1 else f"{abs(c)}*{mono}"
            terms.append(("-" if c < 0 else "+", s))
        num = (terms[0][0].replace("+", "") + terms[0][1]) if terms else "0"
        for sg, s in terms[1:]:
            num += f" {sg} {s}"
        den = "*".join(f"(1 - t^{d})" if d > 1 else "(1 - t)" for d in self.denominator)
        return f"({num})/({den})" if den else f"({num})"


def hilbert_series(ring: RingSpec) -> HilbertSeries:
    ring._need_ci("hilbert_series")
    return HilbertSeries.from_ci(ring.relation_degrees(), ring.weights)


def series_coefficients(hs: HilbertSeries, window) -> list[int]:
    lo, hi = _window(window)
    return hs.coefficients(hi, lo)


def hilbert_function(ring: RingSpec, window) -> list[int]:
    """dim R_n on the window; closed form for complete intersections,
    standard-monomial counting otherwise."""
    lo, hi = _window(window)
    if ring.complete_intersection:
        return hilbert_series(ring).coefficients(hi, lo)
    return enumerate_hilbert_function(ring, (lo, hi))


def enumerate_hilbert_function(ring: RingSpec, window) -> list[int]:
    lo, hi = _window(window)
    return [len(ring.standard_monomials(n)) if n >= 0 else 0 for n in range(lo, hi + 1)]


def _values(x, lo, hi) -> list[int]:
    if isinstance(x, HilbertSeries):
        return x.coefficients(hi, lo)
    if isinstance(x, RingSpec):
        return hilbert_function(x, (lo, hi))
    raise TypeError(f"expected HilbertSeries or RingSpec, got {type(x).__name__}")


def hadamard(a, b, window) -> list[int]:
    """Degreewise product of two Hilbert functions (Segre product)."""
    lo, hi = _window(window)
    return [x * y for x, y in zip(_values(a, lo, hi), _values(b, lo, hi))]


def veronese(hs, r: int, window) -> list[int]:
    """Entry m is the coefficient of t^(r*m)."""
    if r < 1:
        raise ValueError("Veronese degree must be positive")
    lo, hi = _window(window)
    if lo < 0:
        raise ValueError("window must start at a nonnegative degree")
    vals = _values(hs, 0, r * hi)
    return [vals[r * m] for m in range(lo, hi + 1)]


def a_invariant_ci(ring: RingSpec) -> int:
    ring._need_ci("a_invariant_ci")
    return sum(ring.relation_degrees()) - sum(ring.weights)


def frobenius_pushforward_series(ring, q: int, window) -> dict:
    """Hilbert function of R^{1/q}, graded in (1/q)Z: degree n/q has
    dimension dim R_n."""
    if isinstance(ring, RingSpec) and is_power_of(q, ring.p) is None:
        raise PreconditionError(f"q={q} is not a power of p={ring.p}")
    if q < 1:
        raise PreconditionError("q must be positive")
    lo, hi = _window(window)
    vals = _values(ring, lo, hi)
    return {Fraction(n, q): v for n, v in zip(range(lo, hi + 1), vals)}


# --- presentation discovery ------------------------------------------------------


class GradedAlgebra:
    """Degreewise model of a connected graded algebra, as needed by
    :func:`discover_presentation`.  Elements of degree n are coordinate
    vectors in a fixed basis of A_n."""

    field: Field

    def dim(self, n: int) -> int:
        raise NotImplementedError

    def vector_length(self, n: int) -> int:
        """Number of coordinates of a degree-n vector (>= dim)."""
        return self.dim(n)

    def basis_vectors(self, n: int) -> list:
        """Spanning vectors of A_n, in the order new generators are tried."""
        raise NotImplementedError

    def multiply(self, x, m: int, y, n: int):
        raise NotImplementedError


@dataclass
class Presentation:
    field: Field
    generators: list  # (degree, vector)
    relations: list  # (degree, {exponent tuple: coeff})
    degree_bound: int

    @property
    def degrees(self) -> list[int]:
        return [d for d, _ in self.generators]


def discover_presentation(alg: GradedAlgebra, degree_bound: int, certify: bool = True) -> Presentation:
    """Minimal generators and minimal relations up to ``degree_bound`` by
    graded linear algebra."""
    F = alg.field
    gens: list = []
    cache: dict = {}

    def evaluate(exp: tuple, n: int):
        if exp in cache:
            return cache[exp]
        i = next(k for k, e in enumerate(exp) if e)
        d, v = gens[i]
        rest = exp[:i] + (exp[i] - 1,) + exp[i + 1:]
        if not any(rest):
            out = v
        else:
            out = alg.multiply(v, d, evaluate(rest, n - d), n - d)
        cache[exp] = out
        return out

    relations: list = []
    for n in range(1, degree_bound + 1):
        dim_n = alg.dim(n)
        length = alg.vector_length(n)
        span = EchelonSpan(F, length)
        if gens:
            degs = [d for d, _ in gens]
            for exp in weighted_monomials(degs, n):
                span.add(evaluate(exp, n))
        old_count = len(gens)
        for v in alg.basis_vectors(n):
            if len(span) == dim_n:
                break
            if span.add(v):
                gens.append((n, tuple(v)))
        if len(gens) != old_count:
            # exponent vectors grew; pad cached keys
            pad = len(gens) - old_count
            cache = {e + (0,) * pad: v for e, v in cache.items()}
        if not gens:
            continue
        degs = [d for d, _ in gens]
        monos = weighted_monomials(degs, n)
        if not monos:
            continue
        cols = [evaluate(e, n) for e in monos]
        rows = [[c[r] for c in cols] for r in range(length)]
        kernel = kernel_basis(ExactMatrix(tuple(tuple(r) for r in rows), F, len(monos)))
        if not kernel:
            continue
        index = {e: i for i, e in enumerate(monos)}
        known = EchelonSpan(F, len(monos))
        for m, rel in relations:
            for nu in weighted_monomials(degs, n - m):
                vec = [0] * len(monos)
                for e, c in rel.items():
                    e = e + (0,) * (len(degs) - len(e))
                    vec[index[tuple(a + b for a, b in zip(e, nu))]] = c
                known.add(vec)
        for k in kernel:
            if known.add(k):
                relations.append((n, {monos[i]: c for i, c in enumerate(k) if c != 0}))
    max_gen = max((d for d, _ in gens), default=0)
    if certify and degree_bound < 2 * max_gen:
        raise PreconditionError(
            f"degree bound {degree_bound} is below twice the largest generator degree "
            f"{max_gen}; generation is not certified")
    k = len(gens)
    relations = [(d, {e + (0,) * (k - len(e)): c for e, c in r.items()}) for d, r in relations]
    return Presentation(F, gens, relations, degree_bound)


class _SegreAlgebra(GradedAlgebra):
    def __init__(self, a: RingSpec, b: RingSpec):
        if a.p != b.p:
            raise PreconditionError("Segre factors must share the characteristic")
        self.a, self.b = a, b
        self.field = GF(a.p)
        self._basis: dict = {}
        self._nf: dict = {}

    def basis(self, n: int):
        if n not in self._basis:
            pairs = [(r, s) for r in self.a.standard_monomials(n) for s in self.b.standard_monomials(n)]
            self._basis[n] = (pairs, {pr: i for i, pr in enumerate(pairs)})
        return self._basis[n]

    def dim(self, n):
        return len(self.basis(n)[0])

    def basis_vectors(self, n):
        d = self.dim(n)
        return [tuple(1 if j == i else 0 for j in range(d)) for i in range(d)]

    def _reduce(self, ring: RingSpec, e: tuple) -> dict:
        key = (id(ring), e)
        if key not in self._nf:
            self._nf[key] = ring.reduce(ring.poly_ring.monomial(e)).terms
        return self._nf[key]

    def multiply(self, x, m, y, n):
        p = self.a.p
        pairs_x = self.basis(m)[0]
        pairs_y = self.basis(n)[0]
        _, index = self.basis(m + n)
        out = [0] * self.dim(m + n)
        for i, cx in enumerate(x):
            if not cx:
                continue
            r1, s1 = pairs_x[i]
            for j, cy in enumerate(y):
                if not cy:
                    continue
                r2, s2 = pairs_y[j]
                rr = self._reduce(self.a, tuple(u + v for u, v in zip(r1, r2)))
                ss = self._reduce(self.b, tuple(u + v for u, v in zip(s1, s2)))
                c = cx * cy
                for re, rc in rr.items():
                    for se, sc in ss.items():
                        k = index[(re, se)]
                        out[k] = (out[k] + c * rc * sc) % p
        return tuple(out)


@dataclass
class SegrePresentation:
    """Generators of R#S as elements of R⊗S, and relations among them in the
    polynomial ring ``ring`` (variables g1, g2, ... with generator degrees)."""

    factors: tuple
    generators: list  # (degree, {(r_exp, s_exp): coeff})
    relations: list  # Poly in self.ring
    ring: PolyRing
    degree_bound: int

    def generator_strings(self) -> list[str]:
        a, b = self.factors
        out = []
        for _, elem in self.generators:
            pieces = []
            for (re, se), c in elem.items():
                rs = str(a.poly_ring.monomial(re))
                ss = str(b.poly_ring.monomial(se))
                mono = "*".join(x for x in (rs, ss) if x != "1") or "1"
                pieces.append(mono if c == 1 else f"{c}*{mono}")
            out.append(" + ".join(pieces))
        return out

    def to_ring_spec(self) -> RingSpec:
        a, b = self.factors
        expected_dim = a.dim + b.dim - 1
        ci = self.ring.nvars - len(self.relations) == expected_dim
        return RingSpec(self.ring.p, self.ring.names, self.ring.weights,
                        tuple(self.relations), ci)


def segre_presentation(a: RingSpec, b: RingSpec, degree_bound: int) -> SegrePresentation:
    alg = _SegreAlgebra(a, b)
    pres = discover_presentation(alg, degree_bound)
    gens = []
    for d, vec in pres.generators:
        pairs = alg.basis(d)[0]
        gens.append((d, {pairs[i]: c for i, c in enumerate(vec) if c}))
    names = tuple(f"g{i + 1}" for i in range(len(gens)))
    ring = PolyRing(names, tuple(d for d, _ in gens), a.p)
    rels = [Poly(ring, r) for _, r in pres.relations]
    return SegrePresentation((a, b), gens, rels, ring, degree_bound)
