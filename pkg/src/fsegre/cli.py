"""Command-line driver.

Every subcommand prints one JSON object on stdout (keys in a fixed order), or
an indented human-readable rendering with ``--pretty``.  Exit codes:

    0  success
    2  parse error (bad flag, unreadable or malformed file)
    3  precondition failure
    4  inconclusive bounded search (output carries "verdict": "inconclusive")
"""

from __future__ import annotations

import argparse
import json
import random
import shlex
import sys
from fractions import Fraction

from .arith import is_prime
from .errors import ParseError, PreconditionError
from .frobenius import (INCONCLUSIVE, cech_add, cech_equal, cech_frobenius, cech_is_zero, cech_make,
                        cech_scale, fedder_general, fedder_principal, frobenius_closure_member,
                        frobenius_injective_window, segre_frational_probe)
from .graded import (a_invariant_ci, hilbert_function, hilbert_series, load_ring, segre_presentation)
from .lc import a_invariant_segre, is_cm_segre, lc_dim_oracle, segre_lc_table
from .poly import Ideal, PolyRing, infer_variables
from .qdivisor import (INF, QDivisorP1, a_invariant_from_omega, demazure_presentation,
                       floor_identity_check, format_relation, load_divisor, omega_hilbert,
                       riemann_roch_dim, riemann_roch_space, section_hilbert, verify_remark)

EXIT_OK, EXIT_PARSE, EXIT_PRECONDITION, EXIT_INCONCLUSIVE = 0, 2, 3, 4


class _Inconclusive(Exception):
    def __init__(self, payload):
        self.payload = payload


class _ArgParser(argparse.ArgumentParser):
    def error(self, message):
        raise ParseError(f"{self.prog}: {message}")


# --- flag types ---------------------------------------------------------------


def window_arg(text: str) -> tuple[int, int]:
    try:
        lo, hi = text.split("..")
        lo, hi = int(lo), int(hi)
    except ValueError:
        raise argparse.ArgumentTypeError(f"--window expects LO..HI, got {text!r}") from None
    if lo > hi:
        raise argparse.ArgumentTypeError(f"--window {text}: LO exceeds HI")
    return lo, hi


def nonneg_int(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if v < 0:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, got {v}")
    return v


def positive_int(text: str) -> int:
    v = nonneg_int(text)
    if v == 0:
        raise argparse.ArgumentTypeError("expected a positive integer, got 0")
    return v


def prime_arg(text: str) -> int:
    v = positive_int(text)
    if not is_prime(v) or v >= 1 << 16:
        raise argparse.ArgumentTypeError(f"expected a prime below 65536, got {v}")
    return v


def _glue_negative_values(argv):
    # "--window -25..-5" would otherwise be read as an unknown option
    out = []
    it = iter(argv)
    for a in it:
        if a == "--window":
            nxt = next(it, None)
            out.append(a if nxt is None else f"--window={nxt}")
        else:
            out.append(a)
    return out


# --- subcommands ---------------------------------------------------------------


def cmd_hilbert(args):
    ring = load_ring(args.ring)
    lo, hi = args.window or (0, 20)
    out = {"ring": str(ring)}
    if ring.complete_intersection:
        hs = hilbert_series(ring)
        out["numerator"] = list(hs.numerator)
        out["denominator"] = list(hs.denominator)
        out["series"] = str(hs)
    out["window"] = [lo, hi]
    out["coefficients"] = hilbert_function(ring, (lo, hi))
    return out


def cmd_a_inv(args):
    return {"a_invariant": a_invariant_ci(load_ring(args.ring))}


def cmd_kunneth(args):
    a, b = load_ring(args.ring1), load_ring(args.ring2)
    table = segre_lc_table(a, b)
    out = {"dim": table.dim}
    lo, hi = args.window or (-30, 10)
    out["window"] = [lo, hi]
    out["H"] = {}
    for k in range(table.dim + 1):
        f = table[k]
        out["H"][str(k)] = {
            "values": [f(n) for n in range(lo, hi + 1)],
            "terms": [lbl.replace("M", "R").replace("N", "S") for lbl, _ in table.terms.get(k, [])],
        }
    return out


def cmd_cm_check(args):
    a, b = load_ring(args.ring1), load_ring(args.ring2)
    cm, witness = is_cm_segre(a, b)
    out = {"cohen_macaulay": cm, "a_invariant": a_invariant_segre(a, b)}
    if witness is not None:
        out["witness"] = {"k": witness.k, "degree": witness.degree, "term": witness.term, "dim": witness.dim}
    return out


def cmd_a_segre(args):
    return {"a_invariant": a_invariant_segre(load_ring(args.ring1), load_ring(args.ring2))}


def cmd_fedder(args):
    if len(args.polys) == 1:
        return {"f_pure": fedder_principal(args.p, args.polys[0])}
    names = []
    for f in args.polys:
        for v in infer_variables(f):
            if v not in names:
                names.append(v)
    ring = PolyRing.make(names or ["x"], p=args.p)
    return {"f_pure": fedder_general(Ideal([ring(f) for f in args.polys], ring))}


def cmd_frob_closure(args):
    ring = load_ring(args.ring)
    gens = [g for g in args.ideal.split(",") if g.strip()]
    v = frobenius_closure_member(ring, gens, args.element, args.emax)
    out = v.to_dict()
    if v.outcome == INCONCLUSIVE:
        raise _Inconclusive(out)
    return out


def cmd_frob_inj(args):
    ring = load_ring(args.ring)
    window = args.window or (-10, 0)
    sop = args.sop.split(",") if args.sop else None
    res = frobenius_injective_window(ring, sop, window, e=args.emax or 1)
    return {"injective": res.injective, "window": list(window), "e": args.emax or 1,
            "dims": {str(n): d for n, d in res.checked.items()},
            "witnesses": [str(w) for w in res.witnesses]}


def cmd_lc_oracle(args):
    ring = load_ring(args.ring)
    sop = args.sop.split(",") if args.sop else _default_sop_names(ring)
    lo, hi = args.window or (-5, 5)
    values = {}
    for n in range(lo, hi + 1):
        values[str(n)] = lc_dim_oracle(ring, sop, n)[0]
    return {"sop": list(sop), "window": [lo, hi], "H2": values}


def _default_sop_names(ring):
    from .frobenius import default_sop
    return [ring.names[i] for i in default_sop(ring)]


def cmd_probe(args):
    r, s = load_ring(args.ring1), load_ring(args.ring2)
    eta1 = cech_make(r, args.eta1[0], int(args.eta1[1]), int(args.eta1[2]))
    eta2 = cech_make(s, args.eta2[0], int(args.eta2[1]), int(args.eta2[2]))
    v = segre_frational_probe(r, s, (eta1, eta2), (args.c1, args.c2), args.emax)
    out = v.to_dict()
    if v.outcome == INCONCLUSIVE:
        raise _Inconclusive(out)
    return out


def _run_cech_script(ring, text: str, source: str) -> list:
    classes = {}
    sop = None
    steps = []

    def get(name, lineno):
        if name not in classes:
            raise ParseError(f"{source}:{lineno}: unknown class {name!r}")
        return classes[name]

    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            words = shlex.split(line)
        except ValueError as exc:
            raise ParseError(f"{source}:{lineno}: {exc}") from None
        op, rest = words[0], words[1:]
        arity = {"sop": 2, "make": 4, "zero": 1, "frobenius": (2, 3), "scale": 3,
                 "add": (3, 4), "equal": 2, "show": 1}
        if op not in arity:
            raise ParseError(f"{source}:{lineno}: unknown step {op!r}")
        want = arity[op]
        if len(rest) not in (want if isinstance(want, tuple) else (want,)):
            raise ParseError(f"{source}:{lineno}: wrong number of arguments to {op}")
        step = {"line": lineno, "op": op}
        try:
            if op == "sop":
                sop = tuple(rest)
                step["sop"] = list(sop)
            elif op == "make":
                name, num, a, b = rest
                classes[name] = cech_make(ring, num, int(a), int(b), sop)
                step["name"] = name
            elif op == "frobenius":
                new, old = rest[:2]
                e = int(rest[2]) if len(rest) == 3 else 1
                classes[new] = cech_frobenius(get(old, lineno), e)
                step["name"] = new
            elif op == "scale":
                new, old, c = rest
                classes[new] = cech_scale(get(old, lineno), c)
                step["name"] = new
            elif op == "add":
                new, x, y = rest[:3]
                k = int(rest[3]) if len(rest) == 4 else 1
                classes[new] = cech_add(get(x, lineno), get(y, lineno), k)
                step["name"] = new
            elif op == "zero":
                step["name"] = rest[0]
                step["zero"] = cech_is_zero(get(rest[0], lineno))
            elif op == "equal":
                step["equal"] = cech_equal(get(rest[0], lineno), get(rest[1], lineno))
            elif op == "show":
                step["name"] = rest[0]
        except ValueError as exc:
            if isinstance(exc, (ParseError, PreconditionError)):
                raise type(exc)(f"{source}:{lineno}: {exc}") from None
            raise ParseError(f"{source}:{lineno}: {exc}") from None
        if "name" in step and op != "zero":
            cls = classes[step["name"]]
            step["class"] = str(cls)
            step["degree"] = cls.degree if cls.numerator else None
        steps.append(step)
    return steps


def cmd_cech(args):
    ring = load_ring(args.ring)
    try:
        with open(args.script) as fh:
            text = fh.read()
    except OSError as exc:
        raise ParseError(f"{args.script}: {exc.strerror}") from None
    return {"steps": _run_cech_script(ring, text, args.script)}


def cmd_sections(args):
    D = load_divisor(args.divisor)
    lo, hi = args.window or (0, 20)
    out = {"divisor": str(D), "degree": str(D.degree), "window": [lo, hi],
           "dims": section_hilbert(D, (lo, hi))}
    if D.is_ample():
        out["omega_dims"] = omega_hilbert(D, (lo, hi))
        out["a_invariant"] = a_invariant_from_omega(D)
    if args.degree is not None:
        out["basis"] = [str(g) for g in riemann_roch_space(args.degree * D)]
    return out


def cmd_demazure(args):
    D = load_divisor(args.divisor)
    pres = demazure_presentation(D, args.degree_bound or 24)
    names = [f"g{i + 1}" for i in range(len(pres.generators))]
    return {
        "divisor": str(D),
        "degree_bound": pres.degree_bound,
        "generators": [{"name": n, "degree": d, "function": str(f)}
                       for n, (d, f) in zip(names, pres.generators)],
        "relations": [{"degree": d, "relation": format_relation(r, names, D.field)}
                      for d, r in pres.relations],
    }


def cmd_segre_present(args):
    a, b = load_ring(args.ring1), load_ring(args.ring2)
    pres = segre_presentation(a, b, args.degree_bound or 8)
    return {
        "degree_bound": pres.degree_bound,
        "generators": [{"name": n, "degree": d, "element": s}
                       for n, (d, _), s in zip(pres.ring.names, pres.generators, pres.generator_strings())],
        "relations": [str(f) for f in pres.relations],
    }


def cmd_verify_remark(args):
    return verify_remark(args.p, args.k, args.base, args.degree_bound)


def cmd_props(args):
    """Seeded spot checks of the floor identity and Riemann-Roch on random
    divisors."""
    rng = random.Random(args.seed)
    failures = []
    samples = args.samples
    for _ in range(samples):
        coeffs = {}
        for _ in range(rng.randint(1, 4)):
            t = rng.choice([INF, 0, -1, 1, 2, Fraction(1, 2)])
            coeffs[t] = Fraction(rng.randint(-12, 12), rng.randint(1, 9))
        D = QDivisorP1(coeffs)
        n = rng.randint(-100, 100)
        if not floor_identity_check(D, n):
            failures.append({"check": "floor", "divisor": str(D), "n": n})
        E = D.floor()
        if len(riemann_roch_space(E)) != riemann_roch_dim(E):
            failures.append({"check": "riemann_roch", "divisor": str(E)})
    return {"seed": args.seed, "samples": samples, "failures": failures, "ok": not failures}


# --- parser ------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = _ArgParser(add_help=False)
    # SUPPRESS so a subparser does not reset a flag given before the subcommand
    common.add_argument("--pretty", action="store_true", default=argparse.SUPPRESS,
                        help="human-readable output")
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS,
                        help="seed for randomised commands (default 0)")

    parser = _ArgParser(prog="fsegre", parents=[common],
                        description="Graded rings in positive characteristic: Hilbert series, "
                                    "local cohomology, Frobenius tests, section rings on P^1.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_ArgParser)

    def add(name, func, help_text):
        p = sub.add_parser(name, parents=[common], help=help_text)
        p.set_defaults(func=func)
        return p

    p = add("hilbert", cmd_hilbert, "Hilbert series and function of a ring file")
    p.add_argument("ring")
    p.add_argument("--window", type=window_arg)

    p = add("a-inv", cmd_a_inv, "a-invariant of a complete intersection")
    p.add_argument("ring")

    for name, func, text in (("kunneth", cmd_kunneth, "local cohomology table of R#S"),
                             ("cm-check", cmd_cm_check, "is R#S Cohen-Macaulay"),
                             ("a-segre", cmd_a_segre, "a-invariant of R#S"),
                             ("segre-present", cmd_segre_present, "generators and relations of R#S")):
        p = add(name, func, text)
        p.add_argument("ring1")
        p.add_argument("ring2")
        if name == "kunneth":
            p.add_argument("--window", type=window_arg)
        if name == "segre-present":
            p.add_argument("--degree-bound", type=positive_int)

    p = add("fedder", cmd_fedder, "Fedder's F-purity criterion")
    p.add_argument("--p", type=prime_arg, required=True)
    p.add_argument("polys", nargs="+", help="one polynomial, or several generating an ideal")

    p = add("frob-closure", cmd_frob_closure, "Frobenius closure membership")
    p.add_argument("ring")
    p.add_argument("--ideal", required=True, help="comma-separated generators")
    p.add_argument("--element", required=True)
    p.add_argument("--emax", type=nonneg_int, default=3)

    p = add("frob-inj", cmd_frob_inj, "Frobenius injectivity on graded pieces of H^2")
    p.add_argument("ring")
    p.add_argument("--window", type=window_arg)
    p.add_argument("--emax", type=positive_int, help="Frobenius power e (default 1)")
    p.add_argument("--sop", help="two variables, comma-separated")

    p = add("lc-oracle", cmd_lc_oracle, "H^2 dimensions from truncated Cech complexes")
    p.add_argument("ring")
    p.add_argument("--window", type=window_arg)
    p.add_argument("--sop", help="two variables, comma-separated")

    p = add("probe", cmd_probe, "bounded search for a nonvanishing Frobenius image in H(R#S)")
    p.add_argument("ring1")
    p.add_argument("ring2")
    p.add_argument("--eta1", nargs=3, required=True, metavar=("NUM", "A", "B"))
    p.add_argument("--eta2", nargs=3, required=True, metavar=("NUM", "A", "B"))
    p.add_argument("--c1", required=True)
    p.add_argument("--c2", required=True)
    p.add_argument("--emax", type=positive_int, default=3)

    p = add("cech", cmd_cech, "run a script of Cech class steps")
    p.add_argument("ring")
    p.add_argument("script")

    p = add("sections", cmd_sections, "dimensions of H^0(nD) for a divisor file")
    p.add_argument("divisor")
    p.add_argument("--window", type=window_arg)
    p.add_argument("--degree", type=int, help="also list a basis of H^0(floor(nD))")

    p = add("demazure", cmd_demazure, "generators and relations of the section ring")
    p.add_argument("divisor")
    p.add_argument("--degree-bound", type=positive_int)

    p = add("verify-remark", cmd_verify_remark, "reproduce the z^p = x^2 + y^3 section ring")
    p.add_argument("--p", type=positive_int, required=True)
    p.add_argument("--k", type=positive_int, required=True)
    p.add_argument("--base", default="Q", help='"Q" or a prime')
    p.add_argument("--degree-bound", type=positive_int)

    p = add("props", cmd_props, "seeded random checks on divisors")
    p.add_argument("--samples", type=positive_int, default=100)
    return parser


# --- output --------------------------------------------------------------------------


def _pretty(obj, indent=0) -> str:
    pad = "  " * indent
    if isinstance(obj, dict):
        lines = []
        for k, v in obj.items():
            if isinstance(v, (dict, list)) and v and not _flat(v):
                lines.append(f"{pad}{k}:")
                lines.append(_pretty(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {_scalar(v)}")
        return "\n".join(lines)
    if isinstance(obj, list):
        return "\n".join(f"{pad}- {_scalar(v)}" if _flat(v) or not isinstance(v, (dict, list))
                         else f"{pad}-\n{_pretty(v, indent + 1)}" for v in obj)
    return pad + _scalar(obj)


def _flat(v) -> bool:
    if isinstance(v, list):
        return all(not isinstance(x, (dict, list)) for x in v)
    return False


def _scalar(v) -> str:
    if isinstance(v, list):
        return " ".join(_scalar(x) for x in v)
    if isinstance(v, bool):
        return "yes" if v else "no"
    if v is None:
        return "-"
    return str(v)


def _emit(obj, pretty: bool, stream):
    if pretty:
        print(_pretty(obj), file=stream)
    else:
        print(json.dumps(obj), file=stream)


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(_glue_negative_values(argv))
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    pretty = getattr(args, "pretty", False)
    args.seed = getattr(args, "seed", 0)
    try:
        out = args.func(args)
    except _Inconclusive as exc:
        _emit(exc.payload, pretty, sys.stdout)
        return EXIT_INCONCLUSIVE
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except PreconditionError as exc:
        print(f"precondition failed: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except OSError as exc:
        print(f"parse error: {exc.filename}: {exc.strerror}", file=sys.stderr)
        return EXIT_PARSE
    except ValueError as exc:
        print(f"precondition failed: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    _emit(out, pretty, sys.stdout)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
