"""Command-line front end: ``consys {compose,characterize,realize,verify,demo}``.

Exit codes: 0 ok, 2 invalid input, 3 mismatch, 4 inconclusive verification.
Output is deterministic; there is no randomness anywhere in the pipeline.
"""
from __future__ import annotations

import argparse
import json
import sys

from . import composers as C
from .characterizers import characterize, characterize_both
from .localanalyzer import SplittingReport, Verdict, radical_power_from_report, verify_realization
from .polysynth import RealizationError, realize_system
from .systems import (
    ConsistentSystem,
    DvrLabel,
    IdealFactorization,
    factor_integer,
    is_prime,
    residue_from_json,
    splitting_vector,
    system_from_json,
    system_to_json,
)
from .zpoly import IntPolynomial

EXIT_OK, EXIT_INVALID, EXIT_MISMATCH, EXIT_INCONCLUSIVE = 0, 2, 3, 4

SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47)


class UsageError(ValueError):
    pass


# ---- input parsing ----------------------------------------------------------


def _load_json(text: str):
    """Inline JSON, ``-`` for stdin, or a path."""
    if text == "-":
        return json.load(sys.stdin)
    stripped = text.lstrip()
    if stripped.startswith("{") or stripped.startswith("["):
        return json.loads(text)
    with open(text, encoding="utf-8") as fh:
        return json.load(fh)


def _ints(text: str) -> list[int]:
    try:
        return [int(x) for x in text.replace(" ", "").split(",") if x]
    except ValueError:
        raise UsageError(f"expected a comma-separated list of integers, got {text!r}") from None


def _load_system(text: str) -> ConsistentSystem:
    obj = _load_json(text)
    if isinstance(obj, dict) and "system" in obj:
        obj = obj["system"]
    try:
        return system_from_json(obj)
    except (KeyError, TypeError) as exc:
        raise UsageError(f"malformed system.v1 JSON: {exc}") from None


def _parse_ideal(args) -> IdealFactorization:
    """``--ideal 72``, ``--ideal '[[2,3],[3,2]]'`` or ``--exponents 4,6,5`` (primes 2, 3, 5, ...)."""
    if getattr(args, "ideal", None):
        text = args.ideal.strip()
        if text.startswith("["):
            pairs = json.loads(text)
            return IdealFactorization.over_integers((int(p), int(e)) for p, e in pairs)
        k = int(text)
        if k < 2:
            raise UsageError("the ideal kZ needs k >= 2")
        if k > 2**63:
            raise UsageError("k exceeds the trial-division guard 2**63")
        return IdealFactorization.from_int(k)
    if getattr(args, "exponents", None):
        es = _ints(args.exponents)
        if len(es) > len(SMALL_PRIMES):
            raise UsageError("too many exponents")
        return IdealFactorization.over_integers(zip(SMALL_PRIMES, es))
    raise UsageError("need --ideal or --exponents")


def _ideal_for_system(args, s: ConsistentSystem) -> IdealFactorization | None:
    if getattr(args, "ideal", None):
        return _parse_ideal(args)
    if getattr(args, "exponents", None):
        es = _ints(args.exponents)
        if len(es) != s.n:
            raise UsageError(f"need {s.n} exponents, got {len(es)}")
        return IdealFactorization(tuple(zip(s.dvrs, es)))
    return None


def _parse_dvrs(args) -> tuple[DvrLabel, ...]:
    if getattr(args, "fields", None):
        objs = _load_json(args.fields)
        fields = [residue_from_json(o) for o in objs]
        ids = [o.get("id", k.name) for o, k in zip(objs, fields)]
        return C.dvrs_over(fields, ids)
    return _parse_ideal(args).dvrs


# ---- rendering ----------------------------------------------------------------


def _emit(obj, args, human: str):
    if args.format == "json":
        print(json.dumps(obj, sort_keys=True))
    else:
        print(human)


def _recipe_json(recipe: C.RealizationRecipe) -> dict:
    return {"stages": [system_to_json(s) for s in recipe.stages], "tags": list(recipe.tags)}


def _system_human(s: ConsistentSystem) -> str:
    lines = [f"m = {s.m}"]
    for d, rows in s.canonical().entries:
        cells = ", ".join(f"({b.residue_ext.name}, f={b.f}, e={b.e})" for b in rows)
        lines.append(f"  {d.id} [{d.residue_field.name}]: {cells}")
    return "\n".join(lines)


def _prime_names(ideal: IdealFactorization, s: ConsistentSystem) -> list[tuple[str, int]]:
    """``(name, exponent in IE)`` for every prime above the ideal, row-major."""
    out = []
    exps = {str(d.id): e for d, e in ideal.factors}
    for d, rows in s.entries:
        for j, b in enumerate(rows, 1):
            out.append((f"P{d.id}_{j}", exps[str(d.id)] * b.e))
    return out


def ideal_notation(label: str, ideal: IdealFactorization, s: ConsistentSystem) -> str:
    """``72E = (P2_1·P2_2·P3_1)^6`` when the exponents agree, the full product otherwise."""
    names = _prime_names(ideal, s)
    ts = {t for _, t in names}
    if len(ts) == 1:
        t = ts.pop()
        body = "·".join(n for n, _ in names)
        return f"{label}E = ({body})^{t}" if t != 1 else f"{label}E = {body}"
    return f"{label}E = " + "·".join(n if t == 1 else f"{n}^{t}" for n, t in names)


def _report_table(reports) -> str:
    lines = ["prime  e  f  certificate"]
    for r in reports:
        if not r.certified:
            lines.append(f"{r.p:<5}  unresolved at h = {r.precision_used}: {r.hint}")
            continue
        for x in r.entries:
            lines.append(f"{r.p:<5}  {x.e:<2} {x.f:<2} {x.certificate}")
    return "\n".join(lines)


def _ideal_label(ideal: IdealFactorization) -> str:
    k = 1
    for d, e in ideal.factors:
        k *= int(d.id) ** e
    return str(k)


# ---- subcommands ----------------------------------------------------------------


def cmd_compose(args) -> int:
    kind = args.kind
    t = None
    if kind in ("scale-ram", "scale-res"):
        if not args.system:
            raise UsageError(f"{kind} needs --system")
        s0 = _load_system(args.system)
        s, recipe = C.scale_ramification(s0, args.pivot) if kind == "scale-ram" else C.scale_residue(s0)
    elif kind in ("residue-degree", "residue-common-multiple"):
        dvrs = _parse_dvrs(args)
        fs = _ints(args.f) if args.f else None
        if fs is None:
            raise UsageError(f"{kind} needs --f")
        if kind == "residue-degree":
            s, recipe = C.residue_degree_system(dvrs, fs)
        else:
            if args.d is None:
                raise UsageError("residue-common-multiple needs --d")
            s, recipe = C.residue_common_multiple_system(dvrs, fs, args.d), None
    else:
        ideal = _parse_ideal(args)
        if kind == "radical-power":
            s, recipe = C.radical_power_system(ideal)
        elif kind == "common-multiple":
            if args.d is None:
                raise UsageError("common-multiple needs --d")
            s, recipe = C.common_multiple_system(ideal, args.d)
        elif kind == "lcm":
            s, recipe, t = C.minimal_radical_power_system(ideal)
        elif kind == "single-prime":
            s, recipe = C.single_prime_system(ideal), None
        elif kind == "combined":
            if not args.f:
                raise UsageError("combined needs --f")
            s, recipe = C.combined_system(ideal, _ints(args.f))
        elif kind == "square":
            s, recipe = C.square_system(ideal)
        else:  # pragma: no cover - argparse restricts the choices
            raise UsageError(f"unknown kind {kind}")
    out = {"system": system_to_json(s), "recipe": _recipe_json(recipe) if recipe else None}
    if t is not None:
        out["t"] = t
    human = _system_human(s)
    if t is not None:
        human += f"\nt = {t}"
    if recipe:
        human += "\nrecipe: " + " | ".join(f"m={st.m}: {tag}" for st, tag in zip(recipe.stages, recipe.tags))
    _emit(out, args, human)
    return EXIT_OK


def cmd_characterize(args) -> int:
    if not args.system:
        raise UsageError("characterize needs --system")
    s = _load_system(args.system)
    ideal = _ideal_for_system(args, s)
    fs = _ints(args.f) if args.f else None
    if ideal is None and fs is None:
        raise UsageError("characterize needs --ideal/--exponents and/or --f")
    rep = characterize(ideal, fs, s)
    human = f"radical power t: {rep.radical_power_t}\nuniform residue t: {rep.uniform_residue_t}"
    if rep.divisibility_notes:
        human += "\n" + "\n".join(f"  {n}" for n in rep.divisibility_notes)
    _emit(rep.to_json(), args, human)
    return EXIT_OK


def _realize(s, args):
    if s.m > args.max_degree:
        raise UsageError(f"degree {s.m} exceeds --max-degree {args.max_degree}")
    res = realize_system(s, h=args.h, q_hint=args.aux_prime)
    ver = verify_realization(res.polynomial, s, h=args.h)
    return res, ver


def _verdict_code(v: Verdict) -> int:
    return {Verdict.MATCH: EXIT_OK, Verdict.MISMATCH: EXIT_MISMATCH, Verdict.INCONCLUSIVE: EXIT_INCONCLUSIVE}[v]


def cmd_realize(args) -> int:
    if not args.system:
        raise UsageError("realize needs --system")
    s = _load_system(args.system)
    try:
        res, ver = _realize(s, args)
    except RealizationError as exc:
        _emit({"error": {"kind": "realization", "message": str(exc)}}, args, f"error: {exc}")
        return EXIT_INCONCLUSIVE if "inconclusive" in str(exc) else EXIT_MISMATCH
    out = res.to_json()
    out["verification"] = ver.to_json()
    human = f"F = {res.polynomial}\ndegree {res.degree}, aux prime {res.aux_prime}\n" + _report_table(ver.reports)
    _emit(out, args, human)
    return _verdict_code(ver.verdict)


def _parse_expect(text: str) -> dict[int, list[tuple[int, int]]]:
    obj = _load_json(text)
    out = {}
    for p, pairs in obj.items():
        p = int(p)
        if not is_prime(p):
            raise UsageError(f"{p} is not prime")
        out[p] = [(int(e), int(f)) for e, f in pairs]
    return out


def cmd_verify(args) -> int:
    try:
        F = IntPolynomial.parse(args.poly)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if not F.is_monic or F.degree < 1:
        raise UsageError("polynomial must be monic of degree >= 1")
    if args.system:
        expected = _load_system(args.system)
    elif args.expect:
        expected = _parse_expect(args.expect)
        bad = [p for p, pairs in expected.items() if sum(e * f for e, f in pairs) != F.degree]
        if bad:
            raise UsageError(f"expected splitting at {bad} does not sum to deg F = {F.degree}")
    else:
        raise UsageError("verify needs --system or --expect")
    ver = verify_realization(F, expected, h=args.h)
    human = f"F = {F}\n" + _report_table(ver.reports) + f"\nverdict: {ver.verdict.value}"
    _emit(ver.to_json(), args, human)
    return _verdict_code(ver.verdict)


def _demo_chain(ideal, fs, s, recipe, args, label):
    """compose -> realize -> verify -> characterize; returns ``(payload, human, code)``."""
    stage = "realize"
    try:
        res, ver = _realize(s, args)
        stage = "verify"
        reports: list[SplittingReport] = list(ver.reports)
        code = _verdict_code(ver.verdict)
        t_real = None
        if ver.verdict is Verdict.MATCH:
            t_real = radical_power_from_report({int(d.id): e for d, e in ideal.factors}, reports)
        stage = "characterize"
        t1, t2 = characterize_both(ideal, fs, s) if fs is not None else (characterize(ideal, None, s).radical_power_t, None)
    except (RealizationError, ValueError, AssertionError) as exc:
        raise UsageError(f"[{stage}] {exc}") from None
    vec = list(splitting_vector(ideal, s))
    payload = {
        "system": system_to_json(s),
        "recipe": _recipe_json(recipe) if recipe else None,
        "polynomial": str(res.polynomial),
        "synthesis": res.to_json(),
        "verification": ver.to_json(),
        "splitting_vector": vec,
        "radical_power_from_report": t_real,
        "characterize": {"t1": t1, "t2": t2},
    }
    lines = [
        "[compose]",
        _system_human(s),
        "[realize]",
        f"F = {res.polynomial}",
        f"degree {res.degree}, aux prime {res.aux_prime}",
        "[verify]",
        _report_table(reports),
        f"verdict: {ver.verdict.value}",
        "[characterize]",
        ideal_notation(label, ideal, s),
        f"t from reports = {t_real}, t1 = {t1}, t2 = {t2}",
    ]
    return payload, "\n".join(lines), code


def cmd_demo(args) -> int:
    if args.name == "seventy-two":
        ideal = IdealFactorization.from_int(72)
        s, recipe = C.square_system(ideal)
        payload, human, code = _demo_chain(ideal, [1] * ideal.n, s, recipe, args, "72")
    else:
        if args.k is None:
            raise UsageError("coroK2 needs --k")
        if args.k < 2 or args.k > 2**63:
            raise UsageError("need 2 <= k <= 2**63")
        ideal = IdealFactorization.from_int(args.k)
        s, recipe = C.radical_power_system(ideal)
        if ideal.n == 1:
            p, e = factor_integer(args.k)[0]
            note = f"{args.k}Z = ({p}Z)^{e} is already a radical power; E = Q"
            _emit({"note": note, "system": system_to_json(s), "t": e}, args, note)
            return EXIT_OK
        payload, human, code = _demo_chain(ideal, None, s, recipe, args, str(args.k))
    _emit(payload, args, human)
    return code


# ---- entry point ----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "human"), default="json")
    common.add_argument("--h", type=int, default=None, help="p-adic precision override")
    common.add_argument("--aux-prime", type=int, default=None, help="Eisenstein prime for irreducibility")
    common.add_argument("--max-degree", type=int, default=40, help="refuse realizations above this degree")

    parser = argparse.ArgumentParser(prog="consys", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compose", parents=[common], help="build a consistent system")
    p.add_argument("kind", choices=sorted(C.COMPOSERS))
    p.add_argument("--ideal", help="k, or a JSON list of [p, e] pairs")
    p.add_argument("--exponents", help="e_1,...,e_n over the primes 2, 3, 5, ...")
    p.add_argument("--f", help="f_1,...,f_n")
    p.add_argument("--d", type=int)
    p.add_argument("--pivot", type=int)
    p.add_argument("--system", help="system.v1 JSON: inline, path, or - for stdin")
    p.add_argument("--fields", help="JSON list of residue descriptors for residue-degree kinds")
    p.set_defaults(func=cmd_compose)

    p = sub.add_parser("characterize", parents=[common], help="radical-power and residue-degree tests")
    p.add_argument("--system", required=True)
    p.add_argument("--ideal")
    p.add_argument("--exponents", help="e_i in the system's row order")
    p.add_argument("--f")
    p.set_defaults(func=cmd_characterize)

    p = sub.add_parser("realize", parents=[common], help="synthesize and certify a polynomial")
    p.add_argument("--system", required=True)
    p.set_defaults(func=cmd_realize)

    p = sub.add_parser("verify", parents=[common], help="certify the splitting of a polynomial")
    p.add_argument("--poly", required=True, help="e.g. 'X^2 - 5'")
    p.add_argument("--system")
    p.add_argument("--expect", help='JSON such as {"5": [[2, 1]]} mapping p to (e, f) pairs')
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("demo", parents=[common], help="worked examples end to end")
    p.add_argument("name", choices=("seventy-two", "coroK2"))
    p.add_argument("--k", type=int)
    p.set_defaults(func=cmd_demo)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.h is not None and args.h < 1:
        parser.error("--h must be >= 1")
    try:
        return args.func(args)
    except (UsageError, ValueError, KeyError, json.JSONDecodeError, OSError) as exc:
        msg = str(exc)
        print(json.dumps({"error": {"kind": "validation", "message": msg}}, sort_keys=True), file=sys.stdout if args.format == "json" else sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
