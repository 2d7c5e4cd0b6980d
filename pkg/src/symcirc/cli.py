"""Command-line front end.

Every command prints one JSON report on stdout.  Exit codes: 0 ok, 1 usage
or input error, 2 oracle mismatch.

    symcirc gcd --field 7 --f 6,0,1 --g -1,1
    symcirc symdec --example powersum3 --field 10007
    symcirc fuzz --suite gcd --trials 200 --seed 7
"""
from __future__ import annotations

import argparse
import json
import os
import sys
import time
from pathlib import Path
from typing import Callable, Sequence

import jsonschema
import numpy as np

from . import gcdres, instances, roots, smallchar, symdec
from .circuit import Builder, Circuit, encode, to_truncmv
from .errors import FieldTooSmall, SymcircError
from .field import FieldCtx, parse_field
from .polyring import TruncMV, UniPoly, euclid_gcd, newton_lift, sylvester_resultant, symdecomp_oracle

CHECK_DEGREE_LIMIT = 8

REPORT_SCHEMA = {
    "type": "object",
    "required": ["command", "field", "inputs", "result", "stats", "oracle_agree", "wall_time"],
    "properties": {
        "command": {"type": "string"},
        "field": {"type": "string"},
        "inputs": {"type": "object"},
        "result": {},
        "advice": {"type": ["object", "null"]},
        "stats": {
            "type": "object",
            "required": ["gates", "wires", "depth", "required_q"],
            "properties": {k: {"type": "integer", "minimum": 0} for k in ("gates", "wires", "depth", "required_q")},
        },
        "oracle_agree": {"type": ["boolean", "null"]},
        "wall_time": {"type": "number", "minimum": 0},
        "error": {"type": "object"},
    },
}


class UsageError(Exception):
    pass


# ---------------------------------------------------------------- parsing helpers


def parse_coeffs(F: FieldCtx, text: str, var: str = "y") -> UniPoly:
    """Ascending comma-separated coefficients; ints in [0, q) are encodings, others map through Z."""
    try:
        vals = [int(v) for v in text.replace(" ", "").split(",") if v != ""]
    except ValueError as exc:
        raise UsageError(f"malformed coefficient list {text!r}") from exc
    if not vals:
        raise UsageError("empty coefficient list")
    return UniPoly(F, tuple(encode(F, v) for v in vals), var)


def poly_json(p: UniPoly) -> dict:
    return {"coeffs": list(p.coeffs), "text": repr(p)}


def stats_of(circuits: Sequence[Circuit], required_q: int) -> dict:
    gates = wires = depth = 0
    for c in circuits:
        s = c.stats()
        gates += s.gates
        wires += s.wires
        depth = max(depth, s.depth)
    return {"gates": gates, "wires": wires, "depth": depth, "required_q": int(required_q)}


def want_check(flag: bool | None, degree: int) -> bool:
    return degree <= CHECK_DEGREE_LIMIT if flag is None else flag


def default_seed() -> int:
    return int(os.environ.get("SYMCIRC_SEED", "0"))


# ---------------------------------------------------------------- univariate commands


def _pair(args) -> tuple[FieldCtx, UniPoly, UniPoly]:
    F = parse_field(args.field)
    return F, parse_coeffs(F, args.f), parse_coeffs(F, args.g)


def cmd_gcd(args) -> dict:
    F, f, g = _pair(args)
    res = gcdres.gcd_eval_batch([(f, g)])[0]
    out = {"field": F.spec, "inputs": {"f": poly_json(f), "g": poly_json(g)}, "result": poly_json(res.gcd)}
    out["advice"] = {"r": res.advice_r, "i": res.advice_i} if res.advice_r is not None else None
    out["stats"] = _gcd_stats(F, res)
    if want_check(args.check, max(f.degree, g.degree)):
        out["oracle_agree"] = res.gcd == euclid_gcd(f, g).monic()
    return out


def _gcd_stats(F: FieldCtx, res) -> dict:
    if res.advice_r is None:
        return {"gates": 0, "wires": 0, "depth": 0, "required_q": 0}
    need = gcdres.gcd_required_q(F, res.d1, res.d2)
    L = gcdres.lifted_field(F, need)
    fam = gcdres.gcd_family(L.big, res.d1, res.d2)
    return stats_of([fam.tests[res.advice_r], fam.nums[res.advice_r]], need)


def cmd_lcm(args) -> dict:
    F, f, g = _pair(args)
    res = gcdres.gcd_eval_batch([(f, g)])[0]
    q, rem = (f * g).divrem(res.gcd)
    if not rem.is_zero():
        raise SymcircError("f*g is not divisible by the computed gcd")
    val = q.monic()
    out = {"field": F.spec, "inputs": {"f": poly_json(f), "g": poly_json(g)}, "result": poly_json(val)}
    out["advice"] = {"r": res.advice_r, "i": res.advice_i} if res.advice_r is not None else None
    out["stats"] = _gcd_stats(F, res)
    if want_check(args.check, max(f.degree, g.degree)):
        oq, _ = (f * g).divrem(euclid_gcd(f, g))
        out["oracle_agree"] = val == oq.monic()
    return out


def cmd_resultant(args) -> dict:
    F, f, g = _pair(args)
    if f.degree < 1 or g.degree < 1:
        raise UsageError("resultant needs f and g of degree >= 1")
    # Res(a f, b g) = a^deg(g) b^deg(f) Res(f, g)
    a, b = f.lead(), g.lead()
    val, C = gcdres.resultant_eval(f.monic(), g.monic())
    val = F.mul(val, F.mul(F.pow(a, g.degree), F.pow(b, f.degree)))
    out = {"field": F.spec, "inputs": {"f": poly_json(f), "g": poly_json(g)}, "result": val, "advice": None}
    out["stats"] = stats_of([C], gcdres.resultant_required_q(F, f.degree, g.degree))
    if want_check(args.check, max(f.degree, g.degree)):
        out["oracle_agree"] = val == sylvester_resultant(f, g)
    return out


def filter_oracle(f: UniPoly, g: UniPoly, condition: str) -> UniPoly:
    """Filter by repeated gcds: strip from f every factor sharing a root with g."""
    keep = f.monic()
    while True:
        h = euclid_gcd(keep, g)
        if h.degree <= 0:
            break
        keep = keep // h
    if condition == "!=0":
        return keep.monic()
    return (f.monic() // keep).monic()


def cmd_filter(args) -> dict:
    F, f, g = _pair(args)
    cond = "!=0" if args.condition == "nonzero" else "=0"
    if f.lead() != 1 or g.lead() != 1:
        raise UsageError("filter needs monic f and g")
    res = gcdres.filter_eval(None, f, g, cond)
    need = gcdres.filter_required_q(F, f.degree, g.degree)
    fam = gcdres.filter_family(gcdres.lifted_field(F, need).big, f.degree, g.degree)
    out = {"field": F.spec, "inputs": {"f": poly_json(f), "g": poly_json(g), "condition": args.condition}, "result": poly_json(res.result)}
    out["advice"] = {"r": res.advice_r}
    out["stats"] = stats_of([fam.tests[res.advice_r], fam.nums[res.advice_r]], need)
    if want_check(args.check, f.degree):
        out["oracle_agree"] = res.result == filter_oracle(f, g, cond)
    return out


# ---------------------------------------------------------------- symdec / rootlift / factorpow


def _powersum(F: FieldCtx, n: int, k: int) -> Circuit:
    b = Builder(F)
    xs = [b.input(f"x{i + 1}", "x") for i in range(n)]
    return b.circuit([b.add([b.mul([x] * k) for x in xs])])


def _square_of_sum(F: FieldCtx, n: int) -> Circuit:
    b = Builder(F)
    s = b.add([b.input(f"x{i + 1}", "x") for i in range(n)])
    return b.circuit([b.mul([s, s])])


SYMDEC_EXAMPLES: dict[str, Callable[[FieldCtx], Circuit]] = {
    "powersum2": lambda F: _powersum(F, 2, 2),
    "powersum3": lambda F: _powersum(F, 3, 3),
    "sumsquare2": lambda F: _square_of_sum(F, 2),
}


def load_circuit(path: str) -> Circuit:
    try:
        obj = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read circuit {path}: {exc}") from exc
    return Circuit.from_json(obj)


def truncmv_json(Q: TruncMV) -> dict:
    return {"vars": list(Q.vars), "terms": [[list(e), c] for e, c in sorted(Q.terms.items())], "text": repr(Q)}


def cmd_symdec(args) -> dict:
    if args.example:
        if args.example not in SYMDEC_EXAMPLES:
            raise UsageError(f"unknown example {args.example!r}; choose from {sorted(SYMDEC_EXAMPLES)}")
        P = SYMDEC_EXAMPLES[args.example](parse_field(args.field or "10007"))
    elif args.circuit:
        P = load_circuit(args.circuit)
        if args.field and parse_field(args.field) != P.ctx:
            raise UsageError("--field disagrees with the circuit file")
    else:
        raise UsageError("symdec needs --example or --circuit")
    xs = args.xs.split(",") if args.xs else list(P.input_names)
    n = len(xs)
    d = args.d if args.d is not None else P.syntactic_degree(xs)
    zs = [f"z{i + 1}" for i in range(n)]
    plan = symdec.plan_decomposition(P, [xs], d)
    Qc = symdec.multi_symmetric_decomposition_circuit(P, [xs], d, out_names=[zs])
    Q = to_truncmv(Qc, zs, cap=plan.dQ)
    out = {"field": P.ctx.spec, "inputs": {"example": args.example, "circuit": args.circuit, "xs": xs, "d": d}, "result": truncmv_json(Q)}
    out["advice"] = None
    out["stats"] = stats_of([Qc], plan.required_q)
    check = args.check if args.check is not None else (n <= 3 and d <= 4)
    if check:
        ref = symdecomp_oracle(to_truncmv(P, xs), d, xs, zs)
        out["oracle_agree"] = Q.terms == {e: c for e, c in ref.terms.items() if c}
    return out


def _poly_terms(F: FieldCtx, text: str) -> dict[tuple[int, int], int]:
    """JSON list [[i, j, c], ...] for c * t^i * y^j."""
    try:
        rows = json.loads(text)
        terms: dict[tuple[int, int], int] = {}
        for i, j, c in rows:
            key = (int(i), int(j))
            terms[key] = F.add(terms.get(key, 0), encode(F, c))
    except (ValueError, TypeError) as exc:
        raise UsageError(f"malformed polynomial {text!r}; expected [[i, j, c], ...]") from exc
    return {k: v for k, v in terms.items() if v}


def _terms_circuit(F: FieldCtx, terms: dict[tuple[int, int], int]) -> Circuit:
    b = Builder(F)
    t, y = b.input("t", "t"), b.input("y", "y")
    return b.circuit([b.add([b.mul_c(c, [t] * i + [y] * j) for (i, j), c in sorted(terms.items())])])


ROOT_EXAMPLES = {"catalan": ([[0, 2, 1], [0, 1, -1], [1, 0, 1]], 0)}


def cmd_rootlift(args) -> dict:
    F = parse_field(args.field or "10007")
    y0 = args.y0
    if args.example:
        if args.example not in ROOT_EXAMPLES:
            raise UsageError(f"unknown example {args.example!r}; choose from {sorted(ROOT_EXAMPLES)}")
        rows, y0 = ROOT_EXAMPLES[args.example]
        P = _terms_circuit(F, _poly_terms(F, json.dumps(rows)))
    elif args.poly:
        P = _terms_circuit(F, _poly_terms(F, args.poly))
    elif args.circuit:
        P = load_circuit(args.circuit)
        F = P.ctx
    else:
        raise UsageError("rootlift needs --example, --poly or --circuit")
    spec = roots.RootSpec(P, encode(F, y0 or 0), args.d, args.ell, args.e)
    spec.validate()
    C = roots.furstenberg_root_power_circuit(spec)
    t = spec.xs[0] if len(spec.xs) == 1 else None
    if t is None:
        raise UsageError("rootlift reports series for circuits in one variable besides y")
    coeffs = roots.series_coeffs(C, t, args.d)
    series = TruncMV(F, (t,), args.d, {(i,): c for i, c in enumerate(coeffs)})
    out = {"field": F.spec, "inputs": {"y0": spec.y0, "d": args.d, "ell": args.ell, "e": args.e}, "result": {"coeffs": coeffs, "text": repr(series)}}
    out["advice"] = None
    out["stats"] = stats_of([C], roots.root_required_q(spec))
    check = args.check if args.check is not None else args.d <= CHECK_DEGREE_LIMIT
    if check and spec.order == 1:
        phi = newton_lift(to_truncmv(P, [t, spec.y]), spec.y0, args.d, tvar=t, yvar=spec.y)
        out["oracle_agree"] = coeffs == [phi.coeff((i,)) for i in range(args.d + 1)]
    return out


FACTOR_EXAMPLES = {
    # (y - t)^2 (y - 1) over F_2, factor y - t
    "f2-square": {"p": 2, "k": 1, "factors": [{"terms": [[0, 1, 1], [1, 0, 1]], "mult": 2}, {"terms": [[0, 1, 1], [0, 0, 1]], "mult": 1}], "target": 0, "d": 4},
}


def parse_factor_json(obj: dict):
    """(field, factors, target, d) from a planted-instance object."""
    try:
        p, k = int(obj["p"]), int(obj.get("k", 1))
        F = parse_field(f"{p}^{k}" if k > 1 else str(p))
        factors = []
        for fac in obj["factors"]:
            terms: dict[tuple[int, int], int] = {}
            for i, j, c in fac["terms"]:
                terms[(int(i), int(j))] = F.add(terms.get((int(i), int(j)), 0), encode(F, c))
            factors.append(({kk: v for kk, v in terms.items() if v}, int(fac["mult"])))
        return F, factors, int(obj["target"]), int(obj["d"])
    except (KeyError, TypeError, ValueError) as exc:
        raise UsageError(f"malformed factor instance: {exc}") from exc


def cmd_factorpow(args) -> dict:
    if args.example:
        if args.example not in FACTOR_EXAMPLES:
            raise UsageError(f"unknown example {args.example!r}; choose from {sorted(FACTOR_EXAMPLES)}")
        obj = FACTOR_EXAMPLES[args.example]
    elif args.instance:
        try:
            obj = json.loads(Path(args.instance).read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise UsageError(f"cannot read instance {args.instance}: {exc}") from exc
    else:
        raise UsageError("factorpow needs --example or --instance")
    F, factors, target, d = parse_factor_json(obj)
    if args.d is not None:
        d = args.d
    if not 0 <= target < len(factors):
        raise UsageError("target index out of range")
    inst = smallchar.instance_from_factors(F, factors, target, d)
    inst.validate()
    got = smallchar.factor_power(inst)
    need = smallchar.smallchar_required_q(inst)
    big, emb, _ = smallchar._splitting_field(F, tuple(inst.g0.coeffs), need)
    R = smallchar.build_R(smallchar._lift_instance(inst, big, emb))
    out = {"field": F.spec, "inputs": {"instance": obj, "ell": inst.ell, "e": inst.e, "d": d}, "result": {**got.to_json(), "text": str(got)}}
    out["advice"] = None
    out["stats"] = stats_of([R.num, R.den], need)
    out["splitting_field"] = big.spec
    if args.check is not False:
        out["oracle_agree"] = got == smallchar.planted_power(F, factors[target][0], inst.ell, d)
    return out


# ---------------------------------------------------------------- fuzz

SUITES = ("gcd", "resultant", "filter", "symdec", "rootlift", "factorpow")
DEFAULT_FUZZ_FIELD = {"factorpow": "2"}
GCD_PROFILES = ((2, 1), (3, 2), (4, 3), (5, 3))


def _trial_rng(seed: int, trial: int) -> np.random.Generator:
    return np.random.default_rng([seed, trial])


def _mv_terms(Q: TruncMV) -> list:
    return [[list(e), c] for e, c in sorted(Q.terms.items())]


def make_trial(suite: str, F: FieldCtx, rng, max_deg: int) -> dict:
    """One random instance as plain JSON data."""
    if suite == "gcd":
        profiles = [pr for pr in GCD_PROFILES if pr[0] <= max_deg] or [(2, 1)]
        d1, d2 = profiles[int(rng.integers(len(profiles)))]
        gen = instances.planted_gcd_pair if rng.integers(2) else instances.random_pair
        f, g = gen(F, d1, d2, rng)
        return {"f": list(f.coeffs), "g": list(g.coeffs)}
    if suite == "resultant":
        d1, d2 = (int(v) for v in rng.integers(1, max(2, min(max_deg, 5)) + 1, 2))
        gen = instances.common_root_pair if rng.random() < 0.1 else instances.random_pair
        f, g = gen(F, d1, d2, rng)
        return {"f": list(f.coeffs), "g": list(g.coeffs)}
    if suite == "filter":
        d1 = int(rng.integers(1, max(2, min(max_deg, 5)) + 1))
        d2 = int(rng.integers(1, 4))
        if rng.integers(2):
            f, g = instances.common_root_pair(F, d1, d2, rng)
        else:
            f, g = instances.random_pair(F, d1, d2, rng)
        return {"f": list(f.coeffs), "g": list(g.coeffs)}
    if suite == "symdec":
        n, d = int(rng.integers(2, 4)), int(rng.integers(1, 5))
        return {"n": n, "d": d, "Q": _mv_terms(instances.random_weighted_Q(F, n, d, rng))}
    if suite == "rootlift":
        pr = instances.planted_simple_root(F, rng)
        return {"terms": [[i, j, c] for (i, j), c in sorted(pr.terms.items())], "y0": pr.y0, "d": int(rng.integers(1, 7))}
    if suite == "factorpow":
        splits = [(1, 1), (0, 2), (0, 3), (2, 1)] if F.p == 2 else [(1, 1), (0, 2)]
        splits = [(l, e) for l, e in splits if e % F.p]
        ell, e = splits[int(rng.integers(len(splits)))]
        return instances.planted_factor(F, ell, e, int(rng.integers(1, 7)), rng).to_json()
    raise UsageError(f"unknown suite {suite!r}")


def _pair_of(F: FieldCtx, inst: dict) -> tuple[UniPoly, UniPoly]:
    return UniPoly(F, tuple(inst["f"])), UniPoly(F, tuple(inst["g"]))


def check_trials(suite: str, F: FieldCtx, insts: Sequence[dict]) -> list[str | None]:
    """None for agreement, otherwise a short description of the mismatch."""
    if suite == "gcd":
        pairs = [_pair_of(F, i) for i in insts]
        out = []
        for (f, g), res in zip(pairs, gcdres.gcd_eval_batch(pairs)):
            ref = euclid_gcd(f, g).monic()
            if res.gcd != ref:
                out.append(f"gcd {res.gcd!r} != oracle {ref!r}")
            elif res.advice_r is not None and res.advice_r != res.d1 - ref.degree:
                out.append(f"advice r={res.advice_r} but d1 - deg gcd = {res.d1 - ref.degree}")
            else:
                out.append(None)
        return out
    if suite == "resultant":
        pairs = [_pair_of(F, i) for i in insts]
        vals = gcdres.resultant_eval_batch(F, pairs)
        return [None if v == sylvester_resultant(f, g) else f"resultant {v} != oracle {sylvester_resultant(f, g)}" for v, (f, g) in zip(vals, pairs)]
    return [_check_one(suite, F, inst) for inst in insts]


def _check_one(suite: str, F: FieldCtx, inst: dict) -> str | None:
    if suite == "filter":
        f, g = _pair_of(F, inst)
        for cond in ("!=0", "=0"):
            got, ref = gcdres.filter_eval(None, f, g, cond).result, filter_oracle(f, g, cond)
            if got != ref.monic():
                return f"filter{cond} {got!r} != oracle {ref!r}"
        return None
    if suite == "symdec":
        n, d = inst["n"], inst["d"]
        zs = [f"z{i + 1}" for i in range(n)]
        Q = TruncMV(F, zs, d, {tuple(e): c for e, c in inst["Q"]})
        P = instances.circuit_of_composition(Q, n)
        xs = list(P.input_names)
        Qc = symdec.multi_symmetric_decomposition_circuit(P, [xs], max(d, 1), out_names=[zs])
        got = to_truncmv(Qc, zs, cap=d)
        return None if got.terms == Q.terms else f"symdec {got!r} != planted {Q!r}"
    if suite == "rootlift":
        terms = {(i, j): c for i, j, c in inst["terms"]}
        P = _terms_circuit(F, terms)
        d = inst["d"]
        coeffs = roots.series_coeffs(roots.furstenberg_root_circuit(roots.RootSpec(P, inst["y0"], d)), "t", d)
        phi = newton_lift(to_truncmv(P, ["t", "y"]), inst["y0"], d)
        ref = [phi.coeff((i,)) for i in range(d + 1)]
        return None if coeffs == ref else f"root {coeffs} != newton {ref}"
    if suite == "factorpow":
        G, factors, target, d = parse_factor_json(inst)
        inst_ = smallchar.instance_from_factors(G, factors, target, d)
        got = smallchar.factor_power(inst_)
        ref = smallchar.planted_power(G, factors[target][0], inst_.ell, d)
        return None if got == ref else f"factor power {got} != planted {ref}"
    raise UsageError(f"unknown suite {suite!r}")


def run_suite(suite: str, F: FieldCtx, trials: int, seed: int, max_deg: int, out_dir: Path | None) -> dict:
    insts = [make_trial(suite, F, _trial_rng(seed, k), max_deg) for k in range(trials)]
    try:
        verdicts = check_trials(suite, F, insts)
    except SymcircError as exc:  # a batch failure: fall back to per-trial checks
        verdicts = []
        for inst in insts:
            try:
                verdicts.append(check_trials(suite, F, [inst])[0])
            except SymcircError as exc1:
                verdicts.append(f"{type(exc1).__name__}: {exc1}")
        del exc
    failures = []
    for k, (inst, why) in enumerate(zip(insts, verdicts)):
        if why is None:
            continue
        rec = {"suite": suite, "field": F.spec, "seed": seed, "trial": k, "max_degree": max_deg, "instance": inst, "mismatch": why}
        if out_dir is not None:
            out_dir.mkdir(parents=True, exist_ok=True)
            path = out_dir / f"{suite}-seed{seed}-trial{k}.json"
            path.write_text(json.dumps(rec, indent=1))
            rec["path"] = str(path)
        failures.append(rec)
    return {"field": F.spec, "trials": trials, "mismatches": len(failures), "failures": failures}


def replay(path: str) -> dict:
    """Re-run one dumped failure; returns the record with a fresh verdict."""
    try:
        rec = json.loads(Path(path).read_text())
        suite, F, inst = rec["suite"], parse_field(rec["field"]), rec["instance"]
    except (OSError, json.JSONDecodeError, KeyError) as exc:
        raise UsageError(f"cannot read replay file {path}: {exc}") from exc
    try:
        why = check_trials(suite, F, [inst])[0]
    except SymcircError as exc:
        why = f"{type(exc).__name__}: {exc}"
    regenerated = make_trial(suite, F, _trial_rng(rec["seed"], rec["trial"]), rec.get("max_degree", 5)) == inst
    return {"suite": suite, "field": F.spec, "trial": rec["trial"], "mismatch": why, "regenerated": regenerated}


def cmd_fuzz(args) -> tuple[dict, int]:
    t0 = time.perf_counter()
    if args.replay:
        rec = replay(args.replay)
        return {"command": "fuzz", "replay": rec, "wall_time": time.perf_counter() - t0}, 2 if rec["mismatch"] else 0
    seed = default_seed() if args.seed is None else args.seed
    suites = SUITES if args.suite == "all" else (args.suite,)
    out_dir = Path(args.out) if args.out else None
    summary = {}
    for s in suites:
        F = parse_field(args.field or DEFAULT_FUZZ_FIELD.get(s, "10007"))
        summary[s] = run_suite(s, F, args.trials, seed, args.max_degree, out_dir)
    total = sum(v["mismatches"] for v in summary.values())
    rep = {"command": "fuzz", "seed": seed, "suites": summary, "mismatches": total, "wall_time": time.perf_counter() - t0}
    return rep, 2 if total else 0


# ---------------------------------------------------------------- entry point


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _check_flag(p: argparse.ArgumentParser) -> None:
    p.add_argument("--check", dest="check", action="store_true", default=None, help="run the oracle")
    p.add_argument("--no-check", dest="check", action="store_false", help="skip the oracle")


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="symcirc", description="Constant-depth circuit constructions checked against classical oracles.")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name, hlp in (("gcd", "monic gcd"), ("lcm", "monic lcm"), ("resultant", "resultant"), ("filter", "Filter(f | g != 0) or (g = 0)")):
        p = sub.add_parser(name, help=hlp)
        p.add_argument("--field", required=True, help="p, p^k or p^k:c0,...,ck")
        p.add_argument("--f", required=True, help="ascending coefficients, e.g. -1,0,1")
        p.add_argument("--g", required=True)
        if name == "filter":
            p.add_argument("--condition", choices=("nonzero", "zero"), default="nonzero")
        _check_flag(p)
    p = sub.add_parser("symdec", help="symmetric decomposition Q with P = Q(Esym(x))")
    p.add_argument("--example", help=f"one of {sorted(SYMDEC_EXAMPLES)}")
    p.add_argument("--circuit", help="circuit JSON file")
    p.add_argument("--field")
    p.add_argument("--xs", help="comma-separated block variables (default: all inputs)")
    p.add_argument("--d", type=int, help="degree of P (default: syntactic)")
    _check_flag(p)
    p = sub.add_parser("rootlift", help="power-series root of P(t, y) through y0")
    p.add_argument("--example", help=f"one of {sorted(ROOT_EXAMPLES)}")
    p.add_argument("--poly", help="JSON [[i, j, c], ...] for c*t^i*y^j")
    p.add_argument("--circuit", help="circuit JSON file on t, y")
    p.add_argument("--field")
    p.add_argument("--y0", type=int, default=0)
    p.add_argument("--d", type=int, default=4)
    p.add_argument("--ell", type=int, default=0)
    p.add_argument("--e", type=int, default=1)
    _check_flag(p)
    p = sub.add_parser("factorpow", help="g^(p^ell) mod t^(d+1) for a planted factor")
    p.add_argument("--example", help=f"one of {sorted(FACTOR_EXAMPLES)}")
    p.add_argument("--instance", help="JSON {p, k, factors: [{terms, mult}], target, d}")
    p.add_argument("--d", type=int)
    _check_flag(p)
    p = sub.add_parser("fuzz", help="differential fuzzing against the oracles")
    p.add_argument("--suite", choices=SUITES + ("all",), default="all")
    p.add_argument("--trials", type=int, default=50)
    p.add_argument("--seed", type=int, help="default: $SYMCIRC_SEED or 0")
    p.add_argument("--field", help="default: 10007 (2 for factorpow)")
    p.add_argument("--max-degree", type=int, default=5)
    p.add_argument("--out", default="fuzz-failures", help="directory for failing instances")
    p.add_argument("--replay", help="re-run one dumped failure")
    return ap


COMMANDS = {"gcd": cmd_gcd, "lcm": cmd_lcm, "resultant": cmd_resultant, "filter": cmd_filter,
            "symdec": cmd_symdec, "rootlift": cmd_rootlift, "factorpow": cmd_factorpow}


def _emit(obj: dict) -> None:
    print(json.dumps(obj, default=str))


def _glue_values(argv: Sequence[str]) -> list[str]:
    """Join ``--f -1,1`` into ``--f=-1,1`` so negative coefficient lists are not read as options."""
    out: list[str] = []
    it = iter(argv)
    for a in it:
        if a in ("--f", "--g", "--poly"):
            nxt = next(it, None)
            out.append(a if nxt is None else f"{a}={nxt}")
        else:
            out.append(a)
    return out


def main(argv: Sequence[str] | None = None) -> int:
    t0 = time.perf_counter()
    command = None
    try:
        args = build_parser().parse_args(_glue_values(sys.argv[1:] if argv is None else argv))
        command = args.command
        if command == "fuzz":
            rep, code = cmd_fuzz(args)
            _emit(rep)
            return code
        body = COMMANDS[command](args)
    except (UsageError, SymcircError) as exc:
        err = {"type": type(exc).__name__, "message": str(exc)}
        if isinstance(exc, FieldTooSmall):
            err["required_q"] = exc.required_q
        print(f"symcirc: {err['type']}: {err['message']}", file=sys.stderr)
        _emit({"command": command, "error": err})
        return 1
    rep = {"command": command, "advice": None, "oracle_agree": None, **body}
    rep["wall_time"] = time.perf_counter() - t0
    jsonschema.validate(rep, REPORT_SCHEMA)
    _emit(rep)
    return 2 if rep["oracle_agree"] is False else 0


if __name__ == "__main__":
    sys.exit(main())
