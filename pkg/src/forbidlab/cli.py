"""Command-line workbench: verification suites, deformation runs, and the
extremal census.

Subcommands
  verify  run a named property suite and write a JSON report
  run     execute one deformation instance from family fixture files
  census  tabulate exact extremal products over a parameter grid
  bound   evaluate any closed-form bound by name

Probabilities are accepted only as exact rationals (`num/den`) so that
every branch downstream stays deterministic.  Reports carry `"schema": 1`,
per-check pass/fail with exact values on failure, and a timestamp that is
isolated in the `generated_at` header field (fixed seeds otherwise give
byte-identical reports).  Exit codes: 0 all checks pass, 1 check failure,
2 usage error.  FORBID_LAB_THREADS caps worker threads in block scans.
"""

from __future__ import annotations

import argparse
import json
import math
import random
import sys
from datetime import datetime, timezone
from fractions import Fraction
from pathlib import Path

from . import bounds as bnd
from .deformation import (
    check_concentration,
    check_product_ceiling,
    run_deformation,
    sample_widening_tuples,
    outcome_to_dict,
    trace_to_csv,
    verify_trace,
    widening_family_check,
    widening_numeric_check,
)
from .extremal import (
    best_partner,
    census_key,
    construction_high_ell,
    epsilon_oracle,
    maximal_partner,
    record_to_dict,
)
from .families import (
    Family,
    Window,
    complement_family,
    expand,
    forbids,
    full_family,
    intersection,
    intersection_spectrum,
    layer_indicator,
    make_family,
    parse_family,
    sections,
    union,
)
from .measure import format_rational, layer_profile, mu, parse_rational, tail_measure

SCHEMA_VERSION = 1
_SLACK = 1e-12

DEFAULT_CONFIG = {
    "seed": 7,
    "max_n": 10,
    "samples": 100000,
    "pairs": 1000,
    "bound_n": 60,
}


# --------------------------------------------------------------------------
# Small helpers
# --------------------------------------------------------------------------


def _random_family(rng: random.Random, m: int, max_members: int = 24) -> Family:
    count = rng.randint(1, max_members)
    total = 1 << m
    return make_family(m, (rng.randrange(total) for _ in range(count)))


def _random_dense_family(rng: random.Random, m: int) -> Family:
    bits = rng.getrandbits(1 << m)
    if bits == 0:
        bits = 1
    return Family(m, bits)


def _upward_closure(fam: Family) -> Family:
    from .families import _coord_low_mask

    bits = fam.bits
    for _ in range(fam.m):
        grown = bits
        for j in range(fam.m):
            grown |= (bits & _coord_low_mask(fam.m, j)) << (1 << j)
        if grown == bits:
            break
        bits = grown
    return Family(fam.m, bits)


def _downward_closure(fam: Family) -> Family:
    from .families import _coord_low_mask

    bits = fam.bits
    for _ in range(fam.m):
        grown = bits
        for j in range(fam.m):
            grown |= (bits >> (1 << j)) & _coord_low_mask(fam.m, j)
        if grown == bits:
            break
        bits = grown
    return Family(fam.m, bits)


class Suite:
    def __init__(self) -> None:
        self.checks: list[dict] = []

    def add(self, name: str, passed: bool, detail: str = "") -> None:
        self.checks.append({"name": name, "passed": bool(passed), "detail": detail})

    def tally(self, name: str, failures: int, total: int, extra: str = "") -> None:
        detail = f"{total - failures}/{total} instances ok"
        if extra:
            detail += f"; {extra}"
        self.add(name, failures == 0, detail)

    @property
    def passed(self) -> bool:
        return all(c["passed"] for c in self.checks)


# --------------------------------------------------------------------------
# verify suites
# --------------------------------------------------------------------------


def _suite_facts(cfg: dict) -> Suite:
    rng = random.Random(cfg["seed"])
    suite = Suite()
    max_n = max(3, cfg["max_n"])
    pairs = cfg["pairs"]

    fails = 0
    for _ in range(pairs):
        m = rng.randint(2, max_n)
        fam = _random_family(rng, m)
        f0, f1 = sections(fam)
        if len(f0) + len(f1) != len(fam):
            fails += 1
    suite.tally("sections-partition", fails, pairs)

    fails = tried = 0
    while tried < pairs:
        m = rng.randint(2, max_n)
        a = rng.randint(1, m - 1)
        b = rng.randint(a, min(m, a + 2))
        fam = _random_family(rng, m, 12)
        partner = maximal_partner(fam, Window(a, b))
        if partner.is_empty:
            continue
        tried += 1
        f0, f1 = sections(fam)
        g0, g1 = sections(partner)
        ok = (
            forbids(f1, g1, Window(a - 1, b - 1))
            and forbids(f0, union(g0, g1), Window(a, b))
            and forbids(union(f0, f1), g0, Window(a, b))
            and forbids(f1, intersection(g0, g1), Window(a - 1, b))
            and forbids(intersection(f0, f1), g1, Window(a - 1, b))
        )
        if not ok:
            fails += 1
    suite.tally("section-window-propagation", fails, pairs)

    fails = 0
    for _ in range(pairs):
        m = rng.randint(1, max_n)
        fam = _random_family(rng, m)
        if complement_family(complement_family(fam)) != fam:
            fails += 1
    suite.tally("complement-involution", fails, pairs)

    fails = 0
    for _ in range(pairs // 2):
        m = rng.randint(1, min(max_n, 8))
        fam = _random_family(rng, m)
        other = _random_family(rng, m)
        if intersection_spectrum(fam, other) != intersection_spectrum(other, fam):
            fails += 1
        spec = intersection_spectrum(fam, other)
        if sum(spec) != len(fam) * len(other):
            fails += 1
    suite.tally("spectrum-symmetry-and-total", fails, pairs // 2)

    ps = [Fraction(1, 4), Fraction(1, 3), Fraction(1, 2), Fraction(2, 3)]
    fails = 0
    for _ in range(pairs):
        m = rng.randint(2, max_n)
        fam = _random_family(rng, m)
        other = _random_family(rng, m)
        p = rng.choice(ps)
        if mu(union(fam, other), p) + mu(intersection(fam, other), p) != mu(
            fam, p
        ) + mu(other, p):
            fails += 1
        f0, f1 = sections(fam)
        if mu(fam, p) != p * mu(f1, p) + (1 - p) * mu(f0, p):
            fails += 1
        if mu(complement_family(fam), p) != mu(fam, 1 - p):
            fails += 1
    suite.tally("measure-identities", fails, pairs)

    fails = 0
    for _ in range(pairs // 2):
        m = rng.randint(2, max_n)
        up = _upward_closure(_random_family(rng, m, 6))
        down = _downward_closure(_random_family(rng, m, 6))
        lo, hi = sorted(rng.sample(ps, 2))
        if mu(up, lo) > mu(up, hi):
            fails += 1
        if mu(down, lo) < mu(down, hi):
            fails += 1
    suite.tally("closure-measure-monotone", fails, pairs // 2)

    fails = 0
    for _ in range(pairs // 2):
        m = rng.randint(2, min(max_n, 8))
        fam = _random_family(rng, m, 6)
        s = rng.randint(0, m)
        t = rng.randint(0, m)
        a = expand(expand(fam, s), t)
        b = expand(fam, s + t)
        if a != b:
            fails += 1
        if expand(fam, 0) != fam:
            fails += 1
        if s <= t and expand(fam, s).bits & ~expand(fam, t).bits:
            fails += 1
    suite.tally("expand-composition-monotone", fails, pairs // 2)
    return suite


def _suite_bounds(cfg: dict) -> Suite:
    rng = random.Random(cfg["seed"])
    suite = Suite()
    top = cfg["bound_n"]

    fails = checks = 0
    for p in (Fraction(1, 10), Fraction(3, 10), Fraction(1, 2), Fraction(7, 10)):
        for n in range(1, top + 1):
            pn = p * n
            if p <= Fraction(1, 2):
                ts = range(math.ceil(pn), math.floor(2 * pn) + 1)
                case = "i"
            else:
                ts = range(math.ceil(pn), n + 1)
                case = "ii"
            for t in ts:
                checks += 1
                exact = tail_measure(n, p, "at_least", t)
                if float(exact) > bnd.chernoff_upper(n, p, t, case) * (1 + _SLACK):
                    fails += 1
    suite.tally("chernoff-tail-soundness", fails, checks)

    fails = checks = 0
    for n in range(2, top + 1):
        for k in range(1, n):
            checks += 1
            lo, hi = bnd.binomial_sandwich(n, k)
            exact = math.comb(n, k)
            if not (lo < exact < hi):
                fails += 1
            elo, ehi = bnd.entropy_bounds(n, k)
            if not (elo <= exact * (1 + _SLACK) and exact <= ehi * (1 + _SLACK)):
                fails += 1
    suite.tally("stirling-sandwich", fails, checks)

    fails = 0
    trials = 500
    for _ in range(trials):
        n = rng.randint(4, 16)
        k = rng.randint(1, n - 1)
        layer_bits = layer_indicator(n, k)
        size = layer_bits.bit_count()
        keep = rng.randint(1, size)
        members = rng.sample(Family(n, layer_bits).members(), keep)
        fam = make_family(n, members)
        ratio = Fraction(len(fam), math.comb(n, k))
        scale = math.sqrt(k * (n - k) / n)
        measure = float(mu(fam, Fraction(k, n)))
        if not (2.5 * scale * measure < float(ratio) * (1 + _SLACK)):
            fails += 1
        if not (float(ratio) < 5.0 * scale * measure * (1 + _SLACK)):
            fails += 1
    suite.tally("layer-density-bracket", fails, trials)

    fails = checks = 0
    for p in (Fraction(1, 10), Fraction(3, 10), Fraction(1, 2)):
        for n in range(2, top + 1):
            pn = p * n
            for k in range(1, math.floor(pn) + 1):
                checks += 1
                exact = tail_measure(n, p, "at_most", k)
                if bnd.lower_tail_bound(n, k, p, "at_most") > float(exact) * (1 + _SLACK):
                    fails += 1
            for k in range(math.ceil(pn), n + 1):
                if k >= 2 * pn or k < pn or k < 1:
                    continue
                checks += 1
                exact = tail_measure(n, p, "at_least", k)
                if bnd.lower_tail_bound(n, k, p, "at_least") > float(exact) * (1 + _SLACK):
                    fails += 1
    suite.tally("lower-tail-soundness", fails, checks)

    fails = checks = 0
    for p in (Fraction(1, 4), Fraction(1, 2)):
        for n in (20, 50, 100):
            prev = None
            for ell in range(0, math.floor(p * n / 2) + 1):
                val = bnd.main_bound_rhs(n, p, ell)
                checks += 1
                if prev is not None and val > prev * (1 + _SLACK):
                    fails += 1
                prev = val
    suite.tally("main-bound-monotone", fails, checks)
    return suite


def _suite_widening(cfg: dict) -> Suite:
    rng = random.Random(cfg["seed"])
    suite = Suite()
    grid = [
        (Fraction(1, 10), Fraction(1, 4), Fraction(1, 20)),
        (Fraction(1, 10), Fraction(1, 2), Fraction(9, 100)),
        (Fraction(1, 4), Fraction(1, 4), Fraction(1, 12)),
        (Fraction(1, 4), Fraction(1, 2), Fraction(1, 20)),
        (Fraction(1, 3), Fraction(5, 12), Fraction(7, 100)),
        (Fraction(1, 2), Fraction(1, 2), Fraction(1, 11)),
        (Fraction(2, 5), Fraction(1, 2), Fraction(1, 40)),
        (Fraction(1, 20), Fraction(1, 20), Fraction(1, 15)),
    ]
    per_cell = max(1, cfg["samples"] // len(grid))
    counterexamples = 0
    accepted = 0
    for p, pp, delta in grid:
        for tup in sample_widening_tuples(rng, p, pp, delta, per_cell):
            accepted += 1
            if not widening_numeric_check(tup).holds:
                counterexamples += 1
    suite.tally(
        "widening-tuple-disjunction",
        counterexamples,
        accepted,
        extra=f"{accepted} accepted tuples",
    )

    pairs = cfg["pairs"]
    fails = hyp_hits = 0
    for _ in range(pairs):
        m = rng.randint(2, min(cfg["max_n"], 10))
        fam = _random_dense_family(rng, m)
        other = _random_dense_family(rng, m)
        p = rng.choice([Fraction(1, 4), Fraction(1, 3), Fraction(1, 2)])
        pp = rng.choice([q for q in (Fraction(1, 4), Fraction(1, 3), Fraction(1, 2)) if q >= p])
        delta = rng.choice([Fraction(1, 20), Fraction(1, 11)])
        report = widening_family_check(fam, other, p, pp, delta)
        if report.hypotheses_hold:
            hyp_hits += 1
            if not report.conclusion_holds:
                fails += 1
    suite.tally(
        "widening-family-conclusion",
        fails,
        pairs,
        extra=f"{hyp_hits} hypothesis-satisfying pairs",
    )
    return suite


def _suite_concentration(cfg: dict) -> Suite:
    rng = random.Random(cfg["seed"])
    suite = Suite()
    trials = cfg["pairs"]
    fails = applicable = 0
    for _ in range(trials):
        m = rng.randint(2, min(cfg["max_n"], 12))
        fam = _random_dense_family(rng, m)
        p = rng.choice([Fraction(1, 4), Fraction(1, 2), Fraction(3, 4)])
        t = rng.randint(0, max(0, math.floor(p * m)))
        report = check_concentration(fam, p, t)
        if report.prop_applicable:
            applicable += 1
            if not report.prop_holds:
                fails += 1
        if report.cor_applicable and not report.cor_holds:
            fails += 1
    suite.tally(
        "expansion-concentration",
        fails,
        trials,
        extra=f"{applicable} direct-hypothesis instances",
    )
    return suite


def _suite_theorem(cfg: dict) -> Suite:
    suite = Suite()
    top = min(cfg["max_n"], 4)
    grid = [Fraction(1, 4), Fraction(1, 3), Fraction(1, 2)]
    fails = checks = 0
    for n in range(2, top + 1):
        for p in grid:
            for pp in grid:
                if pp < p:
                    continue
                pn = p * n
                for ell in range(0, math.floor(pn) + 1):
                    checks += 1
                    record = epsilon_oracle(n, p, pp, ell)
                    ceiling = bnd.main_bound_rhs(n, p, ell)
                    if float(record.product) > ceiling + _SLACK:
                        fails += 1
                    high = construction_high_ell(n, max(ell, 1))
                    if ell >= 1:
                        feasible = mu(high[0], p) * mu(high[1], pp)
                        if feasible > record.product:
                            fails += 1
    suite.tally("oracle-vs-subgaussian-ceiling", fails, checks, extra=f"n <= {top}")

    fails = checks = 0
    for n in range(2, top + 1):
        for p in grid:
            for pp in grid:
                if pp < p:
                    continue
                pn = p * n
                for ell in range(1, math.floor(pn) + (0 if pn == int(pn) else 1)):
                    if not ell < pn:
                        continue
                    checks += 1
                    record = epsilon_oracle(n, p, pp, ell)
                    ok, _, _ = check_product_ceiling(
                        p, pp, ell, record.witness_f, record.witness_g
                    )
                    if not ok:
                        fails += 1
    suite.tally("strengthened-ceiling-on-extremal-pairs", fails, checks)
    return suite


SUITES = {
    "facts": _suite_facts,
    "bounds": _suite_bounds,
    "widening": _suite_widening,
    "concentration": _suite_concentration,
    "theorem": _suite_theorem,
}


# --------------------------------------------------------------------------
# Commands
# --------------------------------------------------------------------------


def _emit_report(report: dict, path: str | None) -> None:
    text = json.dumps(report, indent=2, sort_keys=True)
    if path:
        Path(path).write_text(text + "\n")
    for check in report["checks"]:
        status = "PASS" if check["passed"] else "FAIL"
        line = f"[{status}] {check['name']}"
        if check["detail"]:
            line += f" ({check['detail']})"
        print(line)


def cmd_verify(args: argparse.Namespace) -> int:
    cfg = dict(DEFAULT_CONFIG)
    if args.config:
        cfg.update(json.loads(Path(args.config).read_text()))
    for key in ("seed", "max_n", "samples", "pairs", "bound_n"):
        value = getattr(args, key, None)
        if value is not None:
            cfg[key] = value
    suite = SUITES[args.suite](cfg)
    report = {
        "schema": SCHEMA_VERSION,
        "generated_at": datetime.now(timezone.utc).isoformat(),
        "command": "verify",
        "suite": args.suite,
        "config": cfg,
        "checks": suite.checks,
        "passed": suite.passed,
    }
    _emit_report(report, args.report)
    print(f"suite {args.suite}: {'PASS' if suite.passed else 'FAIL'}")
    return 0 if suite.passed else 1


def cmd_run(args: argparse.Namespace) -> int:
    p = parse_rational(args.p)
    pp = parse_rational(args.pp)
    fam = parse_family(Path(args.family_f).read_text())
    other = parse_family(Path(args.family_g).read_text())
    n = args.n if args.n is not None else fam.m
    pn = p * n
    if not (1 <= args.ell and Fraction(args.ell) < pn):
        print(
            f"error: need 1 <= ell < p*n = {pn}; for ell = 0 or ell = p*n the "
            "product ceiling holds directly and no deformation run is needed",
            file=sys.stderr,
        )
        return 2
    delta = parse_rational(args.delta) if args.delta else bnd.delta_choice(n, p, args.ell)
    outcome = run_deformation(n, p, pp, args.ell, delta, fam, other)
    report = verify_trace(outcome, fam, other, p, pp, delta, ell=args.ell)
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    payload = {
        "schema": SCHEMA_VERSION,
        "generated_at": datetime.now(timezone.utc).isoformat(),
        "command": "run",
        "params": {
            "n": n,
            "p": format_rational(p),
            "pp": format_rational(pp),
            "ell": args.ell,
            "delta": format_rational(delta),
        },
        "outcome": outcome_to_dict(outcome),
        "verification": {
            "passed": report.ok,
            "checks": [
                {
                    "name": c.name,
                    "passed": c.passed,
                    "iteration": c.iteration,
                    "detail": c.detail,
                }
                for c in report.checks
            ],
        },
    }
    (out_dir / "outcome.json").write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n")
    (out_dir / "trace.csv").write_text(trace_to_csv(outcome))
    print(
        f"terminated at window [{outcome.a_star}, {outcome.b_star}] over "
        f"[{outcome.m_star}], counters (s_d1, s_d2, s_w) = "
        f"({outcome.s_d1}, {outcome.s_d2}, {outcome.s_w})"
    )
    print(f"trace verification: {'PASS' if report.ok else 'FAIL'}")
    return 0 if report.ok else 1


def cmd_census(args: argparse.Namespace) -> int:
    grid = [parse_rational(tok) for tok in args.p_grid.split(",")]
    out_path = Path(args.out)
    existing: set[str] = set()
    if out_path.exists():
        for line in out_path.read_text().splitlines():
            if line.strip():
                row = json.loads(line)
                existing.add(
                    census_key(
                        row["n"], parse_rational(row["p"]), parse_rational(row["pp"]), row["ell"]
                    )
                )
    added = skipped = violations = 0
    out_path.parent.mkdir(parents=True, exist_ok=True)
    with out_path.open("a") as handle:
        for n in range(args.n_min, args.n_max + 1):
            if n > 4 and not args.allow_slow:
                print(f"error: census at n={n} needs --allow-slow", file=sys.stderr)
                return 2
            for p in grid:
                for pp in grid:
                    if pp < p:
                        continue
                    pn = p * n
                    ell_hi = min(args.ell_max, math.floor(pn)) if args.ell_max is not None else math.floor(pn)
                    for ell in range(args.ell_min, ell_hi + 1):
                        key = census_key(n, p, pp, ell)
                        if key in existing:
                            skipped += 1
                            continue
                        record = epsilon_oracle(n, p, pp, ell, allow_slow=args.allow_slow)
                        t = min(Fraction(ell), pn - ell)
                        floor = float(t * t / (58**2 * pn)) - math.log(2.0)
                        if record.epsilon < floor - _SLACK:
                            violations += 1
                        handle.write(json.dumps(record_to_dict(record), sort_keys=True) + "\n")
                        existing.add(key)
                        added += 1
    print(f"census: {added} rows added, {skipped} already present -> {out_path}")
    if violations:
        print(f"error: {violations} rows violated the subgaussian floor", file=sys.stderr)
        return 1
    return 0


BOUND_SPECS = {
    "main": (bnd.main_bound_rhs, ("n", "p", "ell"), ()),
    "delta": (bnd.delta_choice, ("n", "p", "ell"), ()),
    "chernoff": (bnd.chernoff_upper, ("n", "p", "t"), ("case",)),
    "sandwich": (bnd.binomial_sandwich, ("n", "k"), ()),
    "entropy": (bnd.entropy_bounds, ("n", "k"), ()),
    "interval": (bnd.interval_bound_rhs, ("n", "p", "alpha", "kind"), ()),
    "layer": (bnd.layer_bound_rhs, ("n", "k", "m", "ell", "kind"), ()),
    "wide": (bnd.wide_range_bound, ("n", "p", "ell", "kind"), ()),
    "lowertail": (bnd.lower_tail_bound, ("n", "k", "p", "kind"), ()),
    "supersat": (bnd.supersat_epsilon, ("n", "k", "ell", "delta"), ()),
    "supersat-hypothesis": (bnd.supersat_hypothesis, ("n", "k", "ell", "delta"), ()),
}


def _jsonable(value):
    if isinstance(value, Fraction):
        return format_rational(value)
    if isinstance(value, tuple):
        return {"lower": value[0], "upper": value[1]}
    return value


def cmd_bound(args: argparse.Namespace) -> int:
    func, required, optional = BOUND_SPECS[args.name]
    call = {}
    for key in required:
        value = getattr(args, key, None)
        if value is None:
            print(f"error: bound '{args.name}' requires --{key}", file=sys.stderr)
            return 2
        call[key] = value
    for key in optional:
        value = getattr(args, key, None)
        if value is not None:
            call[key] = value
    try:
        result = func(**call)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    print(
        json.dumps(
            {
                "schema": SCHEMA_VERSION,
                "name": args.name,
                "params": {k: _jsonable(v) for k, v in call.items()},
                "value": _jsonable(result),
            },
            sort_keys=True,
        )
    )
    return 0


# --------------------------------------------------------------------------
# Argument parsing
# --------------------------------------------------------------------------


def _rational(text: str) -> Fraction:
    try:
        return parse_rational(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _float_or_rational(text: str) -> float:
    try:
        return float(parse_rational(text))
    except ValueError:
        return float(text)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="forbidlab",
        description=__doc__,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    sub = parser.add_subparsers(dest="command", required=True)

    pv = sub.add_parser("verify", help="run a property suite")
    pv.add_argument("--suite", choices=sorted(SUITES), required=True)
    pv.add_argument("--seed", type=int, default=None, help="PRNG seed (default 7)")
    pv.add_argument("--max-n", dest="max_n", type=int, default=None,
                    help="ground-size ceiling for randomized checks (default 10)")
    pv.add_argument("--samples", type=int, default=None,
                    help="tuple draws for the widening suite (default 100000)")
    pv.add_argument("--pairs", type=int, default=None,
                    help="random instances per check (default 1000)")
    pv.add_argument("--bound-n", dest="bound_n", type=int, default=None,
                    help="grid ceiling for bound soundness (default 60)")
    pv.add_argument("--config", default=None, help="JSON config file (flags win)")
    pv.add_argument("--report", default=None, help="write the JSON report here")
    pv.set_defaults(func=cmd_verify)

    pr = sub.add_parser("run", help="run one deformation instance")
    pr.add_argument("--n", type=int, default=None)
    pr.add_argument("--p", required=True, help="bias as num/den")
    pr.add_argument("--pp", required=True, help="second bias as num/den")
    pr.add_argument("--ell", type=int, required=True)
    pr.add_argument("--delta", default=None, help="increment as num/den (default: canonical choice)")
    pr.add_argument("--family-f", required=True, help="fixture file for F")
    pr.add_argument("--family-g", required=True, help="fixture file for G")
    pr.add_argument("--out", required=True, help="output directory")
    pr.set_defaults(func=cmd_run)

    pc = sub.add_parser("census", help="tabulate exact extremal products")
    pc.add_argument("--n-min", dest="n_min", type=int, default=2)
    pc.add_argument("--n-max", dest="n_max", type=int, default=4)
    pc.add_argument("--p-grid", dest="p_grid", default="1/4,1/3,1/2",
                    help="comma-separated biases, num/den")
    pc.add_argument("--ell-min", dest="ell_min", type=int, default=0)
    pc.add_argument("--ell-max", dest="ell_max", type=int, default=None)
    pc.add_argument("--out", required=True, help="JSON-lines census file (appended)")
    pc.add_argument("--allow-slow", dest="allow_slow", action="store_true",
                    help="permit n = 5 (2^32 candidate families)")
    pc.set_defaults(func=cmd_census)

    pb = sub.add_parser("bound", help="evaluate a closed-form bound by name")
    pb.add_argument("--name", "--bound", dest="name", choices=sorted(BOUND_SPECS), required=True)
    pb.add_argument("--n", type=int)
    pb.add_argument("--k", type=int)
    pb.add_argument("--m", type=int)
    pb.add_argument("--ell", type=int)
    pb.add_argument("--alpha", type=int)
    pb.add_argument("--t", type=_float_or_rational)
    pb.add_argument("--p", type=_rational)
    pb.add_argument("--delta", type=_float_or_rational)
    pb.add_argument("--kind")
    pb.add_argument("--case")
    pb.set_defaults(func=cmd_bound)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
