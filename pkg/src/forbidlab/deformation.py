"""Window-widening deformation of forbidding family pairs.

Given two nonempty families over [n] whose cross intersections avoid a
single size ell, the engine repeatedly trades one ground-set coordinate
per round: it either finds a density increment (a derived pair with a
strictly larger product of biased measures) or widens the forbidden
window by one while provably losing almost no measure.  Rounds are
numbered by the transformation applied:

  S3  take (F1, G1):            window [a-1, b-1], product gains (1+d)
  S4  take (F0, G0 | G1):       window unchanged,  gains (1 + r d)
  S5  take (F0 | F1, G0):       window unchanged,  gains (1 + r d)
  S6  take (F1, G0 & G1):       window [a-1, b],   keeps (1 - d - 2 r d^2)
  S7  take (F0 & F1, G1):       window [a-1, b],   keeps (1 - d - 2 r d^2)

with r = p/(1-p), subscripts denoting sections along the top coordinate,
and termination as soon as a = 0 or b = m.  S7 is the unconditional
fall-through; its measure guarantee is the analytic widening fact checked
numerically by `widening_numeric_check` and re-verified on every recorded
run by `verify_trace`.

All branch conditions are strict comparisons of exact rationals, so runs
are deterministic and re-derivable bit for bit.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction

from .bounds import delta_choice
from .families import Family, Window, expand, forbids, intersection, sections, union
from .measure import RationalLike, as_bias, format_rational, mu

TRACE_FAMILY_LIMIT = 16

STEP_NAMES = ("S3", "S4", "S5", "S6", "S7")
_A_DROPPING_STEPS = frozenset({"S3", "S6", "S7"})


class InvariantViolation(RuntimeError):
    """An internal invariant failed mid-run; this indicts the
    implementation (or the inputs), never the underlying mathematics."""


@dataclass(frozen=True)
class IterationRecord:
    """State after one round: step taken, window, dimension, exact product.

    Families are retained up to TRACE_FAMILY_LIMIT coordinates so that
    verify_trace can cross-check its re-derivation; above that only the
    counters summarize the round.
    """

    step: str
    a: int
    b: int
    m: int
    product: Fraction
    fam: Family | None = None
    other: Family | None = None


@dataclass(frozen=True)
class DeformationOutcome:
    a_star: int
    b_star: int
    m_star: int
    f_star: Family
    g_star: Family
    s_d1: int
    s_d2: int
    s_w: int
    trace: tuple[IterationRecord, ...]


def _validate_inputs(n, p, pp, ell, delta, fam, other):
    if fam.m != n or other.m != n:
        raise ValueError(f"families must live over [{n}]")
    if n < 2:
        raise ValueError("need ground size n >= 2")
    if not (p <= pp <= Fraction(1, 2)):
        raise ValueError(f"need 0 < p <= p' <= 1/2, got p={p}, p'={pp}")
    pn = p * n
    if not (1 <= ell < pn):
        raise ValueError(
            f"need 1 <= ell < p*n = {pn}; for ell = 0 or ell = p*n the "
            "product ceiling holds directly and no deformation is needed"
        )
    if not (0 < delta < Fraction(1, 10)):
        raise ValueError(f"need 0 < delta < 1/10, got {delta}")
    if fam.is_empty or other.is_empty:
        raise ValueError("both input families must be nonempty")
    if not forbids(fam, other, Window(ell, ell)):
        raise ValueError(f"input families do not forbid cross-intersection size {ell}")


def run_deformation(
    n: int,
    p: RationalLike,
    pp: RationalLike,
    ell: int,
    delta: RationalLike,
    fam: Family,
    other: Family,
) -> DeformationOutcome:
    """Run the deformation to termination and return the full outcome.

    Preconditions: n >= 2, 0 < p <= p' <= 1/2, 1 <= ell < p*n,
    0 < delta < 1/10, both families nonempty and forbidding {ell}.

    The outcome satisfies, and this function re-checks before returning:
    counter balance s_d1 + s_d2 + s_w = n - m*; widening budget
    s_d1 + s_w <= ell; the terminal window is [0, b*] or [a*, m*] and the
    final pair forbids it; and the exact product chain
    product* > (1+d)^s_d1 (1+rd)^s_d2 (1-d-2rd^2)^s_w product_init.
    """
    p = as_bias(p)
    pp = as_bias(pp)
    delta = Fraction(delta)
    _validate_inputs(n, p, pp, ell, delta, fam, other)

    rho = p / (1 - p)
    gain_d1 = 1 + delta
    gain_d2 = 1 + rho * delta
    keep_w = 1 - delta - 2 * rho * delta * delta

    a = b = ell
    m = n
    cur_f, cur_g = fam, other
    product = mu(cur_f, p) * mu(cur_g, pp)
    initial_product = product
    s_d1 = s_d2 = s_w = 0
    trace: list[IterationRecord] = []

    while True:
        if a == 0 or b == m:
            break
        f0, f1 = sections(cur_f)
        g0, g1 = sections(cur_g)
        mu_f0, mu_f1 = mu(f0, p), mu(f1, p)
        mu_g0, mu_g1 = mu(g0, pp), mu(g1, pp)

        cand_d1 = mu_f1 * mu_g1
        if cand_d1 > gain_d1 * product:
            step, new_f, new_g = "S3", f1, g1
            new_prod = cand_d1
            s_d1 += 1
            a, b = a - 1, b - 1
        else:
            g_union = union(g0, g1)
            cand_d2a = mu_f0 * mu(g_union, pp)
            if cand_d2a > gain_d2 * product:
                step, new_f, new_g = "S4", f0, g_union
                new_prod = cand_d2a
                s_d2 += 1
            else:
                f_union = union(f0, f1)
                cand_d2b = mu(f_union, p) * mu_g0
                if cand_d2b > gain_d2 * product:
                    step, new_f, new_g = "S5", f_union, g0
                    new_prod = cand_d2b
                    s_d2 += 1
                else:
                    g_meet = intersection(g0, g1)
                    cand_w1 = mu_f1 * mu(g_meet, pp)
                    if cand_w1 > keep_w * product:
                        step, new_f, new_g = "S6", f1, g_meet
                        new_prod = cand_w1
                        s_w += 1
                        a -= 1
                    else:
                        f_meet = intersection(f0, f1)
                        step, new_f, new_g = "S7", f_meet, g1
                        new_prod = mu(f_meet, p) * mu_g1
                        s_w += 1
                        a -= 1
        m -= 1
        iteration = len(trace) + 1
        threshold = {"S3": gain_d1, "S4": gain_d2, "S5": gain_d2}.get(step, keep_w)
        if not new_prod > threshold * product:
            raise InvariantViolation(
                f"iteration {iteration}: step {step} product ratio "
                f"{format_rational(new_prod / product)} failed its strict guarantee"
            )
        if new_f.is_empty or new_g.is_empty:
            raise InvariantViolation(
                f"iteration {iteration}: step {step} produced an empty family"
            )
        cur_f, cur_g = new_f, new_g
        product = new_prod
        keep = m <= TRACE_FAMILY_LIMIT
        trace.append(
            IterationRecord(
                step=step,
                a=a,
                b=b,
                m=m,
                product=product,
                fam=cur_f if keep else None,
                other=cur_g if keep else None,
            )
        )

    outcome = DeformationOutcome(
        a_star=a,
        b_star=b,
        m_star=m,
        f_star=cur_f,
        g_star=cur_g,
        s_d1=s_d1,
        s_d2=s_d2,
        s_w=s_w,
        trace=tuple(trace),
    )
    _assert_outcome_invariants(outcome, n, ell, delta, rho, initial_product, p, pp)
    return outcome


def _assert_outcome_invariants(out, n, ell, delta, rho, initial_product, p, pp):
    if out.m_star < 1 or not (0 <= out.a_star <= out.b_star <= out.m_star):
        raise InvariantViolation(
            f"terminal window [{out.a_star}, {out.b_star}] over {out.m_star} is malformed"
        )
    if out.s_d1 + out.s_d2 + out.s_w != n - out.m_star:
        raise InvariantViolation("counter balance s_d1 + s_d2 + s_w != n - m*")
    if out.s_d1 + out.s_w > ell:
        raise InvariantViolation("widening budget s_d1 + s_w exceeded ell")
    if out.a_star == 0:
        terminal = Window(0, out.b_star)
    else:
        terminal = Window(out.a_star, out.m_star)
    if not forbids(out.f_star, out.g_star, terminal):
        raise InvariantViolation(f"final pair does not forbid [{terminal.lo}, {terminal.hi}]")
    floor = (
        (1 + delta) ** out.s_d1
        * (1 + rho * delta) ** out.s_d2
        * (1 - delta - 2 * rho * delta * delta) ** out.s_w
        * initial_product
    )
    final_product = mu(out.f_star, p) * mu(out.g_star, pp)
    if not final_product > floor:
        raise InvariantViolation("final product does not clear its exact floor")


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    iteration: int | None = None
    detail: str = ""


@dataclass
class TraceReport:
    checks: list[CheckResult] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    def failures(self) -> list[CheckResult]:
        return [c for c in self.checks if not c.passed]

    def add(self, name, passed, iteration=None, detail=""):
        self.checks.append(CheckResult(name, bool(passed), iteration, detail))


_WINDOW_RULE = {
    "S3": lambda a, b: (a - 1, b - 1),
    "S4": lambda a, b: (a, b),
    "S5": lambda a, b: (a, b),
    "S6": lambda a, b: (a - 1, b),
    "S7": lambda a, b: (a - 1, b),
}


def _derive_step(cur_f, cur_g, step):
    f0, f1 = sections(cur_f)
    g0, g1 = sections(cur_g)
    if step == "S3":
        return f1, g1
    if step == "S4":
        return f0, union(g0, g1)
    if step == "S5":
        return union(f0, f1), g0
    if step == "S6":
        return f1, intersection(g0, g1)
    return intersection(f0, f1), g1


def verify_trace(
    outcome: DeformationOutcome,
    f_init: Family,
    g_init: Family,
    p: RationalLike,
    pp: RationalLike,
    delta: RationalLike,
    ell: int | None = None,
) -> TraceReport:
    """Independently re-derive every round of a recorded run.

    Recomputes sections/unions/intersections and exact measures from the
    initial families, then checks per round: the window evolution rule for
    the recorded step, the strict measure-ratio guarantee of that step,
    agreement with any stored families and products, nonemptiness, and
    window soundness (the derived pair still forbids the derived window,
    by brute force).  Finally checks counter identities, the terminal
    forbidding window, and the exact product floor.  Failures carry the
    round index and exact values instead of raising.
    """
    p = as_bias(p)
    pp = as_bias(pp)
    delta = Fraction(delta)
    report = TraceReport()
    n = f_init.m
    if ell is None:
        ell = outcome.a_star + sum(
            1 for rec in outcome.trace if rec.step in _A_DROPPING_STEPS
        )

    rho = p / (1 - p)
    thresholds = {
        "S3": 1 + delta,
        "S4": 1 + rho * delta,
        "S5": 1 + rho * delta,
        "S6": 1 - delta - 2 * rho * delta * delta,
        "S7": 1 - delta - 2 * rho * delta * delta,
    }

    cur_f, cur_g = f_init, g_init
    a = b = ell
    m = n
    product = mu(cur_f, p) * mu(cur_g, pp)

    for i, rec in enumerate(outcome.trace, start=1):
        if rec.step not in STEP_NAMES:
            report.add("step-name", False, i, f"unknown step {rec.step!r}")
            return report
        exp_a, exp_b = _WINDOW_RULE[rec.step](a, b)
        report.add(
            "window-evolution",
            (rec.a, rec.b, rec.m) == (exp_a, exp_b, m - 1),
            i,
            f"recorded ({rec.a},{rec.b},{rec.m}) vs derived ({exp_a},{exp_b},{m - 1})",
        )
        new_f, new_g = _derive_step(cur_f, cur_g, rec.step)
        new_prod = mu(new_f, p) * mu(new_g, pp)
        report.add(
            "measure-ratio",
            new_prod > thresholds[rec.step] * product,
            i,
            f"step {rec.step}: ratio {format_rational(new_prod / product)} "
            f"vs floor {format_rational(thresholds[rec.step])}",
        )
        if rec.fam is not None:
            report.add("stored-family-f", rec.fam == new_f, i)
        if rec.other is not None:
            report.add("stored-family-g", rec.other == new_g, i)
        report.add(
            "stored-product",
            rec.product == new_prod,
            i,
            f"recorded {format_rational(rec.product)} vs {format_rational(new_prod)}",
        )
        report.add("nonempty", not (new_f.is_empty or new_g.is_empty), i)
        a, b, m = exp_a, exp_b, m - 1
        window_ok = (
            a >= 0
            and b <= m
            and forbids(new_f, new_g, Window(max(a, 0), min(b, m)))
        )
        report.add("window-soundness", window_ok, i, f"window [{a},{b}] over [{m}]")
        cur_f, cur_g, product = new_f, new_g, new_prod

    counted_d1 = sum(1 for r in outcome.trace if r.step == "S3")
    counted_d2 = sum(1 for r in outcome.trace if r.step in ("S4", "S5"))
    counted_w = sum(1 for r in outcome.trace if r.step in ("S6", "S7"))
    report.add(
        "counter-consistency",
        (counted_d1, counted_d2, counted_w) == (outcome.s_d1, outcome.s_d2, outcome.s_w),
        detail=f"trace counts {(counted_d1, counted_d2, counted_w)} vs "
        f"outcome {(outcome.s_d1, outcome.s_d2, outcome.s_w)}",
    )
    report.add(
        "counter-balance",
        outcome.s_d1 + outcome.s_d2 + outcome.s_w == n - outcome.m_star,
        detail=f"s_d1+s_d2+s_w = {outcome.s_d1 + outcome.s_d2 + outcome.s_w}, "
        f"n - m* = {n - outcome.m_star}",
    )
    report.add(
        "widening-budget",
        outcome.s_d1 + outcome.s_w <= ell,
        detail=f"s_d1+s_w = {outcome.s_d1 + outcome.s_w}, ell = {ell}",
    )
    report.add(
        "final-state",
        cur_f == outcome.f_star
        and cur_g == outcome.g_star
        and (a, b, m) == (outcome.a_star, outcome.b_star, outcome.m_star),
    )
    report.add(
        "terminal-condition", outcome.a_star == 0 or outcome.b_star == outcome.m_star
    )
    if outcome.a_star == 0:
        terminal = Window(0, outcome.b_star)
    else:
        terminal = Window(outcome.a_star, outcome.m_star)
    report.add(
        "terminal-forbids",
        forbids(outcome.f_star, outcome.g_star, terminal),
        detail=f"window [{terminal.lo},{terminal.hi}]",
    )
    floor = (
        thresholds["S3"] ** outcome.s_d1
        * thresholds["S4"] ** outcome.s_d2
        * thresholds["S6"] ** outcome.s_w
        * (mu(f_init, p) * mu(g_init, pp))
    )
    final_product = mu(outcome.f_star, p) * mu(outcome.g_star, pp)
    report.add(
        "product-floor",
        final_product > floor,
        detail=f"product {format_rational(final_product)} vs floor {format_rational(floor)}",
    )
    return report


# --------------------------------------------------------------------------
# Analytic widening check: tuples, hypotheses, and the two conclusions
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class WideningTuple:
    """Abstract section-ratio offsets with the exact coupling identities.

    Offsets live in [-1, 1]; y, w are nonnegative, y_p, w_p nonpositive,
    max(x, x_p) <= w and max(z, z_p) <= y; and the identities
    x_p = -p/(1-p) x,  w + w_p = x + x_p,
    z_p = -p'/(1-p') z, y + y_p = z + z_p
    hold exactly (all fields are rationals).  Construction validates all
    of this and raises ValueError otherwise.
    """

    x: Fraction
    x_p: Fraction
    y: Fraction
    y_p: Fraction
    z: Fraction
    z_p: Fraction
    w: Fraction
    w_p: Fraction
    p: Fraction
    pp: Fraction
    delta: Fraction

    def __post_init__(self):
        for name in ("x", "x_p", "y", "y_p", "z", "z_p", "w", "w_p", "p", "pp", "delta"):
            object.__setattr__(self, name, Fraction(getattr(self, name)))
        if not (0 < self.p <= self.pp <= Fraction(1, 2)):
            raise ValueError("need 0 < p <= p' <= 1/2")
        if not (0 < self.delta < Fraction(1, 10)):
            raise ValueError("need 0 < delta < 1/10")
        for name in ("x", "x_p", "y", "y_p", "z", "z_p", "w", "w_p"):
            if abs(getattr(self, name)) > 1:
                raise ValueError(f"offset {name} outside [-1, 1]")
        if self.y < 0 or self.w < 0:
            raise ValueError("y and w must be nonnegative")
        if self.y_p > 0 or self.w_p > 0:
            raise ValueError("y_p and w_p must be nonpositive")
        if max(self.x, self.x_p) > self.w:
            raise ValueError("need max(x, x_p) <= w")
        if max(self.z, self.z_p) > self.y:
            raise ValueError("need max(z, z_p) <= y")
        if self.x_p != -self.p / (1 - self.p) * self.x:
            raise ValueError("identity x_p = -p/(1-p) x violated")
        if self.z_p != -self.pp / (1 - self.pp) * self.z:
            raise ValueError("identity z_p = -p'/(1-p') z violated")
        if self.w + self.w_p != self.x + self.x_p:
            raise ValueError("identity w + w_p = x + x_p violated")
        if self.y + self.y_p != self.z + self.z_p:
            raise ValueError("identity y + y_p = z + z_p violated")


@dataclass(frozen=True)
class WideningVerdict:
    """Which of the two product conclusions hold: (1+x)(1+y_p) large, and
    (1+z)(1+w_p) large.  The analytic claim is that at least one always
    does; `holds` is that disjunction."""

    xy_holds: bool
    zw_holds: bool

    @property
    def holds(self) -> bool:
        return self.xy_holds or self.zw_holds


def widening_numeric_check(t: WideningTuple) -> WideningVerdict:
    """Evaluate the two widening conclusions for a hypothesis-satisfying
    tuple, exactly.

    The three hypotheses are (1+x)(1+z) <= 1+d and the two cross products
    (1+x_p)(1+y), (1+z_p)(1+w) <= 1 + d p/(1-p).  A tuple violating them
    is rejected with ValueError (it is out of scope, not a counterexample).
    """
    rho = t.p / (1 - t.p)
    if (1 + t.x) * (1 + t.z) > 1 + t.delta:
        raise ValueError("hypothesis failed: (1+x)(1+z) > 1 + delta")
    if (1 + t.x_p) * (1 + t.y) > 1 + rho * t.delta:
        raise ValueError("hypothesis failed: (1+x_p)(1+y) > 1 + delta p/(1-p)")
    if (1 + t.z_p) * (1 + t.w) > 1 + rho * t.delta:
        raise ValueError("hypothesis failed: (1+z_p)(1+w) > 1 + delta p/(1-p)")
    floor = 1 - t.delta - 2 * rho * t.delta * t.delta
    return WideningVerdict(
        xy_holds=(1 + t.x) * (1 + t.y_p) > floor,
        zw_holds=(1 + t.z) * (1 + t.w_p) > floor,
    )


def sample_widening_tuples(
    rng: random.Random,
    p: RationalLike,
    pp: RationalLike,
    delta: RationalLike,
    count: int,
    grid: int = 4096,
) -> list[WideningTuple]:
    """Draw hypothesis-satisfying tuples for a fixed (p, p', delta) cell.

    Free coordinates are drawn uniformly from the lattice of multiples of
    delta/grid inside their exact feasible interval given the earlier
    draws (x, then z, then w, then y); derived coordinates come from the
    coupling identities.  Quantizing to a shared lattice keeps every
    denominator small, so the exact-rational hypothesis and conclusion
    checks stay cheap.  Intervals narrower than one lattice step fall
    back to their left endpoint; only the rare empty w- or y-interval
    rejects a draw.
    """
    p = as_bias(p)
    pp = as_bias(pp)
    delta = Fraction(delta)
    if not (p <= pp <= Fraction(1, 2)) or not (0 < delta < Fraction(1, 10)):
        raise ValueError("need 0 < p <= p' <= 1/2 and 0 < delta < 1/10")
    rho = p / (1 - p)
    rho_p = pp / (1 - pp)
    cross_cap = 1 + rho * delta
    step = delta / grid

    def draw(lo: Fraction, hi: Fraction) -> Fraction:
        k_lo = math.ceil(lo / step)
        k_hi = math.floor(hi / step)
        if k_hi < k_lo:
            return lo
        return rng.randint(k_lo, k_hi) * step

    out: list[WideningTuple] = []
    # x is capped jointly: the product hypothesis forces x >= -delta, and
    # x <= w with w capped by the cross hypothesis at the most favorable z.
    slack_hi = (1 + delta) / (1 - delta) - 1
    x_cap = min(slack_hi, cross_cap / (1 - rho_p * slack_hi) - 1)
    attempts = 0
    max_attempts = 50 * count + 1000
    while len(out) < count:
        attempts += 1
        if attempts > max_attempts:
            raise RuntimeError("widening sampler rejection rate unexpectedly high")
        x = draw(-delta, x_cap)
        x_p = -rho * x
        w_floor = max(Fraction(0), x, x_p)
        # z must leave room for w above w_floor and for y above z_p.
        room_w = cross_cap / (1 + w_floor) - 1
        y_hi = cross_cap / (1 + x_p) - 1
        z_lo = max(-delta, -room_w / rho_p, -y_hi / rho_p)
        z_hi = min((1 + delta) / (1 + x) - 1, y_hi)
        if z_hi < z_lo:
            continue
        z = draw(z_lo, z_hi)
        z_p = -rho_p * z
        w = draw(w_floor, cross_cap / (1 + z_p) - 1)
        w_p = (x + x_p) - w
        y = draw(max(Fraction(0), z, z_p), y_hi)
        y_p = (z + z_p) - y
        out.append(
            WideningTuple(
                x=x, x_p=x_p, y=y, y_p=y_p, z=z, z_p=z_p, w=w, w_p=w_p,
                p=p, pp=pp, delta=delta,
            )
        )
    return out


@dataclass(frozen=True)
class WideningFamilyReport:
    """Section-measure ratios of a concrete pair and the widening verdict.

    offsets holds the eight ratio offsets keyed x, x_p, y, y_p, z, z_p,
    w, w_p.  conclusion_holds is None when the hypotheses fail (nothing
    is asserted then).
    """

    hypotheses_hold: bool
    conclusion_holds: bool | None
    offsets: dict[str, Fraction]
    product: Fraction
    keep_floor: Fraction


def widening_family_check(
    fam: Family,
    other: Family,
    p: RationalLike,
    pp: RationalLike,
    delta: RationalLike,
) -> WideningFamilyReport:
    """Instantiate the widening check on a concrete family pair.

    Computes the eight section-measure ratios, tests the two increment
    hypotheses exactly, and, when they hold, evaluates the conclusion:
    max of mu_p(F1) mu_p'(G0 & G1) and mu_p(F0 & F1) mu_p'(G1) must
    exceed (1 - d - 2 d^2 p/(1-p)) mu_p(F) mu_p'(G).
    """
    p = as_bias(p)
    pp = as_bias(pp)
    delta = Fraction(delta)
    if fam.m < 2:
        raise ValueError("need ground size >= 2")
    if not (p <= pp <= Fraction(1, 2)) or not (0 < delta < Fraction(1, 10)):
        raise ValueError("need 0 < p <= p' <= 1/2 and 0 < delta < 1/10")
    if fam.is_empty or other.is_empty:
        raise ValueError("measure ratios undefined for empty families")
    mu_f = mu(fam, p)
    mu_g = mu(other, pp)
    f0, f1 = sections(fam)
    g0, g1 = sections(other)
    vals = {
        "f0": mu(f0, p),
        "f1": mu(f1, p),
        "f_union": mu(union(f0, f1), p),
        "f_meet": mu(intersection(f0, f1), p),
        "g0": mu(g0, pp),
        "g1": mu(g1, pp),
        "g_union": mu(union(g0, g1), pp),
        "g_meet": mu(intersection(g0, g1), pp),
    }
    offsets = {
        "x": vals["f1"] / mu_f - 1,
        "x_p": vals["f0"] / mu_f - 1,
        "w": vals["f_union"] / mu_f - 1,
        "w_p": vals["f_meet"] / mu_f - 1,
        "z": vals["g1"] / mu_g - 1,
        "z_p": vals["g0"] / mu_g - 1,
        "y": vals["g_union"] / mu_g - 1,
        "y_p": vals["g_meet"] / mu_g - 1,
    }
    product = mu_f * mu_g
    rho = p / (1 - p)
    hyp = vals["f1"] * vals["g1"] <= (1 + delta) * product and (
        max(vals["f0"] * vals["g_union"], vals["f_union"] * vals["g0"])
        <= (1 + rho * delta) * product
    )
    keep_floor = (1 - delta - 2 * rho * delta * delta) * product
    conclusion = None
    if hyp:
        conclusion = (
            max(vals["f1"] * vals["g_meet"], vals["f_meet"] * vals["g1"]) > keep_floor
        )
    return WideningFamilyReport(
        hypotheses_hold=hyp,
        conclusion_holds=conclusion,
        offsets=offsets,
        product=product,
        keep_floor=keep_floor,
    )


# --------------------------------------------------------------------------
# Expansion concentration and the strengthened product ceiling
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class ConcentrationReport:
    """Expansion-measure check against the concentration floor.

    prop_holds / cor_holds are None when the corresponding hypothesis
    (measure at least 1/2, resp. measure above the floor) does not apply.
    """

    case: str
    measure: Fraction
    bound: float
    expanded_t: Fraction
    expanded_2t: Fraction
    prop_applicable: bool
    prop_holds: bool | None
    cor_applicable: bool
    cor_holds: bool | None


_FLOAT_SLACK = 1e-12


def check_concentration(fam: Family, p: RationalLike, t: int) -> ConcentrationReport:
    """Check that Hamming expansion lifts measure past the concentration
    floor 1 - exp(-t^2 / (c p (1-p) n)), with c = 6 for p <= 1/2 and
    c = 2 for p > 1/2.

    Applies the direct form (measure >= 1/2, radius t) and the bootstrap
    form (measure above exp(-t^2/(c p (1-p) n)), radius 2t); both need
    t <= pn, and the report records which applied.
    """
    if t < 0:
        raise ValueError("radius must be nonnegative")
    p = as_bias(p)
    n = fam.m
    case = "i" if p <= Fraction(1, 2) else "ii"
    c = 6 if case == "i" else 2
    bound = math.exp(-float(Fraction(t) ** 2 / (c * p * (1 - p) * n))) if n else 1.0
    measure = mu(fam, p)
    within_range = Fraction(t) <= p * n
    expanded_t = mu(expand(fam, t), p)
    expanded_2t = mu(expand(fam, 2 * t), p)
    prop_applicable = within_range and measure >= Fraction(1, 2)
    prop_holds = None
    if prop_applicable:
        prop_holds = float(expanded_t) >= 1.0 - bound - _FLOAT_SLACK
    cor_applicable = within_range and float(measure) > bound
    cor_holds = None
    if cor_applicable:
        cor_holds = float(expanded_2t) > 1.0 - bound - _FLOAT_SLACK
    return ConcentrationReport(
        case=case,
        measure=measure,
        bound=bound,
        expanded_t=expanded_t,
        expanded_2t=expanded_2t,
        prop_applicable=prop_applicable,
        prop_holds=prop_holds,
        cor_applicable=cor_applicable,
        cor_holds=cor_holds,
    )


def check_product_ceiling(
    p: RationalLike,
    pp: RationalLike,
    ell: int,
    fam: Family,
    other: Family,
) -> tuple[bool, Fraction, float]:
    """Check the strengthened ceiling mu_p(F) mu_p'(G) <= 2 exp(-p n d^2)
    with d the canonical increment choice, for a pair forbidding {ell}.

    Returns (holds, exact product, float ceiling).
    """
    p = as_bias(p)
    pp = as_bias(pp)
    n = fam.m
    if not forbids(fam, other, Window(ell, ell)):
        raise ValueError(f"pair does not forbid cross-intersection size {ell}")
    d = delta_choice(n, p, ell)
    ceiling = 2.0 * math.exp(-float(p * n * d * d))
    product = mu(fam, p) * mu(other, pp)
    return float(product) <= ceiling * (1.0 + _FLOAT_SLACK), product, ceiling


# --------------------------------------------------------------------------
# Trace export
# --------------------------------------------------------------------------


def trace_to_csv(outcome: DeformationOutcome) -> str:
    """CSV rows `iter,step,a,b,m,product_num,product_den`."""
    lines = ["iter,step,a,b,m,product_num,product_den"]
    for i, rec in enumerate(outcome.trace, start=1):
        lines.append(
            f"{i},{rec.step},{rec.a},{rec.b},{rec.m},"
            f"{rec.product.numerator},{rec.product.denominator}"
        )
    return "\n".join(lines) + "\n"


def outcome_to_dict(outcome: DeformationOutcome) -> dict:
    """JSON-ready outcome with exact-rational strings and fixture-format
    families."""
    from .families import format_family

    return {
        "a_star": outcome.a_star,
        "b_star": outcome.b_star,
        "m_star": outcome.m_star,
        "s_d1": outcome.s_d1,
        "s_d2": outcome.s_d2,
        "s_w": outcome.s_w,
        "f_star": format_family(outcome.f_star),
        "g_star": format_family(outcome.g_star),
        "trace": [
            {
                "iter": i,
                "step": rec.step,
                "a": rec.a,
                "b": rec.b,
                "m": rec.m,
                "product": format_rational(rec.product),
            }
            for i, rec in enumerate(outcome.trace, start=1)
        ],
    }
