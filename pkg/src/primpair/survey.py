"""Survey pipeline: enumerate candidate (p, t), classify them through the
sufficient condition and the sieve, diff against the published lists, and
run witness searches on desk-scale fields.
"""

from __future__ import annotations

import csv
import json
import random
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from importlib import resources

from .bounds import (
    BoundReport,
    SieveReport,
    Verdict,
    check_thm31,
    find_sieve_params,
    table1_row,
    window_threshold,
)
from .errors import FactorizationIncomplete, OutOfScope
from .ffield import FieldCtx, FieldElement, make_field
from .ntheory import (
    FactorCache,
    FactorEffort,
    factor_prime_power_order,
    factorize,
    integer_nth_root,
    is_prime,
    primes_upto,
)
from .ratfunc import RationalFunction, eval_rational, sample_rational

__all__ = [
    "SurveyStatus",
    "SurveyRecord",
    "RangeSpec",
    "survey_range",
    "enumerate_prime_powers",
    "classify",
    "AppendixDiff",
    "reproduce_appendix",
    "load_published_failing",
    "load_published_sieve",
    "WitnessResult",
    "witness_search",
    "MembershipReport",
    "verify_membership_sample",
    "record_to_dict",
    "write_records_jsonl",
    "write_records_csv",
    "EXHAUSTIVE_CAP",
]

EXHAUSTIVE_CAP = 1 << 20

MIN_T = 7   # t = 5, 6 are out of survey scope


class SurveyStatus(Enum):
    PROVEN_BY_SUFFICIENT = "ProvenBySufficient"
    PROVEN_BY_SIEVE = "ProvenBySieve"
    POSSIBLE_EXCEPTION = "PossibleException"
    UNKNOWN = "Unknown"


@dataclass(frozen=True)
class SurveyRecord:
    p: int
    t: int
    n: int
    status: SurveyStatus
    bound: BoundReport | None = None
    sieve: SieveReport | None = None
    reason: str = ""


@dataclass(frozen=True)
class RangeSpec:
    t: int
    p_max: int    # exclusive


# Worst-case window rows anchoring the p-range derivation: (minimum t the
# row settles, row a, row b).  Each step of the published iteration tightens
# the admissible omega range, so later anchors use narrower windows.
_RANGE_ANCHORS = [(7, 6, 22), (8, 5, 19), (9, 5, 17), (10, 5, 15)]


def survey_range(t: int, n: int = 2) -> RangeSpec:
    """Candidate range for one t: p^t above the window threshold is settled,
    so only p below the derived t-th root needs individual classification."""
    if t < MIN_T:
        raise OutOfScope(f"t = {t} below survey minimum {MIN_T}")
    for t_anchor, a, b in reversed(_RANGE_ANCHORS):
        if t >= t_anchor:
            row = table1_row(a, b, n)
            threshold = window_threshold(row.rhs_ub, t_anchor)
            p_max = integer_nth_root(threshold, t) + 1
            return RangeSpec(t, p_max)
    raise AssertionError("unreachable")


def enumerate_prime_powers(p_max: int) -> list[int]:
    """All prime powers q^r < p_max, ascending."""
    out = []
    for q in primes_upto(p_max - 1):
        v = q
        while v < p_max:
            out.append(v)
            v *= q
    return sorted(out)


def _split_prime_power(p: int) -> tuple[int, int]:
    fac = factorize(p)
    if len(fac.factors) != 1:
        raise ValueError(f"{p} is not a prime power")
    return fac.factors[0]


def classify(p: int, t: int, n: int = 2,
             effort: FactorEffort = FactorEffort(),
             cache: FactorCache | None = None) -> SurveyRecord:
    """Sufficient condition first; on failure, automatic sieve search."""
    if t < MIN_T:
        raise OutOfScope(f"t = {t} is out of survey scope")
    _split_prime_power(p)   # validates
    facts = factor_prime_power_order(p, t, effort=effort, cache=cache)
    if not facts.complete:
        return SurveyRecord(p, t, n, SurveyStatus.UNKNOWN,
                            reason=f"partial factorization of p^t-1, "
                                   f"cofactor {facts.cofactor}")
    bound = check_thm31(p, t, n, facts)
    if bound.verdict is Verdict.PASS:
        return SurveyRecord(p, t, n, SurveyStatus.PROVEN_BY_SUFFICIENT, bound=bound)
    sieve = find_sieve_params(p, t, n, facts)
    if sieve.verdict is Verdict.PASS:
        return SurveyRecord(p, t, n, SurveyStatus.PROVEN_BY_SIEVE,
                            bound=bound, sieve=sieve)
    return SurveyRecord(p, t, n, SurveyStatus.POSSIBLE_EXCEPTION,
                        bound=bound, sieve=sieve)


# ---------------------------------------------------------------------------
# published reference lists

def load_published_failing() -> dict[int, list[int]]:
    out: dict[int, list[int]] = {}
    with resources.files("primpair.data").joinpath("published_failing.csv").open() as fh:
        for row in csv.DictReader(fh):
            out.setdefault(int(row["t"]), []).append(int(row["p"]))
    return out


def load_published_sieve() -> dict[int, list[tuple[int, int, int]]]:
    out: dict[int, list[tuple[int, int, int]]] = {}
    with resources.files("primpair.data").joinpath("published_sieve.csv").open() as fh:
        for row in csv.DictReader(fh):
            out.setdefault(int(row["t"]), []).append(
                (int(row["p"]), int(row["k"]), int(row["m"])))
    return out


def published_exceptions(t: int) -> list[int]:
    """Failing entries with no published sieve row: the possible exceptions."""
    failing = set(load_published_failing().get(t, []))
    sieved = {p for p, _, _ in load_published_sieve().get(t, [])}
    return sorted(failing - sieved)


@dataclass(frozen=True)
class AppendixDiff:
    t: int
    n: int
    computed_failing: tuple[int, ...]
    published_failing: tuple[int, ...]
    computed_exceptions: tuple[int, ...]
    published_exceptions: tuple[int, ...]
    unknown: tuple[int, ...]           # partial factorizations, never dropped
    records: tuple[SurveyRecord, ...]

    @property
    def failing_diff(self) -> tuple[tuple[int, ...], tuple[int, ...]]:
        """(missing from computed, extra in computed)."""
        comp, pub = set(self.computed_failing), set(self.published_failing)
        return tuple(sorted(pub - comp)), tuple(sorted(comp - pub))

    @property
    def exceptions_diff(self) -> tuple[tuple[int, ...], tuple[int, ...]]:
        comp, pub = set(self.computed_exceptions), set(self.published_exceptions)
        return tuple(sorted(pub - comp)), tuple(sorted(comp - pub))

    @property
    def clean(self) -> bool:
        return (self.failing_diff == ((), ()) and self.exceptions_diff == ((), ())
                and not self.unknown)


def _classify_job(args) -> SurveyRecord:
    p, t, n, effort, cache_path = args
    cache = FactorCache(cache_path) if cache_path else None
    return classify(p, t, n, effort=effort, cache=cache)


def reproduce_appendix(t: int, n: int = 2,
                       effort: FactorEffort = FactorEffort(),
                       cache: FactorCache | None = None,
                       progress=None, jobs: int = 1) -> AppendixDiff:
    spec = survey_range(t, n)
    candidates = enumerate_prime_powers(spec.p_max)
    if jobs > 1:
        # workers share only the on-disk cache; merge is by sorted p, so the
        # distribution of work cannot change the output
        from multiprocessing import Pool
        path = cache.path if cache is not None else None
        args = [(p, t, n, effort, path) for p in candidates]
        with Pool(jobs) as pool:
            records = sorted(pool.map(_classify_job, args), key=lambda r: r.p)
        if progress is not None:
            for rec in records:
                progress(rec)
    else:
        records = []
        for p in candidates:
            records.append(classify(p, t, n, effort=effort, cache=cache))
            if progress is not None:
                progress(records[-1])
    failing = tuple(r.p for r in records
                    if r.status in (SurveyStatus.PROVEN_BY_SIEVE,
                                    SurveyStatus.POSSIBLE_EXCEPTION))
    exceptions = tuple(r.p for r in records
                       if r.status is SurveyStatus.POSSIBLE_EXCEPTION)
    unknown = tuple(r.p for r in records if r.status is SurveyStatus.UNKNOWN)
    return AppendixDiff(
        t, n,
        computed_failing=failing,
        published_failing=tuple(sorted(load_published_failing().get(t, []))),
        computed_exceptions=exceptions,
        published_exceptions=tuple(published_exceptions(t)),
        unknown=unknown,
        records=tuple(records),
    )


# ---------------------------------------------------------------------------
# witness search

@dataclass(frozen=True)
class WitnessResult:
    witness: FieldElement | None
    definitive: bool      # exhaustive search proves nonexistence when empty


def _is_witness(ctx: FieldCtx, f: RationalFunction, a: FieldElement,
                b: FieldElement, r: int, eps: FieldElement) -> bool:
    if eps.is_zero():
        return False
    if ctx.trace_rel(eps, r) != a:
        return False
    eps0 = eval_rational(ctx, f, eps)
    if not isinstance(eps0, FieldElement) or eps0.is_zero():
        return False
    if ctx.trace_rel(eps0, r) != b:
        return False
    return ctx.is_primitive(eps) and ctx.is_primitive(eps0)


def _recheck_witness(ctx: FieldCtx, f: RationalFunction, a, b, r, eps) -> bool:
    """Independent re-verification: generic power checks, no log table."""
    n = ctx.Q - 1
    eps0 = eval_rational(ctx, f, eps)
    for x in (eps, eps0):
        for ell in ctx.order_facts.primes():
            result = ctx.one
            base = x
            e = n // ell
            while e:                      # deliberately bypasses ctx.pow
                if e & 1:
                    result = ctx._mul_poly(result, base)
                base = ctx._mul_poly(base, base)
                e >>= 1
            if result == ctx.one:
                return False
    return ctx.trace_rel(eps, r) == a and ctx.trace_rel(eps0, r) == b


def witness_search(ctx: FieldCtx, f: RationalFunction, a: FieldElement,
                   b: FieldElement, r: int, *,
                   exhaustive: bool = True,
                   budget: int = 100_000, seed: int = 0) -> WitnessResult:
    """Find eps with (eps, f(eps)) both primitive and both traces prescribed."""
    if not ctx.order_facts.complete:
        raise FactorizationIncomplete(ctx.order_facts.n)
    if exhaustive:
        for idx in range(1, ctx.Q):
            eps = ctx.from_index(idx)
            if _is_witness(ctx, f, a, b, r, eps):
                assert _recheck_witness(ctx, f, a, b, r, eps)
                return WitnessResult(eps, definitive=True)
        return WitnessResult(None, definitive=True)
    rng = random.Random(seed)
    for _ in range(budget):
        eps = ctx.from_index(rng.randrange(1, ctx.Q))
        if _is_witness(ctx, f, a, b, r, eps):
            assert _recheck_witness(ctx, f, a, b, r, eps)
            return WitnessResult(eps, definitive=False)
    return WitnessResult(None, definitive=False)


@dataclass(frozen=True)
class MembershipReport:
    p: int
    t: int
    n: int
    functions_checked: int
    pairs_checked: int
    failures: tuple[tuple[RationalFunction, FieldElement, FieldElement], ...]
    definitive: bool


def verify_membership_sample(p: int, t: int, n: int, num_functions: int,
                             seed: int, *,
                             allow_constant: bool = True,
                             budget: int = 200_000) -> MembershipReport:
    """Sample rational functions across all degree splits and look for a
    witness for every prescribed trace pair."""
    q, r = _split_prime_power(p)
    ctx = make_field(q, r * t, seed=0)
    exhaustive = ctx.Q <= EXHAUSTIVE_CAP
    rng = random.Random(seed)
    splits = [(n1, n - n1) for n1 in range(n + 1)
              if (0 < n1 < n) or allow_constant]
    subfield = ctx.subfield_elements(r)
    failures = []
    pairs = 0
    for i in range(num_functions):
        n1, n2 = splits[i % len(splits)]
        f = sample_rational(ctx, n1, n2, rng, allow_constant=allow_constant)
        for a in subfield:
            for b in subfield:
                pairs += 1
                res = witness_search(ctx, f, a, b, r, exhaustive=exhaustive,
                                     budget=budget, seed=rng.randrange(1 << 30))
                if res.witness is None:
                    failures.append((f, a, b))
    return MembershipReport(p, t, n, num_functions, pairs,
                            tuple(failures), exhaustive)


# ---------------------------------------------------------------------------
# serialization

def _frac(x: Fraction | None) -> str | None:
    if x is None:
        return None
    return f"{x.numerator}/{x.denominator}"


def record_to_dict(rec: SurveyRecord) -> dict:
    out = {
        "p": rec.p,
        "t": rec.t,
        "n": rec.n,
        "status": rec.status.value,
    }
    if rec.bound is not None:
        out["thm31"] = {
            "W": rec.bound.W,
            "rhs": _frac(rec.bound.rhs),
            "verdict": rec.bound.verdict.value,
        }
    if rec.sieve is not None:
        out["sieve"] = {
            "k_primes": list(rec.sieve.k_primes),
            "m": rec.sieve.m,
            "delta": _frac(rec.sieve.delta),
            "Delta": _frac(rec.sieve.Delta),
            "verdict": rec.sieve.verdict.value,
        }
    if rec.reason:
        out["reason"] = rec.reason
    return out


def write_records_jsonl(records, fh) -> None:
    for rec in sorted(records, key=lambda r: (r.t, r.p, r.n)):
        fh.write(json.dumps(record_to_dict(rec), sort_keys=True) + "\n")


def write_records_csv(records, fh) -> None:
    w = csv.writer(fh)
    w.writerow(["t", "p", "n", "status", "k_primes", "m"])
    for rec in sorted(records, key=lambda r: (r.t, r.p, r.n)):
        k = m = ""
        if rec.sieve is not None and rec.sieve.verdict is Verdict.PASS:
            k = "*".join(str(q) for q in rec.sieve.k_primes) or "1"
            m = rec.sieve.m
        w.writerow([rec.t, rec.p, rec.n, rec.status.value, k, m])
