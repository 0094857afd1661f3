"""
sweeps.py — verification sweeps over P(d, r)

Items are independent; run_sweep streams them through a process pool in
bounded batches and yields (item, result) in item order, so summaries do
not depend on the worker count and P(d, r) is never held in memory whole.
"""

from __future__ import annotations

import logging
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, islice
from typing import Any, Callable, Iterable, Iterator, Optional, TypeVar

from combinatorics import MultiPartition, Partition, enumerate_multipartitions, enumerate_partitions
from errors import AkSchurError, InvalidInputError
from observability import record_sweep_item, track_operation
from polynomial import ParamSpec, RationalFn, rf_equal
from schur import (
    FORMULAS,
    eq3_check,
    exchange_check,
    factored_invariant_violations,
    hook_schur_element,
    l_shift_check,
    lemma_conj_cont_check,
    lemma_nbar_check,
    schur_by_formula,
    schur_factored,
    trace_unity_check,
)

logger = logging.getLogger("akschur")

T = TypeVar("T")
R = TypeVar("R")

SUITES = ("lemma21", "lemma52", "eq3", "exchange", "lshift", "unity")

# items per worker held in flight at once
BATCH_PER_JOB = 256


def run_sweep(fn: Callable[[T], R], items: Iterable[T], jobs: int = 1) -> Iterator[tuple[T, R]]:
    it = iter(items)
    if jobs <= 1:
        for item in it:
            yield item, fn(item)
        return
    batch_size = jobs * BATCH_PER_JOB
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        while True:
            batch = list(islice(it, batch_size))
            if not batch:
                return
            chunksize = max(1, len(batch) // (jobs * 4))
            yield from zip(batch, pool.map(fn, batch, chunksize=chunksize))


# ======================
# Cross-formula verification
# ======================
@dataclass(frozen=True)
class VerifyItem:
    lam: MultiPartition
    mismatch: Optional[tuple[str, str]]
    invariant_problems: tuple[str, ...]

    @property
    def ok(self) -> bool:
        return self.mismatch is None and not self.invariant_problems


@dataclass
class VerifySummary:
    d: int
    r_max: int
    formulas: tuple[str, ...]
    per_r: list[dict] = field(default_factory=list)
    first_counterexample: Optional[dict] = None
    invariant_violations: int = 0

    @property
    def all_agree(self) -> bool:
        return self.first_counterexample is None and self.invariant_violations == 0

    def to_dict(self) -> dict:
        return {
            "d": self.d,
            "r_max": self.r_max,
            "formulas": list(self.formulas),
            "per_r": self.per_r,
            "all_agree": self.all_agree,
            "first_counterexample": self.first_counterexample,
            "invariant_violations": self.invariant_violations,
        }


def _verify_one(args: tuple[MultiPartition, tuple[str, ...]]) -> VerifyItem:
    lam, formulas = args
    sf = schur_factored(lam)
    problems = tuple(factored_invariant_violations(sf, lam))
    values: dict[str, RationalFn] = {name: schur_by_formula(lam, name) for name in formulas}
    if lam.d == 1:
        values["hook"] = RationalFn.from_poly(hook_schur_element(lam[0]))
    names = list(values)
    for a, b in combinations(names, 2):
        if not rf_equal(values[a], values[b]):
            return VerifyItem(lam, (a, b), problems)
    return VerifyItem(lam, None, problems)


@track_operation("verify_formulas")
def verify_formulas(d: int, r_max: int, formulas: Iterable[str] = FORMULAS, jobs: int = 1) -> VerifySummary:
    formulas = tuple(dict.fromkeys(formulas))
    unknown = [f for f in formulas if f not in FORMULAS]
    if unknown:
        raise AkSchurError(f"unknown formulas | Formulas={unknown}")
    if d < 1 or r_max < 0:
        raise AkSchurError(f"need d >= 1 and r_max >= 0 | d={d} | r_max={r_max}")
    summary = VerifySummary(d=d, r_max=r_max, formulas=formulas)
    logger.info(f"Verify sweep started | d={d} | r_max={r_max} | Formulas={','.join(formulas)} | Jobs={jobs}")
    for r in range(r_max + 1):
        items = ((lam, formulas) for lam in enumerate_multipartitions(d, r))
        count = agree = 0
        for _, res in run_sweep(_verify_one, items, jobs):
            count += 1
            record_sweep_item("verify", res.ok)
            if res.mismatch is None:
                agree += 1
            elif summary.first_counterexample is None:
                summary.first_counterexample = {
                    "lambda": res.lam.to_lists(),
                    "formulas": list(res.mismatch),
                }
                logger.warning(
                    f"Formula mismatch | Lambda={res.lam.to_lists()} | Pair={res.mismatch}",
                    extra={"extra": {"sweep": "verify", "d": d, "r": r, "pair": list(res.mismatch)}},
                )
            if res.invariant_problems:
                summary.invariant_violations += 1
                logger.warning(
                    f"Factored invariants violated | Lambda={res.lam.to_lists()} | Problems={res.invariant_problems}",
                    extra={"extra": {"sweep": "verify", "d": d, "r": r}},
                )
        summary.per_r.append({"r": r, "count": count, "agree": agree})
    logger.info(
        f"Verify sweep finished | d={d} | r_max={r_max} | AllAgree={summary.all_agree}",
        extra={"extra": {"sweep": "verify", "all_agree": summary.all_agree}},
    )
    return summary


# ======================
# Identity suites
# ======================
@dataclass
class IdentitySummary:
    suite: str
    checked: int = 0
    failures: int = 0
    skipped: int = 0
    first_failure: Optional[Any] = None

    @property
    def passed(self) -> bool:
        return self.failures == 0

    def to_dict(self) -> dict:
        return {
            "suite": self.suite,
            "checked": self.checked,
            "failures": self.failures,
            "skipped": self.skipped,
            "passed": self.passed,
            "first_failure": self.first_failure,
        }


def _lemma21_one(args: tuple[Partition, int]) -> Optional[bool]:
    lam, k = args
    return lemma_conj_cont_check(lam, k)


def _lemma52_one(lam: MultiPartition) -> Optional[bool]:
    return lemma_nbar_check(lam)


def _eq3_one(args: tuple[MultiPartition, int, int]) -> Optional[bool]:
    lam, s, t = args
    return eq3_check(lam, s, t)


def _exchange_one(args: tuple[MultiPartition, int, int]) -> Optional[bool]:
    lam, s, t = args
    return exchange_check(lam, s, t)


def _lshift_one(lam: MultiPartition) -> Optional[bool]:
    return l_shift_check(lam, 3)


def _unity_one(args: tuple[int, int, ParamSpec]) -> Optional[bool]:
    d, r, spec = args
    return trace_unity_check(d, r, spec)


def _describe(item: Any) -> Any:
    if isinstance(item, MultiPartition):
        return {"lambda": item.to_lists()}
    if isinstance(item, tuple) and item and isinstance(item[0], Partition):
        return {"lambda": item[0].to_list(), "k": item[1]}
    if isinstance(item, tuple) and item and isinstance(item[0], MultiPartition):
        return {"lambda": item[0].to_lists(), "s": item[1], "t": item[2]}
    if isinstance(item, tuple) and len(item) == 3 and isinstance(item[2], ParamSpec):
        return {"d": item[0], "r": item[1], "spec": item[2].to_dict()}
    return repr(item)


def random_specs(d: int, count: int, seed: int = 0) -> list[ParamSpec]:
    """Deterministic nonzero rational specializations with small numerators and denominators."""
    rng = random.Random(seed)

    def draw() -> Fraction:
        while True:
            v = Fraction(rng.randint(-9, 9), rng.randint(1, 5))
            if v:
                return v

    return [ParamSpec(draw(), tuple(draw() for _ in range(d))) for _ in range(count)]


def _pairs(d: int) -> list[tuple[int, int]]:
    return [(s, t) for s in range(d) for t in range(s + 1, d)]


def suite_items(suite: str, d: int, r_max: int, max_size: int, samples: int = 20) -> Iterator[Any]:
    """Lazy item stream for one suite. Pair suites have no items when d < 2."""
    if suite == "lemma21":
        return (
            (lam, k)
            for m in range(1, max_size + 1)
            for lam in enumerate_partitions(m)
            for k in range(1, lam.first + 1)
        )
    if suite == "lemma52":
        return (lam for dd in range(1, d + 1) for r in range(r_max + 1) for lam in enumerate_multipartitions(dd, r))
    if suite in ("eq3", "exchange"):
        return (
            (lam, s, t)
            for dd in range(2, d + 1)
            for r in range(r_max + 1)
            for lam in enumerate_multipartitions(dd, r)
            for s, t in _pairs(dd)
        )
    if suite == "lshift":
        return (lam for r in range(r_max + 1) for lam in enumerate_multipartitions(d, r))
    if suite == "unity":
        return (
            (dd, r, spec)
            for dd in range(1, d + 1)
            for r in range(1, r_max + 1)
            for spec in random_specs(dd, samples, seed=dd * 1000 + r)
        )
    raise AkSchurError(f"unknown identity suite | Suite={suite}")


_SUITE_WORKERS: dict[str, Callable[[Any], Optional[bool]]] = {
    "lemma21": _lemma21_one,
    "lemma52": _lemma52_one,
    "eq3": _eq3_one,
    "exchange": _exchange_one,
    "lshift": _lshift_one,
    "unity": _unity_one,
}


@track_operation("identity_suite")
def run_identity_suite(
    suite: str, d: int, r_max: int, max_size: int, jobs: int = 1, samples: int = 20
) -> IdentitySummary:
    if d < 1 or r_max < 0 or max_size < 0 or samples < 0:
        raise InvalidInputError(
            f"need d >= 1 and non-negative bounds | d={d} | r_max={r_max} | max_size={max_size} | samples={samples}"
        )
    items = suite_items(suite, d, r_max, max_size, samples)
    logger.info(f"Identity suite started | Suite={suite} | d={d} | r_max={r_max} | Jobs={jobs}")
    summary = IdentitySummary(suite=suite)
    for item, ok in run_sweep(_SUITE_WORKERS[suite], items, jobs):
        if ok is None:
            summary.skipped += 1
            continue
        summary.checked += 1
        record_sweep_item(suite, ok)
        if not ok:
            summary.failures += 1
            if summary.first_failure is None:
                summary.first_failure = _describe(item)
                logger.warning(
                    f"Identity failed | Suite={suite} | Item={summary.first_failure}",
                    extra={"extra": {"suite": suite, "item": summary.first_failure}},
                )
    logger.info(
        f"Identity suite finished | Suite={suite} | Checked={summary.checked} | Failures={summary.failures}",
        extra={"extra": {"suite": suite, "checked": summary.checked, "failures": summary.failures}},
    )
    return summary
