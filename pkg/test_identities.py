"""Combinatorial identities behind the Schur element formulas."""

from fractions import Fraction

import pytest

from combinatorics import MultiPartition, Partition, enumerate_multipartitions, enumerate_partitions
from errors import AkSchurError, OutOfRangeError
from polynomial import ParamSpec
from schur import (
    eq3_check,
    exchange_check,
    l_shift_check,
    lemma_conj_cont_check,
    lemma_nbar_check,
    trace_unity_check,
)
from sweeps import SUITES, random_specs, run_identity_suite, suite_items


def test_conjugate_content_identity_up_to_eight_boxes():
    for m in range(1, 9):
        for lam in enumerate_partitions(m):
            for k in range(1, lam.first + 1):
                assert lemma_conj_cont_check(lam, k), (lam, k)


def test_conjugate_content_identity_rejects_out_of_range():
    with pytest.raises(OutOfRangeError):
        lemma_conj_cont_check(Partition.of(2, 1), 3)
    with pytest.raises(OutOfRangeError):
        lemma_conj_cont_check(Partition(), 1)


@pytest.mark.parametrize("d", [1, 2, 3])
def test_bar_partition_n_identity(d):
    for r in range(9):
        for lam in enumerate_multipartitions(d, r):
            assert lemma_nbar_check(lam), lam


def test_cross_quotient_closed_form_small():
    for d in (2, 3):
        for r in range(5):
            for lam in enumerate_multipartitions(d, r):
                for s in range(d):
                    for t in range(s + 1, d):
                        assert eq3_check(lam, s, t), (lam, s, t)


@pytest.mark.slow
def test_cross_quotient_closed_form_suite():
    summary = run_identity_suite("eq3", 3, 6, 0, jobs=2)
    assert summary.passed, summary.first_failure


def test_exchange_symmetry():
    for r in range(6):
        for lam in enumerate_multipartitions(2, r):
            assert exchange_check(lam, 0, 1), lam
    assert exchange_check(MultiPartition.of([[2], [], [1, 1]]), 0, 2)


def test_symbol_length_shift():
    for r in range(5):
        for lam in enumerate_multipartitions(2, r):
            assert l_shift_check(lam), lam


def test_trace_unity_generic_and_degenerate():
    # s_(2) = q + 1 and s_(1,1) = q^-1 (q + 1)
    assert trace_unity_check(1, 2, ParamSpec(2, (1,)))
    assert trace_unity_check(2, 2, ParamSpec(Fraction(2, 3), (Fraction(-1), Fraction(5, 2))))
    assert trace_unity_check(1, 2, ParamSpec(-1, (1,))) is None


def test_random_specs_are_deterministic_and_nonzero():
    a = random_specs(2, 30, seed=4)
    assert a == random_specs(2, 30, seed=4)
    assert all(v != 0 for spec in a for v in spec.values)


@pytest.mark.parametrize("suite", SUITES)
def test_every_suite_passes_on_small_inputs(suite):
    summary = run_identity_suite(suite, 2, 3, 5, samples=5)
    assert summary.passed, summary.first_failure
    assert summary.checked > 0
    assert summary.to_dict()["suite"] == suite


def test_pair_suites_have_no_items_for_one_component():
    assert list(suite_items("exchange", 1, 2, 0)) == []
    for suite in ("eq3", "exchange"):
        summary = run_identity_suite(suite, 1, 3, 0)
        assert summary.passed
        assert summary.checked == 0


def test_suite_items_stream_lazily():
    items = suite_items("lemma52", 3, 40, 0)
    assert not isinstance(items, list)
    assert next(items) == MultiPartition.of([[]])


def test_unity_honours_zero_samples():
    summary = run_identity_suite("unity", 2, 3, 0, samples=0)
    assert summary.checked == 0
    assert summary.skipped == 0


@pytest.mark.parametrize(
    "kwargs",
    [{"d": 0}, {"r_max": -1}, {"max_size": -1}, {"samples": -1}],
)
def test_run_identity_suite_rejects_bad_bounds(kwargs):
    args = {"d": 2, "r_max": 2, "max_size": 2, "samples": 2, **kwargs}
    with pytest.raises(AkSchurError):
        run_identity_suite("unity", args["d"], args["r_max"], args["max_size"], samples=args["samples"])


def test_identity_failure_is_reported(monkeypatch):
    import sweeps

    monkeypatch.setitem(sweeps._SUITE_WORKERS, "lemma52", lambda lam: lam.size != 2)
    summary = run_identity_suite("lemma52", 2, 3, 0)
    assert not summary.passed
    assert summary.failures == 2 + 5
    assert summary.first_failure == {"lambda": [[2]]}


def test_unknown_suite():
    with pytest.raises(AkSchurError):
        suite_items("nope", 1, 1, 1)
