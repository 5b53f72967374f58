import io
import math

import pytest

from bnumbers.entropy import binary_entropy
from bnumbers.errors import DomainError, InsufficientDataError
from bnumbers.experiments import (
    CSV_HEADER,
    ExperimentReport,
    GrowthClass,
    GrowthRecord,
    csv_text,
    emit_csv,
    growth_ratio_check,
    m1_baseline,
    summary,
    theorem3_sweep,
    theorem4_sweep,
)


# M1 serializes to 48 + 6 * 22 = 180 bits, then a 16-bit length field and
# the binary input; the output bit is excluded from the payload.
def m1_payload(b):
    return 180 + 16 + len(format(b, "b"))


def ceil_log2(m):
    k = 0
    while 2**k < m:
        k += 1
    return k


def report_of(paddings):
    return ExperimentReport([GrowthRecord(i, 0, p, p, 0.5, 0.1) for i, p in enumerate(paddings)])


def test_theorem3_examples():
    efficient, length = theorem3_sweep(2**10)
    by_n = {r.parameter: r for r in length.records}
    assert by_n[7].padding == 4
    assert by_n[2**10].padding == 1013
    assert all(r.padding == 0 for r in efficient.records)


def test_theorem3_exact_counts():
    efficient, length = theorem3_sweep(300)
    assert [r.parameter for r in length.records] == list(range(2, 301))
    for eff, lng in zip(efficient.records, length.records):
        n = lng.parameter
        assert lng.baseline_length == eff.baseline_length == ceil_log2(n + 1)
        assert lng.padding == n - ceil_log2(n + 1)
        assert lng.required_length == n
        assert eff.padding == 0
        assert lng.epsilon == binary_entropy(1 / (n + 1))
        assert lng.achieved < lng.epsilon and eff.achieved < eff.epsilon


def test_theorem3_classes():
    efficient, length = theorem3_sweep(2**12)
    assert efficient.growth_class is GrowthClass.POLYNOMIAL
    assert length.growth_class is GrowthClass.EXPONENTIAL
    assert len(length.fit_evidence) == len(length.records) - 1
    assert summary(length) == "growth=Exponential ratio→2"


def test_theorem3_domain():
    with pytest.raises(DomainError):
        theorem3_sweep(1)


@pytest.mark.parametrize("b, base, padding", [(5, 12, 20), (10, 20, 1004)])
def test_theorem4_examples(b, base, padding):
    report = theorem4_sweep(b, baseline=lambda _: base)
    assert report.records[-1].padding == padding


def test_theorem4_m1_counts_match_hand_arithmetic():
    report = theorem4_sweep(20)
    for r in report.records:
        assert r.baseline_length == m1_payload(r.parameter)
        assert r.padding == max(0, 2**r.parameter - m1_payload(r.parameter))
        assert r.achieved < r.epsilon
    assert report.growth_class is GrowthClass.EXPONENTIAL


def test_theorem4_baseline_helper():
    baseline = m1_baseline()
    assert [baseline(b) for b in (1, 5, 20)] == [m1_payload(1), m1_payload(5), m1_payload(20)]


def test_theorem4_count_only_range():
    report = theorem4_sweep(62)
    last = report.records[-1]
    assert last.padding == 2**62 - m1_payload(62)
    ratios = report.fit_evidence
    for b in range(15, 62):
        assert abs(ratios[b - 1] - 2) < 0.01
    with pytest.raises(DomainError):
        theorem4_sweep(63)


def test_padding_monotone_within_sweeps():
    for report in (*theorem3_sweep(500), theorem4_sweep(30)):
        paddings = [r.padding for r in report.records]
        assert paddings == sorted(paddings)


def test_growth_check_examples():
    evidence = growth_ratio_check(report_of([1, 2, 4, 8, 16]))
    assert evidence.ratios == [2, 2, 2, 2]
    assert evidence.verdict is GrowthClass.EXPONENTIAL
    zeros = growth_ratio_check(report_of([0, 0, 0, 0]))
    assert zeros.verdict is GrowthClass.POLYNOMIAL
    assert growth_ratio_check(report_of(range(1, 50))).verdict is GrowthClass.POLYNOMIAL
    assert growth_ratio_check(report_of([0, 10, 22, 36])).verdict is GrowthClass.UNCLASSIFIED
    with pytest.raises(InsufficientDataError):
        growth_ratio_check(report_of([1, 2]))


def test_growth_check_theorem4_limit():
    evidence = growth_ratio_check(theorem4_sweep(20))
    assert evidence.limit == pytest.approx(2, abs=0.01)


@pytest.mark.parametrize(
    "report, by_bit_length",
    [
        (theorem4_sweep(24), False),
        (report_of([3, 5, 9, 17, 33, 65]), False),
        (report_of([0, 0, 0, 0, 0]), False),
        (report_of(range(10, 40)), False),
        (theorem3_sweep(2**11)[0], True),
        (theorem3_sweep(2**11)[1], True),
    ],
)
def test_classification_is_stable_under_dropping_first_record(report, by_bit_length):
    full = growth_ratio_check(report, by_bit_length)
    if by_bit_length:
        # drop the first record that the bit-length view actually uses
        first = next(i for i, r in enumerate(report.records) if (r.parameter + 1) & r.parameter == 0)
        rest = report.records[:first] + report.records[first + 1:]
    else:
        rest = report.records[1:]
    assert growth_ratio_check(ExperimentReport(rest), by_bit_length).verdict is full.verdict


def test_emit_csv_single_record():
    buf = io.StringIO()
    emit_csv(ExperimentReport([GrowthRecord(7, 3, 7, 4, binary_entropy(1 / 8), binary_entropy(1 / 43))]), buf)
    lines = buf.getvalue().splitlines()
    assert lines == [",".join(CSV_HEADER), "7,3,7,4,0.543564443,0.159350063"]  # mpmath, 9 digits


def test_emit_csv_theorem4():
    text = csv_text(theorem4_sweep(10, baseline=lambda _: 20))
    lines = text.splitlines()
    assert len(lines) == 11
    assert [int(l.split(",")[3]) for l in lines[1:]] == [max(0, 2**b - 20) for b in range(1, 11)]
    assert lines[-1].split(",")[3] == "1004"
    assert text == csv_text(theorem4_sweep(10, baseline=lambda _: 20))


def test_entropies_have_nine_significant_digits():
    for line in csv_text(theorem4_sweep(12)).splitlines()[1:]:
        for field in line.split(",")[4:]:
            digits = field.split("e")[0].replace(".", "").lstrip("0")
            assert len(digits) <= 9
            assert field == format(float(field), ".9g")


def test_summary_for_tiny_reports():
    report = theorem4_sweep(2)
    assert summary(report) == "growth=Unclassified (too few records)"
    assert math.isnan(report.limit)
