"""Padding-cost sweeps.

Bit counts stand in for running time: the mapping has to write every
padding bit, so the number of added bits is a lower bound on its steps.
"""
from __future__ import annotations

import csv
import enum
import io
import math
from dataclasses import dataclass, field
from typing import Callable, TextIO

from bnumbers.entropy import binary_entropy, payload_bits
from bnumbers.errors import DomainError, InsufficientDataError
from bnumbers.machine import TuringMachine, computation_for, computation_uncertainty, load_m1
from bnumbers.reduction import LENGTH_HEADER_BITS, reduce_computation

MATERIALIZE_LIMIT = 20
MAX_THEOREM4_B = 62
POLYNOMIAL_BAND = 0.01
EXPONENTIAL_FLOOR = 1.5

CSV_HEADER = ("parameter", "baseline_length", "required_length", "padding", "epsilon", "achieved")


class GrowthClass(enum.Enum):
    POLYNOMIAL = "Polynomial"
    EXPONENTIAL = "Exponential"
    UNCLASSIFIED = "Unclassified"


@dataclass(frozen=True)
class GrowthRecord:
    parameter: int
    baseline_length: int
    required_length: int
    padding: int
    epsilon: float
    achieved: float


@dataclass(frozen=True)
class GrowthEvidence:
    ratios: list[float]
    limit: float
    verdict: GrowthClass


@dataclass
class ExperimentReport:
    records: list[GrowthRecord]
    growth_class: GrowthClass = GrowthClass.UNCLASSIFIED
    fit_evidence: list[float] = field(default_factory=list)
    limit: float = math.nan


def closed_form_record(parameter: int, baseline: int, required: int, epsilon: float) -> GrowthRecord:
    """Record for padding a *baseline*-bit payload up to *required* bits.

    ``achieved`` is the uncertainty of what the reduction would emit: the
    input itself when it is already strictly below target, otherwise the
    header-prefixed padded string.
    """
    padding = max(0, required - baseline)
    unpadded = binary_entropy(1 / (baseline + 1))
    if padding == 0 and unpadded < epsilon:
        achieved = unpadded
    else:
        achieved = binary_entropy(1 / (LENGTH_HEADER_BITS + baseline + padding + 1))
    return GrowthRecord(parameter, baseline, required, padding, epsilon, achieved)


def _ratio(a: int, b: int) -> float:
    if a == 0:
        return 1.0 if b == 0 else math.inf
    return b / a


def _limit(paddings: list[int]) -> float:
    # ratio of successive differences cancels a constant offset such as the baseline
    d1 = paddings[-2] - paddings[-3]
    d2 = paddings[-1] - paddings[-2]
    if d1 > 0:
        return d2 / d1
    if d1 == d2 == 0:
        return 1.0
    return _ratio(paddings[-2], paddings[-1])


def growth_ratio_check(report: ExperimentReport, by_bit_length: bool = False) -> GrowthEvidence:
    """Successive padding ratios and a growth verdict.

    With *by_bit_length* only the records at parameters 2**j - 1, the last
    value of each bit length, are compared, which measures growth in the
    size of the parameter's binary code rather than in its value.
    """
    records = report.records
    if by_bit_length:
        records = [r for r in records if r.parameter > 0 and (r.parameter + 1) & r.parameter == 0]
    if len(records) < 3:
        raise InsufficientDataError(f"need at least 3 records, got {len(records)}")
    paddings = [r.padding for r in records]
    ratios = [_ratio(a, b) for a, b in zip(paddings, paddings[1:])]
    limit = _limit(paddings)
    if abs(limit - 1) <= POLYNOMIAL_BAND:
        verdict = GrowthClass.POLYNOMIAL
    elif limit >= EXPONENTIAL_FLOOR and math.isfinite(limit):
        verdict = GrowthClass.EXPONENTIAL
    else:
        verdict = GrowthClass.UNCLASSIFIED
    return GrowthEvidence(ratios, limit, verdict)


def _finish(records: list[GrowthRecord], by_bit_length: bool = False) -> ExperimentReport:
    records.sort(key=lambda r: r.parameter)
    report = ExperimentReport(records)
    report.fit_evidence = [_ratio(a.padding, b.padding) for a, b in zip(records, records[1:])]
    try:
        evidence = growth_ratio_check(report, by_bit_length)
    except InsufficientDataError:
        return report
    report.growth_class = evidence.verdict
    report.limit = evidence.limit
    return report


def theorem3_sweep(max_n: int) -> tuple[ExperimentReport, ExperimentReport]:
    """Padding for the efficient and the length reading of each n in [2, max_n].

    Both start from the shortest binary code of n.  The efficient target
    I(1/(ceil(log2(n+1)) + 1)) is met as is; the length target I(1/(n+1))
    forces the payload up to n bits.  Classes refer to the bit length of n.
    """
    if max_n < 2:
        raise DomainError("theorem 3 sweep needs max_n >= 2")
    efficient, length = [], []
    for n in range(2, max_n + 1):
        baseline = payload_bits(n)
        efficient.append(
            closed_form_record(n, baseline, baseline, binary_entropy(1 / (baseline + 1)))
        )
        length.append(closed_form_record(n, baseline, n, binary_entropy(1 / (n + 1))))
    return _finish(efficient, by_bit_length=True), _finish(length, by_bit_length=True)


def m1_baseline(machine: TuringMachine | None = None) -> Callable[[int], int]:
    """Payload length of the encoded computation of *machine* (M1) on input b."""
    machine = machine or load_m1()

    def baseline(b: int) -> int:
        return len(computation_for(machine, b).combined) - 1

    return baseline


def theorem4_sweep(
    max_b: int,
    baseline: Callable[[int], int] | None = None,
    machine: TuringMachine | None = None,
) -> ExperimentReport:
    """Padding needed to push uncertainty to I(1/(2**b + 1)) for b in [1, max_b].

    With the default baseline the computation of M1 (or *machine*) on input
    b is built and, for b <= MATERIALIZE_LIMIT, actually reduced; the
    reduction must reproduce the closed-form padding and land strictly
    below the target.
    """
    if not 1 <= max_b <= MAX_THEOREM4_B:
        raise DomainError(f"max_b must lie in [1, {MAX_THEOREM4_B}], got {max_b}")
    materialize = baseline is None
    if baseline is None:
        machine = machine or load_m1()
    records = []
    for b in range(1, max_b + 1):
        epsilon = binary_entropy(1 / (2**b + 1))
        if materialize:
            c = computation_for(machine, b)
            base = len(c.combined) - 1
        else:
            base = baseline(b)
        record = closed_form_record(b, base, 2**b, epsilon)
        if materialize and b <= MATERIALIZE_LIMIT:
            reduced, plan = reduce_computation(c, epsilon)
            achieved = computation_uncertainty(reduced).entropy
            if plan.bits_to_add != record.padding or not achieved < epsilon:
                raise AssertionError(
                    f"b={b}: reduction added {plan.bits_to_add} bits reaching {achieved!r}, "
                    f"closed form says {record.padding} bits below {epsilon!r}"
                )
            record = GrowthRecord(b, base, 2**b, plan.bits_to_add, epsilon, achieved)
        records.append(record)
    return _finish(records)


def _row(r: GrowthRecord) -> list[str]:
    return [
        str(r.parameter),
        str(r.baseline_length),
        str(r.required_length),
        str(r.padding),
        format(r.epsilon, ".9g"),
        format(r.achieved, ".9g"),
    ]


def emit_csv(report: ExperimentReport, destination: TextIO) -> None:
    writer = csv.writer(destination, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for r in report.records:
        writer.writerow(_row(r))


def csv_text(report: ExperimentReport) -> str:
    buf = io.StringIO()
    emit_csv(report, buf)
    return buf.getvalue()


def summary(report: ExperimentReport) -> str:
    if report.growth_class is GrowthClass.UNCLASSIFIED and math.isnan(report.limit):
        return "growth=Unclassified (too few records)"
    return f"growth={report.growth_class.value} ratio→{report.limit:.3g}"
