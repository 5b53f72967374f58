"""Signed natural-number encodings, their uncertainty and entropy reduction."""
from bnumbers.encoding import (
    BitString,
    BNumber,
    Convention,
    Scheme,
    SetTerm,
    decode,
    dual,
    encode,
    increment,
    possible_encodings,
    successor,
    von_neumann,
)
from bnumbers.entropy import (
    UncertaintyBounds,
    binary_entropy,
    entropy_bounds,
    inverse_entropy,
    parse_entropy,
    split_uncertainty,
)
from bnumbers.machine import (
    Computation,
    RunResult,
    TuringMachine,
    Verdict,
    WorstCase,
    computation_uncertainty,
    decode_computation,
    deserialize_machine,
    encode_computation,
    parse_machine,
    render_machine,
    run,
    serialize_machine,
    worst_case_time,
)
from bnumbers.reduction import (
    PaddedString,
    PaddingPlan,
    ReducedComputation,
    apply_mapping,
    invert_mapping,
    padding_bits_needed,
    reduce_computation,
)

__version__ = "0.1.0"
