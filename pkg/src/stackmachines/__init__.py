"""Stack-machine workbench: validity, membership, conversion, determinization, quantum variants."""

from .convert import pda1_to_pda2, pda2_to_pda1
from .determinize import projection_language, eps_closure, subset_construct, subset_members
from .dot import export_dot
from .errors import (
    CapExceededError,
    MachineValidationError,
    MalformedInputError,
    ParseError,
    StackMachineError,
)
from .machines import (
    Alphabets,
    Dfa,
    DpdaII,
    PdaI,
    PdaII,
    TwoStackMachine,
    check_machine,
    embed_dfa_as_two_stack,
    validate_machine,
)
from .quantum import (
    QuantumMachine,
    UnitaryFamily,
    accept_prob_bounded,
    check_unitary,
    evolve,
)
from .recognition import (
    ACCEPTED,
    INCONCLUSIVE,
    REJECTED,
    BalancedReachabilityTable,
    RunOutcome,
    accepts_dpda2,
    accepts_pda2,
    accepts_two_stack_bounded,
    balanced_reachability,
    brute_force_accepts,
    run_annotation_two_stack,
)
from .smfile import machine_kind, parse_machine, serialize_machine
from .tokens import EPSILON, PairOp, StackOp, pair_tokens, pop, project, push, stack_tokens
from .validity import (
    StackTrace,
    check_valid_single,
    check_valid_two,
    enumerate_valid,
    valid_string_grammar,
)

__version__ = "0.1.0"

__all__ = [
    "ACCEPTED",
    "Alphabets",
    "BalancedReachabilityTable",
    "CapExceededError",
    "Dfa",
    "DpdaII",
    "EPSILON",
    "INCONCLUSIVE",
    "MachineValidationError",
    "MalformedInputError",
    "PairOp",
    "ParseError",
    "PdaI",
    "PdaII",
    "QuantumMachine",
    "REJECTED",
    "RunOutcome",
    "StackMachineError",
    "StackOp",
    "StackTrace",
    "TwoStackMachine",
    "UnitaryFamily",
    "accept_prob_bounded",
    "accepts_dpda2",
    "accepts_pda2",
    "accepts_two_stack_bounded",
    "balanced_reachability",
    "brute_force_accepts",
    "check_machine",
    "check_unitary",
    "check_valid_single",
    "check_valid_two",
    "projection_language",
    "embed_dfa_as_two_stack",
    "enumerate_valid",
    "eps_closure",
    "evolve",
    "export_dot",
    "machine_kind",
    "pair_tokens",
    "parse_machine",
    "pda1_to_pda2",
    "pda2_to_pda1",
    "pop",
    "project",
    "push",
    "run_annotation_two_stack",
    "serialize_machine",
    "stack_tokens",
    "subset_construct",
    "subset_members",
    "valid_string_grammar",
    "validate_machine",
]
