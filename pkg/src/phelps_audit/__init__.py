"""Exact audits of finite signal structures for statistical discrimination."""

from .discrimination import (
    DiscriminationWitness,
    find_discrimination_witness,
    is_identified,
    proof_witness_actions,
    wage_shift,
)
from .errors import InputError, InvariantViolation
from .fair_valuation import FairValuation, dominating_lp, fair_valuation
from .geometry import convex_decomposition, extreme_points, strict_separation
from .model import (
    Action,
    ActionSet,
    InfoStructure,
    Signal,
    SignalSet,
    StateSpace,
    expected_payoff,
    induced_skill,
    shift_action_set,
    value_function,
)
from .persuasion import (
    Affine,
    NotAffine,
    blackwell_more_informative,
    concavify,
    is_affine_persuasion_value,
    verify_concave_envelope_duality,
)

__version__ = "0.1.0"
