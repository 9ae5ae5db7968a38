"""Concavification of the value function and the Blackwell comparison.

The optimal information structure with a prescribed mean only needs to
put weight on the finite signal set, so the envelope value at ``s`` is the
LP ``max sum_t lam_t v_A(t)`` over ``lam`` in the simplex with
``sum_t lam_t t = s``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import InputError, InvariantViolation
from .exact_lp import LinearProgram, Sense, Status, feasible_point, lp_solve
from .fair_valuation import dominating_lp
from .geometry import Outside, extreme_points
from .model import Action, ActionSet, InfoStructure, SignalSet, value_function


@dataclass(frozen=True)
class PersuasionSolution:
    value: Fraction
    optimal_pi: InfoStructure


@dataclass(frozen=True)
class Affine:
    alpha: Action


@dataclass(frozen=True)
class NotAffine:
    """A mean ``point`` and a way of splitting it that earns less than the envelope.

    ``mixture`` pairs signal indices with weights averaging to ``point``;
    every signal used is extreme, so its envelope value is ``v_A`` there.
    """

    point: tuple[Fraction, ...]
    mixture: tuple[tuple[int, Fraction], ...]
    mixture_value: Fraction
    envelope_value: Fraction


def _query(T: SignalSet, s) -> tuple[Fraction, ...]:
    s = tuple(Fraction(x) for x in s)
    if len(s) != T.dim:
        raise InputError(f"query has {len(s)} entries, signals have {T.dim}")
    return s


def concavify(T: SignalSet, A: ActionSet, s) -> Outside | PersuasionSolution:
    """Best achievable average value over splittings of ``s`` into signals."""
    s = _query(T, s)
    if A.dim != T.dim:
        raise InputError(f"actions have {A.dim} entries, signals have {T.dim}")
    d = T.dim
    A_eq = [[t[r] for t in T] for r in range(d)] + [[Fraction(1)] * len(T)]
    b_eq = list(s) + [Fraction(1)]
    lp = LinearProgram([value_function(A, t) for t in T], Sense.MAXIMIZE, A_eq, b_eq)
    out = lp_solve(lp)
    if out.status is Status.INFEASIBLE:
        return Outside()
    if out.status is not Status.OPTIMAL:
        raise InvariantViolation("envelope LP over a bounded polytope reported unbounded")
    return PersuasionSolution(out.value, InfoStructure(out.point))


def is_affine_persuasion_value(T: SignalSet, A: ActionSet, extremes: Sequence[int] | None = None):
    """Decide whether the envelope is linear on the hull.

    Linear means some ``alpha`` matches ``v_A`` on the extreme signals and
    weakly dominates it on the rest.  When no such ``alpha`` exists, the
    Farkas multipliers of that system give two splittings of a common mean;
    the one over extreme points is the returned under-performing mixture.
    """
    E = set(extreme_points(T) if extremes is None else extremes)
    v = [value_function(A, t) for t in T]
    eq_idx = [i for i in range(len(T)) if i in E]
    ub_idx = [i for i in range(len(T)) if i not in E]
    out = feasible_point(
        [T[i].probs for i in eq_idx],
        [v[i] for i in eq_idx],
        [[-x for x in T[i].probs] for i in ub_idx],
        [-v[i] for i in ub_idx],
        nvars=T.dim,
        free=[True] * T.dim,
    )
    if out.status is Status.OPTIMAL:
        return Affine(Action(out.point))

    w = [Fraction(0)] * len(T)
    for i, u in zip(eq_idx, out.dual_eq):
        w[i] = -u
    for i, u in zip(ub_idx, out.dual_ub):
        w[i] = u
    mass = sum(-x for x in w if x < 0)
    mixture = tuple((i, -x / mass) for i, x in enumerate(w) if x < 0)
    point = tuple(sum((lam * T[i][r] for i, lam in mixture), Fraction(0)) for r in range(T.dim))
    mixture_value = sum((lam * v[i] for i, lam in mixture), Fraction(0))
    env = concavify(T, A, point)
    if isinstance(env, Outside) or not env.value > mixture_value:
        raise InvariantViolation("Farkas certificate did not yield a strict concavity gap")
    return NotAffine(point, mixture, mixture_value, env.value)


def verify_concave_envelope_duality(T: SignalSet, A: ActionSet, s) -> bool:
    """Envelope value equals the cheapest dominating linear payment at ``s``."""
    env = concavify(T, A, s)
    if isinstance(env, Outside):
        raise InputError("query point lies outside the convex hull of the signals")
    dom = dominating_lp(T, A, s)
    return dom.status is Status.OPTIMAL and dom.value == env.value


def blackwell_more_informative(T: SignalSet, pi: InfoStructure, pi_prime: InfoStructure) -> bool:
    """Is ``pi`` a mean-preserving spread of ``pi_prime``?

    Looks for a kernel ``M(s, .)`` on the signal set, one row per signal in
    the support of ``pi_prime``, that keeps each row's mean at ``s`` and
    maps ``pi_prime`` onto ``pi``.
    """
    if len(pi) != len(T) or len(pi_prime) != len(T):
        raise InputError("information structures must be indexed by the signal set")
    src = pi_prime.support()
    k, d = len(T), T.dim
    nvars = len(src) * k
    A_eq, b_eq = [], []
    for a, s in enumerate(src):
        row = [Fraction(0)] * nvars
        row[a * k:(a + 1) * k] = [Fraction(1)] * k
        A_eq.append(row)
        b_eq.append(Fraction(1))
        for r in range(d):
            row = [Fraction(0)] * nvars
            row[a * k:(a + 1) * k] = [t[r] for t in T]
            A_eq.append(row)
            b_eq.append(T[s][r])
    for t in range(k):
        row = [Fraction(0)] * nvars
        for a, s in enumerate(src):
            row[a * k + t] = pi_prime[s]
        A_eq.append(row)
        b_eq.append(pi[t])
    return feasible_point(A_eq, b_eq, nvars=nvars).status is Status.OPTIMAL
