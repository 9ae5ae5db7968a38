"""Fair valuations and the cheapest dominating linear payment."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import InputError
from .exact_lp import LinearProgram, NoSolution, Sense, Status, linear_solve, lp_solve
from .model import Action, ActionSet, SignalSet, value_function


@dataclass(frozen=True)
class FairValuation:
    """State values ``alpha`` with ``alpha.t == v_A(t)`` on every signal."""

    alpha: Action
    action_set: ActionSet

    def holds_on(self, T: SignalSet) -> bool:
        return all(self.alpha(t) == value_function(self.action_set, t) for t in T)


def fair_valuation(T: SignalSet, A: ActionSet) -> FairValuation | None:
    """Solve ``alpha.t = v_A(t)`` for all signals, or None if inconsistent.

    Underdetermined systems return the particular solution with free
    coordinates set to zero.
    """
    if A.dim != T.dim:
        raise InputError(f"actions have {A.dim} entries, signals have {T.dim}")
    sol = linear_solve([t.probs for t in T], [value_function(A, t) for t in T])
    if isinstance(sol, NoSolution):
        return None
    return FairValuation(Action(sol.point), A)


@dataclass(frozen=True)
class DominatingResult:
    status: Status
    value: Fraction | None = None
    y: Action | None = None


def dominating_lp(T: SignalSet, A: ActionSet, s_star) -> DominatingResult:
    """``min y.s*`` over payoff vectors ``y`` with ``y.t >= v_A(t)`` on all signals.

    The LP is always feasible.  It is bounded exactly when ``s*`` lies in
    the convex hull; otherwise ``UNBOUNDED`` is returned.
    """
    s_star = tuple(Fraction(x) for x in s_star)
    if len(s_star) != T.dim or A.dim != T.dim:
        raise InputError("dimension mismatch between query, signals and actions")
    lp = LinearProgram(
        s_star,
        Sense.MINIMIZE,
        A_ub=[[-x for x in t.probs] for t in T],
        b_ub=[-value_function(A, t) for t in T],
        free=[True] * T.dim,
    )
    out = lp_solve(lp)
    if out.status is Status.OPTIMAL:
        return DominatingResult(out.status, out.value, Action(out.point))
    return DominatingResult(out.status)
