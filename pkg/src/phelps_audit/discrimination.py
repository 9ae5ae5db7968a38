"""Identification, discrimination witnesses and wage shifts."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import InputError, InvariantViolation
from .exact_lp import Independent, affine_dependence, dot
from .geometry import NotSeparable, Outside, convex_decomposition, strict_separation
from .model import (
    Action,
    ActionSet,
    InfoStructure,
    Signal,
    SignalSet,
    expected_payoff,
    induced_skill,
)


@dataclass(frozen=True)
class DiscriminationWitness:
    """Two information structures with the same induced skill but different pay."""

    pi: InfoStructure
    pi_prime: InfoStructure
    action_set: ActionSet
    payoff: Fraction
    payoff_prime: Fraction

    def violations(self, T: SignalSet) -> list[str]:
        problems = []
        if len(self.action_set) != 2:
            problems.append(f"action set has {len(self.action_set)} actions, expected 2")
        if induced_skill(T, self.pi) != induced_skill(T, self.pi_prime):
            problems.append("induced skills differ")
        if expected_payoff(T, self.action_set, self.pi) != self.payoff:
            problems.append("payoff under pi is misreported")
        if expected_payoff(T, self.action_set, self.pi_prime) != self.payoff_prime:
            problems.append("payoff under pi' is misreported")
        if self.payoff == self.payoff_prime:
            problems.append("payoffs are equal")
        return problems

    def is_valid(self, T: SignalSet) -> bool:
        return not self.violations(T)


def is_identified(T: SignalSet) -> bool:
    """True iff distinct information structures always induce distinct skills.

    For a finite signal set this is affine independence of the signals.
    """
    return isinstance(affine_dependence([t.probs for t in T]), Independent)


def find_discrimination_witness(T: SignalSet) -> DiscriminationWitness | None:
    """Build an explicit binary-menu discrimination example, if one exists.

    An affine dependence ``c`` splits into ``pi ~ c+`` and ``pi' ~ c-`` with
    equal means.  One support point that is a vertex of the support's hull
    is then cut off by an affine function ``h`` (``h >= 1`` there, ``h <= -1``
    on the other support points); under the menu ``{h, 0}`` only that point
    earns anything, so the two structures pay differently.
    """
    dep = affine_dependence([t.probs for t in T])
    if isinstance(dep, Independent):
        return None
    c = dep.coefficients
    pos = sum(x for x in c if x > 0)
    pi = InfoStructure(tuple(x / pos if x > 0 else Fraction(0) for x in c))
    pi_prime = InfoStructure(tuple(-x / pos if x < 0 else Fraction(0) for x in c))
    support = [i for i, x in enumerate(c) if x != 0]

    star = next(
        i for i in support
        if isinstance(convex_decomposition(T, T[i].probs, [j for j in support if j != i]), Outside)
    )
    cut = strict_separation(T, star, support)
    if isinstance(cut, NotSeparable):
        raise InvariantViolation(f"vertex {star} of the dependence support is not separable")
    zero = Action((Fraction(0),) * T.dim)
    A = ActionSet((cut.as_action(), zero))
    w = DiscriminationWitness(pi, pi_prime, A, expected_payoff(T, A, pi), expected_payoff(T, A, pi_prime))
    problems = w.violations(T)
    if problems:
        raise InvariantViolation("constructed witness is invalid: " + "; ".join(problems))
    return w


def proof_witness_actions(s_star: Signal, t: Signal, t_prime: Signal, gamma) -> tuple[Action, Action]:
    """The two-action menu that is worthless at ``s*`` but pays at ``t`` and ``t'``.

    Requires ``s* = gamma t + (1 - gamma) t'`` with ``0 < gamma < 1`` and
    ``t != t'``.  Returns ``f = (s* - t) + (t.s* - s*.s*) 1`` and ``g = -f``.
    """
    gamma = Fraction(gamma)
    s, a, b = tuple(s_star), tuple(t), tuple(t_prime)
    if not len(s) == len(a) == len(b):
        raise InputError("signals have different dimensions")
    if not 0 < gamma < 1:
        raise InputError(f"gamma must lie strictly between 0 and 1, got {gamma}")
    if a == b:
        raise InputError("t and t' must differ")
    if any(x != gamma * y + (1 - gamma) * z for x, y, z in zip(s, a, b)):
        raise InputError("s* is not gamma t + (1 - gamma) t'")
    shift = dot(a, s) - dot(s, s)
    f = Action(tuple(x - y + shift for x, y in zip(s, a)))
    return f, -f


def wage_shift(T: SignalSet, A: ActionSet, pi: InfoStructure, pi_prime: InfoStructure) -> Action:
    """A common payoff shift ``k`` under which the two structures pay differently.

    Needs distinct induced skills.  With ``l`` the first coordinate where
    the skills differ, ``k = alpha e_l`` and ``alpha`` is chosen so that the
    payoff gap ``(E_pi - E_pi') + k.(p_pi - p_pi')`` cannot vanish.
    """
    p, q = induced_skill(T, pi), induced_skill(T, pi_prime)
    if p == q:
        raise InputError("induced skills coincide; no shift can separate them")
    diff = [x - y for x, y in zip(p, q)]
    l = next(i for i, x in enumerate(diff) if x != 0)
    delta = expected_payoff(T, A, pi_prime) - expected_payoff(T, A, pi)
    alpha = delta / diff[l] + 1
    k = Action(tuple(alpha if i == l else Fraction(0) for i in range(T.dim)))
    return k


def shifted_payoffs(T: SignalSet, A: ActionSet, k: Action, pi: InfoStructure, pi_prime: InfoStructure):
    shifted = ActionSet(tuple(a + k for a in A))
    return expected_payoff(T, shifted, pi), expected_payoff(T, shifted, pi_prime)

