"""Convex geometry of finite signal sets, decided with exact LPs."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import InputError
from .exact_lp import Status, feasible_point
from .model import Action, SignalSet


class Outside:
    """The target is not in the convex hull."""

    def __repr__(self):
        return "Outside()"

    def __eq__(self, other):
        return isinstance(other, Outside)

    def __hash__(self):
        return 1


class NotSeparable:
    def __repr__(self):
        return "NotSeparable()"

    def __eq__(self, other):
        return isinstance(other, NotSeparable)

    def __hash__(self):
        return 2


@dataclass(frozen=True)
class ConvexDecomposition:
    target: tuple[Fraction, ...]
    support: tuple[tuple[int, Fraction], ...]

    def weights(self, size: int) -> tuple[Fraction, ...]:
        w = [Fraction(0)] * size
        for i, x in self.support:
            w[i] = x
        return tuple(w)


@dataclass(frozen=True)
class SeparatingHyperplane:
    """``normal.t + offset``: at least 1 on the kept point, at most -1 on the rest."""

    normal: Action
    offset: Fraction

    def __call__(self, t) -> Fraction:
        return self.normal(t) + self.offset

    def as_action(self) -> Action:
        """The same affine function as a payoff vector (signals sum to one)."""
        return Action(tuple(x + self.offset for x in self.normal.payoffs))


def _hull_system(points: Sequence[Sequence[Fraction]], target: Sequence[Fraction]):
    d = len(target)
    A = [[p[r] for p in points] for r in range(d)]
    A.append([Fraction(1)] * len(points))
    b = list(target) + [Fraction(1)]
    return A, b


def convex_decomposition(T: SignalSet, target, indices: Iterable[int] | None = None):
    """Write ``target`` as a convex combination of signals of ``T``.

    ``indices`` restricts the candidate signals.  The weights come from a
    basic feasible solution, so at most ``dim + 1`` of them are nonzero.
    """
    target = tuple(Fraction(x) for x in target)
    if len(target) != T.dim:
        raise InputError(f"target has {len(target)} entries, signals have {T.dim}")
    idx = list(range(len(T))) if indices is None else list(indices)
    if not idx:
        return Outside()
    A, b = _hull_system([T[i].probs for i in idx], target)
    out = feasible_point(A, b, nvars=len(idx))
    if out.status is not Status.OPTIMAL:
        return Outside()
    support = tuple((idx[k], w) for k, w in enumerate(out.point) if w != 0)
    return ConvexDecomposition(target, support)


def extreme_points(T: SignalSet) -> list[int]:
    """Indices of signals that are not convex combinations of the others."""
    n = len(T)
    return [
        i for i in range(n)
        if isinstance(convex_decomposition(T, T[i].probs, [j for j in range(n) if j != i]), Outside)
    ]


def strict_separation(T: SignalSet, i: int, S: Iterable[int]):
    """Affine function >= 1 at signal ``i`` and <= -1 on the rest of ``S``."""
    S = list(dict.fromkeys(S))
    if i not in S:
        raise InputError(f"index {i} must belong to the index set")
    others = [j for j in S if j != i]
    n = T.dim
    # variables: normal (n entries) then offset, all free
    A_ub = [[-x for x in T[i].probs] + [Fraction(-1)]]
    b_ub = [Fraction(-1)]
    for j in others:
        A_ub.append(list(T[j].probs) + [Fraction(1)])
        b_ub.append(Fraction(-1))
    out = feasible_point(A_ub=A_ub, b_ub=b_ub, nvars=n + 1, free=[True] * (n + 1))
    if out.status is not Status.OPTIMAL:
        return NotSeparable()
    return SeparatingHyperplane(Action(out.point[:n]), out.point[n])
