"""States, signals, action sets and information structures.

A signal is a posterior over the finite state space, an action is a
state-contingent payoff vector, and an information structure is a
distribution over a finite signal set.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import InputError
from .exact_lp import Vector, dot, vector


@dataclass(frozen=True)
class StateSpace:
    labels: tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "labels", tuple(self.labels))
        if not self.labels:
            raise InputError("state space must be nonempty")
        if len(set(self.labels)) != len(self.labels):
            raise InputError("state labels must be distinct")

    def __len__(self):
        return len(self.labels)


@dataclass(frozen=True)
class Signal:
    """A probability vector over states."""

    probs: Vector

    def __post_init__(self):
        p = vector(self.probs)
        if not p:
            raise InputError("a signal needs at least one state")
        if any(x < 0 for x in p):
            raise InputError(f"negative probability in {fmt_vec(p)}")
        if sum(p) != 1:
            raise InputError(f"probabilities sum to {sum(p)}, not 1: {fmt_vec(p)}")
        object.__setattr__(self, "probs", p)

    def __len__(self):
        return len(self.probs)

    def __iter__(self):
        return iter(self.probs)

    def __getitem__(self, i):
        return self.probs[i]


@dataclass(frozen=True)
class Action:
    """A payoff vector; also used for affine functions on the simplex."""

    payoffs: Vector

    def __post_init__(self):
        object.__setattr__(self, "payoffs", vector(self.payoffs))

    def __len__(self):
        return len(self.payoffs)

    def __iter__(self):
        return iter(self.payoffs)

    def __getitem__(self, i):
        return self.payoffs[i]

    def __add__(self, other: "Action") -> "Action":
        _same_dim(self, other)
        return Action(tuple(a + b for a, b in zip(self.payoffs, other.payoffs)))

    def __neg__(self) -> "Action":
        return Action(tuple(-a for a in self.payoffs))

    def scaled(self, k) -> "Action":
        k = Fraction(k)
        return Action(tuple(k * a for a in self.payoffs))

    def __call__(self, s: Sequence[Fraction]) -> Fraction:
        _same_dim(self, s)
        return dot(self.payoffs, tuple(s))


@dataclass(frozen=True)
class SignalSet:
    """Finite ordered set of distinct signals over one state space."""

    signals: tuple[Signal, ...]
    names: tuple[str, ...] | None = None

    def __post_init__(self):
        sigs = tuple(s if isinstance(s, Signal) else Signal(s) for s in self.signals)
        if not sigs:
            raise InputError("signal set must be nonempty")
        n = len(sigs[0])
        if any(len(s) != n for s in sigs):
            raise InputError("signals have different numbers of states")
        seen: dict[Signal, int] = {}
        for i, s in enumerate(sigs):
            if s in seen:
                raise InputError(f"signals {seen[s]} and {i} are identical: {fmt_vec(s.probs)}")
            seen[s] = i
        object.__setattr__(self, "signals", sigs)
        if self.names is None:
            object.__setattr__(self, "names", tuple(f"t{i + 1}" for i in range(len(sigs))))
        else:
            object.__setattr__(self, "names", tuple(self.names))
            if len(self.names) != len(sigs) or len(set(self.names)) != len(sigs):
                raise InputError("signal names must be distinct, one per signal")

    @property
    def dim(self) -> int:
        return len(self.signals[0])

    def __len__(self):
        return len(self.signals)

    def __iter__(self):
        return iter(self.signals)

    def __getitem__(self, i) -> Signal:
        return self.signals[i]

    def subset(self, indices: Iterable[int]) -> "SignalSet":
        idx = list(indices)
        return SignalSet(tuple(self.signals[i] for i in idx), tuple(self.names[i] for i in idx))


@dataclass(frozen=True)
class ActionSet:
    actions: tuple[Action, ...]

    def __post_init__(self):
        acts = tuple(a if isinstance(a, Action) else Action(a) for a in self.actions)
        if not acts:
            raise InputError("action set must be nonempty")
        if any(len(a) != len(acts[0]) for a in acts):
            raise InputError("actions have different dimensions")
        object.__setattr__(self, "actions", acts)

    @property
    def dim(self) -> int:
        return len(self.actions[0])

    def __len__(self):
        return len(self.actions)

    def __iter__(self):
        return iter(self.actions)

    def __getitem__(self, i) -> Action:
        return self.actions[i]


@dataclass(frozen=True)
class InfoStructure:
    """Weights over the signals of a :class:`SignalSet`, by position."""

    weights: Vector

    def __post_init__(self):
        w = vector(self.weights)
        if any(x < 0 for x in w):
            raise InputError("information structure has a negative weight")
        if sum(w) != 1:
            raise InputError(f"information structure weights sum to {sum(w)}, not 1")
        object.__setattr__(self, "weights", w)

    @classmethod
    def point_mass(cls, size: int, i: int) -> "InfoStructure":
        return cls(tuple(Fraction(int(k == i)) for k in range(size)))

    def __len__(self):
        return len(self.weights)

    def __getitem__(self, i):
        return self.weights[i]

    def support(self) -> list[int]:
        return [i for i, w in enumerate(self.weights) if w != 0]


def fmt_vec(v: Iterable) -> str:
    return "(" + ", ".join(str(x) for x in v) + ")"


def _same_dim(a, b) -> None:
    if len(a) != len(b):
        raise InputError(f"dimension mismatch: {len(a)} vs {len(b)}")


def _check_pi(T: SignalSet, pi: InfoStructure) -> None:
    if len(pi) != len(T):
        raise InputError(f"information structure has {len(pi)} weights for {len(T)} signals")


def argmax_action(A: ActionSet, s: Sequence[Fraction]) -> int:
    """Index of the best action at ``s``; lowest index on ties."""
    best, best_val = 0, None
    for i, a in enumerate(A):
        val = a(s)
        if best_val is None or val > best_val:
            best, best_val = i, val
    return best


def value_function(A: ActionSet, s: Sequence[Fraction]) -> Fraction:
    """``max_a a.s`` over the action set."""
    return max(a(s) for a in A)


def induced_skill(T: SignalSet, pi: InfoStructure) -> Signal:
    """Mean of the signals under ``pi``."""
    _check_pi(T, pi)
    n = T.dim
    p = [Fraction(0)] * n
    for w, t in zip(pi.weights, T):
        if w:
            for k in range(n):
                p[k] += w * t[k]
    return Signal(tuple(p))


def expected_payoff(T: SignalSet, A: ActionSet, pi: InfoStructure) -> Fraction:
    """Average remuneration ``sum_t pi(t) v_A(t)``."""
    _check_pi(T, pi)
    if A.dim != T.dim:
        raise InputError(f"actions have {A.dim} entries, signals have {T.dim}")
    return sum((w * value_function(A, t) for w, t in zip(pi.weights, T) if w), Fraction(0))


def shift_action_set(A: ActionSet, k: Action) -> ActionSet:
    """``A + k``: add the same payoff vector to every action."""
    return ActionSet(tuple(a + k for a in A))
