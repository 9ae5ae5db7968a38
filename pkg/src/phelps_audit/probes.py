"""Sampled action sets for corroborating the equivalence of the audit verdicts.

Non-discrimination quantifies over every finite menu, which cannot be
enumerated.  These probes are chosen so that a discriminatory signal set
is caught without consulting its affine dependence:

* for every extreme signal, a cut ``{h, 0}`` where ``h`` is positive only
  at that signal;
* for every non-extreme signal ``s*``, the pair ``{f, -f}`` that vanishes
  at ``s*`` but pays at two points averaging to it;
* random hinges ``{h - c, 0}`` whose kink passes between the signals.

Larger menus pad these with actions that never win on the signal set,
and add plain random menus.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .discrimination import find_discrimination_witness, is_identified, proof_witness_actions
from .fair_valuation import fair_valuation
from .geometry import NotSeparable, convex_decomposition, extreme_points, strict_separation
from .model import Action, ActionSet, Signal, SignalSet, value_function
from .persuasion import Affine, is_affine_persuasion_value


def random_rational(rng: random.Random, bound: int = 12, max_den: int = 12) -> Fraction:
    return Fraction(rng.randint(-bound, bound), rng.randint(1, max_den))


def random_action(rng: random.Random, dim: int) -> Action:
    return Action(tuple(random_rational(rng) for _ in range(dim)))


def _hinge(rng: random.Random, T: SignalSet) -> ActionSet:
    h = random_action(rng, T.dim)
    vals = sorted(set(h(t) for t in T))
    if len(vals) > 1:
        k = rng.randrange(len(vals) - 1)
        cut = (vals[k] + vals[k + 1]) / 2
    else:
        cut = vals[0]
    return ActionSet((Action(tuple(x - cut for x in h.payoffs)), Action((Fraction(0),) * T.dim)))


def structured_probes(T: SignalSet, extremes: list[int] | None = None) -> list[ActionSet]:
    """Cuts at extreme signals and proof menus at non-extreme ones."""
    E = extreme_points(T) if extremes is None else list(extremes)
    zero = Action((Fraction(0),) * T.dim)
    probes = []
    if len(T) > 1:
        for i in E:
            cut = strict_separation(T, i, range(len(T)))
            if not isinstance(cut, NotSeparable):
                probes.append(ActionSet((cut.as_action(), zero)))
    for i in range(len(T)):
        if i in E:
            continue
        dec = convex_decomposition(T, T[i].probs, [j for j in range(len(T)) if j != i])
        (j0, gamma), rest = dec.support[0], dec.support[1:]
        t = T[j0]
        t_prime = Signal(tuple(
            sum((w * T[j][r] for j, w in rest), Fraction(0)) / (1 - gamma) for r in range(T.dim)
        ))
        f, g = proof_witness_actions(T[i], t, t_prime, gamma)
        probes.append(ActionSet((f, g)))
    return probes


def binary_probes(T: SignalSet, rng: random.Random, count: int = 20, extremes=None) -> list[ActionSet]:
    probes = structured_probes(T, extremes)
    while len(probes) < count:
        probes.append(_hinge(rng, T))
    return probes


def _pad(rng: random.Random, T: SignalSet, A: ActionSet, extra: int) -> ActionSet:
    acts = list(A)
    for _ in range(extra):
        r = random_action(rng, T.dim)
        excess = max(r(t) - value_function(A, t) for t in T)
        drop = excess + Fraction(rng.randint(1, 12), rng.randint(1, 12))
        acts.append(Action(tuple(x - drop for x in r.payoffs)))
    return ActionSet(tuple(acts))


def larger_probes(T: SignalSet, rng: random.Random, count: int = 10, binary=None) -> list[ActionSet]:
    """Menus of three to five actions."""
    binary = binary_probes(T, rng, 0) if binary is None else binary
    probes = [_pad(rng, T, A, rng.randint(1, 3)) for A in binary[:count]]
    while len(probes) < count:
        size = rng.randint(3, 5)
        probes.append(ActionSet(tuple(random_action(rng, T.dim) for _ in range(size))))
    return probes


@dataclass(frozen=True)
class Verdicts:
    """Independently computed answers to "is this signal set non-discriminatory?"."""

    identified: bool
    no_witness: bool
    binary_fair: bool
    larger_fair: bool
    affine_envelopes: bool
    n_binary: int
    n_larger: int

    @property
    def consistent(self) -> bool:
        return len({self.identified, self.no_witness, self.binary_fair,
                    self.larger_fair, self.affine_envelopes}) == 1


def equivalence_verdicts(T: SignalSet, rng: random.Random, n_binary: int = 20, n_larger: int = 10) -> Verdicts:
    """Five verdicts that must coincide.

    The envelope verdict only speaks about the extreme signals, so it is
    combined with "every signal is extreme": a signal set is
    non-discriminatory exactly when it equals its extreme points and those
    have linear envelopes for every menu.
    """
    E = extreme_points(T)
    binary = binary_probes(T, rng, n_binary, E)
    larger = larger_probes(T, rng, n_larger, binary)
    all_extreme = len(E) == len(T)
    affine = all_extreme and all(
        isinstance(is_affine_persuasion_value(T, A, E), Affine) for A in binary + larger
    )
    return Verdicts(
        identified=is_identified(T),
        no_witness=find_discrimination_witness(T) is None,
        binary_fair=all(fair_valuation(T, A) is not None for A in binary),
        larger_fair=all(fair_valuation(T, A) is not None for A in larger),
        affine_envelopes=affine,
        n_binary=len(binary),
        n_larger=len(larger),
    )
