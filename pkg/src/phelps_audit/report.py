"""Audit reports: assembly, self-consistency checks and rendering."""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .discrimination import (
    DiscriminationWitness,
    find_discrimination_witness,
    shifted_payoffs,
    wage_shift,
)
from .errors import InvariantViolation
from .exact_lp import Dependence, Status, affine_dependence
from .fair_valuation import DominatingResult, FairValuation, dominating_lp, fair_valuation
from .geometry import extreme_points
from .instance import ProblemInstance
from .model import Action, InfoStructure, SignalSet, expected_payoff, induced_skill
from .persuasion import (
    Affine,
    NotAffine,
    PersuasionSolution,
    blackwell_more_informative,
    concavify,
    is_affine_persuasion_value,
)
from .probes import Verdicts, equivalence_verdicts


@dataclass(frozen=True)
class PairCheck:
    action_set: str
    pi: str
    pi_prime: str
    skill: tuple[Fraction, ...]
    skill_prime: tuple[Fraction, ...]
    payoff: Fraction
    payoff_prime: Fraction
    shift: Action | None = None
    shifted: tuple[Fraction, Fraction] | None = None

    @property
    def same_skill(self) -> bool:
        return self.skill == self.skill_prime

    @property
    def discriminates(self) -> bool:
        return self.same_skill and self.payoff != self.payoff_prime


@dataclass(frozen=True)
class BlackwellCheck:
    pi: str
    pi_prime: str
    forward: bool  # pi more informative than pi_prime
    backward: bool


@dataclass(frozen=True)
class QueryResult:
    action_set: str
    query: tuple[Fraction, ...]
    envelope: PersuasionSolution | None
    dominating: DominatingResult
    duality: bool | None


@dataclass(frozen=True)
class AuditReport:
    instance: ProblemInstance
    seed: int
    identified: bool
    dependence: tuple[Fraction, ...] | None
    extreme_points: tuple[int, ...]
    witness: DiscriminationWitness | None
    fair_valuations: dict[str, FairValuation | None]
    affinity: dict[str, Affine | NotAffine]
    pairs: tuple[PairCheck, ...]
    blackwell: tuple[BlackwellCheck, ...]
    persuasion: tuple[QueryResult, ...] | None
    corroboration: Verdicts

    def to_dict(self) -> dict:
        return _report_dict(self)

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"

    def to_text(self) -> str:
        return render_text(self)


def run_audit(inst: ProblemInstance, seed: int = 0) -> AuditReport:
    T = inst.signals
    dep = affine_dependence([t.probs for t in T])
    E = extreme_points(T)
    witness = find_discrimination_witness(T)

    fair = {name: fair_valuation(T, A) for name, A in inst.action_sets.items()}
    affinity = {name: is_affine_persuasion_value(T, A, E) for name, A in inst.action_sets.items()}

    pairs = []
    for aname, A in inst.action_sets.items():
        for p1, p2 in combinations(inst.info_structures, 2):
            pi, pp = inst.info_structures[p1], inst.info_structures[p2]
            sk, skp = induced_skill(T, pi).probs, induced_skill(T, pp).probs
            shift = shifted = None
            if sk != skp:
                shift = wage_shift(T, A, pi, pp)
                shifted = shifted_payoffs(T, A, shift, pi, pp)
            pairs.append(PairCheck(aname, p1, p2, sk, skp,
                                   expected_payoff(T, A, pi), expected_payoff(T, A, pp), shift, shifted))

    blackwell = tuple(
        BlackwellCheck(p1, p2,
                       blackwell_more_informative(T, inst.info_structures[p1], inst.info_structures[p2]),
                       blackwell_more_informative(T, inst.info_structures[p2], inst.info_structures[p1]))
        for p1, p2 in combinations(inst.info_structures, 2)
    )

    persuasion = None
    if inst.queries:
        results = []
        for aname, A in inst.action_sets.items():
            for query in inst.queries:
                env = concavify(T, A, query)
                dom = dominating_lp(T, A, query)
                if isinstance(env, PersuasionSolution):
                    results.append(QueryResult(aname, query, env, dom,
                                               dom.status is Status.OPTIMAL and dom.value == env.value))
                else:
                    results.append(QueryResult(aname, query, None, dom, None))
        persuasion = tuple(results)

    report = AuditReport(
        instance=inst,
        seed=seed,
        identified=not isinstance(dep, Dependence),
        dependence=dep.coefficients if isinstance(dep, Dependence) else None,
        extreme_points=tuple(E),
        witness=witness,
        fair_valuations=fair,
        affinity=affinity,
        pairs=tuple(pairs),
        blackwell=blackwell,
        persuasion=persuasion,
        corroboration=equivalence_verdicts(T, random.Random(seed)),
    )
    self_check(report)
    return report


def self_check(r: AuditReport) -> None:
    """Cross-check the report's independent computations; raise on any conflict."""
    T = r.instance.signals
    problems = []
    if r.identified != (r.witness is None):
        problems.append("identification and witness search disagree")
    if r.witness is not None and not r.witness.is_valid(T):
        problems.append("witness fails its own invariants")
    if not r.corroboration.consistent:
        problems.append(f"sampled verdicts disagree: {r.corroboration}")
    if r.corroboration.identified != r.identified:
        problems.append("corroboration recomputed identification differently")
    for name, fv in r.fair_valuations.items():
        if r.identified and fv is None:
            problems.append(f"identified set but no fair valuation for {name}")
        if fv is not None and not isinstance(r.affinity[name], Affine):
            problems.append(f"fair valuation exists for {name} but the envelope is not linear")
        if r.identified and not isinstance(r.affinity[name], Affine):
            problems.append(f"identified set but non-linear envelope for {name}")
    for p in r.pairs:
        if r.identified and p.discriminates:
            problems.append(f"identified set but {p.pi} and {p.pi_prime} are paid differently")
        if p.shifted is not None and p.shifted[0] == p.shifted[1]:
            problems.append(f"wage shift failed to separate {p.pi} and {p.pi_prime}")
    for b in r.blackwell:
        for p in r.pairs:
            if (p.pi, p.pi_prime) != (b.pi, b.pi_prime):
                continue
            if b.forward and p.payoff < p.payoff_prime:
                problems.append(f"{b.pi} is more informative yet pays less under {p.action_set}")
            if b.backward and p.payoff_prime < p.payoff:
                problems.append(f"{b.pi_prime} is more informative yet pays less under {p.action_set}")
    for res in r.persuasion or ():
        if res.duality is False:
            problems.append(f"envelope and dominating LP disagree at {res.query}")
    if problems:
        raise InvariantViolation("audit self-check failed: " + "; ".join(problems))


# ---------------------------------------------------------------------------
# rendering
# ---------------------------------------------------------------------------


def q(x: Fraction) -> str:
    return str(x)


def qv(v) -> list[str]:
    return [str(x) for x in v]


def tv(v) -> str:
    return "(" + ", ".join(str(x) for x in v) + ")"


def named_weights(T: SignalSet, pi: InfoStructure) -> dict[str, str]:
    return {T.names[i]: q(w) for i, w in enumerate(pi.weights) if w}


def mix_text(T: SignalSet, pi: InfoStructure) -> str:
    return " + ".join(f"{w}*{T.names[i]}" for i, w in enumerate(pi.weights) if w)


def affinity_dict(T: SignalSet, a) -> dict:
    if isinstance(a, Affine):
        return {"verdict": "affine", "alpha": qv(a.alpha)}
    return {
        "verdict": "not_affine",
        "point": qv(a.point),
        "mixture": {T.names[i]: q(w) for i, w in a.mixture},
        "mixture_value": q(a.mixture_value),
        "envelope_value": q(a.envelope_value),
    }


def _report_dict(r: AuditReport) -> dict:
    inst, T = r.instance, r.instance.signals
    out: dict = {
        "states": list(inst.states.labels),
        "signals": {name: qv(t) for name, t in zip(T.names, T)},
        "identified": r.identified,
        "affine_dependence": None if r.dependence is None else dict(zip(T.names, qv(r.dependence))),
        "extreme_points": [T.names[i] for i in r.extreme_points],
        "witness": None,
        "info_structure_pairs": [],
        "fair_valuations": {
            name: None if fv is None else qv(fv.alpha) for name, fv in r.fair_valuations.items()
        },
        "affinity": {name: affinity_dict(T, a) for name, a in r.affinity.items()},
        "blackwell": [
            {"pi": b.pi, "pi_prime": b.pi_prime,
             "pi_more_informative": b.forward, "pi_prime_more_informative": b.backward}
            for b in r.blackwell
        ],
    }
    if r.witness is not None:
        w = r.witness
        out["witness"] = {
            "pi": named_weights(T, w.pi),
            "pi_prime": named_weights(T, w.pi_prime),
            "actions": [qv(a) for a in w.action_set],
            "induced_skill": qv(induced_skill(T, w.pi)),
            "payoff": q(w.payoff),
            "payoff_prime": q(w.payoff_prime),
        }
    for p in r.pairs:
        d = {
            "action_set": p.action_set, "pi": p.pi, "pi_prime": p.pi_prime,
            "induced_skill": qv(p.skill), "induced_skill_prime": qv(p.skill_prime),
            "payoff": q(p.payoff), "payoff_prime": q(p.payoff_prime),
            "same_skill": p.same_skill, "discriminates": p.discriminates,
        }
        if p.shift is not None:
            d["wage_shift"] = {"k": qv(p.shift), "payoff": q(p.shifted[0]), "payoff_prime": q(p.shifted[1])}
        out["info_structure_pairs"].append(d)
    if r.persuasion is not None:
        rows = []
        for res in r.persuasion:
            d = {"action_set": res.action_set, "query": qv(res.query)}
            if res.envelope is None:
                d["envelope"] = "outside"
            else:
                d["envelope"] = q(res.envelope.value)
                d["optimal_pi"] = named_weights(T, res.envelope.optimal_pi)
                d["dominating_value"] = q(res.dominating.value)
                d["dominating_y"] = qv(res.dominating.y)
                d["duality_holds"] = res.duality
            rows.append(d)
        out["persuasion"] = rows
    c = r.corroboration
    out["corroboration"] = {
        "seed": r.seed,
        "binary_menus": c.n_binary,
        "larger_menus": c.n_larger,
        "identified": c.identified,
        "no_witness": c.no_witness,
        "binary_fair_valuations": c.binary_fair,
        "larger_fair_valuations": c.larger_fair,
        "affine_envelopes": c.affine_envelopes,
        "consistent": c.consistent,
    }
    return out


def render_text(r: AuditReport) -> str:
    inst, T = r.instance, r.instance.signals
    L = []
    L.append(f"states: {', '.join(inst.states.labels)}")
    L.append("signals:")
    for name, t in zip(T.names, T):
        mark = "" if T.names.index(name) in r.extreme_points else "  (not extreme)"
        L.append(f"  {name} = {tv(t)}{mark}")
    L.append("")
    L.append(f"identified: {'yes' if r.identified else 'no'}")
    if r.dependence is not None:
        L.append("  affine dependence: " + ", ".join(f"{n}: {x}" for n, x in zip(T.names, r.dependence)))
    if r.witness is None:
        L.append("discrimination witness: none (non-discriminatory)")
    else:
        w = r.witness
        L.append("discrimination witness:")
        L.append(f"  pi  = {mix_text(T, w.pi)}")
        L.append(f"  pi' = {mix_text(T, w.pi_prime)}")
        L.append(f"  menu = {{{', '.join(tv(a) for a in w.action_set)}}}")
        L.append(f"  common induced skill {tv(induced_skill(T, w.pi))}; payoffs {w.payoff} vs {w.payoff_prime}")
    L.append("")
    L.append("information structure pairs:")
    if not r.pairs:
        L.append("  (none)")
    for p in r.pairs:
        L.append(f"  [{p.action_set}] {p.pi} vs {p.pi_prime}: skills {tv(p.skill)} / {tv(p.skill_prime)}; "
                 f"payoffs {p.payoff} vs {p.payoff_prime}")
        if p.discriminates:
            L.append("    same skills, different pay: discrimination")
        if p.shift is not None:
            L.append(f"    wage shift k = {tv(p.shift)} -> payoffs {p.shifted[0]} vs {p.shifted[1]}")
    for b in r.blackwell:
        rel = ("equivalent" if b.forward and b.backward else
               f"{b.pi} more informative" if b.forward else
               f"{b.pi_prime} more informative" if b.backward else "not comparable")
        L.append(f"  Blackwell {b.pi} vs {b.pi_prime}: {rel}")
    L.append("")
    L.append("fair valuations:")
    for name, fv in r.fair_valuations.items():
        L.append(f"  {name}: " + ("none" if fv is None else tv(fv.alpha)))
    L.append("persuasion envelope linearity:")
    for name, a in r.affinity.items():
        if isinstance(a, Affine):
            L.append(f"  {name}: affine, W(s) = {tv(a.alpha)} . s")
        else:
            mix = " + ".join(f"{w}*{T.names[i]}" for i, w in a.mixture)
            L.append(f"  {name}: not affine at s = {tv(a.point)}: mixture {mix} earns "
                     f"{a.mixture_value} < {a.envelope_value} = W(s)")
    if r.persuasion is not None:
        L.append("")
        L.append("persuasion queries:")
        for res in r.persuasion:
            if res.envelope is None:
                L.append(f"  [{res.action_set}] W{tv(res.query)}: outside the hull")
                continue
            L.append(f"  [{res.action_set}] W{tv(res.query)} = {res.envelope.value} "
                     f"via {mix_text(T, res.envelope.optimal_pi)}; dominating LP {res.dominating.value} "
                     f"({'equal' if res.duality else 'MISMATCH'})")
    c = r.corroboration
    L.append("")
    L.append(f"corroboration (seed {r.seed}, {c.n_binary} binary and {c.n_larger} larger menus): "
             f"identified={c.identified} no_witness={c.no_witness} binary_fair={c.binary_fair} "
             f"larger_fair={c.larger_fair} affine_envelopes={c.affine_envelopes} -> "
             + ("consistent" if c.consistent else "INCONSISTENT"))
    return "\n".join(L) + "\n"
