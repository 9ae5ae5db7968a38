"""JSON problem instances.

Schema::

    {
      "states": ["theta1", "theta2", ...],
      "signals": {"name": ["p/q", ...], ...},
      "actions": {"A": [["p/q", ...], ...], ...},      # or {"A": {"a1": [...], ...}}
      "info_structures": {"pi": {"signal name": "p/q", ...}, ...},
      "queries": [["p/q", ...], ...]                    # optional
    }

Numbers are JSON integers or strings ``"n"`` / ``"p/q"``.  Decimal
literals are refused so every value stays exact.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from decimal import Decimal
from fractions import Fraction
from importlib import resources
from pathlib import Path

from .errors import InputError
from .exact_lp import rational
from .model import Action, ActionSet, InfoStructure, Signal, SignalSet, StateSpace

BUNDLED_PREFIX = "bundled:"


@dataclass(frozen=True)
class ProblemInstance:
    states: StateSpace
    signals: SignalSet
    action_sets: dict[str, ActionSet]
    info_structures: dict[str, InfoStructure]
    queries: tuple[tuple[Fraction, ...], ...] = field(default=())

    def action_set(self, name: str | None) -> tuple[str, ActionSet]:
        if name is None:
            if len(self.action_sets) != 1:
                raise InputError("instance has several action sets; pick one with --actions")
            name = next(iter(self.action_sets))
        if name not in self.action_sets:
            raise InputError(f"unknown action set {name!r}")
        return name, self.action_sets[name]

    def info(self, name: str) -> InfoStructure:
        if name not in self.info_structures:
            raise InputError(f"unknown information structure {name!r}")
        return self.info_structures[name]


def _num(x, where: str) -> Fraction:
    if isinstance(x, (Decimal, float)):
        raise InputError(f"{where}: decimal literals not accepted; use p/q (got {x})")
    if not isinstance(x, (int, str)) or isinstance(x, bool):
        raise InputError(f"{where}: expected an integer or a \"p/q\" string, got {x!r}")
    try:
        return rational(x)
    except InputError as exc:
        raise InputError(f"{where}: {exc}") from None


def _vec(xs, n: int, where: str) -> tuple[Fraction, ...]:
    if not isinstance(xs, list):
        raise InputError(f"{where}: expected a list of {n} numbers")
    if len(xs) != n:
        raise InputError(f"{where}: expected {n} entries (one per state), got {len(xs)}")
    return tuple(_num(x, f"{where}[{i}]") for i, x in enumerate(xs))


def _obj(doc, key: str, kind=dict):
    if key not in doc:
        raise InputError(f"missing field {key!r}")
    val = doc[key]
    if not isinstance(val, kind):
        raise InputError(f"{key}: expected a JSON {'object' if kind is dict else 'array'}")
    return val


def parse_instance(text: bytes | str) -> ProblemInstance:
    if isinstance(text, bytes):
        try:
            text = text.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise InputError(f"instance is not UTF-8: {exc}") from None
    try:
        doc = json.loads(text, parse_float=Decimal)
    except json.JSONDecodeError as exc:
        raise InputError(f"line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    if not isinstance(doc, dict):
        raise InputError("instance must be a JSON object")

    labels = _obj(doc, "states", list)
    if not all(isinstance(x, str) for x in labels):
        raise InputError("states: expected a list of strings")
    states = StateSpace(tuple(labels))
    n = len(states)

    raw_signals = _obj(doc, "signals")
    sig_names, sigs = [], []
    for name, vec in raw_signals.items():
        where = f"signals.{name}"
        try:
            sigs.append(Signal(_vec(vec, n, where)))
        except InputError as exc:
            msg = str(exc)
            raise InputError(msg if msg.startswith(where) else f"{where}: {msg}") from None
        sig_names.append(name)
    signals = SignalSet(tuple(sigs), tuple(sig_names))

    action_sets = {}
    for name, acts in _obj(doc, "actions").items():
        where = f"actions.{name}"
        if isinstance(acts, dict):
            items = list(acts.items())
        elif isinstance(acts, list):
            items = [(str(i), a) for i, a in enumerate(acts)]
        else:
            raise InputError(f"{where}: expected a list of payoff vectors")
        if not items:
            raise InputError(f"{where}: an action set needs at least one action")
        action_sets[name] = ActionSet(tuple(Action(_vec(a, n, f"{where}[{k}]")) for k, a in items))

    infos = {}
    index = {nm: i for i, nm in enumerate(sig_names)}
    for name, weights in doc.get("info_structures", {}).items():
        where = f"info_structures.{name}"
        if not isinstance(weights, dict):
            raise InputError(f"{where}: expected an object mapping signal names to weights")
        w = [Fraction(0)] * len(signals)
        for sname, x in weights.items():
            if sname not in index:
                raise InputError(f"{where}: unknown signal {sname!r}")
            w[index[sname]] = _num(x, f"{where}.{sname}")
        try:
            infos[name] = InfoStructure(tuple(w))
        except InputError as exc:
            raise InputError(f"{where}: {exc}") from None

    queries = []
    raw_q = doc.get("queries", [])
    if not isinstance(raw_q, list):
        raise InputError("queries: expected a list of vectors")
    for i, q in enumerate(raw_q):
        where = f"queries[{i}]"
        try:
            queries.append(Signal(_vec(q, n, where)).probs)
        except InputError as exc:
            msg = str(exc)
            raise InputError(msg if msg.startswith(where) else f"{where}: {msg}") from None

    return ProblemInstance(states, signals, action_sets, infos, tuple(queries))


def load_instance(source: str) -> ProblemInstance:
    """Read an instance from a path, or ``bundled:<name>`` for a shipped fixture."""
    if source.startswith(BUNDLED_PREFIX):
        name = source[len(BUNDLED_PREFIX):]
        try:
            data = resources.files("phelps_audit").joinpath("data", f"{name}.json").read_bytes()
        except FileNotFoundError:
            raise InputError(f"no bundled instance named {name!r}") from None
        return parse_instance(data)
    try:
        return parse_instance(Path(source).read_bytes())
    except OSError as exc:
        raise InputError(f"cannot read {source}: {exc.strerror}") from None


def parse_vector(text: str, n: int, where: str = "vector") -> tuple[Fraction, ...]:
    """Comma-separated rationals from the command line."""
    parts = [p for p in text.replace(" ", "").split(",") if p != ""]
    if len(parts) != n:
        raise InputError(f"{where}: expected {n} comma-separated entries, got {len(parts)}")
    return tuple(_num(p, f"{where}[{i}]") for i, p in enumerate(parts))
