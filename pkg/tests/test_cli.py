import json
import random
import subprocess
import sys
from fractions import Fraction as F

import pytest

from generators import random_info, random_instance
from phelps_audit import cli
from phelps_audit.errors import InputError, InvariantViolation
from phelps_audit.instance import ProblemInstance, load_instance, parse_instance, parse_vector
from phelps_audit.model import ActionSet, StateSpace
from phelps_audit.probes import random_action
from phelps_audit.report import run_audit

MINIMAL = {
    "states": ["a", "b"],
    "signals": {"lo": ["1", "0"], "hi": ["0", "1"], "mid": ["1/2", "1/2"]},
    "actions": {"A": [["1", "0"], ["0", "1"]]},
}


def doc(**changes):
    d = json.loads(json.dumps(MINIMAL))
    d.update(changes)
    return json.dumps(d)


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_bundled_instance():
    inst = load_instance("bundled:phelps")
    assert inst.signals.names == ("t1", "t2", "t3", "t4")
    assert inst.signals[2].probs == (0, F(1, 2), F(1, 2))
    name, A = inst.action_set(None)
    assert name == "A" and A[1].payoffs == (0, F(1, 2), 3)
    assert inst.info("pi").weights == (F(1, 3), 0, F(2, 3), 0)


def test_parse_minimal():
    inst = parse_instance(doc())
    assert inst.queries == () and inst.info_structures == {}
    assert [list(a) for a in inst.action_sets["A"]] == [[1, 0], [0, 1]]


@pytest.mark.parametrize("text, fragment", [
    (doc(signals={"lo": [0.5, 0.5]}), "decimal literals not accepted; use p/q"),
    (doc(signals={"lo": ["0.5", "1/2"]}), "decimal literals not accepted; use p/q"),
    (doc(signals={"lo": ["1/2", "1/3"]}), "signals.lo"),
    (doc(signals={"lo": ["1", "0", "0"]}), "signals.lo: expected 2 entries"),
    (doc(signals={"x": ["1", "0"], "y": ["1", "0"]}), "identical"),
    (doc(actions={"A": [["1", "x"]]}), "actions.A[0][1]"),
    (doc(actions={"A": []}), "actions.A"),
    (doc(info_structures={"p": {"nope": "1"}}), "unknown signal 'nope'"),
    (doc(info_structures={"p": {"lo": "1/2"}}), "info_structures.p"),
    (doc(queries=[["1", "1"]]), "queries[0]"),
    ('{"states": ["a"],', "line 1 column"),
    ("[]", "JSON object"),
    (json.dumps({"states": ["a"]}), "missing field 'signals'"),
])
def test_diagnostics(text, fragment):
    with pytest.raises(InputError) as info:
        parse_instance(text)
    assert fragment in str(info.value)


def test_parse_vector():
    assert parse_vector("1/3, 1/3,1/3", 3) == (F(1, 3),) * 3
    with pytest.raises(InputError):
        parse_vector("1,0", 3)
    with pytest.raises(InputError, match="decimal"):
        parse_vector("0.5,0.5", 2)


def test_unknown_names():
    inst = load_instance("bundled:phelps")
    with pytest.raises(InputError):
        inst.action_set("B")
    with pytest.raises(InputError):
        inst.info("nobody")
    with pytest.raises(InputError):
        load_instance("bundled:missing")
    with pytest.raises(InputError):
        load_instance("/nonexistent/instance.json")


def test_audit_report_contents():
    r = run_audit(load_instance("bundled:phelps"))
    d = r.to_dict()
    assert d["identified"] is False
    assert d["fair_valuations"] == {"A": None}
    pair = d["info_structure_pairs"][0]
    assert (pair["payoff"], pair["payoff_prime"]) == ("3/2", "4/3")
    assert pair["same_skill"] and pair["discriminates"]
    assert d["affinity"]["A"]["verdict"] == "not_affine"
    assert d["persuasion"][0]["envelope"] == "3/2"
    assert d["corroboration"]["consistent"] is True
    assert d["corroboration"]["binary_menus"] >= 20


def test_no_queries_no_persuasion_section(tmp_path):
    r = run_audit(parse_instance(doc()))
    assert "persuasion" not in r.to_dict()
    assert r.to_dict()["identified"] is False


def test_identity_instance_wage_shift():
    d = run_audit(load_instance("bundled:identity")).to_dict()
    assert d["identified"] is True and d["witness"] is None
    assert d["fair_valuations"]["A"] == ["1", "1/2", "3"]
    shifts = [p["wage_shift"] for p in d["info_structure_pairs"] if "wage_shift" in p]
    assert shifts and all(s["payoff"] != s["payoff_prime"] for s in shifts)


def test_audit_deterministic(capsys):
    outs = [run(capsys, "audit", "bundled:phelps")[1] for _ in range(2)]
    assert outs[0] == outs[1]
    assert "3/2" in outs[0] and "4/3" in outs[0]
    j = [run(capsys, "audit", "bundled:phelps", "--json")[1] for _ in range(2)]
    assert j[0] == j[1]
    json.loads(j[0])


def test_witness_command(capsys):
    code, out, _ = run(capsys, "witness", "bundled:phelps", "--json")
    assert code == 0
    w = json.loads(out)["witness"]
    assert w["payoff"] != w["payoff_prime"]
    code, out, _ = run(capsys, "witness", "bundled:identity")
    assert code == 0 and "identified" in out


def test_fairval_command(capsys):
    code, out, _ = run(capsys, "fairval", "bundled:identity")
    assert code == 0 and out == "A: alpha = (1, 1/2, 3)\n"
    code, out, _ = run(capsys, "fairval", "bundled:phelps", "--actions", "A")
    assert out == "A: no fair valuation\n"


def test_concavify_command(capsys):
    code, out, _ = run(capsys, "concavify", "bundled:phelps", "--query", "1/2,1/2,0", "--query", "0,0,1", "--json")
    assert code == 0
    rows = json.loads(out)["queries"]
    assert [r["envelope"] for r in rows] == ["1/2", "3"]
    assert all(r["duality_holds"] for r in rows)


def test_envelope_csv(capsys, tmp_path):
    code, out, _ = run(capsys, "concavify", "bundled:phelps", "--envelope-csv", "-",
                       "--from", "1,0,0", "--to", "0,0,1", "--steps", "4")
    assert code == 0
    assert out == "t,W\n0,1\n1/4,3/2\n1/2,2\n3/4,5/2\n1,3\n"
    path = tmp_path / "env.csv"
    code, _, _ = run(capsys, "concavify", "bundled:phelps", "--envelope-csv", str(path),
                     "--from", "1,0,0", "--to", "0,0,1", "--steps", "4")
    assert code == 0 and path.read_text() == out


def test_wage_shift_and_compare(capsys):
    code, out, _ = run(capsys, "wage-shift", "bundled:identity", "--pi", "uniform", "--pi-prime", "corner")
    assert code == 0
    assert out == "k = (11/2, 0, 0)\npayoffs 3/2 vs 3 -> shifted 10/3 vs 3\n"
    code, out, _ = run(capsys, "compare-info", "bundled:phelps", "--pi", "pi", "--pi-prime", "pi_prime", "--json")
    d = json.loads(out)
    assert code == 0 and not d["pi_more_informative"] and not d["pi_prime_more_informative"]


@pytest.mark.parametrize("argv", [
    ["wage-shift", "bundled:phelps", "--pi", "pi", "--pi-prime", "pi_prime"],
    ["concavify", "bundled:phelps", "--query", "0.5,0.5,0"],
    ["concavify", "bundled:phelps", "--envelope-csv", "-", "--from", "0,1,0", "--to", "0,0,1"],
    ["audit", "bundled:nothing"],
])
def test_input_errors_exit_1(capsys, argv):
    code, out, err = run(capsys, *argv)
    assert code == 1 and out == "" and err.startswith("error: ")


def test_invariant_violation_exit_2(capsys, monkeypatch):
    def broken(*a, **k):
        raise InvariantViolation("forced")
    monkeypatch.setattr(cli, "run_audit", broken)
    code, _, err = run(capsys, "audit", "bundled:phelps")
    assert code == 2 and "forced" in err


def test_module_entry_point(tmp_path):
    path = tmp_path / "inst.json"
    path.write_text(doc(queries=[["1/2", "1/2"]]))
    proc = subprocess.run([sys.executable, "-m", "phelps_audit", "audit", str(path)],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0, proc.stderr
    assert "mid" in proc.stdout


def test_self_check_on_random_instances():
    rng = random.Random(31)
    for _ in range(25):
        T = random_instance(rng)
        inst = ProblemInstance(
            StateSpace(tuple(f"s{i}" for i in range(T.dim))),
            T,
            {"A": ActionSet(tuple(random_action(rng, T.dim) for _ in range(3)))},
            {"p": random_info(rng, len(T)), "q": random_info(rng, len(T))},
            (T[0].probs,),
        )
        a, b = run_audit(inst, seed=2), run_audit(inst, seed=2)
        assert a.to_json() == b.to_json()
        assert a.corroboration.consistent
