import json
import os
import subprocess

import pytest

import cy3

FORMS_A = {"rank": 2, "mode": "normal_form", "trilinear": {"111": 0, "112": "1/3", "122": "1/3", "222": 0}, "c2": [6, 6]}
FORMS_B = {"rank": 2, "mode": "normal_form", "trilinear": {"111": 0, "112": "1/3", "122": 0, "222": 0}, "c2": [2, 0]}


def test_classify():
    j = cy3.classify(FORMS_A)
    assert j["case"] == "three_distinct_real"
    assert len(j["components"]) == 3
    assert cy3.classify(json.dumps(FORMS_B))["case"] == "double_root"


def test_pairs():
    pairs = [(p["e_cubed"], p["c2_e"]) for p in cy3.enumerate_pairs(-2)]
    assert pairs == [(9, -6), (8, -4), (7, -2), (1, -2)]


def test_flop_round_trip():
    s = cy3.apply_flop(FORMS_A, [1, -1], {1: 1})
    assert s["c2"] == [8, 4]
    assert s["trilinear"]["111"] == "-1"


def test_analyze_is_deterministic():
    a = cy3.analyze(FORMS_B, mu0="1/2")
    assert a == cy3.analyze(FORMS_B, mu0="1/2")
    assert len(a["per_component"]) == 2
    assert all(len(c["scenarios"]) == 4 for c in a["per_component"])


def test_errors():
    bad = dict(FORMS_A, trilinear={"111": "1/0", "112": 0, "122": 0, "222": 0})
    with pytest.raises(cy3.DomainError, match="parse"):
        cy3.classify(bad)
    with pytest.raises(ValueError):
        cy3.apply_flop(FORMS_A, [2, 2], {1: 1})


def test_effectivity():
    assert cy3.min_effectivity(FORMS_A, (1, 1))["m"] == 2


def test_cli_in_process():
    code, out, _ = cy3.run_cli(["classify"], json.dumps(FORMS_A))
    assert code == 0 and json.loads(out)["label"] == "a"
    assert cy3.run_cli([])[0] == 2


@pytest.mark.skipif("CY3_CLI" not in os.environ, reason="CLI binary path not given")
def test_cli_binary():
    p = subprocess.run([os.environ["CY3_CLI"], "rr", "--class", "1,1"], input=json.dumps(FORMS_A),
                       capture_output=True, text=True)
    assert p.returncode == 0
    assert json.loads(p.stdout)["m"] == 2
    p = subprocess.run([os.environ["CY3_CLI"], "classify"], input="{", capture_output=True, text=True)
    assert p.returncode == 1
    assert json.loads(p.stderr)["error"]["code"] == "parse"
