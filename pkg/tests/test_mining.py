from __future__ import annotations

import json

from posettop import Poset, builtin
from posettop.mining import mine, mismatched_degrees, shrink, trial_seed


def test_sphere_model_is_not_a_mismatch():
    # both homologies of the sphere model are Z, 0, Z
    report = mine(4, 5, 0.4, seed=3, plant={1: builtin("sphere6")})
    assert report.findings == []
    assert mismatched_degrees(builtin("sphere6"), 2) == []


def test_dense_posets_are_chains():
    report = mine(10, 6, 1.0, seed=0)
    assert report.findings == [] and report.skipped == []


def test_deterministic_and_thread_independent():
    a = mine(12, 6, 0.35, seed=5)
    b = mine(12, 6, 0.35, seed=5, threads=4)
    assert json.dumps(a.to_dict()) == json.dumps(b.to_dict())
    assert trial_seed(5, 0) == trial_seed(5, 0) != trial_seed(5, 1)


def test_cap_exceeded_trials_are_skipped():
    report = mine(3, 7, 0.5, seed=1, cap=5)
    assert report.skipped == [0, 1, 2]
    assert report.to_dict()["skipped"] == 3


def test_shrink_keeps_posets_without_mismatch():
    P = builtin("circle4")
    assert shrink(P, 1) == P


def test_report_text():
    text = mine(2, 4, 0.5, seed=0).to_text()
    assert text.splitlines()[1] == "findings 0  skipped (cap) 0"


def test_finding_serialization_shape():
    report = mine(1, 3, 0.5, seed=0, plant={0: Poset.from_relations("ab", [("a", "b")])})
    d = report.to_dict()
    assert d["schema"] == 1 and d["findings"] == []
