import json

import pytest

import _torcor as t

CIRCLE = '{"A": 3, "B": 2}'
DOUBLING = '{"m":1,"M":[["2"]],"Delta":{"m":1,"rank":1,"basis":[["1"]]}}'


def circle():
    return t.Correspondence.from_json(CIRCLE)


def test_parse_normalizes_the_relation_form():
    p = circle()
    doc = json.loads(p.to_json())
    assert doc["m"] == 1
    assert doc["M"] == [["3/2"]]
    assert doc["Delta"]["basis"] == [["1/2"]]
    rel = json.loads(p.relation_json())
    assert rel["A"] == [["3"]] and rel["B"] == [["2"]]


def test_algebra_round_trips():
    p = circle()
    assert p.compose(p) == p.power(2)
    assert p.adjoint().adjoint() == p
    assert t.Correspondence.from_json(p.to_json()) == p
    assert p.kernel_orders() == ("3", "2")
    assert p.morphism() == "ProperPolymorphism"


def test_classification_surface():
    doc = json.loads(t.classify_json(circle()))
    assert doc["ergodic"] is True
    assert doc["totally_nondet"] is True
    assert doc["spectrum"]["V"] == "PointZeroOnly"
    spectrum = json.loads(t.spectrum_json(t.Correspondence.from_json(DOUBLING)))
    assert spectrum == {"V": "FullUnitDisk", "V_star": "FullUnitDisk"}
    assert t.is_ergodic(circle()) is True


def test_factor_by_subgroup():
    fib = t.Correspondence.from_json(
        '{"m":2,"M":[["1","1"],["1","0"]],'
        '"Delta":{"m":2,"rank":2,"basis":[["1","0"],["0","1"]]}}'
    )
    factored = fib.factor_by('{"m":2,"rank":2,"basis":[["1/2","0"],["0","1"]]}')
    rel = json.loads(factored.relation_json())
    assert rel["A"] == [["1", "2"], ["1", "0"]]
    assert rel["B"] == [["1", "0"], ["0", "2"]]
    assert factored.morphism() == "ProperPolymorphism"


def test_markov_surface():
    d = t.Correspondence.from_json(DOUBLING)
    orbit = json.loads(t.orbit_json(d, [2], kmax=3))
    assert orbit["forward"] == [["1"]]
    assert orbit["forward_death"] == 2
    assert orbit["backward"] == [["4"], ["8"], ["16"]]

    dist = json.loads(t.stepdist_json(circle(), ["1/3"]))
    assert dist["atoms"] == [["0"], ["1/2"]]
    assert dist["mass"] == "1/2"

    a = json.loads(t.sample_json(circle(), ["0"], 5, 42))
    b = json.loads(t.sample_json(circle(), ["0"], 5, 42))
    c = json.loads(t.sample_json(circle(), ["0"], 5, 43))
    assert a == b
    assert a != c
    assert len(a) == 6

    op = json.loads(t.operator_json(d, 1))
    assert op["entries"] == [{"row": 1, "col": 1, "value": "1"}]
    assert op["killed"] == [0, 2]


def test_oracle_surface():
    doc = json.loads(t.oracle_json(3, 2))
    assert doc["pass"] is True
    assert len(doc["cases"]) == 2
    assert {c["name"] for c in doc["cases"][0]["checks"]} >= {
        "compose_annihilator",
        "adjoint_annihilator",
        "kernel_duality",
    }
    assert t.oracle_pass(1, 5) is True


def test_error_translation():
    with pytest.raises(ValueError):
        t.Correspondence.from_json("{not json")
    with pytest.raises(ValueError):
        t.Correspondence.from_json(
            '{"m":1,"M":[["0"]],"Delta":{"m":1,"rank":1,"basis":[["1"]]}}'
        )
    with pytest.raises(ValueError):
        circle().power(0)
