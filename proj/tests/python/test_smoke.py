import pytest

import pencilform

PAIR = {"p": 3, "m": 2, "mats": [[[0, 1], [2, 0]], [[0, 0], [0, 0]]]}


def test_canon_round_trip():
    out = pencilform.canon(PAIR)
    assert out["version"] == 1
    assert len(out["rho"]) == 1
    assert out["rho"][0]["kind"] == "point"
    assert len(out["transform"]["rows"]) == 2


def test_invariants_and_counts():
    rho = pencilform.invariants(3, [[[0, 0], [0, 0]], [[0, 0], [0, 0]]])
    assert rho == [{"kind": "eps", "d": 1, "mult": 2}]
    assert [pencilform.count_classes(3, m) for m in range(1, 7)] == [1, 2, 3, 7, 9, 18]
    assert pencilform.classes(5, 3)["count"] == 3


def test_isomorphism():
    swapped = [[[0, 0], [0, 0]], [[0, 2], [1, 0]]]
    assert pencilform.is_isomorphic(3, PAIR["mats"], swapped)
    assert not pencilform.is_isomorphic(3, PAIR["mats"], [[[0, 0], [0, 0]], [[0, 0], [0, 0]]])
    out = pencilform.iso(PAIR, {"p": 3, "m": 2, "mats": swapped})
    assert out["certificate"]["homomorphism_check"]["pass"] is True


def test_presentation_and_verify():
    req = {"p": 5, "rho": [{"kind": "point", "g": "x1+3*x2", "d": 1}]}
    out = pencilform.present(req)
    assert out["text"].endswith("rel [h1_1, h1_2] = 1*a1 + 2*a2\n")
    assert pencilform.verify(req)["report"]["pass"] is True


def test_cocycle():
    out = pencilform.cocycle({"p": 3, "m": 2, "mats": [[[0, 1], [2, 0]]]})
    assert out["is_cocycle"] and out["is_normalized"]
    assert out["tau"]["mats"][0]["rows"] == [[0, 1], [2, 0]]


def test_errors():
    with pytest.raises(pencilform.UnsupportedCharacteristic):
        pencilform.canon({"p": 2, "m": 2, "mats": [[[0, 1], [1, 0]], [[0, 0], [0, 0]]]})
    with pytest.raises(pencilform.ValidationError):
        pencilform.canon({"p": 3, "m": 2, "mats": [[[0, 1], [1, 0]], [[0, 0], [0, 0]]]})
    with pytest.raises(pencilform.ResourceGuardError):
        pencilform.classes(3, 60)
