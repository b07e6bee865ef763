import json

import numpy as np
import pytest
from hypothesis import given

from beliefkit import MassSumViolation, to_alpha, to_family
from beliefkit.io import (
    dumps,
    load_mass,
    mass_from_dict,
    mass_to_dict,
    save_mass,
    setfunction_from_dict,
    setfunction_to_dict,
)
from conftest import masses


def test_documented_layout(worked_conj):
    d = mass_to_dict(worked_conj[0])
    assert d == {
        "frame": ["a", "b", "c"],
        "focal": [{"elements": ["a", "b"], "mass": 0.5}, {"elements": ["a", "b", "c"], "mass": 0.5}],
    }


def test_empty_set_is_an_empty_list():
    m = mass_from_dict({"frame": ["a"], "focal": [{"elements": [], "mass": 1.0}]})
    assert m[0] == 1.0
    assert mass_to_dict(m)["focal"] == [{"elements": [], "mass": 1.0}]


@given(masses(n_max=6))
def test_text_roundtrip_is_bit_exact(m):
    back = mass_from_dict(json.loads(dumps(mass_to_dict(m))))
    assert np.array_equal(back.values, m.values)


def test_renormalize_window():
    doc = {"frame": ["a", "b"], "focal": [{"elements": ["a"], "mass": 0.5}, {"elements": ["b"], "mass": 0.4995}]}
    with pytest.raises(MassSumViolation):
        mass_from_dict(doc)
    m = mass_from_dict(doc, renormalize=True)
    assert abs(m.values.sum() - 1) <= 1e-15
    doc["focal"][1]["mass"] = 0.45
    with pytest.raises(MassSumViolation):
        mass_from_dict(doc, renormalize=True)


def test_file_roundtrip(tmp_path, worked_conj):
    save_mass(worked_conj[1], tmp_path / "m.json")
    assert load_mass(tmp_path / "m.json") == worked_conj[1]


@given(masses(n_max=4))
def test_setfunction_documents(m):
    f = to_family(m, "pl")
    d = setfunction_to_dict(f)
    assert d["family"] == "pl" and len(d["values"]) == m.frame.N
    back = setfunction_from_dict(json.loads(dumps(d)))
    assert np.array_equal(back.values, f.values)
    g = to_alpha(m, 0.25, "ab")
    d = setfunction_to_dict(g)
    assert d["alpha"] == 0.25
    back = setfunction_from_dict(json.loads(dumps(d)))
    assert back.alpha == 0.25 and np.array_equal(back.values, g.values)
