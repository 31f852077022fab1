import json
import random

import pytest
from hypothesis import given, settings, strategies as st

from conftest import r1_residues, r1_structure, r2_residues, r2_structure
from strata import io
from strata.blowup import random_sequence
from strata.errors import InputError
from strata.foliation import random_model
from strata.hironaka import CovectorSpace
from strata.separatrix import FoliatedModel, TraceComponent


def roundtrip(doc):
    return json.loads(json.dumps(doc))


def test_structure_doc_shape():
    doc = io.structure_to_doc(r2_structure())
    assert doc["dimension"] == 3 and doc["components"] == ["E0", "E1", "E2"]
    assert doc["strata"][0] == [] and [0, 1, 2] in doc["strata"]


@settings(max_examples=50, deadline=None)
@given(st.integers(2, 4), st.integers(1, 8), st.integers(0, 10**6))
def test_trace_and_structure_roundtrip(d, n, seed):
    t = random_sequence(d, n, seed)
    doc = roundtrip(io.trace_to_doc(t))
    assert io.trace_from_doc(doc).final == t.final
    assert io.structure_from_doc(doc["final"]) == t.final
    m = random_model(t.final.indices, random.Random(seed))
    assert io.residues_from_doc(roundtrip(io.residues_to_doc(m))) == m


def test_nodal_and_model_roundtrip():
    m = FoliatedModel.from_residues(r2_structure(), r2_residues(),
                                    [TraceComponent("t1", 0), TraceComponent("t2", 2)])
    back = io.model_from_doc(roundtrip(io.model_to_doc(m)))
    assert back == m
    n = m.nodal
    assert io.nodal_from_doc(roundtrip(io.nodal_to_doc(n))) == n
    explicit = FoliatedModel(r2_structure(), n, None, m.traces)
    assert io.model_from_doc(roundtrip(io.model_to_doc(explicit))) == explicit


def test_residue_doc_uses_exact_strings():
    doc = io.residues_to_doc(r1_residues())
    assert doc["residues"]["2"] == {"symbol": "mu", "scale": "-1"}
    doc["residues"]["2"]["scale"] = "-3/6"
    assert str(io.residues_from_doc(doc).residue(2).scale) == "-1/2"


def test_matrix_doc():
    u = io.matrix_from_doc({"n": 3, "e": 3, "rows": [["1", "1/2", "0"]]})
    assert u == CovectorSpace(3, 3, ((1, 0.5, 0),))
    assert io.matrix_to_doc(u)["rows"] == [["1", "1/2", "0"]]


@pytest.mark.parametrize("doc", [
    {"dimension": 2, "components": ["a", "b"], "strata": [[], [0], [0, 1]]},
    {"dimension": 2, "components": ["a"], "strata": [[], [0], [0, 3]]},
    {"dimension": 2, "components": ["a", "b"], "strata": [[], [1, 0]]},
    {"dimension": 2, "strata": []},
    {"dimension": "x", "components": [], "strata": []},
])
def test_bad_structures(doc):
    with pytest.raises(InputError):
        io.structure_from_doc(doc)


def test_bad_rationals_and_traces():
    with pytest.raises(InputError):
        io.matrix_from_doc({"n": 3, "e": 3, "rows": [["1", "x", "0"]]})
    with pytest.raises(InputError):
        io.matrix_from_doc({"n": 3, "e": 3, "rows": [[1.5, 0, 0]]})
    doc = io.trace_to_doc(random_sequence(3, 3, 0))
    doc["steps"][1]["fresh"] = 9
    with pytest.raises(InputError):
        io.trace_from_doc(doc)


def test_load_json_errors(tmp_path):
    with pytest.raises(InputError):
        io.load_json(str(tmp_path / "missing.json"))
    bad = tmp_path / "bad.json"
    bad.write_text("{nope")
    with pytest.raises(InputError):
        io.load_json(str(bad))


def test_load_structure_accepts_all_wrappers(tmp_path):
    s = r1_structure()
    for name, doc in [("s", io.structure_to_doc(s)), ("m", {"structure": io.structure_to_doc(s)})]:
        p = tmp_path / f"{name}.json"
        p.write_text(json.dumps(doc))
        assert io.load_structure(str(p)) == s
