import json
from importlib import resources
from pathlib import Path

import pytest
from jsonschema import Draft202012Validator
from referencing import Registry, Resource

from hilbint import integral_ops as ops
from hilbint.checks import PRESETS
from hilbint.cli import main
from hilbint.exact_linalg import ExactMatrix
from hilbint.fock import FockState
from hilbint.symfunc import SymFunc, forgotten

GOLDEN = Path(__file__).parent / "golden"
SCHEMA_NAMES = ("rational", "surface", "fock_state", "symfunc", "matrix", "basis_manifest")


def _load(name):
    return json.loads(resources.files("hilbint").joinpath("schemas", f"{name}.json").read_text())


REGISTRY = Registry().with_resources(
    (f"{name}.json", Resource.from_contents(_load(name))) for name in SCHEMA_NAMES
)


def validate(name, data):
    Draft202012Validator(_load(name), registry=REGISTRY).validate(data)


@pytest.mark.parametrize("name", SCHEMA_NAMES)
def test_schemas_are_valid(name):
    Draft202012Validator.check_schema(_load(name))


def test_package_objects_match_schemas(p2):
    validate("matrix", ops.mid_gram(2, p2).to_json())
    validate("symfunc", forgotten((2, 1)).to_json())
    validate("fock_state", ops.l_class((1, 1), p2.alpha(1)).value.to_json())
    validate("basis_manifest", ops.full_basis(2, p2, with_det=True).to_json())
    validate("basis_manifest", ops.full_basis(1, p2).to_json())


def test_schema_rejects_bad_rational():
    with pytest.raises(Exception):
        validate("matrix", {"rows": 1, "cols": 1, "entries": [["0.5"]]})
    with pytest.raises(Exception):
        validate("symfunc", {"degree": 1, "basis": "Q", "terms": []})


def test_golden_inputs_match_schemas():
    validate("surface", json.loads((GOLDEN / "surface_custom.json").read_text()))
    validate("fock_state", json.loads((GOLDEN / "state_blowup.json").read_text()))


@pytest.mark.parametrize("argv, golden", [
    (["basis", "--surface", "P2", "--n", "2"], "basis_P2_n2.json"),
    (["gram", "--surface", "P2", "--n", "2", "--sector", "mid"], "gram_mid_P2_n2.json"),
    (["chern", "--n", "3", "--i", "1"], "chern_n3_i1.json"),
    (["decompose", "--surface", "P2-blown-up", "--state", str(GOLDEN / "state_blowup.json")],
     "decompose_blowup.json"),
    (["decompose", "--surface", "P2-blown-up", "--state", str(GOLDEN / "state_blowup.json"), "--mode", "sector"],
     "decompose_sector.json"),
])
def test_cli_output_matches_golden(argv, golden, capsys):
    assert main(argv) == 0
    out = capsys.readouterr().out
    assert json.loads(out) == json.loads((GOLDEN / golden).read_text())


def test_golden_round_trips():
    m = json.loads((GOLDEN / "gram_mid_P2_n2.json").read_text())
    assert ExactMatrix.from_json(m).to_json() == m
    model = PRESETS["P2-blown-up"]
    s = json.loads((GOLDEN / "state_blowup.json").read_text())
    state = FockState.from_json(s, model)
    assert FockState.from_json(state.to_json(), model) == state
    f = forgotten((2, 2)).to_json()
    assert SymFunc.from_json(f).to_json() == f
