import json

import numpy as np
import pytest

from errors import DocumentError, SchemaError
from prevariety.fans import build_system, same_cones
from utils.documents import (
    document_kind,
    emit,
    fan_document,
    parse_basis,
    parse_conical,
    parse_fan_system,
    parse_ring,
    read_document,
)


def test_bad_json_reports_line_and_column(tmp_path):
    path = tmp_path / "broken.json"
    path.write_text('{\n  "kind": "ring",\n  "group": \n}\n', encoding="utf-8")
    with pytest.raises(DocumentError, match=r"broken\.json:4:1"):
        read_document(path)


def test_missing_file(tmp_path):
    with pytest.raises(DocumentError, match="cannot read"):
        read_document(tmp_path / "absent.json")


def test_top_level_must_be_an_object(tmp_path):
    path = tmp_path / "list.json"
    path.write_text("[1, 2]", encoding="utf-8")
    with pytest.raises(SchemaError) as excinfo:
        read_document(path)
    assert excinfo.value.location == "$"


@pytest.mark.parametrize(
    "document, kind",
    [
        ({"group": {}, "degrees": []}, "ring"),
        ({"group": {}, "B": []}, "conical"),
        ({"rank": 2, "cones": []}, "fan_system"),
        ({"source": {}, "target": {}, "images": []}, "morphism"),
        ({"images": [], "choices": []}, "rational_map"),
        ({"ambient": 2, "basis": []}, "sublattice"),
        ({"kind": "ring", "B": []}, "ring"),
    ],
)
def test_kind_inference(document, kind):
    assert document_kind(document) == kind


def test_unknown_kind():
    with pytest.raises(SchemaError, match="unknown kind"):
        document_kind({"kind": "variety"})
    with pytest.raises(SchemaError):
        document_kind({"something": 1})


def test_torsion_residue_is_located():
    document = {"group": {"rank": 1, "torsion": [2]}, "degrees": [[1, 0], [0, 2], [1, 1]]}
    with pytest.raises(SchemaError) as excinfo:
        parse_ring(document)
    assert excinfo.value.location == "$.degrees[1][1]"


def test_integers_as_strings_and_booleans(torsion_ring):
    document = {"group": {"rank": "1", "torsion": ["2"]}, "degrees": [["1", 0], [0, 1], [1, "1"]]}
    assert parse_ring(document).degrees == torsion_ring.degrees
    document["degrees"][0][0] = True
    with pytest.raises(SchemaError) as excinfo:
        parse_ring(document)
    assert excinfo.value.location == "$.degrees[0][0]"


def test_wrong_number_of_names():
    document = {"group": {"rank": 1}, "degrees": [[1], [1]], "names": ["x"]}
    with pytest.raises(SchemaError, match="1 names for 2 variables"):
        parse_ring(document)


def test_negative_exponent_in_B():
    document = {"group": {"rank": 1}, "degrees": [[1], [1]], "B": [[1, -1]]}
    with pytest.raises(SchemaError) as excinfo:
        parse_conical(document)
    assert excinfo.value.location == "$.B[0]"


def test_parse_basis_keeps_the_given_rows(data_dir):
    document = read_document(data_dir / "blowup.json")
    basis = parse_basis(document, 4)
    assert basis.vectors == ((1, 0, -1, 1), (0, 1, -1, 1))
    assert parse_basis({}, 4) is None


def test_duplicate_cone_labels():
    document = {"rank": 1, "cones": [{"label": "a", "rays": [[1]]}, {"label": "a", "rays": [[-1]]}]}
    with pytest.raises(SchemaError, match="distinct"):
        parse_fan_system(document)


def test_ray_indices_need_ray_list():
    document = {"rank": 1, "cones": [{"label": "a", "rays": [[1]], "ray_indices": [0]}]}
    with pytest.raises(SchemaError) as excinfo:
        parse_fan_system(document)
    assert excinfo.value.location == "$.cones[0].ray_indices"


def test_duplicate_overlap_entries():
    document = {
        "rank": 2,
        "cones": [{"label": "a", "rays": [[1, 0], [0, 1]]}, {"label": "b", "rays": [[1, 0], [0, -1]]}],
        "overlaps": [{"i": "a", "j": "b", "cones": [[[1, 0]]]}, {"i": "b", "j": "a", "cones": []}],
    }
    with pytest.raises(SchemaError, match="duplicate overlap") as excinfo:
        parse_fan_system(document)
    assert excinfo.value.location == "$.overlaps[1]"


def test_emit_big_integers_and_numpy_scalars():
    payload = json.loads(emit({"big": 2**70, "small": np.int64(-3), "flag": np.bool_(True), "rows": [(1, 2)]}))
    assert payload == {"big": str(2**70), "small": -3, "flag": True, "rows": [[1, 2]]}


def test_fan_document_reads_back(data_dir, blowup):
    system = build_system(blowup)
    again = parse_fan_system(json.loads(emit(fan_document(system))))
    assert same_cones(system, again)
    assert again.labels == system.labels
    assert parse_fan_system(read_document(data_dir / "p2_fan.json")).labels
