import json

import pytest

from cellcut import from_simplicial_facets
from cellcut.cli import (
    EXIT_CAP,
    EXIT_CHECK_FAILED,
    EXIT_INPUT,
    EXIT_OK,
    InputError,
    emit_document,
    main,
    parse_document,
    random_document,
)
from conftest import BIPYRAMID_FACETS, make_degree_pair


RP2_DOC = {
    "boundaries": [
        {"dim": 0, "cells": ["v"]},
        {"dim": 1, "cells": ["e"], "matrix": [[0]]},
        {"dim": 2, "cells": ["f"], "matrix": [[2]]},
    ],
    "augmented": True,
}

VIC_DOC = {
    "boundaries": [
        {"dim": 0, "cells": ["v"]},
        {"dim": 1, "cells": ["e"], "matrix": [[0]]},
        {"dim": 2, "cells": ["s1", "s2"], "matrix": [["6", "2"]]},
    ],
    "augmented": True,
}


def write_doc(tmp_path, doc, name="c.json"):
    path = tmp_path / name
    path.write_text(json.dumps(doc), encoding="utf-8")
    return str(path)


def run_json(capsys, argv):
    code = main(argv)
    out = capsys.readouterr().out
    return code, json.loads(out)


def test_parse_and_emit_roundtrip():
    c = parse_document(RP2_DOC)
    assert c.dim == 2
    again = parse_document(emit_document(c))
    assert again == c
    simp = parse_document({"simplicial_facets": [[1, 2], [1, 3], [2, 3]]})
    assert simp == from_simplicial_facets(["12", "13", "23"])
    assert parse_document(emit_document(simp)) == simp


def test_parse_rejects_bad_documents():
    with pytest.raises(InputError):
        parse_document({"simplicial_facets": []})
    with pytest.raises(InputError):
        parse_document({"boundaries": [{"dim": 0, "cells": ["v"]},
                                       {"dim": 2, "cells": ["f"], "matrix": [[2]]}]})
    with pytest.raises(InputError):
        parse_document({"boundaries": [{"dim": 0, "cells": ["v"]},
                                       {"dim": 1, "cells": ["e"], "matrix": [["x"]]}]})
    with pytest.raises(InputError):
        parse_document({})


def test_groups_command(tmp_path, capsys):
    code, rep = run_json(capsys, ["groups", write_doc(tmp_path, RP2_DOC), "--json"])
    assert code == EXIT_OK
    res = rep["results"]
    assert res["critical"]["invariant_factors"] == [4]
    assert res["cutflow"]["invariant_factors"] == [2]
    assert res["cocritical"]["invariant_factors"] == []


def test_tau_command(tmp_path, capsys):
    code, rep = run_json(capsys, ["tau", write_doc(tmp_path, VIC_DOC), "--json"])
    assert code == EXIT_OK
    assert rep["results"]["tau"] == 40


def test_homology_command(tmp_path, capsys):
    code, rep = run_json(
        capsys, ["homology", write_doc(tmp_path, RP2_DOC), "--json", "--dim", "1"]
    )
    assert code == EXIT_OK
    assert rep["results"]["homology"]["H1"]["invariant_factors"] == [2]


def test_forests_command(tmp_path, capsys):
    doc = {"simplicial_facets": [list(f) for f in BIPYRAMID_FACETS]}
    code, rep = run_json(capsys, ["forests", write_doc(tmp_path, doc), "--json"])
    assert code == EXIT_OK
    assert rep["results"]["count"] == 15


def test_cutbasis_flowbasis_with_forest_flag(tmp_path, capsys):
    doc = {"simplicial_facets": [list(f) for f in BIPYRAMID_FACETS]}
    path = write_doc(tmp_path, doc)
    code, rep = run_json(
        capsys, ["cutbasis", path, "--json", "--forest", "123,124,234,135,235"]
    )
    assert code == EXIT_OK
    assert rep["results"]["mu"] == 75
    vecs = {v["facet"]: v for v in rep["results"]["vectors"]}
    assert set(vecs) == {"123", "124", "234", "135", "235"}
    raw = vecs["124"]["uncalibrated"]
    assert sorted(raw) == ["124", "134"]
    assert {abs(x) for x in raw.values()} == {75}
    assert {abs(x) for x in vecs["124"]["calibrated"].values()} == {1}
    code, rep = run_json(
        capsys, ["flowbasis", path, "--json", "--forest", "123,124,234,135,235"]
    )
    assert code == EXIT_OK
    assert len(rep["results"]["vectors"]) == 2
    code = main(["cutbasis", path, "--forest", "123,124"])
    assert code == EXIT_INPUT


def test_verify_command(tmp_path, capsys):
    doc = {"simplicial_facets": [list(f) for f in BIPYRAMID_FACETS]}
    code, rep = run_json(capsys, ["verify", write_doc(tmp_path, doc), "--json"])
    assert code == EXIT_OK
    assert rep["ok"] is True
    assert all(ch["pass"] for ch in rep["checks"])


def test_verify_detects_broken_identity(tmp_path, capsys, monkeypatch):
    import cellcut.lattices as lattices_mod

    monkeypatch.setattr(lattices_mod, "tau", lambda c: 999)
    code = main(["verify", write_doc(tmp_path, RP2_DOC), "--json"])
    capsys.readouterr()
    assert code == EXIT_CHECK_FAILED


def test_exit_codes(tmp_path, capsys, monkeypatch):
    bad = tmp_path / "bad.json"
    bad.write_text("not json", encoding="utf-8")
    assert main(["groups", str(bad)]) == EXIT_INPUT
    capsys.readouterr()

    forged = {
        "boundaries": [
            {"dim": 0, "cells": ["v"]},
            {"dim": 1, "cells": ["e"], "matrix": [[1]]},
            {"dim": 2, "cells": ["f"], "matrix": [[1]]},
        ],
        "augmented": False,
    }
    assert main(["groups", write_doc(tmp_path, forged, "f.json")]) == EXIT_INPUT
    capsys.readouterr()

    doc = {"simplicial_facets": [list(f) for f in BIPYRAMID_FACETS]}
    monkeypatch.setenv("CELLCUT_MAX_FACETS", "3")
    assert main(["tau", write_doc(tmp_path, doc, "t.json")]) == EXIT_CAP
    capsys.readouterr()


def test_random_command_determinism(capsys):
    code = main(["random", "--seed", "1", "--vertices", "5", "--dim", "2",
                 "--facet-prob", "0.5"])
    first = capsys.readouterr().out
    assert code == EXIT_OK
    main(["random", "--seed", "1", "--vertices", "5", "--dim", "2",
          "--facet-prob", "0.5"])
    second = capsys.readouterr().out
    assert first == second
    doc = json.loads(first)
    c = parse_document(doc)
    assert c.dim == 2


def test_random_complete_complex():
    doc = random_document(7, 6, 2, 1.0)
    c = parse_document(doc)
    assert len(c.facets) == 20  # every triangle on six vertices
    assert len(c.cells[1]) == 15
    doc = random_document(3, 5, 2, 1.0)
    assert len(parse_document(doc).facets) == 10


def test_random_rejects_bad_params():
    with pytest.raises(InputError):
        random_document(1, 9, 2, 0.5)
    with pytest.raises(InputError):
        random_document(1, 5, 4, 0.5)
    with pytest.raises(InputError):
        random_document(1, 5, 2, 0.0)


def test_big_integers_serialized_as_strings(tmp_path, capsys):
    big = str(12345678901234567890123456789)
    doc = {
        "boundaries": [
            {"dim": 0, "cells": ["v"]},
            {"dim": 1, "cells": ["e"], "matrix": [[0]]},
            {"dim": 2, "cells": ["f"], "matrix": [[big]]},
        ],
        "augmented": True,
    }
    code, rep = run_json(
        capsys, ["homology", write_doc(tmp_path, doc), "--json", "--dim", "1"]
    )
    assert code == EXIT_OK
    factors = rep["results"]["homology"]["H1"]["invariant_factors"]
    assert factors == [big]  # transported as a decimal string
    # and the document round-trips through parse
    assert parse_document(doc).boundary(2)[0, 0] == int(big)


def test_text_rendering(tmp_path, capsys):
    code = main(["groups", write_doc(tmp_path, RP2_DOC)])
    out = capsys.readouterr().out
    assert code == EXIT_OK
    assert "critical" in out and "Z_4" in out
