#!/usr/bin/env python
# -*- coding: utf-8 -*-

import json

import numpy as np
import pytest

from core.errors import FormatError
from core.formats import (detect_kind, is_binary_matrix, load_matrix, read_json, read_matrix_binary,
                          read_matrix_text, read_profile_csv, sibling, write_json,
                          write_matrix_binary, write_matrix_text, write_profile_csv)
from core.manifest import RunManifest, file_digest, load_manifest
from core.ripmat import build_frame


@pytest.fixture
def matrix():
    return build_frame(13, [1, 2], [0, 5, 9], n_rows=16).matrix


def test_binary_matrix_layout(tmp_path, matrix):
    path = write_matrix_binary(str(tmp_path / "m.qpf"), matrix)
    payload = open(path, "rb").read()
    assert payload[:4] == b"QPF1"
    assert int.from_bytes(payload[4:12], "little") == 16
    assert int.from_bytes(payload[12:20], "little") == 6
    assert len(payload) == 20 + 16 * 6 * 16
    assert np.array_equal(read_matrix_binary(path), matrix)


def test_text_matrix_is_lossless(tmp_path, matrix):
    path = write_matrix_text(str(tmp_path / "m.txt"), matrix)
    with open(path) as f:
        assert f.readline().strip() == "16 6"
    assert np.array_equal(read_matrix_text(path), matrix)
    assert not is_binary_matrix(path)
    assert np.array_equal(load_matrix(path), matrix)


def test_text_binary_text_digest(tmp_path, matrix):
    first = write_matrix_binary(str(tmp_path / "a.qpf"), matrix)
    text = write_matrix_text(str(tmp_path / "a.txt"), read_matrix_binary(first))
    second = write_matrix_binary(str(tmp_path / "b.qpf"), read_matrix_text(text))
    assert file_digest(first) == file_digest(second)


def test_corrupt_matrices(tmp_path, matrix):
    path = write_matrix_binary(str(tmp_path / "m.qpf"), matrix)
    with open(path, "r+b") as f:
        f.truncate(100)
    with pytest.raises(FormatError):
        read_matrix_binary(path)
    bad = tmp_path / "bad.txt"
    bad.write_text("2 2\n1,0 0,0\n0,0\n")
    with pytest.raises(FormatError):
        read_matrix_text(str(bad))
    bad.write_text("{\"modulus\": 5}\n")
    with pytest.raises(FormatError):
        load_matrix(str(bad))


def test_json_is_canonical(tmp_path):
    path = str(tmp_path / "x.json")
    write_json(path, {"b": 1, "a": [1, 2]})
    assert open(path).read() == '{\n  "a": [\n    1,\n    2\n  ],\n  "b": 1\n}\n'
    assert read_json(path) == {"a": [1, 2], "b": 1}


def test_read_json_errors(tmp_path):
    with pytest.raises(FormatError):
        read_json(str(tmp_path / "missing.json"))
    broken = tmp_path / "broken.json"
    broken.write_text("{not json")
    with pytest.raises(FormatError):
        read_json(str(broken))
    listed = tmp_path / "list.json"
    listed.write_text("[1, 2]")
    with pytest.raises(FormatError):
        read_json(str(listed))


@pytest.mark.parametrize("data, kind", [
    ({"points": [[1, 3, 1]]}, "points"),
    ({"frame": {}, "coherence": 0.1}, "frame_cert"),
    ({"M": 2, "r": 3, "A": [], "B": []}, "cube_pair"),
    ({"modulus": 7, "A": [1], "B": [2]}, "residue_pair"),
    ({"modulus": 7, "elements": [[1, 2]]}, "multiset"),
    ({"modulus": 7, "elements": [1, 2]}, "residues"),
])
def test_detect_kind(data, kind):
    assert detect_kind(data) == kind


def test_detect_kind_unknown():
    with pytest.raises(FormatError):
        detect_kind({"hello": 1})


def test_profile_csv(tmp_path):
    path = write_profile_csv(str(tmp_path / "p.csv"), [1, 2, 3], [0.5, 0.25, 1 / 3])
    ks, values = read_profile_csv(path)
    assert list(ks) == [1, 2, 3]
    assert values[2] == 1 / 3
    assert open(path).readline() == "k,magnitude\n"


def test_sibling():
    assert sibling("out/frame.qpf", ".cert.json") == "out/frame.cert.json"


def test_manifest(tmp_path):
    output = str(tmp_path / "thinset.json")
    write_json(output, {"modulus": 7, "elements": []})
    manifest = RunManifest(["phasecert", "gen"], {"N": 7}, seed=1, threads=2, version="1.0.0")
    digest = manifest.add_output(output)
    path = manifest.write(output)
    assert path.endswith("thinset.manifest.json")
    data = load_manifest(path)
    assert data["outputs"] == {"thinset.json": digest}
    assert data["seed"] == 1
    assert "total_seconds" in data["timings"]
    assert load_manifest(str(tmp_path / "none.json")) is None
    assert json.loads(open(path).read())["version"] == "1.0.0"
