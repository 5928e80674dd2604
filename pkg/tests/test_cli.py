"""CLI surface: flags, exit codes, CSV schema and bit-stable reruns."""

import json

import numpy as np
import pytest

from lindblad_spectra import closed_form_spectrum, hausdorff_distance
from lindblad_spectra.cli import cloud_from_csv, load_cloud, main


def run(args):
    return main(args)


def test_spectrum_builtin_closed_form(tmp_path):
    out = tmp_path / "cloud.csv"
    rc = run([
        "spectrum", "--builtin", "dephasing", "--G", "2",
        "--qpoints", "64", "--thetapoints", "64", "--out", str(out),
    ])
    assert rc == 0
    cloud = load_cloud(str(out))
    ref = closed_form_spectrum("dephasing", 2.0).sample(1024)
    assert hausdorff_distance(cloud.z, ref) < 0.1
    manifest = json.loads((tmp_path / "cloud.csv.manifest.json").read_text())
    assert manifest["command"] == "spectrum"
    assert manifest["model"]["builtin"] == "dephasing"
    assert manifest["wall_time_s"] >= 0


def test_spectrum_minimal_qpoints(tmp_path):
    out = tmp_path / "tiny.csv"
    rc = run([
        "spectrum", "--builtin", "dephasing", "--G", "1",
        "--qpoints", "4", "--thetapoints", "8", "--out", str(out),
    ])
    assert rc == 0
    cloud = load_cloud(str(out))
    nhe = cloud.select("NHE")
    assert len(set(np.round(nhe.q, 12))) == 4


def test_spectrum_json_format(tmp_path):
    out = tmp_path / "cloud.json"
    rc = run([
        "spectrum", "--builtin", "exclusion", "--G", "1",
        "--qpoints", "16", "--thetapoints", "16",
        "--out", str(out), "--format", "json",
    ])
    assert rc == 0
    doc = json.loads(out.read_text())
    assert {"manifest", "points"} <= set(doc)
    assert all({"re", "im", "tag"} <= set(p) for p in doc["points"])


def test_malformed_model_file_exits_2(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{"lindblad": {}}')
    out = tmp_path / "x.csv"
    rc = run(["spectrum", "--model", str(bad), "--out", str(out)])
    assert rc == 2
    bad.write_text("not json at all")
    rc = run(["spectrum", "--model", str(bad), "--out", str(out)])
    assert rc == 2


def test_finite_matches_fiber_union(tmp_path):
    out = tmp_path / "finite.csv"
    rc = run([
        "finite", "--builtin", "dephasing", "--G", "2", "--n", "7",
        "--bc", "periodic", "--out", str(out),
    ])
    assert rc == 0
    cloud = load_cloud(str(out))
    assert len(cloud) == 49
    assert set(cloud.tag) == {"EIG"}


def test_finite_size_cap_exits_3(tmp_path):
    out = tmp_path / "big.csv"
    rc = run([
        "finite", "--builtin", "dephasing", "--G", "2", "--n", "10000",
        "--out", str(out),
    ])
    assert rc == 3


def test_finite_with_disorder(tmp_path):
    out = tmp_path / "dis.csv"
    rc = run([
        "finite", "--builtin", "dephasing", "--G", "1", "--n", "6",
        "--seed", "4", "--lambda", "2.0", "--out", str(out),
    ])
    assert rc == 0
    manifest = json.loads((tmp_path / "dis.csv.manifest.json").read_text())
    assert manifest["seeds"] == {"seed": 4, "lambda": 2.0}


def test_compare_identical_and_disjoint(tmp_path, capsys):
    a = tmp_path / "a.csv"
    run([
        "spectrum", "--builtin", "dephasing", "--G", "1",
        "--qpoints", "8", "--thetapoints", "8", "--out", str(a),
    ])
    rc = run(["compare", "--a", str(a), "--b", str(a)])
    assert rc == 0
    assert float(capsys.readouterr().out.strip()) == 0.0
    b = tmp_path / "b.csv"
    b.write_text("re,im,tag,q,theta\n3,4,EIG,,\n")
    run(["compare", "--a", str(b), "--b", str(b)])
    capsys.readouterr()
    # translate: single point vs itself shifted is its distance
    c = tmp_path / "c.csv"
    c.write_text("re,im,tag,q,theta\n0,0,EIG,,\n")
    rc = run(["compare", "--a", str(b), "--b", str(c)])
    assert rc == 0
    assert float(capsys.readouterr().out.strip()) == pytest.approx(5.0)


def test_byte_identical_reruns(tmp_path):
    out1 = tmp_path / "r1.csv"
    out2 = tmp_path / "r2.csv"
    args = [
        "spectrum", "--builtin", "exclusion", "--G", "1",
        "--qpoints", "32", "--thetapoints", "32",
    ]
    assert run(args + ["--out", str(out1)]) == 0
    assert run(args + ["--out", str(out2)]) == 0
    assert out1.read_bytes() == out2.read_bytes()
    # and the CSV round-trips into an equal cloud
    cloud = load_cloud(str(out1))
    again = cloud_from_csv(out1.read_text())
    assert cloud.equals(again)


def test_pseudospectrum_command(tmp_path):
    out = tmp_path / "ps.csv"
    rc = run([
        "pseudospectrum", "--builtin", "dephasing", "--G", "1", "--n", "4",
        "--remin", "-3", "--remax", "1", "--immin", "-2", "--immax", "2",
        "--resolution", "8", "--out", str(out),
    ])
    assert rc == 0
    lines = out.read_text().splitlines()
    assert lines[0] == "re,im,sigma_min"
    assert len(lines) == 1 + 64


def test_gap_scaling_command(tmp_path, capsys):
    out = tmp_path / "gap.json"
    rc = run(["gap-scaling", "--G", "2", "--sizes", "50,100,200", "--out", str(out)])
    assert rc == 0
    doc = json.loads(out.read_text())
    assert doc["exponent"] == pytest.approx(-2.0, abs=0.05)


def test_equivalence_command(capsys):
    rc = run(["equivalence", "--builtin", "exclusion", "--G", "2", "--n", "6"])
    assert rc == 0
    assert float(capsys.readouterr().out.strip()) < 1e-10


def test_range_command(tmp_path, capsys):
    out = tmp_path / "range.csv"
    rc = run([
        "range", "--G", "2", "--n", "12", "--lambda", "5",
        "--samples", "200", "--seed", "1", "--out", str(out),
    ])
    assert rc == 0
    assert "violations 0" in capsys.readouterr().out
    lines = out.read_text().splitlines()
    assert lines[0] == "re,im,a"
    assert len(lines) == 201


def test_model_g_conflict_is_input_error(tmp_path):
    model = tmp_path / "m.json"
    model.write_text(json.dumps({
        "G": 1.0,
        "hamiltonian": {"hopping": [{"offset": 1, "re": -1.0}, {"offset": -1, "re": -1.0}]},
        "lindblad": {"phi": [{"offset": 0, "re": 1.0}], "psi": [{"offset": 0, "re": 1.0}]},
    }))
    out = tmp_path / "y.csv"
    rc = run([
        "spectrum", "--model", str(model), "--G", "2",
        "--qpoints", "8", "--thetapoints", "8", "--out", str(out),
    ])
    assert rc == 2
    rc = run([
        "spectrum", "--model", str(model),
        "--qpoints", "8", "--thetapoints", "8", "--out", str(out),
    ])
    assert rc == 0
