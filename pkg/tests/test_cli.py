"""Command-line interface: subcommands, formats, exit codes."""

import csv
import io
import json
import math

import jsonschema
import pytest

from geophase.cli import main
from geophase.data import load_report_schema

PI = math.pi


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_examples_subcommand_lists_the_gallery(capsys):
    code, out, _ = run(capsys, "examples")
    assert code == 0
    for name in ("i", "ii", "iii", "iv", "v", "vi"):
        assert f"{name}:" in out or f"{name} " in out


def test_compute_text_report(capsys):
    code, out, _ = run(capsys, "compute", "--example", "iv",
                       "--beta0", "1.0471975512", "--radii", "1,1",
                       "--methods", "line,area")
    assert code == 0
    assert "delta_d" in out and "delta_g" in out and "delta_total" in out
    assert f"{PI:.6f}"[:6] in out       # the line value is pi


def test_compute_all_methods_agree(capsys):
    code, out, _ = run(capsys, "compute", "--example", "vi", "--radii", "1,1",
                       "--methods",
                       "line,baumkuchen,area,curvature,monopole,berry,oracle",
                       "--steps", "20000", "--samples", "100000",
                       "--format", "json")
    assert code == 0
    doc = json.loads(out)
    for method, entry in doc["delta_g"].items():
        assert entry["value"] == pytest.approx(-1.5 * PI, abs=1e-3), method
    assert doc["delta_total"] == pytest.approx(-3.5 * PI, abs=1e-9)
    assert doc["n"] == -1
    assert doc["max_discrepancy"] < 1e-3


def test_json_report_validates_against_the_shipped_schema(capsys):
    code, out, _ = run(capsys, "compute", "--example", "v",
                       "--methods", "line,area,oracle", "--steps", "20000",
                       "--format", "json")
    assert code == 0
    jsonschema.validate(json.loads(out), load_report_schema())


def test_json_report_is_deterministic(capsys):
    args = ("compute", "--example", "ii", "--methods", "line,area",
            "--format", "json")
    _, first, _ = run(capsys, *args)
    _, second, _ = run(capsys, *args)
    assert first == second


def test_csv_report_round_trips(capsys):
    code, out, _ = run(capsys, "compute", "--example", "v", "--format", "csv")
    assert code == 0
    rows = {(r["quantity"], r["method"]): r
            for r in csv.DictReader(io.StringIO(out))}
    assert float(rows[("delta_g", "line")]["value"]) == pytest.approx(PI / 2.0)
    assert int(rows[("I_minus", "")]["value"]) == 2


def test_compute_rejects_unknown_method(capsys):
    code, _, err = run(capsys, "compute", "--example", "ii",
                       "--methods", "line,psychic")
    assert code == 2
    assert "psychic" in err


def test_compute_rejects_bad_radii(capsys):
    code, _, err = run(capsys, "compute", "--example", "ii",
                       "--radii", "1,0")
    assert code == 2
    assert "radii" in err or "radius" in err


def test_compute_requires_beta0_for_the_parameterized_example(capsys):
    code, _, err = run(capsys, "compute", "--example", "iv")
    assert code == 2
    assert "beta0" in err


def test_compute_reports_broken_motion_files(tmp_path, capsys):
    bad = {"radii": {"a": 1.0, "b": 1.0},
           "segments": [
               {"t0": 0.0, "t1": 0.4,
                "theta": {"kind": "affine", "start": 0.0, "slope": 2 * PI},
                "beta": {"kind": "const", "value": PI / 2.0}},
               {"t0": 0.6, "t1": 1.0,
                "theta": {"kind": "const", "value": 2 * PI},
                "beta": {"kind": "const", "value": PI / 2.0}}]}
    target = tmp_path / "bad.json"
    target.write_text(json.dumps(bad))
    code, _, err = run(capsys, "compute", "--motion", str(target))
    assert code == 2
    assert "GapOrOverlap" in err


def test_compute_reports_unreadable_files(capsys):
    code, _, err = run(capsys, "compute", "--motion", "/no/such/file.json")
    assert code == 4
    assert "cannot read" in err


def test_compute_motion_file_happy_path(tmp_path, capsys):
    desc = {"radii": {"a": 2.0, "b": 1.0},
            "segments": [
                {"t0": 0.0, "t1": 1.0,
                 "theta": {"kind": "affine", "start": 0.0, "slope": 2 * PI},
                 "beta": {"kind": "const", "value": PI / 2.0}}]}
    target = tmp_path / "motion.json"
    target.write_text(json.dumps(desc))
    code, out, _ = run(capsys, "compute", "--motion", str(target),
                       "--format", "json")
    assert code == 0
    doc = json.loads(out)
    assert doc["delta_d"] == pytest.approx(4.0 * PI)
    assert doc["delta_g"]["line"]["value"] == pytest.approx(0.0, abs=1e-12)


def test_method_failure_is_reported_not_fatal(tmp_path, capsys):
    # two azimuthal laps with a tilt tent self-intersect once; the area
    # route refuses but the report survives with the error recorded
    desc = {"radii": {"a": 1.0, "b": 1.0},
            "segments": [
                {"t0": 0.0, "t1": 0.5,
                 "theta": {"kind": "affine", "start": 0.0, "slope": 4 * PI},
                 "beta": {"kind": "affine", "start": PI / 2.0, "slope": 1.0}},
                {"t0": 0.5, "t1": 1.0,
                 "theta": {"kind": "affine", "start": 2 * PI, "slope": 4 * PI},
                 "beta": {"kind": "affine", "start": PI / 2.0 + 0.5,
                          "slope": -1.0}}]}
    target = tmp_path / "spiral.json"
    target.write_text(json.dumps(desc))
    code, out, _ = run(capsys, "compute", "--motion", str(target),
                       "--methods", "line,area", "--format", "json")
    assert code == 0
    doc = json.loads(out)
    assert "value" in doc["delta_g"]["line"]
    assert doc["delta_g"]["area"]["error"] == "CurveNotSimple"


def test_trace_equator_samples(capsys):
    code, out, _ = run(capsys, "trace", "--example", "ii", "--samples", "8")
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert len(rows) == 8
    for row in rows:
        assert abs(float(row["gz"])) < 1e-12
        assert abs(float(row["kappa_g"])) < 1e-9


def test_trace_clamped_motion_stays_near_the_south_pole(capsys):
    code, out, _ = run(capsys, "trace", "--example", "i", "--samples", "64")
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    eps = PI / 16.0
    for row in rows:
        g = [float(row[k]) for k in ("gx", "gy", "gz")]
        angle = math.acos(max(-1.0, min(1.0, -g[2])))
        assert angle <= eps + 1e-9


def test_trace_keeps_clear_of_the_poles(capsys):
    code, out, _ = run(capsys, "trace", "--example", "v", "--samples", "200")
    assert code == 0
    eps = PI / 16.0
    for row in csv.DictReader(io.StringIO(out)):
        gz = float(row["gz"])
        pole_distance = PI / 2.0 - math.asin(min(1.0, abs(gz)))
        assert pole_distance >= eps / 2.0 - 1e-9


def test_foucault_stationary(capsys):
    code, out, _ = run(capsys, "foucault", "--lat", "48.85", "--days", "1",
                       "--format", "json")
    assert code == 0
    doc = json.loads(out)
    expected = 2 * PI * math.sin(math.radians(48.85))
    assert doc["delta_fou"] == pytest.approx(expected, abs=1e-12)


def test_foucault_track_file(tmp_path, capsys):
    target = tmp_path / "track.csv"
    target.write_text("t_days,lon_deg,lat_deg\n0,0,10\n0.5,180,20\n1,360,10\n")
    code, out, _ = run(capsys, "foucault", "--track", str(target),
                       "--format", "json")
    assert code == 0
    doc = json.loads(out)
    assert len(doc["legs"]) == 2


def test_foucault_rejects_bad_latitudes(tmp_path, capsys):
    target = tmp_path / "track.csv"
    target.write_text("t_days,lon_deg,lat_deg\n0,0,95\n")
    code, _, err = run(capsys, "foucault", "--track", str(target))
    assert code == 2
    assert "LatitudeOutOfRange" in err
