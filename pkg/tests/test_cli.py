import json

import pytest

from hyperlp import cli, radial
from hyperlp.report import validate_report


def _run(tmp_path, *args):
    code = cli.main(list(args) + ["--out", str(tmp_path)])
    return code, {p.name: p.read_text() for p in tmp_path.iterdir()}


def _report(files, command):
    doc = json.loads(files[f"{command}.json"])
    assert validate_report(doc) == []
    return doc


def _csv(text):
    lines = text.strip().splitlines()
    return lines[0].split(","), [line.split(",") for line in lines[1:]]


# --- regions --------------------------------------------------------------------


def test_regions_parabola_through_origin(tmp_path):
    code, files = _run(tmp_path, "regions", "--N", "3", "--k", "0", "--p", "1", "--s-max", "5", "--format", "csv")
    assert code == 0
    header, rows = _csv(files["regions_boundary.csv"])
    assert header == ["s", "re", "im"]
    mid = rows[len(rows) // 2]
    assert float(mid[0]) == 0 and abs(float(mid[1])) < 1e-15 and abs(float(mid[2])) < 1e-15


def test_regions_degenerate_ray_with_isolated_zero(tmp_path):
    code, files = _run(tmp_path, "regions", "--N", "3", "--k", "2", "--p", "2")
    region = _report(files, "regions")["region"]
    assert code == 0
    assert region["degenerate_ray"] and region["vertex"] == 0.25 and region["isolated_zero"]


def test_regions_duality_gives_identical_data(tmp_path):
    outs = []
    for k in ("1", "3"):
        d = tmp_path / k
        d.mkdir()
        _, files = _run(d, "regions", "--N", "3", "--k", k, "--p", "1.5", "--raster", "9", "--format", "csv")
        outs.append((files["regions_boundary.csv"], files["regions_raster.csv"]))
    assert outs[0] == outs[1]


def test_regions_raster_flags(tmp_path):
    _, files = _run(tmp_path, "regions", "--N", "3", "--k", "1", "--p", "4", "--raster", "15", "--format", "csv")
    header, rows = _csv(files["regions_raster.csv"])
    assert header == ["x", "y", "in_region", "is_eigenvalue"]
    assert any(r[3] == "true" for r in rows) and any(r[2] == "false" for r in rows)
    # eigenvalues are interior points of the region
    assert all(r[2] == "true" for r in rows if r[3] == "true")


# --- weyl, ode, middle ------------------------------------------------------------


def test_weyl_small_sweep(tmp_path):
    code, files = _run(tmp_path, "weyl", "--N", "1", "--n-list", "2,4,8", "--s", "0,1,2", "--format", "csv")
    assert code == 0
    fits = _report(files, "weyl")["fits"]
    slopes = [f["fitted_exponent"] for f in fits.values()]
    assert all(f["monotone"] for f in fits.values())
    assert max(slopes) - min(slopes) < 0.3
    assert _csv(files["weyl_quotients.csv"])[0] == ["s", "n", "quotient"]


def test_weyl_single_s_header(tmp_path):
    code, files = _run(tmp_path, "weyl", "--N", "1", "--n-list", "2,4", "--format", "csv")
    assert _csv(files["weyl_quotients.csv"])[0] == ["n", "quotient"]


@pytest.mark.parametrize("args", [["--p", "3"], ["--n-list", "8,4"], ["--n-list", "4"]])
def test_weyl_usage_errors(tmp_path, args):
    assert cli.main(["weyl", "--out", str(tmp_path), *args]) == 2


def test_ode_zero_spectral_value_has_flat_growth(tmp_path):
    code, files = _run(tmp_path, "ode", "--N", "3", "--k", "1", "--lambda", "4", "--Lre", "0", "--Lim", "0")
    doc = _report(files, "ode")
    assert code == 0
    assert abs(doc["checks"][0]["measured"]) < 1e-2
    assert doc["frobenius_alpha"] == 2


def test_middle_threshold(tmp_path):
    code, files = _run(tmp_path, "middle", "--N", "3")
    assert code == 0
    assert abs(_report(files, "middle")["threshold"]["measured"] - 1.5) <= 0.02


def test_middle_rejects_even_N(tmp_path):
    assert cli.main(["middle", "--N", "4", "--out", str(tmp_path)]) == 2


# --- kernels and check-all ---------------------------------------------------------


def test_kernels_subset(tmp_path):
    code, files = _run(tmp_path, "kernels", "--check", "heat,resolvent,impo", "--format", "csv")
    assert code == 0
    assert _csv(files["kernels_heat_mass.csv"])[0] == ["t", "mass"]


def test_kernels_all_reports_every_check(tmp_path):
    code, files = _run(tmp_path, "kernels", "--check", "all", "--format", "csv")
    checks = _report(files, "kernels")["checks"]
    assert {"kernels_volume.csv", "kernels_wave.csv", "kernels_heat_mass.csv"} <= set(files)
    assert code == (0 if all(c["pass"] for c in checks) else 1)
    # only the finite-radius volume rates can fall outside their tolerance
    assert all(c["pass"] for c in checks if not c["name"].startswith("volume_growth"))


def test_kernels_unknown_check(tmp_path):
    assert cli.main(["kernels", "--check", "heat,nope", "--out", str(tmp_path)]) == 2


def test_check_all_subset(tmp_path):
    code, files = _run(tmp_path, "check-all", "--only", "1,6")
    doc = _report(files, "check-all")
    assert code == 0 and len(doc["checks"]) == 2


def test_check_all_detects_mutated_threshold(tmp_path, monkeypatch):
    monkeypatch.setattr(radial, "LP_THRESHOLD_SCALE", 1.1)
    assert cli.main(["check-all", "--only", "6", "--out", str(tmp_path)]) == 1


# --- configuration and determinism ---------------------------------------------------


def test_config_file_with_flag_override(tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("# region settings\nN = 5\nk=1  # degree\np=inf\nseed=11\n")
    out = tmp_path / "out"
    code = cli.main(["regions", "--config", str(cfg), "--N", "3", "--out", str(out)])
    header = json.loads((out / "regions.json").read_text())["config"]
    assert code == 0
    assert header["params"]["N"] == 3 and header["params"]["k"] == 1
    assert header["params"]["p"] == float("inf")
    assert header["seed"] == 11 and header["params"]["s_num"] == 201


@pytest.mark.parametrize("text", ["N 3\n", "bogus=1\n", "format=xml\n", "N=three\n"])
def test_bad_config_is_usage_error(tmp_path, text):
    cfg = tmp_path / "bad.cfg"
    cfg.write_text(text)
    assert cli.main(["regions", "--config", str(cfg), "--out", str(tmp_path)]) == 2


def test_missing_config_is_usage_error(tmp_path):
    assert cli.main(["regions", "--config", str(tmp_path / "none.cfg")]) == 2


def test_argparse_errors_exit_two():
    assert cli.main(["regions", "--bogus"]) == 2
    assert cli.main([]) == 2


def test_json_format_embeds_data(tmp_path):
    _, files = _run(tmp_path, "regions", "--s-num", "3", "--format", "json")
    assert list(files) == ["regions.json"]
    rows = json.loads(files["regions.json"])["data"]["boundary"]
    assert [r["s"] for r in rows] == [-5, 0, 5]


@pytest.mark.parametrize(
    "command, params",
    [
        ("regions", {"N": 4, "k": 1, "p": 1.25, "raster": 7}),
        ("middle", {"N": 5}),
        ("kernels", {"check": "heat,impo,schur"}),
    ],
)
@pytest.mark.parametrize("fmt", ["csv", "json"])
def test_render_is_byte_identical(command, params, fmt):
    cfg = cli.RunConfig(command, params, fmt=fmt, seed=3)
    assert cli.render(cfg) == cli.render(cfg)
