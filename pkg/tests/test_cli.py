import io
import re
import subprocess
import sys

import pytest

from helixforge.cli import run

from conftest import GOLDEN_DIR

GOLDEN = GOLDEN_DIR / "helix_r10_c10_p2_l6_t0.1.nc"


def call(argv, stdin=""):
    out, err = io.StringIO(), io.StringIO()
    code = run(argv, stdin=io.StringIO(stdin), stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


@pytest.fixture(autouse=True)
def _clean_env(monkeypatch):
    monkeypatch.delenv("HELIXFORGE_DECIMALS", raising=False)


def test_count_square():
    code, out, _ = call(["count", "--radius", "1", "--tolerance", "0.29289321881"])
    assert code == 0
    assert "The number of points is 5" in out
    assert "The chord is 1.414214" in out


def test_count_error():
    code, out, err = call(["count", "--radius", "1", "--tolerance", "2"])
    assert code != 0
    assert "InvalidTolerance" in err
    assert len(err.strip().splitlines()) == 1


def test_generate_defaults(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    code, out, _ = call(["generate"])
    assert code == 0
    assert "The number of points is 16" in out
    assert (tmp_path / "TestHelix.nc").read_bytes() == GOLDEN.read_bytes()


def test_interactive_matches_flags(tmp_path):
    flags = tmp_path / "flags.nc"
    inter = tmp_path / "inter.nc"
    argv = ["--cutter-dia", "6", "--center-x", "1.5", "--center-y", "-2", "--radius", "8",
            "--pitch", "1.25", "--length", "5", "--tolerance", "0.02"]
    assert call(["generate", *argv, "-o", str(flags)])[0] == 0
    code, out, _ = call(["generate", "--interactive", "-o", str(inter)], "6\n1.5\n-2\n8\n1.25\n5\n0.02\n")
    assert code == 0
    assert flags.read_bytes() == inter.read_bytes()
    prompts = [line for line in out.splitlines() if line.startswith("Enter")]
    assert prompts == [
        "Enter the cutter dia", "Enter the center for X", "Enter the center for Y",
        "Enter a value for the radius", "Enter the pitch", "Enter the length of the bore",
        "Enter the tolerance,a small value",
    ]


def test_interactive_short_input(tmp_path):
    code, _, err = call(["generate", "--interactive", "-o", str(tmp_path / "x.nc")], "6 0 0\n")
    assert code != 0
    assert "input ended" in err


def test_verify_generated():
    code, out, _ = call(["verify"])
    assert code == 0
    dev = float(re.search(r"max_deviation: (\S+)", out).group(1))
    assert dev <= 0.1 * (1 + 1e-9)


def test_verify_file_within_quantum(tmp_path):
    nc = tmp_path / "h.nc"
    call(["generate", "-o", str(nc)])
    code, out, _ = call(["verify", "--input", str(nc)])
    assert code == 0
    dev = float(re.search(r"max_deviation: (\S+)", out).group(1))
    assert dev <= 0.1 + 0.001


def test_verify_fails_on_loose_file(tmp_path):
    nc = tmp_path / "h.nc"
    call(["generate", "--tolerance", "0.5", "-o", str(nc)])
    code, out, _ = call(["verify", "--input", str(nc), "--tolerance", "0.1"])
    assert code == 1
    assert "EXCEEDED" in out


@pytest.mark.parametrize("shape, extra", [
    ("circle", []),
    ("elliptical-helix", ["--semi-major", "10", "--semi-minor", "6", "--cutter-dia", "0", "--length", "2"]),
])
def test_other_shapes_verify(shape, extra):
    code, out, _ = call(["verify", "--shape", shape, *extra])
    assert code == 0, out


def test_dump_csv_and_svg(tmp_path):
    csv_path, svg_path = tmp_path / "p.csv", tmp_path / "p.svg"
    code, _, _ = call(["dump", "--csv", str(csv_path), "--svg", str(svg_path)])
    assert code == 0
    rows = csv_path.read_text().splitlines()
    assert rows[0] == "x,y,z"
    assert rows[1] == "5.000,0.000,0.000"
    assert len(rows) == 49
    svg = svg_path.read_text()
    assert svg.count("<polyline") == 1
    assert 'viewBox="-11.000 -11.000 22.000 22.000"' in svg
    code, out, _ = call(["verify", "--input", str(csv_path)])
    assert code == 0


def test_dump_stdout():
    code, out, _ = call(["dump", "--shape", "circle", "--radius", "1", "--cutter-dia", "0",
                         "--tolerance", "0.29289321881"])
    assert code == 0
    assert out.splitlines() == ["x,y,z", "1.000,0.000,0.000", "0.000,1.000,0.000",
                                "-1.000,0.000,0.000", "0.000,-1.000,0.000", "1.000,0.000,0.000"]


def test_decimals_env_and_flag(tmp_path, monkeypatch):
    monkeypatch.setenv("HELIXFORGE_DECIMALS", "4")
    code, out, _ = call(["dump"])
    assert out.splitlines()[1] == "5.0000,0.0000,0.0000"
    code, out, _ = call(["dump", "--decimals", "2"])
    assert out.splitlines()[1] == "5.00,0.00,0.00"


def test_config_file(tmp_path):
    cfg = tmp_path / "job.cfg"
    cfg.write_text("# job\ncutter-dia = 4\nbore_radius=6\npitch=1\nlength=3\ntolerance=0.01\ncrlf=yes\n")
    out_nc = tmp_path / "c.nc"
    code, out, err = call(["generate", "--config", str(cfg), "--tolerance", "0.05", "-o", str(out_nc)])
    assert code == 0, err
    data = out_nc.read_bytes()
    assert b"\r\n" in data
    from helixforge import HelixSpec, helix_points
    assert data.count(b"\r\n") == len(helix_points(HelixSpec(4, 0, 0, 6, 1, 3, 0.05))) + 8


def test_config_errors(tmp_path):
    cfg = tmp_path / "bad.cfg"
    cfg.write_text("colour = red\n")
    code, _, err = call(["generate", "--config", str(cfg)])
    assert code != 0 and "unknown key" in err


def test_usage_error():
    code, _, _ = call(["frobnicate"])
    assert code == 2


def test_cutter_too_large():
    code, _, err = call(["generate", "--cutter-dia", "30", "-o", "unused.nc"])
    assert code != 0 and "CutterTooLarge" in err


def test_io_failure(tmp_path):
    code, _, err = call(["generate", "-o", str(tmp_path / "no" / "such" / "x.nc")])
    assert code != 0 and "IoFailure" in err


def test_module_entry_point(tmp_path):
    proc = subprocess.run([sys.executable, "-m", "helixforge", "count", "--radius", "25", "--tolerance", "0.0005"],
                          capture_output=True, text=True, cwd=tmp_path)
    assert proc.returncode == 0
    assert "The number of points is 497" in proc.stdout
