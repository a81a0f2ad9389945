import json
import subprocess
import sys
import xml.etree.ElementTree as ET

import pytest

from genconchoid import UnknownPreset
from genconchoid.cli import PRESETS, build_parser, presets, run

ARC_ARGS = ["arc", "--focus", "0,0", "--center", "5,10", "--radius", "6", "--theta", "0:9/8*pi", "--offset", "l + 1/l", "--m", "180"]
NICOMEDES_ARGS = ["line", "--focus", "0,0", "--line-y", "1", "--x-range", "-3:3", "--offset", "2", "--m", "180"]


def test_arc_json(tmp_path):
    out = tmp_path / "out.json"
    assert run(ARC_ARGS + ["--json", str(out)]) == 0
    last = json.loads(out.read_text())["samples"][-1]
    assert last["k"] == 1.0
    assert last["p"] == pytest.approx([-0.543, 7.704], abs=1e-3)


def test_nicomedes_svg(tmp_path):
    out = tmp_path / "nicomedes.svg"
    assert run(NICOMEDES_ARGS + ["--svg", str(out)]) == 0
    ET.parse(out)


def test_endpoint_form(tmp_path, capsys):
    args = ["line", "--focus", "0,0", "--n0", "-3,0", "--s", "0,3/2", "--offset", "l + sin(l)", "--m", "18"]
    out = tmp_path / "t.csv"
    assert run(args + ["--csv", str(out), "--print-summary"]) == 0
    assert "samples: 18" in capsys.readouterr().out
    assert out.read_text().count("\n") == 19


def test_malformed_offset_exits_2(capsys):
    code = run(["line", "--offset", "sin(", "--focus", "0,0", "--line-y", "1", "--x-range", "-3:3", "--print-summary"])
    assert code == 2
    assert "position 4" in capsys.readouterr().err


@pytest.mark.parametrize(
    "argv",
    [
        NICOMEDES_ARGS,  # no output requested
        NICOMEDES_ARGS + ["--print-summary", "--bogus"],
        NICOMEDES_ARGS + ["--print-summary", "--m", "1"],
        ["line", "--focus", "0,0", "--line-y", "1", "--offset", "2", "--print-summary"],
        ["line", "--focus", "0,0", "--n0", "1,1", "--line-y", "1", "--x-range", "0:1", "--offset", "2", "--print-summary"],
        ["arc", "--focus", "0,0", "--center", "0,0", "--radius", "l", "--theta", "0:1", "--offset", "2", "--print-summary"],
        ["arc", "--focus", "0;0", "--center", "0,0", "--radius", "1", "--theta", "0:1", "--offset", "2", "--print-summary"],
        ["presets"],
        ["presets", "bogus", "--print-summary"],
        ["circle"],
        [],
    ],
)
def test_usage_errors_exit_2(argv):
    assert run(argv) == 2


@pytest.mark.parametrize(
    "argv",
    [
        ["line", "--focus", "0,0", "--n0", "1,1", "--s", "1,1", "--offset", "2", "--print-summary"],
        ["arc", "--focus", "0,0", "--center", "0,0", "--radius", "-1", "--theta", "0:1", "--offset", "2", "--print-summary"],
        ["arc", "--focus", "0,0", "--center", "0,0", "--radius", "1", "--theta", "0:1", "--offset", "ln(l-50)", "--print-summary"],
    ],
)
def test_construction_errors_exit_3(argv, capsys):
    assert run(argv) == 3
    assert "construction failed" in capsys.readouterr().err


def test_unwritable_output_exits_1(tmp_path):
    assert run(NICOMEDES_ARGS + ["--csv", str(tmp_path / "missing" / "x.csv")]) == 1


def test_presets_registry():
    assert set(PRESETS) == {"nicomedes", "limacon", "line-linear", "line-sin", "line-ln", "circ-linear", "circ-sin", "circ-ln"}
    lim = presets("limacon")
    assert lim.subcommand == "arc"
    assert lim.flags == {"focus": "0,0", "center": "0,113/100", "radius": "80/100", "theta": "0:2*pi", "offset": "136/100", "m": "180"}
    nic = presets("nicomedes")
    assert nic.flags["line-y"] == "1" and nic.flags["x-range"] == "-3:3" and nic.flags["offset"] == "2"
    with pytest.raises(UnknownPreset):
        presets("bogus")


def test_presets_list(capsys):
    assert run(["presets", "--list"]) == 0
    out = capsys.readouterr().out
    assert all(name in out for name in PRESETS)


def test_preset_run_matches_explicit_flags(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert run(["presets", "nicomedes", "--json", str(a)]) == 0
    assert run(NICOMEDES_ARGS + ["--json", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()


def test_deterministic_outputs(tmp_path):
    files = []
    for tag in "ab":
        paths = [tmp_path / f"{tag}.{ext}" for ext in ("csv", "svg", "json")]
        assert run(ARC_ARGS + ["--csv", str(paths[0]), "--svg", str(paths[1]), "--json", str(paths[2])]) == 0
        files.append([p.read_bytes() for p in paths])
    assert files[0] == files[1]


def test_help_documents_every_flag(capsys):
    parser = build_parser()
    for sub in ("line", "arc", "presets"):
        assert run([sub, "--help"]) == 0
        text = capsys.readouterr().out
        sp = parser._subparsers._group_actions[0].choices[sub]
        for action in sp._actions:
            for opt in action.option_strings:
                assert opt in text


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "genconchoid", "--help"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert "presets" in proc.stdout
