import json

from click.testing import CliRunner

from helpers import beads_workspace
from zigzagcat import workspace as ws
from zigzagcat.cli import main


def write_workspace(tmp_path, w=None, name="work.json"):
    path = tmp_path / name
    path.write_bytes(ws.save(w if w is not None else beads_workspace()))
    return path


def run(*args):
    return CliRunner().invoke(main, [str(a) for a in args])


class TestValidate:
    def test_ok(self, tmp_path):
        path = write_workspace(tmp_path)
        result = run("validate", "--workspace", path)
        assert result.exit_code == 0
        assert result.output.startswith("ok ")

    def test_missing_file(self, tmp_path):
        result = run("validate", "--workspace", tmp_path / "nope.json")
        assert result.exit_code == 2

    def test_corrupt_file(self, tmp_path):
        path = tmp_path / "bad.json"
        path.write_bytes(b"{not json")
        result = run("validate", "--workspace", path)
        assert result.exit_code == 2


class TestContract:
    def test_success_rewrites_workspace(self, tmp_path):
        path = write_workspace(tmp_path)
        result = run(
            "contract", "--workspace", path, "beads", "--path", "-",
            "--window", "0..2",
        )
        assert result.exit_code == 0, result.output
        after = ws.load(path.read_bytes())
        assert after.diagrams["beads"].payload.length == 1
        assert len(after.log) == 1

    def test_colimit_failure_is_exit_one(self, tmp_path):
        path = write_workspace(tmp_path)
        result = run(
            "contract", "--workspace", path, "opposed", "--path", "-",
            "--window", "0..2",
        )
        assert result.exit_code == 1
        assert "DeltaColimitFailed" in result.output

    def test_bias_resolves_it(self, tmp_path):
        path = write_workspace(tmp_path)
        result = run(
            "contract", "--workspace", path, "opposed", "--path", "-",
            "--window", "0..2", "--bias", "lower",
        )
        assert result.exit_code == 0, result.output

    def test_bad_window_is_exit_two(self, tmp_path):
        path = write_workspace(tmp_path)
        result = run(
            "contract", "--workspace", path, "beads", "--window", "zero",
        )
        assert result.exit_code == 2

    def test_unknown_diagram(self, tmp_path):
        path = write_workspace(tmp_path)
        result = run(
            "contract", "--workspace", path, "ghost", "--window", "0..2",
        )
        assert result.exit_code == 2


class TestExpand:
    def test_round_trip(self, tmp_path):
        path = write_workspace(tmp_path)
        before = ws.state_hash(ws.load(path.read_bytes()))
        assert run(
            "contract", "--workspace", path, "beads", "--window", "0..2"
        ).exit_code == 0
        result = run(
            "expand", "--workspace", path, "beads", "--height", "0",
            "--split", "0/1", "--first", "lower",
        )
        assert result.exit_code == 0, result.output
        after = ws.load(path.read_bytes())
        assert ws.state_hash(after) == before
        assert len(after.log) == 2
        assert after.diagrams["beads"] == beads_workspace().diagrams["beads"]


class TestReplayCommand:
    def test_replay_script(self, tmp_path):
        path = write_workspace(tmp_path)
        script = tmp_path / "proof.zz"
        script.write_text(
            "contract beads --path - --window 0..2\n"
            "assert length beads 1\n"
        )
        result = run("replay", "--workspace", path, script)
        assert result.exit_code == 0, result.output
        assert ws.load(path.read_bytes()).diagrams["beads"].payload.length == 1

    def test_failing_line_reported(self, tmp_path):
        path = write_workspace(tmp_path)
        script = tmp_path / "proof.zz"
        script.write_text("assert length beads 2\nassert length beads 99\n")
        result = run("replay", "--workspace", path, script)
        assert result.exit_code == 1
        assert "line 2" in result.output

    def test_fresh_workspace_from_script(self, tmp_path):
        (tmp_path / "pt.json").write_text(
            json.dumps({"dimension": 0, "payload": "region"})
        )
        script = tmp_path / "build.zz"
        script.write_text(
            "signature add region 0\n"
            "signature add wire 1\n"
            "diagram literal pt pt.json\n"
            "diagram cone w wire pt pt\n"
        )
        out = tmp_path / "built.json"
        result = run("replay", "--workspace", out, script)
        assert result.exit_code == 0, result.output
        assert "w" in ws.load(out.read_bytes()).diagrams


class TestSliceAndRender:
    def test_slice_prints_text(self, tmp_path):
        path = write_workspace(tmp_path)
        result = run("slice", "--workspace", path, "beads", "--path", "-")
        assert result.exit_code == 0
        assert "vertex(bead)" in result.output

    def test_slice_of_one_height(self, tmp_path):
        path = write_workspace(tmp_path)
        result = run("slice", "--workspace", path, "beads", "--path", "s0")
        assert result.exit_code == 0
        assert "bead" in result.output
        assert len(result.output.splitlines()) == 5

    def test_render_writes_svg(self, tmp_path):
        path = write_workspace(tmp_path)
        out = tmp_path / "beads.svg"
        result = run("render", "--workspace", path, "beads", "--out", out)
        assert result.exit_code == 0
        assert out.read_bytes().startswith(b'<?xml version="1.0"')

    def test_render_twice_is_identical(self, tmp_path):
        path = write_workspace(tmp_path)
        a, b = tmp_path / "a.svg", tmp_path / "b.svg"
        run("render", "--workspace", path, "beads", "--out", a)
        run("render", "--workspace", path, "beads", "--out", b)
        assert a.read_bytes() == b.read_bytes()


class TestOracleCheck:
    def test_small_sweep_passes(self, tmp_path):
        result = run("oracle-check", "--max-size", "2")
        assert result.exit_code == 0, result.output
        assert "agree with the oracle" in result.output

    def test_with_workspace_log(self, tmp_path):
        path = write_workspace(tmp_path)
        run("contract", "--workspace", path, "beads", "--window", "0..2")
        result = run("oracle-check", "--max-size", "1", "--workspace", path)
        assert result.exit_code == 0, result.output
        assert "replays to its hashes" in result.output
