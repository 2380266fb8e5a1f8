"""Tests for the command-line surface."""

import json

import pytest

from app.main import build_parser, run
from app.models.schemas import ExitCode, FailureCertificate, OrientationPolicy, RunConfig, StartPolicy
from app.services.generators import gadget_hexagon_triangles, gen_random_g6
from app.services.graph_io import dump_graph
from app.services.hunt import hunt
from tests.conftest import K4_ROTATION, cycle_graph


@pytest.fixture
def write_graph(tmp_path):
    def _write(g, name="graph.json"):
        path = tmp_path / name
        path.write_text(dump_graph(g))
        return str(path)
    return _write


class TestValidate:
    """Tests for `spiralcolor validate`."""

    def test_gadget(self, write_graph, capsys):
        """Test a G6 member."""
        code = run(["validate", "--input", write_graph(gadget_hexagon_triangles().graph)])
        out = capsys.readouterr().out
        assert code == ExitCode.OK
        assert "G6: yes" in out
        assert "faces: 8" in out

    def test_c4(self, write_graph, capsys):
        """Test a 4-cycle lists the offending cycle."""
        code = run(["validate", "--input", write_graph(cycle_graph(4))])
        out = capsys.readouterr().out
        assert code == ExitCode.NOT_G6
        assert "0 1 2 3" in out

    def test_strict(self, write_graph, capsys):
        """Test strict mode rejects the gadget's hexagon."""
        code = run(["validate", "--strict-g6", "--input", write_graph(gadget_hexagon_triangles().graph)])
        assert code == ExitCode.NOT_G6

    def test_invalid_embedding(self, tmp_path, capsys):
        """Test an embedding that fails the Euler check."""
        path = tmp_path / "k5.json"
        rotation = [[w for w in range(5) if w != v] for v in range(5)]
        path.write_text(json.dumps({"n": 5, "rotation": rotation, "outer_face": [0, 1, 2]}))
        code = run(["validate", "--input", str(path)])
        assert code == ExitCode.NOT_G6
        assert "Euler" in capsys.readouterr().out

    def test_malformed(self, tmp_path, capsys):
        """Test a file that is not JSON."""
        path = tmp_path / "bad.json"
        path.write_text("not json")
        assert run(["validate", "--input", str(path)]) == ExitCode.MALFORMED_INPUT


class TestColorCommand:
    """Tests for `spiralcolor color`."""

    def test_gadget_outcome(self, write_graph, capsys):
        """Test the printed outcome JSON."""
        code = run(["color", "--input", write_graph(gadget_hexagon_triangles().graph)])
        data = json.loads(capsys.readouterr().out)
        assert code == ExitCode.OK
        assert data["status"] == "success"
        assert data["counts"] == [3, 3, 6]
        assert "trace" not in data

    def test_trace_flag(self, write_graph, capsys):
        """Test --trace includes the trace."""
        run(["color", "--trace", "--input", write_graph(cycle_graph(7))])
        data = json.loads(capsys.readouterr().out)
        assert len(data["trace"]) == 7

    def test_failure_exit_code(self, write_graph, capsys):
        """Test a heuristic failure on a G6 member exits with 3 and carries a certificate."""
        code = run(["color", "--input", write_graph(gen_random_g6(11, 0.6, 8).graph)])
        data = json.loads(capsys.readouterr().out)
        assert code == ExitCode.COLORING_FAILURE
        assert data["status"] == "failure"
        assert data["certificate"] is not None

    def test_k4_is_rejected_before_coloring(self, tmp_path, capsys):
        """Test a graph with 4-cycles exits with 1 instead of counting as a heuristic failure."""
        path = tmp_path / "k4.json"
        path.write_text(json.dumps({"n": 4, "rotation": K4_ROTATION, "outer_face": [0, 1, 2]}))
        code = run(["color", "--input", str(path)])
        captured = capsys.readouterr()
        assert code == ExitCode.NOT_G6
        assert captured.out == ""
        assert "not in G6" in captured.err

    def test_c4_is_rejected(self, write_graph, capsys):
        """Test a 4-cycle is not colored and its cycle is listed."""
        code = run(["color", "--input", write_graph(cycle_graph(4))])
        captured = capsys.readouterr()
        assert code == ExitCode.NOT_G6
        assert captured.out == ""
        assert "0 1 2 3" in captured.err

    def test_strict_rejects_hexagon(self, write_graph, capsys):
        """Test --strict-g6 refuses the gadget's 6-cycle."""
        path = write_graph(gadget_hexagon_triangles().graph)
        assert run(["color", "--input", path]) == ExitCode.OK
        capsys.readouterr()
        assert run(["color", "--strict-g6", "--input", path]) == ExitCode.NOT_G6

    def test_replay_from_seed(self, capsys):
        """Test regenerating an instance from its seed is deterministic."""
        run(["color", "--seed", "7", "--n", "40"])
        first = capsys.readouterr().out
        run(["color", "--seed", "7", "--n", "40"])
        assert capsys.readouterr().out == first

    def test_replay_hunt_failure(self, capsys):
        """Test a recorded hunt failure replays to the identical certificate."""
        config = RunConfig(n=11, attach_probabilities=[0.6], seed_count=20,
                           start_policy=StartPolicy.ALL_OUTER, orientations=OrientationPolicy.BOTH)
        _, records = hunt(config)
        failed = [r for r in records if r.certificate is not None]
        assert failed
        for record in failed[:5]:
            p = config.params_for(record.seed)
            code = run(["color", "--seed", str(record.seed), "--n", str(p.n),
                        "--attach-probability", str(p.attach_probability),
                        "--start", str(record.start), "--orientation", record.orientation.value])
            data = json.loads(capsys.readouterr().out)
            assert code == ExitCode.COLORING_FAILURE
            assert FailureCertificate.model_validate(data["certificate"]) == record.certificate
            assert data["graph_hash"] == record.graph_hash

    def test_bad_start(self, write_graph, capsys):
        """Test a start vertex off the outer face."""
        path = write_graph(cycle_graph(5))
        assert run(["color", "--input", path, "--start", "9"]) == ExitCode.NOT_G6


class TestOtherCommands:
    """Tests for decompose, verify, oracle, gen, hunt, bench and export-dot."""

    def test_decompose(self, write_graph, capsys):
        """Test the decomposition JSON."""
        run(["decompose", "--input", write_graph(cycle_graph(6))])
        data = json.loads(capsys.readouterr().out)
        assert data == {"start": 0, "orientation": "cw", "chains": [[0, 1, 2, 3, 4, 5]]}

    def test_verify_outcome_file(self, write_graph, tmp_path, capsys):
        """Test verifying a saved outcome."""
        graph = write_graph(cycle_graph(7))
        outcome = tmp_path / "outcome.json"
        run(["color", "--input", graph, "--output", str(outcome)])
        assert run(["verify", "--input", graph, "--coloring", str(outcome)]) == ExitCode.OK
        assert "proper" in capsys.readouterr().out

    def test_verify_improper_list(self, write_graph, tmp_path, capsys):
        """Test a plain color list with a conflict."""
        coloring = tmp_path / "colors.json"
        coloring.write_text("[1, 1, 2, 1, 2, 3]")
        code = run(["verify", "--input", write_graph(cycle_graph(6)), "--coloring", str(coloring)])
        assert code == ExitCode.COLORING_FAILURE

    def test_oracle(self, write_graph, capsys):
        """Test the oracle verdict JSON."""
        run(["oracle", "--input", write_graph(cycle_graph(7))])
        assert json.loads(capsys.readouterr().out)["status"] == "colorable"

    def test_gen_is_byte_identical(self, capsys):
        """Test instance generation is reproducible."""
        run(["gen", "--seed", "3", "--n", "25"])
        first = capsys.readouterr().out
        run(["gen", "--seed", "3", "--n", "25"])
        assert capsys.readouterr().out == first
        assert json.loads(first)["n"] == 25

    def test_gen_corpus(self, tmp_path, capsys):
        """Test writing a corpus directory."""
        assert run(["gen", "--count", "3", "--n", "10", "--output", str(tmp_path / "c")]) == ExitCode.OK
        assert (tmp_path / "c" / "manifest.json").exists()

    def test_hunt_ndjson(self, capsys):
        """Test the hunt prints records then a summary."""
        code = run(["hunt", "--generator", "hexagon_triangles", "--count", "1"])
        lines = capsys.readouterr().out.strip().splitlines()
        assert code == ExitCode.OK
        assert json.loads(lines[0])["category"] == "consistent_success"
        assert json.loads(lines[-1])["consistent_successes"] == 1

    def test_bench_empty_sizes(self, capsys):
        """Test bench with no sizes."""
        assert run(["bench", "--sizes"]) == ExitCode.MALFORMED_INPUT

    def test_export_dot(self, capsys):
        """Test DOT output for the hub gadget."""
        assert run(["export-dot", "--generator", "three_triangles_hub"]) == ExitCode.OK
        assert capsys.readouterr().out.startswith("graph G {")

    def test_export_dot_rejects_non_g6(self, write_graph, capsys):
        """Test export-dot refuses a graph with a 4-cycle."""
        assert run(["export-dot", "--input", write_graph(cycle_graph(4))]) == ExitCode.NOT_G6
        assert capsys.readouterr().out == ""

    def test_hunt_ndjson_file(self, tmp_path, capsys):
        """Test the NDJSON file holds every record in order, then the summary."""
        path = tmp_path / "hunt" / "records.ndjson"
        code = run(["hunt", "--n", "15", "--count", "4", "--orientation", "both", "--output", str(path)])
        lines = [json.loads(line) for line in path.read_text().splitlines()]
        assert code == ExitCode.OK
        assert capsys.readouterr().out == ""
        assert len(lines) == 9
        assert [(r["seed"], r["orientation"]) for r in lines[:-1]] == [
            (s, o) for s in range(4) for o in ("ccw", "cw")
        ]
        assert lines[-1]["runs"] == 8

    def test_bench_reports_spread(self, capsys):
        """Test the bench table carries a standard deviation column."""
        assert run(["bench", "--sizes", "20", "--repeats", "2"]) == ExitCode.OK
        out = capsys.readouterr().out
        assert "stdev s" in out
        assert "exponent: n/a" in out

    def test_invalid_hunt_parameters(self, capsys):
        """Test a config rejected by validation."""
        assert run(["hunt", "--workers", "0"]) == ExitCode.MALFORMED_INPUT

    def test_parser_requires_command(self):
        """Test that a subcommand is mandatory."""
        with pytest.raises(SystemExit):
            build_parser().parse_args([])
