"""cli_reporting: pipeline composition, file formats, exit codes, determinism."""

import json
import subprocess
import sys

import pytest

from rsdmap import QubitHamiltonian, total_pauli_weight
from rsdmap.cli import main


def run_cli(args):
    """Invoke main() in-process; returns (exit_code, captured stdout)."""
    import contextlib
    import io

    buf = io.StringIO()
    with contextlib.redirect_stdout(buf):
        try:
            code = main(args)
        except SystemExit as exc:  # argparse usage errors
            code = exc.code
    return code, buf.getvalue()


def test_full_pipeline(tmp_path):
    fermion = tmp_path / "chain.json"
    mapped = tmp_path / "jw.json"
    optimized = tmp_path / "opt.json"

    code, out = run_cli(["build", "--model", "chain", "--sites", "6", "--range", "1",
                         "--out", str(fermion)])
    assert code == 0 and "10 terms" in out

    code, out = run_cli(["map", str(fermion), "--mapper", "jw", "--out", str(mapped)])
    assert code == 0
    assert "pw     20" in out

    code, out = run_cli([
        "optimize", str(mapped), "--out", str(optimized),
        "--width", "3", "--depth", "3", "--iters", "300", "--cost", "pw",
        "--seed", "7",
    ])
    assert code == 0

    h_opt = QubitHamiltonian.load(optimized)
    assert total_pauli_weight(h_opt) < 20

    code, out = run_cli(["metrics", str(optimized)])
    assert code == 0 and "terms  10" in out

    code, out = run_cli(["compare", str(optimized), str(mapped)])
    assert code == 0 and "pr     0." in out

    manifest = json.loads((tmp_path / "opt.manifest.json").read_text())
    assert manifest["seed"] == 7
    assert manifest["metrics"]["initial"]["pw"] == 20
    assert manifest["metrics"]["final"]["pw"] == total_pauli_weight(h_opt)
    assert manifest["metrics"]["final"]["avg_pw"] == pytest.approx(
        total_pauli_weight(h_opt) / len(h_opt)
    )

    traj = (tmp_path / "opt.traj.csv").read_text().splitlines()
    assert traj[0] == "iter,cost_before,cost_after,accepted,gate_count,indices"
    assert len(traj) == 301


def test_rerun_is_byte_identical(tmp_path):
    fermion = tmp_path / "chain.json"
    mapped = tmp_path / "jw.json"
    run_cli(["build", "--model", "chain", "--sites", "6", "--range", "2", "--out", str(fermion)])
    run_cli(["map", str(fermion), "--mapper", "jw", "--out", str(mapped)])

    blobs = []
    for tag in ("a", "b"):
        out = tmp_path / f"opt_{tag}.json"
        code, _ = run_cli([
            "optimize", str(mapped), "--out", str(out),
            "--width", "3", "--depth", "2", "--iters", "100", "--seed", "42",
        ])
        assert code == 0
        blobs.append((
            out.read_bytes(),
            (tmp_path / f"opt_{tag}.gates.txt").read_bytes(),
            (tmp_path / f"opt_{tag}.traj.csv").read_bytes(),
        ))
    assert blobs[0] == blobs[1]


def test_build_validates_model(tmp_path):
    code, _ = run_cli(["build", "--model", "chain", "--sites", "2", "--range", "5",
                       "--out", str(tmp_path / "x.json")])
    assert code == 2


def test_hubbard_build_counts(tmp_path):
    out = tmp_path / "hub.json"
    code, text = run_cli(["build", "--model", "hubbard", "--sites", "2", "--out", str(out)])
    assert code == 0 and "8 modes, 20 terms" in text


def test_chain20_build_counts(tmp_path):
    out = tmp_path / "chain20.json"
    code, text = run_cli(["build", "--model", "chain", "--sites", "20", "--range", "1",
                          "--out", str(out)])
    assert code == 0 and "20 modes, 38 terms" in text
    code, text = run_cli(["build", "--model", "alltoall", "--sites", "20", "--out", str(out)])
    assert code == 0 and "380 terms" in text


def test_map_rejects_malformed_input(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{"n_modes": 2, "terms": [{"re": 1.0, "im": 0.0, "ops": [[7, 0]]}]}')
    code, _ = run_cli(["map", str(bad), "--mapper", "jw", "--out", str(tmp_path / "o.json")])
    assert code == 3


def test_map_rejects_non_hermitian(tmp_path):
    oneway = tmp_path / "oneway.json"
    oneway.write_text(
        '{"n_modes": 2, "terms": [{"re": 1.0, "im": 0.0, "ops": [[0, 1], [1, 0]]}]}'
    )
    code, _ = run_cli(["map", str(oneway), "--mapper", "jw", "--out", str(tmp_path / "o.json")])
    assert code == 4


def test_optimize_rejects_zero_iterations(tmp_path):
    mapped = tmp_path / "h.json"
    QubitHamiltonian(2, {"XX": 1.0}).save(mapped)
    code, _ = run_cli(["optimize", str(mapped), "--out", str(tmp_path / "o.json"),
                       "--iters", "0", "--width", "2", "--depth", "1"])
    assert code == 2


def test_optimize_rejects_width_over_n(tmp_path):
    mapped = tmp_path / "h.json"
    QubitHamiltonian(2, {"XX": 1.0}).save(mapped)
    code, _ = run_cli(["optimize", str(mapped), "--out", str(tmp_path / "o.json"),
                       "--iters", "5", "--width", "3", "--depth", "1"])
    assert code == 2


def test_compare_rejects_mismatched_sizes(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    QubitHamiltonian(2, {"XX": 1.0}).save(a)
    QubitHamiltonian(3, {"XXI": 1.0}).save(b)
    code, _ = run_cli(["compare", str(a), str(b)])
    assert code == 2


def test_compare_equal_files_gives_zero(tmp_path):
    a = tmp_path / "a.json"
    QubitHamiltonian(2, {"XX": 1.0}).save(a)
    code, out = run_cli(["compare", str(a), str(a)])
    assert code == 0
    assert "pr     0.000000" in out


def test_console_entry_point(tmp_path):
    out = tmp_path / "c.json"
    proc = subprocess.run(
        [sys.executable, "-m", "rsdmap", "build", "--model", "chain", "--sites", "3",
         "--range", "1", "--out", str(out)],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0, proc.stderr
    assert out.exists()


def test_usage_error_exit_code():
    code, _ = run_cli(["map"])  # missing required arguments
    assert code == 2
