import json
import subprocess
import sys

import pytest

from chargediff.cli import main

STAR_TEXT = "\n".join(f"0 {i}" for i in range(1, 11)) + "\n"
TRIANGLE_TEXT = "0 1\n1 2\n2 0\n"


@pytest.fixture
def star_file(tmp_path):
    path = tmp_path / "star.edges"
    path.write_text(STAR_TEXT)
    return str(path)


@pytest.fixture
def triangle_file(tmp_path):
    path = tmp_path / "triangle.edges"
    path.write_text(TRIANGLE_TEXT)
    return str(path)


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_knn_star(capsys, star_file):
    code, out, err = run_cli(
        capsys, "knn", "--graph", star_file, "--seed", "0",
        "--alpha", "0.5", "--epsilon", "0.1", "--k", "3",
    )
    assert code == 0
    doc = json.loads(out)
    assert doc["result"]["iterations"] == 4
    assert doc["result"]["terminated"] is True
    assert doc["result"]["nn_set"] == [0]
    assert doc["result"]["touched"] == 11
    top = doc["result"]["top"]
    assert [entry["node"] for entry in top] == [1, 2, 3]
    assert all(entry["charge"] == pytest.approx(0.09375, abs=1e-12) for entry in top)
    assert doc["config"]["epsilon"] == 0.1
    assert "relabeling" not in doc


def test_knn_missing_file_exits_2(capsys, tmp_path):
    missing = str(tmp_path / "nope.edges")
    code, _, err = run_cli(capsys, "knn", "--graph", missing, "--seed", "0")
    assert code == 2
    assert "nope.edges" in err


def test_knn_parse_error_exits_2(capsys, tmp_path):
    bad = tmp_path / "bad.edges"
    bad.write_text("0 1\nnot an edge line\n")
    code, _, err = run_cli(capsys, "knn", "--graph", str(bad), "--seed", "0")
    assert code == 2
    assert "line 2" in err


def test_knn_bad_epsilon_exits_1(capsys, star_file):
    code, _, err = run_cli(
        capsys, "knn", "--graph", star_file, "--seed", "0", "--epsilon", "0"
    )
    assert code == 1
    assert "epsilon" in err


def test_knn_unknown_seed_exits_1(capsys, star_file):
    code, _, err = run_cli(capsys, "knn", "--graph", star_file, "--seed", "99")
    assert code == 1
    assert "99" in err


def test_usage_error_exits_1(capsys, star_file):
    code, _, _ = run_cli(capsys, "knn", "--graph", star_file)  # seed missing
    assert code == 1


def test_knn_triangle_warns_and_reports_cap(capsys, triangle_file):
    code, out, err = run_cli(
        capsys, "knn", "--graph", triangle_file, "--seed", "0",
        "--epsilon", "0.2", "--max-iters", "500",
    )
    assert code == 0
    doc = json.loads(out)
    assert doc["result"]["terminated"] is False
    assert "cannot terminate" in err
    assert "iteration cap" in err


def test_knn_output_is_deterministic(capsys, star_file):
    args = ("knn", "--graph", star_file, "--seed", "0", "--epsilon", "0.1", "--k", "5")
    _, first, _ = run_cli(capsys, *args)
    _, second, _ = run_cli(capsys, *args)
    assert first == second


def test_knn_tsv_format(capsys, star_file):
    code, out, _ = run_cli(
        capsys, "knn", "--graph", star_file, "--seed", "0",
        "--epsilon", "0.1", "--k", "2", "--format", "tsv",
    )
    assert code == 0
    lines = out.strip().splitlines()
    assert any(line.startswith("# alpha=0.5") for line in lines)
    header_idx = lines.index("rank\tnode\tcharge")
    assert lines[header_idx + 1].startswith("1\t1\t")
    assert lines[header_idx + 2].startswith("2\t2\t")


def test_knn_sparse_labels_round_trip(capsys, tmp_path):
    path = tmp_path / "sparse.edges"
    path.write_text("10 20\n20 30\n")
    code, out, _ = run_cli(
        capsys, "knn", "--graph", str(path), "--seed", "20",
        "--epsilon", "0.4", "--k", "2", "--max-iters", "100",
    )
    assert code == 0
    doc = json.loads(out)
    assert doc["relabeling"] == {"10": 0, "20": 1, "30": 2}
    assert set(entry["node"] for entry in doc["result"]["top"]) <= {10, 20, 30}


def test_simulate_star(capsys, star_file):
    code, out, _ = run_cli(
        capsys, "simulate", "--graph", star_file, "--seed", "0", "--epsilon", "0.1"
    )
    assert code == 0
    doc = json.loads(out)
    assert doc["centralized_match"] is True
    assert doc["totals"] == {"rounds": 4, "messages": 40}
    assert [row["messages"] for row in doc["rounds"]] == [10, 10, 10, 10]
    assert doc["complexity"]["total_messages"] == 40
    assert doc["complexity"]["violations"] == []


def test_simulate_stuck_seed_notes(capsys, tmp_path):
    path = tmp_path / "arc.edges"
    path.write_text("0 1\n")
    code, out, _ = run_cli(
        capsys, "simulate", "--graph", str(path), "--directed", "--seed", "1",
        "--epsilon", "0.1",
    )
    assert code == 0
    doc = json.loads(out)
    assert doc["rounds"] == []
    assert "no out-edges" in doc["note"]


def test_simulate_lazy_rows(capsys, triangle_file):
    code, out, _ = run_cli(
        capsys, "simulate", "--graph", triangle_file, "--seed", "0",
        "--variant", "lazy", "--max-iters", "5", "--format", "tsv",
    )
    assert code == 0
    lines = out.strip().splitlines()
    data = [line for line in lines if line and line[0].isdigit()]
    assert len(data) == 5
    assert all(line.split("\t")[1] == "6" for line in data)  # 2|E| = 6


def test_bounds_reference_values(capsys, tmp_path):
    path = tmp_path / "star20.edges"
    path.write_text("\n".join(f"0 {i}" for i in range(1, 21)) + "\n")
    code, out, _ = run_cli(
        capsys, "bounds", "--graph", str(path), "--alpha", "0.5", "--epsilon", "0.01"
    )
    assert code == 0
    doc = json.loads(out)
    assert doc["graph"]["max_degree"] == 20
    assert doc["bounds"]["max_core_size"] == 200
    assert doc["bounds"]["max_touched"] == 4000
    assert doc["bounds"]["max_iterations_bound"] == pytest.approx(796000, rel=1e-9)


def test_bounds_high_alpha(capsys, star_file):
    code, out, _ = run_cli(
        capsys, "bounds", "--graph", star_file, "--alpha", "0.9", "--epsilon", "0.1"
    )
    assert code == 0
    assert json.loads(out)["bounds"]["max_core_size"] == 100


def test_bounds_zero_epsilon_exits_1(capsys, star_file):
    code, _, _ = run_cli(capsys, "bounds", "--graph", star_file, "--epsilon", "0")
    assert code == 1


def test_compare_star(capsys, star_file):
    code, out, _ = run_cli(
        capsys, "compare", "--graph", star_file, "--seed", "0",
        "--epsilon", "0.1", "--k", "5", "--teleport", "0.2",
    )
    assert code == 0
    doc = json.loads(out)
    assert doc["ppr_converged"] is True
    assert 0.0 <= doc["overlap"] <= 1.0
    assert len(doc["diffusion_top"]) == 5
    assert len(doc["pagerank_top"]) == 5


def test_compare_notes_when_k_exceeds_touched(capsys, star_file):
    code, out, _ = run_cli(
        capsys, "compare", "--graph", star_file, "--seed", "0",
        "--epsilon", "0.1", "--k", "50",
    )
    assert code == 0
    doc = json.loads(out)
    assert doc["effective_k"] < 50
    assert "exceeds available" in doc["note"]


def test_compare_two_clique_locality(capsys, tmp_path):
    lines = []
    for base in (0, 10):
        for i in range(10):
            for j in range(i + 1, 10):
                lines.append(f"{base + i} {base + j}")
    lines.append("9 10")
    path = tmp_path / "cliques.edges"
    path.write_text("\n".join(lines) + "\n")
    code, out, _ = run_cli(
        capsys, "compare", "--graph", str(path), "--seed", "0",
        "--epsilon", "0.095", "--k", "8",
    )
    assert code == 0
    doc = json.loads(out)
    assert all(node < 10 for node in doc["diffusion_top"])


def test_module_entry_point_runs(star_file):
    proc = subprocess.run(
        [sys.executable, "-m", "chargediff", "knn", "--graph", star_file,
         "--seed", "0", "--epsilon", "0.1", "--k", "3"],
        capture_output=True, text=True,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["result"]["iterations"] == 4
