"""Command-line front end: artifacts, exit codes, determinism."""

import json

import pytest

from colorreduce import MULTISET, build_local1, view_to_json
from colorreduce.bounds import random_independent_sets
from colorreduce.cli import main


def run_cli(args, capsys):
    code = main(args)
    out = capsys.readouterr().out.strip().splitlines()
    return code, json.loads(out[-1]) if out else None


def test_bound_subcommand(tmp_path, capsys):
    code, out = run_cli(["bound", "--delta", "1024", "--C", "1", "--eta", "0",
                         "--out", str(tmp_path)], capsys)
    assert code == 0
    assert out["rounds"] == 4
    assert (tmp_path / "bound.json").exists()


def test_build_subcommand(tmp_path, capsys):
    code, out = run_cli(["build", "--family", "nh1", "--m", "3", "--d", "2",
                         "--variant", "multiset", "--out", str(tmp_path)], capsys)
    assert code == 0
    assert out["vertices"] == 18
    data = json.loads((tmp_path / "graph.json").read_text())
    assert len(data["vertices"]) == 18


def test_color_delta1_and_determinism(tmp_path, capsys):
    args = ["color", "--algo", "delta1", "--m", "1000", "--delta", "4",
            "--n", "40", "--seed", "7"]
    code, out = run_cli(args + ["--out", str(tmp_path / "a")], capsys)
    assert code == 0
    assert out["proper"] is True and out["palette"] <= 5
    code2, _ = run_cli(args + ["--out", str(tmp_path / "b")], capsys)
    assert code2 == 0
    for name in ("assignment.json", "instance.json", "palettes.csv"):
        assert (tmp_path / "a" / name).read_bytes() == (tmp_path / "b" / name).read_bytes()


def test_kw_too_small_palette_is_usage_error(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["color", "--algo", "kw", "--m", "3", "--delta", "4", "--n", "5"])
    assert exc.value.code == 2


def test_missing_instance_is_usage_error(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["color", "--algo", "kw", "--m", "9", "--delta", "2"])
    assert exc.value.code == 2


def test_chi_subcommand_k_query(tmp_path, capsys):
    code, out = run_cli(["chi", "--family", "nh1", "--m", "5", "--d", "3",
                         "--k", "2", "--out", str(tmp_path)], capsys)
    assert code == 0
    assert out["status"] == "no"


def test_chi_export(tmp_path, capsys):
    col = tmp_path / "h.col"
    code, _ = run_cli(["chi", "--family", "nh1", "--m", "4", "--d", "2",
                       "--export", str(col), "--out", str(tmp_path)], capsys)
    assert code == 0
    assert col.exists() and (tmp_path / "chi.json").exists()


def test_refute_subcommand(tmp_path, capsys):
    host = build_local1(5, 3, MULTISET)
    classes = random_independent_sets(host, 2, seed=3)
    payload = [[view_to_json(v) for v in sorted(cls, key=lambda x: x.digest)]
               for cls in classes]
    classes_file = tmp_path / "classes.json"
    classes_file.write_text(json.dumps(payload))
    code, out = run_cli(["refute", "--family", "nh1", "--m", "5", "--d", "3",
                         "--classes", str(classes_file), "--out", str(tmp_path)], capsys)
    assert code == 0
    assert out["uncovered"]
    assert (tmp_path / "counterexample.json").exists()
    transcript = json.loads((tmp_path / "transcript.json").read_text())
    assert transcript["verified_absent_from_all_classes"] is True


def test_refute_recursive_family(tmp_path, capsys):
    from colorreduce import build_relaxed_levels
    from colorreduce.bounds import random_relaxed_class

    levels = build_relaxed_levels(0, 7, 4)
    classes = [random_relaxed_class(levels, 20, seed=s, bound=4) for s in range(4)]
    payload = [[view_to_json(v) for v in sorted(cls, key=lambda x: x.digest)]
               for cls in classes]
    classes_file = tmp_path / "classes.json"
    classes_file.write_text(json.dumps(payload))
    code, out = run_cli(["refute", "--family", "nt", "--m", "7", "--d", "4",
                         "--r", "1", "--variant", "set",
                         "--classes", str(classes_file), "--out", str(tmp_path)], capsys)
    assert code == 0
    assert out["uncovered"]["children"]


def test_refute_defective(tmp_path, capsys):
    from colorreduce.bounds import random_defective_classes

    (cls,) = random_defective_classes(32, 4, 1, count=1, seed=9)
    payload = [[view_to_json(v) for v in cls]]
    classes_file = tmp_path / "classes.json"
    classes_file.write_text(json.dumps(payload))
    code, out = run_cli(["refute", "--family", "nh1", "--m", "32", "--d", "4",
                         "--defect", "1", "--classes", str(classes_file),
                         "--out", str(tmp_path)], capsys)
    assert code == 0
    assert out["uncovered"]


def test_refute_domain_failure_exit_code(tmp_path, capsys):
    classes_file = tmp_path / "classes.json"
    classes_file.write_text(json.dumps([[], [], [], [], []]))  # c=5 > delta^2/4
    code = main(["refute", "--family", "nh1", "--m", "7", "--d", "4",
                 "--classes", str(classes_file), "--out", str(tmp_path)])
    assert code == 1


def test_verify_hom_subcommands(tmp_path, capsys):
    code, out = run_cli(["verify-hom", "--which", "h", "--r", "1", "--m", "3",
                         "--d", "2", "--out", str(tmp_path / "h")], capsys)
    assert code == 0 and out["verified"] is True
    assert out["missing_images"] == 0 and out["broken_edges"] == 0
    code, out = run_cli(["verify-hom", "--which", "f", "--r", "1", "--m", "3",
                         "--d", "1", "--out", str(tmp_path / "f")], capsys)
    assert code == 0 and out["verified"] is True


def test_color_loads_instance_from_file(tmp_path, capsys):
    from colorreduce import graph_to_json, random_colored_tree
    g = random_colored_tree(12, 3, 50, seed=4)
    gpath = tmp_path / "instance.json"
    gpath.write_text(json.dumps(graph_to_json(g)))
    code, out = run_cli(["color", "--algo", "delta1", "--m", "50", "--delta", "3",
                         "--graph", str(gpath), "--out", str(tmp_path / "run")], capsys)
    assert code == 0 and out["proper"] is True
    saved = json.loads((tmp_path / "run" / "instance.json").read_text())
    assert saved == graph_to_json(g)


def test_simulate_full_info_with_trace(tmp_path, capsys):
    code, out = run_cli(["simulate", "--algo", "full-info", "--rounds", "2",
                         "--m", "6", "--delta", "3", "--n", "8", "--seed", "2",
                         "--trace", "--out", str(tmp_path)], capsys)
    assert code == 0
    trace = (tmp_path / "trace.jsonl").read_text().splitlines()
    assert len(trace) == 2 * 8  # one record per (round, node)
    record = json.loads(trace[0])
    assert set(record) == {"round", "node", "state", "sent", "received"}
