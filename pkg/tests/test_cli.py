import json
import shutil
import subprocess
import sys

import pytest

from charpoly import ENGINE_VERSION
from charpoly.cache import Cache, cache_key, canonical_dumps, resolve_dir
from charpoly.cli import main


@pytest.fixture(autouse=True)
def _no_env_cache(monkeypatch):
    monkeypatch.delenv("CHARPOLY_CACHE", raising=False)


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, err = run(capsys, "--format", "json", *argv)
    assert code == 0, err
    return json.loads(out)


def test_ahat_table_output(capsys):
    code, out, _ = run(capsys, "ahat", "--lambda", "1")
    assert code == 0
    assert "a0_hat = -1" in out and "a1_hat = 1" in out


def test_ahat_json_schema(capsys, tmp_path):
    target = tmp_path / "out.json"
    data = run_json(capsys, "ahat", "--lambda", "2,1", "--json", str(target))
    assert data["lambda"] == [2, 1] and data["l0"] == 1 and data["l1"] == 1
    assert data["a0_hat"]["vars"] == ["n", "k"]
    assert {"coeff", "exps"} == set(data["a0_hat"]["terms"][0])
    assert set(data["verification"]) >= {"grid_points", "extra_points", "leading_coeffs"}
    assert json.loads(target.read_text()) == data


def test_eval(capsys):
    assert run(capsys, "eval", "--lambda", "1", "--n", "3", "--k", "2")[1].strip() == "2/3"
    data = run_json(capsys, "eval", "--lambda", "2,1", "--n", "30", "--k", "14")
    assert data["value"] == "195477030941/45920386512000"


def test_akpoly_count_roots(capsys):
    data = run_json(capsys, "akpoly", "--lambda", "2,1", "--k", "14", "--count-roots")
    assert data["roots"]["degree"] == 11
    assert data["roots"]["real_roots"] == 9
    assert data["roots"]["squarefree"] is True
    code, out, _ = run(capsys, "akpoly", "--lambda", "1", "--k", "1", "--count-roots")
    assert code == 0 and "identically zero" in out


def test_bj(capsys):
    code, out, _ = run(capsys, "bj", "--lambda", "1", "--j", "0")
    assert code == 0 and "k - 1" in out


def test_positivity(capsys):
    data = run_json(capsys, "positivity", "--lambda", "2,1", "--points", "30")
    assert data["status"] == "certified"
    assert data["t"] == 4
    assert data["revalidation"]["negative"] == []
    assert set(data) >= {"lambda", "t", "branch", "t_js", "finite_checks", "status"}


def test_scan(capsys):
    data = run_json(capsys, "scan", "--size", "3", "--kmax", "14")
    assert data["first_nonreal"] == {"lambda": [2, 1], "k": 14, "pairs": 1}
    assert data["bound_violations"] == 0


def test_expected(capsys):
    code, out, _ = run(capsys, "expected", "--stat", "m1^2+3*m2", "--n", "8", "--k", "3")
    assert code == 0 and out.strip() == "841/20"


def test_oracle_check(capsys):
    data = run_json(capsys, "oracle-check", "--lambda-max-size", "2", "--nmax", "5")
    assert data["ok"] is True


def test_ptau(capsys):
    code, out, _ = run(capsys, "ptau", "--rank", "0", "--mu", "2")
    assert code == 0 and "2*w + 2" in out


def test_global_flags_after_subcommand(capsys):
    data = json.loads(run(capsys, "eval", "--lambda", "1", "--n", "3", "--k", "2", "--format", "json")[1])
    assert data["value"] == "2/3"


@pytest.mark.parametrize("argv", [
    ["ahat", "--lambda", "1,2"],
    ["ahat", "--lambda", "x"],
    ["eval", "--lambda", "1", "--n", "-1", "--k", "0"],
    ["frobnicate"],
    ["scan", "--size", "0", "--kmax", "3"],
    ["expected", "--stat", "m1 +", "--n", "3", "--k", "1"],
    ["oracle-check", "--nmax", "11"],
    ["positivity", "--lambda", "11"],
    [],
])
def test_usage_errors_exit_two(capsys, argv):
    assert main(argv) == 2


def test_verification_failure_exit_one(capsys, monkeypatch):
    import charpoly.acceptance as acc
    monkeypatch.setattr(acc, "check_oracle", lambda *a: (False, "forced mismatch"))
    code, _, err = run(capsys, "oracle-check")
    assert code == 1
    diag = json.loads(err)
    assert diag["error"] == "oracle mismatch" and diag["engine"] == ENGINE_VERSION


# ------------------------------------------------------------------ cache


def test_cache_files_are_byte_identical(capsys, tmp_path):
    a, b = tmp_path / "a", tmp_path / "b"
    for d in (a, b):
        assert run(capsys, "--cache-dir", str(d), "ahat", "--lambda", "2,1")[0] == 0
        assert run(capsys, "--cache-dir", str(d), "ptau", "--rank", "0", "--mu", "2,1")[0] == 0
    files_a = sorted(p.relative_to(a) for p in a.rglob("*.json"))
    files_b = sorted(p.relative_to(b) for p in b.rglob("*.json"))
    assert files_a == files_b and len(files_a) == 2
    for rel in files_a:
        assert (a / rel).read_bytes() == (b / rel).read_bytes()


def test_cache_hit_matches_recompute(capsys, tmp_path):
    first = run(capsys, "--cache-dir", str(tmp_path), "--format", "json", "ahat", "--lambda", "3")[1]
    hit = run(capsys, "--cache-dir", str(tmp_path), "--format", "json", "ahat", "--lambda", "3")[1]
    fresh = run(capsys, "--format", "json", "ahat", "--lambda", "3")[1]
    assert first == hit == fresh


def test_env_overrides_flag(capsys, tmp_path, monkeypatch):
    env_dir, flag_dir = tmp_path / "env", tmp_path / "flag"
    monkeypatch.setenv("CHARPOLY_CACHE", str(env_dir))
    assert resolve_dir(str(flag_dir)) == env_dir
    assert run(capsys, "--cache-dir", str(flag_dir), "ptau", "--rank", "1", "--mu", "1")[0] == 0
    assert list(env_dir.rglob("*.json")) and not flag_dir.exists()


def test_cache_entry_layout(tmp_path):
    c = Cache(tmp_path)
    params = {"rank": 0, "mu": [2]}
    path = c.put("ptau", params, {"x": 1})
    assert path.parent.name == "ptau"
    entry = json.loads(path.read_text())
    assert entry["engine_version"] == ENGINE_VERSION
    assert entry["key"] == cache_key("ptau", params) == path.stem
    assert c.get("ptau", params) == {"x": 1}
    assert c.get("ptau", params, trunc=9) is None
    assert path.read_text() == canonical_dumps(entry)


def test_cache_ignores_other_engine_versions(tmp_path):
    c = Cache(tmp_path)
    path = c.put("ahat", {"lambda": [1]}, {"v": 1})
    entry = json.loads(path.read_text())
    entry["engine_version"] = "other"
    path.write_text(json.dumps(entry))
    assert c.get("ahat", {"lambda": [1]}) is None
    calls = []
    assert c.fetch("ahat", {"lambda": [1]}, lambda: calls.append(1) or {"v": 2}) == {"v": 2}
    assert calls == [1]


def test_disabled_cache_computes():
    c = Cache(None)
    assert c.fetch("cert", {"a": 1}, lambda: 5) == 5
    with pytest.raises(ValueError):
        Cache(".").path("bogus", "k")


def test_canonical_dumps_is_order_independent():
    assert canonical_dumps({"b": 1, "a": [1, 2]}) == canonical_dumps({"a": [1, 2], "b": 1}) == '{"a":[1,2],"b":1}'


@pytest.mark.skipif(shutil.which("charpoly") is None, reason="console script not installed")
def test_console_script():
    proc = subprocess.run(["charpoly", "eval", "--lambda", "1", "--n", "3", "--k", "2"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and proc.stdout.strip() == "2/3"
    proc = subprocess.run(["charpoly", "ahat", "--lambda", "2,3"], capture_output=True, text=True, check=False)
    assert proc.returncode == 2


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "charpoly.cli", "bj", "--lambda", "1", "--j", "0"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and "k - 1" in proc.stdout
