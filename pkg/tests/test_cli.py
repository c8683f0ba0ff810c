"""CLI surface: subcommands, exit codes, JSON/text mirroring, determinism."""

import json
import os
import subprocess
import sys

ROOT = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))


def run_cli(*args, env_extra=None):
    env = dict(os.environ)
    if env_extra:
        env.update(env_extra)
    return subprocess.run([sys.executable, "-m", "permutable", *args],
                          capture_output=True, text=True, env=env)


def write_desc(tmp_path, obj, name="group.json"):
    path = tmp_path / name
    path.write_text(json.dumps(obj), encoding="utf-8")
    return str(path)


def test_analyze_s3_description(tmp_path):
    path = write_desc(tmp_path, {"kind": "perm", "degree": 3,
                                 "generators": [[1, 2, 0], [1, 0, 2]]})
    out = run_cli("analyze", path, "--json")
    assert out.returncode == 0
    rep = json.loads(out.stdout)
    assert rep["c_group"] is True
    assert rep["decomposition"]["a"] == [[1, 3]]
    assert [p for _, p in rep["decomposition"]["b"]] == [2]


def test_analyze_bundled_extraspecial():
    out = run_cli("analyze", os.path.join(ROOT, "descriptions", "extraspecial27.json"),
                  "--json")
    assert out.returncode == 0
    rep = json.loads(out.stdout)
    assert rep["c_group"] is False
    assert rep["witness"]["elements"] == [0, 1, 2]
    assert rep["decomposition"] is None


def test_analyze_malformed_json_exits_2(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text("{not json", encoding="utf-8")
    out = run_cli("analyze", str(path))
    assert out.returncode == 2


def test_analyze_unknown_kind_exits_2(tmp_path):
    path = write_desc(tmp_path, {"kind": "wat"})
    out = run_cli("analyze", str(path))
    assert out.returncode == 2


def test_analyze_cap_exceeded_exits_3(tmp_path):
    path = write_desc(tmp_path, {"kind": "cyclic", "n": 64})
    out = run_cli("analyze", str(path), "--max-order", "32")
    assert out.returncode == 3


def test_env_var_overrides_cap(tmp_path):
    path = write_desc(tmp_path, {"kind": "cyclic", "n": 600})
    out = run_cli("analyze", str(path))
    assert out.returncode == 3
    out = run_cli("analyze", str(path), env_extra={"PERMUTABLE_MAX_ORDER": "1024"})
    assert out.returncode == 3      # still blocked: lattice cap, not order cap
    err = out.stderr
    assert "lattice" in err


def test_analyze_sc_flag(tmp_path):
    path = write_desc(tmp_path, {"kind": "cyclic", "n": 6})
    rep = json.loads(run_cli("analyze", path if isinstance(path, str) else str(path),
                             "--sc", "--json").stdout)
    assert rep["sc_group"] is True


def test_profinite_family_report():
    out = run_cli("profinite", "--family", "pq-power", "--p", "3", "--q", "2",
                  "--depth", "3", "--json")
    assert out.returncode == 0
    rep = json.loads(out.stdout)
    assert rep["theorem_c"]["indices"] == [1, 2, 4, 8]
    assert rep["levelwise_c"]["all_c"] is True


def test_profinite_prime_column_exponents():
    out = run_cli("profinite", "--family", "prime-column", "--depth", "4", "--json")
    rep = json.loads(out.stdout)
    assert rep["theorem_c"]["exponents"][1:] == [2, 6, 30, 210]


def test_profinite_depth_zero_trivial():
    out = run_cli("profinite", "--family", "elementary", "--depth", "0", "--json")
    rep = json.loads(out.stdout)
    assert rep["system"]["orders"] == [1]
    assert rep["levelwise_c"]["all_c"] is True


def test_profinite_bad_params_exits_2():
    out = run_cli("profinite", "--family", "pq-power", "--p", "5", "--q", "3")
    assert out.returncode == 2


def test_profinite_file_with_chain():
    out = run_cli("profinite", os.path.join(ROOT, "descriptions", "pq_power_depth3.json"),
                  "--json")
    rep = json.loads(out.stdout)
    assert rep["chain"]["found"] is True
    assert rep["chain"]["verified"] is True


def test_profinite_invalid_bond_reported(tmp_path):
    desc = {"levels": [{"kind": "cyclic", "n": 2}, {"kind": "cyclic", "n": 2}],
            "bonds": [[0, 0]]}
    path = write_desc(tmp_path, desc, "sys.json")
    out = run_cli("profinite", path, "--json")
    assert out.returncode == 0
    rep = json.loads(out.stdout)
    assert rep["validation"]["valid"] is False
    assert rep["levelwise_c"] is None


def test_catalog_runs_and_passes():
    out = run_cli("catalog", "--json")
    assert out.returncode == 0
    rep = json.loads(out.stdout)
    assert rep["all_pass"] is True
    assert len(rep["entries"]) >= 30


def test_catalog_byte_identical_runs():
    a = run_cli("catalog", "--json").stdout
    b = run_cli("catalog", "--json").stdout
    assert a == b
    c = run_cli("catalog").stdout
    d = run_cli("catalog").stdout
    assert c == d


def test_text_output_mirrors_json(tmp_path):
    path = write_desc(tmp_path, {"kind": "cyclic", "n": 6})
    rep = json.loads(run_cli("analyze", str(path), "--json").stdout)
    text = run_cli("analyze", str(path)).stdout
    assert f"c_group: {str(rep['c_group']).lower()}" in text
    first_b = json.dumps(rep["decomposition"]["b"][0])   # renderer uses default dumps
    assert f"decomposition.b[0]: {first_b}" in text


def test_timing_flag_populates_field(tmp_path):
    path = write_desc(tmp_path, {"kind": "cyclic", "n": 6})
    rep = json.loads(run_cli("analyze", str(path), "--json", "--timing").stdout)
    assert rep["timing_ms"] is not None


def test_catalog_includes_negative_cases():
    rep = json.loads(run_cli("catalog", "--json").stdout)
    verdicts = {e["name"]: e["c_group"] for e in rep["entries"]}
    for name in ["C4", "Q8", "D4", "ES27"]:
        assert verdicts[name] is False


def test_report_roundtrips_through_its_json():
    from permutable.report import AnalysisReport
    rep = AnalysisReport("analyze", "00", {"max_order": 512},
                         {"c_group": True, "witness": None})
    assert json.loads(rep.to_json()) == rep.to_dict()
