import json

import pytest

from sexticsolid import bundle
from sexticsolid.cli import (RunConfig, fnv1a64, instance_fingerprint, main,
                             render_report, run_single, run_verify_all)
from sexticsolid.errors import ConfigError, UnknownCheck

P = 32003


def read_json(path):
    with open(path, "r", encoding="utf-8") as fh:
        return json.load(fh)


def test_fnv1a64_known_values():
    # standard FNV-1a test vectors
    assert fnv1a64(b"") == 0xCBF29CE484222325
    assert fnv1a64(b"a") == 0xAF63DC4C8601EC8C
    assert fnv1a64(b"foobar") == 0x85944171F73967E8


def test_fingerprint_stable_and_seed_sensitive():
    d1 = bundle.random_instance(P, 1)
    d2 = bundle.random_instance(P, 2)
    assert instance_fingerprint(d1) == instance_fingerprint(bundle.random_instance(P, 1))
    assert instance_fingerprint(d1) != instance_fingerprint(d2)
    # explicit round trip hits the same canonical serialization
    explicit = bundle.parse_instance(bundle.explicit_instance_text(d1))
    assert instance_fingerprint(explicit) == instance_fingerprint(d1)


def test_config_validation():
    with pytest.raises(ConfigError):
        RunConfig(n_samples=0)
    with pytest.raises(ConfigError):
        RunConfig(retries=-1)
    with pytest.raises(UnknownCheck):
        RunConfig(checks=("nodes",))
    with pytest.raises(UnknownCheck):
        run_single(RunConfig(), "everything")


def test_verify_reports_are_byte_identical(tmp_path):
    argv = ["verify", "--seed", "1", "--samples", "20",
            "--checks", "census,fibers,pairings,smoothness"]
    out1 = tmp_path / "r1.json"
    out2 = tmp_path / "r2.json"
    assert main(argv + ["--out", str(out1)]) == 0
    assert main(argv + ["--out", str(out2)]) == 0
    assert out1.read_bytes() == out2.read_bytes()
    report = read_json(out1)
    assert report["verdict"] == "pass"
    assert report["census"]["degree"] == "31"
    assert report["fibers"]["off_delta"]["rank_counts"] == {"4": "20"}
    assert report["pairings"]["h2_counts"] == {"2": "20"}
    assert report["pairings"]["qpi"] == {"value": "0", "source": "recorded"}
    assert "timings" not in report


def test_seed_changes_fingerprint(tmp_path):
    # smoothness alone skips the census, so this stays fast
    outs = []
    for seed in ("1", "2"):
        out = tmp_path / f"s{seed}.json"
        assert main(["smoothness", "--seed", seed, "--samples", "5",
                     "--out", str(out)]) == 0
        outs.append(read_json(out))
    assert outs[0]["instance"]["fingerprint"] != outs[1]["instance"]["fingerprint"]


def test_run_single_census_section_only():
    report, code = run_single(RunConfig(seed=1, n_samples=5), "census")
    assert code == 0
    assert "census" in report and "strata" not in report and "fibers" not in report
    assert report["census"]["pass"] is True


def test_single_check_blocked_on_degenerate_instance(tmp_path):
    inst = tmp_path / "diagonal.txt"
    inst.write_text(bundle.format_instance(bundle.diagonal_instance(P)))
    report, code = run_single(RunConfig(instance_file=str(inst), n_samples=5),
                              "pairings")
    assert code == 1
    assert report["pairings"]["status"] == "blocked"
    assert report["pairings"]["pass"] is False
    assert report["instance"]["attempts"] == 1  # file instances never resample


def test_diagonal_instance_verify_exit_1(tmp_path):
    inst = tmp_path / "diagonal.txt"
    inst.write_text(bundle.format_instance(bundle.diagonal_instance(P)))
    out = tmp_path / "report.json"
    code = main(["verify", "--instance", str(inst), "--samples", "5",
                 "--out", str(out)])
    assert code == 1
    report = read_json(out)
    assert report["census"]["verdict"] == "degenerate"
    assert report["census"]["zero_dimensional"] is False
    assert report["verdict"] == "fail"


def test_budget_and_config_errors_exit_2(tmp_path, capsys):
    inst = tmp_path / "diagonal.txt"
    inst.write_text(bundle.format_instance(bundle.diagonal_instance(P)))
    assert main(["verify", "--instance", str(inst), "--budget", "10"]) == 2
    assert main(["verify", "--prime", "10"]) == 2
    assert main(["verify", "--instance", str(tmp_path / "missing.txt")]) == 2
    capsys.readouterr()


def test_show_instance_round_trip(tmp_path, capsys):
    assert main(["show-instance", "--seed", "4"]) == 0
    text = capsys.readouterr().out
    d = bundle.parse_instance(text)
    assert d.A == bundle.random_instance(P, 4).A
    out = tmp_path / "inst.txt"
    assert main(["show-instance", "--seed", "4", "--out", str(out)]) == 0
    assert out.read_text() == text


def test_sigma_point_flag(tmp_path):
    from test_fibers import plant_rank2_node
    d = plant_rank2_node()
    inst = tmp_path / "planted.txt"
    inst.write_text(bundle.format_instance(d))
    report, code = run_single(
        RunConfig(instance_file=str(inst), n_samples=5,
                  sigma_points=((1, 0, 0, 0),)), "fibers")
    section = report["fibers"]
    if section.get("status") == "blocked":
        pytest.skip("planted instance lost genericity; sigma check exercised elsewhere")
    assert section["sigma_points"][0]["gram_rank"] == 2
    assert section["sigma_points"][0]["pass"] is True


def test_render_report_stringifies_numbers():
    text = render_report({"a": 5, "b": True, "c": [1, 2], "d": None})
    data = json.loads(text)
    assert data == {"a": "5", "b": True, "c": ["1", "2"], "d": None}


def test_timings_flag_adds_section():
    report, code = run_single(RunConfig(seed=1, n_samples=5, timings=True),
                              "smoothness")
    assert code == 0
    assert "timings" in report
    report2, _ = run_single(RunConfig(seed=1, n_samples=5), "smoothness")
    assert "timings" not in report2
