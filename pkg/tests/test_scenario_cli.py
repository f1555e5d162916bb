import json
from pathlib import Path

import pytest

from limitgames.arena import ScenarioError, run_game
from limitgames.cli import main
from limitgames.scenario import Battery, load_file, parse_scenario

SHIPPED = Path(__file__).resolve().parents[1] / "demos" / "scenarios"


def write_json(path, obj):
    path.write_text(json.dumps(obj, indent=2))
    return path


def gen_scenario(name="gen-demo", horizon=120, window=30):
    return {
        "version": 1,
        "name": name,
        "game": "sg",
        "true_collection": {
            "kind": "explicit",
            "sets": ["I", "O", "E", "Q(-1)", "Y(0)"],
        },
        "adversary": {"kind": "positive_stream", "lang": "O"},
        "learner": {"kind": "critical"},
        "horizon": horizon,
        "window": window,
    }


def test_parse_scenario_roundtrip(tmp_path):
    path = write_json(tmp_path / "gen.json", gen_scenario())
    spec = load_file(path)
    result = run_game(spec)
    assert result.verdict.converged


def test_unknown_fields_rejected():
    bad = gen_scenario()
    bad["mystery"] = 1
    with pytest.raises(ScenarioError):
        parse_scenario(bad)


def test_version_mismatch_rejected(tmp_path):
    bad = gen_scenario()
    bad["version"] = 2
    path = write_json(tmp_path / "bad.json", bad)
    with pytest.raises(ScenarioError):
        load_file(path)


def test_malformed_set_spec_rejected():
    bad = gen_scenario()
    bad["adversary"] = {"kind": "positive_stream", "lang": "Y("}
    with pytest.raises(ScenarioError):
        parse_scenario(bad)


def test_unknown_kinds_rejected():
    bad = gen_scenario()
    bad["learner"] = {"kind": "wizard"}
    with pytest.raises(ScenarioError):
        parse_scenario(bad)
    bad = gen_scenario()
    bad["adversary"] = {"kind": "mirror"}
    with pytest.raises(ScenarioError):
        parse_scenario(bad)


def test_telltale_collection_config():
    obj = {
        "version": 1,
        "name": "telltale",
        "game": "sg",
        "true_collection": {
            "kind": "explicit",
            "sets": ["I", "E"],
            "telltales": {"1": [1], "2": [0]},
        },
        "harm_collection": {
            "kind": "explicit",
            "sets": ["N | E", "I"],
            "telltales": {"1": [-2], "2": [1]},
        },
        "adversary": {"kind": "fair_interleaver", "true": "E", "harm": "I"},
        "learner": {"kind": "telltale"},
        "horizon": 200,
        "window": 50,
    }
    spec = parse_scenario(obj)
    result = run_game(spec)
    assert result.verdict.converged


def test_builtin_collection_kinds():
    obj = {
        "version": 1,
        "name": "phased",
        "game": "si",
        "true_collection": {"kind": "identification_trap_true"},
        "harm_collection": {"kind": "identification_trap_harm"},
        "adversary": {"kind": "phased_injection"},
        "learner": {"kind": "eager_identifier"},
        "horizon": 40,
        "window": 10,
    }
    spec = parse_scenario(obj)
    result = run_game(spec)
    assert result.verdict.phase_transitions >= 5


# ----------------------------------------------------------------------
# CLI
# ----------------------------------------------------------------------


def test_cli_run_writes_trace_and_verdict(tmp_path, capsys):
    path = write_json(tmp_path / "gen.json", gen_scenario())
    out = tmp_path / "out"
    assert main(["run", str(path), "--out", str(out), "--expect", "converged"]) == 0
    trace = (out / "gen-demo.trace.jsonl").read_text()
    verdict = json.loads((out / "gen-demo.verdict.json").read_text())
    assert verdict["converged"] is True
    assert trace.splitlines()[0].startswith('{"game": "sg"')
    assert main(["run", str(path), "--out", str(out), "--expect", "failed"]) == 3


def test_cli_run_is_byte_deterministic(tmp_path):
    path = write_json(tmp_path / "gen.json", gen_scenario())
    out1, out2 = tmp_path / "a", tmp_path / "b"
    assert main(["run", str(path), "--out", str(out1)]) == 0
    assert main(["run", str(path), "--out", str(out2)]) == 0
    t1 = (out1 / "gen-demo.trace.jsonl").read_bytes()
    t2 = (out2 / "gen-demo.trace.jsonl").read_bytes()
    assert t1 == t2


def test_cli_run_overrides(tmp_path, capsys):
    path = write_json(tmp_path / "gen.json", gen_scenario())
    out = tmp_path / "out"
    assert main([
        "run", str(path), "--out", str(out),
        "--horizon-override", "60", "--window-override", "15",
    ]) == 0
    verdict = json.loads((out / "gen-demo.verdict.json").read_text())
    assert verdict["horizon"] == 60 and verdict["window"] == 15


def test_cli_rejects_malformed_scenario(tmp_path, capsys):
    bad = gen_scenario()
    bad["adversary"] = {"kind": "positive_stream", "lang": "Y("}
    path = write_json(tmp_path / "bad.json", bad)
    assert main(["run", str(path)]) == 2
    assert "error:" in capsys.readouterr().err


def test_cli_battery(tmp_path, capsys):
    a = write_json(tmp_path / "a.json", gen_scenario("run-a"))
    b = write_json(tmp_path / "b.json", gen_scenario("run-b", horizon=80, window=20))
    battery = write_json(
        tmp_path / "both.json",
        {"version": 1, "name": "both", "battery": ["a.json", "b.json"]},
    )
    out = tmp_path / "out"
    assert main(["run", str(battery), "--out", str(out)]) == 0
    printed = capsys.readouterr().out
    assert "run-a" in printed and "run-b" in printed
    assert (out / "run-a.trace.jsonl").exists()
    assert (out / "run-b.verdict.json").exists()


def test_cli_replay(tmp_path, capsys):
    path = write_json(tmp_path / "gen.json", gen_scenario())
    out = tmp_path / "out"
    assert main(["run", str(path), "--out", str(out)]) == 0
    trace_path = out / "gen-demo.trace.jsonl"
    assert main(["replay", str(path), str(trace_path)]) == 0
    assert "all correctness flags match" in capsys.readouterr().out


def test_cli_replay_detects_tampering(tmp_path, capsys):
    path = write_json(tmp_path / "gen.json", gen_scenario())
    out = tmp_path / "out"
    main(["run", str(path), "--out", str(out)])
    trace_path = out / "gen-demo.trace.jsonl"
    lines = trace_path.read_text().splitlines()
    row = json.loads(lines[-1])
    row["correct"] = not row["correct"]
    lines[-1] = json.dumps(row, sort_keys=True)
    trace_path.write_text("\n".join(lines) + "\n")
    assert main(["replay", str(path), str(trace_path)]) == 1


def test_cli_check_algebra(capsys):
    assert main(["check-algebra", "--seed", "7", "--count", "25"]) == 0
    assert "25 random triples" in capsys.readouterr().out
    assert main(["check-algebra", "--seed", "7", "--count", "0"]) == 0


def test_cli_demo_names():
    with pytest.raises(SystemExit):
        main(["demo", "no-such-demo"])


def test_load_battery_type(tmp_path):
    battery = write_json(
        tmp_path / "b.json", {"version": 1, "battery": ["x.json"]}
    )
    loaded = load_file(battery)
    assert isinstance(loaded, Battery)


def test_shipped_scenarios_run():
    paths = sorted(SHIPPED.glob("*.json"))
    assert paths, "no shipped scenario files found"
    expected_converged = {
        "generation": True,
        "sg-inf": True,
        "telltale-bottom": True,
        "identify-probe": True,
        "identify-naive": False,
    }
    for path in paths:
        loaded = load_file(path)
        if isinstance(loaded, Battery):
            assert all(p.exists() for p in loaded.paths)
            continue
        result = run_game(loaded)
        assert result.verdict.converged == expected_converged[loaded.name], loaded.name
