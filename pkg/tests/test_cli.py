import json

import pytest
from click.testing import CliRunner

from qrgames.cli import main
from qrgames.generators import gen_exp_ne, gen_infinite_ne, gen_xor
from qrgames.parser import serialize_game


@pytest.fixture()
def runner():
    return CliRunner()


@pytest.fixture()
def fig1(tmp_path):
    path = tmp_path / "fig1.game"
    path.write_text(serialize_game(gen_xor()))
    return str(path)


@pytest.fixture()
def fig3(tmp_path):
    path = tmp_path / "fig3.game"
    path.write_text(serialize_game(gen_infinite_ne()))
    return str(path)


def test_validate(runner, fig1):
    result = runner.invoke(main, ["validate", fig1])
    assert result.exit_code == 0
    doc = json.loads(result.output)
    assert doc["valid"] and doc["states"] == 2


def test_validate_rejects_bad_file(runner, tmp_path):
    bad = tmp_path / "bad.game"
    bad.write_text("players p\nactions p: a\nstate s init\n")  # no rules at all... total? no profile matches
    result = runner.invoke(main, ["validate", str(bad)])
    assert result.exit_code == 2


def test_exists_negative_exit_code(runner, fig1):
    result = runner.invoke(main, ["exists", fig1])
    assert result.exit_code == 1
    assert json.loads(result.output) == {"ne_exists": False}


def test_exists_positive_includes_witness(runner, tmp_path, fig3):
    result = runner.invoke(main, ["exists", fig3])
    assert result.exit_code == 0
    doc = json.loads(result.output)
    assert doc["ne_exists"] and len(doc["cost"]) == 2
    # whatever witness the early exit picked must re-verify
    wfile = tmp_path / "w.json"
    wfile.write_text(json.dumps(doc["witness"]))
    assert runner.invoke(main, ["check", fig3, "--lasso", str(wfile)]).exit_code == 0


def test_pareto_fig3(runner, fig3):
    result = runner.invoke(main, ["pareto", fig3])
    assert result.exit_code == 0
    doc = json.loads(result.output)
    assert [e["cost"] for e in doc["frontier"]] == [[1, 1]]


def test_pareto_fragment_flag(runner, fig3):
    full = runner.invoke(main, ["pareto", fig3]).output
    fast = runner.invoke(main, ["pareto", fig3, "--fragment"]).output
    assert json.loads(full)["frontier"][0]["cost"] == json.loads(fast)["frontier"][0]["cost"]


def test_threshold_exit_codes(runner, fig3):
    assert runner.invoke(main, ["threshold", fig3, "--cost", "1,1"]).exit_code == 0
    assert runner.invoke(main, ["threshold", fig3, "--cost", "0,0"]).exit_code == 1


def test_emitted_witness_reverifies_via_check(runner, tmp_path, fig3):
    doc = json.loads(runner.invoke(main, ["pareto", fig3]).output)
    wfile = tmp_path / "w.json"
    wfile.write_text(json.dumps(doc["frontier"][0]["witness"]))
    result = runner.invoke(main, ["check", fig3, "--lasso", str(wfile)])
    assert result.exit_code == 0
    assert json.loads(result.output)["is_ne"]


def test_check_rejects_broken_lasso(runner, tmp_path, fig3):
    wfile = tmp_path / "w.json"
    wfile.write_text(json.dumps({"prefix": [{"state": "t", "profile": ["a", "a"]}], "cycle": []}))
    result = runner.invoke(main, ["check", fig3, "--lasso", str(wfile)])
    assert result.exit_code == 2


def test_check_non_equilibrium_exits_one(runner, tmp_path, fig1):
    wfile = tmp_path / "w.json"
    wfile.write_text(
        json.dumps(
            {
                "prefix": [{"state": "s", "profile": ["a", "a"]}],
                "cycle": [{"state": "t", "profile": ["a", "a"]}],
            }
        )
    )
    result = runner.invoke(main, ["check", fig1, "--lasso", str(wfile)])
    assert result.exit_code == 1
    doc = json.loads(result.output)
    assert not doc["is_ne"] and doc["violation"]["player"] == "p2"


def test_coalition_output(runner, fig1):
    result = runner.invoke(main, ["coalition", fig1, "--player", "p1"])
    assert json.loads(result.output) == {"player": "p1", "values": {"s": 0, "t": 0}}


def test_oracle_subcommands_mirror_main(runner, fig3):
    a = json.loads(runner.invoke(main, ["coalition", fig3, "--player", "p2"]).output)
    b = json.loads(
        runner.invoke(main, ["oracle", "coalition", fig3, "--player", "p2"]).output
    )
    assert a == b
    fa = json.loads(runner.invoke(main, ["pareto", fig3]).output)
    fb = json.loads(runner.invoke(main, ["oracle", "pareto", fig3]).output)
    assert [e["cost"] for e in fa["frontier"]] == [e["cost"] for e in fb["frontier"]]


def test_metrics_output(runner, fig3):
    doc = json.loads(runner.invoke(main, ["metrics", fig3]).output)
    assert doc["social_optimum"] == 2
    assert doc["poa"] == "inf"
    assert doc["pos"]["num"] == 1


def test_table_format(runner, fig1):
    result = runner.invoke(main, ["coalition", fig1, "--player", "p1", "--format", "table"])
    assert result.exit_code == 0
    assert "state" in result.output and "value" in result.output


def test_gen_writes_parseable_files(runner, tmp_path):
    out = tmp_path / "g.game"
    result = runner.invoke(
        main, ["gen", "partition", "--numbers", "2,4", "--out", str(out)]
    )
    assert result.exit_code == 0
    assert runner.invoke(main, ["validate", str(out)]).exit_code == 0


def test_gen_hampath_cli(runner, tmp_path):
    out = tmp_path / "h.game"
    res = runner.invoke(
        main,
        ["gen", "hampath", "--edges", "a>b,b>c", "--start", "a", "--out", str(out)],
    )
    assert res.exit_code == 0
    assert runner.invoke(main, ["exists", str(out)]).exit_code == 0


def test_gen_stdout_round_trip(runner):
    text = runner.invoke(main, ["gen", "expne", "--stages", "2"]).output
    from qrgames.parser import parse_game

    assert parse_game(text) == gen_exp_ne(2)


def test_byte_identical_output_on_repeat(runner, fig3):
    first = runner.invoke(main, ["pareto", fig3]).output
    second = runner.invoke(main, ["pareto", fig3]).output
    assert first == second
    assert runner.invoke(main, ["metrics", fig3]).output == runner.invoke(
        main, ["metrics", fig3]
    ).output


def test_report_writes_csv_and_figures(runner, tmp_path, fig3):
    out = tmp_path / "rep"
    result = runner.invoke(main, ["report", fig3, "--out-dir", str(out)])
    assert result.exit_code == 0
    assert (out / "frontier.csv").read_text().splitlines()[1] == "1,1,2"
    assert (out / "frontier.png").stat().st_size > 0
    assert (out / "punishments.png").stat().st_size > 0
    assert json.loads((out / "report.json").read_text())["metrics"]["ne_exists"]


def test_report_handles_games_without_equilibria(runner, tmp_path, fig1):
    out = tmp_path / "rep1"
    assert runner.invoke(main, ["report", fig1, "--out-dir", str(out)]).exit_code == 0
    assert (out / "frontier.csv").read_text().splitlines() == ["cost_p1,cost_p2,util"]
    assert json.loads((out / "report.json").read_text())["metrics"]["pos"] == "no NE"


def test_cap_exceeded_exits_three(runner, fig3):
    result = runner.invoke(main, ["oracle", "pareto", fig3, "--path-cap", "2"])
    assert result.exit_code == 3


def test_fragment_flag_on_non_fragment_game_is_input_error(runner, fig1):
    result = runner.invoke(main, ["pareto", fig1, "--fragment"])
    assert result.exit_code == 2


def test_gen_rejects_garbage_numbers(runner):
    result = runner.invoke(main, ["gen", "partition", "--numbers", "a,b"])
    assert result.exit_code == 2
    result = runner.invoke(main, ["gen", "3sat", "--cnf", "1 2 x"])
    assert result.exit_code == 2
