import json

import pytest
from hypothesis import given
from hypothesis import strategies as st

from shiftbribery.cli import main
from shiftbribery.election import Copeland, Election
from shiftbribery.exceptions import ParseError
from shiftbribery.hardness import Graph, SetCoverInstance, reduce_dks_aon, reduce_setcover, reduce_vc3
from shiftbribery.io import (
    format_action,
    format_graph,
    format_instance,
    format_rational,
    format_setcover,
    parse_action,
    parse_graph,
    parse_instance,
    parse_rational,
    parse_setcover,
    random_instance,
)
from shiftbribery.pricing import INF, PriceFamily, classify_prices, unit_instance

from strategies import copeland_instances, instances

FIXTURE = """shiftbribery v1
# a > b > p and b > a > p
3 2
p 2
rule borda
0 1 2
prices: 1 2
1 0 2
prices: 1 2
"""


def test_fixture_parses_to_three_candidates(three_candidates):
    inst = parse_instance(FIXTURE)
    assert inst == three_candidates
    assert format_instance(inst) == FIXTURE.replace("# a > b > p and b > a > p\n", "")


@pytest.mark.parametrize(
    "text, message",
    [
        ("", "missing header"),
        ("shiftbribery v1\n3 1\np 0\nrule borda\n1 2 0\nprices: 1 0\n", "non-monotone prices"),
        ("shiftbribery v1\n2 1\np 5\nrule borda\n1 0\nprices: 1\n", "out of range"),
        ("shiftbribery v1\n2 1\np 0\nrule borda\n1 1\nprices: 1\n", "not a permutation"),
        ("shiftbribery v1\n2 1\np 0\nrule plurality\n1 0\nprices: 1\n", "unknown rule"),
        ("shiftbribery v1\n2 1\np 0\nrule borda\n1 0\n", "voter lines"),
    ],
)
def test_parse_errors(text, message):
    with pytest.raises(ParseError, match=message):
        parse_instance(text)


def test_parse_error_names_line():
    with pytest.raises(ParseError, match="line 6"):
        parse_instance("shiftbribery v1\n3 1\np 0\nrule borda\n1 2 0\nprices: 1 0\n")


@given(instances(scoring=True))
def test_round_trip_scoring(inst):
    assert parse_instance(format_instance(inst)) == inst


@given(instances() | copeland_instances())
def test_round_trip(inst):
    assert parse_instance(format_instance(inst)) == inst


def test_round_trip_seed_sweep():
    for seed in range(100):
        inst = random_instance(seed, 4, 4, ("unit", "uniform-aon", "one-inf-aon", "general")[seed % 4])
        assert parse_instance(format_instance(inst)) == inst


def test_round_trip_reductions():
    for inst, _ in (
        reduce_dks_aon(Graph.complete(4), 3, 3),
        reduce_vc3(Graph.complete(4), 3),
        reduce_setcover(SetCoverInstance(2, (frozenset({0}), frozenset({1})))),
    ):
        assert parse_instance(format_instance(inst)) == inst


def test_random_instance_deterministic():
    assert random_instance(11, 4, 3, "general") == random_instance(11, 4, 3, "general")
    assert classify_prices(random_instance(2, 4, 4, "unit")) == PriceFamily.UNIT


@given(st.fractions())
def test_rational_round_trip(x):
    assert parse_rational(format_rational(x)) == x


def test_infinity_token():
    assert format_rational(INF) == "inf"
    assert parse_rational("inf") == INF
    with pytest.raises(ParseError):
        parse_rational("inf", allow_inf=False)


def test_graph_setcover_action_formats():
    g = Graph(3, ((0, 1), (1, 2)))
    assert parse_graph(format_graph(g)) == g
    sc = SetCoverInstance(3, (frozenset({0, 2}), frozenset(), frozenset({1})))
    assert parse_setcover(format_setcover(sc)) == sc
    assert parse_action(format_action((0, 3, 1))) == (0, 3, 1)
    with pytest.raises(ParseError):
        parse_graph("3 2\n0 1\n")


# command line


@pytest.fixture
def fixture_file(tmp_path):
    path = tmp_path / "inst.txt"
    path.write_text(FIXTURE)
    return path


def last_json(capsys):
    return json.loads(capsys.readouterr().out.strip().splitlines()[-1])


def test_cli_solve_fpt(fixture_file, tmp_path, capsys):
    out = tmp_path / "action.txt"
    assert main(["solve", str(fixture_file), "--algo", "fpt", "--oracle", "--action-out", str(out)]) == 0
    record = last_json(capsys)
    assert record["cost"] == "2" and record["success"] is True and record["ratio"] == "1"
    assert main(["verify", str(fixture_file), str(out)]) == 0
    assert last_json(capsys) == {"success": True, "cost": "2"}


@pytest.mark.parametrize("algo", ["ptas-unit", "eptas-unit", "lp-additive", "ptas-general"])
def test_cli_solve_actions_verify(algo, fixture_file, tmp_path, capsys):
    out = tmp_path / "action.txt"
    assert main(["solve", str(fixture_file), "--algo", algo, "--eps", "1/2", "--action-out", str(out)]) == 0
    capsys.readouterr()
    assert main(["verify", str(fixture_file), str(out)]) == 0


def test_cli_verify_zero_action_when_winning(tmp_path, capsys):
    inst = unit_instance(Election([[0, 1], [1, 0]]), 0)
    (tmp_path / "i.txt").write_text(format_instance(inst))
    (tmp_path / "a.txt").write_text("0 0\n")
    assert main(["verify", str(tmp_path / "i.txt"), str(tmp_path / "a.txt")]) == 0
    assert last_json(capsys) == {"success": True, "cost": "0"}


def test_cli_verify_failure(fixture_file, tmp_path, capsys):
    (tmp_path / "a.txt").write_text("0 0\n")
    assert main(["verify", str(fixture_file), str(tmp_path / "a.txt")]) == 1


def test_cli_oracle(fixture_file, capsys):
    assert main(["oracle", str(fixture_file)]) == 0
    record = last_json(capsys)
    assert record["opt_cost"] == "2" and record["witness"] == [0, 2]
    assert record["explored"] > 0


def test_cli_budget_exit_code(fixture_file, capsys):
    assert main(["oracle", str(fixture_file), "--budget", "1"]) == 2


def test_cli_generate_vc3(tmp_path, capsys):
    graph = tmp_path / "k4.txt"
    graph.write_text(format_graph(Graph.complete(4)))
    out, wit = tmp_path / "inst.txt", tmp_path / "w.txt"
    args = ["generate", "--reduction", "vc3", "--graph", str(graph), "--k", "3"]
    assert main([*args, "--out", str(out), "--witness-out", str(wit)]) == 0
    record = last_json(capsys)
    listed = {s for s, _ in record["scores"]}
    assert {"155", "198", "156", "157"} == listed
    assert record["p_score"] == "155"
    assert main(["verify", str(out), str(wit)]) == 0


def test_cli_generate_setcover(tmp_path, capsys):
    sc = tmp_path / "sc.txt"
    sc.write_text(format_setcover(SetCoverInstance(2, (frozenset({0, 1}),))))
    assert main(["generate", "--reduction", "setcover", "--setcover", str(sc), "--out", str(tmp_path / "o")]) == 0
    assert last_json(capsys)["witness_cost"] == "1"


def test_cli_generate_missing_input(capsys):
    assert main(["generate", "--reduction", "dks-aon"]) == 1


def test_cli_parse_error_exit(tmp_path, capsys):
    bad = tmp_path / "bad.txt"
    bad.write_text("nope\n")
    assert main(["solve", str(bad), "--algo", "fpt"]) == 1
    assert "missing header" in capsys.readouterr().err


def test_cli_bench(capsys):
    assert main(["bench", "--algos", "fpt,ptas-unit", "--seeds", "4", "--m", "3", "--n", "3"]) == 0
    lines = capsys.readouterr().out.strip().splitlines()
    assert lines[0].startswith("seed,algorithm,eps,cost,oracle,ratio")
    for row in lines[1:]:
        fields = row.split(",")
        assert fields[6] == "True"
        if fields[1] == "fpt":
            assert fields[3] == fields[4]


def test_cli_rejects_bad_eps():
    with pytest.raises(SystemExit):
        main(["solve", "x", "--algo", "fpt", "--eps", "-1"])
