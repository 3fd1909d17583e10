"""End-to-end checks of the rankdrift commands through click's test runner."""
import json
import logging

import pytest
from jsonschema import Draft202012Validator
from openpyxl import load_workbook

from cli_report import cli
from cli_report.schema import SCHEMA_NAMES, build_schemas

SCHEMAS = build_schemas()


@pytest.fixture(autouse=True)
def _drop_cli_log_handlers():
    yield
    root = logging.getLogger()
    for handler in list(root.handlers):
        if getattr(handler, "_rankdrift", False):
            root.removeHandler(handler)


def records(stderr):
    """JSON error records from stderr, skipping log lines."""
    return [json.loads(line) for line in stderr.splitlines() if line.startswith("{")]


def validate(name, document):
    Draft202012Validator(SCHEMAS[name]).validate(document)


def run_json(runner, args, schema, env=None):
    result = runner.invoke(cli, args, env=env)
    assert result.exit_code == 0, result.stderr
    document = json.loads(result.stdout)
    validate(schema, document)
    return document


# --- ns ---------------------------------------------------------------------

def test_ns_identical_races_is_zero(runner, write_season):
    path = write_season([[1, 2, 3], [1, 2, 3], [1, 2, 3]])
    doc = run_json(runner, ["ns", "--manifest", str(path)], "ns")
    assert doc["penalty"] == 0.5
    (report,) = doc["reports"]
    assert report["ns"] == 0.0
    assert report["tau_ev"] == 1.0
    assert (report["m"], report["n"], report["year"]) == (3, 3, 2099)
    assert report["published_ns"] is None and report["flagged"] is False
    assert "pairs" not in report


def test_ns_alternating_reversals_is_one(runner, write_season):
    path = write_season([[1, 2, 3], [3, 2, 1], [1, 2, 3]])
    doc = run_json(runner, ["ns", "--manifest", str(path), "--details"], "ns")
    (report,) = doc["reports"]
    assert report["ns"] == 1.0
    assert [p["tau"] for p in report["pairs"]] == [-1.0, -1.0]


def test_ns_flags_distance_from_published_value(runner, write_season):
    path = write_season([[1, 2, 3], [1, 2, 3]], year=2012)
    doc = run_json(runner, ["ns", "--manifest", str(path)], "ns")
    (report,) = doc["reports"]
    assert report["published_ns"] == pytest.approx(0.2561)
    assert report["flagged"] is True


def test_ns_orders_reports_by_year(runner, write_season):
    later = write_season([[1, 2], [2, 1]], year=2099)
    earlier = write_season([[1, 2], [1, 2]], year=2098)
    doc = run_json(runner, ["ns", "--manifest", str(later), "--manifest", str(earlier)], "ns")
    assert [r["year"] for r in doc["reports"]] == [2098, 2099]


def test_ns_2012_constructors_excerpt(runner, season_2012_path):
    for method in ("m1", "m2"):
        doc = run_json(runner, ["ns", "--manifest", str(season_2012_path), "--method", method], "ns")
        (report,) = doc["reports"]
        assert (report["series"], report["entity"], report["m"], report["n"]) == (method, "constructors", 3, 12)
        assert report["published_ns"] is not None
        assert 0.0 <= report["ns"] <= 1.0


def test_ns_2012_drivers_excerpt(runner, season_2012_path):
    doc = run_json(runner, ["ns", "--manifest", str(season_2012_path), "--entity", "drivers"], "ns")
    (report,) = doc["reports"]
    assert (report["series"], report["n"]) == ("drivers", 25)


@pytest.mark.parametrize("method, published", [("drivers", 0.2561), ("m1", 0.2456), ("m2", 0.4052)])
def test_ns_full_2012_season_against_published(runner, full_season_2012_path, method, published):
    selector = ["--entity", "drivers"] if method == "drivers" else ["--method", method]
    doc = run_json(runner, ["ns", "--manifest", str(full_season_2012_path), *selector], "ns")
    (report,) = doc["reports"]
    assert report["m"] == 20
    assert report["n"] == (25 if method == "drivers" else 12)
    assert 0.0 <= report["ns"] <= 1.0
    assert report["published_ns"] == pytest.approx(published)
    assert report["flagged"] is (abs(report["ns"] - published) > 0.05)


def test_ns_csv_output(runner, write_season):
    path = write_season([[1, 2, 3], [1, 2, 3]])
    result = runner.invoke(cli, ["ns", "--manifest", str(path), "--format", "csv"])
    assert result.exit_code == 0, result.stderr
    header, row = result.stdout.splitlines()
    assert header.split(",")[:4] == ["schema_version", "series", "year", "entity"]
    assert row.split(",")[1:3] == ["drivers", "2099"]
    assert row.endswith(",,false")


def test_ns_from_standings(runner, tmp_path):
    path = tmp_path / "laliga.csv"
    path.write_text("entrant_id,R1,R2,R3\nbarca,1,2,1\nmadrid,2,1,2\natleti,3,3,3\n")
    args = ["ns", "--standings", str(path), "--series", "laliga", "--year", "2099", "--penalty", "0"]
    doc = run_json(runner, args, "ns")
    (report,) = doc["reports"]
    assert (report["entity"], report["method"]) == ("teams", "standings")
    # each step swaps the leaders: tau = 1/3 twice
    assert report["tau_ev"] == pytest.approx(1 / 3, abs=1e-12)
    assert report["ns"] == pytest.approx(1 / 3, abs=1e-12)
    assert doc["penalty"] == 0.0


def test_ns_standings_parse_error_record(runner, tmp_path):
    path = tmp_path / "bad.csv"
    path.write_text("entrant_id,R1,R2\nbarca,1,1\nmadrid,1,2\n")
    result = runner.invoke(cli, ["ns", "--standings", str(path), "--series", "x", "--year", "2012"])
    assert result.exit_code == 1
    (record,) = records(result.stderr)
    validate("error", record)
    assert record["error"]["code"] == "parse_error"
    assert record["error"]["path"] == str(path)


@pytest.mark.parametrize("args, env", [
    (["--penalty", "0.7"], None),
    ([], {"RANKDRIFT_PENALTY": "-0.1"}),
])
def test_penalty_out_of_range_is_a_usage_error(runner, write_season, args, env):
    path = write_season([[1, 2], [2, 1]])
    result = runner.invoke(cli, ["ns", "--manifest", str(path), *args], env=env)
    assert result.exit_code == 2
    assert result.stdout == ""
    (record,) = records(result.stderr)
    validate("error", record)
    assert record["error"]["code"] == "usage_error"


def test_penalty_from_environment(runner, write_season):
    path = write_season([[1, 2], [2, 1]])
    doc = run_json(runner, ["ns", "--manifest", str(path)], "ns", env={"RANKDRIFT_PENALTY": "0.25"})
    assert doc["penalty"] == 0.25


def test_ns_needs_exactly_one_input(runner, write_season, tmp_path):
    path = write_season([[1, 2], [2, 1]])
    both = runner.invoke(cli, ["ns", "--manifest", str(path), "--standings", str(tmp_path / "x.csv")])
    assert both.exit_code == 2
    assert records(both.stderr)[0]["error"]["code"] == "usage_error"
    neither = runner.invoke(cli, ["ns"])
    assert neither.exit_code == 2
    standings_alone = runner.invoke(cli, ["ns", "--standings", str(tmp_path / "x.csv")])
    assert standings_alone.exit_code == 2


def test_missing_manifest_is_a_data_error(runner, tmp_path):
    result = runner.invoke(cli, ["ns", "--manifest", str(tmp_path / "absent.json")])
    assert result.exit_code == 1
    assert result.stdout == ""
    (record,) = records(result.stderr)
    validate("error", record)
    assert record["schema_version"] == 1
    assert record["error"]["code"] == "data_error"


def test_all_pairs_incomparable_record(runner, tmp_path, write_season):
    path = write_season([[1, None, None], [None, 1, None], [None, None, 1]])
    result = runner.invoke(cli, ["ns", "--manifest", str(path)])
    assert result.exit_code == 1
    assert records(result.stderr)[0]["error"]["code"] == "all_pairs_incomparable"


# --- summary ----------------------------------------------------------------

def test_summary_of_published_tables(runner, table5_path, table6_path):
    doc = run_json(runner, ["summary", str(table5_path), str(table6_path)], "summary")
    assert doc["group_by"] == ["series"]
    means = {g["group"]: g["mean"] for g in doc["groups"]}
    assert list(means) == ["drivers", "m1", "m2", "laliga", "premier"]
    assert means["drivers"] == pytest.approx(0.2203, abs=5e-4)
    assert means["m2"] == pytest.approx(0.2771, abs=5e-4)
    assert means["laliga"] == pytest.approx(0.0588, abs=5e-4)
    assert all(g["n"] == 11 for g in doc["groups"])


def test_summary_grouped_by_extra_column(runner, tmp_path):
    path = tmp_path / "rows.csv"
    path.write_text(
        "series,year,ns,era\n"
        "a,2012,0.1,early\na,2013,0.2,early\na,2020,0.3,late\na,2021,0.5,late\n"
    )
    doc = run_json(runner, ["summary", str(path), "--group-by", "series,era"], "summary")
    assert doc["group_by"] == ["series", "era"]
    assert [g["group"] for g in doc["groups"]] == ["a/early", "a/late"]
    assert doc["groups"][1]["mean"] == pytest.approx(0.4, abs=1e-12)


def test_summary_plot_data_to_stdout(runner, table5_path):
    result = runner.invoke(cli, ["summary", str(table5_path), "--plot-data", "-"])
    assert result.exit_code == 0, result.stderr
    lines = result.stdout.splitlines()
    assert lines[0].split("\t") == ["group", "min", "q1", "median", "q3", "max"]
    assert [line.split("\t")[0] for line in lines[1:]] == ["drivers", "m1", "m2"]


def test_summary_writes_plot_file_and_workbook(runner, table5_path, tmp_path):
    plot, xlsx = tmp_path / "plot.tsv", tmp_path / "out" / "summary.xlsx"
    args = ["summary", str(table5_path), "--plot-data", str(plot), "--xlsx", str(xlsx), "--format", "text"]
    result = runner.invoke(cli, args)
    assert result.exit_code == 0, result.stderr
    assert "drivers" in result.stdout and "mean" in result.stdout
    assert plot.read_text().startswith("group\tmin\t")
    sheet = load_workbook(xlsx).active
    assert sheet["A1"].value == "group"
    assert sheet["A2"].value == "drivers"
    assert sheet["A1"].font.bold


def test_summary_csv(runner, table5_path):
    result = runner.invoke(cli, ["summary", str(table5_path), "--format", "csv"])
    assert result.exit_code == 0
    assert result.stdout.splitlines()[0] == "group,n,mean,sample_std,min,q1,median,q3,max"


def test_summary_group_with_one_value_fails(runner, write_rows):
    path = write_rows({"a": [0.1, 0.2], "b": [0.3]})
    result = runner.invoke(cli, ["summary", str(path)])
    assert result.exit_code == 1
    (record,) = records(result.stderr)
    assert record["error"]["code"] == "domain_error"
    assert record["error"]["details"]["group"] == "b"


def test_summary_rows_parse_error(runner, tmp_path):
    path = tmp_path / "rows.csv"
    path.write_text("series,year,ns\ndrivers,2012,0.2\ndrivers,twenty,0.3\n")
    result = runner.invoke(cli, ["summary", str(path)])
    assert result.exit_code == 1
    (record,) = records(result.stderr)
    assert (record["error"]["code"], record["error"]["line"]) == ("parse_error", 3)


# --- tests ------------------------------------------------------------------

def test_tests_on_published_series(runner, table5_path):
    doc = run_json(runner, ["tests", str(table5_path)], "tests")
    names = [t["name"] for t in doc["tests"]]
    assert names == ["shapiro_wilk", "shapiro_wilk", "shapiro_wilk", "t_paired", "t_pooled"]
    assert doc["variance_ratio"]["pooled_allowed"] is True
    assert doc["variance_ratio"]["ratio"] == pytest.approx(3.864, abs=0.01)
    paired = doc["tests"][3]
    assert paired["samples"] == ["m1", "m2"]
    assert paired["reject_null"] is False
    assert doc["errors"] == [] and doc["notes"] == []


def test_tests_text_output(runner, table5_path):
    result = runner.invoke(cli, ["tests", str(table5_path), "--format", "text"])
    assert result.exit_code == 0
    assert "t_pooled" in result.stdout
    assert "variance ratio m1/drivers" in result.stdout


def test_tests_wide_variance_ratio_switches_to_welch(runner, write_rows):
    path = write_rows({
        "drivers": [0.20, 0.21, 0.20, 0.21, 0.20, 0.21],
        "m1": [0.10, 0.30, 0.15, 0.35, 0.12, 0.28],
        "m2": [0.22, 0.25, 0.21, 0.30, 0.27, 0.24],
    })
    doc = run_json(runner, ["tests", str(path)], "tests")
    assert doc["variance_ratio"]["pooled_allowed"] is False
    assert doc["tests"][-1]["name"] == "t_welch"
    assert "t_pooled" not in [t["name"] for t in doc["tests"]]
    assert "Welch" in doc["notes"][0]


def test_tests_degenerate_pair_is_reported(runner, write_rows):
    m1 = [0.21, 0.25, 0.19, 0.30, 0.22]
    path = write_rows({"drivers": [0.20, 0.26, 0.18, 0.29, 0.23], "m1": m1, "m2": list(m1)})
    result = runner.invoke(cli, ["tests", str(path)])
    assert result.exit_code == 1
    doc = json.loads(result.stdout)
    validate("tests", doc)
    assert [e["name"] for e in doc["errors"]] == ["t_paired"]
    (record,) = records(result.stderr)
    validate("error", record)
    assert record["error"]["code"] == "degenerate_sample"
    assert record["error"]["details"]["test"] == "t_paired"
    # the other tests still ran
    assert "t_pooled" in [t["name"] for t in doc["tests"]]


def test_tests_mismatched_years(runner, tmp_path):
    path = tmp_path / "rows.csv"
    path.write_text(
        "series,year,ns\n"
        "drivers,2012,0.2\ndrivers,2013,0.3\ndrivers,2014,0.25\n"
        "m1,2012,0.2\nm1,2013,0.3\nm1,2014,0.22\n"
        "m2,2012,0.2\nm2,2013,0.3\nm2,2015,0.21\n"
    )
    result = runner.invoke(cli, ["tests", str(path)])
    assert result.exit_code == 1
    assert records(result.stderr)[0]["error"]["code"] == "structural_error"


# --- compare ----------------------------------------------------------------

def test_compare_published_tables(runner, table5_path, table6_path):
    doc = run_json(runner, ["compare", "--f1", str(table5_path), "--football", str(table6_path)], "compare")
    ratios = {(r["f1"], r["football"]): r["ratio"] for r in doc["ratios"]}
    assert len(ratios) == 6
    for f1 in ("drivers", "m1"):
        for football in ("laliga", "premier"):
            assert 3.5 <= ratios[(f1, football)] <= 4.5
    assert ratios[("drivers", "laliga")] == pytest.approx(3.74, abs=0.02)


def test_compare_zero_football_mean(runner, write_rows, table5_path):
    path = write_rows({"flat": [0.0, 0.0]}, name="football.csv")
    result = runner.invoke(cli, ["compare", "--f1", str(table5_path), "--football", str(path)])
    assert result.exit_code == 1
    assert records(result.stderr)[0]["error"]["code"] == "domain_error"


# --- table ------------------------------------------------------------------

def test_table_constructors_json(runner, season_2012_path):
    doc = run_json(runner, ["table", "--manifest", str(season_2012_path), "--format", "json"], "table")
    assert (doc["m"], doc["n"], doc["roster_size"], doc["team_count"]) == (3, 12, 25, 12)
    first = doc["rows"][0]
    assert (first["id"], first["total"]) == ("mclaren", 88)
    assert first["cells"][0] == {"race": "GP1", "score": 40, "m1": 1, "m2": 1}
    mercedes = next(r for r in doc["rows"] if r["id"] == "mercedes")
    assert mercedes["cells"][0] == {"race": "GP1", "score": 0, "m1": 8, "m2": None}


def test_table_drivers_csv(runner, season_2012_path):
    args = ["table", "--manifest", str(season_2012_path), "--entity", "drivers", "--format", "csv"]
    result = runner.invoke(cli, args)
    assert result.exit_code == 0, result.stderr
    lines = result.stdout.splitlines()
    assert lines[0] == "id,name,total,GP1,GP2,GP3"
    assert lines[1].split(",")[0] == "hamilton"
    massa = next(line for line in lines if line.startswith("massa,"))
    assert massa.split(",")[3] == "•"


def test_table_text(runner, season_2012_path):
    result = runner.invoke(cli, ["table", "--manifest", str(season_2012_path)])
    assert result.exit_code == 0
    header = result.stdout.splitlines()[0]
    assert header == "2012 constructors: 3 races, 12 ranked (25 drivers, 12 teams)"
    assert "GP1 m2" in result.stdout


# --- schema and version --------------------------------------------------------

def test_schema_command(runner):
    result = runner.invoke(cli, ["schema"])
    assert result.exit_code == 0
    assert sorted(json.loads(result.stdout)) == sorted(SCHEMA_NAMES)
    one = json.loads(runner.invoke(cli, ["schema", "ns"]).stdout)
    assert one["title"] == "rankdrift ns"
    Draft202012Validator.check_schema(one)


def test_unknown_schema_name(runner):
    result = runner.invoke(cli, ["schema", "nope"])
    assert result.exit_code == 2


def test_version(runner):
    result = runner.invoke(cli, ["--version"])
    assert result.exit_code == 0
    assert "1.0.1" in result.stdout
