"""Pytest fixtures for rankdrift.

Shared fixtures read the repository's own data/ directory (published NS
tables, the 2012 three-race excerpt and the full 2012 season). Toy seasons
and standings tables are written to tmp_path by the factory fixtures so each
test owns its files.
"""
import json
import os
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).resolve().parent.parent))
os.environ.setdefault("ENV", "testing")

ROOT = Path(__file__).resolve().parent.parent
DATA_DIR = ROOT / "data"


@pytest.fixture(scope="session")
def data_dir():
    return DATA_DIR


@pytest.fixture(scope="session")
def season_2012_path(data_dir):
    return data_dir / "f1" / "2012" / "season.json"


@pytest.fixture(scope="session")
def season_2012(season_2012_path):
    from ingest import load_season_manifest

    return load_season_manifest(season_2012_path)


@pytest.fixture(scope="session")
def full_season_2012_path(data_dir):
    return data_dir / "f1" / "2012" / "full_season.json"


@pytest.fixture(scope="session")
def full_season_2012(full_season_2012_path):
    from ingest import load_season_manifest

    return load_season_manifest(full_season_2012_path)


@pytest.fixture(scope="session")
def table5_path(data_dir):
    return data_dir / "published" / "table5_ns.csv"


@pytest.fixture(scope="session")
def table6_path(data_dir):
    return data_dir / "published" / "table6_ns.csv"


def _columns(path):
    from cli_report.rows import read_report_rows

    columns = {}
    for row in sorted(read_report_rows([path]), key=lambda r: r.year):
        columns.setdefault(row.series, []).append(row.ns)
    return columns


@pytest.fixture(scope="session")
def table5(table5_path):
    """{"drivers": [...], "m1": [...], "m2": [...]}, 2012..2022 in year order."""
    return _columns(table5_path)


@pytest.fixture(scope="session")
def table6(table6_path):
    """{"laliga": [...], "premier": [...]}, 2012..2022 in year order."""
    return _columns(table6_path)


@pytest.fixture
def runner():
    """Click runner keeping stderr (logs, error records) apart from stdout."""
    from click.testing import CliRunner

    return CliRunner(mix_stderr=False)


@pytest.fixture
def write_season(tmp_path):
    """Write a toy season manifest plus its race CSVs; returns the manifest path.

    `races` is a list of races, each a list of finishing positions per driver
    d1..dn (None = DNF). `team_of` maps driver id -> team id.
    """

    def _write(races, year=2099, entity="drivers", team_of=None, fastest_lap_bonus=None):
        ids = [f"d{i + 1}" for i in range(len(races[0]))]
        files = []
        for k, positions in enumerate(races, start=1):
            lines = ["entrant_id,name,status,position,fastest_lap"]
            for entrant_id, position in zip(ids, positions):
                if position is None:
                    lines.append(f"{entrant_id},Driver {entrant_id},DNF,,0")
                else:
                    lines.append(f"{entrant_id},Driver {entrant_id},FIN,{position},0")
            name = f"{year}_{entity}_gp{k:02d}.csv"
            (tmp_path / name).write_text("\n".join(lines) + "\n", encoding="utf-8")
            files.append(name)

        roster = []
        for entrant_id in ids:
            entry = {"id": entrant_id, "name": f"Driver {entrant_id}"}
            if team_of:
                entry["team"] = team_of[entrant_id]
            roster.append(entry)
        doc = {"year": year, "entity": entity, "races": files, "roster": roster}
        if fastest_lap_bonus is not None:
            doc["fastest_lap_bonus"] = fastest_lap_bonus

        path = tmp_path / f"season_{year}_{entity}.json"
        path.write_text(json.dumps(doc), encoding="utf-8")
        return path

    return _write


@pytest.fixture
def write_rows(tmp_path):
    """Write long-format series,year,ns rows; `columns` maps series -> values by year."""

    def _write(columns, name="rows.csv", first_year=2012):
        lines = ["series,year,ns"]
        for series, values in columns.items():
            for offset, value in enumerate(values):
                lines.append(f"{series},{first_year + offset},{value!r}")
        path = tmp_path / name
        path.write_text("\n".join(lines) + "\n", encoding="utf-8")
        return path

    return _write
