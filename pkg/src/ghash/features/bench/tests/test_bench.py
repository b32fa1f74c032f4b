from __future__ import annotations

import pandas as pd
import pytest

from ghash.features.bench.service import (
    BenchService,
    bench_config_from_raw,
    format_table,
    parse_methods,
    parse_rows,
    write_csv,
)
from ghash.features.bench.types import CSV_COLUMNS, DEFAULT_ROWS, BenchConfig
from ghash.features.generators.service import isomorphic_copy
from ghash.features.isomorphism.service import check_mapping


class ListSink:
    def __init__(self) -> None:
        self.rows: list[dict] = []

    def append(self, row: dict) -> None:
        self.rows.append(row)


def _small_cfg(**kw) -> BenchConfig:
    base = {"rows": ((5, 5), (5, 10)), "trials_per_row": 4, "seed": 7}
    base.update(kw)
    return BenchConfig(**base)


def test_default_rows() -> None:
    cfg = BenchConfig()
    assert cfg.rows == DEFAULT_ROWS == ((5, 5), (5, 10), (10, 10), (10, 20), (15, 15))
    assert cfg.trials_per_row == 50
    assert cfg.methods == ("brute", "hashed")


def test_config_from_raw() -> None:
    cfg = bench_config_from_raw(
        {"bench": {"rows": [[5, 5], [10, 10]], "trials_per_row": 3, "seed": 1, "methods": ["hashed"]}}
    )
    assert cfg.rows == ((5, 5), (10, 10))
    assert cfg.trials_per_row == 3
    assert cfg.seed == 1
    assert cfg.methods == ("hashed",)

    assert bench_config_from_raw({}) == BenchConfig()


@pytest.mark.parametrize(
    "raw",
    [
        {"bench": {"trials_per_row": 0}},
        {"bench": {"methods": ["brute", "vf2"]}},
        {"bench": {"rows": []}},
        {"bench": {"rows": [[5]]}},
        {"bench": {"directed_fraction": 2.0}},
    ],
)
def test_config_from_raw_rejects(raw: dict) -> None:
    with pytest.raises(ValueError):
        bench_config_from_raw(raw)


def test_parse_cli_shapes() -> None:
    assert parse_rows("5x5, 10X20") == ((5, 5), (10, 20))
    assert parse_methods("brute,hashed") == ("brute", "hashed")
    with pytest.raises(ValueError):
        parse_rows("5by5")


def test_trial_pairs_are_planted_copies() -> None:
    svc = BenchService(_small_cfg())
    for trial in range(4):
        g, h, _seed = svc.trial_pair(5, 10, trial)
        assert g.n_vertices == h.n_vertices == 5
        assert g.n_edges == h.n_edges == 10
        # labels are shifted, so only the structure matches
        assert g.labels != h.labels

    g1, _, s1 = svc.trial_pair(5, 5, 0)
    g2, _, s2 = BenchService(_small_cfg(rows=((5, 5),))).trial_pair(5, 5, 0)
    assert s1 == s2
    assert g1 == g2


def test_run_report_and_sink() -> None:
    sink = ListSink()
    report = BenchService(_small_cfg(), sink=sink).run()

    assert report.all_isomorphic
    assert len(report.trials) == 2 * 4 * 2
    assert report.trial_counts() == {(5, 5): 4, (5, 10): 4}
    assert len(sink.rows) == len(report.trials)
    assert {r["run_id"] for r in sink.rows} == {report.run_id}

    for t in report.trials:
        assert t.combinations >= t.n_vertices
        assert t.nodes_expanded >= t.n_vertices

    summary = report.summary()
    assert list(summary.columns) == ["brute", "hashed"]
    assert list(summary.index) == [(5, 5), (5, 10)]
    assert (summary["hashed"] <= summary["brute"]).all()


def test_run_is_deterministic() -> None:
    a = BenchService(_small_cfg()).run()
    b = BenchService(_small_cfg()).run()
    assert a.run_id == b.run_id
    assert a.summary().equals(b.summary())


def test_single_method() -> None:
    report = BenchService(_small_cfg(methods=("hashed",))).run()
    assert {t.method for t in report.trials} == {"hashed"}
    assert "Brute force" not in format_table(report)


def test_table_and_csv_agree(tmp_path) -> None:
    report = BenchService(_small_cfg()).run()
    table = format_table(report)
    lines = table.splitlines()

    assert lines[0].split("  ")[0].strip() == "Vertices x edges"
    assert "Brute force" in lines[0] and "Hashed" in lines[0]
    assert len(lines) == 2 + 2

    path = tmp_path / "out" / "bench.csv"
    write_csv(report, path)
    df = pd.read_csv(path)
    assert list(df.columns) == CSV_COLUMNS
    assert len(df) == len(report.trials)
    assert df["isomorphic"].all()

    means = df.groupby(["n_vertices", "n_edges", "method"])["combinations"].mean()
    for line in lines[2:]:
        row, brute, hashed = line.split()
        nv, ne = (int(x) for x in row.split("x"))
        assert f"{means[(nv, ne, 'brute')]:.1f}" == brute
        assert f"{means[(nv, ne, 'hashed')]:.1f}" == hashed


def test_hashed_stays_flat_while_brute_grows() -> None:
    report = BenchService(BenchConfig(rows=((10, 10),), trials_per_row=10, seed=7)).run()
    summary = report.summary()
    brute = summary.loc[(10, 10), "brute"]
    hashed = summary.loc[(10, 10), "hashed"]
    assert hashed <= 60
    assert brute >= 3 * hashed


def test_planted_mapping_survives_the_copy() -> None:
    g, h, seed = BenchService(_small_cfg()).trial_pair(5, 5, 1)
    _, perm = isomorphic_copy(g, seed, shift_labels=True)
    assert check_mapping(g, h, perm)
