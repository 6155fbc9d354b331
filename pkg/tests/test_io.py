"""Flat-file plumbing: deterministic CSV, JSONL records, config parsing."""

import json
import math

import numpy as np
import pytest

from gravtime._io import (
    read_config,
    render_csv,
    render_records,
    write_csv,
    write_records,
)


class TestCsv:
    def test_layout(self):
        text = render_csv(
            ["a", "b"],
            [[1, 2.5], [3, 0.1]],
            metadata={"sigma": 1.0, "label": "x"},
        )
        assert text == (
            "# sigma = 1.0\n# label = x\na,b\n1,2.5\n3,0.1\n"
        )

    def test_floats_round_trip_exactly(self):
        values = [0.1 + 0.2, math.pi, 1e-300, -0.0, 5.520350e-4]
        text = render_csv(["v"], [[v] for v in values])
        cells = text.splitlines()[1:]
        assert [float(c) for c in cells] == values

    def test_numpy_scalars_render_plain(self):
        text = render_csv(["v"], [[np.float64(0.25)]])
        assert text == "v\n0.25\n"

    def test_row_width_mismatch(self):
        with pytest.raises(ValueError):
            render_csv(["a", "b"], [[1.0]])

    def test_text_cells_with_commas_are_quoted(self):
        text = render_csv(["n", "note"], [[1, "left, right"], [2, 'say "hi"']])
        assert text == 'n,note\n1,"left, right"\n2,"say ""hi"""\n'
        import csv, io

        rows = list(csv.reader(io.StringIO(text)))
        assert rows[1] == ["1", "left, right"]
        assert rows[2] == ["2", 'say "hi"']

    def test_write_is_deterministic(self, tmp_path):
        rows = [[1.0 / 3.0, 7], [2.0 / 7.0, 8]]
        p1, p2 = tmp_path / "a.csv", tmp_path / "b.csv"
        write_csv(p1, ["x", "n"], rows, metadata={"g": 9.81})
        write_csv(p2, ["x", "n"], rows, metadata={"g": 9.81})
        assert p1.read_bytes() == p2.read_bytes()


class TestRecords:
    def test_jsonl_sorted_keys(self):
        text = render_records([{"b": 1, "a": 2}])
        assert text == '{"a": 2, "b": 1}\n'

    def test_write_and_parse(self, tmp_path):
        path = tmp_path / "out.jsonl"
        write_records(path, [{"name": "x", "passed": True}, {"name": "y"}])
        lines = path.read_text().splitlines()
        assert [json.loads(line)["name"] for line in lines] == ["x", "y"]


class TestConfig:
    def test_parse(self, tmp_path):
        path = tmp_path / "run.cfg"
        path.write_text(
            "# comment line\n"
            "sigma = 1.5\n"
            "\n"
            "g=9.81  # inline comment\n"
            "label = fountain\n"
        )
        assert read_config(path) == {
            "sigma": "1.5",
            "g": "9.81",
            "label": "fountain",
        }

    def test_error_carries_line_number(self, tmp_path):
        path = tmp_path / "bad.cfg"
        path.write_text("sigma = 1.0\nnot a pair\n")
        with pytest.raises(ValueError, match=":2:"):
            read_config(path)
