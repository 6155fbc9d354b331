import pytest

from gravtime_plots.errors import MissingInput, SchemaMismatch
from gravtime_plots.loader import read_table, require_header, require_meta


def write(tmp_path, text):
    path = tmp_path / "t.csv"
    path.write_text(text)
    return path


class TestReadTable:
    def test_metadata_header_rows(self, tmp_path):
        path = write(tmp_path, "# sigma = 1.0\n# model = demo\na,b\n1,2.5\n3,0.1\n")
        table = read_table(path)
        assert table.meta == {"sigma": "1.0", "model": "demo"}
        assert table.header == ("a", "b")
        assert list(table.floats("b")) == [2.5, 0.1]

    def test_quoted_cell_with_comma(self, tmp_path):
        path = write(tmp_path, 'name,note\nx,"left, right"\n')
        table = read_table(path)
        assert table.column("note") == ["left, right"]

    def test_missing_file(self, tmp_path):
        with pytest.raises(MissingInput):
            read_table(tmp_path / "absent.csv")

    def test_empty_file(self, tmp_path):
        with pytest.raises(SchemaMismatch, match="no header"):
            read_table(write(tmp_path, "# only = metadata\n"))

    def test_ragged_row(self, tmp_path):
        with pytest.raises(SchemaMismatch, match="cells"):
            read_table(write(tmp_path, "a,b\n1\n"))

    def test_unknown_column(self, tmp_path):
        table = read_table(write(tmp_path, "a\n1\n"))
        with pytest.raises(SchemaMismatch, match="no column"):
            table.column("z")

    def test_non_numeric_column(self, tmp_path):
        table = read_table(write(tmp_path, "a\nhello\n"))
        with pytest.raises(SchemaMismatch, match="not numeric"):
            table.floats("a")


class TestRequirements:
    def test_header_mismatch(self, tmp_path):
        table = read_table(write(tmp_path, "a,b\n1,2\n"))
        require_header(table, ("a", "b"))
        with pytest.raises(SchemaMismatch, match="documented schema"):
            require_header(table, ("a", "c"))

    def test_meta_requirement(self, tmp_path):
        table = read_table(write(tmp_path, "# k = v\na\n1\n"))
        assert require_meta(table, "k") == "v"
        with pytest.raises(SchemaMismatch, match="metadata key"):
            require_meta(table, "absent")
