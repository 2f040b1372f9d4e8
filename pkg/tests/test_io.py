import json

import numpy as np
import pytest

from gi0geo.errors import (
    DimensionMismatchError,
    MissingSidecarError,
    NegativeValueError,
    RegionError,
    SidecarFormatError,
)
from gi0geo.io import (
    RegionSpec,
    format_csv,
    read_csv,
    read_raster,
    sidecar_path,
    write_csv,
    write_pgm_preview,
    write_raster,
    write_raster_csv,
)


def test_two_by_two(tmp_path):
    path = tmp_path / "r.bin"
    path.write_bytes(np.array([1.0, 2.0, 3.0, 4.0], dtype="<f8").tobytes())
    sidecar_path(path).write_text(json.dumps({"format": 1, "rows": 2, "cols": 2, "dtype": "f64", "order": "row-major"}))
    np.testing.assert_array_equal(read_raster(path), [[1.0, 2.0], [3.0, 4.0]])


def test_round_trip_bit_exact(tmp_path):
    raster = np.random.default_rng(0).gamma(1.0, 1.0, (7, 13)) * 1e-300
    path = tmp_path / "r.bin"
    write_raster(raster, path)
    back = read_raster(path)
    assert back.tobytes() == raster.astype("<f8").tobytes()


def test_dimension_mismatch(tmp_path):
    path = tmp_path / "r.bin"
    write_raster(np.ones((2, 3)), path)
    sidecar_path(path).write_text(json.dumps({"format": 1, "rows": 3, "cols": 3}))
    with pytest.raises(DimensionMismatchError):
        read_raster(path)


def test_missing_sidecar(tmp_path):
    path = tmp_path / "r.bin"
    path.write_bytes(b"\0" * 8)
    with pytest.raises(MissingSidecarError):
        read_raster(path)


def test_bad_sidecar(tmp_path):
    path = tmp_path / "r.bin"
    write_raster(np.ones((1, 1)), path)
    sidecar_path(path).write_text("{not json")
    with pytest.raises(SidecarFormatError):
        read_raster(path)
    sidecar_path(path).write_text(json.dumps({"rows": 1, "cols": 1, "dtype": "f32"}))
    with pytest.raises(SidecarFormatError):
        read_raster(path)


def test_negative_values(tmp_path):
    path = tmp_path / "r.bin"
    write_raster(np.array([[1.0, -1.0]]), path)
    with pytest.raises(NegativeValueError):
        read_raster(path)


def test_csv_raster(tmp_path):
    raster = np.array([[0.5, 1.25, 3.0], [2.0, 0.1, 7.0]])
    path = tmp_path / "r.csv"
    write_raster_csv(raster, path)
    np.testing.assert_array_equal(read_raster(path), raster)


def test_csv_raster_ragged(tmp_path):
    path = tmp_path / "r.csv"
    path.write_text("a,b\n1,2\n3\n")
    with pytest.raises(DimensionMismatchError):
        read_raster(path)


def test_pgm(tmp_path):
    path = tmp_path / "p.pgm"
    write_pgm_preview(np.full((3, 5), 2.0), path)
    data = path.read_bytes()
    header = b"P5\n5 3\n65535\n"
    assert data.startswith(header)
    pixels = np.frombuffer(data[len(header):], dtype=">u2")
    assert pixels.size == 15 and np.all(pixels == pixels[0])


def test_pgm_step(tmp_path):
    left = np.full((4, 10), 1.0)
    right = np.full((4, 10), 0.25)
    path = tmp_path / "p.pgm"
    write_pgm_preview(np.hstack([left, right]), path)
    pixels = np.frombuffer(path.read_bytes()[len(b"P5\n20 4\n65535\n"):], dtype=">u2").reshape(4, 20)
    assert pixels[:, :10].mean() > 3 * pixels[:, 10:].mean()


class TestRegion:
    def test_parse_and_extract(self):
        r = RegionSpec.parse("1,2,3,2")
        raster = np.arange(30.0).reshape(5, 6)
        np.testing.assert_array_equal(r.extract(raster), raster[2:4, 1:4])
        assert r.size == 6

    @pytest.mark.parametrize("text", ["1,2,3", "a,b,c,d", ""])
    def test_bad_text(self, text):
        with pytest.raises(RegionError):
            RegionSpec.parse(text)

    @pytest.mark.parametrize("text", ["0,0,7,1", "5,0,2,1", "0,0,0,1", "-1,0,1,1"])
    def test_out_of_bounds(self, text):
        with pytest.raises(RegionError):
            RegionSpec.parse(text).extract(np.ones((5, 6)))


def test_csv_format_round_trip(tmp_path):
    text = format_csv(["a", "b", "c"], [[0.1, 2, True], [1e-300, None, "x"]])
    assert text.startswith("# format=1\n")
    header, rows = read_csv(text)
    assert header == ["a", "b", "c"]
    assert float(rows[0][0]) == 0.1 and float(rows[1][0]) == 1e-300
    assert rows[0][2] == "true" and rows[1][1] == ""
    path = tmp_path / "t.csv"
    write_csv(path, ["a"], [[1.5]])
    assert read_csv(path) == (["a"], [["1.5"]])
