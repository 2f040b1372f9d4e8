import numpy as np
import pytest
from scipy import stats

from gi0geo.edge import TRACE_HEADER, StripSpec, detect_edge, detect_edges_in_rows, simulate_strip
from gi0geo.errors import DomainError
from gi0geo.io import read_csv
from gi0geo.model import ModelParams


def matched_strip(alpha2, seed, rows=10, cols=10_000, looks=1):
    # right half brightness-matched to the left: equal means
    gamma2 = (-alpha2 - 1) / 1.0
    return simulate_strip(StripSpec(rows, cols, ModelParams(-2, 1, looks), ModelParams(alpha2, gamma2, looks), seed))


class TestSimulateStrip:
    def test_shape_and_determinism(self):
        spec = StripSpec(4, 100, ModelParams(-2, 1, 1), ModelParams(-5, 1, 1), seed=3)
        a, b = simulate_strip(spec), simulate_strip(spec)
        assert a.shape == (4, 100)
        np.testing.assert_array_equal(a, b)

    def test_homogeneous_halves_agree(self):
        ok = 0
        for s in range(40):
            strip = simulate_strip(StripSpec(10, 1000, ModelParams(-2, 1, 1), ModelParams(-2, 1, 1), s))
            ok += stats.ks_2samp(strip[:, :500].ravel(), strip[:, 500:].ravel()).pvalue > 0.01
        assert ok >= 38

    def test_brightness_step_with_unit_scale(self):
        strip = simulate_strip(StripSpec(10, 10_000, ModelParams(-2, 1, 1), ModelParams(-5, 1, 1), 0))
        left, right = np.median(strip[:, :5000]), np.median(strip[:, 5000:])
        assert left > 2 * right

    def test_looks_must_match(self):
        with pytest.raises(DomainError):
            StripSpec(2, 10, ModelParams(-2, 1, 1), ModelParams(-2, 1, 2))


class TestDetectEdge:
    def test_k_top(self):
        trace = detect_edge(matched_strip(-5, 0), 500, 1)
        assert trace.k_top == 19
        assert trace.s_gd_curve.shape == (19,)

    def test_finds_transition(self):
        hits = sum(detect_edge(matched_strip(-5, s), 500, 1).p_hat_gd == 10 for s in range(5))
        assert hits >= 4

    def test_edge_column(self):
        trace = detect_edge(matched_strip(-6, 1), 500, 1)
        assert trace.edge_column_gd == 500 * trace.p_hat_gd

    @pytest.mark.parametrize("c", [0.01, 100.0])
    def test_brightness_neutral(self, c):
        strip = matched_strip(-5, 2, cols=2000)
        a = detect_edge(strip, 200, 1)
        b = detect_edge(c * strip, 200, 1)
        np.testing.assert_allclose(a.s_gd_curve, b.s_gd_curve, rtol=1e-3, atol=1e-3)
        assert a.p_hat_gd == b.p_hat_gd

    def test_with_td(self):
        trace = detect_edge(matched_strip(-5, 3, cols=2000), 200, 1, compute_td=True)
        assert all(v is not None for v in trace.s_td_curve)
        assert trace.p_hat_td == 5
        assert trace.max_stat_td == max(trace.s_td_curve)

    def test_ties_take_smallest_index(self):
        strip = np.ones((2, 40)) + np.tile(np.arange(40) % 7, (2, 1))
        trace = detect_edge(np.tile(strip[:, :10], (1, 4)) + 0.5, 10, 1)
        assert trace.p_hat_gd == int(np.argmax(trace.s_gd_curve)) + 1

    def test_csv(self):
        trace = detect_edge(matched_strip(-5, 4, cols=1000), 100, 1)
        header, rows = read_csv(trace.to_csv())
        assert header == TRACE_HEADER
        assert len(rows) == 9
        assert rows[0][0] == "1" and rows[0][1] == "100"
        assert rows[0][8] == ""

    def test_too_narrow(self):
        with pytest.raises(DomainError):
            detect_edge(np.ones((2, 10)), 6, 1)

    def test_one_dimensional_rejected(self):
        with pytest.raises(DomainError):
            detect_edge(np.ones(100), 10, 1)


class TestBands:
    def test_partition(self):
        raster = matched_strip(-6, 5, rows=9, cols=2000)
        traces, dropped = detect_edges_in_rows(raster, 3, 200, 1)
        assert [b for b, _ in traces] == [0, 1, 2]
        assert dropped == 0
        assert all(abs(t.p_hat_gd - 5) <= 1 for _, t in traces)

    def test_leftover_rows_dropped(self):
        raster = matched_strip(-6, 6, rows=11, cols=1000)
        traces, dropped = detect_edges_in_rows(raster, 3, 100, 1)
        assert len(traces) == 3 and dropped == 2

    def test_bad_height(self):
        with pytest.raises(DomainError):
            detect_edges_in_rows(np.ones((3, 10)), 0, 2, 1)
