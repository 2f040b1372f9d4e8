"""Texture edge detection along strips of speckled intensity data.

For each candidate split column ``noe * k`` (``k = 1 .. k_top``) the strip is
cut into a left and a right sample. Each side gets a joint ML fit, is divided
by its estimated scale so that both sides share unit brightness, and gets a
second texture-only fit with the scale fixed at one. The two textures are
compared with the geodesic distance (and optionally the triangular
distance), each turned into a chi-square statistic that accounts for the
unequal sample sizes. The edge is placed at the split with the largest
statistic.
"""

from dataclasses import dataclass, field
import numpy as np

from .distances import gd_same_scale, td, test_statistic
from .errors import DomainError
from .estimation import fit_alpha_fixed_gamma, fit_ml
from .model import ModelParams, draw, scale_transform

__all__ = [
    "StripSpec",
    "KEstimate",
    "EdgeTrace",
    "simulate_strip",
    "detect_edge",
    "detect_edges_in_rows",
    "TRACE_HEADER",
]

TRACE_HEADER = [
    "k", "split_col", "m1", "n1",
    "alpha1_star", "alpha2_star", "s_gd", "stat_gd", "s_td", "stat_td",
]


@dataclass(frozen=True)
class StripSpec:
    """An ``rows x cols`` strip whose halves follow two G0_I laws."""

    rows: int
    cols: int
    left: ModelParams
    right: ModelParams
    seed: int = 0

    def __post_init__(self):
        if self.rows < 1 or self.cols < 2:
            raise DomainError("strip needs at least one row and two columns")
        if abs(self.left.looks - self.right.looks) > 1e-9:
            raise DomainError("both halves must have the same number of looks")


@dataclass(frozen=True)
class KEstimate:
    alpha1: float
    alpha2: float
    gamma1: float
    gamma2: float
    alpha1_star: float
    alpha2_star: float
    clamped: bool


@dataclass
class EdgeTrace:
    """Statistic curves over the split index for one strip.

    ``k`` is one-based throughout: ``p_hat_gd = 10`` means the split after
    ``10 * noe`` columns.
    """

    noe: int
    k_top: int
    rows: int
    cols: int
    looks: float
    s_gd_curve: np.ndarray
    s_td_curve: list
    p_hat_gd: int
    p_hat_td: int | None
    gd_values: np.ndarray
    td_values: list
    per_k_estimates: list = field(repr=False)

    @property
    def edge_column_gd(self):
        return self.noe * self.p_hat_gd

    @property
    def edge_column_td(self):
        return None if self.p_hat_td is None else self.noe * self.p_hat_td

    @property
    def max_stat_gd(self):
        return float(np.max(self.s_gd_curve))

    @property
    def max_stat_td(self):
        vals = [v for v in self.s_td_curve if v is not None]
        return max(vals) if vals else None

    def rows_for_csv(self):
        out = []
        for i in range(self.k_top):
            k = i + 1
            est = self.per_k_estimates[i]
            split = self.noe * k
            s_td = self.td_values[i]
            stat_td = self.s_td_curve[i]
            out.append([
                k, split, self.rows * split, self.rows * (self.cols - split),
                est.alpha1_star, est.alpha2_star,
                float(self.gd_values[i]), float(self.s_gd_curve[i]),
                "" if s_td is None else s_td,
                "" if stat_td is None else stat_td,
            ])
        return out

    def to_csv(self):
        from .io import format_csv
        return format_csv(TRACE_HEADER, self.rows_for_csv())


def simulate_strip(spec):
    """Draw a strip: columns ``[0, cols // 2)`` from ``left``, the rest from ``right``."""
    rng = np.random.default_rng(spec.seed)
    half = spec.cols // 2
    left = draw(spec.left, spec.rows * half, rng).reshape(spec.rows, half)
    right = draw(spec.right, spec.rows * (spec.cols - half), rng).reshape(spec.rows, spec.cols - half)
    return np.hstack([left, right])


def _argmax_first(values):
    # np.argmax already returns the first maximal index
    return int(np.argmax(values)) + 1


def detect_edge(strip, noe, looks, compute_td=False):
    """Locate a texture transition in a strip by maximizing the test statistic.

    Parameters
    ----------
    strip : array_like, shape (m, n)
        Intensities.
    noe : int
        Width in columns of one estimation block.
    looks : float
        Number of looks, known for the whole image.
    compute_td : bool
        Also evaluate the triangular distance at every split. Splits where
        its integral does not converge are left as ``None`` and ignored by
        the TD argmax.

    Returns
    -------
    EdgeTrace
    """
    strip = np.asarray(strip, dtype=float)
    if strip.ndim != 2:
        raise DomainError("strip must be a 2-D array")
    m, n = strip.shape
    noe = int(noe)
    if noe < 1 or n < 2 * noe:
        raise DomainError(f"strip needs at least 2 * noe = {2 * noe} columns, has {n}")
    k_top = n // noe - 1

    gd_vals = np.empty(k_top)
    gd_stats = np.empty(k_top)
    td_vals = [None] * k_top
    td_stats = [None] * k_top
    estimates = []
    for i in range(k_top):
        split = noe * (i + 1)
        s1 = strip[:, :split].ravel()
        s2 = strip[:, split:].ravel()
        fit1 = fit_ml(s1, looks)
        fit2 = fit_ml(s2, looks)
        star1 = fit_alpha_fixed_gamma(scale_transform(s1, fit1.gamma_hat), 1.0, looks, alpha0=fit1.alpha_hat)
        star2 = fit_alpha_fixed_gamma(scale_transform(s2, fit2.gamma_hat), 1.0, looks, alpha0=fit2.alpha_hat)
        estimates.append(KEstimate(
            fit1.alpha_hat, fit2.alpha_hat, fit1.gamma_hat, fit2.gamma_hat,
            star1.alpha_hat, star2.alpha_hat,
            fit1.clamped or fit2.clamped or star1.clamped or star2.clamped,
        ))
        n1, n2 = s1.size, s2.size
        gd = gd_same_scale(star1.alpha_hat, star2.alpha_hat, looks)
        gd_vals[i] = gd.value
        gd_stats[i] = test_statistic(gd, n1, n2).statistic
        if compute_td:
            d = td(ModelParams(star1.alpha_hat, 1.0, looks), ModelParams(star2.alpha_hat, 1.0, looks))
            if d.converged:
                td_vals[i] = d.value
                td_stats[i] = test_statistic(d, n1, n2).statistic

    p_hat_td = None
    valid = [(v, i) for i, v in enumerate(td_stats) if v is not None]
    if valid:
        best = max(v for v, _ in valid)
        p_hat_td = min(i for v, i in valid if v == best) + 1

    return EdgeTrace(
        noe=noe,
        k_top=k_top,
        rows=m,
        cols=n,
        looks=float(looks),
        s_gd_curve=gd_stats,
        s_td_curve=td_stats,
        p_hat_gd=_argmax_first(gd_stats),
        p_hat_td=p_hat_td,
        gd_values=gd_vals,
        td_values=td_vals,
        per_k_estimates=estimates,
    )


def detect_edges_in_rows(raster, band_height, noe, looks, compute_td=False):
    """Run :func:`detect_edge` on consecutive horizontal bands of a raster.

    Returns ``(traces, dropped_rows)`` where ``traces`` is a list of
    ``(band_index, EdgeTrace)`` and ``dropped_rows`` counts the bottom rows
    that did not fill a whole band.
    """
    raster = np.asarray(raster, dtype=float)
    band_height = int(band_height)
    if band_height < 1:
        raise DomainError("band height must be at least 1")
    n_bands = raster.shape[0] // band_height
    dropped = raster.shape[0] - n_bands * band_height
    traces = []
    for b in range(n_bands):
        band = raster[b * band_height:(b + 1) * band_height]
        traces.append((b, detect_edge(band, noe, looks, compute_td)))
    return traces, dropped
