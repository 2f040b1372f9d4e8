"""Monte Carlo studies on simulated strips and samples.

* :func:`mc_edge_curves` averages the statistic curves of the edge detector
  over replicated strips, for several textures on the right half and
  several numbers of looks;
* :func:`mc_empirical_pvalues` estimates the rejection rate of both tests at
  the asymptotic 5% critical value when the two samples share one law;
* :func:`figure_curves` tabulates geodesic-distance curves over parameter
  grids.

Replication ``r`` always uses seed ``base_seed + r``, so results do not
depend on the order in which replications are run.
"""

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
import math

import numpy as np

from .distances import CRITICAL_5PCT, gd_same_scale, gd_same_texture, td, test_statistic
from .edge import StripSpec, detect_edge, simulate_strip
from .errors import DomainError
from .estimation import fit_alpha_fixed_gamma, fit_ml
from .io import format_csv
from .model import ModelParams, draw, scale_transform

__all__ = [
    "ExperimentConfig",
    "EdgeCurves",
    "PValueRow",
    "mc_edge_curves",
    "mc_empirical_pvalues",
    "figure_curves",
    "EDGE_CURVES_HEADER",
    "PVALUES_HEADER",
    "FIGURES_HEADER",
    "pvalues_csv",
    "figures_csv",
]

EDGE_CURVES_HEADER = ["k", "alpha2", "looks", "kind", "mean_stat"]
PVALUES_HEADER = ["size", "kind", "rejection_rate", "stderr"]
FIGURES_HEADER = ["x", "looks", "curve_id", "gd"]

DEFAULT_SAMPLE_SIZES = (200, 500, 1000, 2000, 5000)


@dataclass(frozen=True)
class ExperimentConfig:
    """Settings shared by the Monte Carlo studies.

    ``brightness`` chooses the scale of the right half of each strip:
    ``"matched"`` gives both halves the same mean intensity,
    ``gamma2 = gamma1 * (-alpha2 - 1) / (-alpha1 - 1)``, so only texture
    differs; ``"unit"`` uses ``gamma1`` on both sides.

    ``pvalue_estimator`` is ``"known_scale"`` (texture fitted with the null
    scale held fixed) or ``"rescaled"`` (joint fit, divide by the fitted
    scale, refit texture, as the edge detector does).
    """

    replications: int = 100
    base_seed: int = 0
    eta: float = 0.05
    rows: int = 10
    cols: int = 10_000
    noe: int = 500
    alpha1: float = -2.0
    gamma1: float = 1.0
    alpha2_values: tuple = (-2.0, -3.0, -5.0, -6.0)
    looks_values: tuple = (1.0, 2.0)
    brightness: str = "matched"
    compute_td: bool = True
    null_alpha: float = -2.0
    null_gamma: float = 1.0
    null_looks: float = 1.0
    pvalue_estimator: str = "known_scale"
    workers: int = 1

    def __post_init__(self):
        if self.replications < 1:
            raise DomainError("replications must be at least 1")
        if self.base_seed < 0:
            raise DomainError("base_seed must be non-negative")
        if not 0 < self.eta < 1:
            raise DomainError("eta must lie in (0, 1)")
        if self.brightness not in ("matched", "unit"):
            raise DomainError(f"unknown brightness mode {self.brightness!r}")
        if self.pvalue_estimator not in ("known_scale", "rescaled"):
            raise DomainError(f"unknown estimator {self.pvalue_estimator!r}")

    def seed(self, replication):
        return self.base_seed + replication

    def right_gamma(self, alpha2):
        if self.brightness == "unit" or alpha2 >= -1 or self.alpha1 >= -1:
            return self.gamma1
        return self.gamma1 * (-alpha2 - 1.0) / (-self.alpha1 - 1.0)

    def strip_spec(self, alpha2, looks, replication):
        return StripSpec(
            rows=self.rows,
            cols=self.cols,
            left=ModelParams(self.alpha1, self.gamma1, looks),
            right=ModelParams(alpha2, self.right_gamma(alpha2), looks),
            seed=self.seed(replication),
        )


@dataclass
class EdgeCurves:
    """Per-replication statistic curves, keyed by ``(alpha2, looks)``.

    ``stats[key][kind]`` is an array of shape ``(replications, k_top)``;
    missing TD values are NaN.
    """

    config: ExperimentConfig
    k_top: int
    stats: dict = field(default_factory=dict)
    p_hat: dict = field(default_factory=dict)

    def mean_curve(self, alpha2, looks, kind="GD"):
        arr = self.stats[(float(alpha2), float(looks))][kind]
        with np.errstate(invalid="ignore"):
            return np.nanmean(arr, axis=0)

    def max_stats(self, alpha2, looks, kind="GD"):
        arr = self.stats[(float(alpha2), float(looks))][kind]
        with np.errstate(invalid="ignore"):
            return np.nanmax(arr, axis=1)

    def argmax(self, alpha2, looks, kind="GD"):
        return self.p_hat[(float(alpha2), float(looks))][kind]

    def rows(self):
        kinds = ("GD", "TD") if self.config.compute_td else ("GD",)
        out = []
        for (alpha2, looks) in self.stats:
            for kind in kinds:
                curve = self.mean_curve(alpha2, looks, kind)
                for i, v in enumerate(curve):
                    out.append([i + 1, alpha2, looks, kind, float(v)])
        return out

    def to_csv(self):
        return format_csv(EDGE_CURVES_HEADER, self.rows())


def _edge_replication(args):
    config, alpha2, looks, r = args
    strip = simulate_strip(config.strip_spec(alpha2, looks, r))
    trace = detect_edge(strip, config.noe, looks, compute_td=config.compute_td)
    td_curve = np.array([np.nan if v is None else v for v in trace.s_td_curve])
    p_td = -1 if trace.p_hat_td is None else trace.p_hat_td
    return trace.s_gd_curve, td_curve, trace.p_hat_gd, p_td


def _map(fn, tasks, workers):
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(fn, tasks))
    return [fn(t) for t in tasks]


def mc_edge_curves(config, replication_order=None):
    """Replicate the edge detector on simulated strips.

    The left half always follows ``G0_I(alpha1, gamma1, L)``; the right half
    takes each texture in ``config.alpha2_values`` and each ``L`` in
    ``config.looks_values``. The same strip seeds are reused across
    settings.

    ``replication_order`` permutes the execution order only; outputs are
    stored by replication index.
    """
    reps = config.replications
    order = list(range(reps)) if replication_order is None else list(replication_order)
    if sorted(order) != list(range(reps)):
        raise DomainError("replication_order must be a permutation of range(replications)")
    k_top = config.cols // config.noe - 1
    result = EdgeCurves(config=config, k_top=k_top)
    for looks in config.looks_values:
        for alpha2 in config.alpha2_values:
            tasks = [(config, float(alpha2), float(looks), r) for r in order]
            outputs = _map(_edge_replication, tasks, config.workers)
            gd = np.empty((reps, k_top))
            tdv = np.empty((reps, k_top))
            p_gd = np.empty(reps, dtype=int)
            p_td = np.empty(reps, dtype=int)
            for r, (g, t, pg, pt) in zip(order, outputs):
                gd[r], tdv[r], p_gd[r], p_td[r] = g, t, pg, pt
            key = (float(alpha2), float(looks))
            result.stats[key] = {"GD": gd, "TD": tdv}
            result.p_hat[key] = {"GD": p_gd, "TD": p_td}
    return result


@dataclass(frozen=True)
class PValueRow:
    size: int
    kind: str
    rejection_rate: float
    stderr: float
    rejections: int
    valid: int


def _texture_estimate(values, config):
    L = config.null_looks
    if config.pvalue_estimator == "known_scale":
        return fit_alpha_fixed_gamma(values, config.null_gamma, L).alpha_hat
    joint = fit_ml(values, L)
    scaled = scale_transform(values, joint.gamma_hat)
    return fit_alpha_fixed_gamma(scaled, 1.0, L, alpha0=joint.alpha_hat).alpha_hat


def _pvalue_replication(args):
    config, size, r = args
    null = ModelParams(config.null_alpha, config.null_gamma, config.null_looks)
    rng = np.random.default_rng([config.seed(r), size])
    x = draw(null, size, rng)
    y = draw(null, size, rng)
    a1 = _texture_estimate(x, config)
    a2 = _texture_estimate(y, config)
    L = config.null_looks
    s_gd = test_statistic(gd_same_scale(a1, a2, L), size, size).statistic
    scale = config.null_gamma if config.pvalue_estimator == "known_scale" else 1.0
    d = td(ModelParams(a1, scale, L), ModelParams(a2, scale, L))
    s_td = test_statistic(d, size, size).statistic if d.converged else math.nan
    return s_gd, s_td


def mc_empirical_pvalues(config, sample_sizes=DEFAULT_SAMPLE_SIZES, critical=CRITICAL_5PCT):
    """Rejection rates of both tests when both samples share the null law.

    For every size two independent samples of that size are drawn from
    ``G0_I(null_alpha, null_gamma, null_looks)``, their textures estimated
    and both statistics compared with ``critical``. TD replications whose
    integral did not converge are left out of the TD rate.

    Returns a list of :class:`PValueRow`, GD before TD for each size.
    """
    out = []
    for size in sample_sizes:
        size = int(size)
        tasks = [(config, size, r) for r in range(config.replications)]
        stats = np.array(_map(_pvalue_replication, tasks, config.workers))
        for j, kind in enumerate(("GD", "TD")):
            col = stats[:, j]
            valid = col[np.isfinite(col)]
            n_valid = valid.size
            hits = int(np.sum(valid > critical))
            rate = hits / n_valid if n_valid else math.nan
            se = math.sqrt(rate * (1.0 - rate) / n_valid) if n_valid else math.nan
            out.append(PValueRow(size, kind, rate, se, hits, n_valid))
    return out


def pvalues_csv(rows):
    return format_csv(PVALUES_HEADER, [[r.size, r.kind, r.rejection_rate, r.stderr] for r in rows])


def _grid(lo, hi, n_points, include):
    return np.unique(np.append(np.linspace(lo, hi, n_points), include))


FIGURE_SPECS = (
    # curve_id, varying parameter, fixed reference, range, looks
    ("fig1a", "alpha", -8.0, (-14.0, -2.0), (1, 2)),
    ("fig1b", "alpha", -2.0, (-3.5, -1.0), (1, 2)),
    ("fig2a", "alpha", -8.0, (-14.0, -2.0), (3, 6, 8)),
    ("fig2b", "alpha", -2.0, (-3.5, -1.0), (3, 6, 8)),
    ("fig3a", "gamma", 5.0, (1.0, 10.0), (1, 2)),
    ("fig3b", "gamma", 10.0, (1.0, 20.0), (1, 2)),
)
FIGURE_ALPHA = -2.0


def figure_curves(n_points=121):
    """Geodesic-distance curves over the grids of the six figure panels.

    Texture panels measure from the reference texture with unit scale; scale
    panels measure from the reference scale with texture ``-2``. Each grid
    contains its reference point, where the curve is zero.

    Returns a list of ``[x, looks, curve_id, gd]`` rows.
    """
    rows = []
    for curve_id, which, ref, (lo, hi), looks_list in FIGURE_SPECS:
        grid = _grid(lo, hi, n_points, ref)
        for L in looks_list:
            for x in grid:
                x = float(x)
                if which == "alpha":
                    v = gd_same_scale(ref, x, L).value
                else:
                    v = gd_same_texture(ref, x, FIGURE_ALPHA, L).value
                rows.append([x, L, curve_id, v])
    return rows


def figures_csv(n_points=121):
    return format_csv(FIGURES_HEADER, figure_curves(n_points))


def with_overrides(config, **kwargs):
    return replace(config, **{k: v for k, v in kwargs.items() if v is not None})
