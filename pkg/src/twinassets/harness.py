"""MAPE grid experiments over (rho, alpha).

For every grid cell the target drift mu_j is set so the pair's similarity
ratio equals the cell's alpha (the baseline parameters are perturbed
through mu_j only). Asset experiments compare the twin prediction of the
simulated terminal value against the truth; option experiments compare
per-replication twin call prices against a fixed Black-Scholes benchmark.

Each cell draws its noise from a substream keyed by (master seed, stream,
rho index, alpha index), so grids are bit-identical no matter how many
threads execute them or in which order.
"""

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace

import numpy as np

from .engine import AssetParams, NoiseDraw, TwinPair, terminal_pair
from .errors import InvalidParameterError
from .pricing import OptionSpec, bs_call, twin_call
from .seeding import STREAM_ASSET_MAPE, STREAM_OPTION_MAPE, substream
from .twin import deterministic_term, stochastic_term, twin_exponent


@dataclass(frozen=True)
class GridSpec:
    """Experiment grid: rho values, alpha values, replication count,
    prediction horizon (years) and master seed."""

    rho_values: tuple
    alpha_values: tuple
    n_replications: int
    horizon: float
    master_seed: int

    def __post_init__(self):
        object.__setattr__(self, "rho_values", tuple(float(r) for r in self.rho_values))
        object.__setattr__(self, "alpha_values", tuple(float(a) for a in self.alpha_values))
        if any(not -1.0 <= r <= 1.0 for r in self.rho_values):
            raise InvalidParameterError("all rho values must lie in [-1, 1]")
        if any(a <= 0 for a in self.alpha_values):
            raise InvalidParameterError("all alpha values must be > 0")
        if self.n_replications < 1:
            raise InvalidParameterError("n_replications must be >= 1")
        if not self.horizon > 0:
            raise InvalidParameterError("horizon must be > 0")


@dataclass(frozen=True)
class MapeGrid:
    """MAPE surface (percent) indexed (rho_index, alpha_index), with
    matching Monte Carlo standard errors and the spec that produced it."""

    grid: np.ndarray
    spec: GridSpec
    standard_errors: np.ndarray

    def __post_init__(self):
        expected = (len(self.spec.rho_values), len(self.spec.alpha_values))
        if self.grid.shape != expected or self.standard_errors.shape != expected:
            raise InvalidParameterError(f"grid shape must be {expected}")
        if np.any(self.grid < 0):
            raise InvalidParameterError("MAPE values must be >= 0")


def alpha_to_mu_j(alpha_target: float, mu_i: float, sigma_i: float, sigma_j: float) -> float:
    """Drift mu_j that makes the pair's similarity ratio equal alpha_target."""
    if sigma_i <= 0 or sigma_j <= 0:
        raise InvalidParameterError("volatilities must be > 0")
    if mu_i == 0:
        raise InvalidParameterError("mu_i must be nonzero")
    if alpha_target <= 0:
        raise InvalidParameterError(f"alpha_target must be > 0, got {alpha_target}")
    return alpha_target * sigma_j * mu_i / sigma_i


def _cell_pair(base: TwinPair, rho: float, alpha_value: float) -> TwinPair:
    mu_j = alpha_to_mu_j(
        alpha_value, base.asset_i.mu, base.asset_i.sigma, base.asset_j.sigma
    )
    return TwinPair(
        asset_i=base.asset_i,
        asset_j=replace(base.asset_j, mu=mu_j),
        rho=rho,
    )


def _mape_from_ape(ape: np.ndarray) -> tuple[float, float]:
    n = len(ape)
    se = 100.0 * np.std(ape, ddof=1) / np.sqrt(n) if n > 1 else 0.0
    return 100.0 * float(np.mean(ape)), float(se)


def _run_grid(grid: GridSpec, cell_fn, threads: int = 1) -> MapeGrid:
    n_rho, n_alpha = len(grid.rho_values), len(grid.alpha_values)
    mape = np.empty((n_rho, n_alpha))
    se = np.empty((n_rho, n_alpha))
    cells = [(l, m) for l in range(n_rho) for m in range(n_alpha)]

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(lambda lm: cell_fn(*lm), cells))
    else:
        results = [cell_fn(*lm) for lm in cells]

    for (l, m), (value, err) in zip(cells, results):
        mape[l, m] = value
        se[l, m] = err
    return MapeGrid(grid=mape, spec=grid, standard_errors=se)


def mape_asset(base: TwinPair, grid: GridSpec, threads: int = 1) -> MapeGrid:
    """Asset-prediction MAPE: 100/N * sum |S'_j - S_j| / S_j per cell.

    Each replication simulates the correlated pair over the horizon, then
    predicts S_j from S_i with fresh independent noises (z_x, z_y).
    """
    tau = grid.horizon

    def cell(l: int, m: int) -> tuple[float, float]:
        pair = _cell_pair(base, grid.rho_values[l], grid.alpha_values[m])
        rng = substream(grid.master_seed, STREAM_ASSET_MAPE, l, m)
        draw = NoiseDraw.sample(rng, grid.n_replications)
        s_i, s_j = terminal_pair(pair, tau, draw)
        predicted = (
            deterministic_term(pair, tau)
            * stochastic_term(pair, tau, draw)
            * s_i ** twin_exponent(pair)
        )
        return _mape_from_ape(np.abs(predicted - s_j) / s_j)

    return _run_grid(grid, cell, threads)


def mape_option(base: TwinPair, spec: OptionSpec, grid: GridSpec, threads: int = 1) -> MapeGrid:
    """Option-pricing MAPE: 100/N * sum |c'_j - c_j| / c_j per cell.

    The benchmark c_j is the Black-Scholes price of the call on asset j,
    computed once; only the twin estimate varies per replication (fresh
    (z_x, z_y) each time). The grid horizon is ignored here: the noises in
    the twin price live over the option maturity.
    """
    benchmark = bs_call(base.asset_j.spot, spec, base.asset_j.sigma)

    def cell(l: int, m: int) -> tuple[float, float]:
        pair = _cell_pair(base, grid.rho_values[l], grid.alpha_values[m])
        rng = substream(grid.master_seed, STREAM_OPTION_MAPE, l, m)
        draw = NoiseDraw.sample(rng, grid.n_replications)
        result = twin_call(pair, spec, draw)
        return _mape_from_ape(np.abs(result.price - benchmark) / benchmark)

    return _run_grid(grid, cell, threads)


def sigma_sweep(base: TwinPair, sigmas_j, grid: GridSpec, threads: int = 1) -> list[MapeGrid]:
    """Asset MAPE grids for several target volatilities sigma_j.

    Substreams do not depend on sigma_j, so repeated values give identical
    grids and cross-sigma comparisons share their noise.
    """
    if any(s <= 0 for s in sigmas_j):
        raise InvalidParameterError("all sigma_j values must be > 0")
    grids = []
    for sigma_j in sigmas_j:
        swept = TwinPair(
            asset_i=base.asset_i,
            asset_j=replace(base.asset_j, sigma=float(sigma_j)),
            rho=base.rho,
        )
        grids.append(mape_asset(swept, grid, threads=threads))
    return grids
