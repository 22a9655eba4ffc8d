"""Command-line interface: `simulate`, `price`, and `mape` subcommands.

Outputs are plain CSV (header row, `.` decimal) or key=value records so
any external tool can plot them; nothing is rendered here. Runs with the
same flags and seed are byte-identical regardless of `--threads`.

Exit codes: 0 success, 2 usage/validation error, 3 I/O error,
4 numerical failure.
"""

import argparse
import os
import sys

import numpy as np

from .engine import AssetParams, NoiseDraw, TwinPair, simulate_paths
from .errors import InvalidParameterError, NumericalError, TwinAssetsError
from .harness import GridSpec, alpha_to_mu_j, mape_asset, mape_option, sigma_sweep
from .pricing import OptionSpec, bs_call, twin_call
from .seeding import STREAM_DRAWS, STREAM_PRICE, substream
from .twin import alpha as similarity_alpha
from .twin import deterministic_term, twin_exponent

# Time units are years under a 252-trading-day convention.
TRADING_DAYS_PER_YEAR = 252
ONE_DAY = 1.0 / TRADING_DAYS_PER_YEAR
ONE_MONTH = 21.0 / TRADING_DAYS_PER_YEAR

# Baseline parameter set of the numerical illustration. sigma_j is not
# part of the published set; 0.4 is the value under which the published
# drifts give alpha = 1 exactly, and it is configurable everywhere.
DEFAULTS = {
    "mu_i": 0.4,
    "mu_j": 0.8,
    "sigma_i": 0.2,
    "sigma_j": 0.4,
    "spot_i": 80.0,
    "spot_j": 90.0,
    "rho": 1.0,
    "alpha": None,
    "steps": 252,
    "dt": ONE_DAY,
    "horizon": ONE_DAY,
    "n": None,
    "strike": 90.0,
    "rate": 0.05,
    "maturity": 0.25,
    "seed": 12345,
    "threads": "1",
    "mode": "asset",
    "rho_grid": "-1:1:21",
    "alpha_grid": "0.5:1.5:21",
    "sigma_j_values": "0.2,0.4,0.6",
    "out": None,
    "config": None,
}

_MODE_DEFAULT_N = {"asset": 40000, "option": 10000, "sigma-sweep": 40000, "horizon-compare": 40000}


def _parse_values(text: str) -> list[float]:
    """Parse a grid flag: either 'lo:hi:count' or 'v1,v2,...'."""
    text = text.strip()
    if ":" in text:
        parts = text.split(":")
        if len(parts) != 3:
            raise InvalidParameterError(f"grid must be lo:hi:count, got {text!r}")
        lo, hi, count = float(parts[0]), float(parts[1]), int(parts[2])
        if count < 1:
            raise InvalidParameterError(f"grid count must be >= 1, got {count}")
        return [float(v) for v in np.linspace(lo, hi, count)]
    return [float(v) for v in text.split(",") if v.strip()]


def _read_config(path: str) -> dict:
    """Read a `key = value` config file (lines starting with # ignored)."""
    values = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise InvalidParameterError(f"{path}:{lineno}: expected key = value")
            key, _, value = line.partition("=")
            key = key.strip().replace("-", "_")
            if key not in DEFAULTS:
                raise InvalidParameterError(f"{path}:{lineno}: unknown key {key!r}")
            values[key] = value.strip()
    return values


def _coerce(key: str, value):
    if value is None or not isinstance(value, str):
        return value
    if key in ("steps", "n", "seed"):
        return int(value)
    if key in ("threads", "mode", "rho_grid", "alpha_grid", "sigma_j_values", "out", "config"):
        return value
    return float(value)


def _merged_options(args: argparse.Namespace) -> dict:
    """Flag > config file > built-in default, per key."""
    cli = {k: v for k, v in vars(args).items() if k in DEFAULTS}
    config = _read_config(cli["config"]) if cli.get("config") else {}
    merged = {}
    for key, default in DEFAULTS.items():
        if cli.get(key) is not None:
            merged[key] = cli[key]
        elif key in config:
            merged[key] = _coerce(key, config[key])
        else:
            merged[key] = default
    return merged


def _resolve_threads(value: str) -> int:
    if value == "auto":
        return os.cpu_count() or 1
    threads = int(value)
    if threads < 1:
        raise InvalidParameterError(f"threads must be >= 1 or 'auto', got {value}")
    return threads


def _build_pair(opts: dict) -> TwinPair:
    mu_j = opts["mu_j"]
    if opts["alpha"] is not None:
        mu_j = alpha_to_mu_j(opts["alpha"], opts["mu_i"], opts["sigma_i"], opts["sigma_j"])
    return TwinPair(
        asset_i=AssetParams(mu=opts["mu_i"], sigma=opts["sigma_i"], spot=opts["spot_i"]),
        asset_j=AssetParams(mu=mu_j, sigma=opts["sigma_j"], spot=opts["spot_j"]),
        rho=opts["rho"],
    )


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


def _write_output(text: str, out_path: str | None) -> None:
    # Built fully in memory first: a failed run leaves no partial file.
    if out_path is None:
        sys.stdout.write(text)
        return
    with open(out_path, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)


def run_simulate(opts: dict) -> str:
    pair = _build_pair(opts)
    steps, dt = opts["steps"], opts["dt"]
    paths = simulate_paths(pair, steps, dt, opts["seed"])

    # Predicted trajectory: at each grid time t, apply the twin relation
    # from t=0 over horizon t, with the fresh noises accumulated as
    # independent random walks so the prediction is a coherent path.
    rng = substream(opts["seed"], STREAM_DRAWS)
    w_x = np.concatenate([[0.0], np.cumsum(np.sqrt(dt) * rng.standard_normal(steps))])
    w_y = np.concatenate([[0.0], np.cumsum(np.sqrt(dt) * rng.standard_normal(steps))])

    a = similarity_alpha(pair)
    sig_j = pair.asset_j.sigma
    expo = twin_exponent(pair)
    predicted = np.empty(steps + 1)
    predicted[0] = pair.asset_j.spot
    for k in range(1, steps + 1):
        t = paths.times[k]
        b = np.exp(
            sig_j * (1.0 - pair.rho * a) * w_x[k]
            - a * sig_j * np.sqrt(1.0 - pair.rho**2) * w_y[k]
        )
        predicted[k] = deterministic_term(pair, t) * b * paths.path_i[k] ** expo

    lines = ["t,s_i,s_j,s_j_predicted"]
    for k in range(steps + 1):
        lines.append(
            f"{_fmt(paths.times[k])},{_fmt(paths.path_i[k])},"
            f"{_fmt(paths.path_j[k])},{_fmt(predicted[k])}"
        )
    return "\n".join(lines) + "\n"


def run_price(opts: dict) -> str:
    pair = _build_pair(opts)
    spec = OptionSpec(strike=opts["strike"], maturity=opts["maturity"], rate=opts["rate"])
    n = opts["n"] or 10000

    bs_price = bs_call(pair.asset_j.spot, spec, pair.asset_j.sigma)
    rng = substream(opts["seed"], STREAM_PRICE)
    draw = NoiseDraw.sample(rng, n)
    prices = twin_call(pair, spec, draw).price
    mean = float(np.mean(prices))
    se = float(np.std(prices, ddof=1) / np.sqrt(n)) if n > 1 else 0.0

    lines = [
        f"bs_price={_fmt(bs_price)}",
        f"twin_price_mean={_fmt(mean)}",
        f"twin_price_se={_fmt(se)}",
        f"n={n}",
        f"seed={opts['seed']}",
    ]
    return "\n".join(lines) + "\n"


def run_mape(opts: dict) -> str:
    mode = opts["mode"]
    if mode not in _MODE_DEFAULT_N:
        raise InvalidParameterError(f"unknown mape mode {mode!r}")
    pair = _build_pair(opts)
    threads = _resolve_threads(opts["threads"])
    n = opts["n"] or _MODE_DEFAULT_N[mode]
    rho_values = _parse_values(opts["rho_grid"])
    alpha_values = _parse_values(opts["alpha_grid"])

    def grid_at(horizon: float) -> GridSpec:
        return GridSpec(
            rho_values=tuple(rho_values),
            alpha_values=tuple(alpha_values),
            n_replications=n,
            horizon=horizon,
            master_seed=opts["seed"],
        )

    def rows_of(result, extra: str | None = None) -> list[str]:
        out = []
        for l, rho in enumerate(result.spec.rho_values):
            for m, alpha_value in enumerate(result.spec.alpha_values):
                row = (
                    f"{_fmt(rho)},{_fmt(alpha_value)},"
                    f"{_fmt(result.grid[l, m])},{_fmt(result.standard_errors[l, m])}"
                )
                out.append(row + (f",{extra}" if extra is not None else ""))
        return out

    if mode == "asset":
        result = mape_asset(pair, grid_at(opts["horizon"]), threads=threads)
        lines = ["rho,alpha,mape,se"] + rows_of(result)
    elif mode == "option":
        spec = OptionSpec(strike=opts["strike"], maturity=opts["maturity"], rate=opts["rate"])
        result = mape_option(pair, spec, grid_at(opts["horizon"]), threads=threads)
        lines = ["rho,alpha,mape,se"] + rows_of(result)
    elif mode == "sigma-sweep":
        sigmas = _parse_values(opts["sigma_j_values"])
        results = sigma_sweep(pair, sigmas, grid_at(opts["horizon"]), threads=threads)
        lines = ["rho,alpha,mape,se,sigma_j"]
        for sigma_j, result in zip(sigmas, results):
            lines += rows_of(result, extra=_fmt(sigma_j))
    else:  # horizon-compare
        lines = ["rho,alpha,mape,se,horizon"]
        for horizon in (ONE_DAY, ONE_MONTH):
            result = mape_asset(pair, grid_at(horizon), threads=threads)
            lines += rows_of(result, extra=_fmt(horizon))
    return "\n".join(lines) + "\n"


def _add_shared(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--seed", type=int, default=None, help="master seed")
    parser.add_argument("--out", default=None, help="output file (default: stdout)")
    parser.add_argument("--threads", default=None, help="worker threads or 'auto'")
    parser.add_argument("--config", default=None, help="key = value config file")
    for flag in ("--mu-i", "--mu-j", "--sigma-i", "--sigma-j", "--spot-i", "--spot-j", "--rho"):
        parser.add_argument(flag, type=float, default=None)
    parser.add_argument("--alpha", type=float, default=None,
                        help="set similarity ratio directly (overrides --mu-j)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="twinassets",
        description="Twin-asset Monte Carlo simulation, pricing, and MAPE experiments.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_sim = sub.add_parser("simulate", help="simulate a correlated path pair with twin prediction")
    _add_shared(p_sim)
    p_sim.add_argument("--steps", type=int, default=None, help="number of time steps")
    p_sim.add_argument("--dt", type=float, default=None, help="step size in years")

    p_price = sub.add_parser("price", help="price a call on asset j via its twin")
    _add_shared(p_price)
    p_price.add_argument("--strike", type=float, default=None)
    p_price.add_argument("--rate", type=float, default=None)
    p_price.add_argument("--maturity", type=float, default=None)
    p_price.add_argument("--n", type=int, default=None, help="number of replications")

    p_mape = sub.add_parser("mape", help="run a MAPE grid experiment")
    _add_shared(p_mape)
    p_mape.add_argument("--mode", default=None,
                        choices=["asset", "option", "sigma-sweep", "horizon-compare"])
    p_mape.add_argument("--rho-grid", default=None, help="'lo:hi:count' or comma list")
    p_mape.add_argument("--alpha-grid", default=None, help="'lo:hi:count' or comma list")
    p_mape.add_argument("--sigma-j-values", default=None, help="comma list for sigma-sweep")
    p_mape.add_argument("--n", type=int, default=None, help="replications per cell")
    p_mape.add_argument("--horizon", type=float, default=None, help="prediction horizon (years)")
    p_mape.add_argument("--strike", type=float, default=None)
    p_mape.add_argument("--rate", type=float, default=None)
    p_mape.add_argument("--maturity", type=float, default=None)

    return parser


_RUNNERS = {"simulate": run_simulate, "price": run_price, "mape": run_mape}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        opts = _merged_options(args)
        text = _RUNNERS[args.command](opts)
    except NumericalError as exc:
        print(f"error: numerical: {exc}", file=sys.stderr)
        return 4
    except (TwinAssetsError, ValueError) as exc:
        print(f"error: validation: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: io: {exc}", file=sys.stderr)
        return 3
    try:
        _write_output(text, opts["out"])
    except OSError as exc:
        print(f"error: io: {exc}", file=sys.stderr)
        return 3
    return 0


if __name__ == "__main__":
    sys.exit(main())
