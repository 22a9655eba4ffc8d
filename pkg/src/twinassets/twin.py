"""Similarity parameter alpha and the twin approximation S_j ~ A*B*S_i^e.

alpha is the ratio of the two assets' coefficients of variation
(sigma/mu); together with the return correlation rho it controls how
faithfully asset i proxies asset j. The approximation factors into a
deterministic term A and a stochastic term B driven by two fresh
independent noises. With the fresh noises replaced by the pair's own
driving noises the relation is an exact identity, which this module
exposes as an oracle (`exact_relation_residual`).
"""

from dataclasses import dataclass

import numpy as np

from .engine import NoiseDraw, TwinPair, terminal_pair
from .errors import InvalidParameterError, UndefinedAlphaError


@dataclass(frozen=True)
class TwinTerms:
    """Factorisation of the twin approximation for one horizon.

    a_term is deterministic, b_term stochastic (per replication, possibly
    an array), exponent = alpha * sigma_j / sigma_i.
    """

    a_term: float
    b_term: float | np.ndarray
    exponent: float


def alpha(pair: TwinPair) -> float:
    """Similarity ratio sigma_i*mu_j / (sigma_j*mu_i).

    Equals the quotient of the assets' coefficients of variation; 1 for
    identical twins, and alpha(i,j)*alpha(j,i) = 1 always.
    """
    if pair.asset_i.mu == 0:
        raise UndefinedAlphaError("alpha undefined: asset_i has zero drift")
    return pair.asset_i.sigma * pair.asset_j.mu / (pair.asset_j.sigma * pair.asset_i.mu)


def twin_exponent(pair: TwinPair) -> float:
    """Power alpha*sigma_j/sigma_i applied to S_i in the approximation."""
    return alpha(pair) * pair.asset_j.sigma / pair.asset_i.sigma


def deterministic_term(pair: TwinPair, tau: float) -> float:
    """A = spot_j * spot_i^(-alpha*sigma_j/sigma_i)
           * exp(sigma_j*(alpha*sigma_i - sigma_j)*tau/2)."""
    if not tau > 0:
        raise InvalidParameterError(f"tau must be > 0, got {tau}")
    a = alpha(pair)
    sig_i, sig_j = pair.asset_i.sigma, pair.asset_j.sigma
    expo = a * sig_j / sig_i
    # log-space form: exact A = 1 for identical twins (the log terms cancel
    # to zero), which keeps the twin price consistent with Black-Scholes to
    # machine precision in that limit
    return np.exp(
        np.log(pair.asset_j.spot)
        - expo * np.log(pair.asset_i.spot)
        + 0.5 * sig_j * (a * sig_i - sig_j) * tau
    )


def stochastic_term(pair: TwinPair, tau: float, draw: NoiseDraw):
    """B = exp(sigma_j*(1 - rho*alpha)*W_x - alpha*sigma_j*sqrt(1-rho^2)*W_y)
    with W = z*sqrt(tau). Identically 1 when (rho, alpha) = (1, 1)."""
    if not tau > 0:
        raise InvalidParameterError(f"tau must be > 0, got {tau}")
    return _stochastic_term_from(pair, tau, draw.z_x, draw.z_y)


def _stochastic_term_from(pair: TwinPair, tau: float, z_x, z_y):
    a = alpha(pair)
    sig_j = pair.asset_j.sigma
    sqrt_tau = np.sqrt(tau)
    return np.exp(
        sig_j * (1.0 - pair.rho * a) * z_x * sqrt_tau
        - a * sig_j * np.sqrt(1.0 - pair.rho**2) * z_y * sqrt_tau
    )


def twin_terms(pair: TwinPair, tau: float, draw: NoiseDraw) -> TwinTerms:
    """Bundle (A, B, exponent) for one horizon and one draw."""
    return TwinTerms(
        a_term=deterministic_term(pair, tau),
        b_term=stochastic_term(pair, tau, draw),
        exponent=twin_exponent(pair),
    )


def predict_twin(s_i_terminal, terms: TwinTerms):
    """Predicted S_j terminal value: A * B * S_i^exponent."""
    if np.any(np.less_equal(s_i_terminal, 0)):
        raise InvalidParameterError("s_i_terminal must be strictly positive")
    return terms.a_term * terms.b_term * s_i_terminal**terms.exponent


def exact_relation_residual(pair: TwinPair, tau: float, draw: NoiseDraw):
    """Relative gap of the exact twin relation under shared noise.

    Simulates (S_i, S_j) from (z_j, z_tilde), then evaluates the
    approximation with the stochastic term driven by those SAME noises
    (W_x := W_j, W_y := W_tilde). The relation is then an algebraic
    identity, so the residual is pure floating-point noise (<= 1e-12).
    """
    s_i, s_j = terminal_pair(pair, tau, draw)
    b_shared = _stochastic_term_from(pair, tau, draw.z_j, draw.z_tilde)
    predicted = deterministic_term(pair, tau) * b_shared * s_i ** twin_exponent(pair)
    return np.abs(predicted - s_j) / s_j
