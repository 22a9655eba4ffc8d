import math

import pytest

from twinassets import AssetParams, TwinPair


@pytest.fixture
def section3_pair():
    """Baseline illustration parameters (sigma_j = 0.4 so alpha = 1)."""
    return TwinPair(
        asset_i=AssetParams(mu=0.4, sigma=0.2, spot=80.0),
        asset_j=AssetParams(mu=0.8, sigma=0.4, spot=90.0),
        rho=1.0,
    )


def reference_bs_call(spot, strike, rate, sigma, tau):
    """Scalar Black-Scholes oracle using only the math module.

    Independent of the scipy-based implementation under test.
    """

    def ncdf(x):
        return 0.5 * (1.0 + math.erf(x / math.sqrt(2.0)))

    d1 = (math.log(spot / strike) + (rate + 0.5 * sigma**2) * tau) / (sigma * math.sqrt(tau))
    d2 = d1 - sigma * math.sqrt(tau)
    return spot * ncdf(d1) - strike * math.exp(-rate * tau) * ncdf(d2)
