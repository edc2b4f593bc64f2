import time

import pytest

from supercoherent import SystemSpec, build_model, encode, leakage_rate


@pytest.fixture(scope="session")
def basis4z():
    from supercoherent import full_labeled_basis

    return full_labeled_basis(4, "z")


@pytest.fixture(scope="session")
def logical_zero_vector():
    return encode(1.0, 0.0).vector


@pytest.fixture(scope="session")
def thermal_sweep(logical_zero_vector):
    """Leakage rates over beta*delta in {2, .., 6} plus the wall time spent.

    Shared between the rate-scaling unit tests and the acceptance run so the
    master equation is integrated once per temperature.
    """
    spec = SystemSpec(4, 1.0)
    start = time.perf_counter()
    rates = {}
    for beta in (2.0, 3.0, 4.0, 5.0, 6.0):
        model = build_model(spec, beta, g=0.1)
        rates[beta] = leakage_rate(model, logical_zero_vector)
    elapsed = time.perf_counter() - start
    return rates, elapsed
