"""Shared fixtures: benchmark families and cached matrix integrations."""

import numpy as np
import pytest

import hardysys as hs
from hardysys.emdenfowler import exact_ef_solution, integrate, _closed_form_arrays
from hardysys.verify import _merge_legs


@pytest.fixture(scope="session")
def benchmark4():
    p = hs.ProblemParams.symmetric(4, 0.0, 1.0, 2.0)
    fam = hs.classify(p, 1.0)[0]
    return p, fam


@pytest.fixture(scope="session")
def benchmark3():
    p = hs.ProblemParams.symmetric(3, 0.0, 1.0, 3.0)
    fams = hs.classify(p, 1.0)
    return p, fams


def matrix_params():
    """(n, gamma, nu, alpha) over {3,4,5} x {0, lambda_n/2} x {0,1} x {2*/2}."""
    out = []
    for n in (3, 4, 5):
        lam = hs.hardy_constant(n)
        for gamma in (0.0, lam / 2.0):
            for nu in (0.0, 1.0):
                out.append(hs.ProblemParams.symmetric(
                    n, gamma, nu, hs.critical_exponent(n) / 2.0))
    return out


@pytest.fixture(scope="session")
def matrix_families():
    """Every synchronized family of the acceptance matrix, all three scales."""
    cases = []
    for p in matrix_params():
        for mu0 in (0.5, 1.0, 2.0):
            for fam in hs.classify(p, mu0):
                cases.append((p, mu0, fam))
    return cases


@pytest.fixture(scope="session")
def matrix_trajectories(matrix_families):
    """tol 1e-10 integrations from the maximum out to +-10, merged and scored."""
    out = []
    for p, mu0, fam in matrix_families:
        t0 = float(np.log(mu0))
        start = exact_ef_solution(fam, t0)
        forward = integrate(start, (t0, t0 + 10.0), p, tol=1e-10)
        backward = integrate(start, (t0, t0 - 10.0), p, tol=1e-10)
        deviation = 0.0
        for leg in (forward, backward):
            ref_u, _, ref_v, _ = _closed_form_arrays(fam, leg.t)
            deviation = max(deviation,
                            float(np.max(np.abs(leg.y_u - ref_u))),
                            float(np.max(np.abs(leg.y_v - ref_v))))
        merged = _merge_legs(backward, forward)
        out.append({"params": p, "mu0": mu0, "family": fam,
                    "merged": merged, "deviation": deviation})
    return out
