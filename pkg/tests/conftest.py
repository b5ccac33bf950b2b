"""Shared fixtures and independent oracles.

The oracles deliberately avoid the library's own code paths: Taylor
coefficients come from Cauchy integrals evaluated with an FFT, top
eigenvalues from squared-up power iteration, matrix entries from direct
high-precision arithmetic.  Agreement is then evidence, not tautology.
"""

from __future__ import annotations

import math

import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from fockrange import AffineMap, EntireSymbol, KernelTerm, PolarRationalAngle, sweep

settings.register_profile(
    "suite",
    deadline=None,
    max_examples=40,
    derandomize=True,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.filter_too_much],
)
settings.load_profile("suite")


@pytest.fixture(scope="session", autouse=True)
def _warm_eigensolver():
    # the first sweep pays the jit compile; keep it out of timed tests
    sweep(np.eye(3, dtype=np.complex128), 4)


@pytest.fixture()
def rng() -> np.random.Generator:
    return np.random.default_rng(20250815)


def fft_taylor(f, count: int, radius: float = 1.0, samples: int = 512) -> np.ndarray:
    """Taylor coefficients of a callable via the Cauchy integral on a circle."""
    j = np.arange(samples)
    z = radius * np.exp(2j * np.pi * j / samples)
    vals = np.array([f(zz) for zz in z], dtype=np.complex128)
    coeff = np.fft.fft(vals) / samples
    return coeff[:count] / radius ** np.arange(count)


def power_top_eig(H: np.ndarray, squarings: int = 60) -> float:
    """Top eigenvalue of Hermitian H by repeated squaring of a shifted copy.

    Shifting by the Frobenius norm makes the spectrum positive, so squaring
    amplifies the top eigenspace; sixty squarings kill any nonzero gap.
    """
    n = H.shape[0]
    B = H + (float(np.linalg.norm(H)) + 1.0) * np.eye(n)
    for _ in range(squarings):
        B = B @ B
        B /= np.linalg.norm(B)
    v = B @ np.full(n, 1.0 / math.sqrt(n), dtype=np.complex128)
    v /= np.linalg.norm(v)
    return float(np.real(np.vdot(v, H @ v)))


def random_symbol(
    rng: np.random.Generator,
    max_terms: int = 3,
    max_degree: int = 3,
    c_scale: float = 1.5,
    alpha_scale: float = 2.0,
) -> EntireSymbol:
    terms = []
    for _ in range(int(rng.integers(1, max_terms + 1))):
        alpha = complex(*rng.uniform(-alpha_scale, alpha_scale, 2))
        if abs(alpha) < 0.05:
            alpha += 0.5
        k = int(rng.integers(0, max_degree + 1))
        c = complex(*rng.uniform(-c_scale, c_scale, 2))
        terms.append(KernelTerm(alpha, k, c))
    return EntireSymbol.from_terms(terms)


def random_map(
    rng: np.random.Generator,
    min_mod: float = 0.3,
    max_mod: float = 0.95,
    b_scale: float = 0.8,
) -> AffineMap:
    mod = float(rng.uniform(min_mod, max_mod))
    if rng.random() < 0.5:
        den = int(rng.integers(1, 13))
        num = int(rng.integers(-den, den + 1))
        a = PolarRationalAngle.exact(mod, num, den)
    else:
        a = PolarRationalAngle.inexact(mod, float(rng.uniform(-math.pi, math.pi)))
    return AffineMap(a, complex(*rng.uniform(-b_scale, b_scale, 2)))


def mp_entry(psi: EntireSymbol, phi: AffineMap, k: int, n: int, dps: int = 60) -> complex:
    """Matrix entry (k, n) computed directly in high-precision arithmetic.

    Evaluates sqrt(k!/n!) times the z^k coefficient of psi(z) (a z + b)^n
    term by term, with no shared code or ordering with the builder.
    """
    import mpmath

    with mpmath.mp.workdps(dps):
        a = mpmath.mpc(complex(phi.a.value()))
        b = mpmath.mpc(complex(phi.b))
        total = mpmath.mpc(0)
        for t in psi.terms:
            alpha = mpmath.mpc(complex(t.alpha))
            cbar = mpmath.mpc(complex(t.c)).conjugate()
            for j in range(0, n + 1):
                r = k - j - t.k
                if r < 0:
                    continue
                total += (
                    alpha
                    * mpmath.binomial(n, j)
                    * a**j
                    * b ** (n - j)
                    * cbar**r
                    / mpmath.factorial(r)
                )
        total *= mpmath.sqrt(mpmath.factorial(k) / mpmath.factorial(n))
        return complex(total)
