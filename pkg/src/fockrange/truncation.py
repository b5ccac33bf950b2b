"""Finite matrix sections of weighted composition operators.

Column n of the section holds the basis coefficients of
psi(z) (a z + b)^n / sqrt(n!), obtained by convolving the weight's Taylor
series with the exact binomial expansion of the composition polynomial and
rescaling by sqrt(k!/n!) in log space.

The convolutions can cancel catastrophically (opposing kernel directions
amplify intermediate terms exponentially), so the float pass carries an
absolute-value majorant of every entry.  When the worst majorant exceeds
the matrix scale by more than three decades the whole section is recomputed
in arbitrary precision sized from the observed loss.  Spectral quantities
downstream then see entries accurate to machine precision relative to the
matrix scale.
"""

from __future__ import annotations

import csv
import io
import math
import warnings
from dataclasses import dataclass
from fractions import Fraction

import mpmath
import numpy as np

from .errors import HypothesisViolation
from .regions import structural_unit_form
from .symbols import (
    AffineMap,
    ConjugationData,
    EntireSymbol,
    KernelTerm,
    PolarRationalAngle,
    UnboundedWeightWarning,
    basis_coefficients,
    map_to_json,
    weight_to_json,
)

_LOSS_ESCALATE = 1e3
# log-factorial scaling overflows float64 past this dimension
_MAX_DIM = 140


@dataclass(frozen=True, eq=False)
class TruncatedOperator:
    """Matrix of the operator on the first `dim` basis vectors."""

    dim: int
    entries: np.ndarray
    psi: EntireSymbol
    phi: AffineMap
    precision_dps: int = 0
    notes: tuple[str, ...] = ()

    def __post_init__(self):
        self.entries.setflags(write=False)

    def column(self, n: int) -> np.ndarray:
        return self.entries[:, n].copy()

    def leading_block(self, n: int) -> "TruncatedOperator":
        """The section on the first n basis vectors; entries nest exactly."""
        if not 1 <= n <= self.dim:
            raise ValueError(f"block size {n} outside 1..{self.dim}")
        return TruncatedOperator(
            n,
            np.ascontiguousarray(self.entries[:n, :n]),
            self.psi,
            self.phi,
            self.precision_dps,
            self.notes,
        )

    def to_csv_text(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        for row in self.entries:
            writer.writerow([f"{float(z.real)!r},{float(z.imag)!r}" for z in row])
        return buf.getvalue()

    def to_json_dict(self) -> dict:
        return {
            "dim": self.dim,
            "entries": [
                [[float(z.real), float(z.imag)] for z in row] for row in self.entries
            ],
            "psi": weight_to_json(self.psi),
            "phi": map_to_json(self.phi),
            "precision_dps": self.precision_dps,
            "notes": list(self.notes),
        }


def _sqrt_fact_row(N: int) -> np.ndarray:
    return np.exp(0.5 * np.array([math.lgamma(k + 1) for k in range(N)]))


def _taylor_with_majorant(psi: EntireSymbol, N: int) -> tuple[np.ndarray, np.ndarray]:
    t = np.zeros(N, dtype=np.complex128)
    m = np.zeros(N)
    for term in psi.terms:
        cc = term.c.conjugate()
        ca = abs(cc)
        v = term.alpha
        va = abs(v)
        for j in range(term.k, N):
            t[j] += v
            m[j] += va
            v = v * cc / (j - term.k + 1)
            va = va * ca / (j - term.k + 1)
    return t, m


def _binomial_row(phi: AffineMap, n: int) -> tuple[np.ndarray, np.ndarray]:
    """Coefficients of (a z + b)^n in z^j, with their absolute values."""
    b = phi.b
    beta = np.zeros(n + 1, dtype=np.complex128)
    b_pow = 1.0 + 0j
    powers = np.empty(n + 1, dtype=np.complex128)
    for i in range(n + 1):
        powers[i] = b_pow
        b_pow *= b
    for j in range(n + 1):
        beta[j] = float(math.comb(n, j)) * phi.a.power(j) * powers[n - j]
    return beta, np.abs(beta)


def _build_float(
    psi: EntireSymbol, phi: AffineMap, N: int
) -> tuple[np.ndarray, np.ndarray]:
    t, tm = _taylor_with_majorant(psi, N)
    s = _sqrt_fact_row(N)
    entries = np.zeros((N, N), dtype=np.complex128)
    majorant = np.zeros((N, N))
    for n in range(N):
        beta, beta_abs = _binomial_row(phi, n)
        col = np.convolve(t, beta)[:N]
        col_m = np.convolve(tm, beta_abs)[:N]
        ratio = s / s[n]
        entries[:, n] = col * ratio
        majorant[:, n] = col_m * ratio
    return entries, majorant


def _a_power_mp(a: PolarRationalAngle, j: int):
    mod = mpmath.mpf(a.modulus) ** j
    if a.is_exact:
        frac = (Fraction(a.pi_num, a.pi_den) * j) % 2
        x = mpmath.mpf(frac.numerator) / frac.denominator
        return mod * mpmath.mpc(mpmath.cospi(x), mpmath.sinpi(x))
    t = mpmath.mpf(a.radians) * j
    return mod * mpmath.mpc(mpmath.cos(t), mpmath.sin(t))


def _build_mp(psi: EntireSymbol, phi: AffineMap, N: int, dps: int) -> np.ndarray:
    with mpmath.workdps(dps):
        t = [mpmath.mpc(0)] * N
        for term in psi.terms:
            cc = mpmath.mpc(term.c.real, -term.c.imag)
            v = mpmath.mpc(term.alpha.real, term.alpha.imag)
            for j in range(term.k, N):
                t[j] = t[j] + v
                v = v * cc / (j - term.k + 1)
        sf = [mpmath.sqrt(mpmath.factorial(k)) for k in range(N)]
        b = mpmath.mpc(phi.b.real, phi.b.imag)
        b_pows = [mpmath.mpc(1)]
        for _ in range(N - 1):
            b_pows.append(b_pows[-1] * b)
        a_pows = [_a_power_mp(phi.a, j) for j in range(N)]
        entries = np.zeros((N, N), dtype=np.complex128)
        for n in range(N):
            beta = [
                mpmath.binomial(n, j) * a_pows[j] * b_pows[n - j] for j in range(n + 1)
            ]
            for k in range(N):
                acc = mpmath.mpc(0)
                for j in range(max(0, k - N + 1), min(k, n) + 1):
                    acc += t[k - j] * beta[j]
                entries[k, n] = complex(acc * sf[k] / sf[n])
    return entries


def build_truncation(psi: EntireSymbol, phi: AffineMap, N: int) -> TruncatedOperator:
    """N x N matrix section of h -> psi * (h o phi)."""
    if N < 1:
        raise ValueError(f"dimension must be >= 1, got {N}")
    if N > _MAX_DIM:
        raise ValueError(f"dimension {N} beyond the supported cap {_MAX_DIM}")
    if psi.is_zero:
        raise ValueError("weight symbol is zero")
    notes: list[str] = []
    if abs(phi.a.modulus - 1.0) <= 1e-12 and not structural_unit_form(psi, phi):
        message = (
            "|a| = 1 but the weight is not psi(0) K_{-conj(a) b}: the full "
            "operator is unbounded; the finite section is still exact"
        )
        warnings.warn(message, UnboundedWeightWarning, stacklevel=2)
        notes.append(message)
    entries, majorant = _build_float(psi, phi, N)
    worst = float(np.max(majorant))
    if not math.isfinite(worst):
        raise ValueError("entry majorant overflowed; input scale is unreasonable")
    scale = float(np.max(np.abs(entries)))
    dps = 0
    if scale > 0.0 and worst / scale > _LOSS_ESCALATE:
        dps = 26 + int(math.log10(worst / scale))
        entries = _build_mp(psi, phi, N, dps)
        notes.append(f"cancellation loss {worst / scale:.2e}; recomputed at {dps} digits")
    return TruncatedOperator(N, entries, psi, phi, dps, tuple(notes))


def apply_column_oracle(
    psi: EntireSymbol, phi: AffineMap, n: int, N: int
) -> np.ndarray:
    """Column n recomputed through the symbol algebra, for cross-checking.

    Multiplies psi by the expanded composition polynomial inside the
    kernel-polynomial algebra and reads off basis coefficients, a different
    arithmetic path from the convolution in build_truncation.

    The polynomial coefficients here are the same float64 values the
    builder's first pass uses, so build-vs-oracle agreement is limited only
    by accumulation-order noise, about 1e-16 times the column majorant.
    Columns whose majorant towers over the entry scale (the builder then
    recomputes in arbitrary precision from exact binomials) are outside
    this oracle's precision model; check those against a direct
    high-precision evaluation instead.
    """
    if not 0 <= n < N:
        raise ValueError(f"need 0 <= n < N, got n={n}, N={N}")
    b_pow = 1.0 + 0j
    powers = [1.0 + 0j]
    for _ in range(n):
        b_pow *= phi.b
        powers.append(b_pow)
    poly = EntireSymbol.from_terms(
        [
            KernelTerm(float(math.comb(n, j)) * phi.a.power(j) * powers[n - j], j, 0j)
            for j in range(n + 1)
        ]
    )
    product = psi * poly
    col = basis_coefficients(product, N)
    return col * math.exp(-0.5 * math.lgamma(n + 1))


@dataclass(frozen=True)
class Compression2x2:
    """Compression of the recentred operator to span{e_n, e_{n+m}}."""

    top_left: complex
    top_right: complex
    bottom_left: complex
    bottom_right: complex
    indices: tuple[int, int]

    def as_matrix(self) -> np.ndarray:
        return np.array(
            [
                [self.top_left, self.top_right],
                [self.bottom_left, self.bottom_right],
            ],
            dtype=np.complex128,
        )


def compression(
    op_data: ConjugationData, a: PolarRationalAngle, n: int, m: int
) -> Compression2x2:
    """2x2 compression [[q0 a^n, 0], [qm a^n sqrt(C(n+m,n)), q0 a^{n+m}]]."""
    if m < 1:
        raise ValueError("m must be >= 1 (span of two distinct basis vectors)")
    if len(op_data.qhat) <= m:
        raise ValueError(f"conjugation data holds {len(op_data.qhat)} coefficients, need > {m}")
    q0, qm = op_data.qhat[0], op_data.qhat[m]
    an = a.power(n)
    return Compression2x2(
        top_left=q0 * an,
        top_right=0j,
        bottom_left=qm * an * math.sqrt(float(math.comb(n + m, n))),
        bottom_right=q0 * a.power(n + m),
        indices=(n, m),
    )


def qform_truncation(data: ConjugationData, a: PolarRationalAngle, N: int) -> TruncatedOperator:
    """Section of the recentred operator (weight q, composition a z)."""
    return build_truncation(data.q, AffineMap(a, 0j), N)
