"""Kernel-polynomial symbol algebra on the Fock space.

The Fock space carries the orthonormal basis e_m(z) = z^m / sqrt(m!) and the
reproducing kernels K_c(z) = exp(conj(c) z) with <f, K_c> = f(c).  Weights are
modelled as finite sums of terms alpha * z^k * K_c(z).  This class is closed
under addition, products, argument shifts z -> z + p, and multiplication by
kernels, which is exactly what conjugating a weighted composition operator to
its fixed-point form requires, and every coefficient functional of interest
has a closed per-term recurrence.

Pairings and coefficient extractions run in float first while tracking an
absolute-value majorant of every sum; when cancellation eats more than three
decimal digits the computation is redone in arbitrary precision sized from
the observed loss, so results stay accurate near machine precision even for
badly cancelling parameter choices.
"""

from __future__ import annotations

import cmath
import math
import warnings
from dataclasses import dataclass
from fractions import Fraction

import mpmath
import numpy as np

from .errors import HypothesisViolation, SeriesDivergence, SymbolSpecError

# Merging tolerance for kernel parameters during canonicalization.
_C_MERGE_TOL = 1e-15
# Digits of cancellation tolerated before escalating to arbitrary precision.
_LOSS_ESCALATE = 1e3


class ExpandingMapWarning(UserWarning):
    """An affine map with |a| > 1 was constructed in non-strict mode."""


class UnboundedWeightWarning(UserWarning):
    """A truncation was built for a symbol pair that is not known bounded."""


def _require_finite_complex(value, what: str) -> complex:
    z = complex(value)
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise ValueError(f"{what} must be finite, got {z!r}")
    return z


def _sqrt_factorial(k: int) -> float:
    # exp(lgamma) keeps sqrt(k!) representable well past naive factorials
    return math.exp(0.5 * math.lgamma(k + 1))


@dataclass(frozen=True)
class PolarRationalAngle:
    """Complex number in polar form with an exact or inexact angle.

    Exact angles are stored as the reduced fraction pi_num/pi_den of pi,
    normalized into (-1, 1].  Inexact angles carry raw radians.  Keeping the
    representation explicit lets root-of-unity questions be answered by
    integer arithmetic instead of floating-point angle recovery.
    """

    modulus: float
    pi_num: int | None = None
    pi_den: int | None = None
    radians: float | None = None

    def __post_init__(self):
        if not (math.isfinite(self.modulus) and self.modulus >= 0.0):
            raise ValueError(f"modulus must be finite and >= 0, got {self.modulus}")
        exact = self.pi_num is not None or self.pi_den is not None
        if exact == (self.radians is not None):
            raise ValueError("exactly one of (pi_num, pi_den) or radians must be set")
        if exact:
            if self.pi_num is None or self.pi_den is None or self.pi_den <= 0:
                raise ValueError("exact angle needs pi_num and positive pi_den")
        elif not math.isfinite(self.radians):
            raise ValueError("radians must be finite")

    @classmethod
    def exact(cls, modulus: float, pi_num: int, pi_den: int) -> "PolarRationalAngle":
        frac = Fraction(pi_num, pi_den) % 2
        if frac > 1:
            frac -= 2
        return cls(float(modulus), int(frac.numerator), int(frac.denominator), None)

    @classmethod
    def inexact(cls, modulus: float, radians: float) -> "PolarRationalAngle":
        return cls(float(modulus), None, None, float(radians))

    @classmethod
    def from_complex(cls, z) -> "PolarRationalAngle":
        z = _require_finite_complex(z, "polar value")
        return cls(abs(z), None, None, math.atan2(z.imag, z.real))

    @property
    def is_exact(self) -> bool:
        return self.pi_num is not None

    @property
    def angle(self) -> float:
        if self.is_exact:
            return math.pi * self.pi_num / self.pi_den
        return self.radians

    def value(self) -> complex:
        if self.is_exact:
            return self.modulus * _cis_pi(Fraction(self.pi_num, self.pi_den))
        return self.modulus * complex(math.cos(self.radians), math.sin(self.radians))

    def power(self, n: int) -> complex:
        """Return value()**n with the angle reduced exactly when possible."""
        if n < 0:
            raise ValueError("power expects n >= 0")
        mod = self.modulus**n
        if self.is_exact:
            frac = (Fraction(self.pi_num, self.pi_den) * n) % 2
            if frac > 1:
                frac -= 2
            return mod * _cis_pi(frac)
        t = self.radians * n
        return mod * complex(math.cos(t), math.sin(t))


def _cis_pi(frac: Fraction) -> complex:
    """exp(i pi frac) with exact values at the quarter turns."""
    frac = frac % 2
    if frac > 1:
        frac -= 2
    if frac == 0:
        return complex(1.0, 0.0)
    if frac == 1:
        return complex(-1.0, 0.0)
    if frac == Fraction(1, 2):
        return complex(0.0, 1.0)
    if frac == Fraction(-1, 2):
        return complex(0.0, -1.0)
    t = math.pi * frac.numerator / frac.denominator
    return complex(math.cos(t), math.sin(t))


@dataclass(frozen=True)
class KernelTerm:
    """One summand alpha * z^k * K_c of a kernel-polynomial symbol."""

    alpha: complex
    k: int
    c: complex

    def __post_init__(self):
        object.__setattr__(self, "alpha", _require_finite_complex(self.alpha, "alpha"))
        object.__setattr__(self, "c", _require_finite_complex(self.c, "c"))
        if not isinstance(self.k, int) or self.k < 0:
            raise ValueError(f"monomial degree k must be a nonnegative int, got {self.k!r}")


def _canonical(terms) -> tuple[KernelTerm, ...]:
    live = [t for t in terms if t.alpha != 0]
    live.sort(key=lambda t: (t.k, t.c.real, t.c.imag))
    merged: list[KernelTerm] = []
    for t in live:
        if merged and merged[-1].k == t.k and abs(merged[-1].c - t.c) <= _C_MERGE_TOL:
            prev = merged[-1]
            merged[-1] = KernelTerm(prev.alpha + t.alpha, prev.k, prev.c)
        else:
            merged.append(t)
    return tuple(t for t in merged if t.alpha != 0)


@dataclass(frozen=True)
class EntireSymbol:
    """Finite sum of KernelTerm summands, kept in canonical sorted form.

    approximate marks symbols built from truncated raw Taylor data; those are
    honest polynomials but do not represent the original function exactly.
    """

    terms: tuple[KernelTerm, ...] = ()
    approximate: bool = False

    @classmethod
    def from_terms(cls, terms, approximate: bool = False) -> "EntireSymbol":
        return cls(_canonical(terms), approximate)

    @classmethod
    def constant(cls, alpha) -> "EntireSymbol":
        return cls.from_terms([KernelTerm(alpha, 0, 0j)])

    @classmethod
    def monomial(cls, k: int, alpha=1.0) -> "EntireSymbol":
        return cls.from_terms([KernelTerm(alpha, k, 0j)])

    @classmethod
    def kernel(cls, c, alpha=1.0) -> "EntireSymbol":
        return cls.from_terms([KernelTerm(alpha, 0, c)])

    @classmethod
    def from_taylor(cls, coefficients) -> "EntireSymbol":
        """Truncated-Taylor constructor; the result is flagged approximate."""
        terms = [KernelTerm(a, k, 0j) for k, a in enumerate(coefficients)]
        return cls.from_terms(terms, approximate=True)

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def __call__(self, z) -> complex:
        return evaluate(self, z)

    def __add__(self, other: "EntireSymbol") -> "EntireSymbol":
        return EntireSymbol.from_terms(
            self.terms + other.terms, self.approximate or other.approximate
        )

    def __mul__(self, other) -> "EntireSymbol":
        if isinstance(other, EntireSymbol):
            prods = [
                KernelTerm(s.alpha * t.alpha, s.k + t.k, s.c + t.c)
                for s in self.terms
                for t in other.terms
            ]
            return EntireSymbol.from_terms(prods, self.approximate or other.approximate)
        scalar = complex(other)
        return EntireSymbol.from_terms(
            [KernelTerm(scalar * t.alpha, t.k, t.c) for t in self.terms], self.approximate
        )

    __rmul__ = __mul__

    def __sub__(self, other: "EntireSymbol") -> "EntireSymbol":
        return self + (other * -1.0)

    def shift(self, p) -> "EntireSymbol":
        """Recenter the argument: returns the symbol z -> self(z + p)."""
        p = _require_finite_complex(p, "shift offset")
        out: list[KernelTerm] = []
        for t in self.terms:
            base = t.alpha * cmath.exp(t.c.conjugate() * p)
            for i in range(t.k + 1):
                coeff = base * math.comb(t.k, i) * p ** (t.k - i)
                out.append(KernelTerm(coeff, i, t.c))
        return EntireSymbol.from_terms(out, self.approximate)

    def max_kernel_modulus(self) -> float:
        return max((abs(t.c) for t in self.terms), default=0.0)

    def max_degree(self) -> int:
        return max((t.k for t in self.terms), default=0)


def evaluate(f: EntireSymbol, z) -> complex:
    """Pointwise value of the symbol; raises OverflowError out of float range."""
    z = _require_finite_complex(z, "evaluation point")
    total = 0j
    for t in f.terms:
        total += t.alpha * z**t.k * cmath.exp(t.c.conjugate() * z)
    if not (math.isfinite(total.real) and math.isfinite(total.imag)):
        raise OverflowError("symbol value exceeded the floating range")
    return total


def taylor_coefficients(f: EntireSymbol, count: int) -> list[complex]:
    """First `count` Taylor coefficients of f at 0.

    Each term alpha z^k exp(conj(c) z) contributes alpha conj(c)^(j-k)/(j-k)!
    to coefficient j >= k, accumulated with a stable ratio recurrence.
    """
    if count < 0:
        raise ValueError("count must be >= 0")
    out = [0j] * count
    for t in f.terms:
        cc = t.c.conjugate()
        v = t.alpha
        for j in range(t.k, count):
            out[j] += v
            v = v * cc / (j - t.k + 1)
    return out


def _basis_float(f: EntireSymbol, count: int) -> tuple[np.ndarray, np.ndarray]:
    """Basis coefficients <f, e_m> in float64 plus an absolute-value majorant."""
    vals = np.zeros(count, dtype=np.complex128)
    maj = np.zeros(count, dtype=np.float64)
    for t in f.terms:
        cc = t.c.conjugate()
        acc = abs(cc)
        if t.k >= count:
            continue
        v = t.alpha * _sqrt_factorial(t.k)
        a = abs(v)
        for m in range(t.k, count):
            vals[m] += v
            maj[m] += a
            ratio = math.sqrt(m + 1) / (m - t.k + 1)
            v = v * cc * ratio
            a = a * acc * ratio
    return vals, maj


def _basis_mp(f: EntireSymbol, count: int, dps: int) -> list:
    """Arbitrary-precision basis coefficients, one mpmath.mpc per index."""
    with mpmath.workdps(dps):
        vals = [mpmath.mpc(0)] * count
        for t in f.terms:
            cc = mpmath.mpc(t.c.real, -t.c.imag)
            if t.k >= count:
                continue
            v = mpmath.mpc(t.alpha.real, t.alpha.imag) * mpmath.sqrt(mpmath.factorial(t.k))
            for m in range(t.k, count):
                vals[m] = vals[m] + v
                v = v * cc * mpmath.sqrt(m + 1) / (m - t.k + 1)
        return vals


def basis_coefficients(f: EntireSymbol, count: int) -> np.ndarray:
    """Coefficients of f against the orthonormal basis, sqrt(m!) * t_m.

    Escalates to arbitrary precision when the float majorant reveals heavy
    cancellation across terms.
    """
    vals, maj = _basis_float(f, count)
    scale = float(np.max(np.abs(vals))) if count else 0.0
    worst = float(np.max(maj)) if count else 0.0
    if worst == 0.0:
        return vals
    loss = worst / max(scale, worst * 1e-17)
    if loss <= _LOSS_ESCALATE:
        return vals
    dps = 26 + int(math.log10(loss))
    mp_vals = _basis_mp(f, count, dps)
    return np.array([complex(v) for v in mp_vals], dtype=np.complex128)


_GROWTH_RUN_LIMIT = 50


def inner_product(f: EntireSymbol, g: EntireSymbol) -> complex:
    """Fock-space pairing <f, g> = sum_m <f, e_m> conj(<g, e_m>).

    The series is summed until its superexponentially decaying tail is below
    1e-14 relative; 50 consecutive growing partial sums abort the attempt
    since they signal a pairing scale the series representation cannot carry.
    """
    if f.is_zero or g.is_zero:
        return 0j
    scale_cc = f.max_kernel_modulus() * g.max_kernel_modulus()
    m_min = int(2.0 * scale_cc) + f.max_degree() + g.max_degree() + 8
    count = 96
    while True:
        sf, majf = _basis_float(f, count)
        sg, majg = _basis_float(g, count)
        u = sf * np.conj(sg)
        mag = np.abs(u)
        umaj = majf * majg
        if not np.all(np.isfinite(umaj)):
            raise SeriesDivergence("pairing terms overflowed; kernel scale too large")
        stop = _series_stop(u, mag, m_min)
        if stop is not None:
            break
        if count >= 1024:
            raise SeriesDivergence("pairing series did not settle within 1024 terms")
        count *= 2
    total = complex(np.sum(u[:stop]))
    gross = float(np.sum(umaj[:stop]))
    if gross == 0.0:
        return total
    loss = gross / max(abs(total), gross * 1e-17)
    if loss <= _LOSS_ESCALATE:
        return total
    dps = 26 + int(math.log10(loss))
    with mpmath.workdps(dps):
        mf = _basis_mp(f, stop, dps)
        mg = _basis_mp(g, stop, dps)
        acc = mpmath.mpc(0)
        for a, b in zip(mf, mg):
            acc += a * mpmath.conj(b)
        return complex(acc)


def _series_stop(u: np.ndarray, mag: np.ndarray, m_min: int) -> int | None:
    """Index after which the tail is negligible, or None to extend the series.

    Raises SeriesDivergence when the partial sums grow for 50 consecutive
    terms before any settle point is reached.
    """
    partial = np.cumsum(u)
    abs_partial = np.abs(partial)
    peak = 0.0
    run = 0
    quiet = 0
    for m in range(len(u)):
        if m > 0:
            if abs_partial[m] > abs_partial[m - 1]:
                run += 1
                if run >= _GROWTH_RUN_LIMIT:
                    raise SeriesDivergence(
                        "partial sums grew for 50 consecutive terms; "
                        "the pairing scale is outside the usable range"
                    )
            else:
                run = 0
        peak = max(peak, mag[m])
        threshold = 1e-15 * max(abs_partial[m], peak * 2.3e-16)
        if mag[m] <= threshold:
            quiet += 1
            if quiet >= 5 and m >= m_min:
                return m + 1
        else:
            quiet = 0
    return None


def norm(f: EntireSymbol) -> float:
    value = inner_product(f, f)
    return math.sqrt(max(value.real, 0.0))


@dataclass(frozen=True)
class AffineMap:
    """Composition symbol z -> a z + b with |a| <= 1 enforced by default."""

    a: PolarRationalAngle
    b: complex
    strict: bool = True

    def __post_init__(self):
        object.__setattr__(self, "b", _require_finite_complex(self.b, "b"))
        if self.a.modulus > 1.0 + 1e-12:
            if self.strict:
                raise HypothesisViolation(
                    f"affine map needs |a| <= 1, got |a| = {self.a.modulus}"
                )
            warnings.warn(
                f"affine map with |a| = {self.a.modulus} > 1 expands the plane",
                ExpandingMapWarning,
                stacklevel=2,
            )

    @classmethod
    def cart(cls, a, b, strict: bool = True) -> "AffineMap":
        return cls(PolarRationalAngle.from_complex(a), b, strict)

    @property
    def a_value(self) -> complex:
        return self.a.value()

    def __call__(self, z) -> complex:
        return self.a_value * z + self.b


def fixed_point(phi: AffineMap) -> complex:
    """Fixed point b/(1 - a) of the affine map; undefined when a = 1."""
    a = phi.a_value
    exactly_one = phi.a.is_exact and phi.a.pi_num == 0 and phi.a.modulus == 1.0
    if exactly_one or a == 1.0 + 0.0j:
        raise HypothesisViolation("a = 1 gives a translation with no fixed point")
    return phi.b / (1.0 - a)


@dataclass(frozen=True)
class ConjugationData:
    """Fixed point p, recentred weight q, and its basis coefficients q_hat."""

    p: complex
    q: EntireSymbol
    qhat: tuple[complex, ...]


def conjugate_to_q(psi: EntireSymbol, phi: AffineMap, count: int = 16) -> ConjugationData:
    """Recenter C_{psi, phi} at the fixed point of phi.

    Returns q(z) = exp(conj(p)(a - 1) z) * psi(z + p) together with its first
    `count` basis coefficients.  Requires 0 < |a| < 1 so the fixed point is
    attracting.
    """
    mod = phi.a.modulus
    if not 0.0 < mod < 1.0:
        raise HypothesisViolation(f"conjugation needs 0 < |a| < 1, got |a| = {mod}")
    a = phi.a_value
    p = fixed_point(phi)
    w = p * (a.conjugate() - 1.0)
    q = psi.shift(p) * EntireSymbol.kernel(w)
    qhat = tuple(complex(v) for v in basis_coefficients(q, count))
    psi_at_p = evaluate(psi, p)
    if count > 0 and abs(qhat[0] - psi_at_p) > 1e-12 * (1.0 + abs(psi_at_p)):
        raise ArithmeticError("conjugation self-check failed: q(0) != psi(p)")
    return ConjugationData(p=p, q=q, qhat=qhat)


# ---------------------------------------------------------------------------
# dict / JSON interchange


def _parse_pair(obj, path: str) -> complex:
    if (
        not isinstance(obj, (list, tuple))
        or len(obj) != 2
        or not all(isinstance(x, (int, float)) for x in obj)
    ):
        raise SymbolSpecError(f"{path}: expected [re, im] number pair, got {obj!r}")
    return complex(obj[0], obj[1])


def parse_weight(obj, path: str = "psi") -> EntireSymbol:
    if not isinstance(obj, list) or not obj:
        raise SymbolSpecError(f"{path}: expected a nonempty list of terms")
    terms = []
    for i, raw in enumerate(obj):
        here = f"{path}[{i}]"
        if not isinstance(raw, dict):
            raise SymbolSpecError(f"{here}: expected an object")
        unknown = set(raw) - {"alpha", "k", "c"}
        if unknown:
            raise SymbolSpecError(f"{here}: unknown fields {sorted(unknown)}")
        if "alpha" not in raw or "c" not in raw:
            raise SymbolSpecError(f"{here}: fields alpha and c are required")
        k = raw.get("k", 0)
        if not isinstance(k, int) or isinstance(k, bool) or k < 0:
            raise SymbolSpecError(f"{here}.k: expected a nonnegative integer")
        terms.append(
            KernelTerm(_parse_pair(raw["alpha"], f"{here}.alpha"), k, _parse_pair(raw["c"], f"{here}.c"))
        )
    return EntireSymbol.from_terms(terms)


def parse_map(obj, path: str = "phi") -> AffineMap:
    if not isinstance(obj, dict):
        raise SymbolSpecError(f"{path}: expected an object with fields a and b")
    unknown = set(obj) - {"a", "b"}
    if unknown:
        raise SymbolSpecError(f"{path}: unknown fields {sorted(unknown)}")
    if "a" not in obj or "b" not in obj:
        raise SymbolSpecError(f"{path}: fields a and b are required")
    a = _parse_angle(obj["a"], f"{path}.a")
    b = _parse_pair(obj["b"], f"{path}.b")
    return AffineMap(a, b)


def _parse_angle(obj, path: str) -> PolarRationalAngle:
    if not isinstance(obj, dict) or len(obj) != 1:
        raise SymbolSpecError(f"{path}: expected exactly one of 'polar' or 'cart'")
    if "cart" in obj:
        return PolarRationalAngle.from_complex(_parse_pair(obj["cart"], f"{path}.cart"))
    if "polar" not in obj:
        raise SymbolSpecError(f"{path}: expected 'polar' or 'cart', got {sorted(obj)}")
    polar = obj["polar"]
    if not isinstance(polar, dict) or "r" not in polar:
        raise SymbolSpecError(f"{path}.polar: expected an object with field r")
    r = polar["r"]
    if not isinstance(r, (int, float)) or isinstance(r, bool) or r < 0:
        raise SymbolSpecError(f"{path}.polar.r: expected a number >= 0")
    keys = set(polar) - {"r"}
    if keys == {"pi_num", "pi_den"}:
        num, den = polar["pi_num"], polar["pi_den"]
        if not isinstance(num, int) or not isinstance(den, int) or den <= 0:
            raise SymbolSpecError(f"{path}.polar: pi_num/pi_den must be ints, pi_den > 0")
        return PolarRationalAngle.exact(float(r), num, den)
    if keys == {"radians"}:
        t = polar["radians"]
        if not isinstance(t, (int, float)) or isinstance(t, bool):
            raise SymbolSpecError(f"{path}.polar.radians: expected a number")
        return PolarRationalAngle.inexact(float(r), float(t))
    raise SymbolSpecError(
        f"{path}.polar: expected fields (r, pi_num, pi_den) or (r, radians)"
    )


def parse_symbol_spec(obj) -> tuple[EntireSymbol, AffineMap]:
    """Parse {"psi": [...], "phi": {...}} into symbol objects."""
    if not isinstance(obj, dict):
        raise SymbolSpecError("top level: expected an object with fields psi and phi")
    if "psi" not in obj or "phi" not in obj:
        raise SymbolSpecError("top level: fields psi and phi are required")
    return parse_weight(obj["psi"]), parse_map(obj["phi"])


def _pair(z: complex) -> list[float]:
    return [float(z.real), float(z.imag)]


def weight_to_json(psi: EntireSymbol) -> list:
    return [{"alpha": _pair(t.alpha), "k": t.k, "c": _pair(t.c)} for t in psi.terms]


def angle_to_json(a: PolarRationalAngle) -> dict:
    if a.is_exact:
        return {"polar": {"r": float(a.modulus), "pi_num": a.pi_num, "pi_den": a.pi_den}}
    return {"polar": {"r": float(a.modulus), "radians": float(a.radians)}}


def map_to_json(phi: AffineMap) -> dict:
    return {"a": angle_to_json(phi.a), "b": _pair(phi.b)}
