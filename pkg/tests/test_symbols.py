"""Symbol algebra, inner products, and conjugation to the recentred form."""

from __future__ import annotations

import cmath
import json
import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import fft_taylor, random_map, random_symbol
from fockrange import (
    AffineMap,
    EntireSymbol,
    ExpandingMapWarning,
    HypothesisViolation,
    KernelTerm,
    PolarRationalAngle,
    SymbolSpecError,
    basis_coefficients,
    conjugate_to_q,
    evaluate,
    fixed_point,
    inner_product,
    parse_symbol_spec,
    taylor_coefficients,
)
from fockrange.symbols import map_to_json, weight_to_json

E = math.e

PSI_A = EntireSymbol.kernel(1.0 + 0j)
PHI_A = AffineMap(PolarRationalAngle.exact(0.5, 0, 1), 0.5 + 0j)
PSI_B = EntireSymbol.kernel(1.0 + 0j) - EntireSymbol.constant(1.0 / E)
PHI_B = AffineMap(PolarRationalAngle.exact(0.5, 0, 1), -0.5 + 0j)

complex_st = st.builds(complex, st.floats(-3, 3), st.floats(-3, 3))
offset_st = st.builds(complex, st.floats(-1.5, 1.5), st.floats(-1.5, 1.5))
term_st = st.builds(
    KernelTerm,
    st.builds(complex, st.floats(-2, 2), st.floats(-2, 2)).filter(lambda a: abs(a) > 1e-3),
    st.integers(0, 3),
    st.builds(complex, st.floats(-1.5, 1.5), st.floats(-1.5, 1.5)),
)
symbol_st = st.lists(term_st, min_size=1, max_size=3).map(EntireSymbol.from_terms)


def _majorant(f: EntireSymbol, r: float) -> float:
    return sum(abs(t.alpha) * r**t.k * math.exp(abs(t.c) * r) for t in f.terms)


class TestEvaluate:
    def test_flat_kernel_is_one(self):
        k0 = EntireSymbol.kernel(0j)
        for z in (0.0, 1.5, -2.0 + 1.0j, 3.0j):
            assert evaluate(k0, z) == 1.0

    def test_shifted_kernel_root(self):
        assert abs(evaluate(PSI_B, -1.0)) <= 1e-15

    def test_scaled_kernel(self):
        f = EntireSymbol.kernel(0.5 + 0j, E)
        assert evaluate(f, 2.0) == pytest.approx(E**2, rel=1e-14)

    def test_overflow_is_an_error(self):
        with pytest.raises(OverflowError):
            evaluate(EntireSymbol.kernel(30.0 + 0j), 30.0)


class TestTaylor:
    def test_half_rate_exponential(self):
        got = taylor_coefficients(EntireSymbol.kernel(0.5 + 0j), 3)
        assert np.allclose(got, [1.0, 0.5, 0.125], rtol=0, atol=1e-15)

    def test_monomial(self):
        f = EntireSymbol.monomial(1)
        assert taylor_coefficients(f, 3) == [0.0, 1.0, 0.0]

    def test_recentred_weight_series(self):
        # q for the (K_1 - 1/e, z/2 - 1/2) pair has t_j = (3^j - 1)/(e 2^j j!)
        data = conjugate_to_q(PSI_B, PHI_B, 12)
        got = taylor_coefficients(data.q, 12)
        for j, t in enumerate(got):
            want = (3.0**j - 1.0) / (E * 2.0**j * math.factorial(j))
            assert abs(t - want) <= 1e-13 * (1.0 + abs(want))


class TestInnerProduct:
    def test_kernel_norm(self):
        assert inner_product(PSI_A, PSI_A) == pytest.approx(E, rel=1e-14)

    def test_orthogonal_monomials(self):
        assert inner_product(EntireSymbol.monomial(1), EntireSymbol.constant(1.0)) == 0.0

    def test_reproduces_derivative_weighted_value(self):
        f = EntireSymbol.monomial(1) * EntireSymbol.kernel(1.0 + 0j)
        g = EntireSymbol.kernel(2.0 + 0j)
        assert inner_product(f, g) == pytest.approx(2.0 * E**2, rel=1e-12)


class TestFixedPoint:
    def test_half_contraction_right(self):
        assert fixed_point(PHI_A) == pytest.approx(1.0, abs=1e-15)

    def test_half_contraction_left(self):
        assert fixed_point(PHI_B) == pytest.approx(-1.0, abs=1e-15)

    def test_rotation_with_offset(self):
        phi = AffineMap(PolarRationalAngle.exact(1.0, 1, 2), 3.0 + 0j)
        assert fixed_point(phi) == pytest.approx(1.5 + 1.5j, abs=1e-14)


class TestConjugateToQ:
    def test_exponential_weight_pair(self):
        data = conjugate_to_q(PSI_A, PHI_A, 12)
        assert data.p == pytest.approx(1.0, abs=1e-14)
        # q = e K_{1/2}: a single kernel term
        assert len(data.q.terms) == 1
        term = data.q.terms[0]
        assert term.k == 0
        assert term.alpha == pytest.approx(E, rel=1e-13)
        assert term.c == pytest.approx(0.5, abs=1e-13)
        for j in range(9):
            want = E / (2.0**j * math.sqrt(math.factorial(j)))
            assert abs(data.qhat[j] - want) <= 1e-12 * (1.0 + want)

    def test_vanishing_weight_pair(self):
        data = conjugate_to_q(PSI_B, PHI_B, 12)
        assert data.p == pytest.approx(-1.0, abs=1e-14)
        assert abs(data.qhat[0]) <= 1e-12
        assert data.qhat[1] == pytest.approx(1.0 / E, rel=1e-12)

    def test_identity_weight(self):
        phi = AffineMap(PolarRationalAngle.exact(0.7, 0, 1), 0j)
        data = conjugate_to_q(EntireSymbol.constant(1.0), phi, 6)
        assert data.p == 0
        assert np.allclose(data.qhat, [1, 0, 0, 0, 0, 0], rtol=0, atol=1e-15)

    def test_rejects_unit_modulus(self):
        phi = AffineMap(PolarRationalAngle.exact(1.0, 1, 2), 0.5 + 0j)
        with pytest.raises(HypothesisViolation):
            conjugate_to_q(PSI_A, phi, 4)

    def test_rejects_degenerate_map(self):
        phi = AffineMap(PolarRationalAngle.exact(0.0, 0, 1), 0.5 + 0j)
        with pytest.raises(HypothesisViolation):
            conjugate_to_q(PSI_A, phi, 4)


class TestAffineMap:
    def test_expanding_map_rejected(self):
        with pytest.raises(HypothesisViolation):
            AffineMap(PolarRationalAngle.exact(1.5, 0, 1), 0j)

    def test_expanding_map_warns_when_not_strict(self):
        with pytest.warns(ExpandingMapWarning):
            AffineMap(PolarRationalAngle.exact(1.5, 0, 1), 0j, strict=False)


@given(f=symbol_st, w=complex_st)
def test_reproducing_property(f: EntireSymbol, w: complex):
    kw = EntireSymbol.kernel(w)
    lhs = inner_product(f, kw)
    rhs = evaluate(f, w)
    assert abs(lhs - rhs) <= 1e-10 * (1.0 + _majorant(f, abs(w)))


@given(w=complex_st)
def test_norm_identity(w: complex):
    kw = EntireSymbol.kernel(w)
    assert inner_product(kw, kw).real == pytest.approx(math.exp(abs(w) ** 2), rel=1e-12)


@given(f=symbol_st)
def test_parseval_consistency(f: EntireSymbol):
    s = basis_coefficients(f, 96)
    tail = float(np.sum(np.abs(s) ** 2))
    direct = inner_product(f, f).real
    assert abs(direct - tail) <= 1e-12 * (1.0 + abs(direct))


@given(f=symbol_st, p=offset_st)
def test_shift_matches_cauchy_integral_oracle(f: EntireSymbol, p: complex):
    got = np.array(taylor_coefficients(f.shift(p), 8))
    want = fft_taylor(lambda z: evaluate(f, z + p), 8)
    assert np.max(np.abs(got - want)) <= 1e-8


def test_conjugation_consistency(rng):
    # q(0) must reproduce the weight's value at the fixed point
    for _ in range(60):
        psi = random_symbol(rng)
        phi = random_map(rng)
        data = conjugate_to_q(psi, phi, 6)
        at_p = evaluate(psi, data.p)
        assert abs(data.qhat[0] - at_p) <= 1e-12 * (1.0 + abs(at_p))
        assert abs(evaluate(data.q, 0.0) - at_p) <= 1e-12 * (1.0 + abs(at_p))


def test_parse_round_trip(rng):
    for _ in range(25):
        psi = random_symbol(rng)
        phi = random_map(rng)
        spec = {"psi": weight_to_json(psi), "phi": map_to_json(phi)}
        psi2, phi2 = parse_symbol_spec(json.loads(json.dumps(spec)))
        assert psi2 == psi
        assert phi2.a == phi.a
        assert phi2.b == phi.b


@pytest.mark.parametrize(
    "payload",
    [
        {},
        {"psi": [], "phi": {"a": {"cart": [0.5, 0.0]}, "b": [0.0, 0.0]}},
        {"psi": [{"alpha": [1, 0], "k": -1, "c": [0, 0]}], "phi": {"a": {"cart": [0.5, 0]}, "b": [0, 0]}},
        {"psi": [{"alpha": [1, 0], "k": 0, "c": [0, 0]}], "phi": {"a": {}, "b": [0, 0]}},
        {"psi": [{"alpha": [1, 0], "k": 0, "c": [0, 0]}], "phi": {"a": {"cart": [0.5, 0]}, "b": "x"}},
    ],
)
def test_parse_rejects_malformed_specs(payload):
    with pytest.raises(SymbolSpecError):
        parse_symbol_spec(payload)


def test_symbol_algebra_closure():
    # products and shifts stay inside the kernel-polynomial algebra and
    # evaluate consistently
    f = EntireSymbol.monomial(2, 0.5) + EntireSymbol.kernel(1.0j, -1.0)
    g = EntireSymbol.kernel(-0.5 + 0.25j, 2.0)
    z = 0.7 - 0.3j
    assert evaluate(f * g, z) == pytest.approx(evaluate(f, z) * evaluate(g, z), rel=1e-13)
    assert evaluate(2.5 * f, z) == pytest.approx(2.5 * evaluate(f, z), rel=1e-13)
    assert evaluate(f.shift(1.2j), z) == pytest.approx(evaluate(f, z + 1.2j), rel=1e-12)
