"""Matrix truncations, compressions, and the independent column oracle."""

from __future__ import annotations

import math
import warnings

import numpy as np
import pytest

from conftest import mp_entry, random_map, random_symbol
from fockrange import (
    AffineMap,
    EntireSymbol,
    PolarRationalAngle,
    UnboundedWeightWarning,
    apply_column_oracle,
    build_truncation,
    compression,
    conjugate_to_q,
    qform_truncation,
    sweep,
)

E = math.e

ONE = EntireSymbol.constant(1.0)
PSI_A = EntireSymbol.kernel(1.0 + 0j)
PHI_A = AffineMap(PolarRationalAngle.exact(0.5, 0, 1), 0.5 + 0j)
PSI_B = EntireSymbol.kernel(1.0 + 0j) - EntireSymbol.constant(1.0 / E)
PHI_B = AffineMap(PolarRationalAngle.exact(0.5, 0, 1), -0.5 + 0j)
PSI_32A = EntireSymbol.kernel(3.0j)
PHI_32A = AffineMap(PolarRationalAngle.exact(1.0, 1, 2), 3.0 + 0j)


def _comb_sqrt(n: int, j: int) -> float:
    return math.sqrt(math.factorial(n + j) / (math.factorial(j) * math.factorial(n)))


class TestBuildExamples:
    def test_identity_map(self):
        op = build_truncation(ONE, AffineMap(PolarRationalAngle.exact(1.0, 0, 1), 0j), 4)
        assert np.array_equal(op.entries, np.eye(4, dtype=np.complex128))

    def test_two_by_two_affine(self):
        op = build_truncation(ONE, PHI_A, 2)
        assert np.allclose(op.entries, [[1.0, 0.5], [0.0, 0.5]], rtol=0, atol=1e-15)

    def test_qform_entry_formula(self):
        data = conjugate_to_q(PSI_A, PHI_A, 12)
        op = qform_truncation(data, PHI_A.a, 10)
        a = complex(PHI_A.a.value())
        for n in range(10):
            for j in range(10 - n):
                want = data.qhat[j] * a**n * _comb_sqrt(n, j)
                assert abs(op.entries[n + j, n] - want) <= 1e-13 * (1.0 + abs(want))


class TestCompressions:
    def test_nilpotent_pair(self):
        data = conjugate_to_q(PSI_B, PHI_B, 4)
        comp = compression(data, PHI_B.a, 0, 1)
        M = comp.as_matrix()
        assert abs(M[0, 0]) <= 1e-12 and M[0, 1] == 0 and abs(M[1, 1]) <= 1e-12
        assert M[1, 0] == pytest.approx(1.0 / E, rel=1e-12)
        assert comp.indices == (0, 1)

    def test_identity_weight_is_diagonal(self):
        phi = AffineMap(PolarRationalAngle.exact(0.6, 0, 1), 0j)
        data = conjugate_to_q(ONE, phi, 8)
        M = compression(data, phi.a, 2, 3).as_matrix()
        assert np.allclose(M, np.diag([0.6**2, 0.6**5]), rtol=0, atol=1e-14)

    def test_scaled_pair(self):
        data = conjugate_to_q(PSI_A, PHI_A, 4)
        M = compression(data, PHI_A.a, 1, 1).as_matrix()
        want = np.array([[E / 2, 0], [(E / 2) * 0.5 * math.sqrt(2), E / 4]])
        assert np.allclose(M, want, rtol=1e-13)

    def test_compression_range_inside_truncation_range(self):
        # quadratic forms agree on span{e_n, e_{n+m}}, so supports are nested
        data = conjugate_to_q(PSI_A, PHI_A, 16)
        op = qform_truncation(data, PHI_A.a, 12)
        big = sweep(op.entries, 240)
        for n, m in ((0, 1), (1, 1), (1, 2), (2, 3)):
            small = sweep(compression(data, PHI_A.a, n, m).as_matrix(), 240)
            assert np.min(big.support - small.support) >= -1e-9


class TestColumnOracle:
    def test_monomial_shift(self):
        got = apply_column_oracle(ONE, AffineMap(PolarRationalAngle.exact(1.0, 0, 1), 0j), 2, 4)
        assert np.allclose(got, [0, 0, 1, 0], rtol=0, atol=1e-15)

    def test_exponential_weight_column(self):
        got = apply_column_oracle(PSI_A, PHI_A, 0, 3)
        assert np.allclose(got, [1.0, 1.0, 1.0 / math.sqrt(2)], rtol=1e-14)

    def test_vanishing_weight_column(self):
        # psi(0) = 1 - 1/e fixes the top entry; the linear term of e^z gives 1
        got = apply_column_oracle(PSI_B, PHI_B, 0, 2)
        assert np.allclose(got, [1.0 - 1.0 / E, 1.0], rtol=1e-14)

    def test_matches_build_on_random_cases(self, rng):
        for _ in range(40):
            psi, phi = random_symbol(rng), random_map(rng)
            N = int(rng.integers(2, 16))
            n = int(rng.integers(0, N))
            op = build_truncation(psi, phi, N)
            col = apply_column_oracle(psi, phi, n, N)
            assert np.max(np.abs(op.column(n) - col)) <= 1e-12


class TestStructure:
    def test_triangular_when_b_vanishes(self, rng):
        for _ in range(10):
            psi = random_symbol(rng)
            phi = AffineMap(random_map(rng).a, 0j)
            op = build_truncation(psi, phi, 9)
            assert np.array_equal(np.triu(op.entries, 1), np.zeros((9, 9)))

    def test_qform_diagonal(self, rng):
        for _ in range(10):
            psi, phi = random_symbol(rng), random_map(rng)
            data = conjugate_to_q(psi, phi, 12)
            op = qform_truncation(data, phi.a, 10)
            a = complex(phi.a.value())
            for n in range(10):
                want = data.qhat[0] * a**n
                assert abs(op.entries[n, n] - want) <= 1e-12 * (1.0 + abs(want))

    def test_scaling_linearity_exact_for_dyadic_factors(self, rng):
        psi, phi = random_symbol(rng), random_map(rng)
        base = build_truncation(psi, phi, 8).entries
        for c in (2.0, -0.5, 8.0, 2.0j, -4.0j):
            scaled = build_truncation(c * psi, phi, 8).entries
            assert np.array_equal(scaled, c * base)

    def test_scaling_linearity_general(self, rng):
        psi, phi = random_symbol(rng), random_map(rng)
        base = build_truncation(psi, phi, 8).entries
        c = 0.7 - 1.3j
        scaled = build_truncation(c * psi, phi, 8).entries
        assert np.max(np.abs(scaled - c * base)) <= 1e-15 * np.max(np.abs(c * base))

    def test_leading_block_slices_exactly(self, rng):
        psi, phi = random_symbol(rng), random_map(rng)
        op = build_truncation(psi, phi, 12)
        block = op.leading_block(5)
        assert block.dim == 5
        assert np.array_equal(block.entries, op.entries[:5, :5])


class TestPrecisionEscalation:
    def test_escalated_build_matches_direct_high_precision(self):
        op = build_truncation(PSI_32A, PHI_32A, 20)
        assert op.precision_dps > 0
        assert any("recomputed" in note for note in op.notes)
        for n in range(20):
            for k in range(20):
                want = mp_entry(PSI_32A, PHI_32A, k, n)
                assert abs(op.entries[k, n] - want) <= 1e-12 * (1.0 + abs(want))

    def test_tame_build_stays_in_double_precision(self):
        op = build_truncation(PSI_B, PHI_B, 16)
        assert op.precision_dps == 0
        assert op.notes == ()


class TestWarnings:
    def test_unit_modulus_without_structural_weight_warns(self):
        phi = AffineMap(PolarRationalAngle.exact(1.0, 1, 2), 3.0 + 0j)
        with pytest.warns(UnboundedWeightWarning):
            op = build_truncation(ONE, phi, 4)
        assert any("unbounded" in note.lower() for note in op.notes)

    def test_structural_unit_modulus_is_silent(self):
        with warnings.catch_warnings():
            warnings.simplefilter("error")
            build_truncation(PSI_32A, PHI_32A, 4)

    def test_contractive_map_is_silent(self):
        with warnings.catch_warnings():
            warnings.simplefilter("error")
            build_truncation(PSI_A, PHI_A, 4)


class TestSerialization:
    def test_csv_round_trip(self):
        op = build_truncation(PSI_B, PHI_B, 3)
        rows = op.to_csv_text().strip().split("\n")
        assert len(rows) == 3
        parsed = np.array(
            [
                [complex(*map(float, cell.split(","))) for cell in row.split('","')]
                for row in (r.strip('"') for r in rows)
            ]
        )
        assert np.array_equal(parsed, op.entries)

    def test_json_shape(self):
        op = build_truncation(PSI_B, PHI_B, 3)
        doc = op.to_json_dict()
        assert doc["dim"] == 3
        entry = doc["entries"][1][0]
        assert entry == [op.entries[1, 0].real, op.entries[1, 0].imag]


class TestErrors:
    def test_zero_weight_rejected(self):
        with pytest.raises(ValueError):
            build_truncation(EntireSymbol.constant(0.0), PHI_A, 4)

    def test_dimension_bounds(self):
        with pytest.raises(ValueError):
            build_truncation(ONE, PHI_A, 0)
        with pytest.raises(ValueError):
            build_truncation(ONE, PHI_A, 10_000)

    def test_compression_needs_coefficients(self):
        data = conjugate_to_q(PSI_A, PHI_A, 3)
        with pytest.raises(ValueError):
            compression(data, PHI_A.a, 0, 5)
