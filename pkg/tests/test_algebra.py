"""Core algebra: descriptors, products, inner products, random generation."""

import numpy as np
import pytest

from symcone.algebra import (
    DescriptorMismatchError,
    DirectSum,
    Element,
    SpinFactor,
    SymMatrix,
    basis_element,
    descriptor_from_spec,
    descriptor_to_spec,
    element_from_json,
    element_to_json,
    from_matrix,
    inner,
    jordan_product,
    norm,
    operator_commutes,
    random_cone_element,
    random_element,
    unit,
    zero,
)
from symcone.spectral import eigvals, spectral_decompose

from conftest import CATALOG, SMALL_CATALOG


class TestDescriptors:
    def test_sym_dimensions(self):
        d = SymMatrix(4)
        assert (d.rank, d.dim) == (4, 10)

    def test_spin_dimensions(self):
        d = SpinFactor(6)
        assert (d.rank, d.dim) == (2, 6)

    def test_sum_dimensions(self):
        d = DirectSum((SymMatrix(2), SpinFactor(3)))
        assert (d.rank, d.dim) == (4, 6)

    @pytest.mark.parametrize("bad", [0, -1])
    def test_sym_validation(self, bad):
        with pytest.raises(ValueError):
            SymMatrix(bad)

    def test_spin_validation(self):
        with pytest.raises(ValueError):
            SpinFactor(1)

    def test_empty_sum(self):
        with pytest.raises(ValueError):
            DirectSum(())

    def test_spec_roundtrip(self):
        for d in CATALOG:
            assert descriptor_from_spec(descriptor_to_spec(d)) == d

    def test_spec_parse_errors(self):
        for bad in ("sym", "sym:x", "cube:3", "spin:1", "sum:"):
            with pytest.raises(ValueError):
                descriptor_from_spec(bad)


class TestJordanProduct:
    def test_fixed_2x2(self):
        x = from_matrix(np.array([[8.0, 3.0], [3.0, 0.0]]))
        y = from_matrix(np.array([[0.0, 3.0], [3.0, 8.0]]))
        np.testing.assert_allclose(
            jordan_product(x, y).as_matrix(), [[9.0, 24.0], [24.0, 9.0]], atol=0
        )

    def test_unit_is_neutral(self):
        rng = np.random.default_rng(0)
        for d in SMALL_CATALOG:
            x = random_element(d, rng, 2.0)
            assert norm(jordan_product(unit(d), x) - x) == 0.0

    def test_spin_unit(self):
        d = SpinFactor(3)
        e = Element(d, [1.0, 0.0, 0.0])
        x = Element(d, [0.4, -1.2, 2.0])
        np.testing.assert_allclose(jordan_product(e, x).coords, x.coords, atol=0)

    def test_commutative(self):
        rng = np.random.default_rng(1)
        for d in SMALL_CATALOG:
            x = random_element(d, rng, 3.0)
            y = random_element(d, rng, 3.0)
            assert norm(jordan_product(x, y) - jordan_product(y, x)) == 0.0

    def test_jordan_identity(self):
        rng = np.random.default_rng(2)
        for d in SMALL_CATALOG:
            for _ in range(50):
                x = random_element(d, rng, 2.0)
                y = random_element(d, rng, 2.0)
                x2 = jordan_product(x, x)
                lhs = jordan_product(x2, jordan_product(x, y))
                rhs = jordan_product(x, jordan_product(x2, y))
                assert norm(lhs - rhs) <= 1e-10 * (1.0 + norm(x) ** 3 * norm(y))

    def test_descriptor_mismatch(self):
        with pytest.raises(DescriptorMismatchError):
            jordan_product(unit(SymMatrix(2)), unit(SpinFactor(3)))

    def test_directsum_factorwise(self):
        rng = np.random.default_rng(3)
        d = DirectSum((SymMatrix(3), SpinFactor(4)))
        x = random_element(d, rng, 2.0)
        y = random_element(d, rng, 2.0)
        z = jordan_product(x, y)
        ns = SymMatrix(3).dim
        zx = jordan_product(Element(SymMatrix(3), x.coords[:ns]),
                            Element(SymMatrix(3), y.coords[:ns]))
        zy = jordan_product(Element(SpinFactor(4), x.coords[ns:]),
                            Element(SpinFactor(4), y.coords[ns:]))
        assert np.array_equal(z.coords[:ns], zx.coords)
        assert np.array_equal(z.coords[ns:], zy.coords)


class TestInnerProduct:
    def test_identity_trace(self):
        e = unit(SymMatrix(2))
        assert inner(e, e) == 2.0

    def test_spin_unit_trace(self):
        e = unit(SpinFactor(3))
        assert inner(e, e) == 2.0

    def test_primitive_idempotent_norm_one(self):
        rng = np.random.default_rng(4)
        for d in SMALL_CATALOG:
            sd = spectral_decompose(random_element(d, rng, 1.0))
            for c in sd.frame.idempotents:
                assert abs(inner(c, c) - 1.0) <= 1e-10

    def test_trace_form_associative(self):
        rng = np.random.default_rng(5)
        for d in SMALL_CATALOG:
            for _ in range(30):
                x = random_element(d, rng, 2.0)
                y = random_element(d, rng, 2.0)
                z = random_element(d, rng, 2.0)
                lhs = inner(jordan_product(x, y), z)
                rhs = inner(y, jordan_product(x, z))
                assert abs(lhs - rhs) <= 1e-10 * (1.0 + abs(lhs))

    def test_positive_definite(self):
        rng = np.random.default_rng(6)
        for d in SMALL_CATALOG:
            x = random_element(d, rng, 1.0)
            assert inner(x, x) > 0.0


class TestUnit:
    def test_sym_unit_is_identity(self):
        np.testing.assert_array_equal(unit(SymMatrix(3)).as_matrix(), np.eye(3))

    def test_spin_unit(self):
        np.testing.assert_array_equal(unit(SpinFactor(4)).coords, [1.0, 0, 0, 0])

    def test_sum_unit_concatenates(self):
        d = DirectSum((SymMatrix(2), SpinFactor(3)))
        expected = np.concatenate([unit(SymMatrix(2)).coords, unit(SpinFactor(3)).coords])
        np.testing.assert_array_equal(unit(d).coords, expected)


class TestRandomGeneration:
    def test_seed_reproducibility(self):
        for d in SMALL_CATALOG:
            a = random_element(d, np.random.default_rng(42), 2.0)
            b = random_element(d, np.random.default_rng(42), 2.0)
            assert np.array_equal(a.coords, b.coords)

    def test_zero_scale(self):
        for d in SMALL_CATALOG:
            assert norm(random_element(d, np.random.default_rng(0), 0.0)) == 0.0
            assert norm(random_cone_element(d, np.random.default_rng(0), 0.0)) == 0.0

    def test_cone_membership(self):
        rng = np.random.default_rng(7)
        for d in SMALL_CATALOG:
            for _ in range(50):
                z = random_cone_element(d, rng, 1.0)
                assert eigvals(z)[-1] >= -1e-12

    def test_negative_scale_rejected(self):
        with pytest.raises(ValueError):
            random_element(SymMatrix(2), np.random.default_rng(0), -1.0)


class TestOperatorCommute:
    def test_powers_commute(self):
        rng = np.random.default_rng(8)
        for d in SMALL_CATALOG:
            a = random_element(d, rng, 2.0)
            assert operator_commutes(a, jordan_product(a, a))

    def test_diagonal_vs_offdiagonal(self):
        a = from_matrix(np.diag([1.0, 2.0]))
        b = from_matrix(np.array([[0.0, 1.0], [1.0, 0.0]]))
        assert not operator_commutes(a, b)


class TestElement:
    def test_coords_length_checked(self):
        with pytest.raises(ValueError):
            Element(SymMatrix(2), np.zeros(4))

    def test_coords_immutable(self):
        x = unit(SymMatrix(2))
        with pytest.raises(ValueError):
            x.coords[0] = 5.0

    def test_from_matrix_rejects_asymmetric(self):
        with pytest.raises(ValueError):
            from_matrix(np.array([[1.0, 2.0], [0.0, 1.0]]))

    def test_json_roundtrip(self):
        rng = np.random.default_rng(9)
        for d in SMALL_CATALOG:
            x = random_element(d, rng, 3.0)
            y = element_from_json(element_to_json(x))
            assert y.descriptor == d
            assert np.array_equal(x.coords, y.coords)

    def test_basis_spans(self):
        d = SymMatrix(2)
        total = zero(d)
        for k in range(d.dim):
            total = total + basis_element(d, k)
        assert norm(total) > 0
