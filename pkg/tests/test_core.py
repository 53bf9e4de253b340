import pytest
from hypothesis import given
from hypothesis import strategies as st

from zernike_bbt.core import (
    FlopCounter,
    InvalidIndex,
    RadialIndex,
    ceil_log2,
    leaf_type_a,
    leaf_type_b,
    make_index,
    pow_by_squaring,
)
from zernike_bbt.reference import eval_reference

from .oracles import RHO_GRID, naive_pow


class TestMakeIndex:
    def test_basic(self):
        assert make_index(4, 2) == RadialIndex(n=4, m=2, m_abs=2, k=1)

    def test_negative_m_is_folded(self):
        assert make_index(9, -1) == RadialIndex(n=9, m=-1, m_abs=1, k=4)

    @pytest.mark.parametrize(
        "n, m, fragment",
        [(3, 0, "parity"), (2, 4, "exceed"), (-2, 0, "non-negative"), (5, -7, "exceed")],
    )
    def test_rejections_name_the_constraint(self, n, m, fragment):
        with pytest.raises(InvalidIndex, match=fragment):
            make_index(n, m)

    def test_non_integer_rejected(self):
        with pytest.raises(TypeError):
            make_index(4.0, 2)

    @given(st.integers(0, 200), st.integers(0, 200))
    def test_symmetry_at_index_level(self, n, m):
        if m > n or (n - m) % 2:
            return
        a, b = make_index(n, m), make_index(n, -m)
        assert (a.m_abs, a.k) == (b.m_abs, b.k)
        assert a.k * 2 == n - a.m_abs


class TestPowBySquaring:
    @pytest.mark.parametrize("x, n, want", [(2.0, 10, 1024.0), (0.5, 3, 0.125), (7.3, 0, 1.0)])
    def test_examples(self, x, n, want):
        assert pow_by_squaring(x, n) == want

    def test_zero_to_the_zero(self):
        assert pow_by_squaring(0.0, 0) == 1.0

    @given(st.integers(-40, 40), st.integers(0, 60))
    def test_bit_exact_for_representable_integer_results(self, x, n):
        exact = naive_pow(x, n)
        if abs(exact) >= 2**53:
            return
        assert pow_by_squaring(float(x), n) == float(exact)

    def test_overflow_follows_float_model(self):
        assert pow_by_squaring(1e200, 2) == float("inf")

    @pytest.mark.parametrize("m", [0, 1, 2, 3, 4, 5, 8, 9, 31, 32, 33, 1000])
    def test_counter_model_vs_literal_loop(self, m):
        c = FlopCounter()
        pow_by_squaring(0.7, m, c)
        assert c.mults == ceil_log2(m)
        assert c.pow_mults_actual == m.bit_length() + bin(m).count("1")


def test_ceil_log2():
    assert [ceil_log2(m) for m in range(10)] == [0, 0, 1, 2, 2, 3, 3, 3, 3, 4]


class TestLeaves:
    @given(st.floats(0, 1), st.integers(0, 64))
    def test_leaf_a_is_power(self, rho, m):
        assert leaf_type_a(rho, m) == pow_by_squaring(rho, m)

    def test_leaf_a_examples(self):
        assert leaf_type_a(0.5, 2) == 0.25
        assert leaf_type_a(0.3, 0) == 1.0
        assert leaf_type_a(1.0, 13) == 1.0

    def test_leaf_b_examples(self):
        assert leaf_type_b(0.5, 0) == -0.5
        assert leaf_type_b(0.5, 1) == pytest.approx(-0.625, abs=1e-15)

    @pytest.mark.parametrize("m", range(0, 60))
    def test_leaf_b_at_one(self, m):
        assert leaf_type_b(1.0, m) == 1.0

    def test_leaf_b_matches_reference(self):
        for m in range(51):
            idx = make_index(m + 2, m)
            for rho in RHO_GRID:
                assert abs(leaf_type_b(rho, m) - eval_reference(idx, rho)) <= 1e-12

    def test_leaf_costs(self):
        a, b = FlopCounter(), FlopCounter()
        leaf_type_a(0.4, 5, a)
        leaf_type_b(0.4, 5, b)
        assert (a.mults, a.adds) == (3, 0)
        assert (b.mults, b.adds) == (6, 3)
        z = FlopCounter()
        leaf_type_b(0.4, 0, z)
        assert (z.mults, z.adds) == (3, 3)
