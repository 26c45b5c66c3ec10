import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from beamspace.numerics import (DecompositionError, FixedFormat, fx_requantize,
                                fx_value, round_ties_away, solve_hermitian_pd,
                                to_fixed, to_fixed_complex)

W4F2 = FixedFormat(4, 2)


def test_exactly_representable_value():
    codes, sat = to_fixed(0.25, W4F2)
    assert codes == 1
    assert not sat
    assert fx_value(codes, W4F2) == 0.25


def test_saturation_at_max_code():
    codes, sat = to_fixed(100.0, W4F2)
    assert codes == W4F2.max_code == 7
    assert sat
    assert fx_value(codes, W4F2) == 1.75


def test_round_to_nearest():
    # 0.3 is 1.2 quarters, which rounds down to 1 quarter.
    codes, sat = to_fixed(0.3, W4F2)
    assert codes == 1 and not sat
    assert fx_value(codes, W4F2) == 0.25


def test_ties_round_away_from_zero():
    assert round_ties_away(1.5) == 2.0
    assert round_ties_away(-1.5) == -2.0
    assert round_ties_away(2.5) == 3.0
    assert round_ties_away(0.5) == 1.0
    assert round_ties_away(-0.5) == -1.0


def test_requantize_widening_is_exact():
    codes, sat = fx_requantize(2, FixedFormat(4, 2), FixedFormat(8, 4))
    assert codes == 8 and not sat
    assert fx_value(codes, FixedFormat(8, 4)) == 0.5


def test_requantize_tie_away():
    src = FixedFormat(8, 3)
    dst = FixedFormat(8, 1)
    codes, _ = to_fixed(0.375, src)
    out, _ = fx_requantize(codes, src, dst)
    assert fx_value(out, dst) == 0.5
    codes, _ = to_fixed(-0.375, src)
    out, _ = fx_requantize(codes, src, dst)
    assert fx_value(out, dst) == -0.5


def test_format_validation():
    with pytest.raises(ValueError):
        FixedFormat(1, 0)
    with pytest.raises(ValueError):
        FixedFormat(8, -1)


def test_to_fixed_complex_roundtrip():
    z = np.array([0.25 + 0.5j, -0.75 - 1.0j])
    fx = to_fixed_complex(z, W4F2)
    assert np.array_equal(fx.value, z)


def test_negative_saturation_is_symmetric():
    fmt = FixedFormat(6, 2)
    codes, sat = to_fixed(-100.0, fmt)
    assert codes == -fmt.max_code
    assert sat


@given(st.integers(min_value=-(1 << 6) + 1, max_value=(1 << 6) - 1))
def test_roundtrip_identity_on_grid(code):
    fmt = FixedFormat(7, 3)
    x = code * fmt.lsb
    out, sat = to_fixed(x, fmt)
    assert out == code
    assert not sat


@given(st.floats(min_value=-1e6, max_value=1e6, allow_nan=False))
def test_saturation_bound(x):
    fmt = FixedFormat(6, 2)
    codes, _ = to_fixed(x, fmt)
    assert abs(fx_value(codes, fmt)) <= fmt.max_code * fmt.lsb + 1e-15


@given(st.floats(min_value=-7.0, max_value=7.0, allow_nan=False))
def test_quantization_error_half_lsb(x):
    fmt = FixedFormat(6, 2)
    codes, sat = to_fixed(x, fmt)
    if not sat:
        assert abs(fx_value(codes, fmt) - x) <= fmt.lsb / 2 + 1e-12


def test_solve_identity_system():
    rng = np.random.default_rng(0)
    B = rng.standard_normal((4, 3)) + 1j * rng.standard_normal((4, 3))
    X = solve_hermitian_pd(np.eye(4), B)
    assert np.allclose(X, B, atol=1e-12)


def test_solve_scalar_system():
    X = solve_hermitian_pd(2.0 * np.eye(2), np.eye(2))
    assert np.allclose(X, 0.5 * np.eye(2), atol=1e-12)


def test_solve_matches_direct_inverse_oracle():
    rng = np.random.default_rng(7)
    for _ in range(20):
        n = rng.integers(2, 8)
        G = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
        A = G @ G.conj().T + np.eye(n)
        B = rng.standard_normal((n, 3)) + 1j * rng.standard_normal((n, 3))
        X = solve_hermitian_pd(A, B)
        # independent route: explicit inverse, no triangular solves
        X_ref = np.linalg.inv(A) @ B
        assert np.linalg.norm(A @ X - B) <= 1e-9 * np.linalg.norm(B)
        assert np.allclose(X, X_ref, atol=1e-8)


def test_solve_rejects_non_pd():
    A = np.array([[1.0, 0.0], [0.0, -1.0]])
    with pytest.raises(DecompositionError):
        solve_hermitian_pd(A, np.eye(2))
