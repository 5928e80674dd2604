"""Symbols, branch convention, root splitting and the tridiagonal inverse."""

import numpy as np
import pytest
import scipy.linalg
from hypothesis import given, settings
from hypothesis import strategies as st

from lindblad_spectra import (
    BandedSymbol,
    DegenerateGamma,
    NoSplit,
    OffUnitCircle,
    OnSymbolCurve,
    branch_sqrt,
    ordered_roots,
    symbol_curve,
    symbol_eval,
    tridiag_inverse_element,
)


def split_symbol(rng):
    """Random invertible tridiagonal symbol, built from its roots so the
    unit-circle split is guaranteed."""
    lam2 = rng.uniform(0.1, 0.85) * np.exp(2j * np.pi * rng.uniform())
    lam1 = rng.uniform(1.2, 3.0) * np.exp(2j * np.pi * rng.uniform())
    gamma = rng.uniform(0.3, 2.0) * np.exp(2j * np.pi * rng.uniform())
    alpha = gamma * lam1 * lam2
    beta = -gamma * (lam1 + lam2)
    return alpha, beta, gamma


def banded_solve_row(alpha, beta, gamma, n=2000):
    """Oracle: interior row of T^{-1} from a truncated banded solve."""
    ab = np.zeros((3, n), dtype=complex)
    ab[0, 1:] = gamma
    ab[1, :] = beta
    ab[2, :-1] = alpha
    e = np.zeros(n, dtype=complex)
    mid = n // 2
    e[mid] = 1.0
    x = scipy.linalg.solve_banded((1, 1), ab, e)
    return x, mid


# ---------------------------------------------------------------------------
# symbol evaluation


def test_symbol_eval_identity():
    s = BandedSymbol.from_dict({0: 1.0})
    assert symbol_eval(s, 1j) == 1.0


def test_symbol_eval_tridiagonal_at_one():
    s = BandedSymbol.from_dict({-1: 1.0, 0: -2.5, 1: 1.0})
    assert symbol_eval(s, 1.0) == pytest.approx(-0.5)


def test_symbol_eval_dephasing_fiber():
    # alpha = i(1-e^{-iq}) below, gamma = i(1-e^{iq}) above the diagonal
    G, q = 2.0, 0.9
    s = BandedSymbol.from_dict(
        {-1: 1j * (1 - np.exp(-1j * q)), 0: -G, 1: 1j * (1 - np.exp(1j * q))}
    )
    for theta in (0.3, 1.7, 4.4):
        val = symbol_eval(s, np.exp(1j * theta))
        expected = -G + 2j * (np.cos(theta) - np.cos(theta + q))
        assert val == pytest.approx(expected, abs=1e-12)
    # as a multiset over the closed grid this equals the reversed-momentum
    # parametrization -G + 2i(cos t - cos(t - q))
    thetas = 2 * np.pi * np.arange(64) / 64
    a = np.array([symbol_eval(s, np.exp(1j * t)) for t in thetas])
    b = -G + 2j * (np.cos(thetas) - np.cos(thetas - q))
    assert np.allclose(a.real, -G, atol=1e-12)
    assert np.allclose(np.sort(a.imag), np.sort(b.imag), atol=1e-12)


def test_symbol_eval_off_circle_raises():
    s = BandedSymbol.from_dict({0: 1.0})
    with pytest.raises(OffUnitCircle):
        symbol_eval(s, 1.0 + 1e-6)


def test_symbol_curve_constant():
    c = 0.7 - 0.2j
    pts = symbol_curve(BandedSymbol.from_dict({0: c}), 16)
    assert np.allclose(pts, c)


def test_symbol_curve_free_laplacian_segment():
    pts = symbol_curve(BandedSymbol.from_dict({-1: 1.0, 1: 1.0}), 257)
    assert np.abs(pts.imag).max() < 1e-12
    assert pts.real.min() == pytest.approx(-2.0, abs=1e-3)
    assert pts.real.max() == pytest.approx(2.0)


def test_symbol_curve_dephasing_degenerate_ellipse():
    q, G = np.pi, 2.0
    s = BandedSymbol.from_dict(
        {-1: 1j * (1 - np.exp(-1j * q)), 0: -G, 1: 1j * (1 - np.exp(1j * q))}
    )
    pts = symbol_curve(s, 512)
    assert np.allclose(pts.real, -2.0, atol=1e-12)
    assert np.abs(pts.imag).max() == pytest.approx(4.0, abs=1e-3)
    # 4i cos(theta) fills [-4i, 4i]
    gaps = np.diff(np.sort(pts.imag))
    assert gaps.max() < 0.05


def test_symbol_curve_needs_three_points():
    with pytest.raises(ValueError):
        symbol_curve(BandedSymbol.from_dict({0: 1.0}), 2)


# ---------------------------------------------------------------------------
# branch convention


def test_branch_sqrt_examples():
    assert branch_sqrt(4.0) == 2.0
    assert branch_sqrt(-1.0) == 1j
    assert branch_sqrt(-2j) == pytest.approx(1 - 1j)


@settings(max_examples=200, deadline=None)
@given(st.complex_numbers(max_magnitude=1e8, allow_nan=False, allow_infinity=False))
def test_branch_sqrt_square_and_predicate(z):
    w = branch_sqrt(z)
    assert abs(w * w - z) <= 1e-14 * max(1.0, abs(z))
    assert w.real >= 0.0
    if w.real == 0.0:
        assert w.imag >= 0.0


def test_branch_sqrt_bulk_random():
    rng = np.random.default_rng(3)
    zs = rng.normal(size=10**4) + 1j * rng.normal(size=10**4)
    for z in zs[:200]:
        w = branch_sqrt(z)
        assert abs(w * w - z) <= 1e-14 * max(1.0, abs(z))
    ws = np.array([branch_sqrt(z) for z in zs])
    assert np.max(np.abs(ws * ws - zs) / np.maximum(1.0, np.abs(zs))) <= 1e-14


# ---------------------------------------------------------------------------
# root ordering


def test_ordered_roots_worked_example():
    pair = ordered_roots(1.0, -2.5, 1.0)
    assert pair.lambda_plus == pytest.approx(2.0)
    assert pair.lambda_minus == pytest.approx(0.5)
    assert pair.lambda1 == pytest.approx(2.0)
    assert pair.lambda2 == pytest.approx(0.5)
    assert pair.sign_factor == -1


def test_ordered_roots_unimodular_pair_rejected():
    # alpha = gamma, beta = 0: both roots on the unit circle
    with pytest.raises((OnSymbolCurve, NoSplit)):
        ordered_roots(1.0, 0.0, 1.0)


def test_ordered_roots_no_split():
    # roots +-i sqrt(2), both outside the circle
    with pytest.raises(NoSplit):
        ordered_roots(2.0, 0.0, 1.0)


def test_ordered_roots_dephasing_shifted():
    # dephasing fiber at q = pi, G = 2.  Shift z = -1 lies off the degenerate
    # ellipse -2 + i[-4, 4]: the split holds with |lambda+ lambda-| = 1.
    q, G = np.pi, 2.0
    alpha = 1j * (1 - np.exp(-1j * q))
    gamma = 1j * (1 - np.exp(1j * q))
    pair = ordered_roots(alpha, -G - (-1.0), gamma)
    assert abs(pair.lambda_plus * pair.lambda_minus - alpha / gamma) < 1e-12
    assert abs(pair.lambda1) > 1.0 > abs(pair.lambda2)
    # shift z = -2 sits on the ellipse: both roots unimodular
    with pytest.raises((OnSymbolCurve, NoSplit)):
        ordered_roots(alpha, -G - (-2.0), gamma)


def test_ordered_roots_degenerate_gamma():
    with pytest.raises(DegenerateGamma):
        ordered_roots(1.0, 1.0, 0.0)


@settings(max_examples=150, deadline=None)
@given(st.integers(min_value=0, max_value=10**6))
def test_vieta_identities(seed):
    rng = np.random.default_rng(seed)
    alpha, beta, gamma = split_symbol(rng)
    pair = ordered_roots(alpha, beta, gamma)
    scale = max(abs(alpha / gamma), abs(beta / gamma), 1.0)
    assert abs(pair.lambda_plus * pair.lambda_minus - alpha / gamma) <= 1e-12 * scale
    assert abs(pair.lambda_plus + pair.lambda_minus + beta / gamma) <= 1e-12 * scale
    assert {pair.lambda1, pair.lambda2} == {pair.lambda_plus, pair.lambda_minus}


# ---------------------------------------------------------------------------
# tridiagonal inverse


def test_inverse_diagonal_worked_value():
    assert tridiag_inverse_element(1.0, -2.5, 1.0, 0, 0) == pytest.approx(-2.0 / 3.0)


def test_inverse_diagonal_quadrature_oracle():
    # (1/2pi) integral dtheta / a(e^{i theta}) is the diagonal of the inverse
    theta = 2 * np.pi * (np.arange(20000) + 0.5) / 20000
    a = np.exp(-1j * theta) - 2.5 + np.exp(1j * theta)
    val = np.mean(1.0 / a)
    assert tridiag_inverse_element(1.0, -2.5, 1.0, 3, 3) == pytest.approx(
        val, abs=1e-10
    )


def test_inverse_off_diagonal_worked_values():
    assert tridiag_inverse_element(1.0, -2.5, 1.0, 0, 1) == pytest.approx(-1.0 / 3.0)
    assert tridiag_inverse_element(1.0, -2.5, 1.0, 2, 0) == pytest.approx(-1.0 / 6.0)


def test_inverse_matches_truncated_banded_solve():
    rng = np.random.default_rng(11)
    for _ in range(10):
        alpha, beta, gamma = split_symbol(rng)
        x, mid = banded_solve_row(alpha, beta, gamma)
        for k in range(-6, 7):
            closed = tridiag_inverse_element(alpha, beta, gamma, mid + k, mid)
            assert abs(closed - x[mid + k]) < 1e-8


def test_inverse_residual_window():
    # applying T to the closed-form column of T^{-1} returns a unit vector
    rng = np.random.default_rng(5)
    alpha, beta, gamma = split_symbol(rng)
    ks = np.arange(-40, 41)
    col = np.array(
        [tridiag_inverse_element(alpha, beta, gamma, int(k), 0) for k in ks]
    )
    resid = alpha * col[:-2] + beta * col[1:-1] + gamma * col[2:]
    e = np.zeros(len(ks) - 2)
    e[len(e) // 2] = 1.0
    assert np.abs(resid - e).max() < 1e-10


def test_inverse_sign_factor_consistency():
    # where the branch convention allows pulling the root out of
    # gamma (lambda+ - lambda-), the sign-factor form agrees
    pair = ordered_roots(1.0, -2.5, 1.0)
    denom = pair.sign_factor * branch_sqrt((-2.5) ** 2 - 4.0)
    assert tridiag_inverse_element(1.0, -2.5, 1.0, 0, 0) == pytest.approx(1.0 / denom)


def test_inverse_exponential_decay_bound():
    rng = np.random.default_rng(23)
    for _ in range(20):
        alpha, beta, gamma = split_symbol(rng)
        pair = ordered_roots(alpha, beta, gamma)
        rate = max(1.0 / abs(pair.lambda1), abs(pair.lambda2))
        diag = abs(tridiag_inverse_element(alpha, beta, gamma, 0, 0))
        for k in range(-8, 9):
            el = abs(tridiag_inverse_element(alpha, beta, gamma, 0, k))
            assert el <= diag * rate ** abs(k) * (1 + 1e-9)


def test_inverse_bidiagonal_paths():
    # gamma = 0: pure lower band, geometric decay in one direction
    alpha, beta = 0.4, 1.3
    x, mid = banded_solve_row(alpha, beta, 1e-300, n=400)
    for k in range(-4, 5):
        closed = tridiag_inverse_element(alpha, beta, 0.0, mid + k, mid)
        assert abs(closed - x[mid + k]) < 1e-10
    # alpha = 0 mirrors it
    x, mid = banded_solve_row(1e-300, beta, alpha, n=400)
    for k in range(-4, 5):
        closed = tridiag_inverse_element(0.0, beta, alpha, mid + k, mid)
        assert abs(closed - x[mid + k]) < 1e-10
    # both zero: diagonal
    assert tridiag_inverse_element(0.0, 2.0, 0.0, 1, 1) == pytest.approx(0.5)
    assert tridiag_inverse_element(0.0, 2.0, 0.0, 1, 2) == 0.0


def test_inverse_dominant_band_direction():
    # |alpha| > |beta|: the bounded inverse expands against the band; the
    # truncated solve diverges there, so check the residual T x = e_0 instead
    alpha, beta = 2.0, 0.5
    ks = np.arange(-30, 31)
    col = np.array(
        [tridiag_inverse_element(alpha, beta, 0.0, int(k), 0) for k in ks]
    )
    resid = alpha * col[:-1] + beta * col[1:]
    e = np.zeros(len(ks) - 1)
    e[np.where(ks[1:] == 0)[0][0]] = 1.0
    assert np.abs(resid - e).max() < 1e-10
    # decay direction: support strictly above the diagonal
    assert np.all(col[ks > 0] == 0)
    assert abs(col[np.where(ks == -1)[0][0]]) > 0
