import math

import mpmath as mp
import numpy as np
import pytest

from diamondqi.errors import DomainCap, NonConvergence
from diamondqi.specfun import (
    KummerParams,
    QuadratureSpec,
    kummer_m,
    oscillatory_integral,
    oscillatory_integral_with_error,
)


def kummer_oracle(a, b, z, dps=50):
    """Term-by-term summation in arbitrary precision (independent route)."""
    with mp.workdps(dps):
        t = mp.mpc(1)
        s = mp.mpc(1)
        for n in range(200_000):
            t = t * (mp.mpc(a) + n) * mp.mpc(z) / ((mp.mpc(b) + n) * (n + 1))
            s += t
            if n > abs(z) and abs(t) < mp.mpf(10) ** (-(dps - 2)) * abs(s):
                break
        return complex(s)


def test_kummer_at_zero_is_one():
    assert kummer_m(KummerParams(1 - 0.7j, 2.0, 0.0)) == 1.0 + 0.0j


def test_kummer_classical_identity():
    z = 2j
    got = kummer_m(KummerParams(1.0, 2.0, z))
    assert abs(got - (np.exp(z) - 1.0) / z) < 1e-15


def test_kummer_against_high_precision_oracle():
    got = kummer_m(KummerParams(1 - 0.5j, 2.0, 2.6j))
    ref = kummer_oracle(1 - 0.5j, 2, 2.6j)
    assert abs(got - ref) / abs(ref) < 1e-13


@pytest.mark.parametrize("x", [0.5, 3.0, 11.5, 12.5, 20.0, 35.0, 44.5, 45.5, 70.0, 120.0, 199.0])
@pytest.mark.parametrize("w", [0.2, 1.0, 4.0, 16.0])
def test_kummer_all_branches_meet_tolerance(x, w):
    # oracle precision sized to the cancellation so it stays the stronger route
    a = 1 - 0.5j * w
    got = kummer_m(KummerParams(a, 2.0, 1j * x))
    ref = kummer_oracle(a, 2, 1j * x, dps=max(50, int(60 + 0.5 * x)))
    assert abs(got - ref) / abs(ref) < 1e-10


def test_kummer_domain_cap():
    with pytest.raises(DomainCap):
        kummer_m(KummerParams(1 - 0.5j, 2.0, 300j))
    # configurable cap
    with pytest.raises(DomainCap):
        kummer_m(KummerParams(1 - 0.5j, 2.0, 40j), z_cap=30.0)


def test_kummer_rejects_nonpositive_integer_b():
    with pytest.raises(ValueError):
        KummerParams(1.0, 0.0, 1j)
    with pytest.raises(ValueError):
        KummerParams(1.0, -3.0, 1j)


def test_kummer_contiguous_relation(rng):
    for _ in range(25):
        w = rng.uniform(0.2, 8.0)
        x = rng.uniform(0.2, 10.0)
        a, b, z = 1 - 0.5j * w, 2.0 + 0.0j, 1j * x
        res = (
            (b - a) * kummer_m(KummerParams(a - 1, b, z))
            + (2 * a - b + z) * kummer_m(KummerParams(a, b, z))
            - a * kummer_m(KummerParams(a + 1, b, z))
        )
        assert abs(res) < 1e-8


def test_kummer_conjugation_symmetry(rng):
    for _ in range(20):
        a = 1 - 0.5j * rng.uniform(0.2, 6.0)
        z = 1j * rng.uniform(0.2, 10.0)
        lhs = kummer_m(KummerParams(a, 2.0, z)).conjugate()
        rhs = kummer_m(KummerParams(a.conjugate(), 2.0, z.conjugate()))
        assert lhs == rhs  # conjugating inputs conjugates every float op


# ---------------------------------------------------------------------------
# quadrature
# ---------------------------------------------------------------------------

def test_quadrature_plane_wave_closed_form():
    k = 3.0
    got = oscillatory_integral(
        lambda u: np.exp(1j * k * u), QuadratureSpec(0.0, 1.0, rel_tol=1e-12, oscillation_hint=k)
    )
    assert abs(got - (np.exp(1j * k) - 1.0) / (1j * k)) < 1e-12


def test_quadrature_zero_integrand():
    got = oscillatory_integral(
        lambda u: np.zeros_like(u, dtype=complex), QuadratureSpec(-1.0, 1.0)
    )
    assert got == 0


def test_quadrature_matches_bogoliubov_bracket():
    # int_{-1}^{1} ((1+u)/(1-u))^{-i w/2} e^{i k u} du against its Kummer value
    w, k = 1.0, 1.0
    f = lambda u: np.exp(-1j * (w / 2) * (np.log1p(u) - np.log1p(-u)) + 1j * k * u)
    got = oscillatory_integral(f, QuadratureSpec(-1.0, 1.0, rel_tol=1e-11, oscillation_hint=w + k))
    bracket = (
        math.pi * w / math.sinh(math.pi * w / 2)
        * np.exp(-1j * k)
        * kummer_m(KummerParams(1 - 0.5j * w, 2.0, 2j * k))
    )
    assert abs(got - bracket) / abs(bracket) < 1e-9


def test_quadrature_tolerance_halving_consistency():
    k = 7.0
    f = lambda u: np.exp(1j * k * u) / (1.0 + u * u)
    v1, e1 = oscillatory_integral_with_error(f, QuadratureSpec(-1.0, 1.0, 1e-8, oscillation_hint=k))
    v2, _ = oscillatory_integral_with_error(f, QuadratureSpec(-1.0, 1.0, 5e-9, oscillation_hint=k))
    assert abs(v1 - v2) <= max(e1, 1e-8 * abs(v1))


def test_quadrature_determinism():
    k = 5.0
    spec = QuadratureSpec(0.0, 2.0, 1e-10, oscillation_hint=k)
    f = lambda u: np.exp(1j * k * u) * np.cos(u)
    assert oscillatory_integral(f, spec) == oscillatory_integral(f, spec)


def test_quadrature_nonconvergence_carries_estimate():
    # absurdly tight tolerance with a tiny subdivision budget
    f = lambda u: np.exp(40j * u)
    with pytest.raises(NonConvergence) as err:
        oscillatory_integral(f, QuadratureSpec(0.0, 1.0, 1e-15, max_subdivisions=1, oscillation_hint=0.1))
    assert err.value.best_estimate is not None
    assert err.value.error_bound is not None


def test_quadrature_spec_validation():
    with pytest.raises(ValueError):
        QuadratureSpec(1.0, 0.0)
    with pytest.raises(ValueError):
        QuadratureSpec(0.0, 1.0, rel_tol=0.0)
