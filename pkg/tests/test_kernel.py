import math

import numpy as np
import pytest

from pcx import kernel as kn
from pcx.beurling import BandlimitedFunction
from pcx.numerics import DomainError

RNG = np.random.default_rng(42)


def test_csinc_stability():
    z = np.array([0.0, 1e-9, 1e-7, 0.5, 1.0 + 0.3j])
    v = kn.csinc(z)
    assert v[0] == pytest.approx(1.0)
    assert abs(v[1] - 1.0) < 1e-15
    assert v[3] == pytest.approx(2.0 / math.pi)
    zc = 1.0 + 0.3j
    assert v[4] == pytest.approx(np.sin(np.pi * zc) / (np.pi * zc))


def test_removable_point_patch():
    # limits from either side agree with the patched value
    z0 = kn._Z0
    for piece in (kn.piece_c, kn.piece_d, kn.piece_g, kn.piece_h):
        patched = complex(piece(np.array([z0], dtype=complex))[0])

        def f(h, piece=piece):
            return complex(piece(np.array([z0 + h], dtype=complex))[0]).real

        h = 1e-3  # clear of the patch radius
        rich = (4.0 * 0.5 * (f(h) + f(-h)) - 0.5 * (f(2 * h) + f(-2 * h))) / 3.0
        assert abs(patched.real - rich) < 1e-9
        assert abs(patched.imag) < 1e-12


def test_kernel_hermitian_symmetry():
    for _ in range(20):
        w = complex(RNG.uniform(-3, 3), RNG.uniform(-2, 2))
        z = complex(RNG.uniform(-3, 3), RNG.uniform(-2, 2))
        kwz = complex(kn.kernel_eval(w, z))
        kzw = complex(kn.kernel_eval(z, w))
        assert abs(kwz - np.conj(kzw)) < 1e-12 * max(1.0, abs(kwz))


def test_kernel_conjugation_symmetry():
    for _ in range(20):
        w = complex(RNG.uniform(-3, 3), RNG.uniform(-2, 2))
        z = complex(RNG.uniform(-3, 3), RNG.uniform(-2, 2))
        a = complex(kn.kernel_eval(np.conj(w), np.conj(z)))
        b = complex(kn.kernel_eval(w, z))
        assert abs(a - np.conj(b)) < 1e-12 * max(1.0, abs(b))


def test_kernel_diagonal_positive():
    xs = np.linspace(-10, 10, 401)
    diag = np.array([kn.kernel_eval(x, x).real for x in xs])
    assert np.all(diag > 0)


def test_reproduce_sinc_translates():
    # f(z) = sinc(z - a) has type pi and lies in the space
    for a in (0.0, 0.7, -1.3):
        f = lambda x, a=a: kn.csinc(np.asarray(x) - a).real
        for w in (0.0, 0.4, 1.7):
            got = kn.reproduce(f, w)
            assert abs(got - kn.csinc(np.array([w - a]))[0]) < 1e-8


def test_reproduce_complex_point():
    f = lambda x: kn.csinc(np.asarray(x) - 0.5).real
    w = 0.3 + 0.6j
    got = kn.reproduce(f, w)
    assert abs(got - complex(kn.csinc(np.array([w - 0.5]))[0])) < 1e-8


def test_reproduce_accepts_bandlimited_wrapper():
    f = BandlimitedFunction(type_bound=math.pi,
                            time_eval=lambda x: kn.csinc(np.asarray(x)).real,
                            freq_eval=None, label="sinc")
    assert abs(kn.reproduce(f, 0.25)
               - kn.csinc(np.array([0.25]))[0]) < 1e-8


def test_one_delta_value_and_extremal():
    value, extremal = kn.one_delta()
    closed = 2.0 ** -0.5 / math.tan(2.0 ** -0.5) - 0.5
    assert abs(value - closed) < 1e-14
    assert extremal(np.array([0.0]))[0] == pytest.approx(1.0, abs=1e-12)
    xs = np.linspace(-5, 5, 201)
    assert np.all(extremal(xs) >= 0.0)


def test_two_delta_constraints_and_value():
    for beta in (0.5, 1.0, 2.0, 3.7):
        sol = kn.two_delta(beta)
        # the extremal meets both constraints with equality
        assert sol.extremal_eval(np.array([beta]))[0] == pytest.approx(
            1.0, abs=1e-9)
        assert sol.extremal_eval(np.array([-beta]))[0] == pytest.approx(
            1.0, abs=1e-9)
        assert sol.value == pytest.approx(2.0 / (sol.k_bb + abs(sol.k_bmb)))
        assert sol.value > 0
    with pytest.raises(DomainError):
        kn.two_delta(0.0)


def test_two_delta_frozen_value():
    assert kn.two_delta(2.0).value == pytest.approx(1.91528938, abs=1e-7)


def test_two_delta_large_beta_envelope():
    # Delta(beta) -> 2(1 - |sinc(2 beta)|) + O(beta^-2)
    for beta in (10.0, 25.0):
        sol = kn.two_delta(beta)
        env = 2.0 * (1.0 - abs(math.sin(2 * math.pi * beta)
                               / (2 * math.pi * beta)))
        assert abs(sol.value - env) < 2.0 / beta ** 2


def test_min_norm_two_constraints():
    norm, (c1, c2) = kn.min_norm_two_constraints(2.0, -1.0)
    assert norm == pytest.approx(math.sqrt(2.0 / 3.0))
    # the coefficients realize both unit constraints
    assert abs(c1 * 2.0 + c2 * (-1.0)) == pytest.approx(1.0)
    assert abs(c1 * (-1.0) + c2 * 2.0) == pytest.approx(1.0)
    with pytest.raises(DomainError):
        kn.min_norm_two_constraints(1.0, 2.0)
    with pytest.raises(DomainError):
        kn.min_norm_two_constraints(-1.0, 0.0)


def test_u_minus_l_gap_halves_two_delta():
    assert kn.u_minus_l_gap(1.3) == pytest.approx(0.5 * kn.two_delta(1.3).value)


def test_norm_equivalence_eta():
    from pcx.pcbounds import pc_density
    eta = kn.norm_equivalence_eta()
    assert eta == pytest.approx(math.sqrt(float(pc_density(np.array([0.125]))[0])))
    assert 0.2 < eta < 0.25
