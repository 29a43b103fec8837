import cmath
import math

import numpy as np
import pytest

from loopcool import get_preset
from loopcool.errors import DomainError
from loopcool.model import Linearized, SystemSpec
from loopcool.modes import (LambdaSystem, _cardano_roots, _mechanical_block,
                            bright_dark, hybrid_transform, lambda_eigensystem,
                            normal_modes)


def chain(n, g=0.1, eta=0.1, theta1=math.pi / 2, omega=None, gs=None):
    omega = omega or (1.0,) * n
    gs = gs or (g,) * n
    return SystemSpec(n_mech=n, omega_m=omega, kappa=0.2, gamma=(1e-5,) * n,
                      nbar=(1e3,) * n, eta=(eta,) * (n - 1),
                      theta=(theta1,) + (0.0,) * (n - 2),
                      drive=Linearized(delta=1.0, g_lin=gs))


# --- bright/dark --------------------------------------------------------

def test_bright_dark_degenerate():
    spec = get_preset("fig2_eta0")
    bd = bright_dark(spec)
    assert bd.omega_plus == bd.omega_minus == 1.0
    assert bd.zeta == 0.0
    assert bd.g_plus == pytest.approx(0.1 * math.sqrt(2))
    assert bd.dark_mode_exists


def test_bright_dark_detuned():
    spec = get_preset("fig2_eta0").with_(omega_m=(1.0, 1.2))
    bd = bright_dark(spec)
    assert bd.omega_plus == pytest.approx(1.1)
    assert bd.omega_minus == pytest.approx(1.1)
    assert bd.zeta == pytest.approx(0.1 * 0.1 * (1.0 - 1.2) / 0.02)
    assert not bd.dark_mode_exists


def test_bright_dark_weighted():
    spec = get_preset("fig2_eta0").with_(
        omega_m=(1.0, 1.2), drive=Linearized(delta=1.0, g_lin=(0.1, 0.05)))
    bd = bright_dark(spec)
    gsq = 0.01 + 0.0025
    assert bd.omega_plus == pytest.approx((0.01 * 1.0 + 0.0025 * 1.2) / gsq)
    assert bd.weights[0] == pytest.approx(0.1 / math.sqrt(gsq))


def test_bright_dark_rejects_exchange():
    with pytest.raises(DomainError):
        bright_dark(get_preset("fig2"))
    with pytest.raises(DomainError):
        bright_dark(get_preset("figS10"))


# --- hybrid modes -------------------------------------------------------

def test_hybrid_degenerate_weights():
    hm = hybrid_transform(get_preset("fig2"))
    assert hm.f == pytest.approx(1 / math.sqrt(2))
    assert hm.h == pytest.approx(-1 / math.sqrt(2))
    assert hm.omega_tilde_plus == pytest.approx(1.05)
    assert hm.omega_tilde_minus == pytest.approx(0.95)


def test_hybrid_dark_at_zero_phase():
    spec = get_preset("fig2").with_(theta=(0.0,))
    hm = hybrid_transform(spec)
    # G~- = (G2 - G1)/sqrt(2) = 0: one hybrid mode decouples
    assert hm.darkness <= 1e-10
    assert abs(hm.g_tilde_plus) == pytest.approx(0.1 * math.sqrt(2))


def test_hybrid_dark_at_pi_phase():
    spec = get_preset("fig2").with_(theta=(math.pi,))
    hm = hybrid_transform(spec)
    assert hm.darkness <= 1e-10


def test_hybrid_both_bright_at_quarter_phase():
    hm = hybrid_transform(get_preset("fig2"))
    # degenerate case, theta = pi/2: |G~+| = |G~-| = G
    assert abs(hm.g_tilde_plus) == pytest.approx(0.1)
    assert abs(hm.g_tilde_minus) == pytest.approx(0.1)
    assert hm.darkness == pytest.approx(1 / math.sqrt(2))


def test_hybrid_power_conservation():
    for th in np.linspace(0.0, 2 * math.pi, 9):
        spec = get_preset("fig2").with_(theta=(th,))
        hm = hybrid_transform(spec)
        total = abs(hm.g_tilde_plus) ** 2 + abs(hm.g_tilde_minus) ** 2
        assert abs(total - 2 * 0.1 ** 2) <= 1e-12


def test_hybrid_frequency_sum_and_split():
    spec = get_preset("fig2").with_(omega_m=(1.0, 1.1))
    hm = hybrid_transform(spec)
    assert hm.omega_tilde_plus + hm.omega_tilde_minus == pytest.approx(2.1)
    split = math.sqrt(0.1 ** 2 + 4 * 0.05 ** 2)
    assert hm.omega_tilde_plus - hm.omega_tilde_minus == pytest.approx(split)


def test_hybrid_rejects_eta_zero():
    with pytest.raises(DomainError):
        hybrid_transform(get_preset("fig2_eta0"))


# --- N-mode normal modes ------------------------------------------------

def test_normal_modes_match_block_eigenvalues():
    for n, th in [(2, 0.0), (3, math.pi / 2), (4, 0.0), (4, math.pi / 2), (5, 1.0)]:
        spec = chain(n, theta1=th)
        nm = normal_modes(spec)
        assert nm.closed_form
        vals = np.linalg.eigvalsh(_mechanical_block(spec))
        assert np.allclose(np.sort(nm.omega_k), np.sort(vals), atol=1e-10)


def test_normal_modes_frequencies_closed_form():
    nm = normal_modes(chain(3))
    ks = np.arange(1, 4)
    assert np.allclose(nm.omega_k, 1.0 + 0.2 * np.cos(ks * math.pi / 4))


def test_normal_modes_power_conservation():
    for n in (2, 3, 4):
        for th in (0.0, math.pi / 2, 1.3):
            nm = normal_modes(chain(n, theta1=th))
            assert abs(np.sum(np.abs(nm.coupling_k) ** 2) - n * 0.1 ** 2) <= 1e-12


def test_four_chain_dark_count():
    # theta_1 = 0: the even-index collective modes decouple (two dark modes)
    nm = normal_modes(chain(4, theta1=0.0))
    assert int(nm.dark_flags.sum()) == 2
    assert np.abs(nm.coupling_k[nm.dark_flags]).max() <= 1e-10 * 0.1
    # theta_1 = pi/2 breaks the interference: every mode couples
    nm = normal_modes(chain(4, theta1=math.pi / 2))
    assert int(nm.dark_flags.sum()) == 0


def test_three_chain_predicted_ceiling():
    nm = normal_modes(chain(3))
    assert nm.predicted_uncooled == pytest.approx(1e3 * 2 / 3)
    assert nm.norm_a == pytest.approx(math.sqrt(2.0))


def test_normal_modes_nonuniform_fallback():
    spec = chain(3, omega=(1.0, 1.05, 0.95))
    with pytest.warns(UserWarning, match="nonuniform"):
        nm = normal_modes(spec)
    assert not nm.closed_form
    vals = np.linalg.eigvalsh(_mechanical_block(spec))
    assert np.allclose(np.sort(nm.omega_k), np.sort(vals), atol=1e-10)
    # unitary transform preserves total coupling power
    assert np.sum(np.abs(nm.coupling_k) ** 2) == pytest.approx(3 * 0.1 ** 2)


def test_single_mode_trivial():
    spec = SystemSpec(n_mech=1, omega_m=(1.0,), kappa=0.2, gamma=(1e-5,),
                      nbar=(1e3,), eta=(), theta=(),
                      drive=Linearized(delta=1.0, g_lin=(0.1,)))
    nm = normal_modes(spec)
    assert nm.omega_k[0] == pytest.approx(1.0)
    assert abs(nm.coupling_k[0]) == pytest.approx(0.1)
    assert not nm.dark_flags[0]


# --- three-level Lambda configuration -----------------------------------

def lam_sys(eta, theta):
    return LambdaSystem(omega1=1.0, omega2=1.0, omega_b=eta, theta=theta)


def test_cardano_residual_grid():
    for eta in np.geomspace(0.01, 2.0, 12):
        for th in np.linspace(0.0, 2 * math.pi, 16):
            roots, card = _cardano_roots(eta, th)
            assert card["imag_residue"] <= 1e-10
            for lam in roots:
                resid = lam ** 3 - (2 + eta * eta) * lam - 2 * eta * math.cos(th)
                assert abs(resid) <= 1e-10


def test_lambda_dark_iff_phase_multiple_of_pi():
    for eta in (0.1, 0.5, 1.0, 2.0):
        for th, dark in [(0.0, True), (math.pi, True),
                         (math.pi / 4, False), (math.pi / 2, False),
                         (3 * math.pi / 4, False)]:
            res = lambda_eigensystem(lam_sys(eta, th))
            if dark:
                assert res.dark_index is not None
                assert res.p_e[res.dark_index] <= 1e-10
            else:
                assert res.dark_index is None
                assert res.p_e.min() >= 1e-4


def test_lambda_closed_form_zero_phase():
    eta = 0.3
    res = lambda_eigensystem(lam_sys(eta, 0.0))
    expect = {-eta, 0.5 * (eta - math.sqrt(8 + eta * eta)),
              0.5 * (eta + math.sqrt(8 + eta * eta))}
    for lam in res.lambdas:
        assert min(abs(lam - e) for e in expect) <= 1e-10
    # the dark state is the antisymmetric ground-level combination
    dark_vec = res.vectors[res.dark_index]
    target = np.array([0.0, -1.0, 1.0]) / math.sqrt(2)
    phase = dark_vec[2] / target[2]
    assert np.allclose(dark_vec, phase * target, atol=1e-8)
    assert abs(res.lambdas[res.dark_index] - (-eta)) <= 1e-10


def test_lambda_pi_phase_dark_eigenvalue():
    eta = 0.7
    res = lambda_eigensystem(lam_sys(eta, math.pi))
    assert abs(res.lambdas[res.dark_index] - eta) <= 1e-10


def test_lambda_quarter_phase_roots():
    eta = 0.8
    res = lambda_eigensystem(lam_sys(eta, math.pi / 2))
    expect = {0.0, math.sqrt(2 + eta * eta), -math.sqrt(2 + eta * eta)}
    for lam in res.lambdas:
        assert min(abs(lam - e) for e in expect) <= 1e-10
    izero = int(np.argmin(np.abs(res.lambdas)))
    assert res.p_e[izero] == pytest.approx(eta * eta / (2 + eta * eta))


def test_lambda_degenerate_subspace_dark_found():
    # eta = 1, theta = 0: eigenvalue -1 is twofold degenerate and the
    # analytic eigenvector expression is singular there; the dark state
    # must still be exposed
    res = lambda_eigensystem(lam_sys(1.0, 0.0))
    assert res.dark_index is not None
    assert res.p_e[res.dark_index] <= 1e-12
    assert sorted(round(x, 6) for x in res.lambdas) == [-1.0, -1.0, 2.0]
    bright = [s for s in range(3) if s != res.dark_index]
    assert sum(res.p_e[bright]) == pytest.approx(1.0)


def test_lambda_eigenvectors_satisfy_matrix():
    from loopcool.modes import _lambda_matrix
    for eta, th in [(0.3, 0.0), (0.8, math.pi / 2), (1.0, 0.0), (1.5, 2.0)]:
        sys = lam_sys(eta, th)
        res = lambda_eigensystem(sys)
        m = _lambda_matrix(sys)
        for lam, vec in zip(res.lambdas, res.vectors):
            assert np.linalg.norm(m @ vec - lam * vec) <= 1e-8
            assert np.linalg.norm(vec) == pytest.approx(1.0)


def test_lambda_detuned_numeric_path():
    res = lambda_eigensystem(LambdaSystem(omega1=1.0, omega2=1.0,
                                          omega_b=0.5, theta=0.0, delta=0.3))
    assert not res.analytic
    assert res.dark_index is not None  # theta = 0 dark state survives detuning
