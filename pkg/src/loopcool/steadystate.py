"""Steady-state covariance, phonon extraction, and stability certification.

The covariance matrix V solves A V + V A^T = -Q (plain transpose, complex A,
matching the operator-ordered correlation matrix).  It is obtained by
Kronecker vectorization: (I x A + A x I) vec(V) = -vec(Q).
"""

import math
from dataclasses import dataclass

import numpy as np

from . import numkit
from .errors import ShapeMismatch, Unstable

#: spectral abscissas above this are treated as unstable (margin below zero)
STABILITY_MARGIN = -1e-12

#: abscissas in (-1e-10, 0) give an ill-conditioned steady state; also rejected
NEAR_SINGULAR_MARGIN = -1e-10


@dataclass
class CoolingReport:
    n_f: np.ndarray
    n_cav: float
    stable: bool
    spectral_abscissa: float
    residual: float


def stability_check(drift):
    """(stable, abscissa): stable iff max Re eig(A) < -1e-12."""
    res = numkit.eigenvalues(drift.a)
    abscissa = float(np.max(res.values.real))
    return abscissa < STABILITY_MARGIN, abscissa


def lyapunov_solve(drift, require_stable=True):
    """Solve A V + V A^T = -Q for the steady-state covariance V.

    With require_stable=False the linear system is solved regardless of the
    spectral abscissa; the result is then not a physical steady state (used
    only for diagnostics of approximation breakdown).
    """
    a = drift.a
    q = drift.q
    if require_stable:
        stable, abscissa = stability_check(drift)
        if abscissa >= NEAR_SINGULAR_MARGIN:
            raise Unstable("spectral abscissa %.3e >= %.0e" %
                           (abscissa, NEAR_SINGULAR_MARGIN), abscissa=abscissa)
    n = a.shape[0]
    eye = np.eye(n)
    op = numkit.kron(eye, a) + numkit.kron(a, eye)
    v = numkit.solve_linear(op, -q.reshape(-1))
    return v.reshape(n, n)


def lyapunov_residual(drift, v):
    return numkit.norm_inf(drift.a @ v + v @ drift.a.T + drift.q)


def phonon_numbers(v, n_mech, drift=None):
    """Extract per-mode occupations from the covariance matrix.

    n_j^f is the (db_j^+, db_j) element minus 1/2; the cavity occupation
    comes from the analogous (da^+, da) element.  When the originating
    DriftModel is passed, the report carries its stability verdict and the
    Lyapunov residual; otherwise those fields are NaN.
    """
    dim = n_mech + 1
    if v.shape != (2 * dim, 2 * dim):
        raise ShapeMismatch("covariance shape %s does not match n_mech=%d"
                            % (v.shape, n_mech))
    n_f = np.array([v[dim + 1 + j, 1 + j].real - 0.5 for j in range(n_mech)])
    n_cav = float(v[dim, 0].real - 0.5)
    if drift is not None:
        stable, abscissa = stability_check(drift)
        residual = lyapunov_residual(drift, v)
    else:
        stable, abscissa, residual = True, math.nan, math.nan
    return CoolingReport(n_f=n_f, n_cav=n_cav, stable=stable,
                         spectral_abscissa=abscissa, residual=residual)


def cool(drift):
    """Stability check + Lyapunov solve + phonon extraction in one call."""
    v = lyapunov_solve(drift)
    return phonon_numbers(v, drift.spec.n_mech, drift=drift)


def cool_or_flag(drift):
    """Like cool(), but unstable points yield a NaN-occupations record.

    Used inside sweeps so a single unstable grid point does not abort the run.
    """
    try:
        return cool(drift)
    except Unstable as exc:
        n = drift.spec.n_mech
        return CoolingReport(n_f=np.full(n, math.nan), n_cav=math.nan,
                             stable=False,
                             spectral_abscissa=float(exc.abscissa),
                             residual=math.nan)
