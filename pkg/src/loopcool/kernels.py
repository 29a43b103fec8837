"""Hot numerical kernels.

The only genuinely hot loop in the package is the fixed-step RK4 flow for the
differential Lyapunov equation dX/dt = A X + X A^T + Q (time-domain oracle for
the steady-state covariance).  It is compiled with numba when available; set
LOOPCOOL_NO_NUMBA=1 to force the pure-numpy fallback (same code path, no jit).
"""

import os

import numpy as np

from .errors import BlowUp

_BLOWUP_LIMIT = 1e12

#: flow is declared converged when max|dX/dt| < this times (1 + max|X|)
_STEADY_RTOL = 1e-13


def _rk4_flow_impl(a, at, q, x, n_steps, dt, check_every):
    for s in range(n_steps):
        k1 = a @ x + x @ at + q
        y = x + (0.5 * dt) * k1
        k2 = a @ y + y @ at + q
        y = x + (0.5 * dt) * k2
        k3 = a @ y + y @ at + q
        y = x + dt * k3
        k4 = a @ y + y @ at + q
        x = x + (dt / 6.0) * (k1 + 2.0 * (k2 + k3) + k4)
        if s % check_every == 0:
            m = np.abs(x).max()
            if m > 1e12:
                return x, False
            # steady-state early exit: the remaining steps cannot move X
            # by more than roundoff once the flow derivative is this small
            if np.abs(k1).max() < 1e-13 * (1.0 + m):
                return x, True
    return x, True


NUMBA_ENABLED = os.environ.get("LOOPCOOL_NO_NUMBA", "") not in ("1", "true", "yes")

if NUMBA_ENABLED:
    try:
        from numba import njit

        _rk4_flow = njit(cache=True)(_rk4_flow_impl)
    except ImportError:  # pragma: no cover - numba is an install requirement
        NUMBA_ENABLED = False
        _rk4_flow = _rk4_flow_impl
else:
    _rk4_flow = _rk4_flow_impl


def rk4_lyapunov_flow(a, q, x0, t_end, dt, check_every=64):
    """Integrate dX/dt = A X + X A^T + Q from X(0)=x0 to t_end with step dt.

    Raises BlowUp if any entry magnitude exceeds 1e12 (checked every
    `check_every` steps), which signals an unstable drift.
    """
    a = np.ascontiguousarray(a, dtype=np.complex128)
    q = np.ascontiguousarray(q, dtype=np.complex128)
    x = np.ascontiguousarray(x0, dtype=np.complex128).copy()
    at = np.ascontiguousarray(a.T)
    n_steps = int(round(t_end / dt))
    x, ok = _rk4_flow(a, at, q, x, n_steps, dt, check_every)
    if not ok:
        raise BlowUp("integration diverged (entry magnitude above %g)" % _BLOWUP_LIMIT)
    return x
