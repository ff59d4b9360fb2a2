"""Pure-numpy phase kernels (fallback backend).

Same contracts as the compiled versions in _kernels_cy: both mutate psi in
place and return None.  The numpy variants allocate one temporary per call;
the compiled ones stream through the array once without temporaries.
"""

import numpy as np


def apply_quartic_phase(psi, x, x2, x4, A, B, C, dt):
    """psi *= exp(-i dt (A x^2 + B x^4 + C x)), elementwise in place."""
    np.multiply(psi, np.exp(-1j * dt * (A * x2 + B * x4 + C * x)), out=psi)


def apply_phase_table(psi, table):
    """psi *= table, in place (precomputed unit-modulus factors)."""
    np.multiply(psi, table, out=psi)
