"""Pure NumPy implementations of the numerical hot kernels.

This module mirrors the compiled extension ``dephlab._core._kernels`` and is
selected at import time when the extension is unavailable (or when
``DEPHLAB_PURE_PYTHON`` is set).  It favours clarity over speed: the Jacobi
sweep conjugates with an explicit rotation matrix, and the scans are plain
vectorised NumPy.
"""

import numpy as np

BACKEND = "python"

_LN2 = np.log(2.0)


def jacobi_eigvalsh(a):
    """Eigenvalues of a complex Hermitian matrix, ascending.

    Cyclic Jacobi rotations, iterated until the off-diagonal Frobenius norm
    drops below 1e-14 (relative to the matrix scale for inputs with norm > 1).

    Parameters
    ----------
    a : (n, n) array_like, Hermitian, n <= 8

    Returns
    -------
    (n,) float ndarray
    """
    m = np.array(a, dtype=np.complex128)
    n = m.shape[0]
    tol = 1e-14 * max(1.0, np.linalg.norm(m))
    offdiag = ~np.eye(n, dtype=bool)
    for _ in range(100):
        off = np.linalg.norm(m[offdiag])
        if off <= tol:
            return np.sort(np.real(np.diag(m)))
        for p in range(n - 1):
            for q in range(p + 1, n):
                r = abs(m[p, q])
                if r == 0.0:
                    continue
                phase = m[p, q] / r
                tau = (m[q, q].real - m[p, p].real) / (2.0 * r)
                if tau >= 0.0:
                    t = 1.0 / (tau + np.sqrt(1.0 + tau * tau))
                else:
                    t = 1.0 / (tau - np.sqrt(1.0 + tau * tau))
                c = 1.0 / np.sqrt(1.0 + t * t)
                s = t * c
                j = np.eye(n, dtype=np.complex128)
                j[p, p] = c
                j[q, q] = c
                j[p, q] = s * phase
                j[q, p] = -s * np.conj(phase)
                m = j.conj().T @ m @ j
                m[p, q] = 0.0
                m[q, p] = 0.0
    raise RuntimeError("Jacobi iteration did not converge")


def _omega_coth_half(beta, omega):
    # omega * coth(beta*omega/2), stable for beta*omega/2 -> 0 and -> inf
    x = 0.5 * beta * omega
    small = x < 1e-4
    large = x > 19.0
    mid = ~(small | large)
    out = np.empty_like(omega)
    out[small] = 2.0 / beta + beta * omega[small] ** 2 / 6.0 - (beta ** 3) * omega[small] ** 4 / 360.0
    out[mid] = omega[mid] * (1.0 + 2.0 / np.expm1(2.0 * x[mid]))
    out[large] = omega[large]
    return out


def integrand_sum(kind, nodes, weights, beta, s, t):
    """Weighted sum of one decoherence integrand over quadrature nodes.

    kind 0: w e^{-w^2} (1 + sinc(w s)) sin^2(w t / 2) coth(beta w / 2)
    kind 1: w e^{-w^2} (1 + sinc(w s)) sin(w t)
    kind 2: w e^{-w^2} sin(w t)
    kind 3: w e^{-w^2} sin^2(w t / 2) coth(beta w / 2)

    Overall coupling prefactors are applied by the caller.
    """
    w = np.asarray(nodes)
    gauss = np.exp(-w * w)
    if kind == 0:
        f = gauss * (1.0 + np.sinc(w * s / np.pi)) * np.sin(0.5 * w * t) ** 2 * _omega_coth_half(beta, w)
    elif kind == 1:
        f = w * gauss * (1.0 + np.sinc(w * s / np.pi)) * np.sin(w * t)
    elif kind == 2:
        f = w * gauss * np.sin(w * t)
    elif kind == 3:
        f = gauss * np.sin(0.5 * w * t) ** 2 * _omega_coth_half(beta, w)
    else:
        raise ValueError(f"unknown integrand kind {kind}")
    return float(np.dot(weights, f))


def _xlog2x(x):
    out = np.zeros_like(x)
    pos = x > 0.0
    out[pos] = x[pos] * np.log(x[pos]) / _LN2
    return out


def conditional_entropy_grid(rho, thetas, phis):
    """Post-measurement conditional entropy for projective measurements on B.

    For each measurement direction (theta_m, phi_m) the rank-1 projectors
    |v><v| and |v_perp><v_perp| are applied to subsystem B of the two-qubit
    state ``rho``; returns sum_k p_k S(rho_k) in bits, shape
    (len(thetas), len(phis)).  Outcomes with p_k < 1e-14 contribute zero.
    """
    r = np.asarray(rho, dtype=np.complex128).reshape(2, 2, 2, 2)
    th = np.asarray(thetas, dtype=float)[:, None]
    ph = np.asarray(phis, dtype=float)[None, :]
    ct, st = np.cos(th / 2.0), np.sin(th / 2.0)
    eip = np.exp(1j * ph)
    # measurement vector and its orthogonal complement, shape (P, Q, 2)
    v = np.stack(np.broadcast_arrays(ct + 0j, st * eip), axis=-1)
    vp = np.stack(np.broadcast_arrays(st + 0j, -ct * eip), axis=-1)

    total = np.zeros((th.shape[0], ph.shape[1]))
    for vec in (v, vp):
        # conditional (unnormalised) 2x2 operator on A: M = (I (x) <v|) rho (I (x) |v>)
        m = np.einsum("abcd,...b,...d->...ac", r, vec.conj(), vec)
        p = np.real(m[..., 0, 0] + m[..., 1, 1])
        det = np.real(m[..., 0, 0] * m[..., 1, 1] - m[..., 0, 1] * m[..., 1, 0])
        disc = np.sqrt(np.maximum(p * p - 4.0 * det, 0.0))
        mu1 = np.maximum((p + disc) / 2.0, 0.0)
        mu2 = np.maximum((p - disc) / 2.0, 0.0)
        # p_k S(M/p_k) = -xlg(mu1) - xlg(mu2) + xlg(p)
        contrib = -_xlog2x(mu1) - _xlog2x(mu2) + _xlog2x(p)
        contrib[p < 1e-14] = 0.0
        total += contrib
    return total
