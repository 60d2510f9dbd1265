# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled numerical hot kernels.

Same contract as the pure NumPy fallback ``dephlab._core._kernels_py``:
Jacobi eigenvalues for small Hermitian matrices, decoherence-integrand
quadrature sums, and the projective-measurement conditional-entropy scan.
"""

import numpy as np

from libc.math cimport sin, cos, exp, expm1, sqrt, fabs, log

BACKEND = "cython"

cdef double _LN2 = log(2.0)
cdef int _NMAX = 8


def jacobi_eigvalsh(a):
    """Eigenvalues of a complex Hermitian matrix (n <= 8), ascending.

    Cyclic Jacobi rotations until the off-diagonal Frobenius norm is below
    1e-14 (relative to the matrix scale for inputs with norm > 1).
    """
    cdef double complex[:, :] m = np.array(a, dtype=np.complex128)
    cdef int n = m.shape[0]
    if n > _NMAX:
        raise ValueError("matrix dimension exceeds 8")
    cdef double complex buf[8][8]
    cdef int i, j, p, q, sweep
    for i in range(n):
        for j in range(n):
            buf[i][j] = m[i, j]

    cdef double fro = 0.0
    for i in range(n):
        for j in range(n):
            fro += buf[i][j].real ** 2 + buf[i][j].imag ** 2
    cdef double tol = 1e-14 * max(1.0, sqrt(fro))

    cdef double off, r, tau, t, c, s, app, aqq
    cdef double complex phase, mip, miq, mpj, mqj
    for sweep in range(100):
        off = 0.0
        for i in range(n):
            for j in range(n):
                if i != j:
                    off += buf[i][j].real ** 2 + buf[i][j].imag ** 2
        if sqrt(off) <= tol:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                r = sqrt(buf[p][q].real ** 2 + buf[p][q].imag ** 2)
                if r == 0.0:
                    continue
                phase = buf[p][q] / r
                app = buf[p][p].real
                aqq = buf[q][q].real
                tau = (aqq - app) / (2.0 * r)
                if tau >= 0.0:
                    t = 1.0 / (tau + sqrt(1.0 + tau * tau))
                else:
                    t = 1.0 / (tau - sqrt(1.0 + tau * tau))
                c = 1.0 / sqrt(1.0 + t * t)
                s = t * c
                # column update: (A J)[i,p], (A J)[i,q]
                for i in range(n):
                    mip = buf[i][p]
                    miq = buf[i][q]
                    buf[i][p] = c * mip - s * phase.conjugate() * miq
                    buf[i][q] = s * phase * mip + c * miq
                # row update: (J^H M)[p,j], (J^H M)[q,j]
                for j in range(n):
                    mpj = buf[p][j]
                    mqj = buf[q][j]
                    buf[p][j] = c * mpj - s * phase * mqj
                    buf[q][j] = s * phase.conjugate() * mpj + c * mqj
                buf[p][q] = 0.0
                buf[q][p] = 0.0
    else:
        raise RuntimeError("Jacobi iteration did not converge")

    out = np.empty(n, dtype=np.float64)
    cdef double[:] ov = out
    for i in range(n):
        ov[i] = buf[i][i].real
    out.sort()
    return out


cdef inline double _omega_coth_half(double beta, double w) nogil:
    # w * coth(beta*w/2), stable for beta*w/2 -> 0 and -> inf
    cdef double x = 0.5 * beta * w
    if x < 1e-4:
        return 2.0 / beta + beta * w * w / 6.0 - beta * beta * beta * w * w * w * w / 360.0
    if x > 19.0:
        return w
    return w * (1.0 + 2.0 / expm1(2.0 * x))


cdef inline double _one_plus_sinc(double x) nogil:
    if fabs(x) < 1e-4:
        return 2.0 - x * x / 6.0 + x * x * x * x / 120.0
    return 1.0 + sin(x) / x


def integrand_sum(int kind, double[:] nodes, double[:] weights, double beta, double s, double t):
    """Weighted sum of one decoherence integrand over quadrature nodes.

    Kinds as in the fallback module: 0 pair/thermal, 1 pair/phase,
    2 single/phase, 3 single/thermal.  Prefactors applied by the caller.
    """
    cdef Py_ssize_t i, n = nodes.shape[0]
    cdef double acc = 0.0, w, g, sn
    if kind == 0:
        for i in range(n):
            w = nodes[i]
            sn = sin(0.5 * w * t)
            acc += weights[i] * exp(-w * w) * _one_plus_sinc(w * s) * sn * sn * _omega_coth_half(beta, w)
    elif kind == 1:
        for i in range(n):
            w = nodes[i]
            acc += weights[i] * w * exp(-w * w) * _one_plus_sinc(w * s) * sin(w * t)
    elif kind == 2:
        for i in range(n):
            w = nodes[i]
            acc += weights[i] * w * exp(-w * w) * sin(w * t)
    elif kind == 3:
        for i in range(n):
            w = nodes[i]
            sn = sin(0.5 * w * t)
            acc += weights[i] * exp(-w * w) * sn * sn * _omega_coth_half(beta, w)
    else:
        raise ValueError(f"unknown integrand kind {kind}")
    return acc


cdef inline double _xlog2x(double x) nogil:
    if x > 0.0:
        return x * log(x) / _LN2
    return 0.0


def conditional_entropy_grid(rho, thetas, phis):
    """Post-measurement conditional entropy sum_k p_k S(rho_k) in bits.

    Same contract as the fallback: projective measurements on subsystem B
    parametrised by the (theta_m, phi_m) grid; outcomes with p_k < 1e-14
    contribute zero.  Returns shape (len(thetas), len(phis)).
    """
    cdef double complex[:, :] r = np.array(rho, dtype=np.complex128, order="C")
    cdef double[:] th = np.array(thetas, dtype=np.float64)
    cdef double[:] ph = np.array(phis, dtype=np.float64)
    cdef Py_ssize_t np_t = th.shape[0], np_p = ph.shape[0]
    out = np.empty((np_t, np_p), dtype=np.float64)
    cdef double[:, :] ov = out

    cdef Py_ssize_t i, j, a, b, c, d, k
    cdef double ct, st, pr, det, disc, mu1, mu2, total
    cdef double complex v[2]
    cdef double complex vp[2]
    cdef double complex vk[2]
    cdef double complex eip, m00, m01, m10, m11

    for i in range(np_t):
        ct = cos(th[i] / 2.0)
        st = sin(th[i] / 2.0)
        for j in range(np_p):
            eip = cos(ph[j]) + 1j * sin(ph[j])
            v[0] = ct
            v[1] = st * eip
            vp[0] = st
            vp[1] = -ct * eip
            total = 0.0
            for k in range(2):
                if k == 0:
                    vk[0] = v[0]
                    vk[1] = v[1]
                else:
                    vk[0] = vp[0]
                    vk[1] = vp[1]
                # M[a,c] = sum_{b,d} conj(vk[b]) rho[(a b),(c d)] vk[d]
                m00 = 0.0
                m01 = 0.0
                m10 = 0.0
                m11 = 0.0
                for b in range(2):
                    for d in range(2):
                        m00 += vk[b].conjugate() * r[0 * 2 + b, 0 * 2 + d] * vk[d]
                        m01 += vk[b].conjugate() * r[0 * 2 + b, 1 * 2 + d] * vk[d]
                        m10 += vk[b].conjugate() * r[1 * 2 + b, 0 * 2 + d] * vk[d]
                        m11 += vk[b].conjugate() * r[1 * 2 + b, 1 * 2 + d] * vk[d]
                pr = m00.real + m11.real
                if pr < 1e-14:
                    continue
                det = (m00 * m11 - m01 * m10).real
                disc = pr * pr - 4.0 * det
                disc = sqrt(disc) if disc > 0.0 else 0.0
                mu1 = (pr + disc) / 2.0
                mu2 = (pr - disc) / 2.0
                if mu1 < 0.0:
                    mu1 = 0.0
                if mu2 < 0.0:
                    mu2 = 0.0
                total += -_xlog2x(mu1) - _xlog2x(mu2) + _xlog2x(pr)
            ov[i, j] = total
    return out
