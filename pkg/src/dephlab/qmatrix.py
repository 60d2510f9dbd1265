"""Minimal dense complex linear algebra for density matrices of dimension <= 8.

Composition (tensor products), reduction (partial trace), transformation
(partial transpose) and spectral analysis (Jacobi eigenvalues, trace norm,
von Neumann entropy).  All functions are pure; matrices are plain complex
ndarrays, with :class:`DensityMatrix` as the validated quantum-state wrapper.
"""

from dataclasses import dataclass, field

import numpy as np

from ._core import kernels

HERMITICITY_TOL = 1e-12
TRACE_TOL = 1e-12
POSITIVITY_TOL = -1e-10

MAX_DIM = 8

I2 = np.eye(2, dtype=complex)
SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)


def _as_square(m) -> np.ndarray:
    a = np.asarray(m, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    return a


@dataclass(frozen=True)
class DensityMatrix:
    """A valid quantum state: Hermitian, unit trace, positive semidefinite.

    Raises ValueError on construction if any invariant is violated
    (hermiticity and trace to 1e-12, eigenvalues >= -1e-10; the slack
    accommodates quadrature noise entering through the coherence factor).
    """

    matrix: np.ndarray = field(repr=False)

    def __post_init__(self):
        m = _as_square(self.matrix)
        if m.shape[0] > MAX_DIM:
            raise ValueError(f"dimension {m.shape[0]} exceeds {MAX_DIM}")
        herm = np.max(np.abs(m - m.conj().T))
        if herm > HERMITICITY_TOL:
            raise ValueError(f"not Hermitian: max |M - M^dag| = {herm:.3e}")
        tr = np.trace(m)
        if abs(tr - 1.0) > TRACE_TOL:
            raise ValueError(f"trace {tr} differs from 1")
        if np.min(kernels.jacobi_eigvalsh(m)) < POSITIVITY_TOL:
            raise ValueError("not positive semidefinite")
        m = m.copy()
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]


def kron(a, b) -> np.ndarray:
    """Tensor (Kronecker) product of two square matrices.

    Dimensions must be powers of two with product at most 8.
    """
    a, b = _as_square(a), _as_square(b)
    da, db = a.shape[0], b.shape[0]
    for d in (da, db):
        if d & (d - 1) or d == 0:
            raise ValueError(f"dimension {d} is not a power of two")
    if da * db > MAX_DIM:
        raise ValueError(f"product dimension {da * db} exceeds {MAX_DIM}")
    return np.kron(a, b)


def partial_trace(m, subsystem_dims, traced_indices) -> np.ndarray:
    """Trace out the given subsystems of a composite-system matrix.

    Parameters
    ----------
    m : square matrix over the tensor product of ``subsystem_dims``
    subsystem_dims : list of positive ints whose product is dim(m)
    traced_indices : nonempty set of subsystem indices to trace over
    """
    a = _as_square(m)
    dims = list(subsystem_dims)
    n = len(dims)
    if int(np.prod(dims)) != a.shape[0]:
        raise ValueError(f"subsystem dims {dims} inconsistent with dim {a.shape[0]}")
    traced = sorted(set(traced_indices))
    if not traced:
        raise ValueError("traced_indices must be nonempty")
    if traced[0] < 0 or traced[-1] >= n:
        raise ValueError(f"traced indices {traced} out of range for {n} subsystems")
    if len(traced) == n:
        raise ValueError("cannot trace out every subsystem")

    t = a.reshape(dims + dims)
    # contract each traced row index with its column partner, highest first
    offset = n
    for idx in reversed(traced):
        t = np.trace(t, axis1=idx, axis2=idx + offset)
        offset -= 1
    kept = int(np.prod([dims[i] for i in range(n) if i not in traced]))
    return t.reshape(kept, kept)


def partial_transpose(m, subsystem: int) -> np.ndarray:
    """Transpose one qubit of a two-qubit matrix (dim 4 only)."""
    a = _as_square(m)
    if a.shape[0] != 4:
        raise ValueError(f"partial transpose supports dim 4, got {a.shape[0]}")
    if subsystem not in (0, 1):
        raise ValueError(f"subsystem must be 0 or 1, got {subsystem}")
    t = a.reshape(2, 2, 2, 2)
    if subsystem == 0:
        t = t.transpose(2, 1, 0, 3)
    else:
        t = t.transpose(0, 3, 2, 1)
    return t.reshape(4, 4)


def hermitian_eigenvalues(m) -> np.ndarray:
    """All eigenvalues of a Hermitian matrix, ascending, by cyclic Jacobi."""
    a = _as_square(m)
    herm = np.max(np.abs(a - a.conj().T)) if a.size else 0.0
    if herm > 1e-10:
        raise ValueError(f"not Hermitian: max |M - M^dag| = {herm:.3e}")
    return kernels.jacobi_eigvalsh(a)


def trace_norm(m) -> float:
    """Sum of absolute eigenvalues of a Hermitian matrix."""
    return float(np.sum(np.abs(hermitian_eigenvalues(m))))


def von_neumann_entropy(rho) -> float:
    """Entropy -sum(lam * log2(lam)) in bits, with 0 log 0 = 0."""
    mat = rho.matrix if isinstance(rho, DensityMatrix) else DensityMatrix(np.asarray(rho)).matrix
    lam = kernels.jacobi_eigvalsh(mat)
    lam = lam[lam > 0.0]
    return float(-np.sum(lam * np.log2(lam)))
