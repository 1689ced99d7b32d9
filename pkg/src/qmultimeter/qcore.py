"""
Dense complex linear algebra for small tensor-product Hilbert spaces.

Operators and kets are plain numpy arrays (2-D and 1-D, complex128).
Tensor order is always data ⊗ ancilla ⊗ program with the left factor
most significant in the composite index.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import hypot, prod, sqrt
from typing import Iterable, Sequence

import numpy as np

STRUCT_TOL = 1e-10
NORM_TOL = 1e-12

I2 = np.eye(2, dtype=complex)
SX = np.array([[0, 1], [1, 0]], dtype=complex)
SY = np.array([[0, -1j], [1j, 0]], dtype=complex)
SZ = np.array([[1, 0], [0, -1]], dtype=complex)
HADAMARD = (SX + SZ) / sqrt(2)


class DimensionError(ValueError):
    pass


class NotHermitianError(ValueError):
    pass


@dataclass(frozen=True)
class HilbertLayout:
    """Factor dimensions in tensor order (data, ancilla, program, ...)."""

    dims: tuple[int, ...]

    def __post_init__(self):
        dims = tuple(int(d) for d in self.dims)
        if not dims or any(d < 1 for d in dims):
            raise DimensionError(f"invalid factor dimensions {self.dims}")
        object.__setattr__(self, "dims", dims)

    @property
    def total(self) -> int:
        return prod(self.dims)

    def __len__(self):
        return len(self.dims)


def as_matrix(m) -> np.ndarray:
    a = np.asarray(m, dtype=complex)
    if a.ndim != 2:
        raise DimensionError(f"expected a 2-D operator, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise ValueError("operator has non-finite entries")
    return a


def ket(amplitudes: Iterable[complex], normalize: bool = False) -> np.ndarray:
    v = np.asarray(list(amplitudes) if not isinstance(amplitudes, np.ndarray) else amplitudes,
                   dtype=complex).ravel()
    if not np.all(np.isfinite(v)):
        raise ValueError("ket has non-finite amplitudes")
    return normalized(v) if normalize else v


def normalized(v: np.ndarray) -> np.ndarray:
    n = np.linalg.norm(v)
    if n == 0:
        raise ValueError("cannot normalize the zero vector")
    return np.asarray(v, dtype=complex) / n


def basis_ket(dim: int, index: int) -> np.ndarray:
    v = np.zeros(dim, dtype=complex)
    v[index] = 1.0
    return v


def computational_basis(dim: int) -> list[np.ndarray]:
    return [basis_ket(dim, i) for i in range(dim)]


def projector(v: np.ndarray) -> np.ndarray:
    v = np.asarray(v, dtype=complex)
    return np.outer(v, v.conj())


def dagger(m: np.ndarray) -> np.ndarray:
    return np.conj(np.asarray(m)).T


def tensor(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Kronecker product of two kets or two operators (a is most significant)."""
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    if a.ndim != b.ndim:
        raise DimensionError("tensor operands must be the same kind (ket or operator)")
    return np.kron(a, b)


def tensor_all(factors: Sequence[np.ndarray]) -> np.ndarray:
    out = np.asarray(factors[0], dtype=complex)
    for f in factors[1:]:
        out = tensor(out, f)
    return out


def partial_trace(op: np.ndarray, layout: HilbertLayout, keep: Sequence[int] | int) -> np.ndarray:
    """Trace out every factor of ``layout`` not listed in ``keep``."""
    op = as_matrix(op)
    n = layout.total
    if op.shape != (n, n):
        raise DimensionError(f"operator shape {op.shape} does not match layout {layout.dims}")
    keep = sorted({keep} if isinstance(keep, int) else set(keep))
    if any(k < 0 or k >= len(layout) for k in keep):
        raise DimensionError(f"keep={keep} out of range for {len(layout)} factors")
    nf = len(layout)
    t = op.reshape(layout.dims + layout.dims)
    # trace highest axes first so lower axis numbers stay valid
    for f in sorted(set(range(nf)) - set(keep), reverse=True):
        cur = t.ndim // 2
        t = np.trace(t, axis1=f, axis2=f + cur)
    d = prod(layout.dims[k] for k in keep)
    return t.reshape(d, d)


def is_hermitian(op: np.ndarray, tol: float = STRUCT_TOL) -> bool:
    op = np.asarray(op)
    return op.shape[0] == op.shape[1] and float(np.max(np.abs(op - dagger(op)), initial=0.0)) <= tol


def hermitian_eigenvalues(op: np.ndarray, tol: float = STRUCT_TOL, max_sweeps: int = 100) -> np.ndarray:
    """
    Ascending eigenvalues of a Hermitian matrix by cyclic complex Jacobi rotations.

    Sweeps run until the Frobenius norm of the off-diagonal part drops
    below ``tol``.
    """
    a = as_matrix(op).copy()
    n = a.shape[0]
    if a.shape != (n, n):
        raise DimensionError("eigenvalues need a square operator")
    if not is_hermitian(a, tol):
        raise NotHermitianError("operator is not Hermitian within tolerance")
    a = (a + dagger(a)) / 2

    offdiag = ~np.eye(n, dtype=bool)

    def off(m):
        return float(np.linalg.norm(m[offdiag]))

    for _ in range(max_sweeps):
        if off(a) < tol:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                r = abs(apq)
                if r == 0.0:
                    continue
                phase = apq / r
                theta = (a[q, q].real - a[p, p].real) / (2 * r)
                t = (1.0 if theta >= 0 else -1.0) / (abs(theta) + hypot(theta, 1.0))
                c = 1 / sqrt(t * t + 1)
                s = t * c
                # g = diag(1, conj(phase)) @ [[c, s], [-s, c]]
                g = np.array([[c, s], [-s * np.conj(phase), c * np.conj(phase)]])
                idx = [p, q]
                a[:, idx] = a[:, idx] @ g
                a[idx, :] = dagger(g) @ a[idx, :]
                a[p, q] = a[q, p] = 0.0
    else:
        raise RuntimeError("Jacobi sweeps did not converge")
    return np.sort(np.diag(a).real)


def check_unitary(op: np.ndarray, tol: float = STRUCT_TOL) -> tuple[bool, float]:
    op = as_matrix(op)
    if op.shape[0] != op.shape[1]:
        raise DimensionError("unitarity needs a square operator")
    dev = float(np.max(np.abs(dagger(op) @ op - np.eye(op.shape[0]))))
    return dev <= tol, dev


def check_orthonormal(basis: Sequence[np.ndarray], tol: float = STRUCT_TOL) -> bool:
    m = np.array([np.asarray(b, dtype=complex) for b in basis])
    return bool(np.max(np.abs(m.conj() @ m.T - np.eye(len(basis)))) <= tol)


def check_density(rho: np.ndarray, tol: float = STRUCT_TOL) -> bool:
    rho = as_matrix(rho)
    if rho.shape[0] != rho.shape[1] or abs(np.trace(rho) - 1) > tol or not is_hermitian(rho, tol):
        return False
    return hermitian_eigenvalues(rho, tol)[0] >= -tol


def random_unitary(dim: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-distributed unitary from QR of a complex Gaussian matrix."""
    z = (rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))) / sqrt(2)
    q, r = np.linalg.qr(z)
    d = np.diag(r)
    return q * (d / np.abs(d))


def random_density(dim: int, rng: np.random.Generator, rank: int | None = None) -> np.ndarray:
    k = rank or dim
    g = rng.standard_normal((dim, k)) + 1j * rng.standard_normal((dim, k))
    rho = g @ dagger(g)
    return rho / np.trace(rho).real


def random_ket(dim: int, rng: np.random.Generator) -> np.ndarray:
    return normalized(rng.standard_normal(dim) + 1j * rng.standard_normal(dim))


def random_basis(dim: int, rng: np.random.Generator) -> list[np.ndarray]:
    u = random_unitary(dim, rng)
    return [u[:, i] for i in range(dim)]
