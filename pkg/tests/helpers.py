"""Independent numerical oracles used across the test suite.

Everything here deliberately avoids the package's own computation paths:
numpy's eigensolvers, explicit entrywise loops, and characteristic
polynomial root-finding serve as the second route for cross-checks.
"""

from __future__ import annotations

import numpy as np

I2 = np.eye(2, dtype=complex)
SX = np.array([[0, 1], [1, 0]], dtype=complex)
SY = np.array([[0, -1j], [1j, 0]], dtype=complex)
SZ = np.array([[1, 0], [0, -1]], dtype=complex)
YY = np.kron(SY, SY)


def kron_oracle(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Brute-force entrywise Kronecker product, A-index major."""
    ar, ac = a.shape
    br, bc = b.shape
    out = np.zeros((ar * br, ac * bc), dtype=complex)
    for i in range(ar):
        for j in range(ac):
            for k in range(br):
                for l in range(bc):
                    out[i * br + k, j * bc + l] = a[i, j] * b[k, l]
    return out


def numpy_spectrum(m: np.ndarray) -> np.ndarray:
    """Reference eigenvalues (descending) via numpy's Hermitian solver."""
    return np.sort(np.linalg.eigvalsh(m))[::-1]


def random_hermitian(rng: np.random.Generator, n: int = 4) -> np.ndarray:
    x = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    return (x + x.conj().T) / 2.0


def haar_unitary(rng: np.random.Generator, n: int = 2) -> np.ndarray:
    z = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    q, r = np.linalg.qr(z)
    return q * (np.diag(r) / np.abs(np.diag(r)))


def charpoly_lambdas(rho_matrix: np.ndarray) -> np.ndarray:
    """Spin-flip spectrum by brute force: roots of the characteristic
    polynomial of rho * rho_tilde, square-rooted and sorted descending."""
    product = rho_matrix @ (YY @ rho_matrix.conj() @ YY)
    roots = np.roots(np.poly(product))
    vals = np.clip(np.real(roots), 0.0, None)
    return np.sort(np.sqrt(vals))[::-1]


def gamma_route_matrix(values: np.ndarray, vectors: np.ndarray) -> np.ndarray:
    """The spin-flip product expressed through composite eigenvectors.

    Entry (g, g') is P(g) sum_g1 <g|YY|g1*> P(g1) <g1*|YY|g'>; its
    spectrum must match the squared spin-flip singular values.
    """
    n = len(values)
    m = np.zeros((n, n), dtype=complex)
    for g in range(n):
        for gp in range(n):
            total = 0.0 + 0.0j
            for g1 in range(n):
                bra_g = vectors[:, g].conj() @ YY @ vectors[:, g1].conj()
                ket_gp = vectors[:, g1].T @ YY @ vectors[:, gp]
                total += values[g] * bra_g * values[g1] * ket_gp
            m[g, gp] = total
    return m


def expm_oracle(h: np.ndarray) -> np.ndarray:
    """Matrix exponential of a Hermitian matrix via numpy's solver."""
    vals, vecs = np.linalg.eigh(h)
    return (vecs * np.exp(vals)) @ vecs.conj().T
