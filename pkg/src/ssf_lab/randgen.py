"""Seeded generators for random test instances.

Shared between the pytest suite and the built-in check runner so that a
single seed pins every randomized case.
"""

from __future__ import annotations

import numpy as np

from .linalg import HermitianMatrix
from .models import DenseModel, FactoredPerturbation


def random_hermitian(rng: np.random.Generator, n: int, scale: float = 1.0) -> HermitianMatrix:
    a = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    return HermitianMatrix(scale * (a + a.conj().T) / 2)


def random_unitary(rng: np.random.Generator, n: int) -> np.ndarray:
    a = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    q, r = np.linalg.qr(a)
    return q * (np.diag(r) / np.abs(np.diag(r)))


def random_projection(rng: np.random.Generator, n: int, k: int) -> np.ndarray:
    q = random_unitary(rng, n)[:, :k]
    return q @ q.conj().T


def random_psd(rng: np.random.Generator, n: int, rank: int | None = None,
               scale: float = 1.0) -> np.ndarray:
    k = n if rank is None else rank
    a = rng.standard_normal((n, k)) + 1j * rng.standard_normal((n, k))
    return scale * (a @ a.conj().T) / max(k, 1)


def random_signature_coupling(rng: np.random.Generator, r: int,
                              mixed: bool = True) -> np.ndarray:
    """Hermitian invertible coupling with prescribed sign mixture."""
    signs = rng.choice([-1.0, 1.0], size=r)
    if mixed and r >= 2:
        signs[0], signs[1] = 1.0, -1.0
    scales = 0.5 + rng.random(r)
    u = random_unitary(rng, r)
    return u @ np.diag(signs * scales) @ u.conj().T


def random_dense_model(rng: np.random.Generator, n_max: int = 10, r_max: int = 4,
                       mixed: bool = True, g_scale: float = 0.7) -> DenseModel:
    n = int(rng.integers(3, n_max + 1))
    r = int(rng.integers(1, min(r_max, n) + 1))
    h0 = random_hermitian(rng, n, scale=1.2)
    g = g_scale * (rng.standard_normal((r, n)) + 1j * rng.standard_normal((r, n)))
    j = random_signature_coupling(rng, r, mixed=mixed)
    return DenseModel(h0, FactoredPerturbation(j=j, g=g))


def gap_energies(model: DenseModel, min_width: float = 0.08, pad: float = 1.0):
    """Energies strictly inside gaps of both spectra, plus one on each flank."""
    eigs = np.sort(np.concatenate([model.h0_eigenvalues(), model.h_eigenvalues()]))
    out = [float(eigs[0] - pad)]
    for lo, hi in zip(eigs[:-1], eigs[1:]):
        if hi - lo >= min_width:
            out.append(float((lo + hi) / 2))
    out.append(float(eigs[-1] + pad))
    return out


def random_boundary_data(rng: np.random.Generator, r: int, b_rank: int | None = None):
    """Random (a, b, j) boundary triple with b PSD and invertible symbol."""
    a = random_hermitian(rng, r).entries
    b = random_psd(rng, r, rank=b_rank)
    j = random_signature_coupling(rng, r)
    return a, b, j
