"""Dense complex linear algebra kernels.

Hermitian eigenproblems, eigenphases of unitary matrices, spectral
projections, scalar functional calculus, determinants, Hermitian pencil
zeros and the index of a Fredholm pair of orthogonal projections.

All matrices are small and dense; every routine is pure and reentrant.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    DomainViolation,
    IndexMismatch,
    KernelAtZero,
    NotHermitian,
    NotProjection,
    NotUnitary,
    SingularM,
)

HERM_TOL = 1e-10
UNIT_TOL = 1e-8
PROJ_TOL = 1e-9
ONE_TOL = 1e-7
ZERO_TOL = 1e-9
CLUSTER_TOL = 1e-8


def _as_complex_matrix(entries) -> np.ndarray:
    a = np.array(entries, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] < 1:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    return a


class HermitianMatrix:
    """Dense complex self-adjoint matrix, validated on construction."""

    def __init__(self, entries, herm_tol: float = HERM_TOL):
        a = _as_complex_matrix(entries)
        defect = np.max(np.abs(a - a.conj().T))
        if defect > herm_tol:
            raise NotHermitian(f"hermiticity defect {defect:.3e} > {herm_tol:.3e}")
        self.entries = (a + a.conj().T) / 2
        self.entries.setflags(write=False)
        self.dim = a.shape[0]
        self.herm_tol = herm_tol

    def __repr__(self):
        return f"HermitianMatrix(dim={self.dim})"


class UnitaryMatrix:
    """Dense complex unitary matrix, validated on construction."""

    def __init__(self, entries, unit_tol: float = UNIT_TOL):
        a = _as_complex_matrix(entries)
        defect = np.max(np.abs(a @ a.conj().T - np.eye(a.shape[0])))
        if defect > unit_tol:
            raise NotUnitary(f"unitarity defect {defect:.3e} > {unit_tol:.3e}")
        self.entries = a.copy()
        self.entries.setflags(write=False)
        self.dim = a.shape[0]
        self.unit_tol = unit_tol

    def __repr__(self):
        return f"UnitaryMatrix(dim={self.dim})"


class ProjectionMatrix:
    """Orthogonal projection, validated on construction."""

    def __init__(self, entries, proj_tol: float = PROJ_TOL):
        a = _as_complex_matrix(entries)
        idem = np.max(np.abs(a @ a - a))
        herm = np.max(np.abs(a - a.conj().T))
        if idem > proj_tol or herm > proj_tol:
            raise NotProjection(
                f"projection defects: idempotency {idem:.3e}, hermiticity {herm:.3e}"
            )
        self.entries = a.copy()
        self.entries.setflags(write=False)
        self.dim = a.shape[0]
        self.proj_tol = proj_tol

    @property
    def rank(self) -> int:
        return int(round(float(np.trace(self.entries).real)))

    def __repr__(self):
        return f"ProjectionMatrix(dim={self.dim}, rank={self.rank})"


@dataclass(frozen=True)
class EigenSequencePair:
    """Non-negative eigenvalues of A and of -A, each sorted descending."""

    pos: tuple
    neg: tuple


def _herm_entries(m, herm_tol: float = HERM_TOL) -> np.ndarray:
    if isinstance(m, HermitianMatrix):
        return m.entries
    return HermitianMatrix(m, herm_tol=herm_tol).entries


def _unit_entries(m, unit_tol: float = UNIT_TOL) -> np.ndarray:
    if isinstance(m, UnitaryMatrix):
        return m.entries
    return UnitaryMatrix(m, unit_tol=unit_tol).entries


def _proj_entries(m, proj_tol: float = PROJ_TOL) -> np.ndarray:
    if isinstance(m, ProjectionMatrix):
        return m.entries
    return ProjectionMatrix(m, proj_tol=proj_tol).entries


def eig_hermitian(m):
    """Eigenvalues (ascending) and orthonormal eigenvectors of a Hermitian matrix."""
    a = _herm_entries(m)
    values, vectors = np.linalg.eigh(a)
    return values, vectors


def eigenphases(w, id_tol: float = 1e-8, cluster_tol: float = CLUSTER_TOL):
    """Arguments in (0, 2*pi) of the eigenvalues of a unitary matrix.

    Eigenvalues within ``id_tol`` (chordal distance) of 1 are suppressed:
    the point 1 plays the role of the essential point of the circle and
    carries no spectral data here.  Multiplicities are preserved.

    A unitary matrix is normal, so its real and imaginary Hermitian parts
    commute; we diagonalise the real part and split each eigenspace by the
    imaginary part, which avoids a general non-Hermitian eigensolver.
    """
    u = _unit_entries(w)
    re = (u + u.conj().T) / 2
    im = (u - u.conj().T) / 2j
    c, v = np.linalg.eigh(re)
    n = u.shape[0]
    phases = []
    start = 0
    while start < n:
        stop = start + 1
        while stop < n and c[stop] - c[stop - 1] <= cluster_tol:
            stop += 1
        block = v[:, start:stop]
        s_block = block.conj().T @ im @ block
        s_block = (s_block + s_block.conj().T) / 2
        s_vals, s_vecs = np.linalg.eigh(s_block)
        vecs = block @ s_vecs
        # per-vector Rayleigh quotient refines the clustered cosine
        c_vals = np.real(np.einsum("ij,ik,kj->j", vecs.conj(), re, vecs))
        for ck, sk in zip(c_vals, s_vals):
            z = complex(ck, sk)
            if abs(z - 1.0) <= id_tol:
                continue
            theta = float(np.arctan2(sk, ck))
            if theta <= 0.0:
                theta += 2 * np.pi
            phases.append(theta)
        start = stop
    phases.sort()
    return phases


def negative_projection(m, zero_tol: float = ZERO_TOL) -> ProjectionMatrix:
    """Orthogonal projection onto the strictly negative spectral subspace.

    The spectral interval is the open half-line (-inf, 0); an eigenvalue
    inside (-zero_tol, zero_tol) raises :class:`KernelAtZero` instead of
    silently choosing a side, because such hits mark jump points of the
    flow function and must be re-sampled by the caller.
    """
    a = _herm_entries(m)
    values, vectors = np.linalg.eigh(a)
    hits = [float(x) for x in values if abs(x) < zero_tol]
    if hits:
        raise KernelAtZero(hits)
    neg = vectors[:, values < 0.0]
    p = neg @ neg.conj().T
    p = (p + p.conj().T) / 2
    return ProjectionMatrix(p)


def fredholm_index(p, q, one_tol: float = ONE_TOL) -> int:
    """Index of the Fredholm pair (p, q) of orthogonal projections.

    Counts dim Ker(p - q - 1) - dim Ker(p - q + 1) through the spectrum of
    p - q, and independently as the rounded trace of p - q (the two agree
    in finite dimensions); disagreement means numerical breakdown.
    """
    a = _proj_entries(p)
    b = _proj_entries(q)
    if a.shape != b.shape:
        raise ValueError("projections must act on the same space")
    d = a - b
    values = np.linalg.eigvalsh(d)
    plus = int(np.sum(np.abs(values - 1.0) <= one_tol))
    minus = int(np.sum(np.abs(values + 1.0) <= one_tol))
    by_kernels = plus - minus
    tr = float(np.trace(d).real)
    by_trace = int(round(tr))
    if abs(tr - by_trace) > 1e-6 or by_trace != by_kernels:
        raise IndexMismatch(
            f"kernel count {by_kernels} vs trace {tr!r} (rounds to {by_trace})"
        )
    return by_kernels


def apply_scalar_function(m, f) -> HermitianMatrix:
    """Apply a real scalar function to a Hermitian matrix spectrally."""
    a = _herm_entries(m)
    values, vectors = np.linalg.eigh(a)
    mapped = []
    for x in values:
        try:
            y = float(f(float(x)))
        except (ArithmeticError, ValueError) as exc:
            raise DomainViolation(f"f undefined at eigenvalue {x}: {exc}") from exc
        if not np.isfinite(y):
            raise DomainViolation(f"f({x}) is not finite")
        mapped.append(y)
    out = (vectors * np.asarray(mapped)) @ vectors.conj().T
    return HermitianMatrix((out + out.conj().T) / 2)


def apply_complex_function(m, f) -> np.ndarray:
    """Spectral calculus with a complex-valued function; returns a bare array."""
    a = _herm_entries(m)
    values, vectors = np.linalg.eigh(a)
    mapped = np.array([complex(f(float(x))) for x in values])
    return (vectors * mapped) @ vectors.conj().T


def det_complex(m) -> complex:
    """Determinant of a complex square matrix via pivoted elimination.

    Kept independent of the eigensolvers on purpose: eigenvalue products
    serve as the test oracle for this routine, never the other way round.
    """
    a = _as_complex_matrix(m)
    if not np.all(np.isfinite(a)):
        raise ValueError("determinant of a matrix with non-finite entries")
    return complex(np.linalg.det(a))


def pencil_real_zeros(m, b, interval, *, sing_tol: float = 1e-10,
                      psd_tol: float = 1e-10, cluster_tol: float = 1e-8):
    """Real couplings s in (lo, hi] at which m + s*b becomes singular.

    ``m`` must be Hermitian and invertible, ``b`` Hermitian positive
    semidefinite.  Couplings are recovered from the reduced Hermitian
    pencil on range(b): with b = c* c one has dim Ker(m + s b) equal to
    the multiplicity of -1/s as an eigenvalue of c m^{-1} c*.

    Returns a list of (s, multiplicity) sorted by s.
    """
    a = _herm_entries(m)
    bb = _herm_entries(b)
    lo, hi = float(interval[0]), float(interval[1])
    m_eigs = np.linalg.eigvalsh(a)
    scale = max(1.0, float(np.max(np.abs(m_eigs))))
    if np.min(np.abs(m_eigs)) <= sing_tol * scale:
        raise SingularM(f"matrix has an eigenvalue within {sing_tol:.1e} of 0")
    b_vals, b_vecs = np.linalg.eigh(bb)
    if b_vals.size and b_vals[0] < -psd_tol * max(1.0, float(b_vals[-1])):
        raise ValueError(f"b is not positive semidefinite: min eig {b_vals[0]:.3e}")
    keep = b_vals > psd_tol * max(1.0, float(b_vals[-1]) if b_vals.size else 1.0)
    if not np.any(keep):
        return []
    c = (np.sqrt(b_vals[keep])[:, None]) * b_vecs[:, keep].conj().T
    core = c @ np.linalg.solve(a, c.conj().T)
    core = (core + core.conj().T) / 2
    kappas = np.linalg.eigvalsh(core)
    roots = []
    for k in kappas:
        if abs(k) < 1e-14:
            continue
        s = -1.0 / float(k)
        if lo < s <= hi:
            roots.append(s)
    roots.sort()
    out = []
    for s in roots:
        if out and abs(s - out[-1][0]) <= cluster_tol * max(1.0, abs(s)):
            out[-1] = (out[-1][0], out[-1][1] + 1)
        else:
            out.append((s, 1))
    return out


def eigenvalue_sequences(a) -> EigenSequencePair:
    """Split the spectrum into the two signed decreasing sequences.

    ``pos`` lists the non-negative eigenvalues of a in decreasing order,
    ``neg`` those of -a; zero eigenvalues appear in both, matching the
    convention used for the eigenvalue-sequence stability inequality.
    """
    values = np.linalg.eigvalsh(_herm_entries(a))
    pos = tuple(sorted((float(x) for x in values if x >= 0.0), reverse=True))
    neg = tuple(sorted((float(-x) for x in values if -x >= 0.0), reverse=True))
    return EigenSequencePair(pos=pos, neg=neg)


def sequence_lp_distance(first: EigenSequencePair, second: EigenSequencePair, p) -> float:
    """l_p distance of the signed eigenvalue sequences, zero-padded per side."""

    def padded(xs, ys):
        n = max(len(xs), len(ys))
        ax = np.zeros(n)
        ay = np.zeros(n)
        ax[: len(xs)] = xs
        ay[: len(ys)] = ys
        return ax - ay

    diffs = np.concatenate([padded(first.pos, second.pos), padded(first.neg, second.neg)])
    if p == np.inf or p == "inf":
        return float(np.max(np.abs(diffs))) if diffs.size else 0.0
    return float(np.sum(np.abs(diffs) ** p) ** (1.0 / p))


def schatten_norm(a, p) -> float:
    """Schatten p-norm of a Hermitian matrix (p in {1, 2, inf})."""
    values = np.abs(np.linalg.eigvalsh(_herm_entries(a)))
    if p == np.inf or p == "inf":
        return float(np.max(values)) if values.size else 0.0
    return float(np.sum(values ** p) ** (1.0 / p))
