"""Operator models supplying resolvents and their boundary values.

Two concrete models are shipped: dense Hermitian pairs and the Dirichlet
half-line discrete Laplacian (hopping kernel u(n+1) + u(n-1), sites n >= 1)
with a finitely supported factored perturbation.  Both expose the sandwiched
resolvent t(z) = g (h0 - z)^{-1} g* of the perturbation frame (g, j) and its
boundary values from the upper half-plane, which is all the flow and
shift-function machinery consumes.

For bounded h0 with bounded g the weighted sandwich used in the abstract
setting composes exactly to g (h0 - z)^{-1} g*, which is the form computed
here; all shipped models are bounded.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .errors import (
    AdmissibilityViolation,
    BoundaryUndefined,
    BranchAtThreshold,
    NonInvertibleSymbol,
    PoleHit,
    ResolventIdentityViolation,
)
from .linalg import HermitianMatrix, UnitaryMatrix

J_INV_TOL = 1e-12
BOUNDARY_GAP_TOL = 1e-9
THRESHOLD_TOL = 1e-9
HERGLOTZ_TOL = 1e-10


def _hermitize(a: np.ndarray) -> np.ndarray:
    return (a + a.conj().T) / 2


class FactoredPerturbation:
    """Factored perturbation v = g* j g with j Hermitian and invertible.

    ``g`` is either a dense r x n array (dense models) or a finite-support
    descriptor (sites, weights) with distinct positive integer sites and an
    r x len(sites) weight array (lattice models).  ``g = None`` marks an
    implicit frame produced by a pushforward, where only ``j`` is needed.
    """

    def __init__(self, j, g=None, sites=None, weights=None, j_inv_tol: float = J_INV_TOL):
        jm = j.entries if isinstance(j, HermitianMatrix) else np.array(j, dtype=complex)
        jm = _hermitize(jm)
        if jm.ndim != 2 or jm.shape[0] != jm.shape[1] or jm.shape[0] < 1:
            raise ValueError("j must be a square matrix of rank >= 1")
        j_eigs = np.linalg.eigvalsh(jm)
        if np.min(np.abs(j_eigs)) <= j_inv_tol:
            raise ValueError(f"j is not invertible within tolerance {j_inv_tol:.1e}")
        self.j = jm
        self.j_inv = _hermitize(np.linalg.inv(jm))
        self.rank = jm.shape[0]
        self.j_inv_tol = j_inv_tol
        self.g = None
        self.sites = None
        self.weights = None
        if g is not None:
            gm = np.array(g, dtype=complex)
            if gm.ndim != 2 or gm.shape[0] != self.rank:
                raise ValueError("g must be an r x n array matching rank(j)")
            self.g = gm
        elif sites is not None:
            ss = [int(s) for s in sites]
            if len(set(ss)) != len(ss) or any(s < 1 for s in ss):
                raise ValueError("lattice support sites must be distinct integers >= 1")
            wm = np.array(weights, dtype=complex)
            if wm.shape != (self.rank, len(ss)):
                raise ValueError("weights must be an r x len(sites) array")
            self.sites = tuple(ss)
            self.weights = wm

    @property
    def kind(self) -> str:
        if self.g is not None:
            return "dense"
        if self.sites is not None:
            return "lattice"
        return "implicit"

    def signature(self):
        """(number of negative, number of positive) eigenvalues of j."""
        j_eigs = np.linalg.eigvalsh(self.j)
        return int(np.sum(j_eigs < 0)), int(np.sum(j_eigs > 0))


# -- half-line lattice Green's function --------------------------------


def unit_disk_root(z: complex) -> complex:
    """The root of r + 1/r = z with |r| < 1.

    Defined off the band [-2, 2]; for real energies inside the band use
    :func:`band_root`, which carries the limit from the upper half-plane.
    The two roots multiply to 1, so the small one is computed as the
    reciprocal of the numerically stable large one.
    """
    z = complex(z)
    if z.imag == 0.0 and abs(z.real) <= 2.0:
        raise BranchAtThreshold(f"energy {z.real} lies in the band [-2, 2]")
    s = cmath.sqrt(z * z - 4.0)
    big = (z + s) / 2 if abs(z + s) >= abs(z - s) else (z - s) / 2
    return 1.0 / big


def band_root(lam: float, threshold_tol: float = THRESHOLD_TOL) -> complex:
    """Boundary value of the unit-disk root at lam + i0 inside the band.

    For lam = 2*cos(k), k in (0, pi), the limit from the upper half-plane
    is e^{-ik}; the thresholds +-2 are branch points and are refused.
    """
    lam = float(lam)
    if abs(abs(lam) - 2.0) <= threshold_tol:
        raise BranchAtThreshold(f"energy {lam} at a band threshold")
    if abs(lam) > 2.0:
        return unit_disk_root(lam)
    k = math.acos(lam / 2.0)
    return cmath.exp(-1j * k)


def lattice_green(n: int, m: int, z) -> complex:
    """Green's function of the Dirichlet half-line hopping operator.

    Solves (u(n+1) + u(n-1)) - z u(n) = delta_{nm} with u(0) = 0; the
    closed form involves only non-negative powers of the unit-disk root,
    so it is stable for deep sites.  Real z inside the band is interpreted
    as the boundary value from the upper half-plane.
    """
    n, m = int(n), int(m)
    if n < 1 or m < 1:
        raise ValueError("sites must be >= 1")
    z = complex(z)
    if z.imag == 0.0:
        zeta = band_root(z.real)
    else:
        zeta = unit_disk_root(z)
    a, b = (n, m) if n <= m else (m, n)
    return -(zeta ** (b - a + 1)) * (1.0 - zeta ** (2 * a)) / (1.0 - zeta * zeta)


def _green_recurrence_defect(z, max_site: int = 6) -> float:
    """Residual of the defining relations of the lattice Green's function."""
    worst = 0.0
    for m in range(1, max_site + 1):
        for n in range(1, max_site + 1):
            g_up = lattice_green(n + 1, m, z)
            g_dn = lattice_green(n - 1, m, z) if n >= 2 else 0.0  # Dirichlet wall
            lhs = g_up + g_dn - complex(z) * lattice_green(n, m, z)
            rhs = 1.0 if n == m else 0.0
            worst = max(worst, abs(lhs - rhs))
    return worst


_GREEN_CHECKED = False


def _check_green_formula():
    """The closed form is never trusted from derivation alone."""
    global _GREEN_CHECKED
    if _GREEN_CHECKED:
        return
    for z in (1.7 + 0.3j, -0.4 + 1e-2j, 0.35):
        defect = _green_recurrence_defect(z)
        if defect > 1e-12:
            raise ResolventIdentityViolation(
                f"lattice Green recurrence defect {defect:.3e} at z={z}"
            )
    _GREEN_CHECKED = True


# -- models -------------------------------------------------------------


class DenseModel:
    """Finite Hermitian pair h = h0 + g* j g with explicit matrices."""

    is_dense = True

    def __init__(self, h0, pert: FactoredPerturbation,
                 boundary_gap_tol: float = BOUNDARY_GAP_TOL):
        h0m = h0 if isinstance(h0, HermitianMatrix) else HermitianMatrix(h0)
        if pert.kind != "dense":
            raise ValueError("dense models need an explicit g array")
        if pert.g.shape[1] != h0m.dim:
            raise ValueError("g must map the h0 space to the auxiliary space")
        self.h0 = h0m
        self.pert = pert
        self.boundary_gap_tol = boundary_gap_tol
        self._h0_vals, self._h0_vecs = np.linalg.eigh(h0m.entries)
        self._g_modes = pert.g @ self._h0_vecs  # r x n in the h0 eigenbasis
        self._h_cache = None

    # sandwiched resolvent t(z) = g (h0 - z)^{-1} g*
    def sandwiched_resolvent(self, z) -> np.ndarray:
        z = complex(z)
        if z.imag == 0.0:
            return self.boundary_values(z.real)
        gm = self._g_modes
        return (gm / (self._h0_vals - z)) @ gm.conj().T

    def boundary_values(self, lam: float) -> np.ndarray:
        lam = float(lam)
        scale = max(1.0, float(np.max(np.abs(self._h0_vals))))
        if np.min(np.abs(self._h0_vals - lam)) <= self.boundary_gap_tol * scale:
            raise BoundaryUndefined(f"energy {lam} sits on the spectrum of h0")
        gm = self._g_modes
        t = (gm / (self._h0_vals - lam)) @ gm.conj().T
        return _hermitize(t)  # real boundary values off the spectrum

    def h_matrix(self) -> HermitianMatrix:
        if self._h_cache is None:
            self._h_cache = build_h(self)
        return self._h_cache

    def h_eigenvalues(self) -> np.ndarray:
        return np.linalg.eigvalsh(self.h_matrix().entries)

    def h0_eigenvalues(self) -> np.ndarray:
        return self._h0_vals

    def spectrum_hull(self):
        eigs = np.concatenate([self._h0_vals, self.h_eigenvalues()])
        return float(np.min(eigs)), float(np.max(eigs))


class HalfLineLaplacianModel:
    """Half-line hopping operator with a finitely supported perturbation.

    The unperturbed spectrum is the purely absolutely continuous band
    [-2, 2]; boundary values of the sandwiched resolvent exist everywhere
    except the two thresholds.
    """

    is_dense = False
    band = (-2.0, 2.0)

    def __init__(self, pert: FactoredPerturbation, threshold_tol: float = THRESHOLD_TOL):
        if pert.kind != "lattice":
            raise ValueError("half-line models need a finite-support perturbation")
        _check_green_formula()
        self.pert = pert
        self.threshold_tol = threshold_tol

    def _kernel(self, z) -> np.ndarray:
        sites = self.pert.sites
        gmat = np.array([[lattice_green(n, m, z) for m in sites] for n in sites])
        w = self.pert.weights
        return w @ gmat @ w.conj().T

    def sandwiched_resolvent(self, z) -> np.ndarray:
        z = complex(z)
        if z.imag == 0.0:
            if abs(z.real) <= 2.0 + self.threshold_tol:
                raise BranchAtThreshold(
                    f"real energy {z.real} requires the boundary branch"
                )
            return _hermitize(self._kernel(z))
        return self._kernel(z)

    def boundary_values(self, lam: float) -> np.ndarray:
        lam = float(lam)
        if abs(abs(lam) - 2.0) <= self.threshold_tol:
            raise BranchAtThreshold(f"energy {lam} at a band threshold")
        if abs(lam) > 2.0:
            return _hermitize(self._kernel(lam))
        return self._kernel(lam)  # complex boundary values inside the band


def boundary_data(model, lam: float, psd_tol: float = HERGLOTZ_TOL):
    """Hermitian boundary pair (re t, im t) at lam + i0, with im t >= 0.

    The imaginary part must be positive semidefinite up to rounding
    (Herglotz property); eigenvalues below -psd_tol indicate a broken model
    and raise, small negatives are clipped to zero.
    """
    t = model.boundary_values(lam)
    a = _hermitize(t)
    b = (t - t.conj().T) / 2j
    b = _hermitize(b)
    vals, vecs = np.linalg.eigh(b)
    if vals.size and vals[0] < -psd_tol * max(1.0, float(np.max(np.abs(vals)))):
        raise ResolventIdentityViolation(
            f"imaginary boundary part has eigenvalue {vals[0]:.3e} < 0"
        )
    if vals.size and vals[0] < 0.0:
        b = _hermitize((vecs * np.maximum(vals, 0.0)) @ vecs.conj().T)
    return a, b


def build_h(model: DenseModel) -> HermitianMatrix:
    """Assemble h = h0 + g* j g and certify the resolvent identity.

    The identity r_h(z) - r_h0(z) = -(g r_h0(zbar))* (j^{-1} + t(z))^{-1}
    (g r_h0(z)) is checked at five fixed off-axis points before the matrix
    is returned.
    """
    g = model.pert.g
    h0 = model.h0.entries
    h = HermitianMatrix(h0 + g.conj().T @ model.pert.j @ g)
    n = model.h0.dim
    eye = np.eye(n)
    for k in range(5):
        z = complex(0.31 + 0.83 * k, 0.7 + 0.45 * k)
        r_h = np.linalg.solve(h.entries - z * eye, eye)
        r_h0 = np.linalg.solve(h0 - z * eye, eye)
        g_rz = g @ r_h0
        g_rzbar = g @ np.linalg.solve(h0 - np.conj(z) * eye, eye)
        t = model.sandwiched_resolvent(z)
        core = np.linalg.solve(model.pert.j_inv + t, g_rz)
        resid = np.linalg.norm(r_h - r_h0 + g_rzbar.conj().T @ core, 2)
        if resid > 1e-9:
            raise ResolventIdentityViolation(
                f"resolvent identity residual {resid:.3e} at z={z}"
            )
    return h


def psd_sqrt(b: np.ndarray) -> np.ndarray:
    vals, vecs = np.linalg.eigh(_hermitize(b))
    return (vecs * np.sqrt(np.maximum(vals, 0.0))) @ vecs.conj().T


def scattering_unitary(a, b, pert_or_j, inv_tol: float = 1e-8) -> UnitaryMatrix:
    """Stationary-form scattering unitary from boundary data (a, b, j).

    s = 1 - 2i b^{1/2} (j^{-1} + a + i b)^{-1} b^{1/2}; the symbol
    j^{-1} + a + i b must be invertible, otherwise the energy is an
    embedded resonance and the caller should skip it.
    """
    if isinstance(pert_or_j, FactoredPerturbation):
        j_inv = pert_or_j.j_inv
    else:
        j_inv = _hermitize(np.linalg.inv(np.array(pert_or_j, dtype=complex)))
    symbol = j_inv + a + 1j * np.asarray(b)
    smin = float(np.min(np.linalg.svd(symbol, compute_uv=False)))
    scale = max(1.0, float(np.linalg.norm(symbol, 2)))
    if smin <= inv_tol * scale:
        raise NonInvertibleSymbol(f"boundary symbol singular: smin={smin:.3e}")
    bh = psd_sqrt(b)
    s = np.eye(j_inv.shape[0]) - 2j * bh @ np.linalg.solve(symbol, bh)
    return UnitaryMatrix(s, unit_tol=1e-9)


def s_matrix(model, z) -> UnitaryMatrix:
    """Scattering unitary of the model at z (off-axis or boundary energy)."""
    z = complex(z)
    if z.imag == 0.0:
        a, b = boundary_data(model, z.real)
    else:
        t = model.sandwiched_resolvent(z)
        a = _hermitize(t)
        b = _hermitize((t - t.conj().T) / 2j)
    return scattering_unitary(a, b, model.pert)


def resolvent_pair_unitary(model: DenseModel, z, *, pole_tol: float = 1e-12,
                           check_tol: float = 1e-8) -> UnitaryMatrix:
    """The unitary [(h - zbar)/(h - z)] [(h0 - z)/(h0 - zbar)] on the big space.

    Computed by scalar functional calculus on h and h0 and cross-checked
    against the factorised expression through the sandwiched resolvent,
    which ties the big-space object to the (g, j) frame.
    """
    z = complex(z)
    if z.imag == 0.0:
        raise PoleHit("pair unitary needs an off-axis point")
    h = model.h_matrix()
    h_vals, h_vecs = np.linalg.eigh(h.entries)
    if min(np.min(np.abs(h_vals - z)), np.min(np.abs(model.h0_eigenvalues() - z))) < pole_tol:
        raise PoleHit(f"z={z} within {pole_tol:.1e} of an eigenvalue")
    ratio_h = (h_vals - np.conj(z)) / (h_vals - z)
    f_h = (h_vecs * ratio_h) @ h_vecs.conj().T
    ratio_h0 = (model._h0_vals - z) / (model._h0_vals - np.conj(z))
    f_h0 = (model._h0_vecs * ratio_h0) @ model._h0_vecs.conj().T
    m = f_h @ f_h0

    # factorised cross-check through the auxiliary space
    n = model.h0.dim
    eye = np.eye(n)
    g = model.pert.g
    r0_z = np.linalg.solve(model.h0.entries - z * eye, eye)
    r0_zbar = np.linalg.solve(model.h0.entries - np.conj(z) * eye, eye)
    t = model.sandwiched_resolvent(z)
    core = np.linalg.solve(model.pert.j_inv + t, g @ r0_z)
    m_fact = eye - (z - np.conj(z)) * (g @ r0_zbar).conj().T @ core @ (
        eye - (z - np.conj(z)) * r0_zbar
    )
    defect = float(np.max(np.abs(m - m_fact)))
    if defect > check_tol:
        raise ResolventIdentityViolation(
            f"pair unitary disagrees with its factorised form by {defect:.3e}"
        )
    return UnitaryMatrix(m, unit_tol=1e-9)


# -- admissible reparametrisations --------------------------------------


@dataclass(frozen=True)
class MoebiusMap:
    """Orientation-preserving change of spectral variable.

    Either x -> a x + b with a > 0, or x -> -(x - lambda0)^{-1} with the
    pole lambda0 kept away from the spectra, in which case the map is
    increasing and bounded on the hull of the spectra.
    """

    kind: str
    a: float = 1.0
    b: float = 0.0
    lambda0: float = 0.0

    @classmethod
    def affine(cls, a: float, b: float) -> "MoebiusMap":
        if a <= 0:
            raise AdmissibilityViolation("affine scale must be positive")
        return cls(kind="affine", a=float(a), b=float(b))

    @classmethod
    def inverse_shift(cls, lambda0: float) -> "MoebiusMap":
        return cls(kind="inverse_shift", lambda0=float(lambda0))

    def apply(self, x: float) -> float:
        if self.kind == "affine":
            return self.a * x + self.b
        return -1.0 / (x - self.lambda0)

    def derivative(self, x: float) -> float:
        if self.kind == "affine":
            return self.a
        return 1.0 / (x - self.lambda0) ** 2

    def pullback(self, w: float) -> float:
        if self.kind == "affine":
            return (w - self.b) / self.a
        return self.lambda0 - 1.0 / w


class TransformedLatticeModel:
    """Pushforward of a half-line model under an admissible Moebius map.

    The sandwiched resolvent of the transformed pair is expressed exactly
    through the base model: affine maps reuse t at the pulled-back point,
    the inverse shift subtracts the real matrix t(lambda0).
    """

    is_dense = False

    def __init__(self, base: HalfLineLaplacianModel, fmap: MoebiusMap,
                 pert: FactoredPerturbation, t_shift=None):
        self.base = base
        self.fmap = fmap
        self.pert = pert
        self.t_shift = t_shift  # real Hermitian t(lambda0) for inverse shifts

    def sandwiched_resolvent(self, w) -> np.ndarray:
        w = complex(w)
        if self.fmap.kind == "affine":
            u = (w - self.fmap.b) / self.fmap.a
            return self.base.sandwiched_resolvent(u)
        u = self.fmap.lambda0 - 1.0 / w
        return self.base.sandwiched_resolvent(u) - self.t_shift

    def boundary_values(self, w: float) -> np.ndarray:
        lam = self.fmap.pullback(float(w))
        t = self.base.boundary_values(lam)
        if self.fmap.kind == "affine":
            return t
        return t - self.t_shift


def _negative_count(mat: np.ndarray) -> int:
    return int(np.sum(np.linalg.eigvalsh(_hermitize(mat)) < 0.0))


def _deterministic_probe_points(n: int):
    # fixed off-axis probes, mirrored across the axis to exercise symmetry
    pts = []
    for k in range(n):
        w = complex(-1.3 + 0.6 * k, 0.4 + 0.33 * (k % 3))
        pts.append(w if k % 2 == 0 else np.conj(w))
    return pts


def moebius_pushforward(model, fmap: MoebiusMap, *, margin: float = 0.1,
                        check_tol: float = 1e-10):
    """Factored pair of the transformed operators (f(h0), f(h)).

    Returns (pushed model, pushed perturbation).  Affine maps keep j and
    scale the frame; the inverse shift re-factorises through the resolvent
    identity: the new frame is g (h0 - lambda0)^{-1} and the new coupling
    is (j^{-1} + t(lambda0))^{-1}.  The pole must stay outside the hull of
    both spectra, which also pins the signature of the new coupling to the
    old one.  The pushed sandwiched resolvent is certified against the base
    model at fixed probe points before anything is returned.
    """
    if fmap.kind == "affine":
        if fmap.a <= 0:
            raise AdmissibilityViolation("affine scale must be positive")
        if model.is_dense:
            h0p = HermitianMatrix(fmap.a * model.h0.entries
                                  + fmap.b * np.eye(model.h0.dim))
            gp = math.sqrt(fmap.a) * model.pert.g
            pert_p = FactoredPerturbation(j=model.pert.j, g=gp)
            pushed = DenseModel(h0p, pert_p)

            def reference(w):
                return model.sandwiched_resolvent((w - fmap.b) / fmap.a)
        else:
            wp = math.sqrt(fmap.a) * model.pert.weights
            pert_p = FactoredPerturbation(j=model.pert.j, sites=model.pert.sites,
                                          weights=wp)
            pushed = TransformedLatticeModel(model, fmap, pert_p)
            reference = None
    else:
        lam0 = fmap.lambda0
        if model.is_dense:
            lo, hi = model.spectrum_hull()
            if lo - margin <= lam0 <= hi + margin:
                raise AdmissibilityViolation(
                    f"pole {lam0} inside the spectral hull [{lo}, {hi}]"
                )
            t0 = _hermitize(model.boundary_values(lam0))
        else:
            lo, hi = model.band
            if lam0 >= lo - margin and lam0 <= hi + margin:
                raise AdmissibilityViolation(f"pole {lam0} too close to the band")
            t0 = _hermitize(model.boundary_values(lam0))
            _scan_signature(model, lam0)
        symbol = model.pert.j_inv + t0
        sym_eigs = np.linalg.eigvalsh(symbol)
        if np.min(np.abs(sym_eigs)) <= 1e-10 * max(1.0, float(np.max(np.abs(sym_eigs)))):
            raise AdmissibilityViolation("new coupling would be singular")
        jp = _hermitize(np.linalg.inv(symbol))
        if _negative_count(symbol) != _negative_count(model.pert.j_inv):
            raise AdmissibilityViolation(
                "pole crosses an eigenvalue branch: coupling signature changed"
            )
        if model.is_dense:
            n = model.h0.dim
            eye = np.eye(n)
            shifted_inv = np.linalg.solve(model.h0.entries - lam0 * eye, eye)
            h0p = HermitianMatrix(_hermitize(-shifted_inv))
            gp = model.pert.g @ shifted_inv
            pert_p = FactoredPerturbation(j=jp, g=gp)
            pushed = DenseModel(h0p, pert_p)

            def reference(w):
                return model.sandwiched_resolvent(lam0 - 1.0 / w) - t0
        else:
            pert_p = FactoredPerturbation(j=jp)
            pushed = TransformedLatticeModel(model, fmap, pert_p, t_shift=t0)
            reference = None

    for w in _deterministic_probe_points(10):
        left = pushed.sandwiched_resolvent(w)
        if reference is not None:
            # two independent routes: direct matrices vs base-model algebra
            resid = float(np.max(np.abs(left - reference(w))))
        else:
            # exact-algebra wrapper: certify the Herglotz symmetry instead
            resid = float(np.max(np.abs(
                pushed.sandwiched_resolvent(np.conj(w)) - left.conj().T
            )))
        if resid > check_tol:
            raise AdmissibilityViolation(
                f"pushforward identity residual {resid:.3e} at w={w}"
            )
    return pushed, pushed.pert


def _scan_signature(model: HalfLineLaplacianModel, lam0: float, points: int = 65):
    """No eigenvalue branch of h may sit between -inf and the pole.

    Checked by walking j^{-1} + t(s) from a far anchor up to the pole and
    requiring constant inertia; a sign change flags a discrete eigenvalue
    of h outside the band on the pole's side.
    """
    side = -1.0 if lam0 < 0 else 1.0
    anchor = side * max(50.0, 10.0 * abs(lam0))
    grid = np.linspace(anchor, lam0, points)
    expected = _negative_count(model.pert.j_inv)
    for s in grid:
        symbol = model.pert.j_inv + _hermitize(model.boundary_values(float(s)))
        vals = np.linalg.eigvalsh(symbol)
        if np.min(np.abs(vals)) <= 1e-9 * max(1.0, float(np.max(np.abs(vals)))):
            raise AdmissibilityViolation(
                f"discrete eigenvalue of h near s={s:.4f} blocks the pole"
            )
        if int(np.sum(vals < 0)) != expected:
            raise AdmissibilityViolation(
                f"coupling signature changes before the pole (at s={s:.4f})"
            )


# -- JSON configuration ---------------------------------------------------


def complex_from_json(obj) -> complex:
    if isinstance(obj, dict):
        return complex(float(obj["re"]), float(obj["im"]))
    raise ValueError(f"complex entries must be {{'re':..,'im':..}} pairs, got {obj!r}")


def complex_to_json(z: complex) -> dict:
    return {"re": float(np.real(z)), "im": float(np.imag(z))}


def matrix_from_json(rows) -> np.ndarray:
    return np.array([[complex_from_json(x) for x in row] for row in rows])


def perturbation_from_config(cfg: dict) -> FactoredPerturbation:
    j = matrix_from_json(cfg["j"])
    g = cfg.get("g")
    if g is not None:
        return FactoredPerturbation(j=j, g=matrix_from_json(g))
    support = cfg["sites"], matrix_from_json(cfg["weights"])
    return FactoredPerturbation(j=j, sites=support[0], weights=support[1])


def transform_from_config(cfg: dict) -> MoebiusMap:
    if cfg["type"] == "affine":
        return MoebiusMap.affine(cfg["a"], cfg["b"])
    if cfg["type"] == "inverse_shift":
        return MoebiusMap.inverse_shift(cfg["lambda0"])
    raise ValueError(f"unknown transform type {cfg['type']!r}")


def model_from_config(cfg: dict):
    """Build a model (optionally pushed forward) from a JSON configuration."""
    pert = perturbation_from_config(cfg["perturbation"])
    mtype = cfg["model"]["type"]
    if mtype == "dense":
        base = DenseModel(HermitianMatrix(matrix_from_json(cfg["model"]["h0"])), pert)
    elif mtype == "halfline_laplacian":
        base = HalfLineLaplacianModel(pert)
    else:
        raise ValueError(f"unknown model type {mtype!r}")
    if cfg.get("transform") is not None:
        fmap = transform_from_config(cfg["transform"])
        pushed, _ = moebius_pushforward(base, fmap)
        return pushed
    return base
