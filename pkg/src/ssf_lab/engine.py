"""Headline quantities of the laboratory.

At a fixed energy the engine produces an integer step function on the
punctured circle by two independent constructions: the spectral flow of a
vertical resolvent path, and a projection-index formula evaluated from
boundary data.  The spectral shift function is then obtained three ways:
by tracking the argument of the perturbation determinant, by integrating
the flow step function, and by an index integral in the Cayley-transformed
variable.  Cross-checks (Birman-Krein defect, gap counting, invariance
under admissible reparametrisations, trace formula) are exposed as defect
operations that contract to zero.
"""

from __future__ import annotations

import cmath
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

import numpy as np

from .circleflow import (
    CircleStepFunction,
    FlowConfig,
    SpectrumClass,
    UnitaryPathSampler,
    spectral_flow,
    spectrum_class,
    steps_match,
)
from .errors import (
    AnchorNotReached,
    EigenvalueAtLambda,
    KernelAtZero,
    MethodDisagreement,
    NonInvertibleSymbol,
    RefinementLimitExceeded,
    SsfLabError,
    UnwindFailure,
)
from .linalg import (
    HermitianMatrix,
    det_complex,
    eigenphases,
    fredholm_index,
    negative_projection,
)
from .models import (
    DenseModel,
    MoebiusMap,
    boundary_data,
    moebius_pushforward,
    resolvent_pair_unitary,
    s_matrix,
    scattering_unitary,
)

TWO_PI = 2 * np.pi
ZERO_GUARD = 1e-9


# -- flow functions at a fixed energy -----------------------------------


@dataclass(frozen=True)
class ResolventFlow:
    """Integer step function mu(theta) at a fixed energy.

    ``jump_phases`` are the eigenphases of the boundary scattering unitary
    (the only places mu may jump); ``method`` records which construction
    produced the step.
    """

    energy: float
    step: CircleStepFunction
    jump_phases: tuple
    method: str

    def value_at(self, theta: float) -> int:
        return self.step.value_at(theta)


def _validate_flow_step(step: CircleStepFunction, signature) -> None:
    """Theorem-backed shape constraints; violations mean numerical breakdown."""
    if not step.is_nonincreasing():
        raise ValueError(f"flow step function is not non-increasing: {step!r}")
    n_neg, n_pos = signature
    for _, _, v in step.intervals():
        if v > n_neg or -v > n_pos:
            raise ValueError(
                f"flow value {v} escapes the coupling signature bound "
                f"[-{n_pos}, {n_neg}]"
            )


def _index_at(j_inv_proj, j_inv, a, b, coeff: float, zero_tol: float) -> int:
    mat = HermitianMatrix(j_inv + a + coeff * b, herm_tol=1e-8)
    return fredholm_index(j_inv_proj, negative_projection(mat, zero_tol))


def _midpoint_value(j_inv_proj, j_inv, a, b, lo: float, hi: float,
                    zero_tol: float) -> int:
    """Interval value with re-sampling: midpoints may hit a kernel point."""
    half = (hi - lo) / 2
    shifts = (0.0, 0.31, -0.27, 0.13)
    last = None
    for frac in shifts:
        theta = lo + half + frac * half
        try:
            return _index_at(j_inv_proj, j_inv, a, b,
                             1.0 / math.tan(theta / 2), zero_tol)
        except KernelAtZero as exc:
            last = exc
    raise last


def _phase_clusters(phases: Sequence[float], tol: float = 1e-8):
    """Cluster near-equal phases into (phase, multiplicity) pairs."""
    out = []
    for t in sorted(phases):
        if out and t - out[-1][0] <= tol:
            out[-1][1] += 1
        else:
            out.append([t, 1])
    return [(t, m) for t, m in out]


def flow_from_boundary(a, b, j, *, id_tol: float = 1e-8,
                       zero_tol: float = ZERO_GUARD):
    """Flow step function from a raw boundary triple (a, b, j).

    Jumps sit at the eigenphases of the scattering unitary built from the
    triple; on each open arc between consecutive jumps the value is the
    index of the Fredholm pair (negative subspace of j^{-1}, negative
    subspace of j^{-1} + a + cot(theta/2) b) at one interior point.
    Returns (step, eigenphases).
    """
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    j = np.asarray(j, dtype=complex)
    s_bnd = scattering_unitary(a, b, j)
    phases = eigenphases(s_bnd, id_tol=id_tol)
    clusters = _phase_clusters(phases)
    edges = [0.0] + [t for t, _ in clusters] + [TWO_PI]
    j_inv = np.linalg.inv(j)
    j_inv = (j_inv + j_inv.conj().T) / 2
    j_inv_proj = negative_projection(HermitianMatrix(j_inv))
    values = [
        _midpoint_value(j_inv_proj, j_inv, a, b, lo, hi, zero_tol)
        for lo, hi in zip(edges[:-1], edges[1:])
    ]
    jumps = []
    for (theta, mult), before, after in zip(clusters, values[:-1], values[1:]):
        drop = before - after
        if drop != mult:
            raise ValueError(
                f"flow drop {drop} at theta={theta} disagrees with the "
                f"scattering multiplicity {mult}"
            )
        jumps.append((theta, drop))
    return CircleStepFunction(jumps, values[-1]), phases


def flow_by_index(model, lam: float, *, id_tol: float = 1e-8,
                  zero_tol: float = ZERO_GUARD) -> ResolventFlow:
    """Flow step function of the model at one energy via the projection index.

    The left-continuity convention places the jump value on the left arc.
    """
    a, b = boundary_data(model, lam)
    step, phases = flow_from_boundary(a, b, model.pert.j,
                                      id_tol=id_tol, zero_tol=zero_tol)
    _validate_flow_step(step, model.pert.signature())
    return ResolventFlow(float(lam), step, tuple(phases), "index")


def flow_by_path(model, lam: float, cfg: FlowConfig = FlowConfig(), *,
                 use_pair_unitary: bool = False, trace: Optional[list] = None,
                 cross_check: bool = False) -> ResolventFlow:
    """Flow step function as the spectral flow of the vertical resolvent path.

    The path t -> s(lam + i (1-t)/t) runs on the auxiliary space; for dense
    models ``use_pair_unitary`` switches to the big-space unitary built from
    both resolvents, which carries the same nontrivial eigenphases.  The
    endpoint classes are the empty class at t -> 0+ (the path starts at the
    identity) and the boundary scattering class at t -> 1-.
    """
    a, b = boundary_data(model, lam)
    s_bnd = scattering_unitary(a, b, model.pert)
    end_class = spectrum_class(s_bnd, id_tol=cfg.id_tol)
    if use_pair_unitary:
        if not model.is_dense:
            raise ValueError("the big-space path needs a dense model")

        def ev(t):
            return resolvent_pair_unitary(model, complex(lam, (1 - t) / t))
    else:

        def ev(t):
            return s_matrix(model, complex(lam, (1 - t) / t))

    path = UnitaryPathSampler(eval=ev, endpoint_limits=(SpectrumClass(), end_class))
    step = spectral_flow(path, cfg, trace=trace)
    _validate_flow_step(step, model.pert.signature())
    flow = ResolventFlow(float(lam), step, end_class.phases, "flow")
    if cross_check:
        other = flow_by_index(model, lam, id_tol=cfg.id_tol)
        if not steps_match(flow.step, other.step):
            raise MethodDisagreement(
                f"path and index flows disagree at energy {lam}"
            )
    return flow


# -- the spectral shift function by three routes -------------------------


def ssf_from_flow(flow: ResolventFlow) -> float:
    """Exact piecewise integral: xi = -(1/2 pi) integral of the step."""
    return -flow.step.integral() / TWO_PI


def ssf_integral_from_boundary(a, b, j, *, id_tol: float = 1e-8,
                               zero_tol: float = ZERO_GUARD) -> float:
    """Index integral (1/pi) int dt/(1+t^2) index(...) evaluated exactly.

    The integrand is piecewise constant with breakpoints cot(theta_j / 2)
    at the eigenphases theta_j of the scattering unitary of the triple, so
    the integral collapses to a finite sum of arctangent differences.
    """
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    j = np.asarray(j, dtype=complex)
    s_bnd = scattering_unitary(a, b, j)
    phases = eigenphases(s_bnd, id_tol=id_tol)
    breaks = sorted(1.0 / math.tan(t / 2) for t in phases)
    j_inv = np.linalg.inv(j)
    j_inv = (j_inv + j_inv.conj().T) / 2
    j_inv_proj = negative_projection(HermitianMatrix(j_inv))

    def value_at(t: float, spread: float) -> int:
        # re-samples stay strictly inside the breakpoint interval
        shifts = (0.0, 0.31, -0.27, 0.13)
        last = None
        for frac in shifts:
            try:
                mat = HermitianMatrix(j_inv + a + (t + frac * spread) * b,
                                      herm_tol=1e-8)
                return fredholm_index(negative_projection(mat, zero_tol), j_inv_proj)
            except KernelAtZero as exc:
                last = exc
        raise last

    edges = [-math.inf] + breaks + [math.inf]
    total = 0.0
    for lo, hi in zip(edges[:-1], edges[1:]):
        if lo == -math.inf and hi == math.inf:
            t_mid, spread = 0.0, 1.0
        elif lo == -math.inf:
            t_mid, spread = hi - 1.0, 1.0
        elif hi == math.inf:
            t_mid, spread = lo + 1.0, 1.0
        else:
            t_mid, spread = (lo + hi) / 2, (hi - lo) / 2
        v = value_at(t_mid, spread)
        if v != 0:
            total += v * (math.atan(hi) - math.atan(lo))
    return total / math.pi


def ssf_by_index_integral(model, lam: float, *, id_tol: float = 1e-8,
                          zero_tol: float = ZERO_GUARD) -> float:
    """Index-integral route to the shift function of the model at one energy."""
    a, b = boundary_data(model, lam)
    return ssf_integral_from_boundary(a, b, model.pert.j,
                                      id_tol=id_tol, zero_tol=zero_tol)


def perturbation_determinant(model, z) -> complex:
    """Modified perturbation determinant det(1 + j t(z)).

    For dense models with trace-class-equivalent data this coincides with
    the classical determinant det((h - z)(h0 - z)^{-1}).
    """
    z = complex(z)
    if z.imag == 0.0:
        t = model.boundary_values(z.real)
    else:
        t = model.sandwiched_resolvent(z)
    r = model.pert.rank
    return det_complex(np.eye(r) + model.pert.j @ t)


@dataclass
class DeterminantTrace:
    """Argument-tracking record: rows of (y, Re d, Im d, unwrapped arg)."""

    rows: list
    xi: float


def track_determinant(model, lam: float, cfg: FlowConfig = FlowConfig(), *,
                      anchor_tol: float = 1e-6, y_floor: float = 1e-9,
                      max_unwind_depth: int = 30) -> DeterminantTrace:
    """Continuous branch of arg d(lam + iy) from the anchor down to y = 0.

    The branch is anchored where |d - 1| < anchor_tol (the argument tends
    to zero at large heights); the grid is geometric with ratio
    cfg.grid_ratio, and any step with |delta arg| > pi/2 is bisected, so
    the unwinding never skips a half-turn.  Returns the full row trace and
    xi = arg d(lam + i0) / pi.
    """
    y_top = cfg.y_max
    d_top = perturbation_determinant(model, complex(lam, y_top))
    while abs(d_top - 1.0) >= anchor_tol:
        y_top *= 10.0
        if y_top > 1e14:
            raise AnchorNotReached(
                f"|d - 1| = {abs(d_top - 1.0):.3e} at y = {y_top:.1e}"
            )
        d_top = perturbation_determinant(model, complex(lam, y_top))

    ys = [y_top]
    while ys[-1] * cfg.grid_ratio > y_floor:
        ys.append(ys[-1] * cfg.grid_ratio)
    ys.append(0.0)

    d_bottom = perturbation_determinant(model, lam)
    d_floor = perturbation_determinant(model, complex(lam, ys[-2]))
    if abs(d_bottom) < 1e-8 * max(abs(d_floor), 1e-300):
        raise NonInvertibleSymbol(
            f"determinant vanishes at the boundary energy {lam}"
        )

    def d_at(y: float) -> complex:
        return perturbation_determinant(model, complex(lam, y)) if y > 0 else d_bottom

    rows = []
    arg_total = cmath.phase(d_top)  # principal branch is exact at the anchor
    rows.append((y_top, d_top.real, d_top.imag, arg_total))

    def walk(y_hi, d_hi, y_lo, d_lo, depth):
        nonlocal arg_total
        delta = cmath.phase(d_lo / d_hi)
        if abs(delta) <= math.pi / 2:
            arg_total += delta
            rows.append((y_lo, d_lo.real, d_lo.imag, arg_total))
            return
        if depth >= max_unwind_depth:
            raise UnwindFailure(
                f"argument step {delta:.3f} unresolved between y={y_hi} and y={y_lo}"
            )
        y_mid = math.sqrt(y_hi * y_lo) if y_lo > 0 else y_hi / 2
        d_mid = d_at(y_mid)
        walk(y_hi, d_hi, y_mid, d_mid, depth + 1)
        walk(y_mid, d_mid, y_lo, d_lo, depth + 1)

    prev_y, prev_d = y_top, d_top
    for y in ys[1:]:
        d = d_at(y)
        walk(prev_y, prev_d, y, d, 0)
        prev_y, prev_d = y, d
    return DeterminantTrace(rows=rows, xi=arg_total / math.pi)


def ssf_by_determinant(model, lam: float, cfg: FlowConfig = FlowConfig()) -> float:
    return track_determinant(model, lam, cfg).xi


# -- cross formulas and oracles ------------------------------------------


def scattering_matrix(model, lam: float):
    """Boundary scattering unitary at lam + i0 (skip on embedded resonance)."""
    a, b = boundary_data(model, lam)
    return scattering_unitary(a, b, model.pert)


def birman_krein_defect(model, lam: float) -> float:
    """|det s(lam + i0) - exp(-2 pi i xi)| with xi from the index integral.

    This exercises the full equality with the branch fixed at large
    heights, not just the equality mod 1.
    """
    s_bnd = scattering_matrix(model, lam)
    xi = ssf_by_index_integral(model, lam)
    return abs(det_complex(s_bnd.entries) - cmath.exp(-2j * math.pi * xi))


def counting_ssf(model: DenseModel, lam: float, *, tol: float = 1e-10) -> int:
    """Exact shift function of a finite pair: counting eigenvalues below lam."""
    h0e = model.h0_eigenvalues()
    he = model.h_eigenvalues()
    scale = max(1.0, float(np.max(np.abs(np.concatenate([h0e, he])))))
    if min(np.min(np.abs(h0e - lam)), np.min(np.abs(he - lam))) <= tol * scale:
        raise EigenvalueAtLambda(f"energy {lam} sits on an eigenvalue")
    return int(np.sum(h0e < lam) - np.sum(he < lam))


@dataclass(frozen=True)
class ProbeFunction:
    """Test function phi with its derivative and a support interval."""

    fn: Callable[[float], float]
    derivative: Callable[[float], float]
    support: tuple

    def derivative_defect(self, samples: int = 200) -> float:
        """Max deviation of ``derivative`` from central differences of ``fn``."""
        lo, hi = self.support
        xs = np.linspace(lo, hi, samples)
        h = (hi - lo) / (samples * 50.0)
        worst = 0.0
        for x in xs:
            fd = (self.fn(x + h) - self.fn(x - h)) / (2 * h)
            worst = max(worst, abs(fd - self.derivative(x)))
        return worst


def trace_formula_defect(model: DenseModel, probe: ProbeFunction) -> float:
    """Defect of Tr(phi(h) - phi(h0)) against the shift-function integral.

    The integral side is exact: the counting shift function is constant
    between consecutive eigenvalues of the pair, so the integral of
    phi' * xi telescopes into differences of phi at the partition points.
    """
    h0e = np.sort(model.h0_eigenvalues())
    he = np.sort(model.h_eigenvalues())
    lhs = float(np.sum([probe.fn(float(x)) for x in he])
                - np.sum([probe.fn(float(x)) for x in h0e]))
    points = np.sort(np.concatenate([h0e, he]))
    rhs = 0.0
    for lo, hi in zip(points[:-1], points[1:]):
        if hi <= lo:
            continue
        mid = (lo + hi) / 2
        xi_val = int(np.sum(h0e < mid) - np.sum(he < mid))
        if xi_val != 0:
            rhs += xi_val * (probe.fn(float(hi)) - probe.fn(float(lo)))
    return abs(lhs - rhs)


def theta_probe_set(steps: Sequence[CircleStepFunction], count: int = 64):
    """Midpoint-shifted equispaced phases plus all jump-partition midpoints."""
    thetas = {(k + 0.5) * TWO_PI / count for k in range(count)}
    for step in steps:
        edges = [0.0] + [t for t, _ in step.jumps] + [TWO_PI]
        for lo, hi in zip(edges[:-1], edges[1:]):
            if hi > lo:
                thetas.add((lo + hi) / 2)
    return sorted(thetas)


def _signed_count_below(eigs: np.ndarray, lo: float, hi: float) -> int:
    """Signed number of eigenvalues in the half-open interval [lo, hi)."""
    if lo == hi:
        return 0
    a, b = (lo, hi) if lo < hi else (hi, lo)
    count = int(np.sum((eigs >= a) & (eigs < b)))
    return count if lo < hi else -count


def gap_counting_defect(model: DenseModel, lam1: float, lam2: float,
                        thetas: Optional[Sequence[float]] = None) -> int:
    """Defect of mu(.; lam2) - mu(.; lam1) against eigenvalue counting.

    Both energies must lie in gaps; the contract value is zero.
    """
    f1 = flow_by_index(model, lam1)
    f2 = flow_by_index(model, lam2)
    dn = (_signed_count_below(model.h_eigenvalues(), lam1, lam2)
          - _signed_count_below(model.h0_eigenvalues(), lam1, lam2))
    if thetas is None:
        thetas = theta_probe_set([f1.step, f2.step])
    return max(abs((f2.value_at(t) - f1.value_at(t)) - dn) for t in thetas)


def invariance_defect(model, fmap: MoebiusMap, lam: float,
                      thetas: Optional[Sequence[float]] = None) -> int:
    """Pointwise defect between the flow function and its pushforward.

    The second flow is computed entirely from the pushed-forward pair at
    the transformed energy; the invariance principle makes the defect
    exactly zero for admissible maps.
    """
    f1 = flow_by_index(model, lam)
    pushed, _ = moebius_pushforward(model, fmap)
    f2 = flow_by_index(pushed, fmap.apply(lam))
    if thetas is None:
        thetas = theta_probe_set([f1.step, f2.step])
    return max(abs(f1.value_at(t) - f2.value_at(t)) for t in thetas)


# -- spectral flow of self-adjoint families -------------------------------


@dataclass
class OperatorFamily:
    """Sampled family alpha -> h(alpha) with a spectral window.

    The window endpoints must lie in the resolvent sets of h(0) and h(1).
    """

    eval: Callable[[float], object]
    window: tuple


def selfadjoint_spectral_flow(family: OperatorFamily, lam_grid: Sequence[float],
                              cfg: FlowConfig = FlowConfig()):
    """Spectral flow of the family through each grid energy.

    Same gap-subdivision scheme as on the circle, applied to eigenvalue
    counting functions anchored at certified resolvent points inside the
    window.  The sign convention: an eigenvalue crossing the energy
    rightwards (upwards) contributes -1.
    """
    lo, hi = family.window
    if not all(lo < x < hi for x in lam_grid):
        raise ValueError("all grid energies must lie inside the window")
    cache: dict = {}

    def eigs_at(alpha: float) -> np.ndarray:
        if alpha not in cache:
            h = family.eval(alpha)
            a = h.entries if isinstance(h, HermitianMatrix) else np.asarray(h)
            cache[alpha] = np.sort(np.linalg.eigvalsh(a))
        return cache[alpha]

    for alpha in (0.0, 1.0):
        e = eigs_at(alpha)
        if min(np.min(np.abs(e - lo)), np.min(np.abs(e - hi))) < 1e-9:
            raise ValueError("window endpoint touches the spectrum at an endpoint")

    flows = [0] * len(lam_grid)
    n = max(1, int(cfg.initial_segments))
    stack = [(i / n, (i + 1) / n, 0) for i in range(n)][::-1]
    while stack:
        a, b, depth = stack.pop()
        e_a, e_b = eigs_at(a), eigs_at(b)
        mid = (a + b) / 2
        e_m = eigs_at(mid)
        inside = sorted(x for x in np.concatenate([e_a, e_b]) if lo < x < hi)
        dividers = [lo] + inside + [hi]
        candidates = sorted(
            (((d2 - d1), (d1 + d2) / 2) for d1, d2 in zip(dividers[:-1], dividers[1:])
             if d2 > d1),
            reverse=True,
        )
        anchors = []
        for _, cand in candidates:
            dist = min(
                float(np.min(np.abs(e - cand))) if e.size else math.inf
                for e in (e_a, e_b, e_m)
            )
            if dist >= cfg.eps_gap:
                anchors.append(cand)
            if len(anchors) == 2:
                break

        def increments(anchor):
            return [
                _signed_count_below(e_b, anchor, lam)
                - _signed_count_below(e_a, anchor, lam)
                for lam in lam_grid
            ]

        # a crossed anchor shifts every increment by the same constant, so
        # two independently certified anchors must agree exactly
        refine = not anchors
        if not refine:
            inc = increments(anchors[0])
            if len(anchors) >= 2 and inc != increments(anchors[1]):
                refine = True
        if refine:
            if depth >= cfg.max_depth:
                raise RefinementLimitExceeded(
                    f"no certified window anchor on [{a}, {b}]"
                )
            stack.append((mid, b, depth + 1))
            stack.append((a, mid, depth + 1))
            continue
        for i, v in enumerate(inc):
            flows[i] += v
    return flows


# -- admissibility reports -------------------------------------------------


@dataclass
class AdmissibilityReport:
    derivative_ok: bool
    derivative_value: float
    separation_ok: bool
    separations: dict
    violations: list

    @property
    def passed(self) -> bool:
        return not self.violations


def admissibility_report(fmap: MoebiusMap, domain: tuple, lam: float,
                         samples: int = 10_000) -> AdmissibilityReport:
    """Check the two admissibility clauses of a reparametrising map at lam.

    (i) the derivative at lam is positive; (ii) values stay separated from
    f(lam) outside every punctured neighbourhood, probed on a dense sample
    of the domain.
    """
    lo, hi = domain
    violations = []
    if fmap.kind == "inverse_shift" and lo <= fmap.lambda0 <= hi:
        violations.append("pole inside the domain")
        return AdmissibilityReport(False, math.nan, False, {}, violations)
    deriv = fmap.derivative(lam)
    derivative_ok = deriv > 0 and lo < lam < hi
    if not derivative_ok:
        violations.append("clause (i): derivative not positive at an interior point")
    xs = np.linspace(lo, hi, samples)
    f_lam = fmap.apply(lam)
    separations = {}
    separation_ok = True
    for delta in (1e-1, 1e-2):
        mask = np.abs(xs - lam) > delta
        if not np.any(mask):
            separations[delta] = math.inf
            continue
        vals = np.array([abs(fmap.apply(float(x)) - f_lam) for x in xs[mask]])
        sep = float(np.min(vals))
        separations[delta] = sep
        if sep <= 0.0:
            separation_ok = False
            violations.append(f"clause (ii): separation fails for delta={delta}")
    return AdmissibilityReport(derivative_ok, deriv, separation_ok,
                               separations, violations)


# -- per-energy records and sweeps ----------------------------------------


@dataclass
class SsfRecord:
    """Per-energy bundle of all shift-function routes and defects."""

    lam: float
    xi_det: Optional[float] = None
    xi_mu: Optional[float] = None
    xi_index: Optional[float] = None
    xi_oracle: Optional[int] = None
    bk_defect: Optional[float] = None
    flags: list = field(default_factory=list)

    def to_json_obj(self) -> dict:
        return {
            "lambda": self.lam,
            "xi_det": self.xi_det,
            "xi_mu": self.xi_mu,
            "xi_index": self.xi_index,
            "xi_oracle": self.xi_oracle,
            "bk_defect": self.bk_defect,
            "flags": list(self.flags),
        }

    CSV_HEADER = "lambda,xi_det,xi_mu,xi_index,xi_oracle,bk_defect"

    def to_csv_row(self) -> str:
        def cell(x):
            return "" if x is None else repr(x)

        return ",".join([
            repr(self.lam), cell(self.xi_det), cell(self.xi_mu),
            cell(self.xi_index), cell(self.xi_oracle), cell(self.bk_defect),
        ])


def evaluate_record(model, lam: float, cfg: FlowConfig = FlowConfig()) -> SsfRecord:
    """All shift-function routes at one energy, with flagged skips.

    Exceptional points (boundary misses, embedded resonances, kernel hits,
    resolution failures) are never interpolated: the failing route stays
    empty and the record carries the exception name as a flag.
    """
    rec = SsfRecord(lam=float(lam))

    def attempt(label, fn):
        try:
            return fn()
        except SsfLabError as exc:
            name = type(exc).__name__
            if name not in rec.flags:
                rec.flags.append(name)
            return None

    rec.xi_det = attempt("det", lambda: ssf_by_determinant(model, lam, cfg))
    flow = attempt("mu", lambda: flow_by_path(model, lam, cfg))
    if flow is not None:
        rec.xi_mu = ssf_from_flow(flow)
    rec.xi_index = attempt("index", lambda: ssf_by_index_integral(model, lam))
    rec.bk_defect = attempt("bk", lambda: birman_krein_defect(model, lam))
    if model.is_dense:
        rec.xi_oracle = attempt("oracle", lambda: counting_ssf(model, lam))
    return rec


def sweep_records(model, lams: Sequence[float], cfg: FlowConfig = FlowConfig(),
                  jobs: int = 1):
    """Record per energy, evaluated independently; output order is fixed
    by the input order regardless of parallelism."""
    lams = [float(x) for x in lams]
    if jobs <= 1:
        return [evaluate_record(model, lam, cfg) for lam in lams]
    with ThreadPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(lambda lam: evaluate_record(model, lam, cfg), lams))
