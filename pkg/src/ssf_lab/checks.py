"""Seeded property-check suites behind the ``check`` subcommand.

Every suite is a deterministic function of its seed and reports the number
of cases run/passed together with the worst defect per invariant, so a
CI-style run can pin regressions to a single number.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field

import numpy as np

from .circleflow import (
    FlowConfig,
    UnitaryPathSampler,
    level_sequence,
    spectral_flow,
    spectrum_class,
    step_from_levels,
    zero_step,
)
from .engine import (
    OperatorFamily,
    ProbeFunction,
    birman_krein_defect,
    flow_by_index,
    gap_counting_defect,
    invariance_defect,
    perturbation_determinant,
    selfadjoint_spectral_flow,
    ssf_by_index_integral,
    ssf_from_flow,
    trace_formula_defect,
)
from .errors import SsfLabError
from .linalg import (
    HermitianMatrix,
    det_complex,
    eigenphases,
    eigenvalue_sequences,
    fredholm_index,
    negative_projection,
    pencil_real_zeros,
    schatten_norm,
    sequence_lp_distance,
)
from .models import (
    FactoredPerturbation,
    HalfLineLaplacianModel,
    MoebiusMap,
    resolvent_pair_unitary,
    scattering_unitary,
)
from .randgen import (
    gap_energies,
    random_boundary_data,
    random_dense_model,
    random_hermitian,
    random_projection,
    random_psd,
    random_unitary,
)

TWO_PI = 2 * np.pi


@dataclass
class CheckReport:
    suite: str
    cases_run: int = 0
    cases_passed: int = 0
    max_defects: dict = field(default_factory=dict)
    seconds: float = 0.0

    @property
    def passed(self) -> bool:
        return self.cases_run > 0 and self.cases_passed == self.cases_run

    def record(self, name: str, defect: float, tol: float) -> None:
        self.cases_run += 1
        if defect <= tol:
            self.cases_passed += 1
        self.max_defects[name] = max(self.max_defects.get(name, 0.0), float(defect))

    def to_json_obj(self) -> dict:
        return {
            "suite": self.suite,
            "cases_run": self.cases_run,
            "cases_passed": self.cases_passed,
            "max_defects": {k: self.max_defects[k] for k in sorted(self.max_defects)},
            "seconds": round(self.seconds, 3),
            "passed": self.passed,
        }


def _lattice_mixed():
    return HalfLineLaplacianModel(FactoredPerturbation(
        j=np.diag([1.0, -1.0]), sites=[1, 2], weights=[[1.0, 0.3], [0.2, 0.8]]))


def check_index(seed: int) -> CheckReport:
    """Fredholm-pair index: antisymmetry, chain rule, trace identity,
    strict-negative projection idempotence, eigenphase conjugation."""
    rep = CheckReport("index")
    rng = np.random.default_rng(seed)
    for _ in range(200):
        n = int(rng.integers(2, 9))
        p = random_projection(rng, n, int(rng.integers(0, n + 1)))
        q = random_projection(rng, n, int(rng.integers(0, n + 1)))
        r = random_projection(rng, n, int(rng.integers(0, n + 1)))
        rep.record("antisymmetry",
                   abs(fredholm_index(p, q) + fredholm_index(q, p)), 0)
        rep.record("chain_rule",
                   abs(fredholm_index(p, r)
                       - fredholm_index(p, q) - fredholm_index(q, r)), 0)
        tr = float(np.trace(p - q).real)
        rep.record("trace_identity", abs(tr - round(tr)), 1e-6)
    for _ in range(50):
        n = int(rng.integers(2, 7))
        m = random_hermitian(rng, n)
        try:
            p1 = negative_projection(m)
            p2 = negative_projection(HermitianMatrix(2 * m.entries))
        except SsfLabError:
            continue
        rep.record("projection_scale_invariance",
                   float(np.max(np.abs(p1.entries - p2.entries))), 1e-9)
        w = random_unitary(rng, n)
        u0 = random_unitary(rng, n)
        ph0 = eigenphases(u0)
        ph1 = eigenphases(w @ u0 @ w.conj().T)
        if len(ph0) == len(ph1):
            d = max((abs(a - b) for a, b in zip(ph0, ph1)), default=0.0)
        else:
            d = math.inf
        rep.record("conjugation_invariance", d, 1e-8)
    return rep


def _random_step(rng) -> "CircleStepFunction":
    from .circleflow import CircleStepFunction

    k = int(rng.integers(0, 6))
    thetas = np.sort(rng.uniform(0.05, TWO_PI - 0.05, k))
    thetas = [float(t) for i, t in enumerate(thetas)
              if i == 0 or t - thetas[i - 1] > 1e-6]
    jumps = [(t, int(rng.integers(1, 4))) for t in thetas]
    return CircleStepFunction(jumps, int(rng.integers(-3, 4)))


def check_flow(seed: int) -> CheckReport:
    """Spectral flow: grid independence, concatenation additivity,
    reversal cancellation, reparametrisation invariance, stability under
    small path perturbations, and level-sequence duality."""
    rep = CheckReport("flow")
    rng = np.random.default_rng(seed)

    for _ in range(12):
        n = int(rng.integers(2, 5))
        a = random_hermitian(rng, n).entries
        b = random_hermitian(rng, n).entries

        def u_of(t, a=a, b=b):
            w = a + t * b
            vals, vecs = np.linalg.eigh(w)
            return (vecs * np.exp(1j * vals)) @ vecs.conj().T

        ends = (spectrum_class(u_of(0.0)), spectrum_class(u_of(1.0)))
        path = UnitaryPathSampler(lambda t: u_of(t), endpoint_limits=ends)
        f1 = spectral_flow(path, FlowConfig(initial_segments=6))
        f2 = spectral_flow(path, FlowConfig(initial_segments=12))
        rep.record("grid_independence", 0.0 if f1 == f2 else 1.0, 0)

        halfway = spectrum_class(u_of(0.5))
        first = UnitaryPathSampler(lambda t: u_of(t / 2),
                                   endpoint_limits=(ends[0], halfway))
        second = UnitaryPathSampler(lambda t: u_of(0.5 + t / 2),
                                    endpoint_limits=(halfway, ends[1]))
        fsum = spectral_flow(first, FlowConfig()) + spectral_flow(second, FlowConfig())
        rep.record("concatenation", 0.0 if fsum == f1 else 1.0, 0)

        back = UnitaryPathSampler(lambda t: u_of(1.0 - t),
                                  endpoint_limits=(ends[1], ends[0]))
        fb = spectral_flow(back, FlowConfig())
        rep.record("reversal", 0.0 if (f1 + fb) == zero_step() else 1.0, 0)

        repar = UnitaryPathSampler(lambda t: u_of(t * t), endpoint_limits=ends)
        fr = spectral_flow(repar, FlowConfig())
        rep.record("reparametrisation", 0.0 if fr == f1 else 1.0, 0)

        eps = 1e-7
        k = random_hermitian(rng, n).entries

        def u_pert(t, a=a, b=b, k=k):
            base = u_of(t, a, b)
            bump = t * (1 - t) * eps
            vals, vecs = np.linalg.eigh(k)
            q = (vecs * np.exp(1j * bump * vals)) @ vecs.conj().T
            return q @ base

        pert = UnitaryPathSampler(lambda t: u_pert(t), endpoint_limits=ends)
        fp = spectral_flow(pert, FlowConfig())
        rep.record("stability", 0.0 if fp == f1 else 1.0, 0)

    for _ in range(200):
        f = _random_step(rng)
        g = step_from_levels(level_sequence(f))
        rep.record("level_duality", 0.0 if f == g else 1.0, 0)
    return rep


def check_lidski(seed: int) -> CheckReport:
    """Eigenvalue-sequence stability: the signed decreasing sequences move
    at most as much as the perturbation in every Schatten norm tested."""
    rep = CheckReport("lidski")
    rng = np.random.default_rng(seed)
    for _ in range(200):
        n = int(rng.integers(2, 9))
        a1 = random_hermitian(rng, n)
        a2 = random_hermitian(rng, n)
        diff = HermitianMatrix(a1.entries - a2.entries)
        s1 = eigenvalue_sequences(a1)
        s2 = eigenvalue_sequences(a2)
        for p in (1, 2, np.inf):
            lhs = sequence_lp_distance(s1, s2, p)
            rhs = schatten_norm(diff, p)
            rep.record(f"lidski_p{p}", max(0.0, lhs - rhs), 1e-10)
    return rep


def check_e_lemmas(seed: int) -> CheckReport:
    """Kernel correspondence, index-as-kernel-sum and the arc-counting
    identity for the stationary scattering unitary."""
    rep = CheckReport("e-lemmas")
    rng = np.random.default_rng(seed)
    done2 = done3 = done4 = 0
    while min(done2, done3, done4) < 50:
        r = int(rng.integers(1, 5))
        a, b, j = random_boundary_data(rng, r, b_rank=int(rng.integers(1, r + 1)))
        j_inv = np.linalg.inv(j)
        try:
            s = scattering_unitary(a, b, j)
        except SsfLabError:
            continue
        phases = eigenphases(s)
        try:
            roots = pencil_real_zeros(HermitianMatrix(j_inv + a), b, (-1e9, 1e9))
        except SsfLabError:
            continue
        from_roots = sorted(math.pi - 2 * math.atan(t)
                            for t, mult in roots for _ in range(mult))
        if len(from_roots) == len(phases):
            d = max((abs(x - y) for x, y in zip(from_roots, sorted(phases))),
                    default=0.0)
        else:
            d = math.inf
        rep.record("kernel_correspondence", d, 1e-8)
        done2 += 1

        mmat = random_hermitian(rng, max(r, 2)).entries
        bmat = random_psd(rng, max(r, 2), rank=int(rng.integers(1, max(r, 2) + 1)))
        try:
            idx = fredholm_index(negative_projection(HermitianMatrix(mmat)),
                                 negative_projection(HermitianMatrix(mmat + bmat)))
            total = sum(mult for _, mult in
                        pencil_real_zeros(HermitianMatrix(mmat), bmat, (0.0, 1.0)))
        except SsfLabError:
            continue
        rep.record("index_kernel_sum", abs(idx - total), 0)
        done3 += 1

        spec = spectrum_class(s)
        jp = negative_projection(HermitianMatrix(j_inv))
        pairs = 0
        for _ in range(40):
            if pairs >= 20:
                break
            t1, t2 = rng.uniform(0.05, TWO_PI - 0.05, 2)
            try:
                p1 = negative_projection(
                    HermitianMatrix(j_inv + a + b / math.tan(t1 / 2)))
                p2 = negative_projection(
                    HermitianMatrix(j_inv + a + b / math.tan(t2 / 2)))
            except SsfLabError:
                continue
            from .circleflow import signed_phase_count

            lhs = signed_phase_count(t1, t2, spec)
            rhs = fredholm_index(jp, p1) + fredholm_index(p2, jp)
            rep.record("arc_counting", abs(lhs - rhs), 0)
            pairs += 1
        if pairs:
            done4 += 1
    return rep


def check_bk(seed: int) -> CheckReport:
    """Birman-Krein equality on a lattice sweep, plus the determinant
    identity det m(z) = conj(d(z))/d(z) on dense models."""
    rep = CheckReport("bk")
    rng = np.random.default_rng(seed)
    model = _lattice_mixed()
    for lam in np.linspace(-1.9, 1.9, 101):
        try:
            rep.record("bk_defect", birman_krein_defect(model, float(lam)), 1e-6)
        except SsfLabError:
            continue
    for _ in range(25):
        m = random_dense_model(rng, n_max=7, r_max=3)
        z = complex(rng.uniform(-2, 2), rng.uniform(0.2, 3.0))
        d = perturbation_determinant(m, z)
        mz = resolvent_pair_unitary(m, z)
        rep.record("determinant_identity",
                   abs(det_complex(mz.entries) - np.conj(d) / d), 1e-8)
        lam = gap_energies(m)[0]
        try:
            xi = ssf_by_index_integral(m, lam)
            flow = flow_by_index(m, lam)
        except SsfLabError:
            continue
        rep.record("integral_substitution", abs(xi - ssf_from_flow(flow)), 1e-12)
    return rep


def check_invariance(seed: int) -> CheckReport:
    """Invariance of the flow function under admissible reparametrisations."""
    rep = CheckReport("invariance")
    rng = np.random.default_rng(seed)
    for _ in range(12):
        m = random_dense_model(rng, n_max=7, r_max=3)
        lo, hi = m.spectrum_hull()
        for fmap in (MoebiusMap.affine(2.0, 0.3),
                     MoebiusMap.inverse_shift(lo - 5.0)):
            for lam in gap_energies(m)[:3]:
                try:
                    rep.record(f"dense_{fmap.kind}",
                               invariance_defect(m, fmap, lam), 0)
                except SsfLabError:
                    continue
    lattice = _lattice_mixed()
    for fmap in (MoebiusMap.affine(2.0, 0.3), MoebiusMap.inverse_shift(-5.0)):
        for lam in (-0.7, 0.4):
            try:
                rep.record(f"lattice_{fmap.kind}",
                           invariance_defect(lattice, fmap, lam), 0)
            except SsfLabError:
                continue
    return rep


def check_gaps(seed: int) -> CheckReport:
    """Gap counting relation and the self-adjoint coupling-family flow."""
    rep = CheckReport("gaps")
    rng = np.random.default_rng(seed)
    count = 0
    while count < 50:
        m = random_dense_model(rng, n_max=8, r_max=3)
        lams = gap_energies(m)
        if len(lams) < 2:
            continue
        i = int(rng.integers(0, len(lams) - 1))
        try:
            rep.record("gap_counting", gap_counting_defect(m, lams[i], lams[i + 1]), 0)
        except SsfLabError:
            continue
        count += 1
    done = 0
    while done < 10:
        m = random_dense_model(rng, n_max=7, r_max=3)
        lams = gap_energies(m)
        lam = lams[len(lams) // 2]
        eigs = np.concatenate([m.h0_eigenvalues(), m.h_eigenvalues()])
        width = 0.45
        if min(np.min(np.abs(eigs - (lam - width))),
               np.min(np.abs(eigs - (lam + width)))) < 1e-3:
            continue
        g, j, h0 = m.pert.g, m.pert.j, m.h0.entries
        family = OperatorFamily(
            eval=lambda al, h0=h0, g=g, j=j: HermitianMatrix(
                h0 + al * (g.conj().T @ j @ g)),
            window=(lam - width, lam + width),
        )
        try:
            flow_val = selfadjoint_spectral_flow(family, [lam])[0]
            mu_val = flow_by_index(m, lam).value_at(math.pi)
        except (SsfLabError, ValueError):
            continue
        rep.record("selfadjoint_flow", abs(flow_val - mu_val), 0)
        done += 1
    return rep


def _bump_probe(lo: float, hi: float) -> ProbeFunction:
    center = (lo + hi) / 2
    width = (hi - lo) / 2 * 1.5 + 1.0

    def fn(x: float) -> float:
        u = (x - center) / width
        if abs(u) >= 1.0:
            return 0.0
        return math.exp(-1.0 / (1.0 - u * u))

    def dfn(x: float) -> float:
        u = (x - center) / width
        if abs(u) >= 1.0:
            return 0.0
        return fn(x) * (-2.0 * u / ((1.0 - u * u) ** 2)) / width

    return ProbeFunction(fn=fn, derivative=dfn, support=(center - width, center + width))


def check_trace(seed: int) -> CheckReport:
    """Trace formula against the exact counting shift function."""
    rep = CheckReport("trace")
    rng = np.random.default_rng(seed)
    for _ in range(50):
        m = random_dense_model(rng, n_max=6, r_max=3)
        lo = float(min(np.min(m.h0_eigenvalues()), np.min(m.h_eigenvalues())))
        hi = float(max(np.max(m.h0_eigenvalues()), np.max(m.h_eigenvalues())))
        probes = {
            "x": ProbeFunction(lambda x: x, lambda x: 1.0, (lo - 1, hi + 1)),
            "x2": ProbeFunction(lambda x: x * x, lambda x: 2 * x, (lo - 1, hi + 1)),
            "x3": ProbeFunction(lambda x: x ** 3, lambda x: 3 * x * x, (lo - 1, hi + 1)),
            "bump": _bump_probe(lo, hi),
        }
        for name, probe in probes.items():
            rep.record(f"trace_{name}", trace_formula_defect(m, probe), 1e-8)
    return rep


SUITES = {
    "index": check_index,
    "flow": check_flow,
    "lidski": check_lidski,
    "e-lemmas": check_e_lemmas,
    "bk": check_bk,
    "invariance": check_invariance,
    "gaps": check_gaps,
    "trace": check_trace,
}


def run_suite(name: str, seed: int) -> list:
    """Run one named suite (or 'all'); returns the list of reports."""
    if name == "all":
        names = list(SUITES)
    elif name in SUITES:
        names = [name]
    else:
        raise KeyError(name)
    reports = []
    for n in names:
        start = time.perf_counter()
        rep = SUITES[n](seed)
        rep.seconds = time.perf_counter() - start
        reports.append(rep)
    return reports
