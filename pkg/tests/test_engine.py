import math

import numpy as np
import pytest

from ssf_lab import (
    CircleStepFunction,
    DenseModel,
    FactoredPerturbation,
    HalfLineLaplacianModel,
    HermitianMatrix,
    MoebiusMap,
    OperatorFamily,
    ProbeFunction,
    ResolventFlow,
    admissibility_report,
    birman_krein_defect,
    counting_ssf,
    evaluate_record,
    flow_by_index,
    flow_by_path,
    flow_from_boundary,
    gap_counting_defect,
    invariance_defect,
    perturbation_determinant,
    scattering_matrix,
    selfadjoint_spectral_flow,
    ssf_by_determinant,
    ssf_by_index_integral,
    ssf_from_flow,
    ssf_integral_from_boundary,
    steps_match,
    sweep_records,
    theta_probe_set,
    trace_formula_defect,
    track_determinant,
)
from ssf_lab.errors import EigenvalueAtLambda, SsfLabError
from ssf_lab.randgen import gap_energies, random_dense_model

TWO_PI = 2 * np.pi


def no_coupling_model():
    return DenseModel(HermitianMatrix(np.diag([0.0, 2.0])),
                      FactoredPerturbation(j=np.eye(2), g=np.zeros((2, 2))))


# -- flow functions ---------------------------------------------------------


def test_flow_scalar_plus(scalar_plus):
    f = flow_by_index(scalar_plus, 0.0)
    assert f.step == CircleStepFunction([(3 * np.pi / 2, 1)], -1)
    assert f.value_at(3 * np.pi / 2) == 0  # left continuity at the jump
    assert f.value_at(3 * np.pi / 2 + 1e-9) == -1


def test_flow_scalar_minus(scalar_minus):
    f = flow_by_index(scalar_minus, 0.0)
    assert f.step == CircleStepFunction([(np.pi / 2, 1)], 0)
    assert f.value_at(np.pi / 2) == 1
    assert f.value_at(np.pi / 2 + 1e-9) == 0


def test_flow_dense_gap_constant(diag_pair):
    f = flow_by_index(diag_pair, 0.5)
    assert f.step == CircleStepFunction((), -1)


def test_flow_no_coupling():
    f = flow_by_index(no_coupling_model(), 0.5)
    assert f.step == CircleStepFunction((), 0)
    fp = flow_by_path(no_coupling_model(), 0.5)
    assert fp.step == CircleStepFunction((), 0)


def test_flow_methods_agree_scalar(scalar_plus, scalar_minus, lattice_mixed):
    for model in (scalar_plus, scalar_minus, lattice_mixed):
        for lam in (-0.5, 0.0, 0.4):
            fi = flow_by_index(model, lam)
            fp = flow_by_path(model, lam)
            assert steps_match(fi.step, fp.step)
            flow_by_path(model, lam, cross_check=True)  # no MethodDisagreement


def test_flow_big_space_equals_auxiliary(rng):
    for _ in range(5):
        model = random_dense_model(rng, n_max=6, r_max=2)
        lam = gap_energies(model)[0]
        try:
            small = flow_by_path(model, lam)
            big = flow_by_path(model, lam, use_pair_unitary=True)
        except SsfLabError:
            continue
        assert steps_match(small.step, big.step)


def test_flow_monotone_and_bounded(lattice_mixed, rng):
    for lam in rng.uniform(-1.9, 1.9, 25):
        f = flow_by_index(lattice_mixed, float(lam))
        assert f.step.is_nonincreasing()
        n_neg, n_pos = lattice_mixed.pert.signature()
        for _, _, v in f.step.intervals():
            assert -n_pos <= v <= n_neg


def test_flow_jumps_are_scattering_phases(lattice_mixed):
    f = flow_by_index(lattice_mixed, 0.4)
    s = scattering_matrix(lattice_mixed, 0.4)
    from ssf_lab import eigenphases

    phases = eigenphases(s)
    assert len(f.step.jumps) == len(phases)
    for (theta, m), phase in zip(f.step.jumps, sorted(phases)):
        assert abs(theta - phase) < 1e-8 and m == 1


def test_eigenphase_jump_relation(lattice_mixed, rng):
    # mu(theta1) - mu(theta2) counts scattering eigenphases in [theta1, theta2)
    for lam in (-0.7, 0.1, 0.9):
        f = flow_by_index(lattice_mixed, lam)
        jumps = f.step.jumps
        for _ in range(20):
            t1, t2 = np.sort(rng.uniform(0.01, TWO_PI - 0.01, 2))
            count = sum(m for theta, m in jumps if t1 <= theta < t2)
            assert f.value_at(float(t1)) - f.value_at(float(t2)) == count


# -- shift function routes ---------------------------------------------------


def test_ssf_scalar_closed_forms(scalar_plus, scalar_minus):
    assert ssf_from_flow(flow_by_index(scalar_plus, 0.0)) == pytest.approx(0.25, abs=1e-12)
    assert ssf_from_flow(flow_by_index(scalar_minus, 0.0)) == pytest.approx(-0.25, abs=1e-12)
    assert ssf_by_index_integral(scalar_plus, 0.0) == pytest.approx(0.25, abs=1e-12)
    assert ssf_by_index_integral(scalar_minus, 0.0) == pytest.approx(-0.25, abs=1e-12)


def test_ssf_scalar_triple_a_half():
    # raw boundary triple (0.5, 1, 1): xi = arctan(2/3)/pi
    xi = ssf_integral_from_boundary([[0.5]], [[1.0]], [[1.0]])
    assert xi == pytest.approx(math.atan(2.0 / 3.0) / math.pi, abs=1e-12)
    assert abs(xi - 0.187167) < 1e-6
    step, phases = flow_from_boundary([[0.5]], [[1.0]], [[1.0]])
    assert ssf_from_flow(ResolventFlow(0.0, step, tuple(phases), "index")) == \
        pytest.approx(xi, abs=1e-12)


def test_ssf_scalar_lattice_shifted_energy(scalar_plus):
    # lattice boundary data at energy -1 is (1/2, sqrt(3)/2, 1): xi = 1/6
    xi = ssf_by_index_integral(scalar_plus, -1.0)
    assert xi == pytest.approx(1.0 / 6.0, abs=1e-12)


def test_ssf_determinant_examples(diag_pair, scalar_plus):
    assert ssf_by_determinant(diag_pair, 0.5) == pytest.approx(1.0, abs=1e-9)
    assert ssf_by_determinant(scalar_plus, 0.0) == pytest.approx(0.25, abs=1e-9)
    assert ssf_by_determinant(no_coupling_model(), 0.5) == 0.0


def test_index_integral_matches_flow_integral(lattice_mixed):
    for lam in np.linspace(-1.8, 1.8, 19):
        xi_i = ssf_by_index_integral(lattice_mixed, float(lam))
        xi_f = ssf_from_flow(flow_by_index(lattice_mixed, float(lam)))
        assert abs(xi_i - xi_f) < 1e-12


def test_perturbation_determinant_examples(rng):
    assert perturbation_determinant(no_coupling_model(), 0.7j) == pytest.approx(1.0)
    model = random_dense_model(rng, n_max=6, r_max=2)
    z = 0.3 + 1.1j
    classical = np.prod((np.linalg.eigvalsh(model.h_matrix().entries) - z)
                        / (model.h0_eigenvalues() - z))
    d = perturbation_determinant(model, z)
    assert abs(d - classical) / abs(classical) < 1e-8
    # branch anchor: the determinant settles at 1 high up
    decays = [abs(perturbation_determinant(model, 1j * y) - 1.0)
              for y in (1e2, 1e3, 1e4)]
    assert decays[0] > decays[1] > decays[2]
    assert decays[2] < 1e-3


def test_track_determinant_rows(scalar_plus):
    trace = track_determinant(scalar_plus, 0.0)
    y0, re0, im0, arg0 = trace.rows[0]
    assert abs(complex(re0, im0) - 1.0) < 1e-6  # anchor row
    y_end, _, _, arg_end = trace.rows[-1]
    assert y_end == 0.0
    assert trace.xi == pytest.approx(arg_end / math.pi)
    assert trace.xi == pytest.approx(0.25, abs=1e-9)


# -- cross formulas -----------------------------------------------------------


def test_birman_krein_examples(scalar_plus):
    assert birman_krein_defect(scalar_plus, 0.0) < 1e-12
    assert birman_krein_defect(no_coupling_model(), 0.5) < 1e-15


def test_birman_krein_sweep(lattice_mixed):
    worst = max(birman_krein_defect(lattice_mixed, float(lam))
                for lam in np.linspace(-1.9, 1.9, 101))
    assert worst < 1e-6


def test_scattering_matrix_examples(scalar_plus, diag_pair):
    s = scattering_matrix(scalar_plus, 0.0)
    assert abs(s.entries[0, 0] + 1j) < 1e-12
    s_gap = scattering_matrix(diag_pair, 0.5)
    assert np.max(np.abs(s_gap.entries - np.eye(2))) < 1e-12


def test_counting_ssf_examples(diag_pair):
    assert counting_ssf(diag_pair, 0.5) == 1
    assert counting_ssf(diag_pair, -1.0) == 0
    with pytest.raises(EigenvalueAtLambda):
        counting_ssf(diag_pair, 1.0)


def test_counting_ssf_positive_perturbation(rng):
    # positive coupling pushes eigenvalues up: the shift never goes negative
    for _ in range(10):
        n = 6
        h0 = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
        h0 = HermitianMatrix((h0 + h0.conj().T) / 2)
        g = rng.standard_normal((2, n)) + 1j * rng.standard_normal((2, n))
        model = DenseModel(h0, FactoredPerturbation(j=np.eye(2), g=0.6 * g))
        for lam in gap_energies(model):
            assert counting_ssf(model, lam) >= 0


def test_trace_formula_examples(diag_pair, rng):
    lin = ProbeFunction(lambda x: x, lambda x: 1.0, (-5.0, 5.0))
    assert trace_formula_defect(diag_pair, lin) < 1e-10
    assert trace_formula_defect(no_coupling_model(), lin) == 0.0
    cubic = ProbeFunction(lambda x: x ** 3, lambda x: 3 * x * x, (-9.0, 9.0))
    for _ in range(10):
        model = random_dense_model(rng, n_max=6, r_max=3)
        assert trace_formula_defect(model, cubic) < 1e-8


def test_probe_derivative_validation():
    p = ProbeFunction(lambda x: math.sin(x), lambda x: math.cos(x), (-2.0, 2.0))
    assert p.derivative_defect() < 1e-6


def test_gap_counting_examples(diag_pair):
    assert gap_counting_defect(no_coupling_model(), -1.0, 0.5) == 0
    # two-level pair: mu goes 0 -> -1 while the counting difference is 0 - 1
    assert gap_counting_defect(diag_pair, -1.0, 0.5) == 0


def test_invariance_examples(diag_pair, lattice_mixed):
    assert invariance_defect(diag_pair, MoebiusMap.affine(1.0, 0.0), 0.5) == 0
    assert invariance_defect(diag_pair, MoebiusMap.inverse_shift(-7.0), 0.5) == 0
    thetas = theta_probe_set([], count=64)
    assert invariance_defect(lattice_mixed, MoebiusMap.inverse_shift(-5.0),
                             0.4, thetas=thetas) == 0


def test_selfadjoint_flow_examples():
    const = OperatorFamily(eval=lambda al: HermitianMatrix([[5.0]]),
                           window=(-1.0, 1.0))
    assert selfadjoint_spectral_flow(const, [0.0]) == [0]

    # one eigenvalue crosses 0 rightwards at alpha = 1/2: flow is -1
    crossing = OperatorFamily(
        eval=lambda al: HermitianMatrix([[2.0 * al - 1.0]]),
        window=(-0.5, 0.5),
    )
    assert selfadjoint_spectral_flow(crossing, [0.0]) == [-1]


def test_selfadjoint_flow_equals_mu(rng):
    done = 0
    while done < 5:
        model = random_dense_model(rng, n_max=6, r_max=2)
        lams = gap_energies(model)
        lam = lams[len(lams) // 2]
        eigs = np.concatenate([model.h0_eigenvalues(), model.h_eigenvalues()])
        if min(np.min(np.abs(eigs - (lam - 0.4))),
               np.min(np.abs(eigs - (lam + 0.4)))) < 1e-3:
            continue
        g, j, h0 = model.pert.g, model.pert.j, model.h0.entries
        family = OperatorFamily(
            eval=lambda al, h0=h0, g=g, j=j: HermitianMatrix(
                h0 + al * (g.conj().T @ j @ g)),
            window=(lam - 0.4, lam + 0.4),
        )
        try:
            flow = selfadjoint_spectral_flow(family, [lam])[0]
            mu = flow_by_index(model, lam).value_at(math.pi)
        except (SsfLabError, ValueError):
            continue
        assert flow == mu
        done += 1


def test_admissibility_reports():
    ok = admissibility_report(MoebiusMap.affine(2.0, 1.0), (-2.0, 2.0), 0.3)
    assert ok.passed and ok.derivative_value == 2.0
    bad = admissibility_report(MoebiusMap.inverse_shift(0.5), (-2.0, 2.0), 0.0)
    assert not bad.passed
    shifted = admissibility_report(MoebiusMap.inverse_shift(-5.0), (-2.0, 2.0), 0.0)
    assert shifted.passed
    assert min(shifted.separations.values()) > 0.0


# -- records -----------------------------------------------------------------


def test_record_three_routes_agree(lattice_mixed):
    recs = sweep_records(lattice_mixed, np.linspace(-1.5, 1.5, 7))
    for rec in recs:
        assert not rec.flags
        assert abs(rec.xi_det - rec.xi_mu) < 1e-6
        assert abs(rec.xi_mu - rec.xi_index) < 1e-12
        assert rec.bk_defect < 1e-6


def test_record_flags_boundary(diag_pair):
    rec = evaluate_record(diag_pair, 0.0)  # sits on an eigenvalue of h0
    assert rec.xi_det is None and rec.xi_mu is None and rec.xi_index is None
    assert "BoundaryUndefined" in rec.flags


def test_record_oracle_matches(diag_pair):
    rec = evaluate_record(diag_pair, 0.5)
    assert rec.xi_oracle == 1
    assert round(rec.xi_det) == 1 and abs(rec.xi_det - 1) < 1e-6


def test_sign_definite_sweeps():
    for sign in (1.0, -1.0):
        model = HalfLineLaplacianModel(FactoredPerturbation(
            j=sign * np.eye(2), sites=[1, 2], weights=[[1.0, 0.3], [0.2, 0.8]]))
        for lam in np.linspace(-1.9, 1.9, 41):
            f = flow_by_index(model, float(lam))
            xi = ssf_from_flow(f)
            values = [v for _, _, v in f.step.intervals()]
            if sign > 0:
                assert xi >= -1e-12 and all(v <= 0 for v in values)
            else:
                assert xi <= 1e-12 and all(v >= 0 for v in values)
