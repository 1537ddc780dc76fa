import numpy as np
import pytest

from GQ.algebra.core import adjoint_rep
from GQ.algebra.named import so3
from GQ.representation.core import (
    defining_rep,
    extreme_weight_vector,
    occupation_basis,
    rep_defect,
    so3_irrep,
    spectrum,
    sym_power_rep,
    vacuum_adapted_basis,
    weight_window,
)
from GQ.representation.invariants import (
    casimir_report,
    char_poly_invariants,
    joint_spectrum,
    lambda2_terms,
    quadratic_casimir,
    trace_invariant,
    trace_power_expectation,
)
from GQ.representation.oscillator import (
    QuantumConstants,
    canonical_truncated,
    correspondence_table,
    frozen_ccr_residual,
    oscillator_ccr_defect,
    simplified_oscillator,
    strictly_decreasing,
    vacuum_energy,
)


@pytest.mark.parametrize("two_l", list(range(0, 81, 4)) + [1, 3, 79])
def test_so3_irrep_dimension_and_relations(two_l):
    rep = so3_irrep(two_l)
    assert rep.dim_rep == two_l + 1
    assert rep_defect(rep) <= 1e-12
    assert rep.anti_hermitian_defect() <= 1e-12


def test_so3_irrep_rejects_wrong_algebra():
    with pytest.raises(ValueError, match="3-dim"):
        so3_irrep(2, defining_rep(4).algebra)


def test_jz_spectrum_is_uniform():
    rep = so3_irrep(6)
    report = spectrum(rep["J3"], hermitize=True)
    np.testing.assert_allclose(report.eigenvalues, np.arange(-3, 4), atol=1e-12)
    assert report.uniform
    assert report.spacing == pytest.approx(1.0)
    assert report.degeneracies == [1] * 7


def test_spectrum_rejects_non_hermitian():
    with pytest.raises(ValueError, match="not Hermitian"):
        spectrum(np.array([[0.0, 1.0], [-1.0, 0.0]]))


@pytest.mark.parametrize("p,q", [(3, 0), (4, 0), (6, 0), (5, 1), (3, 3)])
def test_defining_rep(p, q):
    rep = defining_rep(p, q)
    assert rep.dim_rep == p + q
    assert rep_defect(rep) <= 1e-12


def test_defining_rep_bad_signature():
    with pytest.raises(ValueError):
        defining_rep(1, 0)


def test_occupation_basis_counts():
    assert len(occupation_basis(4, 3)) == 20
    assert occupation_basis(3, 0) == [(0, 0, 0)]


@pytest.mark.parametrize("k", [2, 3])
def test_sym_power_rep(k):
    rep = sym_power_rep(defining_rep(4), k)
    assert rep.dim_rep == {2: 10, 3: 20}[k]
    assert rep_defect(rep) <= 1e-12
    assert rep.anti_hermitian_defect() <= 1e-12


def test_sym_power_cap():
    with pytest.raises(ValueError, match="above the cap"):
        sym_power_rep(defining_rep(6), 8, cap=100)


@pytest.mark.parametrize("two_l", [1, 2, 4, 7])
def test_casimir_is_scalar_on_irreps(two_l):
    rep = so3_irrep(two_l)
    report = casimir_report(rep)
    l = two_l / 2.0
    # K = -2 on cyclic so(3), so C2 = J^2 / 2.
    np.testing.assert_allclose(report.eigenvalues, [l * (l + 1) / 2.0] * (two_l + 1), atol=1e-10)
    assert report.scalar_defect <= 1e-8
    assert report.relative_centrality <= 1e-8
    assert len(report.blocks) == 1


def test_casimir_blocks_on_reducible_rep():
    rep = sym_power_rep(defining_rep(4), 2)
    report = casimir_report(rep)
    assert report.relative_centrality <= 1e-8
    # Sym^2 of the vector rep of so(4) is the traceless part plus the trace.
    assert sorted(count for _, count in report.blocks) == [1, 9]


def test_casimir_needs_semisimple(dh1):
    with pytest.raises(ValueError, match="singular"):
        quadratic_casimir(adjoint_rep(dh1))


def test_char_poly_conjugation_invariant(rng):
    from scipy.linalg import expm

    rep = so3_irrep(4)
    coeffs = rng.standard_normal(3)
    base = np.array(char_poly_invariants(rep, coeffs))
    for _ in range(10):
        g = expm(rep.element(rng.standard_normal(3)))
        moved = g @ rep.element(coeffs) @ np.linalg.inv(g)
        p = np.poly(moved) * (-1) ** rep.dim_rep
        values = np.array([p[rep.dim_rep - n] for n in range(rep.dim_rep + 1)])
        assert np.max(np.abs(values - base)) <= 1e-7 * max(1.0, np.max(np.abs(base)))


@pytest.mark.parametrize("p,q", [(4, 0), (5, 1), (3, 3)])
def test_odd_degree_invariants_vanish(p, q, rng):
    rep = defining_rep(p, q)
    coeffs = np.array(char_poly_invariants(rep, rng.standard_normal(rep.algebra.dim)))
    d = rep.dim_rep
    # C_n multiplies z^n, so the invariant of degree d - n sits there.
    for n in range(d + 1):
        if (d - n) % 2 == 1:
            assert abs(coeffs[n]) <= 1e-8
    assert coeffs[d] == pytest.approx(1.0)


def test_trace_invariant_matches_sectors():
    rep = defining_rep(6)
    half = trace_invariant(rep, 2) / 2.0
    terms = lambda2_terms(rep)
    np.testing.assert_allclose(sum(terms.values()), half, atol=1e-12)


def test_trace_invariant_is_central():
    rep = sym_power_rep(defining_rep(6), 2)
    T = trace_invariant(rep, 2)
    for R in rep.matrices:
        assert np.max(np.abs(T @ R - R @ T)) <= 1e-10


@pytest.mark.parametrize("order", [2, 3, 4])
def test_trace_power_expectation_matches_operator(order, rng):
    rep = sym_power_rep(defining_rep(5, 1), 2)
    v = rng.standard_normal(rep.dim_rep) + 1j * rng.standard_normal(rep.dim_rep)
    v /= np.linalg.norm(v)
    expected = np.vdot(v, trace_invariant(rep, order) @ v)
    assert trace_power_expectation(rep.matrices, rep.metric, v, order) == pytest.approx(expected, abs=1e-10)


def test_trace_invariant_needs_metric(so3_algebra):
    with pytest.raises(ValueError, match="metric"):
        trace_invariant(so3_irrep(2, so3_algebra), 2)


def test_extreme_weight_and_window():
    rep = so3_irrep(6)
    vec, top = extreme_weight_vector(rep["J3"])
    assert top == pytest.approx(3.0)
    assert abs(abs(vec[0]) - 1.0) <= 1e-12
    P, values, top = weight_window(rep["J3"], 1.0)
    assert P.shape == (7, 2)
    np.testing.assert_allclose(sorted(values), [2.0, 3.0])


def test_vacuum_adapted_basis_is_unitary():
    U, weights = vacuum_adapted_basis(("0", "1", "2", "3", "X", "Y"))
    np.testing.assert_allclose(U.conj().T @ U, np.eye(6), atol=1e-14)
    np.testing.assert_array_equal(weights, [1, 0, 0, 0, 0, -1])


def test_joint_spectrum_of_commuting_rotations():
    rep = defining_rep(4)
    defect, rows = joint_spectrum([rep["L_12"], rep["L_34"]])
    assert defect == 0.0
    assert rows.shape == (4, 2)
    np.testing.assert_allclose(sorted(np.abs(rows[:, 0])), [0, 0, 1, 1], atol=1e-10)


def test_quantum_constants_constraint():
    with pytest.raises(ValueError):
        QuantumConstants(two_l=4, delta_q=1.0, delta_p=1.0)
    qc = QuantumConstants.for_oscillator(16, hbar=0.5)
    assert qc.l * qc.delta_q * qc.delta_p == pytest.approx(0.5)


def test_for_stime_defaults():
    qc = QuantumConstants.for_stime(4)
    assert qc.delta_x == pytest.approx(0.5)
    assert qc.delta_r == pytest.approx(1.0 / 16)
    with pytest.raises(ValueError):
        QuantumConstants(l_X=2, delta_x=1.0, delta_p=1.0, delta_r=1.0)


@pytest.mark.parametrize("two_l", range(2, 41, 3))
def test_oscillator_ccr_is_exact(two_l):
    ops = simplified_oscillator(QuantumConstants.for_oscillator(two_l))
    assert oscillator_ccr_defect(ops) <= 1e-12


@pytest.mark.parametrize("hbar", [1.0, 0.25])
@pytest.mark.parametrize("two_l", [2, 5, 16, 64])
def test_vacuum_energy_is_hbar(two_l, hbar):
    ops = simplified_oscillator(QuantumConstants.for_oscillator(two_l, hbar))
    assert vacuum_energy(ops) == pytest.approx(hbar, abs=1e-12)


@pytest.mark.parametrize("two_l", [8, 16, 32])
def test_frozen_ccr_residual_is_hbar_over_l(two_l):
    ops = simplified_oscillator(QuantumConstants.for_oscillator(two_l))
    assert frozen_ccr_residual(ops, 1.0) == pytest.approx(2.0 / two_l, rel=1e-9)


def test_vacuum_freezes_i():
    ops = simplified_oscillator(QuantumConstants.for_oscillator(10))
    np.testing.assert_allclose(ops["i"] @ ops.vacuum, -1j * ops.vacuum, atol=1e-12)


def test_canonical_truncated_ccr():
    ops = canonical_truncated(6, hbar=2.0)
    comm = ops.commutator("q", "p")
    np.testing.assert_allclose(np.diag(comm)[:-1], [2.0j] * 5, atol=1e-12)
    with pytest.raises(ValueError):
        canonical_truncated(1)


def test_operator_set_unknown_label():
    ops = canonical_truncated(3)
    with pytest.raises(ValueError, match="Unknown operator"):
        ops["x"]


def test_correspondence_table_converges():
    frame = correspondence_table([32, 64, 128, 256], 4)
    assert list(frame["l"]) == [16, 32, 64, 128]
    assert strictly_decreasing(frame["err"].tolist())
    ratio = frame["err"].iloc[3] / frame["err"].iloc[2]
    assert 0.35 <= ratio <= 0.65
    np.testing.assert_allclose(frame["spacing"], 1.0, atol=1e-8)
    np.testing.assert_allclose(frame["max"], frame["l"], atol=1e-8)


def test_correspondence_k1_diagonal_is_exact():
    frame = correspondence_table([8], 1)
    assert frame["err"].iloc[0] <= 1e-12


def test_correspondence_range():
    with pytest.raises(ValueError):
        correspondence_table([8], 3)
