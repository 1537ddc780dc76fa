import logging
from itertools import product

import numpy as np
import pytest

from GQ.quantification.boson import (
    boson_ccr_defect,
    frozen_ccr_value,
    regulator_terms,
    simplified_boson,
)
from GQ.quantification.fock import (
    IoSpace,
    cyclic_subspace,
    green_function,
    quantified_action,
    quantify,
    relation_defect,
    wick_expansion,
)
from GQ.representation.core import occupation_basis, so3_irrep, spectrum
from GQ.representation.oscillator import QuantumConstants, simplified_oscillator
from GQ.utils.misc import fit_loglog_slope, geometric_sweep


@pytest.mark.parametrize("dim_v", [1, 3, 10])
def test_fermionic_relations_exact(dim_v):
    sys = quantify("-", dim_v)
    assert sys.space_dim == 2**dim_v
    assert relation_defect(sys, include_boundary=True) <= 1e-13


def test_fermion_mode_cap():
    with pytest.raises(ValueError, match="capped"):
        quantify("-", 13)


@pytest.mark.parametrize("dim_v,cutoff", [(1, 5), (2, 4), (3, 3)])
def test_bosonic_relations_below_boundary(dim_v, cutoff):
    sys = quantify("+", dim_v, cutoff)
    assert relation_defect(sys) <= 1e-13
    assert relation_defect(sys, include_boundary=True) > 0.5


def test_bosonic_boundary_commutator():
    sys = quantify("+", 1, 3, hbar=0.5)
    (top,) = sys.truncation.boundary
    c, a = sys.annihilators[0], sys.creators[0]
    comm = (c @ a - a @ c).toarray()
    assert comm[top, top] == pytest.approx(-3 * 0.5)


def test_truncation_is_logged(caplog):
    with caplog.at_level(logging.WARNING, logger="GQ"):
        quantify("+", 2, 2)
    assert "truncated at cutoff 2" in caplog.text
    caplog.clear()
    with caplog.at_level(logging.WARNING, logger="GQ"):
        quantify("-", 2)
    assert "truncated" not in caplog.text


@pytest.mark.parametrize("dim_v,cutoff", [(1, 4), (2, 3)])
def test_free_relations_below_boundary(dim_v, cutoff):
    sys = quantify("0", dim_v, cutoff)
    assert sys.space_dim == sum(dim_v**n for n in range(cutoff + 1))
    assert relation_defect(sys) <= 1e-13
    assert relation_defect(sys, include_boundary=True) > 0.5


def test_hbar_scales_relations():
    sys = quantify("+", 2, 3, hbar=0.3)
    assert relation_defect(sys) <= 1e-13
    assert green_function(sys, ["1", "1"]) == pytest.approx(0.15)


def test_quantify_rejects_bad_input():
    with pytest.raises(ValueError, match="sigma"):
        quantify("x", 2)
    with pytest.raises(ValueError, match="cutoff"):
        quantify("+", 2, 0)
    with pytest.raises(ValueError, match="dim_v"):
        quantify("+", 0)


def test_io_space():
    io = IoSpace(3, ("a", "b", "c"))
    assert list(io.outputs) == [3, 4, 5]
    assert io.output_of(1) == 4
    assert io.index("c") == 2
    assert io.index(1) == 1
    with pytest.raises(ValueError, match="Unknown mode"):
        io.index("d")
    with pytest.raises(ValueError, match="distinct"):
        IoSpace(2, ("a", "a"))


def test_two_point_functions():
    for sigma in ("+", "-", "0"):
        sys = quantify(sigma, 2, 4)
        assert green_function(sys, ["1", "1"]) == pytest.approx(0.5)
        assert green_function(sys, ["1", "2"]) == pytest.approx(0.0)


def test_bosonic_four_point_isserlis():
    sys = quantify("+", 2, 4)
    g11, g22, g12 = (green_function(sys, ix) for ix in (["1", "1"], ["2", "2"], ["1", "2"]))
    g1122 = green_function(sys, ["1", "1", "2", "2"])
    assert abs(g1122 - (g11 * g22 + 2 * g12**2)) <= 1e-10
    assert green_function(sys, ["1"] * 4) == pytest.approx(0.75)


def test_free_four_point_is_semicircle_moment():
    sys = quantify("0", 1, 4)
    assert green_function(sys, ["1"] * 4) == pytest.approx(0.5)


@pytest.mark.parametrize("sigma,dim_v,cutoff", [("+", 2, 4), ("-", 3, 1), ("0", 2, 4)])
def test_wick_expansion_matches_four_point(sigma, dim_v, cutoff):
    sys = quantify(sigma, dim_v, cutoff)
    for ix in product(sys.io.labels, repeat=4):
        assert abs(green_function(sys, ix) - wick_expansion(sys, ix)) <= 1e-9


def test_odd_green_functions_vanish():
    sys = quantify("+", 2, 3)
    assert green_function(sys, ["1", "2", "1"]) == 0
    assert wick_expansion(sys, ["1", "2", "1"]) == 0


def _hermitian(rng, d):
    A = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
    return (A + A.conj().T) / 2.0


@pytest.mark.parametrize("d,cutoff", [(1, 3), (2, 2), (2, 3), (3, 3)])
def test_bosonic_action_spectrum(d, cutoff, rng):
    A1 = _hermitian(rng, d)
    sys = quantify("+", d, cutoff)
    got = np.sort(np.linalg.eigvalsh(quantified_action(sys, A1).toarray()))
    one = np.linalg.eigvalsh(A1)
    expected = sorted(
        float(np.dot(occ, one)) for total in range(cutoff + 1) for occ in occupation_basis(d, total)
    )
    np.testing.assert_allclose(got, expected, atol=1e-10)


@pytest.mark.parametrize("d", [1, 2, 3])
def test_fermionic_action_spectrum(d, rng):
    A1 = _hermitian(rng, d)
    sys = quantify("-", d)
    got = np.sort(np.linalg.eigvalsh(quantified_action(sys, A1).toarray()))
    one = np.linalg.eigvalsh(A1)
    expected = sorted(float(np.dot(occ, one)) for occ in product((0, 1), repeat=d))
    np.testing.assert_allclose(got, expected, atol=1e-10)


def test_number_operator_counts_occupation():
    sys = quantify("+", 2, 3)
    N = sys.number_operator().toarray()
    np.testing.assert_allclose(np.diag(N).real, [sum(s) for s in sys.states])
    assert np.count_nonzero(N - np.diag(np.diag(N))) == 0


def test_quantified_action_shape_check():
    with pytest.raises(ValueError, match="one-quantum"):
        quantified_action(quantify("+", 2, 2), np.eye(3))


def test_cyclic_subspace_fills_fock_space():
    sys = quantify("+", 1, 3)
    assert cyclic_subspace(sys, sys.vacuum, 3).shape == (4, 4)
    fermions = quantify("-", 2)
    Q = cyclic_subspace(fermions, fermions.vacuum, 2)
    assert Q.shape == (4, 4)
    np.testing.assert_allclose(Q.conj().T @ Q, np.eye(4), atol=1e-10)


def test_cyclic_subspace_of_irrep():
    rep = so3_irrep(4)
    v = np.zeros(5, dtype=complex)
    v[0] = 1.0
    assert cyclic_subspace(rep, v, 1).shape[1] == 2
    assert cyclic_subspace(rep, v, 4).shape[1] == 5
    with pytest.raises(ValueError, match="unit"):
        cyclic_subspace(rep, 2 * v, 1)


@pytest.mark.parametrize("N", range(1, 7))
@pytest.mark.parametrize("rep_kind", ["defining", "sym_power"])
def test_boson_ccr_exact(N, rep_kind):
    k = 2 if rep_kind == "sym_power" else None
    ops = simplified_boson(N, QuantumConstants(delta_q=0.7, delta_p=0.4), rep_kind, k)
    assert boson_ccr_defect(ops) <= 1e-12


def test_boson_regulators():
    qc = QuantumConstants(delta_q=0.5, delta_p=2.0)
    ops = simplified_boson(3, qc)
    rows = regulator_terms(ops)
    assert [row["pair"] for row in rows] == ["q1,q2", "q1,q3", "q2,q3"]
    for row in rows:
        assert row["commutator"] == pytest.approx(row["regulator"])
        assert row["regulator"] == pytest.approx(0.25)


def test_boson_regulator_decays_with_delta_q_squared():
    delta_qs = geometric_sweep(6)
    commutators = []
    for dq in delta_qs:
        ops = simplified_boson(2, QuantumConstants(delta_q=float(dq), delta_p=1.0), "sym_power", 2)
        (row,) = regulator_terms(ops)
        commutators.append(row["commutator"])
    np.testing.assert_allclose(np.asarray(commutators) / delta_qs**2, commutators[0] / delta_qs[0] ** 2, rtol=1e-12)
    assert fit_loglog_slope(delta_qs**2, commutators) == pytest.approx(1.0, abs=1e-10)


def test_single_boson_matches_oscillator():
    qc = QuantumConstants(two_l=2, delta_q=0.5, delta_p=2.0)
    boson = simplified_boson(1, qc)
    osc = simplified_oscillator(qc)
    labels = ("q", "p", "r")
    for a in labels:
        np.testing.assert_allclose(
            spectrum(boson[a], hermitize=True).eigenvalues,
            spectrum(osc[a], hermitize=True).eigenvalues,
            atol=1e-12,
        )
    # Equal traces of all words of length 2 and 3 make the two triples unitarily equivalent here.
    for word in list(product(labels, repeat=2)) + list(product(labels, repeat=3)):
        tb = np.trace(np.linalg.multi_dot([boson[a] for a in word]))
        to = np.trace(np.linalg.multi_dot([osc[a] for a in word]))
        assert tb == pytest.approx(to, abs=1e-12), word
    assert frozen_ccr_value(boson) == pytest.approx(osc.expectation(osc.commutator("q", "p")))


def test_boson_frozen_ccr_value():
    ops = simplified_boson(2, QuantumConstants(two_l=4, delta_q=0.5, delta_p=1.0), "sym_power", 2)
    assert frozen_ccr_value(ops) == pytest.approx(-1j * 2 * 0.5)


def test_boson_rejects_mismatched_two_l():
    with pytest.raises(ValueError, match="two_l"):
        simplified_boson(2, QuantumConstants(two_l=4, delta_q=0.5, delta_p=1.0), "defining")
    with pytest.raises(ValueError, match="N >= 1"):
        simplified_boson(0, QuantumConstants())
