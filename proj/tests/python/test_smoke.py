"""Smoke tests for the python bindings: drive the main operations end to end."""

import numpy as np
import pytest

import povmlab


def z_projectors():
    return [np.diag([1.0 + 0j, 0.0]), np.diag([0.0 + 0j, 1.0])]


def test_observable_roundtrip_and_validation():
    e = povmlab.Observable(["0", "1"], z_projectors())
    assert e.dim == 2
    assert povmlab.validate(e).ok()
    assert povmlab.is_sharp(e)
    assert povmlab.is_commutative(e)[0]
    assert povmlab.is_maximally_commutative(e)

    bad = povmlab.Observable(["0", "1"], [np.eye(2, dtype=complex)] * 2)
    report = povmlab.validate(bad)
    assert not report.ok()
    assert report.issues[0].invariant == "normalization"


def test_outcome_distribution():
    e = povmlab.smeared_qubit(0.5)
    state = povmlab.State.maximally_mixed(2)
    weights = povmlab.outcome_distribution(e, state)
    assert weights == pytest.approx([0.5, 0.5])


def test_spectral_and_mixture_representation():
    e = povmlab.smeared_qubit(0.5)
    rep = povmlab.spectral_representation(e)
    assert len(rep) == 2
    assert rep.rows[0] == pytest.approx([0.25, 0.75])

    back = povmlab.reconstruct_spectral(rep)
    for a, b in zip(back.effects, e.effects):
        assert np.abs(a - b).max() < 1e-10

    dec = povmlab.mixture_decomposition(rep)
    assert dec.weights == pytest.approx([0.75, 0.25])
    mixed = povmlab.reconstruct_mixture(dec, rep)
    for a, b in zip(mixed.effects, e.effects):
        assert np.abs(a - b).max() < 1e-10


def test_fuzzy_kernel_roundtrip():
    pz = povmlab.pauli_z_observable()
    e = povmlab.smeared_qubit(0.5)
    kernel = povmlab.find_fuzzy_kernel(e, pz)
    assert kernel is not None
    assert np.abs(kernel.matrix - np.array([[0.75, 0.25], [0.25, 0.75]])).max() < 1e-6
    image = povmlab.apply_kernel(pz, kernel)
    for a, b in zip(image.effects, e.effects):
        assert np.abs(a - b).max() < 1e-6

    assert povmlab.find_fuzzy_kernel(povmlab.pauli_x_observable(), pz) is None


def test_classification():
    assert povmlab.classify_fuzzy(povmlab.pauli_z_observable()).verdict == povmlab.FuzzyVerdict.NotFuzzy
    result = povmlab.classify_fuzzy(povmlab.smeared_qubit(0.5))
    assert result.verdict == povmlab.FuzzyVerdict.Fuzzy
    assert result.parent is not None
    assert povmlab.classify_fuzzy(povmlab.trine_qubit()).verdict == povmlab.FuzzyVerdict.Unknown


def test_joint_observable():
    e1 = povmlab.smeared_qubit(0.5)
    e2 = povmlab.smeared_qubit(0.25)
    joint = povmlab.joint_for_commuting_pair(e1, e2)
    assert joint is not None
    assert povmlab.verify_joint(joint, e1, e2)
    m1, m2 = povmlab.marginals(joint)
    for a, b in zip(m1.effects, e1.effects):
        assert np.abs(a - b).max() < 1e-8

    assert povmlab.joint_for_commuting_pair(
        povmlab.pauli_z_observable(), povmlab.pauli_x_observable()) is None


def test_convolution_example():
    nu = np.array([0.5, 0.5, 0.0, 0.0])
    e = povmlab.convolution_observable(povmlab.CyclicMeasure(nu))
    assert np.abs(e.effect(0) - np.diag(nu.astype(complex))).max() < 1e-12
    kernel = povmlab.convolution_kernel(povmlab.CyclicMeasure(nu))
    image = povmlab.apply_kernel(povmlab.position_observable(4), kernel)
    for a, b in zip(image.effects, e.effects):
        assert np.abs(a - b).max() < 1e-12


def test_generators_are_seeded():
    rng1 = povmlab.Rng(42)
    rng2 = povmlab.Rng(42)
    a = povmlab.random_sharp(4, 3, rng1)
    b = povmlab.random_sharp(4, 3, rng2)
    for x, y in zip(a.effects, b.effects):
        assert np.abs(x - y).max() == 0.0


def test_errors_surface_as_python_exceptions():
    with pytest.raises(Exception):
        povmlab.Observable(["0"], [np.eye(2, dtype=complex), np.eye(2, dtype=complex)])
    with pytest.raises(Exception):
        povmlab.spectral_representation(povmlab.trine_qubit())
