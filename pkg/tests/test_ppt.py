import numpy as np
import pytest

from pptmc import (
    BipartiteShape,
    DensityMatrix,
    RngStream,
    partial_transpose,
    ppt_verdict,
    sample_density,
    sample_density_batch,
)


def test_maximally_mixed_is_fixed_point():
    rho = np.eye(6) / 6.0
    assert np.array_equal(partial_transpose(rho, (2, 3)), rho)


def test_index_permutation_subsystem_b():
    """Entry-level oracle on a 2x2 system with entries 0..15."""
    rho = np.arange(16.0).reshape(4, 4)
    expected = np.array([
        [0, 4, 2, 6],
        [1, 5, 3, 7],
        [8, 12, 10, 14],
        [9, 13, 11, 15],
    ], dtype=float)
    assert np.array_equal(partial_transpose(rho, (2, 2), "B"), expected)


def test_index_permutation_subsystem_a():
    rho = np.arange(16.0).reshape(4, 4)
    expected = np.array([
        [0, 1, 8, 9],
        [4, 5, 12, 13],
        [2, 3, 10, 11],
        [6, 7, 14, 15],
    ], dtype=float)
    assert np.array_equal(partial_transpose(rho, (2, 2), "A"), expected)


def test_double_transpose_is_identity():
    rhos, _, _ = sample_density_batch(BipartiteShape(2, 3, 6, "complex"), 100, RngStream(1))
    back = partial_transpose(partial_transpose(rhos, (2, 3)), (2, 3))
    assert np.abs(back - rhos).max() == 0.0


def _bell_projector():
    psi = np.zeros(4)
    psi[0] = psi[3] = 1.0 / np.sqrt(2.0)
    return np.outer(psi, psi)


def test_bell_state_partial_transpose():
    """Hand-built PT of the Bell projector and its spectrum {-1/2, 1/2 x3}."""
    rho = _bell_projector()
    expected_pt = np.array([
        [0.5, 0.0, 0.0, 0.0],
        [0.0, 0.0, 0.5, 0.0],
        [0.0, 0.5, 0.0, 0.0],
        [0.0, 0.0, 0.0, 0.5],
    ])
    pt = partial_transpose(rho, (2, 2))
    assert np.abs(pt - expected_pt).max() <= 1e-15
    eigs = np.linalg.eigvalsh(expected_pt)
    assert np.allclose(eigs, [-0.5, 0.5, 0.5, 0.5], atol=1e-15)


def test_bell_state_verdict():
    shape = BipartiteShape(2, 2, 1, "real")
    dm = DensityMatrix(matrix=_bell_projector(), shape=shape,
                       spectrum=np.array([0.0, 0.0, 0.0, 1.0]))
    v = ppt_verdict(dm)
    assert not v.is_ppt
    assert abs(v.min_pt_eigenvalue + 0.5) <= 1e-12
    assert v.det_rho == 0.0


def test_maximally_mixed_verdict():
    shape = BipartiteShape(2, 2, 4, "real")
    dm = DensityMatrix(matrix=np.eye(4) / 4.0, shape=shape, spectrum=np.full(4, 0.25))
    v = ppt_verdict(dm)
    assert v.is_ppt
    assert abs(v.min_pt_eigenvalue - 0.25) <= 1e-12
    assert abs(v.det_rho - 0.25**4) <= 1e-16
    assert abs(v.det_pt - 0.25**4) <= 1e-16


def test_product_state_is_ppt():
    rho = np.kron(np.eye(2) / 2.0, np.diag([1.0, 0.0, 0.0]))
    shape = BipartiteShape(2, 3, 2, "real")
    dm = DensityMatrix(matrix=rho, shape=shape, spectrum=np.linalg.eigvalsh(rho))
    assert ppt_verdict(dm).is_ppt


def test_trace_preserved_exactly():
    rhos, _, _ = sample_density_batch(BipartiteShape(2, 3, 4, "complex"), 200, RngStream(2))
    pts = partial_transpose(rhos, (2, 3))
    assert np.abs(np.trace(pts, axis1=-2, axis2=-1) - 1.0).max() <= 1e-12


def test_pt_hermitian_exactly():
    rhos, _, _ = sample_density_batch(BipartiteShape(2, 2, 4, "complex"), 200, RngStream(3))
    pts = partial_transpose(rhos, (2, 2))
    assert np.array_equal(pts, np.conj(np.swapaxes(pts, -2, -1)))


def test_subsystem_choice_spectrum_symmetry():
    """PT over A and PT over B differ by a full transpose: same spectrum."""
    rhos, _, _ = sample_density_batch(BipartiteShape(2, 3, 6, "complex"), 1_000, RngStream(4))
    ea = np.linalg.eigvalsh(partial_transpose(rhos, (2, 3), "A"))
    eb = np.linalg.eigvalsh(partial_transpose(rhos, (2, 3), "B"))
    assert np.abs(ea - eb).max() <= 1e-10


def test_verdict_independent_of_subsystem():
    dm = sample_density(BipartiteShape(2, 3, 4, "real"), RngStream(5))
    va = ppt_verdict(dm, subsystem="A")
    vb = ppt_verdict(dm, subsystem="B")
    assert va.is_ppt == vb.is_ppt
    assert abs(va.min_pt_eigenvalue - vb.min_pt_eigenvalue) <= 1e-10


def test_shape_mismatch_rejected():
    with pytest.raises(ValueError):
        partial_transpose(np.eye(6), (2, 2))
    with pytest.raises(ValueError):
        partial_transpose(np.eye(4), (2, 2), subsystem="C")
