"""Hermitian linear algebra: spectra, determinants, partial transpose, eps."""

import numpy as np
import pytest

from sepprob.linalg import (
    DensityMatrix,
    Spectrum,
    determinant,
    eigenvalues,
    epsilon_ratio,
    epsilon_ratio_batch_2x2,
    partial_transpose,
    partial_transpose_batch,
)


def bell_state() -> DensityMatrix:
    psi = np.zeros(4)
    psi[0] = psi[3] = 1 / np.sqrt(2)
    return DensityMatrix("C", 4, (2, 2), np.outer(psi, psi))


def random_density(rng, n, field="C"):
    g = rng.standard_normal((n, n))
    if field == "C":
        g = g + 1j * rng.standard_normal((n, n))
    w = g @ g.conj().T
    return w / np.trace(w).real


def char_poly_roots(m: np.ndarray) -> np.ndarray:
    """Independent eigenvalue oracle: Faddeev-LeVerrier coefficients + roots."""
    n = m.shape[0]
    coeffs = [1.0]
    mk = np.array(m, dtype=complex)
    for k in range(1, n + 1):
        c = -np.trace(mk).real / k
        coeffs.append(c)
        if k < n:
            mk = m @ (mk + c * np.eye(n))
    roots = np.roots(coeffs)
    return np.sort(roots.real)[::-1]


def test_eigenvalues_diagonal_cases():
    s = eigenvalues(np.eye(6) / 6)
    assert np.allclose(s.values, [1 / 6] * 6)
    s = eigenvalues(np.diag([0.4, 0.3, 0.2, 0.1]))
    assert s.values == pytest.approx((0.4, 0.3, 0.2, 0.1))


def test_eigenvalues_vs_char_poly_oracle():
    rng = np.random.default_rng(7)
    for _ in range(25):
        m = random_density(rng, 4)
        got = np.array(eigenvalues(m).values)
        ref = char_poly_roots(m)
        assert np.max(np.abs(got - ref)) < 1e-10


def test_eigenvalues_guards():
    with pytest.raises(ValueError):
        eigenvalues(np.array([[0.0, 1.0], [0.0, 0.0]]))
    with pytest.raises(ValueError):
        eigenvalues(np.eye(65))
    with pytest.raises(ValueError):
        Spectrum((0.1, 0.5))


def test_determinant_examples():
    assert determinant(np.eye(4) / 4) == pytest.approx(1 / 256, rel=1e-12)
    pt = partial_transpose(bell_state())
    assert determinant(pt) == pytest.approx(-1 / 16, rel=1e-12)
    singular = np.diag([0.5, 0.5, 0.0, 0.0])
    assert abs(determinant(singular)) < 1e-12


def test_partial_transpose_bell():
    pt = partial_transpose(bell_state())
    ev = eigenvalues(pt)
    assert ev.values == pytest.approx((0.5, 0.5, 0.5, -0.5), abs=1e-12)


def test_partial_transpose_product_state_stays_psd():
    rng = np.random.default_rng(11)
    a = random_density(rng, 2)
    b = random_density(rng, 3)
    rho = DensityMatrix("C", 6, (2, 3), np.kron(a, b))
    ev = eigenvalues(partial_transpose(rho))
    assert ev.values[-1] > -1e-13


def test_partial_transpose_properties_bulk():
    # trace / Frobenius preservation and A-vs-B spectrum identity, 1e5 states
    rng = np.random.default_rng(5)
    total = 100_000
    for field, (dA, dB) in (("C", (2, 3)), ("R", (2, 3))):
        n = dA * dB
        g = rng.standard_normal((total // 2, n, n))
        if field == "C":
            g = g + 1j * rng.standard_normal((total // 2, n, n))
        w = g @ g.conj().swapaxes(1, 2)
        rho = w / np.trace(w, axis1=1, axis2=2).real[:, None, None]
        ptb = partial_transpose_batch(rho, dA, dB, "B")
        pta = partial_transpose_batch(rho, dA, dB, "A")
        assert np.max(np.abs(np.trace(ptb, axis1=1, axis2=2)
                             - np.trace(rho, axis1=1, axis2=2))) < 1e-12
        assert np.max(np.abs(np.linalg.norm(ptb, axis=(1, 2))
                             - np.linalg.norm(rho, axis=(1, 2)))) < 1e-12
        # involution
        assert np.max(np.abs(partial_transpose_batch(ptb, dA, dB, "B") - rho)) == 0
        sa = np.linalg.eigvalsh(pta)
        sb = np.linalg.eigvalsh(ptb)
        assert np.max(np.abs(sa - sb)) < 1e-10


def test_partial_transpose_requires_split():
    rho = DensityMatrix("C", 4, None, np.eye(4) / 4)
    with pytest.raises(ValueError):
        partial_transpose(rho)


def test_kron_eigenvalues_multiply():
    rng = np.random.default_rng(3)
    for dims in ((2, 2), (2, 3)):
        a = random_density(rng, dims[0])
        b = random_density(rng, dims[1])
        got = np.array(eigenvalues(np.kron(a, b)).values)
        ea = np.linalg.eigvalsh(a)
        eb = np.linalg.eigvalsh(b)
        ref = np.sort(np.outer(ea, eb).ravel())[::-1]
        assert np.max(np.abs(got - ref)) < 1e-12


def test_epsilon_ratio_examples():
    assert epsilon_ratio(DensityMatrix("C", 4, (2, 2), np.eye(4) / 4)) == pytest.approx(1.0)
    rho = DensityMatrix("C", 4, (2, 2), np.diag([0.5, 1 / 6, 1 / 6, 1 / 6]))
    assert epsilon_ratio(rho) == pytest.approx(1 / np.sqrt(3), rel=1e-12)


def test_epsilon_ratio_swap_invariance_and_range():
    rng = np.random.default_rng(13)
    for _ in range(50):
        rho = random_density(rng, 4)
        eps = epsilon_ratio(DensityMatrix("C", 4, (2, 2), rho))
        assert 0 < eps <= 1 + 1e-12
        swapped = np.block([[rho[2:, 2:], rho[2:, :2]], [rho[:2, 2:], rho[:2, :2]]])
        eps2 = epsilon_ratio(DensityMatrix("C", 4, (2, 2), swapped))
        assert eps2 == pytest.approx(eps, rel=1e-9)


def test_epsilon_ratio_scalar_blocks_give_one():
    d1 = np.array([[0.3, 0.05], [0.05, 0.2]])
    rho = np.zeros((4, 4))
    rho[:2, :2] = d1
    rho[2:, 2:] = d1  # D2 = c D1 with c = 1
    eps = epsilon_ratio(DensityMatrix("R", 4, (2, 2), rho / np.trace(rho)))
    assert eps == pytest.approx(1.0, rel=1e-12)


def test_epsilon_ratio_singular_block_raises():
    rho = DensityMatrix("C", 4, (2, 2), np.diag([0.5, 0.5, 0.0, 0.0]))
    with pytest.raises(ValueError):
        epsilon_ratio(rho)


def test_epsilon_ratio_batch_matches_scalar_path():
    rng = np.random.default_rng(17)
    g = rng.standard_normal((200, 4, 4)) + 1j * rng.standard_normal((200, 4, 4))
    w = g @ g.conj().swapaxes(1, 2)
    rho = w / np.trace(w, axis1=1, axis2=2).real[:, None, None]
    batch = epsilon_ratio_batch_2x2(rho)
    for i in range(0, 200, 17):
        single = epsilon_ratio(DensityMatrix("C", 4, (2, 2), rho[i]))
        assert batch[i] == pytest.approx(single, rel=1e-9)


def test_density_matrix_validation():
    rho = DensityMatrix("C", 4, (2, 2), np.eye(4) / 4)
    rho.validate()
    bad = DensityMatrix("C", 4, (2, 2), np.eye(4))  # trace 4
    with pytest.raises(ValueError):
        bad.validate()
    with pytest.raises(ValueError):
        DensityMatrix("C", 4, (2, 3), np.eye(4) / 4)
