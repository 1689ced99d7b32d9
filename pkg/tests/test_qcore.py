import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qmultimeter.qcore import (
    HADAMARD,
    I2,
    SX,
    SZ,
    DimensionError,
    HilbertLayout,
    NotHermitianError,
    basis_ket,
    check_density,
    check_unitary,
    dagger,
    hermitian_eigenvalues,
    partial_trace,
    projector,
    random_density,
    random_unitary,
    tensor,
)

seeds = st.integers(min_value=0, max_value=2**32 - 1)


def brute_partial_trace_keep_first(rho, da, db):
    """Direct index summation: out[i, i'] = sum_j rho[i*db + j, i'*db + j]."""
    out = np.zeros((da, da), dtype=complex)
    for i in range(da):
        for ip in range(da):
            for j in range(db):
                out[i, ip] += rho[i * db + j, ip * db + j]
    return out


def test_tensor_identity():
    assert np.array_equal(tensor(I2, I2), np.eye(4))


def test_tensor_kets_big_endian():
    v = tensor(basis_ket(2, 0), basis_ket(2, 1))
    assert np.array_equal(v, [0, 1, 0, 0])


def test_tensor_sx_identity_swaps_blocks():
    expected = np.zeros((4, 4))
    expected[0, 2] = expected[1, 3] = expected[2, 0] = expected[3, 1] = 1
    assert np.array_equal(tensor(SX, I2), expected)


def test_tensor_kind_mismatch():
    with pytest.raises(DimensionError):
        tensor(I2, basis_ket(2, 0))


dyadic = st.integers(-8, 8).map(lambda n: n / 4)


@given(st.lists(st.tuples(dyadic, dyadic), min_size=12, max_size=12))
def test_tensor_associative_exact(entries):
    # exactly representable entries keep every product exact, so equality is bitwise
    z = [complex(re, im) for re, im in entries]
    a, b, c = (np.array(z[4 * i:4 * i + 4]).reshape(2, 2) for i in range(3))
    assert np.array_equal(tensor(tensor(a, b), c), tensor(a, tensor(b, c)))


@given(seeds)
def test_tensor_associative_float(seed):
    rng = np.random.default_rng(seed)
    a, b, c = (random_unitary(2, rng) for _ in range(3))
    assert np.allclose(tensor(tensor(a, b), c), tensor(a, tensor(b, c)), atol=1e-15)


def test_partial_trace_product_state():
    rho = projector(tensor(basis_ket(2, 0), basis_ket(2, 0)))
    assert np.allclose(partial_trace(rho, HilbertLayout((2, 2)), keep=0), projector(basis_ket(2, 0)), atol=0)


def test_partial_trace_bell_state():
    phi = (tensor(basis_ket(2, 0), basis_ket(2, 0)) + tensor(basis_ket(2, 1), basis_ket(2, 1))) / np.sqrt(2)
    assert np.allclose(partial_trace(projector(phi), HilbertLayout((2, 2)), keep=0), I2 / 2, atol=1e-15)


@given(seeds)
def test_partial_trace_matches_index_summation(seed):
    rng = np.random.default_rng(seed)
    rho = random_density(4, rng)
    red = partial_trace(rho, HilbertLayout((2, 2)), keep=0)
    assert np.allclose(red, brute_partial_trace_keep_first(rho, 2, 2), atol=1e-14)
    assert abs(np.trace(red) - np.trace(rho)) < 1e-12


@given(seeds)
@settings(max_examples=50)
def test_partial_trace_of_product(seed):
    rng = np.random.default_rng(seed)
    a = rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3))
    b = rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))
    layout = HilbertLayout((3, 2))
    assert np.allclose(partial_trace(tensor(a, b), layout, keep=0), a * np.trace(b), atol=1e-12)
    assert np.allclose(partial_trace(tensor(a, b), layout, keep=1), b * np.trace(a), atol=1e-12)


def test_partial_trace_three_factors_middle():
    rng = np.random.default_rng(1)
    a, b, c = random_density(2, rng), random_density(3, rng), random_density(2, rng)
    rho = tensor(tensor(a, b), c)
    assert np.allclose(partial_trace(rho, HilbertLayout((2, 3, 2)), keep=1), b, atol=1e-14)
    assert np.allclose(partial_trace(rho, HilbertLayout((2, 3, 2)), keep=[0, 2]), tensor(a, c), atol=1e-14)


def test_partial_trace_dimension_mismatch():
    with pytest.raises(DimensionError):
        partial_trace(np.eye(4), HilbertLayout((2, 3)), keep=0)


@pytest.mark.parametrize(
    "op, expected",
    [(SZ, [-1, 1]), (projector(np.array([1, 1]) / np.sqrt(2)), [0, 1]), (HADAMARD, [-1, 1])],
    ids=["sigma_z", "plus_projector", "hadamard"],
)
def test_hermitian_eigenvalues_examples(op, expected):
    assert np.allclose(hermitian_eigenvalues(op), expected, atol=1e-12)


@given(seeds, st.integers(min_value=1, max_value=16))
@settings(max_examples=40)
def test_jacobi_matches_characteristic_roots(seed, n):
    rng = np.random.default_rng(seed)
    g = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    h = g + dagger(g)
    # independent check: sum and sum of squares of eigenvalues are traces
    ev = hermitian_eigenvalues(h)
    assert np.all(np.diff(ev) >= 0)
    assert abs(ev.sum() - np.trace(h).real) < 1e-10
    assert abs((ev**2).sum() - np.trace(h @ h).real) < 1e-9
    assert np.allclose(ev, np.linalg.eigvalsh(h), atol=1e-10)


@given(seeds, st.integers(min_value=1, max_value=5))
def test_projector_eigenvalues_are_zero_or_one(seed, rank):
    rng = np.random.default_rng(seed)
    u = random_unitary(6, rng)
    p = u[:, :rank] @ dagger(u[:, :rank])
    ev = hermitian_eigenvalues(p)
    assert np.all(np.minimum(abs(ev), abs(ev - 1)) < 1e-10)
    assert np.sum(ev > 0.5) == rank


def test_eigenvalues_reject_non_hermitian():
    with pytest.raises(NotHermitianError):
        hermitian_eigenvalues(np.array([[0, 1], [0, 0]]))


def test_check_unitary():
    assert check_unitary(np.eye(4)) == (True, 0.0)
    assert check_unitary(HADAMARD)[0]
    ok, dev = check_unitary(1.001 * I2)
    assert not ok
    assert dev == pytest.approx(1.001**2 - 1, rel=1e-9)


@given(seeds)
def test_dagger_involution(seed):
    rng = np.random.default_rng(seed)
    m = rng.standard_normal((3, 4)) + 1j * rng.standard_normal((3, 4))
    assert np.array_equal(dagger(dagger(m)), m)


def test_random_constructors(rng):
    assert check_unitary(random_unitary(5, rng))[0]
    assert check_density(random_density(5, rng))


def test_layout_total():
    assert HilbertLayout((2, 2, 3)).total == 12
    with pytest.raises(DimensionError):
        HilbertLayout((2, 0))
