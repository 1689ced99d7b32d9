import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qmultimeter import discriminator as dc
from qmultimeter.instances import CONSTRUCTIONS, induced, random_instance
from qmultimeter.multimeter import (
    InvalidDeviceError,
    MeasurementModel,
    Processor,
    build_measurement,
    build_processor_unitary,
    simulate,
    simulate_pure,
    spin_axis_bank,
)
from qmultimeter.povm import born_probabilities
from qmultimeter.qcore import (
    I2,
    SX,
    HilbertLayout,
    check_unitary,
    computational_basis,
    projector,
    random_basis,
    random_unitary,
    tensor_all,
)

Z2 = computational_basis(2)
S = 1 / np.sqrt(2)


def test_single_identity_processor():
    p = Processor.build([np.eye(2)], data_dim=2)
    assert np.array_equal(build_processor_unitary(p), np.eye(2))


def test_controlled_not_with_program_control():
    p = Processor.build([I2, SX], data_dim=2)
    u = build_processor_unitary(p)
    # data ⊗ program ordering: the program is the least significant index
    cnot = np.zeros((4, 4))
    for d in range(2):
        for k in range(2):
            cnot[(d ^ k) * 2 + k, d * 2 + k] = 1
    assert np.array_equal(u, cnot)


@given(st.integers(0, 2**32 - 1))
@settings(max_examples=30)
def test_processor_unitary_and_program_untouched(seed):
    rng = np.random.default_rng(seed)
    k = int(rng.integers(1, 4))
    p = Processor.build([random_unitary(4, rng) for _ in range(k)], 2, 2, random_basis(k, rng))
    u = build_processor_unitary(p)
    assert check_unitary(u)[0]
    for pk in p.program_basis:
        proj = tensor_all([np.eye(2), np.eye(2), projector(pk)])
        assert np.max(np.abs(u @ proj - proj @ u)) < 1e-12


def test_processor_rejects_bad_inputs():
    with pytest.raises(InvalidDeviceError):
        Processor.build([1.01 * np.eye(2)], data_dim=2)
    with pytest.raises(InvalidDeviceError):
        Processor.build([I2, I2], data_dim=2, program_basis=[Z2[0], Z2[0]])


def test_measurement_computational_projectors():
    m = MeasurementModel.computational(HilbertLayout((2, 2, 2)))
    es = build_measurement(m)
    assert len(es) == 8
    for idx, e in enumerate(es):
        assert e[idx, idx] == 1 and np.count_nonzero(e) == 1


def test_measurement_completeness_and_orthogonality(rng):
    m = MeasurementModel(tuple(random_basis(2, rng)), tuple(random_basis(3, rng)), tuple(random_basis(2, rng)))
    es = build_measurement(m)
    assert np.max(np.abs(sum(es) - np.eye(12))) < 1e-12
    for a in range(len(es)):
        for b in range(a + 1, len(es)):
            assert np.max(np.abs(es[a] @ es[b])) < 1e-12


def test_measurement_rejects_incomplete_basis():
    with pytest.raises(InvalidDeviceError):
        MeasurementModel((Z2[0], np.array([S, S])), tuple(Z2), tuple(Z2))


def test_trivial_device_on_basis_state():
    p = Processor.build([np.eye(4)], data_dim=2, ancilla_dim=2)
    # program dimension is 1 here, so measure (i, j, 0)
    m = MeasurementModel.computational(p.layout)
    t = simulate_pure(p, m, Z2[1], Z2[0], np.ones(1))
    assert t[1, 0, 0] == pytest.approx(1.0)
    assert t.sum() == pytest.approx(1.0)


def test_trivial_device_three_qubits():
    p = Processor.build([np.eye(4), np.eye(4)], data_dim=2, ancilla_dim=2)
    t = simulate_pure(p, MeasurementModel.computational(p.layout), Z2[1], Z2[0], Z2[1])
    expected = np.zeros((2, 2, 2))
    expected[1, 0, 1] = 1
    assert np.allclose(t, expected, atol=1e-15)


def test_simulate_layout_mismatch():
    p = Processor.build([np.eye(2)], data_dim=2)
    with pytest.raises(ValueError):
        simulate(p, MeasurementModel.computational(HilbertLayout((2, 2, 1))), I2 / 2, I2 / 2, np.ones((1, 1)))


@pytest.mark.parametrize("kind", CONSTRUCTIONS)
@pytest.mark.parametrize("seed", range(100, 110))
def test_marginals_reproduce_constructions(kind, seed):
    inst = random_instance(seed, kind)
    table = inst.oracle()
    assert table.sum() == pytest.approx(1.0, abs=1e-10)
    p = born_probabilities(induced(inst, kind), inst.rho_d)
    assert np.allclose(p, table.ravel(), atol=1e-10)


def test_matched_marginal_over_ancilla_and_program(rng):
    inst = random_instance(5, "matched")
    table = inst.oracle()
    p = born_probabilities(induced(inst, "matched"), inst.rho_d).reshape(table.shape)
    assert np.allclose(p.sum(axis=(1, 2)), table.sum(axis=(1, 2)), atol=1e-12)


@given(st.integers(0, 2**32 - 1), st.floats(0, 2 * np.pi))
@settings(max_examples=30)
def test_global_phase_invariance(seed, phase):
    inst = random_instance(seed % 1000, "general")
    before = inst.oracle()
    inst.unitaries[:] = [np.exp(1j * phase) * u for u in inst.unitaries]
    assert np.allclose(inst.oracle(), before, atol=1e-12)


def test_branch_phase_is_observable_with_coherent_program():
    # a phase on one branch only is relative, and a coherent program sees it
    inst = random_instance(7, "general")
    before = inst.oracle()
    inst.unitaries[0] = 1j * inst.unitaries[0]
    assert not np.allclose(inst.oracle(), before, atol=1e-6)


def test_spin_axis_bank_unitaries():
    bank = spin_axis_bank()
    assert len(bank.unitaries) == 3
    assert all(check_unitary(u)[0] for u in bank.unitaries)


@pytest.mark.parametrize("program, expected", [(0, [0.5, 0.5]), (1, [1.0, 0.0])])
def test_spin_axis_on_plus(program, expected):
    bank = spin_axis_bank()
    m = MeasurementModel.computational(bank.layout)
    t = simulate_pure(bank, m, np.array([S, S]), np.ones(1), computational_basis(3)[program])
    assert np.allclose(t[:, 0, program], expected, atol=1e-12)


def test_discriminator_wiring_success_total():
    pair, design = dc.StatePair.from_phi(np.pi / 3), dc.DiscriminatorDesign(np.pi / 4)
    prog = dc.solve_program(pair, design)
    t = simulate_pure(dc.discriminator_processor(design), dc.discriminator_measurement(), pair.kets()[0],
                      prog.ket(), np.ones(1))
    assert t[0, 0, 0] == pytest.approx(0.4844371, abs=2e-7)
    assert t[0, 0, 0] == pytest.approx(dc.success_probability(pair, design), abs=1e-12)
