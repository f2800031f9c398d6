import numpy as np
import pytest

from quditproc import (
    DenseOperator,
    TRACELESS_QUBIT_LABELS,
    basis_state,
    bell_state,
    example1_operator,
    example1_program,
    example2_operator,
    example2_program,
    exchange_operator,
    family_operator,
    family_program,
    hs_expand,
    inner_product,
    measurement_for_labels,
    measurement_full,
    measurement_restricted,
    orthogonal_qubit_state,
    prepare_exchange_program,
    prepare_reflection_program,
    random_operator,
    random_state,
    reflection_operator,
    reflection_program,
    reflection_program_factored,
    synthesize_program,
    u_mn,
)

from conftest import max_abs_diff


def reflection_coeffs_closed_form(phi):
    """Independent oracle: q_mn = d_m0 d_n0 - (2/N) sum_k e^{2 pi i k m/N} b_k* b_{k-n}."""
    b = phi.amplitudes
    n_dim = phi.dim
    q = np.zeros((n_dim, n_dim), dtype=complex)
    for m in range(n_dim):
        for n in range(n_dim):
            total = 0.0
            for k in range(n_dim):
                total += np.exp(2j * np.pi * k * m / n_dim) * np.conj(b[k]) * b[(k - n) % n_dim]
            q[m, n] = (1.0 if (m, n) == (0, 0) else 0.0) - (2.0 / n_dim) * total
    return q


def test_expand_identity():
    exp = hs_expand(DenseOperator(3, np.eye(3)))
    expected = np.zeros((3, 3))
    expected[0, 0] = 1
    assert max_abs_diff(exp.coeffs, expected) < 1e-14


def test_expand_qubit_reflection_matches_pauli_coefficients(rng):
    for _ in range(10):
        phi = random_state(2, 1, rng)
        mu, nu = phi.amplitudes
        q = hs_expand(reflection_operator(phi)).coeffs
        assert abs(q[0, 0]) < 1e-12
        assert abs(q[0, 1] - (-(mu * np.conj(nu) + np.conj(mu) * nu))) < 1e-12
        assert abs(q[1, 1] - (mu * np.conj(nu) - np.conj(mu) * nu)) < 1e-12
        assert abs(q[1, 0] - (abs(nu) ** 2 - abs(mu) ** 2)) < 1e-12


@pytest.mark.parametrize("dim", [2, 3, 4, 5])
def test_expand_reflection_matches_general_closed_form(dim, rng):
    for _ in range(5):
        phi = random_state(dim, 1, rng)
        q = hs_expand(reflection_operator(phi)).coeffs
        assert max_abs_diff(q, reflection_coeffs_closed_form(phi)) < 1e-12


@pytest.mark.parametrize("dim", [2, 3, 4, 5])
def test_expansion_round_trip_and_parseval(dim, rng):
    for _ in range(20):
        op = random_operator(dim, rng)
        exp = hs_expand(op)
        assert max_abs_diff(exp.reconstruct().entries, op.entries) < 1e-10
        assert abs(exp.gram_norm - op.gram_trace() / dim) < 1e-10


def test_expand_rejects_zero_operator():
    with pytest.raises(ValueError):
        hs_expand(DenseOperator(2, np.zeros((2, 2))))


def test_program_for_basis_operator_is_its_bell_state():
    for dim in (2, 3, 4):
        prog = synthesize_program(u_mn(dim, (1, dim - 1)))
        assert prog.support == ((1, dim - 1),)
        expected = bell_state(dim, (1, dim - 1)).amplitudes
        # a basis operator's program is its own Bell state up to the
        # coefficient's phase, which here is +1
        assert max_abs_diff(prog.state.amplitudes, expected) < 1e-12


def test_reflection_program_coefficient_vector(rng):
    phi = random_state(2, 1, rng)
    mu, nu = phi.amplitudes
    prog = reflection_program(phi)
    expected = (
        -(mu * np.conj(nu) + np.conj(mu) * nu) * bell_state(2, (0, 1)).amplitudes
        + (mu * np.conj(nu) - np.conj(mu) * nu) * bell_state(2, (1, 1)).amplitudes
        + (abs(nu) ** 2 - abs(mu) ** 2) * bell_state(2, (1, 0)).amplitudes
    )
    assert max_abs_diff(prog.state.amplitudes, expected) < 1e-12


def test_two_term_rotation_program():
    theta = 0.7
    prog = example2_program(theta, 6)
    expected = np.cos(theta) * bell_state(6, (0, 0)).amplitudes + 1j * np.sin(theta) * bell_state(
        6, (0, 3)
    ).amplitudes
    assert max_abs_diff(prog.state.amplitudes, expected) < 1e-12


@pytest.mark.parametrize("dim", range(2, 9))
def test_full_measurement_is_normalized(dim):
    m = measurement_full(dim)
    assert abs(np.linalg.norm(m.state.amplitudes) - 1) < 1e-12


def test_full_measurement_overlap_with_each_bell():
    dim = 4
    m = measurement_full(dim)
    for mm in range(dim):
        for nn in range(dim):
            assert abs(inner_product(m.state, bell_state(dim, (mm, nn))) - 1 / dim) < 1e-12


def test_three_label_measurement_matches_qubit_recipe():
    m = measurement_for_labels(2, TRACELESS_QUBIT_LABELS)
    expected = (
        bell_state(2, (0, 1)).amplitudes
        + bell_state(2, (1, 1)).amplitudes
        + bell_state(2, (1, 0)).amplitudes
    ) / np.sqrt(3)
    assert max_abs_diff(m.state.amplitudes, expected) < 1e-15


def test_restricted_measurement_single_support_is_bell_state():
    exp = hs_expand(u_mn(3, (2, 1)))
    m = measurement_restricted(exp)
    assert m.support == ((2, 1),)
    assert max_abs_diff(np.abs(m.state.amplitudes), np.abs(bell_state(3, (2, 1)).amplitudes)) < 1e-12


def test_restricted_measurement_two_term_rotation():
    exp = hs_expand(example2_operator(0.3, 6))
    m = measurement_restricted(exp)
    assert set(m.support) == {(0, 0), (0, 3)}
    expected = (bell_state(6, (0, 0)).amplitudes + bell_state(6, (0, 3)).amplitudes) / np.sqrt(2)
    assert max_abs_diff(m.state.amplitudes, expected) < 1e-12


def test_measurement_rejects_empty_labels():
    with pytest.raises(ValueError):
        measurement_for_labels(2, [])


@pytest.mark.parametrize("l", [1, 2, 3])
def test_family_support_size(l):
    exp = hs_expand(family_operator(l, 0.37))
    support = exp.support()
    assert len(support) == 1 + 2 ** (l - 1)
    # identity label plus odd-phase diagonals only
    assert (0, 0) in support
    for m, n in support:
        assert n == 0
        if (m, n) != (0, 0):
            assert m % 2 == 1


def test_family_l1_is_qubit_phase_rotation():
    exp = hs_expand(family_operator(1, 0.37))
    assert set(exp.support()) == {(0, 0), (1, 0)}


def test_family_l2_equals_example1():
    assert max_abs_diff(family_operator(2, 1.1).entries, example1_operator(1.1).entries) == 0


def test_example1_program_at_zero_angle_is_shared_bell_state():
    prog = example1_program(0.0)
    assert max_abs_diff(prog.state.amplitudes, bell_state(4, (0, 0)).amplitudes) < 1e-12
    assert prog.support == ((0, 0),)


def test_example1_diagonal_form():
    phi = 0.9
    expected = np.diag([np.exp(1j * phi)] * 2 + [np.exp(-1j * phi)] * 2)
    assert max_abs_diff(example1_operator(phi).entries, expected) < 1e-12


def test_example1_generic_support_is_three():
    assert len(example1_program(0.7).support) == 3


def test_example2_program_limits():
    assert max_abs_diff(example2_program(0.0, 4).state.amplitudes, bell_state(4, (0, 0)).amplitudes) < 1e-12
    quarter = example2_program(np.pi / 2, 4)
    assert max_abs_diff(quarter.state.amplitudes, 1j * bell_state(4, (0, 2)).amplitudes) < 1e-12


@pytest.mark.parametrize("dim", [2, 4, 6, 8])
def test_example2_operator_unitary(dim):
    for theta in np.linspace(0.0, 2.1, 5):
        assert example2_operator(theta, dim).is_unitary(1e-12)


def test_example2_rejects_odd_dimension():
    with pytest.raises(ValueError):
        example2_operator(0.3, 3)


def test_reflection_program_for_axis_state():
    # phi = |0>: operator diag(-1, 1), single support label with weight -1
    phi = basis_state(2, 1, [0])
    prog = reflection_program(phi)
    assert prog.support == ((1, 0),)
    assert max_abs_diff(prog.state.amplitudes, -bell_state(2, (1, 0)).amplitudes) < 1e-12
    q = hs_expand(reflection_operator(phi)).coeffs
    assert abs(q[1, 0] + 1) < 1e-12


@pytest.mark.parametrize("dim", [2, 3, 4, 5])
def test_reflection_is_self_adjoint_unitary(dim, rng):
    op = reflection_operator(random_state(dim, 1, rng))
    assert op.is_unitary(1e-12)
    assert max_abs_diff(op.entries, op.entries.conj().T) < 1e-12
    assert abs(op.gram_trace() - dim) < 1e-12


@pytest.mark.parametrize("dim", [2, 3, 4])
def test_factored_reflection_program_matches_synthesis(dim, rng):
    for _ in range(5):
        phi = random_state(dim, 1, rng)
        a = reflection_program_factored(phi).amplitudes
        b = reflection_program(phi).state.amplitudes
        assert max_abs_diff(a, b) < 1e-10


def test_prepared_reflection_program_matches_synthesis(rng):
    for _ in range(10):
        phi = random_state(2, 1, rng)
        a = prepare_reflection_program(phi).amplitudes
        b = reflection_program(phi).state.amplitudes
        assert max_abs_diff(a, b) < 1e-12


def test_prepared_exchange_program_matches_synthesis(rng):
    for _ in range(10):
        phi = random_state(2, 1, rng)
        a = prepare_exchange_program(phi).amplitudes
        b = synthesize_program(exchange_operator(phi)).state.amplitudes
        assert max_abs_diff(a, b) < 1e-12


def test_orthogonal_qubit_state_is_orthogonal(rng):
    phi = random_state(2, 1, rng)
    assert abs(inner_product(orthogonal_qubit_state(phi), phi)) < 1e-14


def test_named_programs_match_generic_synthesis(rng):
    phi = random_state(3, 1, rng)
    pairs = [
        (reflection_program(phi), reflection_operator(phi)),
        (example1_program(0.7), example1_operator(0.7)),
        (family_program(3, 0.43), family_operator(3, 0.43)),
        (example2_program(0.3, 6), example2_operator(0.3, 6)),
    ]
    for prog, op in pairs:
        direct = synthesize_program(op)
        assert max_abs_diff(prog.state.amplitudes, direct.state.amplitudes) < 1e-12
        assert prog.support == direct.support == hs_expand(op).support()
        assert abs(np.linalg.norm(prog.state.amplitudes) - 1) < 1e-12


def test_unitary_program_norm_and_support_count(rng):
    from quditproc import random_unitary

    for dim in (2, 3, 4):
        op = random_unitary(dim, rng)
        exp = hs_expand(op)
        prog = synthesize_program(op)
        assert abs(np.linalg.norm(prog.state.amplitudes) - 1) < 1e-12
        above = np.count_nonzero(np.abs(exp.coeffs) > 1e-10 * np.abs(exp.coeffs).max())
        assert len(prog.support) == above
