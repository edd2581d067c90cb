import numpy as np
import pytest

from core.exceptions import DimensionError, NonFiniteError, NotSelfAdjointError, NotUnitaryError, PreconditionError, ScenarioError, ValidationError
from core.fixtures import format_matrices, parse_matrices, read_matrices, write_matrices
from core.linalg import (
    PVM,
    Factor,
    as_square,
    complete_isometry,
    configuration_pvm,
    dagger,
    is_unitary,
    partial_trace,
    pvm_residual,
    require_self_adjoint,
    require_unitary,
    schur_hadamard,
    symmetrize,
    tensor,
    tensor_all,
    unitarity_residual,
)


def test_schur_hadamard_is_entrywise():
    product = schur_hadamard([[1, 2], [3, 4]], [[0, 1], [1, 0]])
    assert np.array_equal(product, np.array([[0, 2], [3, 0]], dtype=complex))
    c = np.cos(np.pi / 4)
    U = np.array([[c, -c], [c, c]])
    assert np.allclose(schur_hadamard(U.conj(), U), np.full((2, 2), 0.5))
    with pytest.raises(DimensionError):
        schur_hadamard(np.eye(2), np.eye(3))


def test_tensor_uses_pair_index_convention():
    e = np.eye(3)
    f = np.eye(2)
    product = tensor(e[:, [2]], f[:, [1]])
    assert np.flatnonzero(product)[0] == 2 * 2 + 1


def test_tensor_all_matches_nested_kron(unitary):
    a, b, c = unitary(2), unitary(3), unitary(2)
    assert np.allclose(tensor_all([a, b, c]), np.kron(np.kron(a, b), c))


def test_partial_trace_of_product(hermitian):
    A = hermitian(2)
    B = np.diag([0.25, 0.75, 0.0])
    joint = tensor(A, B)
    assert np.allclose(partial_trace(joint, (2, 3), Factor.FIRST), A * np.trace(B))
    assert np.allclose(partial_trace(joint, (2, 3), Factor.SECOND), B * np.trace(A))


def test_partial_trace_rejects_bad_dims():
    with pytest.raises(DimensionError):
        partial_trace(np.eye(4), (3, 2))


def test_complete_isometry_keeps_columns_and_is_unitary(unitary):
    U = unitary(5)
    V = U[:, :2]
    W = complete_isometry(V)
    assert W.shape == (5, 5)
    assert np.array_equal(W[:, :2], V)
    assert unitarity_residual(W) < 1e-12


def test_complete_isometry_of_canonical_columns_is_permutation():
    V = np.eye(4)[:, [1, 3]]
    W = complete_isometry(V)
    assert np.array_equal(W, np.eye(4)[:, [1, 3, 0, 2]])


def test_complete_isometry_rejects_non_orthonormal():
    with pytest.raises(PreconditionError):
        complete_isometry(np.array([[1.0, 1.0], [0.0, 1.0], [0.0, 0.0]]))


def test_random_unitary_is_unitary(unitary):
    for n in (1, 2, 5, 8):
        assert is_unitary(unitary(n))


def test_require_unitary_reports_residual():
    with pytest.raises(NotUnitaryError) as info:
        require_unitary(np.array([[1.0, 0.0], [0.0, 0.5]]), "U")
    assert "U is not unitary" in info.value.message


def test_require_self_adjoint():
    with pytest.raises(NotSelfAdjointError):
        require_self_adjoint(np.array([[0.0, 1.0], [0.0, 0.0]]))


def test_symmetrize_returns_hermitian_part():
    M = np.array([[1.0, 2.0j], [0.0, 3.0]])
    H, residual = symmetrize(M)
    assert np.allclose(H, dagger(H))
    assert residual == pytest.approx(1.0)


def test_as_square_rejects_non_finite():
    with pytest.raises(NonFiniteError):
        as_square([[1.0, np.nan], [0.0, 1.0]])
    with pytest.raises(DimensionError):
        as_square(np.ones((2, 3)))


def test_configuration_pvm_is_a_pvm():
    pvm = configuration_pvm(4)
    assert len(pvm) == 4
    assert pvm_residual(pvm.projectors, 4) == 0.0


def test_pvm_rejects_incomplete_family():
    P0 = np.diag([1.0, 0.0, 0.0]).astype(complex)
    P1 = np.diag([0.0, 1.0, 0.0]).astype(complex)
    with pytest.raises(ValidationError):
        PVM(dim=3, projectors=(P0, P1))


def test_matrix_fixture_format_is_exact(unitary, tmp_path):
    matrices = [unitary(3), np.eye(2)]
    path = write_matrices(tmp_path / "m.txt", matrices, header="two matrices\nsecond line")
    loaded = read_matrices(path)
    assert len(loaded) == 2
    assert np.array_equal(loaded[0], matrices[0])
    assert np.array_equal(loaded[1], matrices[1])
    assert path.read_text().startswith("# two matrices\n# second line\n3 3\n")


def test_parse_matrices_reports_line():
    text = format_matrices([np.eye(2)]).replace("0+0j", "zero", 1)
    with pytest.raises(ScenarioError) as info:
        parse_matrices(text, "bad.txt")
    assert info.value.message.startswith("bad.txt:2")


def test_read_matrices_missing_file(tmp_path):
    with pytest.raises(ScenarioError):
        read_matrices(tmp_path / "missing.txt")
