import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bornjordan.algebra import I, MINUS_I_HBAR, NCPoly, normal_form
from bornjordan.matrixrep import (MatrixOperator, StateVector, dump_matrix, fock_generators,
                                  hermitize, load_matrix, lowering, to_matrix)
from bornjordan.quantize import weyl_quantize

# Largest anti-Hermitian entry of the normal-ordered Weyl(p^2 q^2) matrix at N = 32.
HERMITIZE_GOLDEN_BOUND = 250.0


def test_n1_generators_are_zero():
    qm, pm = fock_generators(1)
    assert np.array_equal(qm.entries, [[0]])
    assert np.array_equal(pm.entries, [[0]])


def test_n2_generators():
    qm, pm = fock_generators(2)
    r = np.sqrt(0.5)
    np.testing.assert_allclose(qm.entries, [[0, r], [r, 0]], atol=1e-15)
    np.testing.assert_allclose(pm.entries, [[0, -1j * r], [1j * r, 0]], atol=1e-15)


@pytest.mark.parametrize("N", [2, 8, 32])
@pytest.mark.parametrize("hbar", [1.0, 0.5])
def test_truncated_commutator(N, hbar):
    qm, pm = (g.entries for g in fock_generators(N, hbar))
    expected = 1j * hbar * np.eye(N)
    expected[-1, -1] = 1j * hbar * (1 - N)
    np.testing.assert_allclose(qm @ pm - pm @ qm, expected, atol=1e-12)


@pytest.mark.parametrize("N", [1, 5, 40])
def test_generators_exactly_hermitian(N):
    for g in fock_generators(N, 0.7):
        assert np.array_equal(g.entries, g.entries.conj().T)


def test_lowering():
    a = lowering(4)
    assert a[0, 1] == 1 and a[2, 3] == np.sqrt(3)
    np.testing.assert_allclose(np.diag(a.conj().T @ a), [0, 1, 2, 3])


def test_identity_word():
    np.testing.assert_array_equal(to_matrix(NCPoly.one(), 6).entries, np.eye(6))


def test_hbar_scaling():
    np.testing.assert_allclose(to_matrix(NCPoly.word("q"), 8, 4.0).entries,
                               2 * fock_generators(8, 1.0)[0].entries)


def test_qp_minus_i_hbar_matches_pq_away_from_edge():
    N = 10
    a = to_matrix(NCPoly.word("qp") + NCPoly.scalar(MINUS_I_HBAR), N).entries
    b = to_matrix(NCPoly.word("pq"), N).entries
    np.testing.assert_allclose(a[:-1, :-1], b[:-1, :-1], atol=1e-12)
    assert abs(a[-1, -1] - b[-1, -1]) > 1


words = st.text(alphabet="qp", max_size=4)


@settings(max_examples=60, deadline=None)
@given(st.dictionaries(words, st.integers(-3, 3), max_size=4))
def test_normal_form_agrees_in_interior(coeffs):
    poly = NCPoly(coeffs)
    N, edge = 16, 5
    a = to_matrix(poly, N).entries
    b = to_matrix(normal_form(poly), N).entries
    np.testing.assert_allclose(a[:N - edge, :N - edge], b[:N - edge, :N - edge], atol=1e-10)


def test_hermitize_examples():
    qm = fock_generators(6)[0]
    herm, dev = hermitize(qm)
    assert dev == 0.0
    np.testing.assert_array_equal(herm.entries, qm.entries)
    assert hermitize(MatrixOperator([[3 + 1j]], 1.0))[1] == 1.0


def test_hermitize_weyl_p2q2():
    word_sum = to_matrix(weyl_quantize((2, 2)), 32)
    assert hermitize(word_sum)[1] < 1e-12
    ordered = to_matrix(normal_form(weyl_quantize((2, 2))), 32)
    _, dev = hermitize(ordered)
    assert 1.0 < dev < HERMITIZE_GOLDEN_BOUND
    anti = ordered.entries - ordered.entries.conj().T
    rows = np.nonzero(np.abs(anti) > 1e-9)[0]
    assert rows.min() >= 32 - 3


def test_dump_load_roundtrip(tmp_path):
    M = to_matrix(NCPoly.word("qpq") + NCPoly.word("p", I * 2), 5, hbar=0.3)
    for name in ("m.csv", "m.json"):
        dump_matrix(M, tmp_path / name)
        back = load_matrix(tmp_path / name, hbar=0.3)
        np.testing.assert_array_equal(back.entries, M.entries)
        assert back.hbar == 0.3


def test_matrix_operator_validation():
    with pytest.raises(ValueError):
        MatrixOperator(np.zeros((2, 3)), 1.0)
    with pytest.raises(ValueError):
        MatrixOperator([[np.nan]], 1.0)
    with pytest.raises(ValueError):
        MatrixOperator([[1.0]], 0.0)
    M = MatrixOperator([[1.0]], 1.0)
    with pytest.raises(ValueError):
        M.entries[0, 0] = 2


def test_state_vector():
    with pytest.raises(ValueError):
        StateVector([1.0, 1.0])
    with pytest.raises(ValueError):
        StateVector([])
    psi = StateVector.fock_superposition(8)
    np.testing.assert_allclose(np.abs(psi.amplitudes[:4]), 0.5)
    assert psi.tail_weight() == 0.0
    assert StateVector.normalized([0, 0, 0, 1]).tail_weight() == 1.0
