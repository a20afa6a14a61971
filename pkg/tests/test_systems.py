from fractions import Fraction
from itertools import combinations, product

import pytest
import sympy

from wedgemaps.errors import DomainError
from wedgemaps.indexkit import binom
from wedgemaps.oracle import rank
from wedgemaps.systems import (
    SystemParams,
    coeffs,
    complement,
    inj_system,
    left_inverse,
    right_inverse,
    surj_system,
)

F = Fraction

# Frozen from the Moore-Penrose left inverse (A^T A)^-1 A^T of the
# injectivity system at m = s+q, p = 1, computed with sympy. The equivariant
# left inverse is unique, so its entries are the coefficients.
PINV_COEFFS = {
    (1, 1): [F(1, 2), F(-1, 2)],
    (2, 1): [F(1, 3), F(-1, 6), F(1, 3)],
    (3, 1): [F(1, 4), F(-1, 12), F(1, 12), F(-1, 4)],
    (0, 3): [F(1)],
    (2, 2): [F(1, 6), F(-1, 6), F(1, 2)],
    (3, 2): [F(1, 10), F(-1, 15), F(1, 10), F(-2, 5)],
    (1, 3): [F(1, 4), F(-3, 4)],
}


def all_params(limit=8):
    for m, p, s in product(range(1, limit + 1), repeat=3):
        if s <= m and m + (m + p - 1 - s) <= limit:
            yield SystemParams(m, p, s)


@pytest.mark.parametrize("qs", sorted(PINV_COEFFS))
def test_coeffs_match_pseudoinverse(qs):
    assert list(coeffs(*qs).values) == PINV_COEFFS[qs]


def test_coeffs_examples():
    assert list(coeffs(1, 1).values) == [F(1, 2), F(-1, 2)]
    assert list(coeffs(0, 3).values) == [F(1)]
    assert coeffs(5, 2)[0] == F(1, binom(7, 2))


def test_pseudoinverse_oracle_live():
    q, s = 2, 1
    m = s + q
    K = range(1, m + q + 1)
    rows, cols = list(combinations(K, m)), list(combinations(K, m - s))
    A = sympy.Matrix([[int(set(T) <= set(R)) for T in cols] for R in rows])
    B = (A.T * A).inv() * A.T
    ours = left_inverse(SystemParams(m, 1, s))
    assert [[F(str(x)) for x in B.row(i)] for i in range(B.rows)] == ours.to_dense()


def test_alternating_variant_agrees_only_up_to_first_order():
    for q in range(0, 5):
        for s in range(1, 4):
            a, b = coeffs(q, s), coeffs(q, s, "alternating")
            assert a.values[:2] == b.values[:2]
    assert coeffs(2, 1, "alternating")[2] == F(-1, 3) != coeffs(2, 1)[2]


def test_alternating_variant_breaks_left_inverse():
    params = SystemParams(3, 1, 1)  # m - s = 2 uses C_2
    B = left_inverse(params, coeffs(params.q, params.s, "alternating"))
    assert not (B @ inj_system(params)).is_identity()


def test_coeffs_reject_bad_args():
    with pytest.raises(DomainError):
        coeffs(-1, 1)
    with pytest.raises(DomainError):
        coeffs(1, 0)


def test_params_validation():
    assert SystemParams(3, 2, 2).q == 2
    for bad in [(0, 1, 1), (1, 1, 2), (2, 0, 1)]:
        with pytest.raises(DomainError):
            SystemParams(*bad)


def test_inj_system_small():
    A = inj_system(SystemParams(2, 1, 1))
    assert A.shape == (3, 3)
    assert all(sum(row) == 2 for row in A.to_dense())
    assert rank(A).rank == 3
    assert inj_system(SystemParams(1, 1, 1)).to_dense() == [[1]]
    A = inj_system(SystemParams(3, 2, 2))
    assert A.shape == (10, 5) and rank(A).rank == 5
    assert all(sum(row) == 3 for row in A.to_dense())


def test_left_inverse_examples():
    params = SystemParams(2, 1, 1)
    B = left_inverse(params)
    # x^{b} = 1/2 (y^{ab} + y^{bc}) - 1/2 y^{ac} with K = {a,b,c} = {1,2,3}
    row = {B.cols[j]: v for (i, j), v in B.entries.items() if B.rows[i] == (2,)}
    assert row == {(1, 2): F(1, 2), (2, 3): F(1, 2), (1, 3): F(-1, 2)}
    assert (B @ inj_system(params)).is_identity()
    assert left_inverse(SystemParams(1, 1, 1)).to_dense() == [[1]]
    params = SystemParams(2, 2, 1)
    B = left_inverse(params)
    assert B.shape == (4, 6)
    assert set(B.entries.values()) <= set(coeffs(2, 1).values)
    assert (B @ inj_system(params)).is_identity()


def test_right_inverse_examples():
    for params in [SystemParams(2, 1, 1), SystemParams(1, 1, 1), SystemParams(3, 1, 2)]:
        A2, B2 = surj_system(params), right_inverse(params)
        assert (A2 @ B2).is_identity()
    params = SystemParams(3, 1, 2)
    assert params.q == 1 and surj_system(params).shape == (binom(4, 3), binom(4, 1))


def test_inverse_identities_full_range():
    for params in all_params():
        assert (left_inverse(params) @ inj_system(params)).is_identity(), params
        assert (surj_system(params) @ right_inverse(params)).is_identity(), params


def test_transpose_duality_under_complements():
    for params in all_params(7):
        A, A2 = inj_system(params), surj_system(params)
        relabelled = A.T.relabel(
            rows=[complement(r, params) for r in A.cols],
            cols=[complement(c, params) for c in A.rows],
        )
        assert relabelled.permuted(A2.rows, A2.cols) == A2
        B, B2 = left_inverse(params), right_inverse(params)
        relabelled = B.T.relabel(
            rows=[complement(r, params) for r in B.cols],
            cols=[complement(c, params) for c in B.rows],
        )
        assert relabelled.permuted(B2.rows, B2.cols) == B2


def test_coeffs_depend_only_on_q_and_s():
    # two parameter sets with the same (q, s) but different m, p
    a, b = SystemParams(3, 1, 1), SystemParams(2, 2, 1)
    assert (a.q, a.s) == (b.q, b.s)
    assert set(left_inverse(a).entries.values()) <= set(coeffs(a.q, a.s).values)
    assert set(left_inverse(b).entries.values()) <= set(coeffs(b.q, b.s).values)


def test_row_sums():
    for params in all_params(7):
        assert all(sum(r) == binom(params.m, params.m - params.s) for r in inj_system(params).to_dense())


def test_csv_dump():
    text = inj_system(SystemParams(2, 1, 1)).to_csv()
    assert text.splitlines()[0] == ",{1},{2},{3}"
    assert text.splitlines()[1] == "{1 2},1,1,0"
