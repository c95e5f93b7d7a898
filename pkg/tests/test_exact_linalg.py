"""Normal forms, kernels and subquotients against independent references."""

from __future__ import annotations

import pytest
from hypothesis import given, settings, strategies as st

from hopfcoh.exact_linalg import (
    GF,
    QQ,
    ZZ,
    ContainmentError,
    Matrix,
    ModulePresentation,
    UnsupportedRingError,
    Zmod,
    column_basis,
    in_span,
    invariant_factors_and_rank,
    kernel_basis,
    preimage_lattice,
    rank,
    ring_from_token,
    smith_normal_form,
    solve,
    subquotient,
    torsion_exponent,
)

import oracles


def diag_of(m):
    return [m.data[i][i] for i in range(min(m.rows, m.cols))]


class TestSmithNormalForm:
    def test_diag_2_3(self):
        m = Matrix(ZZ, [[2, 0], [0, 3]])
        U, D, V = smith_normal_form(m)
        assert diag_of(D) == [1, 6]
        assert U * m * V == D
        assert oracles.snf_invariants([[2, 0], [0, 3]]) == (1, 6)

    def test_zero_matrix(self):
        m = Matrix.zeros(ZZ, 2, 3)
        U, D, V = smith_normal_form(m)
        assert D.is_zero()
        assert U * m * V == D

    def test_identity_fixed(self):
        m = Matrix.identity(ZZ, 3)
        U, D, V = smith_normal_form(m)
        assert diag_of(D) == [1, 1, 1]

    def test_rejects_fields(self):
        with pytest.raises(UnsupportedRingError):
            smith_normal_form(Matrix.identity(QQ, 2))
        with pytest.raises(UnsupportedRingError):
            smith_normal_form(Matrix.identity(GF(5), 2))

    def test_divisibility_chain_example(self):
        rows = [[4, 0, 0], [0, 6, 0], [0, 0, 9]]
        _, D, _ = smith_normal_form(Matrix(ZZ, rows))
        assert diag_of(D) == list(oracles.snf_invariants(rows))

    @settings(max_examples=60, deadline=None)
    @given(st.lists(st.lists(st.integers(-9, 9), min_size=3, max_size=3),
                    min_size=2, max_size=4))
    def test_matches_reference_and_witnesses(self, rows):
        m = Matrix(ZZ, rows)
        U, D, V = smith_normal_form(m)
        assert U * m * V == D
        got = [d for d in diag_of(D) if d != 0]
        assert tuple(got) == oracles.snf_invariants(rows)
        for a, b in zip(got, got[1:]):
            assert b % a == 0
        # witnesses are unimodular
        assert abs(_det_int(U)) == 1
        assert abs(_det_int(V)) == 1

    def test_mod_ring_snf(self):
        m = Matrix(Zmod(4), [[2]])
        U, D, V = smith_normal_form(m)
        assert D.data[0][0] == 2
        assert U * m * V == D


def _det_int(m):
    # cofactor expansion; witness matrices here are small
    n = m.rows
    if n == 0:
        return 1
    if n == 1:
        return m.data[0][0]
    total = 0
    for j in range(n):
        a = m.data[0][j]
        if a:
            minor = m.submatrix(range(1, n), [c for c in range(n) if c != j])
            total += (-1) ** j * a * _det_int(minor)
    return total


class TestKernels:
    def test_difference_kernel(self):
        k = kernel_basis(Matrix(ZZ, [[1, -1]]))
        assert k.columns() == [(1, 1)]
        enum = oracles.kernel_by_enumeration([[1, -1]], 1)
        assert (1, 1) in enum

    def test_mod4_kernel(self):
        k = kernel_basis(Matrix(Zmod(4), [[2]]))
        assert k.columns() == [(2,)]

    def test_field_kernel_of_identity_is_empty(self):
        assert kernel_basis(Matrix.identity(QQ, 2)).cols == 0

    def test_kernel_saturated(self):
        # the saturated kernel of [2, -2] over Z is generated by (1, 1)
        k = kernel_basis(Matrix(ZZ, [[2, -2]]))
        assert sorted(k.columns()) == [(1, 1)]

    @settings(max_examples=60, deadline=None)
    @given(st.lists(st.lists(st.integers(-6, 6), min_size=4, max_size=4),
                    min_size=2, max_size=3))
    def test_kernel_annihilates_and_has_right_rank(self, rows):
        m = Matrix(ZZ, rows)
        k = kernel_basis(m)
        assert (m * k).is_zero()
        assert k.cols == oracles.rational_nullity(rows)

    @settings(max_examples=40, deadline=None)
    @given(st.lists(st.lists(st.integers(0, 4), min_size=3, max_size=3),
                    min_size=2, max_size=3))
    def test_modp_kernel_dimension(self, rows):
        p = 5
        m = Matrix(GF(p), rows)
        k = kernel_basis(m)
        assert (m * k).is_zero()
        assert k.cols == 3 - oracles.modp_rank(rows, p)


class TestSolve:
    def test_integer_divisibility(self):
        m = Matrix(ZZ, [[2]])
        assert solve(m, Matrix.column(ZZ, [6])).columns() == [(3,)]
        assert solve(m, Matrix.column(ZZ, [3])) is None

    def test_mod_ring_solution_uses_lift(self):
        m = Matrix(Zmod(4), [[2]])
        x = solve(m, Matrix.column(Zmod(4), [2]))
        assert x is not None
        assert (m * x).columns() == [(2,)]

    def test_field_inconsistent(self):
        m = Matrix(QQ, [[1, 1], [1, 1]])
        assert solve(m, Matrix.column(QQ, [0, 1])) is None

    @settings(max_examples=40, deadline=None)
    @given(st.lists(st.lists(st.integers(-5, 5), min_size=3, max_size=3),
                    min_size=3, max_size=3),
           st.lists(st.integers(-3, 3), min_size=3, max_size=3))
    def test_solutions_verify(self, rows, xvec):
        m = Matrix(ZZ, rows)
        b = m * Matrix.column(ZZ, xvec)
        x = solve(m, b)
        assert x is not None
        assert m * x == b


class TestSpansAndSubquotients:
    def test_column_basis_scales(self):
        m = Matrix(ZZ, [[2, 4], [0, 0]])
        basis = column_basis(m)
        assert basis.cols == 1
        assert in_span(Matrix.column(ZZ, [2, 0]), basis)
        assert not in_span(Matrix.column(ZZ, [1, 0]), basis)

    def test_subquotient_z2_mod_2z(self):
        pres = subquotient(2, Matrix.identity(ZZ, 2), Matrix(ZZ, [[2], [0]]))
        assert pres == ModulePresentation(ZZ, 1, (2,))
        assert oracles.abelian_group_from_cokernel([[2], [0]], 2) == (1, (2,))

    def test_subquotient_equal_spans_trivial(self):
        pres = subquotient(2, Matrix.identity(ZZ, 2), Matrix.identity(ZZ, 2))
        assert pres.is_zero

    def test_subquotient_field_dimension(self):
        pres = subquotient(3, Matrix.identity(GF(2), 3),
                           Matrix(GF(2), [[1], [0], [0]]))
        assert pres == ModulePresentation(GF(2), 2, ())

    def test_subquotient_containment_enforced(self):
        ker = Matrix(ZZ, [[1], [0]])
        img = Matrix(ZZ, [[0], [1]])
        with pytest.raises(ContainmentError):
            subquotient(2, ker, img)

    def test_mod4_subquotient(self):
        # Z/4 ambient of rank 1, kernel everything, image = (2)
        ring = Zmod(4)
        pres = subquotient(1, Matrix.identity(ring, 1), Matrix(ring, [[2]]))
        assert pres == ModulePresentation(ring, 0, (2,))

    def test_preimage_lattice(self):
        a = Matrix(ZZ, [[1, 0], [0, 2]])
        span = Matrix(ZZ, [[0], [1]])
        pre = preimage_lattice(a, span)
        # {x : a x in span} = {(0, t)}
        assert in_span(Matrix.column(ZZ, [0, 1]), pre)
        assert not in_span(Matrix.column(ZZ, [1, 0]), pre)

    @settings(max_examples=40, deadline=None)
    @given(st.lists(st.lists(st.integers(-4, 4), min_size=2, max_size=2),
                    min_size=2, max_size=2))
    def test_quotient_by_column_span(self, rows):
        pres = subquotient(2, Matrix.identity(ZZ, 2), Matrix(ZZ, rows))
        want = oracles.abelian_group_from_cokernel(rows, 2)
        assert (pres.free_rank, pres.invariant_factors) == want


class TestPresentations:
    def test_torsion_exponent(self):
        assert torsion_exponent(ModulePresentation(ZZ, 0, (2, 4))) == 4
        assert torsion_exponent(ModulePresentation(ZZ, 2, ())) is None
        assert torsion_exponent(ModulePresentation(ZZ, 0, (6,))) == 6

    def test_describe(self):
        assert ModulePresentation(ZZ, 1, (2,)).describe() == "Z + Z/2"
        assert ModulePresentation(GF(2), 3, ()).describe() == "F2^3"
        assert ModulePresentation(ZZ, 0, ()).describe() == "0"

    def test_annihilated_by(self):
        assert ModulePresentation(ZZ, 0, (2, 4)).annihilated_by(4)
        assert not ModulePresentation(ZZ, 0, (2, 4)).annihilated_by(2)
        assert not ModulePresentation(ZZ, 1, ()).annihilated_by(12)

    def test_rank_over_fraction_field(self):
        assert rank(Matrix(ZZ, [[2, 4], [1, 2]])) == 1
        assert rank(Matrix.identity(QQ, 2)) == 2

    def test_ring_tokens(self):
        assert ring_from_token("Z") == ZZ
        assert ring_from_token("F7") == GF(7)
        assert ring_from_token("Z/12") == Zmod(12)

    def test_fast_route_matches_witness_route(self):
        rows = [[6, 4, 2], [2, 8, 0], [0, 0, 5]]
        diag, r = invariant_factors_and_rank(Matrix(ZZ, rows))
        assert tuple(diag) == oracles.snf_invariants(rows)
        assert r == oracles.integer_rank(rows)
