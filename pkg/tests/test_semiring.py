"""Scalar/matrix arithmetic, graph views, and the implicit-equation
solver."""

import random

import pytest

from helpers import (assert_valid_cycle_witness, brute_force_path_exists,
                     random_acyclic_matrix, random_matrix)
from maxplusnet import (EPS, CycleError, DimensionError, MaxPlusMatrix,
                        SpecValidationError, graph_view, mat_vec, oplus,
                        otimes, solve_implicit, vec_oplus)
from maxplusnet.semiring import format_scalar, parse_scalar


class TestScalars:
    def test_oplus_finites(self):
        assert oplus(3, 5) == 5

    def test_oplus_null_element(self):
        assert oplus(EPS, 7) == 7
        assert oplus(7, EPS) == 7

    def test_oplus_idempotent(self):
        assert oplus(4, 4) == 4

    def test_otimes_finites(self):
        assert otimes(3, 5) == 8

    def test_otimes_absorption(self):
        assert otimes(EPS, 7) is EPS
        assert otimes(7, EPS) is EPS
        assert otimes(EPS, EPS) is EPS

    def test_otimes_identity(self):
        assert otimes(0, 9) == 9

    def test_eps_is_a_tag_not_a_float(self):
        assert not isinstance(EPS, float)
        assert format_scalar(EPS) == "eps"

    def test_scalar_roundtrip_is_bit_exact(self):
        for x in (0, -3, 7, 0.1, 1e-17, 123456.789012345, -2.5e300):
            assert parse_scalar(format_scalar(x)) == x
        assert parse_scalar("eps") is EPS


class TestMatrices:
    def test_oplus_null_matrix(self):
        x = random_matrix(random.Random(1), 4)
        assert x.oplus(MaxPlusMatrix.nulls(4)) == x

    def test_oplus_idempotent(self):
        x = random_matrix(random.Random(2), 4)
        assert x.oplus(x) == x

    def test_oplus_entrywise(self):
        x = MaxPlusMatrix.from_rows([[1, EPS], [EPS, 2]])
        y = MaxPlusMatrix.from_rows([[0, 3], [EPS, EPS]])
        assert x.oplus(y) == MaxPlusMatrix.from_rows([[1, 3], [EPS, 2]])

    def test_otimes_identity(self):
        x = random_matrix(random.Random(3), 5)
        assert x.otimes(MaxPlusMatrix.eye(5)) == x
        assert MaxPlusMatrix.eye(5).otimes(x) == x

    def test_otimes_absorbing(self):
        x = random_matrix(random.Random(4), 5)
        assert x.otimes(MaxPlusMatrix.nulls(5)) == MaxPlusMatrix.nulls(5)

    def test_otimes_by_definition(self):
        x = MaxPlusMatrix.from_rows([[1, 2], [EPS, 0]])
        y = MaxPlusMatrix.from_rows([[0, EPS], [3, 1]])
        assert x.otimes(y) == MaxPlusMatrix.from_rows([[5, 3], [3, 1]])

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionError):
            MaxPlusMatrix.nulls(2).oplus(MaxPlusMatrix.nulls(3))
        with pytest.raises(DimensionError):
            MaxPlusMatrix.nulls(2).otimes(MaxPlusMatrix.nulls(3))

    def test_power_zero_is_identity(self):
        x = random_matrix(random.Random(5), 4)
        assert x.power(0) == MaxPlusMatrix.eye(4)

    def test_power_nilpotent_chain(self):
        # two-arc chain: no path of three arcs exists
        x = MaxPlusMatrix.from_rows([[EPS, 0, EPS],
                                     [EPS, EPS, 0],
                                     [EPS, EPS, EPS]])
        assert x.power(3) == MaxPlusMatrix.nulls(3)
        assert x.power(2) != MaxPlusMatrix.nulls(3)

    def test_star_expansion(self):
        rng = random.Random(6)
        for _ in range(20):
            x = random_matrix(rng, rng.randint(1, 4))
            q = rng.randint(0, 4)
            lhs = MaxPlusMatrix.eye(x.order).oplus(x).power(q)
            rhs = MaxPlusMatrix.eye(x.order)
            for m in range(1, q + 1):
                rhs = rhs.oplus(x.power(m))
            assert lhs == rhs

    def test_transpose_involution(self):
        x = random_matrix(random.Random(7), 5)
        assert x.transpose().transpose() == x

    def test_pretty_uses_eps_token(self):
        x = MaxPlusMatrix.from_rows([[1, EPS], [10, 2]])
        lines = x.pretty().splitlines()
        assert len(lines) == 2
        assert "eps" in lines[0]


class TestGraphView:
    def test_null_matrix_is_acyclic_with_p_zero(self):
        view = graph_view(MaxPlusMatrix.nulls(4))
        assert view.acyclic and view.longest_path_length == 0

    def test_two_cycle_witness(self):
        x = MaxPlusMatrix.from_rows([[EPS, 1, EPS],
                                     [2, EPS, EPS],
                                     [EPS, EPS, EPS]])
        view = graph_view(x)
        assert not view.acyclic
        assert view.longest_path_length is None
        assert_valid_cycle_witness(x, view.cycle_witness)
        assert set(view.cycle_witness) == {0, 1}

    def test_acyclic_has_no_witness(self):
        view = graph_view(random_acyclic_matrix(random.Random(8), 6))
        assert view.acyclic and view.cycle_witness is None
        assert 0 <= view.longest_path_length <= 5

    def test_power_support_matches_path_enumeration(self):
        rng = random.Random(9)
        for _ in range(15):
            n = rng.randint(2, 5)
            x = random_matrix(rng, n, eps_p=0.6)
            for q in range(1, 5):
                xq = x.power(q)
                for i in range(n):
                    for j in range(n):
                        assert (xq.rows[i][j] is not EPS) == \
                            brute_force_path_exists(x, i, j, q)


class TestSolveImplicit:
    def test_null_matrix_returns_v(self):
        v = (1, EPS, 3, 0)
        assert solve_implicit(MaxPlusMatrix.nulls(4), v) == v

    def test_solution_satisfies_equation_and_fixed_point(self):
        rng = random.Random(10)
        for _ in range(30):
            n = rng.randint(2, 6)
            u = random_acyclic_matrix(rng, n, eps_p=0.5, lo=1, hi=9)
            v = tuple(rng.randint(0, 9) for _ in range(n))
            x = solve_implicit(u, v)
            assert vec_oplus(mat_vec(u, x), v) == x
            # fixed-point iteration from v stabilizes to the same vector
            y = v
            for _ in range(n + 1):
                y = vec_oplus(mat_vec(u, y), v)
            assert y == x

    def test_self_loop_is_rejected_with_witness(self):
        rows = [[EPS] * 3 for _ in range(3)]
        rows[1][1] = 4
        with pytest.raises(CycleError) as exc:
            solve_implicit(MaxPlusMatrix.from_rows(rows), (0, 0, 0))
        assert exc.value.witness == [1, 1]

    def test_cycle_is_rejected_with_witness(self):
        u = MaxPlusMatrix.from_rows([[EPS, 1], [2, EPS]])
        with pytest.raises(CycleError) as exc:
            solve_implicit(u, (0, 0))
        assert_valid_cycle_witness(u, exc.value.witness)

    def test_nonpositive_entry_in_u_is_rejected(self):
        u = MaxPlusMatrix.from_rows([[EPS, 0], [EPS, EPS]])
        with pytest.raises(SpecValidationError):
            solve_implicit(u, (1, 1))

    def test_negative_v_rejected_but_zero_allowed(self):
        u = MaxPlusMatrix.from_rows([[EPS, 2], [EPS, EPS]])
        assert solve_implicit(u, (0, 0)) == (2, 0)
        with pytest.raises(SpecValidationError):
            solve_implicit(u, (0, -1))
