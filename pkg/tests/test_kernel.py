import random
from fractions import Fraction as Q

import pytest

from gsp4hodge.errors import DegenerateIntersection, InvalidData, NotALine
from gsp4hodge.kernel import (
    GENERATOR_LABELS,
    KernelBasis,
    eigenline_grid,
    embed_block,
    generator_vector,
    glue_generators,
    glue_subspace,
    hodge_borel_basis,
    jbar_apply,
    jbar_image_rows,
    jbar_matrix,
    jbar_rank,
    kernel_basis,
    matrix_suite,
    nu_operator,
    nu_via_conjugation,
    recover_parameters,
    unipotent_conjugator,
)
from gsp4hodge.linalg import mat_eq, mat_mul, rank, row_space
from gsp4hodge.scalars import RatFunc
from gsp4hodge.symplectic import Subspace, lie_membership
from gsp4hodge.weyl import S1, W_ALL, W_ID, from_word

A = RatFunc.var("a")
B = RatFunc.var("b")
ONE = RatFunc.const(1)
ZERO = RatFunc.const(0)


def rand_valid_ab(rng):
    while True:
        a = Q(rng.randint(-9, 9), rng.randint(1, 4))
        b = Q(rng.randint(-9, 9), rng.randint(1, 4))
        if a * b * (b + 1) * (a + b) * (a * b + a + b) != 0:
            return a, b


def expected_suite():
    """The eight generator images in the filtration basis, symbolically."""
    a, b = A, B
    two = RatFunc.const(2)
    f1 = [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, -1, 0], [0, 0, 0, -1]]
    f2 = [[1, 0, 0, 0], [0, 1, two / (b + 1), 0], [0, 0, -1, 0], [0, 0, 0, -1]]
    q = a * b + a + b
    f3 = [
        [1, 0, two / q, two * (b + 1) / q],
        [0, 1, two * (a + 1) / q, two / q],
        [0, 0, -1, 0],
        [0, 0, 0, -1],
    ]
    s = a + b
    f4 = [
        [1, 0, two / s, two / s],
        [0, 1, two / s, two / s],
        [0, 0, -1, 0],
        [0, 0, 0, -1],
    ]
    g1 = [[1, 0, 0, 0], [0, 0, 0, 0], [0, 0, 0, 0], [0, 0, 0, -1]]
    g2 = [[1, -1, 0, 0], [0, 0, 0, 0], [0, 0, 0, 1], [0, 0, 0, -1]]
    g3 = [
        [1, -(b + 1), -1, 0],
        [0, 0, 0, -1],
        [0, 0, 0, b + 1],
        [0, 0, 0, -1],
    ]
    g4 = [
        [1, b / a, 1 / a, two / a],
        [0, 0, 0, 1 / a],
        [0, 0, 0, -(b / a)],
        [0, 0, 0, -1],
    ]
    out = {}
    for name, M in (("f1", f1), ("f2", f2), ("f3", f3), ("f4", f4),
                    ("g1", g1), ("g2", g2), ("g3", g3), ("g4", g4)):
        out[name] = [[x if isinstance(x, RatFunc) else RatFunc.const(x) for x in row] for row in M]
    return out


class TestEigenlineGrid:
    def test_identity_lines(self):
        grid = eigenline_grid(Q(2), Q(3))
        assert grid.line(W_ID, 1) == (1, 0, 0, 0)
        # third line of the identity block is v2 normalized at e3... the
        # leading slot is e_3, so v2/(-1)
        b = Q(3)
        assert grid.line(W_ID, 3) == (-b, -(b + 1), 1, 0)
        assert Subspace.span([grid.line(W_ID, 3)]) == Subspace.span([(b, b + 1, Q(-1), Q(0))])

    def test_s1_third_line_is_v1_plus_v2(self):
        a, b = Q(2), Q(3)
        grid = eigenline_grid(a, b)
        v1 = (a, Q(-1), Q(1), Q(-1))
        v2 = (b, b + 1, Q(-1), Q(0))
        expect = Subspace.span([tuple(x + y for x, y in zip(v1, v2))])
        assert Subspace.span([grid.line(S1, 3)]) == expect

    def test_lines_decompose_space(self):
        grid = eigenline_grid(Q(2), Q(3))
        for w in W_ALL:
            vecs = [grid.line(w, i) for i in (1, 2, 3, 4)]
            assert rank(vecs) == 4

    def test_full_s4_grid(self):
        grid = eigenline_grid(Q(2), Q(3), include_full_s4=True)
        assert len(grid.lines) == 24
        for perm, vecs in grid.lines.items():
            assert rank(list(vecs)) == 4

    def test_degenerate_raises_with_witness(self):
        # b = -1 breaks general position for permutations outside the
        # Weyl subgroup; inside it, a + b = 0 degenerates a line.
        with pytest.raises((DegenerateIntersection, InvalidData)):
            eigenline_grid(Q(1), Q(-1), include_full_s4=True)

    def test_symbolic_grid(self):
        grid = eigenline_grid(A, B)
        assert len(grid.lines) == 8


class TestNuOperator:
    def test_central_scalar(self):
        grid = eigenline_grid(Q(2), Q(3))
        for w in (W_ID, S1, from_word("s1s2")):
            M = nu_operator(grid, w, (Q(5), Q(5), Q(5), Q(5)))
            assert mat_eq(M, [[Q(5) if i == j else Q(0) for j in range(4)] for i in range(4)])

    def test_lie_membership_all_blocks(self):
        grid = eigenline_grid(Q(2), Q(3))
        rng = random.Random(0)
        for w in W_ALL:
            t1, t2, t3 = (Q(rng.randint(-4, 4)) for _ in range(3))
            t = (t1, t2, t3, t2 + t3 - t1)
            ok, _ = lie_membership(nu_operator(grid, w, t))
            assert ok

    def test_preserves_both_flags(self):
        from gsp4hodge.phimodule import PhiModuleData, standard_filtration

        a, b = Q(2), Q(3)
        grid = eigenline_grid(a, b)
        hf = standard_filtration(
            PhiModuleData(p=3, alphas=(Q(1), Q(9), Q(81), Q(729)), weights=(0, -2, -4, -6), a=a, b=b)
        )
        for w in W_ALL:
            M = nu_operator(grid, w, (Q(1), Q(2), Q(2), Q(3)))
            for i in (1, 2, 3):
                V = hf.member(i)
                img = [tuple(sum(M[r][c] * v[c] for c in range(4)) for r in range(4)) for v in V.rows]
                assert all(V.contains(x) for x in img)

    def test_torus_constraint_enforced(self):
        grid = eigenline_grid(Q(2), Q(3))
        with pytest.raises(InvalidData):
            nu_operator(grid, W_ID, (Q(1), Q(0), Q(0), Q(0)))

    def test_s4_relaxed_constraint(self):
        grid = eigenline_grid(Q(2), Q(3), include_full_s4=True)
        M = nu_operator(grid, (2, 3, 1, 4), (Q(1), Q(0), Q(0), Q(0)))
        ok, _ = lie_membership(M)
        assert not ok  # lands only in gl4 off the Weyl subgroup

    def test_conjugation_route_agrees(self):
        grid = eigenline_grid(Q(2), Q(3))
        rng = random.Random(1)
        for w in W_ALL:
            t1, t2, t3 = (Q(rng.randint(-4, 4)) for _ in range(3))
            t = (t1, t2, t3, t2 + t3 - t1)
            assert mat_eq(nu_operator(grid, w, t), nu_via_conjugation(grid, w, t))

    def test_conjugator_unipotent_in_w_order(self):
        grid = eigenline_grid(Q(2), Q(3))
        for w in W_ALL:
            n = unipotent_conjugator(grid, w)
            # in the basis reordered by w^{-1}, n is upper unipotent
            P = w.inv().matrix()
            Pinv = w.matrix()
            conj = mat_mul(mat_mul(Pinv, n), P)
            for i in range(4):
                assert conj[i][i] == 1
                for j in range(i):
                    assert conj[i][j] == 0


class TestMatrixSuite:
    def test_symbolic_exact_match(self):
        got = matrix_suite(A, B)
        want = expected_suite()
        for name in GENERATOR_LABELS:
            assert mat_eq(got[name], want[name]), name

    def test_rational_point_match(self):
        a, b = Q(2), Q(3)
        got = matrix_suite(a, b)
        want = expected_suite()
        for name in GENERATOR_LABELS:
            evaluated = [[x.evaluate(a, b) for x in row] for row in want[name]]
            assert mat_eq(got[name], evaluated), name

    def test_spot_entries(self):
        got = matrix_suite(A, B)
        assert got["f2"][1][2] == RatFunc.const(2) / (B + 1)
        assert got["g4"][0][1] == B / A
        q = RatFunc.const(2) / (A + B)
        for pos in ((0, 2), (0, 3), (1, 2), (1, 3)):
            assert got["f4"][pos[0]][pos[1]] == q


class TestJbar:
    def test_rank_seven_at_one_one(self):
        assert jbar_rank(Q(1), Q(1)) == 7

    def test_rank_and_kernel_random(self):
        rng = random.Random(7)
        for _ in range(10):
            a, b = rand_valid_ab(rng)
            assert jbar_rank(a, b) == 7
            assert kernel_basis(a, b).dim == 17

    def test_symbolic_rank_and_kernel(self):
        assert jbar_rank(A, B) == 7
        assert kernel_basis(A, B).dim == 17

    def test_block_injectivity(self):
        # every single 3-column block has rank 3
        M = jbar_matrix(Q(2), Q(3))
        for k in range(8):
            block = [[row[3 * k + j] for j in range(3)] for row in M]
            assert rank(block) == 3

    def test_image_is_hodge_borel(self):
        a, b = Q(2), Q(3)
        image = jbar_image_rows(a, b)
        borel = hodge_borel_basis(a, b)
        assert len(borel) == 7
        assert row_space(list(image)) == row_space(list(borel))

    def test_generator_images_match_suite(self):
        a, b = Q(2), Q(3)
        grid = eigenline_grid(a, b)
        for label in GENERATOR_LABELS:
            vec = generator_vector(label)
            M = jbar_apply(a, b, list(vec), grid)
            from gsp4hodge.kernel import _GENERATOR_DEF

            t, w = _GENERATOR_DEF[label]
            assert mat_eq(M, nu_operator(grid, w, t))


class TestGlue:
    def test_generator_count(self):
        assert len(glue_generators()) == 16

    def test_dimension_fifteen(self):
        assert glue_subspace().dim == 15

    def test_contained_in_kernel(self):
        rng = random.Random(3)
        for _ in range(5):
            a, b = rand_valid_ab(rng)
            M = jbar_matrix(a, b)
            for g in glue_subspace().rows:
                img = [sum(row[i] * g[i] for i in range(24)) for row in M]
                assert all(x == 0 for x in img)

    def test_quotient_dimension_two(self):
        a, b = Q(2), Q(3)
        K = kernel_basis(a, b)
        combined = rank(list(K.rows) + list(glue_subspace().rows))
        assert combined == 17
        assert K.dim - glue_subspace().dim == 2

    def test_central_differences_in_glue(self):
        glue = Subspace.span(list(glue_subspace().rows), ambient=24)
        center = (Q(1), Q(1), Q(1), Q(1))
        for w in W_ALL:
            for w2 in W_ALL:
                if w == w2:
                    continue
                diff = tuple(x - y for x, y in zip(embed_block(center, w), embed_block(center, w2)))
                assert glue.contains(diff)


class TestRecovery:
    def test_round_trip_2_3(self):
        assert recover_parameters(kernel_basis(Q(2), Q(3))) == (Q(2), Q(3))

    def test_round_trip_symbolic(self):
        a, b = recover_parameters(kernel_basis(A, B))
        assert a == A and b == B

    def test_round_trip_random(self):
        rng = random.Random(11)
        for _ in range(25):
            a, b = rand_valid_ab(rng)
            assert recover_parameters(kernel_basis(a, b)) == (a, b)

    def test_distinct_parameters_distinct_kernels(self):
        rng = random.Random(13)
        seen = {}
        for _ in range(10):
            a, b = rand_valid_ab(rng)
            K = kernel_basis(a, b)
            key = K.rows
            assert key not in seen or seen[key] == (a, b)
            seen[key] = (a, b)
        assert len(seen) >= 9

    def test_corrupted_kernel_raises(self):
        # a kernel missing the informative directions: the glue alone
        K = KernelBasis(rows=glue_subspace().rows, a=Q(2), b=Q(3))
        with pytest.raises(NotALine):
            recover_parameters(K)
