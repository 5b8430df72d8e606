"""Eigenline grids, the diagonalizable operators attached to refinements,
the summed tangent map on the 24-dimensional block space, its kernel, the
parabolic gluing subspace, and recovery of the Hodge parameters (a, b).

Block conventions.  The domain is one copy of the 3-dimensional diagonal
torus algebra per Weyl element, in the fixed order W_ORDER; a torus element
diag(x, y, z-y, z-x) has block coordinates (x, y, z), so the flat space is
E^24 with coordinate 3*block + k.  The distinguished generators are

    f1 = (T1)_e      f2 = (T1)_{s2}    f3 = (T1)_{s0}    f4 = (T1)_{s2s1}
    g1 = (T2)_e      g2 = (T2)_{s1}    g3 = (T2)_{s1s2}  g4 = (T2)_{s0}

with T1 = diag(-1,-1,1,1) and T2 = diag(-1,0,0,1).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction as Q
from functools import lru_cache
from itertools import permutations

from .errors import DegenerateIntersection, InvalidData, NotALine
from .linalg import (
    coerce_rows,
    intersect_row_spaces,
    inverse,
    mat_mul,
    nullspace,
    rank,
    row_space,
    rref,
)
from .phimodule import PhiModuleData, standard_filtration
from .scalars import Scalar, is_zero
from .symplectic import Subspace, gsp4_basis, gsp4_coordinates
from .weyl import S1, S2, W_ALL, W_ID, WeylElem, from_word

#: Fixed block order for the 24-dimensional domain.
W_ORDER = W_ALL
_BLOCK_INDEX = {w.perm: i for i, w in enumerate(W_ORDER)}

#: Torus elements behind the distinguished generators.
T1 = (Q(-1), Q(-1), Q(1), Q(1))
T2 = (Q(-1), Q(0), Q(0), Q(1))

GENERATOR_LABELS = ("f1", "f2", "f3", "f4", "g1", "g2", "g3", "g4")
_GENERATOR_DEF = {
    "f1": (T1, W_ID),
    "f2": (T1, from_word("s2")),
    "f3": (T1, from_word("s1s2s1s2")),
    "f4": (T1, from_word("s2s1")),
    "g1": (T2, W_ID),
    "g2": (T2, from_word("s1")),
    "g3": (T2, from_word("s1s2")),
    "g4": (T2, from_word("s1s2s1s2")),
}


def block_index(w: WeylElem) -> int:
    return _BLOCK_INDEX[w.perm]


def torus_block_coords(t) -> tuple:
    """Block coordinates (x, y, z) of diag(t1, t2, t3, t4) = diag(x,y,z-y,z-x)."""
    t1, t2, t3, t4 = t
    if t1 + t4 != t2 + t3:
        raise InvalidData(f"diagonal {t} breaks the torus constraint")
    return (t1, t2, t1 + t4)


def torus_from_block_coords(c) -> tuple:
    x, y, z = c
    return (x, y, z - y, z - x)


def embed_block(t, w: WeylElem):
    """The 24-vector carrying the torus element t in the block of w."""
    x, y, z = torus_block_coords(t)
    vec = [Q(0)] * 24
    base = 3 * block_index(w)
    vec[base], vec[base + 1], vec[base + 2] = x, y, z
    return tuple(vec)


def generator_vector(label: str):
    t, w = _GENERATOR_DEF[label]
    return embed_block(t, w)


def _phi_module_for(a: Scalar, b: Scalar) -> PhiModuleData:
    # Any valid (alpha, h) works: the grid only depends on (a, b).
    return PhiModuleData(
        p=3, alphas=(Q(1), Q(9), Q(81), Q(729)), weights=(0, -2, -4, -6), a=a, b=b
    )


@dataclass(frozen=True)
class EigenlineGrid:
    """Lines F_w^i ∩ F_H^{5-i} for each permutation in the grid.

    Line vectors are normalized so the coefficient of e_{w^{-1}(i)} is 1,
    which pins down the unipotent change of basis."""

    a: Scalar
    b: Scalar
    lines: dict
    full_s4: bool

    def line(self, w, i: int):
        return self.lines[_perm_of(w)][i - 1]


def _perm_of(w) -> tuple:
    return w.perm if isinstance(w, WeylElem) else tuple(w)


def _perm_inverse(perm) -> list:
    inv = [0] * 4
    for i, img in enumerate(perm):
        inv[img - 1] = i + 1
    return inv


def eigenline_grid(a: Scalar, b: Scalar, include_full_s4: bool = False) -> EigenlineGrid:
    """Intersect the coordinate flags with the Hodge flag, line by line."""
    hf = standard_filtration(_phi_module_for(a, b))
    perms = (
        list(permutations((1, 2, 3, 4)))
        if include_full_s4
        else [w.perm for w in W_ORDER]
    )
    lines = {}
    for perm in perms:
        inv = _perm_inverse(perm)
        basis = []
        for i in (1, 2, 3, 4):
            rows = []
            for c in inv[:i]:
                row = [Q(0)] * 4
                row[c - 1] = Q(1)
                rows.append(tuple(row))
            Fw = Subspace.span(rows)
            L = Fw.intersect(hf.member(5 - i))
            if L.dim != 1:
                raise DegenerateIntersection(
                    perm, i, f"intersection has dimension {L.dim}"
                )
            vec = list(L.rows[0])
            lead = vec[inv[i - 1] - 1]
            if is_zero(lead):
                raise DegenerateIntersection(
                    perm,
                    i,
                    f"line lies inside the smaller coordinate flag member "
                    f"(vanishing e_{inv[i - 1]} coefficient)",
                )
            vec = [x / lead for x in vec]
            basis.append(tuple(vec))
        lines[perm] = tuple(basis)
    return EigenlineGrid(a=a, b=b, lines=lines, full_s4=include_full_s4)


def nu_operator(grid: EigenlineGrid, w, t):
    """The unique operator acting as t_i on the i-th eigenline of w."""
    perm = _perm_of(w)
    in_weyl = perm[0] + perm[3] == 5 and perm[1] + perm[2] == 5
    if in_weyl:
        t1, t2, t3, t4 = t
        if t1 + t4 != t2 + t3:
            raise InvalidData(f"diagonal {t} breaks the torus constraint")
    U = [list(col) for col in zip(*grid.lines[perm])]  # columns are the lines
    Uinv = inverse(U)
    D = [[t[i] if i == j else Q(0) for j in range(4)] for i in range(4)]
    return mat_mul(mat_mul(U, coerce_rows(D)), Uinv)


def unipotent_conjugator(grid: EigenlineGrid, w):
    """The matrix n with n e_{w^{-1}(i)} = (i-th line of w); unipotent in
    the basis reordered by w^{-1} thanks to the line normalization."""
    perm = _perm_of(w)
    inv = _perm_inverse(perm)
    cols = {}
    for i in (1, 2, 3, 4):
        cols[inv[i - 1] - 1] = grid.lines[perm][i - 1]
    return [[cols[j][i] for j in range(4)] for i in range(4)]


def nu_via_conjugation(grid: EigenlineGrid, w, t):
    """Alternative route: conjugate a permuted diagonal by the unipotent
    change of basis.  The diagonal carries t_i at position w^{-1}(i), the
    slot whose eigenline receives eigenvalue t_i."""
    perm = _perm_of(w)
    inv = _perm_inverse(perm)
    D = [[Q(0)] * 4 for _ in range(4)]
    for i in (1, 2, 3, 4):
        D[inv[i - 1] - 1][inv[i - 1] - 1] = t[i - 1]
    n = unipotent_conjugator(grid, w)
    return mat_mul(mat_mul(n, coerce_rows(D)), inverse(n))


# ---------------------------------------------------------------------------
# The summed tangent map
# ---------------------------------------------------------------------------

_TORUS_BASIS = (
    (Q(1), Q(0), Q(0), Q(-1)),  # block coordinate x
    (Q(0), Q(1), Q(-1), Q(0)),  # block coordinate y
    (Q(0), Q(0), Q(1), Q(1)),   # block coordinate z
)


def jbar_matrix(a: Scalar, b: Scalar, grid: EigenlineGrid | None = None):
    """The 11 x 24 matrix of the summed tangent map in the fixed bases."""
    grid = grid or eigenline_grid(a, b)
    cols = []
    for w in W_ORDER:
        for t in _TORUS_BASIS:
            M = nu_operator(grid, w, t)
            cols.append(gsp4_coordinates(M))
    return [list(col) for col in zip(*cols)]  # 11 rows, 24 columns


def jbar_apply(a: Scalar, b: Scalar, vec, grid: EigenlineGrid | None = None):
    """Image of a 24-vector as a 4x4 matrix (sum of the block operators)."""
    grid = grid or eigenline_grid(a, b)
    total = [[Q(0)] * 4 for _ in range(4)]
    for w in W_ORDER:
        base = 3 * block_index(w)
        c = vec[base : base + 3]
        t = torus_from_block_coords(c)
        M = nu_operator(grid, w, t)
        total = [[x + y for x, y in zip(r1, r2)] for r1, r2 in zip(total, M)]
    return total


@dataclass(frozen=True)
class KernelBasis:
    """Echelon basis of the kernel inside E^24, tagged with its (a, b)."""

    rows: tuple
    a: Scalar
    b: Scalar

    @property
    def dim(self) -> int:
        return len(self.rows)


def kernel_basis(a: Scalar, b: Scalar, grid: EigenlineGrid | None = None) -> KernelBasis:
    M = jbar_matrix(a, b, grid)
    return KernelBasis(rows=tuple(nullspace(M, 24)), a=a, b=b)


def jbar_rank(a: Scalar, b: Scalar, grid: EigenlineGrid | None = None) -> int:
    return rank(jbar_matrix(a, b, grid))


# ---------------------------------------------------------------------------
# Parabolic gluing subspace (independent of a and b)
# ---------------------------------------------------------------------------

#: Levi-center generators: Siegel side diag(u,u,v,v), Klingen side
#: diag(u,v,v,2v-u).
_Z_SIEGEL = ((Q(1), Q(1), Q(0), Q(0)), (Q(0), Q(0), Q(1), Q(1)))
_Z_KLINGEN = ((Q(1), Q(0), Q(0), Q(-1)), (Q(0), Q(1), Q(1), Q(2)))


def glue_generators():
    """The 16 difference vectors (z)_w - (z)_{s_delta w}, one per unordered
    pair {w, s_delta w} per Levi-center basis element."""
    out = []
    for s_delta, z_basis in ((S1, _Z_SIEGEL), (S2, _Z_KLINGEN)):
        for w in W_ORDER:
            other = s_delta * w
            if block_index(w) > block_index(other):
                continue
            for z in z_basis:
                vec = [x - y for x, y in zip(embed_block(z, w), embed_block(z, other))]
                out.append(tuple(vec))
    return out


@lru_cache(maxsize=1)
def glue_subspace() -> KernelBasis:
    """Canonical basis of the gluing subspace (dimension 15)."""
    rows = row_space(glue_generators())
    return KernelBasis(rows=tuple(rows), a=None, b=None)


# ---------------------------------------------------------------------------
# Hodge-parameter recovery
# ---------------------------------------------------------------------------


def _span_coordinates(vectors, basis):
    """Coordinates of each vector in the given independent basis rows."""
    bt = [list(col) for col in zip(*coerce_rows(basis))]
    out = []
    for v in vectors:
        aug = [row + [x] for row, x in zip(bt, v)]
        red, pivots = rref(coerce_rows(aug))
        k = len(basis)
        if k in pivots:
            raise NotALine("vector leaves the generator span")
        coords = [Q(0)] * k
        for row, c in zip(red, pivots):
            coords[c] = row[-1]
        out.append(coords)
    return out


def _projected_line(kernel_rows, labels, pair):
    """Project (kernel ∩ span(labels)) onto two generator coordinates;
    the result must be a line, returned as (u, v)."""
    basis = [generator_vector(lbl) for lbl in labels]
    inter = intersect_row_spaces(list(kernel_rows), basis, 24)
    if not inter:
        raise NotALine("kernel misses the generator span")
    coords = _span_coordinates(inter, basis)
    i, j = (labels.index(pair[0]), labels.index(pair[1]))
    proj = [[c[i], c[j]] for c in coords]
    line = row_space(proj)
    if len(line) != 1:
        raise NotALine(f"projection onto {pair} has dimension {len(line)}")
    return line[0]


def recover_parameters(K: KernelBasis):
    """Read (a, b) back from a kernel basis.

    The kernel meets span(f1..f4, g1, g2, g3) in a line projecting to
    (b+1) g2 - g3, and span(f1..f4, g1, g2, g4) in a line projecting to
    b g2 + a g4.
    """
    u, v = _projected_line(K.rows, ("f1", "f2", "f3", "f4", "g1", "g2", "g3"), ("g2", "g3"))
    if is_zero(v):
        raise NotALine("degenerate projection: g3 coefficient vanishes")
    b = -u / v - 1
    u2, v2 = _projected_line(K.rows, ("f1", "f2", "f3", "f4", "g1", "g2", "g4"), ("g2", "g4"))
    if is_zero(u2):
        raise NotALine("degenerate projection: g2 coefficient vanishes")
    a = b * v2 / u2
    return a, b


# ---------------------------------------------------------------------------
# Matrix suite in the filtration basis
# ---------------------------------------------------------------------------


def matrix_suite(a: Scalar, b: Scalar, grid: EigenlineGrid | None = None) -> dict:
    """Images of the eight distinguished generators, written in the
    filtration basis (v1, v2, v3, v4)."""
    grid = grid or eigenline_grid(a, b)
    d = _phi_module_for(a, b)
    v1, v2, v3, v4 = d.basis_vectors()
    B = [list(col) for col in zip(v1, v2, v3, v4)]  # columns are v_i
    Binv = inverse(coerce_rows(B))
    out = {}
    for label in GENERATOR_LABELS:
        t, w = _GENERATOR_DEF[label]
        M = nu_operator(grid, w, t)
        out[label] = mat_mul(mat_mul(Binv, M), coerce_rows(B))
    return out


# ---------------------------------------------------------------------------
# The Borel subalgebra preserving the Hodge flag
# ---------------------------------------------------------------------------


def hodge_borel_basis(a: Scalar, b: Scalar):
    """Rows (11-dim coordinates) of the gsp4 subalgebra preserving the flag."""
    hf = standard_filtration(_phi_module_for(a, b))
    basis = gsp4_basis()
    equations = []
    for dim in (1, 2, 3):
        V = hf.member(dim)
        ann = nullspace([list(r) for r in V.rows], 4)
        for r in V.rows:
            for y in ann:
                # condition: y . (M r^T) = 0, linear in the 11 coordinates
                eq = []
                for G in basis:
                    Gr = [sum(G[i][j] * r[j] for j in range(4)) for i in range(4)]
                    eq.append(sum(y[i] * Gr[i] for i in range(4)))
                equations.append(eq)
    return nullspace(equations, 11)


def jbar_image_rows(a: Scalar, b: Scalar, grid: EigenlineGrid | None = None):
    """Canonical basis of the image of the tangent map, in E^11."""
    M = jbar_matrix(a, b, grid)
    cols = [list(col) for col in zip(*M)]
    return row_space(cols)
