"""The symplectic space (E^4, J): group and Lie-algebra predicates,
subspace algebra and anisotropic flags.

Conventions, fixed package-wide: vectors are rows, matrices act on column
vectors, and the basis order is (e1, e2, e3, e4).  The alternating form is
r(x, y) = x J y^T for the fixed antidiagonal J below.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction as Q

from .errors import InvalidData, NotSymplectic
from .linalg import (
    coerce_rows,
    identity,
    intersect_row_spaces,
    mat_add,
    mat_eq,
    mat_mul,
    mat_scale,
    mat_sub,
    nullspace,
    row_space,
    rref,
    trace,
    transpose,
)
from .scalars import Scalar, is_zero

#: The fixed alternating form.  J^2 = -I and J^T = -J.
J = [
    [Q(0), Q(0), Q(0), Q(1)],
    [Q(0), Q(0), Q(1), Q(0)],
    [Q(0), Q(-1), Q(0), Q(0)],
    [Q(-1), Q(0), Q(0), Q(0)],
]


def symplectic_form(x, y) -> Scalar:
    """r(x, y) = x J y^T for row vectors x, y."""
    return (
        x[0] * y[3] + x[1] * y[2] - x[2] * y[1] - x[3] * y[0]
    )


def similitude(M) -> Scalar:
    """The scalar sim(M) with M^T J M = sim(M) J; raises NotSymplectic."""
    M = coerce_rows(M)
    lhs = mat_mul(mat_mul(transpose(M), J), M)
    c = lhs[0][3]
    if is_zero(c) or not mat_eq(lhs, mat_scale(J, c)):
        raise NotSymplectic("M^T J M is not a nonzero multiple of J")
    return c


def lie_membership(A) -> tuple[bool, Scalar]:
    """Whether A^T J + J A = (tr(A)/2) J; returns (flag, tr(A)/2)."""
    A = coerce_rows(A)
    f = trace(A) / 2
    lhs = mat_add(mat_mul(transpose(A), J), mat_mul(J, A))
    return mat_eq(lhs, mat_scale(J, f)), f


def adjoint(A):
    """The form-adjoint A* = J^{-1} A^T J (so r(Ax, y) = r(x, A*y))."""
    A = coerce_rows(A)
    # J^{-1} = -J
    return mat_scale(mat_mul(mat_mul(J, transpose(A)), J), -1)


def s_involution(A):
    """The twist A -> -A* + (tr A / 2) I; its fixed space is gsp4."""
    A = coerce_rows(A)
    f = trace(A) / 2
    n = len(A)
    shift = [[f if i == j else f * 0 for j in range(n)] for i in range(n)]
    return mat_add(mat_scale(adjoint(A), -1), shift)


# ---------------------------------------------------------------------------
# A fixed basis of gsp4: 3 torus elements and 8 root vectors.
# Order: H_a = diag(1,0,0,-1), H_b = diag(0,1,-1,0), H_c = diag(0,0,1,1),
# then X_a, X_{-a}, X_b, X_{-b}, X_{ab}, X_{-ab}, X_{aab}, X_{-aab}
# (short root a, long root b).
# ---------------------------------------------------------------------------


def _E(i, j):
    M = [[Q(0)] * 4 for _ in range(4)]
    M[i][j] = Q(1)
    return M


def gsp4_basis():
    """The fixed ordered 11-element basis of gsp4."""
    H_a = [[Q(1), 0, 0, 0], [0, Q(0), 0, 0], [0, 0, Q(0), 0], [0, 0, 0, Q(-1)]]
    H_b = [[Q(0), 0, 0, 0], [0, Q(1), 0, 0], [0, 0, Q(-1), 0], [0, 0, 0, Q(0)]]
    H_c = [[Q(0), 0, 0, 0], [0, Q(0), 0, 0], [0, 0, Q(1), 0], [0, 0, 0, Q(1)]]
    X_a = mat_sub(_E(0, 1), _E(2, 3))
    X_ma = mat_sub(_E(1, 0), _E(3, 2))
    X_b = _E(1, 2)
    X_mb = _E(2, 1)
    X_ab = mat_add(_E(0, 2), _E(1, 3))
    X_mab = mat_add(_E(2, 0), _E(3, 1))
    X_aab = _E(0, 3)
    X_maab = _E(3, 0)
    return [coerce_rows(M) for M in (H_a, H_b, H_c, X_a, X_ma, X_b, X_mb, X_ab, X_mab, X_aab, X_maab)]


GSP4_BASIS_LABELS = (
    "H_a", "H_b", "H_c",
    "X_a", "X_-a", "X_b", "X_-b", "X_ab", "X_-ab", "X_aab", "X_-aab",
)


def gsp4_coordinates(A) -> list:
    """Coordinates of a gsp4 element in the fixed 11-dim basis.

    Raises InvalidData when A is not in gsp4.
    """
    ok, _ = lie_membership(A)
    if not ok:
        raise InvalidData("matrix is not in gsp4")
    A = coerce_rows(A)
    return [
        A[0][0],            # H_a
        A[1][1],            # H_b
        A[1][1] + A[2][2],  # H_c
        A[0][1],            # X_a   (paired with -A[2][3])
        A[1][0],            # X_-a
        A[1][2],            # X_b
        A[2][1],            # X_-b
        A[0][2],            # X_ab  (paired with A[1][3])
        A[2][0],            # X_-ab
        A[0][3],            # X_aab
        A[3][0],            # X_-aab
    ]


# ---------------------------------------------------------------------------
# Subspaces and flags
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Subspace:
    """Row span in canonical reduced-echelon form; equality is structural."""

    rows: tuple
    ambient: int = 4

    @staticmethod
    def span(vectors, ambient: int = 4) -> "Subspace":
        vectors = [v for v in vectors if any(not is_zero(x) for x in v)]
        if not vectors:
            return Subspace(rows=(), ambient=ambient)
        return Subspace(rows=tuple(row_space(vectors)), ambient=ambient)

    @property
    def dim(self) -> int:
        return len(self.rows)

    def contains(self, v) -> bool:
        if all(is_zero(x) for x in v):
            return True
        red, pivots = rref(coerce_rows(list(self.rows) + [list(v)]))
        return len(pivots) == self.dim

    def contains_subspace(self, other: "Subspace") -> bool:
        return all(self.contains(r) for r in other.rows)

    def intersect(self, other: "Subspace") -> "Subspace":
        rows = intersect_row_spaces(list(self.rows), list(other.rows), self.ambient)
        return Subspace(rows=tuple(rows), ambient=self.ambient)

    def add(self, other: "Subspace") -> "Subspace":
        return Subspace.span(list(self.rows) + list(other.rows), self.ambient)

    def perp(self) -> "Subspace":
        """Annihilator under the J-form: {y : x J y^T = 0 for all x here}."""
        if not self.rows:
            return Subspace.span([tuple(identity(4)[i]) for i in range(4)])
        UJ = mat_mul(coerce_rows(self.rows), J)
        return Subspace(rows=tuple(nullspace(UJ, 4)), ambient=4)

    def is_isotropic(self) -> bool:
        return self.perp().contains_subspace(self)


def subspace_algebra(op: str, *args):
    """Dispatcher matching the documented operation names."""
    if op == "span":
        return Subspace.span(args[0])
    if op == "intersect":
        return args[0].intersect(args[1])
    if op == "sum":
        return args[0].add(args[1])
    if op == "perp":
        return args[0].perp()
    if op == "contains":
        if isinstance(args[1], Subspace):
            return args[0].contains_subspace(args[1])
        return args[0].contains(args[1])
    raise InvalidData(f"unknown subspace operation {op!r}")


FLAG_DIMS = {"complete": (1, 2, 3), "siegel": (2,), "klingen": (1, 3)}


@dataclass(frozen=True)
class Flag:
    """Nested subspaces with the member dimensions dictated by the kind."""

    members: tuple
    kind: str

    def __post_init__(self):
        dims = FLAG_DIMS.get(self.kind)
        if dims is None:
            raise InvalidData(f"unknown flag kind {self.kind!r}")
        if tuple(m.dim for m in self.members) != dims:
            raise InvalidData(
                f"{self.kind} flag needs member dims {dims}, got "
                f"{tuple(m.dim for m in self.members)}"
            )
        for small, big in zip(self.members, self.members[1:]):
            if not big.contains_subspace(small):
                raise InvalidData("flag members are not nested")


def flag_anisotropy_check(flag: Flag) -> bool:
    """True iff every member equals the perp of its dual-index member."""
    ms = flag.members
    return all(ms[i] == ms[len(ms) - 1 - i].perp() for i in range(len(ms)))
