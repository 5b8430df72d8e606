"""Validated generic non-critical filtered phi-modules with symplectic structure.

A module instance is presented by the data (p, alpha_1..alpha_4, h_1..h_4, a, b):
phi-eigenvalues alpha_i on a standard symplectic eigenbasis (e_1..e_4),
strictly decreasing filtration weights h_i, and the two Hodge parameters
(a, b) that pin down the filtration in its unique standard form

    F^1 = <a e1 - e2 + e3 - e4>
    F^2 = F^1 + <b e1 + (b+1) e2 - e3>
    F^3 = F^2 + <e1 + e2>

with jumps at -h_1 > ... > -h_4 read bottom-up.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction as Q
from itertools import combinations

from .errors import InvalidData
from .linalg import coerce_rows
from .scalars import RatFunc, Scalar, is_prime, is_zero, padic_val, scalar_str
from .symplectic import Flag, Subspace
from .weyl import W_ALL, QpChar, WeylElem

#: Names for the five nondegeneracy factors, in fixed order.
NONDEG_FACTORS = ("a", "b", "b+1", "a+b", "a*b+a+b")


def _nondeg_factor_values(a: Scalar, b: Scalar):
    return (a, b, b + 1, a + b, a * b + a + b)


@dataclass(frozen=True)
class PhiModuleData:
    p: int
    alphas: tuple
    weights: tuple
    a: Scalar
    b: Scalar

    @property
    def symbolic(self) -> bool:
        return isinstance(self.a, RatFunc)

    def basis_vectors(self):
        """The filtration basis v1..v4 over the ambient scalar field."""
        a, b = self.a, self.b
        one = a - a + 1
        zero = a - a
        v1 = (a, -one, one, -one)
        v2 = (b, b + one, -one, zero)
        v3 = (one, one, zero, zero)
        v4 = (one, zero, zero, zero)
        return v1, v2, v3, v4


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    witness: str = ""


@dataclass(frozen=True)
class ValidityReport:
    checks: tuple

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    def failures(self):
        return [c for c in self.checks if not c.passed]

    def as_dict(self):
        return {
            "ok": self.ok,
            "checks": [
                {"name": c.name, "passed": c.passed, "witness": c.witness}
                for c in self.checks
            ],
        }


def validate(d: PhiModuleData) -> ValidityReport:
    """Run every structural invariant; failures carry witnesses."""
    checks = []

    checks.append(CheckResult("p-prime", is_prime(d.p), f"p={d.p}"))

    alphas = tuple(Q(x) for x in d.alphas)
    nz = all(x != 0 for x in alphas)
    checks.append(CheckResult("alphas-nonzero", nz, "" if nz else "zero eigenvalue"))

    sim_ok = alphas[0] * alphas[3] == alphas[1] * alphas[2]
    checks.append(
        CheckResult(
            "similitude-relation",
            sim_ok,
            "" if sim_ok else f"a1*a4={alphas[0]*alphas[3]} != a2*a3={alphas[1]*alphas[2]}",
        )
    )

    generic, gen_witness = True, ""
    if nz:
        bad = {Q(1), Q(d.p), Q(1, d.p)}
        for i, j in combinations(range(4), 2):
            for num, den, pair in ((alphas[i], alphas[j], (i + 1, j + 1)), (alphas[j], alphas[i], (j + 1, i + 1))):
                ratio = num / den
                if ratio in bad:
                    generic, gen_witness = False, f"alpha{pair[0]}/alpha{pair[1]} = {ratio}"
                    break
            if not generic:
                break
    checks.append(CheckResult("genericity", generic, gen_witness))

    h = tuple(int(x) for x in d.weights)
    desc = h[0] > h[1] > h[2] > h[3]
    checks.append(CheckResult("weights-strictly-decreasing", desc, f"h={h}"))
    wsum = h[0] + h[3] == h[1] + h[2]
    checks.append(
        CheckResult("weight-sum", wsum, "" if wsum else f"h1+h4={h[0]+h[3]} != h2+h3={h[1]+h[2]}")
    )

    nd_ok, nd_witness = True, ""
    for name, value in zip(NONDEG_FACTORS, _nondeg_factor_values(d.a, d.b)):
        if is_zero(value):
            nd_ok, nd_witness = False, f"factor {name} vanishes"
            break
    checks.append(CheckResult("nondegeneracy-polynomial", nd_ok, nd_witness))

    return ValidityReport(checks=tuple(checks))


@dataclass(frozen=True)
class HodgeFlag:
    """The standard-form Hodge flag together with its jump indices."""

    flag: Flag
    jumps: tuple  # (-h1, -h2, -h3, -h4), increasing

    def member(self, dim: int) -> Subspace:
        if dim == 0:
            return Subspace(rows=())
        if dim == 4:
            return Subspace.span(coerce_rows([[1 if i == j else 0 for j in range(4)] for i in range(4)]))
        return self.flag.members[dim - 1]

    def filtration_member(self, level) -> Subspace:
        """Fil^level as a subspace: dimension drops as the level passes a jump."""
        dim = sum(1 for j in self.jumps if level <= j)
        return self.member(dim)


def _require_structure(d: PhiModuleData, *, nondegenerate: bool) -> None:
    report = validate(d)
    bad = [
        c.name
        for c in report.failures()
        if nondegenerate or c.name != "nondegeneracy-polynomial"
    ]
    if bad:
        raise InvalidData("; ".join(bad))


def _build_flag(d: PhiModuleData) -> HodgeFlag:
    # v1, v2, v3 are independent for every (a, b), so the flag always exists.
    v1, v2, v3, _ = d.basis_vectors()
    flag = Flag(
        members=(
            Subspace.span([v1]),
            Subspace.span([v1, v2]),
            Subspace.span([v1, v2, v3]),
        ),
        kind="complete",
    )
    h = d.weights
    return HodgeFlag(flag=flag, jumps=(-h[0], -h[1], -h[2], -h[3]))


def standard_filtration(d: PhiModuleData) -> HodgeFlag:
    """Build the unique standard-form flag; rejects invalid presentations."""
    _require_structure(d, nondegenerate=True)
    return _build_flag(d)


def coordinate_subspace(indices) -> Subspace:
    rows = []
    for i in indices:
        row = [Q(0)] * 4
        row[i - 1] = Q(1)
        rows.append(tuple(row))
    return Subspace.span(rows)


def general_position(hf: HodgeFlag) -> bool:
    """Whether every coordinate subspace meets the flag in expected dimension."""
    for size in (1, 2, 3):
        for S in combinations((1, 2, 3, 4), size):
            ES = coordinate_subspace(S)
            for i in (1, 2, 3):
                expected = max(0, i + size - 4)
                if hf.member(i).intersect(ES).dim != expected:
                    return False
    return True


def siegel_plucker_minors(d: PhiModuleData):
    """2x2 minors of the F^2 basis matrix in column-pair order
    (12, 13, 14, 23, 24, 34)."""
    v1, v2, _, _ = d.basis_vectors()
    out = []
    for i, j in combinations(range(4), 2):
        out.append(v1[i] * v2[j] - v1[j] * v2[i])
    return out


def _hodge_t_invariant(hf: HodgeFlag, V: Subspace) -> int:
    """Sum of induced filtration jumps on V: the k-th jump label sits on
    the graded piece member(5-k)/member(4-k)."""
    total = 0
    for k in (1, 2, 3, 4):
        big = hf.member(5 - k)
        small = hf.member(4 - k)
        total += hf.jumps[k - 1] * (V.intersect(big).dim - V.intersect(small).dim)
    return total


def weak_admissibility(d: PhiModuleData, hf: HodgeFlag | None = None) -> bool:
    """Newton-above-Hodge over every phi-stable eigenvector span, with
    equality on the whole space.  General position is not required."""
    if hf is None:
        _require_structure(d, nondegenerate=False)
        hf = _build_flag(d)
    vals = [padic_val(Q(x), d.p) for x in d.alphas]
    for size in (1, 2, 3, 4):
        for S in combinations((1, 2, 3, 4), size):
            t_newton = sum(vals[i - 1] for i in S)
            t_hodge = _hodge_t_invariant(hf, coordinate_subspace(S))
            if size == 4:
                if t_newton != t_hodge:
                    return False
            elif t_newton < t_hodge:
                return False
    return True


def newton_hodge_shortcut(p: int, alphas, weights) -> bool:
    """Polygon form of weak admissibility: sorted-valuation partial sums
    against the weight partial sums.  Agrees with the subset checker in
    general position."""
    vals = sorted(padic_val(Q(x), p) for x in alphas)
    h = list(weights)
    for i in (1, 2, 3):
        if sum(vals[:i]) + sum(h[:i]) < 0:
            return False
    return sum(vals) + sum(h) == 0


def admissible_refinements(d: PhiModuleData, hf: HodgeFlag | None = None):
    """Weyl elements w whose weight pairing is Newton-above-Hodge.

    The w-condition pairs the eigenvalue prefixes (in their given order)
    against the filtration with its jump labels permuted by the
    check-involution of w; only the identity survives once the weight gaps
    dominate the valuation spread.  Hodge sums use the actual member
    subspaces, so degenerate (a, b) are handled faithfully.
    """
    from .weyl import check_involution

    if hf is None:
        _require_structure(d, nondegenerate=False)
        hf = _build_flag(d)
    vals = [padic_val(Q(x), d.p) for x in d.alphas]
    h = d.weights
    out = []
    for w in W_ALL:
        wc_inv = check_involution(w).inv()
        relabeled = HodgeFlag(
            flag=hf.flag, jumps=tuple(-h[wc_inv(k) - 1] for k in (1, 2, 3, 4))
        )
        ok = True
        for i in (1, 2, 3, 4):
            t_newton = sum(vals[:i])
            t_hodge = _hodge_t_invariant(relabeled, coordinate_subspace(range(1, i + 1)))
            if i == 4:
                ok = ok and t_newton == t_hodge
            else:
                ok = ok and t_newton >= t_hodge
            if not ok:
                break
        if ok:
            out.append(w)
    return out


def refinement_parameters(d: PhiModuleData, w: WeylElem):
    """Graded parameters of the w-triangulation: unr(alpha_{w^{-1}(i)}) z^{h_i}."""
    _require_structure(d, nondegenerate=True)
    winv = w.inv()
    out = []
    for i in (1, 2, 3, 4):
        alpha = Q(d.alphas[winv(i) - 1])
        out.append(QpChar(d.p, coef=alpha, zexp=Q(d.weights[i - 1])))
    return out


def phi_module_from_json(doc: dict) -> PhiModuleData:
    """Build PhiModuleData from its wire form (see External Interfaces)."""
    from .scalars import parse_scalar

    try:
        p = int(doc["p"])
        alphas = tuple(Q(parse_scalar(str(s))) for s in doc["alphas"])
        weights = tuple(int(x) for x in doc["weights"])
        symbolic = bool(doc.get("symbolic", False))
        a = parse_scalar(str(doc.get("a", "a" if symbolic else "1")), symbolic)
        b = parse_scalar(str(doc.get("b", "b" if symbolic else "1")), symbolic)
    except (KeyError, TypeError, ValueError) as exc:
        raise InvalidData(f"bad phi-module document: {exc}") from exc
    return PhiModuleData(p=p, alphas=alphas, weights=weights, a=a, b=b)


def phi_module_to_json(d: PhiModuleData) -> dict:
    return {
        "p": d.p,
        "alphas": [scalar_str(Q(x)) for x in d.alphas],
        "weights": [int(x) for x in d.weights],
        "a": scalar_str(d.a),
        "b": scalar_str(d.b),
        "symbolic": d.symbolic,
    }
