"""Desk-scale Hecke recipes: the degree-4 Frobenius characteristic
polynomial from unramified Hecke eigenvalues, the inverse maximal-ideal
generator map, and the classicality inequality classifier.

The two named constants in the weight-gap bound are kept verbatim from the
source construction.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction as Q

from .errors import InconsistentData, InvalidData
from .scalars import is_prime, padic_val
from .weyl import W_ALL, WeylElem, check_involution

GAP_SLOPE = 20170901
GAP_OFFSET = 20260630


@dataclass(frozen=True)
class HeckeData:
    l: int
    c0: Q
    c1: Q
    c2: Q

    def __post_init__(self):
        if not is_prime(self.l):
            raise InvalidData(f"l = {self.l} is not prime")
        for name in ("c0", "c1", "c2"):
            object.__setattr__(self, name, Q(getattr(self, name)))
        if self.c0 == 0:
            raise InvalidData("c0 must be invertible")


@dataclass(frozen=True)
class FrobeniusData:
    """Monic quartic coefficients (T^4 + q3 T^3 + q2 T^2 + q1 T + q0) and
    the similitude value of Frobenius."""

    coeffs: tuple
    sim: Q

    def __post_init__(self):
        coeffs = tuple(Q(x) for x in self.coeffs)
        if len(coeffs) != 4:
            raise InvalidData("need exactly the four non-leading coefficients")
        object.__setattr__(self, "coeffs", coeffs)
        object.__setattr__(self, "sim", Q(self.sim))

    @property
    def trace(self) -> Q:
        return -self.coeffs[0]


def hecke_charpoly(d: HeckeData) -> FrobeniusData:
    """Characteristic polynomial of Frobenius from the three eigenvalues:
    T^4 - c1 T^3 + ((l^3+l)c0 + l c2) T^2 - l^3 c0 c1 T + l^6 c0^2."""
    l = Q(d.l)
    q3 = -d.c1
    q2 = (l**3 + l) * d.c0 + l * d.c2
    q1 = -(l**3) * d.c0 * d.c1
    q0 = l**6 * d.c0**2
    return FrobeniusData(coeffs=(q3, q2, q1, q0), sim=l**3 * d.c0)


def ideal_generators(f: FrobeniusData, l: int) -> HeckeData:
    """Invert the charpoly map: eigenvalues generating the attached maximal
    ideal.  Raises InconsistentData when the quartic cannot arise."""
    if not is_prime(l):
        raise InvalidData(f"l = {l} is not prime")
    lq = Q(l)
    q3, q2, q1, q0 = f.coeffs
    if q0 != f.sim**2:
        raise InconsistentData(f"constant term {q0} differs from sim^2 = {f.sim ** 2}")
    if q1 != f.sim * q3:
        raise InconsistentData(
            f"linear coefficient {q1} differs from sim * (cubic) = {f.sim * q3}"
        )
    c0 = f.sim / lq**3
    c1 = -q3
    c2 = q2 / lq - (1 / lq + 1 / lq**3) * f.sim
    return HeckeData(l=l, c0=c0, c1=c1, c2=c2)


# ---------------------------------------------------------------------------
# Classicality classifier
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ClassicalityReport:
    bound_ok: bool
    bound_witness: str
    alternate_reading_differs: bool
    gap_ok: bool
    gap_witness: str
    admissible: tuple  # Weyl words satisfying the partial-sum conditions
    very_classical: bool

    def as_dict(self):
        return {
            "bound_ok": self.bound_ok,
            "bound_witness": self.bound_witness,
            "alternate_reading_differs": self.alternate_reading_differs,
            "gap_ok": self.gap_ok,
            "gap_witness": self.gap_witness,
            "admissible": list(self.admissible),
            "very_classical": self.very_classical,
        }


def partial_sum_set(p: int, alphas, weights) -> list[WeylElem]:
    """Weyl elements w with nonnegative partial sums of
    val(alpha_j) + h_{(w-check)^{-1}(j)} and full-sum equality."""
    vals = [padic_val(Q(x), p) for x in alphas]
    h = list(weights)
    out = []
    for w in W_ALL:
        winv = check_involution(w).inv()
        ok = True
        for i in (1, 2, 3, 4):
            s = sum(vals[:i]) + sum(h[winv(j) - 1] for j in range(1, i + 1))
            if i == 4:
                ok = ok and s == 0
            else:
                ok = ok and s >= 0
            if not ok:
                break
        if ok:
            out.append(w)
    return out


def classicality_classify(alphas, weights, p: int, C) -> ClassicalityReport:
    """Check the valuation bound, the weight-gap bound, and collect the
    admissible partial-sum set; flag very-classical when only the identity
    survives."""
    if not is_prime(p):
        raise InvalidData(f"p = {p} is not prime")
    C = Q(C)
    if C <= 0:
        raise InvalidData("the bound C must be positive")
    alphas = tuple(Q(x) for x in alphas)
    if any(x == 0 for x in alphas):
        raise InvalidData("zero eigenvalue")
    h = tuple(int(x) for x in weights)
    if not (h[0] > h[1] > h[2] > h[3]) or h[0] + h[3] != h[1] + h[2]:
        raise InvalidData(f"bad weights {h}")

    vals = [padic_val(x, p) for x in alphas]

    # (a) per-index bound, plus the single-index literal reading for the
    # report (both readings coincide iff all valuations agree with val_1)
    bound_ok, witness = True, ""
    for i in range(4):
        if not -C <= h[i] + vals[i] <= C:
            bound_ok, witness = False, f"h_{i+1} + val(alpha_{i+1}) = {h[i] + vals[i]}"
            break
    literal_ok = all(-C <= h[i] + vals[0] <= C for i in range(4))
    alternate_differs = literal_ok != bound_ok

    # (b) strict gap bound
    bound = GAP_SLOPE * C + GAP_OFFSET
    gap_ok, gap_witness = True, ""
    for i in range(3):
        if not h[i] - h[i + 1] > bound:
            gap_ok, gap_witness = (
                False,
                f"h_{i+1} - h_{i+2} = {h[i] - h[i+1]} <= {bound}",
            )
            break

    admissible = partial_sum_set(p, alphas, h)
    very = (
        bound_ok
        and gap_ok
        and len(admissible) == 1
        and admissible[0].word == ""
    )
    return ClassicalityReport(
        bound_ok=bound_ok,
        bound_witness=witness,
        alternate_reading_differs=alternate_differs,
        gap_ok=gap_ok,
        gap_witness=gap_witness,
        admissible=tuple(w.word or "e" for w in admissible),
        very_classical=very,
    )
