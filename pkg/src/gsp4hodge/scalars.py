"""Exact scalar arithmetic: rationals, the field Q(a,b), and p-adic valuations.

Every computation in the package runs over one of two coefficient fields:
plain rationals (``fractions.Fraction``) or bivariate rational functions in
the formal Hodge parameters ``a`` and ``b`` (:class:`RatFunc`).  Both are
kept in a unique canonical form so that equality is a plain comparison.
No floating point is used anywhere.
"""

from __future__ import annotations

import ast
import os
from fractions import Fraction as Q
from math import gcd as _int_gcd, lcm as _int_lcm

from .errors import (
    DegreeCapExceeded,
    DivisionByZero,
    ParseError,
    VariantMismatch,
    ZeroArgument,
)

Monomial = tuple[int, int]  # (exponent of a, exponent of b)


def _degree_cap() -> int | None:
    raw = os.environ.get("GSP4H_MAX_DEGREE")
    return int(raw) if raw else None


def _grlex_key(m: Monomial) -> tuple[int, int]:
    # Graded lexicographic with a > b: total degree first, then a-exponent.
    return (m[0] + m[1], m[0])


class Poly2:
    """Bivariate polynomial in a, b with rational coefficients.

    Immutable; terms are stored sparsely and zero coefficients are never
    kept, so two equal polynomials have identical term dictionaries.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: dict[Monomial, Q] | None = None):
        clean = {}
        for mono, coef in (terms or {}).items():
            coef = Q(coef)
            if coef:
                clean[(int(mono[0]), int(mono[1]))] = coef
        self._terms = clean
        self._hash = None
        cap = _degree_cap()
        if cap is not None and self.total_degree() > cap:
            raise DegreeCapExceeded(
                f"polynomial degree {self.total_degree()} exceeds GSP4H_MAX_DEGREE={cap}"
            )

    # -- constructors -------------------------------------------------

    @staticmethod
    def const(c) -> "Poly2":
        return Poly2({(0, 0): Q(c)})

    @staticmethod
    def var(name: str) -> "Poly2":
        if name == "a":
            return Poly2({(1, 0): Q(1)})
        if name == "b":
            return Poly2({(0, 1): Q(1)})
        raise ParseError(f"unknown symbol {name!r}, expected 'a' or 'b'")

    # -- basic structure ----------------------------------------------

    @property
    def terms(self) -> dict[Monomial, Q]:
        return dict(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_const(self) -> bool:
        return not self._terms or set(self._terms) == {(0, 0)}

    def const_value(self) -> Q:
        if not self.is_const():
            raise ValueError("not a constant polynomial")
        return self._terms.get((0, 0), Q(0))

    def total_degree(self) -> int:
        return max((da + db for da, db in self._terms), default=0)

    def leading_monomial(self) -> Monomial:
        if not self._terms:
            raise ValueError("zero polynomial has no leading monomial")
        return max(self._terms, key=_grlex_key)

    def leading_coeff(self) -> Q:
        return self._terms[self.leading_monomial()]

    # -- arithmetic ----------------------------------------------------

    def __add__(self, other):
        other = _as_poly(other)
        if other is NotImplemented:
            return NotImplemented
        terms = dict(self._terms)
        for mono, coef in other._terms.items():
            acc = terms.get(mono, Q(0)) + coef
            if acc:
                terms[mono] = acc
            else:
                terms.pop(mono, None)
        return Poly2(terms)

    __radd__ = __add__

    def __neg__(self):
        return Poly2({m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        other = _as_poly(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return _as_poly(other) + (-self)

    def __mul__(self, other):
        other = _as_poly(other)
        if other is NotImplemented:
            return NotImplemented
        terms: dict[Monomial, Q] = {}
        for (da1, db1), c1 in self._terms.items():
            for (da2, db2), c2 in other._terms.items():
                mono = (da1 + da2, db1 + db2)
                acc = terms.get(mono, Q(0)) + c1 * c2
                if acc:
                    terms[mono] = acc
                else:
                    terms.pop(mono, None)
        return Poly2(terms)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power of a polynomial")
        out = Poly2.const(1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base if n > 1 else base
            n >>= 1
        return out

    def scale(self, c: Q) -> "Poly2":
        c = Q(c)
        return Poly2({m: coef * c for m, coef in self._terms.items()})

    def evaluate(self, a, b) -> Q:
        a, b = Q(a), Q(b)
        return sum((c * a**da * b**db for (da, db), c in self._terms.items()), Q(0))

    # -- comparisons ----------------------------------------------------

    def __eq__(self, other):
        other = _as_poly(other)
        if other is NotImplemented:
            return NotImplemented
        return self._terms == other._terms

    def __bool__(self):
        return bool(self._terms)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    # -- display ---------------------------------------------------------

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for mono in sorted(self._terms, key=_grlex_key, reverse=True):
            coef = self._terms[mono]
            factors = []
            for sym, exp in zip("ab", mono):
                if exp == 1:
                    factors.append(sym)
                elif exp > 1:
                    factors.append(f"{sym}**{exp}")
            if not factors:
                body = str(abs(coef))
            elif abs(coef) == 1:
                body = "*".join(factors)
            else:
                body = "*".join([str(abs(coef))] + factors)
            sign = "-" if coef < 0 else "+"
            parts.append((sign, body))
        first_sign, first_body = parts[0]
        out = ("-" if first_sign == "-" else "") + first_body
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def __repr__(self):
        return f"Poly2({self})"


def _as_poly(x) -> "Poly2":
    if isinstance(x, Poly2):
        return x
    if isinstance(x, (int, Q)):
        return Poly2.const(x)
    return NotImplemented


# ---------------------------------------------------------------------------
# Polynomial gcd.  Rational inputs are scaled to primitive integer
# polynomials (Gauss's lemma), then a primitive pseudo-remainder sequence
# in b over Z[a] runs with integer content stripped at every step, which
# keeps coefficient growth tame.
# ---------------------------------------------------------------------------

UPolyZ = dict[int, int]  # univariate over Z in the variable a


def _udeg(u: UPolyZ) -> int:
    return max(u, default=-1)


def _utrim(u: UPolyZ) -> UPolyZ:
    return {d: c for d, c in u.items() if c}


def _umul(f: UPolyZ, g: UPolyZ) -> UPolyZ:
    out: UPolyZ = {}
    for d1, c1 in f.items():
        for d2, c2 in g.items():
            out[d1 + d2] = out.get(d1 + d2, 0) + c1 * c2
    return _utrim(out)


def _usub(f: UPolyZ, g: UPolyZ) -> UPolyZ:
    out = dict(f)
    for d, c in g.items():
        out[d] = out.get(d, 0) - c
    return _utrim(out)


def _uscale(f: UPolyZ, c: int) -> UPolyZ:
    return {d: k * c for d, k in f.items()} if c else {}


def _ucontent(f: UPolyZ) -> int:
    c = 0
    for k in f.values():
        c = _int_gcd(c, abs(k))
        if c == 1:
            break
    return c


def _uprimitive(f: UPolyZ) -> UPolyZ:
    c = _ucontent(f)
    if c <= 1:
        return dict(f)
    return {d: k // c for d, k in f.items()}


def _uprem(f: UPolyZ, g: UPolyZ) -> UPolyZ:
    """Remainder of f by g up to a rational scalar (gcd use only).

    Content is stripped every step, so coefficients stay near input size.
    """
    dg, lg = _udeg(g), g[_udeg(g)]
    r = dict(f)
    while r and _udeg(r) >= dg:
        dr, lr = _udeg(r), r[_udeg(r)]
        c = _int_gcd(lg, lr)
        mr, mg = lg // c, lr // c
        r = _usub(_uscale(r, mr), {d + dr - dg: k * mg for d, k in g.items()})
        r = _uprimitive(r)
    return r


def _ugcd(f: UPolyZ, g: UPolyZ) -> UPolyZ:
    """Primitive gcd in Z[a] with positive leading coefficient."""
    f, g = _uprimitive(_utrim(f)), _uprimitive(_utrim(g))
    if _udeg(f) < _udeg(g):
        f, g = g, f
    while g:
        f, g = g, _uprimitive(_uprem(f, g))
    if f and f[_udeg(f)] < 0:
        f = _uscale(f, -1)
    return f


def _udivexact(f: UPolyZ, g: UPolyZ) -> UPolyZ:
    """Exact division in Z[a] (the quotient must have integer coefficients)."""
    if not g:
        raise DivisionByZero("univariate division by zero")
    q: UPolyZ = {}
    r = dict(f)
    dg, lg = _udeg(g), g[_udeg(g)]
    while r:
        dr = _udeg(r)
        if dr < dg or r[dr] % lg:
            raise ValueError("inexact univariate division")
        c = r[dr] // lg
        q[dr - dg] = c
        r = _usub(r, {d + dr - dg: k * c for d, k in g.items()})
    return q


BViewZ = dict[int, UPolyZ]  # b-degree -> coefficient in Z[a]


def _zify(p: Poly2) -> dict[Monomial, int]:
    """Primitive integer form of a nonzero rational polynomial."""
    denom = 1
    for c in p._terms.values():
        denom = _int_lcm(denom, c.denominator)
    ints = {m: int(c * denom) for m, c in p._terms.items()}
    cont = 0
    for v in ints.values():
        cont = _int_gcd(cont, abs(v))
    return {m: v // cont for m, v in ints.items()}


def _bview(ints: dict[Monomial, int]) -> BViewZ:
    out: BViewZ = {}
    for (da, db), c in ints.items():
        out.setdefault(db, {})[da] = c
    return out


def _bview_to_poly(v: BViewZ) -> Poly2:
    terms: dict[Monomial, Q] = {}
    for db, u in v.items():
        for da, c in u.items():
            terms[(da, db)] = Q(c)
    return Poly2(terms)


def _bdeg(v: BViewZ) -> int:
    return max((d for d, u in v.items() if u), default=-1)


def _btrim(v: BViewZ) -> BViewZ:
    return {d: u for d, u in ((d, _utrim(u)) for d, u in v.items()) if u}


def _bscale(v: BViewZ, u: UPolyZ) -> BViewZ:
    return _btrim({d: _umul(cu, u) for d, cu in v.items()})


def _bsub(v: BViewZ, w: BViewZ) -> BViewZ:
    out = {d: dict(u) for d, u in v.items()}
    for d, u in w.items():
        out[d] = _usub(out.get(d, {}), u)
    return _btrim(out)


def _bcontent(v: BViewZ) -> UPolyZ:
    g: UPolyZ = {}
    for _, u in sorted(v.items()):
        g = _ugcd(g, u)
        if _udeg(g) == 0:
            break
    return g


def _bprimitive(v: BViewZ) -> BViewZ:
    cont = _bcontent(v)
    if not cont:
        return {}
    if _udeg(cont) == 0 and cont.get(0) == 1:
        return _btrim(v)
    return {d: _udivexact(u, cont) for d, u in _btrim(v).items()}


def _bint_content(v: BViewZ) -> int:
    c = 0
    for u in v.values():
        for k in u.values():
            c = _int_gcd(c, abs(k))
            if c == 1:
                return 1
    return c


def _bprem(f: BViewZ, g: BViewZ) -> BViewZ:
    """Remainder of f by g in the variable b, up to a rational scalar.

    Integer content is stripped every step (gcd use only).
    """
    dg = _bdeg(g)
    lg = g[dg]
    r = {d: dict(u) for d, u in f.items()}
    while r and _bdeg(r) >= dg:
        dr = _bdeg(r)
        lead = r[dr]
        shifted = {d + dr - dg: _umul(u, lead) for d, u in g.items()}
        r = _bsub(_bscale(r, lg), shifted)
        c = _bint_content(r)
        if c > 1:
            r = {d: {e: k // c for e, k in u.items()} for d, u in r.items()}
    return r


def poly_gcd(p: Poly2, q: Poly2) -> Poly2:
    """Monic gcd of two bivariate polynomials (1 for coprime inputs)."""
    if p.is_zero():
        return _monic(q)
    if q.is_zero():
        return _monic(p)
    if p.is_const() or q.is_const():
        return Poly2.const(1)
    pv, qv = _bview(_zify(p)), _bview(_zify(q))
    cont = _ugcd(_bcontent(pv), _bcontent(qv))
    f, g = _bprimitive(pv), _bprimitive(qv)
    if _bdeg(f) < _bdeg(g):
        f, g = g, f
    # Primitive PRS in b.  A nonzero remainder of b-degree 0 means the
    # b-primitive parts are coprime, so only the content survives.
    while True:
        if _bdeg(g) <= 0:
            prim: BViewZ = {0: {0: 1}}
            break
        r = _bprem(f, g)
        if not r:
            prim = g
            break
        f, g = g, _bprimitive(r)
    return _monic(_bview_to_poly(prim) * _bview_to_poly({0: cont}))


def poly_divexact(p: Poly2, d: Poly2) -> Poly2:
    """Exact division p/d over Q; raises if d does not divide p."""
    if d.is_zero():
        raise DivisionByZero("polynomial division by zero")
    if p.is_zero():
        return Poly2()
    if d.is_const():
        return p.scale(1 / d.const_value())
    # Divide the primitive integer parts (exact by Gauss's lemma), then
    # restore the rational scale factor.
    pz, dz = _zify(p), _zify(d)
    pv, dv = _bview(pz), _bview(dz)
    dd = _bdeg(dv)
    lead = dv[dd]
    out: BViewZ = {}
    r = pv
    while r:
        dr = _bdeg(r)
        if dr < dd:
            raise ValueError("inexact polynomial division")
        qc = _udivexact(r[dr], lead)
        out[dr - dd] = qc
        shifted = {d0 + dr - dd: _umul(u, qc) for d0, u in dv.items()}
        r = _bsub(r, shifted)
    quot = _bview_to_poly(out)
    # p = scale_p * P, d = scale_d * D with P, D primitive; p/d = (scale_p/scale_d) * (P/D)
    mono_p = max(pz, key=_grlex_key)
    mono_d = max(dz, key=_grlex_key)
    scale = (p._terms[mono_p] / pz[mono_p]) / (d._terms[mono_d] / dz[mono_d])
    return quot.scale(scale)


def _monic(p: Poly2) -> Poly2:
    if p.is_zero():
        return p
    return p.scale(1 / p.leading_coeff())


# ---------------------------------------------------------------------------
# The rational function field Q(a, b)
# ---------------------------------------------------------------------------


class RatFunc:
    """Element of Q(a,b) in canonical form.

    Invariants: the denominator is nonzero with grlex leading coefficient 1,
    and gcd(num, den) = 1.  Equality and hashing act on the canonical pair.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: Poly2, den: Poly2 | None = None, _canonical=False):
        den = Poly2.const(1) if den is None else den
        if den.is_zero():
            raise DivisionByZero("rational function with zero denominator")
        if not _canonical:
            if num.is_zero():
                num, den = Poly2(), Poly2.const(1)
            else:
                g = poly_gcd(num, den)
                if not g.is_const() or g.const_value() != 1:
                    num = poly_divexact(num, g)
                    den = poly_divexact(den, g)
                lead = den.leading_coeff()
                if lead != 1:
                    num = num.scale(1 / lead)
                    den = den.scale(1 / lead)
        self.num = num
        self.den = den

    # -- constructors ----------------------------------------------------

    @staticmethod
    def const(c) -> "RatFunc":
        return RatFunc(Poly2.const(c))

    @staticmethod
    def var(name: str) -> "RatFunc":
        return RatFunc(Poly2.var(name))

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_const(self) -> bool:
        return self.num.is_const() and self.den.is_const()

    def const_value(self) -> Q:
        if not self.is_const():
            raise ValueError("not a constant rational function")
        return self.num.const_value() / self.den.const_value()

    # -- field operations -------------------------------------------------
    #
    # Operands are already reduced, so sums and products only need the
    # classical cross-gcd reductions; the results below are canonical up
    # to normalizing the denominator's leading coefficient.

    def __add__(self, other):
        other = _as_ratfunc(other)
        if other is NotImplemented:
            return NotImplemented
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        g = poly_gcd(self.den, other.den)
        if g.is_const():
            num = self.num * other.den + other.num * self.den
            den = self.den * other.den
        else:
            d2g = poly_divexact(other.den, g)
            t = self.num * d2g + other.num * poly_divexact(self.den, g)
            h = poly_gcd(t, g)
            if h.is_const():
                num, den = t, self.den * d2g
            else:
                num = poly_divexact(t, h)
                den = poly_divexact(self.den, h) * d2g
        return _canonical_ratfunc(num, den)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(-self.num, self.den, _canonical=True)

    def __sub__(self, other):
        other = _as_ratfunc(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return _as_ratfunc(other) + (-self)

    def __mul__(self, other):
        other = _as_ratfunc(other)
        if other is NotImplemented:
            return NotImplemented
        if self.is_zero() or other.is_zero():
            return RatFunc.const(0)
        g1 = poly_gcd(self.num, other.den)
        g2 = poly_gcd(other.num, self.den)
        n1 = self.num if g1.is_const() else poly_divexact(self.num, g1)
        d2 = other.den if g1.is_const() else poly_divexact(other.den, g1)
        n2 = other.num if g2.is_const() else poly_divexact(other.num, g2)
        d1 = self.den if g2.is_const() else poly_divexact(self.den, g2)
        return _canonical_ratfunc(n1 * n2, d1 * d2)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _as_ratfunc(other)
        if other is NotImplemented:
            return NotImplemented
        if other.is_zero():
            raise DivisionByZero("division by zero rational function")
        return self * _canonical_ratfunc(other.den, other.num)

    def __rtruediv__(self, other):
        return _as_ratfunc(other) / self

    def __pow__(self, n: int):
        if n < 0:
            return RatFunc.const(1) / self ** (-n)
        return _canonical_ratfunc(self.num**n, self.den**n)

    def evaluate(self, a, b) -> Q:
        d = self.den.evaluate(a, b)
        if d == 0:
            raise DivisionByZero(f"denominator vanishes at ({a}, {b})")
        return self.num.evaluate(a, b) / d

    # -- comparisons ------------------------------------------------------

    def __eq__(self, other):
        other = _as_ratfunc(other)
        if other is NotImplemented:
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __bool__(self):
        return not self.num.is_zero()

    def __hash__(self):
        return hash((self.num, self.den))

    def __str__(self):
        if self.den.is_const() and self.den.const_value() == 1:
            return str(self.num)
        return f"({self.num})/({self.den})"

    def __repr__(self):
        return f"RatFunc({self})"


def _canonical_ratfunc(num: Poly2, den: Poly2) -> RatFunc:
    """Build a RatFunc from an already-coprime pair, normalizing the lead."""
    if num.is_zero():
        return RatFunc(Poly2(), Poly2.const(1), _canonical=True)
    lead = den.leading_coeff()
    if lead != 1:
        num, den = num.scale(1 / lead), den.scale(1 / lead)
    return RatFunc(num, den, _canonical=True)


def _as_ratfunc(x) -> "RatFunc":
    if isinstance(x, RatFunc):
        return x
    if isinstance(x, (int, Q)):
        return RatFunc.const(x)
    return NotImplemented


# ---------------------------------------------------------------------------
# Scalar-level operations
# ---------------------------------------------------------------------------

Scalar = Q | RatFunc


def is_zero(x: Scalar) -> bool:
    """Exact zero test on either scalar variant."""
    if isinstance(x, RatFunc):
        return x.is_zero()
    return Q(x) == 0


def field_arith(x: Scalar, y: Scalar, op: str) -> Scalar:
    """Strict field arithmetic: both operands must be the same variant."""
    x_sym = isinstance(x, RatFunc)
    y_sym = isinstance(y, RatFunc)
    if x_sym != y_sym:
        raise VariantMismatch(
            f"cannot mix {type(x).__name__} with {type(y).__name__}"
        )
    if not x_sym:
        x, y = Q(x), Q(y)
    if op == "add":
        return x + y
    if op == "sub":
        return x - y
    if op == "mul":
        return x * y
    if op == "div":
        if is_zero(y):
            raise DivisionByZero("scalar division by zero")
        return x / y
    raise ParseError(f"unknown field operation {op!r}")


def _int_val(n: int, p: int) -> int:
    """Exponent of p in a positive integer; doubling ladder keeps the
    division count logarithmic in the exponent."""
    if p == 2:
        return (n & -n).bit_length() - 1
    v = 0
    while n % p == 0:
        q, e = p, 1
        while n % (q * q) == 0:
            q, e = q * q, e * 2
        n //= q
        v += e
    return v


def padic_val(x, p: int) -> int:
    """Exponent of the prime p in the nonzero rational x."""
    x = Q(x)
    if x == 0:
        raise ZeroArgument("p-adic valuation of zero")
    return _int_val(abs(x.numerator), p) - _int_val(x.denominator, p)


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


# ---------------------------------------------------------------------------
# Serialization
# ---------------------------------------------------------------------------


def scalar_str(x: Scalar) -> str:
    """Canonical string form: "num/den" rationals or polynomial quotients."""
    if isinstance(x, RatFunc):
        return str(x)
    return str(Q(x))


_ALLOWED_NODES = (
    ast.Expression,
    ast.BinOp,
    ast.UnaryOp,
    ast.Add,
    ast.Sub,
    ast.Mult,
    ast.Div,
    ast.Pow,
    ast.USub,
    ast.UAdd,
    ast.Name,
    ast.Load,
    ast.Constant,
)


def _eval_node(node, symbolic: bool):
    if isinstance(node, ast.Expression):
        return _eval_node(node.body, symbolic)
    if isinstance(node, ast.Constant):
        if not isinstance(node.value, int):
            raise ParseError(f"non-integer literal {node.value!r}")
        return RatFunc.const(node.value) if symbolic else Q(node.value)
    if isinstance(node, ast.Name):
        if not symbolic:
            raise ParseError(f"symbol {node.id!r} in numeric scalar")
        return RatFunc.var(node.id)
    if isinstance(node, ast.UnaryOp):
        val = _eval_node(node.operand, symbolic)
        return -val if isinstance(node.op, ast.USub) else val
    if isinstance(node, ast.BinOp):
        lhs = _eval_node(node.left, symbolic)
        rhs = _eval_node(node.right, symbolic)
        if isinstance(node.op, ast.Add):
            return lhs + rhs
        if isinstance(node.op, ast.Sub):
            return lhs - rhs
        if isinstance(node.op, ast.Mult):
            return lhs * rhs
        if isinstance(node.op, ast.Div):
            if is_zero(rhs):
                raise ParseError("division by zero in scalar expression")
            return lhs / rhs
        if isinstance(node.op, ast.Pow):
            if not isinstance(node.right, ast.Constant) or not isinstance(
                node.right.value, int
            ):
                raise ParseError("exponents must be integer literals")
            return lhs ** node.right.value
    raise ParseError(f"unsupported syntax in scalar expression: {ast.dump(node)}")


def parse_scalar(text: str, symbolic: bool = False) -> Scalar:
    """Parse "3/4", "-2", "a*b + 1" or "(b + 1)/(a - 2)" style strings."""
    try:
        tree = ast.parse(text.strip(), mode="eval")
    except SyntaxError as exc:
        raise ParseError(f"bad scalar expression {text!r}: {exc}") from exc
    for node in ast.walk(tree):
        if not isinstance(node, _ALLOWED_NODES):
            raise ParseError(f"forbidden syntax in scalar expression {text!r}")
    return _eval_node(tree, symbolic)
