"""Exact arithmetic in Z[V], Z[V][t, t^-1], truncated Laurent series, and
their fraction field.

The base coefficient ring is the group ring Z[V] of a free abelian group with
b named generators, realised as multivariate integer Laurent polynomials.
On top of it sit:

* TPolynomial, a Laurent polynomial in one distinguished variable t with
  Z[V] coefficients.  All determinant and torsion work happens here or in
  the fraction field.
* NovikovTruncation, a formal Laurent series in t known exactly up to a
  declared t-degree.  This is the computational face of the completed ring
  Z[V]((t)).
* RationalFunction, an exact quotient of two TPolynomials compared by
  cross-multiplication, never by representative.

Monomial order everywhere: lexicographic with the t-exponent most
significant, then the V-exponents in declaration order.  A full monomial key
is the tuple (t_exp, v_exps), so plain tuple comparison implements the
order.

All values are treated as immutable after construction; every operation
returns a fresh object.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .errors import PreconditionError


@dataclass(frozen=True)
class RingSpec:
    """Names the generators of the ambient ring Z[V][t, t^-1].

    var_names lists the b commuting unit generators of V; t_name is the
    distinguished series variable.  Two specs are interchangeable exactly
    when they compare equal.
    """

    var_names: tuple = ()
    t_name: str = "t"

    def __post_init__(self):
        names = tuple(self.var_names)
        object.__setattr__(self, "var_names", names)
        if len(set(names)) != len(names):
            raise PreconditionError("duplicate group variable names")
        if self.t_name in names:
            raise PreconditionError("t variable clashes with a group variable")

    @property
    def num_group_vars(self) -> int:
        return len(self.var_names)

    def zero_v(self) -> tuple:
        return (0,) * len(self.var_names)


def _coeff_normal(c):
    """Collapse integral Fractions to int; reject anything non-rational."""
    if isinstance(c, Fraction):
        return int(c) if c.denominator == 1 else c
    if isinstance(c, int):
        return c
    raise TypeError(f"coefficient must be int or Fraction, got {type(c).__name__}")


def _check_same_ring(a, b):
    if a.ring != b.ring:
        raise PreconditionError("mismatched ring specs")


class GroupRingElem:
    """Element of Z[V] (or Q[V] in transient zeta computations).

    Stored as a map from exponent vectors in Z^b to nonzero coefficients.
    Coefficients are integers except where an exponential of a formal sum
    passes through rationals before integrality is restored.
    """

    __slots__ = ("ring", "terms")

    def __init__(self, ring: RingSpec, terms=None):
        self.ring = ring
        b = ring.num_group_vars
        clean = {}
        for key, c in (terms or {}).items():
            key = tuple(key)
            if len(key) != b:
                raise PreconditionError(
                    f"exponent vector {key} has length {len(key)}, ring has {b} variables"
                )
            c = _coeff_normal(c)
            if c:
                clean[key] = clean.get(key, 0) + c
                if not clean[key]:
                    del clean[key]
        self.terms = clean

    @classmethod
    def zero(cls, ring):
        return cls(ring)

    @classmethod
    def one(cls, ring):
        return cls(ring, {ring.zero_v(): 1})

    @classmethod
    def monomial(cls, ring, exps, coeff=1):
        return cls(ring, {tuple(exps): coeff})

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = GroupRingElem(self.ring, {self.ring.zero_v(): other})
        if not isinstance(other, GroupRingElem):
            return NotImplemented
        _check_same_ring(self, other)
        return self.terms == other.terms

    __hash__ = None

    def __neg__(self):
        return GroupRingElem(self.ring, {k: -c for k, c in self.terms.items()})

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = GroupRingElem(self.ring, {self.ring.zero_v(): other})
        if not isinstance(other, GroupRingElem):
            return NotImplemented
        _check_same_ring(self, other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            s = out.get(k, 0) + c
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return GroupRingElem(self.ring, out)

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = GroupRingElem(self.ring, {self.ring.zero_v(): other})
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, GroupRingElem):
            return NotImplemented
        _check_same_ring(self, other)
        out = {}
        for ka, ca in self.terms.items():
            for kb, cb in other.terms.items():
                k = tuple(x + y for x, y in zip(ka, kb))
                s = out.get(k, 0) + ca * cb
                if s:
                    out[k] = s
                else:
                    del out[k]
        return GroupRingElem(self.ring, out)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def scale(self, c):
        c = _coeff_normal(c)
        if not c:
            return GroupRingElem.zero(self.ring)
        return GroupRingElem(self.ring, {k: v * c for k, v in self.terms.items()})

    def shift(self, exps):
        """Multiply by the monomial with exponent vector exps."""
        exps = tuple(exps)
        return GroupRingElem(
            self.ring,
            {tuple(x + y for x, y in zip(k, exps)): c for k, c in self.terms.items()},
        )

    def is_integral(self) -> bool:
        return all(isinstance(c, int) for c in self.terms.values())

    def is_single_unit(self):
        """Return (sign, exps) when the element is a single +-1 monomial, else None."""
        if len(self.terms) != 1:
            return None
        (k, c), = self.terms.items()
        if c == 1 or c == -1:
            return c, k
        return None

    def constant_coeff(self):
        return self.terms.get(self.ring.zero_v(), 0)

    def __repr__(self):
        return f"GroupRingElem({format_groupring(self)})"

    def __str__(self):
        return format_groupring(self)


class TPolynomial:
    """Laurent polynomial in t over Z[V], the dense working ring.

    Keys are (t_exponent, v_exponent_vector); coefficients are nonzero
    integers.  Rational coefficients are deliberately rejected here: every
    determinant and torsion computation stays in the integral ring, with
    quotients handled by RationalFunction.
    """

    __slots__ = ("ring", "terms")

    def __init__(self, ring: RingSpec, terms=None):
        self.ring = ring
        b = ring.num_group_vars
        clean = {}
        for key, c in (terms or {}).items():
            t_exp, v = key
            v = tuple(v)
            if len(v) != b:
                raise PreconditionError(
                    f"exponent vector {v} has length {len(v)}, ring has {b} variables"
                )
            c = _coeff_normal(c)
            if isinstance(c, Fraction):
                raise TypeError("TPolynomial coefficients must be integers")
            if c:
                k = (t_exp, v)
                clean[k] = clean.get(k, 0) + c
                if not clean[k]:
                    del clean[k]
        self.terms = clean

    @classmethod
    def zero(cls, ring):
        return cls(ring)

    @classmethod
    def one(cls, ring):
        return cls(ring, {(0, ring.zero_v()): 1})

    @classmethod
    def monomial(cls, ring, t_exp=0, v=None, coeff=1):
        v = ring.zero_v() if v is None else tuple(v)
        return cls(ring, {(t_exp, v): coeff})

    @classmethod
    def t(cls, ring, power=1):
        return cls.monomial(ring, t_exp=power)

    @classmethod
    def var(cls, ring, name, power=1):
        i = ring.var_names.index(name)
        v = [0] * ring.num_group_vars
        v[i] = power
        return cls.monomial(ring, v=v)

    @classmethod
    def from_groupring(cls, g: GroupRingElem, t_exp=0):
        if not g.is_integral():
            raise TypeError("cannot embed rational coefficients into TPolynomial")
        return cls(g.ring, {(t_exp, k): c for k, c in g.terms.items()})

    # ---- structure queries ----

    def __bool__(self):
        return bool(self.terms)

    @property
    def is_zero(self):
        return not self.terms

    def __len__(self):
        return len(self.terms)

    def min_t_degree(self) -> int:
        """Lowest t-exponent present; 0 for the zero polynomial."""
        if not self.terms:
            return 0
        return min(k[0] for k in self.terms)

    def max_t_degree(self) -> int:
        if not self.terms:
            return 0
        return max(k[0] for k in self.terms)

    def lex_min_key(self):
        if not self.terms:
            raise PreconditionError("zero polynomial has no lexicographically least term")
        return min(self.terms)

    def lex_max_key(self):
        if not self.terms:
            raise PreconditionError("zero polynomial has no lexicographically greatest term")
        return max(self.terms)

    def is_t_free(self) -> bool:
        return all(k[0] == 0 for k in self.terms)

    def unit_parts(self):
        """Return (coeff, t_exp, v_exps) when self is a single +-1 monomial, else None."""
        if len(self.terms) != 1:
            return None
        (k, c), = self.terms.items()
        if c == 1 or c == -1:
            return c, k[0], k[1]
        return None

    def content(self) -> int:
        g = 0
        for c in self.terms.values():
            g = gcd(g, abs(c))
        return g

    def t_slices(self):
        """Group terms by t-degree, as {t_exp: GroupRingElem}."""
        out = {}
        for (te, v), c in self.terms.items():
            out.setdefault(te, {})[v] = c
        return {te: GroupRingElem(self.ring, d) for te, d in out.items()}

    def coefficient(self, t_exp, v=None):
        v = self.ring.zero_v() if v is None else tuple(v)
        return self.terms.get((t_exp, v), 0)

    # ---- arithmetic ----

    def _coerce(self, other):
        if isinstance(other, int):
            return TPolynomial(self.ring, {(0, self.ring.zero_v()): other})
        if isinstance(other, TPolynomial):
            _check_same_ring(self, other)
            return other
        return None

    def __eq__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self.terms == other.terms

    __hash__ = None

    def __neg__(self):
        return TPolynomial(self.ring, {k: -c for k, c in self.terms.items()})

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        out = dict(self.terms)
        for k, c in other.terms.items():
            s = out.get(k, 0) + c
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return TPolynomial(self.ring, out)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            if not other:
                return TPolynomial.zero(self.ring)
            return TPolynomial(self.ring, {k: c * other for k, c in self.terms.items()})
        if not isinstance(other, TPolynomial):
            return NotImplemented
        _check_same_ring(self, other)
        out = {}
        for (ta, va), ca in self.terms.items():
            for (tb, vb), cb in other.terms.items():
                k = (ta + tb, tuple(x + y for x, y in zip(va, vb)))
                s = out.get(k, 0) + ca * cb
                if s:
                    out[k] = s
                else:
                    del out[k]
        return TPolynomial(self.ring, out)

    def __rmul__(self, other):
        if isinstance(other, int):
            return self * other
        return NotImplemented

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            raise PreconditionError("polynomial powers must be nonnegative integers")
        out = TPolynomial.one(self.ring)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base if n > 1 else base
            n >>= 1
        return out

    def times_monomial(self, t_exp, v=None, coeff=1):
        """Fast multiply by coeff * t^t_exp * V^v."""
        v = self.ring.zero_v() if v is None else tuple(v)
        return TPolynomial(
            self.ring,
            {
                (te + t_exp, tuple(x + y for x, y in zip(vv, v))): c * coeff
                for (te, vv), c in self.terms.items()
            },
        )

    def divide_content(self, g: int):
        if g in (0, 1):
            return self
        out = {}
        for k, c in self.terms.items():
            if c % g:
                raise ArithmeticError(f"content {g} does not divide coefficient {c}")
            out[k] = c // g
        return TPolynomial(self.ring, out)

    def __repr__(self):
        return f"TPolynomial({format_tpolynomial(self)})"

    def __str__(self):
        return format_tpolynomial(self)


def exact_div(a: TPolynomial, b: TPolynomial) -> TPolynomial:
    """Divide a by b in Z[V][t, t^-1], where the division is known exact.

    Lead-term division in the lexicographic order.  When b | a exactly the
    loop runs once per quotient term; the quotient's exponent spans are
    bounded by span(a) - span(b) in every variable, which gives a hard
    iteration cap.  Exceeding the cap, or hitting a coefficient that the
    lead coefficient of b fails to divide, raises ArithmeticError: the
    division was not exact.
    """
    _check_same_ring(a, b)
    if not b:
        raise PreconditionError("division by the zero polynomial")
    if not a:
        return TPolynomial.zero(a.ring)

    nvars = a.ring.num_group_vars + 1

    def spans(p):
        keys = [(k[0], *k[1]) for k in p.terms]
        return [
            max(k[i] for k in keys) - min(k[i] for k in keys) for i in range(nvars)
        ]

    cap = 1
    for sa, sb in zip(spans(a), spans(b)):
        if sa < sb:
            raise ArithmeticError("inexact polynomial division (span mismatch)")
        cap *= sa - sb + 1

    lead_b = b.lex_max_key()
    cb = b.terms[lead_b]
    rem = dict(a.terms)
    quo = {}
    steps = 0
    while rem:
        steps += 1
        if steps > cap:
            raise ArithmeticError("inexact polynomial division (no termination)")
        lead_r = max(rem)
        cr = rem[lead_r]
        if cr % cb:
            raise ArithmeticError("inexact polynomial division (leading coefficient)")
        qc = cr // cb
        qk = (lead_r[0] - lead_b[0], tuple(x - y for x, y in zip(lead_r[1], lead_b[1])))
        quo[qk] = qc
        for (tb, vb), cc in b.terms.items():
            k = (qk[0] + tb, tuple(x + y for x, y in zip(qk[1], vb)))
            s = rem.get(k, 0) - qc * cc
            if s:
                rem[k] = s
            else:
                rem.pop(k, None)
    return TPolynomial(a.ring, quo)


class NovikovTruncation:
    """A t-series over Z[V] (or Q[V]) known exactly for t-degrees <= order.

    min_t declares that no term below it exists at all; degrees in
    (order, infinity) are unknown rather than zero.  Two truncations compare
    equal when they agree on every degree up to the smaller order.  Slice
    queries above the order raise, queries below min_t return zero.
    """

    __slots__ = ("ring", "order", "min_t", "slices")

    def __init__(self, ring: RingSpec, order: int, slices=None, min_t: int = 0):
        self.ring = ring
        self.order = order
        self.min_t = min_t
        clean = {}
        for d, g in (slices or {}).items():
            if not isinstance(g, GroupRingElem):
                g = GroupRingElem(ring, g)
            if g.ring != ring:
                raise PreconditionError("mismatched ring specs")
            if not g:
                continue
            if d > order or d < min_t:
                raise PreconditionError(
                    f"slice at t-degree {d} outside declared window [{min_t}, {order}]"
                )
            clean[d] = g
        self.slices = clean

    @classmethod
    def from_tpolynomial(cls, p: TPolynomial, order: int, min_t=None):
        sl = {d: g for d, g in p.t_slices().items() if d <= order}
        if min_t is None:
            min_t = p.min_t_degree() if p else 0
        return cls(p.ring, order, sl, min_t=min(min_t, order))

    @classmethod
    def one(cls, ring, order):
        return cls(ring, order, {0: GroupRingElem.one(ring)}, min_t=0)

    @classmethod
    def zero(cls, ring, order, min_t=0):
        return cls(ring, order, {}, min_t=min_t)

    def slice(self, d) -> GroupRingElem:
        if d > self.order:
            raise PreconditionError(
                f"coefficient at t^{d} is beyond the truncation order {self.order}"
            )
        return self.slices.get(d, GroupRingElem.zero(self.ring))

    def __bool__(self):
        return bool(self.slices)

    def __eq__(self, other):
        if not isinstance(other, NovikovTruncation):
            return NotImplemented
        _check_same_ring(self, other)
        k = min(self.order, other.order)
        lo = min(self.min_t, other.min_t)
        for d in range(lo, k + 1):
            a = self.slices.get(d)
            b = other.slices.get(d)
            if a is None and b is None:
                continue
            if (a or GroupRingElem.zero(self.ring)) != (b or GroupRingElem.zero(self.ring)):
                return False
        return True

    __hash__ = None

    def __neg__(self):
        return NovikovTruncation(
            self.ring, self.order, {d: -g for d, g in self.slices.items()}, self.min_t
        )

    def _coerce(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return NovikovTruncation.zero(self.ring, self.order, self.min_t)
            # an exact scalar is known to every order; clamp to ours
            return NovikovTruncation(
                self.ring,
                self.order,
                {0: GroupRingElem(self.ring, {self.ring.zero_v(): other})},
                min_t=min(0, self.min_t),
            )
        if isinstance(other, TPolynomial):
            return NovikovTruncation.from_tpolynomial(other, self.order)
        if isinstance(other, NovikovTruncation):
            _check_same_ring(self, other)
            return other
        return None

    def __add__(self, other):
        if isinstance(other, TPolynomial):
            # exact polynomial: known at every degree, so only our order limits
            other = NovikovTruncation.from_tpolynomial(other, self.order)
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        order = min(self.order, other.order)
        lo = min(self.min_t, other.min_t)
        out = {}
        for d in set(self.slices) | set(other.slices):
            if d > order:
                continue
            g = self.slices.get(d, GroupRingElem.zero(self.ring)) + other.slices.get(
                d, GroupRingElem.zero(self.ring)
            )
            if g:
                out[d] = g
        return NovikovTruncation(self.ring, order, out, lo)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if isinstance(other, TPolynomial):
            # exact factor: reliability limited only through our own error term
            p_min = other.min_t_degree()
            order = self.order + p_min
            out = {}
            for d, g in self.slices.items():
                for te, h in other.t_slices().items():
                    dd = d + te
                    if dd > order:
                        continue
                    s = out.get(dd, GroupRingElem.zero(self.ring)) + g * h
                    out[dd] = s
            out = {d: g for d, g in out.items() if g}
            return NovikovTruncation(self.ring, order, out, self.min_t + p_min)
        if not isinstance(other, NovikovTruncation):
            return NotImplemented
        _check_same_ring(self, other)
        order = min(self.order + other.min_t, other.order + self.min_t)
        lo = self.min_t + other.min_t
        out = {}
        for da, ga in self.slices.items():
            for db, gb in other.slices.items():
                d = da + db
                if d > order:
                    continue
                s = out.get(d, GroupRingElem.zero(self.ring)) + ga * gb
                out[d] = s
        out = {d: g for d, g in out.items() if g}
        return NovikovTruncation(self.ring, order, out, lo)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if isinstance(other, TPolynomial):
            return self * other
        return NotImplemented

    def scale(self, c):
        if not c:
            return NovikovTruncation.zero(self.ring, self.order, self.min_t)
        return NovikovTruncation(
            self.ring, self.order, {d: g.scale(c) for d, g in self.slices.items()}, self.min_t
        )

    def truncate(self, order):
        if order >= self.order:
            return self
        return NovikovTruncation(
            self.ring,
            order,
            {d: g for d, g in self.slices.items() if d <= order},
            min(self.min_t, order),
        )

    def is_integral(self) -> bool:
        return all(g.is_integral() for g in self.slices.values())

    def __repr__(self):
        body = "; ".join(
            f"t^{d}: {format_groupring(g)}" for d, g in sorted(self.slices.items())
        )
        return f"NovikovTruncation[{self.min_t}..{self.order}]({body})"


def series_exp(x: NovikovTruncation) -> NovikovTruncation:
    """exp of a truncation supported in strictly positive t-degrees."""
    if x.min_t < 0 or (x.slices and min(x.slices) < 1):
        raise PreconditionError("series exponential needs strictly positive t-degrees")
    acc = NovikovTruncation.one(x.ring, x.order)
    power = NovikovTruncation.one(x.ring, x.order)
    for j in range(1, x.order + 1):
        power = (power * x).scale(Fraction(1, j)).truncate(x.order)
        if not power:
            break
        acc = acc + power
    return NovikovTruncation(x.ring, x.order, acc.slices, 0)


def series_invert(p: TPolynomial, k: int) -> NovikovTruncation:
    """Invert p in Z[V]((t)) to absolute t-order k - min_t(p).

    The lowest t-slice of p must be a single monomial with coefficient +-1;
    that is exactly invertibility in the series ring, since the units of
    Z[V] are the signed monomials.  Writing p = u * (1 + r) with u the unit
    and r of positive t-degree, the inverse is u^-1 * sum (-r)^j.  The
    result s satisfies p * s = 1 + O(t^(k+1)).
    """
    if not p:
        raise PreconditionError("zero is not invertible")
    m = p.min_t_degree()
    low = p.t_slices()[m]
    unit = low.is_single_unit()
    if unit is None:
        raise PreconditionError(
            "lowest t-coefficient is not a unit monomial; element not invertible"
        )
    sign, v_exps = unit
    # p1 = u^-1 * p has constant slice exactly 1
    v_inv = tuple(-x for x in v_exps)
    p1 = p.times_monomial(-m, v_inv, sign)
    r = p1 - TPolynomial.one(p.ring)
    r_trunc = NovikovTruncation.from_tpolynomial(r, k)
    inv1 = NovikovTruncation.one(p.ring, k)
    power = NovikovTruncation.one(p.ring, k)
    for _ in range(1, k + 1):
        power = (power * r_trunc).scale(-1).truncate(k)
        if not power:
            break
        inv1 = inv1 + power
    shifted = {d - m: g.shift(v_inv).scale(sign) for d, g in inv1.slices.items()}
    return NovikovTruncation(p.ring, k - m, shifted, min_t=-m)


class RationalFunction:
    """Exact quotient of TPolynomials, the working field for torsion.

    The stored pair is normalised in a value-preserving way only: the
    common integer content is divided out, both parts are scaled so the
    denominator's lexicographically least monomial sits at the origin, and
    the sign is arranged so that the denominator's least coefficient is
    positive.  No multivariate gcd reduction is attempted; equality is by
    cross-multiplication.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: TPolynomial, den=None):
        if den is None:
            den = TPolynomial.one(num.ring)
        _check_same_ring(num, den)
        if not den:
            raise PreconditionError("zero denominator")
        if not num:
            num = TPolynomial.zero(num.ring)
            den = TPolynomial.one(num.ring)
        else:
            g = gcd(num.content(), den.content())
            if g > 1:
                num = num.divide_content(g)
                den = den.divide_content(g)
            lt, lv = den.lex_min_key()
            if lt or any(lv):
                inv = tuple(-x for x in lv)
                num = num.times_monomial(-lt, inv)
                den = den.times_monomial(-lt, inv)
            if den.terms[den.lex_min_key()] < 0:
                num = -num
                den = -den
        self.num = num
        self.den = den

    @property
    def ring(self):
        return self.num.ring

    @classmethod
    def from_int(cls, ring, n):
        return cls(TPolynomial.monomial(ring, coeff=n) if n else TPolynomial.zero(ring))

    @classmethod
    def zero(cls, ring):
        return cls(TPolynomial.zero(ring))

    @classmethod
    def one(cls, ring):
        return cls(TPolynomial.one(ring))

    @property
    def is_zero(self):
        return not self.num

    def __bool__(self):
        return bool(self.num)

    def _coerce(self, other):
        if isinstance(other, int):
            return RationalFunction.from_int(self.ring, other)
        if isinstance(other, TPolynomial):
            _check_same_ring(self, other)
            return RationalFunction(other)
        if isinstance(other, RationalFunction):
            _check_same_ring(self, other)
            return other
        return None

    def __eq__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return frac_equal(self, other)

    __hash__ = None

    def __neg__(self):
        return RationalFunction(-self.num, self.den)

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return RationalFunction(
            self.num * other.den + other.num * self.den, self.den * other.den
        )

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return RationalFunction(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other * self.inverse()

    def inverse(self):
        if not self.num:
            raise PreconditionError("inverse of zero")
        return RationalFunction(self.den, self.num)

    def __pow__(self, n):
        if not isinstance(n, int):
            raise TypeError("rational function powers must be integers")
        if n < 0:
            return self.inverse() ** (-n)
        out = RationalFunction.one(self.ring)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base if n > 1 else base
            n >>= 1
        return out

    def __repr__(self):
        return f"RationalFunction({format_rational(self)})"

    def __str__(self):
        return format_rational(self)


def frac_equal(r1: RationalFunction, r2: RationalFunction) -> bool:
    """Exact equality of values: num1*den2 == num2*den1."""
    _check_same_ring(r1, r2)
    return r1.num * r2.den == r2.num * r1.den


def _strip_unit(p: TPolynomial) -> TPolynomial:
    """Divide by the lex-least monomial and fix the sign of its coefficient."""
    lt, lv = p.lex_min_key()
    out = p.times_monomial(-lt, tuple(-x for x in lv))
    if out.terms[(0, p.ring.zero_v())] < 0:
        out = -out
    return out


def canonical_mod_units(r: RationalFunction) -> RationalFunction:
    """Canonical representative of r modulo units +-t^a V^alpha.

    Numerator and denominator are each divided by their own lex-least
    monomial, then signs are fixed so both least coefficients are positive.
    Idempotent, and constant on unit orbits: canonical(u * r) == canonical(r)
    for every monomial unit u.
    """
    if not r.num:
        raise PreconditionError("canonical form of zero requested")
    return RationalFunction(_strip_unit(r.num), _strip_unit(r.den))


def unit_equivalent(r1: RationalFunction, r2: RationalFunction) -> bool:
    """True when r1 and r2 differ by a unit +-t^a V^alpha (or both vanish)."""
    _check_same_ring(r1, r2)
    p = r1.num * r2.den
    q = r2.num * r1.den
    if not p or not q:
        return (not p) and (not q)
    return _strip_unit(p) == _strip_unit(q)


def expand_series(r: RationalFunction, k: int) -> NovikovTruncation:
    """Truncated Laurent expansion of r, exact through t-degree k."""
    if not r.num:
        return NovikovTruncation.zero(r.ring, k)
    m_num = r.num.min_t_degree()
    m_den = r.den.min_t_degree()
    inv = series_invert(r.den, k + m_den - m_num)
    return (inv * r.num).truncate(k)


# ---- deterministic ASCII formatting ----


def _format_exponent(name, e):
    return name if e == 1 else f"{name}^{e}"


def _format_body(ring: RingSpec, t_exp, v_exps):
    parts = []
    if t_exp:
        parts.append(_format_exponent(ring.t_name, t_exp))
    for name, e in zip(ring.var_names, v_exps):
        if e:
            parts.append(_format_exponent(name, e))
    return "*".join(parts)


def _format_terms(ring, items):
    """items: sorted (t_exp, v_exps, coeff) triples."""
    if not items:
        return "0"
    pieces = []
    for i, (te, ve, c) in enumerate(items):
        body = _format_body(ring, te, ve)
        mag = abs(c)
        if not body:
            txt = str(mag)
        elif mag == 1:
            txt = body
        else:
            txt = f"{mag}*{body}"
        if i == 0:
            pieces.append(f"-{txt}" if c < 0 else txt)
        else:
            pieces.append(f"- {txt}" if c < 0 else f"+ {txt}")
    return " ".join(pieces)


def format_tpolynomial(p: TPolynomial) -> str:
    items = [(te, ve, c) for (te, ve), c in sorted(p.terms.items())]
    return _format_terms(p.ring, items)


def format_groupring(g: GroupRingElem) -> str:
    items = [(0, ve, c) for ve, c in sorted(g.terms.items())]
    return _format_terms(g.ring, items)


def format_rational(r: RationalFunction) -> str:
    num, den = r.num, r.den
    one = TPolynomial.one(r.ring)
    if den == one:
        return format_tpolynomial(num)
    if num == one:
        return f"({format_tpolynomial(den)})^-1"
    return f"({format_tpolynomial(num)}) / ({format_tpolynomial(den)})"


def format_truncation(x: NovikovTruncation) -> list:
    """One line per nonzero known t-degree, in increasing order."""
    lines = [f"t^{d}: {format_groupring(g)}" for d, g in sorted(x.slices.items())]
    if not lines:
        lines = ["0"]
    return lines
