"""Counting functions of the return flow, in four interchangeable shapes.

Two shapes consume closed-orbit data (an exponential sum and an Euler
product over irreducible orbits), two consume homology return maps (a
trace exponential and an exact alternating determinant product).  The
pairs must agree wherever their inputs describe the same flow; the
suite leans on that agreement instead of trusting any single shape.
"""

from dataclasses import dataclass
from fractions import Fraction

from .errors import PreconditionError
from .linalg import bareiss_det, int_det, int_mat_mul
from .rings import (
    GroupRingElem,
    NovikovTruncation,
    RationalFunction,
    TPolynomial,
    series_exp,
)


@dataclass(frozen=True)
class ClosedOrbit:
    """One irreducible closed orbit of the return flow.

    homology_class is a single +1 monomial with positive t-degree.  The
    linearized return map fixes the signs of all powers of the orbit;
    eps alone covers only the orbit itself.
    """

    homology_class: TPolynomial
    period: int = 1
    eps: int = 0
    return_map: tuple = ()
    i_minus: int = -1
    i_zero: int = -1

    def __post_init__(self):
        parts = self.homology_class.unit_parts()
        if parts is None or parts[0] != 1:
            raise PreconditionError("orbit class must be a +1 monomial")
        if parts[1] <= 0:
            raise PreconditionError("orbit class must have positive t-degree")
        if self.period < 1:
            raise PreconditionError("orbit period must be positive")
        if self.eps not in (-1, 0, 1):
            raise PreconditionError("orbit sign must be -1, 0 or +1")
        rows = tuple(tuple(row) for row in self.return_map)
        n = len(rows)
        for row in rows:
            if len(row) != n or any(not isinstance(e, int) for e in row):
                raise PreconditionError("return map must be a square integer matrix")
        object.__setattr__(self, "return_map", rows)

    @property
    def t_degree(self):
        return self.homology_class.unit_parts()[1]

    def map_rows(self):
        return [list(row) for row in self.return_map]


def _diagonal_eigenvalues(A):
    """Diagonal entries when the matrix is triangular, else None."""
    n = len(A)
    lower = all(A[i][j] == 0 for i in range(n) for j in range(i + 1, n))
    upper = all(A[i][j] == 0 for i in range(n) for j in range(i))
    if not (lower or upper):
        return None
    return [A[i][i] for i in range(n)]


def orbit_sign(orbit, power=1):
    """Sign of det(1 - A^power) for the linearized return map A.

    Without the map itself, eps covers the first power, and for a
    hyperbolic orbit eps together with i_minus fixes every power: the
    sign repeats on odd powers and flips by the parity of i_minus on
    even ones (real eigenvalues below -1 each cross sign there and
    complex pairs never contribute).
    """
    A = orbit.map_rows()
    if not A:
        if orbit.eps not in (-1, 1):
            raise PreconditionError("orbit sign is not pinned down")
        if power == 1:
            return orbit.eps
        if orbit.i_minus >= 0:
            if power % 2:
                return orbit.eps
            return -orbit.eps if orbit.i_minus % 2 else orbit.eps
        raise PreconditionError("orbit powers need a return map or index counts")
    P = A
    for _ in range(power - 1):
        P = int_mat_mul(P, A)
    n = len(A)
    M = [[(1 if i == j else 0) - P[i][j] for j in range(n)] for i in range(n)]
    d = int_det(M)
    if d == 0:
        raise PreconditionError("degenerate orbit: det(1 - A^%d) = 0" % power)
    return 1 if d > 0 else -1


def orbit_counts(orbit):
    """(i_minus, i_zero): eigenvalue counts below -1 and inside the unit disc."""
    if orbit.i_minus >= 0 and orbit.i_zero >= 0:
        return orbit.i_minus, orbit.i_zero
    A = orbit.map_rows()
    if not A:
        raise PreconditionError("orbit index counts need a return map")
    eigs = _diagonal_eigenvalues(A)
    if eigs is None:
        raise PreconditionError("index counts are only derived for triangular maps")
    if any(abs(e) == 1 for e in eigs):
        raise PreconditionError("non-hyperbolic return map")
    return sum(1 for e in eigs if e < -1), sum(1 for e in eigs if -1 < e < 1)


def zeta_exp(ring, orbits, order):
    """Orbit-sum exponential, truncated at the given t-degree."""
    if order < 0:
        raise PreconditionError("truncation order must be nonnegative")
    slices = {}
    for orbit in orbits:
        if orbit.homology_class.ring != ring:
            raise PreconditionError("mismatched ring specs")
        d = orbit.t_degree
        power = 1
        accumulated = TPolynomial.one(ring)
        while power * d <= order:
            accumulated = accumulated * orbit.homology_class
            sign = orbit_sign(orbit, power)
            coeff = Fraction(sign, power)
            for (t_exp, v), c in accumulated.terms.items():
                bucket = slices.setdefault(t_exp, {})
                bucket[v] = bucket.get(v, 0) + coeff * c
            power += 1
    cleaned = {
        d: GroupRingElem(ring, {v: c for v, c in bucket.items() if c})
        for d, bucket in slices.items()
    }
    cleaned = {d: g for d, g in cleaned.items() if g}
    log_sum = NovikovTruncation(ring, order, cleaned, min_t=min(cleaned) if cleaned else 0)
    return series_exp(log_sum)


def zeta_product(ring, orbits):
    """Euler product over irreducible orbits, as an exact fraction.

    Each factor is (1 - (-1)^{i_minus} m)^{-(-1)^{i_zero}} for the orbit
    class m.  The closed form matches the exponential sum when every
    transversal piece has even dimension; the suite checks the pair on
    that footing.
    """
    num = TPolynomial.one(ring)
    den = TPolynomial.one(ring)
    for orbit in orbits:
        if orbit.homology_class.ring != ring:
            raise PreconditionError("mismatched ring specs")
        i_minus, i_zero = orbit_counts(orbit)
        sign = -1 if i_minus % 2 else 1
        base = 1 - sign * orbit.homology_class
        if i_zero % 2:
            num = num * base
        else:
            den = den * base
    return RationalFunction(num, den)


def _as_plain_int(entry):
    if isinstance(entry, int):
        return entry
    if isinstance(entry, TPolynomial):
        if not entry.terms:
            return 0
        if len(entry.terms) == 1:
            ((t_exp, v), c), = entry.terms.items()
            if t_exp == 0 and not any(v):
                return c
    return None


def _validate_maps(maps):
    """Normalize to integer matrices; constant ring elements are unwrapped."""
    out = []
    for i, A in enumerate(maps):
        n = len(A)
        if any(len(row) != n for row in A):
            raise PreconditionError("return map in degree %d is not square" % i)
        rows = []
        for row in A:
            plain = [_as_plain_int(entry) for entry in row]
            if any(entry is None for entry in plain):
                raise PreconditionError("return maps must be integer matrices")
            rows.append(plain)
        out.append(rows)
    return out


def _map_entry(ring, entry):
    if isinstance(entry, int):
        return TPolynomial.monomial(ring, coeff=entry) if entry else TPolynomial.zero(ring)
    if isinstance(entry, TPolynomial):
        if not entry.is_t_free():
            raise PreconditionError("return map entries must not involve t")
        return entry
    raise PreconditionError("return map entries must be integers or t-free polynomials")


def zeta_trace(ring, maps, order):
    """Trace exponential of graded return maps, truncated at the order."""
    if order < 0:
        raise PreconditionError("truncation order must be nonnegative")
    maps = _validate_maps(maps)
    slices = {}
    powers = [[list(row) for row in A] for A in maps]
    for m in range(1, order + 1):
        lefschetz = 0
        for i, P in enumerate(powers):
            trace = sum(P[k][k] for k in range(len(P)))
            lefschetz += trace if i % 2 == 0 else -trace
        if lefschetz:
            slices[m] = GroupRingElem(ring, {ring.zero_v(): Fraction(lefschetz, m)})
        powers = [int_mat_mul(P, A) if A else [] for P, A in zip(powers, maps)]
    log_sum = NovikovTruncation(ring, order, slices, min_t=0)
    result = series_exp(log_sum)
    if not result.is_integral():
        raise ArithmeticError("trace exponential left the integral lattice")
    return result


def zeta_lefschetz(ring, maps):
    """Exact alternating product of the characteristic determinants.

    Accepts integer matrices or matrices of t-free ring elements; the
    twisting variable enters only through the 1 - t*map placement.
    """
    for i, A in enumerate(maps):
        n = len(A)
        if any(len(row) != n for row in A):
            raise PreconditionError("return map in degree %d is not square" % i)
    num = TPolynomial.one(ring)
    den = TPolynomial.one(ring)
    t = TPolynomial.t(ring)
    for i, A in enumerate(maps):
        n = len(A)
        M = [
            [
                (TPolynomial.one(ring) if r == c else TPolynomial.zero(ring))
                - t * _map_entry(ring, A[r][c])
                for c in range(n)
            ]
            for r in range(n)
        ]
        d = bareiss_det(ring, M)
        if i % 2 == 0:
            den = den * d
        else:
            num = num * d
    return RationalFunction(num, den)
