"""Determinant counting for the balanced two-index gradient picture.

An index-2 to index-1 flow line carries a relative homology class; a
matrix of such counts determines an integer-valued function on classes
once a reference class is fixed.  The offset bookkeeping here stands in
for that reference: a stored polynomial together with an exponent
vector, where scaling by a monomial unit and shifting the offset in the
opposite direction presents the same underlying function.
"""

from dataclasses import dataclass

from .complexes import rebase_basis, torsion_tau
from .cut import approx_equal
from .errors import PreconditionError
from .linalg import bareiss_det, mat_transpose
from .rings import NovikovTruncation, RationalFunction, TPolynomial, expand_series


def _zero_exponent(ring):
    return (0, ring.zero_v())


def _normalize_exponent(ring, e):
    if e is None:
        return _zero_exponent(ring)
    if isinstance(e, int):
        return (e, ring.zero_v())
    if isinstance(e, TPolynomial):
        parts = e.unit_parts()
        if parts is None or parts[0] != 1:
            raise PreconditionError("exponent must come from a +1 monomial")
        return (parts[1], parts[2])
    t_exp, v = e
    v = tuple(v)
    if len(v) != ring.num_group_vars:
        raise PreconditionError("exponent vector has the wrong arity")
    return (int(t_exp), v)


def _exp_sub(a, b):
    return (a[0] - b[0], tuple(x - y for x, y in zip(a[1], b[1])))


def _unit_exponent(u):
    parts = u.unit_parts() if isinstance(u, TPolynomial) else None
    if parts is None:
        raise PreconditionError("rebasing factor must be a monomial unit")
    return parts[0], (parts[1], parts[2])


class PathMatrix:
    """Square flow-count matrix with a reference-class offset.

    Rows are indexed by the upper critical points, columns by the lower
    ones; every entry lives in nonnegative t-degrees.
    """

    __slots__ = ("ring", "matrix", "offset", "row_labels", "col_labels")

    def __init__(self, ring, matrix, offset=None, row_labels=None, col_labels=None):
        n = len(matrix)
        coerced = []
        for row in matrix:
            if len(row) != n:
                raise PreconditionError("path matrix must be square")
            out = []
            for entry in row:
                if isinstance(entry, int):
                    entry = (
                        TPolynomial.monomial(ring, coeff=entry)
                        if entry
                        else TPolynomial.zero(ring)
                    )
                if not isinstance(entry, TPolynomial) or entry.ring != ring:
                    raise PreconditionError("path matrix entries must be ring elements")
                if entry and entry.min_t_degree() < 0:
                    raise PreconditionError(
                        "path matrix entries must have nonnegative t-degree"
                    )
                out.append(entry)
            coerced.append(out)
        for labels in (row_labels, col_labels):
            if labels is not None and len(labels) != n:
                raise PreconditionError("label count does not match the matrix size")
        self.ring = ring
        self.matrix = coerced
        self.offset = _normalize_exponent(ring, offset)
        self.row_labels = list(row_labels) if row_labels is not None else None
        self.col_labels = list(col_labels) if col_labels is not None else None

    @property
    def size(self):
        return len(self.matrix)


def rebase_row(P, index, u):
    """Scale one row by a monomial unit, shifting the offset to compensate."""
    if not 0 <= index < P.size:
        raise PreconditionError("row index out of range")
    _, exp = _unit_exponent(u)
    matrix = [list(row) for row in P.matrix]
    matrix[index] = [entry * u for entry in matrix[index]]
    return PathMatrix(
        P.ring,
        matrix,
        offset=_exp_sub(P.offset, exp),
        row_labels=P.row_labels,
        col_labels=P.col_labels,
    )


def rebase_col(P, index, u):
    if not 0 <= index < P.size:
        raise PreconditionError("column index out of range")
    _, exp = _unit_exponent(u)
    matrix = [list(row) for row in P.matrix]
    for r in range(P.size):
        matrix[r][index] = matrix[r][index] * u
    return PathMatrix(
        P.ring,
        matrix,
        offset=_exp_sub(P.offset, exp),
        row_labels=P.row_labels,
        col_labels=P.col_labels,
    )


@dataclass(frozen=True)
class OffsetPolynomial:
    """Exact polynomial value still referenced to a torsor offset."""

    poly: TPolynomial
    offset: tuple


def path_matrix_det(P):
    return OffsetPolynomial(bareiss_det(P.ring, P.matrix), P.offset)


class CoefficientFunction:
    """Integer coefficients on homology classes, known through t-degree order.

    Evaluation subtracts the offset first: the stored keys are relative
    classes, the offset converts an absolute query into a stored key.
    """

    __slots__ = ("ring", "coeffs", "order", "offset", "min_t")

    def __init__(self, ring, coeffs, order, offset=None, min_t=0):
        self.ring = ring
        self.order = order
        self.min_t = min_t
        self.offset = _normalize_exponent(ring, offset)
        clean = {}
        for key, value in coeffs.items():
            key = (int(key[0]), tuple(key[1]))
            if len(key[1]) != ring.num_group_vars:
                raise PreconditionError("exponent vector has the wrong arity")
            if not min_t <= key[0] <= order:
                raise PreconditionError(
                    "coefficient at t^%d outside the declared window" % key[0]
                )
            if value:
                clean[key] = int(value)
        self.coeffs = clean

    def known_degrees(self):
        return range(self.min_t, self.order + 1)


def i3_coefficients(zeta, detP, k):
    """Coefficient function of the counting series times the determinant."""
    ring = detP.poly.ring
    if isinstance(zeta, RationalFunction):
        zeta = expand_series(zeta, k)
    if not isinstance(zeta, NovikovTruncation):
        raise PreconditionError("counting factor must be a truncation or a fraction")
    if zeta.ring != ring:
        raise PreconditionError("mismatched ring specs")
    order = min(k, zeta.order)
    product = (zeta * detP.poly).truncate(order)
    coeffs = {}
    for degree, g in product.slices.items():
        for v, c in g.terms.items():
            coeffs[(degree, v)] = c
    return CoefficientFunction(
        ring, coeffs, order, offset=detP.offset, min_t=product.min_t
    )


def t_invariant(cf, xi_exp):
    """Evaluate the coefficient function on the class the lift points at."""
    p = _normalize_exponent(cf.ring, xi_exp)
    rel = _exp_sub(p, cf.offset)
    if rel[0] > cf.order:
        raise PreconditionError(
            "class at t-degree %d is outside the computed window" % rel[0]
        )
    if rel[0] < cf.min_t:
        # below the product's least degree nothing exists, exactly
        return 0
    return cf.coeffs.get(rel, 0)


def sw_consistency_check(P, cn, xi=None, k=16):
    """Determinant count against the torsion of the two-degree complex.

    The complex must be concentrated in degrees 1 and 2; its boundary,
    transposed and carried through the lift's rebasing, must reproduce
    the path matrix entry by entry, and the two determinant routes must
    agree through t-degree k up to one global sign.
    """
    dims_by_degree = {}
    for j, d in enumerate(cn.dims):
        if d:
            dims_by_degree[cn.min_degree + j] = d
    if any(degree not in (1, 2) for degree in dims_by_degree):
        raise PreconditionError("generators outside degrees 1 and 2")
    m1 = dims_by_degree.get(1, 0)
    m2 = dims_by_degree.get(2, 0)
    if m1 != m2 or m1 != P.size:
        raise PreconditionError("critical point counts do not match the path matrix")
    moved = cn
    if xi is not None:
        if len(xi.offsets) != len(cn.dims) or any(
            len(group) != d for group, d in zip(xi.offsets, cn.dims)
        ):
            raise PreconditionError("lift offsets do not match the generators")
        for j, group in enumerate(xi.offsets):
            for index, u in enumerate(group):
                if u == 1:
                    continue
                moved = rebase_basis(moved, cn.min_degree + j, index, u)
    if P.size:
        d2 = moved.boundaries[1 - moved.min_degree]
    else:
        d2 = []
    if P.matrix != mat_transpose(d2, cols=m2):
        return False
    det = bareiss_det(P.ring, P.matrix)
    tau = torsion_tau(moved)
    if tau is None:
        return det.is_zero
    return approx_equal(det, tau.raw, k + 1) or approx_equal(-det, tau.raw, k + 1)
