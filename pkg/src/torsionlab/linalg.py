"""Exact matrix routines over the Laurent polynomial ring and its fraction field.

Matrices are plain lists of rows.  An r x 0 matrix is a list of r empty
lists, a 0 x c matrix is the empty list; every function that needs to mint
an element for a degenerate shape takes the ring spec explicitly.
"""

from .errors import PreconditionError
from .rings import RationalFunction, TPolynomial, exact_div


def mat_shape(M):
    rows = len(M)
    cols = len(M[0]) if rows else 0
    return rows, cols


def mat_identity(ring, n):
    one = TPolynomial.one(ring)
    zero = TPolynomial.zero(ring)
    return [[one if i == j else zero for j in range(n)] for i in range(n)]


def mat_transpose(M, cols=None):
    # cols disambiguates the 0 x c case, where the row list is empty
    if not M:
        return [[] for _ in range(cols)] if cols else []
    return [list(col) for col in zip(*M)]


def mat_mul(A, B, zero):
    ra, ca = mat_shape(A)
    rb, cb = mat_shape(B)
    if ra == 0:
        # an empty row list carries no column count to check against
        return []
    if ca != rb:
        raise PreconditionError("matrix product shape mismatch")
    out = []
    for i in range(ra):
        row = []
        for j in range(cb):
            acc = zero
            for k in range(ca):
                acc = acc + A[i][k] * B[k][j]
            row.append(acc)
        out.append(row)
    return out


def mat_add(A, B):
    ra, ca = mat_shape(A)
    if (ra, ca) != mat_shape(B):
        raise PreconditionError("matrix sum shape mismatch")
    return [[A[i][j] + B[i][j] for j in range(ca)] for i in range(ra)]


def mat_sub(A, B):
    ra, ca = mat_shape(A)
    if (ra, ca) != mat_shape(B):
        raise PreconditionError("matrix sum shape mismatch")
    return [[A[i][j] - B[i][j] for j in range(ca)] for i in range(ra)]


def mat_scale(A, c):
    return [[entry * c for entry in row] for row in A]


def mat_apply(A, v, zero):
    rows, cols = mat_shape(A)
    if rows == 0:
        return []
    if cols != len(v):
        raise PreconditionError("matrix-vector shape mismatch")
    out = []
    for i in range(rows):
        acc = zero
        for k in range(cols):
            acc = acc + A[i][k] * v[k]
        out.append(acc)
    return out


def mat_is_zero(M):
    return all(not entry for row in M for entry in row)


def bareiss_det(ring, M):
    """Fraction-free determinant of a square matrix over the Laurent ring."""
    n, c = mat_shape(M)
    if n != c:
        raise PreconditionError("determinant of a non-square matrix")
    if n == 0:
        return TPolynomial.one(ring)
    W = [list(row) for row in M]
    sign = 1
    prev = TPolynomial.one(ring)
    for k in range(n - 1):
        pivot_row = None
        for i in range(k, n):
            if W[i][k]:
                pivot_row = i
                break
        if pivot_row is None:
            return TPolynomial.zero(ring)
        if pivot_row != k:
            W[k], W[pivot_row] = W[pivot_row], W[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                W[i][j] = exact_div(W[k][k] * W[i][j] - W[i][k] * W[k][j], prev)
            W[i][k] = TPolynomial.zero(ring)
        prev = W[k][k]
    result = W[n - 1][n - 1]
    return -result if sign < 0 else result


def int_det(M):
    """Integer determinant by the same fraction-free scheme."""
    n = len(M)
    if any(len(row) != n for row in M):
        raise PreconditionError("determinant of a non-square matrix")
    if n == 0:
        return 1
    W = [list(row) for row in M]
    sign = 1
    prev = 1
    for k in range(n - 1):
        pivot_row = None
        for i in range(k, n):
            if W[i][k] != 0:
                pivot_row = i
                break
        if pivot_row is None:
            return 0
        if pivot_row != k:
            W[k], W[pivot_row] = W[pivot_row], W[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = W[k][k] * W[i][j] - W[i][k] * W[k][j]
                q, r = divmod(num, prev)
                if r:
                    raise ArithmeticError("inexact interior division")
                W[i][j] = q
            W[i][k] = 0
        prev = W[k][k]
    return sign * W[n - 1][n - 1]


def int_mat_mul(A, B):
    ra, ca = mat_shape(A)
    rb, cb = mat_shape(B)
    if ca != rb:
        raise PreconditionError("matrix product shape mismatch")
    return [
        [sum(A[i][k] * B[k][j] for k in range(ca)) for j in range(cb)] for i in range(ra)
    ]


def poly_rank_pivots(ring, M):
    """Rank and pivot column indices of a Laurent polynomial matrix.

    Rank is taken over the fraction field; fraction-free elimination keeps
    every intermediate entry polynomial.
    """
    rows, cols = mat_shape(M)
    W = [list(row) for row in M]
    prev = TPolynomial.one(ring)
    r = 0
    pivots = []
    for c in range(cols):
        pivot_row = None
        for i in range(r, rows):
            if W[i][c]:
                pivot_row = i
                break
        if pivot_row is None:
            continue
        if pivot_row != r:
            W[r], W[pivot_row] = W[pivot_row], W[r]
        for i in range(r + 1, rows):
            for j in range(c + 1, cols):
                W[i][j] = exact_div(W[r][c] * W[i][j] - W[i][c] * W[r][j], prev)
            W[i][c] = TPolynomial.zero(ring)
        prev = W[r][c]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return r, pivots


def poly_minor(M, skip_row, skip_col):
    return [
        [entry for j, entry in enumerate(row) if j != skip_col]
        for i, row in enumerate(M)
        if i != skip_row
    ]


def adjugate(ring, M):
    """Adjugate and determinant of a square Laurent polynomial matrix."""
    n, c = mat_shape(M)
    if n != c:
        raise PreconditionError("adjugate of a non-square matrix")
    det = bareiss_det(ring, M)
    if n == 0:
        return [], det
    adj = [[TPolynomial.zero(ring) for _ in range(n)] for _ in range(n)]
    for i in range(n):
        for j in range(n):
            cof = bareiss_det(ring, poly_minor(M, i, j))
            adj[j][i] = -cof if (i + j) % 2 else cof
    return adj, det


def _clear_row_denominators(ring, M):
    """Scale each row to polynomial entries; return (poly matrix, row factors)."""
    cleared = []
    factors = []
    for row in M:
        factor = TPolynomial.one(ring)
        for entry in row:
            factor = factor * entry.den
        new_row = []
        for entry in row:
            scale = exact_div(factor, entry.den)
            new_row.append(entry.num * scale)
        cleared.append(new_row)
        factors.append(factor)
    return cleared, factors


def rf_det(ring, M):
    """Determinant of a matrix of rational functions."""
    n, c = mat_shape(M)
    if n != c:
        raise PreconditionError("determinant of a non-square matrix")
    if n == 0:
        return RationalFunction.one(ring)
    cleared, factors = _clear_row_denominators(ring, M)
    num = bareiss_det(ring, cleared)
    den = TPolynomial.one(ring)
    for f in factors:
        den = den * f
    return RationalFunction(num, den)


def rf_rank_pivots(ring, M):
    # row scaling by the denominator product changes no pivot structure
    cleared, _ = _clear_row_denominators(ring, M)
    return poly_rank_pivots(ring, cleared)


def rf_rref(ring, M):
    """Reduced row echelon form over the fraction field; returns (R, pivots)."""
    rows, cols = mat_shape(M)
    W = [list(row) for row in M]
    r = 0
    pivots = []
    for c in range(cols):
        pivot_row = None
        for i in range(r, rows):
            if not W[i][c].is_zero:
                pivot_row = i
                break
        if pivot_row is None:
            continue
        if pivot_row != r:
            W[r], W[pivot_row] = W[pivot_row], W[r]
        inv = W[r][c].inverse()
        W[r] = [entry * inv for entry in W[r]]
        for i in range(rows):
            if i != r and not W[i][c].is_zero:
                coeff = W[i][c]
                W[i] = [W[i][j] - coeff * W[r][j] for j in range(cols)]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return W, pivots


def rf_solve(ring, A, b):
    """Any solution x of A x = b over the fraction field, or None."""
    rows, cols = mat_shape(A)
    if len(b) != rows:
        raise PreconditionError("system shape mismatch")
    aug = [list(A[i]) + [b[i]] for i in range(rows)]
    R, pivots = rf_rref(ring, aug)
    if cols in pivots:
        return None
    x = [RationalFunction.zero(ring) for _ in range(cols)]
    for i, c in enumerate(pivots):
        x[c] = R[i][cols]
    return x


def rf_kernel(ring, A, cols=None):
    """Basis of the right kernel of A over the fraction field, as columns.

    cols pins the domain dimension when A has no rows to read it from.
    """
    rows, inferred = mat_shape(A)
    cols = inferred if rows else (cols if cols is not None else 0)
    R, pivots = rf_rref(ring, A)
    pivot_set = set(pivots)
    basis = []
    for f in range(cols):
        if f in pivot_set:
            continue
        vec = [RationalFunction.zero(ring) for _ in range(cols)]
        vec[f] = RationalFunction.one(ring)
        for i, c in enumerate(pivots):
            vec[c] = -R[i][f]
        basis.append(vec)
    return basis


def rf_matrix(M):
    """Lift a Laurent polynomial matrix entrywise into the fraction field."""
    return [[RationalFunction(entry) for entry in row] for row in M]


def matrix_det(ring, M):
    """Determinant dispatcher: polynomial entries stay polynomial."""
    for row in M:
        for entry in row:
            if isinstance(entry, RationalFunction):
                return rf_det(ring, M)
            if isinstance(entry, TPolynomial):
                return bareiss_det(ring, M)
    return bareiss_det(ring, M)
