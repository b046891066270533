"""Based chain complexes over the Laurent ring and their torsion invariants.

A complex stores its modules bottom degree first.  boundaries[j] is the
matrix of the differential from degree min_degree+j+1 into min_degree+j,
with rows indexed by the codomain basis, so each has shape
dims[j] x dims[j+1].
"""

from dataclasses import dataclass
from math import gcd

from .errors import PreconditionError
from .linalg import (
    mat_apply,
    mat_is_zero,
    mat_mul,
    poly_rank_pivots,
    rf_det,
    rf_kernel,
    rf_matrix,
    rf_rref,
    rf_solve,
)
from .rings import (
    RationalFunction,
    TPolynomial,
    canonical_mod_units,
    exact_div,
    unit_equivalent,
)


class BasedChainComplex:
    """Finitely generated free complex with a distinguished basis per degree."""

    __slots__ = ("ring", "min_degree", "dims", "boundaries", "labels")

    def __init__(self, ring, min_degree, dims, boundaries, labels=None):
        dims = list(dims)
        if any(d < 0 for d in dims):
            raise PreconditionError("negative module dimension")
        expected = max(len(dims) - 1, 0)
        if len(boundaries) != expected:
            raise PreconditionError(
                "expected %d boundary matrices, got %d" % (expected, len(boundaries))
            )
        checked = []
        for j, mat in enumerate(boundaries):
            rows = dims[j]
            cols = dims[j + 1]
            if len(mat) != rows or any(len(row) != cols for row in mat):
                raise PreconditionError(
                    "boundary into degree %d has the wrong shape" % (min_degree + j)
                )
            for row in mat:
                for entry in row:
                    if not isinstance(entry, TPolynomial):
                        raise PreconditionError("boundary entries must be polynomial")
                    if entry.ring != ring:
                        raise PreconditionError("mismatched ring specs")
            checked.append([list(row) for row in mat])
        if labels is not None:
            labels = [list(group) for group in labels]
            if len(labels) != len(dims) or any(
                len(group) != d for group, d in zip(labels, dims)
            ):
                raise PreconditionError("label groups do not match dims")
        self.ring = ring
        self.min_degree = min_degree
        self.dims = dims
        self.boundaries = checked
        self.labels = labels

    @property
    def top_degree(self):
        return self.min_degree + len(self.dims) - 1

    def degree_index(self, degree):
        j = degree - self.min_degree
        if not 0 <= j < len(self.dims):
            raise PreconditionError("degree %d outside the complex" % degree)
        return j

    def boundary_into(self, j):
        """Matrix of the differential landing in degree index j, or None."""
        if 0 <= j < len(self.boundaries):
            return self.boundaries[j]
        return None

    def boundary_out_of(self, j):
        """Matrix of the differential leaving degree index j, or None."""
        if 1 <= j < len(self.dims):
            return self.boundaries[j - 1]
        return None

    def __repr__(self):
        return "BasedChainComplex(min_degree=%d, dims=%r)" % (self.min_degree, self.dims)


def validate_complex(C):
    """Return a list of defects; empty means the differential squares to zero."""
    report = []
    zero = TPolynomial.zero(C.ring)
    for j in range(len(C.boundaries) - 1):
        composite = mat_mul(C.boundaries[j], C.boundaries[j + 1], zero)
        if not mat_is_zero(composite):
            report.append("d^2 != 0 at degree %d" % (C.min_degree + j + 2))
    return report


def homology_ranks(C):
    """Betti numbers over the fraction field, bottom degree first."""
    ranks = []
    cache = {}

    def rank_of(j):
        if j not in cache:
            mat = C.boundary_into(j)
            cache[j] = poly_rank_pivots(C.ring, mat)[0] if mat is not None else 0
        return cache[j]

    for j, d in enumerate(C.dims):
        r_in = rank_of(j)
        mat_out = C.boundary_out_of(j)
        r_out = poly_rank_pivots(C.ring, mat_out)[0] if mat_out is not None else 0
        ranks.append(d - r_in - r_out)
    return ranks


@dataclass(frozen=True)
class TorsionValue:
    """Torsion both as computed and with monomial units stripped."""

    raw: RationalFunction
    canonical: RationalFunction


def _entry_weight(entry):
    return len(entry.num) + len(entry.den)


def _select_pivot_columns(ring, W, need):
    """Greedy fraction-field elimination; returns chosen column indices or None.

    Pivots prefer sparse entries, then low row, then low column, all in the
    original indexing, which keeps the subbasis choice deterministic.
    """
    rows = len(W)
    cols = len(W[0]) if rows else 0
    W = [list(row) for row in W]
    used_rows = set()
    used_cols = set()
    chosen = []
    for _ in range(need):
        best = None
        for i in range(rows):
            if i in used_rows:
                continue
            for c in range(cols):
                if c in used_cols or W[i][c].is_zero:
                    continue
                key = (_entry_weight(W[i][c]), i, c)
                if best is None or key < best[0]:
                    best = (key, i, c)
        if best is None:
            return None
        _, pi, pc = best
        used_rows.add(pi)
        used_cols.add(pc)
        chosen.append(pc)
        inv = W[pi][pc].inverse()
        for i in range(rows):
            if i in used_rows:
                continue
            if W[i][pc].is_zero:
                continue
            factor = W[i][pc] * inv
            W[i] = [W[i][j] - factor * W[pi][j] for j in range(cols)]
    return chosen


def _torsion_engine(ring, min_degree, dims, matrices):
    """Torsion of an acyclic based complex from its boundary matrices.

    matrices[j] has rational function entries and shape dims[j] x dims[j+1].
    Returns None when the complex fails to be acyclic.
    """
    n = len(dims)
    if n == 0:
        one = RationalFunction.one(ring)
        return TorsionValue(one, one)
    s_prev = []
    result = RationalFunction.one(ring)
    for j in range(1, n):
        need = dims[j - 1] - len(s_prev)
        if need < 0 or need > dims[j]:
            return None
        row_complement = [r for r in range(dims[j - 1]) if r not in set(s_prev)]
        sub = [[matrices[j - 1][r][c] for c in range(dims[j])] for r in row_complement]
        chosen = _select_pivot_columns(ring, sub, need)
        if chosen is None:
            return None
        cols = sorted(chosen)
        square = [[matrices[j - 1][r][c] for c in cols] for r in row_complement]
        d = rf_det(ring, square)
        if d.is_zero:
            return None
        if (min_degree + j) % 2:
            result = result * d.inverse()
        else:
            result = result * d
        s_prev = cols
    if dims[n - 1] != len(s_prev):
        return None
    return TorsionValue(result, canonical_mod_units(result))


def torsion_tau(C):
    """Torsion of an acyclic complex, or None when homology obstructs it."""
    report = validate_complex(C)
    if report:
        raise PreconditionError("; ".join(report))
    matrices = [rf_matrix(mat) for mat in C.boundaries]
    return _torsion_engine(C.ring, C.min_degree, C.dims, matrices)


class HomologyBasis:
    """Chosen homology representatives, one vector list per degree index."""

    __slots__ = ("ring", "vectors")

    def __init__(self, ring, vectors):
        wrapped = []
        for group in vectors:
            rows = []
            for vec in group:
                rows.append(
                    [
                        entry
                        if isinstance(entry, RationalFunction)
                        else RationalFunction(entry)
                        for entry in vec
                    ]
                )
            wrapped.append(rows)
        self.ring = ring
        self.vectors = wrapped

    def counts(self):
        return [len(group) for group in self.vectors]


def default_homology_basis(C):
    """Deterministic homology representatives with polynomial entries."""
    ring = C.ring
    vectors = []
    for j, d in enumerate(C.dims):
        mat_in = C.boundary_into(j)
        mat_out = C.boundary_out_of(j)
        if mat_out is None:
            kernel = []
            for k in range(d):
                vec = [RationalFunction.zero(ring) for _ in range(d)]
                vec[k] = RationalFunction.one(ring)
                kernel.append(vec)
        else:
            kernel = rf_kernel(ring, rf_matrix(mat_out), cols=d)
        if mat_in is not None:
            _, pivots = poly_rank_pivots(ring, mat_in)
            image = [
                [RationalFunction(mat_in[r][c]) for r in range(d)] for c in pivots
            ]
        else:
            image = []
        chosen = _complete_image_to_kernel(ring, d, image, kernel)
        vectors.append([_clear_vector(ring, vec) for vec in chosen])
    return HomologyBasis(ring, vectors)


def _complete_image_to_kernel(ring, dim, image_cols, kernel_cols):
    """Kernel vectors extending the image columns to a basis of the cycles."""
    if not kernel_cols:
        return []
    stacked = []
    for r in range(dim):
        row = [col[r] for col in image_cols] + [col[r] for col in kernel_cols]
        stacked.append(row)
    _, pivots = rf_rref(ring, stacked)
    cut = len(image_cols)
    return [kernel_cols[p - cut] for p in pivots if p >= cut]


def _clear_vector(ring, vec):
    """Scale a fraction vector to primitive polynomial entries."""
    factor = TPolynomial.one(ring)
    for entry in vec:
        factor = factor * entry.den
    cleared = [entry.num * exact_div(factor, entry.den) for entry in vec]
    content = 0
    for p in cleared:
        content = gcd(content, p.content())
    if content > 1:
        cleared = [p.divide_content(content) for p in cleared]
    return [RationalFunction(p) for p in cleared]


def _tau_hat_pieces(C, h):
    """Per-degree transition matrices for the homology-weighted torsion."""
    ring = C.ring
    ranks = homology_ranks(C)
    counts = h.counts()
    if len(counts) != len(C.dims):
        raise PreconditionError("homology basis has the wrong number of degrees")
    for j, (have, want) in enumerate(zip(counts, ranks)):
        if have != want:
            raise PreconditionError(
                "homology basis count mismatch at degree %d" % (C.min_degree + j)
            )
    zero_rf = RationalFunction.zero(ring)
    pieces = []
    for j, d in enumerate(C.dims):
        mat_in = C.boundary_into(j)
        mat_out = C.boundary_out_of(j)
        for vec in h.vectors[j]:
            if len(vec) != d:
                raise PreconditionError(
                    "homology vector length mismatch at degree %d" % (C.min_degree + j)
                )
            if mat_out is not None:
                image = mat_apply(rf_matrix(mat_out), vec, zero_rf)
                if any(not entry.is_zero for entry in image):
                    raise PreconditionError(
                        "homology vector is not a cycle at degree %d" % (C.min_degree + j)
                    )
        cols = []
        if mat_in is not None:
            _, pivots = poly_rank_pivots(ring, mat_in)
            for c in pivots:
                cols.append([RationalFunction(mat_in[r][c]) for r in range(d)])
        cols.extend(h.vectors[j])
        if mat_out is not None:
            _, out_pivots = poly_rank_pivots(ring, mat_out)
            for k in out_pivots:
                vec = [zero_rf] * d
                vec[k] = RationalFunction.one(ring)
                cols.append(vec)
        if len(cols) != d:
            raise PreconditionError(
                "transition matrix at degree %d is not square" % (C.min_degree + j)
            )
        T = [[cols[c][r] for c in range(d)] for r in range(d)]
        pieces.append(rf_det(ring, T))
    return pieces


def torsion_tau_hat(C, h=None):
    """Torsion weighted by a homology basis; defined for any valid complex."""
    report = validate_complex(C)
    if report:
        raise PreconditionError("; ".join(report))
    if h is None:
        h = default_homology_basis(C)
    pieces = _tau_hat_pieces(C, h)
    result = RationalFunction.one(C.ring)
    for j, det in enumerate(pieces):
        if det.is_zero:
            raise PreconditionError(
                "homology basis does not span at degree %d" % (C.min_degree + j)
            )
        if (C.min_degree + j) % 2:
            result = result * det
        else:
            result = result * det.inverse()
    return TorsionValue(result, canonical_mod_units(result))


def rebase_basis(C, degree, index, u):
    """Replace one basis element by a monomial unit multiple of itself."""
    j = C.degree_index(degree)
    if not 0 <= index < C.dims[j]:
        raise PreconditionError("basis index out of range")
    parts = u.unit_parts() if isinstance(u, TPolynomial) else None
    if parts is None or parts[0] not in (1, -1):
        raise PreconditionError("rebasing factor must be a monomial unit")
    coeff, t_exp, v_exps = parts
    u_inv = TPolynomial.monomial(
        C.ring, t_exp=-t_exp, v=tuple(-e for e in v_exps), coeff=coeff
    )
    boundaries = [[list(row) for row in mat] for mat in C.boundaries]
    if j >= 1:
        mat = boundaries[j - 1]
        for r in range(C.dims[j - 1]):
            mat[r][index] = mat[r][index] * u
    if j < len(C.dims) - 1:
        mat = boundaries[j]
        for c in range(C.dims[j + 1]):
            mat[index][c] = mat[index][c] * u_inv
    return BasedChainComplex(C.ring, C.min_degree, C.dims, boundaries, C.labels)


class ShortExactSequence:
    """Degreewise split extension with the sub sitting as a prefix block."""

    __slots__ = ("sub", "total", "quotient")

    def __init__(self, sub, total, quotient):
        if not (sub.ring == total.ring == quotient.ring):
            raise PreconditionError("mismatched ring specs")
        if not (sub.min_degree == total.min_degree == quotient.min_degree):
            raise PreconditionError("mismatched bottom degrees")
        if len(sub.dims) != len(total.dims) or len(quotient.dims) != len(total.dims):
            raise PreconditionError("mismatched degree ranges")
        for a, b, c in zip(sub.dims, quotient.dims, total.dims):
            if a + b != c:
                raise PreconditionError("dims do not add up")
        for j in range(len(total.boundaries)):
            m = sub.dims[j]
            mat = total.boundaries[j]
            for r in range(total.dims[j]):
                for c in range(total.dims[j + 1]):
                    entry = mat[r][c]
                    if r < m and c < sub.dims[j + 1]:
                        if entry != sub.boundaries[j][r][c]:
                            raise PreconditionError(
                                "sub block disagrees at degree %d" % (total.min_degree + j + 1)
                            )
                    elif r >= m and c < sub.dims[j + 1]:
                        if entry:
                            raise PreconditionError(
                                "extension is not upper triangular at degree %d"
                                % (total.min_degree + j + 1)
                            )
                    elif r >= m and c >= sub.dims[j + 1]:
                        if entry != quotient.boundaries[j][r - m][c - sub.dims[j + 1]]:
                            raise PreconditionError(
                                "quotient block disagrees at degree %d"
                                % (total.min_degree + j + 1)
                            )
        self.sub = sub
        self.total = total
        self.quotient = quotient


def _class_coords(ring, h_vectors, bnd_into, target):
    """Coordinates of a cycle's class in the given homology basis."""
    dim = len(target)
    cols = list(h_vectors)
    if bnd_into is not None:
        lifted = rf_matrix(bnd_into)
        for c in range(len(bnd_into[0]) if bnd_into else 0):
            cols.append([lifted[r][c] for r in range(dim)])
    if not cols:
        if any(not entry.is_zero for entry in target):
            raise ArithmeticError("nonzero class in a trivial homology group")
        return []
    A = [[cols[c][r] for c in range(len(cols))] for r in range(dim)]
    x = rf_solve(ring, A, target)
    if x is None:
        raise ArithmeticError("cycle does not lie in the displayed span")
    return x[: len(h_vectors)]


def _connecting_sequence(ses, h_sub, h_total, h_quot):
    """Homology long exact sequence of the extension, as a based complex."""
    ring = ses.total.ring
    n = len(ses.total.dims)
    zero_rf = RationalFunction.zero(ring)
    dims = []
    for i in range(n):
        dims.append(len(h_quot.vectors[i]))
        dims.append(len(h_total.vectors[i]))
        dims.append(len(h_sub.vectors[i]))
    matrices = []
    for i in range(n):
        # map induced on passing to the quotient, landing at slot 3i
        cols = []
        for w in h_total.vectors[i]:
            proj = w[ses.sub.dims[i] :]
            cols.append(
                _class_coords(
                    ring, h_quot.vectors[i], ses.quotient.boundary_into(i), proj
                )
            )
        matrices.append(_cols_to_matrix(cols, dims[3 * i]))
        # map induced by inclusion, landing at slot 3i+1
        cols = []
        for v in h_sub.vectors[i]:
            embedded = list(v) + [zero_rf] * ses.quotient.dims[i]
            cols.append(
                _class_coords(
                    ring, h_total.vectors[i], ses.total.boundary_into(i), embedded
                )
            )
        matrices.append(_cols_to_matrix(cols, dims[3 * i + 1]))
        # connecting map from slot 3(i+1) down to 3i+2
        if i + 1 < n:
            cols = []
            bnd = ses.total.boundary_into(i)
            for z in h_quot.vectors[i + 1]:
                lift = [zero_rf] * ses.sub.dims[i + 1] + list(z)
                if bnd is None:
                    moved = [zero_rf] * ses.total.dims[i]
                else:
                    moved = mat_apply(rf_matrix(bnd), lift, zero_rf)
                tail = moved[ses.sub.dims[i] :]
                if any(not entry.is_zero for entry in tail):
                    raise ArithmeticError("connecting image left the subcomplex")
                head = moved[: ses.sub.dims[i]]
                cols.append(
                    _class_coords(
                        ring, h_sub.vectors[i], ses.sub.boundary_into(i), head
                    )
                )
            matrices.append(_cols_to_matrix(cols, dims[3 * i + 2]))
    return dims, matrices


def _cols_to_matrix(cols, rows):
    return [[col[r] for col in cols] for r in range(rows)]


def product_formula_check(ses, h_sub=None, h_total=None, h_quot=None):
    """Whether torsion is multiplicative across the extension, mod units."""
    if h_sub is None:
        h_sub = default_homology_basis(ses.sub)
    if h_total is None:
        h_total = default_homology_basis(ses.total)
    if h_quot is None:
        h_quot = default_homology_basis(ses.quotient)
    tau_sub = torsion_tau_hat(ses.sub, h_sub)
    tau_total = torsion_tau_hat(ses.total, h_total)
    tau_quot = torsion_tau_hat(ses.quotient, h_quot)
    dims, matrices = _connecting_sequence(ses, h_sub, h_total, h_quot)
    tau_les = _torsion_engine(ses.total.ring, 0, dims, matrices)
    if tau_les is None:
        return False
    product = tau_sub.raw * tau_quot.raw * tau_les.raw
    return unit_equivalent(tau_total.raw, product)
