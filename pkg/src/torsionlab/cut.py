"""Gluing a cut surface, its return maps, and critical handles into one complex.

The assembled boundary in each degree is the block matrix

    rows (D, E, F) x cols (D, E, F) = [[N,   0,    W        ],
                                       [-tM, dS,   1 - t*phi],
                                       [0,   0,    -dS      ]]

with the F summand in degree i identified with the E summand in degree
i-1.  All stored block data is t-free; the twisting variable enters only
through the explicit placements above.
"""

from dataclasses import dataclass

from .complexes import (
    BasedChainComplex,
    TorsionValue,
    _torsion_engine,
    rebase_basis,
    torsion_tau,
    validate_complex,
)
from .errors import PreconditionError
from .linalg import adjugate, bareiss_det
from .novikov import invariant_I, tau_novikov
from .rings import (
    NovikovTruncation,
    RationalFunction,
    TPolynomial,
    canonical_mod_units,
    expand_series,
    unit_equivalent,
)
from .zeta import zeta_lefschetz


def _check_block(mat, rows, cols, name):
    if len(mat) != rows or any(len(row) != cols for row in mat):
        raise PreconditionError("block %s has the wrong shape" % name)


def _check_t_free(mat, name):
    for row in mat:
        for entry in row:
            if isinstance(entry, TPolynomial) and not entry.is_t_free():
                raise PreconditionError("block %s must not involve t" % name)


class CutSystem:
    """Cut-surface complex, return maps, and critical-handle coupling data."""

    __slots__ = ("sigma", "phi", "crit_dims", "N", "M", "W")

    def __init__(self, sigma, phi, crit_dims, N, M, W):
        if sigma.min_degree != 0:
            raise PreconditionError("cut surface must start in degree 0")
        n = len(sigma.dims)
        if n == 0:
            raise PreconditionError("cut surface must be nonempty")
        for j, mat in enumerate(sigma.boundaries):
            _check_t_free(mat, "sigma boundary %d" % (j + 1))
        crit_dims = list(crit_dims)
        if len(crit_dims) != n + 1:
            raise PreconditionError("critical dims must cover degrees 0..%d" % n)
        if any(d < 0 for d in crit_dims):
            raise PreconditionError("negative critical dimension")
        if len(phi) != n:
            raise PreconditionError("expected %d return maps" % n)
        for i, mat in enumerate(phi):
            _check_block(mat, sigma.dims[i], sigma.dims[i], "phi_%d" % i)
            _check_t_free(mat, "phi_%d" % i)
        for seq, label in ((N, "N"), (M, "M"), (W, "W")):
            if len(seq) != n:
                raise PreconditionError("expected %d %s-blocks" % (n, label))
        for i in range(1, n + 1):
            _check_block(N[i - 1], crit_dims[i - 1], crit_dims[i], "N_%d" % i)
            _check_block(M[i - 1], sigma.dims[i - 1], crit_dims[i], "M_%d" % i)
            _check_block(W[i - 1], crit_dims[i - 1], sigma.dims[i - 1], "W_%d" % i)
            _check_t_free(N[i - 1], "N_%d" % i)
            _check_t_free(M[i - 1], "M_%d" % i)
            _check_t_free(W[i - 1], "W_%d" % i)
        self.sigma = sigma
        self.phi = [self._coerce(mat) for mat in phi]
        self.crit_dims = crit_dims
        self.N = [self._coerce(mat) for mat in N]
        self.M = [self._coerce(mat) for mat in M]
        self.W = [self._coerce(mat) for mat in W]

    def _coerce(self, mat):
        out = []
        for row in mat:
            coerced = []
            for entry in row:
                if isinstance(entry, TPolynomial):
                    coerced.append(entry)
                elif isinstance(entry, int):
                    coerced.append(
                        TPolynomial.monomial(self.ring, coeff=entry)
                        if entry
                        else TPolynomial.zero(self.ring)
                    )
                else:
                    raise PreconditionError("cut data entries must be ring elements")
            out.append(coerced)
        return out

    @property
    def ring(self):
        return self.sigma.ring

    @property
    def n(self):
        return len(self.sigma.dims)


def _mul_to(A, B, zero, rows, inner, cols):
    # explicit target shape, so degenerate operands still yield rows x cols
    return [
        [sum((A[r][k] * B[k][c] for k in range(inner)), zero) for c in range(cols)]
        for r in range(rows)
    ]


def validate_cut_system(cs):
    """Defect report covering the surface complex and all coupling identities."""
    report = ["sigma: " + line for line in validate_complex(cs.sigma)]
    ring = cs.ring
    zero = TPolynomial.zero(ring)
    n = cs.n
    crit = cs.crit_dims
    sd = cs.sigma.dims
    for i in range(2, n + 1):
        d_sig = cs.sigma.boundaries[i - 2]
        nn = _mul_to(cs.N[i - 2], cs.N[i - 1], zero, crit[i - 2], crit[i - 1], crit[i])
        if any(e for row in nn for e in row):
            report.append("critical block d^2 != 0 at degree %d" % i)
        mn = _mul_to(cs.M[i - 2], cs.N[i - 1], zero, sd[i - 2], crit[i - 1], crit[i])
        dm = _mul_to(d_sig, cs.M[i - 1], zero, sd[i - 2], sd[i - 1], crit[i])
        if any(mn[r][c] + dm[r][c] for r in range(sd[i - 2]) for c in range(crit[i])):
            report.append("M/N compatibility fails at degree %d" % i)
        nw = _mul_to(cs.N[i - 2], cs.W[i - 1], zero, crit[i - 2], crit[i - 1], sd[i - 1])
        wd = _mul_to(cs.W[i - 2], d_sig, zero, crit[i - 2], sd[i - 2], sd[i - 1])
        if any(
            nw[r][c] - wd[r][c] for r in range(crit[i - 2]) for c in range(sd[i - 1])
        ):
            report.append("W/N compatibility fails at degree %d" % i)
        mw = _mul_to(cs.M[i - 2], cs.W[i - 1], zero, sd[i - 2], crit[i - 1], sd[i - 1])
        pd = _mul_to(cs.phi[i - 2], d_sig, zero, sd[i - 2], sd[i - 2], sd[i - 1])
        dp = _mul_to(d_sig, cs.phi[i - 1], zero, sd[i - 2], sd[i - 1], sd[i - 1])
        if any(
            mw[r][c] - pd[r][c] + dp[r][c]
            for r in range(sd[i - 2])
            for c in range(sd[i - 1])
        ):
            report.append("return map fails the W/M commutator at degree %d" % i)
    return report


def assemble_boundary(cs):
    """Glued complex in degrees 0..n with D, E, F labelled generators."""
    report = validate_cut_system(cs)
    if report:
        raise PreconditionError("; ".join(report))
    ring = cs.ring
    zero = TPolynomial.zero(ring)
    one = TPolynomial.one(ring)
    t = TPolynomial.t(ring)
    n = cs.n
    sd = cs.sigma.dims

    def e_dim(i):
        return sd[i] if 0 <= i <= n - 1 else 0

    def f_dim(i):
        return sd[i - 1] if 1 <= i <= n else 0

    dims = [cs.crit_dims[i] + e_dim(i) + f_dim(i) for i in range(n + 1)]
    labels = []
    for i in range(n + 1):
        group = ["D%d_%d" % (i, k) for k in range(cs.crit_dims[i])]
        group += ["E%d_%d" % (i, k) for k in range(e_dim(i))]
        group += ["F%d_%d" % (i, k) for k in range(f_dim(i))]
        labels.append(group)
    boundaries = []
    for i in range(1, n + 1):
        mat = [[zero for _ in range(dims[i])] for _ in range(dims[i - 1])]
        rd, re = cs.crit_dims[i - 1], e_dim(i - 1)
        cd, ce = cs.crit_dims[i], e_dim(i)
        for r in range(rd):
            for c in range(cd):
                mat[r][c] = cs.N[i - 1][r][c]
            for c in range(f_dim(i)):
                mat[r][cd + ce + c] = cs.W[i - 1][r][c]
        phi = cs.phi[i - 1]
        for r in range(re):
            for c in range(cd):
                mat[rd + r][c] = -t * cs.M[i - 1][r][c]
            if i <= n - 1:
                for c in range(ce):
                    mat[rd + r][cd + c] = cs.sigma.boundaries[i - 1][r][c]
            for c in range(f_dim(i)):
                mat[rd + r][cd + ce + c] = (one if r == c else zero) - t * phi[r][c]
        for r in range(f_dim(i - 1)):
            for c in range(f_dim(i)):
                mat[rd + re + r][cd + ce + c] = -cs.sigma.boundaries[i - 2][r][c]
        boundaries.append(mat)
    assembled = BasedChainComplex(ring, 0, dims, boundaries, labels)
    leftover = validate_complex(assembled)
    if leftover:
        raise PreconditionError("; ".join(leftover))
    return assembled


def _twist_block(ring, phi):
    """1 - t*phi as a square polynomial matrix."""
    one = TPolynomial.one(ring)
    zero = TPolynomial.zero(ring)
    t = TPolynomial.t(ring)
    m = len(phi)
    return [
        [(one if r == c else zero) - t * phi[r][c] for c in range(m)] for r in range(m)
    ]


def compute_K(cs):
    """Handle-to-handle transfer matrices with the return-flow correction.

    K_i = N_i + t W_i (1 - t phi_{i-1})^{-1} M_i, the inverse realized
    through the adjugate so every entry stays an exact fraction.  The
    denominator det(1 - t phi) has constant term 1, hence never vanishes.
    """
    ring = cs.ring
    t = TPolynomial.t(ring)
    zero = TPolynomial.zero(ring)
    out = []
    for i in range(1, cs.n + 1):
        rows = cs.crit_dims[i - 1]
        cols = cs.crit_dims[i]
        m = cs.sigma.dims[i - 1]
        adj, det = adjugate(ring, _twist_block(ring, cs.phi[i - 1]))
        correction = _mul_to(
            _mul_to(cs.W[i - 1], adj, zero, rows, m, m),
            cs.M[i - 1],
            zero,
            rows,
            m,
            cols,
        )
        K = []
        for r in range(rows):
            row = []
            for c in range(cols):
                num = cs.N[i - 1][r][c] * det + t * correction[r][c]
                row.append(RationalFunction(num, det))
            K.append(row)
        out.append(K)
    return out


def tau_via_products(cs):
    """Torsion of the glued complex through the degreewise factorization.

    The critical complex with boundaries K is paired by the same greedy
    square splitting used for direct torsion; each paired determinant is
    weighted against det(1 - t phi) with alternating exponents.  A split
    that exists dimensionally but meets only singular blocks yields the
    zero value.
    """
    ring = cs.ring
    crit = cs.crit_dims
    carried = 0
    for j in range(1, len(crit)):
        carried = crit[j - 1] - carried
        if carried < 0 or carried > crit[j]:
            raise PreconditionError("critical ranks admit no square splitting")
    if carried != crit[-1]:
        raise PreconditionError("critical ranks admit no square splitting")
    engine = _torsion_engine(ring, 0, crit, compute_K(cs))
    if engine is None:
        z = RationalFunction.zero(ring)
        return TorsionValue(z, z)
    total = engine.raw
    for i in range(1, cs.n + 1):
        det = RationalFunction(bareiss_det(ring, _twist_block(ring, cs.phi[i - 1])))
        total = total * (det.inverse() if i % 2 else det)
    return TorsionValue(total, canonical_mod_units(total))


def _coeff_window(value):
    """(slices by t-degree, declared order or None for exact, min degree or None)."""
    if isinstance(value, NovikovTruncation):
        m = min(value.slices) if value.slices else None
        return dict(value.slices), value.order, m
    if isinstance(value, int):
        return ({0: value} if value else {}), None, (0 if value else None)
    if isinstance(value, TPolynomial):
        if value.is_zero:
            return {}, None, None
        return value.t_slices(), None, value.min_t_degree()
    if isinstance(value, RationalFunction):
        if value.is_zero:
            return {}, None, None
        return None, None, value.num.min_t_degree() - value.den.min_t_degree()
    raise PreconditionError("cannot window a %s" % type(value).__name__)


def approx_equal(x, y, k):
    """Agreement of the leading width-k coefficient windows of two values.

    The window starts at the smaller of the two minimum t-degrees;
    degrees beyond a truncated operand's declared order are treated as
    unknown rather than as disagreements.
    """
    sx, ox, mx = _coeff_window(x)
    sy, oy, my = _coeff_window(y)
    mins = [m for m in (mx, my) if m is not None]
    if not mins:
        return True
    base = min(mins)
    # fraction windows expand only once the base degree is known
    if sx is None:
        sx = dict(expand_series(x, base + k).slices)
    if sy is None:
        sy = dict(expand_series(y, base + k).slices)
    for d in range(base, base + k):
        if ox is not None and d > ox:
            continue
        if oy is not None and d > oy:
            continue
        if sx.get(d, 0) != sy.get(d, 0):
            return False
    return True


def check_K_vs_novikov(cs, cn, k):
    """Whether the transfer matrices reproduce the flow-count boundaries.

    Alignment is by true degree: critical ranks must match cn's
    generator counts degree by degree (missing degrees count as zero),
    and every entry must agree through t-degree k, capped by cn's
    declared order when it has one.
    """
    by_degree = {}
    for j, d in enumerate(cn.dims):
        by_degree[cn.min_degree + j] = d
    for degree in range(len(cs.crit_dims)):
        if cs.crit_dims[degree] != by_degree.pop(degree, 0):
            raise PreconditionError("dimension mismatch")
    if any(by_degree.values()):
        raise PreconditionError("dimension mismatch")
    cap = k if cn.order is None else min(k, cn.order)
    K = compute_K(cs)
    for i in range(1, cs.n + 1):
        rows = cs.crit_dims[i - 1]
        cols = cs.crit_dims[i]
        if rows == 0 or cols == 0:
            continue
        cn_mat = cn.boundaries[i - 1 - cn.min_degree]
        for r in range(rows):
            for c in range(cols):
                expanded = expand_series(K[i - 1][r][c], cap)
                if expanded != NovikovTruncation.from_tpolynomial(cn_mat[r][c], cap):
                    return False
    return True


@dataclass(frozen=True)
class VerificationReport:
    """Everything the end-to-end identity check produced along the way."""

    zeta: RationalFunction
    tau_cn: object
    invariant: object
    direct: object
    product_route: object
    series_consistent: bool
    main_identity: bool
    product_identity: bool


def verify_main_theorem(cs, cn, xi=None, order=16):
    """Compare the counting invariant against the glued-complex torsion.

    The invariant side multiplies the counting function of the return
    maps by the torsion of the critical-point complex in the basis the
    lift picks; the topological side takes the torsion of the assembled
    complex with the same basing applied to its D generators.
    """
    k = cn.order if cn.order is not None else order
    series_ok = check_K_vs_novikov(cs, cn, k)
    zeta = zeta_lefschetz(cs.ring, cs.phi)
    tau_cn = tau_novikov(cn, xi)
    inv = invariant_I(zeta, tau_cn)
    assembled = assemble_boundary(cs)
    if xi is not None:
        for j, group in enumerate(xi.offsets):
            degree = cn.min_degree + j
            for index, u in enumerate(group):
                if u == 1:
                    continue
                assembled = rebase_basis(assembled, degree, index, u)
    direct = torsion_tau(assembled)
    product_route = tau_via_products(cs)
    if inv.is_zero or inv.value is None or direct is None:
        main = inv.is_zero and direct is None
    else:
        a = inv.value.canonical
        b = direct.canonical
        main = a.num == b.num and a.den == b.den
    if direct is None or product_route.raw.is_zero:
        product = (direct is None) == product_route.raw.is_zero
    else:
        product = unit_equivalent(product_route.raw, direct.raw)
    return VerificationReport(
        zeta=zeta,
        tau_cn=tau_cn,
        invariant=inv,
        direct=direct,
        product_route=product_route,
        series_consistent=series_ok,
        main_identity=main,
        product_identity=product,
    )
