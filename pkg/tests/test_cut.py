import pytest

from torsionlab.complexes import BasedChainComplex, torsion_tau
from torsionlab.cut import (
    CutSystem,
    approx_equal,
    assemble_boundary,
    check_K_vs_novikov,
    compute_K,
    tau_via_products,
    validate_cut_system,
    verify_main_theorem,
)
from torsionlab.errors import PreconditionError
from torsionlab.linalg import rf_det
from torsionlab.novikov import EulerLift, NovikovComplex
from torsionlab.rings import (
    NovikovTruncation,
    RationalFunction,
    TPolynomial,
    frac_equal,
    unit_equivalent,
)

import oracles
from conftest import R0, tpoly


ONE = TPolynomial.one(R0)
ZERO = TPolynomial.zero(R0)
T = TPolynomial.t(R0)

CAT_MAP = [[2, 1], [1, 1]]


def rp(*pairs):
    """Shorthand: ((deg, coeff), ...) to a TPolynomial over the plain ring."""
    return tpoly(R0, {(d, ()): c for d, c in pairs})


def point_sigma(points=1):
    return BasedChainComplex(R0, 0, [points], [])


def torus_sigma():
    zero_12 = [[ZERO, ZERO]]
    zero_21 = [[ZERO], [ZERO]]
    return BasedChainComplex(R0, 0, [1, 2, 1], [zero_12, zero_21])


def circle_nocrit():
    # no critical points; the glued complex is the mapping torus of the point
    return CutSystem(
        point_sigma(),
        phi=[[[1]]],
        crit_dims=[0, 0],
        N=[[]],
        M=[[[]]],
        W=[[]],
    )


def circle_onecrit():
    # same circle presented with one cancelling pair of critical points
    return CutSystem(
        point_sigma(),
        phi=[[[0]]],
        crit_dims=[1, 1],
        N=[[[1]]],
        M=[[[1]]],
        W=[[[-1]]],
    )


def catmap_cut():
    return CutSystem(
        torus_sigma(),
        phi=[[[1]], CAT_MAP, [[1]]],
        crit_dims=[0, 0, 0, 0],
        N=[[], [], []],
        M=[[[]], [[], []], [[]]],
        W=[[], [], []],
    )


def stabilized_cut():
    """Cat-map torus with one cancelling handle pair in degrees 1 and 2."""
    return CutSystem(
        torus_sigma(),
        phi=[[[1]], CAT_MAP, [[1]]],
        crit_dims=[0, 1, 1, 0],
        N=[[], [[1]], [[]]],
        M=[[[0]], [[1], [0]], [[]]],
        W=[[], [[0, 1]], [[0]]],
    )


STABILIZED_SERIES = rp(
    (0, 1), (2, 1), (3, 3), (4, 8), (5, 21), (6, 55), (7, 144), (8, 377)
)


def stabilized_cn(entry=None, order=8):
    entry = STABILIZED_SERIES if entry is None else entry
    return NovikovComplex(R0, 1, [1, 1], [[[entry]]], order=order)


def two_degree_sigma(c):
    return BasedChainComplex(R0, 0, [1, 1], [[[rp((0, c))]]])


class TestCutSystemValidation:
    def test_shape_errors(self):
        with pytest.raises(PreconditionError):
            CutSystem(point_sigma(), [[[1]]], [1, 1], [[[1]]], [[[1], [1]]], [[[0]]])
        with pytest.raises(PreconditionError):
            CutSystem(point_sigma(), [[[1], [0]]], [0, 0], [[]], [[[]]], [[]])
        with pytest.raises(PreconditionError):
            CutSystem(point_sigma(), [[[1]]], [0, 0, 0], [[]], [[[]]], [[]])
        with pytest.raises(PreconditionError):
            CutSystem(point_sigma(), [[[1]]], [0], [[]], [[[]]], [[]])

    def test_t_free_enforced(self):
        with pytest.raises(PreconditionError, match="must not involve t"):
            CutSystem(point_sigma(), [[[T]]], [0, 0], [[]], [[[]]], [[]])
        with pytest.raises(PreconditionError, match="must not involve t"):
            CutSystem(
                point_sigma(),
                [[[1]]],
                [1, 1],
                [[[1 - T]]],
                [[[1]]],
                [[[0]]],
            )

    def test_sigma_degree_zero_start(self):
        shifted = BasedChainComplex(R0, 1, [1], [])
        with pytest.raises(PreconditionError):
            CutSystem(shifted, [[[1]]], [0, 0], [[]], [[[]]], [[]])

    def test_negative_crit_dim(self):
        with pytest.raises(PreconditionError):
            CutSystem(point_sigma(), [[[1]]], [0, -1], [[]], [[[]]], [[]])

    def test_clean_fixtures_have_empty_reports(self):
        for cs in (circle_nocrit(), circle_onecrit(), catmap_cut(), stabilized_cut()):
            assert validate_cut_system(cs) == []

    def test_sigma_dsq_defect_is_prefixed(self):
        bad = BasedChainComplex(R0, 0, [1, 1, 1], [[[ONE]], [[ONE]]])
        cs = CutSystem(
            bad,
            phi=[[[1]], [[1]], [[1]]],
            crit_dims=[0, 0, 0, 0],
            N=[[], [], []],
            M=[[[]], [[]], [[]]],
            W=[[], [], []],
        )
        assert validate_cut_system(cs) == ["sigma: d^2 != 0 at degree 2"]

    def test_critical_dsq_defect(self):
        cs = CutSystem(
            two_degree_sigma(0),
            phi=[[[0]], [[0]]],
            crit_dims=[1, 1, 1],
            N=[[[1]], [[1]]],
            M=[[[0]], [[0]]],
            W=[[[0]], [[0]]],
        )
        assert validate_cut_system(cs) == ["critical block d^2 != 0 at degree 2"]

    def test_mn_defect(self):
        cs = CutSystem(
            two_degree_sigma(0),
            phi=[[[0]], [[0]]],
            crit_dims=[1, 1, 1],
            N=[[[0]], [[1]]],
            M=[[[1]], [[0]]],
            W=[[[0]], [[0]]],
        )
        assert validate_cut_system(cs) == ["M/N compatibility fails at degree 2"]

    def test_wn_defect(self):
        cs = CutSystem(
            two_degree_sigma(0),
            phi=[[[0]], [[0]]],
            crit_dims=[1, 1, 1],
            N=[[[1]], [[0]]],
            M=[[[0]], [[0]]],
            W=[[[1]], [[1]]],
        )
        assert validate_cut_system(cs) == ["W/N compatibility fails at degree 2"]

    def test_commutator_defect(self):
        cs = CutSystem(
            two_degree_sigma(0),
            phi=[[[0]], [[0]]],
            crit_dims=[1, 1, 1],
            N=[[[0]], [[0]]],
            M=[[[1]], [[0]]],
            W=[[[0]], [[1]]],
        )
        assert validate_cut_system(cs) == [
            "return map fails the W/M commutator at degree 2"
        ]

    def test_commuting_return_map_passes(self):
        # identity return maps commute with any surface boundary
        cs = CutSystem(
            two_degree_sigma(3),
            phi=[[[1]], [[1]]],
            crit_dims=[0, 0, 0],
            N=[[], []],
            M=[[[]], [[]]],
            W=[[], []],
        )
        assert validate_cut_system(cs) == []

    def test_assemble_refuses_defective_data(self):
        cs = CutSystem(
            two_degree_sigma(0),
            phi=[[[0]], [[0]]],
            crit_dims=[1, 1, 1],
            N=[[[1]], [[1]]],
            M=[[[0]], [[0]]],
            W=[[[0]], [[0]]],
        )
        with pytest.raises(PreconditionError, match="critical block"):
            assemble_boundary(cs)


class TestAssembly:
    def test_circle_nocrit(self):
        glued = assemble_boundary(circle_nocrit())
        assert glued.dims == [1, 1]
        assert glued.boundaries[0] == [[1 - T]]
        assert glued.labels == [["E0_0"], ["F1_0"]]

    def test_circle_onecrit(self):
        glued = assemble_boundary(circle_onecrit())
        assert glued.dims == [2, 2]
        assert glued.boundaries[0] == [[ONE, -ONE], [-T, ONE]]
        assert glued.labels[0] == ["D0_0", "E0_0"]
        assert glued.labels[1] == ["D1_0", "F1_0"]

    def test_catmap_dims_and_blocks(self):
        glued = assemble_boundary(catmap_cut())
        assert glued.dims == [1, 3, 3, 1]
        # degree-2 boundary carries 1 - t*phi_1 in the (E, F) corner
        d2 = glued.boundaries[1]
        assert d2[0][1] == 1 - 2 * T
        assert d2[0][2] == -T
        assert d2[1][1] == -T
        assert d2[1][2] == 1 - T
        assert d2[2][1] == ZERO
        d3 = glued.boundaries[2]
        assert d3[0][0] == 1 - T
        assert d3[1][0] == ZERO

    def test_stabilized_dims_and_couplings(self):
        glued = assemble_boundary(stabilized_cut())
        assert glued.dims == [1, 4, 4, 1]
        d2 = glued.boundaries[1]
        assert d2[0][0] == ONE
        assert d2[0][3] == ONE
        assert d2[1][0] == -T
        assert d2[2][0] == ZERO
        assert glued.labels[1] == ["D1_0", "E1_0", "E1_1", "F1_0"]
        assert glued.labels[2] == ["D2_0", "E2_0", "F2_0", "F2_1"]

    def test_random_mapping_tori_close(self):
        for seed in range(8):
            rng = oracles.seeded(900 + seed)
            cs = random_mapping_torus(rng)
            glued = assemble_boundary(cs)
            assert glued.dims[0] == cs.sigma.dims[0]


def random_mapping_torus(rng, max_degrees=3, max_dim=3):
    n = rng.randint(1, max_degrees)
    dims = [rng.randint(1, max_dim) for _ in range(n)]
    boundaries = [
        [[ZERO for _ in range(dims[j + 1])] for _ in range(dims[j])]
        for j in range(n - 1)
    ]
    sigma = BasedChainComplex(R0, 0, dims, boundaries)
    phi = [
        [[rng.randint(-2, 2) for _ in range(d)] for _ in range(d)] for d in dims
    ]
    crit = [0] * (n + 1)
    N = [[] for _ in range(n)]
    M = [[[] for _ in range(dims[i - 1])] for i in range(1, n + 1)]
    W = [[] for _ in range(n)]
    return CutSystem(sigma, phi, crit, N, M, W)


def random_stabilized_torus(rng, spot=None):
    """Zero-boundary surface, one handle pair, free M and W at the pair."""
    n = 3
    dims = [rng.randint(1, 3) for _ in range(n)]
    boundaries = [
        [[ZERO for _ in range(dims[j + 1])] for _ in range(dims[j])]
        for j in range(n - 1)
    ]
    sigma = BasedChainComplex(R0, 0, dims, boundaries)
    phi = [
        [[rng.randint(-2, 2) for _ in range(d)] for _ in range(d)] for d in dims
    ]
    j = rng.randint(1, n) if spot is None else spot
    crit = [0] * (n + 1)
    crit[j - 1] = 1
    crit[j] = 1
    N, M, W = [], [], []
    for i in range(1, n + 1):
        N.append(
            [[1 if (i == j) else 0 for _ in range(crit[i])] for _ in range(crit[i - 1])]
        )
        if i == j:
            M.append([[rng.randint(-2, 2)] for _ in range(dims[i - 1])])
            W.append([[rng.randint(-2, 2) for _ in range(dims[i - 1])]])
        else:
            M.append([[0] * crit[i] for _ in range(dims[i - 1])])
            W.append([[0] * dims[i - 1] for _ in range(crit[i - 1])])
    return CutSystem(sigma, phi, crit, N, M, W)


class TestComputeK:
    def test_zero_w_kills_correction(self):
        cs = CutSystem(
            point_sigma(),
            phi=[[[1]]],
            crit_dims=[1, 1],
            N=[[[2]]],
            M=[[[1]]],
            W=[[[0]]],
        )
        (K1,) = compute_K(cs)
        assert frac_equal(K1[0][0], RationalFunction.from_int(R0, 2))

    def test_scalar_substitution(self):
        cs = CutSystem(
            point_sigma(),
            phi=[[[1]]],
            crit_dims=[1, 1],
            N=[[[3]]],
            M=[[[1]]],
            W=[[[2]]],
        )
        (K1,) = compute_K(cs)
        assert frac_equal(K1[0][0], RationalFunction(rp((0, 3), (1, -1)), 1 - T))

    def test_swap_map_denominator(self):
        cs = CutSystem(
            point_sigma(points=2),
            phi=[[[0, 1], [1, 0]]],
            crit_dims=[1, 1],
            N=[[[1]]],
            M=[[[0], [1]]],
            W=[[[1, 0]]],
        )
        (K1,) = compute_K(cs)
        assert K1[0][0].num == ONE
        assert K1[0][0].den == rp((0, 1), (2, -1))

    def test_circle_onecrit_value(self):
        (K1,) = compute_K(circle_onecrit())
        assert frac_equal(K1[0][0], RationalFunction(1 - T))

    def test_stabilized_frozen_value(self):
        K = compute_K(stabilized_cut())
        assert K[0] == []
        k2 = K[1][0][0]
        assert k2.num == rp((0, 1), (1, -3), (2, 2))
        assert k2.den == rp((0, 1), (1, -3), (2, 1))
        assert K[2] == [[]]

    def test_shapes_follow_crit_dims(self):
        K = compute_K(catmap_cut())
        assert K == [[], [], []]


def omega_block(cs, i):
    """[[N_i, W_i], [-tM_i, 1 - t*phi_{i-1}]] lifted to rational entries."""
    ring = cs.ring
    t = TPolynomial.t(ring)
    one = TPolynomial.one(ring)
    zero = TPolynomial.zero(ring)
    m = cs.sigma.dims[i - 1]
    rows = []
    for r in range(cs.crit_dims[i - 1]):
        rows.append(list(cs.N[i - 1][r]) + list(cs.W[i - 1][r]))
    for r in range(m):
        twist = [(one if r == c else zero) - t * cs.phi[i - 1][r][c] for c in range(m)]
        rows.append([-t * e for e in cs.M[i - 1][r]] + twist)
    return [[RationalFunction(e) for e in row] for row in rows]


class TestOmegaFactorization:
    """det of the coupled block equals det(1 - t*phi) times det(K)."""

    def check(self, cs, i):
        omega = rf_det(R0, omega_block(cs, i))
        twist = [
            [
                (ONE if r == c else ZERO) - T * cs.phi[i - 1][r][c]
                for c in range(cs.sigma.dims[i - 1])
            ]
            for r in range(cs.sigma.dims[i - 1])
        ]
        lhs = rf_det(R0, [[RationalFunction(e) for e in row] for row in twist])
        K = compute_K(cs)[i - 1]
        assert frac_equal(omega, lhs * rf_det(R0, K))

    def test_circle_onecrit(self):
        self.check(circle_onecrit(), 1)

    def test_swap_fixture(self):
        cs = CutSystem(
            point_sigma(points=2),
            phi=[[[0, 1], [1, 0]]],
            crit_dims=[1, 1],
            N=[[[1]]],
            M=[[[0], [1]]],
            W=[[[1, 0]]],
        )
        self.check(cs, 1)

    def test_stabilized_middle_degree(self):
        self.check(stabilized_cut(), 2)

    def test_random_one_level_systems(self):
        # with a single surface degree every block choice is consistent
        for seed in range(15):
            rng = oracles.seeded(7100 + seed)
            m = rng.randint(1, 3)
            a = rng.randint(0, 2)
            sigma = point_sigma(points=m)
            phi = [[[rng.randint(-2, 2) for _ in range(m)] for _ in range(m)]]
            N = [[[rng.randint(-2, 2) for _ in range(a)] for _ in range(a)]]
            M = [[[rng.randint(-2, 2) for _ in range(a)] for _ in range(m)]]
            W = [[[rng.randint(-2, 2) for _ in range(m)] for _ in range(a)]]
            cs = CutSystem(sigma, phi, [a, a], N, M, W)
            self.check(cs, 1)


class TestTauViaProducts:
    def test_circle_nocrit(self):
        value = tau_via_products(circle_nocrit())
        assert frac_equal(value.raw, RationalFunction(ONE, 1 - T))
        assert value.canonical.den == 1 - T

    def test_circle_onecrit(self):
        value = tau_via_products(circle_onecrit())
        assert frac_equal(value.raw, RationalFunction(ONE, 1 - T))

    def test_catmap(self):
        value = tau_via_products(catmap_cut())
        expected = RationalFunction(rp((0, 1), (1, -3), (2, 1)), (1 - T) * (1 - T))
        assert frac_equal(value.raw, expected)
        assert value.canonical.num == rp((0, 1), (1, -3), (2, 1))

    def test_stabilized(self):
        value = tau_via_products(stabilized_cut())
        assert frac_equal(value.raw, RationalFunction(rp((0, 1), (1, -2)), 1 - T))

    def test_matches_direct_on_fixtures(self):
        for cs in (circle_nocrit(), circle_onecrit(), catmap_cut(), stabilized_cut()):
            direct = torsion_tau(assemble_boundary(cs))
            assert direct is not None
            assert unit_equivalent(tau_via_products(cs).raw, direct.raw)

    def test_singular_k_gives_zero(self):
        cs = CutSystem(
            point_sigma(),
            phi=[[[0]]],
            crit_dims=[1, 1],
            N=[[[0]]],
            M=[[[0]]],
            W=[[[0]]],
        )
        value = tau_via_products(cs)
        assert value.raw.is_zero
        assert torsion_tau(assemble_boundary(cs)) is None

    def test_unpairable_ranks_raise(self):
        cs = CutSystem(
            point_sigma(),
            phi=[[[1]]],
            crit_dims=[1, 0],
            N=[[[]]],
            M=[[[]]],
            W=[[[0]]],
        )
        with pytest.raises(PreconditionError, match="square splitting"):
            tau_via_products(cs)

    def test_random_mapping_tori(self):
        for seed in range(12):
            rng = oracles.seeded(3300 + seed)
            cs = random_mapping_torus(rng)
            direct = torsion_tau(assemble_boundary(cs))
            assert direct is not None
            assert unit_equivalent(tau_via_products(cs).raw, direct.raw)

    def test_random_stabilizations(self):
        for seed in range(12):
            rng = oracles.seeded(4400 + seed)
            cs = random_stabilized_torus(rng)
            direct = torsion_tau(assemble_boundary(cs))
            assert direct is not None
            assert unit_equivalent(tau_via_products(cs).raw, direct.raw)

    def test_commuting_identity_torus(self):
        for c in (0, 1, 2, -3):
            cs = CutSystem(
                two_degree_sigma(c),
                phi=[[[1]], [[1]]],
                crit_dims=[0, 0, 0],
                N=[[], []],
                M=[[[]], [[]]],
                W=[[], []],
            )
            direct = torsion_tau(assemble_boundary(cs))
            assert unit_equivalent(tau_via_products(cs).raw, direct.raw)


class TestApproxEqual:
    def test_geometric_window(self):
        geo = RationalFunction(ONE, 1 - T)
        partial = rp((0, 1), (1, 1), (2, 1))
        assert approx_equal(geo, partial, 3)
        assert not approx_equal(geo, partial, 4)

    def test_reflexive(self):
        values = [
            RationalFunction(rp((0, 1), (1, -3), (2, 1)), (1 - T) * (1 - T)),
            rp((2, 5), (7, -1)),
            NovikovTruncation.from_tpolynomial(rp((0, 1), (3, 2)), 5),
        ]
        for x in values:
            for k in (1, 2, 8):
                assert approx_equal(x, x, k)

    def test_truncation_order_limits_the_window(self):
        short = NovikovTruncation.from_tpolynomial(rp((0, 1), (1, 1)), 2)
        geo = RationalFunction(ONE, 1 - T)
        assert approx_equal(short, geo, 2)
        assert not approx_equal(short, geo, 3)
        padded = NovikovTruncation.from_tpolynomial(rp((0, 1), (1, 1), (2, 1)), 2)
        assert approx_equal(padded, geo, 10)

    def test_window_starts_at_common_minimum(self):
        low = rp((-1, 1))
        assert approx_equal(low, low + T, 2)
        assert not approx_equal(low, low + T, 3)

    def test_zero_and_integers(self):
        assert approx_equal(ZERO, RationalFunction.zero(R0), 6)
        assert not approx_equal(ZERO, ONE, 1)
        assert approx_equal(1, RationalFunction.one(R0), 3)
        assert approx_equal(0, RationalFunction.zero(R0), 3)
        assert not approx_equal(2, RationalFunction.one(R0), 1)

    def test_fraction_vs_fraction(self):
        a = RationalFunction(ONE, 1 - T)
        b = RationalFunction(ONE, rp((0, 1), (1, -1), (5, 1)))
        assert approx_equal(a, b, 5)
        assert not approx_equal(a, b, 6)


class TestCheckKAgainstNovikov:
    def test_exact_match_at_any_order(self):
        cs = circle_onecrit()
        cn = NovikovComplex(R0, 0, [1, 1], [[[1 - T]]])
        for k in (1, 4, 20):
            assert check_K_vs_novikov(cs, cn, k)

    def test_stabilized_series_through_its_order(self):
        assert check_K_vs_novikov(stabilized_cut(), stabilized_cn(), 8)

    def test_perturbed_entry_truncation_semantics(self):
        bumped = stabilized_cn(entry=STABILIZED_SERIES + rp((3, 1)))
        assert check_K_vs_novikov(stabilized_cut(), bumped, 2)
        assert not check_K_vs_novikov(stabilized_cut(), bumped, 3)
        assert not check_K_vs_novikov(stabilized_cut(), bumped, 4)

    def test_dimension_mismatch(self):
        cn = NovikovComplex(R0, 1, [1], [])
        with pytest.raises(PreconditionError, match="dimension mismatch"):
            check_K_vs_novikov(stabilized_cut(), cn, 4)
        extra = NovikovComplex(R0, 1, [1, 1, 1], [[[ONE]], [[ZERO]]], order=4)
        with pytest.raises(PreconditionError, match="dimension mismatch"):
            check_K_vs_novikov(stabilized_cut(), extra, 4)

    def test_no_critical_points_is_vacuous(self):
        cn = NovikovComplex(R0, 0, [], [])
        assert check_K_vs_novikov(catmap_cut(), cn, 12)

    def test_declared_order_caps_comparison(self):
        # entries differ at degree 3 but the complex only claims order 2
        bumped = stabilized_cn(entry=STABILIZED_SERIES + rp((3, 1)), order=2)
        assert check_K_vs_novikov(stabilized_cut(), bumped, 10)


class TestVerifyMainTheorem:
    def test_circle_nocrit_scenario(self):
        cs = circle_nocrit()
        cn = NovikovComplex(R0, 0, [], [])
        report = verify_main_theorem(cs, cn)
        assert frac_equal(report.zeta, RationalFunction(ONE, 1 - T))
        assert frac_equal(report.tau_cn.raw, RationalFunction.one(R0))
        assert report.invariant.value.canonical.den == 1 - T
        assert report.series_consistent
        assert report.main_identity
        assert report.product_identity

    def test_circle_onecrit_scenario(self):
        cs = circle_onecrit()
        cn = NovikovComplex(R0, 0, [1, 1], [[[1 - T]]])
        report = verify_main_theorem(cs, cn)
        assert frac_equal(report.zeta, RationalFunction.one(R0))
        assert frac_equal(report.tau_cn.raw, RationalFunction(ONE, 1 - T))
        assert report.main_identity
        assert report.product_identity
        assert report.series_consistent

    def test_two_presentations_agree(self):
        first = verify_main_theorem(circle_nocrit(), NovikovComplex(R0, 0, [], []))
        second = verify_main_theorem(
            circle_onecrit(), NovikovComplex(R0, 0, [1, 1], [[[1 - T]]])
        )
        a = first.invariant.value.canonical
        b = second.invariant.value.canonical
        assert a.num == b.num and a.den == b.den

    def test_catmap_scenario(self):
        cs = catmap_cut()
        cn = NovikovComplex(R0, 0, [], [])
        report = verify_main_theorem(cs, cn)
        assert frac_equal(
            report.zeta,
            RationalFunction(rp((0, 1), (1, -3), (2, 1)), (1 - T) * (1 - T)),
        )
        assert frac_equal(report.tau_cn.raw, RationalFunction.one(R0))
        assert report.main_identity
        assert report.product_identity

    def test_lift_offset_cancels(self):
        cs = circle_onecrit()
        cn = NovikovComplex(R0, 0, [1, 1], [[[1 - T]]])
        xi = EulerLift(R0, [[T**2], [ONE]])
        report = verify_main_theorem(cs, cn, xi=xi)
        assert report.main_identity
        assert report.product_identity

    def test_wrong_counting_data_is_flagged(self):
        cs = circle_onecrit()
        cn = NovikovComplex(R0, 0, [1, 1], [[[rp((0, 1), (1, -1), (3, 1))]]])
        report = verify_main_theorem(cs, cn)
        assert not report.series_consistent
        assert not report.main_identity
        assert report.product_identity

    def test_stabilized_pair_series_route(self):
        # the truncated flow complex certifies the series identity only;
        # its polynomial torsion is not the exact value, so the literal
        # equality is expected to fail while both torsion routes agree
        report = verify_main_theorem(stabilized_cut(), stabilized_cn())
        assert report.series_consistent
        assert report.product_identity
        assert not report.main_identity
        assert frac_equal(
            report.product_route.raw, RationalFunction(rp((0, 1), (1, -2)), 1 - T)
        )
