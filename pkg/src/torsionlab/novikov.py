"""Downward gradient complexes with lifted generators.

Generators sit one per critical point, graded by Morse index.  Boundary
entries count flow lines and therefore never carry negative t-degree;
the degree-0 part is nilpotent for free since the differential lowers
the index.  Lifts are recorded relative to the fixture baseline as
one monomial offset per generator.
"""

from dataclasses import dataclass

from .complexes import (
    BasedChainComplex,
    TorsionValue,
    homology_ranks,
    rebase_basis,
    torsion_tau,
)
from .errors import PreconditionError
from .rings import (
    NovikovTruncation,
    RationalFunction,
    TPolynomial,
    canonical_mod_units,
    expand_series,
)


class NovikovComplex(BasedChainComplex):
    """Based complex of critical points; order declares series truncation.

    order None means the entries are exact polynomials; an integer k
    means every entry is trusted only through t-degree k.
    """

    __slots__ = ("order",)

    def __init__(self, ring, min_degree, dims, boundaries, labels=None, order=None):
        super().__init__(ring, min_degree, dims, boundaries, labels)
        for mat in self.boundaries:
            for row in mat:
                for entry in row:
                    if entry and entry.min_t_degree() < 0:
                        raise PreconditionError(
                            "flow-line counts cannot have negative t-degree"
                        )
        if order is not None and order < 0:
            raise PreconditionError("truncation order must be nonnegative")
        self.order = order


class EulerLift:
    """One monomial offset per generator, grouped by degree index."""

    __slots__ = ("ring", "offsets")

    def __init__(self, ring, offsets):
        checked = []
        for group in offsets:
            row = []
            for u in group:
                parts = u.unit_parts()
                if parts is None or parts[0] != 1:
                    raise PreconditionError("lift offsets must be +1 monomials")
                row.append(u)
            checked.append(row)
        self.ring = ring
        self.offsets = checked

    @classmethod
    def trivial(cls, ring, dims):
        return cls(ring, [[TPolynomial.one(ring)] * d for d in dims])


def tau_novikov(cn, xi=None):
    """Torsion of the critical-point complex in the basis picked by the lift."""
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
    return torsion_tau(moved)


@dataclass(frozen=True)
class MorseInvariant:
    """The counting invariant, exactly and/or as a truncated series.

    A zero value (torsion of a non-acyclic complex) leaves both parts
    None.  When the counting function arrives as a series, only the
    series part is populated.
    """

    value: object = None
    series: object = None

    @property
    def is_zero(self):
        return self.value is None and self.series is None


def invariant_I(zeta, tau_cn):
    """Product of the counting function and the Morse torsion."""
    if tau_cn is None:
        return MorseInvariant()
    if isinstance(zeta, RationalFunction):
        raw = zeta * tau_cn.raw
        if raw.is_zero:
            return MorseInvariant()
        return MorseInvariant(value=TorsionValue(raw, canonical_mod_units(raw)))
    if isinstance(zeta, NovikovTruncation):
        tau_series = expand_series(tau_cn.raw, zeta.order)
        return MorseInvariant(series=zeta * tau_series)
    raise PreconditionError("counting function must be exact or a truncation")


def novikov_rank_check(cn, cw):
    """Whether both complexes have the same Betti numbers, degree by degree."""
    if cn.ring != cw.ring:
        raise PreconditionError("mismatched ring specs")
    ranks = {}
    for j, r in enumerate(homology_ranks(cn)):
        ranks[cn.min_degree + j] = ranks.get(cn.min_degree + j, 0) + r
    for j, r in enumerate(homology_ranks(cw)):
        ranks[cw.min_degree + j] = ranks.get(cw.min_degree + j, 0) - r
    return all(v == 0 for v in ranks.values())
