"""JSON fixture files for every object the toolkit computes on.

One file is one tagged object: {"kind": ..., "ring": ..., ...payload}.
Terms are {"c": int, "t": int, "v": [int]}, polynomials are term lists,
matrices are row-major lists of polynomial rows.  Nested complex objects
may repeat the ring spec; when they do, it has to agree with the file's.
Parsing reports a JSON-path location with every failure.
"""

import json
import os

from .complexes import BasedChainComplex
from .cut import CutSystem
from .errors import FixtureError, PreconditionError
from .novikov import EulerLift, NovikovComplex
from .rings import RationalFunction, RingSpec, TPolynomial
from .threedim import PathMatrix
from .zeta import ClosedOrbit

FIXTURE_DIR_VAR = "TORSIONLAB_FIXTURE_DIR"

KINDS = (
    "complex",
    "novikov",
    "orbits",
    "returnmaps",
    "cutsystem",
    "pathmatrix",
    "scenario",
    "rational",
)


def _fail(message, where):
    raise FixtureError(message, where)


def _get(obj, key, where, required=True, default=None):
    if not isinstance(obj, dict):
        _fail("expected an object", where)
    if key not in obj:
        if required:
            _fail('missing "%s"' % key, where)
        return default
    return obj[key]


def _int(value, where):
    if isinstance(value, bool) or not isinstance(value, int):
        _fail("expected an integer", where)
    return value


def _str(value, where):
    if not isinstance(value, str):
        _fail("expected a string", where)
    return value


def _list(value, where):
    if not isinstance(value, list):
        _fail("expected a list", where)
    return value


def parse_ring(obj, where="ring"):
    names = _list(_get(obj, "group_vars", where), where + ".group_vars")
    names = tuple(_str(n, where + ".group_vars") for n in names)
    t_name = _str(_get(obj, "t", where), where + ".t")
    try:
        return RingSpec(names, t_name)
    except (PreconditionError, ValueError) as exc:
        _fail(str(exc), where)


def _term(ring, obj, where):
    c = _int(_get(obj, "c", where), where + ".c")
    t = _int(_get(obj, "t", where), where + ".t")
    v = _list(_get(obj, "v", where), where + ".v")
    if len(v) != ring.num_group_vars:
        _fail("exponent vector needs %d entries" % ring.num_group_vars, where + ".v")
    return c, t, tuple(_int(e, where + ".v") for e in v)


def _poly(ring, data, where):
    out = TPolynomial.zero(ring)
    for i, item in enumerate(_list(data, where)):
        c, t, v = _term(ring, item, "%s[%d]" % (where, i))
        if c:
            out = out + TPolynomial.monomial(ring, t_exp=t, v=v, coeff=c)
    return out


def _matrix(ring, data, where):
    rows = []
    for i, row in enumerate(_list(data, where)):
        rows.append(
            [
                _poly(ring, entry, "%s[%d][%d]" % (where, i, j))
                for j, entry in enumerate(_list(row, "%s[%d]" % (where, i)))
            ]
        )
    return rows


def _matrices(ring, data, where):
    return [
        _matrix(ring, m, "%s[%d]" % (where, i)) for i, m in enumerate(_list(data, where))
    ]


def _unit_term(ring, obj, where):
    c, t, v = _term(ring, obj, where)
    if c != 1:
        _fail("offset term must have c = 1", where)
    return TPolynomial.monomial(ring, t_exp=t, v=v)


def _complex(ring, obj, where, cls=BasedChainComplex, **extra):
    sub = _get(obj, "ring", where, required=False)
    if sub is not None and parse_ring(sub, where + ".ring") != ring:
        _fail("ring spec disagrees with the file", where + ".ring")
    min_degree = _int(_get(obj, "min_degree", where), where + ".min_degree")
    dims = [
        _int(d, where + ".dims") for d in _list(_get(obj, "dims", where), where + ".dims")
    ]
    labels = _get(obj, "labels", where, required=False)
    if labels is not None:
        labels = [
            [_str(name, where + ".labels") for name in _list(group, where + ".labels")]
            for group in _list(labels, where + ".labels")
        ]
    boundaries = _matrices(ring, _get(obj, "boundaries", where), where + ".boundaries")
    try:
        return cls(ring, min_degree, dims, boundaries, labels=labels, **extra)
    except PreconditionError as exc:
        _fail(str(exc), where)


class NovikovData:
    """Critical-point complex bundled with its optional generator lift."""

    __slots__ = ("cn", "xi")

    def __init__(self, cn, xi=None):
        self.cn = cn
        self.xi = xi


def _grading(cn):
    out = []
    for j, d in enumerate(cn.dims):
        out.extend([cn.min_degree + j] * d)
    return out


def _novikov(ring, obj, where):
    order = _get(obj, "order", where, required=False)
    if order is not None:
        order = _int(order, where + ".order")
    cn = _complex(ring, obj, where, cls=NovikovComplex, order=order)
    indices = [
        _int(i, where + ".indices")
        for i in _list(_get(obj, "indices", where), where + ".indices")
    ]
    if indices != _grading(cn):
        _fail("indices disagree with the degrees of the generators", where + ".indices")
    xi = None
    offsets = _get(obj, "offsets", where, required=False)
    if offsets is not None:
        flat = [
            _unit_term(ring, item, "%s.offsets[%d]" % (where, i))
            for i, item in enumerate(_list(offsets, where + ".offsets"))
        ]
        if len(flat) != sum(cn.dims):
            _fail("need one offset per generator", where + ".offsets")
        grouped, at = [], 0
        for d in cn.dims:
            grouped.append(flat[at : at + d])
            at += d
        xi = EulerLift(ring, grouped)
    return NovikovData(cn, xi)


def _orbit(ring, obj, where):
    cls = _get(obj, "class", where)
    t = _int(_get(cls, "t", where + ".class"), where + ".class.t")
    v = _list(_get(cls, "v", where + ".class"), where + ".class.v")
    if len(v) != ring.num_group_vars:
        _fail(
            "exponent vector needs %d entries" % ring.num_group_vars, where + ".class.v"
        )
    v = tuple(_int(e, where + ".class.v") for e in v)
    period = _int(_get(obj, "period", where, required=False, default=1), where)
    # sign 0 defers to the return map; the schema's +-1 is the known case
    sign = _int(_get(obj, "sign", where, required=False, default=0), where + ".sign")
    i_minus = _int(_get(obj, "i_minus", where, required=False, default=-1), where)
    i_zero = _int(_get(obj, "i_zero", where, required=False, default=-1), where)
    rmap = _get(obj, "return_map", where, required=False, default=[])
    rmap = [
        [_int(e, where + ".return_map") for e in _list(row, where + ".return_map")]
        for row in _list(rmap, where + ".return_map")
    ]
    try:
        return ClosedOrbit(
            TPolynomial.monomial(ring, t_exp=t, v=v),
            period=period,
            eps=sign,
            return_map=tuple(tuple(row) for row in rmap),
            i_minus=i_minus,
            i_zero=i_zero,
        )
    except PreconditionError as exc:
        _fail(str(exc), where)


def _orbits(ring, obj, where):
    data = _list(_get(obj, "orbits", where), where + ".orbits")
    return [_orbit(ring, item, "%s.orbits[%d]" % (where, i)) for i, item in enumerate(data)]


def _returnmaps(ring, obj, where):
    return _matrices(ring, _get(obj, "phi", where), where + ".phi")


def _cutsystem(ring, obj, where):
    sigma = _complex(ring, _get(obj, "sigma", where), where + ".sigma")
    phi = _matrices(ring, _get(obj, "phi", where), where + ".phi")
    crit = [
        _int(d, where + ".crit_dims")
        for d in _list(_get(obj, "crit_dims", where), where + ".crit_dims")
    ]
    blocks = {
        name: _matrices(ring, _get(obj, name, where), where + "." + name)
        for name in ("N", "M", "W")
    }
    try:
        return CutSystem(sigma, phi, crit, blocks["N"], blocks["M"], blocks["W"])
    except PreconditionError as exc:
        _fail(str(exc), where)


def _pathmatrix(ring, obj, where):
    P = _matrix(ring, _get(obj, "P", where), where + ".P")
    offset = _get(obj, "offset", where, required=False)
    if offset is not None:
        offset = _unit_term(ring, offset, where + ".offset")
    labels = {}
    for key in ("row_labels", "col_labels"):
        raw = _get(obj, key, where, required=False)
        if raw is not None:
            raw = [_str(s, where + "." + key) for s in _list(raw, where + "." + key)]
        labels[key] = raw
    try:
        return PathMatrix(ring, P, offset=offset, **labels)
    except PreconditionError as exc:
        _fail(str(exc), where)


def _rational(ring, obj, where):
    num = _poly(ring, _get(obj, "num", where), where + ".num")
    den = _get(obj, "den", where, required=False)
    if den is not None:
        den = _poly(ring, den, where + ".den")
    try:
        return RationalFunction(num, den)
    except PreconditionError as exc:
        _fail(str(exc), where)


class Scenario:
    """Optional bundle of everything one verification run may consume."""

    __slots__ = ("cutsystem", "novikov", "orbits", "returnmaps", "pathmatrix", "order")

    def __init__(
        self,
        cutsystem=None,
        novikov=None,
        orbits=None,
        returnmaps=None,
        pathmatrix=None,
        order=None,
    ):
        self.cutsystem = cutsystem
        self.novikov = novikov
        self.orbits = orbits
        self.returnmaps = returnmaps
        self.pathmatrix = pathmatrix
        self.order = order


def _scenario(ring, obj, where):
    parts = {}
    for key, parser in (
        ("cutsystem", _cutsystem),
        ("novikov", _novikov),
        ("orbits", _orbits),
        ("returnmaps", _returnmaps),
        ("pathmatrix", _pathmatrix),
    ):
        sub = _get(obj, key, where, required=False)
        if sub is not None:
            parts[key] = parser(ring, sub, where + "." + key)
    order = _get(obj, "order", where, required=False)
    if order is not None:
        parts["order"] = _int(order, where + ".order")
    return Scenario(**parts)


_PARSERS = {
    "complex": _complex,
    "novikov": _novikov,
    "orbits": _orbits,
    "returnmaps": _returnmaps,
    "cutsystem": _cutsystem,
    "pathmatrix": _pathmatrix,
    "scenario": _scenario,
    "rational": _rational,
}


class Fixture:
    """Parsed fixture: a kind tag, the shared ring, and the built payload.

    Equality goes through serialization, which is faithful; the payload
    classes themselves compare by identity.
    """

    __slots__ = ("kind", "ring", "payload")

    def __init__(self, kind, ring, payload):
        if kind not in KINDS:
            raise FixtureError('unknown fixture kind "%s"' % kind)
        self.kind = kind
        self.ring = ring
        self.payload = payload

    def __eq__(self, other):
        if not isinstance(other, Fixture):
            return NotImplemented
        return serialize_fixture(self) == serialize_fixture(other)

    __hash__ = None

    def __repr__(self):
        return "Fixture(kind=%r)" % self.kind


def parse_fixture_data(data, where="fixture"):
    kind = _str(_get(data, "kind", where), where + ".kind")
    if kind not in KINDS:
        _fail('unknown fixture kind "%s"' % kind, where + ".kind")
    ring = parse_ring(_get(data, "ring", where), where + ".ring")
    payload = _PARSERS[kind](ring, data, where)
    return Fixture(kind, ring, payload)


def resolve_fixture_path(path):
    path = os.fspath(path)
    if os.path.exists(path):
        return path
    base = os.environ.get(FIXTURE_DIR_VAR)
    if base and not os.path.isabs(path):
        candidate = os.path.join(base, path)
        if os.path.exists(candidate):
            return candidate
    raise FixtureError("no such fixture file", path)


def parse_fixture(path):
    resolved = resolve_fixture_path(path)
    try:
        with open(resolved, "r", encoding="ascii") as handle:
            text = handle.read()
    except (OSError, UnicodeDecodeError) as exc:
        raise FixtureError("unreadable fixture: %s" % exc, resolved)
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FixtureError("malformed JSON: %s" % exc, resolved)
    return parse_fixture_data(data, where=os.path.basename(resolved))


# ---- writing ----


def serialize_ring(ring):
    return {"group_vars": list(ring.var_names), "t": ring.t_name}


def serialize_poly(p):
    return [
        {"c": c, "t": te, "v": list(ve)} for (te, ve), c in sorted(p.terms.items())
    ]


def serialize_matrix(M):
    return [[serialize_poly(entry) for entry in row] for row in M]


def _serialize_unit(u):
    _, t, v = u.unit_parts()
    return {"c": 1, "t": t, "v": list(v)}


def _serialize_complex(C):
    out = {
        "ring": serialize_ring(C.ring),
        "min_degree": C.min_degree,
        "dims": list(C.dims),
        "boundaries": [serialize_matrix(mat) for mat in C.boundaries],
    }
    if C.labels is not None:
        out["labels"] = [list(group) for group in C.labels]
    return out


def _serialize_novikov(data):
    out = _serialize_complex(data.cn)
    out["indices"] = _grading(data.cn)
    if data.cn.order is not None:
        out["order"] = data.cn.order
    if data.xi is not None:
        out["offsets"] = [
            _serialize_unit(u) for group in data.xi.offsets for u in group
        ]
    return out


def _serialize_orbits(orbits):
    items = []
    for orbit in orbits:
        _, t, v = orbit.homology_class.unit_parts()
        entry = {
            "class": {"t": t, "v": list(v)},
            "period": orbit.period,
            "sign": orbit.eps,
        }
        if orbit.i_minus >= 0:
            entry["i_minus"] = orbit.i_minus
        if orbit.i_zero >= 0:
            entry["i_zero"] = orbit.i_zero
        if orbit.return_map:
            entry["return_map"] = orbit.map_rows()
        items.append(entry)
    return {"orbits": items}


def _serialize_returnmaps(maps):
    return {"phi": [serialize_matrix(m) for m in maps]}


def _serialize_cutsystem(cs):
    return {
        "sigma": _serialize_complex(cs.sigma),
        "phi": [serialize_matrix(m) for m in cs.phi],
        "crit_dims": list(cs.crit_dims),
        "N": [serialize_matrix(m) for m in cs.N],
        "M": [serialize_matrix(m) for m in cs.M],
        "W": [serialize_matrix(m) for m in cs.W],
    }


def _serialize_pathmatrix(P):
    out = {
        "P": serialize_matrix(P.matrix),
        "offset": {"c": 1, "t": P.offset[0], "v": list(P.offset[1])},
    }
    if P.row_labels is not None:
        out["row_labels"] = list(P.row_labels)
    if P.col_labels is not None:
        out["col_labels"] = list(P.col_labels)
    return out


def _serialize_rational(r):
    return {"num": serialize_poly(r.num), "den": serialize_poly(r.den)}


def _serialize_scenario(sc):
    out = {}
    if sc.cutsystem is not None:
        out["cutsystem"] = _serialize_cutsystem(sc.cutsystem)
    if sc.novikov is not None:
        out["novikov"] = _serialize_novikov(sc.novikov)
    if sc.orbits is not None:
        out["orbits"] = _serialize_orbits(sc.orbits)
    if sc.returnmaps is not None:
        out["returnmaps"] = _serialize_returnmaps(sc.returnmaps)
    if sc.pathmatrix is not None:
        out["pathmatrix"] = _serialize_pathmatrix(sc.pathmatrix)
    if sc.order is not None:
        out["order"] = sc.order
    return out


_SERIALIZERS = {
    "complex": _serialize_complex,
    "novikov": _serialize_novikov,
    "orbits": _serialize_orbits,
    "returnmaps": _serialize_returnmaps,
    "cutsystem": _serialize_cutsystem,
    "pathmatrix": _serialize_pathmatrix,
    "scenario": _serialize_scenario,
    "rational": _serialize_rational,
}


def serialize_fixture(fx):
    out = {"kind": fx.kind, "ring": serialize_ring(fx.ring)}
    out.update(_SERIALIZERS[fx.kind](fx.payload))
    return out


def save_fixture(fx, path):
    text = json.dumps(serialize_fixture(fx), indent=1, sort_keys=True)
    with open(path, "w", encoding="ascii") as handle:
        handle.write(text + "\n")
