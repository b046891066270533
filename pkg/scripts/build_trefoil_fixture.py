"""Construct the zero-surgery CW fixture for the trefoil, independently.

Everything topological here is derived on the spot with sympy, not with
the package: Wirtinger relations differentiated by Fox calculus, the
longitude checked against a faithful matrix representation, the 3-cell
boundary solved as the kernel of the 2-boundary.  The package is used
only to serialize the finished complex, and the classical three-minor
torsion formula is evaluated in sympy as a cross-check before writing.

Presentation (positive trefoil, arcs x, y, z, meridian class t):
    r1: z = x y x^-1      r2: x = y z y^-1
Longitude for the arc x, writhe 3:  lam = y x z x^-3.

Run from the repository root:  python3 scripts/build_trefoil_fixture.py
"""

import os
import sys

import sympy
from sympy import Rational, eye, gcd, lcm, simplify, symbols
from sympy.matrices import Matrix
from sympy.matrices.normalforms import smith_normal_form

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

from torsionlab.complexes import BasedChainComplex
from torsionlab.fixtures import Fixture, save_fixture
from torsionlab.rings import RingSpec, TPolynomial

t = symbols("t")

X, Y, Z = 0, 1, 2
GEN_NAMES = ("x", "y", "z")


def word(text):
    """Parse 'y x z x^-3' into a list of (generator, exponent) letters."""
    letters = []
    for chunk in text.split():
        if "^" in chunk:
            name, power = chunk.split("^")
            power = int(power)
        else:
            name, power = chunk, 1
        g = GEN_NAMES.index(name)
        step = 1 if power > 0 else -1
        letters.extend([(g, step)] * abs(power))
    return letters


def abelianize(letters):
    return t ** sum(e for _, e in letters)


def fox_column(letters):
    """Fox derivatives with every generator sent to t."""
    out = [sympy.Integer(0)] * 3
    prefix = sympy.Integer(1)
    for g, e in letters:
        if e == 1:
            out[g] += prefix
            prefix *= t
        else:
            prefix /= t
            out[g] -= prefix
    return [sympy.expand(entry) for entry in out]


R1 = word("x y x^-1 z^-1")
R2 = word("y z y^-1 x^-1")
LAM = word("y x z x^-3")

for w in (R1, R2, LAM):
    assert simplify(abelianize(w) - 1) == 0, "relator fails to abelianize"


# ---- the group is B_3; check the relators and the longitude there ----

s = symbols("s")
rep = {
    X: Matrix([[-s, 1], [0, 1]]),
    Y: Matrix([[1, 0], [s, -s]]),
}
rep[Z] = rep[X] * rep[Y] * rep[X].inv()


def evaluate(letters):
    acc = eye(2)
    for g, e in letters:
        acc = acc * (rep[g] if e == 1 else rep[g].inv())
    return simplify(acc)


assert simplify(rep[X] * rep[Y] * rep[X] - rep[Y] * rep[X] * rep[Y]) == Matrix(
    [[0, 0], [0, 0]]
), "braid relation fails in the representation"
for w in (R1, R2):
    assert evaluate(w) == eye(2), "relator does not hold in the group"

lam_rep = evaluate(LAM)
assert lam_rep != eye(2), "longitude collapsed"
assert simplify(lam_rep * rep[X] - rep[X] * lam_rep) == Matrix(
    [[0, 0], [0, 0]]
), "longitude does not commute with the meridian: not peripheral"


# ---- chain complex of the universal abelian cover of the surgery ----

b1 = Matrix([[t - 1, t - 1, t - 1]])
b2 = Matrix.hstack(
    Matrix(fox_column(R1)), Matrix(fox_column(R2)), Matrix(fox_column(LAM))
)

assert simplify(b1 * b2) == Matrix([[0, 0, 0]]), "d^2 fails at degree 2"

kernel = b2.nullspace()
assert len(kernel) == 1, "surgery 2-boundary must have a line of kernel"
vec = kernel[0]
denominators = [sympy.fraction(sympy.cancel(entry))[1] for entry in vec]
vec = sympy.expand(vec * lcm(denominators))
content = sympy.gcd_list(list(vec), t)
vec = Matrix([sympy.cancel(entry / content) for entry in vec])
lead = sympy.Poly(vec[2], t).LC()
if lead < 0:
    vec = -vec
b3 = sympy.expand((t - 1) * vec)

assert simplify(b2 * b3) == Matrix([[0], [0], [0]]), "d^2 fails at degree 3"

# acyclic after inverting polynomials in t
assert b1.rank() == 1 and b2.rank() == 2 and Matrix(b3).rank() == 1

# honest surgery homology: H_1 of the quotient space is Z
snf = smith_normal_form(b2.subs(t, 1), domain=sympy.ZZ)
divisors = sorted(abs(snf[i, i]) for i in range(3))
assert divisors == [0, 1, 1], "H_1 of the surgered manifold is not Z"

alexander = sympy.expand(b2[1:, :2].det())
assert simplify(alexander - (t**2 - t + 1)) == 0, "Alexander polynomial mismatch"

# classical alternating three-minor torsion with an explicit split:
# columns {x} at degree 1, {r1, r2} at degree 2, the full 3-cell on top
m1 = b1[0, 0]
m2 = b2[1:, :2].det()
m3 = b3[2]
tau = sympy.cancel(m2 / (m1 * m3))
assert simplify(tau - (t**2 - t + 1) / (t - 1) ** 2) == 0, "torsion cross-check failed"


# ---- serialize ----

RING = RingSpec(())


def to_poly(expr):
    poly = sympy.Poly(sympy.expand(expr), t)
    out = TPolynomial.zero(RING)
    for (degree,), coeff in poly.terms():
        out = out + TPolynomial.monomial(RING, t_exp=int(degree), coeff=int(coeff))
    return out


def to_matrix(M):
    return [[to_poly(M[i, j]) for j in range(M.cols)] for i in range(M.rows)]


complex_fixture = BasedChainComplex(
    RING,
    0,
    [1, 3, 3, 1],
    [to_matrix(b1), to_matrix(b2), to_matrix(Matrix(b3))],
    labels=[["p"], ["x", "y", "z"], ["r1", "r2", "lam"], ["c3"]],
)

out_dir = os.path.join(os.path.dirname(__file__), "..", "fixtures")
os.makedirs(out_dir, exist_ok=True)
path = os.path.join(out_dir, "trefoil_surgery_cw.json")
save_fixture(Fixture("complex", RING, complex_fixture), path)

print("boundary 1:", b1.tolist())
print("boundary 2:", b2.tolist())
print("boundary 3:", b3.tolist())
print("torsion:", tau)
print("wrote", os.path.relpath(path))
