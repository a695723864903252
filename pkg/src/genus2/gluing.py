"""Gluing two elliptic curves into a genus-2 curve along torsion.

Two constructions, one per torsion level.  Along 2-torsion: given
E1: y^2 = f and E2: y^2 = g with f, g monic separable cubics whose
splitting fields agree, every Galois-equivariant pairing of the roots
that is not induced by a geometric isomorphism yields a sextic h such
that C: y^2 = h carries independent degree-2 maps to E1 and E2.  Along
3-torsion: the genus-2 curves with a pair of independent degree-3 maps
to E1 and E2 form the family

    C_{a,b,c,d,t}:  t*y^2 = (x^3 + 3ax + 2b)(2dx^3 + 3cx^2 + 1)

subject to 12ac + 16bd = 1, and matching the two quotient curves of the
family against E1 and E2 reduces to a zero-dimensional polynomial system
that we solve by resultants plus a pair of special branches for j = 0
and j = 1728.

Splitting fields live in F_{p^k} with k <= 3; everything is exact.  The
family formulas (family_f and friends) are written against bare ring
arithmetic so the test suite can run them over Q as well as over F_p.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from math import gcd

from .config import DEFAULT_SEED
from .elliptic import EllipticCurve, ModulusTooLarge, ec_order
from .ff import ExtField, FpElt, Poly, PrimeField, poly_factor, poly_roots, sqrt_mod

logger = logging.getLogger(__name__)

# largest p^k the character-sum point count will attempt
NAIVE_COUNT_LIMIT = 1 << 22


class InvariantViolation(ValueError):
    """A family quintuple violates 12ac + 16bd = 1 or a nondegeneracy condition."""


class MalformedModel(ValueError):
    """The supplied curve model does not have the shape the operation needs."""


class Genus2Curve:
    """Genus-2 curve t*y^2 = f(x), f separable of degree 5 or 6, p > 3."""

    __slots__ = ("field", "t", "f")

    def __init__(self, field, t, f):
        if not isinstance(field, PrimeField):
            field = PrimeField(field)
        if field.p <= 3:
            raise ValueError("p > 3 required for these models")
        t = field.of(t)
        if not t:
            raise ValueError("twist scalar must be nonzero")
        if not isinstance(f, Poly):
            f = Poly(field, f)
        elif f.field != field:
            raise ValueError("polynomial over a different field")
        if f.degree not in (5, 6):
            raise ValueError("right-hand side must have degree 5 or 6")
        if f.gcd(f.derivative()).degree != 0:
            raise ValueError("right-hand side is not separable")
        self.field = field
        self.t = t
        self.f = f

    @property
    def p(self) -> int:
        return self.field.p

    def canonical(self) -> "Genus2Curve":
        """Fold the square part of the twist scalar.

        t*y^2 = f and (t*s^2)*y^2 = f define the same curve via y -> s*y,
        so t is only meaningful modulo squares; the canonical model has
        t = 1 or t = the least nonresidue.
        """
        t = self.field.one if self.field.chi(self.t) == 1 else self.field.nonresidue()
        if t == self.t:
            return self
        return Genus2Curve(self.field, t, self.f)

    def encode(self) -> tuple:
        c = self.canonical()
        return (self.field.p, int(c.t), c.f.encode())

    def count_points(self, k: int = 1, limit: int = NAIVE_COUNT_LIMIT) -> int:
        """Exact #C(F_{p^k}) by character summation; naive in p^k.

        Each x contributes 1 + chi(t*f(x)) points (the chi = 0 case is the
        single point with y = 0), plus 1 point at infinity for a quintic
        and 2 or 0 for a sextic according to whether lc(f)/t is a square.
        """
        if k not in (1, 2):
            raise ValueError("only k = 1 and k = 2 are supported")
        q = self.p ** k
        if q > limit:
            raise ModulusTooLarge(f"p^k = {q} exceeds the naive bound {limit}")
        if k == 1:
            F, t, f = self.field, self.t, self.f
            xs = (F.of(v) for v in range(q))
        else:
            F = ExtField(self.field, 2)
            if q <= (1 << 20):
                F.build_square_table()
            t, f = F.of(self.t), self.f.map_field(F)
            xs = F.elements()
        n = q
        for x in xs:
            n += F.chi(t * f(x))
        if f.degree == 5:
            n += 1
        else:
            n += 1 + F.chi(t * f.lc)
        return n

    def __eq__(self, other):
        if isinstance(other, Genus2Curve):
            return self.encode() == other.encode()
        return NotImplemented

    def __hash__(self):
        return hash(self.encode())

    def __repr__(self):
        lhs = "y^2" if self.t == self.field.one else f"{int(self.t)}*y^2"
        return f"{lhs} = {self.f} over F_{self.p}"


# ---------------------------------------------------------------------------
# 2-torsion gluing


@dataclass(frozen=True)
class TwoGluingData:
    """One admissible pairing of 2-torsion roots and its derived scalars.

    alpha and beta are the paired root triples in the common splitting
    field, alpha_diffs = (a32, a21, a13) the cyclic differences (same for
    beta_diffs).  a2 equals the determinant of the 3x3 matrix with rows
    (alpha_i, beta_i, 1); it must be nonzero, or the pairing extends to a
    geometric isomorphism.  b2 must be nonzero for B to be defined at all.
    """

    alpha: tuple
    beta: tuple
    alpha_diffs: tuple
    beta_diffs: tuple
    a1: object
    a2: object
    b1: object
    b2: object
    A: object
    B: object
    delta_f: object
    delta_g: object

    def __post_init__(self):
        if not self.a2:
            raise ValueError("zero determinant: pairing is not admissible")
        if not self.b2:
            raise ValueError("b2 = 0: scalar B is undefined")


def _splitting_degree(f: Poly, seed: int) -> int:
    # for a separable cubic the splitting field degree over F_p is the
    # largest factor degree: (1,1,1) -> 1, (1,2) -> 2, (3) -> 3
    return max(g.degree for g, _ in poly_factor(f, seed))


def _frobenius_perm(roots) -> tuple:
    p = roots[0].field.p
    return tuple(roots.index(r ** p) for r in roots)


def _pairing_data(alpha, beta, delta_f, delta_g):
    a32, a21, a13 = alpha[2] - alpha[1], alpha[1] - alpha[0], alpha[0] - alpha[2]
    b32, b21, b13 = beta[2] - beta[1], beta[1] - beta[0], beta[0] - beta[2]
    a2 = alpha[0] * b32 + alpha[1] * b13 + alpha[2] * b21
    if not a2:
        return None  # determinant zero: induced by an isomorphism E1 -> E2
    b2 = beta[0] * a32 + beta[1] * a13 + beta[2] * a21
    if not b2:
        logger.info("glue2: b2 = 0 for an admissible pairing, skipping it")
        return None
    a1 = a32 ** 2 / b32 + a21 ** 2 / b21 + a13 ** 2 / b13
    b1 = b32 ** 2 / a32 + b21 ** 2 / a21 + b13 ** 2 / a13
    return TwoGluingData(
        alpha, beta, (a32, a21, a13), (b32, b21, b13),
        a1, a2, b1, b2, delta_g * a1 / a2, delta_f * b1 / b2, delta_f, delta_g,
    )


def _pairing_sextic(data: TwoGluingData) -> Poly:
    field = data.a2.field
    A, B = data.A, data.B
    a32, a21, a13 = data.alpha_diffs
    b32, b21, b13 = data.beta_diffs
    h = Poly(field, [-field.one])
    for ax, bx in (((a21, a13), (b21, b13)),
                   ((a32, a21), (b32, b21)),
                   ((a13, a32), (b13, b32))):
        h = h * Poly(field, [B * bx[0] * bx[1], field.zero, A * ax[0] * ax[1]])
    return h


def _descend(h: Poly, field: PrimeField) -> Poly:
    if h.field == field:
        return h
    coeffs = []
    for c in h.coeffs:
        if any(c.c[1:]):
            raise AssertionError("sextic failed to descend to the base field")
        coeffs.append(c.c[0])
    return Poly(field, coeffs)


def glue2(e1: EllipticCurve, e2: EllipticCurve, seed: int = DEFAULT_SEED) -> list:
    """All genus-2 curves with independent degree-2 maps to e1 and e2.

    Pairs the 2-torsion x-coordinates of the two curves in their common
    splitting field.  A pairing survives when its determinant is nonzero
    and it commutes with the p-power Frobenius on the root lists; each
    survivor yields a sextic model y^2 = h over F_p.  Returns a
    deduplicated list sorted by coefficient encoding; an empty list is a
    legitimate outcome (splitting fields of different degrees, or every
    pairing induced by an isomorphism).
    """
    if e1.field != e2.field:
        raise ValueError("curves must share a modulus")
    field = e1.field
    f = Poly(field, [e1.B, e1.A, 0, 1])
    g = Poly(field, [e2.B, e2.A, 0, 1])
    deg = _splitting_degree(f, seed)
    if deg != _splitting_degree(g, seed):
        return []
    ell = field if deg == 1 else ExtField(field, deg)
    fl = f if deg == 1 else f.map_field(ell)
    gl = g if deg == 1 else g.map_field(ell)
    alpha = poly_roots(fl, seed)
    gamma = poly_roots(gl, seed)
    delta_f = ell.of(f.discriminant())
    delta_g = ell.of(g.discriminant())
    pf, pg = _frobenius_perm(alpha), _frobenius_perm(gamma)
    out = []
    for sigma in itertools.permutations(range(3)):
        beta = tuple(gamma[s] for s in sigma)
        # the pairing alpha_i -> beta_i must intertwine the Frobenius
        # permutations of the two root lists
        if any(sigma[pf[i]] != pg[sigma[i]] for i in range(3)):
            continue
        data = _pairing_data(alpha, beta, delta_f, delta_g)
        if data is None:
            continue
        h = _descend(_pairing_sextic(data), field)
        if h.degree != 6 or h.gcd(h.derivative()).degree != 0:
            logger.info("glue2: discarding degenerate output for sigma=%s", sigma)
            continue
        out.append(Genus2Curve(field, 1, h).canonical())
    return sorted(set(out), key=Genus2Curve.encode)


# ---------------------------------------------------------------------------
# the triple-cover family, over any ring containing 1/2 and 1/3


def _conv(u: list, v: list) -> list:
    out = [0] * (len(u) + len(v) - 1)
    for i, a in enumerate(u):
        for j, b in enumerate(v):
            out[i + j] = out[i + j] + a * b
    return out


def _ladd(u: list, v: list) -> list:
    if len(u) < len(v):
        u, v = v, u
    out = list(u)
    for i, c in enumerate(v):
        out[i] = out[i] + c
    return out


def family_f(a, b, c, d, one) -> list:
    """(x^3 + 3ax + 2b)(2dx^3 + 3cx^2 + 1), ascending coefficients."""
    return _conv([2 * b, 3 * a, 0 * one, one], [one, 0 * one, 3 * c, 2 * d])


def family_f1(a, b, c, d, one) -> list:
    d1 = a ** 3 + b ** 2
    return [512 * d1 ** 2 * d ** 3,
            12 * (16 * a * d ** 2 + 3 * c ** 2) * d1,
            12 * (2 * a ** 2 * d - b * c),
            one]


def family_f2(a, b, c, d, one) -> list:
    d2 = c ** 3 + d ** 2
    return [512 * d2 ** 2 * b ** 3,
            12 * (16 * b ** 2 * c + 3 * a ** 2) * d2,
            12 * (2 * b * c ** 2 - a * d),
            one]


def family_maps(a, b, c, d, one) -> tuple:
    """Numerators and denominators of the two degree-3 quotient maps.

    Returns ((u1, v1, k1), (u2, v2, k2)) as ascending coefficient lists;
    the map to t*y^2 = f_i sends (x, y) to (u_i/k_i, y * v_i/k_i^2).
    """
    d1 = a ** 3 + b ** 2
    d2 = c ** 3 + d ** 2
    k1 = [2 * b, 3 * a, 0 * one, one]
    u1 = [12 * d1 * c, -24 * d1 * d]
    v1 = [-d1, 0 * one, -12 * d1 * c, 16 * d1 * d]
    k2 = [one, 0 * one, 3 * c, 2 * d]
    u2 = [0 * one, 0 * one, -24 * d2 * b, 12 * d2 * a]
    v2 = [-16 * d2 * b, 12 * d2 * a, 0 * one, d2]
    return (u1, v1, k1), (u2, v2, k2)


def family_identity_holds(f, fi, un, vn, kd) -> bool:
    """Check f*v^2 = f_i(u) with u = un/kd, v = vn/kd^2, denominators cleared.

    Multiplying through by kd^4 turns the identity into
    f*vn^2 = kd * sum_j fi[j] * un^j * kd^(3-j), a polynomial identity.
    """
    lhs = _conv(f, _conv(vn, vn))
    acc = None
    for j in range(4):
        term = [fi[j]]
        for _ in range(j):
            term = _conv(term, un)
        for _ in range(3 - j):
            term = _conv(term, kd)
        acc = term if acc is None else _ladd(acc, term)
    rhs = _conv(kd, acc)
    n = max(len(lhs), len(rhs))
    lhs = lhs + [0] * (n - len(lhs))
    rhs = rhs + [0] * (n - len(rhs))
    return all(x == y for x, y in zip(lhs, rhs))


@dataclass(frozen=True)
class AppendixQuintuple:
    """Family parameters (a, b, c, d, t) for the triple-cover construction."""

    a: FpElt
    b: FpElt
    c: FpElt
    d: FpElt
    t: FpElt

    @classmethod
    def make(cls, field: PrimeField, a, b, c, d, t) -> "AppendixQuintuple":
        return cls(field.of(a), field.of(b), field.of(c), field.of(d), field.of(t))

    @property
    def delta1(self):
        return self.a ** 3 + self.b ** 2

    @property
    def delta2(self):
        return self.c ** 3 + self.d ** 2

    def validate(self):
        if 12 * self.a * self.c + 16 * self.b * self.d != 1:
            raise InvariantViolation("12ac + 16bd = 1 fails")
        if not self.delta1:
            raise InvariantViolation("a^3 + b^2 = 0")
        if not self.delta2:
            raise InvariantViolation("c^3 + d^2 = 0")
        if not self.t:
            raise InvariantViolation("t = 0")

    def key(self) -> tuple:
        return (int(self.a), int(self.b), int(self.c), int(self.d), int(self.t))


@dataclass(frozen=True)
class RationalMap:
    """Degree-3 quotient map (x, y) -> (u(x), y*v(x)) with u = num_u/den
    and v = num_v/den^2."""

    num_u: Poly
    num_v: Poly
    den: Poly

    def apply(self, x, y):
        """Image of an affine point; None when it lands at infinity."""
        k = self.den(x)
        if not k:
            return None
        return self.num_u(x) / k, y * self.num_v(x) / k ** 2


def short_weierstrass(field: PrimeField, t, cubic) -> tuple:
    """(A, B) with y^2 = x^3 + Ax + B isomorphic to t*y^2 = cubic(x).

    Scaling (x, y) by (c3*t, c3*t^2) clears the twist and the leading
    coefficient; the x^2 term is then removed by a shift (p > 3).
    """
    cs = list(cubic) + [field.zero] * (4 - len(list(cubic)))
    c0, c1, c2, c3 = (field.of(c) for c in cs[:4])
    if not c3:
        raise ValueError("cubic required")
    s2 = c2 * t
    s1 = c1 * c3 * t ** 2
    s0 = c0 * c3 ** 2 * t ** 3
    A = s1 - s2 ** 2 / 3
    B = 2 * s2 ** 3 / 27 - s2 * s1 / 3 + s0
    return A, B


def appendix_family(q: AppendixQuintuple) -> tuple:
    """The genus-2 curve of a quintuple and its two elliptic quotients.

    Returns (C, E1, E2, phi1, phi2): C is t*y^2 = f, E_i the short
    Weierstrass model of t*y^2 = f_i, and phi_i the rational map data for
    the degree-3 quotient onto the t*y^2 = f_i model.  The defining
    identities f*v_i^2 = f_i(u_i) are re-verified here exactly.
    """
    q.validate()
    field = q.a.field
    one = field.one
    a, b, c, d, t = q.a, q.b, q.c, q.d, q.t
    fc = family_f(a, b, c, d, one)
    f1 = family_f1(a, b, c, d, one)
    f2 = family_f2(a, b, c, d, one)
    maps = family_maps(a, b, c, d, one)
    for fi, (un, vn, kd) in zip((f1, f2), maps):
        if not family_identity_holds(fc, fi, un, vn, kd):
            raise AssertionError("triple-cover identity failed at construction")
    curve = Genus2Curve(field, t, Poly(field, fc))
    quotients = []
    for fi in (f1, f2):
        A, B = short_weierstrass(field, field.one, fi)
        quotients.append(EllipticCurve(field, A * t ** 2, B * t ** 3))
    phis = [RationalMap(Poly(field, un), Poly(field, vn), Poly(field, kd))
            for un, vn, kd in maps]
    return curve, quotients[0], quotients[1], phis[0], phis[1]


# ---------------------------------------------------------------------------
# 3-torsion gluing


@dataclass(frozen=True)
class PkOrbit:
    """Orbit of a quadruple under lambda: (a, b, c, d) ->
    (l^2 a, l^3 b, l^-2 c, l^-3 d), stored by a canonical representative."""

    a: FpElt
    b: FpElt
    c: FpElt
    d: FpElt
    degenerate: bool = False

    @classmethod
    def from_quadruple(cls, a, b, c, d) -> "PkOrbit":
        if a and b:
            lam = a / b
        elif c and d:
            lam = d / c
        else:
            # no scale-invariant normalization applies
            return cls(a, b, c, d, True)
        l2 = lam * lam
        l3 = l2 * lam
        return cls(l2 * a, l3 * b, c / l2, d / l3, False)

    def key(self) -> tuple:
        return (int(self.a), int(self.b), int(self.c), int(self.d))


def _nth_power(field: PrimeField, v, n: int) -> bool:
    v = field.of(v)
    if not v:
        return False
    g = gcd(n, field.p - 1)
    return v ** ((field.p - 1) // g) == field.one


def curves_isomorphic(field: PrimeField, m1: tuple, m2: tuple) -> bool:
    """Whether y^2 = x^3 + Ax + B and y^2 = x^3 + A'x + B' are isomorphic.

    Isomorphism means A' = u^4 A, B' = u^6 B for some u; the candidate
    u^2 is forced in the generic case and the j = 0 / j = 1728 cases
    reduce to sixth- and fourth-power tests.
    """
    A, B = (field.of(v) for v in m1)
    A2, B2 = (field.of(v) for v in m2)
    if (not A) != (not A2) or (not B) != (not B2):
        return False
    if not A:
        return _nth_power(field, B2 / B, 6)
    if not B:
        return _nth_power(field, A2 / A, 4)
    s = (B2 * A) / (B * A2)
    return s ** 2 == A2 / A and s ** 3 == B2 / B and field.chi(s) == 1


def _twist_solutions(field: PrimeField, model: tuple, target: tuple,
                     seed: int) -> list:
    """All t with A' = A*t^2 and B' = B*t^3, for short models (A,B), (A',B').

    Generic case: at most one t, forced by t = (B'/B)/(A'/A).  A = A' = 0:
    the cube roots of B'/B, which share one square class.  B = B' = 0: the
    two square roots of A'/A, in one square class exactly when -1 is a
    square.
    """
    A, B = model
    A2, B2 = target
    if (not A) != (not A2) or (not B) != (not B2):
        return []
    if not A:
        return poly_roots(Poly(field, [-(B2 / B), 0, 0, 1]), seed)
    if not B:
        s = sqrt_mod(field, A2 / A)
        return [] if s is None else [s, -s]
    t = (B2 * A) / (A2 * B)
    if A2 == A * t ** 2 and B2 == B * t ** 3:
        return [t]
    return []


def _square_class(field: PrimeField, t) -> FpElt:
    return field.one if field.chi(t) == 1 else field.nonresidue()


def quintuples_equivalent(q1: AppendixQuintuple, q2: AppendixQuintuple) -> bool:
    """Same orbit under (l, m).(a,b,c,d,t) = (l^2 a, l^3 b, l^-2 c, l^-3 d, l m^2 t)."""
    field = q1.a.field
    pat = (bool(q1.a), bool(q1.b), bool(q1.c), bool(q1.d))
    if pat != (bool(q2.a), bool(q2.b), bool(q2.c), bool(q2.d)):
        return False
    if q1.a and q1.b:
        cands = [(q2.b * q1.a) / (q1.b * q2.a)]
    elif q1.a:
        s = sqrt_mod(field, q2.a / q1.a)
        cands = [] if s is None else [s, -s]
    elif q1.b:
        cands = poly_roots(Poly(field, [-(q2.b / q1.b), 0, 0, 1]))
    elif q1.c and q1.d:
        cands = [(q1.d * q2.c) / (q2.d * q1.c)]
    elif q1.c:
        s = sqrt_mod(field, q1.c / q2.c)
        cands = [] if s is None else [s, -s]
    elif q1.d:
        cands = poly_roots(Poly(field, [-(q1.d / q2.d), 0, 0, 1]))
    else:
        return False  # a = b = c = d = 0 cannot satisfy 12ac + 16bd = 1
    for lam in cands:
        if not lam:
            continue
        l2 = lam ** 2
        l3 = l2 * lam
        if (l2 * q1.a == q2.a and l3 * q1.b == q2.b
                and l2 * q2.c == q1.c and l3 * q2.d == q1.d
                and field.chi(q1.t * q2.t * lam) == 1):
            return True
    return False


def _g_values(field: PrimeField, j1, j2, w, x, y, z) -> tuple:
    g1 = (1728 * (w ** 2 * y + 4 * w * x * z - 4 * x ** 2 * y ** 2) ** 3
          - j1 * (w ** 3 + x ** 2) ** 2 * (y ** 3 + z ** 2))
    g2 = (1728 * (w * y ** 2 + 4 * x * y * z - 4 * w ** 2 * z ** 2) ** 3
          - j2 * (w ** 3 + x ** 2) * (y ** 3 + z ** 2) ** 2)
    g3 = 12 * w * y + 16 * x * z - 1
    return g1, g2, g3


# the resultant of the eliminated system has degree at most 84 in a; we
# interpolate on NODES points, which needs a sample field of size >= MIN_Q
NODES = 91
MIN_Q = 2 * (NODES - 1) + 10


def _g_pair(F, j1e, j2e, a0) -> tuple:
    """The j-conditions at w = x = a0 as polynomials in c, with d eliminated.

    Under a = b the linear relation 12*a0*c + 16*a0*d = 1 pins
    d = (1 - 12*a0*c)/(16*a0); substituting leaves two sextics in c.
    """
    x = Poly(F, [F.zero, F.one])
    dlin = Poly(F, [1 / (16 * a0), F.of(-3) / 4])
    cube1 = (x + 4 * dlin - 4 * x ** 2) * a0 ** 2
    tail = x ** 3 + dlin ** 2
    g1 = 1728 * cube1 ** 3 - tail * (j1e * a0 ** 4 * (a0 + 1) ** 2)
    cube2 = (x ** 2 + 4 * x * dlin) * a0 - dlin ** 2 * (4 * a0 ** 2)
    g2 = 1728 * cube2 ** 3 - tail ** 2 * (j2e * a0 ** 2 * (a0 + 1))
    return g1, g2


def _lagrange(F, pts) -> Poly:
    master = Poly(F, [F.one])
    for xi, _ in pts:
        master = master * Poly(F, [-xi, F.one])
    dm = master.derivative()
    total = Poly(F, [])
    for xi, yi in pts:
        num = master // Poly(F, [-xi, F.one])
        total = total + num * (yi / dm(xi))
    return total


def _sample_field(field: PrimeField):
    if field.p >= MIN_Q:
        return field
    k = 2
    while field.p ** k < MIN_Q:
        k += 1
    return ExtField(field, k)


def _ab_branch(field: PrimeField, j1, j2, seed: int) -> list:
    """Solutions (a, a, c, d) of the j-system with the a = b normalization.

    Eliminates d linearly, then c by a resultant computed through
    evaluation and interpolation, leaving one univariate polynomial in a.
    Roots are back-substituted and every candidate is re-checked against
    the original equations, which removes the spurious resultant roots.
    """
    F = _sample_field(field)
    j1e, j2e = F.of(j1), F.of(j2)
    pts = []
    if isinstance(F, PrimeField):
        candidates = (F.of(v) for v in range(1, F.p))
    else:
        candidates = (e for e in F.elements() if e)
    for a0 in candidates:
        g1, g2 = _g_pair(F, j1e, j2e, a0)
        if g1.degree != 6 or g2.degree != 6:
            continue  # leading coefficient vanished; the node is unusable
        pts.append((a0, a0 ** 12 * g1.resultant(g2)))
        if len(pts) == NODES:
            break
    if len(pts) < NODES:
        raise AssertionError("not enough interpolation nodes")
    res = _lagrange(F, pts)
    if isinstance(F, ExtField):
        res = _descend(res, field)
    if res.is_zero:
        raise AssertionError("resultant vanished identically")
    out = []
    for ra in sorted(set(poly_roots(res, seed)), key=lambda r: r.encode()):
        if not ra:
            continue
        g1, g2 = _g_pair(field, field.of(j1), field.of(j2), ra)
        common = g1.gcd(g2)
        if common.degree == 0:
            continue
        for rc in sorted(set(poly_roots(common, seed)), key=lambda r: r.encode()):
            rd = (1 - 12 * ra * rc) / (16 * ra)
            if not any(_g_values(field, j1, j2, ra, ra, rc, rd)):
                out.append((ra, ra, rc, rd))
    return out


def _j_system_orbits(field: PrimeField, j1, j2, seed: int) -> list:
    """Canonical orbit representatives solving g1 = g2 = g3 = 0 with
    ab != 0 or cd != 0."""
    orbits = {}
    for quad in _ab_branch(field, j1, j2, seed):
        orb = PkOrbit.from_quadruple(*quad)
        orbits[orb.key()] = orb
    # swapping (w, x, y, z) -> (y, z, w, x) exchanges the roles of the two
    # j-conditions, so the c = d branch is the a = b branch of the
    # reversed system
    for quad in _ab_branch(field, j2, j1, seed):
        a, b, c, d = quad
        orb = PkOrbit.from_quadruple(c, d, a, b)
        orbits.setdefault(orb.key(), orb)
    return [orbits[k] for k in sorted(orbits)]


def glue3(e1: EllipticCurve, e2: EllipticCurve, seed: int = DEFAULT_SEED) -> list:
    """All genus-2 curves with independent degree-3 maps to e1 and e2.

    Solves the j-invariant conditions for family quadruples, matches
    twists of the two family quotients against e1 and e2 (the t with
    A' = A*t^2, B' = B*t^3 for both), and handles the two rational-point
    branches j1 = j2 = 0 (e1*e2 in 4*(k^*)^6) and j1 = j2 = 1728
    (e1*e2 in 108*(k^*)^4).  Output quintuples are deduplicated under the
    two-scalar action and rendered through appendix_family; the list is
    sorted by coefficient encoding.
    """
    if e1.field != e2.field:
        raise ValueError("curves must share a modulus")
    field = e1.field
    j1, j2 = e1.j_invariant(), e2.j_invariant()
    quintuples = []
    for orb in _j_system_orbits(field, j1, j2, seed):
        a, b, c, d = orb.a, orb.b, orb.c, orb.d
        if not (a ** 3 + b ** 2) * (c ** 3 + d ** 2):
            continue  # the lone degenerate orbit; it defines no curve
        classes = None
        for fi, target in ((family_f1(a, b, c, d, field.one), e1),
                           (family_f2(a, b, c, d, field.one), e2)):
            model = short_weierstrass(field, field.one, fi)
            sols = _twist_solutions(field, model, (target.A, target.B), seed)
            found = {int(_square_class(field, t)) for t in sols}
            classes = found if classes is None else classes & found
        for tv in sorted(classes):
            quintuples.append(AppendixQuintuple.make(field, a, b, c, d, tv))
    if not e1.A and not e2.A and _nth_power(field, e1.B * e2.B / 4, 6):
        b = e1.B
        quintuples.append(AppendixQuintuple.make(field, 0, b, 0, 1 / (16 * b), 2))
    if not e1.B and not e2.B and _nth_power(field, e1.A * e2.A / 108, 4):
        a = e1.A
        quintuples.append(AppendixQuintuple.make(field, a, 0, 1 / (12 * a), 0, 2))
    for i in range(len(quintuples)):
        for j in range(i):
            if quintuples_equivalent(quintuples[i], quintuples[j]):
                raise AssertionError("equivalent quintuples survived deduplication")
    out = [appendix_family(q)[0].canonical() for q in quintuples]
    return sorted(set(out), key=Genus2Curve.encode)


# ---------------------------------------------------------------------------
# the bisected-sextic membership test


def membership_test_6torsion_sextic(curve: Genus2Curve, e_odd: EllipticCurve,
                                    e_even: EllipticCurve,
                                    seed: int = DEFAULT_SEED) -> bool:
    """Decide whether t*y^2 = g(x^2) covers the two supplied curves.

    The x -> -x symmetry gives two elliptic quotients: (x, y) -> (x^2, y)
    lands on t*y^2 = g(u) (the invariant y is even), and
    (x, y) -> (1/x^2, y/x^3) on the reversed cubic (y/x^3 is odd).
    e_even is matched against the first, e_odd against the second.  When
    p is small enough to count, the trace relation t_C = t_1 + t_2 is
    checked as #C = #E_odd + #E_even - (p+1); for larger p it already
    follows from the quotient structure, so only the isomorphism tests
    run.
    """
    f = curve.f
    if f.degree != 6 or any(f.coeffs[i] for i in (1, 3, 5)):
        raise MalformedModel("need a separable sextic in x^2")
    cs = f.coeffs
    g_even = (cs[0], cs[2], cs[4], cs[6])
    g_odd = (cs[6], cs[4], cs[2], cs[0])
    field, t = curve.field, curve.t
    for cubic, target in ((g_even, e_even), (g_odd, e_odd)):
        model = short_weierstrass(field, t, cubic)
        if not curves_isomorphic(field, model, (target.A, target.B)):
            return False
    if field.p > NAIVE_COUNT_LIMIT:
        return True
    n = curve.count_points()
    return n == ec_order(e_even) + ec_order(e_odd) - (field.p + 1)
