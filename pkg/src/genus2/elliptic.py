"""Elliptic curves over prime fields.

Short Weierstrass models y^2 = x^3 + Ax + B only; p > 3 throughout.  Scalar
multiplication runs in Jacobian coordinates on raw integers, which is what
makes order certification workable at multi-thousand-digit moduli (one
modular inversion per multiplication instead of one per group operation).

Order machinery comes in three tiers: exhaustive character sums for small p,
baby-step/giant-step with twist disambiguation up to 2^50, and Monte Carlo
certification beyond that (a witness point of order m > 4*sqrt(p) pins the
group order down to the unique multiple of m in the Hasse interval).
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from math import isqrt, lcm

from .config import Config, DEFAULT_SEED, subseed
from .ff import (BadFactorizationError, FpElt, Poly, PrimeField, factor_int,
                 is_probable_prime, jacobi, normalize_factors, poly_roots,
                 sqrt_mod)


class ModulusTooLarge(ValueError):
    """Exact order computation is out of range; use certify_order."""


class NoRoot(ValueError):
    """The class polynomial has no root modulo p."""


class NoTwist(ValueError):
    """No twist of the constructed curve has the requested order."""


class NotARoot(ValueError):
    """The supplied x-coordinate is not a root of the relevant polynomial."""


class NotOrdinary(ValueError):
    """The operation requires an ordinary curve."""


class OrderDisproof(Exception):
    """A sampled point witnessed N*P != O, disproving the claimed order."""

    def __init__(self, point, claimed):
        super().__init__(f"point {point} disproves claimed order {claimed}")
        self.point = point
        self.claimed = claimed


# ---------------------------------------------------------------------------
# curves and points


@dataclass(frozen=True)
class EllipticCurve:
    field: PrimeField
    A: FpElt
    B: FpElt

    def __init__(self, field, A, B):
        if not isinstance(field, PrimeField):
            field = PrimeField(field)
        if field.p <= 3:
            raise ValueError("p > 3 required for short Weierstrass models")
        A, B = field.of(A), field.of(B)
        if not (4 * A ** 3 + 27 * B ** 2):
            raise ValueError("singular curve: 4A^3 + 27B^2 = 0")
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "A", A)
        object.__setattr__(self, "B", B)

    @property
    def p(self) -> int:
        return self.field.p

    def __repr__(self):
        return f"y^2 = x^3 + {self.A}x + {self.B} over F_{self.p}"

    def j_invariant(self) -> FpElt:
        a3 = 4 * self.A ** 3
        return 1728 * a3 / (a3 + 27 * self.B ** 2)

    def rhs(self, x) -> FpElt:
        x = self.field.of(x)
        return x ** 3 + self.A * x + self.B

    def contains(self, pt: "AffinePoint") -> bool:
        if pt.infinity:
            return True
        return pt.y ** 2 == self.rhs(pt.x)

    def point(self, x, y) -> "AffinePoint":
        pt = AffinePoint(self, self.field.of(x), self.field.of(y), False)
        if not self.contains(pt):
            raise ValueError(f"({x}, {y}) is not on {self}")
        return pt

    def zero(self) -> "AffinePoint":
        return AffinePoint(self, None, None, True)

    def quadratic_twist(self) -> "EllipticCurve":
        d = self.field.nonresidue()
        return EllipticCurve(self.field, self.A * d ** 2, self.B * d ** 3)

    def random_point(self, rng: random.Random) -> "AffinePoint":
        """A uniform-ish affine point: random x with square RHS, smaller y."""
        p = self.p
        while True:
            x = rng.randrange(p)
            t = self.rhs(x)
            if not t:
                return self.point(x, 0)
            if self.field.chi(t) == 1:
                return self.point(x, sqrt_mod(self.field, t))


@dataclass(frozen=True)
class AffinePoint:
    curve: EllipticCurve
    x: FpElt | None
    y: FpElt | None
    infinity: bool = False

    def __neg__(self):
        if self.infinity:
            return self
        return AffinePoint(self.curve, self.x, -self.y, False)

    def __add__(self, other: "AffinePoint") -> "AffinePoint":
        if self.curve != other.curve:
            raise ValueError("points on different curves")
        if self.infinity:
            return other
        if other.infinity:
            return self
        if self.x == other.x:
            if self.y != other.y or not self.y:
                return self.curve.zero()
            lam = (3 * self.x ** 2 + self.curve.A) / (2 * self.y)
        else:
            lam = (other.y - self.y) / (other.x - self.x)
        x3 = lam ** 2 - self.x - other.x
        y3 = lam * (self.x - x3) - self.y
        return AffinePoint(self.curve, x3, y3, False)

    def __sub__(self, other):
        return self + (-other)

    def __rmul__(self, k: int) -> "AffinePoint":
        return _scalar_mul(self, k)

    def __eq__(self, other):
        if not isinstance(other, AffinePoint):
            return NotImplemented
        if self.infinity or other.infinity:
            return self.infinity and other.infinity and self.curve == other.curve
        return (self.curve == other.curve and self.x == other.x
                and self.y == other.y)

    def __hash__(self):
        if self.infinity:
            return hash((self.curve, "inf"))
        return hash((self.curve, self.x.v, self.y.v))

    def __repr__(self):
        return "O" if self.infinity else f"({self.x}, {self.y})"


def _scalar_mul(pt: AffinePoint, k: int) -> AffinePoint:
    """k*P via Jacobian double-and-add on raw integers."""
    curve = pt.curve
    if pt.infinity or k == 0:
        return curve.zero()
    p = curve.p
    a = int(curve.A)
    x, y = int(pt.x), int(pt.y)
    if k < 0:
        k, y = -k, (-y) % p

    def dbl(X, Y, Z):
        if Z == 0 or Y == 0:
            return 0, 1, 0
        Y2 = Y * Y % p
        S = 4 * X * Y2 % p
        Z2 = Z * Z % p
        M = (3 * X * X + a * Z2 * Z2) % p
        Xn = (M * M - 2 * S) % p
        return Xn, (M * (S - Xn) - 8 * Y2 * Y2) % p, 2 * Y * Z % p

    # accumulator (X, Y, Z); Z = 0 encodes infinity
    X, Y, Z = 0, 1, 0
    for bit in bin(k)[2:]:
        X, Y, Z = dbl(X, Y, Z)
        if bit == "1":
            # mixed add of the affine base point
            if Z == 0:
                X, Y, Z = x, y, 1
            else:
                Z2 = Z * Z % p
                U2 = x * Z2 % p
                S2 = y * Z2 * Z % p
                if U2 == X:
                    if S2 != Y:
                        X, Y, Z = 0, 1, 0
                    else:
                        X, Y, Z = dbl(X, Y, Z)
                else:
                    H = (U2 - X) % p
                    R = (S2 - Y) % p
                    H2 = H * H % p
                    H3 = H * H2 % p
                    Xn = (R * R - H3 - 2 * X * H2) % p
                    Y = (R * (X * H2 - Xn) - Y * H3) % p
                    Z = Z * H % p
                    X = Xn
    if Z == 0:
        return curve.zero()
    zinv = pow(Z, -1, p)
    z2 = zinv * zinv % p
    return curve.point(X * z2 % p, Y * z2 * zinv % p)

# ---------------------------------------------------------------------------
# order computation

def _naive_order(E: EllipticCurve) -> int:
    # p + 1 + sum_x chi(x^3 + Ax + B), all in raw ints for speed
    p = E.p
    sq = bytearray(p)
    for i in range(1, (p >> 1) + 1):
        sq[i * i % p] = 1
    a, b = int(E.A), int(E.B)
    n = p + 1
    for x in range(p):
        t = (x * x % p * x + a * x + b) % p
        if t:
            n += 1 if sq[t] else -1
    return n


def _peel_order(P: AffinePoint, n: int) -> int:
    """Exact order of P given n*P = O."""
    d = n
    for q in factor_int(n):
        while d % q == 0 and (d // q * P).infinity:
            d //= q
    return d


def _order_of_point(P: AffinePoint, lo: int, hi: int) -> int:
    """Exact order of P, assuming ord(P) divides some n in [lo, hi].

    Baby-step giant-step over the window, then peel the annihilator
    found down to the true order.
    """
    E = P.curve
    width = hi - lo + 1
    m = isqrt(width) + 1
    table = {}
    Q = E.zero()
    for j in range(m):
        if Q.infinity and j:
            return j  # hit the order while laying baby steps
        table[Q] = j
        Q = Q + P
    G = m * P
    # find t = i*m + j with t*P = -(lo*P); then (lo + t)*P = O exactly
    S = -(lo * P)
    step = -G
    i = 0
    while i <= width // m + 1:
        j = table.get(S)
        if j is not None:
            return _peel_order(P, lo + i * m + j)
        S = S + step
        i += 1
    raise RuntimeError(f"no annihilator of {P} in [{lo}, {hi}]")


def ec_order(E: EllipticCurve, config: Config | None = None) -> int:
    """Exact group order #E(F_p).

    Naive character-sum count for small p, otherwise baby-step giant-step
    on sampled points with quadratic-twist disambiguation.  Beyond the
    configured modulus bound the answer cannot be pinned down exactly;
    use certify_order there.
    """
    cfg = config or Config()
    p = E.p
    if p <= cfg.naive_count_bound:
        return _naive_order(E)
    if p > cfg.bsgs_bound:
        raise ModulusTooLarge(
            f"MODULUS_TOO_LARGE: p > 2^50, exact counting unsupported ({p})")
    s = isqrt(4 * p)
    lo, hi = p + 1 - s, p + 1 + s
    rng = random.Random(subseed(cfg.prng_seed, "ec_order", p, int(E.A), int(E.B)))

    def exponent_candidates(curve, cap):
        # multiples in the Hasse window of the lcm of sampled point orders
        e = 1
        cands = range(lo + (-lo) % 1, hi + 1)
        for _ in range(cap):
            P = curve.random_point(rng)
            e = lcm(e, _order_of_point(P, lo, hi))
            cands = range(lo + (-lo) % e, hi + 1, e)
            if len(cands) == 1:
                break
        return list(cands)

    for cap in (12, 40):
        cands = exponent_candidates(E, cap)
        if len(cands) == 1:
            return cands[0]
        tw = exponent_candidates(E.quadratic_twist(), cap)
        joint = sorted(set(cands) & {2 * p + 2 - n for n in tw})
        if len(joint) == 1:
            return joint[0]
    raise ModulusTooLarge(
        "MODULUS_TOO_LARGE: order ambiguous after exponent sampling")


# ---------------------------------------------------------------------------
# order certification for moduli beyond exact counting


@dataclass(frozen=True)
class OrderCertificate:
    """Witness-based proof that #E(F_p) = claimed_order.

    Each witness (x, y, d) is a point whose order is divisible by d, where
    d is assembled from the prime factorization of the claimed order: q^e
    enters d exactly when (N/q)*P != O.  If the largest certified d
    exceeds 4*sqrt(p), the claimed order is the unique multiple of d in
    the Hasse interval, which pins the group order down completely.
    """
    curve: EllipticCurve
    claimed_order: int
    factors: tuple  # ((prime, exponent), ...) for claimed_order
    witnesses: tuple  # ((x, y, certified_order), ...)
    max_order: int


def certify_order(E: EllipticCurve, N: int, factors, seed: int = DEFAULT_SEED,
                  config: Config | None = None) -> OrderCertificate | None:
    """Try to certify #E(F_p) = N by random sampling.

    Returns a certificate, or None if the sampling budget runs out before
    a witness of order > 4*sqrt(p) turns up (inconclusive).  A sampled
    point with N*P != O disproves the claim outright and raises
    OrderDisproof instead.
    """
    cfg = config or Config()
    p = E.p
    if (p + 1 - N) ** 2 > 4 * p:
        raise ValueError(f"claimed order {N} outside the Hasse interval")
    fac = normalize_factors(N, factors)
    witnesses = []
    m = 1
    for i in range(cfg.certify_points):
        rng = random.Random(subseed(seed, "point", p, int(E.A), int(E.B), i))
        P = E.random_point(rng)
        if not (N * P).infinity:
            raise OrderDisproof(P, N)
        d = 1
        for q, e in fac.items():
            if not (N // q * P).infinity:
                d *= q ** e
        if d > m:
            m = d
            witnesses.append((int(P.x), int(P.y), d))
        if m * m > 16 * p:
            return OrderCertificate(E, N, tuple(sorted(fac.items())),
                                    tuple(witnesses), m)
    return None


def verify_order_certificate(cert: OrderCertificate) -> bool:
    """Re-check a certificate offline; no trust in how it was produced."""
    E = cert.curve
    p = E.p
    N = cert.claimed_order
    try:
        fac = normalize_factors(N, dict(cert.factors))
    except (BadFactorizationError, ValueError):
        return False
    if (p + 1 - N) ** 2 > 4 * p:
        return False
    if cert.max_order ** 2 <= 16 * p:
        return False
    best = 1
    for x, y, d in cert.witnesses:
        try:
            P = E.point(x, y)
        except ValueError:
            return False
        if not (N * P).infinity:
            return False
        dd = 1
        for q, e in fac.items():
            if d % q == 0:
                if (N // q * P).infinity:
                    return False
                dd *= q ** e
        if dd != d:
            return False
        best = max(best, d)
    return best == cert.max_order


# ---------------------------------------------------------------------------
# curves with prescribed order


def curve_from_j(field: PrimeField, j) -> EllipticCurve:
    """Some curve with the given j-invariant; twist class unspecified."""
    j = field.of(j)
    if not j:
        return EllipticCurve(field, 0, 1)
    if j == field.of(1728):
        return EllipticCurve(field, 1, 0)
    k = j / (1728 - j)
    return EllipticCurve(field, 3 * k, 2 * k)


def _twist_candidates(field: PrimeField, j):
    """Twists of j-invariant j, one per twist class, in a fixed order."""
    p = field.p
    j = field.of(j)
    if j == field.of(1728) and p % 4 == 1:
        seen = set()
        exp = (p - 1) // 4
        for c in range(1, p):
            cls = pow(c, exp, p)
            if cls in seen:
                continue
            seen.add(cls)
            yield EllipticCurve(field, c, 0)
            if len(seen) == 4:
                return
    elif not j and p % 3 == 1:
        exp = (p - 1) // 6
        seen = set()
        for c in range(1, p):
            cls = pow(c, exp, p)
            if cls in seen:
                continue
            seen.add(cls)
            yield EllipticCurve(field, 0, c)
            if len(seen) == 6:
                return
    else:
        E0 = curve_from_j(field, j)
        yield E0
        yield E0.quadratic_twist()


def curve_with_order(delta, p: int, N: int, H, factors=None,
                     config: Config | None = None) -> EllipticCurve:
    """Curve over F_p with exactly N points, via a root of H mod p.

    H must be the class polynomial of delta with 4p = t^2 + |delta|f^2 and
    N = p + 1 +- t; the caller's search guarantees that.  Deterministic:
    smallest root j, first matching twist in a fixed enumeration.
    """
    cfg = config or Config()
    field = PrimeField(p)
    roots = poly_roots(H.mod(field))
    if not roots:
        raise NoRoot(f"NO_ROOT: class polynomial has no root mod {p}")
    j = roots[0]
    if p > cfg.bsgs_bound and factors is None:
        factors = factor_int(N, cfg.prng_seed)
    for cand in _twist_candidates(field, j):
        if p <= cfg.bsgs_bound:
            if ec_order(cand, cfg) == N:
                return cand
        else:
            try:
                if certify_order(cand, N, factors, cfg.prng_seed, cfg):
                    return cand
            except OrderDisproof:
                pass
    raise NoTwist(f"NO_TWIST: no twist of j={int(j)} has order {N} over F_{p}")


# ---------------------------------------------------------------------------
# isogeny quotients and volcano descent


def quotient_by_2_torsion(E: EllipticCurve, r) -> EllipticCurve:
    """Quotient by the 2-torsion point (r, 0); same order, 2-isogenous."""
    r = E.field.of(r)
    if E.rhs(r):
        raise NotARoot(f"NOT_A_ROOT: {r} is not a zero of the 2-division cubic")
    A, B = E.A, E.B
    return EllipticCurve(E.field, -(4 * A + 15 * r ** 2), 14 * A * r + 22 * B)


def division_poly_3(E: EllipticCurve) -> Poly:
    f = E.field
    return Poly(f, [-E.A ** 2, 12 * E.B, 6 * E.A, f.zero, f.of(3)])


def quotient_by_3_torsion(E: EllipticCurve, r) -> EllipticCurve:
    """Quotient by the order-3 subgroup with abscissa r; same order.

    r must be a rational root of the 3-division polynomial.  The kernel
    points themselves may live in a quadratic extension; the quotient is
    rational regardless.
    """
    r = E.field.of(r)
    if division_poly_3(E)(r):
        raise NotARoot(f"NOT_A_ROOT: {r} is not a zero of the 3-division polynomial")
    A, B = E.A, E.B
    return EllipticCurve(E.field, -(9 * A + 30 * r ** 2),
                         -(42 * A * r + 27 * B + 70 * r ** 3))


def count_rank_ell_subgroups(E: EllipticCurve, ell: int) -> int:
    """Number of rational order-ell subgroup schemes, ell in {2, 3}.

    A subgroup is rational iff its abscissa is: distinct rational roots of
    the 2-division cubic, resp. the 3-division quartic.
    """
    if ell == 2:
        f = Poly(E.field, [E.B, E.A, E.field.zero, E.field.one])
    elif ell == 3:
        f = division_poly_3(E)
    else:
        raise ValueError("ell must be 2 or 3")
    return len({r.encode() for r in poly_roots(f)})


def _ordinary(E: EllipticCurve, cfg: Config) -> bool:
    p = E.p
    if p <= cfg.bsgs_bound:
        return ec_order(E, cfg) != p + 1
    # beyond exact counting: a failed trace-zero sample is a definitive
    # nonzero trace, a pass is only evidence of supersingularity
    return not trace_zero_check(E, cfg.prng_seed)


def is_minimal(E: EllipticCurve, ell: int, config: Config | None = None) -> bool:
    """Whether ell does not divide the conductor of the Frobenius order.

    Equivalent formulation: the curve has fewer than ell+1 rational
    rank-ell subgroup schemes.
    """
    cfg = config or Config()
    if not _ordinary(E, cfg):
        raise NotOrdinary("NOT_ORDINARY: minimality is only defined for ordinary curves")
    return count_rank_ell_subgroups(E, ell) < ell + 1


def make_minimal(E: EllipticCurve, H, ell: int,
                 config: Config | None = None) -> EllipticCurve:
    """Walk ell-isogenies down to a curve minimal at ell; order preserved.

    E must come from a root of H mod p for a fundamental discriminant, so
    its endomorphism ring is maximal and the walk starts on the rim of
    the volcano.  First step avoids rim neighbours (roots of H mod p),
    later steps avoid backtracking to the parent j-invariant; among the
    remaining quotients the smallest j-invariant wins, for determinism.
    """
    cfg = config or Config()
    if not _ordinary(E, cfg):
        raise NotOrdinary("NOT_ORDINARY: no volcano to descend")
    quot = quotient_by_2_torsion if ell == 2 else quotient_by_3_torsion
    field = E.field
    rim = {r.encode() for r in poly_roots(H.mod(field))}
    # conductor exponent is bounded by log_ell(2 sqrt(p)); pad generously
    cap = 2
    while ell ** cap < 4 * E.p:
        cap += 1
    cap += 2
    cur = E
    parent_j = None
    for _ in range(cap):
        if ell == 2:
            tors = Poly(field, [cur.B, cur.A, field.zero, field.one])
        else:
            tors = division_poly_3(cur)
        roots = sorted({r.encode() for r in poly_roots(tors)})
        if len(roots) < ell + 1:
            if E.p <= (1 << 16):  # cheap spot check at small moduli
                assert ec_order(cur, cfg) == ec_order(E, cfg)
            return cur
        cur_j = cur.j_invariant().encode()
        best = None
        for rv in roots:
            Q = quot(cur, rv)
            jq = Q.j_invariant().encode()
            if parent_j is not None and jq == parent_j:
                continue
            if cur_j in rim and jq in rim:
                continue
            if best is None or jq < best[0]:
                best = (jq, Q)
        if best is None:
            raise RuntimeError("descent wedged; was End(E) really maximal?")
        parent_j = cur_j
        cur = best[1]
    raise RuntimeError("descent exceeded the conductor bound")


# ---------------------------------------------------------------------------
# supersingular companion curves


def supersingular_curve(p: int, config: Config | None = None,
                        cache=None) -> EllipticCurve:
    """A curve over F_p with trace 0, i.e. exactly p + 1 points."""
    cfg = config or Config()
    field = PrimeField(p)
    if p % 4 == 3:
        return EllipticCurve(field, 1, 0)
    if p % 3 == 2:
        return EllipticCurve(field, 0, 1)
    # p = 1 mod 12: both fixed models are ordinary here.  Take the smallest
    # auxiliary prime q = 3 mod 4 that is inert, i.e. (-q|p) = -1; the class
    # number of -q is odd, so the class polynomial gains a rational root
    # mod p, and that root is a supersingular j-invariant.
    from .quadratic_cm import class_polynomial
    q = 3
    while not (is_probable_prime(q, cfg.prng_seed)
               and jacobi((-q) % p, p) == -1):
        q += 4
    H = class_polynomial(-q, cache=cache, config=cfg)
    j = poly_roots(H.mod(field))[0]
    E = curve_from_j(field, j)
    for cand in (E, E.quadratic_twist()):
        if p <= cfg.bsgs_bound:
            if ec_order(cand, cfg) == p + 1:
                return cand
        elif trace_zero_check(cand, cfg.prng_seed):
            return cand
    raise RuntimeError(f"no trace-zero twist at j={int(j)}; q={q} was not inert?")


def trace_zero_check(E: EllipticCurve, seed: int = DEFAULT_SEED) -> bool:
    """Evidence that #E(F_p) = p + 1, from 20 seeded sample points.

    Frobenius is the identity on rational points, so the characteristic
    equation pi^2 - t*pi + p = 0 collapses to (p + 1 - t)*P = O; trace
    zero predicts (p+1)*P = O for every rational P.  One failing sample
    refutes trace zero definitively; twenty passes are strong evidence
    (a nonzero trace would need the group exponent to divide p + 1).
    """
    p = E.p
    rng = random.Random(subseed(seed, "trace0", p, int(E.A), int(E.B)))
    for _ in range(20):
        P = E.random_point(rng)
        if not ((p + 1) * P).infinity:
            return False
    return True
