"""Degree-4 Weil polynomials and the arithmetic built on top of them.

A prime power q and an integer pair (a, b) pin down the quartic

    f(T) = T^4 - a*T^3 + (b + 2q)*T^2 - a*q*T + q^2,

the general form of a q-symmetric polynomial: T^4 * f(q/T) = q^2 * f(T).
When the pair lies in the wedge region

    2*|a|*sqrt(q) - 4q <= b <= a^2/4 <= 4q

all four complex roots sit on the circle |z| = sqrt(q), so f is a
plausible characteristic polynomial of Frobenius for an abelian surface,
with curve count q + 1 - a and group order f(1).

Everything in this module is exact integer arithmetic.  Interval
endpoints come from isqrt, the wedge test is cleared of square roots by
squaring once, and discriminants are fraction-free determinants.  No
floats appear anywhere.
"""

from dataclasses import dataclass
from functools import lru_cache
from math import gcd, isqrt

from .config import DEFAULT_SEED
from .ff import Poly, PrimeField, factor_int, poly_factor


class OutOfInterval(ValueError):
    """N is farther than q^(3/2) from (q+1)^2."""


class NoCentralWeil(ValueError):
    """None of the three candidate pairs is ordinary and wedge-valid."""


@dataclass(frozen=True)
class WeilCoefficients:
    """The pair (a, b) of a q-symmetric quartic, plus the prime power q.

    Instances are plain value objects; nothing here checks the wedge
    inequalities (wedge_valid does) or that q is a prime power.
    """

    q: int
    a: int
    b: int

    def __post_init__(self):
        if self.q < 2:
            raise ValueError("q must be at least 2")

    def coefficients(self) -> tuple:
        """Ascending integer coefficients (q^2, -aq, b+2q, -a, 1)."""
        q, a, b = self.q, self.a, self.b
        return (q * q, -a * q, b + 2 * q, -a, 1)

    def __call__(self, t: int) -> int:
        acc = 0
        for c in reversed(self.coefficients()):
            acc = acc * t + c
        return acc

    @property
    def ordinary(self) -> bool:
        return gcd(self.b, self.q) == 1

    def is_irreducible(self) -> bool:
        """True when f has no factor over Z, hence none over Q (Gauss)."""
        return _irreducible(self.q, self.a, self.b)


def _wedge(q: int, a: int, b: int) -> bool:
    # 2|a|sqrt(q) <= b + 4q squared once; the rest is already rational
    s = b + 4 * q
    if s < 0 or 4 * a * a * q > s * s:
        return False
    return 4 * b <= a * a and a * a <= 16 * q


def wedge_valid(w: WeilCoefficients) -> bool:
    """Exact membership test for the root-circle wedge, no floats."""
    return _wedge(w.q, w.a, w.b)


def orders_from_weil(w: WeilCoefficients) -> tuple:
    """(curve count, group order) = (q + 1 - a, f(1))."""
    n1 = w.q + 1 - w.a
    return n1, (w.q + 1) ** 2 - w.a * (w.q + 1) + w.b


@dataclass(frozen=True)
class HasseIntervals:
    """Exact integer endpoints of the three point-count windows at q."""

    q: int
    elliptic: tuple
    genus2: tuple
    central: tuple


def hasse_intervals(q: int) -> HasseIntervals:
    """Windows [ (sqrt(q)-1)^2, (sqrt(q)+1)^2 ] and its square and the
    central band (q+1)^2 +- q^(3/2), all rounded inward to integers."""
    if q < 2:
        raise ValueError("q must be at least 2")
    s = isqrt(4 * q)
    elliptic = (q + 1 - s, q + 1 + s)
    # (sqrt(q)+-1)^4 = q^2 + 6q + 1 +- 4 sqrt(q) (q+1)
    t = isqrt(16 * q * (q + 1) ** 2)
    mid = q * q + 6 * q + 1
    genus2 = (mid - t, mid + t)
    c = isqrt(q ** 3)
    center = (q + 1) ** 2
    return HasseIntervals(q, elliptic, genus2, (center - c, center + c))


# The five (q, N) with N central but no ordinary wedge pair; each has a
# unique admissible pair with q | b instead.
_EXCEPTIONAL = {
    (2, 10): (-1, -2),
    (3, 17): (-1, -3),
    (3, 21): (-2, -3),
    (5, 43): (-2, -5),
    (7, 73): (-2, -7),
}


def central_weil(q: int, N: int) -> WeilCoefficients:
    """Wedge-valid pair with f(1) = N, for N within q^(3/2) of (q+1)^2.

    Writes m = N - (q+1)^2 and walks a = -floor(m/(q+1)) - i for
    i = 0, 1, 2, taking b = m + a(q+1); the first ordinary wedge-valid
    hit wins.  For prime q one of the three always works, apart from the
    five exceptional (q, N) where the unique non-ordinary pair is
    returned.  For prime-power q the walk can come up empty, which
    raises NoCentralWeil.
    """
    if not _is_prime_power(q):
        raise ValueError(f"q = {q} is not a prime power")
    m = N - (q + 1) ** 2
    if m * m > q ** 3:
        raise OutOfInterval(
            f"N = {N} is outside the central window for q = {q}")
    if (q, N) in _EXCEPTIONAL:
        a, b = _EXCEPTIONAL[(q, N)]
        return WeilCoefficients(q, a, b)
    a0 = -(m // (q + 1))
    for i in range(3):
        a = a0 - i
        b = m + a * (q + 1)
        if _wedge(q, a, b) and gcd(b, q) == 1:
            return WeilCoefficients(q, a, b)
    raise NoCentralWeil(f"no ordinary wedge pair at q = {q}, N = {N}")


def enumerate_realizations(N: int, q_limit: int = None) -> list:
    """Every wedge-valid (q, a, b) over prime powers q with f(1) = N.

    f(1) >= (sqrt(q)-1)^4 on the wedge caps q at (ceil(N^(1/4))+1)^2, so
    the scan is finite even without q_limit.  Sorted by (q, a, b); b is
    determined by (q, a), so the loop order already yields that.
    """
    if N < 1:
        raise ValueError("N must be positive")
    r = isqrt(isqrt(N))
    if r ** 4 < N:
        r += 1
    cap = (r + 1) ** 2
    if q_limit is not None:
        cap = min(cap, q_limit)
    out = []
    for q in range(2, cap + 1):
        if not _is_prime_power(q):
            continue
        m = N - (q + 1) ** 2
        amax = isqrt(16 * q)
        for a in range(-amax, amax + 1):
            b = m + a * (q + 1)
            if _wedge(q, a, b):
                out.append(WeilCoefficients(q, a, b))
    return out


@dataclass(frozen=True)
class DeltaNRecord:
    """Outcome of the minimal-discriminant scan for one group order N.

    realizations holds (coefficients, polynomial discriminant, field
    discriminant) triples in enumeration order.  The field slot is None
    for reducible quartics and for realizations the in-package reduction
    could not settle.  delta is the field discriminant of smallest
    absolute value, 0 when no irreducible realization exists.  complete
    is False exactly when an unsettled realization could still undercut
    delta, so a True flag means delta is proved minimal.
    """

    N: int
    realizations: tuple
    delta: int
    complete: bool


def minimal_delta(N: int, factor_budget: int = None,
                  seed: int = DEFAULT_SEED) -> DeltaNRecord:
    """Scan all realizations of N and minimize the field discriminant.

    Reduction from disc(f) to the field discriminant uses the index test
    of Dedekind prime by prime, which settles every squared prime except
    non-maximal ones at valuation >= 4; those and any discriminant the
    factor budget cannot crack leave the record marked incomplete rather
    than guessed at.
    """
    limit = (1 << 96) if factor_budget is None else factor_budget
    rows = []
    resolved = []
    floors = []
    for w in enumerate_realizations(N):
        disc = poly_discriminant(w)
        if not w.is_irreducible():
            rows.append((w, disc, None))
            continue
        try:
            fd = factor_int(abs(disc), seed=seed, limit=limit)
        except ValueError:
            rows.append((w, disc, None))
            floors.append(1)
            continue
        dk, floor = _dedekind_reduce(w, disc, fd, seed)
        rows.append((w, disc, dk))
        if dk is None:
            floors.append(floor)
        else:
            resolved.append(dk)
    best = min(resolved, key=abs) if resolved else 0
    complete = not floors or (best != 0 and min(floors) >= abs(best))
    return DeltaNRecord(N, tuple(rows), best, complete)


def poly_discriminant(w: WeilCoefficients) -> int:
    """disc(f) as an exact integer: the 7x7 resultant of f and f'.

    f is monic of degree 4, so disc = (-1)^6 * Res(f, f') with no
    leading-coefficient division.
    """
    c0, c1, c2, c3, c4 = w.coefficients()
    f = (c4, c3, c2, c1, c0)
    fp = (4 * c4, 3 * c3, 2 * c2, c1)
    return _det_bareiss(_sylvester(f, fp))


def _sylvester(f, g) -> list:
    # f, g descending; deg(g) rows of f then deg(f) rows of g
    n = len(f) - 1
    m = len(g) - 1
    rows = []
    for i in range(m):
        rows.append([0] * i + list(f) + [0] * (m - 1 - i))
    for i in range(n):
        rows.append([0] * i + list(g) + [0] * (n - 1 - i))
    return rows


def _det_bareiss(mat) -> int:
    """Fraction-free determinant; every interior division is exact."""
    m = [list(row) for row in mat]
    n = len(m)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def _dedekind_maximal(w: WeilCoefficients, r: int,
                      seed: int = DEFAULT_SEED) -> bool:
    """Index test at the prime r: is Z[T]/(f) maximal at r?

    With fbar = prod g_i^{e_i} over F_r, g = prod g_i lifted, h a lift
    of fbar/gbar, and M = (g*h - f)/r, the order is r-maximal iff
    gcd(Mbar, gbar, hbar) = 1.
    """
    F = PrimeField(r)
    fz = w.coefficients()
    fbar = Poly(F, [c % r for c in fz])
    rad = Poly(F, [F.one])
    for gi, _ in poly_factor(fbar, seed):
        rad = rad * gi
    hbar = fbar // rad
    lifted = _zmul([int(c) for c in rad.coeffs],
                   [int(c) for c in hbar.coeffs])
    mz = [(x - y) // r for x, y in zip(lifted, fz)]
    d = rad.gcd(hbar)
    if d.degree == 0:
        return True
    mbar = Poly(F, [c % r for c in mz])
    if mbar.is_zero:
        return False
    return d.gcd(mbar).degree == 0


def _dedekind_reduce(w: WeilCoefficients, disc: int, fd: dict, seed: int):
    """Strip index squares out of disc(f) one prime at a time.

    Returns (field discriminant or None, smallest |value| still possible
    given what was settled).  A non-maximal prime at valuation 2 or 3
    forces index valuation exactly 1, so only valuation >= 4 can stay
    ambiguous; parity of the valuation survives regardless.
    """
    sign = -1 if disc < 0 else 1
    known = 1
    floor = 1
    exact = True
    for r, v in sorted(fd.items()):
        if v < 2 or _dedekind_maximal(w, r, seed):
            part = r ** v
        elif v <= 3:
            part = r ** (v - 2)
        else:
            exact = False
            floor *= r ** (v % 2)
            continue
        known *= part
        floor *= part
    return (sign * known if exact else None), floor


def _zmul(a: list, b: list) -> list:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def _is_prime_power(n: int) -> bool:
    if n < 2:
        return False
    p = _least_prime_factor(n)
    while n % p == 0:
        n //= p
    return n == 1


def _least_prime_factor(n: int) -> int:
    if n % 2 == 0:
        return 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return d
        d += 2
    return n


@lru_cache(maxsize=None)
def _irreducible(q: int, a: int, b: int) -> bool:
    w = WeilCoefficients(q, a, b)
    divs = _divisors_of_square(q)
    for d in divs:
        if w(d) == 0 or w(-d) == 0:
            return False
    # monic quadratic split (T^2+uT+v)(T^2+u'T+v'): vv' = q^2, u+u' = -a,
    # uv'+u'v = -aq, v+v'+uu' = b+2q
    n = q * q
    for d in divs:
        for v in (d, -d):
            vp = n // v
            if v != vp:
                num = a * (v - q)
                den = vp - v
                if num % den:
                    continue
                u = num // den
                if v + vp + u * (-a - u) == b + 2 * q:
                    return False
            else:
                # v = vp = +-q; the cross equation collapses to a(v-q) = 0
                if a * (v - q) != 0:
                    continue
                s = a * a - 4 * (b + 2 * q - 2 * v)
                if s >= 0 and isqrt(s) ** 2 == s:
                    return False
    return True


def _divisors_of_square(q: int) -> list:
    fd = factor_int(q)
    divs = [1]
    for p, e in fd.items():
        divs = [d * p ** i for d in divs for i in range(2 * e + 1)]
    return sorted(divs)
