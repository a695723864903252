"""Imaginary quadratic orders: norm equations, discriminant search, Hilbert
class polynomials.

Elements of the order O_D are stored as pairs (x, y) meaning (x + y*sqrt(D))/2
with the parity constraint x = y*D (mod 2).  The norm-equation solver walks
ideals: square roots of D modulo 4M pin down the candidate ideals of norm M,
Gauss reduction with transform tracking decides principality and hands back a
generator.  Imprimitive solutions come from pulling out square divisors of N
first, and for D in {-3, -4} the extra units multiply back in at the end, so
the output really is every solution up to sign and conjugation.

Class polynomials are evaluated from the j q-expansion at controlled
precision and cached in a small append-only text file.
"""

from __future__ import annotations

import logging
import math
import os
from dataclasses import dataclass, field

from mpmath import mp, mpf

from .config import Config
from .ff import (PrimeField, is_probable_prime, jacobi, normalize_factors,
                 sqrt_mod)

log = logging.getLogger(__name__)


class PrecisionExhausted(ArithmeticError):
    """Class polynomial rounding failed even after the precision retry."""


# ---------------------------------------------------------------------------
# discriminants


def _squarefree(n: int) -> bool:
    n = abs(n)
    d = 2
    while d * d <= n:
        if n % (d * d) == 0:
            return False
        d += 1
    return True


@dataclass(frozen=True)
class Discriminant:
    value: int
    is_fundamental: bool = field(default=None)

    def __post_init__(self):
        v = self.value
        if v >= 0 or v % 4 not in (0, 1):
            raise ValueError(f"{v} is not an imaginary quadratic discriminant")
        if v % 4 == 1:
            fund = _squarefree(v)
        else:
            m = v // 4
            fund = m % 4 in (2, 3) and _squarefree(m)
        object.__setattr__(self, "is_fundamental", fund)

    @classmethod
    def of(cls, d) -> "Discriminant":
        return d if isinstance(d, Discriminant) else cls(int(d))

    def __int__(self):
        return self.value

    def __repr__(self):
        return f"Disc({self.value})"


_FUND: list = []
_FUND_BOUND = 2


def _extend_fundamentals(bound: int):
    global _FUND_BOUND
    if bound <= _FUND_BOUND:
        return
    # squarefree sieve on (_FUND_BOUND, bound]
    flags = bytearray([1]) * (bound + 1)
    d = 2
    while d * d <= bound:
        for m in range(d * d, bound + 1, d * d):
            flags[m] = 0
        d += 1
    for n in range(_FUND_BOUND + 1, bound + 1):
        if (-n) % 4 == 1:
            fund = bool(flags[n])
        elif (-n) % 4 == 0:
            m = n // 4
            fund = bool(flags[m]) and (-m) % 4 in (2, 3)
        else:
            continue
        if fund:
            _FUND.append(Discriminant(-n))
    _FUND_BOUND = bound


def fundamental_discriminants(bound: int):
    """Yield fundamental discriminants with |D| <= bound, ascending |D|."""
    _extend_fundamentals(bound)
    for d in _FUND:
        if -d.value > bound:
            break
        yield d


# ---------------------------------------------------------------------------
# quadratic integers


@dataclass(frozen=True)
class QuadraticInteger:
    """(x + y*sqrt(delta))/2 in the maximal order of Q(sqrt(delta))."""

    delta: int
    x: int
    y: int

    def __post_init__(self):
        if (self.x - self.y * self.delta) % 2:
            raise ValueError("parity constraint violated: need x = y*delta (mod 2)")

    def norm(self) -> int:
        n4 = self.x * self.x - self.delta * self.y * self.y
        assert n4 % 4 == 0 and n4 >= 0
        return n4 // 4

    @property
    def trace(self) -> int:
        return self.x

    def conjugate(self) -> "QuadraticInteger":
        return QuadraticInteger(self.delta, self.x, -self.y)

    def __neg__(self) -> "QuadraticInteger":
        return QuadraticInteger(self.delta, -self.x, -self.y)

    def _coerce(self, other):
        if isinstance(other, int):
            return QuadraticInteger(self.delta, 2 * other, 0)
        if isinstance(other, QuadraticInteger):
            if other.delta != self.delta:
                raise ValueError("mixed discriminants")
            return other
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return QuadraticInteger(self.delta, self.x + o.x, self.y + o.y)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return QuadraticInteger(self.delta, self.x - o.x, self.y - o.y)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        x = self.x * o.x + self.y * o.y * self.delta
        y = self.x * o.y + self.y * o.x
        assert x % 2 == 0 and y % 2 == 0
        return QuadraticInteger(self.delta, x // 2, y // 2)

    __rmul__ = __mul__

    def __repr__(self):
        return f"({self.x}{self.y:+d}*sqrt({self.delta}))/2"


def _units(delta: int) -> list:
    """All units of O_delta, by brute force on x^2 + |delta| y^2 = 4."""
    out = []
    for y in range(-2, 3):
        t = 4 - abs(delta) * y * y
        if t < 0:
            continue
        x = math.isqrt(t)
        if x * x == t and (x - y * delta) % 2 == 0:
            out.append(QuadraticInteger(delta, x, y))
            if x:
                out.append(QuadraticInteger(delta, -x, y))
    return out


# ---------------------------------------------------------------------------
# reduced forms


def reduced_forms(delta) -> list:
    """All reduced primitive forms (a, b, c) of discriminant delta, by (a, b)."""
    d = Discriminant.of(delta).value
    out = []
    b = d % 2
    while 3 * b * b <= -d:
        ac4 = b * b - d
        assert ac4 % 4 == 0
        ac = ac4 // 4
        a = max(b, 1)
        while a * a <= ac:
            if ac % a == 0:
                c = ac // a
                if math.gcd(math.gcd(a, b), c) == 1:
                    out.append((a, b, c))
                    if 0 < b < a < c:
                        out.append((a, -b, c))
            a += 1
        b += 2
    out.sort(key=lambda f: (f[0], f[1]))
    return out


def class_number(delta) -> int:
    return len(reduced_forms(delta))


def _reduce_form_with_transform(a: int, b: int, c: int):
    """Gauss-reduce (a,b,c); also return the first column (u, v) of the
    change of basis, so that original_form(u, v) = reduced a."""
    u00, u01, u10, u11 = 1, 0, 0, 1
    while True:
        if not (-a < b <= a):
            k = (a - b) // (2 * a)
            c = a * k * k + b * k + c
            b = b + 2 * a * k
            u01 += k * u00
            u11 += k * u10
        if a > c or (a == c and b < 0):
            a, b, c = c, -b, a
            u00, u01, u10, u11 = u01, -u00, u11, -u10
            continue
        break
    return (a, b, c), (u00, u10)


# ---------------------------------------------------------------------------
# square roots of D modulo prime powers, and the norm equation


def _unit_sqrts_odd(u: int, q: int, f: int) -> list:
    """Solutions of w^2 = u (mod q^f) for odd prime q and u a unit."""
    r0 = sqrt_mod(PrimeField(q), u % q)
    if r0 is None:
        return []
    r = int(r0)
    k, mod = 1, q
    while k < f:
        k = min(2 * k, f)
        mod = q ** k
        r = (r - (r * r - u) * pow(2 * r, -1, mod)) % mod
    return sorted({r, (mod - r) % mod})


def _unit_sqrts_2(u: int, f: int) -> list:
    """Solutions of w^2 = u (mod 2^f) for odd u."""
    if f == 1:
        return [1]
    if f == 2:
        return [1, 3] if u % 4 == 1 else []
    if u % 8 != 1:
        return []
    sols = [1, 3, 5, 7]
    for k in range(3, f):
        mod2 = 1 << (k + 1)
        nxt = set()
        for w in sols:
            for cand in (w, w + (1 << k)):
                if (cand * cand - u) % mod2 == 0:
                    nxt.add(cand % mod2)
        sols = sorted(nxt)
    return sols


def _sqrts_mod_prime_power(D: int, q: int, e: int) -> list:
    """All z in [0, q^e) with z^2 = D (mod q^e)."""
    mod = q ** e
    Dm = D % mod
    if Dm == 0:
        step = q ** ((e + 1) // 2)
        return list(range(0, mod, step))
    v = 0
    t = Dm
    while t % q == 0:
        t //= q
        v += 1
    if v % 2:
        return []
    f = e - v
    u = t % (q ** f)
    roots = _unit_sqrts_2(u, f) if q == 2 else _unit_sqrts_odd(u, q, f)
    half = q ** (v // 2)
    qf = q ** f
    out = []
    for w in roots:
        for k in range(half):
            out.append(half * (w + k * qf) % mod)
    return sorted(set(out))


def _square_divisors(fd: dict) -> list:
    gs = [1]
    for q, e in fd.items():
        gs = [g * q ** k for g in gs for k in range(e // 2 + 1)]
    return sorted(gs)


def _crt_lists(pairs) -> list:
    """pairs: [(modulus, residue list)] with coprime moduli -> merged list."""
    mod, res = 1, [0]
    for m, rs in pairs:
        inv = pow(mod, -1, m)
        new = []
        for r in res:
            for s in rs:
                new.append(r + mod * ((s - r) * inv % m))
        mod *= m
        res = new
    return res


def norm_solutions(delta, N: int, factors) -> list:
    """All nu in O_delta with Norm(nu) = N, one per {+-1, conjugation} orbit.

    Representatives are normalized to x, y >= 0 and sorted by (x, y).
    """
    disc = Discriminant.of(delta)
    d = disc.value
    if N < 1:
        raise ValueError("N must be positive")
    fd = normalize_factors(N, factors)
    units = _units(d)
    found = set()

    def record(x, y):
        found.add((abs(x), abs(y)))

    for g in _square_divisors(fd):
        M = N // (g * g)
        if M == 1:
            for u in units:
                record(g * u.x, g * u.y)
            continue
        md = {}
        for q, e in fd.items():
            k = _val(g, q)
            if e - 2 * k:
                md[q] = e - 2 * k
        # square roots of d modulo 4M, prime power by prime power
        pairs = []
        e2 = md.get(2, 0) + 2
        pairs.append((1 << e2, _sqrts_mod_prime_power(d, 2, e2)))
        for q, e in sorted(md.items()):
            if q != 2:
                pairs.append((q ** e, _sqrts_mod_prime_power(d, q, e)))
        if any(not rs for _, rs in pairs):
            continue
        seen_b = set()
        for z in _crt_lists(pairs):
            b = z % (2 * M)
            if b in seen_b:
                continue
            seen_b.add(b)
            c4 = b * b - d
            assert c4 % (4 * M) == 0
            form = (M, b, c4 // (4 * M))
            reduced, (u, v) = _reduce_form_with_transform(*form)
            if reduced[0] != 1:
                continue
            x = 2 * M * u + v * b
            y = v
            nu = QuadraticInteger(d, x, y)
            assert nu.norm() == M
            for unit in units:
                w = unit * nu
                record(g * w.x, g * w.y)
    return [QuadraticInteger(d, x, y) for x, y in sorted(found)]


def _val(n: int, q: int) -> int:
    v = 0
    while n % q == 0:
        n //= q
        v += 1
    return v


# ---------------------------------------------------------------------------
# discriminant search


class BSResult(tuple):
    """(discriminant, nu, p) found by bs_search."""

    __slots__ = ()

    def __new__(cls, disc, nu, p):
        return tuple.__new__(cls, (disc, nu, p))

    @property
    def delta(self) -> Discriminant:
        return self[0]

    @property
    def nu(self) -> QuadraticInteger:
        return self[1]

    @property
    def p(self) -> int:
        return self[2]


def bs_search(N: int, factors, ell: int, config: Config | None = None):
    """Search fundamental discriminants (ascending |D|) for nu with
    Norm(nu) = N such that p = Norm(1 - nu) is a usable prime:
    p > 3, p != N-1, and p = N-1 (mod ell).

    Within one discriminant, candidates nu run in order (|x|, |y|), first
    over the representatives themselves, then over their negatives (the
    negative pass picks up solutions whose usable associate has negative
    trace).  Returns None when the discriminant budget runs out.
    """
    if N <= 1:
        raise ValueError("N must exceed 1")
    if ell not in (2, 3):
        raise ValueError("ell must be 2 or 3")
    config = config or Config()
    fd = normalize_factors(N, factors)
    # No prime > 3 can satisfy p = N-1 (mod ell) in these residue classes;
    # the pipeline's N != 1 (mod 6) gate keeps such inputs away, but direct
    # callers get the exhaustive answer immediately.
    if ell == 2 and N % 2 == 1:
        return None
    if ell == 3 and (N - 1) % 3 == 0:
        return None
    odd_single = [q for q, e in fd.items() if q != 2 and e % 2]
    for disc in fundamental_discriminants(config.discriminant_budget):
        d = disc.value
        # a prime inert in O_d cannot divide a norm to an odd power
        if any(d % q and jacobi(d % q, q) == -1 for q in odd_single):
            continue
        sols = norm_solutions(disc, N, fd)
        for sign in (1, -1):
            for rep in sols:
                nu = QuadraticInteger(disc.value, sign * rep.x, sign * rep.y)
                p = N + 1 - nu.trace
                if p <= 3 or p == N - 1 or (p - (N - 1)) % ell:
                    continue
                if not is_probable_prime(p, config.prng_seed):
                    continue
                assert nu.norm() == N and (1 - nu).norm() == p
                return BSResult(disc, nu, p)
    return None


# ---------------------------------------------------------------------------
# Hilbert class polynomials


@dataclass(frozen=True)
class ClassPolynomial:
    discriminant: Discriminant
    coefficients: tuple  # ascending, monic

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def mod(self, fld: PrimeField):
        from .ff import Poly
        return Poly(fld, [c % fld.p for c in self.coefficients])

    def __repr__(self):
        return f"H_{self.discriminant.value}{list(self.coefficients)}"


class ClassPolyCache:
    """Append-only text cache, one `D:<disc> H:<c0>,...,<cn>` line per entry."""

    def __init__(self, path: str):
        self.path = path
        self._table = None

    def _load(self):
        if self._table is not None:
            return
        self._table = {}
        if not os.path.exists(self.path):
            return
        with open(self.path, "r", encoding="utf-8") as fh:
            for lineno, line in enumerate(fh, 1):
                line = line.strip()
                if not line:
                    continue
                try:
                    dpart, hpart = line.split()
                    if not dpart.startswith("D:") or not hpart.startswith("H:"):
                        raise ValueError("bad field tags")
                    dval = int(dpart[2:])
                    coeffs = tuple(int(c) for c in hpart[2:].split(","))
                    if not coeffs or coeffs[-1] != 1:
                        raise ValueError("polynomial not monic")
                except ValueError as exc:
                    log.warning("ignoring corrupt cache line %s:%d (%s)",
                                self.path, lineno, exc)
                    continue
                self._table[dval] = coeffs

    def get(self, dval: int):
        self._load()
        return self._table.get(dval)

    def put(self, dval: int, coeffs: tuple):
        self._load()
        if dval in self._table:
            return
        self._table[dval] = tuple(coeffs)
        dirname = os.path.dirname(self.path)
        if dirname:
            os.makedirs(dirname, exist_ok=True)
        with open(self.path, "a", encoding="utf-8") as fh:
            fh.write(f"D:{dval} H:{','.join(str(c) for c in coeffs)}\n")


def _j_value(a: int, b: int, dval: int, nmax: int):
    """j((-b + sqrt(dval)) / (2a)) at the current working precision."""
    sq = mp.sqrt(mpf(-dval))
    tau = (mpf(-b) + mp.mpc(0, 1) * sq) / (2 * a)
    q = mp.exp(2j * mp.pi * tau)
    # sigma_3 sieve
    sig3 = [0] * (nmax + 1)
    for m in range(1, nmax + 1):
        c = m * m * m
        for n in range(m, nmax + 1, m):
            sig3[n] += c
    e4 = mp.mpc(1)
    eta = mp.mpc(1)
    qn = mp.mpc(1)
    for n in range(1, nmax + 1):
        qn = qn * q
        e4 += 240 * sig3[n] * qn
        eta *= 1 - qn
    delta_mod = q * eta ** 24
    return e4 ** 3 / delta_mod


def class_polynomial(delta, cache: ClassPolyCache | None = None,
                     config: Config | None = None) -> ClassPolynomial:
    """Hilbert class polynomial of a discriminant, monic over Z.

    Results are cached; the file is consulted before any computation.
    """
    disc = Discriminant.of(delta)
    config = config or Config.from_env()
    if -disc.value > config.class_poly_disc_bound:
        raise ValueError(f"|{disc.value}| exceeds the class polynomial bound")
    if cache is None:
        cache = ClassPolyCache(config.hilbert_cache_path())
    hit = cache.get(disc.value)
    if hit is not None:
        return ClassPolynomial(disc, hit)

    forms = reduced_forms(disc)
    dval = disc.value
    inv_a_sum = sum(1.0 / a for a, _, _ in forms)
    base_prec = math.ceil(math.pi * math.sqrt(-dval) * inv_a_sum / math.log(2)) + 64

    for attempt, prec in enumerate((base_prec, 2 * base_prec)):
        with mp.workprec(prec):
            coeffs = [mp.mpc(1)]
            for a, b, _ in forms:
                # terms below 2^-prec are dropped
                nmax = int((prec + 40) * math.log(2) * a
                           / (math.pi * math.sqrt(-dval))) + 4
                jv = _j_value(a, b, dval, nmax)
                nxt = [mp.mpc(0)] * (len(coeffs) + 1)
                for i, c in enumerate(coeffs):
                    nxt[i] -= c * jv
                    nxt[i + 1] += c
                coeffs = nxt
            ints, ok = [], True
            for c in coeffs:
                n = int(mp.nint(c.real))
                tol = mpf(2) ** -16 * max(1, abs(n))
                if abs(c.real - n) > tol or abs(c.imag) > tol:
                    ok = False
                    break
                ints.append(n)
        if ok:
            assert ints[-1] == 1
            cache.put(dval, tuple(ints))
            return ClassPolynomial(disc, tuple(ints))
        log.warning("class polynomial rounding failed for %d at %d bits, retrying",
                    dval, prec)
    raise PrecisionExhausted(f"PRECISION_EXHAUSTED for discriminant {dval}")
