"""Finite field arithmetic: F_p, F_{p^k}, polynomials, and factorization.

Elements are immutable and carry a reference to their field, so arithmetic
between mismatched fields fails loudly.  Integers coerce automatically on
the left or right of any operator, which keeps formula-heavy callers
readable (``12*a*c + 16*b*d`` works directly on elements).

Polynomial factorization is a distinct-degree / equal-degree split whose
random choices come from a PRNG seeded off the input polynomial, so output
is reproducible run to run; factor lists are additionally sorted into a
canonical order, making results independent of the randomness anyway.
"""

from __future__ import annotations

import random
from math import gcd

from .config import DEFAULT_SEED, subseed


class NonSeparableError(ValueError):
    """Raised where an operation requires a squarefree polynomial."""


class BadFactorizationError(ValueError):
    """A supplied integer factorization does not multiply out correctly."""


# ---------------------------------------------------------------------------
# primality

_SMALL_PRIMES = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53,
                 59, 61, 67, 71, 73, 79, 83, 89, 97, 101, 103, 107, 109, 113]

# Deterministic Miller-Rabin witnesses valid for all n < 2^64.
_MR_BASES_64 = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37]


def _miller_rabin(n: int, base: int) -> bool:
    if base % n == 0:
        return True
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    x = pow(base, d, n)
    if x == 1 or x == n - 1:
        return True
    for _ in range(s - 1):
        x = x * x % n
        if x == n - 1:
            return True
    return False


def _lucas_strong(n: int) -> bool:
    # strong Lucas test with Selfridge's parameter choice
    if is_square_int(n):
        return False
    D = 5
    while True:
        j = jacobi(D, n)
        if j == -1:
            break
        if j == 0 and abs(D) != n:
            return False
        D = -(D + 2) if D > 0 else -(D - 2)
    Q = (1 - D) // 4
    d, s = n + 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    # Lucas sequences U_d, V_d by binary ladder
    U, V, qk = 1, 1, Q % n
    for bit in bin(d)[3:]:
        U = U * V % n
        V = (V * V - 2 * qk) % n
        qk = qk * qk % n
        if bit == "1":
            U, V = (U + V), (V + D * U)
            if U % 2:
                U += n
            if V % 2:
                V += n
            U = U // 2 % n
            V = V // 2 % n
            qk = qk * Q % n
    if U == 0 or V == 0:
        return True
    for _ in range(s - 1):
        V = (V * V - 2 * qk) % n
        if V == 0:
            return True
        qk = qk * qk % n
    return False


def is_probable_prime(n: int, seed: int = DEFAULT_SEED, rounds: int = 64) -> bool:
    """Primality screening: BPSW plus seeded Miller-Rabin rounds.

    Below 2^64 a fixed deterministic witness set is used instead (proven
    complete there).  Above, a BPSW pass is followed by ``rounds`` extra
    Miller-Rabin rounds at seeded random bases.
    """
    if n < 2:
        return False
    for q in _SMALL_PRIMES:
        if n == q:
            return True
        if n % q == 0:
            return False
    if n < 1 << 64:
        return all(_miller_rabin(n, b) for b in _MR_BASES_64)
    if not _miller_rabin(n, 2):
        return False
    if not _lucas_strong(n):
        return False
    rng = random.Random(subseed(seed, "mr", n % (1 << 64), n.bit_length()))
    return all(_miller_rabin(n, rng.randrange(2, n - 1)) for _ in range(rounds))


def is_square_int(n: int) -> bool:
    if n < 0:
        return False
    from math import isqrt
    r = isqrt(n)
    return r * r == n


def normalize_factors(N: int, factors) -> dict:
    """Validate a claimed factorization of N and return it as {prime: exp}."""
    if factors is None:
        raise BadFactorizationError("factorization is required")
    items = factors.items() if isinstance(factors, dict) else list(factors)
    fd = {}
    for q, e in items:
        q, e = int(q), int(e)
        if e < 1 or not is_probable_prime(q):
            raise BadFactorizationError(f"{q}^{e} is not a prime power factor")
        fd[q] = fd.get(q, 0) + e
    prod = 1
    for q, e in fd.items():
        prod *= q ** e
    if prod != N:
        raise BadFactorizationError(f"factors multiply to {prod}, not {N}")
    return fd


def _brent_rho(n: int, seed: int) -> int:
    """One nontrivial factor of composite n (Brent's cycle variant)."""
    rng = random.Random(subseed(seed, "rho", n % (1 << 64)))
    while True:
        y, c, m = rng.randrange(1, n), rng.randrange(1, n), 128
        g, r, q = 1, 1, 1
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = gcd(q, n)
                k += m
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = gcd(abs(x - ys), n)
        if g != n:
            return g


def factor_int(n: int, seed: int = DEFAULT_SEED, limit: int = 1 << 96) -> dict:
    """Factor n into primes: trial division then Pollard rho (Brent).

    Intended for moduli up to ~2^96; larger inputs raise, since rho could
    spin for a very long time without a small factor.
    """
    if n < 1:
        raise ValueError("factor_int needs a positive integer")
    if n > limit:
        raise ValueError(f"{n} exceeds the factorization bound")
    fd = {}
    for q in _SMALL_PRIMES:
        while n % q == 0:
            fd[q] = fd.get(q, 0) + 1
            n //= q
    d = _SMALL_PRIMES[-1] + 2
    while d * d <= n and d < 100_000:
        while n % d == 0:
            fd[d] = fd.get(d, 0) + 1
            n //= d
        d += 2
    stack = [n] if n > 1 else []
    while stack:
        m = stack.pop()
        if m == 1:
            continue
        if is_probable_prime(m, seed):
            fd[m] = fd.get(m, 0) + 1
            continue
        from math import isqrt
        s = isqrt(m)
        if s * s == m:
            stack.extend((s, s))
            continue
        g = _brent_rho(m, seed)
        stack.extend((g, m // g))
    return fd


def jacobi(a: int, n: int) -> int:
    """Jacobi symbol (a|n) for odd n > 0."""
    if n <= 0 or n % 2 == 0:
        raise ValueError("jacobi: n must be a positive odd integer")
    a %= n
    result = 1
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


# ---------------------------------------------------------------------------
# prime fields


class PrimeField:
    """The field F_p.  Instances with equal p compare equal."""

    __slots__ = ("p", "_nonresidue", "_square_set")

    def __init__(self, p: int, check: bool = True):
        if check and not is_probable_prime(p):
            raise ValueError(f"{p} is not prime")
        self.p = p
        self._nonresidue = None
        self._square_set = None

    # basic protocol ---------------------------------------------------

    @property
    def order(self) -> int:
        return self.p

    @property
    def char(self) -> int:
        return self.p

    degree = 1

    def of(self, v) -> "FpElt":
        if isinstance(v, FpElt):
            if v.field != self:
                raise ValueError("element of a different field")
            return v
        return FpElt(self, int(v) % self.p)

    @property
    def zero(self):
        return FpElt(self, 0)

    @property
    def one(self):
        return FpElt(self, 1)

    def poly(self, coeffs) -> "Poly":
        return Poly(self, coeffs)

    def elements(self):
        for v in range(self.p):
            yield FpElt(self, v)

    def random(self, rng: random.Random) -> "FpElt":
        return FpElt(self, rng.randrange(self.p))

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("Fp", self.p))

    def __repr__(self):
        return f"F_{self.p}"

    # square machinery --------------------------------------------------

    def nonresidue(self) -> "FpElt":
        """Smallest quadratic non-residue (p odd)."""
        if self._nonresidue is None:
            if self.p == 2:
                raise ValueError("no non-residue in F_2")
            n = 2
            while jacobi(n, self.p) != -1:
                n += 1
            self._nonresidue = FpElt(self, n)
        return self._nonresidue

    def chi(self, v) -> int:
        """Quadratic character: 1 / -1 / 0 on squares / non-squares / zero."""
        v = int(self.of(v))
        if v == 0:
            return 0
        if self.p == 2:
            return 1
        if self._square_set is not None:
            return 1 if v in self._square_set else -1
        return jacobi(v, self.p)

    def build_square_table(self):
        """Precompute the square set for O(1) chi; useful for counting loops."""
        if self._square_set is None and self.p <= (1 << 22):
            self._square_set = {v * v % self.p for v in range(1, self.p)}
        return self


class FpElt:
    __slots__ = ("field", "v")

    def __init__(self, field: PrimeField, v: int):
        self.field = field
        self.v = v

    def _co(self, other):
        if isinstance(other, FpElt):
            if other.field != self.field:
                raise ValueError("mixed fields")
            return other.v
        if isinstance(other, int):
            return other % self.field.p
        return NotImplemented

    def __add__(self, other):
        o = self._co(other)
        if o is NotImplemented:
            return NotImplemented
        return FpElt(self.field, (self.v + o) % self.field.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._co(other)
        if o is NotImplemented:
            return NotImplemented
        return FpElt(self.field, (self.v - o) % self.field.p)

    def __rsub__(self, other):
        o = self._co(other)
        if o is NotImplemented:
            return NotImplemented
        return FpElt(self.field, (o - self.v) % self.field.p)

    def __mul__(self, other):
        o = self._co(other)
        if o is NotImplemented:
            return NotImplemented
        return FpElt(self.field, self.v * o % self.field.p)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._co(other)
        if o is NotImplemented:
            return NotImplemented
        return FpElt(self.field, self.v * pow(o, -1, self.field.p) % self.field.p)

    def __rtruediv__(self, other):
        o = self._co(other)
        if o is NotImplemented:
            return NotImplemented
        return FpElt(self.field, o * pow(self.v, -1, self.field.p) % self.field.p)

    def __pow__(self, e: int):
        if e < 0:
            return FpElt(self.field, pow(pow(self.v, -1, self.field.p), -e, self.field.p))
        return FpElt(self.field, pow(self.v, e, self.field.p))

    def __neg__(self):
        return FpElt(self.field, -self.v % self.field.p)

    def __eq__(self, other):
        if isinstance(other, FpElt):
            return other.field == self.field and other.v == self.v
        if isinstance(other, int):
            return self.v == other % self.field.p
        return NotImplemented

    def __hash__(self):
        return hash((self.field.p, self.v))

    def __bool__(self):
        return self.v != 0

    def __int__(self):
        return self.v

    def __repr__(self):
        return f"{self.v}"

    def inverse(self):
        return FpElt(self.field, pow(self.v, -1, self.field.p))

    def is_square(self) -> bool:
        return self.field.chi(self.v) >= 0

    def frobenius(self):
        return self

    def encode(self) -> int:
        """Canonical integer key, used for deterministic sorting."""
        return self.v


def sqrt_mod(field: PrimeField, a) -> FpElt | None:
    """Tonelli-Shanks square root in F_p, p an odd prime.

    Returns the smaller of the two roots, or None for a non-residue.
    """
    p = field.p
    if p == 2:
        raise ValueError("sqrt_mod requires an odd prime modulus")
    a = int(field.of(a))
    if a == 0:
        return field.zero
    if jacobi(a, p) != 1:
        return None
    if p % 4 == 3:
        r = pow(a, (p + 1) // 4, p)
    else:
        # write p-1 = q 2^s, walk the 2-Sylow with a generator
        q, s = p - 1, 0
        while q % 2 == 0:
            q //= 2
            s += 1
        z = int(field.nonresidue())
        c = pow(z, q, p)
        r = pow(a, (q + 1) // 2, p)
        t = pow(a, q, p)
        m = s
        while t != 1:
            t2, i = t, 0
            while t2 != 1:
                t2 = t2 * t2 % p
                i += 1
            b = pow(c, 1 << (m - i - 1), p)
            r = r * b % p
            c = b * b % p
            t = t * c % p
            m = i
    r = min(r, p - r)
    return FpElt(field, r)


# ---------------------------------------------------------------------------
# extension fields


def _canonical_modulus(p: int, k: int) -> tuple:
    """Lexicographically least monic irreducible of degree k over F_p.

    Candidates x^k + c_{k-1} x^{k-1} + ... + c_0 are scanned in increasing
    order of the integer sum(c_i p^i); the first irreducible wins.
    """
    field = PrimeField(p, check=False)
    n = 0
    while True:
        digits, m = [], n
        for _ in range(k):
            digits.append(m % p)
            m //= p
        if m:
            raise ValueError("no irreducible found in range (impossible)")
        f = Poly(field, digits + [1])
        if _is_irreducible(f):
            return tuple(digits + [1])
        n += 1


class ExtField:
    """F_{p^k} presented as F_p[x]/(m) with a canonical modulus m."""

    __slots__ = ("base", "k", "modulus", "_red", "_square_set")

    def __init__(self, p_or_base, k: int, modulus=None):
        base = p_or_base if isinstance(p_or_base, PrimeField) else PrimeField(p_or_base)
        if k < 2:
            raise ValueError("use PrimeField for degree 1")
        self.base = base
        self.k = k
        if modulus is None:
            modulus = _canonical_modulus(base.p, k)
        else:
            modulus = tuple(int(c) % base.p for c in modulus)
            if len(modulus) != k + 1 or modulus[-1] != 1:
                raise ValueError("modulus must be monic of degree k")
            if not _is_irreducible(Poly(base, modulus)):
                raise ValueError("modulus is reducible")
        self.modulus = modulus
        # reduction table for x^k .. x^{2k-2}
        p = base.p
        red = []
        cur = [(-c) % p for c in modulus[:k]]  # x^k
        red.append(tuple(cur))
        for _ in range(k - 2):
            cur = [0] + cur
            top = cur[k]
            cur = cur[:k]
            if top:
                cur = [(c + top * r) % p for c, r in zip(cur, red[0])]
            red.append(tuple(cur))
        self._red = red
        self._square_set = None

    @property
    def p(self) -> int:
        return self.base.p

    @property
    def char(self) -> int:
        return self.base.p

    @property
    def degree(self) -> int:
        return self.k

    @property
    def order(self) -> int:
        return self.base.p ** self.k

    def of(self, v) -> "ExtElt":
        if isinstance(v, ExtElt):
            if v.field != self:
                raise ValueError("element of a different field")
            return v
        if isinstance(v, FpElt):
            if v.field != self.base:
                raise ValueError("element of a different base field")
            v = v.v
        c = [0] * self.k
        c[0] = int(v) % self.p
        return ExtElt(self, tuple(c))

    def from_coeffs(self, coeffs) -> "ExtElt":
        c = [int(x) % self.p for x in coeffs]
        if len(c) > self.k:
            raise ValueError("too many coefficients")
        c += [0] * (self.k - len(c))
        return ExtElt(self, tuple(c))

    @property
    def zero(self):
        return self.of(0)

    @property
    def one(self):
        return self.of(1)

    def gen(self) -> "ExtElt":
        c = [0] * self.k
        c[1] = 1
        return ExtElt(self, tuple(c))

    def poly(self, coeffs) -> "Poly":
        return Poly(self, coeffs)

    def elements(self):
        p, k = self.p, self.k
        for n in range(p ** k):
            c, m = [], n
            for _ in range(k):
                c.append(m % p)
                m //= p
            yield ExtElt(self, tuple(c))

    def random(self, rng: random.Random) -> "ExtElt":
        return ExtElt(self, tuple(rng.randrange(self.p) for _ in range(self.k)))

    def build_square_table(self):
        if self._square_set is None and self.order <= (1 << 22):
            sq = set()
            for e in self.elements():
                if e.c != (0,) * self.k:
                    sq.add((e * e).c)
            self._square_set = sq
        return self

    def chi(self, e) -> int:
        e = self.of(e)
        if not e:
            return 0
        if self._square_set is not None:
            return 1 if e.c in self._square_set else -1
        return 1 if e ** ((self.order - 1) // 2) == self.one else -1

    def __eq__(self, other):
        return (isinstance(other, ExtField) and other.p == self.p
                and other.modulus == self.modulus)

    def __hash__(self):
        return hash(("Fq", self.p, self.modulus))

    def __repr__(self):
        return f"F_{self.p}^{self.k}"

    def _mulc(self, a: tuple, b: tuple) -> tuple:
        p, k = self.p, self.k
        prod = [0] * (2 * k - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    prod[i + j] += ai * bj
        for idx in range(2 * k - 2, k - 1, -1):
            top = prod[idx] % p
            if top:
                row = self._red[idx - k]  # full reduction of x^idx
                for j in range(k):
                    prod[j] += top * row[j]
            prod[idx] = 0
        return tuple(c % p for c in prod[:k])


class ExtElt:
    __slots__ = ("field", "c")

    def __init__(self, field: ExtField, c: tuple):
        self.field = field
        self.c = c

    def _co(self, other):
        if isinstance(other, ExtElt):
            if other.field != self.field:
                raise ValueError("mixed fields")
            return other.c
        if isinstance(other, (int, FpElt)):
            return self.field.of(other).c
        return NotImplemented

    def __add__(self, other):
        o = self._co(other)
        if o is NotImplemented:
            return NotImplemented
        p = self.field.p
        return ExtElt(self.field, tuple((a + b) % p for a, b in zip(self.c, o)))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._co(other)
        if o is NotImplemented:
            return NotImplemented
        p = self.field.p
        return ExtElt(self.field, tuple((a - b) % p for a, b in zip(self.c, o)))

    def __rsub__(self, other):
        return (-self).__add__(other)

    def __mul__(self, other):
        o = self._co(other)
        if o is NotImplemented:
            return NotImplemented
        return ExtElt(self.field, self.field._mulc(self.c, o))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._co(other)
        if o is NotImplemented:
            return NotImplemented
        return self * ExtElt(self.field, o).inverse()

    def __rtruediv__(self, other):
        inv = self.inverse()
        return inv * other

    def __neg__(self):
        p = self.field.p
        return ExtElt(self.field, tuple(-a % p for a in self.c))

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        result = self.field.one
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, ExtElt):
            return other.field == self.field and other.c == self.c
        if isinstance(other, (int, FpElt)):
            try:
                return self.c == self.field.of(other).c
            except ValueError:
                return False
        return NotImplemented

    def __hash__(self):
        return hash((self.field.p, self.field.modulus, self.c))

    def __bool__(self):
        return any(self.c)

    def __repr__(self):
        return f"ext{list(self.c)}"

    def inverse(self):
        # extended Euclid on coefficient vectors over F_p
        if not self:
            raise ZeroDivisionError("inverse of zero")
        p = self.field.p
        base = self.field.base
        a = Poly(base, self.field.modulus)
        b = Poly(base, self.c)
        t0, t1 = Poly(base, []), Poly(base, [1])
        while b.degree > 0:
            q, r = divmod(a, b)
            a, b = b, r
            t0, t1 = t1, t0 - q * t1
        if b.degree < 0:
            raise ZeroDivisionError("not invertible (modulus not irreducible?)")
        inv_lc = pow(int(b.coeffs[0]), -1, p)
        res = [int(cf) * inv_lc % p for cf in t1.coeffs]
        return self.field.from_coeffs(res)

    def frobenius(self):
        """x -> x^p, the generator of Gal(F_{p^k}/F_p)."""
        return self ** self.field.p

    def in_prime_field(self) -> bool:
        return not any(self.c[1:])

    def to_prime(self) -> FpElt:
        if not self.in_prime_field():
            raise ValueError("element not in the prime subfield")
        return FpElt(self.field.base, self.c[0])

    def is_square(self) -> bool:
        return self.field.chi(self) >= 0

    def encode(self) -> int:
        p = self.field.p
        n = 0
        for a in reversed(self.c):
            n = n * p + a
        return n


# ---------------------------------------------------------------------------
# polynomials over any of the above fields (or duck-typed equivalents)


class Poly:
    """Dense univariate polynomial; coeffs ascending, trailing zeros trimmed."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field, coeffs):
        cs = []
        for c in coeffs:
            cs.append(field.of(c))
        while cs and not cs[-1]:
            cs.pop()
        self.field = field
        self.coeffs = tuple(cs)

    # -- basics --

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def lc(self):
        if self.is_zero:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == self.field.one

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.field == other.field and self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        return hash((self.field, self.coeffs))

    def __repr__(self):
        return f"Poly{[repr(c) for c in self.coeffs]}"

    def encode(self) -> tuple:
        return tuple(c.encode() if hasattr(c, "encode") else c for c in self.coeffs)

    # -- ring operations --

    def __add__(self, other):
        other = self._as_poly(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = out[i] + c
        return Poly(self.field, out)

    __radd__ = __add__

    def __neg__(self):
        return Poly(self.field, [-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-self._as_poly(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, Poly):
            # scalar
            s = self.field.of(other)
            return Poly(self.field, [c * s for c in self.coeffs])
        if other.field != self.field:
            raise ValueError("mixed coefficient fields")
        if self.is_zero or other.is_zero:
            return Poly(self.field, [])
        a, b = self.coeffs, other.coeffs
        out = [self.field.zero] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if not ai:
                continue
            for j, bj in enumerate(b):
                out[i + j] = out[i + j] + ai * bj
        return Poly(self.field, out)

    __rmul__ = __mul__

    def _as_poly(self, other) -> "Poly":
        if isinstance(other, Poly):
            if other.field != self.field:
                raise ValueError("mixed coefficient fields")
            return other
        return Poly(self.field, [other])

    def __divmod__(self, other):
        other = self._as_poly(other)
        if other.is_zero:
            raise ZeroDivisionError("polynomial division by zero")
        q = []
        rem = list(self.coeffs)
        d = other.degree
        inv = self.field.one / other.lc
        while len(rem) - 1 >= d and rem:
            c = rem[-1] * inv
            q.append(c)
            if c:
                off = len(rem) - 1 - d
                for i, oc in enumerate(other.coeffs):
                    rem[off + i] = rem[off + i] - c * oc
            rem.pop()
        q.reverse()
        return Poly(self.field, q), Poly(self.field, rem)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __pow__(self, e: int):
        result = Poly(self.field, [1])
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    # -- calculus and evaluation --

    def derivative(self) -> "Poly":
        return Poly(self.field, [i * c for i, c in enumerate(self.coeffs)][1:])

    def __call__(self, x):
        x = self.field.of(x)
        acc = self.field.zero
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def monic(self) -> "Poly":
        if self.is_zero or self.is_monic():
            return self
        inv = self.field.one / self.lc
        return Poly(self.field, [c * inv for c in self.coeffs])

    def map_field(self, new_field, embed=None) -> "Poly":
        """Recoerce coefficients into new_field (default: via of())."""
        fn = embed or new_field.of
        return Poly(new_field, [fn(c) for c in self.coeffs])

    def gcd(self, other) -> "Poly":
        a, b = self, self._as_poly(other)
        while not b.is_zero:
            a, b = b, a % b
        if a.is_zero:
            return a
        return a.monic()

    def pow_mod(self, e: int, mod: "Poly") -> "Poly":
        result = Poly(self.field, [1]) % mod
        base = self % mod
        while e:
            if e & 1:
                result = result * base % mod
            base = base * base % mod
            e >>= 1
        return result

    def resultant(self, other):
        """Res(self, other) as a field element, by the Euclidean recurrence."""
        F = self.field
        A, B = self, self._as_poly(other)
        if A.is_zero or B.is_zero:
            return F.zero
        s = F.one
        while B.degree > 0:
            R = A % B
            if R.is_zero:
                return F.zero
            sign = -F.one if (A.degree * B.degree) % 2 else F.one
            s = s * sign * B.lc ** (A.degree - R.degree)
            A, B = B, R
        return s * B.lc ** A.degree

    def discriminant(self):
        """disc(f) = (-1)^{n(n-1)/2} Res(f, f') / lc(f)."""
        n = self.degree
        if n < 1:
            raise ValueError("discriminant needs degree >= 1")
        r = self.resultant(self.derivative())
        sign = -1 if (n * (n - 1) // 2) % 2 else 1
        return sign * r / self.lc


# ---------------------------------------------------------------------------
# factorization over finite fields


def _field_order(field) -> int:
    return field.order


def _pth_root_poly(f: Poly) -> Poly:
    """Inverse Frobenius on a polynomial of the form g(x^p)."""
    field = f.field
    p = field.char
    q = field.order
    root_exp = q // p  # a^(q/p) is the p-th root of a in F_q
    out = [f.coeffs[i] ** root_exp for i in range(0, f.degree + 1, p)]
    return Poly(field, out)


def _squarefree_decomposition(f: Poly) -> list:
    """Monic f -> [(g_i, m_i)] with f = prod g_i^{m_i}, g_i squarefree."""
    field = f.field
    p = field.char
    out = {}

    def add(g, m):
        if g.degree > 0:
            out[g] = out.get(g, 0) + m

    def rec(f, scale):
        if f.degree <= 0:
            return
        d = f.derivative()
        if d.is_zero:
            rec(_pth_root_poly(f), scale * p)
            return
        c = f.gcd(d)
        w = (f // c).monic()
        i = 1
        while w.degree > 0:
            y = w.gcd(c)
            fac = (w // y).monic()
            if fac.degree > 0:
                add(fac, i * scale)
            w = y
            c = (c // y).monic()
            i += 1
        if c.degree > 0:
            rec(_pth_root_poly(c), scale * p)

    rec(f.monic(), 1)
    return list(out.items())


def _x_poly(field) -> Poly:
    return Poly(field, [0, 1])


def _distinct_degree(f: Poly) -> list:
    """Squarefree monic f -> [(product_of_factors_of_degree_d, d)]."""
    field = f.field
    q = _field_order(field)
    out = []
    g = f
    h = _x_poly(field) % g
    d = 0
    while g.degree > 2 * (d + 1) - 1 and g.degree > 0:
        d += 1
        h = h.pow_mod(q, g)
        gd = g.gcd(h - _x_poly(field))
        if gd.degree > 0:
            out.append((gd, d))
            g = (g // gd).monic()
            h = h % g
    if g.degree > 0:
        out.append((g, g.degree))
    return out


def _equal_degree_split(f: Poly, d: int, rng: random.Random) -> Poly:
    """Find a proper monic factor of f, all of whose factors have degree d."""
    field = f.field
    q = _field_order(field)
    n = f.degree
    while True:
        r = Poly(field, [field.random(rng) for _ in range(n)])
        if r.degree < 1:
            continue
        g = f.gcd(r)
        if 0 < g.degree < n:
            return g.monic()
        if field.char == 2:
            # trace map sum r^(2^i), i < d*log2(q)
            m = d * (q.bit_length() - 1)
            t = r % f
            acc = t
            for _ in range(m - 1):
                t = t * t % f
                acc = (acc + t) % f
            g = f.gcd(acc)
        else:
            t = r.pow_mod((q ** d - 1) // 2, f)
            g = f.gcd(t - field.one)
        if 0 < g.degree < n:
            return g.monic()


def _equal_degree_all(f: Poly, d: int, rng: random.Random) -> list:
    if f.degree == d:
        return [f]
    g = _equal_degree_split(f, d, rng)
    return _equal_degree_all(g, d, rng) + _equal_degree_all((f // g).monic(), d, rng)


def poly_factor(f: Poly, seed: int = DEFAULT_SEED) -> list:
    """Full factorization over the coefficient field.

    Returns [(irreducible monic factor, multiplicity)], sorted by degree
    then by coefficient encoding; the unit leading coefficient is dropped
    (callers needing it take f.lc themselves).
    """
    if f.is_zero:
        raise ValueError("cannot factor zero")
    if f.degree == 0:
        return []
    rng = random.Random(subseed(seed, "factor", f.field.char,
                                getattr(f.field, "modulus", ()), f.encode()))
    result = []
    for g, mult in _squarefree_decomposition(f):
        for prod, d in _distinct_degree(g):
            for irr in _equal_degree_all(prod, d, rng):
                result.append((irr, mult))
    result.sort(key=lambda t: (t[0].degree, t[0].encode()))
    total = Poly(f.field, [f.lc])
    for g, m in result:
        total = total * g ** m
    if total != f:
        raise AssertionError("factorization failed to multiply back")
    return result


def poly_roots(f: Poly, seed: int = DEFAULT_SEED) -> list:
    """Roots of f in its coefficient field, sorted, with multiplicity."""
    if f.is_zero:
        raise ValueError("zero polynomial")
    field = f.field
    q = _field_order(field)
    # peel the part that splits into distinct linear factors
    sq = {}
    for g, m in _squarefree_decomposition(f.monic()):
        lin = g.gcd(_x_poly(field).pow_mod(q, g) - _x_poly(field))
        if lin.degree > 0:
            sq[lin] = m
    rng = random.Random(subseed(seed, "roots", field.char, f.encode()))
    roots = []
    for lin, m in sq.items():
        for fac in _equal_degree_all(lin, 1, rng):
            roots.extend([-fac.coeffs[0]] * m)
    roots.sort(key=lambda r: r.encode())
    return roots


def _is_irreducible(f: Poly) -> bool:
    """Rabin's test: x^{q^n} = x mod f, and no roots in proper subfields."""
    n = f.degree
    if n <= 0:
        return False
    if n == 1:
        return True
    field = f.field
    q = _field_order(field)
    x = _x_poly(field)
    h = x
    powers = {}
    for i in range(1, n + 1):
        h = h.pow_mod(q, f)
        powers[i] = h
    if powers[n] != x % f:
        return False
    for r in {n // r for r in _prime_divisors(n)}:
        if f.gcd(powers[r] - x).degree > 0:
            return False
    return True


def _prime_divisors(n: int) -> list:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def resultant(f: Poly, g: Poly):
    return f.resultant(g)


def splitting_field(f: Poly, seed: int = DEFAULT_SEED):
    """Smallest F_{p^k} where f splits, plus the full root list there.

    Returns (k, field, roots); field is the base PrimeField when k = 1,
    else the canonical ExtField.  Roots repeat with multiplicity and come
    sorted by encoding.  Capped at deg f <= 4, which keeps k <= 6.
    """
    if f.degree > 4:
        raise ValueError("splitting_field supports degree <= 4")
    if f.degree < 1:
        raise ValueError("need a nonconstant polynomial")
    base = f.field
    if not isinstance(base, PrimeField):
        raise ValueError("splitting_field expects a prime-field polynomial")
    facs = poly_factor(f, seed)
    k = 1
    for g, _ in facs:
        k = k * g.degree // gcd(k, g.degree)
    if k == 1:
        roots = poly_roots(f, seed)
        return 1, base, roots
    ext = ExtField(base, k)
    roots = []
    for g, m in facs:
        ge = g.map_field(ext)
        for r in poly_roots(ge, seed):
            roots.extend([r] * m)
    roots.sort(key=lambda r: r.encode())
    return k, ext, roots
