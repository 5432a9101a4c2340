"""Exact arithmetic in finite fields GF(p^k).

Elements are plain integers in [0, q).  The element with base-p digits
(a_0, ..., a_{k-1}), least significant first, represents the polynomial
a_0 + a_1 x + ... + a_{k-1} x^{k-1} reduced modulo the field modulus.
Index 0 is the additive identity and index 1 the multiplicative identity.
The modulus is the monic irreducible polynomial of degree k over GF(p)
whose low-degree-first coefficient list is smallest as a base-p integer;
for k = 1 it is the polynomial x.  This choice is deterministic, so equal
(p, k) always means an identical field.

Moduli produced for the first few extension fields:

    GF(4)  : x^2 + x + 1
    GF(8)  : x^3 + x + 1
    GF(9)  : x^2 + 1
    GF(16) : x^4 + x + 1
    GF(25) : x^2 + 2
    GF(27) : x^3 + 2x + 1
"""

from __future__ import annotations

from .errors import LimitExceededError, MixedFieldsError, NonPrimeError

DEFAULT_ORDER_LIMIT = 1 << 20
# below this order, full q x q multiplication/addition tables are kept
_TABLE_LIMIT = 256


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p < 4:
        return True
    if p % 2 == 0:
        return False
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


def _digits(index: int, p: int, k: int) -> tuple[int, ...]:
    out = []
    for _ in range(k):
        out.append(index % p)
        index //= p
    return tuple(out)


def _index(digits, p: int) -> int:
    out = 0
    for d in reversed(digits):
        out = out * p + d
    return out


def _poly_trim(coeffs) -> tuple[int, ...]:
    n = len(coeffs)
    while n > 0 and coeffs[n - 1] == 0:
        n -= 1
    return tuple(coeffs[:n])


def _poly_mul(a, b, p):
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return _poly_trim(out)


def _poly_mod(a, m, p):
    # m monic; returns a mod m
    a = list(a)
    dm = len(m) - 1
    while len(a) > dm:
        c = a[-1]
        if c:
            shift = len(a) - 1 - dm
            for i, mi in enumerate(m):
                a[shift + i] = (a[shift + i] - c * mi) % p
        a.pop()
    return _poly_trim(a)


def _is_irreducible(poly, p) -> bool:
    # trial division by every monic polynomial of degree 1..deg/2
    deg = len(poly) - 1
    for d in range(1, deg // 2 + 1):
        for c in range(p**d):
            divisor = _digits(c, p, d) + (1,)
            if not _poly_mod(poly, divisor, p):
                return False
    return True


def _smallest_irreducible(p: int, k: int) -> tuple[int, ...]:
    if k == 1:
        return (0, 1)
    for c in range(p**k):
        cand = _digits(c, p, k) + (1,)
        if _is_irreducible(cand, p):
            return cand
    raise ValueError(f"no irreducible polynomial of degree {k} over GF({p})")


class Field:
    """The finite field GF(p^k) with a canonical modulus.

    All operations take and return integer element indices.  Instances
    are immutable after construction and safe to share between threads
    and worker processes.
    """

    def __init__(self, p: int, k: int = 1, order_limit: int = DEFAULT_ORDER_LIMIT):
        if not is_prime(p):
            raise NonPrimeError(f"characteristic {p} is not prime")
        if k < 1:
            raise ValueError(f"extension degree must be >= 1, got {k}")
        q = p**k
        if q > order_limit:
            raise LimitExceededError(f"field order {q} exceeds limit {order_limit}")
        self.p = p
        self.k = k
        self.q = q
        self.modulus = _smallest_irreducible(p, k)
        self._mul_table = None
        self._inv_table = None
        if q <= _TABLE_LIMIT and k > 1:
            self._build_tables()

    def _build_tables(self):
        q, p, k, m = self.q, self.p, self.k, self.modulus
        polys = [_poly_trim(_digits(i, p, k)) for i in range(q)]
        mul = [[0] * q for _ in range(q)]
        for a in range(q):
            for b in range(a, q):
                v = _index(_poly_mod(_poly_mul(polys[a], polys[b], p), m, p), p)
                mul[a][b] = v
                mul[b][a] = v
        inv = [0] * q
        for a in range(1, q):
            for b in range(1, q):
                if mul[a][b] == 1:
                    inv[a] = b
                    break
        self._mul_table = mul
        self._inv_table = inv

    # -- identity ---------------------------------------------------------

    def __repr__(self) -> str:
        return f"Field(p={self.p}, k={self.k})"

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Field)
            and self.p == other.p
            and self.k == other.k
        )

    def __hash__(self) -> int:
        return hash((Field, self.p, self.k))

    # -- element access ----------------------------------------------------

    def elements(self) -> range:
        return range(self.q)

    def check(self, a: int) -> int:
        if not isinstance(a, int) or isinstance(a, bool) or not 0 <= a < self.q:
            raise MixedFieldsError(f"{a!r} is not an element index of {self!r}")
        return a

    # -- arithmetic ---------------------------------------------------------

    def add(self, a: int, b: int) -> int:
        self.check(a)
        self.check(b)
        if self.k == 1:
            return (a + b) % self.p
        p = self.p
        out = 0
        weight = 1
        for _ in range(self.k):
            out += ((a + b) % p) * weight
            a //= p
            b //= p
            weight *= p
        return out

    def neg(self, a: int) -> int:
        self.check(a)
        if self.k == 1:
            return (-a) % self.p
        p = self.p
        out = 0
        weight = 1
        for _ in range(self.k):
            out += ((-a) % p) * weight
            a //= p
            weight *= p
        return out

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        self.check(a)
        self.check(b)
        if self.k == 1:
            return (a * b) % self.p
        if self._mul_table is not None:
            return self._mul_table[a][b]
        p, m = self.p, self.modulus
        pa = _poly_trim(_digits(a, p, self.k))
        pb = _poly_trim(_digits(b, p, self.k))
        return _index(_poly_mod(_poly_mul(pa, pb, p), m, p), p)

    def inv(self, a: int) -> int:
        self.check(a)
        if a == 0:
            raise ZeroDivisionError("finite field inverse of zero")
        if self.k == 1:
            return pow(a, self.p - 2, self.p)
        if self._inv_table is not None:
            return self._inv_table[a]
        return self.pow(a, self.q - 2)

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        self.check(a)
        if e < 0:
            a = self.inv(a)
            e = -e
        out = 1
        base = a
        while e:
            if e & 1:
                out = self.mul(out, base)
            base = self.mul(base, base)
            e >>= 1
        return out


def arith(field: Field, kind: str, a: int, b: int | None = None) -> int:
    """Dispatch a named field operation; ``b`` is the second operand or,
    for ``pow``, the integer exponent."""
    if kind in ("neg", "inv"):
        if b is not None:
            raise ValueError(f"{kind} takes one operand")
        return getattr(field, kind)(a)
    if kind in ("add", "sub", "mul", "div"):
        return getattr(field, kind)(a, field.check(b))
    if kind == "pow":
        if not isinstance(b, int) or isinstance(b, bool):
            raise ValueError("pow exponent must be an integer")
        return field.pow(a, b)
    raise ValueError(f"unknown operation {kind!r}")


_FIELD_CACHE: dict[tuple[int, int], Field] = {}


def field_make(p: int, k: int = 1, order_limit: int = DEFAULT_ORDER_LIMIT) -> Field:
    """Return the canonical GF(p^k); repeated calls share one instance."""
    key = (p, k)
    f = _FIELD_CACHE.get(key)
    if f is None or f.q > order_limit:
        f = Field(p, k, order_limit)
        _FIELD_CACHE[key] = f
    return f
