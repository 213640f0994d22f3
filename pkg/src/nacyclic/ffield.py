"""Exact arithmetic in small finite fields GF(p^n).

Elements are stored as an integer code ``sum(c_i * p**i)`` of their
coefficient vector over the power basis of the defining modulus.  For the
field sizes in scope (q <= 2**16) multiplication goes through log/exp tables
built on first use; addition is digit-wise (XOR when p = 2).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from math import gcd
from typing import Iterator, NamedTuple, Sequence

from .errors import (
    AllElementsArePowers,
    DegreeMismatch,
    DivisionByZero,
    NotPrime,
    ReducibleModulus,
    SpecMismatch,
    TooLarge,
    ZeroInput,
)

MAX_DEFAULT_DEGREE = 8
MAX_TABLE_ORDER = 1 << 16


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def prime_factors(n: int) -> list[int]:
    out = []
    f = 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out


def prime_power(q: int) -> tuple[int, int]:
    """Return (p, n) with q = p**n, or raise NotPrime."""
    for p in range(2, q + 1):
        if q % p == 0:
            n = 0
            r = q
            while r % p == 0:
                r //= p
                n += 1
            if r != 1 or not is_prime(p):
                break
            return p, n
    raise NotPrime(f"{q} is not a prime power")


# -- polynomials over F_p, coefficient lists low-degree first -----------------

def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _pmod_p(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    a = [x % p for x in a]
    _trim(a)
    db = len(b) - 1
    inv = pow(b[-1], -1, p)
    while len(a) - 1 >= db and a:
        c = a[-1] * inv % p
        shift = len(a) - 1 - db
        for i, bi in enumerate(b):
            a[shift + i] = (a[shift + i] - c * bi) % p
        _trim(a)
    return a


def _has_factor_of_degree(poly: Sequence[int], d: int, p: int) -> bool:
    for tail in itertools.product(range(p), repeat=d):
        if _pmod_p(poly, list(tail) + [1], p) == []:
            return True
    return False


def is_irreducible_mod_p(poly: Sequence[int], p: int) -> bool:
    """Exhaustive factor test; fine for the tiny degrees in scope."""
    n = len(poly) - 1
    if n < 1:
        return False
    if n == 1:
        return True
    return not any(_has_factor_of_degree(poly, d, p) for d in range(1, n // 2 + 1))


def least_irreducible(p: int, n: int) -> tuple[int, ...]:
    """Least monic irreducible of degree n, ordered low-degree coefficient first."""
    if n == 1:
        return (0, 1)
    for tail in itertools.product(range(p), repeat=n):
        # product() varies the last slot fastest, so c0 is the most significant
        coeffs = tuple(tail) + (1,)
        if coeffs[0] == 0:
            continue
        if is_irreducible_mod_p(coeffs, p):
            return coeffs
    raise ReducibleModulus(f"no irreducible of degree {n} over F_{p}")  # unreachable


# -- field spec ---------------------------------------------------------------

class _Tables(NamedTuple):
    exp: list[int]
    log: list[int]
    neg: list[int]
    add: list[list[int]] | None


@dataclass(frozen=True)
class FqSpec:
    """The field GF(p^n) = F_p[x]/(modulus); modulus is monic, low-degree first."""

    p: int
    n: int
    modulus: tuple[int, ...]

    def __post_init__(self):
        if not is_prime(self.p):
            raise NotPrime(f"{self.p} is not prime")
        if self.n < 1 or len(self.modulus) != self.n + 1:
            raise DegreeMismatch(f"modulus of degree {len(self.modulus) - 1} for n = {self.n}")
        if self.modulus[-1] % self.p != 1:
            raise DegreeMismatch("modulus must be monic")
        if any(not 0 <= c < self.p for c in self.modulus):
            object.__setattr__(self, "modulus", tuple(c % self.p for c in self.modulus))
        if not is_irreducible_mod_p(self.modulus, self.p):
            raise ReducibleModulus(f"{list(self.modulus)} is reducible over F_{self.p}")
        if self.q > MAX_TABLE_ORDER:
            raise TooLarge(f"field order {self.q} exceeds {MAX_TABLE_ORDER}")

    @property
    def q(self) -> int:
        return self.p ** self.n

    def __repr__(self) -> str:
        if self.n == 1:
            return f"GF({self.p})"
        return f"GF({self.p}^{self.n}; modulus={list(self.modulus)})"

    __str__ = __repr__

    # elements

    def __call__(self, value) -> "FqElem":
        if isinstance(value, FqElem):
            if value.spec != self:
                if value.spec.p == self.p and value.code < self.p:
                    return FqElem(self, value.code)
                raise SpecMismatch(f"element of {value.spec} used in {self}")
            return value
        if isinstance(value, int):
            return FqElem(self, value % self.p)
        coeffs = list(value)
        if len(coeffs) > self.n:
            raise DegreeMismatch(f"{len(coeffs)} coefficients for a degree-{self.n} field")
        return FqElem(self, self._encode(coeffs))

    def zero(self) -> "FqElem":
        return FqElem(self, 0)

    def one(self) -> "FqElem":
        return FqElem(self, 1)

    def gen(self) -> "FqElem":
        """The class of x in F_p[x]/(modulus)."""
        if self.n == 1:
            return FqElem(self, (-self.modulus[0]) % self.p)
        return FqElem(self, self.p)

    def elements(self) -> Iterator["FqElem"]:
        """All elements, in the canonical total order."""
        for code in self._ordered_codes:
            yield FqElem(self, code)

    def units(self) -> Iterator["FqElem"]:
        for code in self._ordered_codes[1:]:
            yield FqElem(self, code)

    # coding helpers

    def _encode(self, coeffs: Sequence[int]) -> int:
        code = 0
        for c in reversed(coeffs):
            code = code * self.p + (c % self.p)
        return code

    def _decode(self, code: int) -> tuple[int, ...]:
        out = []
        for _ in range(self.n):
            code, r = divmod(code, self.p)
            out.append(r)
        return tuple(out)

    @cached_property
    def _ordered_codes(self) -> list[int]:
        return sorted(range(self.q), key=self._decode)

    @cached_property
    def _rank(self) -> list[int]:
        rank = [0] * self.q
        for i, code in enumerate(self._ordered_codes):
            rank[code] = i
        return rank

    def _polymul_code(self, a: int, b: int) -> int:
        p, n = self.p, self.n
        x, y = self._decode(a), self._decode(b)
        prod = [0] * (2 * n - 1)
        for i, xi in enumerate(x):
            if xi:
                for j, yj in enumerate(y):
                    prod[i + j] += xi * yj
        for k in range(2 * n - 2, n - 1, -1):
            c = prod[k] % p
            if c:
                for i in range(n):
                    prod[k - n + i] -= c * self.modulus[i]
        return self._encode(prod[:n])

    def _addcode_slow(self, a: int, b: int) -> int:
        if self.p == 2:
            return a ^ b
        x, y = self._decode(a), self._decode(b)
        return self._encode([u + v for u, v in zip(x, y)])

    @cached_property
    def _generator_code(self) -> int:
        order = self.q - 1
        factors = prime_factors(order)
        for code in self._ordered_codes[1:]:
            ok = True
            for f in factors:
                if self._pow_slow(code, order // f) == 1:
                    ok = False
                    break
            if ok:
                return code
        raise ZeroInput("field has no generator")  # unreachable

    def _pow_slow(self, code: int, e: int) -> int:
        result, base = 1, code
        while e:
            if e & 1:
                result = self._polymul_code(result, base)
            base = self._polymul_code(base, base)
            e >>= 1
        return result

    @cached_property
    def _tables(self) -> _Tables:
        q = self.q
        g = self._generator_code
        exp = [0] * (2 * (q - 1))
        log = [-1] * q
        x = 1
        for i in range(q - 1):
            exp[i] = x
            log[x] = i
            x = self._polymul_code(x, g)
        for i in range(q - 1, 2 * (q - 1)):
            exp[i] = exp[i - (q - 1)]
        neg = [self._encode([-c for c in self._decode(c)]) for c in range(q)]
        add = None
        if self.p != 2 and q <= 256:
            add = [[self._addcode_slow(a, b) for b in range(q)] for a in range(q)]
        return _Tables(exp, log, neg, add)


def fq_make(p: int, n: int = 1, modulus: Sequence[int] | None = None) -> FqSpec:
    """Build GF(p^n).  Without a modulus the least monic irreducible is used."""
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if n < 1:
        raise DegreeMismatch(f"degree must be positive, got {n}")
    if modulus is None:
        if n > MAX_DEFAULT_DEGREE:
            raise TooLarge(f"default modulus search limited to n <= {MAX_DEFAULT_DEGREE}")
        modulus = least_irreducible(p, n)
    modulus = tuple(int(c) % p for c in modulus)
    if len(modulus) - 1 != n:
        raise DegreeMismatch(f"modulus has degree {len(modulus) - 1}, expected {n}")
    return FqSpec(p, n, modulus)


def gf(q: int) -> FqSpec:
    p, n = prime_power(q)
    return fq_make(p, n)


# -- elements -----------------------------------------------------------------

class FqElem:
    __slots__ = ("spec", "code")

    def __init__(self, spec: FqSpec, code: int):
        self.spec = spec
        self.code = code

    @property
    def coeffs(self) -> tuple[int, ...]:
        return self.spec._decode(self.code)

    def is_zero(self) -> bool:
        return self.code == 0

    def __bool__(self) -> bool:
        return self.code != 0

    def _coerce(self, other) -> "FqElem | None":
        if isinstance(other, FqElem):
            if other.spec is not self.spec and other.spec != self.spec:
                raise SpecMismatch(f"{other.spec} vs {self.spec}")
            return other
        if isinstance(other, int):
            return FqElem(self.spec, other % self.spec.p)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        s = self.spec
        if s.p == 2:
            return FqElem(s, self.code ^ o.code)
        t = s._tables.add
        if t is not None:
            return FqElem(s, t[self.code][o.code])
        return FqElem(s, s._addcode_slow(self.code, o.code))

    __radd__ = __add__

    def __neg__(self):
        return FqElem(self.spec, self.spec._tables.neg[self.code])

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if self.code == 0 or o.code == 0:
            return FqElem(self.spec, 0)
        t = self.spec._tables
        return FqElem(self.spec, t.exp[t.log[self.code] + t.log[o.code]])

    __rmul__ = __mul__

    def inverse(self) -> "FqElem":
        if self.code == 0:
            raise DivisionByZero("inverse of 0 in a finite field")
        t = self.spec._tables
        q1 = self.spec.q - 1
        return FqElem(self.spec, t.exp[(q1 - t.log[self.code]) % q1])

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, e: int):
        if self.code == 0:
            if e < 0:
                raise DivisionByZero("0 to a negative power")
            return FqElem(self.spec, 1 if e == 0 else 0)
        t = self.spec._tables
        q1 = self.spec.q - 1
        return FqElem(self.spec, t.exp[(t.log[self.code] * e) % q1])

    def log(self) -> int:
        """Discrete log relative to fq_generator(spec)."""
        if self.code == 0:
            raise ZeroInput("discrete log of 0")
        return self.spec._tables.log[self.code]

    def frobenius(self, k: int = 1) -> "FqElem":
        return self ** (self.spec.p ** k)

    def sqrt(self) -> "FqElem | None":
        """A square root if one exists (least under the canonical order)."""
        if self.code == 0:
            return self
        if self.spec.p == 2:
            return self ** (self.spec.q // 2)
        lg = self.log()
        if lg % 2:
            return None
        r = FqElem(self.spec, self.spec._tables.exp[lg // 2])
        return min(r, -r, key=FqElem.key)

    def trace(self) -> "FqElem":
        """Absolute trace to the prime field."""
        acc = self
        x = self
        for _ in range(self.spec.n - 1):
            x = x ** self.spec.p
            acc = acc + x
        return acc

    def key(self) -> int:
        """Position in the canonical total order (lexicographic, low-degree first)."""
        return self.spec._rank[self.code]

    def __lt__(self, other: "FqElem") -> bool:
        return self.key() < other.key()

    def __eq__(self, other) -> bool:
        if isinstance(other, FqElem):
            return self.code == other.code and (other.spec is self.spec or other.spec == self.spec)
        if isinstance(other, int):
            return self.code == other % self.spec.p
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.spec.p, self.spec.modulus, self.code))

    def __int__(self) -> int:
        if self.code >= self.spec.p:
            raise ValueError(f"{self!r} is not in the prime field")
        return self.code

    def __repr__(self) -> str:
        if self.spec.n == 1:
            return str(self.code)
        return "[" + ",".join(str(c) for c in self.coeffs) + "]"


# -- operations ---------------------------------------------------------------

class PowerClass(NamedTuple):
    is_nth_power: bool
    class_index: int


def fq_arith(op: str, x: FqElem, y=None) -> FqElem:
    if op == "add":
        return x + y
    if op == "sub":
        return x - y
    if op == "mul":
        return x * y
    if op == "inv":
        return x.inverse()
    if op == "div":
        return x / y
    if op == "pow":
        return x ** int(y)
    raise ValueError(f"unknown operation {op!r}")


def fq_generator(spec: FqSpec) -> FqElem:
    """Least primitive element under the canonical order."""
    return FqElem(spec, spec._generator_code)


def fq_power_class(x: FqElem, n: int) -> PowerClass:
    if x.is_zero():
        raise ZeroInput("power class of 0")
    g = gcd(n, x.spec.q - 1)
    idx = x.log() % g
    return PowerClass(idx == 0, idx)


def fq_nonresidue(spec: FqSpec, n: int) -> FqElem:
    """Least element that is not an n-th power."""
    if n < 2 or gcd(n, spec.q - 1) == 1:
        raise AllElementsArePowers(f"every element of {spec} is a {n}-th power")
    for x in spec.units():
        if not fq_power_class(x, n).is_nth_power:
            return x
    raise AllElementsArePowers(f"every element of {spec} is a {n}-th power")  # unreachable


def element_of_order(spec: FqSpec, m: int) -> FqElem:
    """Least element of exact multiplicative order m."""
    if (spec.q - 1) % m:
        raise ValueError(f"{m} does not divide {spec.q - 1}")
    for x in spec.units():
        if multiplicative_order(x) == m:
            return x
    raise ValueError(f"no element of order {m}")  # unreachable


def multiplicative_order(x: FqElem) -> int:
    q1 = x.spec.q - 1
    return q1 // gcd(x.log(), q1)
