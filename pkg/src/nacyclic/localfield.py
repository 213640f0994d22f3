"""Truncated arithmetic in Q_p and F_q((t)) with explicit precision.

A nonzero element is ``pi^v * u`` where ``u`` is a unit known to ``N`` digits.
Zeros come in two flavours: the exact zero, and ``O(pi^k)``, a value known
only to vanish modulo ``pi^k``.  Precision follows the usual rules: sums are
known modulo the smaller absolute precision, products and quotients keep the
smaller relative precision.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from math import gcd
from typing import NamedTuple, Sequence

from .errors import (
    DivisionByZero,
    HenselHypothesisFails,
    InsufficientInputPrecision,
    InsufficientPrecision,
    PrecisionExhausted,
    ResidualCharTwo,
    SpecMismatch,
    UnsupportedCase,
    WildCase,
    ZeroInput,
)
from .ffield import FqElem, FqSpec, element_of_order, fq_generator, fq_make, fq_nonresidue, fq_power_class, gf

DEFAULT_PRECISION = 12


# -- unit-series rings ----------------------------------------------------------
#
# A "series" of length L is the truncation of a power series to L digits.  The
# p-adic ring stores it as an int in [0, p^L); the Laurent ring as a tuple of
# FqElem.  Both expose the same small interface used by LocalElem.

class _PadicRing:
    def __init__(self, p: int, residue: FqSpec):
        self.p = p
        self.residue = residue

    def mod(self, L):
        return self.p ** L

    def truncate(self, a, L):
        return a % self.p ** L

    def pad(self, a, L):
        return a

    def add(self, a, b, L):
        return (a + b) % self.p ** L

    def neg(self, a, L):
        return (-a) % self.p ** L

    def mul(self, a, b, L):
        return a * b % self.p ** L

    def inv(self, a, L):
        return pow(a, -1, self.p ** L)

    def shift_up(self, a, k, L):
        return a * self.p ** k % self.p ** L

    def shift_down(self, a, k):
        return a // self.p ** k

    def val(self, a, L):
        if a % self.p ** L == 0:
            return None
        v = 0
        while a % self.p == 0:
            a //= self.p
            v += 1
        return v

    def digits(self, a, L):
        out = []
        for _ in range(L):
            a, r = divmod(a, self.p)
            out.append(FqElem(self.residue, r))
        return tuple(out)

    def from_digits(self, ds):
        a = 0
        for d in reversed(ds):
            a = a * self.p + (d.code if isinstance(d, FqElem) else int(d) % self.p)
        return a

    def lead(self, a):
        return FqElem(self.residue, a % self.p)

    def zero(self, L):
        return 0

    def one(self, L):
        return 1 % self.p ** L

    def const(self, d: FqElem, L):
        return d.code


class _LaurentRing:
    def __init__(self, residue: FqSpec):
        self.residue = residue
        self._zero = residue.zero()

    def truncate(self, a, L):
        return a[:L]

    def pad(self, a, L):
        if len(a) >= L:
            return a
        return a + (self._zero,) * (L - len(a))

    def add(self, a, b, L):
        return tuple(x + y for x, y in zip(self.pad(a, L)[:L], self.pad(b, L)[:L]))

    def neg(self, a, L):
        return tuple(-x for x in a[:L])

    def mul(self, a, b, L):
        out = [self._zero] * L
        for i in range(min(L, len(a))):
            ai = a[i]
            if ai.is_zero():
                continue
            for j in range(min(L - i, len(b))):
                bj = b[j]
                if not bj.is_zero():
                    out[i + j] = out[i + j] + ai * bj
        return tuple(out)

    def inv(self, a, L):
        b0 = a[0].inverse()
        b = [b0]
        for k in range(1, L):
            s = self._zero
            for i in range(1, min(k, len(a) - 1) + 1):
                if not a[i].is_zero():
                    s = s + a[i] * b[k - i]
            b.append(-(b0 * s))
        return tuple(b)

    def shift_up(self, a, k, L):
        return ((self._zero,) * k + tuple(a))[:L]

    def shift_down(self, a, k):
        return tuple(a[k:])

    def val(self, a, L):
        for i, x in enumerate(a[:L]):
            if not x.is_zero():
                return i
        return None

    def digits(self, a, L):
        return tuple(self.pad(a, L)[:L])

    def from_digits(self, ds):
        return tuple(self.residue(d) for d in ds)

    def lead(self, a):
        return a[0]

    def zero(self, L):
        return (self._zero,) * L

    def one(self, L):
        return (self.residue.one(),) + (self._zero,) * (L - 1)

    def const(self, d: FqElem, L):
        return (d,) + (self._zero,) * (L - 1)


# -- field spec -------------------------------------------------------------------

@dataclass(frozen=True)
class LocalFieldSpec:
    """Q_p (kind "padic") or F_q((t)) (kind "laurent")."""

    kind: str
    residue: FqSpec
    default_precision: int = DEFAULT_PRECISION

    def __post_init__(self):
        if self.kind not in ("padic", "laurent"):
            raise ValueError(f"unknown local field kind {self.kind!r}")
        if self.kind == "padic" and self.residue.n != 1:
            raise UnsupportedCase("only Q_p itself is supported as a p-adic base field")
        if self.default_precision < 3:
            raise ValueError("default precision must be at least 3")

    @property
    def p(self) -> int:
        return self.residue.p

    @property
    def q(self) -> int:
        return self.residue.q

    @property
    def is_padic(self) -> bool:
        return self.kind == "padic"

    @property
    def symbol(self) -> str:
        return str(self.p) if self.is_padic else "t"

    def __repr__(self) -> str:
        if self.is_padic:
            return f"Q{self.p}"
        return f"F{self.q}((t))"

    __str__ = __repr__

    @cached_property
    def ring(self):
        if self.is_padic:
            return _PadicRing(self.p, self.residue)
        return _LaurentRing(self.residue)

    # constructors

    def __call__(self, value, precision: int | None = None) -> "LocalElem":
        """Embed an int, Fraction, residue element or LocalElem."""
        if isinstance(value, LocalElem):
            if value.spec != self:
                raise SpecMismatch(f"element of {value.spec} used in {self}")
            return value
        N = precision or self.default_precision
        if isinstance(value, FqElem):
            if value.is_zero():
                return self.zero()
            if self.is_padic:
                return LocalElem(self, 0, value.code, N)
            return LocalElem(self, 0, self.ring.const(self.residue(value), N), N)
        if isinstance(value, (int, Fraction)):
            value = Fraction(value)
            if value == 0:
                return self.zero()
            if not self.is_padic:
                if value.denominator % self.p == 0:
                    raise DivisionByZero(f"{value} is undefined in characteristic {self.p}")
                r = value.numerator * pow(value.denominator, -1, self.p) % self.p
                if r == 0:
                    return self.zero()
                return LocalElem(self, 0, self.ring.const(self.residue(r), N), N)
            num, den = value.numerator, value.denominator
            v = 0
            while num % self.p == 0:
                num //= self.p
                v += 1
            while den % self.p == 0:
                den //= self.p
                v -= 1
            mod = self.p ** N
            return LocalElem(self, v, num * pow(den, -1, mod) % mod, N)
        raise TypeError(f"cannot embed {value!r} in {self}")

    def zero(self) -> "LocalElem":
        return LocalElem(self, None, None, 0)

    def inexact_zero(self, absprec: int) -> "LocalElem":
        return LocalElem(self, None, None, 0, absprec)

    def one(self, precision: int | None = None) -> "LocalElem":
        N = precision or self.default_precision
        return LocalElem(self, 0, self.ring.one(N), N)

    def uniformizer(self, precision: int | None = None) -> "LocalElem":
        N = precision or self.default_precision
        return LocalElem(self, 1, self.ring.one(N), N)

    def from_digits(self, v: int, digits: Sequence, precision: int | None = None) -> "LocalElem":
        """pi^v * (d0 + d1 pi + ...), known to ``precision`` digits (default len(digits))."""
        ds = [self.residue(d) for d in digits]
        N = len(ds) if precision is None else precision
        if len(ds) < N:
            ds = ds + [self.residue.zero()] * (N - len(ds))
        ds = ds[:N]
        k = next((i for i, d in enumerate(ds) if not d.is_zero()), None)
        if k is None:
            return self.inexact_zero(v + N)
        ds = ds[k:]
        return LocalElem(self, v + k, self.ring.from_digits(ds), len(ds))

    def from_terms(self, terms: dict, absprec: int) -> "LocalElem":
        """Element sum(c * pi^e) known modulo pi^absprec."""
        live = {e: self.residue(c) for e, c in terms.items() if e < absprec and not self.residue(c).is_zero()}
        if not live:
            return self.inexact_zero(absprec)
        v = min(live)
        return self.from_digits(v, [live.get(v + i, 0) for i in range(absprec - v)])


def qp(p: int, precision: int = DEFAULT_PRECISION) -> LocalFieldSpec:
    return LocalFieldSpec("padic", fq_make(p, 1), precision)


def laurent(residue: FqSpec | int, precision: int = DEFAULT_PRECISION) -> LocalFieldSpec:
    if isinstance(residue, int):
        residue = gf(residue)
    return LocalFieldSpec("laurent", residue, precision)


# -- elements -------------------------------------------------------------------------

class LocalElem:
    """``pi^v * u`` with u a unit series of N digits, or an (inexact) zero."""

    __slots__ = ("spec", "v", "u", "N", "_absprec")
    __hash__ = None

    def __init__(self, spec: LocalFieldSpec, v, u, N, absprec=None):
        self.spec = spec
        self.v = v
        self.u = u
        self.N = N
        self._absprec = absprec

    # basic queries

    def is_zero(self) -> bool:
        return self.v is None

    def is_exact_zero(self) -> bool:
        return self.v is None and self._absprec is None

    @property
    def valuation(self) -> int:
        if self.v is None:
            raise ZeroInput("valuation of zero")
        return self.v

    def valuation_or_none(self):
        return self.v

    @property
    def precision(self) -> int:
        """Number of known digits (0 for zeros)."""
        return self.N

    @property
    def absprec(self):
        """The element is known modulo pi^absprec (None for the exact zero)."""
        if self.v is None:
            return self._absprec
        return self.v + self.N

    @property
    def digits(self) -> tuple[FqElem, ...]:
        if self.v is None:
            return ()
        return self.spec.ring.digits(self.u, self.N)

    def leading_digit(self) -> FqElem:
        if self.v is None:
            raise ZeroInput("leading digit of zero")
        return self.spec.ring.lead(self.u)

    def unit_part(self) -> "LocalElem":
        if self.v is None:
            raise ZeroInput("unit part of zero")
        return LocalElem(self.spec, 0, self.u, self.N)

    def is_unit(self) -> bool:
        return self.v == 0

    def residue(self) -> FqElem:
        """Image in the residue field; requires v >= 0."""
        if self.v is None:
            if self._absprec is not None and self._absprec < 1:
                raise InsufficientPrecision("residue of O(pi^k) with k < 1")
            return self.spec.residue.zero()
        if self.v < 0:
            raise ValueError("element is not integral")
        return self.leading_digit() if self.v == 0 else self.spec.residue.zero()

    def with_absprec(self, k: int) -> "LocalElem":
        """Truncate, or extend with zero digits (treating the known part as exact)."""
        if self.v is None:
            if self._absprec is None:
                return self
            return self.spec.inexact_zero(k)
        L = k - self.v
        if L <= 0:
            return self.spec.inexact_zero(k)
        r = self.spec.ring
        return LocalElem(self.spec, self.v, r.truncate(r.pad(self.u, L), L), L)

    def with_precision(self, N: int) -> "LocalElem":
        if self.v is None:
            return self
        return self.with_absprec(self.v + N)

    def key(self):
        """Canonical order: 0 first, then larger valuation, then digit sequence."""
        if self.v is None:
            return (0,)
        return (1, -self.v, tuple(d.key() for d in self.digits))

    def to_fraction(self) -> Fraction:
        """Rational representative sum(d_i p^(v+i)) of a p-adic element."""
        if not self.spec.is_padic:
            raise TypeError("only p-adic elements have rational representatives")
        if self.v is None:
            return Fraction(0)
        return Fraction(self.u) * Fraction(self.spec.p) ** self.v

    # arithmetic

    def _coerce(self, other, additive: bool = True) -> "LocalElem | None":
        if isinstance(other, LocalElem):
            if other.spec is not self.spec and other.spec != self.spec:
                raise SpecMismatch(f"{other.spec} vs {self.spec}")
            return other
        if isinstance(other, (int, Fraction, FqElem)):
            # exact constants: give them at least as much precision as self
            x = self.spec(other, 1)
            if x.is_zero():
                return x
            N = max(self.spec.default_precision, self.N)
            if additive and self.absprec is not None:
                N = max(N, self.absprec - x.v)
            return self.spec(other, N)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return _add(self, o)

    __radd__ = __add__

    def __neg__(self):
        if self.v is None:
            return self
        return LocalElem(self.spec, self.v, self.spec.ring.neg(self.u, self.N), self.N)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return _add(self, -o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return _add(o, -self)

    def __mul__(self, other):
        o = self._coerce(other, additive=False)
        if o is None:
            return NotImplemented
        return _mul(self, o)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other, additive=False)
        if o is None:
            return NotImplemented
        return _div(self, o)

    def __rtruediv__(self, other):
        o = self._coerce(other, additive=False)
        if o is None:
            return NotImplemented
        return _div(o, self)

    def inverse(self) -> "LocalElem":
        return _div(self.spec.one(max(self.N, 1)), self)

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        if self.v is None:
            if e == 0:
                return self.spec.one()
            if self._absprec is None:
                return self
            return self.spec.inexact_zero(self._absprec * e)
        r = self.spec.ring
        return LocalElem(self.spec, self.v * e, _series_pow(r, self.u, e, self.N), self.N)

    def __eq__(self, other) -> bool:
        if isinstance(other, LocalElem) or isinstance(other, (int, Fraction, FqElem)):
            try:
                d = self - other
            except SpecMismatch:
                return False
            return d.is_zero()
        return NotImplemented

    def __ne__(self, other):
        r = self.__eq__(other)
        return r if r is NotImplemented else not r

    def __repr__(self) -> str:
        return render_local(self)


def _series_pow(r, u, e, N):
    result = r.one(N)
    base = u
    while e:
        if e & 1:
            result = r.mul(result, base, N)
        base = r.mul(base, base, N)
        e >>= 1
    return result


def _add(x: LocalElem, y: LocalElem) -> LocalElem:
    if x.is_exact_zero():
        return y
    if y.is_exact_zero():
        return x
    spec = x.spec
    k = min(x.absprec, y.absprec)
    live = [z for z in (x, y) if z.v is not None]
    if not live:
        return spec.inexact_zero(k)
    w = min(z.v for z in live)
    if k <= w:
        return spec.inexact_zero(k)
    L = k - w
    r = spec.ring
    s = r.zero(L)
    for z in live:
        shift = z.v - w
        if shift >= L:
            continue
        s = r.add(s, r.shift_up(r.truncate(r.pad(z.u, L - shift), L - shift), shift, L), L)
    vs = r.val(s, L)
    if vs is None:
        return spec.inexact_zero(k)
    return LocalElem(spec, w + vs, r.truncate(r.shift_down(s, vs), L - vs), L - vs)


def _mul(x: LocalElem, y: LocalElem) -> LocalElem:
    spec = x.spec
    if x.is_exact_zero() or y.is_exact_zero():
        return spec.zero()
    if x.v is None or y.v is None:
        a = x.absprec if x.v is None else x.v
        b = y.absprec if y.v is None else y.v
        return spec.inexact_zero(a + b)
    N = min(x.N, y.N)
    r = spec.ring
    u = r.mul(r.truncate(x.u, N), r.truncate(y.u, N), N)
    return LocalElem(spec, x.v + y.v, u, N)


def _div(x: LocalElem, y: LocalElem) -> LocalElem:
    spec = x.spec
    if y.is_exact_zero():
        raise DivisionByZero("division by zero")
    if y.v is None:
        raise PrecisionExhausted(f"divisor O({spec.symbol}^{y.absprec}) is indistinguishable from 0")
    if x.is_exact_zero():
        return x
    if x.v is None:
        return spec.inexact_zero(x.absprec - y.v)
    N = min(x.N, y.N)
    r = spec.ring
    u = r.mul(r.truncate(x.u, N), r.inv(r.truncate(y.u, N), N), N)
    return LocalElem(spec, x.v - y.v, u, N)


def lf_arith(op: str, x: LocalElem, y: LocalElem) -> LocalElem:
    if op == "add":
        return x + y
    if op == "sub":
        return x - y
    if op == "mul":
        return x * y
    if op == "div":
        return x / y
    raise ValueError(f"unknown operation {op!r}")


def render_local(x: LocalElem) -> str:
    sym = x.spec.symbol
    if x.v is None:
        return "0" if x._absprec is None else f"O({sym}^{x._absprec})"
    terms = []
    for i, d in enumerate(x.digits):
        ds = repr(d)
        if i == 0:
            terms.append(ds)
        elif i == 1:
            terms.append(f"{ds}*{sym}")
        else:
            terms.append(f"{ds}*{sym}^{i}")
    terms.append(f"O({sym}^{x.N})")
    return f"{sym}^{x.v}*(" + " + ".join(terms) + ")"


# -- Hensel lifting and Teichmuller representatives ---------------------------------

def _poly_eval(coeffs: Sequence[LocalElem], x: LocalElem) -> LocalElem:
    acc = x.spec.zero()
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def _poly_deriv(coeffs: Sequence) -> list:
    return [c * i for i, c in enumerate(coeffs)][1:]


def hensel_lift(f: Sequence, a: LocalElem, target_precision: int) -> LocalElem:
    """Newton-lift an approximate root a of f to absolute precision target_precision.

    ``f`` is a coefficient list (low degree first) of ints, Fractions or integral
    LocalElems.  Requires v(f(a)) > 2 v(f'(a)); the approximation a itself is
    treated as exact.
    """
    spec = a.spec
    if a.v is not None and a.v < 0:
        raise HenselHypothesisFails("starting point is not integral")
    for c in f:
        if isinstance(c, LocalElem) and c.absprec is not None and c.absprec < target_precision:
            raise InsufficientInputPrecision("polynomial coefficients are known to less than the target precision")

    def coeffs_at(k):
        return [c.with_absprec(k) if isinstance(c, LocalElem) else spec(c, k + 2) for c in f]

    def at(b, k):
        cs = coeffs_at(k)
        return _poly_eval(cs, b), _poly_eval(_poly_deriv(cs), b)

    W = target_precision + 2 * len(f) + 2
    b = a.with_absprec(W)
    fa, dfa = at(b, W)
    if fa.is_exact_zero():
        return b.with_absprec(target_precision)
    if dfa.is_zero():
        raise HenselHypothesisFails("f'(a) vanishes")
    d = dfa.v
    W = max(W, target_precision + 2 * d + 2)
    if fa.is_zero():
        e = fa.absprec
    else:
        e = fa.v
        if e <= 2 * d:
            raise HenselHypothesisFails(f"v(f(a)) = {e} is not greater than 2 v(f'(a)) = {2 * d}")
    k = e - d
    while k < target_precision:
        k_new = 2 * k - d
        P = min(W, k_new + d)
        bP = b.with_absprec(P)
        num, den = at(bP, P)
        if num.is_zero():
            b, k = bP, P - d
            continue
        b = bP - num / den
        k = k_new
    return b.with_absprec(target_precision)


@lru_cache(maxsize=4096)
def _teich_cached(spec: LocalFieldSpec, code: int, precision: int) -> LocalElem:
    d = FqElem(spec.residue, code)
    if not spec.is_padic:
        return LocalElem(spec, 0, spec.ring.const(d, precision), precision)
    if spec.q == 2:
        return spec.one(precision)
    f = [-1] + [0] * (spec.q - 2) + [1]
    return hensel_lift(f, spec(code, precision), precision)


def teichmuller(d: FqElem | int, spec: LocalFieldSpec, precision: int | None = None) -> LocalElem:
    """The (q-1)-th root of unity congruent to d."""
    d = spec.residue(d)
    if d.is_zero():
        raise ZeroInput("Teichmuller lift of 0")
    return _teich_cached(spec, d.code, precision or spec.default_precision)


class UnitDecomposition(NamedTuple):
    teich: LocalElem
    one_unit: LocalElem
    valuation: int


def lf_decompose(x: LocalElem) -> UnitDecomposition:
    if x.is_zero():
        raise ZeroInput("decomposition of zero")
    t = teichmuller(x.leading_digit(), x.spec, x.N)
    return UnitDecomposition(t, x.unit_part() / t, x.v)


# -- power classes --------------------------------------------------------------

SQUARE_CLASS_LABELS = ("1", "eps", "pi", "eps*pi")


def square_class(x: LocalElem) -> str:
    """Class in F^x/(F^x)^2 = {1, eps, pi, eps*pi} for odd residue characteristic."""
    if x.spec.p == 2:
        raise ResidualCharTwo("square classes in residue characteristic 2; use q2_square_class")
    if x.is_zero():
        raise ZeroInput("square class of zero")
    nonsq = not fq_power_class(x.leading_digit(), 2).is_nth_power
    return SQUARE_CLASS_LABELS[2 * (x.v % 2) + int(nonsq)]


def q2_square_class(x: LocalElem) -> int:
    """Class in Q2^x/(Q2^x)^2 as one of 1, -1, 2, -2, 3, -3, 6, -6."""
    if not (x.spec.is_padic and x.spec.p == 2):
        raise UnsupportedCase("q2_square_class needs Q2")
    if x.is_zero():
        raise ZeroInput("square class of zero")
    if x.N < 3:
        raise InsufficientPrecision("unit part must be known modulo 8")
    r = x.u % 8
    unit = {1: 1, 3: 3, 5: -3, 7: -1}[r]
    return unit * 2 if x.v % 2 else unit


class MthClass(NamedTuple):
    class_index: int
    valuation_class: int
    is_mth_power: bool


def mth_unit_class(x: LocalElem, m: int) -> MthClass:
    """Class of x in F^x/(F^x)^m for m prime to p with m | q-1."""
    if m % x.spec.p == 0:
        raise WildCase(f"m = {m} is divisible by the residue characteristic")
    if x.is_zero():
        raise ZeroInput("power class of zero")
    pc = fq_power_class(x.leading_digit(), m)
    vc = x.v % m
    return MthClass(pc.class_index, vc, pc.is_nth_power and vc == 0)


def is_mth_power(x: LocalElem, m: int) -> bool:
    """Decide x in (F^x)^m in the tame case, and for m = 2 over Q2."""
    if x.is_zero():
        raise ZeroInput("power test of zero")
    spec = x.spec
    if m % spec.p:
        return x.v % m == 0 and fq_power_class(x.leading_digit(), m).is_nth_power
    if m == 2 and spec.is_padic and spec.p == 2:
        return q2_square_class(x) == 1
    raise WildCase(f"{m}-th powers in residue characteristic {spec.p}")


def canonical_epsilon(spec: LocalFieldSpec, m: int = 2) -> LocalElem:
    """Integer lift of the least non-m-th-power of the residue field."""
    return spec(fq_nonresidue(spec.residue, m))


def root_of_unity(spec: LocalFieldSpec, m: int, precision: int | None = None) -> LocalElem:
    """Teichmuller lift of the least residue of exact order m."""
    if (spec.q - 1) % m:
        raise ValueError(f"mu_{m} is not contained in {spec}")
    return teichmuller(element_of_order(spec.residue, m), spec, precision)


def residue_generator_lift(spec: LocalFieldSpec, precision: int | None = None) -> LocalElem:
    return teichmuller(fq_generator(spec.residue), spec, precision)


def local_sqrt(x: LocalElem) -> LocalElem:
    """A square root of x (odd p), or raise if x is not a square."""
    if x.is_zero():
        return x
    if x.v % 2 or not fq_power_class(x.leading_digit(), 2).is_nth_power or x.spec.p == 2:
        raise ValueError(f"{x!r} is not a square")
    u = x.unit_part()
    r0 = u.leading_digit().sqrt()
    root = hensel_lift([-u, 0, 1], x.spec(r0, u.N), u.N)
    return root * x.spec.uniformizer(u.N) ** (x.v // 2)


# -- Artin-Schreier classes in characteristic 2 -----------------------------------

def _trace_one(residue: FqSpec) -> FqElem:
    for d in residue.elements():
        if d.trace().code == 1:
            return d
    raise ValueError("no element of trace one")  # unreachable


def as_reduce(c: LocalElem) -> LocalElem:
    """Canonical representative of c modulo {z^2 + z} in F_{2^f}((t)).

    Even polar terms a t^(-2k) are replaced by sqrt(a) t^(-k), terms of positive
    valuation are dropped and the constant is reduced to 0 or the least element
    of absolute trace one.  The result has only odd polar terms.
    """
    spec = c.spec
    if spec.is_padic or spec.p != 2:
        raise UnsupportedCase("Artin-Schreier classes need F_{2^f}((t))")
    if c.is_exact_zero():
        return c
    if c.absprec is None or c.absprec < 1:
        raise InsufficientPrecision("constant term of c is unknown")
    terms = {}
    if c.v is not None:
        for i, d in enumerate(c.digits):
            e = c.v + i
            if e <= 0 and not d.is_zero():
                terms[e] = d
    for e in sorted(k for k in terms if k < 0):
        if e in terms and e % 2 == 0:
            a = terms.pop(e)
            r = a.sqrt()
            h = e // 2
            terms[h] = terms.get(h, spec.residue.zero()) + r
            if terms[h].is_zero():
                del terms[h]
    const = terms.pop(0, spec.residue.zero())
    if const.trace().code == 1:
        terms[0] = _trace_one(spec.residue)
    if not terms:
        return spec.zero()
    v = min(terms)
    absprec = max(spec.default_precision + v, 1)
    return spec.from_terms(terms, absprec)


def in_as_subgroup(c: LocalElem) -> bool:
    return as_reduce(c).is_zero()


def as_symbol(c: LocalElem, x: LocalElem) -> int:
    """Residue symbol Tr(Res(c dx/x)) in {0, 1}; 0 iff x is a norm from F(alpha), alpha^2 + alpha = c."""
    spec = c.spec
    if x.is_zero():
        raise ZeroInput("symbol of zero")
    c = as_reduce(c)
    if c.is_zero():
        return 0
    r = spec.residue
    # c dx/x = c (v dt/t + du/u); Res picks the t^(-1) coefficient
    v = x.v
    cterms = {c.v + i: d for i, d in enumerate(c.digits) if not d.is_zero()}
    total = r.zero()
    if v % 2 and 0 in cterms:
        total = total + cterms[0]
    depth = -min(cterms)  # need (u'/u) up to index depth - 1
    if depth > 0:
        if x.N < depth + 1:
            raise InsufficientPrecision(f"need {depth + 1} digits of x, have {x.N}")
        ring = spec.ring
        L = depth + 1
        u = ring.truncate(ring.pad(x.u, L), L)
        du = tuple(u[i + 1] * (i + 1) for i in range(L - 1))
        q = ring.mul(du, ring.inv(u, L - 1), L - 1)
        for k in range(depth):
            e = -1 - k
            if e in cterms:
                total = total + cterms[e] * q[k]
    return total.trace().code


def local_precision_guard(x: LocalElem, needed: int, what: str = "operation") -> None:
    if x.v is not None and x.N < needed:
        raise InsufficientPrecision(f"{what} needs {needed} digits, element has {x.N}")


def gcd_ext(a: int, b: int) -> tuple[int, int, int]:
    """(g, s, t) with s*a + t*b = g = gcd(a, b)."""
    if b == 0:
        return (abs(a), 1 if a >= 0 else -1, 0)
    g, s, t = gcd_ext(b, a % b)
    return g, t, s - (a // b) * t


__all__ = [
    "LocalFieldSpec",
    "LocalElem",
    "UnitDecomposition",
    "MthClass",
    "qp",
    "laurent",
    "lf_arith",
    "lf_decompose",
    "hensel_lift",
    "teichmuller",
    "square_class",
    "q2_square_class",
    "mth_unit_class",
    "is_mth_power",
    "canonical_epsilon",
    "root_of_unity",
    "residue_generator_lift",
    "local_sqrt",
    "as_reduce",
    "in_as_subgroup",
    "as_symbol",
    "gcd",
]
