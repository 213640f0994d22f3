"""Cyclic Galois extensions K/F, their Galois action and norm groups.

Every extension is stored as K = F[theta]/(P) with a fixed generator sigma given
by the image of theta.  Elements are coefficient vectors over
(1, theta, ..., theta^(m-1)).  Supported shapes:

* ``finite``      F = GF(q), P the least irreducible of degree m, sigma = Frobenius
* ``sqrt``        P = x^2 - c, sigma(theta) = -theta
* ``kummer``      P = x^m - b, sigma(theta) = zeta * theta
* ``artin-schreier``  P = x^2 + x + c in characteristic 2, sigma(theta) = theta + 1
* ``unramified``  P a lift of an irreducible residue polynomial, sigma a lift of Frobenius
* ``quartic-tower``  the partially ramified cyclic quartic E(sqrt(eps_E * pi))
  over E = F(sqrt(eps)) when -1 is not a square

Norm membership for local bases uses the (e, f, n1) description of the norm
group: x is a norm iff f | v(x) and the residue of x / n1^(v(x)/f) is an e-th
power.  Q2 quadratics use a stored table and Artin-Schreier extensions the
residue symbol.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from math import gcd
from typing import Iterable, Sequence

from . import linalg
from .errors import (
    DivisionByZero,
    InsufficientPrecision,
    MissingRootsOfUnity,
    NotAFieldExtension,
    PrecisionExhausted,
    ResidualCharTwo,
    SpecMismatch,
    UnsupportedCase,
    WildCase,
    ZeroInput,
)
from .ffield import FqElem, FqSpec, fq_generator, fq_nonresidue, fq_power_class, multiplicative_order
from .localfield import (
    LocalElem,
    LocalFieldSpec,
    as_reduce,
    as_symbol,
    canonical_epsilon,
    gcd_ext,
    is_mth_power,
    local_sqrt,
    q2_square_class,
    residue_generator_lift,
    root_of_unity,
    square_class,
    teichmuller,
)

GUARD_DIGITS = 4

# Norm groups of the quadratic extensions of Q2, modulo squares, keyed by the
# square class of c.  Checked against the 2-adic Hilbert symbol and against a
# brute-force search over x^2 - c y^2 (see tests); the published table has
# misprints in the rows for -6, -1 and 3.
Q2_NORM_TABLE = {
    -3: frozenset({1, -1, 3, -3}),
    -6: frozenset({1, -1, 6, -6}),
    2: frozenset({1, -1, 2, -2}),
    -1: frozenset({1, 2, -3, -6}),
    -2: frozenset({1, 2, 3, 6}),
    3: frozenset({1, -2, -3, 6}),
    6: frozenset({1, -2, 3, -6}),
}
Q2_ORDER = (-3, -6, 2, -1, -2, 3, 6)
Q2_CLASS_REPS = {-3: (1, 2), -6: (1, 3), 2: (1, 3), -1: (1, -1), -2: (1, -1), 3: (1, -1), 6: (1, -1)}


def is_local(base) -> bool:
    return isinstance(base, LocalFieldSpec)


def base_key(x):
    return x.key()


# -- polynomials over a finite field ------------------------------------------

def _poly_rem(a: list[FqElem], b: list[FqElem]) -> list[FqElem]:
    a = list(a)
    inv = b[-1].inverse()
    while len(a) >= len(b):
        c = a[-1] * inv
        shift = len(a) - len(b)
        if not c.is_zero():
            for i, bi in enumerate(b):
                a[shift + i] = a[shift + i] - c * bi
        a.pop()
    while a and a[-1].is_zero():
        a.pop()
    return a


def is_irreducible_over(spec: FqSpec, poly: Sequence[FqElem]) -> bool:
    n = len(poly) - 1
    if n <= 1:
        return n == 1
    elems = list(spec.elements())
    for d in range(1, n // 2 + 1):
        for tail in itertools.product(elems, repeat=d):
            if not _poly_rem(list(poly), list(tail) + [spec.one()]):
                return False
    return True


def least_irreducible_over(spec: FqSpec, m: int) -> tuple[FqElem, ...]:
    """Least monic irreducible of degree m over GF(q), low-degree coefficient first."""
    elems = list(spec.elements())
    for tail in itertools.product(elems, repeat=m):
        if tail[0].is_zero():
            continue
        poly = tuple(tail) + (spec.one(),)
        if is_irreducible_over(spec, poly):
            return poly
    raise NotAFieldExtension(f"no irreducible polynomial of degree {m} over {spec}")


# -- Galois group elements -----------------------------------------------------

@dataclass(frozen=True)
class GaloisElt:
    power: int
    m: int

    def __post_init__(self):
        object.__setattr__(self, "power", self.power % self.m)

    def __mul__(self, other: "GaloisElt") -> "GaloisElt":
        return GaloisElt(self.power + other.power, self.m)


# -- the extension ---------------------------------------------------------------

class CyclicExtension:
    """K = F[theta]/(P) with distinguished generator sigma of Gal(K/F)."""

    def __init__(self, base, m, kind, modulus, sigma_theta, *, params, identity, label,
                 norm_rule, theta_name="theta"):
        self.base = base
        self.m = m
        self.kind = kind
        self.modulus = tuple(modulus)
        self.params = dict(params)
        self.identity = identity
        self.label = label
        self.theta_name = theta_name
        self._norm_rule = norm_rule
        self._zero = base.zero()
        self._one = base.one(self.precision) if is_local(base) else base.one()
        self._low = [(i, c) for i, c in enumerate(self.modulus[:-1]) if not c.is_zero()]
        self._sigma_theta = tuple(sigma_theta)

    # basic data

    @property
    def precision(self) -> int | None:
        if is_local(self.base):
            return self.base.default_precision + GUARD_DIGITS
        return None

    @property
    def is_finite_base(self) -> bool:
        return isinstance(self.base, FqSpec)

    def __repr__(self) -> str:
        return f"{self.label} over {self.base}"

    def descriptor(self) -> dict:
        """JSON-compatible record {base, m, kind, parameters}."""
        return {
            "base": base_descriptor(self.base),
            "m": self.m,
            "kind": self.kind,
            "parameters": {k: render_base(v) for k, v in self.params.items()},
            "label": self.label,
        }

    # elements

    def coerce_base(self, x):
        if isinstance(x, ExtElem):
            raise SpecMismatch("expected a base field element")
        if is_local(self.base):
            if isinstance(x, LocalElem):
                if x.spec != self.base:
                    raise SpecMismatch(f"{x.spec} vs {self.base}")
                return x
            return self.base(x, self.precision)
        return self.base(x)

    def element(self, coeffs: Iterable) -> "ExtElem":
        cs = [self.coerce_base(c) for c in coeffs]
        if len(cs) > self.m:
            raise SpecMismatch(f"{len(cs)} coordinates for a degree-{self.m} extension")
        cs += [self._zero] * (self.m - len(cs))
        return ExtElem(self, tuple(cs))

    def embed(self, x) -> "ExtElem":
        return self.element([x])

    def zero(self) -> "ExtElem":
        return ExtElem(self, (self._zero,) * self.m)

    def one(self) -> "ExtElem":
        return self.embed(self._one)

    def gen(self) -> "ExtElem":
        return self.element([self._zero, self._one])

    def basis(self) -> list["ExtElem"]:
        return [self.element([self._zero] * i + [self._one]) for i in range(self.m)]

    def all_elements(self):
        """Every element of a finite extension, in canonical order."""
        if not self.is_finite_base:
            raise UnsupportedCase("only finite extensions can be enumerated")
        elems = list(self.base.elements())
        for tup in itertools.product(elems, repeat=self.m):
            yield ExtElem(self, tuple(reversed(tup)))

    # arithmetic on coefficient tuples

    def _mul(self, a, b):
        m = self.m
        z = self._zero
        prod = [z] * (2 * m - 1)
        for i, ai in enumerate(a):
            if ai.is_zero() and (not is_local(self.base) or ai.is_exact_zero()):
                continue
            for j, bj in enumerate(b):
                if bj.is_zero() and (not is_local(self.base) or bj.is_exact_zero()):
                    continue
                prod[i + j] = prod[i + j] + ai * bj
        for k in range(2 * m - 2, m - 1, -1):
            c = prod[k]
            if c.is_zero() and (not is_local(self.base) or c.is_exact_zero()):
                continue
            for i, pi in self._low:
                prod[k - m + i] = prod[k - m + i] - c * pi
        return tuple(prod[:m])

    def _mult_matrix(self, a):
        cols = []
        col = a
        theta = self.gen().c
        for k in range(self.m):
            cols.append(col)
            col = self._mul(col, theta)
        return [[cols[k][r] for k in range(self.m)] for r in range(self.m)]

    def _inverse(self, a):
        if all(c.is_zero() for c in a):
            if all(not is_local(self.base) or c.is_exact_zero() for c in a):
                raise DivisionByZero("inverse of zero")
            raise PrecisionExhausted("element is indistinguishable from zero")
        if self.is_finite_base:
            q = self.base.q ** self.m
            return _pow_tuple(self, a, q - 2)
        rhs = [self._one] + [self._zero] * (self.m - 1)
        try:
            return tuple(linalg.solve(self._mult_matrix(a), rhs))
        except DivisionByZero:
            raise PrecisionExhausted("multiplication matrix is singular at working precision")

    # Galois action

    @cached_property
    def _sigma_columns(self):
        """cols[i][k] = sigma^i(theta^k) as coefficient tuples."""
        m = self.m
        basis = [b.c for b in self.basis()]
        s1 = [basis[0]]
        acc = basis[0]
        for _ in range(1, m):
            acc = self._mul(acc, self._sigma_theta)
            s1.append(acc)
        cols = [basis, s1]
        for _ in range(2, m + 1):
            prev = cols[-1]
            cols.append([self._apply_cols(s1, v) for v in prev])
        return cols

    def _apply_cols(self, cols, x):
        out = [self._zero] * self.m
        for k, xk in enumerate(x):
            if xk.is_zero() and (not is_local(self.base) or xk.is_exact_zero()):
                continue
            col = cols[k]
            for r in range(self.m):
                c = col[r]
                if c.is_zero() and (not is_local(self.base) or c.is_exact_zero()):
                    continue
                out[r] = out[r] + c * xk
        return tuple(out)

    def sigma(self, x: "ExtElem", i: int = 1) -> "ExtElem":
        i %= self.m
        if i == 0:
            return x
        return ExtElem(self, self._apply_cols(self._sigma_columns[i], x.c))

    # norms

    def norm(self, x: "ExtElem"):
        acc = x.c
        for i in range(1, self.m):
            acc = self._mul(acc, self.sigma(x, i).c)
        for c in acc[1:]:
            if not c.is_zero():
                raise PrecisionExhausted(f"norm has a nonzero non-constant coordinate {c!r}")
        return acc[0]

    def is_norm(self, x) -> bool:
        x = self.coerce_base(x)
        if x.is_zero():
            raise ZeroInput("is_norm of zero")
        rule = self._norm_rule
        kind = rule[0]
        if kind == "finite":
            return True
        if kind == "q2":
            return q2_square_class(x) in Q2_NORM_TABLE[rule[1]]
        if kind == "as":
            return as_symbol(rule[1], x) == 0
        _, e, f, n1 = rule
        v = x.valuation
        if v % f:
            return False
        y = x / n1 ** (v // f) if v else x
        if y.precision < 1:
            raise InsufficientPrecision("unit part of x is unknown")
        return fq_power_class(y.leading_digit(), e).is_nth_power

    @property
    def ramification(self) -> int:
        rule = self._norm_rule
        if rule[0] == "tame":
            return rule[1]
        if rule[0] == "q2":
            return 1 if rule[1] == -3 else 2
        if rule[0] == "as":
            c = as_reduce(rule[1])
            return 1 if c.is_zero() or c.valuation >= 0 else 2
        return 1

    @cached_property
    def class_reps(self) -> list:
        """Representatives C_K of F^x / N(K^x)."""
        return _class_reps(self)

    def minus_one_is_norm(self) -> bool:
        if self.is_finite_base:
            return True
        return self.is_norm(self.coerce_base(-1))

    def subfield_degree(self, a: "ExtElem") -> int:
        stab = sum(1 for i in range(self.m) if self.sigma(a, i) == a)
        return self.m // stab

    def fixed_field_basis(self, power: int) -> list["ExtElem"]:
        """F-basis of the subfield fixed by sigma^power."""
        rows = []
        cols = self._sigma_columns[power % self.m]
        for r in range(self.m):
            row = []
            for k in range(self.m):
                c = cols[k][r]
                row.append(c - (self._one if r == k else self._zero))
            rows.append(row)
        ker = linalg.kernel(rows, self.m, self._zero, self._one)
        return [self.element(v) for v in ker]

    def same_field(self, other: "CyclicExtension") -> bool:
        return self.base == other.base and self.m == other.m and self.identity == other.identity


def _pow_tuple(ext, a, e):
    result = ext.one().c
    base = a
    while e:
        if e & 1:
            result = ext._mul(result, base)
        base = ext._mul(base, base)
        e >>= 1
    return result


class ExtElem:
    """Element of K as coordinates over the basis (1, theta, ..., theta^(m-1))."""

    __slots__ = ("ext", "c")

    def __init__(self, ext: CyclicExtension, coeffs: tuple):
        self.ext = ext
        self.c = coeffs

    @property
    def coeffs(self) -> tuple:
        return self.c

    def _coerce(self, other):
        if isinstance(other, ExtElem):
            if other.ext is not self.ext and not self.ext.same_field(other.ext):
                raise SpecMismatch("elements of different extensions")
            return other
        try:
            return self.ext.embed(other)
        except (TypeError, SpecMismatch):
            return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return ExtElem(self.ext, tuple(a + b for a, b in zip(self.c, o.c)))

    __radd__ = __add__

    def __neg__(self):
        return ExtElem(self.ext, tuple(-a for a in self.c))

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return ExtElem(self.ext, tuple(a - b for a, b in zip(self.c, o.c)))

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        if isinstance(other, ExtElem):
            o = self._coerce(other)
            return ExtElem(self.ext, self.ext._mul(self.c, o.c))
        if isinstance(other, (LocalElem, FqElem, int)):
            s = self.ext.coerce_base(other)
            return ExtElem(self.ext, tuple(a * s for a in self.c))
        return NotImplemented

    __rmul__ = __mul__

    def inverse(self) -> "ExtElem":
        return ExtElem(self.ext, self.ext._inverse(self.c))

    def __truediv__(self, other):
        if isinstance(other, ExtElem):
            return self * other.inverse()
        if isinstance(other, (LocalElem, FqElem, int)):
            s = self.ext.coerce_base(other)
            return ExtElem(self.ext, tuple(a / s for a in self.c))
        return NotImplemented

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        return ExtElem(self.ext, _pow_tuple(self.ext, self.c, e))

    def sigma(self, i: int = 1) -> "ExtElem":
        return self.ext.sigma(self, i)

    def norm(self):
        return self.ext.norm(self)

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.c)

    def in_base(self) -> bool:
        return all(c.is_zero() for c in self.c[1:])

    def support(self) -> tuple[int, ...]:
        return tuple(i for i, c in enumerate(self.c) if not c.is_zero())

    def key(self):
        return tuple(c.key() for c in self.c)

    def __eq__(self, other):
        o = self._coerce(other) if not isinstance(other, ExtElem) else other
        if o is None:
            return NotImplemented
        if len(o.c) != len(self.c):
            return False
        return all((a - b).is_zero() for a, b in zip(self.c, o.c))

    def __ne__(self, other):
        r = self.__eq__(other)
        return r if r is NotImplemented else not r

    def __hash__(self):
        if not self.ext.is_finite_base:
            raise TypeError("local extension elements are not hashable")
        return hash(tuple(c.code for c in self.c))

    def __repr__(self) -> str:
        return render_ext(self)


# -- rendering helpers (literal grammar) ------------------------------------------

def render_base(x) -> str:
    if isinstance(x, (LocalElem, FqElem)):
        return repr(x)
    return str(x)


def render_ext(x: ExtElem) -> str:
    return "(" + ", ".join(render_base(c) for c in x.c) + ")"


def base_descriptor(base) -> str:
    if isinstance(base, FqSpec):
        return f"GF:{base.q}"
    if base.is_padic:
        return f"Qp:{base.p}"
    return f"Laurent:{base.q}"


# -- constructors --------------------------------------------------------------------

def _local_const(F: LocalFieldSpec, x, prec):
    if isinstance(x, LocalElem):
        if x.spec != F:
            raise SpecMismatch(f"{x.spec} vs {F}")
        return x
    return F(x, prec)


def _kummer_identity(F: LocalFieldSpec, b: LocalElem, m: int):
    """Canonical label of the subgroup <b> of F^x/(F^x)^m (tame case)."""
    g = gcd(m, F.q - 1)
    w = b.valuation % m
    c = b.leading_digit().log() % g
    if w == 0:
        return ("unramified", m)
    options = [((k * w) % m, (k * c) % g) for k in range(1, m) if gcd(k, m) == 1]
    return ("kummer", m) + min(options)


def _tame_rule(F, m, b):
    """(e, f, n1) for the Kummer extension F(b^(1/m)), with n1 a norm of valuation f."""
    w = b.valuation
    f, s, t = gcd_ext(w, m)
    normb = b if m % 2 else -b  # N(beta) = (-1)^(m+1) b
    pi = F.uniformizer(b.precision)
    n1 = normb ** s * pi ** (m * t)
    return ("tame", m // f, f, n1)


def make_finite(base: FqSpec, m: int) -> CyclicExtension:
    P = least_irreducible_over(base, m)
    proto = CyclicExtension(base, m, "finite", P, [base.zero(), base.one()] + [base.zero()] * (m - 2),
                            params={}, identity=("finite", base.q, m), label=f"GF({base.q}^{m})",
                            norm_rule=("finite",))
    frob = proto.gen() ** base.q
    return CyclicExtension(base, m, "finite", P, frob.c, params={},
                           identity=("finite", base.q, m), label=f"GF({base.q}^{m})",
                           norm_rule=("finite",))


def make_sqrt(base, c) -> CyclicExtension:
    if isinstance(base, FqSpec):
        c = base(c)
        if base.p == 2:
            raise ResidualCharTwo("use the Artin-Schreier form in characteristic 2")
        if fq_power_class(c, 2).is_nth_power:
            raise NotAFieldExtension(f"{c!r} is a square")
        z = base.zero()
        return CyclicExtension(base, 2, "sqrt", (-c, z, base.one()), (z, -base.one()),
                               params={"c": c}, identity=("finite", base.q, 2),
                               label=f"GF({base.q})(sqrt({c!r}))", norm_rule=("finite",),
                               theta_name=f"sqrt({c!r})")
    F = base
    prec = F.default_precision + GUARD_DIGITS
    c = _local_const(F, c, prec)
    if c.is_zero():
        raise NotAFieldExtension("sqrt of zero")
    z = F.zero()
    one = F.one(prec)
    if F.p == 2:
        if not F.is_padic:
            raise ResidualCharTwo("quadratic extensions in characteristic 2 are Artin-Schreier")
        cls = q2_square_class(c)
        if cls == 1:
            raise NotAFieldExtension(f"{c!r} is a square in Q2")
        rule = ("q2", cls)
        identity = ("quadratic", cls)
    else:
        cls = square_class(c)
        if cls == "1":
            raise NotAFieldExtension(f"{c!r} is a square")
        identity = ("quadratic", cls) if cls != "eps" else ("unramified", 2)
        rule = _tame_rule(F, 2, c)
    name = _short(c)
    return CyclicExtension(F, 2, "sqrt", (-c, z, one), (z, -one), params={"c": c},
                           identity=identity, label=f"{F}(sqrt({name}))", norm_rule=rule,
                           theta_name=f"sqrt({name})")


def _short(x) -> str:
    if isinstance(x, LocalElem) and x.spec.is_padic and not x.is_zero():
        fr = x.to_fraction()
        p = x.spec.p
        # show small signed integers plainly
        mod = p ** (x.valuation + x.precision) if x.valuation >= 0 else None
        if mod is not None:
            n = int(fr) % mod
            if n > mod // 2:
                n -= mod
            if abs(n) < 10 ** 6:
                return str(n)
        return repr(x)
    if isinstance(x, LocalElem) and not x.is_zero():
        return _short_laurent(x)
    return repr(x)


def _short_laurent(x: LocalElem) -> str:
    terms = []
    for i, d in enumerate(x.digits):
        if d.is_zero():
            continue
        e = x.valuation + i
        mono = "1" if e == 0 else ("t" if e == 1 else f"t^{e}")
        if repr(d) == "1":
            terms.append(mono)
        elif e == 0:
            terms.append(repr(d))
        else:
            terms.append(f"{d!r}*{mono}")
    return " + ".join(terms) if len(terms) < 6 else repr(x)


def make_kummer(base, m: int, b, zeta=None) -> CyclicExtension:
    if m == 2:
        return make_sqrt(base, b)
    if isinstance(base, FqSpec):
        raise UnsupportedCase("over a finite base use the finite extension (unram:m)")
    F = base
    if m % F.p == 0:
        raise WildCase(f"degree {m} is divisible by the residue characteristic")
    if (F.q - 1) % m:
        raise MissingRootsOfUnity(f"mu_{m} is not contained in {F}")
    prec = F.default_precision + GUARD_DIGITS
    b = _local_const(F, b, prec)
    if b.is_zero():
        raise NotAFieldExtension("b = 0")
    # b must have exact order m in F^x/(F^x)^m
    for d in range(1, m):
        if m % d == 0 and is_mth_power(b ** d, m):
            raise NotAFieldExtension(f"{b!r} has order dividing {d} modulo {m}-th powers")
    zeta = root_of_unity(F, m, prec) if zeta is None else _local_const(F, zeta, prec)
    if not (zeta ** m - 1).is_zero() or any((zeta ** d - 1).is_zero() for d in range(1, m)):
        raise MissingRootsOfUnity("zeta is not a primitive m-th root of unity")
    z = F.zero()
    P = (-b,) + (z,) * (m - 1) + (F.one(prec),)
    st = (z, zeta) + (z,) * (m - 2)
    return CyclicExtension(F, m, "kummer", P, st, params={"b": b, "zeta": zeta},
                           identity=_kummer_identity(F, b, m),
                           label=f"{F}(({_short(b)})^(1/{m}))", norm_rule=_tame_rule(F, m, b),
                           theta_name="beta")


def make_artin_schreier(base, c) -> CyclicExtension:
    if isinstance(base, FqSpec):
        if base.p != 2:
            raise UnsupportedCase("Artin-Schreier form needs characteristic 2")
        c = base(c)
        if c.trace().code == 0:
            raise NotAFieldExtension(f"{c!r} has trace 0")
        one = base.one()
        return CyclicExtension(base, 2, "artin-schreier", (c, one, one), (one, one),
                               params={"c": c}, identity=("finite", base.q, 2),
                               label=f"GF({base.q})(AS({c!r}))", norm_rule=("finite",),
                               theta_name="alpha")
    F = base
    if F.is_padic or F.p != 2:
        raise UnsupportedCase("Artin-Schreier extensions need F_{2^f}((t))")
    prec = F.default_precision + GUARD_DIGITS
    c = _local_const(F, c, prec) if not isinstance(c, LocalElem) else c
    red = as_reduce(c)
    if red.is_zero():
        raise NotAFieldExtension(f"{c!r} lies in {{z^2 + z}}")
    one = F.one(prec)
    ident = ("artin-schreier",) + tuple((red.valuation + i, d.code) for i, d in enumerate(red.digits) if not d.is_zero())
    return CyclicExtension(F, 2, "artin-schreier", (c, one, one), (one, one), params={"c": c},
                           identity=ident, label=f"{F}(AS({_short(c)}))", norm_rule=("as", c),
                           theta_name="alpha")


def _newton_root_in_K(ext: CyclicExtension, P, start: ExtElem, rounds: int = 64) -> ExtElem:
    dP = [P[i] * i for i in range(1, len(P))]

    def ev(coeffs, x):
        acc = ext.zero()
        for c in reversed(coeffs):
            acc = acc * x + ext.embed(c)
        return acc

    z = start
    for _ in range(rounds):
        fz = ev(P, z)
        if fz.is_zero():
            return z
        z = z - fz * ev(dP, z).inverse()
    raise PrecisionExhausted("Newton iteration for the Frobenius lift did not converge")


def make_unramified(base, m: int) -> CyclicExtension:
    """The unramified extension of degree m (Kummer form when mu_m is in F)."""
    if isinstance(base, FqSpec):
        return make_finite(base, m)
    F = base
    if F.p == 2 and m == 2:
        if F.is_padic:
            return make_sqrt(F, -3)
        return make_artin_schreier(F, _as_trace_one(F))
    if (F.q - 1) % m == 0 and m % F.p:
        # least unit residue whose class in k^x/(k^x)^m has order m
        for d in F.residue.units():
            ci = d.log() % m
            if gcd(ci, m) == 1:
                return make_kummer(F, m, F(d, F.default_precision + GUARD_DIGITS))
    prec = F.default_precision + GUARD_DIGITS
    Pres = least_irreducible_over(F.residue, m)
    P = tuple(F(d, prec) if not d.is_zero() else F.zero() for d in Pres)
    z = F.zero()
    one = F.one(prec)
    proto = CyclicExtension(F, m, "unramified", P, (z, one) + (z,) * (m - 2), params={},
                            identity=("unramified", m), label="", norm_rule=("finite",))
    start = proto.gen() ** F.q
    st = _newton_root_in_K(proto, P, start)
    pi = F.uniformizer(prec)
    return CyclicExtension(F, m, "unramified", P, st.c, params={},
                           identity=("unramified", m), label=f"{F}^(unr,{m})",
                           norm_rule=("tame", 1, m, pi ** m), theta_name="theta")


def _as_trace_one(F: LocalFieldSpec):
    for d in F.residue.elements():
        if d.trace().code == 1:
            return F(d)
    raise NotAFieldExtension("no trace-one constant")


@dataclass(frozen=True)
class TowerData:
    e0: int
    e1: int
    nm: object  # e0^2 - eps*e1^2, a unit nonsquare
    r: object   # r^2 = nm / eps


def make_quartic_tower(F: LocalFieldSpec) -> CyclicExtension:
    """E(sqrt(eps_E * pi)) with E = F(sqrt(eps)), for -1 a nonsquare in F."""
    if F.p == 2:
        raise ResidualCharTwo("degree-4 types need odd residue characteristic")
    prec = F.default_precision + GUARD_DIGITS
    eps = canonical_epsilon(F).with_precision(prec)
    pi = F.uniformizer(prec)
    chosen = None
    for e0 in range(F.p):
        for e1 in range(1, F.p):
            nm = F(e0 * e0, prec) - eps * (e1 * e1)
            if not nm.is_zero() and nm.valuation == 0 and not fq_power_class(nm.leading_digit(), 2).is_nth_power:
                chosen = (e0, e1, nm)
                break
        if chosen:
            break
    e0, e1, nm = chosen
    r = local_sqrt(nm / eps)
    z = F.zero()
    one = F.one(prec)
    P = (nm * pi * pi, z, -(pi * (2 * e0)), z, one)
    proto = CyclicExtension(F, 4, "quartic-tower", P, (z, one, z, z), params={},
                            identity=("quartic-tower",), label="", norm_rule=("finite",))
    th = proto.gen()
    theta_inv = (th ** 3 - th * (pi * (2 * e0))) / (-(nm * pi * pi))
    w = (th * th - proto.embed(pi * e0)) * (r / e1)
    st = w * theta_inv
    n1 = nm * pi * pi
    return CyclicExtension(F, 4, "quartic-tower", P, st.c,
                           params={"eps": eps, "eps_E": f"{e0}+{e1}*sqrt({_short(eps)})", "e0": F(e0, prec), "e1": F(e1, prec)},
                           identity=("quartic-tower",), label=f"{F}(sqrt(eps),sqrt(({e0}+{e1}sqrt({_short(eps)}))*{F.symbol}))",
                           norm_rule=("tame", 2, 2, n1), theta_name="theta")


def ext_make(base, m: int, kind: str, **data) -> CyclicExtension:
    """Build an extension; kind in finite, unramified, sqrt, kummer, artin-schreier, quartic-tower."""
    if m < 2:
        raise NotAFieldExtension("degree must be at least 2")
    if kind in ("finite", "unramified", "unram"):
        return make_unramified(base, m)
    if kind == "sqrt":
        if m != 2:
            raise SpecMismatch("sqrt extensions have degree 2")
        return make_sqrt(base, data["c"])
    if kind == "kummer":
        return make_kummer(base, m, data["b"], data.get("zeta"))
    if kind in ("artin-schreier", "as"):
        if m != 2:
            raise SpecMismatch("Artin-Schreier extensions here have degree 2")
        return make_artin_schreier(base, data["c"])
    if kind == "quartic-tower":
        return make_quartic_tower(base)
    raise UnsupportedCase(f"unknown extension kind {kind!r}")


def sigma_apply(E: CyclicExtension, g, x: ExtElem) -> ExtElem:
    i = g.power if isinstance(g, GaloisElt) else int(g)
    return E.sigma(x, i)


def ext_norm(E: CyclicExtension, x: ExtElem):
    return E.norm(x)


def is_norm(E: CyclicExtension, x) -> bool:
    return E.is_norm(x)


def norm_class_reps(E: CyclicExtension) -> list:
    return E.class_reps


def subfield_degree(E: CyclicExtension, a: ExtElem) -> int:
    return E.subfield_degree(a)


# -- class representatives ---------------------------------------------------------

def _class_reps(E: CyclicExtension) -> list:
    F = E.base
    rule = E._norm_rule
    if rule[0] == "finite":
        return [F.one()] if isinstance(F, FqSpec) else [F.one()]
    prec = F.default_precision
    if rule[0] == "q2":
        return [F(x, prec) for x in Q2_CLASS_REPS[rule[1]]]
    if rule[0] == "as":
        return [F.one(prec), find_as_gamma(E)]
    _, e, f, n1 = rule
    m = E.m
    pi = F.uniformizer(prec)
    if f == m:
        return [pi ** i for i in range(m)]
    if e == m:
        if m == 2:
            if E.minus_one_is_norm():
                return [F.one(prec), canonical_epsilon(F).with_precision(prec)]
            return [F.one(prec), F(-1, prec)]
        if (F.q - 1) % (m * m):
            zeta = root_of_unity(F, m, prec)
            return [zeta ** i for i in range(m)]
        rho = residue_generator_lift(F, prec)
        return [rho ** i for i in range(m)]
    # mixed ramification: use powers of pi when pi has full order, else search
    if all(not E.is_norm(pi ** k) for k in range(1, m)):
        return [pi ** i for i in range(m)]
    rho = residue_generator_lift(F, prec)
    reps = []
    for a in range(m):
        for b in range(e):
            cand = pi ** a * rho ** b
            if all(not E.is_norm(cand / r) for r in reps):
                reps.append(cand)
    return reps[:m]


def find_as_gamma(E: CyclicExtension, max_terms: int = 3, max_exp: int = 6):
    """Least element of a small ordered candidate family that is not a norm.

    Candidates are 1 + t^k, t^k and sums of a few low-degree monomials; the
    first failing the residue-symbol test is returned.
    """
    F = E.base
    prec = F.default_precision
    cands = [{1: 1}]
    for k in range(1, max_exp + 1):
        cands.append({0: 1, k: 1})
    for k in range(-max_exp, max_exp + 1):
        if k:
            cands.append({k: 1})
    for d in F.residue.units():
        cands.append({0: d})
    for terms in cands:
        x = F.from_terms(terms, prec + min(terms))
        if not E.is_norm(x):
            return x.with_precision(prec)
    raise InsufficientPrecision("no non-norm found among the bounded candidates")


# -- enumeration ------------------------------------------------------------------

def enumerate_extensions(F, m: int) -> list[CyclicExtension]:
    if isinstance(F, FqSpec):
        return [make_finite(F, m)]
    if F.p == 2 and not F.is_padic:
        raise UnsupportedCase("infinitely many Artin-Schreier extensions; use sample_as_extensions")
    prec = F.default_precision + GUARD_DIGITS
    pi = F.uniformizer(prec)
    if m == 2:
        if F.p == 2:
            if F.is_padic:
                return [make_sqrt(F, c) for c in Q2_ORDER]
        eps = canonical_epsilon(F).with_precision(prec)
        return [make_sqrt(F, eps), make_sqrt(F, pi), make_sqrt(F, eps * pi)]
    if m == 4:
        if F.p == 2:
            raise WildCase("degree 4 in residue characteristic 2")
        eps = canonical_epsilon(F).with_precision(prec)
        if (F.q - 1) % 4 == 0:
            out = [make_kummer(F, 4, eps), make_kummer(F, 4, eps * pi * pi)]
            out += [make_kummer(F, 4, eps ** (i % 4) * pi) for i in (1, 2, 3, 4)]
            return out
        return [make_unramified(F, 4), make_quartic_tower(F)]
    if m % F.p == 0:
        raise WildCase(f"degree {m} divisible by the residue characteristic")
    from .ffield import is_prime
    if not is_prime(m):
        raise UnsupportedCase(f"enumeration for composite m = {m} other than 4")
    if (F.q - 1) % m:
        raise MissingRootsOfUnity(f"mu_{m} not in {F}; only the unramified extension is cyclic-Kummer")
    out = [make_unramified(F, m)]
    seen = set()
    for d in F.residue.units():
        ci = d.log() % m
        if ci in seen:
            continue
        seen.add(ci)
        out.append(make_kummer(F, m, F(d, prec) * pi))
    return out


def sample_as_extensions(F: LocalFieldSpec, count: int) -> list[CyclicExtension]:
    """AS(t^(-2k-1)) for k = 0 .. count-1: pairwise distinct ramified quadratics."""
    prec = F.default_precision + GUARD_DIGITS
    return [make_artin_schreier(F, F.from_terms({-2 * k - 1: 1}, prec)) for k in range(count)]


# -- degree-four helpers ----------------------------------------------------------

@dataclass(frozen=True)
class QuadraticSubfield:
    """E = F(sqrt(d)) inside a cyclic quartic K, with K = E(sqrt(D)).

    ``to_pair`` maps an element of Fix(sigma^2) to (x, y) with value x + y*sqrt(d).
    """

    d: object
    ramified: bool
    D: tuple
    to_pair: object
    label: str


def quadratic_subfield(K: CyclicExtension) -> QuadraticSubfield:
    if K.m != 4 or K.is_finite_base:
        raise UnsupportedCase("quadratic subfield data only for local cyclic quartics")
    F = K.base
    prec = K.precision
    pi = F.uniformizer(prec)
    if K.kind == "kummer":
        b = K.params["b"]
        k = b.valuation // 2
        d = b / pi ** (2 * k) if k else b
        # beta^2 = pi^k sqrt(d)
        scale = pi ** k if k else F.one(prec)

        def to_pair(a, scale=scale):
            return (a.c[0], a.c[2] * scale)
        return QuadraticSubfield(d, d.valuation % 2 == 1, (F.zero(), scale), to_pair,
                                 f"{F}(sqrt({_short(d)}))")
    if K.kind == "quartic-tower":
        eps = K.params["eps"]
        e0, e1 = K.params["e0"], K.params["e1"]

        def to_pair(a):
            return (a.c[0] + a.c[2] * e0 * pi, a.c[2] * e1 * pi)
        return QuadraticSubfield(eps, False, (e0 * pi, e1 * pi), to_pair, f"{F}(sqrt({_short(eps)}))")
    if K.kind == "unramified":
        eps = canonical_epsilon(F).with_precision(prec)
        return QuadraticSubfield(eps, False, (), None, f"{F}(sqrt({_short(eps)}))")
    raise UnsupportedCase(f"no quadratic subfield data for kind {K.kind}")


def _pair_mul(d, a, b):
    return (a[0] * b[0] + d * a[1] * b[1], a[0] * b[1] + a[1] * b[0])


def _pair_pow(d, a, e, one):
    if e < 0:
        nrm = a[0] * a[0] - d * a[1] * a[1]
        a = (a[0] / nrm, -a[1] / nrm)
        e = -e
    r = (one, one * 0)
    while e:
        if e & 1:
            r = _pair_mul(d, r, a)
        a = _pair_mul(d, a, a)
        e >>= 1
    return r


def _pair_val(d, ramified, a):
    """E-valuation of x + y sqrt(d) (normalised so that v_E(pi_E) = 1)."""
    x, y = a
    vals = []
    if not x.is_zero():
        vals.append(2 * x.valuation if ramified else x.valuation)
    if not y.is_zero():
        vals.append(2 * y.valuation + 1 if ramified else y.valuation)
    if not vals:
        raise PrecisionExhausted("element of E indistinguishable from zero")
    return min(vals)


def _pair_unit_is_square(d, ramified, a) -> bool:
    x, y = a
    if ramified:
        return fq_power_class(x.leading_digit(), 2).is_nth_power
    n = x * x - d * y * y
    return fq_power_class(n.leading_digit(), 2).is_nth_power


def tame_hilbert_over_E(sub: QuadraticSubfield, a: tuple, b: tuple) -> int:
    """Hilbert symbol (a, b) over E = F(sqrt(d)), odd residue characteristic."""
    d, ram = sub.d, sub.ramified
    one = d.spec.one(d.precision)
    va, vb = _pair_val(d, ram, a), _pair_val(d, ram, b)
    num = _pair_mul(d, _pair_pow(d, a, vb, one), _pair_pow(d, b, -va, one))
    sign = -1 if (va * vb) % 2 else 1
    num = (num[0] * sign, num[1] * sign)
    if _pair_val(d, ram, num) != 0:
        raise AssertionError("tame symbol argument is not a unit")
    return 1 if _pair_unit_is_square(d, ram, num) else -1


def is_norm_from_K_to_E(K: CyclicExtension, a: ExtElem) -> bool:
    """a in Fix(sigma^2): decide a in N_{K/E}(K^x) for a local cyclic quartic."""
    sub = quadratic_subfield(K)
    if K.kind == "unramified":
        v = K.norm(a).valuation
        return (v // 4) % 2 == 0
    pair = sub.to_pair(a)
    return tame_hilbert_over_E(sub, pair, sub.D) == 1
