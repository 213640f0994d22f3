"""Isomorphism classes of nonassociative cyclic algebras.

For a fixed K and generator sigma, (K/F, sigma, a) and (K/F, sigma, b) are
isomorphic iff a lies in tau(b) N_{K/F}(K^x) for some tau in Gal(K/F); distinct
generators never give isomorphic proper algebras.  This module decides that
relation and produces canonical representatives and windowed enumerations of
the parameter sets.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, product
from typing import Iterable, Sequence

from .errors import NotProper, SpecMismatch, UnsupportedCase
from .extension import (CyclicExtension, ExtElem, enumerate_extensions, quadratic_subfield)
from .ffield import FqSpec
from .localfield import LocalElem, LocalFieldSpec, teichmuller
from .nacalg import CyclicAlgebra


# -- basic relation ----------------------------------------------------------------

def require_proper(E: CyclicExtension, a: ExtElem) -> None:
    if a.is_zero():
        raise NotProper("a = 0")
    if a.in_base():
        raise NotProper(f"{a!r} lies in F")


def proportional(a: ExtElem, b: ExtElem):
    """lambda in F with a = lambda * b, or None."""
    if a.support() != b.support():
        return None
    sup = a.support()
    if not sup:
        return None
    k = sup[0]
    lam = a.c[k] / b.c[k]
    for i in sup[1:]:
        if not (a.c[i] - lam * b.c[i]).is_zero():
            return None
    return lam


def equivalent(E: CyclicExtension, a: ExtElem, b: ExtElem) -> bool:
    """a ~ b: a / tau(b) is a norm from K for some tau in Gal(K/F)."""
    require_proper(E, a)
    require_proper(E, b)
    if E.kind in ("sqrt", "kummer") and a.support() != b.support():
        return False
    for i in range(E.m):
        lam = proportional(a, E.sigma(b, i))
        if lam is not None and E.is_norm(lam):
            return True
    return False


def _same_model(E1: CyclicExtension, E2: CyclicExtension) -> bool:
    return E1 is E2 or (E1.same_field(E2) and E1.kind == E2.kind
                        and all((x - y).is_zero() for x, y in zip(E1.modulus, E2.modulus))
                        and len(E1.modulus) == len(E2.modulus))


def isomorphic(A: CyclicAlgebra, B: CyclicAlgebra) -> bool:
    """Decide A = (K/F, sigma^i, a) isomorphic to B = (K'/F, sigma^j, b)."""
    if A.base != B.base or A.m != B.m:
        return False
    if not A.ext.same_field(B.ext):
        return False  # the left nuclei K and K' differ
    if not _same_model(A.ext, B.ext):
        raise UnsupportedCase("both algebras must use the same model of K")
    if A.convention != B.convention:
        raise SpecMismatch("algebras use different multiplication conventions")
    if A.proper != B.proper:
        return False
    if A.proper and A.j != B.j:
        return False
    if not A.proper:
        # associative cyclic algebras: a/b a norm (the generator is then irrelevant
        # only up to the standard inversion, so insist on equal generators)
        if A.j != B.j:
            raise UnsupportedCase("associative algebras with different generators")
        return A.ext.is_norm(A.a.c[0] / B.a.c[0])
    return equivalent(A.ext, A.a, B.a)


def factor_class(E: CyclicExtension, x):
    """(c, n) with c in C_K, x = c * n and n a norm."""
    for c in E.class_reps:
        n = x / c
        if E.is_norm(n):
            return c, n
    raise UnsupportedCase(f"no class representative found for {x!r}")


# -- canonical forms ----------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class CanonicalParam:
    extension: str
    identity: tuple
    generator_power: int
    a: ExtElem
    case: str
    pattern: str
    precision: int | None

    def __eq__(self, other):
        if not isinstance(other, CanonicalParam):
            return NotImplemented
        return (self.identity == other.identity and self.generator_power == other.generator_power
                and self.case == other.case and self.a == other.a)

    __hash__ = None

    def record(self) -> dict:
        return {
            "extension": self.extension,
            "generator_power": self.generator_power,
            "a": repr(self.a),
            "case": self.case,
            "pattern": self.pattern,
            "precision": self.precision,
        }


def _key_min(xs: Iterable):
    return min(xs, key=lambda x: x.key())


def _precision_of(E: CyclicExtension, a: ExtElem):
    if E.is_finite_base:
        return None
    ns = [c.precision for c in a.c if not c.is_zero()]
    return min(ns) if ns else None


def _param(E, a, j, case, pattern) -> CanonicalParam:
    return CanonicalParam(E.label, E.identity, j % E.m, a, case, pattern, _precision_of(E, a))


def quaternion_case(E: CyclicExtension) -> str:
    F = E.base
    if E.kind == "artin-schreier":
        return "quaternion-artin-schreier"
    if isinstance(F, FqSpec):
        return "quaternion-finite"
    if F.p == 2:
        if E.identity[1] == -3:
            return "quaternion-q2-unramified"
        return "quaternion-q2-minus-one-norm" if E.minus_one_is_norm() else "quaternion-q2-minus-one-not-norm"
    if E.ramification == 1:
        return "quaternion-unramified"
    if F.q % 4 == 1:
        return "quaternion-ramified-minus-one-square"
    return "quaternion-ramified-minus-one-nonsquare"


def _minus(E, r):
    """Representative of the class of -r."""
    return factor_class(E, -r)[0]


def quaternion_canonical(E: CyclicExtension, a: ExtElem, mode: str = "default",
                         generator_power: int = 1) -> CanonicalParam:
    """Canonical form of a in K = F(sqrt c), characteristic not 2.

    default mode:  r*sqrt(c) with r in C_K/{+-1}, or r + s*sqrt(c) with r in C_K
                   and s in F^x/{+-1};
    alt mode:      r*sqrt(c), or t + r*sqrt(c) with r in C_K and t up to sign
                   (t + sqrt(c) with r = 1 when -1 is not a norm).
    """
    if E.m != 2 or E.kind != "sqrt":
        raise UnsupportedCase("quaternion canonical forms need K = F(sqrt c)")
    if mode not in ("default", "alt"):
        raise SpecMismatch(f"unknown mode {mode!r}")
    require_proper(E, a)
    b0, b1 = a.c
    case = quaternion_case(E)
    if b0.is_zero():
        r, _ = factor_class(E, b1)
        r2 = _minus(E, r)
        r = _key_min([r, r2])
        return _param(E, E.element([E._zero, r]), generator_power, case, "r*sqrt(c)")
    if mode == "default":
        r, n = factor_class(E, b0)
        s = b1 / n
        s = _key_min([s, -s])
        return _param(E, E.element([r, s]), generator_power, case, "r+s*sqrt(c)")
    if E.minus_one_is_norm():
        r, n = factor_class(E, b1)
        t = b0 / n
        t = _key_min([t, -t])
        return _param(E, E.element([t, r]), generator_power, case + "-alt", "t+r*sqrt(c)")
    # -1 not a norm: sigma flips b1 to -b1, exactly one of the two is a norm
    if E.is_norm(b1):
        t = b0 / b1
    else:
        t = -(b0 / b1)
    return _param(E, E.element([t, E._one]), generator_power, case + "-alt", "t+sqrt(c)")


def char2_canonical(E: CyclicExtension, a: ExtElem, gamma=None, generator_power: int = 1) -> CanonicalParam:
    """Canonical form in K = F(alpha), alpha^2 + alpha = c, sigma(alpha) = alpha + 1.

    Returns s + alpha or gamma*(s' + alpha) written as s + r*alpha, r in {1, gamma}.
    """
    if E.kind != "artin-schreier":
        raise UnsupportedCase("char2_canonical needs an Artin-Schreier extension")
    require_proper(E, a)
    if gamma is None:
        gamma = E.class_reps[1] if len(E.class_reps) > 1 else None
    elif E.is_norm(gamma):
        raise SpecMismatch("gamma must not be a norm")
    a0, a1 = a.c
    plain = E.is_norm(a1)
    if plain:
        r, n = E._one, a1
    else:
        r, n = gamma, a1 / gamma
    s = a0 / n
    s = _key_min([s, s + r])
    return _param(E, E.element([s, r]), generator_power, quaternion_case(E),
                  "s+alpha" if plain else "gamma*(s+alpha)")


@dataclass(frozen=True)
class PartitionIndex:
    support: tuple

    @property
    def leading(self) -> int:
        return self.support[0]


def partition_index(E: CyclicExtension, a: ExtElem) -> PartitionIndex:
    """Support of a in the Kummer basis; a lies in K(I) for I = support."""
    if E.kind not in ("kummer", "sqrt"):
        raise UnsupportedCase("partition index needs a Kummer basis")
    require_proper(E, a)
    return PartitionIndex(a.support())


def _zeta(E: CyclicExtension):
    if E.kind == "sqrt":
        return -E._one
    return E.params["zeta"]


def _cubic_case(E: CyclicExtension) -> str:
    F = E.base
    if E.ramification == 1:
        return "cubic-unramified"
    if (F.q - 1) % 9 == 0:
        return "cubic-ramified-q-1-mod-9"
    return "cubic-ramified-q-not-1-mod-9"


def prime_case(E: CyclicExtension) -> str:
    if E.m == 3:
        return _cubic_case(E)
    return "prime-zeta-norm" if E.is_norm(_zeta(E)) else "prime-zeta-not-norm"


def _pattern(I: Sequence[int], lead: str) -> str:
    parts = []
    for n, i in enumerate(I):
        c = lead if n == 0 else f"s{i}"
        parts.append(c if i == 0 else f"{c}*beta^{i}")
    return "+".join(parts)


def _tail_min(E, coeffs: dict, i0: int, zeta):
    """Least tail (coefficients at i > i0) over the Delta action zeta^(k(i - i0))."""
    m = E.m
    best = None
    for k in range(m):
        cand = {i: c * zeta ** ((k * (i - i0)) % m) for i, c in coeffs.items()}
        key = tuple(cand[i].key() for i in sorted(cand))
        if best is None or key < best[0]:
            best = (key, cand)
    return best[1]


def prime_canonical(E: CyclicExtension, a: ExtElem, generator_power: int = 1) -> CanonicalParam:
    """Canonical form for a Kummer extension of odd prime degree with mu_m in F."""
    if E.kind != "kummer" or E.m < 3:
        raise UnsupportedCase("prime_canonical needs a Kummer extension of odd prime degree")
    require_proper(E, a)
    m = E.m
    zeta = _zeta(E)
    I = a.support()
    i0 = I[0]
    coeffs = {i: a.c[i] for i in I}
    case = prime_case(E)
    zeta_norm = E.is_norm(zeta)
    out = [E._zero] * m
    if zeta_norm or i0 == 0:
        c, n = factor_class(E, coeffs[i0])
        tail = {i: coeffs[i] / n for i in I[1:]}
        if tail:
            tail = _tail_min(E, tail, i0, zeta)
        out[i0] = c
        for i, v in tail.items():
            out[i] = v
        lead = "c"
    else:
        for s in range(m):
            z = zeta ** ((s * i0) % m)
            if E.is_norm(z * coeffs[i0]):
                break
        lam = (z * coeffs[i0]).inverse()
        out[i0] = lam * z * coeffs[i0]
        for i in I[1:]:
            out[i] = lam * zeta ** ((s * i) % m) * coeffs[i]
        lead = "1"
    return _param(E, E.element(out), generator_power, case, _pattern(I, lead))


def finite_canonical(E: CyclicExtension, a: ExtElem, generator_power: int = 1) -> CanonicalParam:
    """Finite base: every element of F^x is a norm, so the orbit is F^x * Gal(a)."""
    if not E.is_finite_base:
        raise UnsupportedCase("finite_canonical needs a finite base")
    require_proper(E, a)
    F = E.base
    orbit = [E.sigma(a, i) * lam for i in range(E.m) for lam in F.units()]
    return _param(E, _key_min(orbit), generator_power, "finite", "min of F^x * Gal orbit")


def canonical(E: CyclicExtension, a: ExtElem, generator_power: int = 1, mode: str = "default") -> CanonicalParam:
    if E.kind == "sqrt":
        return quaternion_canonical(E, a, mode, generator_power)
    if E.kind == "artin-schreier":
        return char2_canonical(E, a, generator_power=generator_power)
    if E.is_finite_base:
        return finite_canonical(E, a, generator_power)
    if E.kind == "kummer" and E.m % 2 == 1:
        from .ffield import is_prime
        if is_prime(E.m):
            return prime_canonical(E, a, generator_power)
    raise UnsupportedCase(f"no canonical form for {E.label} of degree {E.m}")


# -- windowed enumeration ------------------------------------------------------------

@dataclass(frozen=True)
class Window:
    v_min: int = -1
    v_max: int = 1
    precision: int = 4
    digits: int = 1

    def __post_init__(self):
        # v_min > v_max is the empty valuation range: only pattern heads are emitted
        if self.precision < 1 or self.digits < 1 or self.digits > self.precision:
            raise SpecMismatch("window needs 1 <= digits <= precision")


def _window_units(F: LocalFieldSpec, w: Window) -> list[LocalElem]:
    N = w.precision
    if F.p == 2 and F.is_padic:
        out = []
        for k in range(2 ** (w.digits - 1)):
            u = F(1 + 4 * k, N)
            out += [u, -u]
        return out
    units = []
    pi = F.uniformizer(N)
    tails = list(product(list(F.residue.elements()), repeat=w.digits - 1))
    for d in F.residue.units():
        tau = teichmuller(d, F, N)
        for tl in tails:
            x = F.one(N)
            for i, e in enumerate(tl, start=1):
                if not e.is_zero():
                    x = x + teichmuller(e, F, N) * pi ** i
            units.append((tau * x).with_precision(N))
    return units


def window_values(F: LocalFieldSpec, w: Window, modulo_sign: bool = False) -> list[LocalElem]:
    """pi^v * u for v in [v_min, v_max] and u in the window units."""
    vals = []
    seen = []
    pi = F.uniformizer(w.precision)
    for v in range(w.v_min, w.v_max + 1):
        for u in _window_units(F, w):
            x = (u * pi ** v).with_precision(w.precision) if v else u
            if modulo_sign:
                x = _key_min([x, -x])
            k = x.key()
            if k in seen:
                continue
            seen.append(k)
            vals.append(x)
    return vals


@dataclass(frozen=True, eq=False)
class Enumeration:
    extension: CyclicExtension
    elements: list
    case: str
    window: Window | None
    expected: int | None = None

    def __len__(self):
        return len(self.elements)


def quaternion_enumerate(E: CyclicExtension, w: Window = Window()) -> Enumeration:
    """Canonical representatives r*sqrt(c) and r + s*sqrt(c) with s in the window."""
    if E.m != 2:
        raise UnsupportedCase("quaternion enumeration needs m = 2")
    F = E.base
    if E.kind == "artin-schreier":
        return _as_enumerate(E, w)
    if E.is_finite_base:
        return finite_enumerate(E)
    reps = [r.with_precision(w.precision) for r in E.class_reps]
    heads = []
    for r in reps:
        cand = _key_min([r, _minus(E, r).with_precision(w.precision)])
        if all(not (cand - h).is_zero() for h in heads):
            heads.append(cand)
    z = F.zero()
    els = [E.element([z, r]) for r in heads]
    svals = window_values(F, w, modulo_sign=True)
    for r in reps:
        els += [E.element([r, s]) for s in svals]
    return Enumeration(E, els, quaternion_case(E), w, len(heads) + len(reps) * len(svals))


def _as_enumerate(E: CyclicExtension, w: Window) -> Enumeration:
    """s + r*alpha with r in {1, gamma} and s in ({0} + window) modulo s ~ s + r.

    Sums are formed at guard precision so that cancellation in s + r does not
    leave two copies of one class that differ only in precision.
    """
    F = E.base
    N = w.precision
    guard = Window(w.v_min, w.v_max, N + F.default_precision, w.digits)
    reps = [F.one(), E.class_reps[1]]
    svals = [F.zero()] + window_values(F, guard)
    els, keys = [], set()
    for r in reps:
        for s in svals:
            c = _key_min([s, s + r]).with_precision(N)
            k = (r.key(), c.key())
            if k in keys:
                continue
            keys.add(k)
            els.append(E.element([c, r.with_precision(N)]))
    return Enumeration(E, els, quaternion_case(E), w, len(els))


def finite_enumerate(E: CyclicExtension, generator_power: int = 1) -> Enumeration:
    """All classes of proper algebras over a finite base (complete, no window)."""
    seen = {}
    for a in E.all_elements():
        if a.in_base():
            continue
        c = finite_canonical(E, a, generator_power).a
        seen[c.key()] = c
    els = [seen[k] for k in sorted(seen)]
    return Enumeration(E, els, "finite", None, None)


def prime_enumerate(E: CyclicExtension, w: Window = Window()) -> Enumeration:
    """Windowed union over supports I of the parameter families for odd prime m."""
    if E.kind != "kummer" or E.m < 3:
        raise UnsupportedCase("prime enumeration needs a Kummer extension of odd prime degree")
    m = E.m
    F = E.base
    zeta = _zeta(E)
    zeta_norm = E.is_norm(zeta)
    reps = [r.with_precision(w.precision) for r in E.class_reps]
    W = window_values(F, w)
    one = F.one(w.precision)
    z = F.zero()
    els = []
    expected = 0
    subsets = [I for k in range(1, m + 1) for I in combinations(range(m), k) if I != (0,)]
    for I in subsets:
        i0, tail_idx = I[0], I[1:]
        if zeta_norm or i0 == 0:
            leads = reps
            expected += len(reps) * (len(W) ** len(tail_idx) // m if tail_idx else 1)
            tails = []
            keys = set()
            for tup in product(W, repeat=len(tail_idx)):
                t = dict(zip(tail_idx, tup))
                if t:
                    t = _tail_min(E, t, i0, zeta)
                k = tuple(t[i].key() for i in tail_idx)
                if k not in keys:
                    keys.add(k)
                    tails.append(t)
        else:
            leads = [one]
            expected += len(W) ** len(tail_idx)
            tails = [dict(zip(tail_idx, tup)) for tup in product(W, repeat=len(tail_idx))]
        for c in leads:
            for t in tails:
                out = [z] * m
                out[i0] = c
                for i, v in t.items():
                    out[i] = v
                els.append(E.element(out))
    return Enumeration(E, els, prime_case(E), w, expected)


def enumerate_classes(E: CyclicExtension, w: Window = Window()) -> Enumeration:
    if E.is_finite_base:
        return finite_enumerate(E)
    if E.m == 2:
        return quaternion_enumerate(E, w)
    return prime_enumerate(E, w)


# -- inequivalence checks ---------------------------------------------------------------

def _lead_class_mod_zeta(E: CyclicExtension, x, cache: dict) -> int:
    """Index of the class of x in F^x / <N, zeta>."""
    reps = E.class_reps
    c, _ = factor_class(E, x)
    idx = next(i for i, r in enumerate(reps) if (r - c).is_zero())
    if idx not in cache:
        zeta = _zeta(E) if E.kind in ("kummer", "sqrt") else None
        orbit = {idx}
        if zeta is not None:
            y = c
            for _ in range(E.m):
                y = y * zeta
                cy, _ = factor_class(E, y)
                orbit.add(next(i for i, r in enumerate(reps) if (r - cy).is_zero()))
        cache[idx] = min(orbit)
    return cache[idx]


def bucket_key(E: CyclicExtension, a: ExtElem, cache: dict | None = None) -> tuple:
    """A necessary invariant of the class of a (equal for equivalent elements)."""
    if cache is None:
        cache = {}
    if E.is_finite_base or E.kind not in ("kummer", "sqrt", "artin-schreier"):
        return ()
    if E.kind == "artin-schreier":
        return (E.is_norm(a.c[1]),)
    I = a.support()
    v0 = a.c[I[0]].valuation
    offsets = tuple(a.c[i].valuation - v0 for i in I)
    key = (I, offsets, v0 % max(1, _residue_degree(E)), _lead_class_mod_zeta(E, a.c[I[0]], cache))
    if len(I) > 1:
        # ratio of the first two coefficients up to roots of unity in the orbit
        r = a.c[I[1]] / a.c[I[0]]
        zeta = _zeta(E)
        d = min((r * zeta ** k).leading_digit().key() for k in range(E.m))
        key += (d,)
    return key


def _residue_degree(E: CyclicExtension) -> int:
    return E.m // E.ramification


def inequivalence_violations(E: CyclicExtension, elems: Sequence[ExtElem]) -> list[tuple[int, int]]:
    """Index pairs (i, j) of elements that are equivalent (should be empty)."""
    buckets: dict = {}
    cache: dict = {}
    for idx, a in enumerate(elems):
        buckets.setdefault(bucket_key(E, a, cache), []).append(idx)
    bad = []
    for members in buckets.values():
        for i, j in combinations(members, 2):
            if equivalent(E, elems[i], elems[j]):
                bad.append((i, j))
    return bad


# -- degree four ------------------------------------------------------------------

def degree4_types(F: LocalFieldSpec) -> list[dict]:
    """The algebra types of degree four: one per (cyclic quartic K, generator)."""
    if isinstance(F, FqSpec):
        raise UnsupportedCase("degree-four types are listed for local fields")
    out = []
    exts = enumerate_extensions(F, 4)
    for idx, K in enumerate(exts):
        sub = quadratic_subfield(K)
        e = K.ramification
        name = "L4" if e == 1 else ("K0" if e == 2 else f"K{idx - 1}")
        for j in (1, 3):
            g = "sigma" if j == 1 else "sigma^3"
            out.append({
                "type": f"{name}/{g}",
                "extension": K.label,
                "ramification": K.ramification,
                "generator_power": j,
                "intermediate_field": sub.label,
                "right_nucleus_for_a_in_E": f"({name}/E, sigma^2, a)",
            })
    return out
