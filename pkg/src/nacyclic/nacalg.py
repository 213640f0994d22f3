"""The nonassociative cyclic algebra (K/F, sigma^j, a).

A = K + K t + ... + K t^(m-1) with

    (k t^s)(k' t^s') = k sigma^(js)(k') t^(s+s')                        if s + s' < m
                     = k sigma^(js)(k') sigma^(j(s+s'-m))(a) t^(s+s'-m) otherwise.

This is the twisted polynomial ring K[t; sigma^j] modulo t^m - a on the right,
the convention under which Nuc_l = Nuc_m = K and the right nucleus is the
eigenspace of t^m - a.  The variant with the bare factor a (convention
"printed") is the opposite-type algebra; the two agree whenever m = 2.

Nuclei and the center are computed as kernels of linear systems over F built
from the structure constants of the F-basis theta^i t^s.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from math import gcd
from typing import Sequence

import numpy as np

from . import linalg
from .errors import AlgebraMismatch, NacyclicError, NotProper, SpecMismatch, TooLarge, ZeroInput
from .extension import CyclicExtension, ExtElem, is_norm_from_K_to_E
from .ffield import FqSpec, is_prime

EXHAUSTIVE_LIMIT = 1 << 20
CONVENTIONS = ("petit", "printed")


class CyclicAlgebra:
    def __init__(self, ext: CyclicExtension, a, generator_power: int = 1,
                 convention: str = "petit"):
        if convention not in CONVENTIONS:
            raise SpecMismatch(f"unknown convention {convention!r}")
        m = ext.m
        if gcd(generator_power, m) != 1:
            raise SpecMismatch(f"sigma^{generator_power} does not generate Gal(K/F) of order {m}")
        if not isinstance(a, ExtElem):
            a = ext.element(a)
        if a.is_zero():
            raise ZeroInput("a must be nonzero")
        self.ext = ext
        self.a = a
        self.j = generator_power % m
        self.m = m
        self.base = ext.base
        self.proper = not a.in_base()
        self.convention = convention
        self._a_twists = {}

    def _twisted_a(self, r: int) -> ExtElem:
        if self.convention == "printed" or r == 0:
            return self.a
        if r not in self._a_twists:
            self._a_twists[r] = self.ext.sigma(self.a, self.j * r)
        return self._a_twists[r]

    @property
    def generator_power(self) -> int:
        return self.j

    def __repr__(self) -> str:
        g = "sigma" if self.j == 1 else f"sigma^{self.j}"
        return f"({self.ext.label}/{self.base}, {g}, {self.a!r})"

    def same_as(self, other: "CyclicAlgebra") -> bool:
        return (self.ext.same_field(other.ext) and self.j == other.j
                and self.convention == other.convention and self.a == other.a)

    # elements

    def element(self, coeffs: Sequence) -> "AlgElem":
        cs = []
        for c in coeffs:
            if isinstance(c, ExtElem):
                cs.append(c)
            elif isinstance(c, (list, tuple)):
                cs.append(self.ext.element(c))
            else:
                cs.append(self.ext.embed(c))
        if len(cs) > self.m:
            raise AlgebraMismatch(f"{len(cs)} coefficients for degree {self.m}")
        cs += [self.ext.zero()] * (self.m - len(cs))
        return AlgElem(self, tuple(cs))

    def from_ext(self, k: ExtElem, s: int = 0) -> "AlgElem":
        cs = [self.ext.zero()] * self.m
        cs[s] = k
        return AlgElem(self, tuple(cs))

    def zero(self) -> "AlgElem":
        return self.element([])

    def one(self) -> "AlgElem":
        return self.from_ext(self.ext.one())

    def t(self, s: int = 1) -> "AlgElem":
        return self.from_ext(self.ext.one(), s)

    @property
    def dim(self) -> int:
        return self.m * self.m

    def basis(self) -> list["AlgElem"]:
        """F-basis theta^i t^s, index s*m + i."""
        kb = self.ext.basis()
        return [self.from_ext(kb[i], s) for s in range(self.m) for i in range(self.m)]

    def coords(self, x: "AlgElem") -> list:
        return [c for k in x.coeffs for c in k.c]

    def from_coords(self, v: Sequence) -> "AlgElem":
        m = self.m
        return AlgElem(self, tuple(self.ext.element(v[s * m:(s + 1) * m]) for s in range(m)))

    # multiplication

    def mul(self, x: "AlgElem", y: "AlgElem") -> "AlgElem":
        if x.alg is not self or y.alg is not self:
            if not (x.alg.same_as(self) and y.alg.same_as(self)):
                raise AlgebraMismatch("elements of different algebras")
        m, ext = self.m, self.ext
        out = [ext.zero()] * m
        for s, xs in enumerate(x.coeffs):
            if _exact_zero(xs):
                continue
            for s2, ys in enumerate(y.coeffs):
                if _exact_zero(ys):
                    continue
                k = xs * ext.sigma(ys, self.j * s)
                if s + s2 >= m:
                    k = k * self._twisted_a(s + s2 - m)
                out[(s + s2) % m] = out[(s + s2) % m] + k
        return AlgElem(self, tuple(out))

    @cached_property
    def structure_constants(self) -> list[list[dict]]:
        """C[k][i] = coordinates of e_k e_i as a sparse dict {index: value}."""
        B = self.basis()
        out = []
        for x in B:
            row = []
            for y in B:
                v = self.coords(self.mul(x, y))
                row.append({r: c for r, c in enumerate(v) if not c.is_zero()})
            out.append(row)
        return out

    def multiplication_table(self) -> list[list["AlgElem"]]:
        B = self.basis()
        return [[self.mul(x, y) for y in B] for x in B]


def _exact_zero(k: ExtElem) -> bool:
    for c in k.c:
        if not c.is_zero():
            return False
        if hasattr(c, "is_exact_zero") and not c.is_exact_zero():
            return False
    return True


class AlgElem:
    __slots__ = ("alg", "coeffs")

    def __init__(self, alg: CyclicAlgebra, coeffs: tuple):
        self.alg = alg
        self.coeffs = coeffs

    def _check(self, other):
        if not isinstance(other, AlgElem):
            return None
        if other.alg is not self.alg and not other.alg.same_as(self.alg):
            raise AlgebraMismatch("elements of different algebras")
        return other

    def __add__(self, other):
        o = self._check(other)
        if o is None:
            return NotImplemented
        return AlgElem(self.alg, tuple(a + b for a, b in zip(self.coeffs, o.coeffs)))

    def __sub__(self, other):
        o = self._check(other)
        if o is None:
            return NotImplemented
        return AlgElem(self.alg, tuple(a - b for a, b in zip(self.coeffs, o.coeffs)))

    def __neg__(self):
        return AlgElem(self.alg, tuple(-a for a in self.coeffs))

    def __mul__(self, other):
        if isinstance(other, AlgElem):
            return self.alg.mul(self, other)
        # scalar from F
        return AlgElem(self.alg, tuple(a * other for a in self.coeffs))

    def __rmul__(self, other):
        return AlgElem(self.alg, tuple(a * other for a in self.coeffs))

    def is_zero(self) -> bool:
        return all(k.is_zero() for k in self.coeffs)

    def __eq__(self, other):
        o = self._check(other)
        if o is None:
            return NotImplemented
        return all(a == b for a, b in zip(self.coeffs, o.coeffs))

    __hash__ = None

    def __repr__(self) -> str:
        return "[" + "; ".join(repr(k) for k in self.coeffs) + "]"


def alg_mul(A: CyclicAlgebra, x: AlgElem, y: AlgElem) -> AlgElem:
    return A.mul(x, y)


def associator(A: CyclicAlgebra, x: AlgElem, y: AlgElem, z: AlgElem) -> AlgElem:
    return A.mul(A.mul(x, y), z) - A.mul(x, A.mul(y, z))


# -- nuclei --------------------------------------------------------------------------

def _sparse_combine(C, vec: dict, j: int, left: bool) -> dict:
    """sum_l vec[l] * (e_l e_j)  (left=True)  or  sum_l vec[l] * (e_j e_l)."""
    out: dict = {}
    for l, c in vec.items():
        prod = C[l][j] if left else C[j][l]
        for r, d in prod.items():
            v = c * d
            out[r] = out[r] + v if r in out else v
    return out


def _assoc_tensor(A: CyclicAlgebra) -> dict:
    """T[(k, i, j)] = sparse coordinates of [e_k, e_i, e_j]."""
    C = A.structure_constants
    D = A.dim
    T = {}
    for k in range(D):
        for i in range(D):
            left = C[k][i]
            for j in range(D):
                lhs = _sparse_combine(C, left, j, left=True)
                rhs = _sparse_combine(C, C[i][j], k, left=False)
                diff = dict(lhs)
                for r, v in rhs.items():
                    diff[r] = diff[r] - v if r in diff else -v
                diff = {r: v for r, v in diff.items() if not v.is_zero()}
                if diff:
                    T[(k, i, j)] = diff
    return T


NUCLEUS_KINDS = ("left", "middle", "right", "nucleus", "center")


def _nucleus_rows(A: CyclicAlgebra, which: str) -> list[list]:
    if which not in NUCLEUS_KINDS:
        raise ValueError(f"unknown nucleus {which!r}")
    D = A.dim
    zero = A.ext._zero
    T = A.__dict__.get("_assoc_T")
    if T is None:
        T = _assoc_tensor(A)
        A.__dict__["_assoc_T"] = T
    slots = {"left": [0], "middle": [1], "right": [2]}.get(which, [0, 1, 2])
    rows = []
    for slot in slots:
        # for fixed (i, j) in the other two slots, one row per output coordinate
        for i in range(D):
            for j in range(D):
                entries: dict = {}
                for x in range(D):
                    key = [(x, i, j), (i, x, j), (i, j, x)][slot]
                    vec = T.get(key)
                    if vec:
                        for r, v in vec.items():
                            entries.setdefault(r, {})[x] = v
                for r, cols in entries.items():
                    rows.append([cols.get(x, zero) for x in range(D)])
    if which == "center":
        C = A.structure_constants
        for i in range(D):
            entries = {}
            for x in range(D):
                for r, v in C[x][i].items():
                    entries.setdefault(r, {})
                    entries[r][x] = entries[r][x] + v if x in entries[r] else v
                for r, v in C[i][x].items():
                    entries.setdefault(r, {})
                    entries[r][x] = entries[r][x] - v if x in entries[r] else -v
            for r, cols in entries.items():
                row = [cols.get(x, zero) for x in range(D)]
                if any(not e.is_zero() for e in row):
                    rows.append(row)
    return rows


def nucleus(A: CyclicAlgebra, which: str) -> list[AlgElem]:
    """F-basis of the left/middle/right nucleus, the nucleus, or the center."""
    rows = _nucleus_rows(A, which)
    one = A.ext._one
    zero = A.ext._zero
    ker = linalg.kernel(rows, A.dim, zero, one)
    return [A.from_coords(v) for v in ker]


def span_dimension(A: CyclicAlgebra, elems: Sequence[AlgElem]) -> int:
    if not elems:
        return 0
    return linalg.rank([A.coords(x) for x in elems], A.dim)


@dataclass
class RightNucleusStructure:
    stabilizer_order: int          # |H|, H = {tau : tau(a) = a}
    s: int                         # power of t generating the subalgebra
    fixed_field_basis: list        # F-basis of E = Fix(H)
    subalgebra_basis: list         # F-basis of B = sum_k K t^(s k) inside A
    description: str
    quaternion_subalgebra: list | None = None
    checked_against_nucleus: bool | None = None
    notes: list = field(default_factory=list)

    @property
    def dim_over_F(self) -> int:
        return len(self.subalgebra_basis)


def right_nucleus_structure(A: CyclicAlgebra, check: bool = True) -> RightNucleusStructure:
    ext, m = A.ext, A.m
    h = sum(1 for i in range(m) if ext.sigma(A.a, i) == A.a)
    s = m // h
    Ebasis = ext.fixed_field_basis(s * A.j)
    kb = ext.basis()
    Bbasis = [A.from_ext(kb[i], s * k) for k in range(h) for i in range(m)]
    g = "sigma" if (s * A.j) % m == 1 else f"sigma^{(s * A.j) % m}"
    if h == 1:
        desc = f"K (stabilizer of a trivial); right nucleus is K, dimension {m}"
    else:
        desc = f"(K/E, {g}, a) with [E:F] = {s}; associative of degree {h} over E, dimension {h * m} over F"
    quat = None
    if m == 4:
        quat = [A.from_ext(kb[i], 2 * k) for k in range(2) for i in range(m)]
    res = RightNucleusStructure(h, s, Ebasis, Bbasis, desc, quat)
    if check and ext.is_finite_base:
        nuc = nucleus(A, "right")
        both = span_dimension(A, nuc + Bbasis)
        res.checked_against_nucleus = (len(nuc) == len(Bbasis) == both)
    return res


# -- division ------------------------------------------------------------------------

@dataclass(frozen=True)
class DivisionResult:
    result: bool | None
    method: str
    detail: str = ""


def _prime_field_tensor(A: CyclicAlgebra) -> tuple[int, np.ndarray]:
    """T[u] = matrix over F_p of left multiplication by the u-th F_p-basis element."""
    F: FqSpec = A.base
    p, n = F.p, F.n
    ext = A.ext
    fbasis = [F([0] * l + [1]) for l in range(n)]
    kb = ext.basis()
    pbasis = []
    for s in range(A.m):
        for i in range(A.m):
            for w in fbasis:
                pbasis.append(A.from_ext(kb[i] * w, s))
    Dp = len(pbasis)
    T = np.zeros((Dp, Dp, Dp), dtype=np.int64)
    for u, x in enumerate(pbasis):
        for v, y in enumerate(pbasis):
            c = A.coords(A.mul(x, y))
            col = [d for e in c for d in e.coeffs]
            T[u, :, v] = col
    return p, T


def _batched_nonsingular(mats: np.ndarray, p: int) -> np.ndarray:
    """For a (B, D, D) stack over F_p, return a boolean array: matrix invertible."""
    A = mats.copy() % p
    B, D, _ = A.shape
    ok = np.ones(B, dtype=bool)
    inv = np.array([0] + [pow(x, -1, p) for x in range(1, p)], dtype=np.int64)
    idx = np.arange(B)
    for c in range(D):
        col = A[:, c:, c]
        nz = col != 0
        has = nz.any(axis=1)
        ok &= has
        piv = np.argmax(nz, axis=1) + c
        rows_c = A[idx, c, :].copy()
        A[idx, c, :] = A[idx, piv, :]
        A[idx, piv, :] = rows_c
        pv = inv[A[:, c, c]]
        A[:, c, :] = (A[:, c, :] * pv[:, None]) % p
        factors = A[:, c + 1:, c:c + 1]
        A[:, c + 1:, :] = (A[:, c + 1:, :] - factors * A[:, c:c + 1, :]) % p
    return ok


def exhaustive_is_division(A: CyclicAlgebra, limit: int = EXHAUSTIVE_LIMIT, batch: int = 1 << 14) -> bool:
    """Every nonzero left multiplication is nonsingular (finite base only)."""
    if not A.ext.is_finite_base:
        raise TooLarge("exhaustive test needs a finite base field")
    q = A.base.q
    if q ** A.dim > limit:
        raise TooLarge(f"q^(m^2) = {q ** A.dim} exceeds {limit}")
    p, T = _prime_field_tensor(A)
    Dp = T.shape[0]
    if p == 2:
        return _exhaustive_binary(T, batch)
    total = p ** Dp
    # left multiplication is F-linear in x, so x and c*x (c in F_p^x) agree; take
    # vectors whose last nonzero coordinate is 1
    for start in range(1, total, batch):
        codes = np.arange(start, min(total, start + batch), dtype=np.int64)
        digits = (codes[:, None] // (p ** np.arange(Dp, dtype=np.int64))[None, :]) % p
        if p > 2:
            last = digits[np.arange(len(codes)), Dp - 1 - np.argmax(digits[:, ::-1] != 0, axis=1)]
            digits = digits[last == 1]
        mats = np.einsum("bu,urc->brc", digits, T) % p
        if not _batched_nonsingular(mats, p).all():
            return False
    return True


def _exhaustive_binary(T: np.ndarray, batch: int) -> bool:
    """Characteristic 2: rows as bitmasks, elimination by XOR."""
    Dp = T.shape[0]
    weights = (1 << np.arange(Dp, dtype=np.int64))
    Tm = (T % 2 * weights[None, None, :]).sum(axis=2)      # Tm[u, r] = row r of L_{b_u}
    total = 1 << Dp
    for start in range(1, total, batch):
        codes = np.arange(start, min(total, start + batch), dtype=np.int64)
        rows = np.zeros((len(codes), Dp), dtype=np.int64)
        for u in range(Dp):
            sel = ((codes >> u) & 1).astype(bool)
            rows[sel] ^= Tm[u][None, :]
        used = np.zeros(rows.shape, dtype=bool)
        idx = np.arange(len(codes))
        for c in range(Dp):
            has = ((rows >> c) & 1).astype(bool)
            cand = has & ~used
            found = cand.any(axis=1)
            if not found.all():
                return False
            piv = np.argmax(cand, axis=1)
            used[idx, piv] = True
            prow = rows[idx, piv]
            clear = has.copy()
            clear[idx, piv] = False
            rows ^= np.where(clear, prow[:, None], 0)
    return True


def _associative_division(A: CyclicAlgebra) -> DivisionResult:
    ext = A.ext
    if ext.is_finite_base:
        return DivisionResult(False, "associative-norm-order", "norms of finite fields are surjective; the algebra splits")
    c = A.a.c[0]
    order = next(k for k in range(1, A.m + 1) if k == A.m or ext.is_norm(c ** k))
    return DivisionResult(order == A.m, "associative-norm-order",
                          f"class of a in F^x/N(K^x) has order {order}")


def is_division(A: CyclicAlgebra, limit: int = EXHAUSTIVE_LIMIT) -> DivisionResult:
    ext, m = A.ext, A.m
    if ext.is_finite_base and A.base.q ** A.dim <= limit:
        return DivisionResult(exhaustive_is_division(A, limit), "exhaustive",
                              f"checked {A.base.q ** A.dim - 1} nonzero left multiplications")
    if not A.proper:
        return _associative_division(A)
    if is_prime(m) and (m in (2, 3) or (ext.base.q - 1) % m == 0):
        return DivisionResult(True, "prime-degree", "m prime, a not in F")
    deg = ext.subfield_degree(A.a)
    if deg == m:
        return DivisionResult(True, "generates-K", "a lies in no proper subfield of K")
    if m == 4 and deg == 2:
        if ext.is_finite_base:
            return DivisionResult(False, "quartic-right-nucleus",
                                  "B = (K/E, sigma^2, a) is associative over a finite field, hence split")
        try:
            norm = is_norm_from_K_to_E(ext, A.a)
        except NacyclicError as exc:  # unsupported extension shape
            return DivisionResult(None, "unknown", f"quartic reduction unavailable: {exc}")
        return DivisionResult(not norm, "quartic-right-nucleus",
                              "a in E = Fix(sigma^2); division iff a is not a norm from K to E")
    return DivisionResult(None, "unknown", "no criterion applies")


def require_proper(A: CyclicAlgebra) -> None:
    if not A.proper:
        raise NotProper("a lies in F")
