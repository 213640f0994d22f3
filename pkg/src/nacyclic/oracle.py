"""Brute-force checks over small finite fields, independent of the criteria.

K is realised inside a single field GF(q^m) (its own model, with sigma a power
of the q-Frobenius), the algebra multiplication is re-implemented on top of it,
and ranks are computed over F_p with a separate row-insertion routine.  None of
this shares code with nacalg or classify beyond the finite-field arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd
from typing import Sequence

from .errors import SpecMismatch, TooLarge, UnknownTheorem
from .extension import CyclicExtension, ExtElem, make_finite
from .ffield import FqElem, FqSpec, fq_make, gf, is_prime

GUARD = 1 << 20


# -- F_p ranks ----------------------------------------------------------------------

def rank_mod_p(rows: Sequence[Sequence[int]], p: int) -> int:
    """Rank over F_p by inserting rows into a reduced basis keyed by pivot."""
    if p == 2:
        return rank_gf2([sum((r[i] & 1) << i for i in range(len(r))) for r in rows])
    basis: dict[int, list[int]] = {}
    for r in rows:
        v = [x % p for x in r]
        for piv in sorted(basis):
            if v[piv]:
                b = basis[piv]
                f = v[piv]
                v = [(x - f * y) % p for x, y in zip(v, b)]
        nz = next((i for i, x in enumerate(v) if x), None)
        if nz is None:
            continue
        inv = pow(v[nz], -1, p)
        v = [(x * inv) % p for x in v]
        for piv, b in basis.items():
            if b[nz]:
                f = b[nz]
                basis[piv] = [(x - f * y) % p for x, y in zip(b, v)]
        basis[nz] = v
    return len(basis)


def rank_gf2(masks: Sequence[int]) -> int:
    basis: dict[int, int] = {}
    for v in masks:
        while v:
            h = v.bit_length() - 1
            if h in basis:
                v ^= basis[h]
            else:
                basis[h] = v
                break
    return len(basis)


# -- the oracle's own model ---------------------------------------------------------

def _roots(big: FqSpec, coeffs: Sequence[FqElem]) -> list[FqElem]:
    out = []
    for x in big.elements():
        acc = big.zero()
        for c in reversed(coeffs):
            acc = acc * x + c
        if acc.is_zero():
            out.append(x)
    return out


class OracleField:
    """K = GF(q^m) as one finite field, with an embedding of a CyclicExtension model."""

    def __init__(self, ext: CyclicExtension):
        if not ext.is_finite_base:
            raise SpecMismatch("oracle needs a finite base field")
        F: FqSpec = ext.base
        self.ext = ext
        self.p, self.n, self.m, self.q = F.p, F.n, ext.m, F.q
        if self.q ** self.m > 65536:
            raise TooLarge("field too large for the oracle")
        self.big = fq_make(self.p, self.n * self.m)
        # embed F, then K
        if self.n == 1:
            self.omega = None
        else:
            self.omega = _roots(self.big, [self.big(c) for c in F.modulus])[0]
        self.theta = _roots(self.big, [self._embed_base(c) for c in ext.modulus])[0]
        self.theta_pows = [self.theta ** k for k in range(self.m)]
        # which Frobenius power is the model's sigma
        s_theta = self.embed(ext.sigma(ext.gen(), 1))
        self.sigma_power = next(r for r in range(1, self.m + 1)
                                if self.frob(self.theta, r) == s_theta)
        if gcd(self.sigma_power, self.m) != 1:
            raise SpecMismatch("sigma of the model does not generate Gal(K/F)")
        self.fp_dim = self.n * self.m

    def _embed_base(self, c: FqElem) -> FqElem:
        if self.omega is None:
            return self.big(c.coeffs[0])
        acc = self.big.zero()
        for i, d in enumerate(c.coeffs):
            if d:
                acc = acc + self.omega ** i * d
        return acc

    def embed(self, x: ExtElem) -> FqElem:
        acc = self.big.zero()
        for k, c in enumerate(x.c):
            if not c.is_zero():
                acc = acc + self._embed_base(c) * self.theta_pows[k]
        return acc

    def frob(self, x: FqElem, r: int) -> FqElem:
        return x ** (self.q ** (r % self.m))

    def sigma(self, x: FqElem, i: int) -> FqElem:
        """The model's sigma^i transported to GF(q^m)."""
        return self.frob(x, self.sigma_power * i)

    def coords(self, x: FqElem) -> tuple[int, ...]:
        return x.coeffs

    def is_in_F(self, x: FqElem) -> bool:
        return self.frob(x, 1) == x

    def elements(self):
        return self.big.elements()


class OracleAlgebra:
    """(K/F, sigma^j, a) multiplied directly from the defining formula."""

    def __init__(self, K: OracleField, a: FqElem, j: int, convention: str = "petit"):
        self.K, self.a, self.j, self.m = K, a, j % K.m, K.m
        self.convention = convention
        self.dim_fp = K.fp_dim * K.m
        self.zero = tuple(K.big.zero() for _ in range(self.m))

    @classmethod
    def from_algebra(cls, A, K: OracleField | None = None) -> "OracleAlgebra":
        K = K or OracleField(A.ext)
        return cls(K, K.embed(A.a), A.j, A.convention)

    def mul(self, x: tuple, y: tuple) -> tuple:
        K, m = self.K, self.m
        out = [K.big.zero()] * m
        for s, xs in enumerate(x):
            if xs.is_zero():
                continue
            for s2, ys in enumerate(y):
                if ys.is_zero():
                    continue
                v = xs * K.sigma(ys, self.j * s)
                r = s + s2
                if r >= m:
                    r -= m
                    v = v * (self.a if self.convention == "printed" else K.sigma(self.a, self.j * r))
                out[r] = out[r] + v
        return tuple(out)

    def coords(self, x: tuple) -> list[int]:
        return [d for k in x for d in k.coeffs]

    def fp_basis(self) -> list[tuple]:
        big = self.K.big
        out = []
        for s in range(self.m):
            for l in range(self.K.fp_dim):
                v = [big.zero()] * self.m
                v[s] = big([0] * l + [1])
                out.append(tuple(v))
        return out

    def from_code(self, code: int) -> tuple:
        big, N, p = self.K.big, self.K.big.q, self.K.p
        out = []
        for _ in range(self.m):
            code, r = divmod(code, N)
            out.append(FqElem(big, r))
        return tuple(out)


# -- division -----------------------------------------------------------------------

def brute_is_division(A, guard: int = GUARD) -> bool:
    """No nonzero x with singular left multiplication L_x (over F_p)."""
    if not A.ext.is_finite_base:
        raise SpecMismatch("oracle needs a finite base field")
    q, m = A.base.q, A.m
    if q ** (m * m) > guard:
        raise TooLarge(f"q^(m^2) = {q ** (m * m)} exceeds the guard {guard}")
    O = OracleAlgebra.from_algebra(A)
    return _oracle_division(O)


def _oracle_division(O: OracleAlgebra) -> bool:
    p = O.K.p
    basis = O.fp_basis()
    D = len(basis)
    # column v of L_{b_u}: coordinates of b_u * b_v
    cols = [[O.coords(O.mul(bu, bv)) for bv in basis] for bu in basis]
    if p == 2:
        cm = [[sum(c[i] << i for i in range(D)) for c in cu] for cu in cols]
        for x in range(1, 1 << D):
            acc = [0] * D
            u = 0
            y = x
            while y:
                if y & 1:
                    row = cm[u]
                    acc = [a ^ b for a, b in zip(acc, row)]
                y >>= 1
                u += 1
            if rank_gf2(acc) < D:
                return False
        return True
    total = p ** D
    for code in range(1, total):
        digits = []
        c = code
        for _ in range(D):
            c, r = divmod(c, p)
            digits.append(r)
        # normalise: last nonzero digit 1 (L_{cx} = c L_x)
        last = next(d for d in reversed(digits) if d)
        if last != 1:
            continue
        mat = [[0] * D for _ in range(D)]
        for u, d in enumerate(digits):
            if d:
                for v in range(D):
                    col = cols[u][v]
                    row = mat[v]
                    for i in range(D):
                        row[i] += d * col[i]
        if rank_mod_p(mat, p) < D:
            return False
    return True


# -- isomorphism --------------------------------------------------------------------

@dataclass
class IsoWitness:
    galois_power: int                 # phi restricted to K is Frobenius^galois_power
    phi_t: tuple                      # image of t, as coefficients in GF(q^m)
    images: list = field(default_factory=list)   # images of the F_p-basis

    def record(self) -> dict:
        return {"galois_power": self.galois_power, "phi_t": [repr(c) for c in self.phi_t]}


def _apply_phi(O1: OracleAlgebra, O2: OracleAlgebra, r: int, tpows: list, x: tuple) -> tuple:
    K = O1.K
    acc = O2.zero
    for s, k in enumerate(x):
        if k.is_zero():
            continue
        kk = tuple(K.frob(k, r) if i == 0 else K.big.zero() for i in range(O2.m))
        acc = tuple(u + v for u, v in zip(acc, O2.mul(kk, tpows[s])))
    return acc


def brute_isomorphic_oracle(O1: OracleAlgebra, O2: OracleAlgebra):
    """Search for phi: O1 -> O2.  Returns (found, witness or None)."""
    K, m = O1.K, O1.m
    big = K.big
    zero = big.zero()
    basisK = [big([0] * l + [1]) for l in range(K.fp_dim)]
    Fbasis = []
    for s in range(m):
        for k in K.theta_pows:
            v = [zero] * m
            v[s] = k
            Fbasis.append(tuple(v))
    table1 = {(i, j): O1.mul(Fbasis[i], Fbasis[j]) for i in range(len(Fbasis)) for j in range(len(Fbasis))}
    theta = K.theta
    for r in range(m):
        phiK = lambda k, r=r: K.frob(k, r)
        target = phiK(K.sigma(theta, O1.j))
        # phi(t) phi(theta) = phi(sigma1(theta)) phi(t) forces the support of phi(t)
        allowed = [s for s in range(m) if K.sigma(phiK(theta), O2.j * s) == target]
        if not allowed:
            continue
        for choice in _vectors(big, len(allowed)):
            y = [zero] * m
            for s, c in zip(allowed, choice):
                y[s] = c
            y = tuple(y)
            # phi(t^s) = phi(t) phi(t^(s-1))
            one = tuple(big.one() if i == 0 else zero for i in range(m))
            tpows = [one]
            for s in range(1, m):
                tpows.append(O2.mul(y, tpows[-1]))
            # quick filter: t * t^(m-1) = a (Petit) / a (printed) in O1
            top = O1.mul(tuple(big.one() if i == 1 else zero for i in range(m)),
                         tuple(big.one() if i == m - 1 else zero for i in range(m)))
            if _apply_phi(O1, O2, r, tpows, top) != O2.mul(y, tpows[m - 1]):
                continue
            images = [_apply_phi(O1, O2, r, tpows, b) for b in Fbasis]
            ok = True
            for (i, j), prod in table1.items():
                if _apply_phi(O1, O2, r, tpows, prod) != O2.mul(images[i], images[j]):
                    ok = False
                    break
            if not ok:
                continue
            fp_images = []
            for s in range(m):
                for b in basisK:
                    v = [zero] * m
                    v[s] = b
                    fp_images.append(O2.coords(_apply_phi(O1, O2, r, tpows, tuple(v))))
            if rank_mod_p(fp_images, K.p) == O1.dim_fp:
                return True, IsoWitness(r, y, images)
    return False, None


def _vectors(big: FqSpec, k: int):
    """All nonzero tuples of k elements of big (k small)."""
    els = list(big.elements())
    if k == 0:
        return
    idx = [0] * k
    n = len(els)
    while True:
        if any(idx):
            yield tuple(els[i] for i in idx)
        pos = 0
        while pos < k:
            idx[pos] += 1
            if idx[pos] < n:
                break
            idx[pos] = 0
            pos += 1
        if pos == k:
            return


def brute_isomorphic(A, B, guard: int = GUARD):
    """(found, witness) for A, B over the same finite K."""
    if not (A.ext.is_finite_base and B.ext.is_finite_base):
        raise SpecMismatch("oracle needs a finite base field")
    if A.base != B.base or A.m != B.m or A.ext.identity != B.ext.identity:
        return False, None
    if A.base.q ** (A.m * A.m) * A.m > guard:
        raise TooLarge("search space exceeds the guard")
    K = OracleField(A.ext)
    K2 = K if A.ext is B.ext or list(A.ext.modulus) == list(B.ext.modulus) else OracleField(B.ext)
    if K2 is not K:
        raise SpecMismatch("A and B must share the model of K")
    return brute_isomorphic_oracle(OracleAlgebra.from_algebra(A, K), OracleAlgebra.from_algebra(B, K))


# -- class partitions ----------------------------------------------------------------

@dataclass
class ClassReport:
    q: int
    m: int
    classes_brute: list
    classes_criterion: list
    agreement: bool

    @property
    def class_count(self) -> int:
        return len(self.classes_brute)

    def record(self) -> dict:
        return {"q": self.q, "m": self.m, "class_count": self.class_count,
                "criterion_class_count": len(self.classes_criterion),
                "agreement": self.agreement,
                "classes": [[repr(a) for a in c] for c in self.classes_brute]}


def _partition(elems: list, same) -> list[list]:
    classes: list[list] = []
    for a in elems:
        for c in classes:
            if same(c[0], a):
                c.append(a)
                break
        else:
            classes.append([a])
    return classes


def brute_classes(q: int, m: int, guard: int = GUARD) -> ClassReport:
    from .classify import equivalent
    from .nacalg import CyclicAlgebra
    if q ** (m * m) * m > guard:
        raise TooLarge("search space exceeds the guard")
    E = make_finite(gf(q), m)
    K = OracleField(E)
    proper = [a for a in E.all_elements() if not a.in_base()]
    oalg = {a.key(): OracleAlgebra(K, K.embed(a), 1) for a in proper}
    brute = _partition(proper, lambda a, b: brute_isomorphic_oracle(oalg[a.key()], oalg[b.key()])[0])
    crit = _partition(proper, lambda a, b: equivalent(E, a, b))
    as_sets = lambda cs: sorted(sorted(x.key() for x in c) for c in cs)
    return ClassReport(q, m, brute, crit, as_sets(brute) == as_sets(crit))


# -- theorem sweeps -----------------------------------------------------------------

THEOREMS = ("sigma_distinct", "classify_iso", "steele", "nuclei", "petit_division")


def _oracle_nucleus_dims(O: OracleAlgebra) -> dict:
    """F-dimensions of left/middle/right nucleus and center, by F_p rank."""
    p, n = O.K.p, O.K.n
    B = O.fp_basis()
    D = len(B)
    prods = {(i, j): O.mul(B[i], B[j]) for i in range(D) for j in range(D)}

    def assoc(i, j, k):
        x = O.mul(prods[(i, j)], B[k])
        y = O.mul(B[i], prods[(j, k)])
        return [u - v for u, v in zip(O.coords(x), O.coords(y))]

    A3 = {(i, j, k): assoc(i, j, k) for i in range(D) for j in range(D) for k in range(D)}

    def kernel_dim(slot_rows):
        # columns indexed by the free slot; rows = every (other slots, coordinate)
        rows = []
        for key_fn in slot_rows:
            for a in range(D):
                for b in range(D):
                    vecs = [key_fn(x, a, b) for x in range(D)]
                    for c in range(D):
                        rows.append([v[c] for v in vecs])
        return D - rank_mod_p(rows, p)

    left = kernel_dim([lambda x, a, b: A3[(x, a, b)]])
    middle = kernel_dim([lambda x, a, b: A3[(a, x, b)]])
    right = kernel_dim([lambda x, a, b: A3[(a, b, x)]])
    comm_rows = []
    for a in range(D):
        vecs = [[u - v for u, v in zip(O.coords(prods[(x, a)]), O.coords(prods[(a, x)]))] for x in range(D)]
        for c in range(D):
            comm_rows.append([v[c] for v in vecs])
    nuc_rows = []
    for fn in (lambda x, a, b: A3[(x, a, b)], lambda x, a, b: A3[(a, x, b)], lambda x, a, b: A3[(a, b, x)]):
        for a in range(D):
            for b in range(D):
                vecs = [fn(x, a, b) for x in range(D)]
                for c in range(D):
                    nuc_rows.append([v[c] for v in vecs])
    center = D - rank_mod_p(nuc_rows + comm_rows, p)
    return {"left": left // n, "middle": middle // n, "right": right // n, "center": center // n}


def verify_theorem(name: str, params: dict | None = None, guard: int = GUARD) -> dict:
    params = dict(params or {})
    q, m = int(params.get("q", 2)), int(params.get("m", 3))
    if name not in THEOREMS:
        raise UnknownTheorem(f"unknown theorem {name!r}; expected one of {', '.join(THEOREMS)}")
    from .nacalg import CyclicAlgebra
    E = make_finite(gf(q), m)
    proper = [a for a in E.all_elements() if not a.in_base()]
    counter: list = []
    checked = 0
    detail: dict = {}
    if name == "sigma_distinct":
        K = OracleField(E)
        gens = [j for j in range(2, m) if gcd(j, m) == 1]
        for j in gens:
            for a1 in proper:
                O1 = OracleAlgebra(K, K.embed(a1), 1)
                for a2 in proper:
                    found, _ = brute_isomorphic_oracle(O1, OracleAlgebra(K, K.embed(a2), j))
                    checked += 1
                    if found:
                        counter.append({"a1": repr(a1), "a2": repr(a2), "j": j})
        detail["non_isomorphic"] = checked - len(counter)
    elif name == "classify_iso":
        rep = brute_classes(q, m, guard)
        checked = len(proper)
        detail = {"class_count": rep.class_count, "agreement": rep.agreement}
        if not rep.agreement:
            counter.append({"brute": rep.record()["classes"]})
    elif name in ("steele", "petit_division"):
        if q ** (m * m) > guard:
            raise TooLarge(f"q^(m^2) = {q ** (m * m)} exceeds the guard {guard}")
        if name == "petit_division" and not (is_prime(m) and (m in (2, 3) or (q - 1) % m == 0)):
            raise SpecMismatch("petit_division needs m prime and mu_m in F (or m in {2, 3})")
        K = OracleField(E)
        for a in proper:
            if name == "steele" and E.subfield_degree(a) != m:
                continue
            checked += 1
            if not _oracle_division(OracleAlgebra(K, K.embed(a), 1)):
                counter.append({"a": repr(a)})
    elif name == "nuclei":
        K = OracleField(E)
        dims_seen = set()
        for a in proper:
            d = _oracle_nucleus_dims(OracleAlgebra(K, K.embed(a), 1))
            checked += 1
            h = sum(1 for i in range(m) if E.sigma(a, i) == a)
            expected = {"left": m, "middle": m, "right": m * h, "center": 1}
            dims_seen.add(tuple(d.values()))
            if d != expected:
                counter.append({"a": repr(a), "dims": d, "expected": expected})
        detail["dims"] = sorted(dims_seen)
    return {"theorem": name, "params": {"q": q, "m": m}, "checked": checked,
            "passed": not counter and checked > 0, "counterexamples": counter, **detail}
