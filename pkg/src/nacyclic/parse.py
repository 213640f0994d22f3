"""Parsing and rendering of field descriptors and element literals.

Grammar (whitespace is ignored):

    fq        := INT | "[" INT ("," INT)* "]"                residues, low degree first
    local     := "0" | "O(" S "^" INT ")"
               | S "^" INT "*(" series ")"                   O-term relative to S^v
               | series                                      O-term absolute
    series    := term ("+" term)* ["+" "O(" S "^" INT ")"]  with "-" allowed between terms
    term      := coef ["*" S ["^" INT]] | S ["^" INT]
    coef      := INT ["/" INT] | fq
    ext       := "(" base ("," base)* ")"
    alg       := "[" ext (";" ext)* "]"

S is the uniformizer symbol: the prime p for Qp, "t" for Laurent series.
Field descriptors: GF:<q>, Qp:<p>, Laurent:<q>, or the rendered forms
GF(p^n; modulus=[...]), Q<p>, F<q>((t)).  Extension descriptors:
unram:<m>, sqrt:<c>, kummer:<b> (degree from --m), as:<c>, tower.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .errors import ContextMismatch, LiteralSyntaxError
from .extension import (CyclicExtension, ExtElem, make_artin_schreier, make_kummer,
                        make_quartic_tower, make_sqrt, make_unramified)
from .ffield import FqElem, FqSpec, fq_make, gf
from .localfield import LocalElem, LocalFieldSpec, laurent, qp, render_local


# -- descriptors --------------------------------------------------------------------

_RENDERED_FIELD = re.compile(
    r"\s*(?:GF\((\d+)(?:\^(\d+))?(?:;\s*modulus=\[([\d,\s]+)\])?\)|Q(\d+)|F(\d+)\(\(t\)\))\s*")


def _parse_rendered_field(text: str, precision: int | None, modulus):
    """The forms printed by repr: GF(p^n; modulus=[...]), Qp as Q5, F4((t))."""
    m = _RENDERED_FIELD.fullmatch(text)
    if not m:
        return None
    if m.group(1):
        if m.group(3):
            modulus = [int(c) for c in m.group(3).split(",")]
        return parse_field(f"GF:{m.group(1)}^{m.group(2) or 1}", precision, modulus)
    if m.group(4):
        return parse_field(f"Qp:{m.group(4)}", precision)
    return parse_field(f"Laurent:{m.group(5)}", precision)


def parse_field(text: str, precision: int | None = None, modulus=None):
    rendered = _parse_rendered_field(text or "", precision, modulus)
    if rendered is not None:
        return rendered
    m = re.fullmatch(r"\s*(GF|Qp|Laurent)\s*:\s*(\d+)(?:\^(\d+))?\s*", text or "")
    if not m:
        raise LiteralSyntaxError(f"bad field descriptor {text!r}; expected GF:<q>, Qp:<p> or Laurent:<q>", text, 0)
    kind, a, e = m.group(1), int(m.group(2)), m.group(3)
    q = a ** int(e) if e else a
    if kind == "GF":
        if modulus is not None:
            from .ffield import prime_power
            p, n = prime_power(q)
            return fq_make(p, n, modulus)
        return gf(q)
    if kind == "Qp":
        if e:
            raise LiteralSyntaxError("Qp takes a prime", text, m.start(3))
        return qp(q, precision or 12)
    return laurent(q, precision or 12)


def parse_extension(text: str, base, m: int | None = None) -> CyclicExtension:
    mt = re.fullmatch(r"\s*(unram|sqrt|kummer|as|tower)\s*(?::\s*(.+?))?\s*", text or "")
    if not mt:
        raise LiteralSyntaxError(f"bad extension descriptor {text!r}; expected unram:<m>, sqrt:<c>, kummer:<b>, as:<c> or tower", text, 0)
    kind, arg = mt.group(1), mt.group(2)
    if kind == "tower":
        return make_quartic_tower(base)
    if arg is None:
        raise LiteralSyntaxError(f"{kind} needs a parameter", text, len(text))
    if kind == "unram":
        try:
            deg = int(arg)
        except ValueError:
            raise LiteralSyntaxError("unram:<m> needs an integer degree", text, mt.start(2)) from None
        return make_unramified(base, deg)
    value = parse_base(arg, base)
    if kind == "sqrt":
        return make_sqrt(base, value)
    if kind == "as":
        return make_artin_schreier(base, value)
    if m is None:
        raise LiteralSyntaxError("kummer:<b> needs the degree (--m)", text, 0)
    return make_kummer(base, m, value)


# -- scanner --------------------------------------------------------------------------

class _Scanner:
    def __init__(self, text: str):
        self.text = text
        self.s = text
        self.i = 0

    def skip(self):
        while self.i < len(self.s) and self.s[self.i].isspace():
            self.i += 1

    def peek(self, k: int = 1) -> str:
        self.skip()
        return self.s[self.i:self.i + k]

    def eat(self, tok: str) -> bool:
        self.skip()
        if self.s.startswith(tok, self.i):
            self.i += len(tok)
            return True
        return False

    def expect(self, tok: str):
        if not self.eat(tok):
            self.fail(f"expected {tok!r}")

    def at_end(self) -> bool:
        self.skip()
        return self.i >= len(self.s)

    def fail(self, msg: str):
        raise LiteralSyntaxError(f"{msg} in {self.text!r}", self.text, self.i)

    def integer(self) -> int:
        self.skip()
        m = re.compile(r"[+-]?\d+").match(self.s, self.i)
        if not m:
            self.fail("expected an integer")
        self.i = m.end()
        return int(m.group())

    def symbol(self, sym: str) -> bool:
        """Match the uniformizer symbol as a whole token."""
        self.skip()
        if not self.s.startswith(sym, self.i):
            return False
        j = self.i + len(sym)
        if sym.isdigit() and j < len(self.s) and self.s[j].isdigit():
            return False
        self.i = j
        return True


def _split_top(s: str, sep: str, text: str, offset: int) -> list[tuple[str, int]]:
    """Split on sep outside brackets; returns (piece, start offset)."""
    out, depth, start = [], 0, 0
    for i, ch in enumerate(s):
        if ch in "([":
            depth += 1
        elif ch in ")]":
            depth -= 1
            if depth < 0:
                raise LiteralSyntaxError(f"unbalanced {ch!r} in {text!r}", text, offset + i)
        elif ch == sep and depth == 0:
            out.append((s[start:i], offset + start))
            start = i + 1
    if depth:
        raise LiteralSyntaxError(f"unbalanced brackets in {text!r}", text, offset + len(s))
    out.append((s[start:], offset + start))
    return out


# -- finite fields --------------------------------------------------------------------

def parse_fq(text: str, F: FqSpec) -> FqElem:
    sc = _Scanner(text)
    x = _fq(sc, F)
    if not sc.at_end():
        sc.fail("trailing characters")
    return x


def _fq(sc: _Scanner, F: FqSpec) -> FqElem:
    if sc.eat("["):
        coeffs = [sc.integer()]
        while sc.eat(","):
            coeffs.append(sc.integer())
        sc.expect("]")
        if len(coeffs) > F.n:
            raise ContextMismatch(f"{len(coeffs)} coefficients for {F}")
        return F(coeffs)
    return F(sc.integer())


# -- local fields ---------------------------------------------------------------------

def parse_local(text: str, F: LocalFieldSpec) -> LocalElem:
    sc = _Scanner(text)
    x = _local(sc, F)
    if not sc.at_end():
        sc.fail("trailing characters")
    return x


def _sym(F: LocalFieldSpec) -> str:
    return str(F.p) if F.is_padic else "t"


def _local(sc: _Scanner, F: LocalFieldSpec) -> LocalElem:
    sym = _sym(F)
    start = sc.i
    # prefixed form  S^v*( series )
    if sc.symbol(sym) and sc.eat("^"):
        v = sc.integer()
        if sc.eat("*") and sc.eat("("):
            terms, big_o = _series(sc, F, sym)
            sc.expect(")")
            shifted = [(e + v, c) for e, c in terms]
            absprec = None if big_o is None else big_o + v
            return _build(F, shifted, absprec, sc)
    sc.i = start
    terms, big_o = _series(sc, F, sym)
    return _build(F, terms, big_o, sc)


def _series(sc: _Scanner, F: LocalFieldSpec, sym: str):
    terms = []
    big_o = None
    sign = 1
    if sc.eat("-"):
        sign = -1
    while True:
        if sc.eat("O("):
            if not sc.symbol(sym):
                sc.fail(f"expected {sym!r} in O-term")
            k = sc.integer() if sc.eat("^") else 1
            sc.expect(")")
            big_o = k
            break
        coef, exp = _term(sc, F, sym)
        terms.append((exp, _neg(coef) if sign < 0 else coef))
        if sc.eat("+"):
            sign = 1
        elif sc.eat("-"):
            sign = -1
        else:
            break
    return terms, big_o


def _neg(c):
    return -c


def _term(sc: _Scanner, F: LocalFieldSpec, sym: str):
    sc.skip()
    if sc.peek() == "[":
        d = _fq(sc, F.residue)
        coef = Fraction(d.code) if F.is_padic else d
    elif not F.is_padic and sc.symbol(sym):
        return F.residue.one(), (sc.integer() if sc.eat("^") else 1)
    else:
        n = sc.integer()
        if F.is_padic and n == F.p and sc.peek() == "^":
            sc.expect("^")
            return Fraction(1), sc.integer()
        coef = Fraction(n)
        if sc.eat("/"):
            den = sc.integer()
            if den == 0:
                sc.fail("zero denominator")
            coef = Fraction(n, den)
        if not F.is_padic:
            if coef.denominator % F.p == 0:
                sc.fail("denominator divisible by the characteristic")
            coef = F.residue(coef.numerator * pow(coef.denominator, -1, F.p))
    e = 0
    if sc.eat("*"):
        if not sc.symbol(sym):
            sc.fail(f"expected {sym!r}")
        e = sc.integer() if sc.eat("^") else 1
    return coef, e


def _build(F: LocalFieldSpec, terms, absprec, sc: _Scanner) -> LocalElem:
    if not terms:
        if absprec is None:
            sc.fail("empty literal")
        return F.inexact_zero(absprec)
    if F.is_padic:
        total = sum((c * Fraction(F.p) ** e for e, c in terms), Fraction(0))
        if absprec is None:
            return F(total) if total != 0 else F.zero()
        if total == 0 or _fval(total, F.p) >= absprec:
            return F.inexact_zero(absprec)
        return F(total, absprec - _fval(total, F.p))
    acc: dict = {}
    for e, c in terms:
        acc[e] = acc.get(e, F.residue.zero()) + c
    acc = {e: c for e, c in acc.items() if not c.is_zero()}
    if absprec is None:
        if not acc:
            return F.zero()
        absprec = min(acc) + F.default_precision
    return F.from_terms(acc, absprec)


def _fval(x: Fraction, p: int) -> int:
    v = 0
    n, d = x.numerator, x.denominator
    while n % p == 0:
        n //= p
        v += 1
    while d % p == 0:
        d //= p
        v -= 1
    return v


# -- dispatch on context --------------------------------------------------------------

def parse_base(text: str, base):
    if isinstance(base, FqSpec):
        return parse_fq(text, base)
    return parse_local(text, base)


def parse_ext(text: str, E: CyclicExtension) -> ExtElem:
    s = text.strip()
    if s.startswith("(") != s.endswith(")"):
        raise LiteralSyntaxError(f"unbalanced parentheses in {text!r}", text, len(text))
    if not s.startswith("("):
        # a bare base-field literal embeds as a constant
        return E.embed(parse_base(s, E.base))
    offset = text.index("(") + 1
    pieces = _split_top(s[1:-1], ",", text, offset)
    for piece, pos in pieces:
        if not piece.strip():
            raise LiteralSyntaxError(f"empty coordinate in {text!r}", text, pos)
    if len(pieces) > E.m:
        raise ContextMismatch(f"{len(pieces)} coordinates for an extension of degree {E.m}")
    coeffs = []
    for piece, pos in pieces:
        try:
            coeffs.append(parse_base(piece, E.base))
        except LiteralSyntaxError as exc:
            raise LiteralSyntaxError(f"bad coordinate {piece.strip()!r} in {text!r}", text,
                                     pos + (exc.position or 0)) from None
    return E.element(coeffs)


def parse_alg(text: str, A):
    s = text.strip()
    if s.startswith("[") != s.endswith("]"):
        raise LiteralSyntaxError(f"unbalanced brackets in {text!r}", text, len(text))
    # "[...]" is an algebra literal when it has ";" or starts with an extension literal;
    # otherwise it is a residue literal embedded as a constant
    if not s.startswith("[") or (";" not in s and not s[1:].lstrip().startswith("(")):
        return A.from_ext(parse_ext(s, A.ext))
    offset = text.index("[") + 1
    pieces = _split_top(s[1:-1], ";", text, offset)
    if len(pieces) > A.m:
        raise ContextMismatch(f"{len(pieces)} components for an algebra of degree {A.m}")
    return A.element([parse_ext(p, A.ext) for p, _ in pieces])


def parse_element(text: str, context):
    """Parse a literal in the given context (field, extension or algebra)."""
    from .nacalg import CyclicAlgebra
    if isinstance(context, CyclicAlgebra):
        return parse_alg(text, context)
    if isinstance(context, CyclicExtension):
        return parse_ext(text, context)
    if isinstance(context, (FqSpec, LocalFieldSpec)):
        return parse_base(text, context)
    raise ContextMismatch(f"unknown context {context!r}")


def render(x) -> str:
    if isinstance(x, LocalElem):
        return render_local(x)
    return repr(x)
