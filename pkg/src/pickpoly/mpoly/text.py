"""Text and JSON serialization for :class:`CPoly`.

Text grammar (whitespace ignored)::

    poly      := ['+'|'-'] term (('+'|'-') term)*
    term      := coeff ['*' monomial ('*'? monomial)*] | monomial ('*'? monomial)*
    coeff     := rational | '(' signed-part+ ')'      e.g.  3/4   (1/2+3/4i)
    monomial  := 'z' k ['^' e]                        k >= 1

Rationals are integers, fractions ``p/q`` or finite decimals.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Dict, Optional, Tuple

from .gauss import ONE, GaussRat
from .poly import CPoly, MultiIndex


class PolySyntaxError(ValueError):
    def __init__(self, message: str, pos: int):
        super().__init__(f"{message} at position {pos}")
        self.pos = pos


class _Parser:
    def __init__(self, text: str):
        self.s = text
        self.i = 0

    def skip(self):
        while self.i < len(self.s) and self.s[self.i].isspace():
            self.i += 1

    def peek(self) -> str:
        self.skip()
        return self.s[self.i] if self.i < len(self.s) else ""

    def eat(self, ch: str) -> bool:
        if self.peek() == ch:
            self.i += 1
            return True
        return False

    def error(self, msg: str):
        raise PolySyntaxError(msg, self.i)

    def number(self) -> Fraction:
        self.skip()
        start = self.i
        while self.i < len(self.s) and (self.s[self.i].isdigit() or self.s[self.i] == "."):
            self.i += 1
        if self.i < len(self.s) and self.s[self.i] == "/":
            self.i += 1
            d0 = self.i
            while self.i < len(self.s) and self.s[self.i].isdigit():
                self.i += 1
            if self.i == d0:
                self.error("expected denominator")
        text = self.s[start : self.i]
        if not text:
            self.error("expected number")
        try:
            value = Fraction(text)
        except (ValueError, ZeroDivisionError):
            raise PolySyntaxError(f"bad number {text!r}", start) from None
        return value

    def integer(self) -> int:
        self.skip()
        start = self.i
        while self.i < len(self.s) and self.s[self.i].isdigit():
            self.i += 1
        if start == self.i:
            self.error("expected integer")
        return int(self.s[start : self.i])

    def complex_coeff(self) -> GaussRat:
        # after '('
        total = GaussRat(0)
        first = True
        while True:
            sign = 1
            if self.eat("+"):
                pass
            elif self.eat("-"):
                sign = -1
            elif not first:
                break
            first = False
            if self.peek() == "i":
                self.i += 1
                total = total + GaussRat(0, sign)
                continue
            v = self.number()
            if self.eat("i"):
                total = total + GaussRat(0, sign * v)
            else:
                total = total + GaussRat(sign * v)
        if not self.eat(")"):
            self.error("expected ')'")
        return total

    def monomial(self, alpha: list, n: Optional[int], seen: list) -> None:
        pos = self.i
        if not self.eat("z"):
            self.error("expected variable 'z<k>'")
        k = self.integer()
        if k < 1:
            raise PolySyntaxError("variable indices start at 1 (z1)", pos)
        if n is not None and k > n:
            raise PolySyntaxError(f"variable index z{k} out of range for n={n}", pos)
        e = 1
        if self.eat("^"):
            e = self.integer()
        while len(alpha) < k:
            alpha.append(0)
        alpha[k - 1] += e
        seen[0] = max(seen[0], k)

    def term(self, n, seen) -> Tuple[GaussRat, list]:
        c = ONE
        alpha: list = []
        ch = self.peek()
        if ch == "(":
            self.i += 1
            c = self.complex_coeff()
            if not self.eat("*") and self.peek() != "z":
                return c, alpha
        elif ch.isdigit() or ch == ".":
            c = GaussRat(self.number())
            if not self.eat("*") and self.peek() != "z":
                return c, alpha
        elif ch != "z":
            self.error("expected term")
        self.monomial(alpha, n, seen)
        while True:
            save = self.i
            if self.eat("*"):
                if self.peek() != "z":
                    self.i = save
                    self.error("expected variable after '*'")
                self.monomial(alpha, n, seen)
            elif self.peek() == "z":
                self.monomial(alpha, n, seen)
            else:
                break
        return c, alpha

    def poly(self, n: Optional[int]) -> Tuple[Dict[tuple, GaussRat], int]:
        seen = [0]
        raw = []
        sign = 1
        if self.eat("-"):
            sign = -1
        else:
            self.eat("+")
        while True:
            c, alpha = self.term(n, seen)
            raw.append((c * sign, alpha))
            if self.eat("+"):
                sign = 1
            elif self.eat("-"):
                sign = -1
            elif self.peek() == "":
                break
            else:
                self.error("unexpected character")
        nn = n if n is not None else max(seen[0], 1)
        acc: Dict[tuple, GaussRat] = {}
        for c, alpha in raw:
            a = tuple(alpha + [0] * (nn - len(alpha)))
            acc[a] = acc.get(a, GaussRat(0)) + c
        return acc, nn


def parse_poly(text: str, n: Optional[int] = None) -> CPoly:
    """Parse the text form; ``n`` defaults to the largest variable index present."""
    p = _Parser(text)
    if p.peek() == "":
        raise PolySyntaxError("empty polynomial", 0)
    terms, nn = p.poly(n)
    return CPoly(nn, terms)


def _format_coeff(c: GaussRat) -> str:
    if c.is_real():
        return str(c.re)
    sign = "+" if c.im >= 0 else "-"
    return f"({c.re}{sign}{abs(c.im)}i)"


def _format_monomial(alpha: MultiIndex) -> str:
    parts = []
    for j, e in enumerate(alpha, start=1):
        if e == 1:
            parts.append(f"z{j}")
        elif e > 1:
            parts.append(f"z{j}^{e}")
    return "*".join(parts)


def format_poly(Q: CPoly) -> str:
    """Canonical text: ascending total degree, ``z1`` before ``z2`` within a degree."""
    if Q.is_zero():
        return "0"
    out = []
    items = sorted(Q.items(), key=lambda t: (sum(t[0]), tuple(-x for x in t[0])))
    for idx, (alpha, c) in enumerate(items):
        mono = _format_monomial(alpha)
        if c.is_real():
            neg = c.re < 0
            mag = abs(c.re)
            body = mono if (mono and mag == 1) else (f"{mag}*{mono}" if mono else str(mag))
            if idx == 0:
                out.append(("-" if neg else "") + body)
            else:
                out.append((" - " if neg else " + ") + body)
        else:
            body = _format_coeff(c) + (f"*{mono}" if mono else "")
            out.append(body if idx == 0 else " + " + body)
    return "".join(out)


def rational_str(x: Fraction) -> str:
    return str(Fraction(x))


def gauss_to_json(c: GaussRat) -> dict:
    return {"re": rational_str(c.re), "im": rational_str(c.im)}


def gauss_from_json(obj) -> GaussRat:
    if isinstance(obj, dict):
        return GaussRat(_json_rational(obj.get("re", "0")), _json_rational(obj.get("im", "0")))
    return GaussRat(_json_rational(obj))


def _json_rational(v) -> Fraction:
    if isinstance(v, float):
        return Fraction(v)
    return Fraction(v)


def poly_to_json(Q: CPoly) -> dict:
    return {
        "n": Q.n,
        "terms": [
            {"alpha": list(a), **gauss_to_json(c)} for a, c in Q.sorted_terms(reverse=True)
        ],
    }


def poly_from_json(obj) -> CPoly:
    if isinstance(obj, str):
        obj = json.loads(obj)
    n = int(obj["n"])
    terms: Dict[tuple, GaussRat] = {}
    for t in obj["terms"]:
        a = tuple(int(x) for x in t["alpha"])
        terms[a] = terms.get(a, GaussRat(0)) + gauss_from_json(t)
    return CPoly(n, terms)
