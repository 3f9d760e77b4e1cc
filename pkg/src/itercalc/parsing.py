"""Recursive-descent parser and printer for rational functions, words and matrices.

Grammar (whitespace allowed between tokens)::

    ratfun := ['+'|'-'] term (('+'|'-') term)*
    term   := unary (('*'|'/') unary)*
    unary  := ('+'|'-') unary | power
    power  := atom ['^' ['-'] INT]
    atom   := INT | 'z' | '(' ratfun ')'

    poly   := ['+'|'-'] pterm (('+'|'-') pterm)*
    pterm  := INT ['*'] [word] | word
    word   := ('e[' ratfun ']')+          hword := ('y[' INT ',' ratfun ']')+

    matrix := ratfun ',' ratfun ';' ratfun ',' ratfun
"""

from __future__ import annotations

from fractions import Fraction

from .errors import DivisionByZero, ExpressionSyntaxError, ZeroDenominator
from .ncalgebra import NcPoly, Word
from .products import HPoly, hletter
from .ratfield import MobiusMap, RatFun, format_ratfun


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    # -- low level -------------------------------------------------------

    def error(self, msg: str, pos: int | None = None) -> ExpressionSyntaxError:
        pos = self.pos if pos is None else pos
        return ExpressionSyntaxError(msg, self.text, len(self.text[:pos].encode()))

    def skip(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def accept(self, ch: str) -> bool:
        if self.peek() == ch:
            self.pos += 1
            return True
        return False

    def expect(self, ch: str) -> None:
        if not self.accept(ch):
            found = self.peek() or "end of input"
            raise self.error(f"expected {ch!r}, found {found!r}")

    def integer(self) -> int:
        self.skip()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if start == self.pos:
            found = self.peek() or "end of input"
            raise self.error(f"expected an integer, found {found!r}")
        return int(self.text[start : self.pos])

    def end(self) -> None:
        if self.peek():
            raise self.error(f"unexpected {self.peek()!r}")

    # -- rational functions ----------------------------------------------

    def ratfun(self) -> RatFun:
        val = self.term()
        while True:
            if self.accept("+"):
                val = val + self.term()
            elif self.accept("-"):
                val = val - self.term()
            else:
                return val

    def term(self) -> RatFun:
        val = self.unary()
        while True:
            if self.accept("*"):
                val = val * self.unary()
            elif self.peek() == "/":
                at = self.pos
                self.pos += 1
                rhs = self.unary()
                if not rhs:
                    raise ZeroDenominator(f"division by zero at offset {len(self.text[:at].encode())}")
                val = val / rhs
            else:
                return val

    def unary(self) -> RatFun:
        if self.accept("-"):
            return -self.unary()
        if self.accept("+"):
            return self.unary()
        return self.power()

    def power(self) -> RatFun:
        base = self.atom()
        if self.accept("^"):
            at = self.pos
            neg = self.accept("-")
            k = self.integer()
            if neg:
                if not base:
                    raise ZeroDenominator(f"zero raised to a negative power at offset {at}")
                return base ** (-k)
            return base**k
        return base

    def atom(self) -> RatFun:
        ch = self.peek()
        if ch == "z":
            self.pos += 1
            return RatFun.var()
        if ch == "(":
            self.pos += 1
            val = self.ratfun()
            self.expect(")")
            return val
        if ch.isdigit():
            return RatFun.const(self.integer())
        raise self.error(f"expected a number, 'z' or '(', found {ch or 'end of input'!r}")

    # -- words and polynomials -------------------------------------------

    def letter_e(self) -> RatFun:
        self.expect("e")
        self.expect("[")
        val = self.ratfun()
        self.expect("]")
        return val

    def word(self) -> Word:
        letters = [self.letter_e()]
        while self.peek() == "e":
            letters.append(self.letter_e())
        return tuple(letters)

    def hletter(self):
        self.expect("y")
        self.expect("[")
        at = self.pos
        k = self.integer()
        self.expect(",")
        a_at = self.pos
        a = self.ratfun()
        self.expect("]")
        if k < 1:
            raise self.error("index k must be at least 1", at)
        if not a:
            raise self.error("the letter y[k,a] needs a nonzero a", a_at)
        return hletter(k, a)

    def hword(self):
        letters = [self.hletter()]
        while self.peek() == "y":
            letters.append(self.hletter())
        return tuple(letters)

    def poly(self, word_start: str, read_word) -> dict:
        terms: dict = {}
        sign = 1
        if self.accept("-"):
            sign = -1
        else:
            self.accept("+")
        while True:
            ch = self.peek()
            if ch.isdigit():
                coeff = self.integer()
                self.accept("*")
                w = read_word() if self.peek() == word_start else ()
            elif ch == word_start:
                coeff, w = 1, read_word()
            else:
                raise self.error(f"expected a term, found {ch or 'end of input'!r}")
            terms[w] = terms.get(w, 0) + sign * coeff
            if self.accept("+"):
                sign = 1
            elif self.accept("-"):
                sign = -1
            else:
                self.end()
                return terms


def parse_ratfun(text: str) -> RatFun:
    p = _Parser(text)
    try:
        val = p.ratfun()
    except DivisionByZero as exc:
        raise ZeroDenominator(str(exc)) from exc
    p.end()
    return val


def parse_expr(text: str) -> NcPoly:
    """Parse ``"3*e[1]e[0] - e[z]"`` into an NcPoly."""
    p = _Parser(text)
    return NcPoly(p.poly("e", p.word))


def parse_word(text: str) -> Word:
    p = _Parser(text)
    if not p.peek():
        return ()
    w = p.word()
    p.end()
    return w


def parse_hexpr(text: str) -> HPoly:
    """Parse ``"y[2,1]y[1,-1] + 2*y[1,z]"`` into an HPoly."""
    p = _Parser(text)
    return HPoly(p.poly("y", p.hword))


def parse_matrix(text: str) -> MobiusMap:
    """Parse ``"a,b;c,d"`` with rational-function entries."""
    p = _Parser(text)
    a = p.ratfun()
    p.expect(",")
    b = p.ratfun()
    p.expect(";")
    c = p.ratfun()
    p.expect(",")
    d = p.ratfun()
    p.end()
    return MobiusMap(a, b, c, d)


def parse_rational(text: str) -> Fraction:
    val = parse_ratfun(text)
    if not val.is_const():
        raise ExpressionSyntaxError("expected a rational constant", text, 0)
    return val.num[0] if val.num else Fraction(0)


# ---------------------------------------------------------------------------
# printing


def format_word(w: Word) -> str:
    return "".join(f"e[{format_ratfun(x)}]" for x in w)


def _join(terms) -> str:
    if not terms:
        return "0"
    out = []
    for k, (body, c) in enumerate(terms):
        a = abs(c)
        if not body:
            piece = str(a)
        elif a == 1:
            piece = body
        else:
            piece = f"{a}*{body}"
        if k == 0:
            out.append(("-" if c < 0 else "") + piece)
        else:
            out.append((" - " if c < 0 else " + ") + piece)
    return "".join(out)


def format_expr(a: NcPoly) -> str:
    return _join([(format_word(w), c) for w, c in a.sorted_terms()])


def format_hword(w) -> str:
    return "".join(f"y[{k},{format_ratfun(a)}]" for k, a in w)


def format_hexpr(h: HPoly) -> str:
    return _join([(format_hword(w), c) for w, c in h.sorted_terms()])


def format_matrix(g: MobiusMap) -> str:
    return str(g)
