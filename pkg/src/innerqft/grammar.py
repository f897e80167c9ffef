"""Text grammar for operator expressions and kets.

    expr   := ['-'] term (('+'|'-') term)*
    term   := factor (['*'] factor)*          -- juxtaposition multiplies
    factor := scalar | coeff | operator | '(' expr ')'
    scalar := number | number 'i' | 'i'
    coeff  := 'L' '^' int | '(2pi)' '^' int | 'Vreg' ['^' int]
            | 'w' '(' mom ')' ['^' int] | 'E/m' '(' mom ')' ['^' int]
            | 'd3' '(' (mom '-' mom | '0') ')'
            | 'd4' '(' (inner '-' inner | '0') ')'
            | 'kd' '(' disc ',' disc ')'
            | ('eta'|'ETA') '[' disc ',' disc ']'
    operator := ('a'|'b'|'d'|'A') ["'"] '(' labels ')'
    labels := mom [',s=' disc] [',g=' disc] ';' inner [',G=' disc]
    mom    := ident | '[' number ',' number ',' number ']'
    inner  := ident | '[' number{4 comma-separated} ']' | '~' mom
    ket    := expr '|0>'

The dagger is the apostrophe suffix; numbers are exact rationals
(`2`, `-3/2`, `0.25`); `~k` marks an inner label pinned to the on-shell
four-vector of momentum `k`. The printer emits canonical text and
parse(print(e)) == e holds for every expression.
"""

from __future__ import annotations

import re
from fractions import Fraction

from . import opalg
from .opalg import (CRat, Delta3, Delta3Zero, Delta4, Delta4Zero, ERatioPow,
                    LadderOperator, Metric, Monomial, OmegaPow, OnShell,
                    OperatorExpr, SpinDelta, make_monomial)


class ParseError(ValueError):
    def __init__(self, message: str, pos: int):
        super().__init__(f"{message} (column {pos + 1})")
        self.pos = pos


_TOKEN_RE = re.compile(r"""
    (?P<ws>\s+)
  | (?P<ket>\|0>)
  | (?P<number>\d+(?:\.\d+)?(?:/\d+)?)
  | (?P<ident>[A-Za-z_]\w*)
  | (?P<sym>[-+*()\[\],;='^/~])
""", re.VERBOSE)

_HEADS = {"a": opalg.SCALAR, "b": opalg.DIRAC_PARTICLE,
          "d": opalg.DIRAC_ANTIPARTICLE, "A": opalg.GAUGE}
_COEFF_IDENTS = {"L", "Vreg", "w", "E", "d3", "d4", "kd", "eta", "ETA"}


def _tokenize(src: str):
    tokens = []
    pos = 0
    while pos < len(src):
        m = _TOKEN_RE.match(src, pos)
        if m is None:
            raise ParseError(f"unexpected character {src[pos]!r}", pos)
        if m.lastgroup != "ws":
            tokens.append((m.lastgroup, m.group(), pos))
        pos = m.end()
    tokens.append(("eof", "", len(src)))
    return tokens


class _Parser:
    def __init__(self, src: str):
        self.tokens = _tokenize(src)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def next(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, kind: str, text: str | None = None):
        tok = self.next()
        if tok[0] != kind or (text is not None and tok[1] != text):
            want = text or kind
            raise ParseError(f"expected {want!r}, found {tok[1] or 'end of input'!r}",
                             tok[2])
        return tok

    # -- grammar rules ------------------------------------------------------

    def parse_expr(self) -> OperatorExpr:
        negate = False
        if self.peek()[:2] == ("sym", "-"):
            self.next()
            negate = True
        result = self.parse_term()
        if negate:
            result = -result
        while self.peek()[1] in ("+", "-") and self.peek()[0] == "sym":
            op = self.next()[1]
            term = self.parse_term()
            result = result + (-term if op == "-" else term)
        return result

    def _starts_factor(self) -> bool:
        kind, text, _ = self.peek()
        if kind == "number":
            return True
        if kind == "ident":
            return text == "i" or text in _HEADS or text in _COEFF_IDENTS
        return kind == "sym" and text == "("

    def parse_term(self) -> OperatorExpr:
        result = self.parse_factor()
        while True:
            if self.peek()[:2] == ("sym", "*"):
                self.next()
                result = result * self.parse_factor()
            elif self._starts_factor():
                # juxtaposition is multiplication: a(k;K) a'(h;H)
                result = result * self.parse_factor()
            else:
                return result

    def parse_factor(self) -> OperatorExpr:
        kind, text, pos = self.peek()
        if kind == "sym" and text == "-":
            self.next()
            return -self.parse_factor()
        if kind == "sym" and text == "(":
            if (self.tokens[self.i + 1][:2] == ("number", "2")
                    and self.tokens[self.i + 2][:2] == ("ident", "pi")
                    and self.tokens[self.i + 3][:2] == ("sym", ")")):
                self.i += 4
                self.expect("sym", "^")
                return OperatorExpr.from_monomials(
                    [make_monomial(1, twopi=self.parse_int())])
            self.next()
            inner = self.parse_expr()
            self.expect("sym", ")")
            return inner
        if kind == "ident" and text in _COEFF_IDENTS:
            return self.parse_coeff()
        if kind == "number":
            self.next()
            value = Fraction(text)
            if self.peek()[:2] == ("ident", "i"):
                self.next()
                return OperatorExpr.number(CRat(Fraction(0), value))
            return OperatorExpr.number(CRat(value))
        if kind == "ident" and text == "i":
            self.next()
            return OperatorExpr.number(CRat(Fraction(0), Fraction(1)))
        if kind == "ident" and text in _HEADS:
            return self.parse_operator()
        raise ParseError(f"expected a scalar, operator or '(', found {text!r}", pos)

    def parse_int(self) -> int:
        negate = False
        if self.peek()[:2] == ("sym", "-"):
            self.next()
            negate = True
        text = self.expect("number")[1]
        value = Fraction(text)
        if value.denominator != 1:
            raise ParseError("expected an integer exponent",
                             self.tokens[self.i - 1][2])
        return -int(value) if negate else int(value)

    def _opt_power(self) -> int:
        if self.peek()[:2] == ("sym", "^"):
            self.next()
            return self.parse_int()
        return 1

    def parse_coeff(self) -> OperatorExpr:
        kind, name, pos = self.next()
        if name == "L":
            self.expect("sym", "^")
            return OperatorExpr.from_monomials(
                [make_monomial(1, lam=self.parse_int())])
        if name == "Vreg":
            return OperatorExpr.from_monomials(
                [make_monomial(1, vreg=self._opt_power())])
        if name in ("w", "E"):
            if name == "E":
                self.expect("sym", "/")
                self.expect("ident", "m")
            self.expect("sym", "(")
            mom = self.parse_label(3)
            self.expect("sym", ")")
            power = self._opt_power()
            atom = OmegaPow(mom, power) if name == "w" else ERatioPow(mom, power)
            return OperatorExpr.from_monomials([make_monomial(1, atoms=(atom,))])
        if name in ("d3", "d4"):
            self.expect("sym", "(")
            if self.peek()[:2] == ("number", "0"):
                self.next()
                self.expect("sym", ")")
                atom = Delta3Zero() if name == "d3" else Delta4Zero()
                return OperatorExpr.from_monomials([make_monomial(1, atoms=(atom,))])
            size = 3 if name == "d3" else 4
            first = self.parse_label(size)
            self.expect("sym", "-")
            second = self.parse_label(size)
            self.expect("sym", ")")
            atom = (Delta3 if name == "d3" else Delta4)(first, second)
            return OperatorExpr.from_monomials([make_monomial(1, atoms=(atom,))])
        if name == "kd":
            self.expect("sym", "(")
            a = self.parse_disc()
            self.expect("sym", ",")
            b = self.parse_disc()
            self.expect("sym", ")")
            return OperatorExpr.from_monomials(
                [make_monomial(1, atoms=(SpinDelta(a, b),))])
        # eta / ETA metric factors
        self.expect("sym", "[")
        a = self.parse_disc()
        self.expect("sym", ",")
        b = self.parse_disc()
        self.expect("sym", "]")
        return OperatorExpr.from_monomials(
            [make_monomial(1, atoms=(Metric(name == "eta", a, b),))])

    def parse_operator(self) -> OperatorExpr:
        kind, head, pos = self.next()
        field = _HEADS[head]
        dagger = False
        if self.peek()[:2] == ("sym", "'"):
            self.next()
            dagger = True
        self.expect("sym", "(")
        mom = self.parse_label(3)
        spin = pol = ipol = None
        while self.peek()[:2] == ("sym", ","):
            self.next()
            name = self.expect("ident")[1]
            self.expect("sym", "=")
            if name == "s":
                spin = self.parse_disc()
            elif name == "g":
                pol = self.parse_disc()
            else:
                raise ParseError(f"unknown label {name!r} before ';'", pos)
        self.expect("sym", ";")
        inner = self.parse_label(4)
        if self.peek()[:2] == ("sym", ","):
            self.next()
            name = self.expect("ident")[1]
            if name != "G":
                raise ParseError(f"unknown label {name!r} after ';'", pos)
            self.expect("sym", "=")
            ipol = self.parse_disc()
        self.expect("sym", ")")
        try:
            op = LadderOperator(field, dagger, mom, inner, spin=spin,
                                pol=pol, ipol=ipol)
        except ValueError as exc:
            raise ParseError(str(exc), pos) from None
        return OperatorExpr.from_op(op)

    def parse_label(self, size: int):
        kind, text, pos = self.peek()
        if kind == "sym" and text == "~" and size == 4:
            self.next()
            return OnShell(self.parse_label(3))
        if kind == "ident":
            self.next()
            return text
        if kind == "sym" and text == "[":
            self.next()
            comps = [self.parse_number()]
            while self.peek()[:2] == ("sym", ","):
                self.next()
                comps.append(self.parse_number())
            self.expect("sym", "]")
            if len(comps) != size:
                raise ParseError(f"expected a {size}-component bound label", pos)
            return tuple(comps)
        raise ParseError("expected a label symbol or bound vector", pos)

    def parse_number(self) -> Fraction:
        negate = False
        if self.peek()[:2] == ("sym", "-"):
            self.next()
            negate = True
        text = self.expect("number")[1]
        value = Fraction(text)
        return -value if negate else value

    def parse_disc(self):
        kind, text, _ = self.next()
        if kind == "number":
            return int(text)
        if kind == "ident":
            return text
        raise ParseError("expected a discrete label", self.tokens[self.i - 1][2])


def parse_expression(src: str) -> OperatorExpr:
    """Parse an operator expression in the grammar above."""
    p = _Parser(src)
    expr = p.parse_expr()
    p.expect("eof")
    return expr


def parse_state(src: str):
    """Parse `expr |0>` (or a bare expression, treated as a ket prefix)."""
    p = _Parser(src)
    expr = p.parse_expr()
    if p.peek()[0] == "ket":
        p.next()
    p.expect("eof")
    return expr


# ---------------------------------------------------------------------------
# Canonical printer


def _scalar_str(c: CRat) -> str:
    if not c.im:
        return str(c.re)
    if not c.re:
        if c.im == 1:
            return "i"
        if c.im == -1:
            return "-i"
        return f"{c.im}*i"
    im = c.im
    sign = "+" if im > 0 else "-"
    mag = abs(im)
    istr = "i" if mag == 1 else f"{mag}*i"
    return f"({c.re}{sign}{istr})"


def print_monomial(m: Monomial) -> str:
    parts = []
    if m.lam or m.twopi or m.vreg or m.atoms:
        parts.append(m.coeff_str())
    elif m.scalar != opalg.ONE or not m.ops:
        parts.append(_scalar_str(m.scalar))
    parts.extend(str(op) for op in m.ops)
    return "*".join(parts)


def print_expression(e: OperatorExpr) -> str:
    """Canonical text; parse_expression(print_expression(e)) == e."""
    if e.is_zero():
        return "0"
    return " + ".join(print_monomial(m) for m in e.terms)
