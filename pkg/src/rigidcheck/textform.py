"""Text syntax for polynomials and the hypersurface input format.

Polynomial syntax: terms like ``3*x0^2*x4 - x1*x2^4 + 7`` with variables
x0..x{n-1}, integer or a/b rational coefficients, ^ for powers, whitespace
insensitive. Printing (Polynomial.__str__) and parsing round-trip exactly.

Hypersurface files carry a header line ``M=<int> field=Q`` or
``M=<int> field=Fp:<p>`` followed by the polynomial text (any number of
lines; ``#`` starts a comment line).
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from .errors import ParseError
from .fields import field_from_spec, field_spec
from .poly import Polynomial, PolyRing

_TOKEN = re.compile(r"(?P<num>\d+)|(?P<var>x\d+)|(?P<op>[\^*+\-/])|(?P<bad>\S)")


def _tokenize(text: str):
    tokens = []
    for m in _TOKEN.finditer(text):
        if m.lastgroup == "bad":
            raise ParseError(f"unexpected character {m.group()!r}", m.start())
        tokens.append((m.lastgroup, m.group(), m.start()))
    return tokens


def parse_polynomial(text: str, ring: PolyRing) -> Polynomial:
    """Parse polynomial text into the given ring."""
    tokens = _tokenize(text)
    if not tokens:
        raise ParseError("empty polynomial text", 0)
    n = ring.nvars
    pos = 0
    terms = []

    def peek():
        return tokens[pos] if pos < len(tokens) else (None, None, len(text))

    def take():
        nonlocal pos
        tok = peek()
        pos += 1
        return tok

    def parse_uint():
        kind, val, at = take()
        if kind != "num":
            raise ParseError("expected a number", at)
        return int(val)

    def parse_factor():
        """Returns (coeff_or_None, var_index_or_None, exponent)."""
        kind, val, at = peek()
        if kind == "num":
            take()
            value = Fraction(int(val))
            if peek()[1] == "/":
                take()
                kind2, val2, at2 = take()
                if kind2 != "num":
                    raise ParseError("expected denominator", at2)
                if int(val2) == 0:
                    raise ParseError("zero denominator", at2)
                value /= int(val2)
            return value, None, 0
        if kind == "var":
            take()
            idx = int(val[1:])
            if idx >= n:
                raise ParseError(f"variable {val} out of range (have x0..x{n-1})", at)
            exp = 1
            if peek()[1] == "^":
                take()
                exp = parse_uint()
            return None, idx, exp
        raise ParseError("expected a coefficient or variable", at)

    def parse_term(sign: int):
        coeff = Fraction(sign)
        exps = [0] * n
        while True:
            c, idx, exp = parse_factor()
            if c is not None:
                coeff *= c
            else:
                exps[idx] += exp
            if peek()[1] == "*":
                take()
                continue
            break
        terms.append((tuple(exps), coeff))

    sign = 1
    kind, val, at = peek()
    if val in ("+", "-"):
        take()
        sign = -1 if val == "-" else 1
    parse_term(sign)
    while pos < len(tokens):
        kind, val, at = take()
        if val == "+":
            parse_term(1)
        elif val == "-":
            parse_term(-1)
        else:
            raise ParseError(f"expected '+' or '-', got {val!r}", at)
    return ring.from_terms(terms)


@dataclass(frozen=True)
class HypersurfaceInput:
    """A parsed input: degree-M form in M+1 variables over Q or F_p."""

    M: int
    field: object
    f: Polynomial


_HEADER = re.compile(r"^\s*M\s*=\s*(\d+)\s+field\s*=\s*(\S+)\s*$")


def parse_hypersurface(text: str) -> HypersurfaceInput:
    lines = [ln for ln in text.splitlines()
             if ln.strip() and not ln.lstrip().startswith("#")]
    if not lines:
        raise ParseError("empty input: expected a header line 'M=<int> field=...'")
    m = _HEADER.match(lines[0])
    if not m:
        raise ParseError(f"bad header line {lines[0]!r}; "
                         "expected 'M=<int> field=Q' or 'M=<int> field=Fp:<p>'")
    M = int(m.group(1))
    if M < 2:
        raise ParseError(f"M={M} is too small")
    field = field_from_spec(m.group(2))
    ring = PolyRing(field, M + 1)
    body = " ".join(lines[1:])
    f = parse_polynomial(body, ring)
    if f.is_zero:
        raise ParseError("the zero polynomial does not define a hypersurface")
    deg = f.homogeneous_degree()
    if deg != M:
        raise ParseError(
            f"polynomial must be homogeneous of degree M={M}; "
            f"got {'inhomogeneous input' if deg is None else f'degree {deg}'}")
    return HypersurfaceInput(M=M, field=field, f=f)


def load_hypersurface(path) -> HypersurfaceInput:
    return parse_hypersurface(Path(path).read_text())


def format_hypersurface(hs: HypersurfaceInput) -> str:
    return f"M={hs.M} field={field_spec(hs.field)}\n{hs.f}\n"
