"""Grammar for matrices of free polynomials.

    matrix  :: '[' row (',' row)* ']'
    row     :: '[' poly (',' poly)* ']'
    poly    :: ['-'] term (('+' | '-') term)*
    term    :: coeff ['*'] factor ... | factor ['*'] factor ...
    factor  :: 'x' INTEGER | complex | '(' poly ')'
    coeff   :: REAL | complex
    complex :: '(' REAL ('+' | '-') REAL 'i' ')'

Whitespace is ignored. Juxtaposition multiplies, so ``2x1x2`` and
``2*x1*x2`` are the same term. Products never commute.
"""

from __future__ import annotations

import re
from functools import lru_cache

import pyparsing as pp

from src.errors import ParseError

from .algebra import FreePoly, FreePolyMatrix

_REAL_RE = r"(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?"


def _real_action(tokens: pp.ParseResults) -> FreePoly:
    return FreePoly.constant(float(tokens[0]))


def _complex_action(tokens: pp.ParseResults) -> FreePoly:
    re_part, sign, im_part = tokens
    im = float(im_part) if sign == "+" else -float(im_part)
    return FreePoly.constant(complex(float(re_part), im))


def _variable_action(tokens: pp.ParseResults) -> FreePoly:
    return FreePoly.variable(int(tokens[0][1:]))


def _product_action(tokens: pp.ParseResults) -> FreePoly:
    result = tokens[0]
    for factor in tokens[1:]:
        result = result * factor
    return result


def _sum_action(tokens: pp.ParseResults) -> FreePoly:
    items = list(tokens)
    if items and items[0] == "-":
        result = -items[1]
        rest = items[2:]
    else:
        result = items[0]
        rest = items[1:]
    for op, term in zip(rest[0::2], rest[1::2]):
        result = result + term if op == "+" else result - term
    return result


@lru_cache(maxsize=1)
def _grammar() -> pp.ParserElement:
    lpar = pp.Suppress("(")
    rpar = pp.Suppress(")")
    star = pp.Suppress(pp.Optional("*"))

    real = pp.Regex(_REAL_RE).set_name("real number")
    signed_real = pp.Regex(r"[+-]?" + _REAL_RE).set_name("signed real number")
    complex_lit = (lpar + signed_real + pp.one_of("+ -") + pp.Regex(_REAL_RE) + pp.Suppress("i") + rpar).set_parse_action(_complex_action)
    variable = pp.Regex(r"x[1-9]\d*").set_name("variable").set_parse_action(_variable_action)

    poly = pp.Forward().set_name("polynomial")
    factor = variable | complex_lit | (lpar + poly + rpar)
    coeff = complex_lit | real.copy().set_parse_action(_real_action)

    term = ((coeff + pp.ZeroOrMore(star + factor)) | (factor + pp.ZeroOrMore(star + factor))).set_parse_action(_product_action)
    poly <<= (pp.Optional("-") + term + pp.ZeroOrMore(pp.one_of("+ -") + term)).set_parse_action(_sum_action)

    row = pp.Group(pp.Suppress("[") + pp.DelimitedList(poly, ",") + pp.Suppress("]"))
    matrix = pp.Suppress("[") + pp.DelimitedList(row, ",") + pp.Suppress("]")
    return matrix


def parse(src: str, d: int) -> FreePolyMatrix:
    """Parse ``src`` into a J x L matrix of free polynomials in ``d`` variables."""
    try:
        parsed = _grammar().parse_string(src, parse_all=True)
    except pp.ParseBaseException as exc:
        raise ParseError(f"syntax error: {exc.msg}", position=exc.loc, line=exc.lineno, column=exc.col) from exc

    rows = [list(group) for group in parsed]
    if any(len(r) != len(rows[0]) for r in rows):
        raise ParseError("rows have different lengths", position=0)
    for r in rows:
        for p in r:
            if p.max_letter > d:
                match = re.search(rf"x{p.max_letter}(?!\d)", src)
                raise ParseError(f"variable index x{p.max_letter} out of range for d={d}", position=match.start() if match else 0)
    return FreePolyMatrix.of(rows, d)
