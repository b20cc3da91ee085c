from __future__ import annotations

from dataclasses import dataclass
from types import MappingProxyType
from typing import Iterable, Mapping, Sequence

from src.data.models import FreePolyMatrixPayload, TermPayload
from src.errors import InvalidInputError

Word = tuple[int, ...]


def word_order_key(word: Word) -> tuple[int, Word]:
    """Graded lexicographic order: shorter words first, then lexicographic."""
    return (len(word), word)


def all_words(d: int, max_degree: int) -> list[Word]:
    """Every word in letters 1..d of length at most ``max_degree``, graded-lex sorted."""
    words: list[Word] = [()]
    frontier: list[Word] = [()]
    for _ in range(max_degree):
        frontier = [w + (j,) for w in frontier for j in range(1, d + 1)]
        words.extend(frontier)
    return words


class FreePoly:
    """Finite linear combination of words in noncommuting letters x1..xd.

    Immutable; zero coefficients are never stored.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[Word, complex] | Iterable[tuple[Word, complex]] = ()) -> None:
        items = terms.items() if isinstance(terms, Mapping) else terms
        merged: dict[Word, complex] = {}
        for word, coeff in items:
            word = tuple(int(j) for j in word)
            if any(j < 1 for j in word):
                raise InvalidInputError(f"word {word} has a letter below 1")
            merged[word] = merged.get(word, 0j) + complex(coeff)
        ordered = sorted((w for w, c in merged.items() if c != 0), key=word_order_key)
        self._terms = MappingProxyType({w: merged[w] for w in ordered})

    @classmethod
    def constant(cls, c: complex) -> "FreePoly":
        return cls({(): c})

    @classmethod
    def variable(cls, j: int) -> "FreePoly":
        return cls({(j,): 1.0})

    @property
    def terms(self) -> Mapping[Word, complex]:
        return self._terms

    @property
    def degree(self) -> int:
        return max((len(w) for w in self._terms), default=0)

    @property
    def max_letter(self) -> int:
        return max((max(w) for w in self._terms if w), default=0)

    def is_zero(self) -> bool:
        return not self._terms

    def __add__(self, other: "FreePoly") -> "FreePoly":
        return FreePoly(list(self._terms.items()) + list(other._terms.items()))

    def __neg__(self) -> "FreePoly":
        return FreePoly({w: -c for w, c in self._terms.items()})

    def __sub__(self, other: "FreePoly") -> "FreePoly":
        return self + (-other)

    def __mul__(self, other: "FreePoly") -> "FreePoly":
        return FreePoly((w1 + w2, c1 * c2) for w1, c1 in self._terms.items() for w2, c2 in other._terms.items())

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FreePoly):
            return NotImplemented
        return dict(self._terms) == dict(other._terms)

    def __hash__(self) -> int:
        return hash(tuple(self._terms.items()))

    def __repr__(self) -> str:
        return f"FreePoly({format_poly(self)!r})"


@dataclass(frozen=True)
class FreePolyMatrix:
    """J x L matrix of free polynomials in d variables."""

    entries: tuple[tuple[FreePoly, ...], ...]
    d: int

    def __post_init__(self) -> None:
        rows = tuple(tuple(row) for row in self.entries)
        if not rows or not rows[0]:
            raise InvalidInputError("a polynomial matrix needs at least one entry")
        if any(len(row) != len(rows[0]) for row in rows):
            raise InvalidInputError("rows of a polynomial matrix must have equal length")
        if self.d <= 0:
            raise InvalidInputError("d must be positive")
        for row in rows:
            for p in row:
                if p.max_letter > self.d:
                    raise InvalidInputError(f"variable index x{p.max_letter} out of range for d={self.d}")
        object.__setattr__(self, "entries", rows)

    @classmethod
    def of(cls, rows: Sequence[Sequence[FreePoly]], d: int) -> "FreePolyMatrix":
        return cls(tuple(tuple(r) for r in rows), d)

    @property
    def J(self) -> int:
        return len(self.entries)

    @property
    def L(self) -> int:
        return len(self.entries[0])

    @property
    def degree(self) -> int:
        return max(p.degree for row in self.entries for p in row)

    def to_payload(self) -> FreePolyMatrixPayload:
        return FreePolyMatrixPayload(
            d=self.d,
            J=self.J,
            L=self.L,
            entries=[
                [[TermPayload(word=list(w), re=c.real, im=c.imag) for w, c in p.terms.items()] for p in row]
                for row in self.entries
            ],
        )

    @classmethod
    def from_payload(cls, payload: FreePolyMatrixPayload) -> "FreePolyMatrix":
        rows = [
            [FreePoly((tuple(t.word), complex(t.re, t.im)) for t in cell) for cell in row]
            for row in payload.entries
        ]
        return cls.of(rows, payload.d)


def _format_coeff(c: complex) -> str:
    if c.imag == 0:
        return repr(c.real)
    sign = "+" if c.imag >= 0 else "-"
    return f"({c.real!r}{sign}{abs(c.imag)!r}i)"


def format_poly(p: FreePoly) -> str:
    """Canonical text for ``p``; parses back to an equal polynomial."""
    if p.is_zero():
        return "0.0"
    parts: list[str] = []
    for w, c in p.terms.items():
        monomial = "*".join(f"x{j}" for j in w)
        if c.imag == 0:
            sign = "-" if c.real < 0 else "+"
            mag = abs(c.real)
            body = monomial if (mag == 1.0 and monomial) else (repr(mag) + ("*" + monomial if monomial else ""))
        else:
            sign = "+"
            body = _format_coeff(c) + ("*" + monomial if monomial else "")
        if not parts:
            parts.append(body if sign == "+" else f"-{body}")
        else:
            parts.append(f"{sign} {body}")
    return " ".join(parts)


def format_matrix(p: FreePolyMatrix) -> str:
    return "[" + ", ".join("[" + ", ".join(format_poly(q) for q in row) + "]" for row in p.entries) + "]"
