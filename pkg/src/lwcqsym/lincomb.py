"""Sparse exact linear combinations of basis keys."""

from __future__ import annotations

import json
from fractions import Fraction
from numbers import Rational
from typing import Callable, Hashable, Iterable, Iterator, Mapping

from .compositions import format_lwc, graded_lex_key, parse_lwc
from .errors import ParseError

TAGS = ("M", "F", "Mbar", "word", "zeta")


def format_mbar(key) -> str:
    """Mbar key ``(a0, *tail)`` as ``(a0;(tail))``."""
    return f"({key[0]};{format_lwc(key[1:])})"


def parse_mbar(text: str) -> tuple[int, ...]:
    """Accepts ``a0;(tail)`` with or without enclosing parentheses."""
    t = text.strip()
    if t.startswith("(") and t.endswith(")"):
        inner = t[1:-1]
        # strip the outer pair only when the head sits directly inside it
        if ";" in inner and "(" not in inner.partition(";")[0]:
            t = inner
    head, sep, tail = t.partition(";")
    if not sep:
        raise ParseError(f"Mbar text needs 'head;(tail)', got {text!r}")
    try:
        h = int(head.strip())
    except ValueError:
        raise ParseError(f"bad Mbar head in {text!r}") from None
    if h < 0:
        raise ParseError(f"negative Mbar head in {text!r}")
    return (h,) + parse_lwc(tail)


def format_word(key) -> str:
    return "".join(map(str, key)) if key else "1"


def _format_key(key, tag: str) -> str:
    if tag == "Mbar":
        return format_mbar(key)
    if tag == "word":
        return format_word(key)
    if tag == "zeta":
        return "·".join(str(z) for z in key) if key else "1"
    return format_lwc(key)


def _parse_key(text: str, tag: str):
    if tag == "Mbar":
        return parse_mbar(text)
    if tag in ("word", "zeta"):
        raise ParseError(f"no text parser for tag {tag!r}")
    return parse_lwc(text)


def _sort_key(key):
    """Graded-lex for integer tuples; size, length and text otherwise."""
    if isinstance(key, tuple) and all(isinstance(p, int) for p in key):
        return (0, graded_lex_key(key))
    weight = sum(getattr(p, "weight", 0) for p in key) if isinstance(key, tuple) else 0
    return (1, (weight, len(key), str(key)))


def _coerce(c):
    if isinstance(c, Fraction):
        return c
    if isinstance(c, (int, Rational)):
        return Fraction(c)
    if isinstance(c, str):
        return Fraction(c)
    return c


class LinComb(Mapping):
    """Mapping ``key -> coefficient`` with zero coefficients dropped.

    Coefficients are ``Fraction`` by default; any ring element supporting
    ``+``, ``*``, unary ``-`` and truthiness works (the q-shuffle uses
    polynomials in q).  ``tag`` names the basis the keys index.
    """

    __slots__ = ("_terms", "tag")

    def __init__(self, terms: Mapping | Iterable[tuple[Hashable, object]] = (), tag: str = "M"):
        self.tag = tag
        self._terms: dict = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for k, c in items:
            self._iadd(k, c)

    @classmethod
    def monomial(cls, key, coeff=1, tag: str = "M") -> "LinComb":
        return cls([(key, coeff)], tag=tag)

    def _iadd(self, key, coeff) -> None:
        coeff = _coerce(coeff)
        if not coeff:
            return
        new = self._terms[key] + coeff if key in self._terms else coeff
        if new:
            self._terms[key] = new
        else:
            del self._terms[key]

    # Mapping protocol
    def __getitem__(self, key):
        return self._terms.get(key, Fraction(0))

    def __iter__(self) -> Iterator:
        return iter(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def __contains__(self, key) -> bool:
        return key in self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, LinComb):
            return self._terms == other._terms
        if isinstance(other, Mapping):
            return self._terms == LinComb(other)._terms
        if other == 0:
            return not self._terms
        return NotImplemented

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        return f"LinComb({self.format()!r}, tag={self.tag!r})"

    # module structure
    def __add__(self, other: "LinComb") -> "LinComb":
        out = LinComb(self._terms, tag=self.tag)
        for k, c in other.items():
            out._iadd(k, c)
        return out

    def __neg__(self) -> "LinComb":
        return LinComb({k: -c for k, c in self._terms.items()}, tag=self.tag)

    def __sub__(self, other: "LinComb") -> "LinComb":
        return self + (-other)

    def __mul__(self, scalar) -> "LinComb":
        scalar = _coerce(scalar)
        return LinComb(((k, c * scalar) for k, c in self._terms.items()), tag=self.tag)

    __rmul__ = __mul__

    def map_keys(self, f: Callable, tag: str | None = None) -> "LinComb":
        """Linear extension of a key map ``f: key -> key``."""
        return LinComb(((f(k), c) for k, c in self._terms.items()), tag=tag or self.tag)

    def bilinear(self, other: "LinComb", product: Callable, tag: str | None = None) -> "LinComb":
        """Extend ``product(key, key) -> Mapping`` bilinearly."""
        out = LinComb(tag=tag or self.tag)
        for k1, c1 in self._terms.items():
            for k2, c2 in other._terms.items():
                c = c1 * c2
                for k, c3 in product(k1, k2).items():
                    out._iadd(k, c * c3)
        return out

    def sorted_items(self, key=None) -> list:
        key = key or (lambda kv: _sort_key(kv[0]))
        return sorted(self._terms.items(), key=key)

    # text and JSON
    def format(self, key_format: Callable | None = None, descending: bool = True) -> str:
        """Human-readable text such as ``2·(1,1) + (2)``."""
        key_format = key_format or (lambda k: _format_key(k, self.tag))
        items = self.sorted_items()
        if descending:
            items.reverse()
        if not items:
            return "0"
        out = []
        for n, (k, c) in enumerate(items):
            text = key_format(k)
            const = getattr(c, "constant_value", None)
            if const is not None and const() is not None:
                c = const()
            neg = isinstance(c, Fraction) and c < 0
            mag = -c if neg else c
            if isinstance(mag, Fraction):
                term = text if mag == 1 else f"{mag}·{text}"
            else:
                term = f"({mag})·{text}"
            if n == 0:
                out.append(("-" if neg else "") + term)
            else:
                out.append((" - " if neg else " + ") + term)
        return "".join(out)

    def to_json_obj(self) -> list[dict]:
        def coeff(c):
            return f"{c.numerator}/{c.denominator}" if isinstance(c, Fraction) else str(c)

        return [
            {"coeff": coeff(c), "key": _format_key(k, self.tag), "tag": self.tag}
            for k, c in self.sorted_items()
        ]

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj())

    @classmethod
    def from_json_obj(cls, data: list[dict]) -> "LinComb":
        tags = {d["tag"] for d in data}
        if len(tags) > 1:
            raise ParseError(f"mixed tags in serialized LinComb: {sorted(tags)}")
        tag = tags.pop() if tags else "M"
        try:
            return cls(((_parse_key(d["key"], tag), Fraction(d["coeff"])) for d in data), tag=tag)
        except (KeyError, ValueError, ZeroDivisionError) as exc:
            if isinstance(exc, ParseError):
                raise
            raise ParseError(f"bad serialized LinComb: {exc}") from exc

    @classmethod
    def from_json(cls, text: str) -> "LinComb":
        return cls.from_json_obj(json.loads(text))
