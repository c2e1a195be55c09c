"""Surface syntax for character coordinates.

Grammar (whitespace-insensitive):

    expr   := term (('+' | '-') term)*
    term   := factor (('*' | '/') factor)*
    factor := '-' factor | atom ('^' ['+'|'-'] INT)?
    atom   := INT | NAME | '(' expr ')'

Names are t1..td plus the aliases y (t1), x (t2) and, in the curve model,
w (the series parameter). Integers are reduced mod p. Division demands a
denominator that normalizes to a unit times a power of t1; anything else is
reported with its source position.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .conductor import Character
from .fields import GF
from .rings import BoundaryRing, SeriesRing
from .witt import WittVec


class ParseError(ValueError):
    def __init__(self, message, pos):
        super().__init__(f"{message} (at position {pos})")
        self.pos = pos


def tokenize(src: str):
    tokens = []
    i = 0
    while i < len(src):
        ch = src[i]
        if ch.isspace():
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < len(src) and src[j].isdigit():
                j += 1
            tokens.append(("int", int(src[i:j]), i))
            i = j
            continue
        if ch.isalpha():
            j = i
            while j < len(src) and (src[j].isalnum() or src[j] == "_"):
                j += 1
            tokens.append(("name", src[i:j], i))
            i = j
            continue
        if ch in "+-*/^()":
            tokens.append((ch, ch, i))
            i += 1
            continue
        raise ParseError(f"unexpected character {ch!r}", i)
    tokens.append(("end", None, len(src)))
    return tokens


class ExpressionParser:
    """Recursive descent over a fixed coefficient ring (BoundaryRing for the
    generic-point model, SeriesRing for the curve model)."""

    def __init__(self, ring):
        self.ring = ring

    def parse(self, src: str):
        self.tokens = tokenize(src)
        self.idx = 0
        value = self._expr()
        kind, _, pos = self.tokens[self.idx]
        if kind != "end":
            raise ParseError(f"unexpected {kind!r}", pos)
        return value

    def _peek(self):
        return self.tokens[self.idx]

    def _next(self):
        tok = self.tokens[self.idx]
        self.idx += 1
        return tok

    def _expr(self):
        value = self._term()
        while True:
            kind, _, _ = self._peek()
            if kind == "+":
                self._next()
                value = value + self._term()
            elif kind == "-":
                self._next()
                value = value - self._term()
            else:
                return value

    def _term(self):
        value = self._factor()
        while True:
            kind, _, pos = self._peek()
            if kind == "*":
                self._next()
                value = value * self._factor()
            elif kind == "/":
                self._next()
                value = value * self._invert(self._factor(), pos)
            else:
                return value

    def _factor(self):
        kind, _, _ = self._peek()
        if kind == "-":
            self._next()
            return -self._factor()
        value = self._atom()
        kind, _, pos = self._peek()
        if kind == "^":
            self._next()
            exp = self._signed_int()
            try:
                value = value ** exp
            except ValueError as exc:
                raise ParseError(str(exc), pos) from None
        return value

    def _signed_int(self):
        kind, val, pos = self._next()
        sign = 1
        if kind in ("+", "-"):
            sign = -1 if kind == "-" else 1
            kind, val, pos = self._next()
        if kind != "int":
            raise ParseError("exponent must be an integer", pos)
        return sign * val

    def _atom(self):
        kind, val, pos = self._next()
        if kind == "int":
            return self.ring.from_int(val)
        if kind == "name":
            return self._resolve(val, pos)
        if kind == "(":
            value = self._expr()
            kind, _, pos = self._next()
            if kind != ")":
                raise ParseError("expected ')'", pos)
            return value
        raise ParseError(f"unexpected {kind!r}", pos)

    def _resolve(self, name, pos):
        ring = self.ring
        curve = isinstance(ring, SeriesRing)
        d = 1 if curve else ring.d
        if name == "y":
            name = "t1"
        elif name == "x":
            name = "t2"
        elif name == "w" and curve:
            name = "t1"
        if name.startswith("t") and name[1:].isdigit():
            k = int(name[1:])
            if not 1 <= k <= d:
                raise ParseError(f"variable t{k} out of range for d = {d}", pos)
            if curve:
                return ring.w(1)
            return ring.t1(1) if k == 1 else ring.var(k)
        raise ParseError(f"unknown variable {name!r}", pos)

    def _invert(self, value, pos):
        try:
            return value ** (-1)
        except ValueError as exc:
            raise ParseError(f"bad denominator: {exc}", pos) from None


@dataclass(frozen=True)
class CharacterSpec:
    """Plumbing between surface flags / JSON spec files and a Character.
    n_len is the Witt length (number of coordinates)."""

    p: int
    d: int
    coords: tuple
    m: int = 1
    n_len: int | None = None

    def __post_init__(self):
        if not self.coords:
            raise ValueError("at least one coordinate expression is required")
        if self.n_len is not None and self.n_len != len(self.coords):
            raise ValueError(
                f"n = {self.n_len} does not match {len(self.coords)} coordinate(s)")
        if self.d < 1:
            raise ValueError("d must be >= 1")

    def build_ring(self):
        field = GF(self.p, self.m)
        return SeriesRing(field) if self.d == 1 else BoundaryRing(field, self.d)

    def build(self) -> Character:
        ring = self.build_ring()
        parser = ExpressionParser(ring)
        coords = [parser.parse(src) for src in self.coords]
        return Character.from_witt(WittVec(ring, coords))


def load_spec(path, overrides=None) -> CharacterSpec:
    """Read a JSON spec file ({"p":…, "m":…, "d":…, "n":…, "coords":[…]})
    and apply inline-flag overrides on top."""
    with open(path, "r", encoding="utf-8") as fh:
        data = json.load(fh)
    if not isinstance(data, dict):
        raise ValueError(f"{path}: spec file must hold a JSON object")
    known = {"p", "m", "d", "n", "coords"}
    extra = set(data) - known
    if extra:
        raise ValueError(f"{path}: unknown spec keys {sorted(extra)}")
    merged = dict(data)
    for key, value in (overrides or {}).items():
        if value is not None:
            merged[key] = value
    if "p" not in merged:
        raise ValueError(f"{path}: missing required key 'p'")
    coords = merged.get("coords")
    if coords is None:
        raise ValueError(f"{path}: missing coordinate expressions")
    if isinstance(coords, str):
        coords = [coords]
    return CharacterSpec(p=int(merged["p"]), d=int(merged.get("d", 2)),
                         coords=tuple(str(c) for c in coords),
                         m=int(merged.get("m", 1)),
                         n_len=int(merged["n"]) if merged.get("n") is not None else None)
