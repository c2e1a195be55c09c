"""Sparse exact arithmetic for the three coefficient worlds.

MPoly            polynomials in t_2..t_d over F_q (exponent tuple -> coeff)
BoundaryLaurent  R = F_q[t_2..t_d][t_1^(+-1)], only t_1 inverted
                 (t_1-exponent -> MPoly), the model of the local ring at the
                 boundary divisor t_1 = 0
SeriesW          Laurent polynomials in the curve parameter w over F_q

All values are immutable after construction; every operation returns a new
value. Valuation of zero is +infinity (math.inf).
"""

from __future__ import annotations

import math

from .fields import GF, FieldElem


class MPoly:
    """Polynomial in t_2..t_d; terms maps exponent tuples (length d-1,
    nonnegative) to nonzero field elements."""

    __slots__ = ("field", "nvars", "terms")

    def __init__(self, field: GF, nvars: int, terms=None):
        self.field = field
        self.nvars = nvars
        clean = {}
        if terms:
            for exps, c in terms.items():
                exps = tuple(exps)
                if len(exps) != nvars or any(e < 0 for e in exps):
                    raise ValueError(f"bad exponent tuple {exps} for {nvars} variables")
                c = field.coerce(c)
                if c:
                    prev = clean.get(exps)
                    c = prev + c if prev is not None else c
                    if c:
                        clean[exps] = c
                    else:
                        clean.pop(exps, None)
        self.terms = clean

    @classmethod
    def zero(cls, field, nvars):
        return cls(field, nvars)

    @classmethod
    def constant(cls, field, nvars, c):
        c = field.coerce(c)
        return cls(field, nvars, {(0,) * nvars: c} if c else None)

    @classmethod
    def monomial(cls, field, nvars, exps, c=1):
        return cls(field, nvars, {tuple(exps): field.coerce(c)})

    @classmethod
    def variable(cls, field, nvars, index):
        """The variable t_index, with 2 <= index <= d = nvars + 1."""
        if not 2 <= index <= nvars + 1:
            raise ValueError(f"variable index {index} out of range t_2..t_{nvars + 1}")
        exps = [0] * nvars
        exps[index - 2] = 1
        return cls.monomial(field, nvars, exps)

    def _check(self, other):
        if not isinstance(other, MPoly):
            raise TypeError(f"expected MPoly, got {type(other).__name__}")
        if not self.field.same_field(other.field) or self.nvars != other.nvars:
            raise ValueError("MPoly operands from mismatched ambient rings")

    def __add__(self, other):
        if isinstance(other, (int, FieldElem)):
            other = MPoly.constant(self.field, self.nvars, other)
        self._check(other)
        terms = dict(self.terms)
        for exps, c in other.terms.items():
            s = terms.get(exps)
            s = c if s is None else s + c
            if s:
                terms[exps] = s
            else:
                terms.pop(exps, None)
        out = MPoly(self.field, self.nvars)
        out.terms = terms
        return out

    __radd__ = __add__

    def __neg__(self):
        out = MPoly(self.field, self.nvars)
        out.terms = {e: -c for e, c in self.terms.items()}
        return out

    def __sub__(self, other):
        if isinstance(other, (int, FieldElem)):
            other = MPoly.constant(self.field, self.nvars, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, FieldElem)):
            c = self.field.coerce(other)
            out = MPoly(self.field, self.nvars)
            if c:
                out.terms = {e: k * c for e, k in self.terms.items()}
            return out
        self._check(other)
        terms = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                key = tuple(a + b for a, b in zip(e1, e2))
                s = terms.get(key)
                s = c1 * c2 if s is None else s + c1 * c2
                if s:
                    terms[key] = s
                else:
                    terms.pop(key, None)
        out = MPoly(self.field, self.nvars)
        out.terms = terms
        return out

    __rmul__ = __mul__

    def __pow__(self, k):
        if k < 0:
            raise ValueError("negative powers of an MPoly are not defined")
        result = MPoly.constant(self.field, self.nvars, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, int):
            return self == MPoly.constant(self.field, self.nvars, other)
        if not isinstance(other, MPoly):
            return NotImplemented
        return (self.field.same_field(other.field) and self.nvars == other.nvars
                and self.terms == other.terms)

    def __hash__(self):
        return hash((self.field, self.nvars, frozenset((e, c.code) for e, c in self.terms.items())))

    def is_constant(self):
        return all(all(e == 0 for e in exps) for exps in self.terms)

    def monomials(self):
        return sorted(self.terms)

    def render(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for exps in sorted(self.terms, reverse=True):
            c = self.terms[exps]
            factors = []
            for i, e in enumerate(exps):
                if e == 0:
                    continue
                v = f"t{i + 2}"
                factors.append(v if e == 1 else f"{v}^{e}")
            cstr = str(c)
            if not factors:
                parts.append(cstr)
            elif cstr == "1":
                parts.append("*".join(factors))
            else:
                parts.append("*".join([cstr] + factors))
        return " + ".join(parts)

    def __repr__(self):
        return f"MPoly({self.render()})"


def pth_power_part(B: MPoly):
    """Split B = P_root^p + B0 where P_root^p collects exactly the monomials
    of B whose exponents are all divisible by p (taking the p-th root of each
    coefficient), and B0 has no such monomial. B is a p-th power iff B0 = 0."""
    p = B.field.p
    root_terms = {}
    rest_terms = {}
    for exps, c in B.terms.items():
        if all(e % p == 0 for e in exps):
            root_terms[tuple(e // p for e in exps)] = c.pth_root()
        else:
            rest_terms[exps] = c
    root = MPoly(B.field, B.nvars)
    root.terms = root_terms
    rest = MPoly(B.field, B.nvars)
    rest.terms = rest_terms
    return root, rest


def is_pth_power(B: MPoly) -> bool:
    return not pth_power_part(B)[1]


class BoundaryLaurent:
    """Element of R = F_q[t_2..t_d][t_1^(+-1)]; terms maps t_1-exponents
    (any integer) to nonzero MPoly coefficients."""

    __slots__ = ("field", "nvars", "terms")

    def __init__(self, field: GF, nvars: int, terms=None):
        self.field = field
        self.nvars = nvars
        clean = {}
        if terms:
            for k, B in terms.items():
                if isinstance(B, (int, FieldElem)):
                    B = MPoly.constant(field, nvars, B)
                if B:
                    clean[int(k)] = B
        self.terms = clean

    @classmethod
    def zero(cls, field, nvars):
        return cls(field, nvars)

    @classmethod
    def constant(cls, field, nvars, c):
        return cls(field, nvars, {0: MPoly.constant(field, nvars, c)})

    @classmethod
    def from_mpoly(cls, B: MPoly, t1exp: int = 0):
        return cls(B.field, B.nvars, {t1exp: B})

    @classmethod
    def t1_power(cls, field, nvars, k):
        return cls(field, nvars, {k: MPoly.constant(field, nvars, 1)})

    def _check(self, other):
        if not isinstance(other, BoundaryLaurent):
            raise TypeError(f"expected BoundaryLaurent, got {type(other).__name__}")
        if not self.field.same_field(other.field) or self.nvars != other.nvars:
            raise ValueError("BoundaryLaurent operands from mismatched ambient rings")

    def __add__(self, other):
        if isinstance(other, (int, FieldElem)):
            other = BoundaryLaurent.constant(self.field, self.nvars, other)
        elif isinstance(other, MPoly):
            other = BoundaryLaurent.from_mpoly(other)
        self._check(other)
        terms = dict(self.terms)
        for k, B in other.terms.items():
            s = terms.get(k)
            s = B if s is None else s + B
            if s:
                terms[k] = s
            else:
                terms.pop(k, None)
        out = BoundaryLaurent(self.field, self.nvars)
        out.terms = terms
        return out

    __radd__ = __add__

    def __neg__(self):
        out = BoundaryLaurent(self.field, self.nvars)
        out.terms = {k: -B for k, B in self.terms.items()}
        return out

    def __sub__(self, other):
        if isinstance(other, (int, FieldElem)):
            other = BoundaryLaurent.constant(self.field, self.nvars, other)
        elif isinstance(other, MPoly):
            other = BoundaryLaurent.from_mpoly(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, FieldElem)):
            c = self.field.coerce(other)
            out = BoundaryLaurent(self.field, self.nvars)
            if c:
                out.terms = {k: B * c for k, B in self.terms.items()}
            return out
        if isinstance(other, MPoly):
            other = BoundaryLaurent.from_mpoly(other)
        self._check(other)
        terms = {}
        for k1, B1 in self.terms.items():
            for k2, B2 in other.terms.items():
                prod = B1 * B2
                if not prod:
                    continue
                key = k1 + k2
                s = terms.get(key)
                s = prod if s is None else s + prod
                if s:
                    terms[key] = s
                else:
                    terms.pop(key, None)
        out = BoundaryLaurent(self.field, self.nvars)
        out.terms = terms
        return out

    __rmul__ = __mul__

    def __pow__(self, k):
        if k < 0:
            # only a unit (constant times a t_1-power) can be inverted
            if len(self.terms) != 1:
                raise ValueError("cannot invert a BoundaryLaurent with several terms")
            (j, B), = self.terms.items()
            if not B.is_constant():
                raise ValueError("cannot invert a non-constant boundary coefficient")
            c = B.terms[(0,) * self.nvars]
            inv = BoundaryLaurent(self.field, self.nvars,
                                  {-j: MPoly.constant(self.field, self.nvars, c.inverse())})
            return inv ** (-k)
        result = BoundaryLaurent.constant(self.field, self.nvars, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, int):
            return self == BoundaryLaurent.constant(self.field, self.nvars, other)
        if not isinstance(other, BoundaryLaurent):
            return NotImplemented
        return (self.field.same_field(other.field) and self.nvars == other.nvars
                and self.terms == other.terms)

    def __hash__(self):
        return hash((self.field, self.nvars, frozenset((k, hash(B)) for k, B in self.terms.items())))

    def valuation(self):
        """t_1-adic valuation; +inf for zero."""
        return min(self.terms) if self.terms else math.inf

    def leading(self):
        """(valuation, MPoly coefficient at that level) for a nonzero value."""
        v = min(self.terms)
        return v, self.terms[v]

    def shift(self, k: int):
        """Multiply by t_1^k."""
        out = BoundaryLaurent(self.field, self.nvars)
        out.terms = {j + k: B for j, B in self.terms.items()}
        return out

    def render(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for k in sorted(self.terms):
            B = self.terms[k]
            bstr = B.render()
            if k == 0:
                parts.append(bstr)
                continue
            t1 = "t1" if k == 1 else f"t1^{k}"
            if bstr == "1":
                parts.append(t1)
            elif "+" in bstr:
                parts.append(f"({bstr})*{t1}")
            else:
                parts.append(f"{bstr}*{t1}")
        return " + ".join(parts)

    def __repr__(self):
        return f"BoundaryLaurent({self.render()})"


def decompose_boundary(f: BoundaryLaurent):
    """Write f = B*t_1^(-N) + Brest with N = -valuation(f), B the leading
    MPoly coefficient, and valuation(Brest) > -N. Rejects f = 0."""
    if not f:
        raise ValueError("cannot decompose the zero element")
    v, B = f.leading()
    rest_terms = {k: P for k, P in f.terms.items() if k != v}
    rest = BoundaryLaurent(f.field, f.nvars)
    rest.terms = rest_terms
    return -v, B, rest


class SeriesW:
    """Laurent polynomial in the curve parameter w over F_q; terms maps
    w-exponents (any integer) to nonzero field elements. Substitution of
    Laurent polynomials is exact, so no precision tracking is needed."""

    __slots__ = ("field", "terms")

    def __init__(self, field: GF, terms=None):
        self.field = field
        clean = {}
        if terms:
            for k, c in terms.items():
                c = field.coerce(c)
                if c:
                    clean[int(k)] = c
        self.terms = clean

    @classmethod
    def zero(cls, field):
        return cls(field)

    @classmethod
    def constant(cls, field, c):
        return cls(field, {0: c})

    @classmethod
    def monomial(cls, field, exp, c=1):
        return cls(field, {exp: c})

    def _check(self, other):
        if not isinstance(other, SeriesW):
            raise TypeError(f"expected SeriesW, got {type(other).__name__}")
        if not self.field.same_field(other.field):
            raise ValueError("SeriesW operands from mismatched fields")

    def __add__(self, other):
        if isinstance(other, (int, FieldElem)):
            other = SeriesW.constant(self.field, other)
        self._check(other)
        terms = dict(self.terms)
        for k, c in other.terms.items():
            s = terms.get(k)
            s = c if s is None else s + c
            if s:
                terms[k] = s
            else:
                terms.pop(k, None)
        out = SeriesW(self.field)
        out.terms = terms
        return out

    __radd__ = __add__

    def __neg__(self):
        out = SeriesW(self.field)
        out.terms = {k: -c for k, c in self.terms.items()}
        return out

    def __sub__(self, other):
        if isinstance(other, (int, FieldElem)):
            other = SeriesW.constant(self.field, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, FieldElem)):
            c = self.field.coerce(other)
            out = SeriesW(self.field)
            if c:
                out.terms = {k: a * c for k, a in self.terms.items()}
            return out
        self._check(other)
        terms = {}
        for k1, c1 in self.terms.items():
            for k2, c2 in other.terms.items():
                key = k1 + k2
                s = terms.get(key)
                s = c1 * c2 if s is None else s + c1 * c2
                if s:
                    terms[key] = s
                else:
                    terms.pop(key, None)
        out = SeriesW(self.field)
        out.terms = terms
        return out

    __rmul__ = __mul__

    def __pow__(self, k):
        if k < 0:
            if len(self.terms) != 1:
                raise ValueError("cannot invert a SeriesW with several terms")
            (j, c), = self.terms.items()
            return SeriesW(self.field, {-j: c.inverse()}) ** (-k)
        result = SeriesW.constant(self.field, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, int):
            return self == SeriesW.constant(self.field, other)
        if not isinstance(other, SeriesW):
            return NotImplemented
        return self.field.same_field(other.field) and self.terms == other.terms

    def __hash__(self):
        return hash((self.field, frozenset((k, c.code) for k, c in self.terms.items())))

    def valuation(self):
        """w-adic valuation; +inf for zero."""
        return min(self.terms) if self.terms else math.inf

    def leading(self):
        v = min(self.terms)
        return v, self.terms[v]

    def render(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for k in sorted(self.terms):
            c = self.terms[k]
            cstr = str(c)
            if k == 0:
                parts.append(cstr)
                continue
            wstr = "w" if k == 1 else f"w^{k}"
            parts.append(wstr if cstr == "1" else f"{cstr}*{wstr}")
        return " + ".join(parts)

    def __repr__(self):
        return f"SeriesW({self.render()})"


def valuation(x):
    """Normalized valuation of a BoundaryLaurent (t_1-adic) or SeriesW
    (w-adic); +inf for zero."""
    return x.valuation()


def substitute(f: BoundaryLaurent, cm) -> SeriesW:
    """Restrict f along a curve morphism: t_1 -> w^e, t_i -> w^(m_i) for the
    surviving variables, killed variables -> 0. Exact; cancellation between
    monomials can make the result zero even for nonzero f."""
    weights = cm.variable_weights(f.nvars)
    return substitute_map(f, cm.e, weights)


def substitute_map(f: BoundaryLaurent, e: int, weights) -> SeriesW:
    """Same as substitute, from raw data: weights[i] is the w-exponent sent
    to variable t_(i+2), or None when that variable is killed."""
    if len(weights) != f.nvars:
        raise ValueError(f"expected {f.nvars} weights, got {len(weights)}")
    out_terms = {}
    for t1e, B in f.terms.items():
        base = e * t1e
        for exps, c in B.terms.items():
            wexp = base
            dead = False
            for ei, wi in zip(exps, weights):
                if ei == 0:
                    continue
                if wi is None:
                    dead = True
                    break
                wexp += ei * wi
            if dead:
                continue
            s = out_terms.get(wexp)
            s = c if s is None else s + c
            if s:
                out_terms[wexp] = s
            else:
                out_terms.pop(wexp, None)
    out = SeriesW(f.field)
    out.terms = out_terms
    return out


class BoundaryRing:
    """Ambient descriptor for BoundaryLaurent coefficients; also serves as
    the coefficient-ring adapter for Witt vectors (char = p)."""

    def __init__(self, field: GF, d: int):
        if d < 1:
            raise ValueError("need at least the boundary variable t_1")
        self.field = field
        self.d = d
        self.nvars = d - 1
        self.p = field.p
        self.char = field.p

    def zero(self):
        return BoundaryLaurent.zero(self.field, self.nvars)

    def one(self):
        return BoundaryLaurent.constant(self.field, self.nvars, 1)

    def from_int(self, k):
        return BoundaryLaurent.constant(self.field, self.nvars, k)

    def t1(self, k=1):
        return BoundaryLaurent.t1_power(self.field, self.nvars, k)

    def var(self, index):
        return BoundaryLaurent.from_mpoly(MPoly.variable(self.field, self.nvars, index))

    def contains(self, x):
        return (isinstance(x, BoundaryLaurent) and x.field.same_field(self.field)
                and x.nvars == self.nvars)

    def __eq__(self, other):
        return (isinstance(other, BoundaryRing) and self.field == other.field
                and self.d == other.d)

    def __hash__(self):
        return hash(("boundary", self.field, self.d))

    def __repr__(self):
        return f"BoundaryRing(GF({self.field.q}), d={self.d})"


class SeriesRing:
    """Ambient descriptor for SeriesW coefficients (the curve model)."""

    def __init__(self, field: GF):
        self.field = field
        self.p = field.p
        self.char = field.p

    def zero(self):
        return SeriesW.zero(self.field)

    def one(self):
        return SeriesW.constant(self.field, 1)

    def from_int(self, k):
        return SeriesW.constant(self.field, k)

    def w(self, k=1):
        return SeriesW.monomial(self.field, k)

    def contains(self, x):
        return isinstance(x, SeriesW) and x.field.same_field(self.field)

    def __eq__(self, other):
        return isinstance(other, SeriesRing) and self.field == other.field

    def __hash__(self):
        return hash(("series", self.field))

    def __repr__(self):
        return f"SeriesRing(GF({self.field.q}))"
