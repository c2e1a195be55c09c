"""Exact arithmetic in finite fields F_q, q = p^m.

Elements are immutable and interned per field. For m = 1 an element is a
residue mod p; for m > 1 it is a polynomial residue modulo a fixed monic
irreducible modulus of degree m, encoded as an integer in base p
(code = sum(c_i * p^i) for the residue sum(c_i * X^i)).

The Frobenius c -> c^p is a bijection, so every element has a unique p-th
root, namely c^(p^(m-1)).
"""

from __future__ import annotations


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    f = 2
    while f * f <= n:
        if n % f == 0:
            return False
        f += 1
    return True


def _poly_trim(cs):
    cs = list(cs)
    while cs and cs[-1] == 0:
        cs.pop()
    return cs


def _poly_mulmod(a, b, modulus, p):
    # a, b, modulus: little-endian coefficient lists over F_p, modulus monic
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        if ca == 0:
            continue
        for j, cb in enumerate(b):
            out[i + j] = (out[i + j] + ca * cb) % p
    m = len(modulus) - 1
    for k in range(len(out) - 1, m - 1, -1):
        c = out[k]
        if c == 0:
            continue
        out[k] = 0
        for j in range(m):
            out[k - m + j] = (out[k - m + j] - c * modulus[j]) % p
    return _poly_trim(out[:m])


def _poly_divmod(a, b, p):
    # b monic assumed after normalization; returns (q, r) with a = q*b + r
    b = _poly_trim(b)
    lead_inv = pow(b[-1], p - 2, p) if b[-1] != 1 else 1
    a = list(a)
    q = [0] * max(len(a) - len(b) + 1, 0)
    for k in range(len(a) - len(b), -1, -1):
        c = (a[k + len(b) - 1] * lead_inv) % p
        if c:
            q[k] = c
            for j, cb in enumerate(b):
                a[k + j] = (a[k + j] - c * cb) % p
    return q, _poly_trim(a)


def _is_irreducible(poly, p):
    # trial division by every monic polynomial of degree 1 .. deg/2
    deg = len(poly) - 1
    for ddeg in range(1, deg // 2 + 1):
        for code in range(p ** ddeg):
            div = []
            c = code
            for _ in range(ddeg):
                div.append(c % p)
                c //= p
            div.append(1)
            _, r = _poly_divmod(poly, div, p)
            if not r:
                return False
    return True


def default_modulus(p: int, m: int):
    """Smallest (by coefficient code) monic irreducible of degree m over F_p."""
    for code in range(p ** m):
        cs = []
        c = code
        for _ in range(m):
            cs.append(c % p)
            c //= p
        cs.append(1)
        if _is_irreducible(cs, p):
            return tuple(cs)
    raise ArithmeticError(f"no irreducible polynomial of degree {m} over F_{p}")


class FieldElem:
    """One element of a GF instance; obtain these via field.elem(code)."""

    __slots__ = ("field", "code")

    def __init__(self, field, code):
        self.field = field
        self.code = code

    def __add__(self, other):
        other = self.field.coerce(other)
        return self.field.elem(self.field.add_codes(self.code, other.code))

    __radd__ = __add__

    def __sub__(self, other):
        other = self.field.coerce(other)
        return self.field.elem(self.field.sub_codes(self.code, other.code))

    def __rsub__(self, other):
        return self.field.coerce(other) - self

    def __mul__(self, other):
        other = self.field.coerce(other)
        return self.field.elem(self.field.mul_codes(self.code, other.code))

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self.field.coerce(other)
        return self * other.inverse()

    def __neg__(self):
        return self.field.elem(self.field.neg_code(self.code))

    def __pow__(self, k):
        if k < 0:
            return self.inverse() ** (-k)
        return self.field.elem(self.field.pow_code(self.code, k))

    def inverse(self):
        if self.code == 0:
            raise ZeroDivisionError("inverse of zero field element")
        return self.field.elem(self.field.pow_code(self.code, self.field.q - 2))

    def pth_root(self):
        """Unique p-th root, the inverse of Frobenius: c^(p^(m-1))."""
        f = self.field
        return f.elem(f.pow_code(self.code, f.p ** (f.m - 1)))

    def __eq__(self, other):
        if isinstance(other, int):
            return self == self.field.from_int(other)
        if not isinstance(other, FieldElem):
            return NotImplemented
        return self.field.same_field(other.field) and self.code == other.code

    def __hash__(self):
        return hash((self.field.p, self.field.m, self.code))

    def __bool__(self):
        return self.code != 0

    def __repr__(self):
        return f"FieldElem({self.code} in GF({self.field.q}))"

    def __str__(self):
        return self.field.render_code(self.code)


class GF:
    """The finite field F_q with q = p^m, p prime."""

    def __init__(self, p: int, m: int = 1, modulus=None):
        if not is_prime(p):
            raise ValueError(f"p = {p} is not prime")
        if m < 1:
            raise ValueError(f"field degree m = {m} must be >= 1")
        self.p = p
        self.m = m
        self.q = p ** m
        if m == 1:
            self.modulus = None
        else:
            if modulus is None:
                modulus = default_modulus(p, m)
            modulus = tuple(c % p for c in modulus)
            if len(modulus) != m + 1 or modulus[-1] != 1:
                raise ValueError("modulus must be monic of degree m")
            if not _is_irreducible(list(modulus), p):
                raise ValueError("modulus is reducible")
            self.modulus = modulus
        self._elems = [FieldElem(self, c) for c in range(self.q)] if self.q <= 4096 else None
        self.zero = self.elem(0)
        self.one = self.elem(1 % self.q)

    # -- code-level arithmetic ------------------------------------------

    def _decode(self, code):
        cs = []
        for _ in range(self.m):
            cs.append(code % self.p)
            code //= self.p
        return _poly_trim(cs)

    def _encode(self, cs):
        code = 0
        for c in reversed(cs):
            code = code * self.p + c
        return code

    def add_codes(self, a, b):
        if self.m == 1:
            return (a + b) % self.p
        pa, pb = self._decode(a), self._decode(b)
        n = max(len(pa), len(pb))
        pa += [0] * (n - len(pa))
        pb += [0] * (n - len(pb))
        return self._encode([(x + y) % self.p for x, y in zip(pa, pb)])

    def neg_code(self, a):
        if self.m == 1:
            return (-a) % self.p
        return self._encode([(-c) % self.p for c in self._decode(a)])

    def sub_codes(self, a, b):
        return self.add_codes(a, self.neg_code(b))

    def mul_codes(self, a, b):
        if self.m == 1:
            return (a * b) % self.p
        return self._encode(_poly_mulmod(self._decode(a), self._decode(b), self.modulus, self.p))

    def pow_code(self, a, k):
        if k == 0:
            return 1 % self.q
        result = 1 % self.q
        base = a
        while k:
            if k & 1:
                result = self.mul_codes(result, base)
            base = self.mul_codes(base, base)
            k >>= 1
        return result

    # -- element API -----------------------------------------------------

    def elem(self, code: int) -> FieldElem:
        if not 0 <= code < self.q:
            raise ValueError(f"element code {code} out of range for GF({self.q})")
        if self._elems is not None:
            return self._elems[code]
        return FieldElem(self, code)

    def from_int(self, k: int) -> FieldElem:
        """Image of the integer k under Z -> F_q (lands in the prime field)."""
        return self.elem(k % self.p)

    def coerce(self, x):
        if isinstance(x, FieldElem):
            if not self.same_field(x.field):
                raise ValueError("field elements from mismatched fields")
            return x
        if isinstance(x, int):
            return self.from_int(x)
        raise TypeError(f"cannot coerce {type(x).__name__} into GF({self.q})")

    def same_field(self, other) -> bool:
        return self.p == other.p and self.m == other.m and self.modulus == other.modulus

    def elements(self):
        return (self.elem(c) for c in range(self.q))

    def nonzero_elements(self):
        return (self.elem(c) for c in range(1, self.q))

    def render_code(self, code: int) -> str:
        if self.m == 1:
            return str(code)
        cs = self._decode(code)
        if not cs:
            return "0"
        parts = []
        for i, c in enumerate(cs):
            if c == 0:
                continue
            if i == 0:
                parts.append(str(c))
            elif i == 1:
                parts.append("g" if c == 1 else f"{c}*g")
            else:
                parts.append(f"g^{i}" if c == 1 else f"{c}*g^{i}")
        return "+".join(parts)

    def __eq__(self, other):
        return isinstance(other, GF) and self.same_field(other)

    def __hash__(self):
        return hash((self.p, self.m, self.modulus))

    def __repr__(self):
        return f"GF({self.p}^{self.m})" if self.m > 1 else f"GF({self.p})"
