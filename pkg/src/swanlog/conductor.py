"""The ramification filtration and the log Swan conductor.

gamma / fil_member give the valuation filtration on Witt vectors; the
reduce_coordinate_* routines replace a coordinate by an (F-1)-equivalent one
of maximal valuation; sw_log / sw_curve run the per-coordinate reduction
plus the truncation recursion and report the conductor together with an
exact witness (input - reduced = (F-1)(witness) in the Witt group).
brute_force_sw is the restricted-search oracle used by the test suite.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

from .rings import (BoundaryLaurent, BoundaryRing, MPoly, SeriesRing, SeriesW,
                    pth_power_part)
from .witt import WittVec, apply_F_minus_1, witt_add, witt_sub


@dataclass(frozen=True)
class Character:
    """An Artin-Schreier-Witt character of order dividing p^(n+1), presented
    by a Witt vector over BoundaryLaurent (generic-point model) or SeriesW
    (curve model)."""

    p: int
    m: int
    n: int
    coords: WittVec

    @classmethod
    def from_witt(cls, wv: WittVec):
        field = wv.ring.field
        return cls(p=field.p, m=field.m, n=wv.length - 1, coords=wv)

    @property
    def length(self):
        return self.coords.length

    def is_curve_model(self):
        return isinstance(self.coords.ring, SeriesRing)


@dataclass(frozen=True)
class ReductionReport:
    reduced: WittVec
    witness: WittVec
    sw: int
    dominant_index: int | None
    tie: bool
    fierce: bool
    steps: int

    def to_record(self):
        return {
            "sw": self.sw,
            "dominant_index": self.dominant_index,
            "tie": self.tie,
            "fierce": self.fierce,
            "steps": self.steps,
        }


def gamma(wv: WittVec) -> int:
    """max(0, max_i p^(len-1-i) * (-v(x_i))) with v(0) = +inf."""
    p = wv.ring.p
    top = wv.length - 1
    best = 0
    for i, x in enumerate(wv.coords):
        v = x.valuation()
        if v is math.inf:
            continue
        wt = p ** (top - i) * (-v)
        if wt > best:
            best = wt
    return best


def _weights(wv: WittVec):
    p = wv.ring.p
    top = wv.length - 1
    out = []
    for i, x in enumerate(wv.coords):
        v = x.valuation()
        out.append(-math.inf if v is math.inf else p ** (top - i) * (-v))
    return out


def fil_member(wv: WittVec, mlevel: int) -> bool:
    """wv lies in fil_mlevel, i.e. every coordinate satisfies
    p^(len-1-i) * v(x_i) >= -mlevel."""
    if mlevel < 0:
        raise ValueError(f"filtration level {mlevel} must be >= 0")
    return gamma(wv) <= mlevel


def _ord_p(k: int, p: int) -> int:
    o = 0
    while k % p == 0:
        k //= p
        o += 1
    return o


def fil_nonlog_member(wv: WittVec, mlevel: int, variant: str = "shifted") -> bool:
    """Membership in the non-log filtration fil_base + V^(n-n')(fil_m W_n')
    of the curve (one-dimensional) model.

    "as-printed": base level m, n' = min(n, ord_p(m+1)).
    "shifted":    base level m-1, n' = min(n, ord_p(m)).

    The decomposition is decidable coordinatewise: a V-image absorbs the top
    n' coordinates exactly (solving bottom-up), and its carries stay inside
    fil_m, so membership means the low coordinates meet the base bound and
    the top n' meet the m bound.
    """
    if mlevel < 1:
        raise ValueError(f"non-log filtration level {mlevel} must be >= 1")
    if not isinstance(wv.ring, SeriesRing):
        raise ValueError("fil_nonlog_member applies to the curve model only")
    if variant == "as-printed":
        base = mlevel
        nprime = min(wv.length, _ord_p(mlevel + 1, wv.ring.p))
    elif variant == "shifted":
        base = mlevel - 1
        nprime = min(wv.length, _ord_p(mlevel, wv.ring.p))
    else:
        raise ValueError(f"unknown variant {variant!r}")
    p = wv.ring.p
    top = wv.length - 1
    cut = wv.length - nprime
    for i, x in enumerate(wv.coords):
        v = x.valuation()
        if v is math.inf:
            continue
        wt = p ** (top - i) * (-v)
        if wt > (mlevel if i >= cut else base):
            return False
    return True


def reduce_coordinate_1d(x: SeriesW):
    """Strip leading terms c*w^(ps) with negative p-divisible valuation by
    subtracting (y^p - y) for y = c^(1/p) * w^s. Returns (x_red, y_acc,
    steps); terminal state has v >= 0 or p coprime to v."""
    p = x.field.p
    y_acc = SeriesW.zero(x.field)
    steps = 0
    while True:
        v = x.valuation()
        if v is math.inf or v >= 0 or (-v) % p != 0:
            return x, y_acc, steps
        c = x.terms[v]
        chunk = SeriesW.monomial(x.field, v // p, c.pth_root())
        x = x - (chunk ** p - chunk)
        y_acc = y_acc + chunk
        steps += 1


def reduce_coordinate_2d(f: BoundaryLaurent):
    """Same reduction over the boundary ring. While N = -v(f) is positive
    and divisible by p, split the leading coefficient B = P^p + B0 into its
    p-power part and the rest; subtract (F-1)(P * t_1^(-N/p)). A nonzero B0
    is terminal (fierce): no further subtraction can touch a p-power-free
    leading part. Returns (f_red, y_acc, fierce_flag, steps)."""
    p = f.field.p
    y_acc = BoundaryLaurent.zero(f.field, f.nvars)
    steps = 0
    fierce = False
    while True:
        v = f.valuation()
        if v is math.inf or v >= 0 or (-v) % p != 0:
            return f, y_acc, fierce, steps
        B = f.terms[v]
        root, rest = pth_power_part(B)
        if root:
            chunk = BoundaryLaurent.from_mpoly(root, v // p)
            f = f - (chunk ** p - chunk)
            y_acc = y_acc + chunk
            steps += 1
        if rest:
            return f, y_acc, True, steps


def _embed(ring, length, index, value):
    coords = [ring.zero()] * length
    coords[index] = value
    return WittVec(ring, coords)


def _reduce_all(wv: WittVec, reducer):
    """One bottom-up pass of per-coordinate reduction, accumulated through
    full Witt subtraction so the witness identity holds exactly. A chunk
    supported at coordinate i changes coordinate i by exactly -(y^p - y)
    and leaves lower coordinates alone, so one pass suffices."""
    ring = wv.ring
    length = wv.length
    witness = WittVec.zero(ring, length)
    fierce_flags = [False] * length
    steps = 0
    cur = wv
    for i in range(length):
        red, y, fierce, st = reducer(cur.coords[i])
        fierce_flags[i] = fierce
        steps += st
        if y == ring.zero():
            continue
        chunk = _embed(ring, length, i, y)
        cur = witt_sub(cur, apply_F_minus_1(chunk))
        witness = witt_add(witness, chunk)
        if cur.coords[i] != red:
            raise AssertionError("witness accounting drifted from the scalar reduction")
    return cur, witness, fierce_flags, steps


def _dominance(wv: WittVec):
    """(sw, dominant_index, tie) of an already-reduced vector."""
    weights = _weights(wv)
    best = max(weights) if weights else -math.inf
    if best <= 0:
        return 0, None, False
    attaining = [i for i, w in enumerate(weights) if w == best]
    k = attaining[-1]
    return int(best), k, len(attaining) > 1


def _sw_engine(wv: WittVec, reducer) -> ReductionReport:
    cur, witness, fierce_flags, steps = _reduce_all(wv, reducer)
    sw, k, tie = _dominance(cur)
    if k is not None and k < cur.length - 1:
        # a lower coordinate dominates: recurse on the quotient character
        # (coordinates 0..k) and scale by p^(top-k)
        sub = WittVec(cur.ring, cur.coords[: k + 1])
        sub_report = _sw_engine(sub, reducer)
        steps += sub_report.steps
        sw = cur.ring.p ** (cur.length - 1 - k) * sub_report.sw
        k = sub_report.dominant_index
        tie = sub_report.tie
    fierce = fierce_flags[k] if k is not None else False
    return ReductionReport(reduced=cur, witness=witness, sw=sw,
                           dominant_index=k, tie=tie, fierce=fierce, steps=steps)


def _wrap_1d(x):
    red, y, steps = reduce_coordinate_1d(x)
    return red, y, False, steps


def sw_log(chi: Character) -> ReductionReport:
    """Log Swan conductor at the generic point of the boundary divisor."""
    if not isinstance(chi.coords.ring, BoundaryRing):
        raise ValueError("sw_log expects the generic-point (BoundaryLaurent) model")
    return _sw_engine(chi.coords, reduce_coordinate_2d)


def sw_curve(chi: Character) -> ReductionReport:
    """Swan conductor of the curve model; the residue field is perfect, so
    the fierce flag is always false here."""
    if not isinstance(chi.coords.ring, SeriesRing):
        raise ValueError("sw_curve expects the curve (SeriesW) model")
    return _sw_engine(chi.coords, _wrap_1d)


def classify(chi: Character) -> str:
    """tame / wild-nonfierce / wild-fierce for a length-1 generic-point
    character; classification for higher length is out of scope."""
    if chi.length != 1:
        raise ValueError("classification is defined for length-1 characters only")
    if not isinstance(chi.coords.ring, BoundaryRing):
        raise ValueError("classify expects the generic-point model")
    f_red, _, fierce, _ = reduce_coordinate_2d(chi.coords.coords[0])
    v = f_red.valuation()
    if v is math.inf or v >= 0:
        return "tame"
    if fierce:
        return "wild-fierce"
    return "wild-nonfierce"


class SearchCapExceeded(RuntimeError):
    pass


_series_candidates_cache = {}


def _series_candidates(field, lo, hi, support_bound):
    """All nonzero SeriesW supported on [lo, hi] with at most support_bound
    terms, plus zero first. Cached; ordered by increasing depth."""
    key = (field.p, field.m, field.modulus, lo, hi, support_bound)
    got = _series_candidates_cache.get(key)
    if got is not None:
        return got
    exps = list(range(lo, hi + 1))
    units = [field.elem(c) for c in range(1, field.q)]
    out = [SeriesW.zero(field)]
    for k in range(1, support_bound + 1):
        for supp in itertools.combinations(exps, k):
            for coeffs in itertools.product(units, repeat=k):
                out.append(SeriesW(field, dict(zip(supp, coeffs))))
    out.sort(key=lambda s: -s.valuation() if s.terms else -math.inf)
    _series_candidates_cache[key] = out
    return out


def _boundary_candidates(chi_coords, lo, hi, support_bound):
    """Candidate BoundaryLaurent values built from the monomials of the
    character closed under exact p-th roots, plus the constant 1, with
    t_1-exponents clipped to [lo, hi]."""
    ring = chi_coords.ring
    field = ring.field
    p = field.p
    monos = set()
    for coord in chi_coords.coords:
        for t1e, B in coord.terms.items():
            for exps in B.terms:
                monos.add((t1e, exps))
    closure = set()
    frontier = set(monos)
    while frontier:
        nxt = set()
        for t1e, exps in frontier:
            if (t1e, exps) in closure:
                continue
            closure.add((t1e, exps))
            if t1e % p == 0 and all(e % p == 0 for e in exps):
                nxt.add((t1e // p, tuple(e // p for e in exps)))
        frontier = nxt
    closure.add((0, (0,) * ring.nvars))
    monos = sorted(m for m in closure if lo <= m[0] <= hi)
    units = [field.elem(c) for c in range(1, field.q)]
    out = [ring.zero()]
    for k in range(1, support_bound + 1):
        for supp in itertools.combinations(monos, k):
            for coeffs in itertools.product(units, repeat=k):
                terms = {}
                for (t1e, exps), c in zip(supp, coeffs):
                    mono = MPoly.monomial(field, ring.nvars, exps, c)
                    terms[t1e] = terms[t1e] + mono if t1e in terms else mono
                out.append(BoundaryLaurent(field, ring.nvars, terms))
    out.sort(key=lambda f: -f.valuation() if f.terms else -math.inf)
    return out


def brute_force_sw(chi: Character, window=(-6, 3), support_bound=2,
                   cap=400000) -> int:
    """Restricted exhaustive search for min over y of
    gamma(chi - (F-1)(y)), candidates supported in the window with at most
    support_bound terms per coordinate. This is the independent oracle; it
    upper-bounds the true conductor, and the search is deliberately small.

    Raises SearchCapExceeded ("search-space size cap exceeded") when the
    enumeration would not stay under cap evaluations.
    """
    lo, hi = window
    if chi.p > 3 or chi.length > 2 or hi - lo > 10 or support_bound > 3:
        raise ValueError("brute_force_sw is restricted to small parameters")
    wv = chi.coords
    ring = wv.ring
    if isinstance(ring, SeriesRing):
        cands = _series_candidates(ring.field, lo, hi, support_bound)
    else:
        cands = _boundary_candidates(wv, lo, hi, support_bound)
    p = ring.p

    if chi.length == 1:
        if len(cands) > cap:
            raise SearchCapExceeded("search-space size cap exceeded")
        best = gamma(wv)
        x0 = wv.coords[0]
        for y in cands:
            vy = y.valuation()
            if vy is not math.inf:
                # the leading term of y^p sits alone at p*v(y) unless the
                # target has a term there, so deep candidates cannot win
                if p * (-vy) > best and p * vy not in x0.terms:
                    continue
            val = gamma(witt_sub(wv, apply_F_minus_1(_embed(ring, 1, 0, y))))
            if val < best:
                best = val
                if best == 0:
                    return 0
        return best

    if len(cands) * len(cands) > cap:
        raise SearchCapExceeded("search-space size cap exceeded")
    best = gamma(wv)
    for y0 in cands:
        mid = witt_sub(wv, apply_F_minus_1(_embed(ring, 2, 0, y0)))
        w0 = gamma(WittVec(ring, mid.coords[:1])) * p
        if w0 >= best:
            continue
        target = mid.coords[1]
        inner = min(best, gamma(WittVec(ring, [target])))
        for y1 in cands:
            vy = y1.valuation()
            if vy is not math.inf:
                if p * (-vy) > inner and p * vy not in target.terms:
                    continue
            # a chunk at the top coordinate changes it by exactly y^p - y
            val = (target - (y1 ** p - y1)).valuation()
            got = 0 if val is math.inf or val >= 0 else -val
            if got < inner:
                inner = got
                if inner == 0:
                    break
        cand = max(w0, inner)
        if cand < best:
            best = cand
            if best == 0:
                return 0
    return best
