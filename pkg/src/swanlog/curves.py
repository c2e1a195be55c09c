"""Tangent-curve families and conductor-ratio experiments.

A curve morphism sends t_1 -> w^e, the surviving variables t_i -> w^(m_i),
and the rest to 0. The weight vector 'm' is chosen B-good for the dominant
coordinate's leading polynomial B: one monomial g of B is strictly
weight-minimal, which keeps the restriction of B nonzero with w-valuation
independent of e. family_experiment tabulates sw along e = 1..e_max and
compares the supremum of sw_e / e against the generic-point conductor;
check_bounds samples arbitrary curves against the conductor inequality.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .conductor import Character, ReductionReport, sw_curve, sw_log
from .rings import MPoly, SeriesRing, decompose_boundary, substitute
from .witt import WittVec


@dataclass(frozen=True)
class GoodVector:
    """Weight data (m_2, .., m_r) with m_r = 1 plus the certified minimal
    monomial g (exponents in the permuted variables t_2..t_r). perm lists,
    for each permuted position, the original variable position it came from.
    Uncertified instances (arbitrary sampled weights) may break the m_r = 1
    convention."""

    m: tuple
    r: int
    g: tuple | None
    certified: bool
    perm: tuple

    def __post_init__(self):
        if len(self.m) != max(self.r - 1, 0):
            raise ValueError(f"weight vector length {len(self.m)} does not match r = {self.r}")
        if any(w < 1 for w in self.m):
            raise ValueError("substitution weights must be positive")
        if self.certified and self.m and self.m[-1] != 1:
            raise ValueError("a certified good vector must end in weight 1")

    def weighted_degree(self, exps) -> int:
        return sum(w * e for w, e in zip(self.m, exps))


@dataclass(frozen=True)
class CurveMorphism:
    """Tangency order e >= 1 to the boundary t_1 = 0, plus the weight data."""

    e: int
    gv: GoodVector
    kill: tuple = ()

    def __post_init__(self):
        if self.e < 1:
            raise ValueError("tangency order e must be >= 1")

    @classmethod
    def from_good_vector(cls, e, gv):
        return cls(e=e, gv=gv, kill=tuple(sorted(gv.perm[gv.r - 1:])))

    def variable_weights(self, nvars):
        if len(self.gv.perm) != nvars:
            raise ValueError(f"curve morphism built for {len(self.gv.perm)} variables, "
                             f"character has {nvars}")
        weights = [None] * nvars
        for newpos, orig in enumerate(self.gv.perm):
            if newpos < len(self.gv.m):
                weights[orig] = self.gv.m[newpos]
        return weights


@dataclass(frozen=True)
class ExperimentRow:
    e: int
    mult: int
    sw: int
    ratio: Fraction
    case_tag: str


@dataclass
class FamilyResult:
    rows: list
    skipped: list
    summary: dict
    report: ReductionReport


def select_support(B: MPoly):
    """Pick a monomial of B with minimal support cardinality; ties broken by
    the exponents restricted to the support, then by the variable index set.
    Returns (r, perm) with the chosen support moved to positions t_2..t_r."""
    if not B:
        raise ValueError("select_support needs a nonzero polynomial")

    def key(exps):
        support = tuple(i for i, e in enumerate(exps) if e)
        restricted = tuple(exps[i] for i in support)
        return (len(support), restricted, support)

    chosen = min(B.terms, key=key)
    support = [i for i, e in enumerate(chosen) if e]
    rest = [i for i in range(B.nvars) if i not in support]
    return len(support) + 1, tuple(support + rest)


def apply_perm(B: MPoly, perm) -> MPoly:
    """Reorder variables so that position j holds the old variable perm[j]."""
    out = MPoly(B.field, B.nvars)
    out.terms = {tuple(e[orig] for orig in perm): c for e, c in B.terms.items()}
    return out


def _surviving(B: MPoly, r: int):
    """Monomials of the permuted B that survive killing positions >= r-1,
    restricted to the first r-1 exponents."""
    out = set()
    for exps in B.terms:
        if all(e == 0 for e in exps[r - 1:]):
            out.add(exps[: r - 1])
    return sorted(out)


def b_good_vector(B: MPoly, r: int, perm=None) -> GoodVector:
    """Build the weight vector for the permuted polynomial B: g is the
    lexicographically minimal monomial with full support in t_2..t_r, the
    weights follow m_r = 1, m_j = sum_(i>j) m_i g_i, and the strict
    minimality of g is certified exhaustively over every surviving monomial.
    """
    if perm is None:
        perm = tuple(range(B.nvars))
    survivors = _surviving(B, r)
    full = [h for h in survivors if all(e > 0 for e in h)]
    if not full:
        raise ValueError("no monomial with full support in t_2..t_r")
    g = min(full)
    k = r - 1
    m = [0] * k
    if k:
        m[k - 1] = 1
        for j in range(k - 2, -1, -1):
            m[j] = sum(m[i] * g[i] for i in range(j + 1, k))
    gv = GoodVector(m=tuple(m), r=r, g=g, certified=True, perm=tuple(perm))
    _certify(gv, survivors)
    return gv


def _certify(gv: GoodVector, survivors):
    base = gv.weighted_degree(gv.g)
    for h in survivors:
        if h == gv.g:
            continue
        if gv.weighted_degree(h) <= base:
            raise ArithmeticError(
                f"good-vector certificate failed: {h} has weight "
                f"{gv.weighted_degree(h)} <= {base}")


def adjust_p_coprime(gv: GoodVector, B: MPoly, p: int) -> GoodVector:
    """Perturb the weights so that p no longer divides the weighted degree
    of g, keeping g strictly minimal. The perturbations Q satisfy the
    cascade Q_j = s_j + sum_(l>j) g_l Q_l for slack vectors s >= 0 and are
    tried by increasing total size."""
    if not gv.certified:
        raise ValueError("adjust_p_coprime needs a certified good vector")
    g = gv.g
    c = gv.weighted_degree(g)
    if c % p:
        return gv
    k = gv.r - 1
    if k <= 1:
        raise ArithmeticError("p-power obstruction: no adjustable weight below m_r")
    survivors = None
    slots = k - 1  # positions 2..r-1 may move, m_r stays 1
    candidates = []
    for total in range(1, 3 * p + 1):
        for s in _compositions(total, slots):
            q = [0] * slots
            for j in range(slots - 1, -1, -1):
                q[j] = s[j] + sum(g[l] * q[l] for l in range(j + 1, slots))
            candidates.append(q)
    candidates.sort(key=lambda q: (sum(q), q))
    for q in candidates:
        new_m = tuple(m + dq for m, dq in zip(gv.m, q + [0]))
        new_c = c + sum(dq * gi for dq, gi in zip(q, g))
        if new_c % p == 0:
            continue
        cand = GoodVector(m=new_m, r=gv.r, g=g, certified=True, perm=gv.perm)
        if survivors is None:
            survivors = _surviving(B, gv.r)
        try:
            _certify(cand, survivors)
        except ArithmeticError:
            continue
        return cand
    raise ArithmeticError("p-power obstruction: no coprime adjustment found")


def _compositions(total, slots):
    if slots == 1:
        yield [total]
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, slots - 1):
            yield [first] + rest


def restrict_character(chi: Character, cm: CurveMorphism) -> Character:
    """Coordinatewise substitution along the curve; exact."""
    sring = SeriesRing(chi.coords.ring.field)
    coords = [substitute(f, cm) for f in chi.coords.coords]
    return Character.from_witt(WittVec(sring, coords))


def pullback_multiplicity(cm: CurveMorphism) -> int:
    """Multiplicity of the curve point in the pulled-back boundary divisor,
    which is the tangency order e."""
    return cm.e


def _default_good_vector(nvars: int) -> GoodVector:
    if nvars == 0:
        return GoodVector(m=(), r=1, g=None, certified=False, perm=())
    return GoodVector(m=(1,), r=2, g=None, certified=False,
                      perm=tuple(range(nvars)))


def build_family_vector(chi: Character, report: ReductionReport):
    """Good vector for the dominant coordinate's leading polynomial, with the
    p-coprime adjustment applied when p divides its pole order. Returns
    (gv, N, c)."""
    p = chi.p
    nvars = chi.coords.ring.nvars
    if report.dominant_index is None:
        return _default_good_vector(nvars), 0, 0
    f_k = report.reduced.coords[report.dominant_index]
    N, B, _ = decompose_boundary(f_k)
    if B.is_constant():
        gv = _default_good_vector(nvars)
        return gv, N, 0
    r, perm = select_support(B)
    Bp = apply_perm(B, perm)
    gv = b_good_vector(Bp, r, perm)
    if N % p == 0:
        gv = adjust_p_coprime(gv, Bp, p)
    return gv, N, gv.weighted_degree(gv.g)


def family_experiment(chi: Character, e_max: int) -> FamilyResult:
    """Restrict chi along the curve family e = 1..e_max and tabulate the
    conductors, each row tagged by whether p divides N*e - c. Rows where
    some nonzero coordinate restricts to zero are skipped and recorded."""
    if chi.coords.is_zero():
        raise ValueError("family experiment needs a nonzero character")
    if e_max < 1:
        raise ValueError("e_max must be >= 1")
    report = sw_log(chi)
    gv, N, c = build_family_vector(chi, report)
    rows = []
    skipped = []
    for e in range(1, e_max + 1):
        cm = CurveMorphism.from_good_vector(e, gv)
        coords = [substitute(f, cm) for f in chi.coords.coords]
        if any(bool(f) and not bool(fr)
               for f, fr in zip(chi.coords.coords, coords)):
            skipped.append(e)
            continue
        chi_e = Character.from_witt(WittVec(SeriesRing(chi.coords.ring.field), coords))
        rep_e = sw_curve(chi_e)
        tag = "p-divides" if (N * e - c) % chi.p == 0 else "p-coprime"
        rows.append(ExperimentRow(e=e, mult=e, sw=rep_e.sw,
                                  ratio=Fraction(rep_e.sw, e), case_tag=tag))
    coprime = [row.ratio for row in rows if row.case_tag == "p-coprime"]
    pool = coprime if coprime else [row.ratio for row in rows]
    sup_ratio = max(pool) if pool else None
    summary = {
        "sw_log": report.sw,
        "sup_ratio": [sup_ratio.numerator, sup_ratio.denominator] if sup_ratio is not None else None,
        "fierce": report.fierce,
        "tie": report.tie,
        "N": N,
        "c": c,
        "skipped": skipped,
        "sup_equals_sw_log": sup_ratio == report.sw if sup_ratio is not None else None,
    }
    return FamilyResult(rows=rows, skipped=skipped, summary=summary, report=report)


def sample_curve(rng: random.Random, nvars: int, e_range=(1, 6),
                 weight_range=(1, 4)) -> CurveMorphism:
    """Arbitrary curve: random tangency order, random positive weights,
    random kill set. A strict superset of the B-good construction."""
    e = rng.randint(*e_range)
    if nvars == 0:
        gv = GoodVector(m=(), r=1, g=None, certified=False, perm=())
        return CurveMorphism.from_good_vector(e, gv)
    r = rng.randint(2, nvars + 1)
    perm = tuple(rng.sample(range(nvars), nvars))
    m = tuple(rng.randint(*weight_range) for _ in range(r - 1))
    gv = GoodVector(m=m, r=r, g=None, certified=False, perm=perm)
    return CurveMorphism.from_good_vector(e, gv)


def check_bounds(chi: Character, d_mult: int, samples: int = 50,
                 seed: int = 0) -> dict:
    """Verify sw_curve <= e * sw_log on sampled arbitrary curves, then the
    divisor-multiple equivalence: when sw_log <= d_mult every sampled curve
    obeys sw_curve <= e * d_mult, and when sw_log > d_mult the constructed
    family must produce a violating row."""
    if d_mult < 1:
        raise ValueError("d_mult must be >= 1")
    rng = random.Random(seed)
    report = sw_log(chi)
    nvars = chi.coords.ring.nvars
    violations = []
    mult_violations = []
    for _ in range(samples):
        cm = sample_curve(rng, nvars)
        chi_e = restrict_character(chi, cm)
        sw_e = sw_curve(chi_e).sw
        if sw_e > cm.e * report.sw:
            violations.append({"e": cm.e, "sw": sw_e, "bound": cm.e * report.sw,
                               "weights": list(cm.gv.m), "perm": list(cm.gv.perm)})
        if report.sw <= d_mult and sw_e > cm.e * d_mult:
            mult_violations.append({"e": cm.e, "sw": sw_e, "bound": cm.e * d_mult})
    verdict = {
        "sw_log": report.sw,
        "d_mult": d_mult,
        "samples": samples,
        "upper_bound_holds": not violations,
        "upper_bound_violations": violations,
    }
    if report.sw <= d_mult:
        verdict["direction"] = "sw_log<=d_mult: all curves bounded by e*d_mult"
        verdict["bounded_by_d_mult"] = not mult_violations
        verdict["d_mult_violations"] = mult_violations
        verdict["ok"] = not violations and not mult_violations
    else:
        witness = _find_violating_row(chi, report, d_mult)
        verdict["direction"] = "sw_log>d_mult: a violating curve must exist"
        verdict["witness"] = witness
        verdict["ok"] = not violations and witness is not None
    return verdict


def _find_violating_row(chi: Character, report: ReductionReport, d_mult: int):
    gv, N, c = build_family_vector(chi, report)
    top = chi.length - 1
    k = report.dominant_index if report.dominant_index is not None else top
    scale = chi.p ** (top - k)
    denom = report.sw - d_mult
    e_cap = max(16, (scale * c) // denom + 2 * chi.p + 4) if denom > 0 else 16
    for e in range(1, e_cap + 1):
        cm = CurveMorphism.from_good_vector(e, gv)
        # keep restrictions that kill some coordinates: they are still
        # honest characters of the curve, and the dominant one survives
        coords = [substitute(f, cm) for f in chi.coords.coords]
        chi_e = Character.from_witt(WittVec(SeriesRing(chi.coords.ring.field), coords))
        sw_e = sw_curve(chi_e).sw
        if sw_e > e * d_mult:
            return {"e": e, "sw": sw_e, "bound": e * d_mult}
    return None
