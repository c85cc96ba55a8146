"""Line arrangements in the projective plane: singular points, matroid
circuits with exact dependency coefficients, and the low-degree graded
structure of the ideal of reciprocal-coordinate relations.

Each linear dependency sum c_j alpha_{i_j} = 0 among k forms yields the
degree-(k-1) relation f = sum_j c_j prod_{l != j} y_{i_l}; the ideal these
generate is studied through exact linear algebra on coefficient matrices,
with no Groebner machinery.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from ._linalg import nullspace, rank_exact
from .fatpoints import (DEFAULT_SEED, PlaneDivisorClass,
                        general_position_lines, normalize_proj)


@dataclass(frozen=True)
class LineArrangement:
    """Pairwise non-proportional nonzero forms a*x + b*y + c*z."""

    forms: Tuple[Tuple[int, int, int], ...]

    def __post_init__(self):
        norm = tuple(normalize_proj(tuple(Fraction(c) for c in f))
                     for f in self.forms)
        if len(set(norm)) != len(norm):
            raise ValueError("forms must be pairwise non-proportional")
        object.__setattr__(self, "forms", norm)

    def __len__(self) -> int:
        return len(self.forms)


def generic_arrangement(s: int, seed: int = DEFAULT_SEED) -> LineArrangement:
    """s random lines with no two parallel and no three concurrent."""
    if s < 2:
        raise ValueError("need at least 2 lines")
    rng = random.Random(repr((seed, "arrangement", s)))
    return LineArrangement(tuple(general_position_lines(s, rng)))


def m8_minus() -> LineArrangement:
    """Eight lines: two horizontal, two vertical, two of slope -1, one of
    slope -2, and the line at infinity.  Seven triple points; the
    reciprocal-coordinate ideal has seven quadric generators, one linear
    syzygy among them, and one extra cubic generator."""
    return LineArrangement((
        (2, 1, -5),
        (1, 1, -2),
        (1, 1, -6),
        (0, 1, -1),
        (0, 1, -3),
        (1, 0, -3),
        (1, 0, -1),
        (0, 0, 1),
    ))


def _cross(u, v):
    return (u[1] * v[2] - u[2] * v[1],
            u[2] * v[0] - u[0] * v[2],
            u[0] * v[1] - u[1] * v[0])


def singular_points(a: LineArrangement):
    """All pairwise intersection points with their line counts t_p >= 2,
    sorted by decreasing multiplicity."""
    if len(a) < 2:
        raise ValueError("need at least 2 lines")
    by_point: Dict[Tuple[int, int, int], set] = {}
    for i, j in itertools.combinations(range(len(a)), 2):
        p = normalize_proj(_cross(a.forms[i], a.forms[j]))
        by_point.setdefault(p, set()).update((i, j))
    return sorted(((p, len(ls)) for p, ls in by_point.items()),
                  key=lambda it: (-it[1], it[0]))


@dataclass(frozen=True)
class Circuit:
    """A minimal dependent set of forms with its dependency, normalized to
    coprime integers with positive leading coefficient."""

    indices: Tuple[int, ...]
    coeffs: Tuple[int, ...]


def _normalize_dependency(vec: Sequence[Fraction]) -> Tuple[int, ...]:
    from math import gcd, lcm
    den = lcm(*(f.denominator for f in vec))
    ints = [int(f * den) for f in vec]
    g = 0
    for x in ints:
        g = gcd(g, x)
    ints = [x // g for x in ints]
    lead = next(x for x in ints if x)
    if lead < 0:
        ints = [-x for x in ints]
    return tuple(ints)


def circuits(a: LineArrangement, max_size: int) -> List[Circuit]:
    """Minimal dependent subsets of size <= max_size.  Size-3 circuits are
    concurrent triples; in a plane arrangement no circuit exceeds size 4."""
    if max_size > len(a):
        raise ValueError("max_size exceeds the number of lines")
    cols = {i: a.forms[i] for i in range(len(a))}

    def rank_of(sub) -> int:
        return rank_exact([cols[i] for i in sub])

    out: List[Circuit] = []
    for size in range(3, min(max_size, 4) + 1):
        for sub in itertools.combinations(range(len(a)), size):
            if rank_of(sub) != size - 1:
                continue
            if any(rank_of(prop) < size - 1
                   for prop in itertools.combinations(sub, size - 1)):
                continue
            ker = nullspace([[Fraction(cols[i][k]) for i in sub]
                             for k in range(3)])
            assert len(ker) == 1
            coeffs = _normalize_dependency(ker[0])
            for k in range(3):
                assert sum(c * cols[i][k]
                           for c, i in zip(coeffs, sub)) == 0
            out.append(Circuit(sub, coeffs))
    return out


@dataclass(frozen=True)
class OTForm:
    """A polynomial in one reciprocal variable per line, stored as sorted
    (exponent vector, integer coefficient) terms."""

    nvars: int
    terms: Tuple[Tuple[Tuple[int, ...], int], ...]

    @property
    def degree(self) -> int:
        return max(sum(e) for e, _ in self.terms)

    def evaluate(self, values: Sequence[Fraction]) -> Fraction:
        total = Fraction(0)
        for exp, c in self.terms:
            prod = Fraction(c)
            for v, e in zip(values, exp):
                prod *= Fraction(v) ** e
            total += prod
        return total


def _circuit_form(c: Circuit, nvars: int) -> OTForm:
    terms: Dict[Tuple[int, ...], int] = {}
    for j in range(len(c.indices)):
        exp = [0] * nvars
        for l, idx in enumerate(c.indices):
            if l != j:
                exp[idx] += 1
        key = tuple(exp)
        terms[key] = terms.get(key, 0) + c.coeffs[j]
    items = tuple(sorted((e, v) for e, v in terms.items() if v))
    assert items
    return OTForm(nvars, items)


def ot_generators(a: LineArrangement, max_size: int) -> List[OTForm]:
    """One generator per circuit: f = sum_j c_j prod_{l != j} y_{i_l}."""
    return [_circuit_form(c, len(a)) for c in circuits(a, max_size)]


@dataclass(frozen=True)
class GradedCounts:
    min_gens_by_degree: Tuple[Tuple[int, int], ...]
    linear_syzygies: int


def _monomials(nvars: int, deg: int) -> List[Tuple[int, ...]]:
    out = []
    for combo in itertools.combinations_with_replacement(range(nvars), deg):
        exp = [0] * nvars
        for k in combo:
            exp[k] += 1
        out.append(tuple(exp))
    return sorted(out)


def _coeff_row(form: OTForm, shift: Tuple[int, ...],
               index: Dict[Tuple[int, ...], int]) -> List[int]:
    row = [0] * len(index)
    for exp, c in form.terms:
        key = tuple(e + s for e, s in zip(exp, shift))
        row[index[key]] = c
    return row


def graded_counts(a: LineArrangement, max_deg: int) -> GradedCounts:
    """Minimal generator counts per degree and the number of linear
    syzygies among the minimal quadrics, all by exact rank computations.

    dim of the degree-k piece is the rank of all monomial shifts of the
    circuit forms into degree k; subtracting the rank of the shifts with a
    nonconstant monomial (the image of degree k-1 under the variables)
    counts minimal generators.  Linear syzygies are the kernel of
    (l_1,..,l_s) -> sum l_i q_i on a basis q of the quadric piece.
    """
    if not 1 <= max_deg <= 4:
        raise ValueError("max_deg must be between 1 and 4")
    d = len(a)
    gens = ot_generators(a, min(len(a), max_deg + 1))
    by_degree: Dict[int, List[OTForm]] = {}
    for f in gens:
        by_degree.setdefault(f.degree, []).append(f)

    def piece_rank(k: int, min_shift: int) -> int:
        index = {m: i for i, m in enumerate(_monomials(d, k))}
        rows = []
        for e, forms in by_degree.items():
            if e > k or k - e < min_shift:
                continue
            for shift in _monomials(d, k - e):
                for f in forms:
                    rows.append(_coeff_row(f, shift, index))
        if not rows:
            return 0
        return rank_exact(rows)

    counts = []
    for k in range(1, max_deg + 1):
        counts.append((k, piece_rank(k, 0) - piece_rank(k, 1)))

    lin_syz = 0
    quadrics = by_degree.get(2, [])
    if quadrics:
        index2 = {m: i for i, m in enumerate(_monomials(d, 2))}
        mat = [_coeff_row(f, (0,) * d, index2) for f in quadrics]
        basis_idx = _independent_subset(mat)
        basis = [quadrics[i] for i in basis_idx]
        index3 = {m: i for i, m in enumerate(_monomials(d, 3))}
        rows = []
        for q in basis:
            for v in range(d):
                shift = tuple(1 if k == v else 0 for k in range(d))
                rows.append(_coeff_row(q, shift, index3))
        lin_syz = len(rows) - rank_exact(rows)
    return GradedCounts(tuple(counts), lin_syz)


def _independent_subset(rows: List[List[int]]) -> List[int]:
    """Greedy maximal independent row subset over the rationals."""
    chosen: List[int] = []
    rank = 0
    for i in range(len(rows)):
        cand = chosen + [i]
        r = rank_exact([rows[j] for j in cand])
        if r > rank:
            chosen.append(i)
            rank = r
    return chosen


# ---------------------------------------------------------------------------
# the contracted divisor of an arrangement blowup


@dataclass(frozen=True)
class DaDivisorReport:
    divisor: PlaneDivisorClass
    line_pairings: Tuple[int, ...]
    exceptional_pairings: Tuple[int, ...]
    nef_partial: bool


def da_divisor(a: LineArrangement,
               divisor: Optional[PlaneDivisorClass] = None) -> DaDivisorReport:
    """For d generic lines: (d-1) E_0 - sum of the double points.  The
    pairing against every line proper transform is then 0 (the lines are
    contracted) and against every exceptional class it is the positive
    multiplicity.  Non-generic arrangements must supply the class."""
    sing = singular_points(a)
    if divisor is None:
        if any(t > 2 for _, t in sing):
            raise ValueError("non-generic arrangement: supply the divisor")
        divisor = PlaneDivisorClass(len(a) - 1, (1,) * len(sing))
    if len(divisor.mults) != len(sing):
        raise ValueError("multiplicity list does not match singular points")
    line_pairings = []
    for i in range(len(a)):
        on_line = [k for k, (p, _) in enumerate(sing)
                   if sum(c * f for c, f in zip(p, a.forms[i])) == 0]
        line_pairings.append(divisor.d - sum(divisor.mults[k]
                                                  for k in on_line))
    exc = tuple(divisor.mults)
    nef = all(v >= 0 for v in line_pairings) and all(m >= 0 for m in exc)
    return DaDivisorReport(divisor, tuple(line_pairings), exc, nef)
