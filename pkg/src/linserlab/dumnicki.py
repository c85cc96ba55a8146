"""Emptiness prover for monomial linear series with one fat point per piece.

A set D of lattice points spans a linear series on the affine plane.  A fat
point of multiplicity m imposes the jet conditions indexed by a staircase E.
The series is empty iff the falling-factorial interpolation matrix has full
column rank; cutting D into pieces by lines that miss its lattice points
reduces emptiness of L(D; m_1..m_r) to one-point emptiness per piece.
Certificates carry enough evidence to re-verify every step from scratch.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Dict, List, Optional, Sequence, Tuple, Union

from . import _linalg
from .lattice import (CutFunctional, halfplane_partition, triangle_set,
                      triangle_staircase, collision_staircase, is_staircase)


# ---------------------------------------------------------------------------
# interpolation matrices and generic dimension


@dataclass(frozen=True)
class InterpolationProblem:
    D: frozenset
    E: frozenset

    def __post_init__(self):
        object.__setattr__(self, "D", frozenset(self.D))
        object.__setattr__(self, "E", frozenset(self.E))


def _falling(n: int, k: int) -> int:
    out = 1
    for t in range(k):
        out *= n - t
    return out


def interp_matrix(prob: InterpolationProblem) -> List[List[int]]:
    """Rows (alpha, beta) in E, columns (a, b) in D, both lex sorted.

    Entry = value of d^alpha_x d^beta_y x^a y^b at (1, 1), a product of
    falling factorials; nonsingularity certifies that a generic fat point
    imposes independent conditions on the monomial span of D.
    """
    cols = sorted(prob.D)
    rows = []
    for (al, be) in sorted(prob.E):
        rows.append([_falling(a, al) * _falling(b, be) for (a, b) in cols])
    return rows


@dataclass(frozen=True)
class Witness:
    """Either a nonzero section (coefficients on D) annihilated by all jet
    conditions, or a dual polynomial (coefficients on E in the
    falling-factorial basis) vanishing on all of D."""

    kind: str  # "section" | "dual"
    support: Tuple[Tuple[int, int], ...]
    coeffs: Tuple[Fraction, ...]


@dataclass(frozen=True)
class GenericDimReport:
    dim: int  # projective dimension, -1 when empty
    empty: bool
    witness: Optional[Witness]


def _check_section(prob: InterpolationProblem, coeffs) -> bool:
    mat = interp_matrix(prob)
    return all(
        sum(e * c for e, c in zip(row, coeffs)) == 0 for row in mat
    ) and any(c != 0 for c in coeffs)


def _check_dual(prob: InterpolationProblem, coeffs) -> bool:
    erows = sorted(prob.E)
    ok = any(c != 0 for c in coeffs)
    for (a, b) in sorted(prob.D):
        v = sum(c * _falling(a, al) * _falling(b, be)
                for c, (al, be) in zip(coeffs, erows))
        if v != 0:
            return False
    return ok


def generic_dim(prob: InterpolationProblem) -> GenericDimReport:
    """Projective dimension of the series cut out by the jets of E on D.

    dim = |D| - 1 - rank.  Nonempty reports carry a section witness from the
    column kernel; a square singular problem also admits a dual polynomial
    from the row kernel, returned instead and checked to vanish on D.
    """
    mat = interp_matrix(prob)
    nd = len(prob.D)
    rank = _linalg.rank_exact(mat) if mat and nd else 0
    dim = nd - 1 - rank
    if rank == nd:
        return GenericDimReport(dim=-1, empty=True, witness=None)
    support = tuple(sorted(prob.D))
    if len(prob.D) == len(prob.E) and nd:
        tr = [[mat[i][j] for i in range(len(mat))] for j in range(nd)]
        ker = _linalg.nullspace(tr)
        w = Witness("dual", tuple(sorted(prob.E)), tuple(ker[0]))
        assert _check_dual(prob, w.coeffs)
        return GenericDimReport(dim=dim, empty=False, witness=w)
    ker = _linalg.nullspace(mat, ncols=nd)
    w = Witness("section", support, tuple(ker[0]))
    assert _check_section(prob, w.coeffs)
    return GenericDimReport(dim=dim, empty=False, witness=w)


# ---------------------------------------------------------------------------
# Fact 3: parallel-line certificates


@dataclass(frozen=True)
class LineAssignment:
    """Lines labelled 1..m in one axis direction; the line labelled k may
    carry at most k points of the piece."""

    direction: str  # "horizontal" | "vertical"
    assignment: Tuple[Tuple[int, int], ...]  # (line coordinate, label)


def fact3_certificate(D, m: int, direction: str) -> Optional[LineAssignment]:
    """Greedy assignment of axis-parallel lines to labels, if one exists.

    Grouping D by the line coordinate gives counts c_1 <= ... <= c_t; an
    assignment exists iff t <= m and c_i <= m - t + i, in which case the
    largest count takes label m, the next m-1, and so on.
    """
    if m < 1:
        raise ValueError("multiplicity must be >= 1")
    if direction not in ("horizontal", "vertical"):
        raise ValueError("direction must be horizontal or vertical")
    coord = 1 if direction == "horizontal" else 0
    counts: Dict[int, int] = {}
    for p in D:
        counts[p[coord]] = counts.get(p[coord], 0) + 1
    t = len(counts)
    if t > m:
        return None
    groups = sorted(counts.items(), key=lambda kv: (kv[1], kv[0]))
    for i, (_, c) in enumerate(groups, start=1):
        if c > m - t + i:
            return None
    assignment = tuple(
        (line, m - t + i) for i, (line, _) in enumerate(groups, start=1)
    )
    return LineAssignment(direction, assignment)


def check_line_assignment(D, m: int, la: LineAssignment) -> bool:
    """Direct re-verification of the Fact 3 hypothesis, search-free."""
    if la.direction not in ("horizontal", "vertical"):
        return False
    coord = 1 if la.direction == "horizontal" else 0
    labels = [k for _, k in la.assignment]
    if len(labels) != len(set(labels)) or len(labels) > m:
        return False
    if any(not 1 <= k <= m for k in labels):
        return False
    cap = dict(la.assignment)
    if len(cap) != len(la.assignment):
        return False
    used: Dict[int, int] = {}
    for p in D:
        line = p[coord]
        if line not in cap:
            return False
        used[line] = used.get(line, 0) + 1
        if used[line] > cap[line]:
            return False
    return True


# ---------------------------------------------------------------------------
# Fact 1: reduction by cuts


def reduce_partition(D, cuts: Sequence[CutFunctional]):
    """Successive positive parts: piece j is the positive side of cut j
    within what is left, and the final piece is the remainder.  Every cut
    must be nonzero on every point it sees."""
    residual = frozenset(D)
    pieces = []
    for cut in cuts:
        plus, minus = halfplane_partition(residual, cut)
        pieces.append(plus)
        residual = minus
    pieces.append(residual)
    return pieces


# ---------------------------------------------------------------------------
# certificates


@dataclass(frozen=True)
class NonzeroDeterminant:
    value: Fraction


@dataclass(frozen=True)
class FullRank:
    rank: int
    rows: Tuple[int, ...]  # indices into the sorted staircase


PieceEvidence = Union[LineAssignment, NonzeroDeterminant, FullRank]


@dataclass(frozen=True)
class Piece:
    points: frozenset
    mult: int
    evidence: PieceEvidence


@dataclass(frozen=True)
class EmptinessCertificate:
    cuts: Tuple[CutFunctional, ...]
    pieces: Tuple[Piece, ...]


@dataclass(frozen=True)
class Failure:
    piece_index: int
    reason: str
    witness: Optional[Witness] = None


def _independent_row_selection(mat, need: int) -> Optional[Tuple[int, ...]]:
    """Indices of `need` rows whose square submatrix is exactly nonsingular."""
    ncols = len(mat[0])
    if ncols != need:
        return None
    for p in _linalg.CERT_PRIMES:
        sel = _linalg.independent_rows_mod_p(mat, p)
        if len(sel) == need:
            sub = [mat[i] for i in sel]
            if _linalg.det_exact(sub) != 0:
                return tuple(sel)
    # exact greedy fallback
    sel: List[int] = []
    for i in range(len(mat)):
        trial = sel + [i]
        if _linalg.rank_exact([mat[j] for j in trial]) == len(trial):
            sel.append(i)
            if len(sel) == need:
                return tuple(sel)
    return None


def _certify_piece(points, m: int) -> Union[PieceEvidence, Failure]:
    for direction in ("horizontal", "vertical"):
        la = fact3_certificate(points, m, direction)
        if la is not None:
            return la
    E = triangle_staircase(m)
    if len(points) > len(E):
        rep = generic_dim(InterpolationProblem(frozenset(points), E))
        return Failure(-1, "piece larger than the jet count", rep.witness)
    mat = interp_matrix(InterpolationProblem(frozenset(points), E))
    if len(points) == len(E):
        det = _linalg.det_exact(mat)
        if det != 0:
            return NonzeroDeterminant(det)
        rep = generic_dim(InterpolationProblem(frozenset(points), E))
        return Failure(-1, "singular interpolation matrix", rep.witness)
    sel = _independent_row_selection(mat, len(points))
    if sel is not None:
        return FullRank(len(points), sel)
    rep = generic_dim(InterpolationProblem(frozenset(points), E))
    return Failure(-1, "rank below piece size", rep.witness)


def prove_empty(D, mults: Sequence[int],
                cuts: Sequence[CutFunctional]
                ) -> Union[EmptinessCertificate, Failure]:
    """Certify L(D; m_1..m_r) empty by cutting and one-point certificates.

    Pieces come from reduce_partition; piece i must be empty for the fat
    point m_i (Fact 3 line assignment, then nonzero determinant, then a
    full-rank row selection).  The first uncertifiable piece aborts with its
    index and, when available, an explicit nonemptiness witness.
    """
    pieces = reduce_partition(D, cuts)
    if len(pieces) != len(mults):
        raise ValueError("need exactly one multiplicity per piece")
    out = []
    for idx, (pts, m) in enumerate(zip(pieces, mults)):
        ev = _certify_piece(pts, m)
        if isinstance(ev, Failure):
            return Failure(idx, ev.reason, ev.witness)
        out.append(Piece(frozenset(pts), m, ev))
    return EmptinessCertificate(tuple(cuts), tuple(out))


def verify_certificate(D, mults: Sequence[int],
                       cert: EmptinessCertificate):
    """Re-verify a certificate from scratch; no state from the search.

    Checks the partition, the multiplicity list, and every piece's evidence
    by direct recomputation.  Returns (True, None) or (False, detail) where
    detail carries the failing piece index when one exists.
    """
    try:
        pieces = reduce_partition(D, cert.cuts)
    except ValueError as exc:
        return False, {"piece": None, "reason": str(exc)}
    if len(pieces) != len(cert.pieces) or len(pieces) != len(mults):
        return False, {"piece": None, "reason": "piece count mismatch"}
    for idx, (pts, piece, m) in enumerate(zip(pieces, cert.pieces, mults)):
        if piece.mult != m:
            return False, {"piece": idx, "reason": "multiplicity mismatch"}
        if frozenset(pts) != frozenset(piece.points):
            return False, {"piece": idx, "reason": "piece content mismatch"}
        ev = piece.evidence
        if isinstance(ev, LineAssignment):
            if not check_line_assignment(pts, m, ev):
                return False, {"piece": idx, "reason": "line assignment invalid"}
        elif isinstance(ev, NonzeroDeterminant):
            E = triangle_staircase(m)
            if len(pts) != len(E):
                return False, {"piece": idx, "reason": "size/jet mismatch"}
            det = _linalg.det_exact(
                interp_matrix(InterpolationProblem(frozenset(pts), E)))
            if det == 0 or det != ev.value:
                return False, {"piece": idx, "reason": "determinant mismatch"}
        elif isinstance(ev, FullRank):
            E = triangle_staircase(m)
            if ev.rank != len(pts) or len(ev.rows) != len(pts):
                return False, {"piece": idx, "reason": "rank evidence malformed"}
            if len(set(ev.rows)) != len(ev.rows):
                return False, {"piece": idx, "reason": "duplicate rows"}
            mat = interp_matrix(InterpolationProblem(frozenset(pts), E))
            if any(not 0 <= i < len(mat) for i in ev.rows):
                return False, {"piece": idx, "reason": "row index out of range"}
            sub = [mat[i] for i in ev.rows]
            if _linalg.det_exact(sub) == 0:
                return False, {"piece": idx, "reason": "selected rows singular"}
        else:
            return False, {"piece": idx, "reason": "unknown evidence type"}
    return True, None


# ---------------------------------------------------------------------------
# JSON encoding with a content digest


def _frac_pair(x) -> List[int]:
    f = Fraction(x)
    return [f.numerator, f.denominator]


def _evidence_to_json(ev: PieceEvidence) -> dict:
    if isinstance(ev, LineAssignment):
        return {"type": "line_assignment", "direction": ev.direction,
                "assignment": [[c, k] for c, k in ev.assignment]}
    if isinstance(ev, NonzeroDeterminant):
        return {"type": "nonzero_determinant", "value": _frac_pair(ev.value)}
    if isinstance(ev, FullRank):
        return {"type": "full_rank", "rank": ev.rank,
                "rows": list(ev.rows)}
    raise TypeError(f"unknown evidence {ev!r}")


def _evidence_from_json(doc: dict) -> PieceEvidence:
    t = doc["type"]
    if t == "line_assignment":
        return LineAssignment(doc["direction"],
                              tuple((int(c), int(k))
                                    for c, k in doc["assignment"]))
    if t == "nonzero_determinant":
        n, d = doc["value"]
        return NonzeroDeterminant(Fraction(int(n), int(d)))
    if t == "full_rank":
        return FullRank(int(doc["rank"]), tuple(int(i) for i in doc["rows"]))
    raise ValueError(f"unknown evidence type {t!r}")


def _payload(D, mults, cert: EmptinessCertificate) -> dict:
    return {
        "problem": {
            "points": [list(p) for p in sorted(D)],
            "mults": list(mults),
        },
        "cuts": [[_frac_pair(c.a), _frac_pair(c.b), _frac_pair(c.c)]
                 for c in cert.cuts],
        "pieces": [
            {
                "points": [list(p) for p in sorted(piece.points)],
                "mult": piece.mult,
                "evidence": _evidence_to_json(piece.evidence),
            }
            for piece in cert.pieces
        ],
    }


def _digest(payload: dict) -> str:
    blob = json.dumps(payload, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(blob.encode()).hexdigest()


def certificate_to_json(D, mults, cert: EmptinessCertificate) -> dict:
    doc = _payload(D, mults, cert)
    doc["digest"] = _digest({k: doc[k] for k in ("problem", "cuts", "pieces")})
    return doc


def certificate_from_json(doc: dict):
    """(D, mults, certificate) from a JSON document; digest not checked."""
    D = frozenset(tuple(int(c) for c in p) for p in doc["problem"]["points"])
    mults = tuple(int(m) for m in doc["problem"]["mults"])
    cuts = tuple(
        CutFunctional(Fraction(int(a[0]), int(a[1])),
                      Fraction(int(b[0]), int(b[1])),
                      Fraction(int(c[0]), int(c[1])))
        for a, b, c in doc["cuts"]
    )
    pieces = tuple(
        Piece(frozenset(tuple(int(c) for c in p) for p in pd["points"]),
              int(pd["mult"]), _evidence_from_json(pd["evidence"]))
        for pd in doc["pieces"]
    )
    return D, mults, EmptinessCertificate(cuts, pieces)


def verify_certificate_json(doc: dict):
    """Full verification of an emitted document.

    Mathematics first, so a broken piece is reported by index; the content
    digest is checked last and rejects edits that happen to leave a still
    valid proof (e.g. relabelling a line assignment with slack).
    """
    try:
        payload = {k: doc[k] for k in ("problem", "cuts", "pieces")}
        stored = doc["digest"]
        D, mults, cert = certificate_from_json(doc)
    except (KeyError, TypeError, ValueError, ZeroDivisionError, IndexError):
        return False, {"piece": None, "reason": "malformed document"}
    ok, detail = verify_certificate(D, mults, cert)
    if not ok:
        return False, detail
    if _digest(payload) != stored:
        return False, {"piece": None, "reason": "digest mismatch"}
    return True, None


# ---------------------------------------------------------------------------
# the nine-cut family


def paper_family(n: int):
    """Triangle of degree 13n, multiplicities (5n, 4n x9), nine cuts.

    Thresholds carry the strict side as a half-integer offset so that no
    functional vanishes on a lattice point.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    half = Fraction(1, 2)
    D = triangle_set(13 * n)
    mults = (5 * n,) + (4 * n,) * 9
    cuts = (
        CutFunctional(-1, -1, 5 * n - half),
        CutFunctional(1, 0, -9 * n - half),
        CutFunctional(0, 1, -9 * n - half),
        CutFunctional(1, -1, -5 * n - half),
        CutFunctional(-1, 1, -5 * n - half),
        CutFunctional(3, -1, -15 * n - half),
        CutFunctional(-3, 1, 3 * n - half),
        CutFunctional(2 * n + 1, -2 * n, -2 * n * n - 5 * n - half),
        CutFunctional(1, 3, -21 * n + half),
    )
    return D, mults, cuts


# ---------------------------------------------------------------------------
# cut search


def _candidate_cuts(D, seed_slopes=()):
    """Cuts ax+by+c with small primitive slopes and half-integer thresholds
    strictly between consecutive attained values."""
    from math import gcd
    slopes = set(seed_slopes)
    for a in range(-3, 4):
        for b in range(-3, 4):
            if (a, b) != (0, 0) and gcd(a, b) == 1:
                slopes.add((a, b))
    out = []
    for (a, b) in sorted(slopes):
        vals = sorted({a * x + b * y for (x, y) in D})
        for lo, hi in zip(vals, vals[1:]):
            # positive part: value > (lo+hi)/2, i.e. value >= hi
            out.append(CutFunctional(a, b, -Fraction(lo + hi, 2)))
    return out


def search_cuts(D, mults: Sequence[int], budget: int
                ) -> Optional[Tuple[CutFunctional, ...]]:
    """Depth-first search for a cut list certified piece by piece.

    budget bounds the number of piece-certification attempts.  A branch
    keeps a cut only when its positive part is certified empty for the next
    multiplicity, so any returned list yields a valid certificate.
    """
    D = frozenset(D)
    if sum(comb(m + 1, 2) for m in mults) < len(D):
        return None  # no partition can absorb every monomial
    seeds = []
    degree = max((x + y for (x, y) in D), default=0)
    if degree and degree % 13 == 0:
        k = degree // 13
        seeds = [(2 * k + 1, -2 * k), (-(2 * k + 1), 2 * k)]
    attempts = [max(0, budget)]
    seen = set()

    def attempt(points, m) -> bool:
        if attempts[0] <= 0:
            return False
        attempts[0] -= 1
        return not isinstance(_certify_piece(points, m), Failure)

    def dfs(residual, idx) -> Optional[List[CutFunctional]]:
        if attempts[0] <= 0:
            return None
        key = (residual, idx)
        if key in seen:
            return None
        seen.add(key)
        remaining = mults[idx:]
        if sum(comb(m + 1, 2) for m in remaining) < len(residual):
            return None
        if idx == len(mults) - 1:
            return [] if attempt(residual, mults[idx]) else None
        target = comb(mults[idx] + 1, 2)
        cands = []
        for cut in _candidate_cuts(residual, seeds):
            try:
                plus, _ = halfplane_partition(residual, cut)
            except ValueError:
                continue
            if 0 < len(plus) <= target:
                cands.append((abs(len(plus) - target), cut, plus))
        cands.sort(key=lambda t: (t[0], t[1].as_triple()))
        for _, cut, plus in cands:
            if attempts[0] <= 0:
                return None
            if not attempt(plus, mults[idx]):
                continue
            rest = dfs(residual - plus, idx + 1)
            if rest is not None:
                return [cut] + rest
        return None

    got = dfs(D, 0)
    return tuple(got) if got is not None else None


# ---------------------------------------------------------------------------
# collision probe


@dataclass(frozen=True)
class CollisionReport:
    """Toric emptiness implies emptiness at general points, never the
    converse, so `consistent` only cross-checks the empty direction."""

    empty: bool
    dim: int
    predicted: int
    consistent: bool


def collision_probe(d: int, r: int, m: int) -> CollisionReport:
    """Probe L(d; m^r) by colliding all r fat points into one toric point."""
    if r < 1 or m < 1:
        raise ValueError("r and m must be >= 1")
    D = triangle_set(d)
    E = collision_staircase(r, m)
    assert is_staircase(E)
    rep = generic_dim(InterpolationProblem(frozenset(D), frozenset(E)))
    predicted = max(0, comb(d + 2, 2) - r * comb(m + 1, 2))
    consistent = (not rep.empty) or predicted == 0
    return CollisionReport(rep.empty, rep.dim, predicted, consistent)
