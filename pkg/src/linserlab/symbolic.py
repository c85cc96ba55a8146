"""Squarefree monomial ideals: symbolic powers, containment testers, and
Newton-polyhedron multiplier ideals.

Symbolic powers are computed as intersections of powers of the minimal
primes, which for a squarefree monomial ideal are the coordinate subspaces
dual to minimal vertex covers of the generator hypergraph.  Multiplier
ideals of monomial ideals follow the Newton-polyhedron membership rule:
x^a lies in the multiplier ideal at coefficient c exactly when a + (1,..,1)
is interior to c times the Newton region.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import ceil
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

Exponent = Tuple[int, ...]

_LETTERS = ("x", "y", "z", "w", "u", "v")

MAX_VARS = 12


def default_variables(n: int) -> Tuple[str, ...]:
    if n <= len(_LETTERS):
        return _LETTERS[:n]
    return tuple(f"x{i+1}" for i in range(n))


def _divides(d: Exponent, m: Exponent) -> bool:
    return all(di <= mi for di, mi in zip(d, m))


def _minimize(gens: Iterable[Exponent]) -> Tuple[Exponent, ...]:
    """Antichain of minimal elements under divisibility."""
    pool = sorted(set(gens), key=lambda g: (sum(g), g))
    kept: List[Exponent] = []
    for g in pool:
        if not any(_divides(h, g) for h in kept):
            kept.append(g)
    return tuple(sorted(kept))


@dataclass(frozen=True)
class MonomialIdeal:
    """Minimal monomial generators over named variables.

    Construction canonicalizes: generators are deduplicated, minimized
    under divisibility, and sorted, so equality of ideals is equality of
    dataclasses.
    """

    variables: Tuple[str, ...]
    gens: Tuple[Exponent, ...]

    def __post_init__(self):
        variables = tuple(self.variables)
        if not 1 <= len(variables) <= MAX_VARS:
            raise ValueError(f"need between 1 and {MAX_VARS} variables")
        gens = []
        for g in self.gens:
            g = tuple(int(e) for e in g)
            if len(g) != len(variables):
                raise ValueError("generator length does not match variables")
            if any(e < 0 for e in g):
                raise ValueError("exponents must be nonnegative")
            gens.append(g)
        object.__setattr__(self, "variables", variables)
        object.__setattr__(self, "gens", _minimize(gens))

    @property
    def nvars(self) -> int:
        return len(self.variables)

    def is_unit(self) -> bool:
        return self.gens == ((0,) * self.nvars,)

    def is_squarefree(self) -> bool:
        return all(e <= 1 for g in self.gens for e in g)

    def __str__(self) -> str:
        if not self.gens:
            return "(0)"
        return "(" + ", ".join(format_monomial(g, self.variables)
                               for g in self.gens) + ")"


def format_monomial(exp: Exponent, variables: Sequence[str]) -> str:
    parts = []
    for e, v in zip(exp, variables):
        if e == 1:
            parts.append(v)
        elif e > 1:
            parts.append(f"{v}^{e}")
    return "*".join(parts) if parts else "1"


def ideal(gens: Iterable[Exponent], variables=None,
          nvars: Optional[int] = None) -> MonomialIdeal:
    gens = [tuple(g) for g in gens]
    if variables is None:
        if nvars is None:
            if not gens:
                raise ValueError("cannot infer the variable count")
            nvars = len(gens[0])
        variables = default_variables(nvars)
    return MonomialIdeal(tuple(variables), tuple(gens))


def unit_ideal(variables) -> MonomialIdeal:
    return MonomialIdeal(tuple(variables), ((0,) * len(variables),))


def _same_ring(i: MonomialIdeal, j: MonomialIdeal):
    if i.variables != j.variables:
        raise ValueError("ideals live over different variables")


def power(i: MonomialIdeal, k: int) -> MonomialIdeal:
    """k-fold products of generators, minimized; k = 0 is the unit ideal."""
    if k < 0:
        raise ValueError("k must be >= 0")
    if k == 0:
        return unit_ideal(i.variables)
    out = []
    for combo in itertools.combinations_with_replacement(i.gens, k):
        out.append(tuple(map(sum, zip(*combo))))
    return MonomialIdeal(i.variables, tuple(out))


def intersect(i: MonomialIdeal, j: MonomialIdeal) -> MonomialIdeal:
    """Pairwise least common multiples, minimized."""
    _same_ring(i, j)
    out = [tuple(max(a, b) for a, b in zip(g, h))
           for g in i.gens for h in j.gens]
    return MonomialIdeal(i.variables, tuple(out))


def product(i: MonomialIdeal, j: MonomialIdeal) -> MonomialIdeal:
    _same_ring(i, j)
    out = [tuple(a + b for a, b in zip(g, h))
           for g in i.gens for h in j.gens]
    return MonomialIdeal(i.variables, tuple(out))


def contains(i: MonomialIdeal, m: Exponent) -> bool:
    m = tuple(int(e) for e in m)
    if len(m) != i.nvars:
        raise ValueError("monomial length does not match the ring")
    return any(_divides(g, m) for g in i.gens)


def subset(j: MonomialIdeal, i: MonomialIdeal) -> bool:
    _same_ring(i, j)
    return all(contains(i, g) for g in j.gens)


def maximal_ideal(variables) -> MonomialIdeal:
    n = len(variables)
    gens = tuple(tuple(1 if k == idx else 0 for k in range(n))
                 for idx in range(n))
    return MonomialIdeal(tuple(variables), gens)


# ---------------------------------------------------------------------------
# minimal primes of squarefree ideals


@dataclass(frozen=True)
class PrimeSupport:
    """A coordinate prime, recorded by its variable indices."""

    variables: Tuple[int, ...]

    def __post_init__(self):
        v = tuple(sorted(set(int(k) for k in self.variables)))
        if not v:
            raise ValueError("a prime support must be nonempty")
        object.__setattr__(self, "variables", v)


def _require_squarefree(i: MonomialIdeal):
    if not i.is_squarefree():
        raise ValueError("generators must be squarefree")
    if not i.gens or i.is_unit():
        raise ValueError("need a proper nonzero ideal")


def minimal_primes(i: MonomialIdeal) -> List[PrimeSupport]:
    """Minimal vertex covers of the hypergraph of generator supports,
    by brute force over variable subsets."""
    _require_squarefree(i)
    supports = [frozenset(k for k, e in enumerate(g) if e) for g in i.gens]
    n = i.nvars
    covers: List[frozenset] = []
    for size in range(1, n + 1):
        for sub in itertools.combinations(range(n), size):
            s = frozenset(sub)
            if any(c <= s for c in covers):
                continue
            if all(s & supp for supp in supports):
                covers.append(s)
    return sorted((PrimeSupport(tuple(c)) for c in covers),
                  key=lambda p: (len(p.variables), p.variables))


def bight(i: MonomialIdeal) -> int:
    """Maximum codimension among the components, i.e. the largest minimal
    vertex cover."""
    return max(len(p.variables) for p in minimal_primes(i))


def _prime_power(variables, prime: PrimeSupport, m: int) -> MonomialIdeal:
    n = len(variables)
    gens = []
    for combo in itertools.combinations_with_replacement(prime.variables, m):
        g = [0] * n
        for k in combo:
            g[k] += 1
        gens.append(tuple(g))
    return MonomialIdeal(tuple(variables), tuple(gens))


def symbolic_power(i: MonomialIdeal, m: int) -> MonomialIdeal:
    """Intersection of the m-th powers of the minimal primes."""
    if m < 1:
        raise ValueError("m must be >= 1")
    _require_squarefree(i)
    acc: Optional[MonomialIdeal] = None
    for p in minimal_primes(i):
        pm = _prime_power(i.variables, p, m)
        acc = pm if acc is None else intersect(acc, pm)
    assert acc is not None
    if m == 1:
        assert acc == i
    return acc


# ---------------------------------------------------------------------------
# containment testers


@dataclass(frozen=True)
class ContainmentSuite:
    els: bool
    harbourne: bool
    hh1: bool
    hh2: bool
    hh3: bool
    hh4: bool


def containment_suite(i: MonomialIdeal, r: int) -> ContainmentSuite:
    """Symbolic-vs-ordinary power containments at exponent r.

    els: I^(re) <= I^r.  harbourne: I^(re-(e-1)) <= I^r.  hh1..hh4 add the
    maximal-ideal factors m^(rn-r), m^(rn-r-(n-1)), m^(re-r), and
    m^(re-r-(e-1)), each tested at the smallest admissible symbolic
    exponent, with negative m-exponents clamped to zero.
    """
    if r < 1:
        raise ValueError("r must be >= 1")
    _require_squarefree(i)
    e = bight(i)
    n = i.nvars
    ir = power(i, r)
    mm = maximal_ideal(i.variables)

    def mixed(sym_m: int, m_exp: int) -> bool:
        target = product(power(mm, max(0, m_exp)), ir)
        return subset(symbolic_power(i, sym_m), target)

    els = subset(symbolic_power(i, r * e), ir)
    harb = subset(symbolic_power(i, max(1, r * e - (e - 1))), ir)
    return ContainmentSuite(
        els,
        harb,
        mixed(r * n, r * n - r),
        mixed(max(1, r * n - (n - 1)), r * n - r - (n - 1)),
        mixed(r * e, r * e - r),
        mixed(max(1, r * e - (e - 1)), r * e - r - (e - 1)),
    )


# ---------------------------------------------------------------------------
# Newton regions and multiplier ideals


def _primitive(v: Tuple[int, ...]) -> Tuple[int, ...]:
    from math import gcd
    g = 0
    for x in v:
        g = gcd(g, x)
    return tuple(x // g for x in v) if g else v


def _newton_normals(gens: Sequence[Exponent], n: int):
    """Inward normals covering every facet of conv(gens) + R_{>=0}^n.

    Facets of the region have nonnegative normals; each is spanned by
    generator points and coordinate rays, so normals of point triples,
    point pairs crossed with an axis, and the axes themselves exhaust the
    candidates for n <= 3.  Extra (redundant) normals are harmless: the
    inequality nu.u >= min_g nu.g is valid on the region for every nu >= 0,
    and at an interior point every nonzero valid inequality is strict.
    """
    if n > 3:
        raise ValueError("Newton regions are supported in at most 3 variables")
    cands = set()
    for k in range(n):
        cands.add(tuple(1 if j == k else 0 for j in range(n)))
    if n == 2:
        for p, q in itertools.combinations(gens, 2):
            dx, dy = q[0] - p[0], q[1] - p[1]
            nu = (dy, -dx)
            if min(nu) < 0:
                nu = (-dy, dx)
            if min(nu) >= 0 and max(nu) > 0:
                cands.add(_primitive(nu))
    if n == 3:
        def cross(u, v):
            return (u[1] * v[2] - u[2] * v[1],
                    u[2] * v[0] - u[0] * v[2],
                    u[0] * v[1] - u[1] * v[0])

        axes = [(1, 0, 0), (0, 1, 0), (0, 0, 1)]
        pairs = list(itertools.combinations(gens, 2))
        for p, q in pairs:
            d = (q[0] - p[0], q[1] - p[1], q[2] - p[2])
            for ax in axes:
                nu = cross(d, ax)
                if max(nu) == 0 and min(nu) == 0:
                    continue
                if min(nu) < 0:
                    nu = tuple(-x for x in nu)
                if min(nu) >= 0 and max(nu) > 0:
                    cands.add(_primitive(nu))
        for p, q, s in itertools.combinations(gens, 3):
            u = (q[0] - p[0], q[1] - p[1], q[2] - p[2])
            v = (s[0] - p[0], s[1] - p[1], s[2] - p[2])
            nu = cross(u, v)
            if max(nu) == 0 and min(nu) == 0:
                continue
            if min(nu) < 0:
                nu = tuple(-x for x in nu)
            if min(nu) >= 0 and max(nu) > 0:
                cands.add(_primitive(nu))
    out = []
    for nu in sorted(cands):
        h = min(sum(nk * gk for nk, gk in zip(nu, g)) for g in gens)
        out.append((nu, h))
    return out


def newton_region_contains(i: MonomialIdeal, c, a: Sequence) -> bool:
    """Membership of the point a in c times the Newton region of I."""
    c = Fraction(c)
    if c <= 0:
        raise ValueError("c must be positive")
    if not i.gens:
        return False
    a = tuple(Fraction(x) for x in a)
    if len(a) != i.nvars:
        raise ValueError("point length does not match the ring")
    return all(sum(nk * ak for nk, ak in zip(nu, a)) >= c * h
               for nu, h in _newton_normals(i.gens, i.nvars))


def howald_multiplier(i: MonomialIdeal, c) -> MonomialIdeal:
    """Multiplier ideal of I at coefficient c: monomials x^a with
    a + (1,..,1) interior to c * (Newton region of I).

    A coordinate bound for minimal generators: a binding facet nu at the
    reduction of a in direction j gives nu_j (a_j + 1) <= c h(nu) + nu_j,
    so every minimal generator lives in the box a_j <= c h(nu) / nu_j.
    """
    c = Fraction(c)
    if c <= 0:
        raise ValueError("c must be positive")
    if not i.gens:
        raise ValueError("need a nonzero ideal")
    n = i.nvars
    normals = _newton_normals(i.gens, n)
    bound = 1
    for nu, h in normals:
        for nj in nu:
            if nj > 0:
                bound = max(bound, ceil(Fraction(c * h, nj)))
    bound += 1
    cn, cd = c.numerator, c.denominator

    def interior(u: Exponent) -> bool:
        return all(cd * sum(nk * uk for nk, uk in zip(nu, u)) > cn * h
                   for nu, h in normals)

    hits = [a for a in itertools.product(range(bound + 1), repeat=n)
            if interior(tuple(x + 1 for x in a))]
    if not hits:
        raise ArithmeticError("multiplier ideal is zero on the search box; "
                              "this cannot happen for c > 0 at desk scale")
    return MonomialIdeal(i.variables, tuple(hits))


class StabilizationError(RuntimeError):
    """Asymptotic computation did not settle within the sampled range."""

    def __init__(self, values):
        super().__init__(
            "no stabilization: "
            + " ; ".join(f"p={p}: {ideal}" for p, ideal in values))
        self.values = values


def asymptotic_multiplier(i: MonomialIdeal, t,
                          p_range: Optional[Sequence[int]] = None
                          ) -> MonomialIdeal:
    """Stabilized multiplier ideal of the symbolic-power system at
    coefficient t: howald_multiplier(I^(p), t/p) over p in p_range, with
    the last three samples required to agree."""
    t = Fraction(t)
    if t <= 0:
        raise ValueError("t must be positive")
    _require_squarefree(i)
    if p_range is None:
        d = t.denominator
        p_range = tuple(d * k for k in range(1, 7))
    p_range = tuple(int(p) for p in p_range)
    if len(p_range) < 3:
        raise ValueError("need at least three sample values of p")
    if any(p < 1 or (t * p).denominator != 1 for p in p_range):
        raise ValueError("p values must be positive multiples of the "
                         "denominator of t")
    values = [(p, howald_multiplier(symbolic_power(i, p), t / p))
              for p in p_range]
    tail = [ideal for _, ideal in values[-3:]]
    if not (tail[0] == tail[1] == tail[2]):
        raise StabilizationError(values)
    return tail[-1]


@dataclass(frozen=True)
class ElsChain:
    left: bool
    middle: bool
    right: bool


def els_chain_check(i: MonomialIdeal, r: int,
                    p_range: Optional[Sequence[int]] = None) -> ElsChain:
    """The containment chain behind uniform symbolic-power bounds:
    I^(re) <= J(re) <= J(e)^r <= I^r with J(t) the asymptotic multiplier
    ideal of the symbolic-power system."""
    if r < 1:
        raise ValueError("r must be >= 1")
    e = bight(i)
    j_re = asymptotic_multiplier(i, r * e, p_range)
    j_e = asymptotic_multiplier(i, e, p_range)
    j_e_r = power(j_e, r)
    return ElsChain(
        subset(symbolic_power(i, r * e), j_re),
        subset(j_re, j_e_r),
        subset(j_e_r, power(i, r)),
    )


# ---------------------------------------------------------------------------
# JSON round trip


def ideal_to_json(i: MonomialIdeal) -> Dict:
    return {"vars": list(i.variables), "gens": [list(g) for g in i.gens]}


def ideal_from_json(data: Dict) -> MonomialIdeal:
    return MonomialIdeal(tuple(data["vars"]),
                         tuple(tuple(g) for g in data["gens"]))
