"""End-to-end gate: one test per shipped guarantee, exact values throughout."""

import copy
import random
import time
from fractions import Fraction

from linserlab.arrangements import (
    circuits,
    da_divisor,
    generic_arrangement,
    graded_counts,
    m8_minus,
)
from linserlab.dumnicki import (
    EmptinessCertificate,
    certificate_to_json,
    paper_family,
    prove_empty,
    reduce_partition,
    verify_certificate,
    verify_certificate_json,
)
from linserlab.fatpoints import (
    alpha,
    chudnovsky_report,
    collinear_constraint_experiment,
    generic_cohomology,
    make_config,
    speciality_stability,
    waldschmidt_sandwich,
)
from linserlab.surfaces import (
    build_incidence,
    c_squared,
    c_squared_bruteforce,
    counterexample_n,
    ee_nef_test,
    kollar_report,
    ratio_report,
)
from linserlab.symbolic import (
    asymptotic_multiplier,
    containment_suite,
    contains,
    els_chain_check,
    ideal,
    power,
    symbolic_power,
)
from linserlab.toric import (
    UnboundedPolygon,
    check_strict_convexity,
    initial_lift,
    normal_fan,
    primary_cells,
    split_lift,
)

SEEDS = (11, 23, 77)
EDGES = ideal([(1, 1, 0), (1, 0, 1), (0, 1, 1)])


def test_01_quartic_sextic_tables():
    tables = [
        (4, (2, 2, 2, 2, 2), 1, 1),
        (4, (1, 2, 2, 2, 2), 2, 0),
        (6, (3, 3, 3, 3, 3), 1, 3),
        (6, (2, 3, 3, 3, 3), 2, 1),
    ]
    for d, mults, h0, h1 in tables:
        for seed in SEEDS:
            t0 = time.monotonic()
            rep = generic_cohomology(d, mults, seed=seed)
            assert time.monotonic() - t0 < 1.0
            assert (rep.h0, rep.h1) == (h0, h1)


def test_02_emptiness_certificates():
    t0 = time.monotonic()
    for n in range(1, 11):
        D, mults, cuts = paper_family(n)
        cert = prove_empty(D, mults, cuts)
        assert isinstance(cert, EmptinessCertificate)
        assert len(cert.pieces) == 10
        ok, detail = verify_certificate(D, mults, cert)
        assert ok, detail
    for n in (1, 2, 3):
        assert generic_cohomology(13 * n, (5 * n,) + (4 * n,) * 9).h0 == 0
    assert time.monotonic() - t0 < 120.0


def test_03_initial_degree_bounds():
    t0 = time.monotonic()
    star = make_config("star", {"s": 4}, seed=11).points
    assert alpha(star, 1) == 3
    assert alpha(star, 2) == 4
    ch = chudnovsky_report(star)
    assert ch.bound == Fraction(3 + 1, 2) == 2
    assert ch.equality_witness

    line = make_config("collinear", {"r": 5}, seed=11).points
    for m in (1, 2, 3):
        assert alpha(line, m) == m
    assert waldschmidt_sandwich(line, 1)[1] == 1
    assert waldschmidt_sandwich(line, 2)[1] == 1

    generic = make_config("random", {"r": 5}, seed=11).points
    rep = chudnovsky_report(generic)
    assert Fraction(rep.alpha2, 2) > rep.bound
    assert not rep.equality_witness
    assert time.monotonic() - t0 < 5.0


def test_04_pencil_speciality_stability():
    pts = make_config("pencil_products", {"k": 3}, seed=11).points
    rows = speciality_stability(3, (1,) * 9, pts, 5)
    assert rows == [(n, n + 1, n) for n in range(1, 6)]


def test_05_elliptic_product_family():
    for n in range(2, 21):
        rep = kollar_report(n)
        assert rep.AnSq == 2
        assert rep.An_dot_F1F2 == n * n - 2 * n + 3
        assert rep.nAn_minus_R_sq == -2 * (n - 1) ** 3
        assert rep.h0_Cn == n * n
        assert ee_nef_test(*rep.An.coeffs)
    for c in range(11):
        n = counterexample_n(c)
        assert (n - 1) ** 3 > c * n * n
        assert not ((n - 2) ** 3 > c * (n - 1) ** 2)


def test_06_incidence_negativity():
    for q in (2, 3, 5):
        cfg = build_incidence("projective_plane", {"q": q})
        assert c_squared(cfg) == -q * (q * q + q + 1)
        assert ratio_report(cfg) == -q
    for s in range(3, 9):
        cfg = build_incidence("general_lines", {"s": s})
        assert c_squared(cfg) == -s * (s - 2)
        assert c_squared(cfg) == c_squared_bruteforce(cfg)
    for n in range(2, 21):
        cfg = build_incidence("collinear", {"n": n})
        assert ratio_report(cfg) == Fraction(1 - n, n)


def test_07_symbolic_power_containments():
    t0 = time.monotonic()
    xyz = (1, 1, 1)
    assert contains(symbolic_power(EDGES, 2), xyz)
    assert not contains(power(EDGES, 2), xyz)
    for r in (1, 2, 3, 4):
        suite = containment_suite(EDGES, r)
        assert suite.els and suite.harbourne
    j2 = asymptotic_multiplier(EDGES, 2)
    for r in (1, 2, 3):
        assert power(j2, r) == power(EDGES, r)
    for r in (1, 2, 3):
        chain = els_chain_check(EDGES, r)
        assert chain.left and chain.middle and chain.right
    assert time.monotonic() - t0 < 30.0


def test_08_toric_fan_and_lift():
    P = UnboundedPolygon(((0, 0), (1, -1), (2, -1), (3, 0)), (0, 1))
    cones = normal_fan(P)
    rays = ((1, 0), (1, 1), (0, 1), (-1, 1), (-1, 0))
    assert [c.generators for c in cones] == [
        (rays[i], rays[i + 1]) for i in range(4)]

    D, _mults, cuts = paper_family(1)
    lift = initial_lift(D)
    for cut in cuts:
        lift = split_lift(D, cut, lift)
    assert primary_cells(lift) == reduce_partition(D, cuts)
    assert check_strict_convexity(lift.subdivision, lift)


def test_09_reciprocal_ideal_counts():
    for seed in SEEDS:
        a = generic_arrangement(5, seed=seed)
        assert len(circuits(a, 4)) == 5
        gc = graded_counts(a, 3)
        assert dict(gc.min_gens_by_degree)[3] == 4
        rep = da_divisor(a)
        assert rep.line_pairings == (0,) * 5
    gc = graded_counts(m8_minus(), 3)
    assert dict(gc.min_gens_by_degree)[2] == 7
    assert dict(gc.min_gens_by_degree)[3] == 1
    assert gc.linear_syzygies == 1


def test_10_collinear_quartic_counterexample():
    general, constrained = collinear_constraint_experiment(
        4, (1,) * 16, [4, 4, 4, 4], seed=11)
    assert general.h0 == 0
    assert constrained.h0 == 1


def _leaf_paths(node, prefix=()):
    if isinstance(node, dict):
        for k, v in node.items():
            yield from _leaf_paths(v, prefix + (k,))
    elif isinstance(node, list):
        for i, v in enumerate(node):
            yield from _leaf_paths(v, prefix + (i,))
    else:
        yield prefix


def _mutate(doc, path, rng):
    out = copy.deepcopy(doc)
    node = out
    for key in path[:-1]:
        node = node[key]
    leaf = node[path[-1]]
    if isinstance(leaf, bool) or not isinstance(leaf, (int, str)):
        raise AssertionError(f"unexpected leaf {leaf!r} at {path!r}")
    if isinstance(leaf, int):
        node[path[-1]] = leaf + rng.choice((1, -1, 5))
    else:
        node[path[-1]] = "corrupted" if leaf != "corrupted" else "corrupted2"
    return out


def test_11_certificate_fuzzing():
    docs = []
    for n in (1, 2):
        D, mults, cuts = paper_family(n)
        cert = prove_empty(D, mults, cuts)
        docs.append(certificate_to_json(D, mults, cert))
    for doc in docs:
        ok, detail = verify_certificate_json(doc)
        assert ok, detail
    rng = random.Random(20260815)
    paths = [(doc, p) for doc in docs for p in _leaf_paths(doc)]
    for _ in range(100):
        doc, path = rng.choice(paths)
        mutated = _mutate(doc, path, rng)
        accepted, _detail = verify_certificate_json(mutated)
        assert not accepted, path
    # the originals stay intact after fuzzing
    for doc in docs:
        assert verify_certificate_json(doc)[0]
