"""Acceptance criteria 1-12, one recorded line each (shown in the terminal summary)."""

import os
import random
import subprocess
import sys
import time
from fractions import Fraction
from functools import lru_cache

from adelic_chars.adelic import AdeleCharacter, coadjoint, eval_character, line_trivial_locus
from adelic_chars.catalog import CATALOG_NAMES, catalog_fixture, invariant_ideals_from_basis, standard_levi_samples
from adelic_chars.chars import (
    compute_k,
    compute_p,
    duality_check,
    fixed_center_of_quotient,
    in_L_lambda,
    make_character,
    same_quasi_orbit,
)
from adelic_chars.group import adjoint_action, central_element, direct_sum, join_elements, split_element
from adelic_chars.nilpotent import Ad_of_group, bch, bracket
from adelic_chars.qmod1 import ONE, ZERO, CharValue, global_phase_zero
from adelic_chars.ratlinalg import RatMatrix, Subspace
from adelic_chars.sampling import random_element, random_elements, random_lambda, random_levi, random_vector
from adelic_chars.traces import (
    TildeCentralCharacter,
    central_failures,
    gram_matrix,
    min_eigenvalue,
    psd_check,
    tensor,
    to_mp_matrix,
    _exact_entries,
)
from adelic_chars.verify import broken_character, characters_for

SEED = 20240611
TOL = 1e-9
PREC = 60


@lru_cache(maxsize=None)
def fixture(name):
    return catalog_fixture(name)


@lru_cache(maxsize=None)
def random_suite(name):
    rng = random.Random(f"{SEED}:{name}:lambdas")
    return tuple(random_lambda(rng, fixture(name).system.dim) for _ in range(100))


def eps_table(system):
    return TildeCentralCharacter.of([("I", system.central_action("I"), 0),
                                     ("-I", system.central_action("-I"), Fraction(1, 2))])


def test_criterion_01_sl2_standard(acceptance_line):
    t0 = time.perf_counter()
    fx = fixture("abelian-sl2")
    s = fx.system
    rng = random.Random(f"{SEED}:c1")
    full, zero = Subspace.full(2), Subspace.zero(2)
    samples = standard_levi_samples(s) + [random_levi(rng, s) for _ in range(20)]
    lam0, lam1 = fx.lam("zero"), fx.lam("e1")
    ok = compute_k(lam0, s) == full and compute_p(lam0, s) == full
    ok &= all(in_L_lambda(l, full) for l in samples)
    k1 = compute_k(lam1, s)
    ok &= k1 == zero and compute_p(lam1, s) == zero
    ok &= in_L_lambda(s.levi_identity(), k1) and not in_L_lambda(central_element(s, "-I"), k1)

    one_g = make_character(lam0, s)
    eps = make_character(lam0, s, eps_table(s))
    delta = make_character(lam1, s)
    minus_i = central_element(s, "-I")
    elems = random_elements(rng, s, 180) + [s.identity(), s.element(minus_i)]
    elems += [s.element(rng.choice([s.levi_identity(), minus_i]), random_vector(rng, 2)) for _ in range(18)]

    def eps_ref(g):
        if g.levi == s.levi_identity():
            return ONE
        return CharValue.root(Fraction(1, 2)) if g.levi == minus_i else ZERO

    matches = all(one_g(g) == ONE and eps(g) == eps_ref(g) and delta(g) == (ONE if g.is_identity() else ZERO)
                  for g in elems)
    dt = time.perf_counter() - t0
    ok = ok and matches and dt < 1
    acceptance_line(1, ok, f"SL2 standard (k,p) table exact; 1_G, eps, delta_e match on {len(elems)} elements; {dt:.2f}s < 1s")
    assert ok


def _heisenberg_case(n):
    fx = fixture(f"heisenberg-{n}")
    s = fx.system
    d = s.dim
    z = Subspace.span([[0] * (d - 1) + [1]], d)
    ok = True
    for case, lam in fx.labeled_lambdas:
        exp = fx.case(case)
        ok &= (compute_k(lam, s), compute_p(lam, s)) == (exp.k, exp.p)
        ok &= all(in_L_lambda(l, exp.k) == b for l, b in exp.levi_facts)
    ok &= fx.case("center").k == Subspace.zero(d) and compute_p(fx.lam("center"), s) == z
    lam = fx.lam("center")
    chi = make_character(lam, s)
    rng = random.Random(f"{SEED}:c2:{n}")
    elems = random_elements(rng, s, 150)
    elems += [s.unipotent([0] * (d - 1) + [Fraction(rng.randint(-9, 9), rng.randint(1, 5))]) for _ in range(50)]

    def tilde_chi(g):
        # χ on the center exp(Qz), zero elsewhere
        if g.levi.is_identity() and not any(g.uni.coords[:-1]):
            return CharValue(eval_character(lam, g.uni.coords))
        return ZERO

    return ok and all(chi(g) == tilde_chi(g) for g in elems), len(elems)


def test_criterion_02_heisenberg(acceptance_line):
    t0 = time.perf_counter()
    results = {n: _heisenberg_case(n) for n in (1, 2)}
    dt = time.perf_counter() - t0
    ok = all(r for r, _ in results.values()) and dt < 5
    acceptance_line(2, ok, f"Heisenberg n=1,2: (k,p,L_lambda) for k in {{0,z,u}} exact; tilde-chi matches on "
                           f"{results[1][1]}+{results[2][1]} elements; {dt:.2f}s < 5s")
    assert ok


def test_criterion_03_free_three(acceptance_line):
    t0 = time.perf_counter()
    fx = fixture("free-3")
    s = fx.system
    z = Subspace.span([[0, 0, 0, 1, 0, 0], [0, 0, 0, 0, 1, 0], [0, 0, 0, 0, 0, 1]], 6)
    got = {case: (compute_k(lam, s), compute_p(lam, s)) for case, lam in fx.labeled_lambdas}
    ok = got == {"zero": (Subspace.full(6),) * 2, "V": (z, z), "center": (Subspace.zero(6),) * 2}
    ok &= invariant_ideals_from_basis(s) == {Subspace.zero(6), z, Subspace.full(6)}
    dt = time.perf_counter() - t0
    ok = ok and dt < 5
    acceptance_line(3, ok, f"free 2-step n=3: (k,p) in {{(0,0),(z,z),(u,u)}} exact; ideal scan = {{0,z,u}}; {dt:.2f}s < 5s")
    assert ok


def test_criterion_04_duality(acceptance_line):
    t0 = time.perf_counter()
    ok = all(duality_check(lam, fixture(n).system) for n in CATALOG_NAMES for lam in random_suite(n))
    dt = time.perf_counter() - t0
    ok = ok and dt < 30
    acceptance_line(4, ok, f"p = ann(V) for 100 random lambda x {len(CATALOG_NAMES)} systems; {dt:.2f}s < 30s")
    assert ok


def test_criterion_05_quotient_oracle(acceptance_line):
    bad = [(n, lam) for n in CATALOG_NAMES for lam in random_suite(n)
           if compute_p(lam, fixture(n).system) != fixed_center_of_quotient(lam, fixture(n).system)]
    acceptance_line(5, not bad, f"compute_p = fixed center of u/k on the same suite; {len(bad)} mismatches")
    assert not bad


def test_criterion_06_k_identity(acceptance_line):
    bad = [(n, lam) for n in CATALOG_NAMES for lam in random_suite(n)
           if compute_k(lam, fixture(n).system) != compute_p(lam, fixture(n).system) & line_trivial_locus(lam)]
    acceptance_line(6, not bad, f"k = p ∩ W on the same suite; {len(bad)} mismatches")
    assert not bad


def test_criterion_07_bch(acceptance_line, upper4):
    t0 = time.perf_counter()
    algebras = [fixture(n).system.algebra for n in CATALOG_NAMES[1:]] + [upper4[0]]
    ok = True
    for alg in algebras:
        rng = random.Random(f"{SEED}:c7:{alg.dim}:{alg.nil_class}")
        for _ in range(200):
            x, y, w = (alg.vector(random_vector(rng, alg.dim, 4, 3)) for _ in range(3))
            ok &= bch(bch(x, y), w) == bch(x, bch(y, w))
            ok &= Ad_of_group(bch(x, y)) == Ad_of_group(x) @ Ad_of_group(y)
            ok &= bch(x, -x).is_zero()
    alg = upper4[0]
    rng = random.Random(f"{SEED}:c7:closed")
    for _ in range(200):
        x, y = (alg.vector(random_vector(rng, 6, 4, 3)) for _ in range(2))
        closed = (x + y + bracket(x, y) * Fraction(1, 2) + bracket(x, bracket(x, y)) * Fraction(1, 12)
                  + bracket(y, bracket(y, x)) * Fraction(1, 12))
        ok &= bch(x, y) == closed
    dt = time.perf_counter() - t0
    ok = ok and dt < 30
    acceptance_line(7, ok, f"BCH associativity/Ad/inverse on {len(algebras)} algebras (classes 2, 3) and degree-3 closed form; {dt:.2f}s < 30s")
    assert ok


def test_criterion_08_trace_axioms(acceptance_line):
    t0 = time.perf_counter()
    ok, count, worst = True, 0, None
    for name in CATALOG_NAMES:
        fx = fixture(name)
        s = fx.system
        rng = random.Random(f"{SEED}:c8:{name}")
        phis = []
        for _, lam in fx.labeled_lambdas:
            phis += characters_for(lam, s)
        for phi in phis:
            count += 1
            ok &= phi(s.identity()) == ONE
            pairs = [(random_element(rng, s), random_element(rng, s)) for _ in range(500)]
            ok &= not central_failures(phi, pairs)
            for _ in range(20):
                g = gram_matrix(phi, random_elements(rng, s, 8))
                ok &= psd_check(g, TOL, PREC)
                if _exact_entries(g) is None:
                    ev = min_eigenvalue(to_mp_matrix(g, PREC), PREC)
                    worst = ev if worst is None else min(worst, ev)
    # negative control: λ evaluated off p_λ
    s = fixture("heisenberg-1").system
    rng = random.Random(f"{SEED}:c8:neg")
    broken = broken_character(fixture("heisenberg-1").lam("center"), s)
    neg_fails = bool(central_failures(broken, [(random_element(rng, s), random_element(rng, s)) for _ in range(500)]))
    dt = time.perf_counter() - t0
    ok = ok and neg_fails and dt < 60
    acceptance_line(8, ok, f"{count} characters: normalized, central on 500 pairs, Gram PSD on 20x8 sets "
                           f"(min numeric eigenvalue {worst:.3g} >= -{TOL:g} at {PREC} bits); negative control fails; {dt:.2f}s < 60s")
    assert ok


def test_criterion_09_quasi_orbits(acceptance_line):
    ok = True
    rng = random.Random(f"{SEED}:c9")
    for i in range(50):
        name = CATALOG_NAMES[i % len(CATALOG_NAMES)]
        s = fixture(name).system
        lam = random_lambda(rng, s.dim)
        g = s.element(random_levi(rng, s), random_vector(rng, s.dim, 3, 2))
        ok &= same_quasi_orbit(lam, coadjoint(lam, adjoint_action(g)), s)
    s = fixture("heisenberg-1").system
    base = [random_lambda(rng, 3) for _ in range(4)] + [AdeleCharacter.archimedean([0, 0, 1])]
    sample = base + [coadjoint(l, adjoint_action(random_element(rng, s))) for l in base]
    rel = {(a, b): same_quasi_orbit(sample[a], sample[b], s) for a in range(10) for b in range(10)}
    ok &= all(rel[(a, a)] for a in range(10))
    ok &= all(rel[(a, b)] == rel[(b, a)] for a in range(10) for b in range(10))
    ok &= all(rel[(a, c)] for a in range(10) for b in range(10) for c in range(10) if rel[(a, b)] and rel[(b, c)])
    fx = fixture("heisenberg-1")
    ok &= not same_quasi_orbit(fx.lam("center"), fx.lam("V"), s)
    acceptance_line(9, ok, "Ad*-invariance on 50 pairs; equivalence axioms on 10 lambdas; lambda_center != lambda_V")
    assert ok


def test_criterion_10_adelic_convention(acceptance_line):
    rng = random.Random(f"{SEED}:c10")
    ok = all(global_phase_zero(Fraction(rng.randint(-10**9, 10**9), rng.randint(1, 10**6))) for _ in range(1000))
    for _ in range(300):
        lam = random_lambda(rng, 3)
        q1, q2 = random_vector(rng, 3, 9, 30), random_vector(rng, 3, 9, 30)
        ok &= eval_character(lam, [a + b for a, b in zip(q1, q2)]) == eval_character(lam, q1) + eval_character(lam, q2)
        g = RatMatrix.from_rows([random_vector(rng, 3, 3, 2) for _ in range(3)])
        try:
            gi = g.inverse()
        except ZeroDivisionError:
            continue
        ok &= eval_character(coadjoint(lam, g), q1) == eval_character(lam, gi.apply(q1))
    acceptance_line(10, ok, "e trivial on 1000 random rationals; eval additive and coadjoint-equivariant on 300 samples")
    assert ok


def test_criterion_11_tensor(acceptance_line):
    a, h = fixture("abelian-sl2"), fixture("heisenberg-1")
    eps = make_character(a.lam("zero"), a.system, eps_table(a.system))
    chi = make_character(h.lam("center"), h.system)
    s = direct_sum(a.system, h.system)
    phi = tensor(eps, chi, s)
    rng = random.Random(f"{SEED}:c11")

    def rand():
        return join_elements(s, random_element(rng, a.system), random_element(rng, h.system))

    ok = phi(s.identity()) == ONE
    ok &= not central_failures(phi, [(rand(), rand()) for _ in range(500)])
    ok &= all(psd_check(gram_matrix(phi, [rand() for _ in range(8)]), TOL, PREC) for _ in range(20))
    for _ in range(300):
        g = rand()
        g1, g2 = split_element(s, g)
        ok &= phi(g) == eps(g1) * chi(g2)
    acceptance_line(11, ok, "eps ⊗ tilde-chi: normalized, central on 500 pairs, Gram PSD on 20x8 sets, block-multiplicative on 300")
    assert ok


def test_criterion_12_cli_determinism(acceptance_line, tmp_path):
    import filecmp
    from adelic_chars.cli import emit_catalog
    golden = os.path.join(os.path.dirname(__file__), "golden")
    ok = True
    for name in CATALOG_NAMES:
        out = tmp_path / name
        emit_catalog(name, str(out))
        ref = os.path.join(golden, name)
        ok &= sorted(os.listdir(out)) == sorted(os.listdir(ref))
        ok &= all(filecmp.cmp(out / f, os.path.join(ref, f), shallow=False) for f in os.listdir(ref))
    cmd = [sys.executable, "-m", "adelic_chars.cli", "verify", os.path.join(golden, "heisenberg-1", "system.json"),
           "--seed", "11", "--json"]
    runs = [subprocess.run(cmd, capture_output=True, check=False) for _ in range(2)]
    ok &= runs[0].returncode == 0 and runs[0].stdout == runs[1].stdout and len(runs[0].stdout) > 0
    acceptance_line(12, ok, "golden files byte-identical for all catalog fixtures; two fixed-seed verify runs identical")
    assert ok
