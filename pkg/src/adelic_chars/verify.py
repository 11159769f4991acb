"""Property suites run against a system with a fixed seed.

Each check draws from its own generator seeded by ``"<seed>:<check>"``, so
results do not depend on which suites run or in which order.
"""

from __future__ import annotations

import itertools
import random
from fractions import Fraction

from .adelic import AdeleCharacter, coadjoint, eval_character, line_trivial_locus
from .chars import (
    compute_k,
    compute_p,
    duality_check,
    fixed_center_of_quotient,
    in_L_lambda,
    make_character,
    same_quasi_orbit,
)
from .group import (
    GroupElement,
    LeviSystem,
    adjoint_action,
    central_element,
    inverse,
    multiply,
    validate_system,
)
from .io import CheckResult
from .nilpotent import Ad_of_group, bch
from .qmod1 import ONE, ZERO, CharValue, Phase
from .sampling import random_element, random_elements, random_lambda, random_levi, random_vector
from .traces import (
    DEFAULT_TOLERANCE,
    TildeCentralCharacter,
    TraceFunction,
    central_failures,
    default_precision,
    gram_matrix,
    psd_check,
)

SUITES = ("core", "duality", "traces")


def _rng(seed: int, check: str) -> random.Random:
    return random.Random(f"{seed}:{check}")


def central_table_characters(system: LeviSystem, limit: int = 8) -> list[TildeCentralCharacter]:
    """All homomorphisms from the central table to Q/Z (tables of at most ``limit`` labels)."""
    labels = system.central_labels
    if len(labels) > limit:
        return []
    orders = []
    for lbl in labels:
        cur, n = lbl, 1
        while cur != system.identity_label:
            cur, n = system.table[(cur, lbl)], n + 1
        orders.append(n)
    out = []
    for combo in itertools.product(*[range(o) for o in orders]):
        vals = {lbl: Phase(Fraction(c, o)) for lbl, c, o in zip(labels, combo, orders)}
        if all(vals[system.table[(a, b)]] == vals[a] + vals[b] for a in labels for b in labels):
            out.append(TildeCentralCharacter.of(
                (lbl, system.central_action(lbl), vals[lbl]) for lbl in labels))
    return out


def broken_character(lam: AdeleCharacter, system: LeviSystem) -> TraceFunction:
    """λ evaluated on the whole unipotent part, ignoring the p_λ restriction."""
    k = compute_k(lam, system)

    def value(g: GroupElement) -> CharValue:
        if not in_L_lambda(g.levi, k):
            return ZERO
        return CharValue(eval_character(lam, g.uni.coords))

    return TraceFunction(system, value, "broken")


def characters_for(lam: AdeleCharacter, system: LeviSystem) -> list[TraceFunction]:
    """Φ_(λ,1) plus Φ_(λ,φ) for each central-table character φ supported in L_λ."""
    k = compute_k(lam, system)
    out = [make_character(lam, system)]
    if all(in_L_lambda(central_element(system, lbl), k) for lbl in system.central_labels):
        for phi in central_table_characters(system):
            if any(not v.is_zero() for _, _, v in phi.support):
                out.append(make_character(lam, system, phi))
    return out


# core

def check_validation(system: LeviSystem, seed: int) -> CheckResult:
    problems = validate_system(system)
    return CheckResult("core.validate", 1, seed, not problems, None, "; ".join(problems))


def check_bch(system: LeviSystem, seed: int, n: int = 200) -> list[CheckResult]:
    rng = _rng(seed, "core.bch")
    alg = system.algebra
    assoc = inv = ad = True
    for _ in range(n):
        x, y, z = (alg.vector(random_vector(rng, alg.dim)) for _ in range(3))
        assoc &= bch(bch(x, y), z) == bch(x, bch(y, z))
        inv &= bch(x, -x).is_zero()
        ad &= Ad_of_group(bch(x, y)) == Ad_of_group(x) @ Ad_of_group(y)
    return [CheckResult("core.bch_associative", n, seed, assoc),
            CheckResult("core.bch_inverse", n, seed, inv),
            CheckResult("core.Ad_homomorphism", n, seed, ad)]


def check_group_laws(system: LeviSystem, seed: int, n: int = 300) -> list[CheckResult]:
    rng = _rng(seed, "core.group")
    e = system.identity()
    assoc = inv = hom = True
    for _ in range(n):
        a, b, c = random_elements(rng, system, 3)
        assoc &= multiply(multiply(a, b), c) == multiply(a, multiply(b, c))
        inv &= multiply(a, inverse(a)) == e and multiply(inverse(a), a) == e
        hom &= adjoint_action(multiply(a, b)) == adjoint_action(a) @ adjoint_action(b)
    return [CheckResult("core.multiply_associative", n, seed, assoc),
            CheckResult("core.inverse", n, seed, inv),
            CheckResult("core.Ad_of_product", n, seed, hom)]


def core_suite(system: LeviSystem, seed: int) -> list[CheckResult]:
    res = check_validation(system, seed)
    if not res.result:
        return [res]
    return [res] + check_bch(system, seed) + check_group_laws(system, seed)


# duality

def duality_suite(system: LeviSystem, seed: int, n: int = 100) -> list[CheckResult]:
    rng = _rng(seed, "duality")
    lams = [AdeleCharacter.zero(system.dim)] + [random_lambda(rng, system.dim) for _ in range(n - 1)]
    dual = oracle = kid = nested = coad = True
    for lam in lams:
        k, p = compute_k(lam, system), compute_p(lam, system)
        dual &= duality_check(lam, system)
        oracle &= p == fixed_center_of_quotient(lam, system)
        kid &= k == p & line_trivial_locus(lam)
        nested &= k <= p
        g = system.element(random_levi(rng, system), random_vector(rng, system.dim, 3, 2))
        mu = coadjoint(lam, adjoint_action(g))
        coad &= compute_k(mu, system) == k and compute_p(mu, system) == p and same_quasi_orbit(lam, mu, system)
    return [CheckResult("duality.p_equals_ann_V", n, seed, dual),
            CheckResult("duality.p_equals_quotient_center", n, seed, oracle),
            CheckResult("duality.k_equals_p_cap_W", n, seed, kid),
            CheckResult("duality.k_in_p", n, seed, nested),
            CheckResult("duality.coadjoint_invariance", n, seed, coad)]


# traces

def _trace_lambdas(system: LeviSystem, rng: random.Random, n: int) -> list[AdeleCharacter]:
    return [AdeleCharacter.zero(system.dim)] + [random_lambda(rng, system.dim) for _ in range(n)]


def trace_checks(phi: TraceFunction, system: LeviSystem, rng: random.Random, seed: int, tag: str,
                 pairs: int = 500, sets: int = 20, set_size: int = 8,
                 tol: float = DEFAULT_TOLERANCE) -> list[CheckResult]:
    norm = phi(system.identity()) == ONE
    sample = [(random_element(rng, system), random_element(rng, system)) for _ in range(pairs)]
    bad = central_failures(phi, sample)
    psd = all(psd_check(gram_matrix(phi, random_elements(rng, system, set_size)), tol)
              for _ in range(sets))
    prec = default_precision()
    return [CheckResult(f"traces.normalized[{tag}]", 1, seed, norm),
            CheckResult(f"traces.central[{tag}]", pairs, seed, not bad, None,
                        f"{len(bad)} failing pairs" if bad else ""),
            CheckResult(f"traces.gram_psd[{tag}]", sets, seed, psd, f"{tol:g} at {prec} bits")]


def ad_invariance(phi: TraceFunction, system: LeviSystem, rng: random.Random, n: int = 50) -> bool:
    """Φ(e, α(g)x) = Φ(e, x) for random Levi words g."""
    for _ in range(n):
        l = random_levi(rng, system)
        x = random_vector(rng, system.dim, 4, 3, rng.choice((0.0, 0.5)))
        if phi(system.unipotent(l.action.apply(x))) != phi(system.unipotent(x)):
            return False
    return True


def traces_suite(system: LeviSystem, seed: int, n_lambdas: int = 2, pairs: int = 500,
                 sets: int = 20, negative_control: bool = False) -> list[CheckResult]:
    rng = _rng(seed, "traces")
    out = []
    for i, lam in enumerate(_trace_lambdas(system, rng, n_lambdas)):
        for j, phi in enumerate(characters_for(lam, system)):
            tag = f"lambda{i}.phi{j}"
            out += trace_checks(phi, system, rng, seed, tag, pairs, sets)
            out.append(CheckResult(f"traces.ad_invariant[{tag}]", 50, seed, ad_invariance(phi, system, rng)))
    if negative_control:
        out.append(negative_control_check(system, seed, pairs))
    return out


def negative_control_check(system: LeviSystem, seed: int, pairs: int = 500) -> CheckResult:
    """Centrality of the support-unrestricted function; it is expected to fail."""
    rng = _rng(seed, "negative_control")
    lam = next((l for l in (random_lambda(rng, system.dim) for _ in range(50))
                if compute_p(l, system).dim < system.dim), None)
    if lam is None:
        return CheckResult("traces.central[negative-control]", 0, seed, True, None,
                           "p_lambda is the full space for every sampled lambda")
    phi = broken_character(lam, system)
    sample = []
    for _ in range(pairs):
        g = system.element(system.levi_identity(), random_vector(rng, system.dim, 4, 3, 0.5))
        sample.append((g, random_element(rng, system)))
    bad = central_failures(phi, sample)
    return CheckResult("traces.central[negative-control]", pairs, seed, not bad, None,
                       f"{len(bad)} failing pairs" if bad else "")


def run_suites(system: LeviSystem, suite: str = "all", seed: int = 0,
               negative_control: bool = False, **sizes) -> list[CheckResult]:
    names = SUITES if suite == "all" else (suite,)
    out = []
    for name in names:
        if name == "core":
            out += core_suite(system, seed)
        elif name == "duality":
            out += duality_suite(system, seed, sizes.get("lambdas", 100))
        elif name == "traces":
            out += traces_suite(system, seed, pairs=sizes.get("pairs", 500),
                                sets=sizes.get("sets", 20), negative_control=negative_control)
        else:
            raise ValueError(f"unknown suite {name!r}")
    if negative_control and "traces" not in names:
        out.append(negative_control_check(system, seed))
    return out
