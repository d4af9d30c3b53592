"""Machine checks for the identities behind the power-subgroup analysis.

Each check returns a VerificationReport.  "fail" is reserved for exact
computations contradicting an asserted identity (that would mean a bug in
the calculus, every identity checked here is a theorem); saturation-based
checks that merely run out of budget report "inconclusive" instead.
"""

from __future__ import annotations

import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from .abelian import abelianize, lattice_index
from .elements import (
    IDENTITY,
    Element,
    conjugate,
    evaluate,
    generating_pair,
    generator,
    has_branch_pair,
    invert,
    multiply,
    power,
    power_subgroup_generators,
    slope_log2_at,
)
from .presentation import normal_form, parse_expression, element_of
from .presentation import verify_defining_relations as _relators_hold
from .saturation import (
    all_mixed_equivalent,
    check_suffice,
    k_system,
    saturate,
    subgroup_branch_pairs,
)
from .words import Dyadic


@dataclass
class VerificationReport:
    check: str
    parameters: dict
    status: str  # "pass" | "fail" | "inconclusive"
    details: list[str] = field(default_factory=list)
    elapsed: float = 0.0


def _report(check: str, parameters: dict, hard: list[str],
            soft: list[str] | None = None) -> VerificationReport:
    soft = soft or []
    if hard:
        status = "fail"
    elif soft:
        status = "inconclusive"
    else:
        status = "pass"
    return VerificationReport(check, parameters, status, hard + soft)


# -- closed-form branch tables ---------------------------------------------


def x_power_table(m: int) -> tuple[tuple[str, str], ...]:
    if m < 1:
        raise ValueError("power must be positive")
    pairs = [("0" * (m + 1), "0")]
    pairs += [("0" * k + "1", "1" * (m + 1 - k) + "0") for k in range(1, m + 1)]
    pairs.append(("1", "1" * (m + 1)))
    return tuple(sorted(pairs))


def y_power_table(n: int) -> tuple[tuple[str, str], ...]:
    if n < 1:
        raise ValueError("power must be positive")
    pairs = [("0" * (2 * n + 1), "0")]
    for k in range(1, n + 1):
        pairs.append(("0" * 2 * k + "10", "1" * (1 + 3 * (n - k)) + "0"))
        pairs.append(("0" * 2 * k + "11", "1" * (2 + 3 * (n - k)) + "0"))
        pairs.append(("0" * (2 * k - 1) + "1", "1" * (3 * (n - k + 1)) + "0"))
    pairs.append(("1", "1" * (3 * n + 1)))
    return tuple(sorted(pairs))


def verify_branch_tables(m_max: int = 12, n_max: int = 12) -> VerificationReport:
    """Computed powers of the two generators match the closed-form tables."""
    x, y = generating_pair()
    hard = []
    for m in range(1, m_max + 1):
        if tuple(sorted(power(x, m).pairs)) != x_power_table(m):
            hard.append(f"branch table of first generator power {m} mismatches")
    for n in range(1, n_max + 1):
        if tuple(sorted(power(y, n).pairs)) != y_power_table(n):
            hard.append(f"branch table of second generator power {n} mismatches")
    return _report("branch-tables", {"m_max": m_max, "n_max": n_max}, hard)


# -- defining relations -----------------------------------------------------


def verify_generator_relations(max_index: int = 8) -> VerificationReport:
    hard = [] if _relators_hold(max_index) else ["a defining relation fails"]
    return _report("defining-relations", {"max_index": max_index}, hard)


# -- the slope element ------------------------------------------------------


def verify_slope_element(m: int, n: int) -> VerificationReport:
    """The product of power generators with slope data pinned at 1/2.

    Checks: the mn-th power of the second generator has normal form
    x0^(2mn) x1 x4 ... x_(1+3(mn-1)); stripping the x0 part leaves the
    element h = x1 x4 ...; and h fixes 1/2 with one-sided slope logs (0, 1).
    """
    x, y = generating_pair()
    mn = m * n
    hard = []
    y_pow = power(power(y, n), m)
    expect_letters = ((0, 2 * mn),) + tuple((1 + 3 * i, 1) for i in range(mn))
    got = normal_form(y_pow).letters
    if got != expect_letters:
        hard.append(f"normal form of second-generator power {mn} is {got}")
    h = multiply(power(x, -2 * mn), y_pow)
    tail = IDENTITY
    for i in range(mn):
        tail = multiply(tail, generator(1 + 3 * i))
    if h != tail:
        hard.append("slope element differs from the ascending-generator product")
    half = Dyadic(1, 1)
    if evaluate(h, half) != half:
        hard.append("slope element does not fix 1/2")
    if slope_log2_at(h, half, "left") != 0:
        hard.append("left slope log at 1/2 is not 0")
    if slope_log2_at(h, half, "right") != 1:
        hard.append("right slope log at 1/2 is not 1")
    return _report("slope-element", {"m": m, "n": n}, hard)


def verify_slope_elements(product_max: int = 20) -> VerificationReport:
    hard = []
    cases = 0
    for m in range(1, product_max + 1):
        for n in range(1, product_max // m + 1):
            cases += 1
            sub = verify_slope_element(m, n)
            hard += [f"({m},{n}): {msg}" for msg in sub.details]
    return _report(
        "slope-element", {"product_max": product_max, "cases": cases}, hard
    )


# -- abelianization and index -----------------------------------------------


def verify_index(m: int, n: int) -> VerificationReport:
    x_m, y_n = power_subgroup_generators(m, n)
    hard = []
    if tuple(abelianize(x_m)) != (m, -m):
        hard.append(f"abelian image of first generator power {m} wrong")
    if tuple(abelianize(y_n)) != (2 * n, -3 * n):
        hard.append(f"abelian image of second generator power {n} wrong")
    got = lattice_index([abelianize(x_m), abelianize(y_n)])
    if got != m * n:
        hard.append(f"lattice index {got} != {m * n}")
    return _report("index", {"m": m, "n": n}, hard)


def verify_index_grid(m_max: int = 12, n_max: int = 12) -> VerificationReport:
    hard = []
    for m in range(1, m_max + 1):
        for n in range(1, n_max + 1):
            sub = verify_index(m, n)
            hard += [f"({m},{n}): {msg}" for msg in sub.details]
    return _report("index", {"m_max": m_max, "n_max": n_max}, hard)


# -- relation systems hold in the actual subgroups --------------------------


def verify_k_in_h(m: int, n: int, radius: int = 6,
                  depth: int = 14) -> VerificationReport:
    """Every schema instance merges under the subgroup's own branch pairs."""
    gens = power_subgroup_generators(m, n)
    pairs = subgroup_branch_pairs(gens, radius, depth)
    part = saturate(pairs, depth)
    system = k_system(m, n, depth)
    soft = [
        f"{kind} instance {u} ~ {v} not derived"
        for u, v, kind in system.instances
        if not part.same_class(u, v)
    ]
    params = {
        "m": m,
        "n": n,
        "radius": radius,
        "depth": depth,
        "instances": len(system.instances),
        "seeds": len(pairs),
    }
    return _report("subgroup-relations", params, [], soft)


def verify_k_chain_inclusions(m: int, n: int, depth: int = 16) -> VerificationReport:
    """The equal-power system embeds in the mixed one, and halves/thirds."""
    soft = []
    base = saturate(k_system(m, n, depth).pairs, depth)
    prime = k_system(n, n, depth)
    soft += [
        f"powers({n},{n}) instance {u} ~ {v} not derived from powers({m},{n})"
        for u, v, _ in prime.instances
        if not base.same_class(u, v)
    ]
    reduced = saturate(prime.pairs, depth)
    for div in (2, 3):
        if n % div:
            continue
        smaller = k_system(n // div, n // div, depth)
        soft += [
            f"powers({n // div},{n // div}) instance {u} ~ {v} "
            f"not derived from powers({n},{n})"
            for u, v, _ in smaller.instances
            if not reduced.same_class(u, v)
        ]
    return _report(
        "system-inclusions", {"m": m, "n": n, "depth": depth}, [], soft
    )


def verify_derived_containment(n: int, depth: int = 16) -> VerificationReport:
    """Saturating the equal-power system collapses all mixed words."""
    part = k_system(n, n, depth).saturated()
    soft = []
    if not part.same_class("100", "10"):
        soft.append("100 ~ 10 not derived")
    if not part.same_class("110", "101"):
        soft.append("110 ~ 101 not derived")
    bad_r = [r for r in range(1, depth) if not part.same_class("1" * r + "0", "10")]
    if bad_r:
        soft.append(f"1^r 0 ~ 10 missing for r in {bad_r}")
    if not check_suffice(part):
        soft.append("collapse preconditions not established")
    if not all_mixed_equivalent(part, min(10, depth)):
        soft.append("mixed words do not form a single class")
    return _report("derived-containment", {"n": n, "depth": depth}, [], soft)


# -- invariable generation ---------------------------------------------------


def verify_invariable(g: Element, radius: int = 6, depth: int = 16,
                      label: str | None = None) -> VerificationReport:
    """A conjugate of the second generator still generates with the first.

    From the boundary exponents of g (leftmost pair 0^a -> 0^b, rightmost
    1^c -> 1^d, n = max) the conjugate h = g^-1 y^(2n) g must carry two
    specific branch pairs; together with child congruence they collapse the
    trie, and the abelian images of {x, g^-1 y g} span the full lattice.
    """
    x, y = generating_pair()
    u0, v0 = g.pairs[0]
    u1, v1 = g.pairs[-1]
    a, b, c, d = len(u0), len(v0), len(u1), len(v1)
    n = max(a, b, c, d, 1)
    h = conjugate(power(y, 2 * n), g)
    hard = []
    for u, v in (
        ("0" * (2 * n - a + b) + "10", "1" * (1 + 3 * n - c + d) + "0"),
        ("0" * (2 * n - a + b) + "11", "1" * (2 + 3 * n - c + d) + "0"),
    ):
        if not has_branch_pair(h, u, v):
            hard.append(f"conjugate lacks branch pair {u} -> {v}")
    span = lattice_index([abelianize(x), abelianize(conjugate(y, g))])
    if span != 1:
        hard.append(f"abelian images span index {span}, not 1")
    pairs = subgroup_branch_pairs([x, h], radius, depth)
    part = saturate(pairs, depth)
    soft = [] if check_suffice(part) else [
        "collapse pattern not established within budget"
    ]
    params = {
        "g": label if label is not None else repr(g),
        "n": n,
        "radius": radius,
        "depth": depth,
    }
    return _report("invariable-generation", params, hard, soft)


# -- the full suite ----------------------------------------------------------


@dataclass(frozen=True)
class VerifyConfig:
    table_max: int = 12
    index_max: int = 12
    slope_product_max: int = 20
    relator_index_max: int = 8
    subgroup_cases: tuple = ((1, 1), (2, 3), (3, 2), (6, 5), (4, 6), (5, 7))
    subgroup_radius: int = 6
    subgroup_depth: int = 14
    # depths below are the smallest where saturation closes each case;
    # (4,9) needs seed words of length 19, (5,12) of length 24, n=11 of 22
    chain_cases: tuple = (
        (3, 2, 16),
        (2, 3, 16),
        (3, 4, 16),
        (4, 6, 16),
        (4, 9, 19),
        (5, 12, 24),
    )
    containment_cases: tuple = ((1, 16), (5, 16), (7, 16), (11, 22))
    invariable_exprs: tuple = (
        "e",
        "x1",
        "x0^3*x1^-1",
        "x1^2*x0^-1",
        "x0^((x0^2*x1)^-1)",
    )
    invariable_radius: int = 6
    invariable_depth: int = 16


def _run_task(task) -> VerificationReport:
    kind, kwargs = task
    start = time.perf_counter()
    if kind == "defining-relations":
        rep = verify_generator_relations(**kwargs)
    elif kind == "branch-tables":
        rep = verify_branch_tables(**kwargs)
    elif kind == "slope-element":
        rep = verify_slope_elements(**kwargs)
    elif kind == "index":
        rep = verify_index_grid(**kwargs)
    elif kind == "subgroup-relations":
        rep = verify_k_in_h(**kwargs)
    elif kind == "system-inclusions":
        rep = verify_k_chain_inclusions(**kwargs)
    elif kind == "derived-containment":
        rep = verify_derived_containment(**kwargs)
    elif kind == "invariable-generation":
        expr = kwargs.pop("expr")
        g = element_of(parse_expression(expr))
        rep = verify_invariable(g, label=expr, **kwargs)
    else:
        raise ValueError(f"unknown check {kind!r}")
    rep.elapsed = time.perf_counter() - start
    return rep


def suite_tasks(config: VerifyConfig | None = None) -> list[tuple]:
    cfg = config or VerifyConfig()
    tasks: list[tuple] = [
        ("defining-relations", {"max_index": cfg.relator_index_max}),
        ("branch-tables", {"m_max": cfg.table_max, "n_max": cfg.table_max}),
        ("slope-element", {"product_max": cfg.slope_product_max}),
        ("index", {"m_max": cfg.index_max, "n_max": cfg.index_max}),
    ]
    for m, n in cfg.subgroup_cases:
        tasks.append(("subgroup-relations", {
            "m": m, "n": n,
            "radius": cfg.subgroup_radius, "depth": cfg.subgroup_depth,
        }))
    for m, n, depth in cfg.chain_cases:
        tasks.append(("system-inclusions", {"m": m, "n": n, "depth": depth}))
    for n, depth in cfg.containment_cases:
        tasks.append(("derived-containment", {"n": n, "depth": depth}))
    for expr in cfg.invariable_exprs:
        tasks.append(("invariable-generation", {
            "expr": expr,
            "radius": cfg.invariable_radius, "depth": cfg.invariable_depth,
        }))
    return tasks


def run_all(config: VerifyConfig | None = None,
            jobs: int | None = None) -> list[VerificationReport]:
    tasks = suite_tasks(config)
    if jobs is None:
        jobs = min(os.cpu_count() or 1, len(tasks))
    if jobs <= 1:
        return [_run_task(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(_run_task, tasks))
