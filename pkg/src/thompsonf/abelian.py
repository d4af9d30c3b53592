"""Abelianization onto Z^2 and index computations in the image lattice.

An element maps to the pair of log-slopes at the two endpoints of [0, 1].
The map is a surjective homomorphism onto Z^2 whose kernel is the derived
subgroup, so the index of a subgroup's lattice image bounds (and for the
standard two-generator families equals) data about the subgroup itself.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import NamedTuple, Optional

from .elements import Element, evaluate, slope_log2, slope_log2_at
from .saturation import (
    branch_pairs_of_elements,
    check_suffice,
    element_ball,
    saturate,
)
from .words import interval_of


class AbelianImage(NamedTuple):
    a: int  # log2 of the slope at the left endpoint
    b: int  # log2 of the slope at the right endpoint


def abelianize(f: Element) -> AbelianImage:
    return AbelianImage(slope_log2(f, "0+"), slope_log2(f, "1-"))


def lattice_index(images: list[AbelianImage]) -> Optional[int]:
    """Index in Z^2 of the sublattice the images generate; None if infinite.

    Fold: keep one row with nonzero first coordinate (reduced against the
    others by gcd steps) plus the gcd of the second coordinates that were
    eliminated.  |top_a * low| is the covolume.
    """
    top: Optional[tuple[int, int]] = None
    low = 0
    for a, b in images:
        if a and top is not None:
            # unimodular row move: top gains first coord gcd, this row's
            # first coord drops to zero, second coord becomes the residue
            g, p, q = _xgcd(top[0], a)
            rb = (-a // g) * top[1] + (top[0] // g) * b
            top = (g, p * top[1] + q * b)
            a, b = 0, rb
        if a:
            top = (a, b)
            b = 0
        low = math.gcd(low, b)
    if top is None or low == 0:
        return None
    return abs(top[0] * low)


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t


@dataclass
class IndexCertificate:
    generators: list[Element]
    lattice: Optional[int]
    verdict: str  # "finite-index" | "not-finite-index" | "inconclusive"
    containment: str = "not-established"
    details: dict = field(default_factory=dict)

    def as_report_dict(self) -> dict:
        return {
            "index": self.lattice if self.lattice is not None else "infinite",
            "derived_containment": self.containment,
            "verdict": self.verdict,
        }


def _slope_witness(ball) -> Optional[tuple[Element, "object"]]:
    """An element fixing an interior dyadic with one-sided slope logs (0, 1).

    Candidate fixed points are the left endpoints of source intervals; an
    element affine on each source cylinder can only fix such a point, the
    right endpoint of another cylinder, or an interior point forced by the
    cylinder's own affine map, and the latter two cases are covered once
    every element's inverse is also in the ball.
    """
    for h in ball:
        for u, _ in h.pairs:
            alpha = interval_of(u)[0]
            if alpha.num == 0:
                continue
            if (
                evaluate(h, alpha) == alpha
                and slope_log2_at(h, alpha, "left") == 0
                and slope_log2_at(h, alpha, "right") == 1
            ):
                return h, alpha
    return None


def finite_index_certificate(generators, radius: int = 6, depth: int = 14,
                             budget: int = 100_000) -> IndexCertificate:
    """One-sided finite-index test for the subgroup the generators span.

    The subgroup has finite index exactly when its image lattice has finite
    index in Z^2 and it contains the derived subgroup.  The lattice half is
    exact.  Containment is probed within budget: saturate the branch pairs
    of a generator ball and require both the collapse pattern of
    check_suffice and a slope witness fixing an interior dyadic.  A
    "verified-within-budget" certificate is genuinely sufficient;
    "not-established" only means the budget did not exhibit one.
    """
    gens = list(generators)
    lattice = lattice_index([abelianize(g) for g in gens])
    if lattice is None:
        return IndexCertificate(gens, None, "not-finite-index")
    ball = element_ball(gens, radius, budget)
    pairs = [(u, v) for u, v, _ in branch_pairs_of_elements(ball, depth)]
    part = saturate(pairs, depth)
    suffice = check_suffice(part)
    witness = _slope_witness(ball)
    details = {
        "ball_size": len(ball),
        "seed_pairs": len(pairs),
        "depth": depth,
        "radius": radius,
        "suffice": suffice,
        "fixed_point": str(witness[1]) if witness else None,
    }
    if suffice and witness:
        return IndexCertificate(
            gens, lattice, "finite-index", "verified-within-budget", details
        )
    return IndexCertificate(gens, lattice, "inconclusive", "not-established", details)
