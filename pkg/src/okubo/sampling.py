"""Seeded random draws for the property and verification suites.

Rationals are drawn with numerators and denominators bounded by 50, and
draws violating the needed nondegeneracy conditions are rejected and
retried, capped at 10^4 attempts.  Everything takes an explicit
random.Random so identical seeds give identical suites.
"""

from __future__ import annotations

import random
from fractions import Fraction

from .accessory import (AccessoryChart, epsilon_delta, is_admissible,
                        solve_accessory, solve_r4)
from .dotsenko_fateev import DFParams
from .errors import DegenerateChart, DConditionError, OkuboError
from .hgsystem import (HGParams, det_diagonalizer_formula, det_gauge_formula,
                       lam)

MAX_ATTEMPTS = 10_000


def rng_for(seed: int) -> random.Random:
    return random.Random(seed)


def _give_up(what: str):
    raise RuntimeError(f"sampling cap exceeded while drawing {what}")


def rand_fraction(rng: random.Random, nonzero: bool = True,
                  max_num: int = 50, max_den: int = 50) -> Fraction:
    while True:
        q = Fraction(rng.randint(-max_num, max_num), rng.randint(1, max_den))
        if q != 0 or not nonzero:
            return q


def draw_exponents(rng: random.Random) -> tuple:
    """Admissible (a, b, c, d): none of the excluded combinations integral."""
    for _ in range(MAX_ATTEMPTS):
        vals = tuple(rand_fraction(rng) for _ in range(4))
        if is_admissible(*vals):
            return vals
    _give_up("admissible exponents")


def draw_generic_params(rng: random.Random) -> HGParams:
    """Unconstrained hypergeometric parameters."""
    return HGParams.generic(*(rand_fraction(rng) for _ in range(6)))


def draw_okubo_params(rng: random.Random) -> HGParams:
    """Gamma-constrained parameters passing every nondegeneracy condition
    used by the gauge, the diagonalizer and the realization check."""
    needed = ("+000", "0+00", "00+0", "000+", "+-++", "++-+", "-+++", "+++-",
              "+0-0", "0+0-", "--++", "0-0+", "-0+0")
    for _ in range(MAX_ATTEMPTS):
        p = HGParams.okubo(*(rand_fraction(rng) for _ in range(4)))
        abcd = (lam(p, "++++"), lam(p, "-+-+"), lam(p, "++--"), lam(p, "+--+"))
        if not is_admissible(*abcd):
            continue
        if det_gauge_formula(p) == 0 or det_diagonalizer_formula(p) == 0:
            continue
        if any(lam(p, s) == 0 for s in needed):
            continue
        return p
    _give_up("gamma-constrained parameters")


def draw_chart(rng: random.Random) -> AccessoryChart:
    """A valid chart: random exponents and ratios, with the last ratio
    solved from the d-constraint (which is linear in it)."""
    for _ in range(MAX_ATTEMPTS):
        a, b, c, d = draw_exponents(rng)
        r1, r2, r3 = (rand_fraction(rng) for _ in range(3))
        if r1 == r2 or r1 * r2 * r3 == 0:
            continue
        try:
            r4 = solve_r4(a, b, c, d, r1, r2, r3)
            chart = AccessoryChart(a, b, c, d, (r1, r2, r3, r4))
            chart.check()
        except (DegenerateChart, DConditionError):
            continue
        return chart
    _give_up("chart")


def draw_special_chart(rng: random.Random) -> AccessoryChart:
    """A chart at the special accessory values, with a random scale."""
    for _ in range(MAX_ATTEMPTS):
        a, b, c, d = draw_exponents(rng)
        try:
            chart, _ = solve_accessory(a, b, c, d, "auto",
                                       rand_fraction(rng))
        except OkuboError:
            continue
        return chart
    _give_up("special chart")


def draw_perturbed_chart(rng: random.Random) -> AccessoryChart:
    """A valid chart close to a special one but with a nonzero
    obstruction (the last ratio is re-solved, so the d-constraint holds)."""
    for _ in range(MAX_ATTEMPTS):
        base = draw_special_chart(rng)
        r1 = base.r1 + rand_fraction(rng)
        r2 = base.r2 + rand_fraction(rng)
        if r1 == r2 or r1 * r2 == 0:
            continue
        try:
            r4 = solve_r4(base.a, base.b, base.c, base.d, r1, r2, base.r3)
            chart = AccessoryChart(base.a, base.b, base.c, base.d,
                                   (r1, r2, base.r3, r4))
            chart.check()
        except (DegenerateChart, DConditionError):
            continue
        if epsilon_delta(chart).vanish:
            continue
        return chart
    _give_up("perturbed chart")


def draw_df_params(rng: random.Random) -> DFParams:
    """Parameters (a, b, c, g) whose matched hypergeometric parameters
    pass the same nondegeneracy conditions as draw_okubo_params."""
    for _ in range(MAX_ATTEMPTS):
        params = DFParams(*(rand_fraction(rng) for _ in range(4)))
        a, b, g = params.a, params.b, params.g
        if (2 * a + g) == 0 or (2 * a + 2 * b + g) == 0:
            continue
        hg = params.induced_hg()
        abcd = (lam(hg, "++++"), lam(hg, "-+-+"),
                lam(hg, "++--"), lam(hg, "+--+"))
        if not is_admissible(*abcd):
            continue
        if det_gauge_formula(hg) == 0 or det_diagonalizer_formula(hg) == 0:
            continue
        needed = ("+000", "0+00", "00+0", "000+", "+--+", "+-++", "+0-0",
                  "0+0-", "+++-", "--++", "0-0+", "-0+0", "+0+0", "++00",
                  "0+-0")
        if any(lam(hg, s) == 0 for s in needed):
            continue
        return params
    _give_up("size-three system parameters")


def sample_disc(rng: random.Random, rmin: float, rmax: float,
                max_angle: float = 2.9) -> complex:
    """A complex point with modulus in [rmin, rmax], off the cut."""
    import cmath
    radius = rng.uniform(rmin, rmax)
    angle = rng.uniform(-max_angle, max_angle)
    return radius * cmath.exp(1j * angle)
