"""Accessory parameters of the size-four Okubo system.

The coefficient matrix A = [[a*J, A12], [A21, b*J]] that is similar to
diag(c*J, d*J) admits a normalization in which every off-diagonal entry is
a ratio of linear forms in four auxiliary quantities r1..r4 (obtained as
component ratios of the left eigenvectors for the eigenvalues -c and c).
Modulo a common scale of the r's, and one rational constraint fixing d^2,
two free parameters remain: the accessory parameters.

Series solutions near x = 1 and x = infinity have coefficient vectors
governed by first-order rational difference systems that reduce to 2x2
systems built from the top block of the resolvent numerator of A.  Two
such systems are called "substantially the same" when one is carried into
the other by a single scalar gamma-like factor; this holds exactly when
the two obstructions

    epsilon = b(a+c) r1 + b(a-c) r2 - a(b+c) r3 - a(b-c) r4,
    delta   = r1 r2 - r3 r4

both vanish.  Solving epsilon = delta = 0 pins the accessory parameters to
special values with a closed-form coefficient matrix; for the half-sum
exponents of the hypergeometric product system, that special matrix is
diagonally conjugate to the coefficient matrix of the product system.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import (AdmissibilityError, DConditionError, DegenerateChart,
                     EigenvectorDegeneracy, InputError, InternalInconsistency)
from .exact import (Poly, PolyMatrix, RationalMatrix, left_eigenvectors,
                    to_fraction)
from .hgsystem import (HGParams, J2, OkuboSystem, _even_quartic,
                       build_okubo_system, lam)


# --------------------------------------------------------------------------
# admissibility of the local exponents
# --------------------------------------------------------------------------

def base_condition_failures(a, b, c, d) -> list:
    """Which of the excluded integer conditions hold for (a, b, c, d).

    The excluded set is: any of a, b, c, d, 2a, 2b, 2c, 2d and all the
    pairwise sums/differences being an integer.  Integrality is detected
    exactly (denominator 1), never by a floating-point epsilon.
    """
    a, b, c, d = (Fraction(x) for x in (a, b, c, d))
    named = {"a": a, "b": b, "c": c, "d": d,
             "2a": 2 * a, "2b": 2 * b, "2c": 2 * c, "2d": 2 * d}
    for (n1, x), (n2, y) in (
            (("a", a), ("b", b)), (("a", a), ("c", c)), (("a", a), ("d", d)),
            (("b", b), ("c", c)), (("b", b), ("d", d)), (("c", c), ("d", d))):
        named[f"{n1}+{n2}"] = x + y
        named[f"{n1}-{n2}"] = x - y
    return [name for name, value in named.items() if value.denominator == 1]


def is_admissible(a, b, c, d) -> bool:
    return not base_condition_failures(a, b, c, d)


def require_admissible(a, b, c, d) -> None:
    bad = base_condition_failures(a, b, c, d)
    if bad:
        raise AdmissibilityError(
            "local exponents hit an excluded integer configuration",
            {"integers": ", ".join(bad)})


# --------------------------------------------------------------------------
# charts
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class AccessoryChart:
    """Local exponents (a, b, c, d) together with the ratio vector r.

    The r's matter only up to a common nonzero scale.  A chart is valid
    when r1 r2 r3 r4 != 0, r1 != r2, r3 != r4, and the quadratic-over-
    bilinear expression in the r's equals d^2 exactly.
    """

    a: Fraction
    b: Fraction
    c: Fraction
    d: Fraction
    r: tuple

    def __post_init__(self):
        # exactness is a contract: floats are rejected, not approximated
        for name in ("a", "b", "c", "d"):
            object.__setattr__(self, name, to_fraction(getattr(self, name)))
        object.__setattr__(self, "r", tuple(to_fraction(x) for x in self.r))
        if len(self.r) != 4:
            raise InputError("chart needs exactly four ratio entries")

    @property
    def r1(self):
        return self.r[0]

    @property
    def r2(self):
        return self.r[1]

    @property
    def r3(self):
        return self.r[2]

    @property
    def r4(self):
        return self.r[3]

    def d_constraint_value(self) -> Fraction:
        """The rational expression that must equal d^2."""
        a, b, c = self.a, self.b, self.c
        r1, r2, r3, r4 = self.r
        if r1 == r2 or r3 == r4:
            raise DegenerateChart("degenerate chart",
                                  {"r": [str(x) for x in self.r]})
        num = ((a + b + c) ** 2 * r1 * r3 - (a - b + c) ** 2 * r1 * r4
               - (a - b - c) ** 2 * r2 * r3 + (a + b - c) ** 2 * r2 * r4
               - 4 * a * b * r1 * r2 - 4 * a * b * r3 * r4)
        return num / ((r1 - r2) * (r3 - r4))

    def check(self) -> None:
        r1, r2, r3, r4 = self.r
        if r1 * r2 * r3 * r4 == 0 or r1 == r2 or r3 == r4:
            raise DegenerateChart("degenerate chart",
                                  {"r": [str(x) for x in self.r]})
        if self.d_constraint_value() != self.d ** 2:
            raise DConditionError("d-condition fails",
                                  {"value": self.d_constraint_value(),
                                   "d^2": self.d ** 2})

    def scaled(self, s) -> "AccessoryChart":
        s = Fraction(s)
        if s == 0:
            raise DegenerateChart("zero scale")
        return AccessoryChart(self.a, self.b, self.c, self.d,
                              tuple(x * s for x in self.r))

    def accessory_coordinates(self) -> tuple:
        """(r1/r4, r2/r4): affine coordinates of the two accessory
        parameters, defined only where r4 != 0."""
        if self.r4 == 0:
            raise DegenerateChart("coordinates undefined at r4 = 0")
        return self.r1 / self.r4, self.r2 / self.r4

    @classmethod
    def from_json(cls, data: dict) -> "AccessoryChart":
        try:
            return cls(to_fraction(data["a"]), to_fraction(data["b"]),
                       to_fraction(data["c"]), to_fraction(data["d"]),
                       tuple(to_fraction(x) for x in data["r"]))
        except KeyError as exc:
            raise InputError(f"missing chart field {exc}") from exc

    def to_json(self) -> dict:
        return {"a": str(self.a), "b": str(self.b), "c": str(self.c),
                "d": str(self.d), "r": [str(x) for x in self.r]}


def solve_r4(a, b, c, d, r1, r2, r3) -> Fraction:
    """The unique r4 making the d-constraint hold (it is linear in r4)."""
    a, b, c, d = (Fraction(x) for x in (a, b, c, d))
    r1, r2, r3 = (Fraction(x) for x in (r1, r2, r3))
    coef = (-(a - b + c) ** 2 * r1 + (a + b - c) ** 2 * r2
            - 4 * a * b * r3 + d ** 2 * (r1 - r2))
    const = ((a + b + c) ** 2 * r1 * r3 - (a - b - c) ** 2 * r2 * r3
             - 4 * a * b * r1 * r2 - d ** 2 * (r1 - r2) * r3)
    if coef == 0:
        raise DegenerateChart("r4 is not determined by (r1, r2, r3)")
    return -const / coef


# --------------------------------------------------------------------------
# the parametrized coefficient matrix
# --------------------------------------------------------------------------

def upper_block(chart: AccessoryChart) -> RationalMatrix:
    a, b, c = chart.a, chart.b, chart.c
    r1, r2, r3, r4 = chart.r
    return RationalMatrix([
        [((b - c) * r2 - (b + c) * r3) / (r1 - r2),
         ((b + c) * r2 - (b - c) * r4) / (r2 - r1)],
        [((b - c) * r1 - (b + c) * r3) / (r2 - r1),
         ((b + c) * r1 - (b - c) * r4) / (r1 - r2)]])


def lower_block(chart: AccessoryChart) -> RationalMatrix:
    a, b, c = chart.a, chart.b, chart.c
    r1, r2, r3, r4 = chart.r
    return RationalMatrix([
        [((a + c) * r1 - (a - c) * r4) / (r4 - r3),
         ((a - c) * r2 - (a + c) * r4) / (r3 - r4)],
        [((a + c) * r1 - (a - c) * r3) / (r3 - r4),
         ((a - c) * r2 - (a + c) * r3) / (r4 - r3)]])


def okubo_from_chart(chart: AccessoryChart) -> OkuboSystem:
    """The Okubo coefficient matrix determined by a chart.

    Raises DegenerateChart / DConditionError when the chart invariants
    fail; the result always has characteristic polynomial
    (t^2 - c^2)(t^2 - d^2).
    """
    chart.check()
    a12 = upper_block(chart)
    a21 = lower_block(chart)
    coeff = RationalMatrix.from_blocks(
        [[J2.scale(chart.a), a12], [a21, J2.scale(chart.b)]])
    system = OkuboSystem(coeff, chart.a, chart.b, chart.c, chart.d)
    system.validate()
    return system


def special_matrix(a, b, c, d) -> OkuboSystem:
    """The closed-form coefficient matrix at the special accessory values."""
    a, b, c, d = (Fraction(x) for x in (a, b, c, d))
    a12 = RationalMatrix([
        [((a - b + c) ** 2 - d ** 2) / (4 * a), ((a + b + c) ** 2 - d ** 2) / (4 * a)],
        [(d ** 2 - (a + b - c) ** 2) / (4 * a), (d ** 2 - (a - b - c) ** 2) / (4 * a)]])
    a21 = RationalMatrix([
        [((a - b - c) ** 2 - d ** 2) / (4 * b), ((a + b + c) ** 2 - d ** 2) / (4 * b)],
        [(d ** 2 - (a + b - c) ** 2) / (4 * b), (d ** 2 - (a - b + c) ** 2) / (4 * b)]])
    coeff = RationalMatrix.from_blocks(
        [[J2.scale(a), a12], [a21, J2.scale(b)]])
    system = OkuboSystem(coeff, a, b, c, d)
    system.validate()
    return system


# --------------------------------------------------------------------------
# chart recovery from a concrete coefficient matrix
# --------------------------------------------------------------------------

def recover_chart(matrix: RationalMatrix, a, b, c, d) -> tuple:
    """Normalize a block-form coefficient matrix into chart form.

    Returns (D, chart) with D diagonal, D A D^{-1} equal to the chart's
    parametrized matrix, and r_k the component ratios of the left
    eigenvectors for -c and c.  The eigenvalue labels c and d are taken
    from the caller; swapping them is the caller's choice.
    """
    a, b, c, d = (Fraction(x) for x in (a, b, c, d))
    if matrix.block(0, 2, 0, 2) != J2.scale(a) or \
            matrix.block(2, 4, 2, 4) != J2.scale(b):
        raise InputError("matrix does not have the required diagonal blocks",
                         {"a": a, "b": b})
    cp = matrix.char_poly()
    if cp != _even_quartic(c, d):
        raise InputError("matrix is not similar to diag(c*J, d*J)",
                         {"char_poly": cp.to_strings()})
    plus = left_eigenvectors(matrix, c)
    minus = left_eigenvectors(matrix, -c)
    if len(plus) != 1 or len(minus) != 1:
        raise EigenvectorDegeneracy(
            "eigenvalue c or -c has a repeated eigenspace",
            ["eigenspace-dimension"])
    v_plus, v_minus = plus[0], minus[0]
    failures = []
    for k in range(4):
        if v_plus[k] == 0:
            failures.append(f"v_c[{k + 1}] = 0")
        if v_minus[k] == 0:
            failures.append(f"v_-c[{k + 1}] = 0")
    for l in (0, 2):
        det2 = v_minus[l] * v_plus[l + 1] - v_minus[l + 1] * v_plus[l]
        if det2 == 0:
            failures.append(f"det of columns {l + 1},{l + 2} = 0")
    if failures:
        raise EigenvectorDegeneracy("eigenvector degeneracy", failures)
    diag = RationalMatrix.diagonal(v_plus)
    ratios = tuple(v_minus[k] / v_plus[k] for k in range(4))
    chart = AccessoryChart(a, b, c, d, ratios)
    chart.check()
    conjugated = diag * matrix * diag.inverse()
    if conjugated != okubo_from_chart(chart).coeff:
        raise InternalInconsistency(
            "normalized matrix disagrees with chart parametrization")
    return diag, chart


# --------------------------------------------------------------------------
# obstructions and cubic blocks
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class Obstructions:
    """The two polynomial obstructions and their scaled companions."""

    epsilon: Fraction
    delta: Fraction
    epsilon_prime: Fraction
    delta_prime: Fraction

    @property
    def vanish(self) -> bool:
        return self.epsilon == 0 and self.delta == 0


def epsilon_delta(chart: AccessoryChart) -> Obstructions:
    """Evaluate the obstructions; purely algebraic in (a, b, c, r)."""
    a, b, c = chart.a, chart.b, chart.c
    r1, r2, r3, r4 = chart.r
    eps = (b * (a + c) * r1 + b * (a - c) * r2
           - a * (b + c) * r3 - a * (b - c) * r4)
    dlt = r1 * r2 - r3 * r4
    den = (r1 - r2) * (r3 - r4)
    if den == 0:
        raise DegenerateChart("degenerate chart")
    return Obstructions(eps, dlt, 2 * eps / den, 2 * dlt / den)


@dataclass(frozen=True)
class CubicBlockDecomposition:
    """Coefficients of the top block of the resolvent numerator of A.

    The top 2x2 block of (z^2-c^2)(z^2-d^2) (zI - A)^{-1} is the cubic
    z^3 I + z^2 quadratic + z linear + constant, and its own inverse has
    numerator z^3 I + z^2 adj_quadratic + z adj_linear + adj_constant over
    (z^2-a^2-like) scalar factors.
    """

    quadratic: RationalMatrix
    linear: RationalMatrix
    constant: RationalMatrix
    adj_quadratic: RationalMatrix
    adj_linear: RationalMatrix
    adj_constant: RationalMatrix

    def top_block(self) -> PolyMatrix:
        return PolyMatrix.from_matrix_coeffs(
            [self.constant, self.linear, self.quadratic,
             RationalMatrix.identity(2)])

    def adjugate_block(self) -> PolyMatrix:
        return PolyMatrix.from_matrix_coeffs(
            [self.adj_constant, self.adj_linear, self.adj_quadratic,
             RationalMatrix.identity(2)])


def cubic_blocks(chart: AccessoryChart) -> CubicBlockDecomposition:
    """Closed forms for the cubic block coefficients.

    The closed forms use the obstructions: with E = [[0, r2], [r1, 0]] and
    C = [[c, a+c], [a-c, -c]],

        quadratic = a J
        linear    = (a^2-b^2-c^2-d^2)/2 I + eps' E - b delta' C
        constant  = b A12 J A21 - a b^2 J - 2abc delta' I

    and the adjugate-side coefficients are the trace-complements.
    """
    chart.check()
    a, b, c, d = chart.a, chart.b, chart.c, chart.d
    r1, r2 = chart.r1, chart.r2
    obs = epsilon_delta(chart)
    ident = RationalMatrix.identity(2)
    cross = RationalMatrix([[0, r2], [r1, 0]])
    skew = RationalMatrix([[c, a + c], [a - c, -c]])
    half = (a * a - b * b - c * c - d * d) / 2
    linear = (ident.scale(half) + cross.scale(obs.epsilon_prime)
              - skew.scale(b * obs.delta_prime))
    a12, a21 = upper_block(chart), lower_block(chart)
    sandwich = a12 * J2 * a21
    constant = (sandwich.scale(b) - J2.scale(a * b * b)
                - ident.scale(2 * a * b * c * obs.delta_prime))
    adj_linear = (ident.scale(half) - cross.scale(obs.epsilon_prime)
                  + skew.scale(b * obs.delta_prime))
    adj_constant = J2.scale(a * b * b) - sandwich.scale(b)
    return CubicBlockDecomposition(
        quadratic=J2.scale(a), linear=linear, constant=constant,
        adj_quadratic=J2.scale(-a), adj_linear=adj_linear,
        adj_constant=adj_constant)


def resolvent_numerator(matrix: RationalMatrix, c, d) -> PolyMatrix:
    """The polynomial numerator N(z) with
    (zI - A)^{-1} = N(z) / ((z^2-c^2)(z^2-d^2)):

        N(z) = z^3 I + z^2 A + z (A^2 - (c^2+d^2) I) + A^3 - (c^2+d^2) A.
    """
    c, d = Fraction(c), Fraction(d)
    n = matrix.dim
    ident = RationalMatrix.identity(n)
    sq = matrix * matrix
    cu = sq * matrix
    s = c * c + d * d
    return PolyMatrix.from_matrix_coeffs(
        [cu - matrix.scale(s), sq - ident.scale(s), matrix, ident])


# --------------------------------------------------------------------------
# the reduced difference systems
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class DifferenceSystem:
    """A 2x2 first-order rational difference system
    f(z+1) = (scalar_numerator(z) / scalar_denominator(z)) matrix(z) f(z).

    ``matrix`` entries have degree <= 3.  ``direction`` records the
    orientation in which the system arises from the series recurrence
    (coefficient systems at a finite point run backward in z and are
    stored here after inverting the step); the stored form is always
    forward.
    """

    matrix: PolyMatrix
    scalar_numerator: Poly
    scalar_denominator: Poly
    direction: str
    label: str

    def step(self, z0) -> RationalMatrix:
        """Exact forward step matrix at a rational point."""
        z0 = Fraction(z0)
        den = self.scalar_denominator(z0)
        if den == 0:
            raise InputError("step undefined: scalar denominator vanishes",
                             {"z": z0})
        return self.matrix.eval(z0).scale(self.scalar_numerator(z0) / den)


def difference_systems(chart: AccessoryChart, point_pair: str = "1-inf") -> tuple:
    """The pair of reduced 2x2 difference systems for a chart.

    ``point_pair`` selects which two singular points the underlying series
    live at: "1-inf" gives the systems for the top coefficient blocks of
    the series at x = 1 and x = infinity; "0-inf" the bottom-block systems
    for the series at x = 0 and at infinity (powers of x).
    """
    chart.check()
    a, b, c, d = chart.a, chart.b, chart.c, chart.d
    zvar = Poly.variable()
    fall = Poly([-(c * c), 0, 1]) * Poly([-(d * d), 0, 1])  # (z^2-c^2)(z^2-d^2)
    if point_pair == "1-inf":
        blocks = cubic_blocks(chart)
        # series at 1, top block, inverted to a forward step
        g_sys = DifferenceSystem(
            matrix=blocks.adjugate_block(),
            scalar_numerator=Poly.constant(-1),
            scalar_denominator=Poly([1, 1]) * Poly([-(b * b), 0, 1]),
            direction="backward-in-z", label="g-at-1")
        # series at infinity, top block, already forward; reflecting z
        # pulls a sign out of the odd part
        h_matrix = PolyMatrix.from_matrix_coeffs(
            [-blocks.constant, blocks.linear,
             J2.scale(-a), RationalMatrix.identity(2)])
        h_sys = DifferenceSystem(
            matrix=h_matrix,
            scalar_numerator=-(zvar - Poly.constant(1)),
            scalar_denominator=fall,
            direction="forward-in-z", label="h-at-inf")
        return g_sys, h_sys
    if point_pair == "0-inf":
        numer = resolvent_numerator(okubo_from_chart(chart).coeff, c, d)
        bottom = numer.block(2, 4, 2, 4)
        b0, b1_, b2_ = (_matrix_coeff(bottom, k) for k in range(3))
        # adjugate of the cubic bottom block (2x2: trace complement)
        adj = [_trace_complement(b0), _trace_complement(b1_),
               _trace_complement(b2_)]
        g_sys = DifferenceSystem(
            matrix=PolyMatrix.from_matrix_coeffs(
                adj + [RationalMatrix.identity(2)]),
            scalar_numerator=Poly.constant(1),
            scalar_denominator=Poly([1, 1]) * Poly([-(a * a), 0, 1]),
            direction="backward-in-z", label="g-at-0")
        h_sys = DifferenceSystem(
            matrix=PolyMatrix.from_matrix_coeffs(
                [-b0, b1_, -b2_, RationalMatrix.identity(2)]),
            scalar_numerator=zvar - Poly.constant(1),
            scalar_denominator=fall,
            direction="forward-in-z", label="h-at-inf-dual")
        return g_sys, h_sys
    raise InputError(f"unknown point pair {point_pair!r}")


def _matrix_coeff(pm: PolyMatrix, k: int) -> RationalMatrix:
    return RationalMatrix([[e.coeff(k) for e in row] for row in pm.entries])


def _trace_complement(m: RationalMatrix) -> RationalMatrix:
    return RationalMatrix.identity(2).scale(m.trace()) - m


# --------------------------------------------------------------------------
# the substantially-same decision
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class SamenessVerdict:
    """Outcome of the substantially-same test with its full witness.

    ``nonzero_minors`` lists the cross products
    c_jk(z) b_lm(z) - b_jk(z) c_lm(z) that fail to vanish, keyed by the
    index word 'jklm' (1-based).  The verdict is equivalent to all of them
    vanishing, and independently to epsilon = delta = 0; the constructor
    of this object has already checked that the two criteria agree.
    """

    verdict: bool
    epsilon: Fraction
    delta: Fraction
    nonzero_minors: tuple
    point_pair: str

    def to_json(self) -> dict:
        return {"verdict": self.verdict,
                "epsilon": str(self.epsilon), "delta": str(self.delta),
                "point_pair": self.point_pair,
                "nonzero_minors": [
                    {"indices": key, "coeffs": poly.to_strings()}
                    for key, poly in self.nonzero_minors]}


def cross_products(b_matrix: PolyMatrix, c_matrix: PolyMatrix) -> dict:
    """All 2x2-entry cross products c_jk b_lm - b_jk c_lm as polynomials."""
    out = {}
    for j in range(2):
        for k in range(2):
            for l in range(2):
                for m in range(2):
                    key = f"{j + 1}{k + 1}{l + 1}{m + 1}"
                    out[key] = (c_matrix[j, k] * b_matrix[l, m]
                                - b_matrix[j, k] * c_matrix[l, m])
    return out


def substantially_same(chart: AccessoryChart,
                       point_pair: str = "1-inf") -> SamenessVerdict:
    """Decide whether the two reduced difference systems of a chart are
    carried into each other by one common scalar factor.

    Both criteria are evaluated: the vanishing of the obstruction pair
    (epsilon, delta) and the vanishing of every cross product of the two
    cubic numerators.  They must agree; disagreement raises, since it
    would mean an implementation bug rather than a property of the input.
    """
    obs = epsilon_delta(chart)
    g_sys, h_sys = difference_systems(chart, point_pair)
    minors = cross_products(g_sys.matrix, h_sys.matrix)
    nonzero = tuple((key, poly) for key, poly in sorted(minors.items())
                    if not poly.is_zero())
    by_minors = not nonzero
    by_obstructions = obs.vanish
    if by_minors != by_obstructions:
        raise InternalInconsistency(
            f"criteria disagree on {point_pair}: obstructions say "
            f"{by_obstructions}, cross products say {by_minors}")
    return SamenessVerdict(by_obstructions, obs.epsilon, obs.delta,
                           nonzero, point_pair)


# --------------------------------------------------------------------------
# solving for the special accessory values
# --------------------------------------------------------------------------

def branch_via_r4(a, b, c, d, scale=Fraction(1)) -> tuple:
    """Ratios (r1, r2, r3, r4) with r4 = scale solving both obstructions."""
    a, b, c, d = (Fraction(x) for x in (a, b, c, d))
    den1 = (a + b + c) ** 2 - d ** 2
    den2 = (a - b - c) ** 2 - d ** 2
    if den1 == 0 or den2 == 0:
        raise AdmissibilityError("branch via r4 has a vanishing denominator",
                                 {"(a+b+c)^2-d^2": den1,
                                  "(a-b-c)^2-d^2": den2})
    r4 = Fraction(scale)
    r1 = ((a + b - c) ** 2 - d ** 2) / den1 * r4
    r2 = ((a - b + c) ** 2 - d ** 2) / den2 * r4
    r3 = (((a + b - c) ** 2 - d ** 2) * ((a - b + c) ** 2 - d ** 2)
          / (den1 * den2)) * r4
    return r1, r2, r3, r4


def branch_via_r3(a, b, c, d, scale=Fraction(1)) -> tuple:
    """Ratios (r1, r2, r3, r4) with r3 = scale solving both obstructions."""
    a, b, c, d = (Fraction(x) for x in (a, b, c, d))
    den1 = (a - b + c) ** 2 - d ** 2
    den2 = (a + b - c) ** 2 - d ** 2
    if den1 == 0 or den2 == 0:
        raise AdmissibilityError("branch via r3 has a vanishing denominator",
                                 {"(a-b+c)^2-d^2": den1,
                                  "(a+b-c)^2-d^2": den2})
    r3 = Fraction(scale)
    r1 = ((a - b - c) ** 2 - d ** 2) / den1 * r3
    r2 = ((a + b + c) ** 2 - d ** 2) / den2 * r3
    r4 = (((a + b + c) ** 2 - d ** 2) * ((a - b - c) ** 2 - d ** 2)
          / (den2 * den1)) * r3
    return r1, r2, r3, r4


def solve_accessory(a, b, c, d, branch: str = "auto",
                    scale=Fraction(1)) -> tuple:
    """Solve epsilon = delta = 0 for the accessory parameters.

    Returns (chart, system): the chart carrying the solved ratios (with
    r4 = scale for branch "via-r4" and r3 = scale for "via-r3"), and the
    closed-form special coefficient matrix, which the chart's
    parametrization reproduces exactly.  "auto" tries via-r4 first; the
    two branch denominators never vanish simultaneously for admissible
    exponents.
    """
    a, b, c, d = (Fraction(x) for x in (a, b, c, d))
    require_admissible(a, b, c, d)
    order = {"via-r4": [branch_via_r4], "via-r3": [branch_via_r3],
             "auto": [branch_via_r4, branch_via_r3]}.get(branch)
    if order is None:
        raise InputError(f"unknown branch {branch!r}")

    def attempt(solver):
        chart = AccessoryChart(a, b, c, d, solver(a, b, c, d, scale))
        chart.check()
        system = special_matrix(a, b, c, d)
        if okubo_from_chart(chart).coeff != system.coeff:
            raise InternalInconsistency(
                "solved chart does not reproduce the special matrix")
        if not epsilon_delta(chart).vanish:
            raise InternalInconsistency("solved chart leaves an obstruction")
        return chart, system

    if len(order) == 1:
        return attempt(order[0])
    last_error = None
    for solver in order:
        try:
            return attempt(solver)
        except (AdmissibilityError, DegenerateChart, DConditionError) as exc:
            last_error = exc
    raise AdmissibilityError("admissibility violated: no branch is usable",
                             {"last": str(last_error)})


# --------------------------------------------------------------------------
# realization by the hypergeometric product system
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class RealizationReport:
    """Exact diagonal conjugation between the special coefficient matrix at
    half-sum exponents and the product-system Okubo coefficient."""

    diag: RationalMatrix
    verdict: bool
    special: OkuboSystem
    product: OkuboSystem
    identity_values: dict

    def to_json(self) -> dict:
        return {"verdict": self.verdict,
                "diag": self.diag.to_strings(),
                "special": self.special.coeff.to_strings(),
                "product": self.product.coeff.to_strings(),
                "identities": {k: str(v) for k, v in
                               self.identity_values.items()}}


def realize_product_system(p: HGParams) -> RealizationReport:
    """Check that the special accessory values realize the product system.

    With exponents a, b, c, d taken as the half-sums lam(++++), lam(-+-+),
    lam(++--), lam(+--+), the special matrix is conjugated by an explicit
    diagonal matrix onto the Okubo coefficient of the product system.
    Both quartic products ((a+-b+-c)^2-d^2) are validated against their
    factorizations into half-sums; a vanishing factor is reported by name.
    """
    if not p.is_okubo:
        raise InputError("parameters are not gamma-constrained for Okubo form")
    l = lambda s: lam(p, s)
    a, b, c, d = l("++++"), l("-+-+"), l("++--"), l("+--+")
    require_admissible(a, b, c, d)
    needed = ["0+00", "00+0", "+-++", "++-+", "+000", "000+", "-+++", "+++-"]
    for signs in needed:
        if l(signs) == 0:
            raise AdmissibilityError(
                f"half-sum lam({signs}) vanishes", {"signs": signs})
    prod_a = ((a + b + c) ** 2 - d ** 2) * ((a - b - c) ** 2 - d ** 2)
    prod_b = ((a + b - c) ** 2 - d ** 2) * ((a - b + c) ** 2 - d ** 2)
    ident_a = 64 * l("0+00") * l("00+0") * l("+-++") * l("++-+")
    ident_b = 64 * l("+000") * l("000+") * l("-+++") * l("+++-")
    if prod_a != ident_a or prod_b != ident_b:
        raise InternalInconsistency(
            "quartic products disagree with their half-sum factorizations")
    special = special_matrix(a, b, c, d)
    if special.coeff != _special_half_sum_form(p):
        raise InternalInconsistency(
            "special matrix disagrees with its half-sum form")
    _, product = build_okubo_system(p)
    diag = RationalMatrix.diagonal([
        Fraction(1),
        l("-+++") * l("+-++") / (4 * l("+000") * l("0+00")),
        l("+-++") / (2 * l("+000")),
        l("-+++") / (2 * l("0+00"))])
    conjugated = diag.inverse() * special.coeff * diag
    verdict = conjugated == product.coeff
    return RealizationReport(
        diag=diag, verdict=verdict, special=special, product=product,
        identity_values={"((a+b+c)^2-d^2)((a-b-c)^2-d^2)": prod_a,
                         "((a+b-c)^2-d^2)((a-b+c)^2-d^2)": prod_b})


def _special_half_sum_form(p: HGParams) -> RationalMatrix:
    l = lambda s: lam(p, s)
    return RationalMatrix([
        [l("++++"), 0,
         2 * l("+000") * l("+++-") / l("++++"),
         2 * l("0+00") * l("++-+") / l("++++")],
        [0, -l("++++"),
         2 * l("000+") * l("-+++") / l("----"),
         2 * l("00+0") * l("+-++") / l("----")],
        [2 * l("00+0") * l("+-++") / l("-+-+"),
         2 * l("0+00") * l("++-+") / l("-+-+"), l("-+-+"), 0],
        [2 * l("000+") * l("-+++") / l("+-+-"),
         2 * l("+000") * l("+++-") / l("+-+-"), 0, -l("-+-+")]])
