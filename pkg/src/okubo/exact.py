"""Exact rational scalars, dense univariate polynomials, and small matrices.

Every structural identity verified by this package is an equality between
rational numbers, so the ground field is `fractions.Fraction`: stored in
lowest terms with a positive denominator, with exact arithmetic for free.
Matrices are dense and small (dimension 2..8); the algorithms are textbook
Gauss-Jordan elimination, cofactor adjugates and the Leverrier-Faddeev
characteristic polynomial, which are entirely adequate at these sizes.

Serialization convention: a rational is the string ``"p/q"`` (``"p"`` when
the denominator is 1), sign on the numerator; a matrix is a JSON array of
arrays of such strings.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence, Union

from .errors import (DimensionMismatch, InputError, NotAnEigenvalue,
                     SingularMatrixError)

Rational = Fraction
Scalar = Union[Fraction, int]


def to_fraction(value) -> Fraction:
    """Parse a rational from a string like '-3/7' (or int/Fraction)."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise InputError(f"not a rational number: {value!r}",
                             {"value": value}) from exc
    raise InputError(f"cannot convert {type(value).__name__} to a rational",
                     {"value": repr(value)})


def format_fraction(q: Fraction) -> str:
    return str(q)


class Poly:
    """Dense univariate polynomial with exact rational coefficients.

    Coefficients are indexed by degree; trailing zeros are stripped so the
    leading coefficient is nonzero unless the polynomial is zero (empty
    coefficient tuple, degree -1).
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[Scalar] = ()):
        cs = [Fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def constant(cls, c: Scalar) -> "Poly":
        return cls([c])

    @classmethod
    def variable(cls) -> "Poly":
        """The polynomial z."""
        return cls([0, 1])

    @classmethod
    def monomial(cls, degree: int, c: Scalar = 1) -> "Poly":
        return cls([0] * degree + [c])

    @classmethod
    def interpolate(cls, points: Sequence[tuple]) -> "Poly":
        """Lagrange interpolation through exact (x, y) pairs."""
        result = cls()
        for i, (xi, yi) in enumerate(points):
            num = cls.constant(yi)
            den = Fraction(1)
            for j, (xj, _) in enumerate(points):
                if j == i:
                    continue
                num = num * cls([-xj, 1])
                den *= Fraction(xi) - Fraction(xj)
            result = result + num * (Fraction(1) / den)
        return result

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def coeff(self, k: int) -> Fraction:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else Fraction(0)

    def __add__(self, other) -> "Poly":
        other = _as_poly(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return Poly([self.coeff(k) + other.coeff(k) for k in range(n)])

    __radd__ = __add__

    def __sub__(self, other) -> "Poly":
        other = _as_poly(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return Poly([self.coeff(k) - other.coeff(k) for k in range(n)])

    def __rsub__(self, other) -> "Poly":
        return _as_poly(other) - self

    def __neg__(self) -> "Poly":
        return Poly([-c for c in self.coeffs])

    def __mul__(self, other) -> "Poly":
        if isinstance(other, (int, Fraction)):
            return Poly([c * other for c in self.coeffs])
        other = _as_poly(other)
        if self.is_zero() or other.is_zero():
            return Poly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return Poly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "Poly":
        out = Poly.constant(1)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = Poly.constant(other)
        return isinstance(other, Poly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __call__(self, x):
        """Evaluate by Horner's rule; exact for Fraction/int arguments."""
        if isinstance(x, (int, Fraction)):
            acc = Fraction(0)
            for c in reversed(self.coeffs):
                acc = acc * x + c
            return acc
        acc = 0j
        for c in reversed(self.coeffs):
            acc = acc * x + complex(c)
        return acc

    def reflected(self) -> "Poly":
        """The polynomial p(-z)."""
        return Poly([c if k % 2 == 0 else -c for k, c in enumerate(self.coeffs)])

    def __repr__(self):
        if self.is_zero():
            return "Poly(0)"
        terms = []
        for k, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if k == 0:
                terms.append(str(c))
            elif k == 1:
                terms.append(f"{c}*z")
            else:
                terms.append(f"{c}*z^{k}")
        return "Poly(" + " + ".join(terms) + ")"

    def to_strings(self) -> list:
        return [str(c) for c in self.coeffs]


def _as_poly(x) -> Poly:
    if isinstance(x, Poly):
        return x
    if isinstance(x, (int, Fraction)):
        return Poly.constant(x)
    raise TypeError(f"cannot coerce {type(x).__name__} to Poly")


class RationalMatrix:
    """Dense square matrix over exact rationals."""

    __slots__ = ("rows",)

    def __init__(self, rows: Iterable[Iterable[Scalar]]):
        rs = tuple(tuple(Fraction(x) for x in row) for row in rows)
        n = len(rs)
        if any(len(row) != n for row in rs):
            raise DimensionMismatch("matrix must be square",
                                    {"rows": n, "cols": [len(r) for r in rs]})
        self.rows = rs

    # -- constructors ------------------------------------------------------
    @classmethod
    def identity(cls, n: int) -> "RationalMatrix":
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def zero(cls, n: int) -> "RationalMatrix":
        return cls([[0] * n for _ in range(n)])

    @classmethod
    def diagonal(cls, entries: Sequence[Scalar]) -> "RationalMatrix":
        n = len(entries)
        return cls([[entries[i] if i == j else 0 for j in range(n)]
                    for i in range(n)])

    @classmethod
    def from_blocks(cls, blocks) -> "RationalMatrix":
        """Assemble from a 2x2 grid of equally sized square blocks."""
        top, bottom = blocks
        rows = []
        for left, right in ((top[0], top[1]), (bottom[0], bottom[1])):
            for rl, rr in zip(left.rows, right.rows):
                rows.append(rl + rr)
        return cls(rows)

    @classmethod
    def from_strings(cls, rows) -> "RationalMatrix":
        return cls([[to_fraction(x) for x in row] for row in rows])

    # -- basic structure ---------------------------------------------------
    @property
    def dim(self) -> int:
        return len(self.rows)

    def __getitem__(self, idx):
        i, j = idx
        return self.rows[i][j]

    def __eq__(self, other) -> bool:
        return isinstance(other, RationalMatrix) and self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def __repr__(self):
        body = "; ".join(", ".join(str(x) for x in row) for row in self.rows)
        return f"RationalMatrix([{body}])"

    def to_strings(self) -> list:
        return [[str(x) for x in row] for row in self.rows]

    def block(self, i0: int, i1: int, j0: int, j1: int) -> "RationalMatrix":
        return RationalMatrix([row[j0:j1] for row in self.rows[i0:i1]])

    def transpose(self) -> "RationalMatrix":
        n = self.dim
        return RationalMatrix([[self.rows[j][i] for j in range(n)]
                               for i in range(n)])

    def trace(self) -> Fraction:
        return sum((self.rows[i][i] for i in range(self.dim)), Fraction(0))

    def map(self, fn) -> "RationalMatrix":
        return RationalMatrix([[fn(x) for x in row] for row in self.rows])

    def to_complex(self):
        import numpy as np
        return np.array([[complex(x) for x in row] for row in self.rows],
                        dtype=complex)

    # -- arithmetic --------------------------------------------------------
    def _check_dim(self, other: "RationalMatrix"):
        if self.dim != other.dim:
            raise DimensionMismatch(
                f"dimension mismatch: {self.dim} vs {other.dim}")

    def __add__(self, other) -> "RationalMatrix":
        self._check_dim(other)
        return RationalMatrix([[a + b for a, b in zip(r1, r2)]
                               for r1, r2 in zip(self.rows, other.rows)])

    def __sub__(self, other) -> "RationalMatrix":
        self._check_dim(other)
        return RationalMatrix([[a - b for a, b in zip(r1, r2)]
                               for r1, r2 in zip(self.rows, other.rows)])

    def __neg__(self) -> "RationalMatrix":
        return RationalMatrix([[-x for x in row] for row in self.rows])

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return mat_mul(self, other)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def scale(self, s: Scalar) -> "RationalMatrix":
        return RationalMatrix([[x * s for x in row] for row in self.rows])

    def apply(self, vector: Sequence[Fraction]) -> list:
        if len(vector) != self.dim:
            raise DimensionMismatch("vector length does not match matrix")
        return [sum((a * v for a, v in zip(row, vector)), Fraction(0))
                for row in self.rows]

    # -- elimination-based operations --------------------------------------
    def det(self) -> Fraction:
        n = self.dim
        m = [list(row) for row in self.rows]
        det = Fraction(1)
        for col in range(n):
            piv = next((r for r in range(col, n) if m[r][col] != 0), None)
            if piv is None:
                return Fraction(0)
            if piv != col:
                m[col], m[piv] = m[piv], m[col]
                det = -det
            det *= m[col][col]
            inv = Fraction(1) / m[col][col]
            for r in range(col + 1, n):
                if m[r][col] != 0:
                    f = m[r][col] * inv
                    m[r] = [x - f * y for x, y in zip(m[r], m[col])]
        return det

    def inverse(self) -> "RationalMatrix":
        n = self.dim
        m = [list(row) + [Fraction(1) if i == j else Fraction(0)
                          for j in range(n)]
             for i, row in enumerate(self.rows)]
        for col in range(n):
            piv = next((r for r in range(col, n) if m[r][col] != 0), None)
            if piv is None:
                raise SingularMatrixError("matrix is singular")
            m[col], m[piv] = m[piv], m[col]
            inv = Fraction(1) / m[col][col]
            m[col] = [x * inv for x in m[col]]
            for r in range(n):
                if r != col and m[r][col] != 0:
                    f = m[r][col]
                    m[r] = [x - f * y for x, y in zip(m[r], m[col])]
        return RationalMatrix([row[n:] for row in m])

    def char_poly(self) -> Poly:
        """Monic characteristic polynomial det(tI - M), Leverrier-Faddeev."""
        n = self.dim
        coeffs = [Fraction(1)]  # leading coefficient of t^n
        acc = RationalMatrix.identity(n)
        for k in range(1, n + 1):
            acc = mat_mul(self, acc)
            ck = -acc.trace() / k
            coeffs.append(ck)
            acc = acc + RationalMatrix.identity(n).scale(ck)
        return Poly(list(reversed(coeffs)))

    def left_null_space(self) -> list:
        """Exact basis of {v : v M = 0}, rows normalized so the first
        nonzero entry is 1."""
        n = self.dim
        m = [[self.rows[j][i] for j in range(n)] for i in range(n)]  # M^T
        piv_cols = []
        row = 0
        for col in range(n):
            piv = next((r for r in range(row, n) if m[r][col] != 0), None)
            if piv is None:
                continue
            m[row], m[piv] = m[piv], m[row]
            inv = Fraction(1) / m[row][col]
            m[row] = [x * inv for x in m[row]]
            for r in range(n):
                if r != row and m[r][col] != 0:
                    f = m[r][col]
                    m[r] = [x - f * y for x, y in zip(m[r], m[row])]
            piv_cols.append(col)
            row += 1
        basis = []
        for free in (c for c in range(n) if c not in piv_cols):
            v = [Fraction(0)] * n
            v[free] = Fraction(1)
            for i, pc in enumerate(piv_cols):
                v[pc] = -m[i][free]
            first = next(x for x in v if x != 0)
            basis.append([x / first for x in v])
        return basis


def mat_mul(lhs: RationalMatrix, rhs: RationalMatrix) -> RationalMatrix:
    """Exact matrix product of equally sized square matrices."""
    if lhs.dim != rhs.dim:
        raise DimensionMismatch(
            f"dimension mismatch: {lhs.dim} vs {rhs.dim}")
    n = lhs.dim
    cols = list(zip(*rhs.rows))
    return RationalMatrix([[sum((a * b for a, b in zip(row, col)), Fraction(0))
                            for col in cols]
                           for row in lhs.rows])


def left_eigenvectors(matrix: RationalMatrix, eigenvalue: Scalar) -> list:
    """Exact basis of left eigenvectors v with v M = xi v.

    The eigenvalue must be an exact root of the characteristic polynomial;
    otherwise the (empty) null space is rejected with an error.
    """
    xi = Fraction(eigenvalue)
    if matrix.char_poly()(xi) != 0:
        raise NotAnEigenvalue(f"{xi} is not an eigenvalue")
    shifted = matrix - RationalMatrix.identity(matrix.dim).scale(xi)
    return shifted.left_null_space()


class PolyMatrix:
    """Dense square matrix whose entries are exact polynomials in z."""

    __slots__ = ("entries",)

    def __init__(self, entries: Iterable[Iterable]):
        rs = tuple(tuple(_as_poly(e) for e in row) for row in entries)
        n = len(rs)
        if any(len(row) != n for row in rs):
            raise DimensionMismatch("polynomial matrix must be square")
        self.entries = rs

    @classmethod
    def from_matrix_coeffs(cls, coeff_matrices: Sequence[RationalMatrix]) -> "PolyMatrix":
        """Build sum_k z^k M_k from constant matrices M_0, M_1, ..."""
        n = coeff_matrices[0].dim
        return cls([[Poly([m[i, j] for m in coeff_matrices])
                     for j in range(n)] for i in range(n)])

    @classmethod
    def from_constant(cls, m: RationalMatrix) -> "PolyMatrix":
        return cls.from_matrix_coeffs([m])

    @property
    def dim(self) -> int:
        return len(self.entries)

    def __getitem__(self, idx) -> Poly:
        i, j = idx
        return self.entries[i][j]

    def __eq__(self, other) -> bool:
        return isinstance(other, PolyMatrix) and self.entries == other.entries

    def __hash__(self):
        return hash(self.entries)

    def __repr__(self):
        return f"PolyMatrix({[[repr(e) for e in row] for row in self.entries]})"

    def __add__(self, other: "PolyMatrix") -> "PolyMatrix":
        if self.dim != other.dim:
            raise DimensionMismatch("dimension mismatch")
        return PolyMatrix([[a + b for a, b in zip(r1, r2)]
                           for r1, r2 in zip(self.entries, other.entries)])

    def __sub__(self, other: "PolyMatrix") -> "PolyMatrix":
        if self.dim != other.dim:
            raise DimensionMismatch("dimension mismatch")
        return PolyMatrix([[a - b for a, b in zip(r1, r2)]
                           for r1, r2 in zip(self.entries, other.entries)])

    def __neg__(self) -> "PolyMatrix":
        return PolyMatrix([[-e for e in row] for row in self.entries])

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, Poly)):
            return PolyMatrix([[e * other for e in row] for row in self.entries])
        if self.dim != other.dim:
            raise DimensionMismatch("dimension mismatch")
        cols = list(zip(*other.entries))
        return PolyMatrix([[sum((a * b for a, b in zip(row, col)), Poly())
                            for col in cols]
                           for row in self.entries])

    __rmul__ = __mul__

    def block(self, i0: int, i1: int, j0: int, j1: int) -> "PolyMatrix":
        return PolyMatrix([row[j0:j1] for row in self.entries[i0:i1]])

    def eval(self, z0: Scalar) -> RationalMatrix:
        """Exact evaluation at a rational point."""
        x = Fraction(z0)
        return RationalMatrix([[e(x) for e in row] for row in self.entries])

    def reflected(self) -> "PolyMatrix":
        """Entrywise substitution z -> -z."""
        return PolyMatrix([[e.reflected() for e in row] for row in self.entries])

    def max_degree(self) -> int:
        return max(e.degree for row in self.entries for e in row)

    def trace(self) -> Poly:
        return sum((self.entries[i][i] for i in range(self.dim)), Poly())

    def det(self) -> Poly:
        n = self.dim
        if n == 1:
            return self.entries[0][0]
        if n == 2:
            (a, b), (c, d) = self.entries
            return a * d - b * c
        if n == 3:
            (a, b, c), (d, e, f), (g, h, i) = self.entries
            return (a * (e * i - f * h) - b * (d * i - f * g)
                    + c * (d * h - e * g))
        # Laplace expansion along the first row; fine at these sizes.
        total = Poly()
        for j in range(n):
            minor = PolyMatrix([[row[k] for k in range(n) if k != j]
                                for row in self.entries[1:]])
            term = self.entries[0][j] * minor.det()
            total = total + (term if j % 2 == 0 else -term)
        return total


def poly_adjugate(m: PolyMatrix) -> tuple:
    """Adjugate and determinant of a 2x2 or 3x3 polynomial matrix.

    Satisfies M * adj = det * I as an exact polynomial identity; a zero
    determinant is a legal output.
    """
    n = m.dim
    if n == 2:
        (a, b), (c, d) = m.entries
        return PolyMatrix([[d, -b], [-c, a]]), m.det()
    if n == 3:
        e = m.entries
        cof = [[(e[(i + 1) % 3][(j + 1) % 3] * e[(i + 2) % 3][(j + 2) % 3]
                 - e[(i + 1) % 3][(j + 2) % 3] * e[(i + 2) % 3][(j + 1) % 3])
                for j in range(3)] for i in range(3)]
        adj = PolyMatrix([[cof[j][i] for j in range(3)] for i in range(3)])
        return adj, m.det()
    raise DimensionMismatch("adjugate implemented for dimensions 2 and 3",
                            {"dim": n})


def matrix_from_json(data) -> RationalMatrix:
    if not isinstance(data, list):
        raise InputError("matrix JSON must be an array of arrays")
    return RationalMatrix.from_strings(data)
