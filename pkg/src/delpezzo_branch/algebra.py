"""Exact algebra kernel: resultants, cubic discriminants, factorization of
binary forms over Q, and truncated jet-quotient dimensions.

Everything here is plumbing for the classification modules: Sylvester
resultants and the closed-form cubic discriminant feed the degree-12
discriminant budget, the binary-form factorization extracts line
multiplicities, and the jet engine backs Milnor-number computations.

Irreducible splitting of squarefree univariate polynomials over Q is
delegated to sympy (degrees here never exceed 12); every other operation is
implemented directly on exact rationals.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import UndefinedResultantError
from .poly import (
    MultiPoly,
    Scalar,
    binary_form_coefficients,
    binary_form_from_coefficients,
)


# ----------------------------------------------------------------------
# resultants


def _det_by_minors(matrix: list[list[MultiPoly]], zero: MultiPoly) -> MultiPoly:
    """Determinant by first-row expansion, memoized on the remaining column
    set. Division-free, so it works verbatim over the polynomial ring."""
    n = len(matrix)
    cache: dict[tuple[int, ...], MultiPoly] = {}

    def minor(cols: tuple[int, ...]) -> MultiPoly:
        if not cols:
            return zero + 1
        got = cache.get(cols)
        if got is not None:
            return got
        row = matrix[n - len(cols)]
        total = zero
        for pos, col in enumerate(cols):
            entry = row[col]
            if entry.is_zero():
                continue
            sub = minor(cols[:pos] + cols[pos + 1 :])
            term = entry * sub
            total = total + term if pos % 2 == 0 else total - term
        cache[cols] = total
        return total

    return minor(tuple(range(n)))


def resultant(f: MultiPoly, g: MultiPoly, var: str) -> MultiPoly:
    """Sylvester resultant of f and g with respect to `var`, exact.

    Convention: the Sylvester matrix has the rows of f first, so
    resultant(u^3 + p*u + q, 3*u^2 + p, u) = 4*p^3 + 27*q^2.
    """
    if not f.same_ring(g):
        raise ValueError("resultant arguments live in different rings")
    m, n = f.degree_in(var), g.degree_in(var)
    if m <= 0 and n <= 0:
        raise UndefinedResultantError(f"neither argument involves {var!r}")
    zero = MultiPoly.zero(f.vars, f.weights)
    if f.is_zero() or g.is_zero():
        return zero
    fc = [f.coefficient_of(var, k) for k in range(m + 1)]
    gc = [g.coefficient_of(var, k) for k in range(n + 1)]
    if m == 0:
        return fc[0] ** n
    if n == 0:
        return gc[0] ** m
    size = m + n
    rows: list[list[MultiPoly]] = []
    for shift in range(n):
        row = [zero] * size
        for k in range(m + 1):
            row[shift + k] = fc[m - k]
        rows.append(row)
    for shift in range(m):
        row = [zero] * size
        for k in range(n + 1):
            row[shift + k] = gc[n - k]
        rows.append(row)
    return _det_by_minors(rows, zero)


@dataclass(frozen=True)
class CubicDiscriminant:
    """Discriminant of a cubic a3*u^3 + a2*u^2 + a1*u + a0 in its
    coefficients; `degenerate` flags a vanishing leading coefficient."""

    value: MultiPoly
    degenerate: bool


def discriminant_cubic(
    a3: MultiPoly, a2: MultiPoly, a1: MultiPoly, a0: MultiPoly
) -> CubicDiscriminant:
    """Classical degree-4 discriminant polynomial of a cubic, exact.

    Sign convention: discriminant_cubic(1, 0, p, q) = -4*p^3 - 27*q^2.
    """
    for other in (a2, a1, a0):
        if not a3.same_ring(other):
            raise ValueError("cubic coefficients live in different rings")
    value = (
        18 * a3 * a2 * a1 * a0
        - 4 * (a2 ** 3) * a0
        + (a2 ** 2) * (a1 ** 2)
        - 4 * a3 * (a1 ** 3)
        - 27 * (a3 ** 2) * (a0 ** 2)
    )
    return CubicDiscriminant(value, degenerate=a3.is_zero())


# ----------------------------------------------------------------------
# factorization of binary forms


@dataclass(frozen=True)
class FactorList:
    """Factorization unit * prod(factor**multiplicity), factors irreducible
    over Q, primitive with positive leading coefficient, pairwise distinct,
    in a fixed deterministic order."""

    unit: Fraction
    factors: tuple[tuple[MultiPoly, int], ...]

    def expand(self, ring: MultiPoly | None = None) -> MultiPoly:
        if ring is None:
            if not self.factors:
                raise ValueError("cannot expand an empty factor list without a ring")
            ring = self.factors[0][0]
        result = MultiPoly.constant(self.unit, ring.vars, ring.weights)
        for factor, mult in self.factors:
            result = result * factor ** mult
        return result

    def total_degree(self) -> int:
        return sum(f.weighted_degree() * m for f, m in self.factors)


def _factor_univariate_rational(coeffs: Sequence[Fraction]) -> tuple[Fraction, list[tuple[list[Fraction], int]]]:
    """Factor sum(coeffs[i] * z**i) into irreducibles over Q.

    Returns (constant, [(coefficient list low-to-high, multiplicity)]).
    Backed by sympy; inputs here have degree <= 12.
    """
    import sympy

    z = sympy.Symbol("z")
    poly = sympy.Poly(
        [sympy.Rational(c.numerator, c.denominator) for c in reversed(coeffs)],
        z,
        domain="QQ",
    )
    const, factors = poly.factor_list()
    const = Fraction(const.p, const.q)
    out: list[tuple[list[Fraction], int]] = []
    for fac, mult in factors:
        fac_coeffs = [Fraction(c.p, c.q) for c in reversed(fac.all_coeffs())]
        out.append((fac_coeffs, int(mult)))
    return const, out


def _factor_sort_key(factor: MultiPoly) -> tuple:
    return (
        factor.weighted_degree(),
        tuple((exp, coef) for exp, coef in factor.sorted_terms()),
    )


def squarefree_factor(
    form: MultiPoly, first: str | None = None, second: str | None = None
) -> FactorList:
    """Full factorization of a nonzero homogeneous binary form into
    irreducible binary forms over Q with multiplicities."""
    if form.is_zero():
        raise ValueError("cannot factor the zero form")
    if first is None or second is None:
        live = [v for v in form.vars if form.degree_in(v) > 0]
        if len(live) > 2:
            raise ValueError("form involves more than two variables")
        # pad with unused ring variables so constants/monomials still work
        first = live[0] if live else form.vars[0]
        rest = [v for v in form.vars if v != first]
        second = live[1] if len(live) > 1 else rest[0]
    coeffs = binary_form_coefficients(form, first, second)
    d = len(coeffs) - 1
    support = [i for i, c in enumerate(coeffs) if c != 0]
    lo, hi = support[0], support[-1]
    mult_second = lo           # second**lo divides the form
    mult_first = d - hi        # first**(d-hi) divides the form
    unit = Fraction(1)
    factors: list[tuple[MultiPoly, int]] = []
    var_first = MultiPoly.variable(first, form.vars, form.weights)
    var_second = MultiPoly.variable(second, form.vars, form.weights)
    if mult_first:
        factors.append((var_first, mult_first))
    if mult_second:
        factors.append((var_second, mult_second))
    core = coeffs[lo : hi + 1]
    if len(core) == 1:
        unit *= core[0]
    else:
        const, parts = _factor_univariate_rational(core)
        unit *= const
        for fac_coeffs, mult in parts:
            # fac coeff of z^j is the coefficient of second^j first^(e-j)
            binary = binary_form_from_coefficients(fac_coeffs, form, first, second)
            factor_unit, primitive = binary.primitive_normalized()
            unit *= factor_unit ** mult
            factors.append((primitive, mult))
    factors.sort(key=lambda fm: _factor_sort_key(fm[0]))
    result = FactorList(unit, tuple(factors))
    check = MultiPoly.constant(unit, form.vars, form.weights)
    for factor, mult in result.factors:
        check = check * factor ** mult
    assert check == form, "factorization failed to round-trip"
    return result


# ----------------------------------------------------------------------
# jet-quotient dimensions


class NonStabilized:
    """Sentinel: the truncated quotient dimension kept growing at the cap,
    which signals a non-isolated singular locus."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "NonStabilized"


NON_STABILIZED = NonStabilized()

JET_SCHEDULE = (4, 8, 16, 32, 64)


def _truncated_rows(generators: Sequence[MultiPoly], order: int):
    """All truncations of monomial multiples of the generators below the
    given total degree, as sparse rows keyed by exponent pair."""
    rows = []
    for g in generators:
        support = {e: c for e, c in g.terms.items() if e[0] + e[1] < order}
        if not support:
            continue
        ord_g = min(i + j for i, j in support)
        for a in range(order - ord_g):
            for b in range(order - ord_g - a):
                row = {}
                for (i, j), c in support.items():
                    if a + i + b + j < order:
                        row[(a + i, b + j)] = c
                if row:
                    rows.append(row)
    return rows


def jet_quotient_dim(
    generators: Sequence[MultiPoly],
    truncation_order: int | None = None,
    schedule: Sequence[int] = JET_SCHEDULE,
) -> int | NonStabilized:
    """Dimension over Q of the order-N jet space modulo the truncated ideal.

    With an explicit `truncation_order` N, returns dim Q[x,y]/(I + m^N),
    computed on the monomials of total degree < N. Without one, runs the
    doubling schedule and returns the first repeated value; if the dimension
    is still growing at the cap the singular locus is not isolated and
    NON_STABILIZED is returned.
    """
    if not generators:
        raise ValueError("at least one generator required")
    ring = generators[0]
    if len(ring.vars) != 2:
        raise ValueError("jet quotients are implemented for two variables")
    for g in generators:
        if not ring.same_ring(g):
            raise ValueError("generators live in different rings")
        if g.constant_term() != 0:
            raise ValueError("generators must vanish at the origin")

    def dim_at(order: int) -> int:
        echelon: dict[tuple[int, int], dict] = {}
        for row in _truncated_rows(generators, order):
            row = dict(row)
            while row:
                lead = max(row, key=lambda e: (e[0] + e[1], e))
                pivot = echelon.get(lead)
                if pivot is None:
                    coef = row[lead]
                    echelon[lead] = {e: c / coef for e, c in row.items()}
                    break
                factor = row[lead]
                for e, c in pivot.items():
                    s = row.get(e, Fraction(0)) - factor * c
                    if s:
                        row[e] = s
                    elif e in row:
                        del row[e]
        return order * (order + 1) // 2 - len(echelon)

    if truncation_order is not None:
        if truncation_order < 1:
            raise ValueError("truncation order must be positive")
        return dim_at(truncation_order)

    previous = None
    for order in schedule:
        value = dim_at(order)
        if previous is not None and value == previous:
            return value
        previous = value
    return NON_STABILIZED
