"""Exact multivariate polynomials over the rationals with a weighted grading.

Coefficients are `fractions.Fraction` (always in lowest terms, positive
denominator), so every operation in this module is exact. A polynomial
carries an ordered variable tuple and one positive integer weight per
variable; the weighted grading is what makes the P(1,1,2) model of the
quadric cone a first-class citizen.

Terms are stored sparsely as a dict from exponent tuple to nonzero
coefficient. The canonical term order used for serialization, printing and
exact division is graded lexicographic on (weighted degree, exponent tuple),
largest first, which makes every emitted artifact deterministic.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Iterable, Mapping, Sequence, Union

Scalar = Union[int, Fraction]
Exponent = tuple[int, ...]


def _as_fraction(value: Scalar) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    raise TypeError(f"exact coefficient expected, got {type(value).__name__}")


def fraction_to_str(value: Fraction) -> str:
    """Serialize a rational as 'num/den' (den >= 1, lowest terms)."""
    return f"{value.numerator}/{value.denominator}"


def fraction_from_str(text: str) -> Fraction:
    """Parse 'num/den' or a bare integer string, exactly."""
    if not isinstance(text, str):
        raise ValueError(f"rational string expected, got {text!r}")
    parts = text.split("/")
    if len(parts) == 1:
        return Fraction(int(parts[0]))
    if len(parts) == 2:
        num, den = int(parts[0]), int(parts[1])
        if den == 0:
            raise ValueError(f"zero denominator in {text!r}")
        return Fraction(num, den)
    raise ValueError(f"malformed rational {text!r}")


class MultiPoly:
    """A polynomial in an ordered list of variables with positive weights."""

    __slots__ = ("vars", "weights", "terms")

    def __init__(
        self,
        vars: Sequence[str],
        weights: Sequence[int] | None = None,
        terms: Mapping[Exponent, Scalar] | None = None,
    ):
        self.vars: tuple[str, ...] = tuple(vars)
        if len(set(self.vars)) != len(self.vars):
            raise ValueError("duplicate variable names")
        if weights is None:
            weights = (1,) * len(self.vars)
        self.weights: tuple[int, ...] = tuple(int(w) for w in weights)
        if len(self.weights) != len(self.vars):
            raise ValueError("one weight per variable required")
        if any(w <= 0 for w in self.weights):
            raise ValueError("weights must be positive integers")
        clean: dict[Exponent, Fraction] = {}
        if terms:
            for exp, coef in terms.items():
                exp = tuple(int(e) for e in exp)
                if len(exp) != len(self.vars) or any(e < 0 for e in exp):
                    raise ValueError(f"bad exponent vector {exp}")
                c = _as_fraction(coef)
                if c != 0:
                    prev = clean.get(exp)
                    c = c if prev is None else prev + c
                    if c != 0:
                        clean[exp] = c
                    elif exp in clean:
                        del clean[exp]
        self.terms: dict[Exponent, Fraction] = clean

    # ------------------------------------------------------------------
    # constructors

    @classmethod
    def zero(cls, vars: Sequence[str], weights: Sequence[int] | None = None) -> "MultiPoly":
        return cls(vars, weights, {})

    @classmethod
    def constant(
        cls, value: Scalar, vars: Sequence[str], weights: Sequence[int] | None = None
    ) -> "MultiPoly":
        c = _as_fraction(value)
        exp = (0,) * len(tuple(vars))
        return cls(vars, weights, {exp: c} if c else {})

    @classmethod
    def variable(
        cls, name: str, vars: Sequence[str], weights: Sequence[int] | None = None
    ) -> "MultiPoly":
        vars = tuple(vars)
        if name not in vars:
            raise ValueError(f"{name!r} is not one of {vars}")
        exp = tuple(1 if v == name else 0 for v in vars)
        return cls(vars, weights, {exp: Fraction(1)})

    @classmethod
    def ring(
        cls, vars: Sequence[str], weights: Sequence[int] | None = None
    ) -> tuple["MultiPoly", ...]:
        """Convenience: one generator per variable, in order."""
        return tuple(cls.variable(v, vars, weights) for v in vars)

    def _like(self, terms: Mapping[Exponent, Scalar]) -> "MultiPoly":
        return MultiPoly(self.vars, self.weights, terms)

    # ------------------------------------------------------------------
    # basic queries

    def is_zero(self) -> bool:
        return not self.terms

    def same_ring(self, other: "MultiPoly") -> bool:
        return self.vars == other.vars and self.weights == other.weights

    def weighted_degree_of(self, exp: Exponent) -> int:
        return sum(e * w for e, w in zip(exp, self.weights))

    def weighted_degree(self) -> int | None:
        """Maximum weighted degree of a term, or None for the zero polynomial."""
        if not self.terms:
            return None
        return max(self.weighted_degree_of(e) for e in self.terms)

    def lowest_weighted_degree(self) -> int | None:
        if not self.terms:
            return None
        return min(self.weighted_degree_of(e) for e in self.terms)

    def is_homogeneous(self) -> bool:
        if not self.terms:
            return True
        degs = {self.weighted_degree_of(e) for e in self.terms}
        return len(degs) == 1

    def homogeneous_part(self, degree: int) -> "MultiPoly":
        return self._like(
            {e: c for e, c in self.terms.items() if self.weighted_degree_of(e) == degree}
        )

    def degree_in(self, var: str) -> int:
        """Degree in a single variable; -1 for the zero polynomial."""
        i = self.vars.index(var)
        if not self.terms:
            return -1
        return max(e[i] for e in self.terms)

    def coefficient_of(self, var: str, power: int) -> "MultiPoly":
        """Coefficient of var**power, as a polynomial in the same ring
        (the extracted variable appears with exponent 0)."""
        i = self.vars.index(var)
        out: dict[Exponent, Fraction] = {}
        for e, c in self.terms.items():
            if e[i] == power:
                out[e[:i] + (0,) + e[i + 1 :]] = c
        return self._like(out)

    def constant_term(self) -> Fraction:
        return self.terms.get((0,) * len(self.vars), Fraction(0))

    def as_constant(self) -> Fraction:
        """The value of a constant polynomial; raises if non-constant."""
        zero_exp = (0,) * len(self.vars)
        for e in self.terms:
            if e != zero_exp:
                raise ValueError("polynomial is not constant")
        return self.terms.get(zero_exp, Fraction(0))

    # ------------------------------------------------------------------
    # arithmetic

    def __add__(self, other: "MultiPoly | Scalar") -> "MultiPoly":
        if not isinstance(other, MultiPoly):
            other = MultiPoly.constant(other, self.vars, self.weights)
        if not self.same_ring(other):
            raise ValueError("polynomials live in different rings")
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e, Fraction(0)) + c
            if s:
                out[e] = s
            elif e in out:
                del out[e]
        return self._like(out)

    __radd__ = __add__

    def __neg__(self) -> "MultiPoly":
        return self._like({e: -c for e, c in self.terms.items()})

    def __sub__(self, other: "MultiPoly | Scalar") -> "MultiPoly":
        if not isinstance(other, MultiPoly):
            other = MultiPoly.constant(other, self.vars, self.weights)
        return self + (-other)

    def __rsub__(self, other: Scalar) -> "MultiPoly":
        return (-self) + other

    def __mul__(self, other: "MultiPoly | Scalar") -> "MultiPoly":
        if not isinstance(other, MultiPoly):
            c = _as_fraction(other)
            if c == 0:
                return self._like({})
            return self._like({e: c * v for e, v in self.terms.items()})
        if not self.same_ring(other):
            raise ValueError("polynomials live in different rings")
        out: dict[Exponent, Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                s = out.get(e, Fraction(0)) + c1 * c2
                if s:
                    out[e] = s
                elif e in out:
                    del out[e]
        return self._like(out)

    __rmul__ = __mul__

    def __truediv__(self, scalar: Scalar) -> "MultiPoly":
        c = _as_fraction(scalar)
        if c == 0:
            raise ZeroDivisionError("division of polynomial by zero scalar")
        return self._like({e: v / c for e, v in self.terms.items()})

    def __pow__(self, n: int) -> "MultiPoly":
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result = MultiPoly.constant(1, self.vars, self.weights)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            other = MultiPoly.constant(other, self.vars, self.weights)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self.same_ring(other) and self.terms == other.terms

    def __hash__(self):
        return hash((self.vars, self.weights, frozenset(self.terms.items())))

    # ------------------------------------------------------------------
    # calculus / substitution

    def derivative(self, var: str) -> "MultiPoly":
        i = self.vars.index(var)
        out: dict[Exponent, Fraction] = {}
        for e, c in self.terms.items():
            if e[i] > 0:
                out[e[:i] + (e[i] - 1,) + e[i + 1 :]] = c * e[i]
        return self._like(out)

    def evaluate(self, values: Mapping[str, Scalar]) -> Fraction:
        """Evaluate at a full rational point."""
        missing = [v for v in self.vars if v not in values]
        if missing:
            raise ValueError(f"no value supplied for {missing}")
        vals = [_as_fraction(values[v]) for v in self.vars]
        total = Fraction(0)
        for e, c in self.terms.items():
            term = c
            for base, power in zip(vals, e):
                if power:
                    term *= base ** power
            total += term
        return total

    def substitute(
        self,
        mapping: Mapping[str, "MultiPoly | Scalar"],
        ring: "MultiPoly | None" = None,
    ) -> "MultiPoly":
        """Substitute polynomials (or scalars) for variables.

        Variables absent from `mapping` are kept, which requires the target
        ring to contain them; pass `ring` (any polynomial of the target ring)
        when the substitution changes rings.
        """
        if ring is not None:
            target_vars, target_weights = ring.vars, ring.weights
        else:
            target_vars, target_weights = self.vars, self.weights
        images: list[MultiPoly] = []
        for v in self.vars:
            img = mapping.get(v)
            if img is None:
                if v not in target_vars:
                    raise ValueError(f"variable {v!r} has no image in the target ring")
                img = MultiPoly.variable(v, target_vars, target_weights)
            elif not isinstance(img, MultiPoly):
                img = MultiPoly.constant(img, target_vars, target_weights)
            elif img.vars != tuple(target_vars) or img.weights != tuple(target_weights):
                raise ValueError(f"image of {v!r} lives in the wrong ring")
            images.append(img)
        one = MultiPoly.constant(1, target_vars, target_weights)
        result = MultiPoly.zero(target_vars, target_weights)
        # cache powers per variable as they are needed
        powers: list[dict[int, MultiPoly]] = [{0: one} for _ in self.vars]

        def power(i: int, n: int) -> MultiPoly:
            cache = powers[i]
            if n not in cache:
                cache[n] = power(i, n - 1) * images[i]
            return cache[n]

        for e, c in self.terms.items():
            term = MultiPoly.constant(c, target_vars, target_weights)
            for i, p in enumerate(e):
                if p:
                    term = term * power(i, p)
            result = result + term
        return result

    # ------------------------------------------------------------------
    # exact division / valuations

    def _sort_key(self, exp: Exponent) -> tuple:
        return (self.weighted_degree_of(exp), exp)

    def leading_term(self) -> tuple[Exponent, Fraction]:
        """Largest term in the graded-lex order; raises on the zero polynomial."""
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        exp = max(self.terms, key=self._sort_key)
        return exp, self.terms[exp]

    def exact_divide(self, divisor: "MultiPoly") -> "MultiPoly | None":
        """Exact quotient self / divisor, or None when the division is inexact."""
        if not self.same_ring(divisor):
            raise ValueError("polynomials live in different rings")
        if divisor.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        if self.is_zero():
            return self._like({})
        d_exp, d_coef = divisor.leading_term()
        quotient: dict[Exponent, Fraction] = {}
        rem = self
        while not rem.is_zero():
            r_exp, r_coef = rem.leading_term()
            q_exp = tuple(a - b for a, b in zip(r_exp, d_exp))
            if any(e < 0 for e in q_exp):
                return None
            q_coef = r_coef / d_coef
            quotient[q_exp] = quotient.get(q_exp, Fraction(0)) + q_coef
            rem = rem - divisor * self._like({q_exp: q_coef})
        return self._like(quotient)

    def valuation(self, factor: "MultiPoly") -> int:
        """Largest k with factor**k dividing self (self must be nonzero)."""
        if self.is_zero():
            raise ValueError("valuation of the zero polynomial is undefined")
        if factor.is_zero() or not factor.terms or factor.weighted_degree() == 0:
            raise ValueError("valuation requires a nonconstant factor")
        count = 0
        current = self
        while True:
            q = current.exact_divide(factor)
            if q is None:
                return count
            count += 1
            current = q

    # ------------------------------------------------------------------
    # normalization

    def primitive_normalized(self) -> tuple[Fraction, "MultiPoly"]:
        """Write self as unit * primitive, with integer coprime coefficients
        and positive leading (graded-lex) coefficient."""
        if self.is_zero():
            return Fraction(0), self._like({})
        from math import gcd, lcm

        den = 1
        for c in self.terms.values():
            den = lcm(den, c.denominator)
        num = 0
        for c in self.terms.values():
            num = gcd(num, abs(c.numerator * (den // c.denominator)))
        unit = Fraction(num, den)
        _, lead = self.leading_term()
        if lead < 0:
            unit = -unit
        prim = self * (1 / unit)
        return unit, prim

    # ------------------------------------------------------------------
    # serialization & printing

    def sorted_terms(self) -> list[tuple[Exponent, Fraction]]:
        return sorted(self.terms.items(), key=lambda t: self._sort_key(t[0]), reverse=True)

    def to_json_dict(self) -> dict:
        return {
            "vars": list(self.vars),
            "weights": list(self.weights),
            "terms": [
                {"exp": list(e), "coef": fraction_to_str(c)} for e, c in self.sorted_terms()
            ],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), sort_keys=True, separators=(",", ":"))

    @classmethod
    def from_json_dict(cls, data: Mapping) -> "MultiPoly":
        if not isinstance(data, Mapping):
            raise ValueError("polynomial JSON must be an object")
        for key in ("vars", "weights", "terms"):
            if key not in data:
                raise ValueError(f"polynomial JSON missing key {key!r}")
        vars = data["vars"]
        weights = data["weights"]
        terms: dict[Exponent, Fraction] = {}
        for item in data["terms"]:
            exp = tuple(int(e) for e in item["exp"])
            coef = fraction_from_str(item["coef"])
            if exp in terms:
                raise ValueError(f"duplicate exponent {exp} in polynomial JSON")
            terms[exp] = coef
        return cls(vars, weights, terms)

    @classmethod
    def from_json(cls, text: str) -> "MultiPoly":
        return cls.from_json_dict(json.loads(text))

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        pieces = []
        for exp, coef in self.sorted_terms():
            factors = []
            for v, e in zip(self.vars, exp):
                if e == 1:
                    factors.append(v)
                elif e > 1:
                    factors.append(f"{v}^{e}")
            body = "*".join(factors)
            if not body:
                piece = str(coef)
            elif coef == 1:
                piece = body
            elif coef == -1:
                piece = f"-{body}"
            else:
                piece = f"{coef}*{body}"
            pieces.append(piece)
        text = " + ".join(pieces)
        return text.replace("+ -", "- ")

    def __repr__(self) -> str:
        return f"MultiPoly({self})"


def binary_form_coefficients(form: MultiPoly, first: str, second: str) -> list[Fraction]:
    """Coefficient list [c_0, ..., c_d] of a binary form
    sum c_i * first**(d-i) * second**i, using the form's weighted degree d.

    The form must involve only the two named variables and be homogeneous.
    """
    if form.is_zero():
        raise ValueError("zero form has no coefficient list")
    if not form.is_homogeneous():
        raise ValueError("binary form must be homogeneous")
    i1, i2 = form.vars.index(first), form.vars.index(second)
    w1, w2 = form.weights[i1], form.weights[i2]
    if w1 != 1 or w2 != 1:
        raise ValueError("binary form coefficients require weight-1 variables")
    d = form.weighted_degree()
    coeffs = [Fraction(0)] * (d + 1)
    for e, c in form.terms.items():
        for i, v in enumerate(e):
            if v and i not in (i1, i2):
                raise ValueError("form involves a third variable")
        coeffs[e[i2]] = c
    return coeffs


def binary_form_from_coefficients(
    coeffs: Sequence[Scalar], ring: MultiPoly, first: str, second: str
) -> MultiPoly:
    """Inverse of binary_form_coefficients for the given degree len(coeffs)-1."""
    d = len(coeffs) - 1
    i1, i2 = ring.vars.index(first), ring.vars.index(second)
    terms: dict[Exponent, Fraction] = {}
    for i, c in enumerate(coeffs):
        c = _as_fraction(c)
        if c:
            exp = [0] * len(ring.vars)
            exp[i1] = d - i
            exp[i2] = i
            terms[tuple(exp)] = c
    return MultiPoly(ring.vars, ring.weights, terms)
