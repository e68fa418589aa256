"""Classification of plane-curve germs at rational points into the A-D-E
normal forms, with multiplicity, Milnor number, delta invariant and branch
count.

Recognition uses three exact invariants: the multiplicity, the factor
pattern of the tangent cone over the algebraic closure (read off from a
squarefree decomposition, so no splitting field is ever needed), and the
Milnor number.

Milnor numbers of germs of multiplicity <= 3 are computed by an exact
valuation method: after a unimodular change making the germ x-regular of
exact order m with constant leading x-coefficient and squarefree transverse
slice, the germ is Weierstrass-prepared to a monic degree-m polynomial in x
with power-series coefficients, and

    mu = ord_y disc_x(W) - m + 1.

The preparation runs on denominator-scaled integers, so the whole engine is
division-free and fast enough to classify hundreds of dense germs per
second. Germs of multiplicity >= 4 (which only need a Milnor number for
reporting, never for recognition) fall back to the truncated-jet engine.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Sequence

from .algebra import NON_STABILIZED, NonStabilized, jet_quotient_dim
from .errors import NotOnCurveError
from .poly import MultiPoly, Scalar


class Infinity:
    """Order sentinel larger than every integer (used for contact
    multiplicity of a line inside the curve and for valuations of the
    zero form)."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "oo"

    def __eq__(self, other):
        return isinstance(other, Infinity)

    def __hash__(self):
        return hash("delpezzo-infinity")

    def __gt__(self, other):
        return not isinstance(other, Infinity)

    def __ge__(self, other):
        return True

    def __lt__(self, other):
        return False

    def __le__(self, other):
        return isinstance(other, Infinity)


INF = Infinity()


# ----------------------------------------------------------------------
# singularity types and germ reports


@dataclass(frozen=True)
class SingularityType:
    tag: str  # Smooth | A | D | E6 | E7 | E8 | NonADE
    n: int | None = None
    reason: str | None = None

    def __post_init__(self):
        if self.tag == "A" and (self.n is None or self.n < 1):
            raise ValueError("A(n) requires n >= 1")
        if self.tag == "D" and (self.n is None or self.n < 4):
            raise ValueError("D(n) requires n >= 4")
        if self.tag not in {"Smooth", "A", "D", "E6", "E7", "E8", "NonADE"}:
            raise ValueError(f"unknown singularity tag {self.tag!r}")

    @property
    def is_ade(self) -> bool:
        return self.tag in {"A", "D", "E6", "E7", "E8"}

    @property
    def is_a_type(self) -> bool:
        return self.tag in {"Smooth", "A"}

    def __str__(self):
        if self.tag in {"Smooth", "E6", "E7", "E8"}:
            return self.tag
        if self.tag == "NonADE":
            return f"NonADE({self.reason})"
        return f"{self.tag}{self.n}"


SMOOTH = SingularityType("Smooth")


def a_type(n: int) -> SingularityType:
    return SingularityType("A", n)


def d_type(n: int) -> SingularityType:
    return SingularityType("D", n)


def e_type(k: int) -> SingularityType:
    if k not in (6, 7, 8):
        raise ValueError("E type requires k in {6, 7, 8}")
    return SingularityType(f"E{k}")


def non_ade(reason: str) -> SingularityType:
    return SingularityType("NonADE", reason=reason)


_BRANCH_COUNT = {
    "Smooth": lambda n: 1,
    "A": lambda n: 2 if n % 2 == 1 else 1,
    "D": lambda n: 3 if n % 2 == 0 else 2,
    "E6": lambda n: 1,
    "E7": lambda n: 2,
    "E8": lambda n: 1,
}


@dataclass(frozen=True)
class GermReport:
    """Local data of a curve germ at a rational point."""

    multiplicity: int
    tangent_cone_pattern: tuple[int, ...]
    milnor: int | NonStabilized | None
    type: SingularityType
    delta: int | None
    branches: int | None


# ----------------------------------------------------------------------
# univariate helpers over Fraction (coefficient lists, low degree first)


def _u_trim(p: list[Fraction]) -> list[Fraction]:
    while p and p[-1] == 0:
        p.pop()
    return p


def _u_deg(p: Sequence[Fraction]) -> int:
    return len(p) - 1


def _u_derive(p: Sequence[Fraction]) -> list[Fraction]:
    return _u_trim([p[i] * i for i in range(1, len(p))])


def _u_divmod(a: Sequence[Fraction], b: Sequence[Fraction]):
    a = list(a)
    if not b:
        raise ZeroDivisionError
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    lead = b[-1]
    while len(a) >= len(b) and any(c != 0 for c in a):
        _u_trim(a)
        if len(a) < len(b):
            break
        shift = len(a) - len(b)
        coef = a[-1] / lead
        q[shift] = coef
        for i, c in enumerate(b):
            a[shift + i] -= coef * c
        a.pop()
    return _u_trim(q), _u_trim(a)


def _u_gcd(a: Sequence[Fraction], b: Sequence[Fraction]) -> list[Fraction]:
    a, b = _u_trim(list(a)), _u_trim(list(b))
    while b:
        _, r = _u_divmod(a, b)
        a, b = b, r
    if a:
        lead = a[-1]
        a = [c / lead for c in a]
    return a


def _u_is_squarefree(p: Sequence[Fraction]) -> bool:
    if _u_deg(p) <= 0:
        return True
    return _u_deg(_u_gcd(p, _u_derive(p))) == 0


def _u_yun(f: list[Fraction]) -> list[tuple[list[Fraction], int]]:
    """Yun squarefree decomposition: f = prod a_i**i (up to a constant)."""
    out: list[tuple[list[Fraction], int]] = []
    fp = _u_derive(f)
    a0 = _u_gcd(f, fp)
    b, _ = _u_divmod(f, a0)
    c, _ = _u_divmod(fp, a0)
    d = _u_trim([ci - bi for ci, bi in
                 zip(c + [Fraction(0)] * len(b), _u_derive(b) + [Fraction(0)] * len(c))])
    i = 1
    while _u_deg(b) > 0:
        a = _u_gcd(b, d)
        if _u_deg(a) > 0:
            out.append((a, i))
        b, _ = _u_divmod(b, a)
        cq, _ = _u_divmod(d, a)
        d = _u_trim([x - y for x, y in
                     zip(cq + [Fraction(0)] * len(b), _u_derive(b) + [Fraction(0)] * len(cq))])
        i += 1
    return out


# ----------------------------------------------------------------------
# integer germ grids

IntGrid = dict[tuple[int, int], int]


def _translate_terms(f: MultiPoly, pt: tuple[Scalar, Scalar]) -> dict[tuple[int, int], Fraction]:
    """Exponent-pair terms of f(x + px, y + py)."""
    if len(f.vars) != 2:
        raise ValueError("germ classification needs a curve in two variables")
    px, py = Fraction(pt[0]), Fraction(pt[1])
    out: dict[tuple[int, int], Fraction] = {}
    if px == 0 and py == 0:
        for (i, j), c in f.terms.items():
            out[(i, j)] = out.get((i, j), Fraction(0)) + c
        return {e: c for e, c in out.items() if c != 0}
    max_i = max((e[0] for e in f.terms), default=0)
    max_j = max((e[1] for e in f.terms), default=0)
    # binomial rows and powers, computed once
    binom = [[1]]
    for n in range(1, max(max_i, max_j) + 1):
        row = [1] + [binom[-1][k - 1] + binom[-1][k] for k in range(1, n)] + [1]
        binom.append(row)
    px_pow = [Fraction(1)]
    for _ in range(max_i):
        px_pow.append(px_pow[-1] * px)
    py_pow = [Fraction(1)]
    for _ in range(max_j):
        py_pow.append(py_pow[-1] * py)
    for (i, j), c in f.terms.items():
        for k in range(i + 1):
            left = c * binom[i][k] * px_pow[i - k]
            for l in range(j + 1):
                val = left * binom[j][l] * py_pow[j - l]
                key = (k, l)
                s = out.get(key, Fraction(0)) + val
                if s:
                    out[key] = s
                elif key in out:
                    del out[key]
    return out


def _to_int_grid(terms: dict[tuple[int, int], Fraction]) -> IntGrid:
    den = 1
    for c in terms.values():
        den = lcm(den, c.denominator)
    grid = {e: int(c * den) for e, c in terms.items()}
    content = 0
    for v in grid.values():
        content = gcd(content, abs(v))
    if content > 1:
        grid = {e: v // content for e, v in grid.items()}
    return grid


def _grid_multiplicity(grid: IntGrid) -> int:
    return min(i + j for i, j in grid)


def _cone_coeffs(grid: IntGrid, m: int) -> list[Fraction]:
    """Binary-form coefficients of the lowest form: index k holds the
    coefficient of x^(m-k) y^k."""
    coeffs = [Fraction(0)] * (m + 1)
    for (i, j), c in grid.items():
        if i + j == m:
            coeffs[j] = Fraction(c)
    return coeffs


def _binary_pattern(coeffs: list[Fraction]) -> tuple[int, ...]:
    """Root-multiplicity partition of a binary form over the closure."""
    d = len(coeffs) - 1
    support = [k for k, c in enumerate(coeffs) if c != 0]
    lo, hi = support[0], support[-1]
    parts: list[int] = []
    if lo > 0:
        parts.append(lo)       # root of the form `second`
    if hi < d:
        parts.append(d - hi)   # root of the form `first`
    core = coeffs[lo : hi + 1]
    if _u_deg(core) > 0:
        for part, mult in _u_yun(core):
            parts.extend([mult] * _u_deg(part))
    return tuple(sorted(parts, reverse=True))


# ----------------------------------------------------------------------
# the Milnor engine


def _gl2_candidates(limit: int = 40):
    """Deterministic stream of unimodular integer 2x2 matrices whose first
    column runs over primitive directions of growing height."""
    yield (1, 0, 0, 1)
    yield (0, 1, 1, 0)
    seen = {(1, 0), (0, 1)}
    for h in range(1, limit + 1):
        pairs = []
        for a in range(0, h + 1):
            for c in (h, -h):
                pairs.append((a, c))
        for c in range(0, h):
            for a in (h,):
                pairs.append((a, c))
                pairs.append((a, -c))
        for a, c in pairs:
            if (a, c) in seen or gcd(a, abs(c)) != 1:
                continue
            seen.add((a, c))
            # complete (a, c) to determinant 1: a*d - b*c = 1
            if a == 0:
                b, d = -1 if c > 0 else 1, 0
                if a * 0 - b * c != 1:
                    b = -b
                yield (a, b, c, 0)
                continue
            # extended gcd of (a, c)
            old_r, r = a, c
            old_s, s = 1, 0
            old_t, t = 0, 1
            while r:
                qq = old_r // r
                old_r, r = r, old_r - qq * r
                old_s, s = s, old_s - qq * s
                old_t, t = t, old_t - qq * t
            # old_r = gcd = ±1 = a*old_s + c*old_t
            if old_r < 0:
                old_s, old_t = -old_s, -old_t
            d, b = old_s, -old_t
            assert a * d - b * c == 1
            yield (a, b, c, d)


def _transform_grid(grid: IntGrid, t: tuple[int, int, int, int]) -> IntGrid:
    """f(a x + b y, c x + d y) on integer grids."""
    a, b, c, d = t
    if t == (1, 0, 0, 1):
        return dict(grid)
    max_i = max(e[0] for e in grid)
    max_j = max(e[1] for e in grid)
    # pow1[i][k] = coefficient of x^(i-k) y^k in (a x + b y)^i
    pow1: list[list[int]] = [[1]]
    for i in range(1, max_i + 1):
        prev = pow1[-1]
        cur = [0] * (i + 1)
        for k, v in enumerate(prev):
            cur[k] += v * a
            cur[k + 1] += v * b
        pow1.append(cur)
    pow2: list[list[int]] = [[1]]
    for j in range(1, max_j + 1):
        prev = pow2[-1]
        cur = [0] * (j + 1)
        for k, v in enumerate(prev):
            cur[k] += v * c
            cur[k + 1] += v * d
        pow2.append(cur)
    out: IntGrid = {}
    for (i, j), coef in grid.items():
        pi, pj = pow1[i], pow2[j]
        for k1, v1 in enumerate(pi):
            if v1 == 0:
                continue
            cv = coef * v1
            for k2, v2 in enumerate(pj):
                if v2 == 0:
                    continue
                key = (i + j - k1 - k2, k1 + k2)
                s = out.get(key, 0) + cv * v2
                if s:
                    out[key] = s
                elif key in out:
                    del out[key]
    return out


def _series_mul(p: list[int], q: list[int], order: int) -> list[int]:
    out = [0] * order
    for i, pi in enumerate(p):
        if pi == 0 or i >= order:
            continue
        top = min(order - i, len(q))
        for j in range(top):
            if q[j]:
                out[i + j] += pi * q[j]
    return out


def _disc_val_at(rows: list[list[int]], dx: int, m: int, order: int) -> int | None:
    """First y-order where disc_x of the Weierstrass factor is nonzero,
    computed modulo y^order; None if it vanishes through order-1."""
    f0 = rows[0]
    u = f0[m:]
    c = u[0]
    du = len(u) - 1
    # scaled inverse of u modulo x^m
    vhat = [1]
    for i in range(1, m):
        acc = 0
        cj = 1  # c^(j-1)
        for j in range(1, i + 1):
            uj = u[j] if j <= du else 0
            if uj:
                acc += uj * vhat[i - j] * cj
            cj *= c
        vhat.append(-acc)
    vs = [vhat[i] * c ** (m - 1 - i) for i in range(m)]
    cpow = [1]
    for _ in range(2 * order * m + m):
        cpow.append(cpow[-1] * c)
    W: list[list[int] | None] = [None] * order
    U: list[list[int] | None] = [None] * order
    U[0] = u
    zero_row: list[int] = []
    for k in range(1, order):
        base = rows[k] if k < len(rows) else zero_row
        scale = cpow[(2 * k - 2) * m]
        R = [v * scale for v in base] + [0] * (dx + 1 - len(base))
        for i in range(1, k):
            Ui, Wk_i = U[i], W[k - i]
            for a1, va in enumerate(Ui):
                if va == 0:
                    continue
                for b1, vb in enumerate(Wk_i):
                    if vb:
                        R[a1 + b1] -= va * vb
        Wk = [0] * m
        for t in range(m):
            acc = 0
            for i1 in range(t + 1):
                if R[i1] and vs[t - i1]:
                    acc += R[i1] * vs[t - i1]
            Wk[t] = acc
        cm = cpow[m]
        N = [v * cm for v in R]
        for a1, va in enumerate(u):
            if va == 0:
                continue
            for b1, vb in enumerate(Wk):
                if vb:
                    N[a1 + b1] -= va * vb
        assert all(v == 0 for v in N[:m]), "Weierstrass division out of sync"
        U[k] = N[m:]
        W[k] = Wk
    # discriminant series of W (monic degree m), scaled uniformly per order
    if m == 2:
        bhat = [0] + [W[k][1] for k in range(1, order)]
        ahat = [0] + [W[k][0] for k in range(1, order)]
        bb = _series_mul(bhat, bhat, order)
        cm = cpow[m]
        for k in range(1, order):
            if bb[k] * cm - 4 * ahat[k] != 0:
                return k
        return None
    if m == 3:
        A = [0] + [W[k][2] for k in range(1, order)]
        B = [0] + [W[k][1] for k in range(1, order)]
        C = [0] + [W[k][0] for k in range(1, order)]
        AB = _series_mul(A, B, order)
        ABC = _series_mul(AB, C, order)
        A2 = _series_mul(A, A, order)
        A3 = _series_mul(A2, A, order)
        A3C = _series_mul(A3, C, order)
        B2 = _series_mul(B, B, order)
        A2B2 = _series_mul(A2, B2, order)
        B3 = _series_mul(B2, B, order)
        C2 = _series_mul(C, C, order)
        cm, c2m = cpow[m], cpow[2 * m]
        for k in range(1, order):
            val = (
                18 * ABC[k] * cm
                - 4 * A3C[k] * c2m
                + A2B2[k] * c2m
                - 4 * B3[k] * cm
                - 27 * C2[k]
            )
            if val != 0:
                return k
        return None
    raise ValueError("discriminant series implemented for m in {2, 3}")


def _grid_rows(grid: IntGrid) -> tuple[list[list[int]], int, int]:
    dx = max(e[0] for e in grid)
    dy = max(e[1] for e in grid)
    rows: list[list[int]] = [[0] * (dx + 1) for _ in range(dy + 1)]
    for (i, j), v in grid.items():
        rows[j][i] = v
    for j in range(dy + 1):
        while rows[j] and rows[j][-1] == 0:
            rows[j].pop()
    return rows, dx, dy


def _int_squarefree(p: list[int]) -> bool:
    return _u_is_squarefree([Fraction(v) for v in p])


def _exact_squarefree_data(grid: IntGrid) -> tuple[IntGrid, bool]:
    """Squarefree part of the grid polynomial and whether some repeated
    factor vanishes at the origin. Rare path; delegated to sympy."""
    import sympy

    x, y = sympy.symbols("x y")
    expr = sympy.Add(*[c * x ** i * y ** j for (i, j), c in grid.items()])
    const, factors = sympy.Poly(expr, x, y, domain="QQ").factor_list()
    repeated_through_origin = False
    product = sympy.Integer(1)
    for fac, mult in factors:
        if mult >= 2 and fac.eval({x: 0, y: 0}) == 0:
            repeated_through_origin = True
        product *= fac.as_expr()
    reduced = sympy.Poly(sympy.expand(product), x, y, domain="QQ")
    out: dict[tuple[int, int], Fraction] = {}
    for monom, coef in reduced.terms():
        out[(int(monom[0]), int(monom[1]))] = Fraction(coef.p, coef.q)
    return _to_int_grid(out), repeated_through_origin


def _milnor_grid(grid: IntGrid) -> int | NonStabilized:
    """Milnor number at the origin of the integer-grid germ (nonzero,
    vanishing at the origin)."""
    m = _grid_multiplicity(grid)
    if m == 0:
        raise NotOnCurveError("germ does not vanish at the point")
    if m == 1:
        return 0
    pattern = _binary_pattern(_cone_coeffs(grid, m))
    if m == 2 and pattern == (1, 1):
        return 1
    if m == 3 and pattern == (1, 1, 1):
        return 4
    if m <= 3:
        for t in _gl2_candidates():
            g = _transform_grid(grid, t)
            rows, dx, dy = _grid_rows(g)
            f0 = rows[0]
            if len(f0) != dx + 1:
                continue  # leading x-coefficient not constant
            if any(v != 0 for v in f0[:m]) or len(f0) <= m or f0[m] == 0:
                continue  # not x-regular of exact order m
            # the slice must also witness the full total degree
            total = max(i + j for i, j in g)
            if dx != total:
                continue
            if not _int_squarefree(f0[m:]):
                continue
            bound = (2 * dx - 1) * max(dy, 1) + 2
            order = 12
            while True:
                order = min(order, bound)
                v = _disc_val_at(rows, dx, m, order)
                if v is not None:
                    return v - m + 1
                if order >= bound:
                    break
                order = min(2 * order, bound)
            break  # discriminant identically zero: not squarefree
        reduced, repeated_origin = _exact_squarefree_data(grid)
        if repeated_origin:
            return NON_STABILIZED
        if reduced == grid:
            raise AssertionError("no valid direction found for a squarefree germ")
        return _milnor_grid(reduced)
    # multiplicity >= 4: recognition never needs mu; report via the jet engine
    ring = MultiPoly.ring(("x", "y"))
    x, y = ring
    f = MultiPoly(("x", "y"), None, {e: Fraction(c) for e, c in grid.items()})
    return jet_quotient_dim([f.derivative("x"), f.derivative("y")])


# ----------------------------------------------------------------------
# public operations


def multiplicity_at(f: MultiPoly, pt: tuple[Scalar, Scalar]) -> int:
    """Order of vanishing of f at the point (0 when the point is off the
    curve)."""
    if f.is_zero():
        raise ValueError("multiplicity of the zero polynomial is undefined")
    terms = _translate_terms(f, pt)
    if not terms:
        raise ValueError("curve polynomial is identically zero")
    return min(i + j for i, j in terms)


def milnor_number(f: MultiPoly, pt: tuple[Scalar, Scalar]) -> int | NonStabilized:
    """Milnor number of the germ of f at a rational point of the curve."""
    terms = _translate_terms(f, pt)
    if (0, 0) in terms:
        raise NotOnCurveError(f"point {pt} is not on the curve")
    if not terms:
        raise ValueError("curve polynomial is identically zero")
    return _milnor_grid(_to_int_grid(terms))


_A1_PATTERNS = {(1, 1)}


def classify_singularity(f: MultiPoly, pt: tuple[Scalar, Scalar]) -> GermReport:
    """Classify the germ of the curve f = 0 at a rational point against the
    A-D-E normal forms."""
    terms = _translate_terms(f, pt)
    if (0, 0) in terms:
        raise NotOnCurveError(f"point {pt} is not on the curve")
    if not terms:
        raise ValueError("curve polynomial is identically zero")
    grid = _to_int_grid(terms)
    m = _grid_multiplicity(grid)
    pattern = _binary_pattern(_cone_coeffs(grid, m))
    if m == 1:
        return GermReport(1, pattern, 0, SMOOTH, 0, 1)
    if m >= 4:
        mu = _milnor_grid(grid)
        return GermReport(m, pattern, mu, non_ade("multiplicity>=4"), None, None)
    mu = _milnor_grid(grid)
    if mu is NON_STABILIZED:
        return GermReport(m, pattern, NON_STABILIZED, non_ade("non-isolated"), None, None)
    if m == 2:
        stype = a_type(mu)
    else:
        if len(pattern) >= 2:
            if mu < 4:
                raise AssertionError(f"triple point with Milnor number {mu}")
            stype = d_type(mu)
        elif mu in (6, 7, 8):
            stype = e_type(mu)
        else:
            if mu <= 8:
                raise AssertionError(f"cubed tangent cone with Milnor number {mu}")
            return GermReport(m, pattern, mu, non_ade("cubic-cone-with-mu>8"), None, None)
    branches = _BRANCH_COUNT[stype.tag](stype.n if stype.n is not None else 0)
    two_delta = mu + branches - 1
    if two_delta % 2 != 0:
        raise AssertionError("delta identity failed")
    return GermReport(m, pattern, mu, stype, two_delta // 2, branches)


def contact_multiplicity(
    f: MultiPoly, line: MultiPoly, pt: tuple[Scalar, Scalar]
) -> int | Infinity:
    """Intersection order of the curve with a rational line at a point of
    the line; INF when the line is a component of the curve."""
    if not f.same_ring(line):
        raise ValueError("curve and line live in different rings")
    if len(f.vars) != 2:
        raise ValueError("contact multiplicity is for affine plane curves")
    if line.weighted_degree() != 1:
        raise ValueError("second argument must be a line (degree 1)")
    px, py = Fraction(pt[0]), Fraction(pt[1])
    if line.evaluate({f.vars[0]: px, f.vars[1]: py}) != 0:
        raise ValueError(f"point {pt} is not on the line")
    xv, yv = f.vars
    a = line.coefficient_of(xv, 1).as_constant() if line.degree_in(xv) else Fraction(0)
    b = line.coefficient_of(yv, 1).as_constant() if line.degree_in(yv) else Fraction(0)
    t_ring = MultiPoly.zero(("T",))
    T = MultiPoly.variable("T", ("T",))
    image_x = MultiPoly.constant(px, ("T",)) + b * T
    image_y = MultiPoly.constant(py, ("T",)) - a * T
    restricted = f.substitute({xv: image_x, yv: image_y}, ring=t_ring)
    if restricted.is_zero():
        return INF
    return min(e[0] for e in restricted.terms)
