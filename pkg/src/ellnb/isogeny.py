"""Separable isogeny E -> E/<t> from Velu's formulas in general Weierstrass form."""

from __future__ import annotations

from dataclasses import dataclass, field

from . import poly
from .curve import O, Point, WeierstrassCurve
from .errors import DegreeCollapse, InvalidInput, KernelOrderMismatch, NoGeneratorFound
from .field import FieldElement, poly_irreducible


@dataclass
class KernelTerm:
    """Per-point data of a kernel representative Q (one of each pair +-Q)."""

    x: FieldElement
    y: FieldElement
    gx: FieldElement
    gy: FieldElement
    v: FieldElement
    u: FieldElement


@dataclass
class IsogenyData:
    domain: WeierstrassCurve
    codomain: WeierstrassCurve
    kernel_generator: Point
    n: int
    terms: list[KernelTerm] = field(repr=False)
    # X-map as numerator/denominator in x; Y-map as (c0(x) + c1(x) y) / den(x)
    x_num: list = field(repr=False)
    x_den: list = field(repr=False)
    y_num0: list = field(repr=False)
    y_num1: list = field(repr=False)
    y_den: list = field(repr=False)

    def __call__(self, P: Point) -> Point:
        return self.image(P)

    def image(self, P: Point) -> Point:
        """Evaluate the isogeny at P (any extension of the base field)."""
        if P.is_infinity:
            return O
        E = self.domain
        a1, a3 = E.a1, E.a3
        x, y = P.x, P.y
        X, Y = x, y
        for T in self.terms:
            d = x - T.x
            if d.is_zero():
                return O
            di = d.inverse()
            di2 = di * di
            X = X + T.v * di + T.u * di2
            Y = Y - (
                T.u * (2 * y + a1 * x + a3) * di2 * di
                + T.v * (a1 * d + y - T.y) * di2
                + (a1 * T.u - T.gx * T.gy) * di2
            )
        return Point(X, Y)

    def to_json(self):
        F = self.domain.field

        def js(p):
            return [F.to_json(c) for c in p]

        return {
            "codomain": self.codomain.to_json(),
            "x_map": {"num": js(self.x_num), "den": js(self.x_den)},
            "y_map": {"num_const": js(self.y_num0), "num_y": js(self.y_num1), "den": js(self.y_den)},
        }


def _kernel_representatives(E: WeierstrassCurve, t: Point, n: int):
    """Split <t> minus O into 2-torsion points and one point of each pair +-Q."""
    two_torsion, pairs = [], []
    for k in range(1, n // 2 + 1):
        Q = E.mul(k, t)
        if 2 * k == n:
            two_torsion.append(Q)
        else:
            pairs.append(Q)
    return two_torsion, pairs


def velu_quotient(E: WeierstrassCurve, t: Point, n: int) -> IsogenyData:
    if n < 2:
        raise InvalidInput("kernel order must be at least 2")
    if E.point_order(t) != n:
        raise KernelOrderMismatch(f"order of {t} is {E.point_order(t)}, expected {n}")
    F = E.field
    a1, a2, a3, a4, a6 = E.coefficients()
    two_torsion, pairs = _kernel_representatives(E, t, n)
    terms = []
    v_sum, w_sum = F.zero_element, F.zero_element
    for Q, is_two in [(Q, True) for Q in two_torsion] + [(Q, False) for Q in pairs]:
        gx = 3 * Q.x * Q.x + 2 * a2 * Q.x + a4 - a1 * Q.y
        gy = -2 * Q.y - a1 * Q.x - a3
        v = gx if is_two else 2 * gx - a1 * gy
        u = gy * gy
        terms.append(KernelTerm(Q.x, Q.y, gx, gy, v, u))
        v_sum = v_sum + v
        w_sum = w_sum + u + Q.x * v
    codomain = WeierstrassCurve(
        F, a1, a2, a3, a4 - 5 * v_sum, a6 - (a1 * a1 + 4 * a2) * v_sum - 7 * w_sum
    )
    x_num, x_den, y0, y1, y_den = _rational_maps(E, terms)
    return IsogenyData(E, codomain, t, n, terms, x_num, x_den, y0, y1, y_den)


def _rational_maps(E: WeierstrassCurve, terms: list[KernelTerm]):
    F = E.field
    R = lambda c: F(c).raw  # noqa: E731
    a1, a3 = R(E.a1), R(E.a3)
    X = [F.zero, F.one]

    def lin(T):
        return [F.neg(R(T.x)), F.one]

    # X = x + sum v/(x-xQ) + u/(x-xQ)^2 over the common denominator prod (x-xQ)^2
    den2 = [F.one]
    for T in terms:
        den2 = poly.mul(F, den2, poly.mul(F, lin(T), lin(T)))
    num = poly.mul(F, X, den2)
    for T in terms:
        rest, _ = poly.divmod_(F, den2, poly.mul(F, lin(T), lin(T)))
        num = poly.add(F, num, poly.mul(F, rest, poly.add(F, poly.scale(F, R(T.v), lin(T)), [R(T.u)])))
    g = poly.gcd(F, num, den2)
    x_num, _ = poly.divmod_(F, num, g)
    x_den, _ = poly.divmod_(F, den2, g)

    # Y = y - sum [u (2y + a1 x + a3)/(x-xQ)^3 + v (a1 (x-xQ) + y - yQ)/(x-xQ)^2
    #              + (a1 u - gx gy)/(x-xQ)^2], kept as (c0(x) + c1(x) y) / prod (x-xQ)^3
    den3 = [F.one]
    for T in terms:
        den3 = poly.mul(F, den3, poly.mul(F, lin(T), poly.mul(F, lin(T), lin(T))))
    c0, c1 = [], list(den3)
    for T in terms:
        L = lin(T)
        rest3, _ = poly.divmod_(F, den3, poly.mul(F, L, poly.mul(F, L, L)))
        u, v = R(T.u), R(T.v)
        # y-coefficient of the bracket, times (x-xQ)^3: 2u + v (x - xQ)
        b1 = poly.add(F, poly.scale(F, F.add(u, u), [F.one]), poly.scale(F, v, L))
        # constant part: u (a1 x + a3) + (v a1 (x-xQ) - v yQ + a1 u - gx gy)(x - xQ)
        b0 = poly.scale(F, u, [a3, a1])
        inner = poly.add(
            F,
            poly.scale(F, F.mul(v, a1), L),
            [F.sub(F.sub(F.mul(a1, u), F.mul(v, R(T.y))), F.mul(R(T.gx), R(T.gy)))],
        )
        b0 = poly.add(F, b0, poly.mul(F, inner, L))
        c0 = poly.sub(F, c0, poly.mul(F, rest3, b0))
        c1 = poly.sub(F, c1, poly.mul(F, rest3, b1))
    return x_num, x_den, c0, c1, den3


def preimage_poly(iso: IsogenyData, a: Point) -> list[FieldElement]:
    """Monic degree-n polynomial whose roots are x-coordinates of I^{-1}(+-a)."""
    if a.is_infinity:
        raise InvalidInput("a must be an affine point")
    if not iso.codomain.is_on_curve(a):
        raise InvalidInput(f"{a} is not on the quotient curve")
    F = iso.domain.field
    h = poly.sub(F, iso.x_num, poly.scale(F, a.x.raw, iso.x_den))
    if len(h) - 1 != iso.n:
        raise DegreeCollapse(f"preimage polynomial has degree {len(h) - 1} < {iso.n}")
    return [FieldElement(F, c) for c in poly.monic(F, h)]


def find_generator_point(iso: IsogenyData, max_points: int | None = None) -> Point:
    """First rational point of the quotient curve whose preimage polynomial is irreducible."""
    for i, a in enumerate(iso.codomain.points()):
        if max_points is not None and i >= max_points:
            break
        try:
            h = preimage_poly(iso, a)
        except DegreeCollapse:
            continue
        if poly_irreducible(h, iso.domain.field):
            return a
    raise NoGeneratorFound("no rational point of E' has an irreducible preimage")
