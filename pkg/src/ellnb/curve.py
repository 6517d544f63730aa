"""General Weierstrass curves y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6."""

from __future__ import annotations

import math
from functools import cached_property

from .errors import (
    InvalidInput,
    NoSafeEvaluationPoint,
    PoleEvaluation,
    ScaleExceeded,
    SingularCurve,
    VerticalSlope,
)
from .field import ExtensionField, Field, FieldElement, factorize, first_irreducible

ENUMERATION_LIMIT = 4096
SCALE_LIMIT = 2**20


class Point:
    """Affine point ``(x, y)`` or the point at infinity (``x is None``)."""

    __slots__ = ("x", "y")

    def __init__(self, x=None, y=None):
        self.x = x
        self.y = y

    @property
    def is_infinity(self) -> bool:
        return self.x is None

    def __eq__(self, other):
        if not isinstance(other, Point):
            return NotImplemented
        if self.is_infinity or other.is_infinity:
            return self.is_infinity and other.is_infinity
        return self.x == other.x and self.y == other.y

    def __hash__(self):
        return hash(None) if self.is_infinity else hash((self.x.raw, self.y.raw))

    def __repr__(self):
        return "O" if self.is_infinity else f"({self.x!r}, {self.y!r})"

    def frobenius(self, k: int = 1) -> "Point":
        if self.is_infinity:
            return self
        return Point(self.x.frobenius(k), self.y.frobenius(k))

    def to_json(self):
        return "O" if self.is_infinity else [self.x.to_json(), self.y.to_json()]


O = Point()


class WeierstrassCurve:
    def __init__(self, field: Field, a1=0, a2=0, a3=0, a4=0, a6=0, check: bool = True):
        self.field = field
        self.a1, self.a2, self.a3, self.a4, self.a6 = (field(c) for c in (a1, a2, a3, a4, a6))
        if check and self.discriminant.is_zero():
            raise SingularCurve(f"singular curve {self.coefficients_json()}")

    @classmethod
    def from_json(cls, data, field: Field | None = None) -> "WeierstrassCurve":
        from .field import GF, ExtensionField as Ext, PrimeField

        if field is None:
            field = PrimeField(data["p"])
            if data.get("q_modulus"):
                field = Ext(field, data["q_modulus"])
        return cls(field, *data["a"])

    def coefficients(self):
        return (self.a1, self.a2, self.a3, self.a4, self.a6)

    def coefficients_json(self):
        return [c.to_json() for c in self.coefficients()]

    def to_json(self):
        out = {"p": self.field.p, "q_modulus": None, "a": self.coefficients_json()}
        if self.field.base is not None:
            out["q_modulus"] = [self.field.base.to_json(c) for c in self.field.modulus]
        return out

    def __repr__(self):
        return f"WeierstrassCurve({self.field!r}, a={self.coefficients_json()})"

    def __eq__(self, other):
        return (
            isinstance(other, WeierstrassCurve)
            and self.field == other.field
            and all(x == y for x, y in zip(self.coefficients(), other.coefficients()))
        )

    def __hash__(self):
        return hash((self.field, tuple(c.raw for c in self.coefficients())))

    # -- invariants ------------------------------------------------------------

    @cached_property
    def b_invariants(self):
        a1, a2, a3, a4, a6 = self.coefficients()
        b2 = a1 * a1 + 4 * a2
        b4 = 2 * a4 + a1 * a3
        b6 = a3 * a3 + 4 * a6
        b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4
        return b2, b4, b6, b8

    @cached_property
    def c_invariants(self):
        b2, b4, b6, _ = self.b_invariants
        c4 = b2 * b2 - 24 * b4
        c6 = -(b2**3) + 36 * b2 * b4 - 216 * b6
        return c4, c6

    @cached_property
    def discriminant(self) -> FieldElement:
        b2, b4, b6, b8 = self.b_invariants
        return -b2 * b2 * b8 - 8 * b4**3 - 27 * b6 * b6 + 9 * b2 * b4 * b6

    @cached_property
    def j_invariant(self) -> FieldElement:
        c4, _ = self.c_invariants
        return c4**3 / self.discriminant

    def is_isomorphic(self, other: "WeierstrassCurve") -> bool:
        """Isomorphism over the common base field, by searching (r, s, t, u)."""
        if self.field != other.field or self.j_invariant != other.j_invariant:
            return False
        return self.find_isomorphism(other) is not None

    def find_isomorphism(self, other: "WeierstrassCurve"):
        """Return ``(u, r, s, t)`` with x = u^2 x' + r, y = u^3 y' + s u^2 x' + t, or None.

        Brute force over u, r, s; t is then determined by a linear condition
        on a3 (or checked exhaustively when the coefficient of t vanishes).
        """
        F = self.field
        a1, a2, a3, a4, a6 = self.coefficients()
        elems = list(F.elements())
        for u in elems:
            if u.is_zero():
                continue
            for s in elems:
                # u a1' = a1 + 2s
                if u * other.a1 != a1 + 2 * s:
                    continue
                for r in elems:
                    # u^2 a2' = a2 - s a1 + 3r - s^2
                    if u**2 * other.a2 != a2 - s * a1 + 3 * r - s * s:
                        continue
                    for t in elems:
                        if u**3 * other.a3 != a3 + r * a1 + 2 * t:
                            continue
                        if u**4 * other.a4 != a4 - s * a3 + 2 * r * a2 - (t + r * s) * a1 + 3 * r * r - 2 * s * t:
                            continue
                        if u**6 * other.a6 != a6 + r * a4 + r * r * a2 + r**3 - t * a3 - t * t - r * t * a1:
                            continue
                        return u, r, s, t
        return None

    # -- points ----------------------------------------------------------------

    def is_on_curve(self, P: Point) -> bool:
        if P.is_infinity:
            return True
        x, y = P.x, P.y
        lhs = y * y + self.a1 * x * y + self.a3 * y
        rhs = x * x * x + self.a2 * x * x + self.a4 * x + self.a6
        return lhs == rhs

    def point(self, x, y, field: Field | None = None) -> Point:
        F = field or self.field
        P = Point(F(x), F(y))
        if not self.is_on_curve(P):
            raise InvalidInput(f"{P} is not on {self}")
        return P

    def lift_x(self, x: FieldElement) -> list[Point]:
        """Points with the given x-coordinate, in canonical y order."""
        F = x.field
        B = self.a1 * x + self.a3
        C = -(x * x * x + self.a2 * x * x + self.a4 * x + self.a6)
        return [Point(x, y) for y in F.solve_quadratic(B, C)]

    def points(self, field: Field | None = None):
        """Affine points over ``field`` (default: the base field) in canonical order."""
        F = field or self.field
        for x in F.elements():
            yield from self.lift_x(x)

    def neg(self, P: Point) -> Point:
        if P.is_infinity:
            return P
        return Point(P.x, -P.y - self.a1 * P.x - self.a3)

    def add(self, P: Point, Q: Point) -> Point:
        if P.is_infinity:
            return Q
        if Q.is_infinity:
            return P
        a1, a2, a3, a4, _ = self.coefficients()
        x1, y1, x2, y2 = P.x, P.y, Q.x, Q.y
        if x1 == x2:
            if (y1 + y2 + a1 * x2 + a3).is_zero():
                return O
            lam = (3 * x1 * x1 + 2 * a2 * x1 + a4 - a1 * y1) / (2 * y1 + a1 * x1 + a3)
        else:
            lam = (y2 - y1) / (x2 - x1)
        nu = y1 - lam * x1
        x3 = lam * lam + a1 * lam - a2 - x1 - x2
        y3 = -(lam + a1) * x3 - nu - a3
        return Point(x3, y3)

    def sub(self, P: Point, Q: Point) -> Point:
        return self.add(P, self.neg(Q))

    def mul(self, k: int, P: Point) -> Point:
        if k < 0:
            k, P = -k, self.neg(P)
        R = O
        while k:
            if k & 1:
                R = self.add(R, P)
            k >>= 1
            if k:
                P = self.add(P, P)
        return R

    # -- counting --------------------------------------------------------------

    def _count_enumerate(self) -> int:
        F = self.field
        total = 1
        odd = F.p != 2
        four = F.from_value(4)
        for xr in F.raw_elements():
            x = FieldElement(F, xr)
            B = (self.a1 * x + self.a3).raw
            C = (-(x * x * x + self.a2 * x * x + self.a4 * x + self.a6)).raw
            if odd:
                disc = F.sub(F.mul(B, B), F.mul(four, C))
                if disc == F.zero:
                    total += 1
                elif F.is_square_raw(disc):
                    total += 2
            elif B == F.zero:
                total += 1
            elif F.absolute_trace_raw(F.div(C, F.mul(B, B))) == 0:
                total += 2
        return total

    def _count_bsgs(self) -> int:
        q = self.field.order
        lo = q + 1 - math.isqrt(4 * q)
        hi = q + 1 + math.isqrt(4 * q) + 1
        candidates: set[int] | None = None
        for i, P in enumerate(self.points()):
            if i >= 64:
                break
            sols = self._bsgs_multiples(P, lo, hi)
            candidates = sols if candidates is None else candidates & sols
            if len(candidates) == 1:
                return next(iter(candidates))
        return self._count_enumerate()

    def _bsgs_multiples(self, P: Point, lo: int, hi: int) -> set[int]:
        """All N in [lo, hi] with N*P = O."""
        width = hi - lo + 1
        m = math.isqrt(width) + 1
        baby: dict[Point, int] = {}
        R = O
        for j in range(m):
            baby.setdefault(R, j)
            R = self.add(R, P)
        giant = self.neg(self.mul(m, P))
        Q = self.mul(lo, P)
        first = None
        for i in range(m + 1):
            # (lo + i*m + j) P = O  <=>  jP = -(lo + i m) P
            target = self.neg(Q)
            if target in baby:
                first = lo + i * m + baby[target]
                break
            Q = self.add(Q, self.neg(giant))
        if first is None:
            return set()
        order = self._order_dividing(P, first)
        start = first - ((first - lo) // order) * order
        return set(range(start, hi + 1, order))

    def _order_dividing(self, P: Point, N: int) -> int:
        order = N
        for ell, e in factorize(N).items():
            for _ in range(e):
                if self.mul(order // ell, P).is_infinity:
                    order //= ell
                else:
                    break
        return order

    @cached_property
    def order(self) -> int:
        """Number of F_q-rational points, including O."""
        q = self.field.order
        if q > SCALE_LIMIT:
            raise ScaleExceeded(f"q = {q} exceeds the point-counting limit {SCALE_LIMIT}")
        if q <= ENUMERATION_LIMIT:
            return self._count_enumerate()
        return self._count_bsgs()

    def point_order(self, P: Point) -> int:
        if P.is_infinity:
            return 1
        N = self.order
        if not self.mul(N, P).is_infinity:
            raise InvalidInput(f"{P} is not an F_q-rational point of {self}")
        return self._order_dividing(P, N)


def group_order(E: WeierstrassCurve) -> int:
    return E.order


def point_order(E: WeierstrassCurve, P: Point) -> int:
    return E.point_order(P)


def on_curve(E: WeierstrassCurve, P: Point) -> bool:
    return E.is_on_curve(P)


def valuation(n: int, ell: int) -> int:
    v = 0
    while n % ell == 0:
        n //= ell
        v += 1
    return v


def nq(q: int, n: int) -> int:
    """The invariant n_q governing existence of elliptic normal bases of degree n."""
    if n < 2:
        raise InvalidInput("n must be at least 2")
    out = 1
    for ell, vn in factorize(n).items():
        if (q - 1) % ell:
            v = vn
        else:
            v = max(2 * valuation(q - 1, ell) + 1, 2 * vn)
        out *= ell**v
    return out


def eval_f(E: WeierstrassCurve, A: Point, B: Point, P: Point) -> FieldElement:
    """Value at P of the function with simple poles at A and B.

    It is the slope of the line through P - A and A - B.
    """
    if A == B:
        raise InvalidInput("f_{A,B} needs A != B")
    if P == A or P == B:
        raise PoleEvaluation(f"{P} is a pole of f_(A,B)")
    PA = E.sub(P, A)
    AB = E.sub(A, B)
    if PA.x == AB.x:
        if PA == AB:
            raise VerticalSlope(f"P - A = A - B = {PA}: tangent slope needed")
        raise VerticalSlope(f"P - A and A - B share x = {PA.x!r}")
    return (PA.y - AB.y) / (PA.x - AB.x)


def _c_sum(E, t, n, P):
    kt = [E.mul(k, t) for k in range(n + 1)]
    return sum((eval_f(E, kt[k], kt[k + 1], P) for k in range(n)), P.x.field.zero_element)


def elliptic_constant_c(E: WeierstrassCurve, t: Point, n: int) -> FieldElement:
    """Sum over k of f_{kt,(k+1)t}, evaluated at two safe points and checked equal.

    Evaluation points avoid the subgroup generated by t, which holds every
    pole and every tangent degeneracy of the summands. When fewer than two
    rational points qualify, points over a quadratic extension are used.
    """
    kernel = [E.mul(k, t) for k in range(n)]
    safe = []
    for P in E.points():
        if P not in kernel:
            safe.append(P)
            if len(safe) == 2:
                break
    if len(safe) < 2:
        F2 = ExtensionField(E.field, first_irreducible(E.field, 2), check=False)
        for P in E.points(F2):
            if all(P != Q for Q in kernel + safe):
                safe.append(P)
                if len(safe) == 2:
                    break
    if len(safe) < 2:
        raise NoSafeEvaluationPoint("no point outside <t> to evaluate the constant")
    values = [_c_sum(E, t, n, P) for P in safe]
    if values[0] != values[1]:
        raise AssertionError(f"sum of f_(kt,(k+1)t) is not constant: {values}")
    return E.field(values[0])
