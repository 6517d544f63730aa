"""Elliptic normal basis parameters: curve, torsion point, scalars, lift and basis."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from functools import cached_property

from . import linalg
from .curve import O, Point, WeierstrassCurve, elliptic_constant_c, eval_f, nq
from .errors import (
    DegreeCollapse,
    EnbError,
    FrobeniusConditionFailed,
    InvalidInput,
    KernelOrderMismatch,
    NoAuxiliaryPoint,
    NoGeneratorFound,
    NoScalarSolution,
    NotABasis,
    NoTorsionPoint,
    ParameterSearchExhausted,
)
from .field import GF, ExtensionField, Field, FieldElement, poly_irreducible, prime_power
from .isogeny import IsogenyData, preimage_poly, velu_quotient

DEFAULT_BUDGET_CURVES = 10**6
DEFAULT_BUDGET_POINTS = 10**4


class InvalidAuxiliaryPoint(InvalidInput):
    pass


@dataclass
class EnbParams:
    q: int
    n: int
    curve: WeierstrassCurve
    t: Point
    isogeny: IsogenyData = field(repr=False)
    a_point: Point
    modulus: list = field(repr=False)
    extension: ExtensionField = field(repr=False)
    b: Point = field(repr=False)
    scalar_c: FieldElement
    scalar_a: FieldElement
    scalar_b: FieldElement
    R: Point
    basis: list = field(repr=False)
    reference: dict = field(default_factory=dict, repr=False)

    @property
    def base_field(self) -> Field:
        return self.curve.field

    @property
    def nq(self) -> int:
        return nq(self.q, self.n)

    @property
    def nq_condition(self) -> bool:
        """Whether n_q <= sqrt(q); advisory only."""
        return self.nq**2 <= self.q

    @cached_property
    def coordinate_matrix(self):
        """Inverse of the matrix whose rows are the basis elements over F_q."""
        F = self.base_field
        return linalg.inverse(F, [list(al.raw) for al in self.basis])

    def structural_checks(self) -> dict[str, bool]:
        E, t, n = self.curve, self.t, self.n
        F = self.base_field
        return {
            "order(t) = n": E.point_order(t) == n,
            "nR != O": not E.mul(n, self.R).is_infinity,
            "phi(b) = b - t": self.b.frobenius() == E.sub(self.b, t),
            "nb != O": not E.mul(n, self.b).is_infinity,
            "a c + n b = 1": self.scalar_a * self.scalar_c + n * self.scalar_b == 1,
            "scalar a != 0": not self.scalar_a.is_zero(),
            "basis independent": linalg.rank(F, [list(al.raw) for al in self.basis]) == n,
            "basis Frobenius-cyclic": all(
                self.basis[k].frobenius() == self.basis[(k + 1) % n] for k in range(n)
            ),
        }

    def to_json(self) -> dict:
        K = self.extension
        return {
            "q": self.q,
            "n": self.n,
            "curve": self.curve.to_json(),
            "t": self.t.to_json(),
            "isogenous_curve": self.isogeny.codomain.to_json(),
            "a_point": self.a_point.to_json(),
            "modulus": [c.to_json() for c in self.modulus],
            "b": self.b.to_json(),
            "scalar_c": self.scalar_c.to_json(),
            "scalar_a": self.scalar_a.to_json(),
            "scalar_b": self.scalar_b.to_json(),
            "R": self.R.to_json(),
            "basis": [K.to_json(al.raw) for al in self.basis],
            "nq": self.nq,
            "nq_condition": self.nq_condition,
            **({"reference": self.reference} if self.reference else {}),
        }


def _point_from_json(E: WeierstrassCurve, data, field: Field | None = None) -> Point:
    if data == "O" or data is None:
        return O
    return E.point(data[0], data[1], field)


def find_torsion_point(E: WeierstrassCurve, n: int) -> Point:
    if n < 2:
        raise InvalidInput("n must be at least 2")
    if E.order % n:
        raise NoTorsionPoint(f"{n} does not divide #E = {E.order}")
    for P in E.points():
        if E.point_order(P) == n:
            return P
    raise NoTorsionPoint(f"E(F_q) has no point of order {n}")


def choose_scalars(c: FieldElement, n: int, q: int | None = None):
    """Scalars (a, b) with a*c + n*b = 1, preferring b = 0."""
    F = c.field
    if not c.is_zero():
        return c.inverse(), F.zero_element
    nn = F(n)
    if nn.is_zero():
        raise NoScalarSolution(f"c = 0 and p divides n = {n}")
    return F.one_element, (1 - c) / nn


def choose_R(E: WeierstrassCurve, t: Point, n: int) -> Point:
    for P in E.points():
        if not E.mul(n, P).is_infinity:
            return P
    raise NoAuxiliaryPoint(f"every rational point is {n}-torsion")


def check_R(E: WeierstrassCurve, R: Point, n: int) -> Point:
    if not E.is_on_curve(R) or R.is_infinity:
        raise InvalidAuxiliaryPoint("auxiliary point is not an affine point of E")
    if E.mul(n, R).is_infinity:
        raise InvalidAuxiliaryPoint("auxiliary point is n-torsion")
    return R


def _coset_representatives(E: WeierstrassCurve, t: Point, n: int):
    kernel = [E.mul(k, t) for k in range(n)]
    covered = set(kernel)
    yield O
    for P in E.points():
        if P not in covered:
            covered.update(E.add(P, Q) for Q in kernel)
            yield P


def lift_b(E: WeierstrassCurve, t: Point, n: int, K: ExtensionField):
    """Points b over K = F_q[X]/(h) with phi(b) = b - t and nb != O.

    Starts from b0 = (X, y) with X the class of the indeterminate, rescales
    it so that Frobenius acts as translation by -t, then yields b0 + P for P
    running over representatives of E(F_q) / <t> in canonical order.
    """
    X = K([0, 1])
    lifts = E.lift_x(X)
    if not lifts:
        raise FrobeniusConditionFailed("X is not the x-coordinate of a point of E over F_q^n")
    b0 = lifts[0]
    shift = E.sub(b0.frobenius(), b0)
    kernel = [E.mul(k, t) for k in range(n)]
    if shift not in kernel:
        raise FrobeniusConditionFailed("phi(b) - b is not in <t>")
    k = kernel.index(shift)
    if math.gcd(k, n) != 1:
        raise FrobeniusConditionFailed(f"phi(b) - b = {k} t does not generate <t>")
    m = (-pow(k, -1, n)) % n
    b0 = E.mul(m, b0)
    for P in _coset_representatives(E, t, n):
        b = E.add(b0, P)
        if E.mul(n, b).is_infinity:
            continue
        yield b


def build_basis(E: WeierstrassCurve, t: Point, b: Point, scalar_a, scalar_b, n: int) -> list:
    kt = [E.mul(k, t) for k in range(n + 1)]
    basis = [scalar_a * eval_f(E, kt[k], kt[k + 1], b) + scalar_b for k in range(n)]
    F = E.field
    if linalg.rank(F, [list(al.raw) for al in basis]) != n:
        raise NotABasis("the elliptic periods are linearly dependent")
    for k in range(n):
        if basis[k].frobenius() != basis[(k + 1) % n]:
            raise NotABasis("basis is not Frobenius-cyclic")
    return basis


def find_generator_points(iso: IsogenyData, budget: int | None = None):
    """Rational points of E' whose preimage polynomial is irreducible, in canonical order."""
    F = iso.domain.field
    for i, a in enumerate(iso.codomain.points()):
        if budget is not None and i >= budget:
            return
        try:
            h = preimage_poly(iso, a)
        except DegreeCollapse:
            continue
        if poly_irreducible(h, F):
            yield a, h


def enumerate_curves(F: Field):
    """Non-singular curves in lexicographic order of (a1, a2, a3, a4, a6)."""
    elems = list(F.elements())
    for coeffs in itertools.product(elems, repeat=5):
        E = WeierstrassCurve(F, *coeffs, check=False)
        if not E.discriminant.is_zero():
            yield E


def _assemble(E, t, n, R, scalars, iso, a_candidates, b_override=None, reference=None):
    c = elliptic_constant_c(E, t, n)
    if scalars is None:
        sa, sb = choose_scalars(c, n)
    else:
        sa, sb = (E.field(s) for s in scalars)
        if sa.is_zero() or sa * c + n * sb != 1:
            raise InvalidInput(f"scalars ({sa}, {sb}) do not satisfy a*c + n*b = 1 with c = {c}")
    last_error: EnbError | None = None
    for a, h in a_candidates:
        K = ExtensionField(E.field, h, check=False)
        if b_override is not None:
            candidates = [_point_from_json(E, b_override, K)]
        else:
            try:
                candidates = list(lift_b(E, t, n, K))
            except FrobeniusConditionFailed as exc:
                last_error = exc
                continue
        for b in candidates:
            try:
                basis = build_basis(E, t, b, sa, sb, n)
            except NotABasis as exc:
                last_error = exc
                continue
            q = E.field.order
            return EnbParams(q, n, E, t, iso, a, h, K, b, c, sa, sb, R, basis, reference or {})
    if last_error is not None:
        raise last_error
    raise NoGeneratorFound("no rational point of E' has an irreducible preimage")


def params_computation(
    q: int,
    n: int,
    overrides: dict | None = None,
    budget_curves: int = DEFAULT_BUDGET_CURVES,
    budget_points: int = DEFAULT_BUDGET_POINTS,
) -> EnbParams:
    """Deterministic search for an elliptic normal basis of F_{q^n} / F_q.

    ``overrides`` follows the ``EnbParams.to_json`` layout; any subset of
    ``curve``, ``t``, ``R``, ``a_point``, ``b``, ``scalar_a``/``scalar_b``
    pins that part of the search.
    """
    if prime_power(q) is None:
        raise InvalidInput(f"q must be a prime power, got {q}")
    if n < 2:
        raise InvalidInput("n must be at least 2")
    ov = overrides or {}
    if "q" in ov and ov["q"] != q or "n" in ov and ov["n"] != n:
        raise InvalidInput("overrides were produced for a different (q, n)")
    reference = ov.get("reference") or {}

    if "curve" in ov:
        E = WeierstrassCurve.from_json(ov["curve"])
        if E.field.order != q:
            raise InvalidInput(f"override curve is defined over F_{E.field.order}, not F_{q}")
        curves = [E]
        pinned = True
    else:
        F = GF(q)
        # an auxiliary point outside E[n] needs #E to be a proper multiple of n
        if 2 * n > q + 1 + math.isqrt(4 * q):
            raise ParameterSearchExhausted(f"no curve over F_{q} has order a proper multiple of {n}")
        curves = enumerate_curves(F)
        pinned = False

    scalars = None
    if "scalar_a" in ov or "scalar_b" in ov:
        scalars = (ov.get("scalar_a", 1), ov.get("scalar_b", 0))

    for i, E in enumerate(curves):
        if i >= budget_curves:
            break
        try:
            if E.order % n:
                raise NoTorsionPoint(f"{n} does not divide #E = {E.order}")
            if "t" in ov:
                t = _point_from_json(E, ov["t"])
                if E.point_order(t) != n:
                    raise KernelOrderMismatch(f"order of {t} is {E.point_order(t)}, expected {n}")
            else:
                t = find_torsion_point(E, n)
            R = check_R(E, _point_from_json(E, ov["R"]), n) if "R" in ov else choose_R(E, t, n)
            iso = velu_quotient(E, t, n)
            if "a_point" in ov:
                a = _point_from_json(iso.codomain, ov["a_point"])
                h = preimage_poly(iso, a)
                if not poly_irreducible(h, E.field):
                    raise NoGeneratorFound(f"preimage polynomial of {a} is reducible")
                a_candidates = [(a, h)]
            else:
                a_candidates = find_generator_points(iso, budget_points)
            return _assemble(E, t, n, R, scalars, iso, a_candidates, ov.get("b"), reference)
        except EnbError:
            if pinned:
                raise
            continue
    raise ParameterSearchExhausted(f"no elliptic normal basis found for q={q}, n={n}")


def params_from_json(data: dict, **budgets) -> EnbParams:
    """Replay a serialized parameter set."""
    return params_computation(data["q"], data["n"], data, **budgets)
