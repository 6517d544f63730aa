"""Cyclic convolution algebra, special vectors, multiplication rows and complexity."""

from __future__ import annotations

from dataclasses import dataclass, field

from . import linalg, poly
from .curve import eval_f
from .errors import ConsistencyError, LengthMismatch, NotInvertible
from .field import Field, FieldElement


class CyclicVector:
    """Vector of length n over F_q, indexed mod n; stored as raw values."""

    __slots__ = ("field", "raw")

    def __init__(self, field: Field, entries):
        self.field = field
        self.raw = tuple(field(e).raw for e in entries)

    @classmethod
    def unit(cls, field: Field, n: int, k: int = 0) -> "CyclicVector":
        return cls(field, [field.one if i == k % n else field.zero for i in range(n)])

    @classmethod
    def zero(cls, field: Field, n: int) -> "CyclicVector":
        return cls(field, [field.zero] * n)

    def __len__(self):
        return len(self.raw)

    def __getitem__(self, i) -> FieldElement:
        return FieldElement(self.field, self.raw[i % len(self.raw)])

    def __iter__(self):
        return (FieldElement(self.field, r) for r in self.raw)

    def __eq__(self, other):
        if isinstance(other, CyclicVector):
            return self.field == other.field and self.raw == other.raw
        if isinstance(other, (list, tuple)):
            return len(other) == len(self) and all(a == b for a, b in zip(self, other))
        return NotImplemented

    def __hash__(self):
        return hash(self.raw)

    def __repr__(self):
        return f"CyclicVector({self.to_json()})"

    def _check(self, other: "CyclicVector"):
        if len(self) != len(other):
            raise LengthMismatch(f"lengths {len(self)} and {len(other)} differ")
        if self.field != other.field:
            raise LengthMismatch("vectors over different fields")

    def __add__(self, other):
        self._check(other)
        F = self.field
        return CyclicVector(F, [F.add(a, b) for a, b in zip(self.raw, other.raw)])

    def __sub__(self, other):
        self._check(other)
        F = self.field
        return CyclicVector(F, [F.sub(a, b) for a, b in zip(self.raw, other.raw)])

    def __neg__(self):
        F = self.field
        return CyclicVector(F, [F.neg(a) for a in self.raw])

    def scale(self, c) -> "CyclicVector":
        F = self.field
        c = F(c).raw
        return CyclicVector(F, [F.mul(c, a) for a in self.raw])

    def convolve(self, other) -> "CyclicVector":
        self._check(other)
        F, n = self.field, len(self)
        out = [F.zero] * n
        for i, a in enumerate(self.raw):
            if a == F.zero:
                continue
            for j, b in enumerate(other.raw):
                if b != F.zero:
                    m = (i + j) % n
                    out[m] = F.add(out[m], F.mul(a, b))
        return CyclicVector(F, out)

    def componentwise(self, other) -> "CyclicVector":
        self._check(other)
        F = self.field
        return CyclicVector(F, [F.mul(a, b) for a, b in zip(self.raw, other.raw)])

    def shift(self, k: int = 1) -> "CyclicVector":
        """Right cyclic shift: entry m of the result is entry m - k of self."""
        n = len(self)
        return CyclicVector(self.field, [self.raw[(m - k) % n] for m in range(n)])

    def weight(self) -> int:
        return sum(1 for a in self.raw if a != self.field.zero)

    def inverse(self) -> "CyclicVector":
        """Inverse for the convolution product, via extended Euclid modulo X^n - 1."""
        F, n = self.field, len(self)
        modulus = [F.neg(F.one)] + [F.zero] * (n - 1) + [F.one]
        g, s, _ = poly.xgcd(F, poly.trim(F, list(self.raw)), modulus)
        if len(g) != 1:
            gcd = [F.to_json(c) for c in g]
            raise NotInvertible(f"vector is a zero divisor, gcd with X^n - 1 is {gcd}", gcd=gcd)
        s = poly.scale(F, F.inv(g[0]), s)
        return CyclicVector(F, list(s) + [F.zero] * (n - len(s)))

    def to_json(self) -> list:
        return [self.field.to_json(a) for a in self.raw]


def convolve(u: CyclicVector, v: CyclicVector) -> CyclicVector:
    return u.convolve(v)


def componentwise(u: CyclicVector, v: CyclicVector) -> CyclicVector:
    return u.componentwise(v)


def shift(u: CyclicVector, k: int = 1) -> CyclicVector:
    return u.shift(k)


def weight(u: CyclicVector) -> int:
    return u.weight()


def conv_inverse(u: CyclicVector) -> CyclicVector:
    return u.inverse()


def overleft_rk(R: CyclicVector, k: int) -> CyclicVector:
    return R.componentwise(R.shift(k))


def coords(x: FieldElement, params) -> CyclicVector:
    """Coordinates of x in the elliptic normal basis."""
    F = params.base_field
    x = params.extension(x)
    return CyclicVector(F, linalg.vec_mat(F, list(x.raw), params.coordinate_matrix))


def uncoords(v: CyclicVector, params) -> FieldElement:
    K = params.extension
    out = K.zero_element
    for c, al in zip(v, params.basis):
        out = out + c * al
    return out


@dataclass
class SpecialVectors:
    R: CyclicVector
    Rx: CyclicVector
    Rinv: CyclicVector
    iota: CyclicVector


def special_vectors(params) -> SpecialVectors:
    E, t, n, R = params.curve, params.t, params.n, params.R
    F = params.base_field
    O = E.mul(0, t)
    vals, xs = [], []
    for j in range(n):
        P = E.add(R, E.mul(j, t))
        vals.append(params.scalar_a * eval_f(E, O, t, P) + params.scalar_b)
        xs.append(P.x)
    Rv = CyclicVector(F, vals)
    return SpecialVectors(Rv, CyclicVector(F, xs), Rv.inverse(), coords(params.b.x, params))


def complexity_bounds(R: CyclicVector) -> tuple[int, int]:
    n = len(R)
    Rinv = R.inverse()
    S = sum(Rinv.convolve(overleft_rk(R, k)).weight() for k in range(2, n - 1))
    return 3 + S, 3 * n + S


def tensor_multiply(x: CyclicVector, y: CyclicVector, params, sv: SpecialVectors | None = None):
    """Coordinates of the product from the coordinates of the factors."""
    x._check(y)
    sv = sv or special_vectors(params)
    a2 = params.scalar_a * params.scalar_a
    d = (x - x.shift(1)).componentwise(y - y.shift(1))
    first = sv.iota.scale(a2).convolve(d)
    second = sv.R.convolve(x).componentwise(sv.R.convolve(y)) - sv.Rx.scale(a2).convolve(d)
    return first + sv.Rinv.convolve(second)


def direct_row(params, k: int) -> CyclicVector:
    return coords(params.basis[0] * params.basis[k % params.n], params)


def row_k(params, k: int, sv: SpecialVectors | None = None) -> CyclicVector:
    """Coordinates of alpha_0 * alpha_k, checked against direct multiplication."""
    n, F = params.n, params.base_field
    if not 0 <= k < n:
        raise ValueError(f"row index must lie in [0, {n - 1}]")
    sv = sv or special_vectors(params)
    a2 = params.scalar_a * params.scalar_a
    if 2 <= k <= n - 2:
        vec = sv.Rinv.convolve(overleft_rk(sv.R, k))
    elif n >= 3 and k in (1, n - 1):
        # (e - sigma e) * (e_k - sigma e_k) is -1 at position k for k = 1, at 0 for k = n - 1
        d = CyclicVector.unit(F, n, 1 if k == 1 else 0).scale(-a2)
        vec = sv.iota.convolve(d) + sv.Rinv.convolve(overleft_rk(sv.R, k) - sv.Rx.convolve(d))
    else:
        vec = tensor_multiply(CyclicVector.unit(F, n, 0), CyclicVector.unit(F, n, k), params, sv)
    expected = direct_row(params, k)
    if vec != expected:
        raise ConsistencyError(f"row {k}: tensor gives {vec.to_json()}, field product gives {expected.to_json()}")
    return vec


@dataclass
class ComplexityReport:
    n: int
    R: CyclicVector
    Rx: CyclicVector
    Rinv: CyclicVector
    iota: CyclicVector
    middle: list = field(default_factory=list)  # (k, vector)
    rows: dict = field(default_factory=dict)  # "0", "1", "n-1" -> vector
    lower: int = 0
    upper: int = 0
    exact: int | None = None
    M: list = field(default_factory=list)
    flags: list = field(default_factory=list)

    @property
    def middle_sum(self) -> int:
        return sum(v.weight() for _, v in self.middle)

    @property
    def row_weights(self) -> dict:
        return {k: v.weight() for k, v in self.rows.items()}

    def to_json(self) -> dict:
        out = {
            "R": self.R.to_json(),
            "Rx": self.Rx.to_json(),
            "Rinv": self.Rinv.to_json(),
            "iota": self.iota.to_json(),
            "middle": [{"k": k, "vec": v.to_json(), "weight": v.weight()} for k, v in self.middle],
            "middle_sum": self.middle_sum,
            "lower": self.lower,
            "upper": self.upper,
        }
        if self.rows:
            out["rows"] = {k: v.to_json() for k, v in self.rows.items()}
            out["row_weights"] = self.row_weights
        if self.exact is not None:
            out["exact"] = self.exact
        out["M"] = [v.to_json() for v in self.M]
        if self.flags:
            out["flags"] = self.flags
        return out

    def render_table(self) -> str:
        def fmt(v):
            return "(" + ", ".join(str(c) for c in v.to_json()) + ")"

        left = [("R_x", fmt(self.Rx)), ("R", fmt(self.R)), ("R^-1", fmt(self.Rinv))]
        right = [fmt(v) for _, v in self.middle]
        height = max(len(left), len(right))
        left += [("", "")] * (height - len(left))
        right += [""] * (height - len(right))
        w0 = max(len(a) for a, _ in left)
        w1 = max(len(b) for _, b in left)
        header = f"{'':{w0}}  {'':{w1}} || (R^-1 * R<-_k), 2 <= k <= n-2"
        lines = [header, "-" * len(header)]
        for (name, vec), mid in zip(left, right):
            lines.append(f"{name:{w0}}  {vec:{w1}} || {mid}")
        lines.append("")
        lines.append(f"iota = {fmt(self.iota)}")
        for key, v in self.rows.items():
            lines.append(f"row {key:>3} = {fmt(v)}  weight {v.weight()}")
        lines.append(f"middle sum = {self.middle_sum}")
        lines.append(f"bounds: {self.lower} <= C <= {self.upper}")
        if self.exact is not None:
            lines.append(f"exact complexity = {self.exact}")
        if self.M:
            lines.append("M =")
            lines.extend("  " + fmt(v) for v in self.M)
        for flag in self.flags:
            lines.append(f"note: {flag}")
        return "\n".join(lines)


def _reference_flags(report: ComplexityReport, reference: dict) -> list[str]:
    flags = []
    for key in ("lower", "upper", "exact", "middle_sum"):
        if key in reference:
            ours = getattr(report, key)
            if ours is not None and ours != reference[key]:
                flags.append(f"{key} = {ours} differs from the reference value {reference[key]}")
    return flags


def complexity_report(params, exact: bool = True) -> ComplexityReport:
    n = params.n
    sv = special_vectors(params)
    middle = [(k, sv.Rinv.convolve(overleft_rk(sv.R, k))) for k in range(2, n - 1)]
    report = ComplexityReport(n, sv.R, sv.Rx, sv.Rinv, sv.iota, middle)
    report.lower, report.upper = complexity_bounds(sv.R)
    report.M = [overleft_rk(sv.R, k) for k in range(1, n + 1)]
    if exact:
        rows = [row_k(params, k, sv) for k in range(n)]
        report.rows = {"0": rows[0], "1": rows[1], "n-1": rows[n - 1]}
        report.exact = sum(r.weight() for r in rows)
    report.flags = _reference_flags(report, params.reference)
    return report


def exact_complexity(params) -> int:
    return complexity_report(params).exact
