"""Exact arithmetic in F_p, F_q = F_p[X]/(m) and towers F_q[X]/(h).

A field object owns the arithmetic on *raw* values: plain ints for a
prime field and tuples of base-field raw values (lowest degree first) for
an extension. ``FieldElement`` wraps a raw value together with its field
and provides the operator overloads; elements of a subfield are embedded
automatically when mixed with elements of an extension.
"""

from __future__ import annotations

import itertools
from functools import cached_property

from . import poly
from .errors import (
    CompositeCharacteristic,
    DivisionByZero,
    InvalidInput,
    ReducibleModulus,
)

MAX_CHARACTERISTIC = 2**31


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def factorize(n: int) -> dict[int, int]:
    """Trial-division factorization; fine for the word-sized inputs used here."""
    if n < 1:
        raise InvalidInput(f"cannot factor {n}")
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def prime_power(q: int) -> tuple[int, int] | None:
    """Return ``(p, k)`` with ``q = p**k``, or None if q is not a prime power."""
    if q < 2:
        return None
    f = factorize(q)
    if len(f) != 1:
        return None
    ((p, k),) = f.items()
    return p, k


class Field:
    """Behaviour shared by prime fields and extension fields."""

    p: int
    order: int
    degree: int  # over the immediate base (1 for a prime field)
    base: "Field | None"

    def __call__(self, value) -> "FieldElement":
        if isinstance(value, FieldElement):
            if value.field == self:
                return value
            if self.is_subfield_of(value.field):
                return FieldElement(self, self.descend(value))
            return FieldElement(self, self.lift(value))
        return FieldElement(self, self.from_value(value))

    def __eq__(self, other):
        return isinstance(other, Field) and self.key == other.key

    def __hash__(self):
        return hash(self.key)

    @property
    def characteristic(self) -> int:
        return self.p

    @property
    def absolute_degree(self) -> int:
        d, F = 1, self
        while F.base is not None:
            d *= F.degree
            F = F.base
        return d

    @property
    def zero_element(self) -> "FieldElement":
        return FieldElement(self, self.zero)

    @property
    def one_element(self) -> "FieldElement":
        return FieldElement(self, self.one)

    def tower(self) -> list["Field"]:
        """This field followed by its bases down to the prime field."""
        out, F = [], self
        while F is not None:
            out.append(F)
            F = F.base
        return out

    def is_subfield_of(self, other: "Field") -> bool:
        return self in other.tower()

    def lift(self, x: "FieldElement"):
        """Raw value of the image of ``x`` (from a subfield) in this field."""
        if x.field == self:
            return x.raw
        if self.base is None or not x.field.is_subfield_of(self):
            raise InvalidInput(f"cannot embed an element of {x.field} into {self}")
        return self.embed_base(self.base.lift(x))

    def descend(self, x: "FieldElement"):
        """Raw value of ``x`` (from a superfield) if it lies in this field."""
        F, raw = x.field, x.raw
        while F != self:
            if F.base is None or any(c != F.base.zero for c in raw[1:]):
                raise InvalidInput(f"{x} does not lie in {self}")
            F, raw = F.base, raw[0]
        return raw

    def elements(self):
        """All elements in canonical (lexicographic) order."""
        for raw in self.raw_elements():
            yield FieldElement(self, raw)

    def random(self, rng) -> "FieldElement":
        return FieldElement(self, self.random_raw(rng))

    def pow(self, a, e: int):
        if e < 0:
            a, e = self.inv(a), -e
        result = self.one
        while e:
            if e & 1:
                result = self.mul(result, a)
            e >>= 1
            if e:
                a = self.mul(a, a)
        return result

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    # -- square roots and quadratic equations ---------------------------------

    def is_square_raw(self, a) -> bool:
        if a == self.zero or self.p == 2:
            return True
        return self.pow(a, (self.order - 1) // 2) == self.one

    @cached_property
    def _nonresidue(self):
        for raw in self.raw_elements():
            if raw != self.zero and not self.is_square_raw(raw):
                return raw
        raise AssertionError("no quadratic non-residue")

    def sqrt_raw(self, a):
        """A square root of ``a`` or None if ``a`` is not a square."""
        if a == self.zero:
            return self.zero
        Q = self.order
        if self.p == 2:
            return self.pow(a, Q // 2)
        if not self.is_square_raw(a):
            return None
        # Tonelli-Shanks
        s, m = 0, Q - 1
        while m % 2 == 0:
            s, m = s + 1, m // 2
        c = self.pow(self._nonresidue, m)
        x = self.pow(a, (m + 1) // 2)
        t = self.pow(a, m)
        while t != self.one:
            i, t2 = 0, t
            while t2 != self.one:
                t2 = self.mul(t2, t2)
                i += 1
            b = c
            for _ in range(s - i - 1):
                b = self.mul(b, b)
            x = self.mul(x, b)
            c = self.mul(b, b)
            t = self.mul(t, c)
            s = i
        return x

    def absolute_trace_raw(self, a) -> int:
        """Trace of ``a`` down to F_p, returned as an int."""
        acc, y = self.zero, a
        for _ in range(self.absolute_degree):
            acc = self.add(acc, y)
            y = self.pow(y, self.p)
        return self.prime_component(acc)

    def solve_quadratic(self, B, C) -> list["FieldElement"]:
        """Roots of ``Y^2 + B*Y + C`` in this field, sorted canonically."""
        B, C = self(B).raw, self(C).raw
        if self.p != 2:
            disc = self.sub(self.mul(B, B), self.mul(self.from_value(4), C))
            r = self.sqrt_raw(disc)
            if r is None:
                return []
            half = self.inv(self.from_value(2))
            roots = {self.mul(self.sub(r, B), half), self.mul(self.sub(self.neg(r), B), half)}
        elif B == self.zero:
            roots = {self.sqrt_raw(C)}
        else:
            # Y = B*Z turns it into Z^2 + Z = C/B^2, an F_2-linear system
            c = self.div(C, self.mul(B, B))
            z = self._solve_artin_schreier(c)
            if z is None:
                return []
            roots = {self.mul(B, z), self.mul(B, self.add(z, self.one))}
        return [FieldElement(self, r) for r in sorted(roots)]

    def _solve_artin_schreier(self, c):
        m = self.absolute_degree
        cols = []
        for i in range(m):
            e = self.unflatten([1 if j == i else 0 for j in range(m)])
            cols.append(self.flatten(self.add(self.mul(e, e), e)))
        rows = [[cols[j][i] for j in range(m)] + [v] for i, v in enumerate(self.flatten(c))]
        sol = _solve_gf2(rows, m)
        return None if sol is None else self.unflatten(sol)


def _solve_gf2(rows, m):
    rows = [r[:] for r in rows]
    pivots, r = [], 0
    for col in range(m):
        piv = next((i for i in range(r, len(rows)) if rows[i][col]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        for i in range(len(rows)):
            if i != r and rows[i][col]:
                rows[i] = [a ^ b for a, b in zip(rows[i], rows[r])]
        pivots.append(col)
        r += 1
    if any(row[m] for row in rows[r:]):
        return None
    sol = [0] * m
    for i, col in enumerate(pivots):
        sol[col] = rows[i][m]
    return sol


class PrimeField(Field):
    def __init__(self, p: int):
        if p < 2 or not is_prime(p):
            raise CompositeCharacteristic(f"{p} is not prime")
        if p >= MAX_CHARACTERISTIC:
            raise InvalidInput(f"characteristic {p} exceeds the word-size limit")
        self.p = p
        self.order = p
        self.degree = 1
        self.base = None
        self.key = (p,)
        self.zero = 0
        self.one = 1

    def __repr__(self):
        return f"GF({self.p})"

    def from_value(self, v):
        if isinstance(v, bool) or not isinstance(v, int):
            if isinstance(v, (list, tuple)) and len(v) == 1:
                return self.from_value(v[0])
            raise InvalidInput(f"cannot convert {v!r} into {self}")
        return v % self.p

    def embed_base(self, raw):
        raise AssertionError("prime field has no base")

    def raw_elements(self):
        return range(self.p)

    def random_raw(self, rng):
        return rng.randrange(self.p)

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def neg(self, a):
        return -a % self.p

    def mul(self, a, b):
        return a * b % self.p

    def inv(self, a):
        if a == 0:
            raise DivisionByZero("inverse of zero")
        return pow(a, -1, self.p)

    def pow(self, a, e):
        if e < 0:
            return pow(self.inv(a), -e, self.p)
        return pow(a, e, self.p)

    def frobenius_raw(self, a, k=1):
        return a

    def prime_component(self, a):
        return a

    def flatten(self, a):
        return [a]

    def unflatten(self, bits):
        return bits[0] % self.p

    def to_json(self, a):
        return a


class ExtensionField(Field):
    """``base[X] / (modulus)`` for a monic irreducible modulus."""

    def __init__(self, base: Field, modulus, check: bool = True):
        mod = [base(c).raw for c in modulus]
        mod = poly.trim(base, mod)
        if len(mod) < 3:
            raise InvalidInput("modulus must have degree >= 2")
        if mod[-1] != base.one:
            raise InvalidInput("modulus must be monic")
        if check and not _irreducible_raw(base, mod):
            raise ReducibleModulus(f"modulus {modulus} is reducible over {base}")
        self.base = base
        self.modulus = mod
        self.degree = len(mod) - 1
        self.p = base.p
        self.order = base.order**self.degree
        self.key = (base.key, tuple(mod))
        self.zero = (base.zero,) * self.degree
        self.one = (base.one,) + (base.zero,) * (self.degree - 1)
        self._fast = isinstance(base, PrimeField)

    def __repr__(self):
        return f"{self.base!r}[X]/({self.modulus})"

    def from_value(self, v):
        B = self.base
        if isinstance(v, (list, tuple)):
            coeffs = [B.from_value(c) if not isinstance(c, FieldElement) else B(c).raw for c in v]
            if len(coeffs) > self.degree:
                coeffs = poly.mod(B, poly.trim(B, coeffs), self.modulus)
            return tuple(coeffs) + (B.zero,) * (self.degree - len(coeffs))
        return self.embed_base(B.from_value(v))

    def embed_base(self, raw):
        return (raw,) + (self.base.zero,) * (self.degree - 1)

    def raw_elements(self):
        return itertools.product(self.base.raw_elements(), repeat=self.degree)

    def random_raw(self, rng):
        return tuple(self.base.random_raw(rng) for _ in range(self.degree))

    def add(self, a, b):
        if self._fast:
            p = self.p
            return tuple((x + y) % p for x, y in zip(a, b))
        return tuple(self.base.add(x, y) for x, y in zip(a, b))

    def sub(self, a, b):
        if self._fast:
            p = self.p
            return tuple((x - y) % p for x, y in zip(a, b))
        return tuple(self.base.sub(x, y) for x, y in zip(a, b))

    def neg(self, a):
        return tuple(self.base.neg(x) for x in a)

    def mul(self, a, b):
        d = self.degree
        if self._fast:
            p = self.p
            prod = [0] * (2 * d - 1)
            for i, x in enumerate(a):
                if x:
                    for j, y in enumerate(b):
                        prod[i + j] += x * y
            m = self.modulus
            for i in range(2 * d - 2, d - 1, -1):
                c = prod[i] % p
                if c:
                    for j in range(d):
                        prod[i - d + j] -= c * m[j]
            return tuple(c % p for c in prod[:d])
        B = self.base
        prod = poly.mod(B, poly.mul(B, list(a), list(b)), self.modulus)
        return tuple(prod) + (B.zero,) * (d - len(prod))

    def inv(self, a):
        B = self.base
        g, s, _ = poly.xgcd(B, poly.trim(B, a), self.modulus)
        if len(g) != 1:
            raise DivisionByZero("inverse of zero")
        return tuple(s) + (B.zero,) * (self.degree - len(s))

    def frobenius_raw(self, a, k=1):
        """``a ** (|base| ** k)``."""
        for _ in range(k % self.degree):
            a = self.pow(a, self.base.order)
        return a

    def prime_component(self, a):
        return self.base.prime_component(a[0])

    def flatten(self, a):
        out = []
        for c in a:
            out.extend(self.base.flatten(c))
        return out

    def unflatten(self, bits):
        w = self.base.absolute_degree
        return tuple(self.base.unflatten(bits[i * w:(i + 1) * w]) for i in range(self.degree))

    def to_json(self, a):
        return [self.base.to_json(c) for c in a]


class FieldElement:
    __slots__ = ("field", "raw")

    def __init__(self, field: Field, raw):
        self.field = field
        self.raw = raw

    def _pair(self, other):
        if isinstance(other, FieldElement):
            if other.field == self.field:
                return self.field, self.raw, other.raw
            if other.field.is_subfield_of(self.field):
                return self.field, self.raw, self.field.lift(other)
            if self.field.is_subfield_of(other.field):
                return other.field, other.field.lift(self), other.raw
            raise InvalidInput(f"elements of unrelated fields {self.field} and {other.field}")
        if isinstance(other, int) and not isinstance(other, bool):
            return self.field, self.raw, self.field.from_value(other)
        return None

    def __add__(self, other):
        t = self._pair(other)
        if t is None:
            return NotImplemented
        F, a, b = t
        return FieldElement(F, F.add(a, b))

    __radd__ = __add__

    def __sub__(self, other):
        t = self._pair(other)
        if t is None:
            return NotImplemented
        F, a, b = t
        return FieldElement(F, F.sub(a, b))

    def __rsub__(self, other):
        t = self._pair(other)
        if t is None:
            return NotImplemented
        F, a, b = t
        return FieldElement(F, F.sub(b, a))

    def __mul__(self, other):
        t = self._pair(other)
        if t is None:
            return NotImplemented
        F, a, b = t
        return FieldElement(F, F.mul(a, b))

    __rmul__ = __mul__

    def __truediv__(self, other):
        t = self._pair(other)
        if t is None:
            return NotImplemented
        F, a, b = t
        return FieldElement(F, F.div(a, b))

    def __rtruediv__(self, other):
        t = self._pair(other)
        if t is None:
            return NotImplemented
        F, a, b = t
        return FieldElement(F, F.div(b, a))

    def __neg__(self):
        return FieldElement(self.field, self.field.neg(self.raw))

    def __pow__(self, e: int):
        return FieldElement(self.field, self.field.pow(self.raw, e))

    def inverse(self) -> "FieldElement":
        return FieldElement(self.field, self.field.inv(self.raw))

    def frobenius(self, k: int = 1) -> "FieldElement":
        """``x ** (q ** k)`` where q is the order of the immediate base field."""
        return FieldElement(self.field, self.field.frobenius_raw(self.raw, k))

    def sqrt(self) -> "FieldElement | None":
        r = self.field.sqrt_raw(self.raw)
        return None if r is None else FieldElement(self.field, r)

    def is_square(self) -> bool:
        return self.field.is_square_raw(self.raw)

    def is_zero(self) -> bool:
        return self.raw == self.field.zero

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        t = self._pair(other)
        if t is None:
            return NotImplemented
        _, a, b = t
        return a == b

    def __ne__(self, other):
        eq = self.__eq__(other)
        return eq if eq is NotImplemented else not eq

    def __hash__(self):
        return hash(self.raw)

    def __lt__(self, other):
        return self.raw < other.raw

    def __int__(self):
        if not isinstance(self.field, PrimeField):
            raise TypeError("only prime-field elements convert to int")
        return self.raw

    def coeffs(self) -> list["FieldElement"]:
        """Coordinates over the immediate base field."""
        if self.field.base is None:
            return [self]
        return [FieldElement(self.field.base, c) for c in self.raw]

    def to_json(self):
        return self.field.to_json(self.raw)

    def __repr__(self):
        return f"{self.field.to_json(self.raw)}"


def make_prime_field(p: int) -> PrimeField:
    return PrimeField(p)


def make_extension(base: Field, modulus) -> ExtensionField:
    return ExtensionField(base, modulus)


def _irreducible_raw(F: Field, h) -> bool:
    d = len(h) - 1
    if d < 1:
        return False
    if d == 1:
        return True
    q = F.order
    X = [F.zero, F.one]
    h = poly.monic(F, h)

    def x_q_power(k):
        r = X
        for _ in range(k):
            r = poly.powmod(F, r, q, h)
        return r

    if poly.sub(F, x_q_power(d), X):
        return False
    for ell in factorize(d):
        g = poly.gcd(F, h, poly.sub(F, x_q_power(d // ell), X))
        if len(g) != 1:
            return False
    return True


def poly_irreducible(h, base: Field) -> bool:
    """Rabin's test: X^{q^d} = X mod h and gcd(X^{q^{d/l}} - X, h) = 1 for primes l | d."""
    raw = poly.trim(base, [base(c).raw for c in h])
    return _irreducible_raw(base, raw)


def first_irreducible(base: Field, d: int):
    """First monic irreducible polynomial of degree d in canonical order."""
    for tail in base.raw_elements() if d == 1 else itertools.product(base.raw_elements(), repeat=d):
        coeffs = list(tail) if d > 1 else [tail]
        cand = coeffs + [base.one]
        if _irreducible_raw(base, cand):
            return cand
    raise AssertionError("no irreducible polynomial found")


def GF(q: int) -> Field:
    """F_q for a prime power q, built over F_p with the first irreducible modulus."""
    pk = prime_power(q)
    if pk is None:
        raise InvalidInput(f"q must be a prime power, got {q}")
    p, k = pk
    Fp = PrimeField(p)
    if k == 1:
        return Fp
    return ExtensionField(Fp, first_irreducible(Fp, k), check=False)
