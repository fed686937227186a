"""Exact arithmetic in the finite fields GF(p^m).

Elements are stored as coefficient vectors over GF(p) in the polynomial
basis 1, x, ..., x^(m-1).  Every vector also has an integer code
``sum(c_i * p**i)``; the code is what the projective machinery uses, via
precomputed addition/multiplication tables.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property, lru_cache


class FieldError(ValueError):
    pass


class FieldMismatchError(FieldError):
    """Raised when combining elements of two different fields."""


# Fixed irreducible polynomials, coefficients low degree first (monic).
DEFAULT_POLYS = {
    (2, 2): (1, 1, 1),  # x^2 + x + 1
    (2, 3): (1, 1, 0, 1),  # x^3 + x + 1
    (3, 2): (1, 0, 1),  # x^2 + 1
    (2, 4): (1, 1, 0, 0, 1),  # x^4 + x + 1
}
PRIME_FIELDS = (2, 3, 5, 7, 11, 13)


def _is_prime(p):
    return p >= 2 and all(p % d for d in range(2, int(p**0.5) + 1))


def _poly_mod(a, b, p):
    """Remainder of a by monic b over GF(p); coefficients low first."""
    a = list(a)
    db = len(b) - 1
    while len(a) - 1 >= db and any(a):
        while a and a[-1] == 0:
            a.pop()
        if len(a) - 1 < db:
            break
        c = a[-1]
        shift = len(a) - 1 - db
        for i, bc in enumerate(b):
            a[shift + i] = (a[shift + i] - c * bc) % p
        a.pop()
    return a


def is_irreducible(poly, p):
    """Trial division by every monic polynomial of degree 1..deg/2."""
    m = len(poly) - 1
    if m < 1 or poly[-1] % p != 1:
        return False
    if m == 1:
        return True
    for d in range(1, m // 2 + 1):
        for low in itertools.product(range(p), repeat=d):
            divisor = tuple(low) + (1,)
            if not any(_poly_mod(poly, divisor, p)):
                return False
    return True


@dataclass(frozen=True)
class FieldSpec:
    """The field GF(p^m) defined by a monic irreducible polynomial."""

    p: int
    m: int = 1
    poly: tuple = (0, 1)

    def __post_init__(self):
        if not _is_prime(self.p):
            raise FieldError(f"characteristic {self.p} is not prime")
        if self.m < 1:
            raise FieldError("extension degree must be >= 1")
        if self.m == 1:
            object.__setattr__(self, "poly", (0, 1))
        else:
            poly = tuple(int(c) % self.p for c in self.poly)
            if len(poly) != self.m + 1 or not is_irreducible(poly, self.p):
                raise FieldError(f"{poly} is not a monic irreducible of degree {self.m} over GF({self.p})")
            object.__setattr__(self, "poly", poly)

    @property
    def q(self):
        return self.p**self.m

    @property
    def designator(self):
        return str(self.p) if self.m == 1 else f"{self.p}^{self.m}"

    def __repr__(self):
        return f"GF({self.designator})"

    # -- code <-> coefficient vector

    def rep(self, code):
        out = []
        for _ in range(self.m):
            code, r = divmod(code, self.p)
            out.append(r)
        return tuple(out)

    def code(self, rep):
        return sum(c * self.p**i for i, c in enumerate(rep))

    def element(self, value):
        """Build an element from an integer code or a coefficient vector."""
        if isinstance(value, FieldElement):
            if value.spec != self:
                raise FieldMismatchError(f"{value!r} is not in {self!r}")
            return value
        if isinstance(value, int):
            if not 0 <= value < self.q:
                raise FieldError(f"code {value} out of range for {self!r}")
            return FieldElement(self, self.rep(value))
        rep = tuple(int(c) % self.p for c in value)
        if len(rep) != self.m:
            raise FieldError(f"expected {self.m} coefficients, got {len(rep)}")
        return FieldElement(self, rep)

    @property
    def zero(self):
        return self.element(0)

    @property
    def one(self):
        return self.element(1)

    def elements(self):
        return [self.element(c) for c in range(self.q)]

    # -- arithmetic tables on codes

    def _mul_reps(self, a, b):
        prod = [0] * (2 * self.m - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    prod[i + j] = (prod[i + j] + x * y) % self.p
        red = _poly_mod(prod, self.poly, self.p) if self.m > 1 else prod
        red = list(red) + [0] * (self.m - len(red))
        return tuple(red[: self.m])

    @cached_property
    def add_table(self):
        reps = [self.rep(c) for c in range(self.q)]
        return tuple(
            tuple(self.code(tuple((x + y) % self.p for x, y in zip(a, b))) for b in reps) for a in reps
        )

    @cached_property
    def mul_table(self):
        reps = [self.rep(c) for c in range(self.q)]
        return tuple(tuple(self.code(self._mul_reps(a, b)) for b in reps) for a in reps)

    @cached_property
    def neg_table(self):
        return tuple(self.code(tuple((-x) % self.p for x in self.rep(c))) for c in range(self.q))

    @cached_property
    def inv_table(self):
        """inv_table[0] is None."""
        out = [None] * self.q
        for a in range(1, self.q):
            for b in range(1, self.q):
                if self.mul_table[a][b] == 1:
                    out[a] = b
                    break
        return tuple(out)

    @cached_property
    def sub_table(self):
        return tuple(tuple(self.add_table[a][self.neg_table[b]] for b in range(self.q)) for a in range(self.q))

    def frobenius_table(self, j):
        """Codes of a^(p^j) for every code a."""
        return _frobenius_table(self, j % self.m)

    def pow(self, a, e):
        r = 1
        for _ in range(e):
            r = self.mul_table[r][a]
        return r


@lru_cache(maxsize=None)
def _frobenius_table(spec, j):
    e = spec.p**j
    return tuple(spec.pow(a, e) for a in range(spec.q))


@dataclass(frozen=True)
class FieldElement:
    spec: FieldSpec
    rep: tuple

    @property
    def code(self):
        return self.spec.code(self.rep)

    def _other(self, other):
        if isinstance(other, int) and not isinstance(other, bool):
            return self.spec.element(other % self.spec.p)
        if not isinstance(other, FieldElement):
            return NotImplemented
        if other.spec != self.spec:
            raise FieldMismatchError(f"{self.spec!r} vs {other.spec!r}")
        return other

    def __add__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        return self.spec.element(self.spec.add_table[self.code][other.code])

    __radd__ = __add__

    def __neg__(self):
        return self.spec.element(self.spec.neg_table[self.code])

    def __sub__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __mul__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        return self.spec.element(self.spec.mul_table[self.code][other.code])

    __rmul__ = __mul__

    def inv(self):
        if self.code == 0:
            raise ZeroDivisionError(f"zero has no inverse in {self.spec!r}")
        return self.spec.element(self.spec.inv_table[self.code])

    def __truediv__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        return self * other.inv()

    def __pow__(self, e):
        if e < 0:
            return self.inv() ** (-e)
        return self.spec.element(self.spec.pow(self.code, e))

    def frobenius(self, j=1):
        return self.spec.element(self.spec.frobenius_table(j)[self.code])

    def __bool__(self):
        return self.code != 0

    def __repr__(self):
        if self.spec.m == 1:
            return str(self.code)
        terms = []
        for i, c in reversed(list(enumerate(self.rep))):
            if c:
                if i == 0:
                    terms.append(str(c))
                else:
                    mono = "x" if i == 1 else f"x^{i}"
                    terms.append(mono if c == 1 else f"{c}{mono}")
        return " + ".join(terms) or "0"


def add(a, b):
    return a + b


def mul(a, b):
    return a * b


def inv(a):
    return a.inv()


def frobenius(a, j):
    return a.frobenius(j)


def is_automorphism(spec, j):
    """Exhaustively confirm that a -> a^(p^j) is additive, multiplicative and bijective."""
    t = spec.frobenius_table(j)
    if len(set(t)) != spec.q:
        return False
    A, M = spec.add_table, spec.mul_table
    for a in range(spec.q):
        for b in range(spec.q):
            if t[A[a][b]] != A[t[a]][t[b]] or t[M[a][b]] != M[t[a]][t[b]]:
                return False
    return True


def all_automorphisms(spec):
    """Indices j of the automorphisms a -> a^(p^j); verified exhaustively."""
    out = []
    for j in range(spec.m):
        if not is_automorphism(spec, j):
            raise FieldError(f"frobenius power {j} failed the automorphism check")
        out.append(j)
    return out


def field(designator):
    """Parse a field designator such as ``"2"``, ``"16"``, ``"2^4"`` or an int q."""
    if isinstance(designator, FieldSpec):
        return designator
    text = str(designator).strip()
    if "^" in text:
        p, m = (int(t) for t in text.split("^"))
    else:
        q = int(text)
        p, m = _factor_prime_power(q)
    return _field(p, m)


def _factor_prime_power(q):
    for p in range(2, q + 1):
        if q % p == 0:
            m, r = 0, q
            while r % p == 0:
                r //= p
                m += 1
            if r != 1:
                raise FieldError(f"{q} is not a prime power")
            return p, m
    raise FieldError(f"{q} is not a prime power")


@lru_cache(maxsize=None)
def _field(p, m):
    if m == 1:
        if p not in PRIME_FIELDS:
            raise FieldError(f"GF({p}) is not supported; prime fields up to 13 are")
        return FieldSpec(p)
    if (p, m) not in DEFAULT_POLYS:
        raise FieldError(f"GF({p}^{m}) is not supported")
    return FieldSpec(p, m, DEFAULT_POLYS[(p, m)])


def supported_fields():
    return [_field(p, 1) for p in PRIME_FIELDS] + [_field(p, m) for (p, m) in DEFAULT_POLYS]
