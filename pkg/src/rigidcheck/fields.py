"""Exact coefficient fields: the rationals and odd prime fields.

Elements are plain Python values (fractions.Fraction for Q, ints in 0..p-1
for F_p); the field objects only bundle the arithmetic. Characteristic 2 is
rejected at construction because quadratic forms are diagonalized by
congruence, which divides by 2.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import FieldError


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


class Rationals:
    """The field Q with Fraction elements."""

    kind = "Q"
    characteristic = 0
    zero = Fraction(0)
    one = Fraction(1)

    def of(self, x) -> Fraction:
        """Coerce an int, Fraction, or 'a/b' string to an element."""
        if isinstance(x, Fraction):
            return x
        if isinstance(x, (int, str)):
            return Fraction(x)
        raise FieldError(f"cannot coerce {x!r} into Q")

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def inv(self, a):
        if a == 0:
            raise FieldError("division by zero in Q")
        return 1 / Fraction(a)

    def div(self, a, b):
        if b == 0:
            raise FieldError("division by zero in Q")
        return Fraction(a) / b

    def pow(self, a, e: int):
        return Fraction(a) ** e

    def to_str(self, a) -> str:
        return str(a)

    def __eq__(self, other):
        return isinstance(other, Rationals)

    def __hash__(self):
        return hash("Q")

    def __repr__(self):
        return "Q"


class PrimeField:
    """The field F_p for an odd prime p; elements are ints reduced mod p."""

    kind = "Fp"

    def __init__(self, p: int):
        if not is_prime(p):
            raise FieldError(f"{p} is not prime")
        if p == 2:
            raise FieldError("characteristic 2 is not supported")
        self.p = p
        self.characteristic = p
        self.zero = 0
        self.one = 1

    def of(self, x) -> int:
        if isinstance(x, int):
            return x % self.p
        if isinstance(x, Fraction):
            return self.div(x.numerator % self.p, x.denominator % self.p)
        if isinstance(x, str):
            return self.of(Fraction(x))
        raise FieldError(f"cannot coerce {x!r} into F_{self.p}")

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise FieldError(f"division by zero in F_{self.p}")
        return pow(a, self.p - 2, self.p)

    def div(self, a, b):
        return (a * self.inv(b)) % self.p

    def pow(self, a, e: int):
        return pow(a, e, self.p)

    def to_str(self, a) -> str:
        return str(a)

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("Fp", self.p))

    def __repr__(self):
        return f"F{self.p}"


class QuadraticExtensionField:
    """F_{p^2} = F_p[t] / (t^2 - r) for a quadratic nonresidue r mod p.

    Elements are pairs (a, b) of ints in 0..p-1 standing for a + b*t. The
    main consumer is the point-growth dimension oracle, which compares
    point counts over F_p and F_{p^2}.
    """

    kind = "Fp2"

    def __init__(self, p: int, r: int | None = None):
        if not is_prime(p) or p == 2:
            raise FieldError(f"{p} is not an odd prime")
        self.p = p
        self.characteristic = p
        if r is None:
            r = next(n for n in range(2, p)
                     if pow(n, (p - 1) // 2, p) == p - 1)
        if pow(r, (p - 1) // 2, p) != p - 1:
            raise FieldError(f"{r} is a square mod {p}")
        self.r = r % p
        self.zero = (0, 0)
        self.one = (1, 0)
        self.base = PrimeField(p)

    def of(self, x):
        if isinstance(x, tuple) and len(x) == 2:
            return (x[0] % self.p, x[1] % self.p)
        return (self.base.of(x), 0)

    def add(self, a, b):
        return ((a[0] + b[0]) % self.p, (a[1] + b[1]) % self.p)

    def sub(self, a, b):
        return ((a[0] - b[0]) % self.p, (a[1] - b[1]) % self.p)

    def mul(self, a, b):
        return ((a[0] * b[0] + self.r * a[1] * b[1]) % self.p,
                (a[0] * b[1] + a[1] * b[0]) % self.p)

    def neg(self, a):
        return ((-a[0]) % self.p, (-a[1]) % self.p)

    def inv(self, a):
        norm = (a[0] * a[0] - self.r * a[1] * a[1]) % self.p
        if norm == 0:
            raise FieldError(f"division by zero in F_{self.p}^2")
        ninv = pow(norm, self.p - 2, self.p)
        return ((a[0] * ninv) % self.p, (-a[1] * ninv) % self.p)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, e: int):
        out = self.one
        for _ in range(e):
            out = self.mul(out, a)
        return out

    def elements(self):
        """All p^2 elements, row-major."""
        return [(a, b) for a in range(self.p) for b in range(self.p)]

    def to_str(self, a) -> str:
        if a[1] == 0:
            return str(a[0])
        return f"({a[0]}+{a[1]}t)"

    def __eq__(self, other):
        return (isinstance(other, QuadraticExtensionField)
                and other.p == self.p and other.r == self.r)

    def __hash__(self):
        return hash(("Fp2", self.p, self.r))

    def __repr__(self):
        return f"F{self.p}^2"


QQ = Rationals()


def field_from_spec(spec: str):
    """Parse a field label: 'Q' or 'Fp:<p>' (e.g. 'Fp:7')."""
    spec = spec.strip()
    if spec == "Q":
        return QQ
    if spec.startswith("Fp:"):
        try:
            p = int(spec[3:])
        except ValueError:
            raise FieldError(f"bad prime in field spec {spec!r}") from None
        return PrimeField(p)
    raise FieldError(f"unknown field spec {spec!r} (expected 'Q' or 'Fp:<p>')")


def field_spec(field) -> str:
    if field.kind == "Q":
        return "Q"
    return f"Fp:{field.p}"
