"""Sparse exact multivariate polynomials.

Terms are a map from exponent tuples to nonzero coefficients; the zero
polynomial is the empty map and has degree -1. The monomial order used
everywhere (printing, leading terms, Groebner bases) is graded reverse
lexicographic on x0 > x1 > ... > x{n-1}.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from operator import add, sub

from . import linalg
from .errors import RingMismatchError


def grevlex_key(exps):
    """Sort key; larger key means larger monomial in degrevlex."""
    return (sum(exps), tuple(-e for e in reversed(exps)))


def monomial_mul(a, b):
    return tuple(map(add, a, b))


def monomial_divides(a, b):
    """a | b as monomials."""
    for x, y in zip(a, b):
        if x > y:
            return False
    return True


def monomial_div(a, b):
    """a / b; caller guarantees divisibility."""
    return tuple(map(sub, a, b))


def monomial_lcm(a, b):
    return tuple(map(max, a, b))


def monomials_of_degree(nvars: int, d: int) -> list:
    """All exponent tuples of total degree d, largest first in degrevlex."""
    def gen(remaining, slots):
        if slots == 1:
            yield (remaining,)
            return
        for e in range(remaining, -1, -1):
            for rest in gen(remaining - e, slots - 1):
                yield (e,) + rest

    return sorted(gen(d, nvars), key=grevlex_key, reverse=True)


class PolyRing:
    """A coefficient field together with a fixed number of variables."""

    __slots__ = ("field", "nvars")

    def __init__(self, field, nvars: int):
        if nvars < 1:
            raise ValueError("a polynomial ring needs at least one variable")
        self.field = field
        self.nvars = nvars

    def zero(self):
        return Polynomial(self, {})

    def one(self):
        return self.constant(self.field.one)

    def constant(self, c):
        c = self.field.of(c)
        if c == self.field.zero:
            return Polynomial(self, {})
        return Polynomial(self, {(0,) * self.nvars: c})

    def variable(self, i: int):
        if not 0 <= i < self.nvars:
            raise ValueError(f"variable index {i} out of range")
        exps = [0] * self.nvars
        exps[i] = 1
        return Polynomial(self, {tuple(exps): self.field.one})

    def monomial(self, exps, c=1):
        c = self.field.of(c)
        exps = tuple(exps)
        if len(exps) != self.nvars or any(e < 0 for e in exps):
            raise ValueError(f"bad exponent tuple {exps}")
        if c == self.field.zero:
            return Polynomial(self, {})
        return Polynomial(self, {exps: c})

    def from_terms(self, pairs):
        """Build from (exps, coeff) pairs, accumulating duplicates."""
        F = self.field
        terms = {}
        for exps, c in pairs:
            exps = tuple(exps)
            if len(exps) != self.nvars or any(e < 0 for e in exps):
                raise ValueError(f"bad exponent tuple {exps}")
            c = F.of(c)
            acc = F.add(terms.get(exps, F.zero), c)
            if acc == F.zero:
                terms.pop(exps, None)
            else:
                terms[exps] = acc
        return Polynomial(self, terms)

    def __eq__(self, other):
        return (isinstance(other, PolyRing) and other.field == self.field
                and other.nvars == self.nvars)

    def __hash__(self):
        return hash((self.field, self.nvars))

    def __repr__(self):
        return f"PolyRing({self.field!r}, nvars={self.nvars})"


def _dict_mul(F, a, b):
    if len(a) > len(b):
        a, b = b, a
    out = {}
    zero = F.zero
    mul, add = F.mul, F.add
    for m1, c1 in a.items():
        for m2, c2 in b.items():
            m = tuple(x + y for x, y in zip(m1, m2))
            c = mul(c1, c2)
            acc = add(out.get(m, zero), c)
            if acc == zero:
                out.pop(m, None)
            else:
                out[m] = acc
    return out


class Polynomial:
    """Immutable sparse polynomial; do not mutate .terms."""

    __slots__ = ("ring", "terms", "_lm")

    def __init__(self, ring: PolyRing, terms: dict):
        self.ring = ring
        self.terms = terms
        self._lm = None

    # -- basic structure ---------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def homogeneous_degree(self):
        """The common degree if homogeneous (or -1 for zero), else None."""
        if not self.terms:
            return -1
        degs = {sum(e) for e in self.terms}
        return degs.pop() if len(degs) == 1 else None

    def is_homogeneous(self) -> bool:
        return self.homogeneous_degree() is not None

    def homogeneous_component(self, d: int) -> "Polynomial":
        return Polynomial(self.ring,
                          {e: c for e, c in self.terms.items() if sum(e) == d})

    def homogeneous_parts(self) -> dict:
        parts: dict[int, dict] = {}
        for e, c in self.terms.items():
            parts.setdefault(sum(e), {})[e] = c
        return {d: Polynomial(self.ring, t) for d, t in sorted(parts.items())}

    def coefficient(self, exps):
        return self.terms.get(tuple(exps), self.ring.field.zero)

    def constant_term(self):
        return self.terms.get((0,) * self.ring.nvars, self.ring.field.zero)

    def leading_monomial(self):
        if self._lm is None:
            if not self.terms:
                raise ValueError("zero polynomial has no leading monomial")
            self._lm = max(self.terms, key=grevlex_key)
        return self._lm

    def leading_coefficient(self):
        return self.terms[self.leading_monomial()]

    def support_vars(self) -> frozenset:
        used = set()
        for e in self.terms:
            for i, x in enumerate(e):
                if x:
                    used.add(i)
        return frozenset(used)

    # -- arithmetic --------------------------------------------------------

    def _check(self, other):
        if self.ring != other.ring:
            raise RingMismatchError(
                f"operands from different rings: {self.ring!r} vs {other.ring!r}")

    def __add__(self, other):
        self._check(other)
        F = self.ring.field
        out = dict(self.terms)
        for e, c in other.terms.items():
            acc = F.add(out.get(e, F.zero), c)
            if acc == F.zero:
                out.pop(e, None)
            else:
                out[e] = acc
        return Polynomial(self.ring, out)

    def __sub__(self, other):
        self._check(other)
        F = self.ring.field
        out = dict(self.terms)
        for e, c in other.terms.items():
            acc = F.sub(out.get(e, F.zero), c)
            if acc == F.zero:
                out.pop(e, None)
            else:
                out[e] = acc
        return Polynomial(self.ring, out)

    def __neg__(self):
        F = self.ring.field
        return Polynomial(self.ring, {e: F.neg(c) for e, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, Polynomial):
            self._check(other)
            return Polynomial(self.ring, _dict_mul(self.ring.field,
                                                   self.terms, other.terms))
        return self.scale(other)

    __rmul__ = __mul__

    def scale(self, c):
        F = self.ring.field
        c = F.of(c)
        if c == F.zero:
            return Polynomial(self.ring, {})
        return Polynomial(self.ring, {e: F.mul(c, x) for e, x in self.terms.items()})

    def mul_monomial(self, exps, c):
        """Fast multiplication by c * x^exps."""
        F = self.ring.field
        exps = tuple(exps)
        return Polynomial(self.ring, {monomial_mul(e, exps): F.mul(c, x)
                                      for e, x in self.terms.items()})

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative power of a polynomial")
        result = self.ring.one()
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base if e > 1 else base
            e >>= 1
        return result

    # -- calculus and evaluation --------------------------------------------

    def partial_derivative(self, i: int) -> "Polynomial":
        F = self.ring.field
        out = {}
        for e, c in self.terms.items():
            if e[i]:
                coeff = F.mul(c, F.of(e[i]))
                if coeff != F.zero:
                    new = list(e)
                    new[i] -= 1
                    out[tuple(new)] = coeff
        return Polynomial(self.ring, out)

    def evaluate(self, point):
        F = self.ring.field
        if len(point) != self.ring.nvars:
            raise ValueError("point length does not match variable count")
        point = [F.of(x) for x in point]
        total = F.zero
        for e, c in self.terms.items():
            v = c
            for i, exp in enumerate(e):
                if exp:
                    v = F.mul(v, F.pow(point[i], exp))
            total = F.add(total, v)
        return total

    # -- substitution --------------------------------------------------------

    def compose(self, images, ring: PolyRing | None = None) -> "Polynomial":
        """Substitute images[i] for variable i; images live in the target ring."""
        if len(images) != self.ring.nvars:
            raise ValueError("need one image per variable")
        if ring is None:
            ring = images[0].ring
        for im in images:
            if im.ring != ring:
                raise RingMismatchError("substitution images from different rings")
        if ring.field != self.ring.field:
            raise RingMismatchError("substitution must preserve the field")
        F = ring.field
        one_mono = (0,) * ring.nvars
        pow_cache: dict[tuple[int, int], dict] = {}

        def image_power(i, e):
            key = (i, e)
            if key not in pow_cache:
                if e == 1:
                    pow_cache[key] = images[i].terms
                else:
                    half = image_power(i, e - 1)
                    pow_cache[key] = _dict_mul(F, half, images[i].terms)
            return pow_cache[key]

        out: dict = {}
        for exps, c in self.terms.items():
            cur = {one_mono: c}
            for i, e in enumerate(exps):
                if e:
                    cur = _dict_mul(F, cur, image_power(i, e))
                    if not cur:
                        break
            for m, v in cur.items():
                acc = F.add(out.get(m, F.zero), v)
                if acc == F.zero:
                    out.pop(m, None)
                else:
                    out[m] = acc
        return Polynomial(ring, out)

    def linear_substitute(self, A, t=None) -> "Polynomial":
        """Compose with the affine map z -> A z + t (A invertible).

        Row convention: variable i is replaced by sum_j A[i][j] * z_j + t_i.
        """
        n = self.ring.nvars
        F = self.ring.field
        if len(A) != n or any(len(row) != n for row in A):
            raise ValueError("substitution matrix has wrong shape")
        A = [[F.of(x) for x in row] for row in A]
        linalg.invert(F, A)  # raises SingularMatrixError if not invertible
        if t is None:
            t = [F.zero] * n
        else:
            t = [F.of(x) for x in t]
        images = []
        for i in range(n):
            terms = {}
            for j, a in enumerate(A[i]):
                if a != F.zero:
                    e = [0] * n
                    e[j] = 1
                    terms[tuple(e)] = a
            if t[i] != F.zero:
                terms[(0,) * n] = t[i]
            images.append(Polynomial(self.ring, terms))
        return self.compose(images, self.ring)

    # -- normal forms ---------------------------------------------------------

    def monic(self) -> "Polynomial":
        if not self.terms:
            return self
        lc = self.leading_coefficient()
        F = self.ring.field
        if lc == F.one:
            return self
        inv = F.inv(lc)
        return Polynomial(self.ring, {e: F.mul(inv, c) for e, c in self.terms.items()})

    def primitive_part(self) -> "Polynomial":
        """Over Q: clear denominators and divide by the integer content, with
        positive leading coefficient. Over F_p: monic."""
        if not self.terms:
            return self
        F = self.ring.field
        if F.kind != "Q":
            return self.monic()
        den = 1
        for c in self.terms.values():
            den = den * c.denominator // gcd(den, c.denominator)
        num = 0
        for c in self.terms.values():
            num = gcd(num, int(c * den))
        scale = Fraction(den, num)
        if self.leading_coefficient() < 0:
            scale = -scale
        return Polynomial(self.ring, {e: c * scale for e, c in self.terms.items()})

    # -- comparison and display -------------------------------------------------

    def __eq__(self, other):
        return (isinstance(other, Polynomial) and other.ring == self.ring
                and other.terms == self.terms)

    def __hash__(self):
        return hash((self.ring, frozenset(self.terms.items())))

    def __str__(self):
        if not self.terms:
            return "0"
        F = self.ring.field
        pieces = []
        for exps in sorted(self.terms, key=grevlex_key, reverse=True):
            c = self.terms[exps]
            negative = F.kind == "Q" and c < 0
            mag = -c if negative else c
            vars_part = "*".join(
                f"x{i}^{e}" if e > 1 else f"x{i}"
                for i, e in enumerate(exps) if e)
            if not vars_part:
                body = F.to_str(mag)
            elif mag == F.one:
                body = vars_part
            else:
                body = f"{F.to_str(mag)}*{vars_part}"
            if not pieces:
                pieces.append(f"-{body}" if negative else body)
            else:
                pieces.append(f"- {body}" if negative else f"+ {body}")
        return " ".join(pieces)

    def __repr__(self):
        return f"<{self} over {self.ring.field!r}>"
