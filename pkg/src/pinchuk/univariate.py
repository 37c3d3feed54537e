"""Dense univariate polynomials over the rationals (lowest degree first)."""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

from .polynomial import Coeff, MultiPoly, as_coeff, format_rational


class UniPoly:
    """Immutable univariate polynomial; ``coeffs[i]`` multiplies ``var**i``."""

    __slots__ = ("coeffs", "var")

    def __init__(self, coeffs: Iterable = (), var: str = "x"):
        cs = [as_coeff(c) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        self.coeffs: tuple[Coeff, ...] = tuple(cs)
        self.var = var

    @classmethod
    def from_roots(cls, roots: Sequence, var: str = "x") -> "UniPoly":
        p = cls([1], var)
        for r in roots:
            p = p * cls([-as_coeff(r), 1], var)
        return p

    @classmethod
    def from_multi(cls, p: MultiPoly, var: str | None = None) -> "UniPoly":
        """Convert a polynomial whose only free variable is ``var``."""
        free = p.free_variables()
        if var is None:
            if len(free) > 1:
                raise ValueError(f"not univariate: free variables {free}")
            var = free[0] if free else (p.variables[0] if p.variables else "x")
        elif any(v != var for v in free):
            raise ValueError(f"not univariate in {var!r}: free variables {free}")
        if not p:
            return cls((), var)
        i = p.variables.index(var) if var in p.variables else None
        d = p.degree(var) if i is not None else 0
        cs = [0] * (d + 1)
        for e, c in p.terms.items():
            cs[e[i] if i is not None else 0] = c
        return cls(cs, var)

    def to_multi(self, variables: Sequence[str] | None = None) -> MultiPoly:
        variables = tuple(variables or (self.var,))
        k = variables.index(self.var)
        n = len(variables)
        return MultiPoly({tuple(i if j == k else 0 for j in range(n)): c
                          for i, c in enumerate(self.coeffs)}, variables)

    # -- queries -----------------------------------------------------------

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lc(self) -> Fraction:
        return Fraction(self.coeffs[-1]) if self.coeffs else Fraction(0)

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __len__(self) -> int:
        return len(self.coeffs)

    def __eq__(self, other) -> bool:
        if isinstance(other, UniPoly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == ((as_coeff(other),) if other else ())
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __call__(self, x) -> Fraction:
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc if isinstance(acc, Fraction) else Fraction(acc)

    def sign_at(self, x) -> int:
        v = self(x)
        return (v > 0) - (v < 0)

    def trailing_zeros(self) -> int:
        """Multiplicity of the root 0 (trailing zero coefficients)."""
        if not self.coeffs:
            raise ValueError("zero polynomial")
        k = 0
        while not self.coeffs[k]:
            k += 1
        return k

    # -- arithmetic --------------------------------------------------------

    def _new(self, cs) -> "UniPoly":
        return UniPoly(cs, self.var)

    def _lift(self, other) -> "UniPoly":
        if isinstance(other, UniPoly):
            return other
        return UniPoly([other], self.var)

    def __neg__(self) -> "UniPoly":
        return self._new(-c for c in self.coeffs)

    def __add__(self, other) -> "UniPoly":
        other = self._lift(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        return self._new([x + (b[i] if i < len(b) else 0) for i, x in enumerate(a)])

    __radd__ = __add__

    def __sub__(self, other) -> "UniPoly":
        return self + (-self._lift(other))

    def __rsub__(self, other) -> "UniPoly":
        return self._lift(other) - self

    def __mul__(self, other) -> "UniPoly":
        if not isinstance(other, UniPoly):
            c = as_coeff(other)
            return self._new(x * c for x in self.coeffs)
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return self._new(())
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return self._new(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "UniPoly":
        result = self._new([1])
        for _ in range(n):
            result = result * self
        return result

    def divmod(self, other: "UniPoly") -> tuple["UniPoly", "UniPoly"]:
        if not other:
            raise ZeroDivisionError("polynomial division by zero")
        rem = [Fraction(c) for c in self.coeffs]
        d = other.degree
        inv = 1 / Fraction(other.coeffs[-1])
        if len(rem) <= d:
            return self._new(()), self
        quot = [Fraction(0)] * (len(rem) - d)
        oc = other.coeffs
        for k in range(len(rem) - 1, d - 1, -1):
            c = rem[k] * inv
            if c:
                quot[k - d] = c
                for j in range(d + 1):
                    rem[k - d + j] -= c * oc[j]
        return self._new(quot), self._new(rem[:d])

    def __floordiv__(self, other: "UniPoly") -> "UniPoly":
        return self.divmod(other)[0]

    def __mod__(self, other: "UniPoly") -> "UniPoly":
        return self.divmod(other)[1]

    def exact_div(self, other: "UniPoly") -> "UniPoly":
        q, r = self.divmod(other)
        if r:
            raise ArithmeticError("division is not exact")
        return q

    def derivative(self) -> "UniPoly":
        return self._new(i * c for i, c in enumerate(self.coeffs) if i)

    def monic(self) -> "UniPoly":
        if not self.coeffs:
            return self
        return self * (1 / self.lc)

    def primitive(self) -> "UniPoly":
        """Positive rescaling to coprime integer coefficients (same roots, same signs)."""
        if not self.coeffs:
            return self
        from math import gcd, lcm
        fr = [Fraction(c) for c in self.coeffs]
        den = lcm(*(c.denominator for c in fr))
        ints = [int(c * den) for c in fr]
        g = gcd(*ints)
        return self._new(c // g for c in ints)

    def shift_down(self, k: int) -> "UniPoly":
        """Divide by ``var**k``; the low ``k`` coefficients must vanish."""
        if any(self.coeffs[:k]):
            raise ArithmeticError(f"not divisible by {self.var}^{k}")
        return self._new(self.coeffs[k:])

    def compose(self, other: "UniPoly") -> "UniPoly":
        acc = self._new(())
        for c in reversed(self.coeffs):
            acc = acc * other + c
        return acc

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        return str(self.to_multi())

    def __repr__(self) -> str:
        return f"UniPoly({[format_rational(c) for c in self.coeffs]}, var={self.var!r})"
