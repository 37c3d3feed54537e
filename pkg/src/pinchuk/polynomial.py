"""Sparse multivariate polynomials with exact rational coefficients.

A :class:`MultiPoly` is a map from exponent tuples to nonzero coefficients
over an ordered tuple of variable names.  Coefficients are Python ``int``
whenever they are integral and :class:`fractions.Fraction` otherwise; the two
compare and hash identically, so the term map is canonical either way and
integer-only kernels stay on the fast ``int`` path.

    >>> x, y = MultiPoly.gens("x", "y")
    >>> str((x + y) * (x - y))
    'x^2 - y^2'
"""

from __future__ import annotations

import math
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Mapping, Sequence, Union

Coeff = Union[int, Fraction]
Scalar = Union[int, Fraction]


class VariableMismatchError(ValueError):
    """Raised when two polynomials over different variable lists are combined."""


class UnboundVariableError(ValueError):
    """Raised when evaluation leaves a variable without a value."""


def as_coeff(c) -> Coeff:
    """Normalize a rational scalar: integral values become ``int``."""
    if isinstance(c, bool):
        return int(c)
    if isinstance(c, int):
        return c
    if isinstance(c, Fraction):
        return c.numerator if c.denominator == 1 else c
    if isinstance(c, Rational):
        return as_coeff(Fraction(c.numerator, c.denominator))
    if isinstance(c, str):
        return as_coeff(Fraction(c))
    raise TypeError(f"not an exact rational: {c!r}")


def format_rational(c) -> str:
    c = Fraction(c)
    if c.denominator == 1:
        return str(c.numerator)
    return f"{c.numerator}/{c.denominator}"


def _add_exp(a: tuple, b: tuple) -> tuple:
    return tuple([i + j for i, j in zip(a, b)])


class MultiPoly:
    """Immutable sparse polynomial in ``variables`` over the rationals."""

    __slots__ = ("variables", "terms", "_hash")

    def __init__(self, terms: Mapping[tuple, Scalar] | None = None,
                 variables: Sequence[str] = ()):
        variables = tuple(variables)
        if len(set(variables)) != len(variables):
            raise ValueError(f"repeated variable in {variables}")
        n = len(variables)
        clean = {}
        for exp, c in (terms or {}).items():
            exp = tuple(exp)
            if len(exp) != n:
                raise ValueError(f"exponent {exp} does not match variables {variables}")
            if any(e < 0 for e in exp):
                raise ValueError(f"negative exponent in {exp}")
            c = as_coeff(c)
            if c:
                clean[exp] = c
        self.variables = variables
        self.terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict, variables: tuple) -> "MultiPoly":
        # trusted constructor: terms already canonical
        obj = cls.__new__(cls)
        obj.variables = variables
        obj.terms = terms
        obj._hash = None
        return obj

    @classmethod
    def constant(cls, c: Scalar, variables: Sequence[str] = ()) -> "MultiPoly":
        variables = tuple(variables)
        return cls({(0,) * len(variables): c}, variables)

    @classmethod
    def var(cls, name: str, variables: Sequence[str]) -> "MultiPoly":
        variables = tuple(variables)
        if name not in variables:
            raise VariableMismatchError(f"{name!r} not in {variables}")
        exp = tuple(int(v == name) for v in variables)
        return cls._raw({exp: 1}, variables)

    @classmethod
    def gens(cls, *names: str) -> tuple["MultiPoly", ...]:
        return tuple(cls.var(n, names) for n in names)

    # -- basic queries -----------------------------------------------------

    @property
    def nvars(self) -> int:
        return len(self.variables)

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and not any(next(iter(self.terms))))

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError("polynomial is not constant")
        return Fraction(self.terms.get((0,) * self.nvars, 0))

    def __len__(self) -> int:
        return len(self.terms)

    def degree(self, var: str | None = None) -> int:
        """Total degree, or the degree in ``var``; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        if var is None:
            return max(sum(e) for e in self.terms)
        i = self._index(var)
        return max(e[i] for e in self.terms)

    def _index(self, var: str) -> int:
        try:
            return self.variables.index(var)
        except ValueError:
            raise VariableMismatchError(f"{var!r} not in {self.variables}") from None

    def free_variables(self) -> tuple[str, ...]:
        used = [False] * self.nvars
        for e in self.terms:
            for i, k in enumerate(e):
                if k:
                    used[i] = True
        return tuple(v for v, u in zip(self.variables, used) if u)

    # -- variable bookkeeping ----------------------------------------------

    def with_variables(self, variables: Sequence[str]) -> "MultiPoly":
        """Re-express over ``variables``; every free variable must be kept."""
        variables = tuple(variables)
        if variables == self.variables:
            return self
        pos = {v: i for i, v in enumerate(variables)}
        idx = []
        for i, v in enumerate(self.variables):
            if v in pos:
                idx.append((i, pos[v]))
        n = len(variables)
        out = {}
        kept = {i for i, _ in idx}
        for e, c in self.terms.items():
            if any(k and i not in kept for i, k in enumerate(e)):
                missing = [self.variables[i] for i, k in enumerate(e) if k and i not in kept]
                raise VariableMismatchError(f"cannot drop variables {missing}")
            ne = [0] * n
            for i, j in idx:
                ne[j] = e[i]
            out[tuple(ne)] = c
        return MultiPoly._raw(out, variables)

    def _check(self, other: "MultiPoly") -> None:
        if self.variables != other.variables:
            raise VariableMismatchError(
                f"variable lists differ: {self.variables} vs {other.variables}")

    def _lift(self, other) -> "MultiPoly":
        if isinstance(other, MultiPoly):
            self._check(other)
            return other
        return MultiPoly.constant(as_coeff(other), self.variables)

    # -- ring operations ---------------------------------------------------

    def __neg__(self) -> "MultiPoly":
        return MultiPoly._raw({e: -c for e, c in self.terms.items()}, self.variables)

    def __pos__(self) -> "MultiPoly":
        return self

    def __add__(self, other) -> "MultiPoly":
        try:
            other = self._lift(other)
        except TypeError:
            return NotImplemented
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = out.get(e, 0) + c
            if v:
                out[e] = as_coeff(v)
            else:
                out.pop(e, None)
        return MultiPoly._raw(out, self.variables)

    __radd__ = __add__

    def __sub__(self, other) -> "MultiPoly":
        try:
            other = self._lift(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "MultiPoly":
        return (-self) + other

    def __mul__(self, other) -> "MultiPoly":
        if not isinstance(other, MultiPoly):
            try:
                c = as_coeff(other)
            except TypeError:
                return NotImplemented
            if not c:
                return MultiPoly._raw({}, self.variables)
            return MultiPoly._raw({e: as_coeff(v * c) for e, v in self.terms.items()},
                                  self.variables)
        self._check(other)
        a, b = self.terms, other.terms
        if len(a) < len(b):
            a, b = b, a
        out: dict = {}
        get = out.get
        bitems = list(b.items())
        for ea, ca in a.items():
            for eb, cb in bitems:
                e = _add_exp(ea, eb)
                out[e] = get(e, 0) + ca * cb
        return MultiPoly._raw({e: as_coeff(c) for e, c in out.items() if c}, self.variables)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "MultiPoly":
        if isinstance(other, MultiPoly):
            if other.is_constant() and other:
                return self * (1 / other.constant_value())
            return self.exact_div(other)
        c = Fraction(as_coeff(other))
        if not c:
            raise ZeroDivisionError("polynomial division by zero")
        return self * (1 / c)

    def __pow__(self, n: int) -> "MultiPoly":
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a non-negative integer")
        result = MultiPoly.constant(1, self.variables)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, MultiPoly):
            return self.variables == other.variables and self.terms == other.terms
        try:
            c = as_coeff(other)
        except TypeError:
            return NotImplemented
        return self.terms == ({(0,) * self.nvars: c} if c else {})

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.variables, frozenset(self.terms.items())))
        return self._hash

    # -- calculus, evaluation, composition ---------------------------------

    def diff(self, var: str) -> "MultiPoly":
        """Formal partial derivative with respect to ``var``."""
        i = self._index(var)
        out = {}
        for e, c in self.terms.items():
            k = e[i]
            if k:
                ne = e[:i] + (k - 1,) + e[i + 1:]
                out[ne] = as_coeff(c * k)
        return MultiPoly._raw(out, self.variables)

    def evaluate(self, point: Mapping[str, Scalar]) -> Fraction:
        """Exact value at ``point``; every variable must be bound."""
        missing = [v for v in self.variables if v not in point]
        if missing:
            raise UnboundVariableError(f"unbound variables {missing}")
        vals = [as_coeff(point[v]) for v in self.variables]
        powers: list[dict] = [{} for _ in vals]
        total = 0
        for e, c in self.terms.items():
            term = c
            for i, k in enumerate(e):
                if k:
                    cache = powers[i]
                    pk = cache.get(k)
                    if pk is None:
                        pk = cache[k] = vals[i] ** k
                    term = term * pk
            total += term
        return Fraction(total)

    def substitute(self, bindings: Mapping[str, "MultiPoly | Scalar"]) -> "MultiPoly":
        """Compose: replace each bound variable by a polynomial or a rational.

        The result lives over the unbound variables of ``self`` followed by any
        new variables introduced by the bindings, in order of appearance.
        """
        for v in bindings:
            self._index(v)
        remaining = [v for v in self.variables if v not in bindings]
        out_vars = list(remaining)
        for val in bindings.values():
            if isinstance(val, MultiPoly):
                for v in val.variables:
                    if v not in out_vars:
                        out_vars.append(v)
        out_vars = tuple(out_vars)
        lifted = {}
        for v, val in bindings.items():
            if isinstance(val, MultiPoly):
                lifted[v] = val.with_variables(out_vars)
            else:
                lifted[v] = MultiPoly.constant(val, out_vars)
        keep = [(i, out_vars.index(v)) for i, v in enumerate(self.variables) if v not in bindings]
        bound = [(i, lifted[v]) for i, v in enumerate(self.variables) if v in bindings]

        # group terms by the exponents of the bound variables
        groups: dict[tuple, dict] = {}
        n = len(out_vars)
        for e, c in self.terms.items():
            key = tuple(e[i] for i, _ in bound)
            rest = [0] * n
            for i, j in keep:
                rest[j] = e[i]
            groups.setdefault(key, {})[tuple(rest)] = c
        powers = [{0: MultiPoly.constant(1, out_vars)} for _ in bound]

        def power(slot: int, k: int) -> MultiPoly:
            cache = powers[slot]
            if k not in cache:
                # build from the nearest cached power below k
                j = max(m for m in cache if m <= k)
                acc = cache[j]
                base = bound[slot][1]
                for m in range(j + 1, k + 1):
                    acc = acc * base
                    cache[m] = acc
            return cache[k]

        result = MultiPoly._raw({}, out_vars)
        for key, rest in groups.items():
            piece = MultiPoly._raw(rest, out_vars)
            factors = [power(s, k) for s, k in enumerate(key) if k]
            factors.sort(key=len)
            for fac in factors:
                piece = piece * fac
            result = result + piece
        return result

    # -- univariate views --------------------------------------------------

    def coefficients_in(self, var: str) -> list["MultiPoly"]:
        """Coefficients of powers of ``var`` (lowest first), over the other variables."""
        i = self._index(var)
        others = self.variables[:i] + self.variables[i + 1:]
        d = self.degree(var)
        buckets: list[dict] = [{} for _ in range(max(d, 0) + 1)]
        for e, c in self.terms.items():
            buckets[e[i]][e[:i] + e[i + 1:]] = c
        if d < 0:
            return []
        return [MultiPoly._raw(b, others) for b in buckets]

    @classmethod
    def from_coefficients(cls, coeffs: Sequence["MultiPoly"], var: str,
                          position: int = 0) -> "MultiPoly":
        """Inverse of :meth:`coefficients_in` (``var`` inserted at ``position``)."""
        if not coeffs:
            raise ValueError("need at least one coefficient")
        base = tuple(coeffs[0].variables)
        variables = base[:position] + (var,) + base[position:]
        out = {}
        for k, c in enumerate(coeffs):
            for e, v in c.terms.items():
                out[e[:position] + (k,) + e[position:]] = v
        return cls._raw(out, variables)

    def leading_coefficient_in(self, var: str) -> "MultiPoly":
        return self.coefficients_in(var)[-1]

    # -- lex-order division (exact) -----------------------------------------

    def leading_term(self) -> tuple[tuple, Coeff]:
        e = max(self.terms)
        return e, self.terms[e]

    def exact_div(self, other: "MultiPoly") -> "MultiPoly":
        """Quotient ``self / other``; raises if the division is not exact."""
        self._check(other)
        if not other:
            raise ZeroDivisionError("polynomial division by zero")
        le, lc = other.leading_term()
        rem = dict(self.terms)
        quot = {}
        oitems = list(other.terms.items())
        while rem:
            e = max(rem)
            c = rem[e]
            d = tuple(a - b for a, b in zip(e, le))
            if any(k < 0 for k in d):
                raise ArithmeticError("division is not exact")
            qc = as_coeff(Fraction(c) / lc)
            quot[d] = qc
            for oe, oc in oitems:
                te = _add_exp(oe, d)
                v = rem.get(te, 0) - qc * oc
                if v:
                    rem[te] = as_coeff(v)
                else:
                    rem.pop(te, None)
        return MultiPoly._raw(quot, self.variables)

    def divides(self, other: "MultiPoly") -> bool:
        try:
            other.exact_div(self)
        except ArithmeticError:
            return False
        return True

    # -- printing ----------------------------------------------------------

    def sorted_terms(self) -> list[tuple[tuple, Coeff]]:
        """Terms in graded-lex order: total degree descending, then lex descending."""
        return sorted(self.terms.items(), key=lambda t: (sum(t[0]), t[0]), reverse=True)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.sorted_terms():
            mono = "*".join(v if k == 1 else f"{v}^{k}"
                            for v, k in zip(self.variables, e) if k)
            neg = c < 0
            a = -c if neg else c
            if not mono:
                body = format_rational(a)
            elif a == 1:
                body = mono
            else:
                body = f"{format_rational(a)}*{mono}"
            if not parts:
                parts.append(f"-{body}" if neg else body)
            else:
                parts.append(f"- {body}" if neg else f"+ {body}")
        return " ".join(parts)

    def __repr__(self) -> str:
        return f"MultiPoly({str(self)!r}, variables={self.variables})"


def common_variables(polys: Iterable[MultiPoly]) -> tuple[str, ...]:
    out: list[str] = []
    for p in polys:
        for v in p.variables:
            if v not in out:
                out.append(v)
    return tuple(out)


def poly_mul(p: MultiPoly, q: MultiPoly) -> MultiPoly:
    """Exact product of two polynomials over the same variable list."""
    p._check(q)
    return p * q


def substitute(p: MultiPoly, bindings: Mapping[str, "MultiPoly | Scalar"]) -> MultiPoly:
    return p.substitute(bindings)


def partial_derivative(p: MultiPoly, var: str) -> MultiPoly:
    return p.diff(var)


def evaluate(p: MultiPoly, point: Mapping[str, Scalar]) -> Fraction:
    return p.evaluate(point)


def integer_grid_values(p: MultiPoly, x_nums: Sequence[int], y_nums: Sequence[int],
                        den: int) -> tuple[list[list[int]], int]:
    """Exact values of a bivariate ``p`` on the grid (x/den, y/den).

    Returns ``(values, scale)`` with ``p(x_nums[i]/den, y_nums[j]/den) ==
    values[j][i] / scale`` and ``scale > 0``; everything stays in integers,
    so sign sweeps over large grids are cheap.
    """
    if p.nvars != 2:
        raise VariableMismatchError("integer_grid_values needs exactly two variables")
    if not p.terms:
        return [[0] * len(x_nums) for _ in y_nums], 1
    d = p.degree()
    lcm_den = 1
    for c in p.terms.values():
        if isinstance(c, Fraction):
            lcm_den = math.lcm(lcm_den, c.denominator)
    dx = p.degree(p.variables[0])
    # rows[a][b]: integer coefficient of x^a y^b, homogenized by den^(d-a-b)
    rows = [dict() for _ in range(dx + 1)]
    for (a, b), c in p.terms.items():
        rows[a][b] = int(c * lcm_den) * den ** (d - a - b)
    row_lists = []
    for r in rows:
        deg = max(r) if r else -1
        row_lists.append([r.get(k, 0) for k in range(deg + 1)])
    values = []
    for yv in y_nums:
        cx = []
        for coeffs in row_lists:
            acc = 0
            for c in reversed(coeffs):
                acc = acc * yv + c
            cx.append(acc)
        out_row = []
        for xv in x_nums:
            acc = 0
            for c in reversed(cx):
                acc = acc * xv + c
            out_row.append(acc)
        values.append(out_row)
    return values, lcm_den * den ** d
