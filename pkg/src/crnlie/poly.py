"""Sparse multivariate polynomials with exact rational coefficients.

Variables are identified by non-negative integers. A monomial is a tuple of
``(variable, exponent)`` pairs sorted by variable with every exponent positive;
the empty tuple is the constant monomial. Coefficients are ``Fraction``.

Text format (used in reports, stable)::

    -2*k2*x1*x2 + 3/2*x3^2 - 1

Terms are listed in graded lexicographic order (higher total degree first,
then by larger exponent on the lower variable id). A coefficient of 1 is
omitted, powers are written ``name^e``.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Iterable, Mapping, Sequence, Union

Monomial = tuple[tuple[int, int], ...]
Scalar = Union[int, Fraction]

ONE: Monomial = ()


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    if not a:
        return b
    if not b:
        return a
    out = []
    i = j = 0
    while i < len(a) and j < len(b):
        va, ea = a[i]
        vb, eb = b[j]
        if va == vb:
            out.append((va, ea + eb))
            i += 1
            j += 1
        elif va < vb:
            out.append(a[i])
            i += 1
        else:
            out.append(b[j])
            j += 1
    out.extend(a[i:])
    out.extend(b[j:])
    return tuple(out)


def mono_degree(m: Monomial) -> int:
    return sum(e for _, e in m)


def mono_from_exponents(exponents: Sequence[int], offset: int = 0) -> Monomial:
    """Monomial ``prod x_{offset+i}^{exponents[i]}`` from a dense exponent vector."""
    return tuple((offset + i, int(e)) for i, e in enumerate(exponents) if e)


def _order_key(m: Monomial):
    return (-mono_degree(m), tuple((v, -e) for v, e in m))


def default_name(var: int) -> str:
    return f"x{var + 1}"


class Polynomial:
    """Immutable sparse polynomial over the rationals."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Monomial, Scalar] | None = None):
        clean: dict[Monomial, Fraction] = {}
        if terms:
            for mono, coeff in terms.items():
                if coeff:
                    clean[tuple(mono)] = Fraction(coeff)
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict[Monomial, Fraction]) -> "Polynomial":
        p = cls.__new__(cls)
        p._terms = terms
        p._hash = None
        return p

    @classmethod
    def constant(cls, c: Scalar) -> "Polynomial":
        return cls({ONE: c})

    @classmethod
    def variable(cls, var: int) -> "Polynomial":
        return cls({((var, 1),): 1})

    @classmethod
    def monomial(cls, mono: Monomial, coeff: Scalar = 1) -> "Polynomial":
        return cls({mono: coeff})

    @property
    def terms(self) -> dict[Monomial, Fraction]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    @property
    def degree(self) -> int:
        return max((mono_degree(m) for m in self._terms), default=0)

    def variables(self) -> set[int]:
        return {v for m in self._terms for v, _ in m}

    def coefficient(self, mono: Monomial) -> Fraction:
        return self._terms.get(tuple(mono), Fraction(0))

    # -- ring operations ------------------------------------------------

    @staticmethod
    def _coerce(other) -> "Polynomial | None":
        if isinstance(other, Polynomial):
            return other
        if isinstance(other, (int, Fraction)):
            return Polynomial.constant(other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if len(other._terms) > len(self._terms):
            self, other = other, self
        out = dict(self._terms)
        for m, c in other._terms.items():
            s = out.get(m, 0) + c
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return Polynomial._raw(out)

    __radd__ = __add__

    def __neg__(self) -> "Polynomial":
        return Polynomial._raw({m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def scale(self, c: Scalar) -> "Polynomial":
        if not c:
            return Polynomial._raw({})
        c = Fraction(c)
        return Polynomial._raw({m: v * c for m, v in self._terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        out: dict[Monomial, Fraction] = {}
        for ma, ca in self._terms.items():
            for mb, cb in other._terms.items():
                m = mono_mul(ma, mb)
                s = out.get(m, 0) + ca * cb
                if s:
                    out[m] = s
                else:
                    out.pop(m, None)
        return Polynomial._raw(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "Polynomial":
        if n < 0:
            raise ValueError("negative power")
        result = Polynomial.constant(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other) -> bool:
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    # -- calculus and evaluation ----------------------------------------

    def derivative(self, var: int) -> "Polynomial":
        out: dict[Monomial, Fraction] = {}
        for m, c in self._terms.items():
            for idx, (v, e) in enumerate(m):
                if v == var:
                    if e == 1:
                        nm = m[:idx] + m[idx + 1:]
                    else:
                        nm = m[:idx] + ((v, e - 1),) + m[idx + 1:]
                    out[nm] = out.get(nm, 0) + c * e
                    break
        return Polynomial({m: c for m, c in out.items()})

    def evaluate(self, values: Mapping[int, Scalar] | Sequence[Scalar]) -> Fraction:
        """Exact value at a point; ``values`` maps every occurring variable."""
        total = Fraction(0)
        for m, c in self._terms.items():
            term = c
            for v, e in m:
                term *= values[v] ** e
            total += term
        return total

    def substitute(self, values: Mapping[int, Scalar]) -> "Polynomial":
        """Partially evaluate: fix the listed variables, keep the rest symbolic."""
        out: dict[Monomial, Fraction] = {}
        for m, c in self._terms.items():
            coeff = c
            keep = []
            for v, e in m:
                if v in values:
                    coeff *= Fraction(values[v]) ** e
                else:
                    keep.append((v, e))
            if coeff:
                key = tuple(keep)
                out[key] = out.get(key, 0) + coeff
        return Polynomial(out)

    # -- printing -------------------------------------------------------

    def sorted_terms(self) -> list[tuple[Monomial, Fraction]]:
        return sorted(self._terms.items(), key=lambda t: _order_key(t[0]))

    def format(self, name: Callable[[int], str] | Sequence[str] | None = None) -> str:
        if name is None:
            name = default_name
        elif not callable(name):
            names = list(name)
            name = names.__getitem__
        if not self._terms:
            return "0"
        pieces = []
        for i, (m, c) in enumerate(self.sorted_terms()):
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            factors = [name(v) if e == 1 else f"{name(v)}^{e}" for v, e in m]
            if mag != 1 or not factors:
                factors.insert(0, str(mag))
            body = "*".join(factors)
            if i == 0:
                pieces.append(body if sign == "+" else f"-{body}")
            else:
                pieces.append(f" {sign} {body}")
        return "".join(pieces)

    def __str__(self) -> str:
        return self.format()

    def __repr__(self) -> str:
        return f"Polynomial({self.format()!r})"


def monomial_poly(exponents: Sequence[int], offset: int = 0, coeff: Scalar = 1) -> Polynomial:
    return Polynomial({mono_from_exponents(exponents, offset): coeff})


class PolyVectorField:
    """A vector of polynomials in the state variables ``0..dim-1``.

    Other variables (rate parameters) may appear in the coefficients; they are
    treated as constants by :meth:`jacobian` and :func:`lie_bracket`.
    """

    __slots__ = ("components", "_jac")

    def __init__(self, components: Iterable[Polynomial]):
        self.components: tuple[Polynomial, ...] = tuple(
            c if isinstance(c, Polynomial) else Polynomial.constant(c) for c in components
        )
        self._jac = None

    @classmethod
    def zero(cls, dim: int) -> "PolyVectorField":
        return cls(Polynomial() for _ in range(dim))

    @classmethod
    def from_direction(cls, direction: Sequence[Scalar], factor: Polynomial) -> "PolyVectorField":
        """The field ``x -> direction * factor(x)``."""
        return cls(factor.scale(d) for d in direction)

    @property
    def dim(self) -> int:
        return len(self.components)

    def __len__(self) -> int:
        return len(self.components)

    def __iter__(self):
        return iter(self.components)

    def __getitem__(self, i: int) -> Polynomial:
        return self.components[i]

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.components)

    def _check(self, other: "PolyVectorField") -> None:
        if other.dim != self.dim:
            raise ValueError(f"dimension mismatch: {self.dim} vs {other.dim}")

    def __add__(self, other: "PolyVectorField") -> "PolyVectorField":
        self._check(other)
        return PolyVectorField(a + b for a, b in zip(self.components, other.components))

    def __sub__(self, other: "PolyVectorField") -> "PolyVectorField":
        self._check(other)
        return PolyVectorField(a - b for a, b in zip(self.components, other.components))

    def __neg__(self) -> "PolyVectorField":
        return PolyVectorField(-a for a in self.components)

    def scale(self, c: Scalar | Polynomial) -> "PolyVectorField":
        if isinstance(c, Polynomial):
            return PolyVectorField(a * c for a in self.components)
        return PolyVectorField(a.scale(c) for a in self.components)

    def __mul__(self, c):
        return self.scale(c)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, PolyVectorField):
            return NotImplemented
        return self.components == other.components

    def __hash__(self) -> int:
        return hash(self.components)

    def jacobian(self) -> list[list[Polynomial]]:
        """Entry ``[m][n]`` is the derivative of component m by state variable n."""
        if self._jac is None:
            self._jac = [[c.derivative(n) for n in range(self.dim)] for c in self.components]
        return self._jac

    def evaluate(self, values: Mapping[int, Scalar] | Sequence[Scalar]) -> list[Fraction]:
        return [c.evaluate(values) for c in self.components]

    def substitute(self, values: Mapping[int, Scalar]) -> "PolyVectorField":
        return PolyVectorField(c.substitute(values) for c in self.components)

    def format(self, name=None) -> str:
        return "(" + ", ".join(c.format(name) for c in self.components) + ")"

    def __repr__(self) -> str:
        return f"PolyVectorField{self.format()}"


def apply_matrix(matrix: list[list[Polynomial]], vf: PolyVectorField) -> PolyVectorField:
    out = []
    for row in matrix:
        acc = Polynomial()
        for entry, comp in zip(row, vf.components):
            if entry and comp:
                acc = acc + entry * comp
        out.append(acc)
    return PolyVectorField(out)


def lie_bracket(v: PolyVectorField, w: PolyVectorField) -> PolyVectorField:
    """``[v, w] = w' v - v' w`` with Jacobians taken in the state variables."""
    v._check(w)
    return apply_matrix(w.jacobian(), v) - apply_matrix(v.jacobian(), w)
