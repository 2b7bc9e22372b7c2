"""Sparse multivariate polynomial arithmetic over exact rationals or floats.

A polynomial is a map from exponent tuples to coefficients:

    x0^2 * x1 + 3   ->   {(2, 1): Fraction(1), (0, 0): Fraction(3)}

Zero coefficients are never stored, so the zero polynomial is the empty map
and equality testing is exact dict comparison.  Every polynomial carries a
coefficient mode: RATIONAL (arbitrary-precision ``Fraction``) or FLOAT
(64-bit floats).  Arithmetic never mixes modes; conversion is explicit via
:meth:`SparsePoly.to_float` / :meth:`SparsePoly.to_rational`.

The text serialization is one term per line, ``numerator/denominator e1 e2
... en``, with terms listed in descending graded-lex order so that files are
byte-stable.
"""

from __future__ import annotations

import enum
from fractions import Fraction
from typing import Mapping, Sequence

Exponent = tuple[int, ...]


class CoeffMode(enum.Enum):
    """Coefficient domain of a :class:`SparsePoly`."""

    RATIONAL = "rational"
    FLOAT = "float64"


def _coerce(value, mode: CoeffMode):
    if mode is CoeffMode.RATIONAL:
        if isinstance(value, float):
            raise TypeError("float value in rational mode; convert explicitly")
        return Fraction(value)
    return float(value)


def grlex_key(exponent: Exponent) -> tuple:
    """Sort key realizing graded-lex order with the first variable largest."""
    return (sum(exponent), exponent)


class SparsePoly:
    """Immutable sparse polynomial in ``nvars`` variables.

    Do not mutate ``terms`` after construction; all operations return new
    polynomials.
    """

    __slots__ = ("nvars", "terms", "mode")

    def __init__(self, nvars: int, terms: Mapping[Exponent, object] = (),
                 mode: CoeffMode = CoeffMode.RATIONAL):
        if nvars < 0:
            raise ValueError(f"nvars must be non-negative, got {nvars}")
        clean: dict[Exponent, object] = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for expo, coeff in items:
            expo = tuple(int(e) for e in expo)
            if len(expo) != nvars:
                raise ValueError(f"exponent {expo} has length {len(expo)}, expected {nvars}")
            if any(e < 0 for e in expo):
                raise ValueError(f"negative exponent in {expo}")
            value = _coerce(coeff, mode)
            if expo in clean:
                value = clean[expo] + value
            if value == 0:
                clean.pop(expo, None)
            else:
                clean[expo] = value
        object.__setattr__(self, "nvars", nvars)
        object.__setattr__(self, "terms", clean)
        object.__setattr__(self, "mode", mode)

    def __setattr__(self, name, value):
        raise AttributeError("SparsePoly is immutable")

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, nvars: int, mode: CoeffMode = CoeffMode.RATIONAL) -> "SparsePoly":
        return cls(nvars, {}, mode)

    @classmethod
    def constant(cls, nvars: int, value, mode: CoeffMode = CoeffMode.RATIONAL) -> "SparsePoly":
        return cls(nvars, {(0,) * nvars: value}, mode)

    @classmethod
    def variable(cls, nvars: int, index: int, mode: CoeffMode = CoeffMode.RATIONAL) -> "SparsePoly":
        if not 0 <= index < nvars:
            raise ValueError(f"variable index {index} out of range for nvars={nvars}")
        expo = [0] * nvars
        expo[index] = 1
        return cls(nvars, {tuple(expo): 1}, mode)

    # -- basic queries -----------------------------------------------------

    @property
    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    @property
    def num_terms(self) -> int:
        return len(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def coefficient(self, exponent: Sequence[int]):
        key = tuple(int(e) for e in exponent)
        zero = Fraction(0) if self.mode is CoeffMode.RATIONAL else 0.0
        return self.terms.get(key, zero)

    def sorted_terms(self) -> list[tuple[Exponent, object]]:
        """Terms in descending graded-lex order (canonical listing)."""
        return sorted(self.terms.items(), key=lambda kv: grlex_key(kv[0]), reverse=True)

    def __eq__(self, other) -> bool:
        if not isinstance(other, SparsePoly):
            return NotImplemented
        return (self.nvars == other.nvars and self.mode is other.mode
                and self.terms == other.terms)

    def __hash__(self):
        return hash((self.nvars, self.mode, frozenset(self.terms.items())))

    def __repr__(self) -> str:
        return (f"SparsePoly(nvars={self.nvars}, mode={self.mode.value}, "
                f"terms={self.num_terms}, degree={self.degree})")

    # -- arithmetic --------------------------------------------------------

    def _check_compatible(self, other: "SparsePoly") -> None:
        if self.nvars != other.nvars:
            raise ValueError(f"nvars mismatch: {self.nvars} vs {other.nvars}")
        if self.mode is not other.mode:
            raise ValueError(f"mode mismatch: {self.mode.value} vs {other.mode.value}")

    def __add__(self, other: "SparsePoly") -> "SparsePoly":
        self._check_compatible(other)
        out = dict(self.terms)
        for expo, coeff in other.terms.items():
            value = out.get(expo, 0) + coeff
            if value == 0:
                out.pop(expo, None)
            else:
                out[expo] = value
        return SparsePoly(self.nvars, out, self.mode)

    def __neg__(self) -> "SparsePoly":
        return SparsePoly(self.nvars, {e: -c for e, c in self.terms.items()}, self.mode)

    def __sub__(self, other: "SparsePoly") -> "SparsePoly":
        return self + (-other)

    def __mul__(self, other: "SparsePoly") -> "SparsePoly":
        self._check_compatible(other)
        out: dict[Exponent, object] = {}
        for ea, ca in self.terms.items():
            for eb, cb in other.terms.items():
                expo = tuple(a + b for a, b in zip(ea, eb))
                value = out.get(expo, 0) + ca * cb
                if value == 0:
                    out.pop(expo, None)
                else:
                    out[expo] = value
        return SparsePoly(self.nvars, out, self.mode)

    def scale(self, scalar) -> "SparsePoly":
        scalar = _coerce(scalar, self.mode)
        if scalar == 0:
            return SparsePoly.zero(self.nvars, self.mode)
        return SparsePoly(self.nvars, {e: c * scalar for e, c in self.terms.items()}, self.mode)

    def __pow__(self, n: int) -> "SparsePoly":
        if n < 0:
            raise ValueError("negative power")
        result = SparsePoly.constant(self.nvars, 1, self.mode)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    # -- evaluation and calculus -------------------------------------------

    def evaluate(self, point: Sequence):
        """Evaluate at ``point`` (length ``nvars``); exact in rational mode."""
        values = list(point)
        if len(values) != self.nvars:
            raise ValueError(f"point has length {len(values)}, expected {self.nvars}")
        values = [_coerce(v, self.mode) for v in values]
        total = Fraction(0) if self.mode is CoeffMode.RATIONAL else 0.0
        for expo, coeff in self.terms.items():
            term = coeff
            for e, v in zip(expo, values):
                if e:
                    term *= v ** e
            total += term
        return total

    def __call__(self, point: Sequence):
        return self.evaluate(point)

    def partial(self, index: int) -> "SparsePoly":
        """Partial derivative with respect to variable ``index``."""
        if not 0 <= index < self.nvars:
            raise ValueError(f"variable index {index} out of range")
        out: dict[Exponent, object] = {}
        for expo, coeff in self.terms.items():
            e = expo[index]
            if e == 0:
                continue
            new = list(expo)
            new[index] = e - 1
            out[tuple(new)] = coeff * e
        return SparsePoly(self.nvars, out, self.mode)

    def gradient(self, point: Sequence) -> tuple:
        """All partial derivatives evaluated at ``point``."""
        return tuple(self.partial(i).evaluate(point) for i in range(self.nvars))

    def restrict(self, assignments: Mapping[int, object]) -> "SparsePoly":
        """Substitute values for a subset of variables.

        The result is a polynomial in the remaining variables, in their
        original order.  An empty assignment returns the polynomial itself.
        """
        if not assignments:
            return self
        fixed = {int(i): _coerce(v, self.mode) for i, v in assignments.items()}
        for i in fixed:
            if not 0 <= i < self.nvars:
                raise ValueError(f"variable index {i} out of range for nvars={self.nvars}")
        keep = [i for i in range(self.nvars) if i not in fixed]
        out: dict[Exponent, object] = {}
        for expo, coeff in self.terms.items():
            value = coeff
            for i, v in fixed.items():
                e = expo[i]
                if e:
                    value *= v ** e
            if value == 0:
                continue
            new = tuple(expo[i] for i in keep)
            acc = out.get(new, 0) + value
            if acc == 0:
                out.pop(new, None)
            else:
                out[new] = acc
        return SparsePoly(len(keep), out, self.mode)

    # -- mode conversion ----------------------------------------------------

    def to_float(self) -> "SparsePoly":
        if self.mode is CoeffMode.FLOAT:
            return self
        return SparsePoly(self.nvars, {e: float(c) for e, c in self.terms.items()},
                          CoeffMode.FLOAT)

    def to_rational(self, max_denominator: int | None = None) -> "SparsePoly":
        if self.mode is CoeffMode.RATIONAL:
            return self
        out = {}
        for e, c in self.terms.items():
            frac = Fraction(c)
            if max_denominator is not None:
                frac = frac.limit_denominator(max_denominator)
            out[e] = frac
        return SparsePoly(self.nvars, out, CoeffMode.RATIONAL)

    # -- text format ---------------------------------------------------------

    def dumps(self) -> str:
        """Serialize as one term per line: ``numerator/denominator e1 ... en``."""
        lines = []
        for expo, coeff in self.sorted_terms():
            if self.mode is CoeffMode.RATIONAL:
                head = f"{coeff.numerator}/{coeff.denominator}"
            else:
                head = repr(coeff)
            lines.append(" ".join([head, *map(str, expo)]))
        return "\n".join(lines) + ("\n" if lines else "")

    @classmethod
    def loads(cls, text: str, nvars: int | None = None,
              mode: CoeffMode | None = None) -> "SparsePoly":
        """Parse the text format; infers nvars and mode unless given."""
        terms: dict[Exponent, object] = {}
        inferred_mode = mode
        for line in text.splitlines():
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            head, *rest = line.split()
            expo = tuple(int(tok) for tok in rest)
            if nvars is None:
                nvars = len(expo)
            if "/" in head:
                coeff = Fraction(head)
                line_mode = CoeffMode.RATIONAL
            elif any(ch in head for ch in ".eE") or head in ("inf", "-inf", "nan"):
                coeff = float(head)
                line_mode = CoeffMode.FLOAT
            else:
                coeff = Fraction(head)
                line_mode = CoeffMode.RATIONAL
            if inferred_mode is None:
                inferred_mode = line_mode
            terms[expo] = terms.get(expo, 0) + (
                coeff if inferred_mode is CoeffMode.RATIONAL else float(coeff))
        if nvars is None:
            raise ValueError("cannot infer nvars from empty text; pass nvars=")
        return cls(nvars, terms, inferred_mode or CoeffMode.RATIONAL)

    def dump_file(self, path) -> None:
        with open(path, "w", encoding="ascii") as fh:
            fh.write(self.dumps())

    @classmethod
    def load_file(cls, path, nvars: int | None = None,
                  mode: CoeffMode | None = None) -> "SparsePoly":
        with open(path, "r", encoding="ascii") as fh:
            return cls.loads(fh.read(), nvars=nvars, mode=mode)


def chebyshev_angle(j: int) -> tuple[SparsePoly, SparsePoly]:
    """Polynomials (f_j, g_j) in (c, s) with cos(j*t) = f_j(cos t, sin t) and
    sin(j*t) = g_j(cos t, sin t).

    Built from the angle-addition recurrence f_{j+1} = c*f_j - s*g_j,
    g_{j+1} = s*f_j + c*g_j starting from (c, s).
    """
    if j < 1:
        raise ValueError(f"index must be >= 1, got {j}")
    c = SparsePoly.variable(2, 0)
    s = SparsePoly.variable(2, 1)
    f, g = c, s
    for _ in range(j - 1):
        f, g = c * f - s * g, s * f + c * g
    return f, g


def monomials_up_to_degree(nvars: int, max_degree: int) -> list[Exponent]:
    """All exponent tuples of total degree <= max_degree, ascending graded-lex."""
    if nvars < 1:
        raise ValueError("nvars must be positive")
    if max_degree < 0:
        raise ValueError("max_degree must be non-negative")
    out: list[Exponent] = []
    for d in range(max_degree + 1):
        block: list[Exponent] = []

        def fill(prefix: list[int], remaining: int, slots: int) -> None:
            if slots == 1:
                block.append(tuple(prefix + [remaining]))
                return
            for e in range(remaining + 1):
                fill(prefix + [e], remaining - e, slots - 1)

        fill([], d, nvars)
        block.sort(reverse=True)
        out.extend(block)
    return out
