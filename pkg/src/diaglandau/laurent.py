"""Exact multivariate Laurent polynomials over Q.

A polynomial is an immutable map from integer exponent tuples to nonzero
:class:`fractions.Fraction` coefficients.  Variable names are not part of the
value; they are supplied when parsing and printing.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from functools import reduce
from typing import TYPE_CHECKING, Iterable, Iterator, Mapping, Sequence

from .lattice import IntegerMatrix, LatticeError, as_matrix

if TYPE_CHECKING:
    from .polytope import Face

Exponent = tuple[int, ...]


def graded_lex_key(exp: Exponent) -> tuple:
    return (sum(exp), exp)


class LaurentPolynomial:
    """Laurent polynomial in a fixed number of variables with rational coefficients."""

    __slots__ = ("_arity", "_terms", "_hash")

    def __init__(self, arity: int, terms: Mapping[Exponent, object] | None = None):
        if arity < 0:
            raise ValueError("arity must be nonnegative")
        clean: dict[Exponent, Fraction] = {}
        for exp, c in (terms or {}).items():
            exp = tuple(int(e) for e in exp)
            if len(exp) != arity:
                raise ValueError(f"exponent {exp} does not have arity {arity}")
            c = Fraction(c)
            if c:
                clean[exp] = clean.get(exp, 0) + c
                if not clean[exp]:
                    del clean[exp]
        self._arity = arity
        self._terms = dict(sorted(clean.items(), key=lambda t: graded_lex_key(t[0]), reverse=True))
        self._hash = None

    @classmethod
    def _raw(cls, arity: int, terms: dict[Exponent, Fraction]) -> LaurentPolynomial:
        # trusted constructor: terms already clean
        obj = cls.__new__(cls)
        obj._arity = arity
        obj._terms = dict(sorted(terms.items(), key=lambda t: graded_lex_key(t[0]), reverse=True))
        obj._hash = None
        return obj

    @classmethod
    def constant(cls, arity: int, value=1) -> LaurentPolynomial:
        return cls(arity, {(0,) * arity: value})

    @classmethod
    def monomial(cls, exp: Sequence[int], coeff=1) -> LaurentPolynomial:
        return cls(len(exp), {tuple(exp): coeff})

    @classmethod
    def variable(cls, arity: int, i: int) -> LaurentPolynomial:
        return cls.monomial(tuple(int(j == i) for j in range(arity)))

    @property
    def arity(self) -> int:
        return self._arity

    @property
    def terms(self) -> dict[Exponent, Fraction]:
        """Copy of the term map, in canonical (descending graded-lex) order."""
        return dict(self._terms)

    def items(self) -> Iterator[tuple[Exponent, Fraction]]:
        return iter(self._terms.items())

    @property
    def support(self) -> frozenset[Exponent]:
        return frozenset(self._terms)

    def coefficient(self, exp: Sequence[int]) -> Fraction:
        return self._terms.get(tuple(exp), Fraction(0))

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def is_polynomial(self) -> bool:
        """True when no exponent is negative."""
        return all(e >= 0 for exp in self._terms for e in exp)

    def __eq__(self, other) -> bool:
        if isinstance(other, LaurentPolynomial):
            return self._arity == other._arity and self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self == LaurentPolynomial.constant(self._arity, other)
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self._arity, frozenset(self._terms.items())))
        return self._hash

    def _coerce(self, other) -> LaurentPolynomial:
        if isinstance(other, LaurentPolynomial):
            if other._arity != self._arity:
                raise ValueError(f"arity mismatch: {self._arity} vs {other._arity}")
            return other
        if isinstance(other, (int, Fraction)):
            return LaurentPolynomial.constant(self._arity, other)
        raise TypeError(f"cannot combine LaurentPolynomial with {type(other).__name__}")

    def __add__(self, other) -> LaurentPolynomial:
        other = self._coerce(other)
        out = dict(self._terms)
        for exp, c in other._terms.items():
            v = out.get(exp, 0) + c
            if v:
                out[exp] = v
            else:
                out.pop(exp, None)
        return LaurentPolynomial._raw(self._arity, out)

    __radd__ = __add__

    def __neg__(self) -> LaurentPolynomial:
        return LaurentPolynomial._raw(self._arity, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other) -> LaurentPolynomial:
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> LaurentPolynomial:
        return self._coerce(other) - self

    def __mul__(self, other) -> LaurentPolynomial:
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        other = self._coerce(other)
        out: dict[Exponent, Fraction] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return LaurentPolynomial._raw(self._arity, {e: c for e, c in out.items() if c})

    __rmul__ = __mul__

    def scale(self, factor) -> LaurentPolynomial:
        factor = Fraction(factor)
        if not factor:
            return LaurentPolynomial(self._arity)
        return LaurentPolynomial._raw(self._arity, {e: c * factor for e, c in self._terms.items()})

    def __pow__(self, k: int) -> LaurentPolynomial:
        if not isinstance(k, int):
            raise TypeError("exponent must be an integer")
        if k < 0:
            if not self.is_monomial():
                raise ValueError("negative power of a non-monomial")
            (exp, c), = self._terms.items()
            return LaurentPolynomial._raw(self._arity, {tuple(e * k for e in exp): 1 / c ** -k})
        result = LaurentPolynomial.constant(self._arity)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def shift(self, exp: Sequence[int]) -> LaurentPolynomial:
        """Multiply by the monomial ``z^exp``."""
        return LaurentPolynomial._raw(
            self._arity,
            {tuple(a + b for a, b in zip(e, exp)): c for e, c in self._terms.items()},
        )

    def log_derivative(self, i: int) -> LaurentPolynomial:
        """``z_i * d/dz_i`` applied to the polynomial (0-based index ``i``)."""
        if not 0 <= i < self._arity:
            raise IndexError(f"variable index {i} out of range for arity {self._arity}")
        return LaurentPolynomial._raw(
            self._arity, {e: c * e[i] for e, c in self._terms.items() if e[i]}
        )

    def derivative(self, i: int) -> LaurentPolynomial:
        """Ordinary partial derivative with respect to variable ``i``."""
        shift = tuple(-int(j == i) for j in range(self._arity))
        return self.log_derivative(i).shift(shift)

    def min_exponent(self) -> Exponent:
        """Componentwise minimum of the support (zeros for the zero polynomial)."""
        if not self._terms:
            return (0,) * self._arity
        return tuple(min(col) for col in zip(*self._terms))

    def clear_denominators(self) -> LaurentPolynomial:
        """Multiply by the least monomial making every exponent nonnegative and
        every variable absent from at least one term."""
        return self.shift(tuple(-m for m in self.min_exponent()))

    def content(self) -> Fraction:
        """Positive rational c such that self / c has coprime integer coefficients."""
        if not self._terms:
            return Fraction(0)
        nums = [c.numerator for c in self._terms.values()]
        dens = [c.denominator for c in self._terms.values()]
        return Fraction(reduce(math.gcd, nums), reduce(math.lcm, dens))

    def primitive(self, sign_key=None) -> LaurentPolynomial:
        """Integer-primitive associate with a positive leading coefficient.

        The leading term is the largest under ``sign_key`` (default: graded
        lex), matching the printed order.
        """
        if not self._terms:
            return self
        lead = max(self._terms, key=sign_key or graded_lex_key)
        c = self.content()
        if self._terms[lead] < 0:
            c = -c
        return self.scale(1 / c)

    def variables(self) -> set[int]:
        return {i for exp in self._terms for i, e in enumerate(exp) if e}

    def depends_on(self, indices: Iterable[int]) -> bool:
        idx = list(indices)
        return any(exp[i] for exp in self._terms for i in idx)

    def degree(self) -> int:
        return max((sum(e) for e in self._terms), default=0)

    def evaluate(self, point: Sequence):
        """Numeric value at a point of the torus (float/complex/Fraction)."""
        if len(point) != self._arity:
            raise ValueError("point has wrong arity")
        exact = all(isinstance(x, (int, Fraction)) for x in point)
        total = 0
        for exp, c in self._terms.items():
            term = c if exact else float(c)
            for x, e in zip(point, exp):
                if e:
                    term = term * (Fraction(x) ** e if exact else x ** e)
            total = total + term
        return total

    def extend(self, arity: int, positions: Sequence[int]) -> LaurentPolynomial:
        """Embed into a larger ring; variable i goes to ``positions[i]``."""
        if len(positions) != self._arity:
            raise ValueError("need one target position per variable")
        out = {}
        for exp, c in self._terms.items():
            new = [0] * arity
            for p, e in zip(positions, exp):
                new[p] = e
            out[tuple(new)] = c
        return LaurentPolynomial._raw(arity, out)

    def restrict(self, positions: Sequence[int]) -> LaurentPolynomial:
        """Project onto the listed variables; other variables must be absent."""
        keep = set(positions)
        out = {}
        for exp, c in self._terms.items():
            if any(e for i, e in enumerate(exp) if i not in keep):
                raise ValueError("polynomial involves a dropped variable")
            out[tuple(exp[p] for p in positions)] = c
        return LaurentPolynomial._raw(len(positions), out)

    def to_str(self, names: Sequence[str] | None = None) -> str:
        names = list(names) if names is not None else default_names(self._arity)
        if len(names) != self._arity:
            raise ValueError("wrong number of variable names")
        if not self._terms:
            return "0"
        parts = []
        for k, (exp, c) in enumerate(self._terms.items()):
            factors = []
            for name, e in zip(names, exp):
                if e == 1:
                    factors.append(name)
                elif e:
                    factors.append(f"{name}^{e}")
            mag = abs(c)
            if not factors:
                body = str(mag)
            elif mag == 1:
                body = "*".join(factors)
            else:
                body = "*".join([str(mag)] + factors)
            if k == 0:
                parts.append(("-" if c < 0 else "") + body)
            else:
                parts.append(("- " if c < 0 else "+ ") + body)
        return " ".join(parts)

    def __str__(self) -> str:
        return self.to_str()

    def __repr__(self) -> str:
        return f"LaurentPolynomial({self._arity}, {self.to_str()!r})"


def default_names(n: int) -> list[str]:
    return [f"x{i + 1}" for i in range(n)]


def add(a: LaurentPolynomial, b) -> LaurentPolynomial:
    return a + b


def sub(a: LaurentPolynomial, b) -> LaurentPolynomial:
    return a - b


def mul(a: LaurentPolynomial, b) -> LaurentPolynomial:
    return a * b


def neg(a: LaurentPolynomial) -> LaurentPolynomial:
    return -a


def scale(a: LaurentPolynomial, c) -> LaurentPolynomial:
    return a.scale(c)


def arith(op: str, a: LaurentPolynomial, b=None) -> LaurentPolynomial:
    """Dispatch one of ``add, sub, mul, neg, scale`` by name."""
    ops = {"add": add, "sub": sub, "mul": mul, "scale": scale}
    if op == "neg":
        return neg(a)
    if op not in ops:
        raise ValueError(f"unknown operation {op!r}")
    return ops[op](a, b)


def log_derivative(f: LaurentPolynomial, i: int) -> LaurentPolynomial:
    return f.log_derivative(i)


def monomial_substitute(f: LaurentPolynomial, a: IntegerMatrix | Sequence[Sequence[int]]) -> LaurentPolynomial:
    """Substitute ``z = w^A``: the term ``z^alpha`` becomes ``w^(A alpha)``.

    Column i of ``A`` is the w-exponent of ``z_i``; hence if ``B = A^-1`` has
    columns ``q_j`` then ``z^(q_j)`` maps to ``w_j``.
    """
    a = as_matrix(a)
    if not a.is_square() or a.rows != f.arity:
        raise LatticeError(f"need a {f.arity}x{f.arity} matrix, got {a.shape}")
    if abs(a.det()) != 1:
        raise LatticeError("substitution matrix is not unimodular")
    return LaurentPolynomial._raw(f.arity, {a.apply(exp): c for exp, c in f.items()})


def truncate_to_face(f: LaurentPolynomial, face: "Face") -> LaurentPolynomial:
    """Sum of the terms of ``f`` whose exponents lie on ``face``."""
    if face.polytope.generators != f.support:
        raise ValueError("face does not belong to the Newton polytope of f")
    keep = face.support_points
    return LaurentPolynomial._raw(f.arity, {e: c for e, c in f.items() if e in keep})


# ---------------------------------------------------------------- parsing

class ParseError(ValueError):
    """Malformed expression; ``position`` is a 0-based character offset."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


_TOKEN = re.compile(
    r"\s*(?:(?P<num>\d+(?:\s*/\s*\d+)?)|(?P<name>[A-Za-z_][A-Za-z_0-9]*)|(?P<op>[-+*^()]))"
)


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            start = pos + len(text[pos:]) - len(text[pos:].lstrip())
            raise ParseError(f"unexpected character {text[start]!r}", start)
        kind = m.lastgroup
        tokens.append((kind, m.group(kind), m.start(kind)))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, names: Sequence[str]):
        self.tokens = _tokenize(text)
        self.k = 0
        self.names = list(names)
        self.arity = len(names)

    def peek(self):
        return self.tokens[self.k]

    def take(self):
        tok = self.tokens[self.k]
        self.k += 1
        return tok

    def expect(self, value: str):
        kind, text, pos = self.take()
        if text != value:
            raise ParseError(f"expected {value!r}, found {text or 'end of input'!r}", pos)

    def parse(self) -> LaurentPolynomial:
        poly = self.expr()
        kind, text, pos = self.peek()
        if kind != "end":
            raise ParseError(f"unexpected token {text!r}", pos)
        return poly

    def expr(self) -> LaurentPolynomial:
        poly = self.term()
        while self.peek()[1] in ("+", "-"):
            op = self.take()[1]
            rhs = self.term()
            poly = poly + rhs if op == "+" else poly - rhs
        return poly

    def term(self) -> LaurentPolynomial:
        poly = self.unary()
        while self.peek()[1] == "*":
            self.take()
            poly = poly * self.unary()
        return poly

    def unary(self) -> LaurentPolynomial:
        if self.peek()[1] == "-":
            self.take()
            return -self.unary()
        if self.peek()[1] == "+":
            self.take()
            return self.unary()
        return self.power()

    def power(self) -> LaurentPolynomial:
        base = self.atom()
        if self.peek()[1] != "^":
            return base
        self.take()
        exponent = self.signed_int()
        if exponent < 0 and not base.is_monomial():
            raise ParseError("negative power of a non-monomial", self.tokens[self.k - 1][2])
        return base ** exponent

    def signed_int(self) -> int:
        sign = 1
        paren = False
        if self.peek()[1] == "(":
            self.take()
            paren = True
        while self.peek()[1] in ("-", "+"):
            if self.take()[1] == "-":
                sign = -sign
        kind, text, pos = self.take()
        if kind != "num" or "/" in text:
            raise ParseError("exponent must be an integer literal", pos)
        if paren:
            self.expect(")")
        return sign * int(text)

    def atom(self) -> LaurentPolynomial:
        kind, text, pos = self.take()
        if kind == "num":
            num, _, den = text.partition("/")
            if den and int(den) == 0:
                raise ParseError("zero denominator", pos)
            value = Fraction(int(num), int(den) if den else 1)
            return LaurentPolynomial.constant(self.arity, value)
        if kind == "name":
            if text not in self.names:
                raise ParseError(f"unknown variable {text!r}", pos)
            return LaurentPolynomial.variable(self.arity, self.names.index(text))
        if text == "(":
            inner = self.expr()
            self.expect(")")
            return inner
        raise ParseError(f"unexpected {text or 'end of input'!r}", pos)


def parse(text: str, names: Sequence[str]) -> LaurentPolynomial:
    """Parse an expression over the given ordered variable names.

    Grammar: rational literals ``p`` or ``p/q``, variables, ``+ - * ^`` and
    parentheses.  Exponents are integer literals, possibly negative
    (``z1^-2``); negative powers are allowed on monomials only.
    """
    if len(set(names)) != len(names):
        raise ValueError("duplicate variable names")
    return _Parser(text, names).parse()
