"""Buchberger Groebner bases over Q, monomial saturation and elimination.

Polynomials enter and leave as :class:`LaurentPolynomial` with nonnegative
exponents.  Internally a polynomial is a plain ``{exponent: Fraction}`` dict
kept monic during the computation.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from .laurent import Exponent, LaurentPolynomial

DEFAULT_SPAIR_CAP = 10**6


class ResourceLimitError(RuntimeError):
    """The S-pair budget was exhausted; the instance is too large."""


@dataclass(frozen=True)
class MonomialOrder:
    """``lex``, ``grevlex``, or a block order.

    A block order compares the variables in ``first`` by grevlex and breaks
    ties with ``rest`` (``grevlex`` or ``lex``) on the remaining variables,
    so it eliminates the ``first`` block.
    """

    kind: str = "grevlex"
    first: tuple[int, ...] = ()
    rest: str = "grevlex"

    def __post_init__(self):
        if self.kind not in ("lex", "grevlex", "block"):
            raise ValueError(f"unknown monomial order {self.kind!r}")
        if self.rest not in ("lex", "grevlex"):
            raise ValueError(f"unknown tie-break order {self.rest!r}")

    @classmethod
    def eliminating(cls, variables: Iterable[int], rest: str = "grevlex") -> MonomialOrder:
        return cls("block", tuple(sorted(set(variables))), rest)

    def key_function(self, arity: int) -> Callable[[Exponent], tuple]:
        if self.kind == "lex":
            return lambda e: e
        if self.kind == "grevlex":
            return _grevlex_key
        first = self.first
        rest = tuple(i for i in range(arity) if i not in first)
        tail = _grevlex_key if self.rest == "grevlex" else (lambda e: e)

        def key(e):
            return _grevlex_key(tuple(e[i] for i in first)) + tail(tuple(e[i] for i in rest))

        return key

    def __str__(self) -> str:
        if self.kind == "block":
            return f"block(first={list(self.first)}, rest={self.rest})"
        return self.kind


def _grevlex_key(e: Exponent) -> tuple:
    return (sum(e),) + tuple(-x for x in reversed(e))


@dataclass(frozen=True)
class PolynomialIdeal:
    """Finitely generated ideal of the polynomial ring Q[x_1..x_arity]."""

    arity: int
    generators: tuple[LaurentPolynomial, ...]
    order: MonomialOrder = field(default_factory=MonomialOrder)
    is_groebner: bool = False

    def __post_init__(self):
        gens = tuple(g for g in self.generators if not g.is_zero())
        for g in gens:
            if g.arity != self.arity:
                raise ValueError("generator arity does not match the ideal")
            if not g.is_polynomial():
                raise ValueError("ideal generators must be ordinary polynomials")
        object.__setattr__(self, "generators", gens)

    @classmethod
    def from_laurent(
        cls, polys: Iterable[LaurentPolynomial], arity: int | None = None, order: MonomialOrder | None = None
    ) -> PolynomialIdeal:
        """Clear each Laurent generator by its minimal monomial.

        On the torus this preserves the zero set; combine with
        :func:`saturate_by_monomial` to make the ideal torus-faithful.
        """
        polys = [p for p in polys]
        if arity is None:
            if not polys:
                raise ValueError("cannot infer arity of an empty generator list")
            arity = polys[0].arity
        return cls(arity, tuple(p.clear_denominators() for p in polys), order or MonomialOrder())

    def with_order(self, order: MonomialOrder) -> PolynomialIdeal:
        return PolynomialIdeal(self.arity, self.generators, order, False)

    def is_zero_ideal(self) -> bool:
        return not self.generators

    def to_strs(self, names: Sequence[str] | None = None) -> list[str]:
        return [g.to_str(names) for g in self.generators]

    def __str__(self) -> str:
        return "<" + ", ".join(self.to_strs()) + ">"


# ------------------------------------------------------------------ kernel

Poly = dict  # Exponent -> Fraction


def _divides(a: Exponent, b: Exponent) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _lcm(a: Exponent, b: Exponent) -> Exponent:
    return tuple(max(x, y) for x, y in zip(a, b))


def _coprime(a: Exponent, b: Exponent) -> bool:
    return not any(x and y for x, y in zip(a, b))


def _neg(key: tuple) -> tuple:
    return tuple(-x for x in key)


class _Engine:
    """One Groebner computation: order, basis storage and the S-pair budget."""

    def __init__(self, arity: int, key: Callable[[Exponent], tuple], spair_cap: int):
        self.arity = arity
        self.key = key
        self.spair_cap = spair_cap
        self.spairs = 0

    def leading(self, p: Poly) -> Exponent:
        return max(p, key=self.key)

    def monic(self, p: Poly) -> Poly:
        lc = p[self.leading(p)]
        return p if lc == 1 else {e: c / lc for e, c in p.items()}

    def reduce(self, p: Poly, basis: Sequence[tuple[Exponent, Poly]]) -> Poly:
        """Full normal form of ``p`` modulo monic ``basis``."""
        key = self.key
        terms = dict(p)
        heap = [(_neg(key(m)), m) for m in terms]
        heapq.heapify(heap)
        rem: Poly = {}
        while heap:
            _, m = heapq.heappop(heap)
            c = terms.pop(m, None)
            if not c:
                continue
            for lm, g in basis:
                if _divides(lm, m):
                    q = tuple(a - b for a, b in zip(m, lm))
                    for e, cg in g.items():
                        if e == lm:
                            continue
                        mm = tuple(a + b for a, b in zip(e, q))
                        old = terms.get(mm)
                        if old is None:
                            terms[mm] = -c * cg
                            heapq.heappush(heap, (_neg(key(mm)), mm))
                        else:
                            terms[mm] = old - c * cg
                    break
            else:
                rem[m] = c
        return rem

    def spoly(self, f: tuple[Exponent, Poly], g: tuple[Exponent, Poly], lcm: Exponent) -> Poly:
        (lf, pf), (lg, pg) = f, g
        qf = tuple(a - b for a, b in zip(lcm, lf))
        qg = tuple(a - b for a, b in zip(lcm, lg))
        out: Poly = {}
        for e, c in pf.items():
            out[tuple(a + b for a, b in zip(e, qf))] = c
        for e, c in pg.items():
            m = tuple(a + b for a, b in zip(e, qg))
            v = out.get(m, 0) - c
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return out

    def groebner(self, polys: Iterable[Poly]) -> list[Poly]:
        """Reduced monic Groebner basis (Buchberger, Gebauer-Moeller criteria)."""
        store: list[tuple[Exponent, Poly]] = []
        active: list[int] = []
        pairs: dict[tuple[int, int], Exponent] = {}

        def update(h: int):
            lh = store[h][0]
            cands = [(g, _lcm(lh, store[g][0])) for g in active]
            keep = []
            for k, (g, lcm) in enumerate(cands):
                if _coprime(lh, store[g][0]):
                    keep.append((g, lcm))
                    continue
                others = cands[k + 1:] + keep
                if not any(_divides(l2, lcm) for g2, l2 in others):
                    keep.append((g, lcm))
            for pair, lcm in list(pairs.items()):
                g1, g2 = pair
                if (
                    _divides(lh, lcm)
                    and _lcm(store[g1][0], lh) != lcm
                    and _lcm(lh, store[g2][0]) != lcm
                ):
                    del pairs[pair]
            for g, lcm in keep:
                if not _coprime(lh, store[g][0]):
                    pairs[(g, h)] = lcm
            active[:] = [g for g in active if not _divides(lh, store[g][0])]
            active.append(h)

        def add(p: Poly) -> bool:
            p = self.reduce(p, [store[g] for g in active])
            if not p:
                return False
            p = self.monic(p)
            store.append((self.leading(p), p))
            update(len(store) - 1)
            return all(e == (0,) * self.arity for e in p)

        for p in polys:
            if p and add(p):
                return [{(0,) * self.arity: Fraction(1)}]
        while pairs:
            pair = min(pairs, key=lambda pr: (self.key(pairs[pr]), pr))
            lcm = pairs.pop(pair)
            self.spairs += 1
            if self.spairs > self.spair_cap:
                raise ResourceLimitError(
                    f"S-pair cap {self.spair_cap} exceeded; instance too large"
                )
            s = self.spoly(store[pair[0]], store[pair[1]], lcm)
            if s and add(s):
                return [{(0,) * self.arity: Fraction(1)}]
        return self.interreduce([store[g] for g in active])

    def interreduce(self, basis: list[tuple[Exponent, Poly]]) -> list[Poly]:
        minimal = [
            (lm, p)
            for k, (lm, p) in enumerate(basis)
            if not any(
                _divides(l2, lm) and (l2 != lm or j < k)
                for j, (l2, _) in enumerate(basis)
                if j != k
            )
        ]
        out = []
        for k, (lm, p) in enumerate(minimal):
            others = [b for j, b in enumerate(minimal) if j != k]
            tail = self.reduce({e: c for e, c in p.items() if e != lm}, others)
            tail[lm] = Fraction(1)
            out.append(tail)
        out.sort(key=lambda p: self.key(self.leading(p)), reverse=True)
        return out


def _to_dict(p: LaurentPolynomial) -> Poly:
    return dict(p.items())


def _normalize(p: Poly, arity: int, key) -> LaurentPolynomial:
    return LaurentPolynomial(arity, p).primitive(key)


# ------------------------------------------------------------------ public API


def groebner(ideal: PolynomialIdeal, spair_cap: int = DEFAULT_SPAIR_CAP) -> PolynomialIdeal:
    """Reduced Groebner basis for ``ideal.order``.

    Generators come back integer-primitive with positive leading coefficient,
    sorted by decreasing leading monomial.  The zero ideal has no generators.
    """
    key = ideal.order.key_function(ideal.arity)
    engine = _Engine(ideal.arity, key, spair_cap)
    basis = engine.groebner(_to_dict(g) for g in ideal.generators)
    gens = tuple(_normalize(p, ideal.arity, key) for p in basis)
    return PolynomialIdeal(ideal.arity, gens, ideal.order, True)


def _as_basis(ideal: PolynomialIdeal, spair_cap: int) -> tuple[_Engine, list[tuple[Exponent, Poly]]]:
    if not ideal.is_groebner:
        ideal = groebner(ideal, spair_cap)
    engine = _Engine(ideal.arity, ideal.order.key_function(ideal.arity), spair_cap)
    basis = []
    for g in ideal.generators:
        p = engine.monic(_to_dict(g))
        basis.append((engine.leading(p), p))
    return engine, basis


def normal_form(
    p: LaurentPolynomial, ideal: PolynomialIdeal, spair_cap: int = DEFAULT_SPAIR_CAP
) -> LaurentPolynomial:
    """Remainder of ``p`` modulo a Groebner basis of ``ideal``."""
    engine, basis = _as_basis(ideal, spair_cap)
    return LaurentPolynomial(ideal.arity, engine.reduce(_to_dict(p), basis))


def contains(ideal: PolynomialIdeal, p: LaurentPolynomial, spair_cap: int = DEFAULT_SPAIR_CAP) -> bool:
    return normal_form(p, ideal, spair_cap).is_zero()


def is_trivial(ideal: PolynomialIdeal, spair_cap: int = DEFAULT_SPAIR_CAP) -> bool:
    """True iff 1 lies in the ideal."""
    gb = ideal if ideal.is_groebner else groebner(ideal, spair_cap)
    return any(g.degree() == 0 for g in gb.generators)


def _monomial_exponent(m, arity: int) -> Exponent:
    if isinstance(m, LaurentPolynomial):
        if not m.is_monomial():
            raise ValueError("saturation requires a monomial")
        (exp, _), = m.items()
    else:
        exp = tuple(int(x) for x in m)
    if len(exp) != arity:
        raise ValueError("monomial has wrong arity")
    if any(e < 0 for e in exp):
        raise ValueError("monomial must have nonnegative exponents")
    return exp


def _eliminate_with_saturation(
    ideal: PolynomialIdeal,
    drop: Sequence[int],
    saturate: Exponent | None,
    spair_cap: int,
) -> PolynomialIdeal:
    """``(I : m^inf)`` intersected with the ring of the variables not in ``drop``.

    An auxiliary variable y with ``y*m - 1`` is appended as the last
    coordinate; the block order eliminates y together with ``drop``.
    """
    n = ideal.arity
    gens = [g.extend(n + 1, range(n)) for g in ideal.generators]
    first = set(drop)
    if saturate is not None and any(saturate):
        sat = LaurentPolynomial(n + 1, {saturate + (1,): 1, (0,) * (n + 1): -1})
        gens.append(sat)
        first.add(n)
    order = MonomialOrder.eliminating(first)
    gb = groebner(PolynomialIdeal(n + 1, tuple(gens), order), spair_cap)
    kept = tuple(
        g.restrict(range(n)) for g in gb.generators if not g.depends_on(first)
    )
    return PolynomialIdeal(n, kept, MonomialOrder.eliminating(drop), True)


def saturate_by_monomial(
    ideal: PolynomialIdeal, m, spair_cap: int = DEFAULT_SPAIR_CAP
) -> PolynomialIdeal:
    """Generators of ``I : m^inf``, via ``y*m - 1`` and elimination of y."""
    exp = _monomial_exponent(m, ideal.arity)
    if not any(exp):
        raise ValueError("saturation by a constant monomial")
    return _eliminate_with_saturation(ideal, (), exp, spair_cap)


def eliminate(
    ideal: PolynomialIdeal, keep: Iterable[int], spair_cap: int = DEFAULT_SPAIR_CAP
) -> PolynomialIdeal:
    """Generators of ``I`` intersected with Q[keep], as a reduced Groebner basis."""
    keep = set(keep)
    drop = tuple(i for i in range(ideal.arity) if i not in keep)
    return _eliminate_with_saturation(ideal, drop, None, spair_cap)


def torus_eliminant(
    ideal: PolynomialIdeal,
    keep: Iterable[int],
    spair_cap: int = DEFAULT_SPAIR_CAP,
    saturate_kept: bool = True,
) -> PolynomialIdeal:
    """Elimination ideal of ``I`` saturated by the product of all variables.

    The dropped variables are saturated together with their elimination;
    the kept ones afterwards in the smaller ring, which gives the same ideal
    because saturation by an element of the kept ring commutes with
    elimination.  The result is a reduced grevlex basis in the kept
    variables, returned in the ambient arity.
    """
    keep = sorted(set(keep))
    n = ideal.arity
    drop = tuple(i for i in range(n) if i not in keep)
    all_drop = tuple(int(i in drop) for i in range(n))
    elim = _eliminate_with_saturation(ideal, drop, all_drop, spair_cap)
    small = PolynomialIdeal(
        len(keep), tuple(g.restrict(keep) for g in elim.generators), MonomialOrder()
    )
    if saturate_kept and small.generators and keep:
        small = _eliminate_with_saturation(small, (), (1,) * len(keep), spair_cap)
    gb = groebner(small.with_order(MonomialOrder()), spair_cap)
    return PolynomialIdeal(
        n, tuple(g.extend(n, keep) for g in gb.generators), MonomialOrder.eliminating(drop), True
    )


def radical_contains(
    ideal: PolynomialIdeal, p: LaurentPolynomial, spair_cap: int = DEFAULT_SPAIR_CAP
) -> bool:
    """Rabinowitsch test: is some power of ``p`` in the ideal?"""
    n = ideal.arity
    gens = [g.extend(n + 1, range(n)) for g in ideal.generators]
    y = LaurentPolynomial.variable(n + 1, n)
    gens.append(1 - y * p.extend(n + 1, range(n)))
    return is_trivial(PolynomialIdeal(n + 1, tuple(gens)), spair_cap)


def same_zero_set(
    a: PolynomialIdeal, b: PolynomialIdeal, spair_cap: int = DEFAULT_SPAIR_CAP
) -> bool:
    """True iff the two ideals have equal radicals (identical affine zero sets)."""
    if a.arity != b.arity:
        raise ValueError("ideals live in different rings")
    return all(radical_contains(b, g, spair_cap) for g in a.generators) and all(
        radical_contains(a, g, spair_cap) for g in b.generators
    )


def same_ideal(
    a: PolynomialIdeal, b: PolynomialIdeal, spair_cap: int = DEFAULT_SPAIR_CAP
) -> bool:
    """Mutual reduction: every generator of each reduces to zero modulo the other."""
    return all(contains(b, g, spair_cap) for g in a.generators) and all(
        contains(a, g, spair_cap) for g in b.generators
    )
