"""Sparse Laurent polynomials with integer coefficients."""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping

Exponent = tuple[int, ...]


class NotDivisible(ArithmeticError):
    """Raised by exact division when the quotient is not a Laurent polynomial."""


class LaurentPolynomial:
    """Immutable map from exponent vectors to nonzero integers."""

    __slots__ = ("nvars", "_terms", "_hash", "_key")

    def __init__(self, nvars: int, terms: Mapping[Exponent, int] | Iterable = ()):
        self.nvars = nvars
        items = terms.items() if isinstance(terms, Mapping) else terms
        clean: dict[Exponent, int] = {}
        for e, c in items:
            e = tuple(e)
            if len(e) != nvars:
                raise ValueError(f"exponent {e} has wrong length for {nvars} variables")
            c = clean.get(e, 0) + int(c)
            if c:
                clean[e] = c
            else:
                clean.pop(e, None)
        self._terms = clean
        self._hash = None
        self._key = None

    @classmethod
    def _raw(cls, nvars: int, terms: dict) -> LaurentPolynomial:
        obj = cls.__new__(cls)
        obj.nvars = nvars
        obj._terms = terms
        obj._hash = None
        obj._key = None
        return obj

    @classmethod
    def constant(cls, nvars: int, c: int) -> LaurentPolynomial:
        return cls._raw(nvars, {(0,) * nvars: c} if c else {})

    @classmethod
    def monomial(cls, exponents: Iterable[int], c: int = 1) -> LaurentPolynomial:
        e = tuple(exponents)
        return cls._raw(len(e), {e: c} if c else {})

    @classmethod
    def variable(cls, nvars: int, i: int) -> LaurentPolynomial:
        """The 0-based variable ``i``."""
        e = [0] * nvars
        e[i] = 1
        return cls.monomial(e)

    @property
    def terms(self) -> dict[Exponent, int]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def is_zero(self) -> bool:
        return not self._terms

    def __len__(self) -> int:
        return len(self._terms)

    def sorted_terms(self) -> list[tuple[Exponent, int]]:
        if self._key is None:
            self._key = tuple(sorted(self._terms.items()))
        return list(self._key)

    def __eq__(self, other) -> bool:
        if not isinstance(other, LaurentPolynomial):
            return NotImplemented
        return self.nvars == other.nvars and self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self._terms.items())))
        return self._hash

    def _check(self, other: LaurentPolynomial):
        if self.nvars != other.nvars:
            raise ValueError("polynomials live in different rings")

    def __add__(self, other: LaurentPolynomial) -> LaurentPolynomial:
        self._check(other)
        out = dict(self._terms)
        for e, c in other._terms.items():
            v = out.get(e, 0) + c
            if v:
                out[e] = v
            else:
                del out[e]
        return LaurentPolynomial._raw(self.nvars, out)

    def __neg__(self) -> LaurentPolynomial:
        return LaurentPolynomial._raw(self.nvars, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other: LaurentPolynomial) -> LaurentPolynomial:
        return self + (-other)

    def __mul__(self, other: LaurentPolynomial) -> LaurentPolynomial:
        self._check(other)
        out: dict[Exponent, int] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                v = out.get(e, 0) + c1 * c2
                if v:
                    out[e] = v
                else:
                    del out[e]
        return LaurentPolynomial._raw(self.nvars, out)

    def __pow__(self, k: int) -> LaurentPolynomial:
        if k < 0:
            raise ValueError("negative powers are only defined for monomials")
        result = LaurentPolynomial.constant(self.nvars, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def min_exponents(self) -> Exponent:
        return tuple(min(col) for col in zip(*self._terms))

    def max_exponents(self) -> Exponent:
        return tuple(max(col) for col in zip(*self._terms))

    def div_exact(self, other: LaurentPolynomial) -> LaurentPolynomial:
        """Exact quotient in the Laurent ring, else :class:`NotDivisible`.

        Lex-leading-term division.  The quotient's exponents are confined to the
        box ``[min(p) - min(q), max(p) - max(q)]`` per variable, so a candidate
        term outside it proves non-divisibility and guarantees termination.
        """
        self._check(other)
        if other.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        if self.is_zero():
            return self
        if len(other._terms) == 1:
            (eq, cq), = other._terms.items()
            out = {}
            for e, c in self._terms.items():
                if c % cq:
                    raise NotDivisible("coefficient not divisible")
                out[tuple(a - b for a, b in zip(e, eq))] = c // cq
            return LaurentPolynomial._raw(self.nvars, out)
        lo = tuple(a - b for a, b in zip(self.min_exponents(), other.min_exponents()))
        hi = tuple(a - b for a, b in zip(self.max_exponents(), other.max_exponents()))
        if any(a > b for a, b in zip(lo, hi)):
            raise NotDivisible("exponent box is empty")
        q_lead = max(other._terms)
        cq = other._terms[q_lead]
        q_items = list(other._terms.items())
        rem = dict(self._terms)
        quot: dict[Exponent, int] = {}
        while rem:
            lead = max(rem)
            c = rem[lead]
            if c % cq:
                raise NotDivisible("leading coefficient not divisible")
            t = tuple(a - b for a, b in zip(lead, q_lead))
            if any(x < l or x > h for x, l, h in zip(t, lo, hi)):
                raise NotDivisible("quotient term leaves the exponent box")
            f = c // cq
            quot[t] = f
            for e, cc in q_items:
                ee = tuple(a + b for a, b in zip(e, t))
                v = rem.get(ee, 0) - f * cc
                if v:
                    rem[ee] = v
                else:
                    del rem[ee]
        return LaurentPolynomial._raw(self.nvars, quot)

    def evaluate(self, point) -> Fraction:
        total = Fraction(0)
        for e, c in self._terms.items():
            term = Fraction(c)
            for x, k in zip(point, e):
                if k:
                    term *= Fraction(x) ** k
            total += term
        return total

    def to_records(self) -> list[dict]:
        return [{"exponents": list(e), "coefficient": c} for e, c in self.sorted_terms()]

    @classmethod
    def from_records(cls, nvars: int, records) -> LaurentPolynomial:
        return cls(nvars, [(tuple(r["exponents"]), r["coefficient"]) for r in records])

    def __repr__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for e, c in sorted(self._terms.items(), reverse=True):
            mono = "*".join(f"x{i + 1}" if k == 1 else f"x{i + 1}^{k}" for i, k in enumerate(e) if k)
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")


def arith(p: LaurentPolynomial, q: LaurentPolynomial, op: str) -> LaurentPolynomial:
    if op == "add":
        return p + q
    if op == "mul":
        return p * q
    if op == "div_exact":
        return p.div_exact(q)
    raise ValueError(f"unknown operation {op!r}")


def denominator_vector(p: LaurentPolynomial) -> tuple[int, ...]:
    """``d_i`` is minus the smallest exponent of variable ``i`` in ``p``."""
    if p.is_zero():
        raise ValueError("the zero polynomial has no denominator vector")
    return tuple(-m for m in p.min_exponents())
