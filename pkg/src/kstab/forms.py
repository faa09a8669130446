"""Homogeneous forms and diagonal one-parameter subgroups."""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import gcd

from .errors import InputError
from .qgeom import fmt, q


@dataclass(frozen=True)
class Form:
    """A nonzero form of degree ``degree``; ``terms`` is a sorted tuple of
    ``(exponents, coefficient)`` pairs."""

    degree: int
    terms: tuple[tuple[tuple[int, ...], Fraction], ...]

    def __post_init__(self):
        if not self.terms:
            raise InputError("a form needs at least one term")
        exps = [e for e, _ in self.terms]
        if len(set(exps)) != len(exps):
            raise InputError("repeated exponent vector")
        nv = len(exps[0])
        for e, c in self.terms:
            if len(e) != nv:
                raise InputError("terms in different numbers of variables")
            if any(a < 0 for a in e) or sum(e) != self.degree:
                raise InputError(f"exponent {e} is not of degree {self.degree}")
            if c == 0:
                raise InputError("zero coefficient")

    @classmethod
    def make(cls, terms, degree=None):
        """``terms``: mapping or iterable of ``(exponents, coefficient)``."""
        items = terms.items() if isinstance(terms, dict) else terms
        acc = defaultdict(Fraction)
        for e, c in items:
            acc[tuple(int(a) for a in e)] += q(c)
        clean = tuple(sorted((e, c) for e, c in acc.items() if c != 0))
        if not clean:
            raise InputError("form is identically zero")
        if degree is None:
            degree = sum(clean[0][0])
        return cls(int(degree), clean)

    @classmethod
    def monomial(cls, exps, coeff=1):
        return cls.make([(exps, coeff)])

    @property
    def nvars(self) -> int:
        return len(self.terms[0][0])

    @property
    def support(self) -> tuple[tuple[int, ...], ...]:
        return tuple(e for e, _ in self.terms)

    def substitute(self, matrix) -> "Form":
        """``f(M x)``: each ``x_i`` becomes ``sum_j M[i][j] x_j``."""
        nv = self.nvars
        M = [[q(x) for x in row] for row in matrix]
        if len(M) != nv or any(len(r) != nv for r in M):
            raise InputError("substitution matrix has the wrong shape")
        # cache powers of each linear form
        lin = [{tuple(int(i == j) for i in range(nv)): M[r][j] for j in range(nv) if M[r][j] != 0}
               for r in range(nv)]
        cache = {}

        def power(r, p):
            key = (r, p)
            if key not in cache:
                if p == 0:
                    cache[key] = {tuple([0] * nv): Fraction(1)}
                else:
                    cache[key] = _mul(power(r, p - 1), lin[r])
            return cache[key]

        out = defaultdict(Fraction)
        for e, c in self.terms:
            poly = {tuple([0] * nv): c}
            for r, p in enumerate(e):
                if p:
                    poly = _mul(poly, power(r, p))
            for k, v in poly.items():
                out[k] += v
        return Form.make(out.items(), self.degree)

    def to_json(self):
        return {"degree": self.degree,
                "terms": [{"coeff": fmt(c), "exps": list(e)} for e, c in self.terms]}

    @classmethod
    def from_json(cls, d):
        return cls.make([(t["exps"], t["coeff"]) for t in d["terms"]], d.get("degree"))

    def __str__(self):
        parts = []
        for e, c in self.terms:
            mono = "*".join(f"x{i}^{a}" if a > 1 else f"x{i}" for i, a in enumerate(e) if a)
            parts.append(f"{c}*{mono}" if mono else str(c))
        return " + ".join(parts)


def _mul(a, b):
    out = defaultdict(Fraction)
    for ea, ca in a.items():
        for eb, cb in b.items():
            out[tuple(x + y for x, y in zip(ea, eb))] += ca * cb
    return {k: v for k, v in out.items() if v != 0}


def monomials(nvars: int, degree: int):
    """All exponent vectors of total degree ``degree``, lexicographically descending."""
    if nvars == 1:
        return [(degree,)]
    out = []
    for a in range(degree, -1, -1):
        for rest in monomials(nvars - 1, degree - a):
            out.append((a,) + rest)
    return out


@dataclass(frozen=True)
class OnePS:
    """Diagonal one-parameter subgroup of ``SL(n+1)``: integer weights summing to zero."""

    weights: tuple[int, ...]

    def __post_init__(self):
        if any(not isinstance(w, int) for w in self.weights):
            raise InputError("1-PS weights must be integers")
        if sum(self.weights) != 0:
            raise InputError(f"1-PS weights must sum to zero: {self.weights}")

    @classmethod
    def make(cls, weights, normalize=True):
        w = tuple(int(x) for x in weights)
        if sum(w) != 0:
            raise InputError(f"1-PS weights must sum to zero: {w}")
        if normalize:
            g = 0
            for x in w:
                g = gcd(g, x)
            if g > 1:
                w = tuple(x // g for x in w)
        return cls(w)

    @property
    def is_trivial(self) -> bool:
        return all(x == 0 for x in self.weights)

    def __iter__(self):
        return iter(self.weights)

    def __len__(self):
        return len(self.weights)


def weights_of(w) -> tuple[int, ...]:
    return w.weights if isinstance(w, OnePS) else tuple(int(x) for x in w)


def sum_zero_box(nvars: int, bound: int, primitive_only=True):
    """Every sum-zero integer vector with entries in ``[-bound, bound]``."""
    out = []
    for head in product(range(-bound, bound + 1), repeat=nvars - 1):
        last = -sum(head)
        if abs(last) > bound:
            continue
        w = head + (last,)
        if not any(w):
            continue
        if primitive_only:
            g = 0
            for x in w:
                g = gcd(g, x)
            if g != 1:
                continue
        out.append(w)
    return out
