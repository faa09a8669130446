"""CM weights of product test configurations of ``(P^n, sum_j y_j {f_j = 0})``.

The family is ``P^n x A^1`` polarized by ``L = -K = O(n+1)``; the C*-action
comes from a diagonal 1-PS ``w`` and each boundary divisor degenerates to
the zero locus of the minimal-weight part of ``f_j``. The weight of
``lambda_{CM,beta}`` is computed three ways:

``def31``
    sample equivariant determinant weights of ``H^0(kL)`` and of the
    boundary restrictions, interpolate the Knudsen-Mumford top coefficients
    in the binomial basis, read ``a_0, a_1, ~a_0`` off fibre Hilbert
    polynomials, and assemble the CM exponents;
``lem32``
    ``-(1 + beta mu n) w(L^{n+1}) + beta (n+1) w(L^n D)`` from closed-form
    equivariant intersection numbers, ``mu = sum y_j e_j / (n+1)``;
``lem41``
    ``sum_j beta (n+1) vol y_j * mu_HM(f_j, w)`` with ``vol = (n+1)^n``.

``beta`` is never fixed numerically: each weight is stored as a linear
polynomial ``const + slope * beta``.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial

from . import kernels, qgeom
from .errors import ConsistencyError, InputError
from .forms import Form, OnePS, monomials, weights_of
from .githm import hm_weight
from .qgeom import fmt, fmt_vec, q, qvec


@dataclass(frozen=True)
class LinearInBeta:
    const: Fraction
    slope: Fraction

    def at(self, beta) -> Fraction:
        return self.const + self.slope * q(beta)

    @property
    def is_zero(self) -> bool:
        return self.const == 0 and self.slope == 0

    def ratio_to(self, other: "LinearInBeta") -> Fraction | None:
        """``s`` with ``self == s * other``; ``None`` if not proportional."""
        if other.is_zero:
            return Fraction(0) if self.is_zero else None
        s = self.slope / other.slope if other.slope != 0 else self.const / other.const
        if self.const == s * other.const and self.slope == s * other.slope:
            return s
        return None

    def to_json(self):
        return {"const": fmt(self.const), "beta": fmt(self.slope)}


@dataclass(frozen=True)
class EquivariantFamily:
    n: int
    forms: tuple[Form, ...]
    multipliers: tuple[Fraction, ...]

    def __post_init__(self):
        if self.n < 1:
            raise InputError("n must be >= 1")
        if not self.forms or len(self.forms) != len(self.multipliers):
            raise InputError("one multiplier per form")
        if any(y <= 0 for y in self.multipliers):
            raise InputError("boundary multipliers must be positive")
        if any(f.nvars != self.n + 1 for f in self.forms):
            raise InputError(f"forms must have {self.n + 1} variables")

    @classmethod
    def make(cls, n, forms, multipliers=None):
        forms = tuple(forms)
        if multipliers is None:
            multipliers = [1] * len(forms)
        return cls(int(n), forms, qvec(multipliers))

    @property
    def degrees(self):
        return tuple(f.degree for f in self.forms)

    @property
    def mu(self) -> Fraction:
        """``D = mu * (-K)``."""
        return sum((y * e for y, e in zip(self.multipliers, self.degrees)), Fraction(0)) / (self.n + 1)


def anticanonical_to_family(n, l, c, eps=1):
    """Boundary ``sum_j eps c_j D_j`` with ``D_j in (1/l_j)|-l_j K|`` on ``P^n``
    becomes degrees ``e_j = l_j (n+1)`` and multipliers ``y_j = eps c_j / l_j``."""
    l = qvec(l)
    e = [li * (n + 1) for li in l]
    if any(x.denominator != 1 for x in e):
        raise InputError("l_j (n+1) must be an integer degree")
    return tuple(int(x) for x in e), tuple(q(eps) * q(cj) / lj for cj, lj in zip(c, l))


def family_to_anticanonical(n, e, y):
    """Inverse of :func:`anticanonical_to_family` with ``eps = 1``: ``(l, c)``."""
    l = tuple(Fraction(ej, n + 1) for ej in e)
    return l, tuple(q(yj) * lj for yj, lj in zip(y, l))


@dataclass(frozen=True)
class CMWeightReport:
    weight_def31: LinearInBeta | None
    weight_lem32: LinearInBeta | None
    weight_lem41: LinearInBeta | None
    hm_weights: tuple[int, ...]
    effective_linearization: tuple[Fraction, ...]
    scalars: dict
    agree: bool
    beta: Fraction | None = None

    @property
    def scalar(self):
        return self.scalars.get("def31")

    def to_json(self):
        def show(v):
            if v is None:
                return None
            if self.beta is not None:
                return fmt(v.at(self.beta))
            return fmt(v.slope) if v.const == 0 else v.to_json()

        return {
            "weights": {"def31": show(self.weight_def31), "lem32": show(self.weight_lem32),
                        "lem41": show(self.weight_lem41)},
            "scalar": fmt(self.scalar) if self.scalar is not None else None,
            "scalars": {k: (fmt(v) if v is not None else None) for k, v in self.scalars.items()},
            "gamma": fmt_vec(self.effective_linearization),
            "hm_weights": list(self.hm_weights),
            "agree": self.agree,
            "beta": "symbolic" if self.beta is None else fmt(self.beta),
        }


# ----------------------------------------------------------- det weights

def _det_weight(n, w, m, quotient_by=None):
    # any integer w; the public wrapper insists on sum zero
    if m < 0:
        raise InputError("degree must be >= 0")
    total = kernels.monomial_weight_sum(m, w)
    if quotient_by is None:
        return total
    f, e = quotient_by
    if e > m:
        raise InputError(f"quotient degree {e} exceeds m = {m}")
    lowest = min(sum(a * b for a, b in zip(alpha, w)) for alpha in f.support)
    return total - kernels.monomial_weight_sum(m - e, w) - comb(m - e + n, n) * lowest


def equivariant_det_weight(n: int, w, m: int, quotient_by=None) -> int:
    """Weight of ``det H^0(O(m))``, or of ``det`` of its quotient by
    ``f * H^0(O(m - e))`` after ``f`` degenerates to its minimal-weight part."""
    w = OnePS.make(weights_of(w), normalize=False) if not isinstance(w, OnePS) else w
    if len(w) != n + 1:
        raise InputError("1-PS has the wrong number of entries")
    if quotient_by is not None:
        f, e = quotient_by
        if f.degree != e:
            raise InputError("quotient degree does not match the form")
    return _det_weight(n, w.weights, m, quotient_by)


# --------------------------------------------------------- interpolation

def _binomial_fit(samples, degree):
    """Coefficients ``c_0..c_degree`` with ``W(k) = sum_i c_i C(k, i)``, fitted
    on the first ``degree+1`` samples and checked on the rest."""
    samples = sorted((int(k), q(v)) for k, v in samples)
    ks = [k for k, _ in samples]
    if len(set(ks)) != len(ks):
        raise InputError("sample points must be distinct")
    if len(samples) < degree + 1:
        raise ConsistencyError(f"need {degree + 1} samples, got {len(samples)}")
    fit = samples[:degree + 1]
    A = [[comb(k, i) for i in range(degree + 1)] for k, _ in fit]
    coeffs = qgeom.solve_linear_system(A, [v for _, v in fit])
    for k, v in samples[degree + 1:]:
        pred = sum((c * comb(k, i) for i, c in enumerate(coeffs)), Fraction(0))
        if pred != v:
            raise ConsistencyError("samples are not polynomial of the expected degree",
                                   {"k": k, "value": str(v), "predicted": str(pred)})
    return coeffs


def mk_top_coefficients(samples, n: int, divisor_samples=None):
    """Top Knudsen-Mumford weights from sampled determinant weights.

    ``samples`` are ``(k, w(det H^0(kL)))`` pairs, ``k >= n + 1``, at least
    ``n + 2`` of them (extras are held out as a polynomiality check).
    Returns ``(w(lambda_{n+1}), w(lambda_n), w(~lambda_n))``; the last entry
    is ``None`` without ``divisor_samples``.
    """
    samples = list(samples)
    if any(k < n + 1 for k, _ in samples):
        raise InputError(f"samples must have k >= n + 1 = {n + 1}")
    c = _binomial_fit(samples, n + 1)
    div = None
    if divisor_samples is not None:
        divisor_samples = list(divisor_samples)
        if any(k < n + 1 for k, _ in divisor_samples):
            raise InputError(f"samples must have k >= n + 1 = {n + 1}")
        div = _binomial_fit(divisor_samples, n)[n]
    return c[n + 1], c[n], div


def _power_fit(samples, degree):
    A = [[Fraction(k) ** i for i in range(degree + 1)] for k, _ in samples[:degree + 1]]
    coeffs = qgeom.solve_linear_system(A, [q(v) for _, v in samples[:degree + 1]])
    for k, v in samples[degree + 1:]:
        if sum((c * Fraction(k) ** i for i, c in enumerate(coeffs)), Fraction(0)) != v:
            raise ConsistencyError("Hilbert function is not polynomial on the sample range")
    return coeffs


def fibre_hilbert_coefficients(n, degrees, multipliers, ks):
    """``(a_0, a_1, ~a_0)`` of ``h^0(kL) = a_0 k^n + a_1 k^{n-1} + ...`` and
    ``h^0(D, kL) = ~a_0 k^{n-1} + ...``, fitted to monomial counts."""
    ell = n + 1
    amb = [(k, kernels.count_bounded_monomials(n + 1, ell * k, [])) for k in ks]
    pa = _power_fit(amb, n)
    a0, a1 = pa[n], pa[n - 1]
    at0 = Fraction(0)
    for e, y in zip(degrees, multipliers):
        div = [(k, kernels.count_bounded_monomials(n + 1, ell * k, [])
                - kernels.count_bounded_monomials(n + 1, ell * k - e, [])) for k in ks]
        pd = _power_fit(div, n - 1)
        at0 += y * pd[n - 1]
    return a0, a1, at0


# ------------------------------------------------------------- the routes

def _sample_ks(fam):
    ell = fam.n + 1
    k0 = max(fam.n + 1, -(-max(fam.degrees) // ell))
    return list(range(k0, k0 + fam.n + 3))


def _route_def31(fam: EquivariantFamily, w) -> LinearInBeta:
    n = fam.n
    ell = n + 1
    ks = _sample_ks(fam)
    amb = [(k, _det_weight(n, w, ell * k)) for k in ks]
    lam_top = lam_next = None
    lam_div = Fraction(0)
    for f, y in zip(fam.forms, fam.multipliers):
        div = [(k, _det_weight(n, w, ell * k, (f, f.degree))) for k in ks]
        lam_top, lam_next, ld = mk_top_coefficients(amb, n, div)
        lam_div += y * ld
    a0, a1, at0 = fibre_hilbert_coefficients(n, fam.degrees, fam.multipliers, ks)
    const = (2 * a1 / a0 + n * (n + 1)) * lam_top - 2 * (n + 1) * lam_next
    slope = -at0 / a0 * lam_top + (n + 1) * lam_div
    return LinearInBeta(const, slope)


def _route_lem32(fam: EquivariantFamily, w) -> LinearInBeta:
    n = fam.n
    ell = n + 1
    sw = sum(w)
    top = Fraction(ell ** (n + 1) * sw)
    div = Fraction(0)
    for f, y in zip(fam.forms, fam.multipliers):
        lowest = min(sum(a * b for a, b in zip(alpha, w)) for alpha in f.support)
        div += y * ell ** n * (f.degree * sw - lowest)
    return LinearInBeta(-top, -fam.mu * n * top + (n + 1) * div)


def product_coefficients(fam: EquivariantFamily) -> tuple[Fraction, ...]:
    """Coefficient of ``beta`` in front of each ``mu_HM(f_j, w)``."""
    vol = (fam.n + 1) ** fam.n
    return tuple((fam.n + 1) * vol * y for y in fam.multipliers)


def _route_lem41(fam: EquivariantFamily, w) -> LinearInBeta:
    mus = [hm_weight(f, w) for f in fam.forms]
    return LinearInBeta(Fraction(0), sum((g * m for g, m in zip(product_coefficients(fam), mus)),
                                         Fraction(0)))


def cm_weight(fam: EquivariantFamily, w, route: str = "all", beta=None) -> CMWeightReport:
    """CM weight of the product test configuration induced by ``w``.

    With ``route="all"`` the three routes are compared against ``lem32``;
    each must be a positive multiple of it (or all zero). A mismatch raises
    :class:`ConsistencyError` carrying every intermediate value.
    """
    if not isinstance(w, OnePS):
        w = OnePS.make(w, normalize=False)
    if len(w) != fam.n + 1:
        raise InputError("1-PS has the wrong number of entries")
    if route not in ("def31", "lem32", "lem41", "all"):
        raise InputError(f"unknown route {route!r}")
    wt = w.weights
    got = {}
    for name, fn in (("def31", _route_def31), ("lem32", _route_lem32), ("lem41", _route_lem41)):
        if route in (name, "all"):
            got[name] = fn(fam, wt)
    mus = tuple(hm_weight(f, wt) for f in fam.forms)
    gamma = product_coefficients(fam)
    gmin = min(gamma)
    gamma = tuple(g / gmin for g in gamma)
    scalars = {}
    agree = True
    if route == "all":
        ref = got["lem32"]
        for name in ("def31", "lem41"):
            s = got[name].ratio_to(ref)
            scalars[name] = s if not ref.is_zero else None
            if s is None or (not ref.is_zero and s <= 0):
                agree = False
        if not agree:
            raise ConsistencyError(
                "CM weight routes disagree",
                {"w": list(wt), "n": fam.n, "degrees": list(fam.degrees),
                 "multipliers": fmt_vec(fam.multipliers),
                 **{k: v.to_json() for k, v in got.items()}},
            )
    return CMWeightReport(got.get("def31"), got.get("lem32"), got.get("lem41"), mus, gamma,
                          scalars, agree, None if beta is None else q(beta))


# ------------------------------------------------- effective linearization

def random_form(rng: random.Random, nvars: int, degree: int, max_terms: int = 2) -> Form:
    mons = monomials(nvars, degree)
    count = rng.randint(1, min(max_terms, len(mons)))
    picks = rng.sample(mons, count)
    return Form.make([(p, rng.choice([-3, -2, -1, 1, 2, 3])) for p in picks], degree)


def random_one_ps(rng: random.Random, nvars: int, bound: int = 5) -> OnePS:
    while True:
        head = [rng.randint(-bound, bound) for _ in range(nvars - 1)]
        last = -sum(head)
        if abs(last) <= bound and any(head + [last]):
            return OnePS(tuple(head + [last]))


def effective_linearization(n: int, degrees, multipliers, *, samples: int = 20, seed: int = 0,
                            max_samples: int = 200):
    """Fit ``gamma`` with ``def31 weight = sum_j gamma_j mu(f_j, w)`` exactly on
    random monomial/binomial tuples, normalized so ``min gamma = 1``."""
    degrees = tuple(int(e) for e in degrees)
    multipliers = qvec(multipliers)
    k = len(degrees)
    if len(multipliers) != k:
        raise InputError("one multiplier per degree")
    rng = random.Random(seed)
    rows, rhs = [], []
    used = 0
    while True:
        forms = [random_form(rng, n + 1, e) for e in degrees]
        w = random_one_ps(rng, n + 1)
        fam = EquivariantFamily.make(n, forms, multipliers)
        val = _route_def31(fam, w.weights)
        if val.const != 0:
            raise ConsistencyError("CM weight has a nonzero beta-free part for a sum-zero 1-PS")
        rows.append([hm_weight(f, w) for f in forms])
        rhs.append(val.slope)
        used += 1
        if used >= samples and qgeom.rank(rows) == k:
            break
        if used >= max_samples:
            raise ConsistencyError("sampled weights never determined the linearization")
    gamma = qgeom.solve_linear_system(rows, rhs)
    if gamma is None:
        raise ConsistencyError("CM weight is not linear in the Hilbert-Mumford weights",
                               {"rows": rows, "rhs": [str(x) for x in rhs]})
    gmin = min(gamma)
    if gmin <= 0:
        raise ConsistencyError("effective linearization is not positive",
                               {"gamma": [str(g) for g in gamma]})
    return tuple(g / gmin for g in gamma)
