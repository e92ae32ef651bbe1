"""Catalog of sl2-invariant R-matrix families with exact coefficient
evaluation.

Each family evaluates its spectral coefficients r_j at rational sample
points, over Q or over a quadratic extension Q(sqrt(d)).  The
Temperley-Lieb style family is parameterized multiplicatively: samples
are values of t = exp(gamma*lambda), so the additive arguments
(lambda, mu, lambda+mu) become (t, u, t*u) and everything stays exact.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Mapping

from .amatrix import LevelRange, eta_closed_form
from .exact import (DomainError, HalfInt, QuadExt, format_rational,
                    minus_one_pow, parse_rational, squarefree_split)

__all__ = [
    "PoleError",
    "RationalFunction",
    "ReducedDiagonal",
    "SpectralFamily",
    "baxter_b",
    "baxter_tl",
    "check_regularity_unitarity",
    "constant_baxter",
    "constant_root",
    "custom_family",
    "eval_coeff",
    "exceptional_s3",
    "family_from_json",
    "family_to_json",
    "identity_family",
    "krs_prefix",
    "make_family",
    "permutation_family",
    "reduced_d",
    "yang",
    "zamolodchikov",
]


class PoleError(ZeroDivisionError):
    """Evaluation at a pole of a spectral coefficient."""


TAGS = ("yang", "baxter-tl", "zamolodchikov", "krs-prefix", "exceptional-s3",
        "constant-baxter", "permutation", "identity", "custom")


@dataclass(frozen=True)
class RationalFunction:
    """num(x)/den(x) with rational coefficients, ascending powers."""

    num: tuple
    den: tuple

    def __call__(self, x):
        num = _horner(self.num, x)
        den = _horner(self.den, x)
        if den == 0:
            raise PoleError(f"denominator {list(self.den)} vanishes at {x}")
        return num / den


def _horner(coeffs, x):
    acc = x * 0
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


@dataclass(frozen=True)
class SpectralFamily:
    """A named R-matrix family with evaluable spectral coefficients.

    coeffs maps the total-spin label j to its coefficient function;
    labels absent from the map are undefined for this family (the
    prefix-style families only pin the top few).
    """

    tag: str
    s: HalfInt
    coeffs: Mapping[int, Callable]
    m: int | None = None
    discriminant: int = 1
    multiplicative: bool = False
    constant: bool = False
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.tag not in TAGS:
            raise DomainError(f"unknown family tag {self.tag!r}")
        if not self.constant:
            origin = self.zero_sample()
            for j in sorted(self.coeffs):
                value = self.coeffs[j](origin)
                if value != 1:
                    raise DomainError(
                        f"family {self.tag} not regular: r_{j} at the origin is {value}")

    def defined(self):
        return sorted(self.coeffs)

    def eval_coeff(self, j: int, lam):
        if j not in self.coeffs:
            raise DomainError(
                f"family {self.tag} does not define r_{j} "
                f"(defined: {self.defined()})")
        return self.coeffs[j](lam)

    def compose(self, lam, mu):
        """Sample composition matching the family parameterization."""
        return lam * mu if self.multiplicative else lam + mu

    def invert_sample(self, lam):
        if self.multiplicative:
            if lam == 0:
                raise PoleError("sample t = 0 has no multiplicative inverse")
            return 1 / lam
        return -lam

    def zero_sample(self):
        return Fraction(1) if self.multiplicative else Fraction(0)

    def __str__(self):
        return f"{self.tag}(s={self.s})"


def eval_coeff(fam: SpectralFamily, j: int, lam):
    return fam.eval_coeff(j, lam)


@dataclass(frozen=True)
class ReducedDiagonal:
    """Level-n diagonal with entries r_{2s-k} for k over the level range."""

    range: LevelRange
    entries: tuple

    def __iter__(self):
        return iter(self.entries)


def reduced_d(fam: SpectralFamily, n: int, lam) -> ReducedDiagonal:
    rng = LevelRange.for_level(fam.s, n)
    ts = fam.s.twice
    return ReducedDiagonal(rng, tuple(fam.eval_coeff(ts - k, lam)
                                      for k in rng.indices()))


def baxter_b(eta: Fraction) -> QuadExt:
    """The larger root b of b + 1/b = 1/eta, in Q(sqrt(1 - 4 eta^2))."""
    eta = Fraction(eta)
    if eta == 0:
        raise DomainError("eta must be nonzero")
    disc = 1 - 4 * eta * eta
    if disc < 0:
        raise DomainError("discriminant 1 - 4*eta^2 is negative")
    m, d = squarefree_split(disc.numerator * disc.denominator)
    root = Fraction(m, disc.denominator)  # sqrt(disc) = root*sqrt(d)
    return QuadExt(Fraction(1, 2) / eta, root / (2 * eta), d)


def constant_root(eta: Fraction, branch: int = +1) -> QuadExt:
    """Root g = (-1 +- sqrt(1-4 eta^2)) / (2 eta^2) of 1 + g + eta^2 g^2."""
    eta = Fraction(eta)
    if eta == 0:
        raise DomainError("eta must be nonzero")
    disc = 1 - 4 * eta * eta
    if disc < 0:
        raise DomainError("discriminant 1 - 4*eta^2 is negative")
    m, d = squarefree_split(disc.numerator * disc.denominator)
    root = Fraction(m, disc.denominator)
    scale = Fraction(1) / (2 * eta * eta)
    sign = 1 if branch >= 0 else -1
    return QuadExt(-scale, sign * root * scale, d)


def _require_spin(s, minimum_twice: int, why: str) -> HalfInt:
    s = HalfInt.coerce(s)
    if s.twice < minimum_twice:
        raise DomainError(why)
    return s


def yang(s) -> SpectralFamily:
    """Rational family r_j = (1 + (-1)^(2s-j) lambda)/(1 + lambda)."""
    s = HalfInt.coerce(s)
    ts = s.twice

    def coeff(j):
        sign = minus_one_pow(ts - j)

        def r(lam):
            den = 1 + lam
            if den == 0:
                raise PoleError("1 + lambda vanishes at lambda = -1")
            return (1 + sign * lam) / den
        return r

    return SpectralFamily("yang", s, {j: coeff(j) for j in range(ts + 1)})


def zamolodchikov(s, m: int | None = None) -> SpectralFamily:
    """Family with a shifted coefficient at j = 2s - m:

        r_j = (1 + (-1)^(2s-j) lambda + [j == 2s-m] g(lambda)) / (1 + lambda),
        g(lambda) = lambda / (eta - xi/2 - xi eta lambda),

    with xi = (-1)^m and eta the level-m diagonal constant.  Coefficients
    below j = 2s - m are undefined unless m = 2s.
    """
    s = _require_spin(s, 2, "the shifted family needs s >= 1")
    ts = s.twice
    if m is None:
        m = ts
    if not 2 <= m <= ts:
        raise DomainError(f"m={m} must satisfy 2 <= m <= 2s={ts}")
    xi = minus_one_pow(m)
    eta = eta_closed_form(s, m)

    def g(lam):
        den = eta - Fraction(xi, 2) - xi * eta * lam
        if den == 0:
            raise PoleError(f"eta - xi/2 - xi*eta*lambda vanishes at {lam}")
        return lam / den

    def coeff(j):
        sign = minus_one_pow(ts - j)
        shifted = j == ts - m

        def r(lam):
            den = 1 + lam
            if den == 0:
                raise PoleError("1 + lambda vanishes at lambda = -1")
            base = 1 + sign * lam
            if shifted:
                base = base + g(lam)
            return base / den
        return r

    return SpectralFamily("zamolodchikov", s,
                          {j: coeff(j) for j in range(ts - m, ts + 1)},
                          m=m, params={"xi": xi, "eta": eta})


def baxter_tl(s, m: int | None = None) -> SpectralFamily:
    """Temperley-Lieb style family over Q(sqrt(d)), multiplicative samples:

        r_0(t) = 1 + (t - 1)/(A - B t),  r_j = 1 for j >= 1,

    where A = eta*b, B = eta/b are the roots of x^2 - x + eta^2 and
    b + 1/b = 1/eta with eta = 1/(2s+1).  Only the m = 2s member has a
    closed form for every coefficient.
    """
    s = _require_spin(s, 2, "the Temperley-Lieb family needs s >= 1")
    ts = s.twice
    if m is None:
        m = ts
    if m != ts:
        raise DomainError("only m = 2s has closed-form lower coefficients; "
                          "supply others as a custom family")
    eta = eta_closed_form(s, ts)
    b = baxter_b(eta)
    big_a, big_b = eta * b, eta * b.inverse()
    d = b.d

    def r0(t):
        den = big_a - big_b * t
        if den.is_zero:
            raise PoleError(f"A - B*t vanishes at t = {t}")
        return 1 + (t - 1) * den.inverse()

    coeffs = {j: (lambda t: QuadExt(1, 0, d)) for j in range(1, ts + 1)}
    coeffs[0] = r0
    return SpectralFamily("baxter-tl", s, coeffs, m=ts, discriminant=d,
                          multiplicative=True, params={"eta": eta})


def krs_prefix(s) -> SpectralFamily:
    """Only the three highest coefficients are pinned:

        r_2s = 1,  r_{2s-1} = (1-l)/(1+l),
        r_{2s-2} = (1-l)/(1+l) * (1 - tau l)/(1 + tau l),  tau = 2s/(2s-1).

    Lower coefficients are undefined; levels above 2 cannot be formed.
    """
    s = _require_spin(s, 2, "the prefix family needs s >= 1")
    ts = s.twice
    tau = Fraction(ts, ts - 1)

    def ratio(c):
        def r(lam):
            den = 1 + c * lam
            if den == 0:
                raise PoleError(f"1 + {c}*lambda vanishes at {lam}")
            return (1 - c * lam) / den
        return r

    r1, rtau = ratio(Fraction(1)), ratio(tau)
    return SpectralFamily("krs-prefix", s, {
        ts: lambda lam: Fraction(1) + 0 * lam,
        ts - 1: r1,
        ts - 2: lambda lam: r1(lam) * rtau(lam),
    }, params={"tau": tau})


def exceptional_s3() -> SpectralFamily:
    """The spin-3 solution with shifted coefficients at j = 3 and j = 0:

        r_6 = r_4 = r_2 = 1,  r_5 = r_1 = (1-l)/(1+l),
        r_3 = (4-l)/(4+l),    r_0 = (1-l)/(1+l) * (6-l)/(6+l).
    """
    def ratio(a):
        def r(lam):
            den = a + lam
            if den == 0:
                raise PoleError(f"{a} + lambda vanishes at {lam}")
            return (a - lam) / den
        return r

    one = lambda lam: Fraction(1) + 0 * lam
    r1, r4, r6 = ratio(Fraction(1)), ratio(Fraction(4)), ratio(Fraction(6))
    return SpectralFamily("exceptional-s3", HalfInt(6), {
        6: one, 4: one, 2: one,
        5: r1, 1: r1,
        3: r4,
        0: lambda lam: r1(lam) * r6(lam),
    }, m=3)


def constant_baxter(s, m: int, branch: int = +1) -> SpectralFamily:
    """Constant family r_j = 1 + [j == 2s-m] g with g a root of the
    level-m quadratic 1 + g + eta^2 g^2 = 0, living in Q(sqrt(1-4 eta^2)).

    For m = 2s this is a full solution.  For m < 2s it is only the leading
    part of one: it passes every level up through m and fails at level
    m + 1, which is exactly the obstruction forcing lower coefficients.
    """
    s = _require_spin(s, 2, "constant shifted family needs s >= 1")
    ts = s.twice
    if not 2 <= m <= ts:
        raise DomainError(f"m={m} must satisfy 2 <= m <= 2s={ts}")
    eta = eta_closed_form(s, m)
    g = constant_root(eta, branch)
    d = g.d

    def coeff(j):
        value = QuadExt(1, 0, d) + (g if j == ts - m else 0)
        return lambda lam: value

    return SpectralFamily("constant-baxter", s,
                          {j: coeff(j) for j in range(ts + 1)},
                          m=m, discriminant=d, constant=True,
                          params={"eta": eta, "g": g, "branch": branch})


def permutation_family(s) -> SpectralFamily:
    s = HalfInt.coerce(s)
    ts = s.twice
    return SpectralFamily(
        "permutation", s,
        {j: (lambda v: (lambda lam: v))(Fraction(minus_one_pow(ts - j)))
         for j in range(ts + 1)},
        constant=True)


def identity_family(s) -> SpectralFamily:
    s = HalfInt.coerce(s)
    return SpectralFamily(
        "identity", s,
        {j: (lambda lam: Fraction(1)) for j in range(s.twice + 1)},
        constant=True)


def custom_family(s, tables: Mapping[int, RationalFunction],
                  multiplicative: bool = False,
                  constant: bool = False) -> SpectralFamily:
    """Family from explicit rational-function coefficient tables."""
    s = HalfInt.coerce(s)
    return SpectralFamily("custom", s, dict(tables),
                          multiplicative=multiplicative, constant=constant)


_BUILTIN_FACTORIES = {
    "yang": lambda s, m: yang(s),
    "baxter-tl": lambda s, m: baxter_tl(s, m),
    "zamolodchikov": lambda s, m: zamolodchikov(s, m),
    "krs-prefix": lambda s, m: krs_prefix(s),
    "exceptional-s3": lambda s, m: exceptional_s3(),
    "constant-baxter": lambda s, m: constant_baxter(s, m if m else None),
    "permutation": lambda s, m: permutation_family(s),
    "identity": lambda s, m: identity_family(s),
}


def make_family(tag: str, s=None, m: int | None = None) -> SpectralFamily:
    if tag == "exceptional-s3":
        return exceptional_s3()
    if tag not in _BUILTIN_FACTORIES:
        raise DomainError(f"unknown family tag {tag!r} (one of {TAGS})")
    if s is None:
        raise DomainError(f"family {tag!r} needs a spin")
    if tag == "constant-baxter" and m is None:
        raise DomainError("constant-baxter needs m")
    return _BUILTIN_FACTORIES[tag](s, m)


def family_to_json(fam: SpectralFamily) -> dict:
    doc = {"tag": fam.tag, "s": str(fam.s)}
    if fam.m is not None:
        doc["m"] = fam.m
    if fam.tag == "custom":
        coeffs = []
        for j in range(fam.s.twice + 1):
            if j in fam.coeffs and isinstance(fam.coeffs[j], RationalFunction):
                rf = fam.coeffs[j]
                coeffs.append({"num": [format_rational(c) for c in rf.num],
                               "den": [format_rational(c) for c in rf.den]})
            else:
                coeffs.append(None)
        doc["coeffs"] = coeffs
        if fam.multiplicative:
            doc["multiplicative"] = True
        if fam.constant:
            doc["constant"] = True
    return doc


def family_from_json(doc: dict | str) -> SpectralFamily:
    """Family description: {"tag": ..., "s": "p/2", "m": int?, "coeffs":
    [{"num": [...], "den": [...]} | null, ...]?}; coefficient lists are
    ascending powers, entries rational strings or numbers."""
    if isinstance(doc, str):
        doc = json.loads(doc)
    tag = doc["tag"]
    s = HalfInt.parse(str(doc["s"])) if "s" in doc else None
    m = doc.get("m")
    if tag != "custom":
        return make_family(tag, s, m)
    tables = {}
    for j, entry in enumerate(doc.get("coeffs", [])):
        if entry is None:
            continue
        num = tuple(parse_rational(str(c)) for c in entry["num"])
        den = tuple(parse_rational(str(c)) for c in entry["den"])
        tables[j] = RationalFunction(num, den)
    return custom_family(s, tables,
                         multiplicative=bool(doc.get("multiplicative", False)),
                         constant=bool(doc.get("constant", False)))


def check_regularity_unitarity(fam: SpectralFamily, samples) -> dict:
    """Exact regularity, unitarity, and normalization at each sample:

        r_j(origin) = 1,  r_j(x) r_j(inv x) = 1,  r_{2s}(x) = 1.
    """
    ts = fam.s.twice
    failures = []
    origin = fam.zero_sample()
    for j in fam.defined():
        if fam.eval_coeff(j, origin) != 1:
            failures.append({"check": "regular", "j": j})
    checks = []
    for x in samples:
        for j in fam.defined():
            product = fam.eval_coeff(j, x) * fam.eval_coeff(j, fam.invert_sample(x))
            ok = product == 1
            checks.append({"check": "unitary", "j": j, "sample": str(x), "ok": ok})
            if not ok:
                failures.append({"check": "unitary", "j": j, "sample": str(x)})
        if ts in fam.coeffs:
            ok = fam.eval_coeff(ts, x) == 1
            checks.append({"check": "normalized", "sample": str(x), "ok": ok})
            if not ok:
                failures.append({"check": "normalized", "sample": str(x)})
    return {"family": fam.tag, "s": str(fam.s), "samples": [str(x) for x in samples],
            "checks": checks, "failures": failures, "pass": not failures}
