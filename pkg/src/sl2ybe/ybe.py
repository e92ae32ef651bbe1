"""Exact verification of the reduced Yang-Baxter equation

    D(lambda) D^(lambda+mu) D(mu) = D^(mu) D(lambda+mu) D^(lambda),

level by level, where D^ = A D A.  Everything runs on the rational
similarity gauge: A enters only as its ucore M*U, so residuals are exact
matrices over Q or Q(sqrt(d)).
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from .amatrix import (LevelRange, RankOneProjector, SignDiagonal, a_matrix,
                      eta, top_level, xi_sign)
from .exact import DomainError, HalfInt
from .linalg import (diag_mul_left, diag_mul_right, diagonal, identity,
                     is_zero_matrix, mat_add, mat_mul, mat_scale, mat_sub)
from .spectral import SpectralFamily, reduced_d

__all__ = [
    "CoeffTriple",
    "CrosscheckResult",
    "ReducedResidual",
    "ansatz_residual_crosscheck",
    "coeff_functions",
    "constant_check",
    "default_grid",
    "full_check",
    "reduced_ybe_check",
    "second_grid",
    "theta",
    "unitarity_samples",
]

# Disjoint rational sample grids; all entries positive, clear of every
# catalog pole (poles sit on the negative axis or at irrational t).
DEFAULT_GRID = ((Fraction(1, 2), Fraction(1, 3)), (Fraction(1), Fraction(2)),
                (Fraction(1, 3), Fraction(1, 5)), (Fraction(3, 2), Fraction(1, 4)),
                (Fraction(2, 5), Fraction(3, 7)), (Fraction(5, 2), Fraction(1, 6)))
SECOND_GRID = ((Fraction(1, 4), Fraction(1, 7)), (Fraction(2), Fraction(3)),
               (Fraction(1, 5), Fraction(2, 3)), (Fraction(7, 3), Fraction(1, 2)),
               (Fraction(3, 8), Fraction(5, 6)), (Fraction(4), Fraction(1, 9)))
# Multiplicative counterparts (t-samples > 1 keep t, u, t*u distinct).
DEFAULT_GRID_MULT = ((Fraction(2), Fraction(3)), (Fraction(2), Fraction(5)),
                     (Fraction(3), Fraction(4)), (Fraction(5), Fraction(2)),
                     (Fraction(7), Fraction(3)), (Fraction(4), Fraction(9)))
SECOND_GRID_MULT = ((Fraction(3), Fraction(5)), (Fraction(2), Fraction(7)),
                    (Fraction(9), Fraction(2)), (Fraction(5), Fraction(3)),
                    (Fraction(6), Fraction(7)), (Fraction(8), Fraction(3)))
# Unitarity needs r_j defined and nonzero at the sample and its mirror;
# these stay clear of every catalog pole and coefficient zero.
UNITARITY_SAMPLES = (Fraction(1, 3), Fraction(2, 7), Fraction(5, 9))
UNITARITY_SAMPLES_MULT = (Fraction(2), Fraction(3), Fraction(9, 2))


def unitarity_samples(fam: SpectralFamily):
    return UNITARITY_SAMPLES_MULT if fam.multiplicative else UNITARITY_SAMPLES


def default_grid(fam: SpectralFamily):
    return DEFAULT_GRID_MULT if fam.multiplicative else DEFAULT_GRID


def second_grid(fam: SpectralFamily):
    return SECOND_GRID_MULT if fam.multiplicative else SECOND_GRID


def theta(s, m: int, n: int) -> int:
    """1 when the distinguished index m lives in the level-n range (the
    shifted coefficient actually appears at this level), else 0."""
    return int(m in LevelRange.for_level(s, n))


@dataclass(frozen=True)
class ReducedResidual:
    """Exact left-minus-right of the level-n reduced equation at one
    sample pair, in the rational gauge of that level."""

    n: int
    lam: object
    mu: object
    residual: tuple

    @property
    def is_zero(self) -> bool:
        return is_zero_matrix(self.residual)


def _hatter(s, n: int):
    mu_core = a_matrix(s, n).ucore()
    return lambda x: mat_mul(mat_mul(mu_core, x), mu_core)


def reduced_ybe_check(fam: SpectralFamily, n: int, lam, mu) -> ReducedResidual:
    """Exact level-n residual for the family at samples (lam, mu)."""
    mu_core = a_matrix(fam.s, n).ucore()
    comp = fam.compose(lam, mu)
    d1 = reduced_d(fam, n, lam).entries
    d2 = reduced_d(fam, n, comp).entries
    d3 = reduced_d(fam, n, mu).entries

    def hat(entries):
        return mat_mul(diag_mul_right(mu_core, entries), mu_core)

    lhs = diag_mul_left(d1, diag_mul_right(hat(d2), d3))
    rhs = mat_mul(diag_mul_right(hat(d3), d2), hat(d1))
    return ReducedResidual(n, lam, mu, mat_sub(lhs, rhs))


def _levels_or_default(fam: SpectralFamily, levels):
    """Requested levels, or the contiguous prefix the family defines."""
    if levels is not None:
        return list(levels)
    ts = fam.s.twice
    out = []
    for n in range(top_level(fam.s) + 1):
        rng = LevelRange.for_level(fam.s, n)
        if not all(ts - k in fam.coeffs for k in rng.indices()):
            break
        out.append(n)
    return out


def _check_level_defined(fam: SpectralFamily, n: int):
    ts = fam.s.twice
    rng = LevelRange.for_level(fam.s, n)
    for k in rng.indices():
        if ts - k not in fam.coeffs:
            raise DomainError(
                f"family {fam.tag} lacks r_{ts - k} needed at level n={n}")


def full_check(fam: SpectralFamily, levels=None, samples=None) -> dict:
    """Per-level, per-sample residual table; pass iff every residual is
    exactly zero."""
    samples = list(samples) if samples is not None else list(default_grid(fam))
    levels = _levels_or_default(fam, levels)
    out_levels = []
    ok = True
    for n in levels:
        _check_level_defined(fam, n)
        rows = []
        for lam, mu in samples:
            zero = reduced_ybe_check(fam, n, lam, mu).is_zero
            ok = ok and zero
            rows.append({"lambda": str(lam), "mu": str(mu), "zero": zero})
        out_levels.append({"n": n, "samples": rows})
    return {"family": fam.tag, "s": str(fam.s), "levels": out_levels, "pass": ok}


def constant_check(fam: SpectralFamily, levels=None) -> dict:
    """Braid-form check D D^ D = D^ D D^ per level for a constant family."""
    levels = _levels_or_default(fam, levels)
    marker = fam.zero_sample()
    rows = []
    ok = True
    for n in levels:
        _check_level_defined(fam, n)
        hat = _hatter(fam.s, n)
        d = diagonal(reduced_d(fam, n, marker).entries)
        dh = hat(d)
        zero = is_zero_matrix(mat_sub(mat_mul(mat_mul(d, dh), d),
                                      mat_mul(mat_mul(dh, d), dh)))
        ok = ok and zero
        rows.append({"n": n, "zero": zero})
    return {"family": fam.tag, "s": str(fam.s), "levels": rows, "pass": ok}


@dataclass(frozen=True)
class CoeffTriple:
    """The scalar functions multiplying the matrix system at one level:

        F = f(l) + f(m) - f(l+m)
        G = theta * (g(l)+g(m)-g(l+m) + xi(f g + g f) + g g
                     + eta g g f(l+m) + eta^2 g g g(l+m))
        H = theta * (g(l) f(l+m) - f(l) g(l+m) + xi eta g(l) f(m) g(l+m))

    plus H with the samples swapped.
    """

    F: object
    G: object
    H: object
    H_swapped: object
    xi: int
    eta: Fraction | None
    theta: int


def coeff_functions(s, m: int, n: int, f: Callable, g: Callable,
                    lam, mu, combine: Callable = None,
                    eta_value=None) -> CoeffTriple:
    """Evaluate the level-n scalar system for given f and g.

    `combine` defaults to addition; pass multiplication for families in
    the multiplicative variable.  `eta_value` overrides the level
    constant and marks the cell active, which is how the level-4
    continuation at 2s = 3 is driven.
    """
    s = HalfInt.coerce(s)
    comp = combine(lam, mu) if combine is not None else lam + mu
    th = 1 if eta_value is not None else theta(s, m, n)
    xi = xi_sign(m)
    fl, fm, fc = f(lam), f(mu), f(comp)
    big_f = fl + fm - fc
    if not th:
        zero = big_f * 0
        return CoeffTriple(big_f, zero, zero, zero, xi, None, 0)
    eta_mn = eta_value if eta_value is not None else eta(s, m, n)
    gl, gm, gc = g(lam), g(mu), g(comp)
    big_g = (gl + gm - gc + xi * fl * gm + xi * gl * fm + gl * gm
             + eta_mn * gl * gm * fc + eta_mn * eta_mn * gl * gm * gc)
    big_h = gl * fc - fl * gc + xi * eta_mn * gl * fm * gc
    big_hs = gm * fc - fm * gc + xi * eta_mn * gm * fl * gc
    return CoeffTriple(big_f, big_g, big_h, big_hs, xi, eta_mn, th)


@dataclass(frozen=True)
class CrosscheckResult:
    matches: bool
    residual_zero: bool
    prefactor: object


def ansatz_residual_crosscheck(s, m: int, n: int, f: Callable, g: Callable,
                               lam, mu) -> CrosscheckResult:
    """Confirm mechanically that for the ansatz

        D(x) = (E + f(x) D0 + theta g(x) pi) / (1 + f(x))

    the cleared level-n residual equals the scalar combination

        F_{lm} F + G_{lm} G + H_{lm} H + H_{ml} H~

    with the matrices F = D0 - D0^, G = pi - pi^, H = pi D0^ - D0 pi^,
    H~ = D0^ pi - pi^ D0.  The cleared prefactor
    (1+f(lam))(1+f(mu))(1+f(lam+mu)) is returned; it must be nonzero.
    """
    s = HalfInt.coerce(s)
    comp = lam + mu
    pref = (1 + f(lam)) * (1 + f(mu)) * (1 + f(comp))
    if pref == 0:
        raise DomainError("sample hits a zero of the 1 + f prefactor")
    a = a_matrix(s, n)
    hat = _hatter(s, n)
    d0 = SignDiagonal(a.range).matrix()
    th = theta(s, m, n)
    if th:
        pi = RankOneProjector(a.range, m).matrix()
    else:
        pi = mat_scale(Fraction(0), identity(a.dim))
    d0h, pih = hat(d0), hat(pi)
    e = identity(a.dim)

    def cleared(x, hatted):
        dd, pp = (d0h, pih) if hatted else (d0, pi)
        return mat_add(mat_add(e, mat_scale(f(x), dd)), mat_scale(g(x) * th, pp))

    lhs = mat_mul(mat_mul(cleared(lam, False), cleared(comp, True)), cleared(mu, False))
    rhs = mat_mul(mat_mul(cleared(mu, True), cleared(comp, False)), cleared(lam, True))
    resid = mat_sub(lhs, rhs)

    big_f = mat_sub(d0, d0h)
    big_g = mat_sub(pi, pih)
    big_h = mat_sub(mat_mul(pi, d0h), mat_mul(d0, pih))
    big_ht = mat_sub(mat_mul(d0h, pi), mat_mul(pih, d0))
    c = coeff_functions(s, m, n, f, g, lam, mu)
    combo = mat_add(mat_add(mat_scale(c.F, big_f), mat_scale(c.G, big_g)),
                    mat_add(mat_scale(c.H, big_h), mat_scale(c.H_swapped, big_ht)))
    return CrosscheckResult(matches=is_zero_matrix(mat_sub(resid, combo)),
                            residual_zero=is_zero_matrix(resid),
                            prefactor=pref)
