"""Classification scans: degeneracy of the four-matrix system, diagonal
ratio obstructions, constant R-matrix analysis, and permutation rigidity.

Ground truth everywhere is direct exact matrix computation in the
rational gauge; the scalar index shortcuts recorded alongside are
reporting-only (they are inconsistent at the known degeneracy, see
DegeneracyRecord.cond_a).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .amatrix import (GaugedMatrix, LevelRange, RankOneProjector, SignDiagonal,
                      a_matrix, consecutive_level_ratio, eta, eta_closed_form,
                      top_level, xi_sign)
from .exact import DomainError, HalfInt, QuadExt, minus_one_pow
from .linalg import (is_zero_matrix, mat_add, mat_mul, mat_scale, mat_sub,
                     span_rank)
from .spectral import constant_root
from .ybe import coeff_functions, theta

__all__ = [
    "DegeneracyRecord",
    "FghSystem",
    "constant_m_prime",
    "constant_roots",
    "degeneracy_scan",
    "eta_incompatibility",
    "eta_level4_m3",
    "exceptional_level_combination",
    "fgh_matrices",
    "fgh_rank",
    "level_three_five_ratio",
    "permutation_rigidity",
    "projector_obstruction_check",
]


@dataclass(frozen=True)
class FghSystem:
    """The matrices F = D0 - D0^, G = pi - pi^, H = pi D0^ - D0 pi^ and
    H~ = H^t at level n with distinguished index m, in the rational gauge."""

    s: HalfInt
    m: int
    n: int
    F: tuple
    G: tuple
    H: tuple
    Ht: tuple

    @property
    def dim(self) -> int:
        return len(self.F)

    def matrices(self):
        return (self.F, self.G, self.H, self.Ht)


def _gauge_parts(s, n: int):
    a = a_matrix(s, n)
    mu = a.ucore()
    hat = lambda x: mat_mul(mat_mul(mu, x), mu)
    return a, hat


def _entrywise_h(a: GaugedMatrix, m: int, transposed: bool):
    """Gauge image of the closed-form entries

        H_{kk'}  = (-1)^(n+m+k') d_{km}  A_{kk'} - (-1)^k  A_{km} A_{mk'}
        H~_{kk'} = (-1)^(n+m+k)  d_{k'm} A_{kk'} - (-1)^k' A_{km} A_{mk'}

    (the delta term carries the extra (-1)^n that the sign-conjugation
    identity forces; without it the closed form only covers even n)."""
    rng = a.range
    n, core, w = rng.n, a.core, a.weights
    i_m = m - rng.k_min
    rows = []
    for k in rng.indices():
        i = k - rng.k_min
        row = []
        for kp in rng.indices():
            j = kp - rng.k_min
            if transposed:
                delta = Fraction(minus_one_pow(n + m + k)) if kp == m else Fraction(0)
                sign = minus_one_pow(kp)
            else:
                delta = Fraction(minus_one_pow(n + m + kp)) if k == m else Fraction(0)
                sign = minus_one_pow(k)
            entry = (delta * core[i][j] * w[j]
                     - sign * core[i][i_m] * w[i_m] * core[i_m][j] * w[j])
            row.append(entry)
        rows.append(tuple(row))
    return tuple(rows)


def fgh_matrices(s, m: int, n: int) -> FghSystem:
    """Exact construction from the operator products, cross-checked
    entrywise against the closed forms."""
    s = HalfInt.coerce(s)
    if theta(s, m, n) != 1:
        raise DomainError(f"index m={m} not active at level n={n} for s={s}")
    a, hat = _gauge_parts(s, n)
    d0 = SignDiagonal(a.range).matrix()
    pi = RankOneProjector(a.range, m).matrix()
    d0h, pih = hat(d0), hat(pi)
    big_f = mat_sub(d0, d0h)
    big_g = mat_sub(pi, pih)
    big_h = mat_sub(mat_mul(pi, d0h), mat_mul(d0, pih))
    big_ht = mat_sub(mat_mul(d0h, pi), mat_mul(pih, d0))
    if big_h != _entrywise_h(a, m, transposed=False):
        raise AssertionError(f"H closed form mismatch at (s={s}, m={m}, n={n})")
    if big_ht != _entrywise_h(a, m, transposed=True):
        raise AssertionError(f"H~ closed form mismatch at (s={s}, m={m}, n={n})")
    # G_{kk'} = d_{km} d_{k'm} - A_{km} A_{mk'} needs no correction.
    return FghSystem(s, m, n, big_f, big_g, big_h, big_ht)


def fgh_rank(s, m: int, n: int) -> int:
    """Exact rank of span{F, G, H, H~} as vectors of gauge entries."""
    return span_rank(fgh_matrices(s, m, n).matrices())


def _scalar_multiple(target, basis):
    """Return c with target == c*basis, None if no such scalar; a zero
    target against a zero basis reports the indeterminate scalar as 0."""
    pivot = next(((i, j) for i, row in enumerate(basis)
                  for j, v in enumerate(row) if v != 0), None)
    if pivot is None:
        return Fraction(0) if is_zero_matrix(target) else None
    c = target[pivot[0]][pivot[1]] / basis[pivot[0]][pivot[1]]
    return c if is_zero_matrix(mat_sub(target, mat_scale(c, basis))) else None


def _in_span_two(target, b1, b2):
    """Solve target = x*b1 + y*b2 exactly; returns (x, y) or None."""
    flat_t = [v for row in target for v in row]
    flat_1 = [v for row in b1 for v in row]
    flat_2 = [v for row in b2 for v in row]
    # pick two coordinates with invertible 2x2 minor
    idx = [i for i, (p, q) in enumerate(zip(flat_1, flat_2)) if p != 0 or q != 0]
    for i in idx:
        for j in idx:
            det = flat_1[i] * flat_2[j] - flat_1[j] * flat_2[i]
            if det != 0:
                x = (flat_t[i] * flat_2[j] - flat_t[j] * flat_2[i]) / det
                y = (flat_1[i] * flat_t[j] - flat_1[j] * flat_t[i]) / det
                if all(t == x * p + y * q for t, p, q in zip(flat_t, flat_1, flat_2)):
                    return x, y
                return None
    # b1, b2 proportional (or zero): fall back to single-direction fits
    c = _scalar_multiple(target, b1)
    if c is not None:
        return c, Fraction(0)
    c = _scalar_multiple(target, b2)
    if c is not None:
        return Fraction(0), c
    return None


@dataclass(frozen=True)
class DegeneracyRecord:
    """One scan cell.  holds_transpose: H == H~ exactly.  holds_multiple:
    H + H~ is a scalar multiple of G (beta records the scalar; for an
    all-zero cell the scalar is indeterminate and beta is None).
    beta/beta_tilde also record the decomposition H + H~ = beta G +
    beta_tilde F whenever it exists.  cond_a / cond_b record the scalar
    index conditions 2m^2-2m+n^2-n = 8ms-6ns and m^2-m = 4ms-ns;
    reporting-only, the matrix computation is the ground truth (cond_a
    fails even at the true degeneracy cells).
    """

    s: HalfInt
    m: int
    n: int
    dim: int
    shifted: bool
    holds_transpose: bool
    holds_multiple: bool
    beta: Fraction | None
    beta_tilde: Fraction | None
    rank: int
    cond_a: bool
    cond_b: bool

    @property
    def exceptional(self) -> bool:
        return self.holds_transpose


@dataclass
class ScanResult:
    records: list = field(default_factory=list)
    skipped: list = field(default_factory=list)

    @property
    def degeneracies(self):
        return [r for r in self.records if r.exceptional]

    def unshifted_degeneracies(self):
        return [r for r in self.degeneracies if not r.shifted]

    def beta_tilde_nonzero(self):
        return [r for r in self.records
                if r.beta_tilde is not None and r.beta_tilde != 0]


def _scan_cell(s: HalfInt, m: int, n: int) -> DegeneracyRecord:
    sys = fgh_matrices(s, m, n)
    rng = LevelRange.for_level(s, n)
    h51 = is_zero_matrix(mat_sub(sys.H, sys.Ht))
    total = mat_add(sys.H, sys.Ht)
    if is_zero_matrix(sys.G) and is_zero_matrix(total):
        # dimension-1 levels: every relation is trivial, scalars indeterminate
        holds_multiple, beta, beta_tilde = True, None, None
    else:
        beta = _scalar_multiple(total, sys.G)
        holds_multiple = beta is not None
        decomposition = _in_span_two(total, sys.G, sys.F)
        beta_tilde = None
        if decomposition is not None:
            beta, beta_tilde = decomposition
    sf = s.as_fraction()
    cond_a = Fraction(2 * m * m - 2 * m + n * n - n) == 8 * m * sf - 6 * n * sf
    cond_b = Fraction(m * m - m) == 4 * m * sf - n * sf
    return DegeneracyRecord(
        s=s, m=m, n=n, dim=rng.dim, shifted=rng.shifted,
        holds_transpose=h51, holds_multiple=holds_multiple,
        beta=beta, beta_tilde=beta_tilde, rank=span_rank(sys.matrices()),
        cond_a=cond_a, cond_b=cond_b)


def degeneracy_scan(max_two_s: int = 6) -> ScanResult:
    """Scan every active cell 2 <= m <= 2s <= max_two_s, m <= n <=
    floor(3s).  Hard failure if H == H~ and the scalar-multiple relation
    ever disagree (they must hold simultaneously)."""
    if max_two_s < 2:
        raise DomainError("max_two_s must be at least 2")
    out = ScanResult()
    for ts in range(2, max_two_s + 1):
        s = HalfInt(ts)
        for m in range(2, ts + 1):
            for n in range(m, top_level(s) + 1):
                if theta(s, m, n) != 1:
                    out.skipped.append({"s": str(s), "m": m, "n": n,
                                        "reason": "index outside level range"})
                    continue
                rec = _scan_cell(s, m, n)
                if rec.holds_transpose != rec.holds_multiple:
                    raise AssertionError(
                        f"simultaneity violated at (s={s}, m={m}, n={n}): "
                        f"transpose={rec.holds_transpose} multiple={rec.holds_multiple}")
                out.records.append(rec)
    return out


def level_three_five_ratio(s) -> Fraction:
    """Exact ratio A_33^(s,5) / A_33^(s,3) = (10s^2-32s+21)/(s(4s-7))."""
    sf = HalfInt.coerce(s).as_fraction()
    den = sf * (4 * sf - 7)
    if den == 0:
        raise DomainError("ratio undefined at s in {0, 7/4}")
    return (10 * sf * sf - 32 * sf + 21) / den


def _diag_entry(s: HalfInt, m: int, n: int):
    a = a_matrix(s, n)
    if m not in a.range:
        return None
    return a.diagonal_rational(m)


@dataclass(frozen=True)
class EtaIncompatibility:
    """Why the level-m solution cannot extend past level m+1 for this m."""

    s: HalfInt
    m: int
    eta_mm: Fraction
    eta_next: Fraction | None        # None when m leaves the level range
    abs_equal: bool                  # |A_mm^(s,m)| == |A_mm^(s,m+1)|
    ratio: Fraction                  # (m^2 - m - 3ms + s)/(2s)
    ratio_verified: bool | None
    inequality_3s: bool              # m^2 - m - 3ms + 3s < 0 (variant bound)
    inequality_s: bool               # m^2 - m - 3ms + s  < 0 (ratio numerator)
    eq61_holds: bool | None = None   # A_33^(s,3) == A_33^(s,5)
    ratio_35: Fraction | None = None
    factorization_ok: bool | None = None  # 6s^2-25s+21 == (s-3)(6s-7)


def eta_incompatibility(s, m: int) -> EtaIncompatibility:
    s = HalfInt.coerce(s)
    ts = s.twice
    if not 2 <= m <= ts:
        raise DomainError(f"m={m} must satisfy 2 <= m <= 2s={ts}")
    sf = s.as_fraction()
    eta_mm = eta(s, m, m)
    a_mm = _diag_entry(s, m, m)
    ratio = consecutive_level_ratio(s, m)
    eta_next = None
    abs_equal = False
    ratio_verified = None
    if 2 * (m + 1) <= 3 * ts:
        a_next = _diag_entry(s, m, m + 1)
        if a_next is not None:
            eta_next = Fraction(minus_one_pow(m + 1)) * a_next
            abs_equal = abs(a_mm) == abs(a_next)
            ratio_verified = a_next == ratio * a_mm
    neg_3s = Fraction(m * m - m) - 3 * m * sf + 3 * sf < 0
    neg_s = Fraction(m * m - m) - 3 * m * sf + sf < 0
    eq61 = ratio_35 = factor_ok = None
    if m == 3 and 2 * 5 <= 3 * ts:
        a3 = _diag_entry(s, 3, 3)
        a5 = _diag_entry(s, 3, 5)
        if a3 is not None and a5 is not None:
            eq61 = a3 == a5
            ratio_35 = level_three_five_ratio(s)
            lhs = 6 * sf * sf - 25 * sf + 21
            factor_ok = lhs == (sf - 3) * (6 * sf - 7)
    return EtaIncompatibility(s, m, eta_mm, eta_next, abs_equal, ratio,
                              ratio_verified, neg_3s, neg_s, eq61, ratio_35,
                              factor_ok)


def constant_roots(s, m: int) -> tuple[QuadExt, QuadExt]:
    """Both roots of 1 + g + eta^2 g^2 = 0 at eta = eta_{m,m}, each
    verified to satisfy the quadratic exactly in Q(sqrt(1-4 eta^2))."""
    s = HalfInt.coerce(s)
    if not 2 <= m <= s.twice:
        raise DomainError(f"m={m} must satisfy 2 <= m <= 2s={s.twice}")
    eta_mm = eta_closed_form(s, m)
    roots = (constant_root(eta_mm, +1), constant_root(eta_mm, -1))
    for g in roots:
        if not (1 + g + eta_mm * eta_mm * g * g).is_zero:
            raise AssertionError(f"root {g} fails the level-{m} quadratic")
    return roots


def constant_m_prime(s, m: int) -> int:
    """m' = m + 1 for the constant shifted family: the level-m roots never
    satisfy the level-(m+1) quadratic (eta^2 differs between the levels);
    at m = 2s the next level carries no constraint and no lower
    coefficients exist, so the bound is vacuous."""
    s = HalfInt.coerce(s)
    ts = s.twice
    if not 2 <= m <= ts:
        raise DomainError(f"m={m} must satisfy 2 <= m <= 2s={ts}")
    if 2 * (m + 1) <= 3 * ts and theta(s, m, m + 1):
        eta_m = eta(s, m, m)
        eta_next = eta(s, m, m + 1)
        if eta_m * eta_m == eta_next * eta_next:
            raise AssertionError(
                f"level-{m} and level-{m + 1} quadratics coincide at s={s}")
        for g in constant_roots(s, m):
            if (1 + g + eta_next * eta_next * g * g).is_zero:
                raise AssertionError(
                    f"root {g} unexpectedly satisfies the level-{m + 1} quadratic")
    return m + 1


def permutation_rigidity(s, m: int) -> bool:
    """g = 0 is the only deformation: G and H + H~ are exactly linearly
    independent at level n = m, so the coefficient system forces
    g^2 (1 + eta g) = 0 and g^2 = 0."""
    sys = fgh_matrices(s, m, m)
    return span_rank([sys.G, mat_add(sys.H, sys.Ht)]) == 2


def projector_obstruction_check(s, m: int) -> bool:
    """No constant solution can drop the top coefficient: every entry
    A_{km}^(s,m) is nonzero and A^(s,m) fails to commute with the rank-one
    projector at index m (both exact)."""
    s = HalfInt.coerce(s)
    if not 0 < m <= s.twice:
        raise DomainError(f"m={m} must satisfy 0 < m <= 2s={s.twice}")
    a = a_matrix(s, m)
    i_m = m - a.range.k_min
    if any(a.core[i][i_m] == 0 for i in range(a.dim)):
        return False
    mu = a.ucore()
    pi = RankOneProjector(a.range, m).matrix()
    return not is_zero_matrix(mat_sub(mat_mul(mu, pi), mat_mul(pi, mu)))


def eta_level4_m3(s) -> Fraction:
    """The level-4 diagonal constant at index 3.  For 2s >= 4 this is the
    matrix entry; at 2s = 3 the index leaves the level-4 range and the
    value is continued through the exact consecutive-level diagonal ratio.
    Either route gives 1/2 identically."""
    s = HalfInt.coerce(s)
    if s.twice < 3:
        raise DomainError("needs s >= 3/2")
    if theta(s, 3, 4):
        return eta(s, 3, 4)
    a33 = _diag_entry(s, 3, 3)
    return consecutive_level_ratio(s, 3) * a33


def exceptional_level_combination(s, lam, mu):
    """The level-4 scalar combination G + H(lam,mu) + H(mu,lam) for the
    m = 3 family with f(x) = x and g from the level-3 constants.  It
    vanishes identically because the level-4 diagonal constant is 1/2."""
    s = HalfInt.coerce(s)
    if s.twice < 3:
        raise DomainError("needs s >= 3/2")
    xi = xi_sign(3)
    eta_33 = eta_closed_form(s, 3)

    def f(x):
        return x

    def g(x):
        den = eta_33 - Fraction(xi, 2) - xi * eta_33 * x
        if den == 0:
            raise DomainError(f"g has a pole at {x}")
        return x / den

    triple = coeff_functions(s, 3, 4, f, g, lam, mu, eta_value=eta_level4_m3(s))
    swapped = coeff_functions(s, 3, 4, f, g, mu, lam, eta_value=eta_level4_m3(s))
    assert swapped.H == triple.H_swapped
    return triple.G + triple.H + triple.H_swapped
