"""Even/odd splitting, the five-term recurrence of the renormalized even
parts, and the induced 2x2 matrix orthogonal polynomials.

This module works in mpmath floats: the renormalization sqrt(u~_1...u~_n)
is generically irrational.  Positivity of the u~ chain is required (and
checked exactly, on the Fractions) before any square root is taken.  The
five-term construction itself is generic over any positive recurrence
chain; the limit-family parameters enter only through their chain.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from mpmath import mp, mpf

from .errors import (GeronimusDegenerate, NotPositiveDefinite,
                     ResidualExceeded)
from .exact_core import (DEFAULT_PRECISION, LaurentPoly, format_float, to_mpf,
                         working_precision)
from .minus_one import (MinusOneParams, is_positive_definite,
                        transformed_recurrence_m1)
from .report import CheckResult, VerificationReport


def split_even_odd(p: LaurentPoly):
    """Direct-sum split p = E + O with E = (p + Rp)/2, O = (p - Rp)/2."""
    rp = p.reflect()
    half = Fraction(1, 2)
    return half * (p + rp), half * (p - rp)


@dataclass
class FiveTermCoeffs:
    """Coefficients of x^2 F_n = c0 F_n + c1 F_(n-1) + ... at one index,
    plus the renormalization sigma_n = sqrt(u~_1...u~_n)."""

    c0: mpf
    c1: mpf
    c2: mpf
    sigma: mpf


def _chains(params: MinusOneParams, kmax: int):
    """Exact recurrence chains (u~_0..u~_kmax, b~_0..b~_kmax) with
    positivity of u~_k checked for k >= 1."""
    us, bs = [Fraction(0)], []
    for k in range(kmax + 1):
        u, b = transformed_recurrence_m1(k, params)
        bs.append(b)
        if k >= 1:
            if u <= 0:
                raise NotPositiveDefinite(k, f"u~_{k} = {u}")
            us.append(u)
    return us, bs


def _family_from_chain(us, bs, count: int) -> list:
    """Monic polynomials generated by an arbitrary recurrence chain."""
    polys = [LaurentPoly.one()]
    if count > 1:
        polys.append(LaurentPoly({1: Fraction(1), 0: -bs[0]}))
    for k in range(1, count - 1):
        polys.append(LaurentPoly.x() * polys[k] - bs[k] * polys[k]
                     - us[k] * polys[k - 1])
    return polys


def _coeffs_from_chain(n: int, us, bs,
                       precision: int) -> FiveTermCoeffs:
    with working_precision(precision):
        c0 = to_mpf(us[n + 1] + (us[n] if n >= 1 else Fraction(0))
                    + bs[n] * bs[n])
        c1 = to_mpf(bs[n - 1] + bs[n]) * mp.sqrt(to_mpf(us[n])) \
            if n >= 1 else mpf(0)
        c2 = mp.sqrt(to_mpf(us[n] * us[n - 1])) if n >= 2 else mpf(0)
        sigma = mpf(1)
        for k in range(1, n + 1):
            sigma *= to_mpf(us[k])
        sigma = mp.sqrt(sigma)
    return FiveTermCoeffs(c0=c0, c1=c1, c2=c2, sigma=sigma)


def _f_polys_from_chain(count: int, us, bs, precision: int) -> list:
    """Renormalized even parts F_k = E_k / sigma_k for k < count, in mpf."""
    family = _family_from_chain(us, bs, count)
    out = []
    with working_precision(precision):
        sigma = mpf(1)
        for k in range(count):
            if k >= 1:
                sigma *= mp.sqrt(to_mpf(us[k]))
            even, _ = split_even_odd(family[k])
            out.append(LaurentPoly(
                {d: to_mpf(c) / sigma for d, c in even.coeffs.items()}))
    return out


def _five_term_residual(n: int, us, bs, precision: int):
    """Max coefficient deviation in the five-term identity at index n."""
    with working_precision(precision):
        fs = _f_polys_from_chain(n + 3, us, bs, precision)
        zero = LaurentPoly.zero()

        def f(k):
            return fs[k] if k >= 0 else zero

        c_n = _coeffs_from_chain(n, us, bs, precision)
        c_n1 = _coeffs_from_chain(n + 1, us, bs, precision)
        c_n2 = _coeffs_from_chain(n + 2, us, bs, precision)
        lhs = LaurentPoly({2: mpf(1)}) * fs[n]
        rhs = (c_n.c0 * f(n) + c_n.c1 * f(n - 1) + c_n1.c1 * f(n + 1)
               + c_n.c2 * f(n - 2) + c_n2.c2 * f(n + 2))
        diff = lhs - rhs
        return max((abs(c) for c in diff.coeffs.values()), default=mpf(0)), \
            lhs, rhs


def five_term_coeffs(n: int, params: MinusOneParams,
                     precision: int = DEFAULT_PRECISION) -> FiveTermCoeffs:
    """c_(n,0) = u~_(n+1) + u~_n + b~_n^2,
    c_(n,1) = (b~_(n-1) + b~_n) sqrt(u~_n),
    c_(n,2) = sqrt(u~_n u~_(n-1)); sigma_n = sqrt(u~_1...u~_n).

    The off-band coefficients at n = 0, 1 multiply polynomials of
    negative index and are fixed at 0 (u~_0 = 0 convention).
    """
    us, bs = _chains(params, n + 1)
    return _coeffs_from_chain(n, us, bs, precision)


def five_term_check(n: int, params: MinusOneParams, tol=None,
                    precision: int = DEFAULT_PRECISION) -> VerificationReport:
    """Residual of x^2 F_n = c_(n,0) F_n + c_(n,1) F_(n-1) + c_(n+1,1) F_(n+1)
    + c_(n,2) F_(n-2) + c_(n+2,2) F_(n+2), as a max coefficient deviation."""
    us, bs = _chains(params, n + 3)
    with working_precision(precision):
        tol_v = to_mpf(tol) if tol is not None else mpf(10) ** -40
        residual, lhs, rhs = _five_term_residual(n, us, bs, precision)
        report = VerificationReport()
        report.add(CheckResult(
            check="five-term", params=params.as_dict(), n=n,
            status="pass" if residual <= tol_v else "fail",
            lhs=str(lhs), rhs=str(rhs),
            residual=format_float(residual, 10)))
    return report


def r_nm(p: LaurentPoly, N: int, m: int) -> LaurentPoly:
    """Coefficient-slice reindexing: keep degrees congruent to m mod N,
    R_(N,m)(p)(x) = sum_k coeff_(kN+m)(p) x^k."""
    if N < 1 or not 0 <= m < N:
        raise ValueError("need N >= 1 and 0 <= m < N")
    if not p.is_proper:
        raise ValueError("coefficient slices act on proper polynomials")
    return LaurentPoly({(d - m) // N: c for d, c in p.coeffs.items()
                        if d % N == m})


@dataclass
class MatrixPoly2:
    """2x2 matrix polynomial built from consecutive renormalized even parts:
    row r holds (R_(2,0)(F_(2n+r)), R_(2,1)(F_(2n+r)))."""

    entries: list  # [[LaurentPoly, LaurentPoly], [LaurentPoly, LaurentPoly]]

    def to_json_obj(self, digits: int) -> list:
        return [[{str(d): format_float(c, digits)
                  for d, c in sorted(e.coeffs.items(), reverse=True)}
                 for e in row] for row in self.entries]


def export_matrix(mat: list, digits: int) -> list:
    """Numeric 2x2 block as nested arrays of decimal strings."""
    return [[format_float(v, digits) for v in row] for row in mat]


def matrix_poly(n: int, params: MinusOneParams,
                precision: int = DEFAULT_PRECISION) -> MatrixPoly2:
    """Matrix polynomial with rows from F_(2n) and F_(2n+1)."""
    us, bs = _chains(params, 2 * n + 1)
    fs = _f_polys_from_chain(2 * n + 2, us, bs, precision)
    return MatrixPoly2(entries=[
        [r_nm(fs[2 * n], 2, 0), r_nm(fs[2 * n], 2, 1)],
        [r_nm(fs[2 * n + 1], 2, 0), r_nm(fs[2 * n + 1], 2, 1)]])


def d_matrix(n: int, params: MinusOneParams,
             precision: int = DEFAULT_PRECISION) -> list:
    """Lower-triangular block D_n = [[c_(2n,2), 0], [c_(2n,1), c_(2n+1,2)]]."""
    us, bs = _chains(params, 2 * n + 2)
    lo = _coeffs_from_chain(2 * n, us, bs, precision)
    hi = _coeffs_from_chain(2 * n + 1, us, bs, precision)
    return [[lo.c2, mpf(0)], [lo.c1, hi.c2]]


def e_matrix(n: int, params: MinusOneParams,
             precision: int = DEFAULT_PRECISION) -> list:
    """Symmetric block E_n = [[c_(2n,0), c_(2n+1,1)], [c_(2n+1,1), c_(2n+1,0)]]."""
    us, bs = _chains(params, 2 * n + 2)
    lo = _coeffs_from_chain(2 * n, us, bs, precision)
    hi = _coeffs_from_chain(2 * n + 1, us, bs, precision)
    return [[lo.c0, hi.c1], [hi.c1, hi.c0]]


def _mat_apply(mat: list, poly_mat: MatrixPoly2) -> list:
    """Scalar 2x2 times matrix polynomial, entrywise Laurent arithmetic."""
    e = poly_mat.entries
    return [[mat[r][0] * e[0][c] + mat[r][1] * e[1][c] for c in range(2)]
            for r in range(2)]


def matrix_recurrence_check(n: int, params: MinusOneParams, tol=None,
                            precision: int = DEFAULT_PRECISION
                            ) -> VerificationReport:
    """Check x P_n = D_(n+1) P_(n+1) + E_n P_n + D_n^T P_(n-1) entrywise.

    D^* is the transpose (real entries).  Raises ResidualExceeded with the
    max-residual location when the tolerance is violated.
    """
    with working_precision(precision):
        tol_v = to_mpf(tol) if tol is not None else mpf(10) ** -40
        p_n = matrix_poly(n, params, precision)
        p_up = matrix_poly(n + 1, params, precision)
        d_up = d_matrix(n + 1, params, precision)
        e_n = e_matrix(n, params, precision)
        x = LaurentPoly({1: mpf(1)})
        lhs = [[x * e for e in row] for row in p_n.entries]
        rhs = _mat_apply(d_up, p_up)
        mid = _mat_apply(e_n, p_n)
        rhs = [[rhs[r][c] + mid[r][c] for c in range(2)] for r in range(2)]
        if n >= 1:
            d_n = d_matrix(n, params, precision)
            d_t = [[d_n[0][0], d_n[1][0]], [d_n[0][1], d_n[1][1]]]
            low = _mat_apply(d_t, matrix_poly(n - 1, params, precision))
            rhs = [[rhs[r][c] + low[r][c] for c in range(2)] for r in range(2)]
        residual = mpf(0)
        location = ""
        for r in range(2):
            for c in range(2):
                diff = lhs[r][c] - rhs[r][c]
                for d, coeff in diff.coeffs.items():
                    if abs(coeff) > residual:
                        residual = abs(coeff)
                        location = f"entry ({r},{c}) degree {d}"
        if residual > tol_v:
            raise ResidualExceeded(format_float(residual, 10),
                                   format_float(tol_v, 5), location)
        report = VerificationReport()
        report.add(CheckResult(
            check="matrix-recurrence", params=params.as_dict(), n=n,
            status="pass", lhs=None, rhs=None,
            residual=format_float(residual, 10)))
    return report


DEFAULT_CANDIDATES = (
    (Fraction(1), Fraction(-1)),
    (Fraction(1, 2), Fraction(-1, 4)),
    (Fraction(3), Fraction(-2)),
    (Fraction(2), Fraction(-1)),
    (Fraction(1), Fraction(-1, 2)),
    (Fraction(1, 2), Fraction(-1)),
    (Fraction(3, 2), Fraction(-3, 4)),
)


def find_positive_definite_point(min_index: int,
                                 candidates=None) -> MinusOneParams:
    """Scan candidate (beta, M) until the moment functional is Hankel
    positive and u~_1 .. u~_min_index are all positive."""
    for beta, M in (candidates or DEFAULT_CANDIDATES):
        params = MinusOneParams(beta=Fraction(beta), M=Fraction(M))
        try:
            _chains(params, min_index)
            if is_positive_definite(min_index // 2 + 1, params):
                return params
        except (NotPositiveDefinite, GeronimusDegenerate):
            continue
    raise NotPositiveDefinite(
        -1, "no positive-definite candidate point found")
