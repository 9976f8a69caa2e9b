"""The -1 Krall-Jacobi family (q -> -1 limit of the transformed little
q-Jacobi polynomials at j = 2).

Contents: the parity-split limit coefficients of the operator table, the
third-order reflection operator L0 in two independent realizations
(monomial action and differential-difference form), the transformed
three-term recurrence, exact moments and the orthogonality machinery,
the weight-density quadrature check, and the epsilon scan that ties the
q side to the limit coefficients numerically.

Exact checks run over Fractions; the scan and quadrature use mpmath.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from mpmath import mp, mpf

from .errors import (DegenerateParameters, GeronimusDegenerate,
                     InsufficientMoments, IntegrabilityError,
                     NonPolynomialOutput)
from .exact_core import (DEFAULT_PRECISION, LaurentPoly, format_float,
                         format_rational, poch, theta, to_mpf,
                         working_precision)
from .qjacobi import QJacobiParams, rep_coeff_reconstruct
from .report import CheckResult, VerificationReport

LIMIT_J = 2  # the limit family is constructed at j = 2 throughout


@dataclass(frozen=True)
class MinusOneParams:
    """Limit-family parameters (beta, M), exact rationals."""

    beta: Fraction
    M: Fraction

    def __post_init__(self):
        # Coerce so that downstream divisions stay exact.
        object.__setattr__(self, "beta", Fraction(self.beta))
        object.__setattr__(self, "M", Fraction(self.M))

    def as_dict(self) -> dict:
        return {"beta": format_rational(self.beta),
                "M": format_rational(self.M)}


def limit_rep_coeff(n: int, s: int, params: MinusOneParams):
    """Limit of A_n^(s)/eps^3 under q = -e^eps, b = -e^(beta*eps), j = 2.

    Parity-split closed forms; zero for s > 3.
    """
    beta, M = params.beta, params.M
    even = n % 2 == 0
    if s == 0:
        if even:
            return -8 * M * n * (n + 2) * (n + 1 + beta) \
                + 8 * n * (beta + 1) * (beta + 3)
        return 8 * M * (n + 1) * (n + beta) * (n + 2 + beta) \
            - 8 * (n + 2 + beta) * (beta + 1) * (beta + 3)
    if s == 1:
        if even:
            return 8 * M * n * (n + 2) * (n + 1 + beta) \
                - 8 * n * (beta + 1) * (beta + 3)
        return 8 * (beta + 1) * (beta + 3) * (n + 1) \
            - 8 * M * (n * n - 1) * (n + beta)
    if s == 2:
        if even:
            return 8 * M * n * (n + 2) * (n - 2)
        return -8 * M * (n + 1) * (n - 1) * (n + beta)
    if s == 3:
        if even:
            return -8 * M * n * (n + 2) * (n - 2)
        return 8 * M * (n + 1) * (n - 1) * (n - 3)
    return Fraction(0)


def lambda_tilde(n: int, params: MinusOneParams):
    """Eigenvalue of the limit operator; equals limit_rep_coeff(n, 0)."""
    return limit_rep_coeff(n, 0, params)


def base_recurrence_m1(n: int, params: MinusOneParams):
    """Recurrence data (u_n, b_n) of the untransformed limit family:

    even n:  u_n = -n(n+2)/((2n+1+beta)(2n+3+beta)),          b_n = 1
    odd  n:  u_n = -(n+beta)(n+2+beta)/((2n+1+beta)(2n+3+beta)), b_n = -1
    """
    beta = params.beta
    d1, d2 = 2 * n + 1 + beta, 2 * n + 3 + beta
    if d1 == 0 or d2 == 0:
        raise DegenerateParameters(
            f"(2n+1+beta)(2n+3+beta) vanishes at n={n}, beta={beta}")
    if n % 2 == 0:
        return Fraction(-n * (n + 2)) / (d1 * d2), Fraction(1)
    return -(n + beta) * (n + 2 + beta) / (d1 * d2), Fraction(-1)


def limit_B(n: int, params: MinusOneParams):
    """Limit of the Geronimus ratio Phi_n/Phi_(n-1), parity-split:

    even n:  (n+2)/(2n+1+beta)
             * (M - (3+beta)(1+beta)/((n+2)(n+1+beta)))
             / (M - (3+beta)(1+beta)/(n(n+1+beta)))
    odd  n: -(n+2+beta)/(2n+1+beta)
             * (M - (3+beta)(1+beta)/((n+1)(n+2+beta)))
             / (M - (3+beta)(1+beta)/((n+1)(n+beta)))
    """
    if n < 1:
        raise ValueError("Geronimus ratio needs n >= 1")
    beta, M = params.beta, params.M
    g = (3 + beta) * (1 + beta)
    if n % 2 == 0:
        den = M - g / (n * (n + 1 + beta))
        if den == 0:
            raise GeronimusDegenerate(
                n, f"M = (3+beta)(1+beta)/(n(n+1+beta)) at n={n}")
        return Fraction(n + 2) / (2 * n + 1 + beta) * \
            (M - g / ((n + 2) * (n + 1 + beta))) / den
    den = M - g / ((n + 1) * (n + beta))
    if den == 0:
        raise GeronimusDegenerate(
            n, f"M = (3+beta)(1+beta)/((n+1)(n+beta)) at n={n}")
    return -(n + 2 + beta) / Fraction(2 * n + 1 + beta) * \
        (M - g / ((n + 1) * (n + 2 + beta))) / den


def transformed_recurrence_m1(n: int, params: MinusOneParams):
    """Recurrence data (u~_n, b~_n) of the transformed limit family.

    b~_0 = b_0 + B_1,  b~_n = b_n + B_(n+1) - B_n,
    u~_n = u_(n-1) B_n / B_(n-1) for n >= 2, with B_n = limit_B(n).
    u~_1 comes from the moment functional (<P~_1, P~_1>/<1, 1>): the
    q-side ratio Phi_1/Phi_0^2 carries an eps-dependent scale in the
    limit, while the moment route is exact and parameter-uniform.
    """
    if n < 0:
        raise ValueError("degree must be nonnegative")
    if n == 0:
        b0 = base_recurrence_m1(0, params)[1] + limit_B(1, params)
        return Fraction(0), b0
    bn = base_recurrence_m1(n, params)[1] + limit_B(n + 1, params) - \
        limit_B(n, params)
    if n == 1:
        mu = moments(2, params)
        b0 = base_recurrence_m1(0, params)[1] + limit_B(1, params)
        u1 = (mu.mu(2) - 2 * b0 * mu.mu(1) + b0 * b0 * mu.mu(0)) / mu.mu(0)
        return u1, bn
    b_prev = limit_B(n - 1, params)
    if b_prev == 0:
        raise GeronimusDegenerate(n, f"limit of Phi_{n - 1}/Phi_{n - 2} is 0")
    un = base_recurrence_m1(n - 1, params)[0] * limit_B(n, params) / b_prev
    return un, bn


def gen_poly_family(max_n: int, params: MinusOneParams) -> list:
    """Monic transformed polynomials P~_0 .. P~_max_n by forward recurrence."""
    polys = [LaurentPoly.one()]
    if max_n == 0:
        return polys
    b0 = transformed_recurrence_m1(0, params)[1]
    polys.append(LaurentPoly({1: Fraction(1), 0: -b0}))
    for k in range(1, max_n):
        uk, bk = transformed_recurrence_m1(k, params)
        polys.append(LaurentPoly.x() * polys[k] - bk * polys[k]
                     - uk * polys[k - 1])
    return polys


def gen_poly_m1(n: int, params: MinusOneParams) -> LaurentPoly:
    """Single transformed polynomial P~_n of the limit family."""
    return gen_poly_family(n, params)[n]


def btilde0_closed(params: MinusOneParams):
    """Closed form of the first transformed recurrence coefficient,
    b~_0 = 2/(3+beta-2M); equals mu_1/mu_0."""
    den = 3 + params.beta - 2 * params.M
    if den == 0:
        raise DegenerateParameters("(3+beta-2M) vanishes")
    return 2 / den


def explicit_solution(n: int, params: MinusOneParams) -> LaurentPoly:
    """Explicit low-degree eigensolutions P~_2 and P~_3 in closed form.

    (The degree-1 member has no self-contained closed form here and is
    validated through b~_0 instead.)
    """
    beta, M = params.beta, params.M
    if n == 2:
        den = (5 + beta) * (2 * M - beta - 1)
        if den == 0:
            raise DegenerateParameters("(5+beta)(2M-beta-1) vanishes")
        return LaurentPoly({2: Fraction(1),
                            1: -2 * (4 * M - beta - 1) / den,
                            0: 2 * (beta + 1) / den})
    if n == 3:
        den = (7 + beta) * (-4 * M + beta + 1)
        if den == 0 or (5 + beta) == 0:
            raise DegenerateParameters(
                "(7+beta)(-4M+beta+1) or (5+beta) vanishes")
        return LaurentPoly({3: Fraction(1),
                            2: -4 * (-2 * M + 1 + beta) / den,
                            1: Fraction(-4) / (7 + beta),
                            0: 8 * (1 + beta) / ((5 + beta) * den)})
    raise ValueError("explicit solutions are stated for n = 2, 3 only")


def explicit_eigenvalue(n: int, params: MinusOneParams):
    """Explicit low-degree eigenvalues in factored closed form."""
    beta, M = params.beta, params.M
    if n == 1:
        return (beta + 1) * (beta + 3) * (16 * M - 8 * (beta + 3))
    if n == 2:
        return (beta + 3) * (16 * beta + 16 - 64 * M)
    if n == 3:
        return (3 + beta) * (5 + beta) * (32 * M - 8 - 8 * beta)
    raise ValueError("explicit eigenvalues are stated for n = 1, 2, 3 only")


# ---------------------------------------------------------------------------
# The third-order reflection operator L0, two realizations
# ---------------------------------------------------------------------------

def _l0_brackets(n: int, params: MinusOneParams):
    """The four monomial-action coefficients of L0 x^n (degrees n..n-3)."""
    beta, M = params.beta, params.M
    t = theta(n)
    b0 = (-8 * M * n * (n + 2) * (n + 1 + beta)
          + 8 * n * (beta + 1) * (beta + 3)
          + t * (16 * M * n ** 3 + (24 * beta * M + 48 * M) * n ** 2
                 + (32 * M - 16 * beta ** 2 + 8 * beta ** 2 * M - 48
                    + 48 * beta * M - 64 * beta) * n
                 - 48 * beta ** 2 - 8 * beta ** 3 + 16 * beta * M
                 + 8 * beta ** 2 * M - 48 - 88 * beta))
    b1 = (8 * M * n ** 3 + (24 * M + 8 * beta * M) * n ** 2
          + (16 * M + 16 * beta * M - 8 * beta ** 2 - 32 * beta - 24) * n
          + t * (-16 * M * n ** 3 - (24 * M + 16 * beta * M) * n ** 2
                 + (64 * beta + 48 + 16 * beta ** 2 - 16 * beta * M
                    - 8 * M) * n
                 + 32 * beta + 24 + 8 * beta ** 2 + 8 * beta * M))
    b2 = (8 * M * n ** 3 - 32 * M * n
          + t * (-16 * M * n ** 3 - 8 * beta * M * n ** 2 + 40 * M * n
                 + 8 * beta * M))
    b3 = (-8 * M * n ** 3 + 32 * M * n
          + t * (16 * M * n ** 3 - 24 * M * n ** 2 - 40 * M * n + 24 * M))
    return b0, b1, b2, b3


def apply_L0_monomial(p: LaurentPoly, params: MinusOneParams) -> LaurentPoly:
    """Apply L0 through its monomial action
    L0 x^n = b0 x^n + b1 x^(n-1) + b2 x^(n-2) + b3 x^(n-3).

    The lower brackets vanish identically for n < 3, so the result is
    always a proper polynomial.
    """
    if not p.is_proper:
        raise ValueError("operator acts on proper polynomials only")
    out = LaurentPoly.zero()
    for d, c in p.coeffs.items():
        for s, bracket in enumerate(_l0_brackets(d, params)):
            if bracket != 0:
                out = out + LaurentPoly.monomial(d - s, c * bracket)
    return out


def _l0_coefficient_functions(params: MinusOneParams):
    """Laurent coefficient functions of the differential-difference form,
    keyed by (derivative order, reflected?).  The (0, True) entry is the
    multiplier of (1 - R)."""
    beta, M = params.beta, params.M
    c_d3R = LaurentPoly({0: -8 * M, 1: 8 * M, 2: 8 * M, 3: -8 * M})
    c_d2R = LaurentPoly({-1: -12 * M, 0: 24 * M + 4 * beta * M,
                         1: 36 * M + 8 * beta * M,
                         2: -(12 * beta * M + 48 * M)})
    c_d2 = LaurentPoly({1: 12 * M, 2: 4 * beta * M, -1: -12 * M,
                        0: -4 * beta * M})
    c_d1R = LaurentPoly({0: 24 * M + 16 * beta * M - 8 * beta ** 2
                         - 32 * beta - 24,
                         -2: 24 * M, -1: (4 * beta - 12) * M,
                         1: 8 * beta ** 2 - 36 * beta * M - 48 * M
                         - 4 * beta ** 2 * M + 32 * beta + 24})
    c_d1 = LaurentPoly({1: 4 * beta ** 2 * M + 12 * beta * M,
                        -1: -(12 + 4 * beta) * M, 0: 24 * M + 8 * beta * M})
    c_1mR = LaurentPoly({-3: 12 * M, -2: 4 * beta * M,
                         -1: 12 + 4 * beta ** 2 + 4 * beta * M + 16 * beta,
                         0: 8 * beta * M + 4 * beta ** 2 * M - 44 * beta
                         - 24 - 4 * beta ** 3 - 24 * beta ** 2})
    return c_d3R, c_d2R, c_d2, c_d1R, c_d1, c_1mR


def apply_L0_operator(p: LaurentPoly, params: MinusOneParams) -> LaurentPoly:
    """Apply L0 in its differential-difference form

        L0 = a3(x) d^3 R + a2R(x) d^2 R + a2(x) d^2
             + a1R(x) d R + a1(x) d + a0(x) (1 - R)

    with Laurent coefficient functions reaching down to 12M/x^3, worked
    inside the Laurent space.  All negative-degree contributions must
    cancel exactly; a survivor raises NonPolynomialOutput (that is an
    implementation bug, never a property of valid input).
    """
    if not p.is_proper:
        raise ValueError("operator acts on proper polynomials only")
    c_d3R, c_d2R, c_d2, c_d1R, c_d1, c_1mR = _l0_coefficient_functions(params)
    rp = p.reflect()
    d1, d1r = p.derivative(), rp.derivative()
    d2, d2r = d1.derivative(), d1r.derivative()
    d3r = d2r.derivative()
    total = (c_d3R * d3r + c_d2R * d2r + c_d2 * d2
             + c_d1R * d1r + c_d1 * d1 + c_1mR * (p - rp))
    leftovers = {d: c for d, c in total.coeffs.items() if d < 0}
    if leftovers:
        raise NonPolynomialOutput(
            f"negative-degree coefficients survive: {leftovers}")
    return total


def verify_eigen_m1(n: int, params: MinusOneParams) -> VerificationReport:
    """Check L0 P~_n = lambda~_n P~_n as an exact polynomial identity."""
    poly = gen_poly_m1(n, params)
    lhs = apply_L0_operator(poly, params)
    rhs = lambda_tilde(n, params) * poly
    report = VerificationReport()
    report.add(CheckResult(
        check="eigen-m1", params=params.as_dict(), n=n,
        status="pass" if lhs == rhs else "fail",
        lhs=str(lhs), rhs=str(rhs),
        residual="0" if lhs == rhs else str(lhs - rhs)))
    return report


# ---------------------------------------------------------------------------
# Moments and orthogonality
# ---------------------------------------------------------------------------

@dataclass
class MomentSequence:
    """Moments mu_0 .. mu_N of the limit family, k = 1 normalization:

    mu_0 = 1 - 2M/(3+beta),  mu_(2n) = mu_(2n-1) = (1)_n / (beta/2+3/2)_n.
    """

    values: list
    params: MinusOneParams

    def mu(self, n: int):
        if not 0 <= n < len(self.values):
            raise InsufficientMoments(
                f"moment {n} beyond stored range {len(self.values) - 1}")
        return self.values[n]

    @property
    def max_index(self) -> int:
        return len(self.values) - 1


def moments(N: int, params: MinusOneParams) -> MomentSequence:
    """Exact moment sequence mu_0 .. mu_N."""
    beta, M = params.beta, params.M
    if 3 + beta == 0:
        raise DegenerateParameters("(3+beta) vanishes")
    half = params.beta / 2 + Fraction(3, 2)
    values = [1 - 2 * M / (3 + beta)]
    n = 1
    while len(values) <= N:
        den = poch(half, n)
        if den == 0:
            raise DegenerateParameters(
                f"(beta/2+3/2)_{n} vanishes at beta={beta}")
        v = Fraction(poch(Fraction(1), n)) / den
        values.append(v)
        if len(values) <= N:
            values.append(v)
        n += 1
    return MomentSequence(values[:N + 1], params)


def inner_product(p: LaurentPoly, r: LaurentPoly,
                  momseq: MomentSequence):
    """Bilinear moment functional <p, r> = sum p_i r_j mu_(i+j)."""
    if not (p.is_proper and r.is_proper):
        raise ValueError("moment functional acts on proper polynomials")
    total = Fraction(0)
    for dp, cp in p.coeffs.items():
        for dr, cr in r.coeffs.items():
            total += cp * cr * momseq.mu(dp + dr)
    return total


def gram_matrix(N: int, params: MinusOneParams) -> list:
    """Exact Gram matrix of P~_0 .. P~_N under the moment functional."""
    momseq = moments(2 * N, params)
    family = gen_poly_family(N, params)
    return [[inner_product(family[i], family[j], momseq)
             for j in range(N + 1)] for i in range(N + 1)]


def hankel_dets(N: int, params: MinusOneParams) -> list:
    """Exact Hankel determinants det(mu_(i+j))_(0..m) for m = 0 .. N.

    All positive <=> the moment functional is positive definite.
    """
    momseq = moments(2 * N, params)
    out = []
    for m in range(N + 1):
        mat = [[momseq.mu(i + j) for j in range(m + 1)] for i in range(m + 1)]
        out.append(_det_fraction(mat))
    return out


def is_positive_definite(N: int, params: MinusOneParams) -> bool:
    """True when all Hankel determinants up to order N are positive."""
    try:
        return all(d > 0 for d in hankel_dets(N, params))
    except DegenerateParameters:
        return False


def _det_fraction(mat: list):
    """Fraction-exact determinant by Gaussian elimination with pivoting."""
    m = [row[:] for row in mat]
    size = len(m)
    det = Fraction(1)
    for col in range(size):
        pivot = next((r for r in range(col, size) if m[r][col] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            m[col], m[pivot] = m[pivot], m[col]
            det = -det
        det *= m[col][col]
        inv = 1 / m[col][col]
        for r in range(col + 1, size):
            if m[r][col] != 0:
                factor = m[r][col] * inv
                for c in range(col, size):
                    m[r][c] -= factor * m[col][c]
    return det


# ---------------------------------------------------------------------------
# Weight density and quadrature cross-check
# ---------------------------------------------------------------------------

def weight_density(x, params: MinusOneParams,
                   precision: int = DEFAULT_PRECISION):
    """Continuous part of the orthogonality weight at x in (-1, 1):

        k~ |x| (1-x^2)^((beta-1)/2) (1+x),   k~ = (beta+1)/2

    (k = 1 normalization; the point mass at 0 is handled separately).
    """
    beta = params.beta
    if beta <= -1:
        raise IntegrabilityError(f"weight not integrable for beta={beta}")
    with working_precision(precision):
        xv = to_mpf(x)
        if not -1 < xv < 1:
            raise ValueError("density is defined on (-1, 1)")
        ktilde = to_mpf(Fraction(beta + 1, 2))
        return ktilde * abs(xv) * (1 - xv * xv) ** (to_mpf(beta - 1) / 2) \
            * (1 + xv)


def point_mass(params: MinusOneParams) -> Fraction:
    """Weight of the Dirac mass at the origin: -k~ 4M/((1+beta)(3+beta))."""
    beta, M = params.beta, params.M
    if (1 + beta) == 0 or (3 + beta) == 0:
        raise DegenerateParameters("(1+beta)(3+beta) vanishes")
    return -Fraction(beta + 1, 2) * 4 * M / ((1 + beta) * (3 + beta))


def quadrature_moment_check(n: int, params: MinusOneParams,
                            tol=Fraction(1, 10 ** 8),
                            precision: int = DEFAULT_PRECISION
                            ) -> VerificationReport:
    """Integrate density * x^n over [-1, 1] and compare with mu_n.

    The interval is split at 0 for the |x| kink; the tanh-sinh rule
    absorbs the algebraic endpoint singularity for beta < 1.  The point
    mass at 0 contributes only to n = 0.  Pass iff
    |result - mu_n| <= tol * max(1, |mu_n|).
    """
    beta = params.beta
    if beta <= -1:
        raise IntegrabilityError(f"weight not integrable for beta={beta}")
    mu_n = moments(n, params).mu(n)
    with working_precision(precision + 10):
        ktilde = to_mpf(Fraction(beta + 1, 2))
        expo = to_mpf(beta - 1) / 2

        def integrand(t):
            # Evaluated at whatever elevated precision the quadrature rule
            # runs at; a node rounded onto an endpoint carries negligible
            # weight and contributes zero.
            one_minus = 1 - t * t
            if one_minus <= 0:
                return mpf(0)
            return ktilde * abs(t) * one_minus ** expo * (1 + t) * t ** n

        total = mp.quad(integrand, [-1, 0, 1])
        if n == 0:
            total += to_mpf(point_mass(params))
        target = to_mpf(mu_n)
        residual = abs(total - target)
        bound = to_mpf(tol) * max(mpf(1), abs(target))
        status = "pass" if residual <= bound else "fail"
        report = VerificationReport()
        report.add(CheckResult(
            check="quadrature-moment", params=params.as_dict(), n=n,
            status=status, lhs=format_float(total, precision),
            rhs=format_rational(mu_n),
            residual=format_float(residual, 10)))
    return report


# ---------------------------------------------------------------------------
# The epsilon scan: q side -> limit coefficients
# ---------------------------------------------------------------------------

def _scan_value(n: int, s: int, params: MinusOneParams, eps_text: str,
                digits: int):
    """A_n^(s)(eps)/eps^3 from the q-side reconstruction at
    q = -e^eps, b = -e^(beta eps), j = 2, in mpf at ``digits``."""
    with working_precision(digits):
        if s > n:  # structural zero: the operator maps polys to polys
            return mpf(0)
        eps = mpf(eps_text)
        qp = QJacobiParams(q=-mp.exp(eps), b=-mp.exp(to_mpf(params.beta) * eps),
                           j=LIMIT_J, M=to_mpf(params.M))
        table = rep_coeff_reconstruct(qp, n)
        return table.value(n, s) / eps ** 3


def _scan_value_stable(n: int, s: int, params: MinusOneParams, eps_text: str,
                       precision: int):
    """Evaluate the scan value with an adaptive cancellation budget.

    The eps^3 division and the q-Pochhammer cancellations near q = -1
    eat digits, so the value is recomputed at increasing precision until
    two consecutive evaluations agree to ``precision - 10`` digits.
    Returns (value, used_digits, precision_warning).
    """
    digits = precision + 20
    prev = _scan_value(n, s, params, eps_text, digits)
    for _ in range(6):
        digits += 30
        cur = _scan_value(n, s, params, eps_text, digits)
        with working_precision(digits):
            gap = abs(cur - prev)
            scale = max(mpf(1), abs(cur))
            if gap <= scale * mpf(10) ** (-(precision - 10)):
                return cur, digits, False
        prev = cur
    return prev, digits, True


def epsilon_scan(n: int, s: int, params: MinusOneParams, eps_list,
                 precision: int = DEFAULT_PRECISION,
                 tol=Fraction(1, 100)) -> VerificationReport:
    """Scan A_n^(s)(eps)/eps^3 along decreasing eps and compare with the
    limit coefficient.

    Each eps gets one report entry carrying the scanned value, the limit
    and the deviation; a trailing "convergence" entry passes iff the
    deviations are monotonically non-increasing and the final one is
    within tol * |limit| (or tol absolutely when the limit vanishes).
    Its residual field also carries the empirical convergence orders
    log(dev_i/dev_(i+1)) / log(eps_i/eps_(i+1)) for consecutive eps.
    Deviations below the requested precision floor count as zero, and a
    precision-loss warning is recorded if the cancellation budget could
    not be met.
    """
    eps_values = [str(e) for e in eps_list]
    if not eps_values:
        raise ValueError("need at least one eps")
    limit = limit_rep_coeff(n, s, params)
    report = VerificationReport()
    deviations = []
    any_warning = False
    point = dict(params.as_dict(), s=str(s))
    for eps_text in eps_values:
        value, digits, warned = _scan_value_stable(n, s, params, eps_text,
                                                   precision)
        any_warning = any_warning or warned
        with working_precision(digits):
            dev = abs(value - to_mpf(limit))
            if dev < mpf(10) ** (-(precision - 10)):
                dev = mpf(0)
        deviations.append(dev)
        report.add(CheckResult(
            check="limit-scan", params=dict(point, eps=eps_text), n=n,
            status="pass" if not warned else "fail",
            lhs=format_float(value, precision),
            rhs=format_rational(limit),
            residual=format_float(dev, 10)))
    monotone = all(deviations[i + 1] <= deviations[i]
                   for i in range(len(deviations) - 1))
    with working_precision(precision):
        bound = to_mpf(tol) * (abs(to_mpf(limit)) if limit != 0 else 1)
        converged = deviations[-1] <= bound
        orders = []
        for i in range(len(deviations) - 1):
            lo, hi = deviations[i + 1], deviations[i]
            if lo > 0 and hi > 0:
                step = mp.log(mpf(eps_values[i]) / mpf(eps_values[i + 1]))
                orders.append(format_float(mp.log(hi / lo) / step, 4))
            else:
                orders.append("exact")
    status = "pass" if (monotone and converged and not any_warning) else "fail"
    detail = "monotone" if monotone else "non-monotone"
    if orders:
        detail += "; orders=[" + ", ".join(orders) + "]"
    report.add(CheckResult(
        check="limit-scan-convergence", params=point, n=n, status=status,
        lhs=format_float(deviations[-1], 10),
        rhs=format_float(bound, 10),
        residual=detail))
    return report
