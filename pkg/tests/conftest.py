"""Shared helpers: deterministic random rationals and parameter draws."""

import random
from fractions import Fraction

import pytest

from krallm1 import (DegenerateParameters, GeronimusDegenerate,
                     MinusOneParams, QJacobiParams, gen_poly_family,
                     geronimus_family, rep_coeff_paper)


def rand_fraction(rng, lo=-4, hi=4, max_den=6, avoid=()):
    """Small random Fraction, excluding the given values."""
    while True:
        f = Fraction(rng.randint(lo, hi), rng.randint(1, max_den))
        if f not in avoid:
            return f


def random_m1_params(rng, count, *, need_degrees=3):
    """(beta, M) points for which the limit family exists through
    ``need_degrees`` and the explicit-solution denominators are nonzero."""
    out = []
    while len(out) < count:
        beta = rand_fraction(rng, avoid=(Fraction(-1), Fraction(-3),
                                         Fraction(-5), Fraction(-7)))
        M = rand_fraction(rng)
        params = MinusOneParams(beta=beta, M=M)
        if (5 + beta) * (2 * M - beta - 1) == 0:
            continue
        if (7 + beta) * (-4 * M + beta + 1) == 0:
            continue
        try:
            gen_poly_family(max(need_degrees, 3), params)
        except (DegenerateParameters, GeronimusDegenerate):
            continue
        out.append(params)
    return out


def random_q_params(rng, count, j=2, *, need_degrees=8):
    """(q, b, M) tuples at the given j with every denominator needed for
    degrees <= need_degrees nonzero."""
    out = []
    while len(out) < count:
        q = rand_fraction(rng, avoid=(Fraction(0), Fraction(1), Fraction(-1)))
        b = rand_fraction(rng, avoid=(Fraction(0),))
        M = rand_fraction(rng)
        try:
            params = QJacobiParams(q=q, b=b, j=j, M=M)
            geronimus_family(need_degrees, params)
            rep_coeff_paper(params, need_degrees)
        except (DegenerateParameters, GeronimusDegenerate,
                ZeroDivisionError):
            continue
        out.append(params)
    return out


@pytest.fixture
def rng():
    return random.Random(20260810)
