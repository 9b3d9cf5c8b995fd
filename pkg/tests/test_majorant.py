#!/usr/bin/python
# -*- coding: utf-8 -*-
from fractions import Fraction

import pytest
from numpy.testing import assert_allclose

from SaddleCenterLoops.base.majorant import (collapse_to_one_variable,
                                             diagonal_bracket,
                                             expand_diagonal,
                                             geometric_majorant,
                                             inverse_one_minus,
                                             majorant,
                                             majorant_norm,
                                             max_prec,
                                             mean_value_majorant,
                                             prec,
                                             sum_variables)
from SaddleCenterLoops.base.poly import PolySeries
from SaddleCenterLoops.constants import MODE_RATIONAL
from SaddleCenterLoops.errors import PolyContractError, PolyStructureError


@pytest.fixture
def xy():
    return PolySeries.variables(2, 3)


def test_majorant_order(xy):
    x, y = xy
    f = x - 2 * y + x * y
    assert prec(f, majorant(f))
    assert prec(f, x + 2 * y + x * y + y * y)
    assert not prec(f, x + y + x * y)
    # a majorant needs non-negative coefficients
    assert not prec(x, x - y)
    assert prec(max_prec(x - y, 3 * y), x + 3 * y)


def test_products_and_derivatives_keep_the_order(xy):
    x, y = xy
    f, F = x - 2 * y, x + 2 * y + y * y
    g, G = 0.5 * x * x - y, x * x + y
    assert prec(f * g, F * G)
    assert prec(f.diff(0), F.diff(0))
    assert prec(f.diff(1), F.diff(1))


def test_rational_majorant():
    x, y = PolySeries.variables(2, 2, MODE_RATIONAL)
    f = x * Fraction(-1, 3) + y
    assert majorant(f).coefficient((1, 0)) == Fraction(1, 3)
    assert prec(f, x * Fraction(1, 3) + y)


def test_collapse_to_one_variable(xy):
    x, y = xy
    w = collapse_to_one_variable(2 * x + 3 * y + x * y - y * y)
    assert w.nvars == 1
    assert w.coefficient((1,)) == 5
    assert w.coefficient((2,)) == 0


def test_diagonal_bracket_round_trip():
    xi1, xi2, eta1, eta2 = PolySeries.variables(4, 4)
    f = xi1 * eta1 + 2 * xi2 * eta2 + xi1 * eta2 + xi1 * eta1 * xi2 * eta2
    g = diagonal_bracket(f)
    assert g.nvars == 2 and g.max_degree == 2
    assert g.coefficient((1, 0)) == 1
    assert g.coefficient((0, 1)) == 2
    assert g.coefficient((1, 1)) == 1
    assert expand_diagonal(g) == f - xi1 * eta2
    with pytest.raises(PolyStructureError):
        diagonal_bracket(PolySeries.variable(0, 2, 2))


def test_mean_value_bound():
    x, y = PolySeries.variables(2, 2)
    F = PolySeries.monomial((2,), max_degree=2)
    Phi, Psi = [x], [0.1 * y]
    gap = F.compose([x + 0.1 * y]) - F.compose([x])
    bound = mean_value_majorant(F, Phi, Psi)
    assert prec(gap, bound)
    assert_allclose(bound.coefficient((1, 1)), 0.2)
    assert_allclose(bound.coefficient((0, 2)), 0.02)


def test_geometric_majorant():
    f = PolySeries({(1,): 1.0, (2,): -0.5, (3,): 0.25, (4,): 0.1}, 1, 4)
    c, gamma, series = geometric_majorant(f)
    assert c == 1.0
    assert gamma == pytest.approx(0.5)
    assert prec(f, series)
    with pytest.raises(PolyContractError):
        geometric_majorant(PolySeries.zero(1, 3))


def test_inverse_one_minus():
    w = PolySeries.variable(0, 1, 4)
    inverse = inverse_one_minus(w)
    for k in range(5):
        assert inverse.coefficient((k,)) == 1
    # (1 - w) / (1 - w) = 1 up to the truncation
    assert ((1 - w) * inverse).allclose(PolySeries.constant(1, 1, 4))
    with pytest.raises(PolyContractError):
        inverse_one_minus(w + 1)


def test_majorant_norm(xy):
    x, y = xy
    assert majorant_norm(x - 2 * y, 0.5) == pytest.approx(1.5)
    s = sum_variables(4, 2)
    assert s.coefficient((0, 0, 1, 0)) == 1
    assert s.degree == 1
