#!/usr/bin/python
# -*- coding: utf-8 -*-
"""
Graded truncated power series in a small fixed number of variables.

Coefficients are stored densely over a cached :class:`MonomialBasis`
ordered by degree, then reverse-lexicographically inside a degree, so that the
basis of a lower truncation degree is always a prefix of a higher one. The
same code path serves double precision, complex and exact rational
(:class:`fractions.Fraction`) coefficients.
"""
import json
import math
from collections import defaultdict
from fractions import Fraction
from functools import lru_cache

import numpy as np

from ..constants import (NVARS,
                         MODE_FLOAT,
                         MODE_RATIONAL,
                         MODE_COMPLEX,
                         MODES)
from ..errors import PolyStructureError, PolyContractError, PolyFormatError


def _compositions(degree, nvars):
    if nvars == 1:
        yield (degree,)
        return
    for k in range(degree, -1, -1):
        for rest in _compositions(degree - k, nvars - 1):
            yield (k,) + rest


class MultiIndex(tuple):
    """
    Exponent tuple of a monomial, one entry per variable in storage order.
    Behaves like a plain tuple so it can be looked up with ordinary tuples.
    """

    def __new__(cls, exponents):
        exponents = tuple(int(e) for e in exponents)
        if any(e < 0 for e in exponents):
            raise PolyStructureError(
                'negative exponent in multi-index {}'.format(exponents))
        return super(MultiIndex, cls).__new__(cls, exponents)

    def __repr__(self):
        return 'MultiIndex({})'.format(tuple(self))

    @property
    def degree(self):
        return sum(self)

    @property
    def factorial(self):
        """
        Returns:
            int: product of the factorials of the exponents.
        """
        value = 1
        for e in self:
            value *= math.factorial(e)
        return value


class MonomialBasis(object):
    """
    All monomials of degree <= max_degree in nvars variables together with the
    index tables used by series arithmetic (products and derivatives).

    Use :func:`monomial_basis` to get the shared cached instance.
    """

    def __init__(self, nvars, max_degree):
        if nvars < 1 or max_degree < 0:
            raise PolyStructureError(
                'invalid basis nvars={} max_degree={}'.format(nvars, max_degree))
        self.nvars = nvars
        self.max_degree = max_degree
        exps = [e for d in range(max_degree + 1)
                for e in _compositions(d, nvars)]
        self.exponents = np.array(exps, dtype=np.int64).reshape(-1, nvars)
        self.degrees = self.exponents.sum(axis=1)
        self.offsets = np.searchsorted(
            self.degrees, np.arange(max_degree + 2), side='left')
        self.size = len(exps)
        self._index = {e: i for i, e in enumerate(exps)}
        radix = np.int64(max_degree + 1)
        self._place = radix ** np.arange(nvars - 1, -1, -1, dtype=np.int64)
        keys = self.exponents.dot(self._place)
        order = np.argsort(keys)
        self._sorted_keys = keys[order]
        self._sorted_pos = order
        self.factorials = np.array(
            [MultiIndex(e).factorial for e in exps], dtype=object)
        self._products = None
        self._derivatives = {}

    def __repr__(self):
        return '<{}(nvars={}, max_degree={}) object at {}>'.format(
            self.__class__.__name__, self.nvars, self.max_degree, hex(id(self)))

    def index(self, exponents):
        """
        Returns:
            int: position of the monomial with the given exponents.
        """
        try:
            return self._index[tuple(int(e) for e in exponents)]
        except KeyError:
            raise PolyStructureError(
                'monomial {} not in basis (nvars={}, max_degree={})'.format(
                    tuple(exponents), self.nvars, self.max_degree))

    def lookup(self, exponent_array):
        """
        Vectorized :meth:`index` for an (m, nvars) integer array whose rows
        all have degree <= max_degree.
        """
        keys = np.asarray(exponent_array, dtype=np.int64).dot(self._place)
        return self._sorted_pos[np.searchsorted(self._sorted_keys, keys)]

    def grade(self, degree):
        """
        Returns:
            slice: storage slice of the homogeneous monomials of a degree.
        """
        return slice(int(self.offsets[degree]), int(self.offsets[degree + 1]))

    def size_upto(self, degree):
        if degree < 0:
            return 0
        return int(self.offsets[min(degree, self.max_degree) + 1])

    def product_pairs(self, degree=None):
        """
        Index triples (I, J, K) with monomial I times monomial J equal to
        monomial K, restricted to deg K <= degree.
        """
        if self._products is None:
            rows, cols = [], []
            off = self.offsets
            for d1 in range(self.max_degree + 1):
                for d2 in range(self.max_degree + 1 - d1):
                    ii, jj = np.meshgrid(np.arange(off[d1], off[d1 + 1]),
                                         np.arange(off[d2], off[d2 + 1]),
                                         indexing='ij')
                    rows.append(ii.ravel())
                    cols.append(jj.ravel())
            first = np.concatenate(rows)
            second = np.concatenate(cols)
            target = self.lookup(self.exponents[first] + self.exponents[second])
            order = np.argsort(self.degrees[target], kind='stable')
            first, second, target = first[order], second[order], target[order]
            cut = np.searchsorted(self.degrees[target],
                                  np.arange(self.max_degree + 2), side='left')
            self._products = (first, second, target, cut)
        first, second, target, cut = self._products
        if degree is None or degree >= self.max_degree:
            return first, second, target
        stop = cut[max(degree, -1) + 1]
        return first[:stop], second[:stop], target[:stop]

    def derivative_map(self, var):
        """
        Returns:
            tuple: (source, target, factor) arrays so that the derivative in
            variable ``var`` reads ``out[target] = coeffs[source] * factor``.
        """
        if var not in self._derivatives:
            src = np.nonzero(self.exponents[:, var] > 0)[0]
            shifted = self.exponents[src].copy()
            shifted[:, var] -= 1
            self._derivatives[var] = (src, self.lookup(shifted),
                                      self.exponents[src, var])
        return self._derivatives[var]


@lru_cache(maxsize=None)
def monomial_basis(nvars, max_degree):
    """
    Shared :class:`MonomialBasis` instance for (nvars, max_degree).
    """
    return MonomialBasis(nvars, max_degree)


# === COEFFICIENT MODES ===

def _dtype(mode):
    if mode == MODE_FLOAT:
        return np.float64
    if mode == MODE_COMPLEX:
        return np.complex128
    if mode == MODE_RATIONAL:
        return object
    raise PolyStructureError('unknown coefficient mode "{}"'.format(mode))


def common_mode(*modes):
    """
    Returns:
        str: coefficient mode able to represent every given mode.
    """
    if MODE_COMPLEX in modes:
        return MODE_COMPLEX
    if MODE_FLOAT in modes:
        return MODE_FLOAT
    return MODE_RATIONAL


def scalar_mode(value):
    if isinstance(value, (bool, np.bool_)):
        return MODE_RATIONAL
    if isinstance(value, (Fraction, int, np.integer)):
        return MODE_RATIONAL
    if isinstance(value, (complex, np.complexfloating)):
        return MODE_COMPLEX
    return MODE_FLOAT


def _to_rational(value):
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (complex, np.complexfloating)):
        if value.imag != 0:
            raise PolyContractError(
                'complex value {} has no rational representation'.format(value))
        value = value.real
    if isinstance(value, (int, np.integer)):
        return Fraction(int(value))
    return Fraction(float(value))


def coerce_array(values, mode):
    """
    Convert a coefficient array to the storage dtype of ``mode``.

    Returns:
        numpy.ndarray: a new array.
    """
    values = np.asarray(values)
    if mode == MODE_RATIONAL:
        out = np.empty(values.shape, dtype=object)
        out.ravel()[:] = [_to_rational(v) for v in values.ravel()]
        return out
    if values.dtype == object:
        convert = complex if mode == MODE_COMPLEX else float
        values = np.array([convert(v) for v in values.ravel()],
                          dtype=_dtype(mode)).reshape(values.shape)
    if mode == MODE_FLOAT and np.iscomplexobj(values):
        if np.any(values.imag != 0):
            raise PolyContractError('complex coefficients in a real series')
        values = values.real
    return values.astype(_dtype(mode))


def coerce_scalar(value, mode):
    if mode == MODE_RATIONAL:
        return _to_rational(value)
    if mode == MODE_COMPLEX:
        return complex(value)
    if isinstance(value, (complex, np.complexfloating)):
        if value.imag != 0:
            raise PolyContractError(
                'complex scalar {} in a real series'.format(value))
        value = value.real
    return float(value)


def _zeros(size, mode):
    if mode == MODE_RATIONAL:
        out = np.empty(size, dtype=object)
        out[:] = Fraction(0)
        return out
    return np.zeros(size, dtype=_dtype(mode))


def _multiply(a, b, basis, degree, mode):
    first, second, target = basis.product_pairs(degree)
    values = a[first] * b[second]
    if mode == MODE_RATIONAL:
        out = _zeros(basis.size, mode)
        np.add.at(out, target, values)
        return out
    if mode == MODE_COMPLEX:
        return (np.bincount(target, weights=values.real, minlength=basis.size)
                + 1j * np.bincount(target, weights=values.imag,
                                   minlength=basis.size))
    return np.bincount(target, weights=values, minlength=basis.size)


def _format_coefficient(value, mode):
    if mode == MODE_RATIONAL:
        return str(value)
    if mode == MODE_COMPLEX:
        return repr(complex(value)).replace(' ', '')
    return repr(float(value))


def _parse_coefficient(token, mode):
    try:
        if mode == MODE_RATIONAL:
            return Fraction(token)
        if mode == MODE_COMPLEX:
            return complex(token)
        return float(token)
    except ValueError:
        raise PolyFormatError('bad {} coefficient "{}"'.format(mode, token))


class SeriesEvaluator(object):
    """
    Vectorized evaluation of several series sharing their variables.

    The union of the non-zero monomials is evaluated once per call and
    contracted with a (monomials x series) coefficient matrix.

    Args:
        series (list[PolySeries]): series with a common variable count.
    """

    def __init__(self, series):
        series = list(series)
        if not series:
            raise PolyStructureError('nothing to evaluate')
        nvars = series[0].nvars
        if any(s.nvars != nvars for s in series):
            raise PolyStructureError('evaluated series differ in nvars')
        degree = max(s.max_degree for s in series)
        basis = monomial_basis(nvars, degree)
        mode = common_mode(*[s.mode for s in series])
        if mode == MODE_RATIONAL:
            mode = MODE_FLOAT
        matrix = np.zeros((basis.size, len(series)), dtype=_dtype(mode))
        for col, s in enumerate(series):
            matrix[:s.size, col] = coerce_array(s.coefficients, mode)
        rows = np.nonzero(np.any(matrix != 0, axis=1))[0]
        self.nvars = nvars
        self.count = len(series)
        self.exponents = basis.exponents[rows]
        self.matrix = matrix[rows]
        self.top = int(self.exponents.max()) if len(rows) else 0

    def __repr__(self):
        return '<{}(count={}, monomials={}) object at {}>'.format(
            self.__class__.__name__, self.count, len(self.exponents),
            hex(id(self)))

    def monomials(self, x):
        x = np.asarray(x)
        if x.shape[-1] != self.nvars:
            raise PolyStructureError(
                'points have {} coordinates, series have {} variables'.format(
                    x.shape[-1], self.nvars))
        powers = x[..., :, None] ** np.arange(self.top + 1)
        mono = np.ones(x.shape[:-1] + (len(self.exponents),),
                       dtype=np.result_type(x, np.float64))
        for var in range(self.nvars):
            mono = mono * powers[..., var, self.exponents[:, var]]
        return mono

    def __call__(self, x):
        """
        Returns:
            numpy.ndarray: values with shape x.shape[:-1] + (count,).
        """
        x = np.asarray(x)
        if not len(self.exponents):
            return np.zeros(x.shape[:-1] + (self.count,),
                            dtype=np.result_type(x, self.matrix, np.float64))
        return self.monomials(x).dot(self.matrix)


class PolySeries(object):
    """
    Truncated power series (a polynomial of degree <= max_degree).

    Args:
        coefficients (dict or array): ``{exponents: value}`` map or dense
            coefficient array in basis order. Terms of degree above
            ``max_degree`` are dropped.
        nvars (int): number of variables.
        max_degree (int): truncation degree.
        mode (str): coefficient mode, ``'float'``, ``'complex'`` or
            ``'rational'``.
    """

    def __init__(self, coefficients=None, nvars=NVARS, max_degree=0,
                 mode=MODE_FLOAT):
        if mode not in MODES:
            raise PolyStructureError('unknown coefficient mode "{}"'.format(mode))
        self._nvars = int(nvars)
        self._max_degree = int(max_degree)
        self._mode = mode
        self._basis = monomial_basis(self._nvars, self._max_degree)
        self._evaluator = None
        self._gradient = None
        if coefficients is None:
            self._coeffs = _zeros(self._basis.size, mode)
        elif isinstance(coefficients, dict):
            self._coeffs = _zeros(self._basis.size, mode)
            for exps, value in coefficients.items():
                exps = MultiIndex(exps)
                if len(exps) != self._nvars:
                    raise PolyStructureError(
                        'exponents {} do not match nvars={}'.format(
                            tuple(exps), self._nvars))
                if exps.degree > self._max_degree:
                    continue
                idx = self._basis.index(exps)
                self._coeffs[idx] = (self._coeffs[idx]
                                     + coerce_scalar(value, mode))
        else:
            values = np.asarray(coefficients)
            if values.shape != (self._basis.size,):
                raise PolyStructureError(
                    'expected {} coefficients, got shape {}'.format(
                        self._basis.size, values.shape))
            self._coeffs = coerce_array(values, mode)
        self._coeffs.setflags(write=False)

    def __repr__(self):
        return '<{}(nvars={}, max_degree={}, mode={}, terms={}) object at {}>'.format(
            self.__class__.__name__, self._nvars, self._max_degree, self._mode,
            len(self.terms), hex(id(self)))

    def __str__(self):
        return self.to_text()

    # === CONSTRUCTORS ===

    @classmethod
    def zero(cls, nvars=NVARS, max_degree=0, mode=MODE_FLOAT):
        return cls(None, nvars, max_degree, mode)

    @classmethod
    def constant(cls, value, nvars=NVARS, max_degree=0, mode=MODE_FLOAT):
        return cls({(0,) * nvars: value}, nvars, max_degree, mode)

    @classmethod
    def variable(cls, var, nvars=NVARS, max_degree=1, mode=MODE_FLOAT):
        """
        The coordinate function of variable number ``var``.
        """
        exps = [0] * nvars
        exps[var] = 1
        return cls({tuple(exps): 1}, nvars, max(max_degree, 1), mode)

    @classmethod
    def variables(cls, nvars=NVARS, max_degree=1, mode=MODE_FLOAT):
        return [cls.variable(v, nvars, max_degree, mode) for v in range(nvars)]

    @classmethod
    def monomial(cls, exponents, value=1, max_degree=None, mode=MODE_FLOAT):
        exps = MultiIndex(exponents)
        degree = exps.degree if max_degree is None else max_degree
        return cls({exps: value}, len(exps), degree, mode)

    # === PROPERTIES ===

    @property
    def nvars(self):
        return self._nvars

    @property
    def max_degree(self):
        return self._max_degree

    @property
    def mode(self):
        return self._mode

    @property
    def basis(self):
        return self._basis

    @property
    def size(self):
        return self._basis.size

    @property
    def coefficients(self):
        """
        Returns:
            numpy.ndarray: read-only dense coefficient array in basis order.
        """
        return self._coeffs

    @property
    def terms(self):
        """
        Returns:
            dict: sparse ``{MultiIndex: coefficient}`` map without zeros.
        """
        nz = np.nonzero(self._coeffs != 0)[0]
        exps = self._basis.exponents
        return {MultiIndex(exps[i]): self._coeffs[i] for i in nz}

    @property
    def degree(self):
        """
        Returns:
            int: highest degree with a non-zero coefficient (-1 for zero).
        """
        nz = np.nonzero(self._coeffs != 0)[0]
        return int(self._basis.degrees[nz[-1]]) if len(nz) else -1

    @property
    def valuation(self):
        """
        Returns:
            int: lowest degree with a non-zero coefficient (-1 for zero).
        """
        nz = np.nonzero(self._coeffs != 0)[0]
        return int(self._basis.degrees[nz[0]]) if len(nz) else -1

    def is_zero(self):
        return not np.any(self._coeffs != 0)

    def is_homogeneous(self):
        return self.is_zero() or self.degree == self.valuation

    def coefficient(self, exponents):
        exps = MultiIndex(exponents)
        if exps.degree > self._max_degree:
            return coerce_scalar(0, self._mode)
        return self._coeffs[self._basis.index(exps)]

    def norm(self):
        """
        Returns:
            float: largest coefficient modulus.
        """
        if self.is_zero():
            return 0.0
        return float(np.max(np.abs(coerce_array(self._coeffs, MODE_COMPLEX))))

    # === CONVERSIONS ===

    def with_degree(self, max_degree):
        """
        Re-embed into another truncation degree (truncating or padding).
        """
        max_degree = int(max_degree)
        if max_degree == self._max_degree:
            return self
        size = monomial_basis(self._nvars, max_degree).size
        values = _zeros(size, self._mode)
        keep = min(size, self.size)
        values[:keep] = self._coeffs[:keep]
        return PolySeries(values, self._nvars, max_degree, self._mode)

    def truncate(self, degree):
        """
        Drop the terms above ``degree`` while keeping max_degree.
        """
        values = self._coeffs.copy()
        values[self._basis.size_upto(degree):] = coerce_scalar(0, self._mode)
        return PolySeries(values, self._nvars, self._max_degree, self._mode)

    def homogeneous_part(self, degree):
        return self.grade_range(degree, degree)

    def grade_range(self, low, high):
        """
        Keep the terms with low <= degree <= high.
        """
        values = _zeros(self.size, self._mode)
        low = max(low, 0)
        high = min(high, self._max_degree)
        if low <= high:
            sl = slice(int(self._basis.offsets[low]),
                       int(self._basis.offsets[high + 1]))
            values[sl] = self._coeffs[sl]
        return PolySeries(values, self._nvars, self._max_degree, self._mode)

    def astype(self, mode):
        if mode == self._mode:
            return self
        return PolySeries(coerce_array(self._coeffs, mode), self._nvars,
                          self._max_degree, mode)

    def conjugate(self):
        if self._mode != MODE_COMPLEX:
            return self
        return PolySeries(np.conjugate(self._coeffs), self._nvars,
                          self._max_degree, self._mode)

    @property
    def real(self):
        if self._mode != MODE_COMPLEX:
            return self
        return PolySeries(self._coeffs.real, self._nvars, self._max_degree,
                          MODE_FLOAT)

    @property
    def imag(self):
        if self._mode != MODE_COMPLEX:
            return PolySeries.zero(self._nvars, self._max_degree)
        return PolySeries(self._coeffs.imag, self._nvars, self._max_degree,
                          MODE_FLOAT)

    def map_terms(self, func, mode=None):
        """
        Rebuild the series from ``func(exponents, coefficient)`` applied to
        every non-zero term.
        """
        mode = mode or self._mode
        values = _zeros(self.size, mode)
        exps = self._basis.exponents
        for i in np.nonzero(self._coeffs != 0)[0]:
            values[i] = coerce_scalar(
                func(tuple(int(e) for e in exps[i]), self._coeffs[i]), mode)
        return PolySeries(values, self._nvars, self._max_degree, mode)

    # === ARITHMETIC ===

    def _align(self, other):
        if isinstance(other, PolySeries):
            if other.nvars != self._nvars:
                raise PolyStructureError(
                    'variable count mismatch: {} vs {}'.format(
                        self._nvars, other.nvars))
            mode = common_mode(self._mode, other.mode)
            degree = max(self._max_degree, other.max_degree)
            return (self.with_degree(degree).astype(mode),
                    other.with_degree(degree).astype(mode))
        mode = common_mode(self._mode, scalar_mode(other))
        return (self.astype(mode),
                PolySeries.constant(other, self._nvars, self._max_degree, mode))

    def __add__(self, other):
        a, b = self._align(other)
        return PolySeries(a.coefficients + b.coefficients, a.nvars,
                          a.max_degree, a.mode)

    __radd__ = __add__

    def __neg__(self):
        return PolySeries(-self._coeffs, self._nvars, self._max_degree,
                          self._mode)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, PolySeries):
            mode = common_mode(self._mode, scalar_mode(other))
            scalar = coerce_scalar(other, mode)
            return PolySeries(coerce_array(self._coeffs, mode) * scalar,
                              self._nvars, self._max_degree, mode)
        a, b = self._align(other)
        values = _multiply(a.coefficients, b.coefficients, a.basis,
                           a.max_degree, a.mode)
        return PolySeries(values, a.nvars, a.max_degree, a.mode)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, PolySeries):
            raise PolyContractError('series division is not supported')
        if self._mode == MODE_RATIONAL and scalar_mode(other) == MODE_RATIONAL:
            return self * (Fraction(1) / _to_rational(other))
        return self * (1.0 / other)

    def __pow__(self, power):
        power = int(power)
        if power < 0:
            raise PolyContractError('negative power of a series')
        result = PolySeries.constant(1, self._nvars, self._max_degree,
                                     self._mode)
        base = self
        while power:
            if power & 1:
                result = result * base
            power >>= 1
            if power:
                base = base * base
        return result

    def __eq__(self, other):
        if not isinstance(other, PolySeries):
            return NotImplemented
        if self._nvars != other.nvars:
            return False
        return self.terms == other.terms

    def __ne__(self, other):
        result = self.__eq__(other)
        return result if result is NotImplemented else not result

    __hash__ = None

    def allclose(self, other, atol=1e-12):
        return (self - other).norm() <= atol

    # === CALCULUS ===

    def diff(self, var):
        """
        Partial derivative in variable number ``var``.
        """
        if not 0 <= var < self._nvars:
            raise PolyStructureError('no variable {} in {} variables'.format(
                var, self._nvars))
        src, dst, factor = self._basis.derivative_map(var)
        values = _zeros(self.size, self._mode)
        if self._mode == MODE_RATIONAL:
            for s, d, k in zip(src, dst, factor):
                values[d] = self._coeffs[s] * int(k)
        else:
            values[dst] = self._coeffs[src] * factor
        return PolySeries(values, self._nvars, self._max_degree, self._mode)

    def gradient_series(self):
        return [self.diff(v) for v in range(self._nvars)]

    def compose(self, substitutions, max_degree=None):
        """
        Substitute series for the variables: ``f(g_1, ..., g_n)``.

        Args:
            substitutions (list[PolySeries]): one series per variable, all in
                a common target variable count.
            max_degree (int): truncation degree of the result (defaults to
                the largest max_degree of the substitutions).

        Returns:
            PolySeries: the composed series.
        """
        return compose_all([self], substitutions, max_degree)[0]

    # === EVALUATION ===

    def __call__(self, x):
        """
        Evaluate at points ``x`` of shape (..., nvars).
        """
        if self._evaluator is None:
            self._evaluator = SeriesEvaluator([self])
        return self._evaluator(x)[..., 0]

    def gradient(self, x):
        """
        Returns:
            numpy.ndarray: gradient at points ``x``, shape (..., nvars).
        """
        if self._gradient is None:
            self._gradient = SeriesEvaluator(self.gradient_series())
        return self._gradient(x)

    # === SERIALIZATION ===

    def to_text(self):
        """
        Canonical text form: a header line followed by one
        ``e_1 ... e_n coefficient`` line per non-zero term in basis order.
        """
        lines = ['# PolySeries nvars={} max_degree={} mode={}'.format(
            self._nvars, self._max_degree, self._mode)]
        exps = self._basis.exponents
        for i in np.nonzero(self._coeffs != 0)[0]:
            lines.append('{} {}'.format(
                ' '.join(str(int(e)) for e in exps[i]),
                _format_coefficient(self._coeffs[i], self._mode)))
        return '\n'.join(lines) + '\n'

    @classmethod
    def from_text(cls, text):
        lines = [l.strip() for l in text.strip().splitlines() if l.strip()]
        if not lines or not lines[0].startswith('# PolySeries'):
            raise PolyFormatError('missing PolySeries header')
        header = {}
        for token in lines[0].split()[2:]:
            key, _, value = token.partition('=')
            header[key] = value
        try:
            nvars = int(header['nvars'])
            max_degree = int(header['max_degree'])
            mode = header['mode']
        except (KeyError, ValueError):
            raise PolyFormatError('bad header "{}"'.format(lines[0]))
        if mode not in MODES:
            raise PolyFormatError('unknown mode in header "{}"'.format(lines[0]))
        terms = {}
        for line in lines[1:]:
            tokens = line.split()
            if len(tokens) != nvars + 1:
                raise PolyFormatError('bad term line "{}"'.format(line))
            try:
                exps = tuple(int(t) for t in tokens[:nvars])
            except ValueError:
                raise PolyFormatError('bad exponents in "{}"'.format(line))
            if sum(exps) > max_degree:
                raise PolyFormatError(
                    'term "{}" exceeds max_degree {}'.format(line, max_degree))
            terms[exps] = _parse_coefficient(tokens[-1], mode)
        return cls(terms, nvars, max_degree, mode)

    @property
    def to_dict(self):
        exps = self._basis.exponents
        return {
            'nvars': self._nvars,
            'max_degree': self._max_degree,
            'mode': self._mode,
            'terms': [[int(e) for e in exps[i]]
                      + [_format_coefficient(self._coeffs[i], self._mode)]
                      for i in np.nonzero(self._coeffs != 0)[0]]
        }

    @classmethod
    def from_dict(cls, data):
        mode = data['mode']
        nvars = data['nvars']
        terms = {tuple(t[:nvars]): _parse_coefficient(t[nvars], mode)
                 for t in data['terms']}
        return cls(terms, nvars, data['max_degree'], mode)

    @property
    def serial(self):
        return json.dumps(self.to_dict)


def compose_all(series, substitutions, max_degree=None):
    """
    Compose several series with the same substitutions.

    Every series runs a Horner scheme over the variables; the powers of the
    substituted series are computed once and shared.

    Args:
        series (list[PolySeries]): series in ``len(substitutions)`` variables.
        substitutions (list[PolySeries]): one series per variable, all in a
            common target variable count.
        max_degree (int): truncation degree of the results.

    Returns:
        list[PolySeries]: the composed series.
    """
    series = list(series)
    subs = list(substitutions)
    nvars = len(subs)
    if any(s.nvars != nvars for s in series):
        raise PolyStructureError(
            'compose needs one substitution per variable, got {}'.format(nvars))
    target = subs[0].nvars
    if any(s.nvars != target for s in subs):
        raise PolyStructureError('substitutions differ in nvars')
    if max_degree is None:
        max_degree = max(s.max_degree for s in subs)
    mode = common_mode(*[s.mode for s in series + subs])
    basis = monomial_basis(target, max_degree)
    subs = [coerce_array(s.with_degree(max_degree).coefficients, mode)
            for s in subs]
    items = [[(tuple(int(e) for e in exps), c) for exps, c in s.terms.items()]
             for s in series]
    one = _zeros(basis.size, mode)
    one[0] = coerce_scalar(1, mode)
    powers = []
    for var in range(nvars):
        top = max([e[var] for group in items for e, _ in group] + [0])
        table = [one, subs[var]]
        for _ in range(2, top + 1):
            table.append(_multiply(table[-1], subs[var], basis, max_degree,
                                   mode))
        powers.append(table)

    def horner(group, var):
        acc = _zeros(basis.size, mode)
        if var == nvars - 1:
            for exps, coeff in group:
                acc = acc + powers[var][exps[var]] * coerce_scalar(coeff, mode)
            return acc
        buckets = defaultdict(list)
        for exps, coeff in group:
            buckets[exps[var]].append((exps, coeff))
        for power in sorted(buckets):
            inner = horner(buckets[power], var + 1)
            if power:
                inner = _multiply(powers[var][power], inner, basis,
                                  max_degree, mode)
            acc = acc + inner
        return acc

    return [PolySeries(horner(group, 0), target, max_degree, mode)
            for group in items]


class SymplecticStructure(object):
    """
    Standard symplectic matrix ``J = [[0, I], [-I, 0]]`` for variables stored
    as (q_1, ..., q_m, p_1, ..., p_m).

    Args:
        dimension (int): phase-space dimension (even).
    """

    def __init__(self, dimension=NVARS):
        if dimension % 2:
            raise PolyStructureError(
                'symplectic dimension must be even, got {}'.format(dimension))
        half = dimension // 2
        eye = np.eye(half)
        self.dimension = dimension
        self.matrix = np.block([[np.zeros((half, half)), eye],
                                [-eye, np.zeros((half, half))]])
        self.matrix.setflags(write=False)

    def __repr__(self):
        return '<{}(dimension={}) object at {}>'.format(
            self.__class__.__name__, self.dimension, hex(id(self)))

    def is_valid(self, atol=0.0):
        """
        Check J^T = -J and J^2 = -Identity.
        """
        J = self.matrix
        return bool(np.allclose(J.T, -J, atol=atol, rtol=0)
                    and np.allclose(J.dot(J), -np.eye(self.dimension),
                                    atol=atol, rtol=0))

    def defect(self, jacobian):
        """
        Returns:
            numpy.ndarray: max-norm of ``D^T J D - J`` for each Jacobian in a
            stack of shape (..., dim, dim).
        """
        D = np.asarray(jacobian)
        gap = np.einsum('...ji,jk,...kl->...il', D, self.matrix, D) - self.matrix
        return np.max(np.abs(gap), axis=(-2, -1))


#: Shared structure of the two degree of freedom phase space.
STANDARD_SYMPLECTIC = SymplecticStructure(NVARS)


def poisson_bracket(f, g, J=None):
    """
    Poisson bracket ``{f, g} = (grad f)^T J (grad g)``.

    With variables (q1, q2, p1, p2) this reads
    ``sum_k d_qk f d_pk g - d_pk f d_qk g`` so that ``{q1, p1} = 1``.

    Args:
        f (PolySeries): first argument.
        g (PolySeries): second argument.
        J (SymplecticStructure): structure, the standard one by default.

    Returns:
        PolySeries: bracket truncated at the larger max_degree.
    """
    J = J or STANDARD_SYMPLECTIC
    if f.nvars != J.dimension or g.nvars != J.dimension:
        raise PolyStructureError(
            'Poisson bracket needs {} variables, got {} and {}'.format(
                J.dimension, f.nvars, g.nvars))
    degree = max(f.max_degree, g.max_degree)
    f = f.with_degree(degree)
    g = g.with_degree(degree)
    df = f.gradient_series()
    dg = g.gradient_series()
    result = PolySeries.zero(f.nvars, degree, common_mode(f.mode, g.mode))
    rows, cols = np.nonzero(J.matrix)
    for i, j in zip(rows, cols):
        if df[i].is_zero() or dg[j].is_zero():
            continue
        weight = J.matrix[i, j]
        term = df[i] * dg[j]
        if weight == 1:
            result = result + term
        elif weight == -1:
            result = result - term
        else:
            result = result + term * float(weight)
    return result


def nf_inner_product(S, T):
    """
    Inner product ``<S, T> = sum_a a! s_a t_a`` on a homogeneous slice, the
    value of ``S(d/dx) T(x)`` at the origin.

    Args:
        S (PolySeries): homogeneous series.
        T (PolySeries): homogeneous series of the same degree.

    Returns:
        float or Fraction or complex: the pairing (bilinear, no conjugation).
    """
    if S.nvars != T.nvars:
        raise PolyStructureError('inner product of series in different spaces')
    if not (S.is_homogeneous() and T.is_homogeneous()):
        raise PolyContractError('inner product needs homogeneous series')
    if not (S.is_zero() or T.is_zero()) and S.degree != T.degree:
        raise PolyContractError(
            'inner product of degrees {} and {}'.format(S.degree, T.degree))
    degree = max(S.max_degree, T.max_degree)
    mode = common_mode(S.mode, T.mode)
    s = coerce_array(S.with_degree(degree).coefficients, mode)
    t = coerce_array(T.with_degree(degree).coefficients, mode)
    weights = monomial_basis(S.nvars, degree).factorials
    if mode == MODE_RATIONAL:
        return sum((a * b * int(w) for a, b, w in zip(s, t, weights)
                    if a != 0 and b != 0), Fraction(0))
    value = (s * t * weights.astype(np.float64)).sum()
    return complex(value) if mode == MODE_COMPLEX else float(value)
