"""scikit-learn style front end for the dual construction.

    >>> est = CoulterMatthewsDual(n=5, k=3, a="g").fit()
    >>> est.predict(["00000", "00001", "00010"])
    array([0, 0, 2])

``X`` is a sequence of field points, each an integer code, a coefficient
string or ``"g^e"``.  ``transform`` returns the per-term trace values, so
``predict(X) == transform(X).sum(axis=1) % 3``.
"""
from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from . import cmdual, gf3
from .exceptions import BadParameters


def check_cm_params(n, k, a):
    """Validate (n, k) and the shape of ``a`` before any field is built."""
    gf3.validate_cm(n, k)
    if a is None or (isinstance(a, int) and a == 0):
        raise BadParameters("a must be nonzero")


def check_points(X, ctx):
    """Coerce field points to an int64 code array."""
    if isinstance(X, (str, int, np.integer)):
        X = [X]
    arr = np.asarray(X)
    if arr.ndim == 2 and arr.shape[1] == 1:
        arr = arr[:, 0]
    if arr.ndim != 1:
        raise BadParameters("X must be a one-dimensional sequence of field points")
    if arr.dtype.kind in "iu":
        if arr.size and (arr.min() < 0 or arr.max() >= ctx.size):
            raise BadParameters(f"element codes must lie in [0, {ctx.size})")
        return arr.astype(np.int64)
    return np.array([ctx.element(x).code for x in arr.tolist()], dtype=np.int64)


class CoulterMatthewsDual(TransformerMixin, BaseEstimator):
    """Dual function g of f(x) = Tr(a x^((3^k + 1) / 2)) over GF(3^n).

    Parameters
    ----------
    n, k : int
        Field degree and exponent parameter (k odd, gcd(n, k) = 1, k < n).
    a : int or str, default="g"
        Nonzero coefficient; ``"g"`` is the context generator (a non-square).
    modulus : str, optional
        Defining polynomial, most significant coefficient first.
    """

    def __init__(self, n=5, k=3, a="g", modulus=None):
        self.n = n
        self.k = k
        self.a = a
        self.modulus = modulus

    def fit(self, X=None, y=None):
        check_cm_params(self.n, self.k, self.a)
        self.field_ = gf3.build_field(self.n, self.modulus)
        a = self.field_.element(self.a)
        self.params_ = cmdual.derive_params(self.n, self.k)
        self.representation_ = cmdual.dual_representation(self.field_, a, self.k)
        self.n_terms_ = len(self.representation_)
        self.degree_ = cmdual.algebraic_degree(self.representation_)
        return self

    def _values(self, codes):
        if self.n <= gf3.TABLE_MAX_N:
            return None
        rep = self.representation_
        return np.array(
            [[gf3.trace(t.coefficient * gf3.power(gf3.FieldElement(self.field_, c), t.exponent.value))
              if c else 0 for t in rep.terms] for c in codes.tolist()],
            dtype=np.int64,
        ).reshape(len(codes), len(rep.terms))

    def transform(self, X):
        check_is_fitted(self, "representation_")
        codes = check_points(X, self.field_)
        scalar = self._values(codes)
        if scalar is not None:
            return scalar
        tables = self.field_.tables()
        cols = [tables.monomial_trace(t.coefficient, t.exponent.value, codes)
                for t in self.representation_.terms]
        if not cols:
            return np.zeros((len(codes), 0), dtype=np.int64)
        return np.stack(cols, axis=1)

    def predict(self, X):
        return self.transform(X).sum(axis=1) % 3

    def score(self, X, y=None):
        """Fraction of points where the dual agrees with ``y``.

        Without ``y`` the reference is the dual read off the exact
        Walsh spectrum (requires the fast transform, n <= 16).
        """
        from . import walsh

        codes = check_points(X, self.field_)
        if y is None:
            y = walsh.extract_dual(self.field_, self.field_.element(self.a), self.k)[codes]
        return float(np.mean(self.predict(codes) == np.asarray(y)))
