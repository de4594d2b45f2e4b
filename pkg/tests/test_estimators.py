import numpy as np
import pytest
from sklearn.base import clone
from sklearn.exceptions import NotFittedError

from minitwistor.estimators import AbelJacobiTransformer, SeifertHyperplaneTransformer
from minitwistor.hyperelliptic_curve import G2, circle_zw, curve_point, monomials


def test_params_and_clone():
    est = SeifertHyperplaneTransformer(branch_points=G2.branch_points, k=2)
    assert est.get_params() == {"branch_points": G2.branch_points, "k": 2}
    assert clone(est).set_params(k=1).k == 1


def test_abel_transformer_antisymmetry():
    pts = [curve_point(G2, z) for z in (0.3 + 0.2j, -3.0 + 1j)]
    X = np.array([[p.z, p.w] for p in pts])
    Y = np.array([[p.z, -p.w] for p in pts])
    est = AbelJacobiTransformer().fit()
    a, b = est.transform(X), est.transform(Y)
    assert a.shape == (2, 4)
    diff = np.mod(a + b + 0.5, 1.0) - 0.5
    assert np.max(np.abs(diff)) < 1e-9


def test_not_fitted_and_bad_shape():
    with pytest.raises(NotFittedError):
        AbelJacobiTransformer().transform(np.zeros((1, 2)))
    est = AbelJacobiTransformer().fit()
    with pytest.raises(ValueError):
        est.transform(np.zeros((2, 3)))


def test_seifert_transformer_gives_tangent_planes():
    est = SeifertHyperplaneTransformer(k=1)
    X = np.array([[0.3, 1.7], [-1.0, 2.4]])
    C = est.fit_transform(X)
    assert C.shape == (2, 5)
    for c, (s, t) in zip(C, X):
        for a in (s, t):
            z, w = circle_zw(G2, 2, a)
            m = monomials(2, z, w)
            assert abs(c @ m) < 1e-9 * np.linalg.norm(m)
