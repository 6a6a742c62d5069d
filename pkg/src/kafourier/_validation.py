"""Input validation helpers in the spirit of ``sklearn.utils.check_array``."""
import numpy as np
from sklearn.utils import check_array


def check_samples(X, n_features, allow_complex=True):
    """2-D finite array with ``n_features`` columns; complex input kept."""
    X = np.asarray(X)
    if X.ndim == 1:
        X = X[None, :]
    if np.iscomplexobj(X):
        if not allow_complex:
            raise ValueError("complex input not supported")
        re = check_array(X.real, dtype=np.float64)
        im = check_array(X.imag, dtype=np.float64)
        X = re + 1j * im
    else:
        X = check_array(X, dtype=np.float64)
    if X.shape[1] != n_features:
        raise ValueError(f"X has {X.shape[1]} features, expected {n_features}")
    return X


def check_positive(name, value, strict=True):
    value = float(value)
    if not np.isfinite(value) or (value <= 0 if strict else value < 0):
        raise ValueError(f"{name} must be {'positive' if strict else 'non-negative'}, got {value}")
    return value
