"""Central finite-difference gradient checking."""

import logging
from typing import Callable, Optional

import numpy as np

from src.autodiff.tensor import Tensor, backward

logger = logging.getLogger(__name__)


def relative_error(analytic: np.ndarray, numeric: np.ndarray) -> np.ndarray:
    """|a - n| / max(|a|, |n|, 1e-12), elementwise."""
    scale = np.maximum(np.maximum(np.abs(analytic), np.abs(numeric)), 1e-12)
    return np.abs(analytic - numeric) / scale


def numeric_gradient(fn: Callable[[Tensor], Tensor], x: np.ndarray, h: float) -> np.ndarray:
    """Central differences of a scalar function, one coordinate at a time."""
    x = np.array(x, dtype=np.float64)
    grad = np.zeros_like(x)
    for index in np.ndindex(x.shape):
        original = x[index]
        x[index] = original + h
        f_plus = fn(Tensor(x.copy())).item()
        x[index] = original - h
        f_minus = fn(Tensor(x.copy())).item()
        x[index] = original
        grad[index] = (f_plus - f_minus) / (2.0 * h)
    return grad


def grad_check(
    fn: Callable[[Tensor], Tensor],
    x: np.ndarray,
    h: float = 1e-5,
    tol: float = 1e-4,
    analytic: Optional[np.ndarray] = None,
) -> float:
    """Compare tape gradients of ``fn`` at ``x`` against central differences.

    Args:
        fn: Scalar-valued function of one tensor.
        x: Point to check at.
        h: Finite-difference step.
        tol: Relative error above which a warning is logged.
        analytic: Gradient to check instead of the tape result.

    Returns:
        Maximum relative error over all coordinates.
    """
    x = np.asarray(x, dtype=np.float64)
    if analytic is None:
        leaf = Tensor(x.copy(), requires_grad=True)
        backward(fn(leaf))
        analytic = leaf.grad if leaf.grad is not None else np.zeros_like(x)
    numeric = numeric_gradient(fn, x, h)
    error = float(np.max(relative_error(np.asarray(analytic), numeric))) if x.size else 0.0
    if error > tol:
        logger.warning(f"Gradient check failed: max relative error {error:.3e} > {tol:.1e}")
    return error
