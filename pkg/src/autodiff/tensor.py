"""Dense float64 tensors with a reverse-mode gradient tape.

Each op computes its value with numpy and, when any input requires a
gradient, records a tape node holding its parents and a closure mapping the
output gradient to parent gradients. ``backward`` walks the tape in reverse
topological order.
"""

import itertools
import math
from typing import Any, Callable, Iterable, Optional, Sequence

import numpy as np
from scipy.special import erf

from src.errors import ShapeError

# Stands in for -inf in additive attention and loss masks
NEG_INF = -1e9

_node_ids = itertools.count()

BackwardFn = Callable[[np.ndarray], Sequence[Optional[np.ndarray]]]


class Tensor:
    """A dense float64 array that may take part in the gradient tape."""

    __array_priority__ = 100

    def __init__(self, data: Any, requires_grad: bool = False):
        self.data = np.asarray(data, dtype=np.float64)
        self.requires_grad = requires_grad
        self.grad: Optional[np.ndarray] = None
        self.node_id: Optional[int] = None
        self.op = "leaf"
        self._parents: tuple["Tensor", ...] = ()
        self._backward: Optional[BackwardFn] = None

    @classmethod
    def from_op(
        cls,
        data: np.ndarray,
        parents: Sequence["Tensor"],
        backward_fn: BackwardFn,
        op: str,
    ) -> "Tensor":
        """Wrap an op result, recording a tape node if any parent needs grad."""
        out = cls(data)
        if any(p.requires_grad for p in parents):
            out.requires_grad = True
            out.node_id = next(_node_ids)
            out.op = op
            out._parents = tuple(parents)
            out._backward = backward_fn
        return out

    @property
    def shape(self) -> tuple[int, ...]:
        return self.data.shape

    @property
    def ndim(self) -> int:
        return self.data.ndim

    @property
    def size(self) -> int:
        return self.data.size

    def item(self) -> float:
        return float(self.data.reshape(-1)[0]) if self.data.size == 1 else float(self.data)

    def numpy(self) -> np.ndarray:
        return self.data

    def detach(self) -> "Tensor":
        return Tensor(self.data)

    def __repr__(self) -> str:
        return f"Tensor(shape={self.shape}, op={self.op}, requires_grad={self.requires_grad})"

    def __add__(self, other: Any) -> "Tensor":
        return add(self, other)

    def __radd__(self, other: Any) -> "Tensor":
        return add(other, self)

    def __sub__(self, other: Any) -> "Tensor":
        return sub(self, other)

    def __rsub__(self, other: Any) -> "Tensor":
        return sub(other, self)

    def __mul__(self, other: Any) -> "Tensor":
        if np.isscalar(other):
            return scale(self, float(other))
        return mul(self, other)

    def __rmul__(self, other: Any) -> "Tensor":
        return self.__mul__(other)

    def __truediv__(self, other: float) -> "Tensor":
        return scale(self, 1.0 / float(other))

    def __neg__(self) -> "Tensor":
        return scale(self, -1.0)

    def __matmul__(self, other: "Tensor") -> "Tensor":
        return matmul(self, other)

    def __getitem__(self, index: Any) -> "Tensor":
        return getitem(self, index)

    def reshape(self, *shape: int) -> "Tensor":
        if len(shape) == 1 and isinstance(shape[0], (tuple, list)):
            shape = tuple(shape[0])
        return reshape(self, shape)

    def transpose(self, *axes: int) -> "Tensor":
        return transpose(self, axes or None)

    def sum(self, axis: Optional[int | tuple[int, ...]] = None, keepdims: bool = False) -> "Tensor":
        return sum_(self, axis, keepdims)

    def mean(self, axis: Optional[int | tuple[int, ...]] = None, keepdims: bool = False) -> "Tensor":
        return mean(self, axis, keepdims)

    def backward(self) -> None:
        backward(self)


def as_tensor(x: Any) -> Tensor:
    """Wrap constants as non-grad tensors."""
    return x if isinstance(x, Tensor) else Tensor(x)


def unbroadcast(grad: np.ndarray, shape: tuple[int, ...]) -> np.ndarray:
    """Sum a broadcast gradient back down to ``shape``."""
    while grad.ndim > len(shape):
        grad = grad.sum(axis=0)
    for axis, dim in enumerate(shape):
        if dim == 1 and grad.shape[axis] != 1:
            grad = grad.sum(axis=axis, keepdims=True)
    return grad


def _broadcast_shape(op: str, a: Tensor, b: Tensor) -> tuple[int, ...]:
    try:
        return np.broadcast_shapes(a.shape, b.shape)
    except ValueError:
        raise ShapeError(f"{op}: incompatible shapes {a.shape} and {b.shape}") from None


def add(a: Any, b: Any) -> Tensor:
    """Elementwise sum with broadcasting."""
    a, b = as_tensor(a), as_tensor(b)
    _broadcast_shape("add", a, b)

    def backward_fn(g: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        return unbroadcast(g, a.shape), unbroadcast(g, b.shape)

    return Tensor.from_op(a.data + b.data, (a, b), backward_fn, "add")


def sub(a: Any, b: Any) -> Tensor:
    """Elementwise difference with broadcasting."""
    a, b = as_tensor(a), as_tensor(b)
    _broadcast_shape("sub", a, b)

    def backward_fn(g: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        return unbroadcast(g, a.shape), unbroadcast(-g, b.shape)

    return Tensor.from_op(a.data - b.data, (a, b), backward_fn, "sub")


def mul(a: Any, b: Any) -> Tensor:
    """Elementwise product with broadcasting."""
    a, b = as_tensor(a), as_tensor(b)
    _broadcast_shape("mul", a, b)

    def backward_fn(g: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        return unbroadcast(g * b.data, a.shape), unbroadcast(g * a.data, b.shape)

    return Tensor.from_op(a.data * b.data, (a, b), backward_fn, "mul")


def scale(x: Tensor, c: float) -> Tensor:
    """Multiply by a constant scalar."""
    x = as_tensor(x)
    return Tensor.from_op(x.data * c, (x,), lambda g: (g * c,), "scale")


def matmul(a: Tensor, b: Tensor) -> Tensor:
    """Batched matrix product over the last two axes."""
    a, b = as_tensor(a), as_tensor(b)
    if a.ndim < 2 or b.ndim < 2 or a.shape[-1] != b.shape[-2]:
        raise ShapeError(f"matmul: incompatible shapes {a.shape} and {b.shape}")
    try:
        np.broadcast_shapes(a.shape[:-2], b.shape[:-2])
    except ValueError:
        raise ShapeError(f"matmul: incompatible shapes {a.shape} and {b.shape}") from None

    def backward_fn(g: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        ga = g @ np.swapaxes(b.data, -1, -2)
        gb = np.swapaxes(a.data, -1, -2) @ g
        return unbroadcast(ga, a.shape), unbroadcast(gb, b.shape)

    return Tensor.from_op(a.data @ b.data, (a, b), backward_fn, "matmul")


def transpose(x: Tensor, axes: Optional[Sequence[int]] = None) -> Tensor:
    """Permute axes (reverse them when ``axes`` is None)."""
    x = as_tensor(x)
    perm = tuple(range(x.ndim))[::-1] if axes is None else tuple(axes)
    if sorted(perm) != list(range(x.ndim)):
        raise ShapeError(f"transpose: axes {perm} do not match shape {x.shape}")
    inverse = tuple(np.argsort(perm))
    return Tensor.from_op(
        np.transpose(x.data, perm), (x,), lambda g: (np.transpose(g, inverse),), "transpose"
    )


def reshape(x: Tensor, shape: Sequence[int]) -> Tensor:
    """Reshape without copying semantics."""
    x = as_tensor(x)
    try:
        out = x.data.reshape(shape)
    except ValueError:
        raise ShapeError(f"reshape: cannot reshape {x.shape} to {tuple(shape)}") from None
    return Tensor.from_op(out, (x,), lambda g: (g.reshape(x.shape),), "reshape")


def concat(tensors: Iterable[Tensor], axis: int = -1) -> Tensor:
    """Concatenate along an axis."""
    parts = [as_tensor(t) for t in tensors]
    try:
        out = np.concatenate([p.data for p in parts], axis=axis)
    except ValueError:
        shapes = ", ".join(str(p.shape) for p in parts)
        raise ShapeError(f"concat: incompatible shapes {shapes}") from None
    bounds = np.cumsum([p.shape[axis] for p in parts])[:-1]

    def backward_fn(g: np.ndarray) -> list[np.ndarray]:
        return np.split(g, bounds, axis=axis)

    return Tensor.from_op(out, parts, backward_fn, "concat")


def getitem(x: Tensor, index: Any) -> Tensor:
    """Basic or fancy indexing; gradients scatter-add back."""
    x = as_tensor(x)

    def backward_fn(g: np.ndarray) -> tuple[np.ndarray]:
        gx = np.zeros_like(x.data)
        np.add.at(gx, index, g)
        return (gx,)

    return Tensor.from_op(x.data[index], (x,), backward_fn, "getitem")


def slice_axis(x: Tensor, axis: int, start: int, stop: int) -> Tensor:
    """Contiguous slice [start, stop) along one axis."""
    index = [slice(None)] * x.ndim
    index[axis] = slice(start, stop)
    return getitem(x, tuple(index))


def sum_(x: Tensor, axis: Optional[int | tuple[int, ...]] = None, keepdims: bool = False) -> Tensor:
    """Sum over axes."""
    x = as_tensor(x)

    def backward_fn(g: np.ndarray) -> tuple[np.ndarray]:
        if axis is not None and not keepdims:
            g = np.expand_dims(g, axis)
        return (np.broadcast_to(g, x.shape).copy(),)

    return Tensor.from_op(np.sum(x.data, axis=axis, keepdims=keepdims), (x,), backward_fn, "sum")


def mean(x: Tensor, axis: Optional[int | tuple[int, ...]] = None, keepdims: bool = False) -> Tensor:
    """Arithmetic mean over axes."""
    x = as_tensor(x)
    total = sum_(x, axis, keepdims)
    count = x.size / max(total.size, 1) if axis is not None else x.size
    return scale(total, 1.0 / count)


def masked_softmax(logits: Tensor, additive_mask: np.ndarray) -> Tensor:
    """Softmax over the last axis after adding a mask of 0 / NEG_INF entries.

    Masked entries come out exactly 0 and receive no gradient.
    """
    logits = as_tensor(logits)
    mask = np.asarray(additive_mask, dtype=np.float64)
    try:
        if np.broadcast_shapes(logits.shape, mask.shape) != logits.shape:
            raise ValueError
    except ValueError:
        raise ShapeError(f"masked_softmax: mask shape {mask.shape} does not fit logits {logits.shape}") from None

    z = logits.data + mask
    z = z - z.max(axis=-1, keepdims=True)
    e = np.exp(z)
    y = e / e.sum(axis=-1, keepdims=True)

    def backward_fn(g: np.ndarray) -> tuple[np.ndarray]:
        return (y * (g - np.sum(g * y, axis=-1, keepdims=True)),)

    return Tensor.from_op(y, (logits,), backward_fn, "masked_softmax")


def layer_norm(x: Tensor, gain: Tensor, bias: Tensor, eps: float = 1e-5) -> Tensor:
    """Normalize the last axis to zero mean and unit variance, then affine."""
    x, gain, bias = as_tensor(x), as_tensor(gain), as_tensor(bias)
    if gain.shape != (x.shape[-1],) or bias.shape != (x.shape[-1],):
        raise ShapeError(f"layer_norm: gain {gain.shape} / bias {bias.shape} do not fit {x.shape}")

    centered = x.data - x.data.mean(axis=-1, keepdims=True)
    inv_std = 1.0 / np.sqrt(np.mean(centered * centered, axis=-1, keepdims=True) + eps)
    x_hat = centered * inv_std
    lead = tuple(range(x.ndim - 1))

    def backward_fn(g: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        g_hat = g * gain.data
        gx = inv_std * (
            g_hat
            - g_hat.mean(axis=-1, keepdims=True)
            - x_hat * np.mean(g_hat * x_hat, axis=-1, keepdims=True)
        )
        return gx, np.sum(g * x_hat, axis=lead), np.sum(g, axis=lead)

    return Tensor.from_op(x_hat * gain.data + bias.data, (x, gain, bias), backward_fn, "layer_norm")


def gelu(x: Tensor) -> Tensor:
    """Gaussian Error Linear Unit, exact erf form."""
    x = as_tensor(x)
    cdf = 0.5 * (1.0 + erf(x.data / math.sqrt(2.0)))
    pdf = np.exp(-0.5 * x.data * x.data) / math.sqrt(2.0 * math.pi)

    def backward_fn(g: np.ndarray) -> tuple[np.ndarray]:
        return (g * (cdf + x.data * pdf),)

    return Tensor.from_op(x.data * cdf, (x,), backward_fn, "gelu")


def l2_normalize(x: Tensor, axis: int = -1, eps: float = 1e-12) -> Tensor:
    """Scale vectors along ``axis`` to unit Euclidean norm."""
    x = as_tensor(x)
    norm = np.sqrt(np.sum(x.data * x.data, axis=axis, keepdims=True))
    safe = np.maximum(norm, eps)
    y = x.data / safe

    # A vector at the origin maps to the origin and passes no gradient
    def backward_fn(g: np.ndarray) -> tuple[np.ndarray]:
        radial = np.sum(g * y, axis=axis, keepdims=True)
        return (np.where(norm > eps, (g - y * radial) / safe, 0.0),)

    return Tensor.from_op(y, (x,), backward_fn, "l2_normalize")


def dropout_mask_apply(x: Tensor, mask: np.ndarray) -> Tensor:
    """Multiply by a precomputed (already rescaled) keep mask."""
    x = as_tensor(x)
    mask = np.asarray(mask, dtype=np.float64)
    try:
        if np.broadcast_shapes(x.shape, mask.shape) != x.shape:
            raise ValueError
    except ValueError:
        raise ShapeError(f"dropout_mask_apply: mask shape {mask.shape} does not fit {x.shape}") from None
    return Tensor.from_op(x.data * mask, (x,), lambda g: (g * mask,), "dropout")


def log_sum_exp(x: Tensor, axis: int = -1, keepdims: bool = False) -> Tensor:
    """Numerically stable log of summed exponentials along an axis."""
    x = as_tensor(x)
    peak = x.data.max(axis=axis, keepdims=True)
    out = peak + np.log(np.sum(np.exp(x.data - peak), axis=axis, keepdims=True))
    weights = np.exp(x.data - out)

    def backward_fn(g: np.ndarray) -> tuple[np.ndarray]:
        if not keepdims:
            g = np.expand_dims(g, axis)
        return (g * weights,)

    value = out if keepdims else np.squeeze(out, axis=axis)
    return Tensor.from_op(value, (x,), backward_fn, "log_sum_exp")


def _topological_order(root: Tensor) -> list[Tensor]:
    order: list[Tensor] = []
    visited: set[int] = set()
    stack: list[tuple[Tensor, bool]] = [(root, False)]
    while stack:
        node, expanded = stack.pop()
        if expanded:
            order.append(node)
            continue
        if id(node) in visited:
            continue
        visited.add(id(node))
        stack.append((node, True))
        for parent in node._parents:
            if parent.requires_grad and id(parent) not in visited:
                stack.append((parent, False))
    return order


def backward(loss: Tensor) -> None:
    """Accumulate d(loss)/d(leaf) into ``.grad`` of every requires_grad leaf.

    Raises:
        ShapeError: If the loss is not a scalar.
    """
    if loss.size != 1:
        raise ShapeError(f"backward needs a scalar loss, got shape {loss.shape}")
    if not loss.requires_grad:
        return

    grads: dict[int, np.ndarray] = {id(loss): np.ones_like(loss.data)}
    for node in reversed(_topological_order(loss)):
        g = grads.pop(id(node), None)
        if g is None:
            continue
        if node._backward is None:
            node.grad = g.copy() if node.grad is None else node.grad + g
            continue
        for parent, pg in zip(node._parents, node._backward(g)):
            if pg is None or not parent.requires_grad:
                continue
            key = id(parent)
            grads[key] = pg if key not in grads else grads[key] + pg
