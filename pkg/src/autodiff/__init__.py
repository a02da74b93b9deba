"""Dense tensors with reverse-mode differentiation."""

from .gradcheck import grad_check, numeric_gradient, relative_error
from .tensor import (
    NEG_INF,
    Tensor,
    add,
    as_tensor,
    backward,
    concat,
    dropout_mask_apply,
    gelu,
    getitem,
    l2_normalize,
    layer_norm,
    log_sum_exp,
    masked_softmax,
    matmul,
    mean,
    mul,
    reshape,
    scale,
    slice_axis,
    sub,
    sum_,
    transpose,
)

__all__ = [
    "NEG_INF",
    "Tensor",
    "add",
    "as_tensor",
    "backward",
    "concat",
    "dropout_mask_apply",
    "gelu",
    "getitem",
    "grad_check",
    "l2_normalize",
    "layer_norm",
    "log_sum_exp",
    "masked_softmax",
    "matmul",
    "mean",
    "mul",
    "numeric_gradient",
    "relative_error",
    "reshape",
    "scale",
    "slice_axis",
    "sub",
    "sum_",
    "transpose",
]
