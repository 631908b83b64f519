"""Binary entropy in bits."""

from __future__ import annotations

from typing import Union, overload

import numpy as np
from scipy.special import xlogy

from ..exceptions import ValidationError

# Arguments this close to 0 or 1 give exactly 0
ENTROPY_EDGE = 1e-15

_LN2 = np.log(2.0)


@overload
def binary_entropy(x: float) -> float: ...


@overload
def binary_entropy(x: np.ndarray) -> np.ndarray: ...


def binary_entropy(x: Union[float, np.ndarray]) -> Union[float, np.ndarray]:
    """h(x) = -x log2 x - (1 - x) log2 (1 - x), with h(0) = h(1) = 0.

    Raises:
        ValidationError: any argument outside [0, 1]
    """
    values = np.asarray(x, dtype=np.float64)
    out_of_range = (values < -ENTROPY_EDGE) | (values > 1 + ENTROPY_EDGE)
    if np.any(np.isnan(values)) or np.any(out_of_range):
        raise ValidationError(f"binary_entropy needs arguments in [0, 1], got {x}", field="x")
    values = np.clip(values, 0.0, 1.0)
    edge = (values <= ENTROPY_EDGE) | (values >= 1.0 - ENTROPY_EDGE)
    h = -(xlogy(values, values) + xlogy(1.0 - values, 1.0 - values)) / _LN2
    h = np.where(edge, 0.0, h)
    if np.ndim(x) == 0:
        return float(h)
    return h
