"""Per-batch loss weights proportional to inverse class distributions."""

from __future__ import annotations

from dataclasses import dataclass

from valuenli.errors import DataValueError, EmptyInputError


@dataclass(frozen=True)
class LabelWeights:
    """Loss weights for the entail / not-entail outcomes of one batch."""

    w_entail: float
    w_not: float


def compute_label_weights(n_entail: int, n_not: int) -> LabelWeights:
    """Inverse-frequency weights, normalized to sum to 2 (mean 1).

    With both outcomes present: w_c = 2 * (1/n_c) / (1/n_entail + 1/n_not),
    so w_entail * n_entail == w_not * n_not. A batch with only one outcome
    gives the present outcome weight 2 and the absent one 0.
    """
    if n_entail < 0 or n_not < 0:
        raise DataValueError("batch counts must be nonnegative")
    if n_entail == 0 and n_not == 0:
        raise EmptyInputError("cannot weight an empty batch")
    if n_entail == 0:
        return LabelWeights(0.0, 2.0)
    if n_not == 0:
        return LabelWeights(2.0, 0.0)
    inv_entail = 1.0 / n_entail
    inv_not = 1.0 / n_not
    denom = inv_entail + inv_not
    return LabelWeights(2.0 * inv_entail / denom, 2.0 * inv_not / denom)
