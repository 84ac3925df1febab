"""Detecting a solution using only a parity counter."""

from __future__ import annotations

import itertools
from typing import Callable, Optional

import numpy as np

from .hashing import ceil_lg


def decision_from_parity(
    inst,
    parity_oracle: Callable[[object], int],
    rng: np.random.Generator,
    repetitions: Optional[int] = None,
) -> bool:
    """Subsample the lists at every rate combination and ask for odd parity.

    Each list keeps every entry independently with probability 2^-j for j in
    [1, ceil(lg n)+1].  The unsampled instance is queried first, so an odd
    count is reported without any sampling.  Zero-solution instances always
    give even parity, hence there are no false positives.
    """
    if parity_oracle(inst) & 1:
        return True
    n = max(max(inst.sizes), 1)
    levels = ceil_lg(n) + 1
    reps = repetitions if repetitions is not None else max(1, ceil_lg(n) ** 2)
    for rates in itertools.product(range(1, levels + 1), repeat=inst.k):
        keep_prob = np.array([2.0 ** -j for j in rates])
        for _ in range(reps):
            sub = []
            for lst, p in zip(inst.lists, keep_prob):
                mask = rng.random(len(lst)) < p
                sub.append([x for x, keep in zip(lst, mask) if keep])
            if parity_oracle(inst.with_lists(sub)) & 1:
                return True
    return False
