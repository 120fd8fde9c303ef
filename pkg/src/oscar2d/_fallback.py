"""Pure-Python versions of the compiled kernels in ``_kernels.pyx``."""

import numpy as np


def pav_nonincreasing(z):
    sums = []
    counts = []
    for value in np.asarray(z, dtype=np.float64).tolist():
        sums.append(value)
        counts.append(1)
        while len(sums) > 1 and sums[-2] * counts[-1] < sums[-1] * counts[-2]:
            s = sums.pop()
            c = counts.pop()
            sums[-1] += s
            counts[-1] += c
    means = [s / c for s, c in zip(sums, counts)]
    return np.repeat(np.array(means, dtype=np.float64), counts)


def shrink_sorted(a, w):
    """Prox of the sorted-l1 norm restricted to nonincreasing nonnegative ``a``."""
    z = np.asarray(a, dtype=np.float64) - np.asarray(w, dtype=np.float64)
    return np.maximum(pav_nonincreasing(z), 0.0)
