"""Uncompiled versions of the kernels in ``_kernels.pyx``.

Same signatures and results. The box scan vectorizes each denominator row
with numpy; the range sweep is a plain loop over the sieve.
"""

from __future__ import annotations

import numpy as np

from .arith import divides


def _divides(d: np.ndarray, x: np.ndarray) -> np.ndarray:
    zero = d == 0
    safe = np.where(zero, 1, d)
    return np.where(zero, x == 0, x % safe == 0)


def box_scan(p: int, q: int, max_den: int, max_num: int) -> list[tuple[int, int]]:
    n = p * q
    nums = np.arange(-max_num, max_num + 1, dtype=np.int64)
    nums = nums[nums != 0]
    out = []
    for den in range(1, max_den + 1):
        target = den * n - nums
        keep = target != 0
        keep &= _divides(den * p - nums, target)
        keep &= _divides(den * q - nums, target)
        hits = nums[keep]
        hits = hits[np.gcd(hits, den) == 1]
        out.extend((int(a), den) for a in hits)
    return out


def base_scan(spf, num: int, den: int, limit: int, kind: int) -> list[int]:
    spf = spf.tolist()
    out = []
    for m in range(2, limit + 1):
        target = den * m - num
        if target == 0:
            continue
        rest, last, omega, big_omega = m, 0, 0, 0
        ok = True
        while rest > 1:
            r = spf[rest]
            rest //= r
            big_omega += 1
            if r == last:
                continue
            last = r
            omega += 1
            if not divides(den * r - num, target):
                ok = False
                break
        if not ok:
            continue
        if kind == 1 and big_omega < 2:
            continue
        if kind == 2 and (big_omega < 2 or omega != big_omega):
            continue
        if kind == 3 and (omega != 2 or big_omega != 2):
            continue
        out.append(m)
    return out
