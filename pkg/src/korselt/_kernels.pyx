# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot loops: the bounding-box base scan and the fixed-base range sweep.

All arithmetic is 64-bit; callers guarantee the operands fit.
"""

from libc.stdint cimport int64_t, uint32_t


cdef inline int64_t _gcd(int64_t a, int64_t b) nogil:
    if a < 0:
        a = -a
    while b:
        a, b = b, a % b
    return a


cdef inline bint _divides(int64_t d, int64_t x) nogil:
    if d == 0:
        return x == 0
    return x % d == 0


def box_scan(int64_t p, int64_t q, int64_t max_den, int64_t max_num):
    cdef int64_t n = p * q
    cdef int64_t den, num, target
    out = []
    for den in range(1, max_den + 1):
        for num in range(-max_num, max_num + 1):
            if num == 0:
                continue
            target = den * n - num
            if target == 0:
                continue
            if not _divides(den * p - num, target):
                continue
            if not _divides(den * q - num, target):
                continue
            if _gcd(num, den) != 1:
                continue
            out.append((num, den))
    return out


def base_scan(const uint32_t[::1] spf, int64_t num, int64_t den, int64_t limit, int kind):
    """Members M in [2, limit] of the fixed-base Korselt set.

    kind: 0 all, 1 composite, 2 squarefree composite, 3 semiprime.
    """
    cdef int64_t m, rest, r, last, target
    cdef int omega, big_omega
    cdef bint ok
    out = []
    for m in range(2, limit + 1):
        target = den * m - num
        if target == 0:
            continue
        rest = m
        last = 0
        omega = 0
        big_omega = 0
        ok = True
        while rest > 1:
            r = spf[rest]
            rest //= r
            big_omega += 1
            if r == last:
                continue
            last = r
            omega += 1
            if not _divides(den * r - num, target):
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
