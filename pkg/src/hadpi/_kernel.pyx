# cython: language_level=3
# cython: boundscheck=False
# cython: wraparound=False
"""Compiled arithmetic kernels, drop-in for hadpi._kernel_py.

Loop indices are C ints; the coefficients stay Python objects because
entries need arbitrary precision.  The win over the pure version is the
removal of interpreter dispatch in the triple loops.
"""


def mat_mul_nums(Py_ssize_t n, Aa, Ab, Ba, Bb):
    """Multiply two n*n numerator arrays; exponent handling is the caller's."""
    cdef Py_ssize_t i, j, t, base, row
    cdef object xa, xb, ya, yb
    cdef list Ca = [0] * (n * n)
    cdef list Cb = [0] * (n * n)
    for i in range(n):
        base = i * n
        for t in range(n):
            xa = Aa[base + t]
            xb = Ab[base + t]
            if xa == 0 and xb == 0:
                continue
            row = t * n
            for j in range(n):
                ya = Ba[row + j]
                yb = Bb[row + j]
                Ca[base + j] += xa * ya + 2 * xb * yb
                Cb[base + j] += xa * yb + xb * ya
    return Ca, Cb


def kron_nums(Py_ssize_t n1, Aa, Ab, Py_ssize_t n2, Ba, Bb):
    """Kronecker product of numerator arrays, result is (n1*n2) square."""
    cdef Py_ssize_t n = n1 * n2
    cdef Py_ssize_t i1, j1, i2, j2, out, row
    cdef object xa, xb, ya, yb
    cdef list Ca = [0] * (n * n)
    cdef list Cb = [0] * (n * n)
    for i1 in range(n1):
        for j1 in range(n1):
            xa = Aa[i1 * n1 + j1]
            xb = Ab[i1 * n1 + j1]
            if xa == 0 and xb == 0:
                continue
            for i2 in range(n2):
                out = (i1 * n2 + i2) * n + j1 * n2
                row = i2 * n2
                for j2 in range(n2):
                    ya = Ba[row + j2]
                    yb = Bb[row + j2]
                    Ca[out + j2] = xa * ya + 2 * xb * yb
                    Cb[out + j2] = xa * yb + xb * ya
    return Ca, Cb


def reduce_nums(Py_ssize_t k, aa, bb):
    """Strip common rt2 factors: divide through while k > 0 and all allow it."""
    cdef Py_ssize_t i, n = len(aa)
    cdef bint odd
    cdef object a
    while k > 0:
        odd = False
        for i in range(n):
            a = aa[i]
            if a & 1:
                odd = True
                break
        if odd:
            break
        aa, bb = list(bb), [a >> 1 for a in aa]
        k -= 1
    return k, aa, bb
