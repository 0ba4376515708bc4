# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled grid kernels; same contract as ``stratum._kernels_py``."""


def forward_grid(list diffs, Py_ssize_t count):
    cdef list acc = list(diffs)
    cdef Py_ssize_t d = len(acc) - 1
    cdef Py_ssize_t i, j
    cdef list out = [0] * count
    for i in range(count):
        out[i] = acc[0]
        for j in range(d):
            acc[j] = acc[j] + acc[j + 1]
    return out


def scaled_round(list values, object den, Py_ssize_t shift):
    cdef object twice = 2 * den
    cdef Py_ssize_t i, n = len(values)
    cdef list out = [0] * n
    for i in range(n):
        out[i] = ((values[i] << (shift + 1)) + den) // twice
    return out
