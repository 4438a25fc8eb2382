# distutils: language = c++
# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled sparse-polynomial kernel.

Exponent vectors are packed into 62-bit integers (variable-width fields
sized from the actual maxima) so the convolution runs over a C++ hash map
with no Python objects in the inner loop.  Returns None when the packed
width would overflow; the caller then uses the interpreted kernel.
"""

from cython.operator cimport dereference as deref, preincrement as inc
from libcpp.unordered_map cimport unordered_map
from libcpp.vector cimport vector

ctypedef long long i64


def mul_dicts(dict a_terms, dict b_terms, int nvars, add_table, mul_table, int q):
    if not a_terms or not b_terms:
        return {}
    cdef i64[:] addv = add_table
    cdef i64[:] mulv = mul_table
    cdef Py_ssize_t na = len(a_terms), nb = len(b_terms)
    cdef Py_ssize_t i, j
    cdef int v, total = 0
    cdef tuple e
    cdef vector[int] offs = vector[int](nvars, 0)
    cdef vector[i64] masks = vector[i64](nvars, 0)

    # widths are computed on Python ints: exponents may exceed C range,
    # in which case we decline before any narrowing conversion
    amax = [0] * nvars
    bmax = [0] * nvars
    for e in a_terms:
        for v in range(nvars):
            if e[v] > amax[v]:
                amax[v] = e[v]
    for e in b_terms:
        for v in range(nvars):
            if e[v] > bmax[v]:
                bmax[v] = e[v]
    for v in range(nvars):
        offs[v] = total
        width = (amax[v] + bmax[v]).bit_length() or 1
        total += width
        if total > 62:
            return None
        masks[v] = (<i64>1 << width) - 1

    cdef vector[i64] ka = vector[i64](na)
    cdef vector[i64] ca = vector[i64](na)
    cdef vector[i64] kb = vector[i64](nb)
    cdef vector[i64] cb = vector[i64](nb)
    cdef i64 key
    cdef object coeff

    i = 0
    for e, coeff in a_terms.items():
        key = 0
        for v in range(nvars):
            key |= (<i64>e[v]) << offs[v]
        ka[i] = key
        ca[i] = coeff
        i += 1
    i = 0
    for e, coeff in b_terms.items():
        key = 0
        for v in range(nvars):
            key |= (<i64>e[v]) << offs[v]
        kb[i] = key
        cb[i] = coeff
        i += 1

    cdef unordered_map[i64, i64] acc
    acc.reserve(<size_t>(na * nb if na * nb < 1 << 18 else 1 << 18))
    cdef unordered_map[i64, i64].iterator it
    cdef i64 c, row
    for i in range(na):
        row = ca[i] * q
        for j in range(nb):
            c = mulv[row + cb[j]]
            key = ka[i] + kb[j]
            it = acc.find(key)
            if it == acc.end():
                acc[key] = c
            else:
                deref(it).second = addv[deref(it).second * q + c]

    out = {}
    cdef i64 s
    it = acc.begin()
    while it != acc.end():
        s = deref(it).second
        if s != 0:
            key = deref(it).first
            out[tuple([(key >> offs[v]) & masks[v] for v in range(nvars)])] = s
        inc(it)
    return out
