# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled twin of _kernel_py with typed loop counters and parity bookkeeping."""

BACKEND = "cython"


cpdef int prefix_parity(tuple mono, Py_ssize_t offset):
    cdef int p = 0
    cdef Py_ssize_t s
    cdef tuple slot
    cdef object i
    for s in range(offset):
        slot = <tuple>mono[s]
        for i in slot:
            if <long>i < 0:
                p ^= 1
    return p


cpdef dict apply_layer(dict vec, dict table, Py_ssize_t offset, Py_ssize_t width, bint odd):
    cdef dict out = {}
    cdef Py_ssize_t end = offset + width
    cdef tuple mono, left, right, key, img
    cdef object c, d, col, prev
    for mono, c in vec.items():
        col = table.get(mono[offset:end])
        if col is None:
            continue
        if odd and prefix_parity(mono, offset):
            c = -c
        left = mono[:offset]
        right = mono[end:]
        for img, d in col:
            key = left + img + right
            prev = out.get(key)
            if prev is None:
                out[key] = c * d
            else:
                out[key] = prev + c * d
    return {k: v for k, v in out.items() if v}


cpdef dict push_columns(list basis, list layers):
    cdef dict cols = {}
    cdef dict vec
    cdef tuple mono, layer
    for mono in basis:
        vec = {mono: 1}
        for layer in layers:
            vec = apply_layer(vec, <dict>layer[0], <Py_ssize_t>layer[1], <Py_ssize_t>layer[2], <bint>layer[3])
            if not vec:
                break
        if vec:
            cols[mono] = vec
    return cols
