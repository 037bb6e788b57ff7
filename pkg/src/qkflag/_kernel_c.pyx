# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled sparse polynomial kernels; same contract as ``_kernel_py``."""

from cpython.tuple cimport PyTuple_New, PyTuple_SET_ITEM, PyTuple_GET_ITEM, PyTuple_GET_SIZE
from cpython.ref cimport Py_INCREF

IMPLEMENTATION = "cython"


cdef inline tuple _add(tuple a, tuple b):
    cdef Py_ssize_t n = PyTuple_GET_SIZE(a), i
    cdef tuple out = PyTuple_New(n)
    cdef object v
    for i in range(n):
        v = <long>(<object>PyTuple_GET_ITEM(a, i)) + <long>(<object>PyTuple_GET_ITEM(b, i))
        Py_INCREF(v)
        PyTuple_SET_ITEM(out, i, v)
    return out


cdef inline bint _divides(tuple b, tuple a):
    cdef Py_ssize_t n = PyTuple_GET_SIZE(a), i
    for i in range(n):
        if <long>(<object>PyTuple_GET_ITEM(a, i)) < <long>(<object>PyTuple_GET_ITEM(b, i)):
            return False
    return True


def mono_mul(tuple a, tuple b):
    return _add(a, b)


def mono_div(tuple a, tuple b):
    cdef Py_ssize_t n = PyTuple_GET_SIZE(a), i
    cdef long x, y
    cdef tuple out = PyTuple_New(n)
    cdef object v
    for i in range(n):
        x = <long>(<object>PyTuple_GET_ITEM(a, i))
        y = <long>(<object>PyTuple_GET_ITEM(b, i))
        if x < y:
            return None
        v = x - y
        Py_INCREF(v)
        PyTuple_SET_ITEM(out, i, v)
    return out


def mono_lcm(tuple a, tuple b):
    cdef Py_ssize_t n = PyTuple_GET_SIZE(a), i
    cdef long x, y
    cdef tuple out = PyTuple_New(n)
    cdef object v
    for i in range(n):
        x = <long>(<object>PyTuple_GET_ITEM(a, i))
        y = <long>(<object>PyTuple_GET_ITEM(b, i))
        v = x if x > y else y
        Py_INCREF(v)
        PyTuple_SET_ITEM(out, i, v)
    return out


def divides(tuple b, tuple a):
    return _divides(b, a)


def find_reducer(tuple m, list lms):
    cdef Py_ssize_t idx, k = len(lms)
    for idx in range(k):
        if _divides(<tuple>lms[idx], m):
            return idx
    return -1


def poly_mul(dict p, dict q):
    cdef dict out = {}
    cdef tuple ea, eb, e
    cdef object ca, cb, c
    if len(p) > len(q):
        p, q = q, p
    for ea, ca in p.items():
        for eb, cb in q.items():
            e = _add(ea, eb)
            c = out.get(e)
            if c is None:
                out[e] = ca * cb
            else:
                out[e] = c + ca * cb
    return {e: c for e, c in out.items() if c}


def addmul_inplace(dict p, object c, tuple shift, dict q):
    cdef tuple e, e2
    cdef object cq, old, new
    for e, cq in q.items():
        e2 = _add(e, shift)
        old = p.get(e2)
        if old is None:
            p[e2] = c * cq
        else:
            new = old + c * cq
            if new:
                p[e2] = new
            else:
                del p[e2]
    return p


def leading(dict p, object key):
    cdef object best = None, bestk = None, k
    cdef tuple e
    for e in p:
        k = key(e)
        if best is None or k > bestk:
            best = e
            bestk = k
    return best
