# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled arithmetic kernel; same contract as ``_kernel_py``."""

from cpython.dict cimport PyDict_GetItem
from cpython.object cimport PyObject

SHIFT = 32
HALF = 1 << 31
MASK = (1 << 32) - 1


def pack(a, b):
    return (a << 32) + b


def unpack(key):
    b = ((key + HALF) & MASK) - HALF
    return (key - b) >> 32, b


cdef inline void _acc(dict r, object k, object v):
    cdef PyObject* old = PyDict_GetItem(r, k)
    cdef object s
    if old is NULL:
        r[k] = v
    else:
        s = <object>old + v
        if s:
            r[k] = s
        else:
            del r[k]


def padd(dict f, dict g):
    cdef dict r
    if len(f) < len(g):
        f, g = g, f
    r = f.copy()
    for k, v in g.items():
        _acc(r, k, v)
    return r


def psub(dict f, dict g):
    cdef dict r = f.copy()
    for k, v in g.items():
        _acc(r, k, -v)
    return r


def pneg(dict f):
    return {k: -v for k, v in f.items()}


def pscale(dict f, c):
    if not c:
        return {}
    return {k: v * c for k, v in f.items()}


def pshift(dict f, key):
    return {k + key: v for k, v in f.items()}


cdef dict _pmul(dict f, dict g):
    cdef dict r
    if len(f) < len(g):
        f, g = g, f
    if len(g) == 1:
        for kg, vg in g.items():
            if vg == 1:
                return {k + kg: v for k, v in f.items()}
            return {k + kg: v * vg for k, v in f.items()}
    r = {}
    for kg, vg in g.items():
        for kf, vf in f.items():
            _acc(r, kf + kg, vf * vg)
    return r


def pmul(dict f, dict g):
    return _pmul(f, g)


cdef void _iaddmul(dict acc, dict f, dict g):
    for kg, vg in g.items():
        for kf, vf in f.items():
            _acc(acc, kf + kg, vf * vg)


def iadd(dict acc, dict f):
    for k, v in f.items():
        _acc(acc, k, v)


def iaddmul(dict acc, dict f, dict g):
    _iaddmul(acc, f, g)


cdef void _xaccum(dict out, dict c, dict img):
    cdef PyObject* old
    cdef dict acc
    for m, c2 in img.items():
        old = PyDict_GetItem(out, m)
        if old is NULL:
            out[m] = _pmul(c, <dict>c2)
        else:
            acc = <dict>old
            _iaddmul(acc, c, <dict>c2)
            if not acc:
                del out[m]


def xaccum(dict out, dict c, dict img):
    _xaccum(out, c, img)


def xscale(dict F, dict c):
    if not c:
        return {}
    return {m: _pmul(<dict>v, c) for m, v in F.items()}


def xadd(dict F, dict G):
    cdef dict r = {m: (<dict>v).copy() for m, v in F.items()}
    cdef PyObject* old
    cdef dict acc
    for m, v in G.items():
        old = PyDict_GetItem(r, m)
        if old is NULL:
            r[m] = (<dict>v).copy()
        else:
            acc = <dict>old
            for k, x in (<dict>v).items():
                _acc(acc, k, x)
            if not acc:
                del r[m]
    return r


def xlincomb(pairs):
    cdef dict out = {}
    for c, F in pairs:
        if c:
            _xaccum(out, <dict>c, <dict>F)
    return out
