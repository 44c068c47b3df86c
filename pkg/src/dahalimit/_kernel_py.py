"""Pure-Python arithmetic kernel.

Coefficients live in Z[q^{+-1}, t^{+-1}] and are stored as ``dict`` objects
mapping a packed exponent key to a nonzero ``int``. The key for ``q^a t^b`` is
``(a << 32) + b``; packing is additive, so monomial products are key sums and
integer order on keys is lexicographic order on ``(a, b)``.

A raw x-polynomial is a ``dict`` mapping an exponent tuple to a coefficient
dict. Functions named ``i*`` mutate their first argument; every other function
returns fresh objects and never aliases its inputs.

The compiled module ``_kernel`` implements the same functions.
"""

SHIFT = 32
HALF = 1 << 31
MASK = (1 << 32) - 1


def pack(a, b):
    return (a << SHIFT) + b


def unpack(key):
    b = ((key + HALF) & MASK) - HALF
    return (key - b) >> SHIFT, b


def padd(f, g):
    if len(f) < len(g):
        f, g = g, f
    r = dict(f)
    for k, v in g.items():
        s = r.get(k, 0) + v
        if s:
            r[k] = s
        else:
            del r[k]
    return r


def psub(f, g):
    r = dict(f)
    for k, v in g.items():
        s = r.get(k, 0) - v
        if s:
            r[k] = s
        else:
            del r[k]
    return r


def pneg(f):
    return {k: -v for k, v in f.items()}


def pscale(f, c):
    if not c:
        return {}
    return {k: v * c for k, v in f.items()}


def pshift(f, key):
    return {k + key: v for k, v in f.items()}


def pmul(f, g):
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
            k = kf + kg
            s = r.get(k, 0) + vf * vg
            if s:
                r[k] = s
            else:
                del r[k]
    return r


def iadd(acc, f):
    for k, v in f.items():
        s = acc.get(k, 0) + v
        if s:
            acc[k] = s
        else:
            del acc[k]


def iaddmul(acc, f, g):
    for kg, vg in g.items():
        for kf, vf in f.items():
            k = kf + kg
            s = acc.get(k, 0) + vf * vg
            if s:
                acc[k] = s
            else:
                del acc[k]


def xaccum(out, c, img):
    """``out += c * img`` for a coefficient ``c`` and a raw x-polynomial ``img``."""
    for m, c2 in img.items():
        acc = out.get(m)
        if acc is None:
            out[m] = pmul(c, c2)
        else:
            iaddmul(acc, c, c2)
            if not acc:
                del out[m]


def xscale(F, c):
    """Multiply every coefficient of a raw x-polynomial by ``c``."""
    if not c:
        return {}
    return {m: pmul(v, c) for m, v in F.items()}


def xadd(F, G):
    r = {m: dict(v) for m, v in F.items()}
    for m, v in G.items():
        acc = r.get(m)
        if acc is None:
            r[m] = dict(v)
        else:
            iadd(acc, v)
            if not acc:
                del r[m]
    return r


def xlincomb(pairs):
    """Sum of ``c * F`` over ``(c, F)`` pairs of coefficient and raw x-polynomial."""
    out = {}
    for c, F in pairs:
        if c:
            xaccum(out, c, F)
    return out
