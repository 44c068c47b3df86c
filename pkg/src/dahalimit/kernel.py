"""Select the arithmetic kernel at import time.

The compiled extension is used when it was built; otherwise, or when the
environment variable ``DAHALIMIT_PURE_PYTHON`` is set to a non-empty value
other than ``0``, the pure-Python module is used. Both expose the same
functions (see ``_kernel_py``).
"""

import os

_force_py = os.environ.get("DAHALIMIT_PURE_PYTHON", "") not in ("", "0")

if _force_py:
    from . import _kernel_py as impl
else:
    try:
        from . import _kernel as impl  # type: ignore[attr-defined]
    except ImportError:
        from . import _kernel_py as impl

BACKEND = "compiled" if impl.__name__.endswith("._kernel") else "python"

pack = impl.pack
unpack = impl.unpack
padd = impl.padd
psub = impl.psub
pneg = impl.pneg
pscale = impl.pscale
pshift = impl.pshift
pmul = impl.pmul
iadd = impl.iadd
iaddmul = impl.iaddmul
xaccum = impl.xaccum
xscale = impl.xscale
xadd = impl.xadd
xlincomb = impl.xlincomb

ONE = {0: 1}


def ppow(f, e):
    r = ONE
    base = f
    while e:
        if e & 1:
            r = pmul(r, base)
        e >>= 1
        if e:
            base = pmul(base, base)
    return dict(r)


def mono(a, b, c=1):
    """The coefficient ``c * q^a * t^b``."""
    return {pack(a, b): c}
