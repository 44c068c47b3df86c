import importlib

import pytest
from hypothesis import given
from hypothesis import strategies as st

from dahalimit import _kernel_py as pure
from dahalimit import kernel

try:
    compiled = importlib.import_module("dahalimit._kernel")
except ImportError:  # extension not built
    compiled = None

needs_compiled = pytest.mark.skipif(compiled is None, reason="compiled kernel not built")

keys = st.builds(pure.pack, st.integers(-4, 6), st.integers(-4, 6))
laurent = st.dictionaries(keys, st.integers(-5, 5).filter(bool), max_size=6)


def test_backend_is_reported():
    assert kernel.BACKEND in ("compiled", "python")


@given(st.integers(-1000, 1000), st.integers(-1000, 1000))
def test_pack_round_trip(a, b):
    assert pure.unpack(pure.pack(a, b)) == (a, b)


@given(laurent, laurent, laurent)
def test_pure_ring_laws(f, g, h):
    assert pure.pmul(f, pure.padd(g, h)) == pure.padd(pure.pmul(f, g), pure.pmul(f, h))
    assert pure.pmul(f, g) == pure.pmul(g, f)
    assert pure.psub(f, f) == {}


@given(laurent, laurent, laurent)
def test_iaddmul_matches_definition(acc, f, g):
    expected = pure.padd(acc, pure.pmul(f, g))
    acc = dict(acc)
    pure.iaddmul(acc, f, g)
    assert acc == expected


@needs_compiled
@given(laurent, laurent, st.integers(-3, 3))
def test_compiled_matches_pure(f, g, c):
    for name in ("padd", "psub", "pmul"):
        assert getattr(compiled, name)(f, g) == getattr(pure, name)(f, g), name
    assert compiled.pneg(f) == pure.pneg(f)
    assert compiled.pscale(f, c) == pure.pscale(f, c)
    key = pure.pack(1, -2)
    assert compiled.pshift(f, key) == pure.pshift(f, key)
    a1, a2 = dict(f), dict(f)
    compiled.iaddmul(a1, f, g)
    pure.iaddmul(a2, f, g)
    assert a1 == a2


@needs_compiled
@given(st.dictionaries(st.tuples(st.integers(0, 2), st.integers(0, 2)), laurent, max_size=4),
       laurent)
def test_compiled_matches_pure_on_vectors(F, c):
    F = {m: v for m, v in F.items() if v}
    assert compiled.xscale(F, c) == pure.xscale(F, c)
    assert compiled.xadd(F, F) == pure.xadd(F, F)
    o1, o2 = {}, {}
    compiled.xaccum(o1, c, F)
    pure.xaccum(o2, c, F)
    assert o1 == o2
