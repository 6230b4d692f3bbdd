import importlib.util
import itertools
import os
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from consys import _ffpure, ff
from helpers import brute_irreducible, sympy_factor

HAVE_CORE = importlib.util.find_spec("consys._ffcore") is not None
BACKENDS = ["python"] + (["cython"] if HAVE_CORE else [])


@pytest.fixture(params=BACKENDS)
def backend(request):
    previous = ff.use_backend(request.param)
    yield request.param
    ff.use_backend(previous)


def test_cython_kernel_is_built():
    # the package is meant to be installed with the compiled core
    assert HAVE_CORE
    assert ff.BACKEND == ("python" if os.environ.get("CONSYS_PURE") else "cython")


@pytest.mark.parametrize("p,f", [(2, 1), (2, 2), (2, 3), (2, 4), (3, 1), (3, 2), (3, 3), (5, 2), (7, 1)])
def test_count_irreducible_matches_enumeration(p, f):
    brute = sum(1 for low in itertools.product(range(p), repeat=f) if brute_irreducible(list(low) + [1], p))
    assert ff.count_irreducible(p, f) == brute
    assert len(list(ff.irreducibles(p, f))) == brute


def test_irreducibles_lexicographic():
    assert list(ff.irreducibles(2, 2)) == [[1, 1, 1]]
    assert next(ff.irreducibles(3, 2)) == [1, 0, 1]
    lows = [tuple(g[:-1]) for g in ff.irreducibles(3, 2)]
    assert lows == sorted(lows)


def test_rabin_against_brute_force(backend):
    for p, n in [(2, 5), (3, 4), (5, 3)]:
        for low in itertools.product(range(p), repeat=n):
            a = list(low) + [1]
            assert ff.is_irreducible(a, p) == brute_irreducible(a, p), a


def test_factor_against_sympy(backend):
    rng = random.Random(11)
    for _ in range(400):
        p = rng.choice([2, 3, 5, 7, 13])
        a = [rng.randrange(p) for _ in range(rng.randrange(1, 14))] + [1]
        if rng.random() < 0.5:
            b = [rng.randrange(p) for _ in range(rng.randrange(1, 4))] + [1]
            a = ff.mul(ff.mul(a, b, p), b, p)
        _, facs = ff.factor(a, p)
        assert sorted(facs) == sympy_factor(a, p)
        prod = [1]
        for g, k in facs:
            for _ in range(k):
                prod = ff.mul(prod, g, p)
        assert prod == a


def test_factor_examples():
    assert ff.factor([1, 0, 1], 2)[1] == [([1, 1], 2)]
    assert ff.factor([1, 0, 1], 5)[1] == [([2, 1], 1), ([3, 1], 1)]
    assert ff.factor([1, 1, 1], 2)[1] == [([1, 1, 1], 1)]


def test_sqf_handles_pth_powers():
    # X^4 + 1 = (X + 1)^4 over GF(2); X^6 + X^3 + 1 style inputs hit the p-th root branch
    assert ff.sqf_list([1, 0, 0, 0, 1], 2) == [([1, 1], 4)]
    a = ff.mul(ff.mul([1, 0, 0, 1], [1, 0, 0, 1], 3), [2, 1], 3)  # (X^3 + 1)^2 (X + 2) = (X+1)^6 (X+2)
    _, facs = ff.factor(a, 3)
    assert facs == [([1, 1], 6), ([2, 1], 1)]


def test_gcdex_identity():
    rng = random.Random(3)
    for _ in range(200):
        p = rng.choice([2, 3, 7])
        a = ff.strip([rng.randrange(p) for _ in range(rng.randrange(1, 8))])
        b = ff.strip([rng.randrange(p) for _ in range(rng.randrange(1, 8))])
        s, t, g = ff.gcdex(a, b, p)
        assert ff.add(ff.mul(s, a, p), ff.mul(t, b, p), p) == g
        assert g == ff.gcd(a, b, p)


poly = st.lists(st.integers(0, 10**6), max_size=12)


@pytest.mark.skipif("cython" not in BACKENDS, reason="compiled kernel not built")
@settings(max_examples=300, deadline=None)
@given(p=st.sampled_from([2, 3, 5, 7, 101, 65537, 2**31 - 1]), a=poly, b=poly, m=poly, n=st.integers(0, 500))
def test_backends_agree(p, a, b, m, n):
    from consys import _ffcore

    a, b, m = (_ffpure.strip([c % p for c in x]) for x in (a, b, m))
    assert _ffpure.mul(a, b, p) == _ffcore.mul(a, b, p)
    assert _ffpure.gcd(a, b, p) == _ffcore.gcd(a, b, p)
    if b:
        assert _ffpure.divmod_(a, b, p) == _ffcore.divmod_(a, b, p)
    if len(m) > 1:
        assert _ffpure.powmod(a, n, m, p) == _ffcore.powmod(a, n, m, p)


def test_large_prime_uses_pure_kernel():
    p = 2**61 - 1
    a = [p - 1, p - 2, 1]
    assert ff.mul(a, a, p) == _ffpure.mul(a, a, p)


def test_division_by_zero():
    with pytest.raises(ZeroDivisionError):
        ff.divmod_([1, 1], [], 5)
    with pytest.raises(ValueError):
        ff.factor([], 5)
