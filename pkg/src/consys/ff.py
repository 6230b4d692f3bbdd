"""Polynomials over GF(p): irreducibility, enumeration and factorization.

The arithmetic kernels come from the compiled ``_ffcore`` extension when it
was built, otherwise from ``_ffpure``. Set ``CONSYS_PURE=1`` to force the
pure-Python kernels.
"""
import itertools
import os

from . import _ffpure

if os.environ.get("CONSYS_PURE"):
    _kernel = _ffpure
else:
    try:
        from . import _ffcore as _kernel
    except ImportError:  # pragma: no cover - depends on the build
        _kernel = _ffpure

BACKEND = "cython" if _kernel is not _ffpure else "python"

strip = _ffpure.strip


def use_backend(name):
    """Switch kernels at runtime (``"cython"`` or ``"python"``); returns the previous name."""
    global _kernel, BACKEND
    previous = BACKEND
    if name == "python":
        _kernel = _ffpure
    elif name == "cython":
        from . import _ffcore

        _kernel = _ffcore
    else:
        raise ValueError(f"unknown backend {name!r}")
    BACKEND = name
    return previous


# the compiled kernels use 64-bit products of residues
_KERNEL_LIMIT = 2**31


def _k(p):
    return _kernel if p < _KERNEL_LIMIT else _ffpure


def mul(a, b, p):
    return _k(p).mul(list(a), list(b), p)


def divmod_(a, b, p):
    return _k(p).divmod_(list(a), list(b), p)


def rem(a, b, p):
    return _k(p).rem(list(a), list(b), p)


def quo(a, b, p):
    return _k(p).divmod_(list(a), list(b), p)[0]


def powmod(a, n, m, p):
    return _k(p).powmod(list(a), n, list(m), p)


def gcd(a, b, p):
    return _k(p).gcd(list(a), list(b), p)


def gcdex(a, b, p):
    """``(s, t, g)`` with ``s*a + t*b = g`` and ``g`` the monic gcd."""
    r0, r1 = strip(list(a)), strip(list(b))
    s0, s1, t0, t1 = [1], [], [], [1]
    while r1:
        q, r = divmod_(r0, r1, p)
        r0, r1 = r1, r
        s0, s1 = s1, sub(s0, mul(q, s1, p), p)
        t0, t1 = t1, sub(t0, mul(q, t1, p), p)
    if not r0:
        return s0, t0, r0
    inv = pow(r0[-1], -1, p)
    scale = lambda v: [c * inv % p for c in v]  # noqa: E731
    return scale(s0), scale(t0), scale(r0)


def reduce(coeffs, p):
    """Image in GF(p)[X] of an integer coefficient list."""
    return strip([c % p for c in coeffs])


def add(a, b, p):
    n = max(len(a), len(b))
    return strip([((a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0)) % p for i in range(n)])


def sub(a, b, p):
    n = max(len(a), len(b))
    return strip([((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % p for i in range(n)])


def monic(a, p):
    if not a:
        return []
    inv = pow(a[-1], -1, p)
    return [c * inv % p for c in a]


def diff(a, p):
    return strip([i * a[i] % p for i in range(1, len(a))])


def deg(a):
    return len(a) - 1


def _prime_factors(n):
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def _mobius(n):
    ps = _prime_factors(n)
    m = 1
    for q in ps:
        m *= q
    return 0 if m != n else (-1) ** len(ps)


def count_irreducible(p, f):
    """Number of monic irreducible polynomials of degree ``f`` over GF(p)."""
    total = sum(_mobius(d) * p ** (f // d) for d in range(1, f + 1) if f % d == 0)
    return total // f


def is_irreducible(a, p):
    """Rabin's test on a monic (or any nonzero) polynomial over GF(p)."""
    n = deg(a)
    if n < 1:
        return False
    if n == 1:
        return True
    a = monic(a, p)
    x = [0, 1]
    if powmod(x, p**n, a, p) != rem(x, a, p):
        return False
    for r in _prime_factors(n):
        h = sub(powmod(x, p ** (n // r), a, p), x, p)
        if deg(gcd(h, a, p)) > 0:
            return False
    return True


def irreducibles(p, f):
    """Monic irreducibles of degree ``f`` in lexicographic order of ``(c0, c1, ..., c_{f-1})``."""
    if f == 1:
        yield from ([c, 1] for c in range(p))
        return
    # a zero constant term means X divides the candidate
    for low in itertools.product(range(1, p), *[range(p)] * (f - 1)):
        cand = list(low) + [1]
        if is_irreducible(cand, p):
            yield cand


def _pth_root(a, p):
    # a is a polynomial in X^p; over GF(p) the Frobenius is the identity on coefficients
    return strip([a[i] for i in range(0, len(a), p)])


def sqf_list(a, p):
    """Squarefree decomposition of a monic ``a``: list of ``(g, k)`` with ``a = prod g**k``."""
    a = monic(a, p)
    out = []
    if deg(a) < 1:
        return out
    da = diff(a, p)
    if not da:
        return [(g, k * p) for g, k in sqf_list(_pth_root(a, p), p)]
    c = gcd(a, da, p)
    w = quo(a, c, p)
    i = 1
    while deg(w) > 0:
        y = gcd(w, c, p)
        z = quo(w, y, p)
        if deg(z) > 0:
            out.append((z, i))
        i += 1
        w = y
        c = quo(c, y, p)
    if deg(c) > 0:
        out.extend((g, k * p) for g, k in sqf_list(_pth_root(c, p), p))
    return out


def ddf(a, p):
    """Distinct-degree factorization of a monic squarefree ``a``: list of ``(g, d)``."""
    out = []
    x = [0, 1]
    h = x
    f = list(a)
    d = 0
    while deg(f) >= 2 * (d + 1):
        d += 1
        h = powmod(h, p, f, p)
        g = gcd(sub(h, x, p), f, p)
        if deg(g) > 0:
            out.append((g, d))
            f = quo(f, g, p)
            h = rem(h, f, p)
    if deg(f) > 0:
        out.append((f, deg(f)))
    return out


def _candidates(n, p):
    # every nonconstant polynomial of degree < n, in a fixed order
    k = p
    while True:
        digits, v = [], k
        while v:
            v, r = divmod(v, p)
            digits.append(r)
        if len(digits) > n:
            return
        yield strip(digits)
        k += 1


def _split_once(f, d, p, cand):
    if p == 2:
        t, acc = cand, cand
        for _ in range(d - 1):
            t = powmod(t, 2, f, p)
            acc = add(acc, t, p)
        return gcd(acc, f, p)
    e = (p**d - 1) // 2
    return gcd(sub(powmod(cand, e, f, p), [1], p), f, p)


def edf(f, d, p):
    """Equal-degree splitting of a monic squarefree ``f`` whose factors all have degree ``d``."""
    if deg(f) == d:
        return [f]
    todo, done = [f], []
    while todo:
        g = todo.pop()
        if deg(g) == d:
            done.append(g)
            continue
        for cand in _candidates(deg(g), p):
            h = _split_once(g, d, p, rem(cand, g, p))
            if 0 < deg(h) < deg(g):
                todo.extend([h, quo(g, h, p)])
                break
        else:  # pragma: no cover - the candidate stream spans all residues
            raise RuntimeError("equal-degree splitting exhausted its candidates")
    return done


def factor(a, p):
    """Complete factorization of a nonzero ``a`` over GF(p).

    Returns ``(lc, [(g, k), ...])`` with monic irreducible ``g`` sorted by
    ``(deg, coefficients)``.
    """
    a = strip(list(a))
    if not a:
        raise ValueError("cannot factor the zero polynomial")
    lc = a[-1]
    facs = []
    for g, k in sqf_list(a, p):
        for part, d in ddf(g, p):
            facs.extend((h, k) for h in edf(part, d, p))
    merged = {}
    for g, k in facs:
        merged[tuple(g)] = merged.get(tuple(g), 0) + k
    ordered = sorted(merged.items(), key=lambda item: (len(item[0]), item[0]))
    return lc, [(list(g), k) for g, k in ordered]
