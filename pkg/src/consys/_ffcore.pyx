# cython: language_level=3
"""Compiled kernels for dense polynomials over GF(p), p < 2**31.

Same list-of-ints interface as ``consys._ffpure``; coefficients are copied
into C arrays of 64-bit integers for the inner loops.
"""
from libc.stdlib cimport malloc, free

ctypedef long long i64


cdef i64 _inv(i64 a, i64 p):
    cdef i64 t = 0, newt = 1, r = p, newr = a % p, q, tmp
    if newr < 0:
        newr += p
    while newr:
        q = r // newr
        tmp = t - q * newt
        t = newt
        newt = tmp
        tmp = r - q * newr
        r = newr
        newr = tmp
    if r != 1:
        raise ZeroDivisionError("not invertible mod p")
    if t < 0:
        t += p
    return t


cdef int _deg(i64* a, int n):
    while n > 0 and a[n - 1] == 0:
        n -= 1
    return n - 1


cdef list _tolist(i64* a, int n):
    cdef int d = _deg(a, n)
    return [a[i] for i in range(d + 1)]


cdef i64* _fromlist(list a, int n) except NULL:
    cdef i64* out = <i64*> malloc(max(n, 1) * sizeof(i64))
    if out == NULL:
        raise MemoryError()
    cdef int i
    for i in range(n):
        out[i] = a[i] if i < len(a) else 0
    return out


cdef int _mul_into(i64* a, int na, i64* b, int nb, i64* out, i64 p):
    # out must hold na + nb - 1 entries
    cdef int i, j
    cdef i64 x
    for i in range(na + nb - 1):
        out[i] = 0
    for i in range(na):
        x = a[i]
        if x:
            for j in range(nb):
                out[i + j] = (out[i + j] + x * b[j]) % p
    return 0


cdef int _rem_inplace(i64* r, int nr, i64* b, int nb, i64 p, i64 inv, i64* q):
    # reduces r (length nr) modulo monic-scaled b; q receives quotient if not NULL
    cdef int db = nb - 1, k, j
    cdef i64 c
    for k in range(nr - 1 - db, -1, -1):
        c = r[k + db] * inv % p
        if q != NULL:
            q[k] = c
        if c:
            for j in range(db + 1):
                r[k + j] = (r[k + j] - c * b[j]) % p
                if r[k + j] < 0:
                    r[k + j] += p
    return 0


def strip(a):
    n = len(a)
    while n and not a[n - 1]:
        n -= 1
    return a[:n]


def mul(list a, list b, i64 p):
    if not a or not b:
        return []
    cdef int na = len(a), nb = len(b)
    cdef i64* ca = _fromlist(a, na)
    cdef i64* cb = _fromlist(b, nb)
    cdef i64* out = <i64*> malloc((na + nb - 1) * sizeof(i64))
    try:
        _mul_into(ca, na, cb, nb, out, p)
        return _tolist(out, na + nb - 1)
    finally:
        free(ca)
        free(cb)
        free(out)


def divmod_(list a, list b, i64 p):
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    cdef int na = len(a), nb = len(b)
    if na < nb:
        return [], list(a)
    cdef i64 inv = _inv(b[nb - 1], p)
    cdef i64* r = _fromlist(a, na)
    cdef i64* cb = _fromlist(b, nb)
    cdef i64* q = _fromlist([], na - nb + 1)
    try:
        _rem_inplace(r, na, cb, nb, p, inv, q)
        return _tolist(q, na - nb + 1), _tolist(r, nb - 1)
    finally:
        free(r)
        free(cb)
        free(q)


def rem(list a, list b, i64 p):
    return divmod_(a, b, p)[1]


def mulmod(list a, list b, list m, i64 p):
    return rem(mul(a, b, p), m, p)


def powmod(list a, n, list m, i64 p):
    """``a**n mod m`` with all intermediates kept in C buffers."""
    if not m:
        raise ZeroDivisionError("polynomial division by zero")
    cdef int nm = len(m), dm = nm - 1, i, nb
    cdef i64 inv = _inv(m[nm - 1], p)
    cdef i64* cm = _fromlist(m, nm)
    cdef i64* res = _fromlist([], max(dm, 1))
    cdef i64* base = _fromlist([], max(dm, 1))
    cdef i64* tmp = _fromlist([], max(2 * dm - 1, 1))
    cdef i64* ca
    try:
        if dm == 0:
            return []
        ca = _fromlist(a, max(len(a), 1))
        if len(a) > dm:
            _rem_inplace(ca, len(a), cm, nm, p, inv, NULL)
        nb = min(len(a), dm)
        for i in range(dm):
            base[i] = ca[i] % p if i < nb else 0
            if base[i] < 0:
                base[i] += p
        free(ca)
        res[0] = 1
        for bit in bin(n)[2:]:
            _mul_into(res, dm, res, dm, tmp, p)
            _rem_inplace(tmp, 2 * dm - 1, cm, nm, p, inv, NULL)
            for i in range(dm):
                res[i] = tmp[i]
            if bit == "1":
                _mul_into(res, dm, base, dm, tmp, p)
                _rem_inplace(tmp, 2 * dm - 1, cm, nm, p, inv, NULL)
                for i in range(dm):
                    res[i] = tmp[i]
        return _tolist(res, dm)
    finally:
        free(cm)
        free(res)
        free(base)
        free(tmp)


def gcd(list a, list b, i64 p):
    """Monic gcd; ``gcd([], []) == []``."""
    a, b = strip(list(a)), strip(list(b))
    while b:
        a, b = b, rem(a, b, p)
    if not a:
        return []
    cdef i64 inv = _inv(a[len(a) - 1], p)
    return [c * inv % p for c in a]
