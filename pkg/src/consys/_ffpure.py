"""Pure-Python kernels for dense polynomials over GF(p).

Polynomials are lists of ints in ``[0, p)``, ascending degree, with no
trailing zeros; ``[]`` is the zero polynomial. Every function here has a
twin of the same signature in the compiled ``_ffcore`` module.
"""


def strip(a):
    n = len(a)
    while n and not a[n - 1]:
        n -= 1
    return a[:n]


def mul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return strip([c % p for c in out])


def divmod_(a, b, p):
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    db = len(b) - 1
    if len(a) - 1 < db:
        return [], list(a)
    inv = pow(b[-1], -1, p)
    r = list(a)
    q = [0] * (len(a) - db)
    for k in range(len(a) - 1 - db, -1, -1):
        c = r[k + db] * inv % p
        q[k] = c
        if c:
            for j in range(db + 1):
                r[k + j] = (r[k + j] - c * b[j]) % p
    return strip(q), strip(r[:db])


def rem(a, b, p):
    return divmod_(a, b, p)[1]


def mulmod(a, b, m, p):
    return rem(mul(a, b, p), m, p)


def powmod(a, n, m, p):
    """``a**n mod m`` by left-to-right square and multiply."""
    result = rem([1], m, p)
    base = rem(a, m, p)
    for bit in bin(n)[2:]:
        result = mulmod(result, result, m, p)
        if bit == "1":
            result = mulmod(result, base, m, p)
    return result


def gcd(a, b, p):
    """Monic gcd; ``gcd([], []) == []``."""
    a, b = strip(list(a)), strip(list(b))
    while b:
        a, b = b, rem(a, b, p)
    if not a:
        return []
    inv = pow(a[-1], -1, p)
    return [c * inv % p for c in a]
