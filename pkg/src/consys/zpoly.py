"""Monic integer polynomials and arithmetic modulo integers.

Coefficient lists are ascending (``[c0, c1, ..., cn]``) throughout.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from . import ff


@dataclass(frozen=True)
class IntPolynomial:
    coeffs: tuple[int, ...]

    def __post_init__(self):
        c = [int(x) for x in self.coeffs]
        while len(c) > 1 and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(c))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_monic(self) -> bool:
        return self.coeffs[-1] == 1

    def __str__(self):
        return format_poly(self.coeffs)

    def to_json(self) -> dict:
        return {"coeffs": list(self.coeffs)}

    @classmethod
    def from_json(cls, obj) -> IntPolynomial:
        return cls(tuple(obj["coeffs"]))

    @classmethod
    def parse(cls, text: str) -> IntPolynomial:
        return cls(tuple(parse_poly(text)))

    def __mul__(self, other: IntPolynomial) -> IntPolynomial:
        return IntPolynomial(tuple(zmul(self.coeffs, other.coeffs)))

    def __call__(self, x: int) -> int:
        y = 0
        for c in reversed(self.coeffs):
            y = y * x + c
        return y


def format_poly(coeffs) -> str:
    """``X^6 - 3*X^2 + 12`` style text, highest degree first."""
    terms = []
    for i in range(len(coeffs) - 1, -1, -1):
        c = coeffs[i]
        if c == 0:
            continue
        mag = abs(c)
        mono = "" if i == 0 else ("X" if i == 1 else f"X^{i}")
        if not mono:
            body = str(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{mag}*{mono}"
        sign = "-" if c < 0 else "+"
        terms.append((sign, body))
    if not terms:
        return "0"
    first_sign, first = terms[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, body in terms[1:]:
        out += f" {sign} {body}"
    return out


_TERM = re.compile(r"\s*([+-]?)\s*(\d*)\s*\*?\s*([xX](?:\s*(?:\^|\*\*)\s*(\d+))?)?")


def parse_poly(text: str) -> list[int]:
    """Inverse of :func:`format_poly`; accepts ``x``/``X``, ``^``/``**`` and optional ``*``."""
    s = text.strip()
    if not s:
        raise ValueError("empty polynomial")
    coeffs: dict[int, int] = {}
    pos = 0
    while pos < len(s):
        m = _TERM.match(s, pos)
        if not m or m.end() == pos or (not m.group(2) and not m.group(3)):
            raise ValueError(f"cannot parse polynomial {text!r} at position {pos}")
        sign = -1 if m.group(1) == "-" else 1
        if pos > 0 and not m.group(1):
            raise ValueError(f"missing operator in {text!r} at position {pos}")
        c = int(m.group(2)) if m.group(2) else 1
        if m.group(3):
            k = int(m.group(4)) if m.group(4) else 1
        else:
            k = 0
        coeffs[k] = coeffs.get(k, 0) + sign * c
        pos = m.end()
    n = max(coeffs)
    return [coeffs.get(i, 0) for i in range(n + 1)]


def zstrip(a):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def zmul(a, b, N=None):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    if N is not None:
        out = [c % N for c in out]
    return zstrip(out)


def zadd(a, b, N=None):
    n = max(len(a), len(b))
    out = [(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)]
    if N is not None:
        out = [c % N for c in out]
    return zstrip(out)


def zsub(a, b, N=None):
    return zadd(a, [-c for c in b], N)


def zmod(a, N):
    return zstrip([c % N for c in a])


def zdivmod_monic(a, b, N=None):
    """Divide by a monic ``b``; exact over Z, or modulo ``N`` when given."""
    if not b or b[-1] != 1:
        raise ValueError("divisor must be monic")
    db = len(b) - 1
    r = list(a)
    if len(r) - 1 < db:
        return [], zstrip(r)
    q = [0] * (len(r) - db)
    for k in range(len(r) - 1 - db, -1, -1):
        c = r[k + db]
        if N is not None:
            c %= N
        q[k] = c
        if c:
            for j in range(db + 1):
                r[k + j] -= c * b[j]
    r = r[:db]
    if N is not None:
        r = [x % N for x in r]
        q = [x % N for x in q]
    return zstrip(q), zstrip(r)


def symmetric(c: int, N: int) -> int:
    """Representative of ``c mod N`` in ``(-N/2, N/2]``."""
    c %= N
    return c - N if c > N // 2 else c


def crt(residues, moduli) -> tuple[int, int]:
    """Solve ``x = r_i mod n_i`` for pairwise coprime moduli; returns ``(x mod N, N)``."""
    x, n = 0, 1
    for r, m in zip(residues, moduli):
        # x + n*k = r (mod m)
        k = (r - x) * pow(n, -1, m) % m
        x += n * k
        n *= m
    return x % n, n


def valuation(c: int, p: int) -> int:
    if c == 0:
        raise ValueError("valuation of zero")
    v = 0
    while c % p == 0:
        c //= p
        v += 1
    return v


def is_squarefree_over_q(coeffs) -> bool:
    """True iff the monic integer polynomial has no repeated factor over Q (nonzero discriminant)."""
    f = zstrip(coeffs)
    n = len(f) - 1
    if n <= 1:
        return True
    # a squarefree reduction of full degree mod any prime certifies squarefreeness over Q
    q = 2
    checked = 0
    while checked < 25:
        if all(q % d for d in range(2, int(q**0.5) + 1)):
            checked += 1
            fr = ff.reduce(f, q)
            if len(fr) - 1 == n and ff.deg(ff.gcd(fr, ff.diff(fr, q), q)) == 0:
                return True
        q += 1
    return _rational_gcd_degree(f, [i * f[i] for i in range(1, len(f))]) == 0


def _rational_gcd_degree(a, b) -> int:
    a = [Fraction(x) for x in zstrip(a)]
    b = [Fraction(x) for x in zstrip(b)]
    while b:
        r = list(a)
        while len(r) >= len(b) and r:
            c = r[-1] / b[-1]
            shift = len(r) - len(b)
            for j in range(len(b)):
                r[shift + j] -= c * b[j]
            while r and r[-1] == 0:
                r.pop()
        a, b = b, r
    return len(a) - 1
