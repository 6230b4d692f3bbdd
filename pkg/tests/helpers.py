"""Shared generators and brute-force oracles for the test suite."""
import itertools
import random

from hypothesis import strategies as st

from consys.systems import ConsistentSystem, DvrLabel, IdealFactorization, ResidueFieldDesc, behavior

PRIMES = [2, 3, 5, 7, 11, 13]


def random_row(rng, m, max_parts=None):
    """Random list of (e, f) with sum e*f = m."""
    row, left = [], m
    while left:
        if max_parts is not None and len(row) == max_parts - 1:
            divs = [d for d in range(1, left + 1) if left % d == 0]
            f = rng.choice(divs)
            row.append((left // f, f))
            break
        piece = rng.randint(1, left)
        divs = [d for d in range(1, piece + 1) if piece % d == 0]
        f = rng.choice(divs)
        row.append((piece // f, f))
        left -= piece
    return row


def system_over_primes(m, rows, primes=None):
    primes = primes or PRIMES[: len(rows)]
    entries = []
    for p, row in zip(primes, rows):
        base = ResidueFieldDesc.finite(p)
        entries.append((DvrLabel.prime(p), tuple(behavior(base, f, e) for e, f in row)))
    return ConsistentSystem(m, tuple(entries))


def random_system(rng, max_m=6, max_n=3, primes=None, min_n=1):
    m = rng.randint(1, max_m)
    pool = primes or PRIMES
    n = rng.randint(min_n, min(max_n, len(pool)))
    chosen = sorted(rng.sample(pool, n))
    return system_over_primes(m, [random_row(rng, m) for _ in chosen], chosen)


def random_ideal(rng, n_min=2, n_max=3, e_max=4):
    n = rng.randint(n_min, n_max)
    primes = sorted(rng.sample(PRIMES, n))
    return IdealFactorization.over_integers((p, rng.randint(1, e_max)) for p in primes)


@st.composite
def systems(draw, max_m=6, min_n=1, max_n=3, primes=PRIMES):
    seed = draw(st.integers(0, 2**32 - 1))
    return random_system(random.Random(seed), max_m=max_m, max_n=max_n, primes=primes, min_n=min_n)


@st.composite
def ideals(draw, n_min=2, n_max=3, e_max=4):
    seed = draw(st.integers(0, 2**32 - 1))
    return random_ideal(random.Random(seed), n_min, n_max, e_max)


def brute_irreducible(coeffs, p):
    """Irreducibility over GF(p) by trial division with every monic of lower degree."""
    n = len(coeffs) - 1
    if n < 1:
        return False
    for d in range(1, n // 2 + 1):
        for low in itertools.product(range(p), repeat=d):
            g = list(low) + [1]
            if poly_rem(coeffs, g, p) == []:
                return False
    return True


def poly_rem(a, b, p):
    r = [c % p for c in a]
    inv = pow(b[-1], -1, p)
    while len(r) >= len(b):
        c = r[-1] * inv % p
        shift = len(r) - len(b)
        for j, x in enumerate(b):
            r[shift + j] = (r[shift + j] - c * x) % p
        while r and r[-1] == 0:
            r.pop()
        if not r:
            break
    return r


def sympy_factor(coeffs, p):
    """Factorization mod p via sympy, as sorted ascending (g, k) pairs."""
    from sympy.polys.domains import ZZ
    from sympy.polys.galoistools import gf_factor

    _, facs = gf_factor([c % p for c in reversed(coeffs)], p, ZZ)
    return sorted((list(reversed([int(c) for c in g])), k) for g, k in facs)
