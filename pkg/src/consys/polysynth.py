"""Monic integer polynomials with prescribed local splitting.

Each requested prime ``P`` with ramification ``e`` and residue degree ``f``
becomes a local block ``phi**e + p**h`` where ``phi`` lifts a monic
irreducible of degree ``f`` mod ``p`` and ``gcd(h, e) = 1``. The blocks at
``p`` are multiplied and glued by CRT with an Eisenstein condition at an
auxiliary prime, which makes the result irreducible over Q.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Sequence

from . import ff
from .localanalyzer import Verdict, verify_realization
from .systems import FINITE, ConsistentSystem, is_prime, require_consistent
from .zpoly import IntPolynomial, crt, symmetric, zmod, zmul


class RealizationError(RuntimeError):
    """No verified polynomial was produced for the requested splitting."""


def ff_irreducible(p: int, f: int, index: int = 0) -> IntPolynomial:
    """The ``index``-th monic irreducible of degree ``f`` over GF(p), lexicographic in ``(c0, ..., c_{f-1})``."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if f < 1:
        raise ValueError("degree must be positive")
    count = ff.count_irreducible(p, f)
    if not 0 <= index < count:
        raise ValueError(f"index {index} out of range: there are {count} monic irreducibles of degree {f} mod {p}")
    g = next(itertools.islice(ff.irreducibles(p, f), index, None))
    return IntPolynomial(tuple(g))


def _shift(phi: Sequence[int], s: int, p: int) -> list[int]:
    """Canonical lift of ``phi(X - s) mod p``, coefficients in ``[0, p)``."""
    out: list[int] = []
    for c in reversed(phi):
        out = ff.add(ff.mul(out, [(-s) % p, 1], p), [c % p], p)
    return out


def _pow(a, k):
    out = [1]
    for _ in range(k):
        out = zmul(out, a)
    return out


def block_from_phi(phi: Sequence[int], e: int, p: int, slope: int | None = None) -> IntPolynomial:
    """``phi**e + p**slope``; with ``slope=None`` this is ``phi`` for ``e = 1`` and ``phi**e + p`` otherwise."""
    if slope is None:
        if e == 1:
            return IntPolynomial(tuple(phi))
        slope = 1
    if slope < 1 or math.gcd(slope, e) != 1:
        raise ValueError(f"slope exponent {slope} must be positive and coprime to e = {e}")
    g = _pow(list(phi), e)
    g[0] += p**slope
    return IntPolynomial(tuple(g))


def local_block(p: int, e: int, f: int, shift: int = 0, index: int = 0, slope: int | None = None) -> IntPolynomial:
    """Local block for one prime with ramification ``e`` and residue degree ``f``.

    ``phi`` is ``ff_irreducible(p, f, index)`` composed with ``X - shift``.
    """
    if e < 1:
        raise ValueError("e must be positive")
    phi = _shift(ff_irreducible(p, f, index).coeffs, shift, p)
    return block_from_phi(phi, e, p, slope)


def phi_classes(p: int, f: int) -> Iterator[tuple[int, int, list[int]]]:
    """Distinct irreducibles of degree ``f`` mod ``p`` as ``(index, shift, phi)``.

    Shifts of the first irreducible come first, then shifts of the next one,
    skipping classes already produced.
    """
    seen = set()
    for index, base in enumerate(ff.irreducibles(p, f)):
        for s in range(p):
            phi = _shift(base, s, p)
            key = tuple(phi)
            if key not in seen:
                seen.add(key)
                yield index, s, phi


@dataclass(frozen=True)
class LocalTarget:
    p: int
    blocks: tuple[tuple[int, int], ...]

    def __post_init__(self):
        object.__setattr__(self, "blocks", tuple((int(e), int(f)) for e, f in self.blocks))
        if not is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")
        if not self.blocks or any(e < 1 or f < 1 for e, f in self.blocks):
            raise ValueError("blocks need positive (e, f)")

    @property
    def degree(self) -> int:
        return sum(e * f for e, f in self.blocks)


@dataclass(frozen=True)
class BlockSpec:
    p: int
    e: int
    f: int
    index: int
    shift: int
    slope: int | None
    polynomial: IntPolynomial

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "e": self.e,
            "f": self.f,
            "index": self.index,
            "shift": self.shift,
            "slope": self.slope,
            "block": str(self.polynomial),
        }


@dataclass(frozen=True)
class SynthesisResult:
    polynomial: IntPolynomial
    modulus_ledger: tuple[tuple[int, int], ...]
    aux_prime: int
    local_blocks: tuple[BlockSpec, ...] = field(default_factory=tuple)

    @property
    def degree(self) -> int:
        return self.polynomial.degree

    def to_json(self) -> dict:
        return {
            "polynomial": str(self.polynomial),
            "coeffs": list(self.polynomial.coeffs),
            "modulus_ledger": [{"p": p, "h": h} for p, h in self.modulus_ledger],
            "aux_prime": self.aux_prime,
            "local_blocks": [b.to_json() for b in self.local_blocks],
        }


def _plan(target: LocalTarget) -> list[BlockSpec]:
    """Assign a phi-class and slope to each block of one prime."""
    p = target.p
    streams: dict[int, Iterator] = {}
    fresh: dict[int, list] = {}
    assigned = []  # (e, f, class)
    for e, f in target.blocks:
        if f not in streams:
            streams[f] = phi_classes(p, f)
            fresh[f] = []
        cls = next(streams[f], None)
        if cls is None:
            # classes of this degree are used up: share them round robin
            used = fresh[f]
            cls = used[sum(1 for _, ff_, _c in assigned if ff_ == f) % len(used)]
        else:
            fresh[f].append(cls)
        assigned.append((e, f, cls))
    sharing: dict[tuple, list[int]] = {}
    for k, (_, _, cls) in enumerate(assigned):
        sharing.setdefault(tuple(cls[2]), []).append(k)
    specs: list[BlockSpec | None] = [None] * len(assigned)
    for members in sharing.values():
        used_slopes: set[Fraction] = set()
        for k in members:
            e, f, (index, s, phi) = assigned[k]
            if len(members) == 1:
                slope = None
            else:
                slope = 1
                while math.gcd(slope, e) != 1 or Fraction(slope, e) in used_slopes:
                    slope += 1
                used_slopes.add(Fraction(slope, e))
            specs[k] = BlockSpec(p, e, f, index, s, slope, block_from_phi(phi, e, p, slope))
    return specs  # type: ignore[return-value]


def _class_height(specs: Sequence[BlockSpec]) -> int:
    """Largest valuation of a phi-adic constant term among shared classes."""
    by_class: dict[tuple, int] = {}
    for b in specs:
        if b.slope is not None:
            key = (b.index, b.shift, b.f)
            by_class[key] = by_class.get(key, 0) + b.slope
    return max(by_class.values(), default=1)


def default_h(targets: Sequence[LocalTarget]) -> int:
    m = targets[0].degree
    need = max(_class_height(_plan(t)) for t in targets) + 2
    return max(2 * m + 2, need)


def _aux_prime(primes, hint):
    if hint is not None:
        if not is_prime(hint) or hint in primes:
            raise ValueError(f"auxiliary prime {hint} must be a prime outside {sorted(primes)}")
        return hint
    q = 2
    while q in primes or not is_prime(q):
        q += 1
    return q


def synthesize(targets: Sequence[LocalTarget], h: int | None = None, q_hint: int | None = None) -> SynthesisResult:
    """Monic ``F`` of degree ``m`` with ``F = prod blocks mod p**h`` for each target and Eisenstein at an auxiliary prime."""
    targets = list(targets)
    if not targets:
        raise ValueError("need at least one local target")
    primes = [t.p for t in targets]
    if len(set(primes)) != len(primes):
        raise ValueError("local targets must be at distinct primes")
    m = targets[0].degree
    if any(t.degree != m for t in targets):
        raise ValueError(f"every target needs sum e*f = m; got {[t.degree for t in targets]}")
    if h is None:
        h = default_h(targets)
    q = _aux_prime(set(primes), q_hint)
    residues, moduli, blocks = [], [], []
    for t in sorted(targets, key=lambda x: x.p):
        specs = _plan(t)
        N = t.p**h
        prod = [1]
        for b in specs:
            prod = zmul(prod, list(b.polynomial.coeffs), N)
        if len(prod) != m + 1 or prod[-1] != 1:
            raise AssertionError("local product lost its degree")
        residues.append(prod)
        moduli.append(N)
        blocks.extend(specs)
    residues.append([q] + [0] * (m - 1) + [1])
    moduli.append(q * q)
    coeffs = []
    for i in range(m):
        x, M = crt([r[i] for r in residues], moduli)
        coeffs.append(symmetric(x, M))
    coeffs.append(1)
    ledger = tuple(sorted((p, h) for p in primes)) + ((q, 2),)
    return SynthesisResult(IntPolynomial(tuple(coeffs)), ledger, q, tuple(blocks))


def targets_from_system(s: ConsistentSystem) -> list[LocalTarget]:
    """Local targets for a system whose DVRs are labelled by rational primes."""
    require_consistent(s)
    out = []
    for d, rows in s.entries:
        try:
            p = int(d.id)
        except (TypeError, ValueError):
            raise ValueError(f"DVR label {d.id!r} is not a rational prime") from None
        if not is_prime(p):
            raise ValueError(f"DVR label {p} is not prime")
        r = d.residue_field
        if r.kind != FINITE or r.p != p or r.d != 1:
            raise ValueError(f"residue field at {p} must be GF({p})")
        out.append(LocalTarget(p, tuple((b.e, b.f) for b in rows)))
    return out


def realize_system(
    s: ConsistentSystem,
    h: int | None = None,
    q_hint: int | None = None,
    max_retries: int = 8,
    max_degree: int | None = None,
) -> SynthesisResult:
    """Synthesize and certify a polynomial realizing ``s`` over Z.

    The precision doubles on an inconclusive certification; a mismatch is an
    error since the construction is supposed to be exact.
    """
    targets = targets_from_system(s)
    if max_degree is not None and s.m > max_degree:
        raise ValueError(f"degree {s.m} exceeds the limit {max_degree}")
    if h is None:
        h = default_h(targets)
    last = None
    for _ in range(max_retries + 1):
        res = synthesize(targets, h, q_hint)
        ver = verify_realization(res.polynomial, s)
        if ver.verdict is Verdict.MATCH:
            return res
        if ver.verdict is Verdict.MISMATCH:
            raise RealizationError("; ".join(ver.details))
        last = ver
        h *= 2
    raise RealizationError(f"certification stayed inconclusive: {'; '.join(last.details)}")
