"""Certified local splitting of a monic integer polynomial at a prime.

For ``F`` squarefree over Q and a prime ``p`` the analyzer factors ``F``
mod ``p``, lifts the coprime parts to ``Z/p^h`` and reads each part through
its phi-adic Newton polygon. A class whose polygon has only sides of lattice
length one is certified; anything finer is reported as ``Unresolved`` with a
precision hint instead of being guessed.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Mapping, Sequence

from . import ff
from .systems import ConsistentSystem, require_consistent
from .zpoly import (
    IntPolynomial,
    is_squarefree_over_q,
    valuation,
    zdivmod_monic,
    zmod,
    zmul,
    zstrip,
    zsub,
)

CERTIFIED = "Certified"
UNRESOLVED = "Unresolved"

KUMMER_DEDEKIND = "KummerDedekind"
EISENSTEIN = "Eisenstein"
NEWTON = "NewtonPolygonRegular"


class NotSquarefreeError(ValueError):
    """The polynomial has a repeated factor over Q."""


@dataclass(frozen=True)
class LocalEntry:
    e: int
    f: int
    certificate: str

    def to_json(self) -> dict:
        return {"e": self.e, "f": self.f, "cert": self.certificate}


@dataclass(frozen=True)
class SplittingReport:
    p: int
    entries: tuple[LocalEntry, ...]
    precision_used: int
    status: str
    hint: str | None = None

    @property
    def certified(self) -> bool:
        return self.status == CERTIFIED

    def pairs(self) -> list[tuple[int, int]]:
        """Sorted ``(e, f)`` multiset."""
        return sorted((x.e, x.f) for x in self.entries)

    def to_json(self) -> dict:
        out = {
            "p": self.p,
            "h": self.precision_used,
            "status": self.status,
            "entries": [x.to_json() for x in self.entries],
        }
        if self.hint is not None:
            out["hint"] = self.hint
        return out


def _coeffs(F) -> list[int]:
    c = list(F.coeffs) if isinstance(F, IntPolynomial) else zstrip(list(F))
    if not c or c[-1] != 1:
        raise ValueError("polynomial must be monic")
    return c


def factor_mod_p(F, p: int) -> list[tuple[list[int], int]]:
    """Monic irreducible factors of ``F mod p`` with multiplicities."""
    return ff.factor(ff.reduce(_coeffs(F), p), p)[1]


def kummer_dedekind(F, p: int) -> list[tuple[int, int]] | None:
    """``(1, f)`` pairs when ``F mod p`` is squarefree, else ``None``."""
    facs = factor_mod_p(F, p)
    if any(k > 1 for _, k in facs):
        return None
    return sorted((1, ff.deg(g)) for g, _ in facs)


def is_eisenstein(F, p: int) -> bool:
    c = _coeffs(F)
    return len(c) > 1 and all(x % p == 0 for x in c[:-1]) and c[0] % (p * p) != 0


def _hensel_step(f, g, h, s, t, m):
    """One quadratic step: lift ``f = g*h mod m`` to mod ``m**2`` (``h`` monic)."""
    M = m * m
    e = zsub(f, zmul(g, h), M)
    q, r = zdivmod_monic(zmul(s, e, M), h, M)
    g2 = zmod(_zsum(g, zmul(t, e), zmul(q, g)), M)
    h2 = zmod(_zsum(h, r), M)
    b = zsub(_zsum(zmul(s, g2), zmul(t, h2)), [1], M)
    c, d = zdivmod_monic(zmul(s, b, M), h2, M)
    s2 = zsub(s, d, M)
    t2 = zsub(t, _zsum(zmul(t, b), zmul(c, g2)), M)
    return g2, h2, s2, t2


def _zsum(*polys):
    n = max((len(a) for a in polys), default=0)
    return zstrip([sum(a[i] for a in polys if i < len(a)) for i in range(n)])


def _lift_pair(F, A, B, p, h):
    """Monic ``(A*, B*)`` with ``F = A* B* mod p^h``, ``A* = A``, ``B* = B`` mod ``p``."""
    s, t, one = ff.gcdex(B, A, p)
    if one != [1]:
        raise ValueError("factors are not coprime mod p")
    # s*B + t*A = 1; in _hensel_step g = B (cofactor), h = A (monic)
    g, hh, m = list(B), list(A), p
    while m < p**h:
        g, hh, s, t = _hensel_step(F, g, hh, s, t, m)
        m *= m
    N = p**h
    return zmod(hh, N), zmod(g, N)


def _lift_all(F, parts, p, h):
    if not parts:
        return []
    if len(parts) == 1:
        return [zmod(F, p**h)]
    mid = len(parts) // 2
    A = [1]
    for g in parts[:mid]:
        A = ff.mul(A, g, p)
    B = [1]
    for g in parts[mid:]:
        B = ff.mul(B, g, p)
    Al, Bl = _lift_pair(F, A, B, p, h)
    return _lift_all(Al, parts[:mid], p, h) + _lift_all(Bl, parts[mid:], p, h)


def hensel_split(F, p: int, h: int, facs=None) -> list[tuple[list[int], list[int], int]]:
    """Lift the coprime classes of ``F mod p`` to ``Z/p^h``.

    Returns ``(H_k, phi_k, m_k)`` with ``H_k`` monic, ``H_k = phi_k**m_k mod p``
    and ``F = prod H_k mod p^h``.
    """
    c = _coeffs(F)
    if facs is None:
        facs = factor_mod_p(c, p)
    parts = [_power(g, k, p) for g, k in facs]
    lifted = _lift_all(c, parts, p, h)
    return [(H, list(g), k) for H, (g, k) in zip(lifted, facs)]


def _power(g, k, p):
    out = [1]
    for _ in range(k):
        out = ff.mul(out, g, p)
    return out


def phi_expansion(H, phi, N) -> list[list[int]]:
    """Coefficients ``a_i`` with ``H = sum a_i phi**i mod N``, ``deg a_i < deg phi``."""
    out = []
    cur = zmod(H, N)
    while cur:
        cur, r = zdivmod_monic(cur, phi, N)
        out.append(r)
    return out


@dataclass(frozen=True)
class _Side:
    x0: int
    x1: int
    y0: int
    y1: int

    @property
    def length(self):
        return self.x1 - self.x0

    @property
    def degree(self):
        return math.gcd(self.length, self.y0 - self.y1)

    @property
    def ramification(self):
        return self.length // self.degree


def lower_hull(points: Sequence[tuple[int, int]]) -> list[tuple[int, int]]:
    """Vertices of the lower convex hull of points sorted by abscissa."""
    hull: list[tuple[int, int]] = []
    for x, y in sorted(points):
        while len(hull) >= 2:
            (x1, y1), (x2, y2) = hull[-2], hull[-1]
            # drop the middle vertex when it lies on or above the chord
            if (y2 - y1) * (x - x1) >= (y - y1) * (x2 - x1):
                hull.pop()
            else:
                break
        hull.append((x, y))
    return hull


def _hull_value(hull, x) -> Fraction:
    for (x0, y0), (x1, y1) in zip(hull, hull[1:]):
        if x0 <= x <= x1:
            return Fraction(y0) + Fraction(y1 - y0, x1 - x0) * (x - x0)
    raise ValueError("abscissa outside the polygon")


def _analyze_class(H, phi, mk, p, h):
    """Entries for one class, or ``None`` with a reason when not certified."""
    f = ff.deg(phi)
    if mk == 1:
        return [LocalEntry(1, f, KUMMER_DEDEKIND)], None
    N = p**h
    exp = phi_expansion(H, phi, N)
    if len(exp) != mk + 1:
        raise AssertionError("phi-expansion length does not match the multiplicity")
    known, unknown = [], []
    for i, a in enumerate(exp):
        if a:
            known.append((i, min(valuation(c, p) for c in a if c)))
        else:
            unknown.append(i)
    if 0 in unknown:
        return None, f"constant phi-coefficient vanishes mod p^{h}"
    hull = lower_hull(known)
    for i in unknown:
        if h <= _hull_value(hull, i):
            return None, f"phi-coefficient {i} is below the precision p^{h}"
    sides = [_Side(x0, x1, y0, y1) for (x0, y0), (x1, y1) in zip(hull, hull[1:])]
    if any(sd.degree != 1 for sd in sides):
        return None, "a Newton polygon side has degree > 1"
    eis = f == 1 and len(sides) == 1 and _literal_eisenstein(H, p, h)
    cert = EISENSTEIN if eis else NEWTON
    return [LocalEntry(sd.ramification, f, cert) for sd in sides], None


def _literal_eisenstein(H, p, h):
    N = p**h
    c = [x % N for x in H]
    return all(x % p == 0 for x in c[:-1]) and c[0] % (p * p) != 0


def default_precision(F) -> int:
    return 2 * (len(_coeffs(F)) - 1) + 2


def analyze_local(F, p: int, h: int | None = None) -> SplittingReport:
    """Certified ``(e, f)`` list of ``F`` at ``p``, or an ``Unresolved`` report.

    Raises :class:`NotSquarefreeError` when ``F`` has a repeated factor over Q.
    """
    c = _coeffs(F)
    if not is_squarefree_over_q(c):
        raise NotSquarefreeError(f"{IntPolynomial(tuple(c))} is not squarefree over Q")
    if h is None:
        h = default_precision(c)
    n = len(c) - 1
    facs = factor_mod_p(c, p)
    if all(k == 1 for _, k in facs):
        entries = tuple(sorted((LocalEntry(1, ff.deg(g), KUMMER_DEDEKIND) for g, _ in facs), key=_entry_key))
        return SplittingReport(p, entries, h, CERTIFIED)
    entries: list[LocalEntry] = []
    for H, phi, mk in hensel_split(c, p, h, facs):
        got, why = _analyze_class(H, phi, mk, p, h)
        if got is None:
            return SplittingReport(p, (), h, UNRESOLVED, f"{why}; retry with h = {2 * h}")
        entries.extend(got)
    if sum(x.e * x.f for x in entries) != n:
        raise AssertionError("certified e*f do not sum to the degree")
    return SplittingReport(p, tuple(sorted(entries, key=_entry_key)), h, CERTIFIED)


def _entry_key(x: LocalEntry):
    return (x.e, x.f, x.certificate)


def certify(F, p: int, h: int | None = None, retries: int = 4) -> SplittingReport:
    """:func:`analyze_local` doubling the precision up to ``retries`` times."""
    if h is None:
        h = default_precision(F)
    rep = analyze_local(F, p, h)
    for _ in range(retries):
        if rep.certified:
            break
        h *= 2
        rep = analyze_local(F, p, h)
    return rep


class Verdict(str, Enum):
    MATCH = "Match"
    MISMATCH = "Mismatch"
    INCONCLUSIVE = "Inconclusive"


@dataclass(frozen=True)
class Verification:
    verdict: Verdict
    reports: tuple[SplittingReport, ...] = field(default_factory=tuple)
    details: tuple[str, ...] = field(default_factory=tuple)

    def to_json(self) -> dict:
        return {
            "verdict": self.verdict.value,
            "reports": [r.to_json() for r in self.reports],
            "details": list(self.details),
        }


def expected_pairs(s: ConsistentSystem) -> dict[int, list[tuple[int, int]]]:
    """Per-prime ``(e, f)`` multisets of a system whose DVRs are primes of Z."""
    require_consistent(s)
    out = {}
    for d, rows in s.entries:
        p = int(d.id)
        out[p] = sorted((b.e, b.f) for b in rows)
    return out


def verify_realization(F, expected, h: int | None = None, retries: int = 4) -> Verification:
    """Compare the certified splitting of ``F`` with a system or a ``{p: [(e, f)]}`` map."""
    if hasattr(F, "polynomial"):
        F = F.polynomial
    c = _coeffs(F)
    if isinstance(expected, ConsistentSystem):
        if expected.m != len(c) - 1:
            return Verification(Verdict.MISMATCH, (), (f"degree {len(c) - 1} != m = {expected.m}",))
        expected = expected_pairs(expected)
    reports, details = [], []
    inconclusive = False
    mismatch = False
    for p in sorted(expected):
        rep = certify(c, p, h, retries)
        reports.append(rep)
        if not rep.certified:
            inconclusive = True
            details.append(f"p = {p}: {rep.hint}")
            continue
        want = sorted(tuple(x) for x in expected[p])
        if rep.pairs() != want:
            mismatch = True
            details.append(f"p = {p}: got {rep.pairs()}, expected {want}")
        else:
            details.append(f"p = {p}: {rep.pairs()}")
    verdict = Verdict.MISMATCH if mismatch else Verdict.INCONCLUSIVE if inconclusive else Verdict.MATCH
    return Verification(verdict, tuple(reports), tuple(details))


def radical_power_from_report(exponents: Mapping[int, int], reports: Sequence[SplittingReport]) -> int | None:
    """``t`` with ``IE = Rad(IE)**t`` read off certified reports, or ``None``."""
    by_p = {r.p: r for r in reports}
    values = set()
    for p, e in exponents.items():
        rep = by_p.get(p)
        if rep is None:
            raise ValueError(f"no report for p = {p}")
        if not rep.certified:
            raise ValueError(f"report for p = {p} is not certified")
        values.update(e * x.e for x in rep.entries)
    return values.pop() if len(values) == 1 else None
