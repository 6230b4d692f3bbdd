"""Residue-field descriptors, local behaviors and m-consistent systems.

A consistent system assigns to each DVR ``V_i`` a list of local behaviors
``(K_ij, f_ij, e_ij)`` whose ``sum(e * f)`` equals the common degree ``m``.
Everything here is an immutable value; validation problems are reported as
data by :func:`check_consistency` rather than raised.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

FINITE = "FinitePrimePower"
ABSTRACT = "Abstract"


_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Miller-Rabin with the first twelve prime bases, deterministic below 3.3e24."""
    if n < 2:
        return False
    for q in _MR_BASES:
        if n % q == 0:
            return n == q
    d, r = n - 1, 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _rho(n: int) -> int:
    # Pollard rho with Floyd cycling; deterministic sequence of constants
    if n % 2 == 0:
        return 2
    c = 1
    while True:
        x = y = 2
        g = 1
        while g == 1:
            x = (x * x + c) % n
            y = (y * y + c) % n
            y = (y * y + c) % n
            g = math.gcd(abs(x - y), n)
        if g != n:
            return g
        c += 1


def factor_integer(k: int) -> list[tuple[int, int]]:
    """Prime factorization of ``1 < k <= 2**63``: trial division by small primes, then Pollard rho."""
    if k < 2:
        raise ValueError(f"expected an integer > 1, got {k}")
    if k > 2**63:
        raise ValueError("integer too large (limit 2**63)")
    counts: dict[int, int] = {}
    d = 2
    while d < 1000 and d * d <= k:
        while k % d == 0:
            k //= d
            counts[d] = counts.get(d, 0) + 1
        d += 1 if d == 2 else 2
    todo = [k] if k > 1 else []
    while todo:
        x = todo.pop()
        if is_prime(x):
            counts[x] = counts.get(x, 0) + 1
        else:
            g = _rho(x)
            todo.extend([g, x // g])
    return sorted(counts.items())


@dataclass(frozen=True)
class ResidueFieldDesc:
    """A residue field: either ``GF(p**d)`` or an abstract field with declared capabilities.

    For abstract fields ``ext_degrees`` lists the degrees ``k`` for which a
    simple extension of degree ``k`` is asserted to exist, and
    ``subfield_indices`` the indices ``f`` of asserted subfields.
    """

    kind: str
    p: int | None = None
    d: int | None = None
    label: str | None = None
    ext_degrees: frozenset[int] = frozenset()
    subfield_indices: frozenset[int] = frozenset()

    def __post_init__(self):
        if self.kind == FINITE:
            if self.p is None or not is_prime(self.p):
                raise ValueError(f"finite residue field needs a prime characteristic, got {self.p}")
            if self.d is None or self.d < 1:
                raise ValueError(f"finite residue field needs degree >= 1, got {self.d}")
        elif self.kind == ABSTRACT:
            if self.label is None:
                raise ValueError("abstract residue field needs a label")
            object.__setattr__(self, "ext_degrees", frozenset(self.ext_degrees))
            object.__setattr__(self, "subfield_indices", frozenset(self.subfield_indices))
        else:
            raise ValueError(f"unknown residue field kind {self.kind!r}")

    @classmethod
    def finite(cls, p: int, d: int = 1) -> ResidueFieldDesc:
        return cls(FINITE, p=p, d=d)

    @classmethod
    def abstract(cls, label: str, ext_degrees: Iterable[int] = (), subfield_indices: Iterable[int] = (1,)):
        return cls(ABSTRACT, label=label, ext_degrees=frozenset(ext_degrees), subfield_indices=frozenset(subfield_indices))

    @property
    def is_finite(self) -> bool:
        return self.kind == FINITE

    def has_extension(self, k: int) -> bool:
        if k == 1 or self.is_finite:
            return True
        return k in self.ext_degrees

    def has_subfield_index(self, f: int) -> bool:
        if f == 1:
            return True
        if self.is_finite:
            return self.d % f == 0
        return f in self.subfield_indices

    def extension(self, k: int) -> ResidueFieldDesc:
        """The (unique, for finite fields) extension of degree ``k``."""
        if not self.has_extension(k):
            raise ValueError(f"residue field {self.name} has no declared extension of degree {k}")
        if k == 1:
            return self
        if self.is_finite:
            return ResidueFieldDesc.finite(self.p, self.d * k)
        # a degree-j extension of the result is a degree-k*j extension of self
        up = {x // k for x in self.ext_degrees if x % k == 0}
        return ResidueFieldDesc.abstract(f"{self.label}[{k}]", ext_degrees=up, subfield_indices=(1, k))

    @property
    def name(self) -> str:
        if self.is_finite:
            return f"GF({self.p})" if self.d == 1 else f"GF({self.p}^{self.d})"
        return self.label


@dataclass(frozen=True)
class LocalBehavior:
    """One triple ``(K_ij, f_ij, e_ij)``: residue extension, residue degree, ramification index."""

    residue_ext: ResidueFieldDesc
    f: int
    e: int

    @property
    def ext_degree(self) -> int:
        # absolute degree over GF(p) for finite fields; degree over K_i otherwise
        if self.residue_ext.is_finite:
            return self.residue_ext.d
        return self.f

    def sort_key(self):
        return (self.f, self.e, self.ext_degree)


@dataclass(frozen=True)
class DvrLabel:
    id: int | str
    residue_field: ResidueFieldDesc

    @classmethod
    def prime(cls, p: int) -> DvrLabel:
        """The localization of ``Z`` at ``p``."""
        return cls(p, ResidueFieldDesc.finite(p))


def behavior(base: ResidueFieldDesc, f: int, e: int) -> LocalBehavior:
    """Behavior whose residue extension is the degree-``f`` extension of ``base``."""
    return LocalBehavior(base.extension(f), f, e)


@dataclass(frozen=True)
class ConsistentSystem:
    m: int
    entries: tuple[tuple[DvrLabel, tuple[LocalBehavior, ...]], ...]

    def __post_init__(self):
        object.__setattr__(self, "entries", tuple((d, tuple(rows)) for d, rows in self.entries))

    @property
    def dvrs(self) -> tuple[DvrLabel, ...]:
        return tuple(d for d, _ in self.entries)

    @property
    def rows(self) -> tuple[tuple[LocalBehavior, ...], ...]:
        return tuple(rows for _, rows in self.entries)

    @property
    def n(self) -> int:
        return len(self.entries)

    def row(self, dvr_id) -> tuple[LocalBehavior, ...]:
        for d, rows in self.entries:
            if d.id == dvr_id:
                return rows
        raise KeyError(dvr_id)

    def canonical(self) -> ConsistentSystem:
        """Same system with each row sorted by ``(f, e, ext_degree)``."""
        return ConsistentSystem(self.m, tuple((d, tuple(sorted(rows, key=LocalBehavior.sort_key))) for d, rows in self.entries))

    def equivalent(self, other: ConsistentSystem) -> bool:
        """Equality up to reordering behaviors within each row."""
        return self.canonical() == other.canonical()


@dataclass(frozen=True)
class IdealFactorization:
    """``I = M_1**e_1 ... M_n**e_n`` with distinct prime labels."""

    factors: tuple[tuple[DvrLabel, int], ...]

    def __post_init__(self):
        object.__setattr__(self, "factors", tuple((d, int(e)) for d, e in self.factors))
        ids = [d.id for d, _ in self.factors]
        if len(set(ids)) != len(ids):
            raise ValueError(f"ideal factor labels must be distinct, got {ids}")
        for d, e in self.factors:
            if e < 1:
                raise ValueError(f"exponent of {d.id} must be positive, got {e}")

    @classmethod
    def over_integers(cls, pairs: Iterable[tuple[int, int]]) -> IdealFactorization:
        pairs = list(pairs)
        for p, _ in pairs:
            if not is_prime(p):
                raise ValueError(f"{p} is not prime")
        return cls(tuple((DvrLabel.prime(p), e) for p, e in pairs))

    @classmethod
    def from_int(cls, k: int) -> IdealFactorization:
        return cls.over_integers(factor_integer(k))

    @property
    def dvrs(self) -> tuple[DvrLabel, ...]:
        return tuple(d for d, _ in self.factors)

    @property
    def exponents(self) -> tuple[int, ...]:
        return tuple(e for _, e in self.factors)

    @property
    def n(self) -> int:
        return len(self.factors)

    def exponent(self, dvr_id) -> int:
        for d, e in self.factors:
            if d.id == dvr_id:
                return e
        raise KeyError(dvr_id)


@dataclass(frozen=True)
class Violation:
    index: int | None
    dvr_id: object
    message: str
    computed_sum: int | None = None


@dataclass(frozen=True)
class Validation:
    violations: tuple[Violation, ...] = field(default_factory=tuple)

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self):
        return self.ok


def check_consistency(s: ConsistentSystem) -> Validation:
    """Check the row-sum identity ``sum_j e_ij * f_ij == m`` and the structural invariants."""
    out = []
    if s.m < 1:
        out.append(Violation(None, None, f"degree m must be positive, got {s.m}"))
    if s.n < 1:
        out.append(Violation(None, None, "system has no DVRs"))
    seen = set()
    for i, (dvr, rows) in enumerate(s.entries):
        if dvr.id in seen:
            out.append(Violation(i, dvr.id, "duplicate DVR label"))
        seen.add(dvr.id)
        if not rows:
            out.append(Violation(i, dvr.id, "row is empty (s_i must be >= 1)"))
            continue
        base = dvr.residue_field
        for b in rows:
            if b.f < 1 or b.e < 1:
                out.append(Violation(i, dvr.id, f"behavior has non-positive f={b.f} or e={b.e}"))
            ext = b.residue_ext
            if base.is_finite and ext.is_finite:
                if ext.p != base.p or ext.d != b.f * base.d:
                    out.append(Violation(i, dvr.id, f"residue extension {ext.name} is not of degree f={b.f} over {base.name}"))
            elif base.is_finite != ext.is_finite:
                out.append(Violation(i, dvr.id, f"residue extension {ext.name} does not match base {base.name}"))
        total = sum(b.e * b.f for b in rows)
        if total != s.m:
            out.append(Violation(i, dvr.id, f"row sum {total} != m = {s.m}", total))
    return Validation(tuple(out))


def require_consistent(s: ConsistentSystem) -> None:
    v = check_consistency(s)
    if not v.ok:
        raise ValueError("inconsistent system: " + "; ".join(x.message for x in v.violations))


class Verdict(enum.Enum):
    SufficientByUniqueRow = "SufficientByUniqueRow"
    SufficientByExtraDVR = "SufficientByExtraDVR"
    SufficientByApproximation = "SufficientByApproximation"
    Unknown = "Unknown"


@dataclass(frozen=True)
class BaseRing:
    """Where the DVRs live: ``Z`` (approximation holds) or an abstract base.

    ``extra_dvrs`` declares that the quotient field has a DVR outside the
    system (Krull's second condition).
    """

    kind: str = "Z"
    extra_dvrs: bool = False

    @classmethod
    def integers(cls) -> BaseRing:
        return cls("Z")

    @classmethod
    def abstract(cls, extra_dvrs: bool = False) -> BaseRing:
        return cls("abstract", extra_dvrs)


def krull_sufficient(s: ConsistentSystem, base: BaseRing) -> Verdict:
    """Which of Krull's sufficient conditions certifies realizability, if any.

    ``Unknown`` is never a claim of non-realizability.
    """
    require_consistent(s)
    if any(len(rows) == 1 for rows in s.rows):
        return Verdict.SufficientByUniqueRow
    if base.kind == "Z":
        return Verdict.SufficientByApproximation
    if base.extra_dvrs:
        return Verdict.SufficientByExtraDVR
    return Verdict.Unknown


def proj_equiv(a: Sequence[int], b: Sequence[int]) -> bool:
    """True iff ``a == c * b`` for a positive rational ``c``."""
    if len(a) != len(b):
        raise ValueError(f"length mismatch: {len(a)} vs {len(b)}")
    if any(x <= 0 for x in a) or any(x <= 0 for x in b):
        raise ValueError("exponent vectors must be positive")
    if not a:
        return True
    c = Fraction(a[0], b[0])
    return all(Fraction(x, y) == c for x, y in zip(a, b))


def normalize_vector(a: Sequence[int]) -> tuple[int, ...]:
    """Primitive representative of the projective class of ``a``."""
    g = 0
    for x in a:
        g = math.gcd(g, x)
    return tuple(x // g for x in a) if g else tuple(a)


def _match_labels(ideal: IdealFactorization, s: ConsistentSystem) -> None:
    a = sorted(map(str, (d.id for d in ideal.dvrs)))
    b = sorted(map(str, (d.id for d in s.dvrs)))
    if a != b:
        raise ValueError(f"ideal labels {a} do not match system labels {b}")


def splitting_vector(ideal: IdealFactorization, s: ConsistentSystem) -> tuple[int, ...]:
    """Exponents ``e_i * e_ij`` of ``IE`` in a realization, row-major in the system's order."""
    _match_labels(ideal, s)
    exps = {str(d.id): e for d, e in ideal.factors}
    return tuple(exps[str(d.id)] * b.e for d, rows in s.entries for b in rows)


# ---- system.v1 / recipe.v1 JSON -------------------------------------------------


def residue_to_json(r: ResidueFieldDesc) -> dict:
    if r.is_finite:
        return {"p": r.p, "d": r.d}
    return {"label": r.label, "ext_degrees": sorted(r.ext_degrees), "subfield_indices": sorted(r.subfield_indices)}


def residue_from_json(obj: dict) -> ResidueFieldDesc:
    if "p" in obj:
        return ResidueFieldDesc.finite(int(obj["p"]), int(obj.get("d", 1)))
    return ResidueFieldDesc.abstract(str(obj["label"]), obj.get("ext_degrees", ()), obj.get("subfield_indices", (1,)))


def system_to_json(s: ConsistentSystem, canonical: bool = True) -> dict:
    if canonical:
        s = s.canonical()
    dvrs = []
    for d, rows in s.entries:
        dvrs.append(
            {
                "id": d.id,
                "residue": residue_to_json(d.residue_field),
                "behaviors": [{"f": b.f, "e": b.e, "ext_degree": b.ext_degree} for b in rows],
            }
        )
    return {"m": s.m, "dvrs": dvrs}


def system_from_json(obj: dict) -> ConsistentSystem:
    entries = []
    for item in obj["dvrs"]:
        base = residue_from_json(item["residue"])
        rows = []
        for b in item["behaviors"]:
            f, e = int(b["f"]), int(b["e"])
            if base.is_finite:
                ext = ResidueFieldDesc.finite(base.p, int(b.get("ext_degree", f * base.d)))
            else:
                ext = base.extension(f) if base.has_extension(f) else ResidueFieldDesc.abstract(f"{base.label}[{f}]")
            rows.append(LocalBehavior(ext, f, e))
        entries.append((DvrLabel(item["id"], base), tuple(rows)))
    return ConsistentSystem(int(obj["m"]), tuple(entries))
