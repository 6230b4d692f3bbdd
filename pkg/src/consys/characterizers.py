"""When does a system force ``IE = Rad(IE)**t`` or a uniform residue degree?

Both tests are constancy checks on flattened products: ``e_i * e_ij`` for
the radical power, ``f_i * f_ij`` for the residue degree over the subfield
of index ``f_i``. They read system data only; realized ideals are checked
separately by the local analyzer.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

from .systems import ConsistentSystem, IdealFactorization, require_consistent, splitting_vector


@dataclass(frozen=True)
class CharacterizationReport:
    radical_power_t: int | None = None
    uniform_residue_t: int | None = None
    divisibility_notes: tuple[str, ...] = field(default_factory=tuple)

    def to_json(self) -> dict:
        return {
            "radical_power_t": self.radical_power_t,
            "uniform_residue_t": self.uniform_residue_t,
            "divisibility_notes": list(self.divisibility_notes),
        }


def _constant(values) -> int | None:
    values = set(values)
    return values.pop() if len(values) == 1 else None


def _radical_power(ideal, s):
    require_consistent(s)
    t = _constant(splitting_vector(ideal, s))
    notes = []
    if t is None:
        return None, notes
    es = {str(d.id): e for d, e in ideal.factors}
    if t == s.m:
        for d, rows in s.entries:
            total = sum(b.f for b in rows)
            if total != es[str(d.id)]:
                raise AssertionError(f"t = m but sum_j f_ij = {total} != e_i = {es[str(d.id)]} at {d.id}")
        notes.append("t = m, so sum_j f_ij = e_i for every i")
    if math.gcd(*es.values()) == 1:
        if s.m % t:
            raise AssertionError(f"t = {t} does not divide m = {s.m}")
        bad = [e for e in es.values() if t % e]
        if bad:
            raise AssertionError(f"t = {t} is not a multiple of {bad}")
        notes.append(f"gcd(e_i) = 1: m = {s.m} is a multiple of t = {t}")
        notes.append(f"gcd(e_i) = 1: t = {t} is a multiple of every e_i")
    return t, notes


def characterize_radical_power(ideal: IdealFactorization, s: ConsistentSystem) -> int | None:
    """``t`` with ``IE = Rad(IE)**t`` in any realization, or ``None`` if no such ``t`` exists."""
    return _radical_power(ideal, s)[0]


def _uniform_residue(fs, s):
    require_consistent(s)
    fs = list(fs)
    if len(fs) != s.n:
        raise ValueError(f"need one f_i per row: {s.n} rows, {len(fs)} values")
    t = _constant(f * b.f for f, rows in zip(fs, s.rows) for b in rows)
    notes = []
    if t is None:
        return None, notes
    if t == s.m:
        for f, (d, rows) in zip(fs, s.entries):
            total = sum(b.e for b in rows)
            if total != f:
                raise AssertionError(f"t = m but sum_j e_ij = {total} != f_i = {f} at {d.id}")
        notes.append("t = m, so sum_j e_ij = f_i for every i")
    if math.gcd(*fs) == 1:
        if s.m % t or any(t % f for f in fs):
            raise AssertionError(f"divisibility fails for t = {t}, m = {s.m}, f = {fs}")
        notes.append(f"gcd(f_i) = 1: m = {s.m} is a multiple of t = {t}")
        notes.append(f"gcd(f_i) = 1: t = {t} is a multiple of every f_i")
    return t, notes


def characterize_uniform_residue(fs: Sequence[int], s: ConsistentSystem) -> int | None:
    """``t`` with ``[E/N : F_i] = t`` for every prime ``N`` above every ``M_i``, or ``None``."""
    return _uniform_residue(fs, s)[0]


def characterize_both(ideal: IdealFactorization, fs: Sequence[int], s: ConsistentSystem):
    """``(t1, t2)`` from the two characterizations; each entry may be ``None``."""
    t1 = characterize_radical_power(ideal, s)
    t2 = characterize_uniform_residue(fs, s)
    if t1 is not None and t2 is not None:
        exps = {str(d.id): e for d, e in ideal.factors}
        for f, (d, rows) in zip(fs, s.entries):
            e = exps[str(d.id)]
            # only forced when the common values equal m; checked there
            if t1 == s.m and sum(b.f for b in rows) != e:
                raise AssertionError(f"sum_j f_ij != e_i at {d.id}")
            if t2 == s.m and sum(b.e for b in rows) != f:
                raise AssertionError(f"sum_j e_ij != f_i at {d.id}")
    return t1, t2


def characterize(ideal: IdealFactorization | None, fs: Sequence[int] | None, s: ConsistentSystem) -> CharacterizationReport:
    """Full report; either side is skipped when its input is absent."""
    t1 = t2 = None
    notes: list[str] = []
    if ideal is not None:
        t1, n1 = _radical_power(ideal, s)
        notes += n1
    if fs is not None:
        t2, n2 = _uniform_residue(fs, s)
        notes += n2
    return CharacterizationReport(t1, t2, tuple(notes))
