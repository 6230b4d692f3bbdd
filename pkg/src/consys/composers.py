"""Builders for consistent systems, each paired with a staged recipe.

A recipe lists the intermediate systems used to realize the result as a
tower: stage ``k + 1`` is a system over the DVRs produced by stage ``k``
(one child DVR per behavior, with id ``"<parent>.<j>"``). The final
system is what :func:`compose_recipe` returns for the recipe, up to the
order of behaviors inside a row.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from .systems import (
    ConsistentSystem,
    DvrLabel,
    IdealFactorization,
    LocalBehavior,
    ResidueFieldDesc,
    behavior,
    factor_integer,
    require_consistent,
)


@dataclass(frozen=True)
class RealizationRecipe:
    stages: tuple[ConsistentSystem, ...]
    tags: tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "stages", tuple(self.stages))
        object.__setattr__(self, "tags", tuple(self.tags))
        if len(self.stages) != len(self.tags):
            raise ValueError("each recipe stage needs a tag")

    @property
    def degree(self) -> int:
        return math.prod(s.m for s in self.stages)


def _children(stage: ConsistentSystem) -> list[list[DvrLabel]]:
    return [[DvrLabel(f"{d.id}.{j}", b.residue_ext) for j, b in enumerate(rows, 1)] for d, rows in stage.entries]


def _leaves(stages: Sequence[ConsistentSystem]) -> list[tuple[int, DvrLabel]]:
    """DVRs above the original ones after all stages, tagged with the original row index."""
    owner = {d.id: i for i, d in enumerate(stages[0].dvrs)}
    leaves: list[tuple[int, DvrLabel]] = []
    for stage in stages:
        leaves = []
        for (d, _), kids in zip(stage.entries, _children(stage)):
            leaves.extend((owner[d.id], c) for c in kids)
        owner = {c.id: i for i, c in leaves}
    return leaves


def compose_recipe(recipe: RealizationRecipe) -> ConsistentSystem:
    """Collapse a tower of stages into the system it realizes over the original DVRs.

    Along each path residue degrees and ramification indices multiply.
    """
    first = recipe.stages[0]
    # child id -> (original index, f, e, residue extension)
    current = {}
    for i, ((d, rows), kids) in enumerate(zip(first.entries, _children(first))):
        for b, c in zip(rows, kids):
            current[c.id] = (i, b.f, b.e, b.residue_ext)
    for stage in recipe.stages[1:]:
        ids = {d.id for d in stage.dvrs}
        if ids != set(current):
            raise ValueError(f"stage DVRs {sorted(map(str, ids))} do not match previous children {sorted(map(str, current))}")
        nxt = {}
        for (d, rows), kids in zip(stage.entries, _children(stage)):
            i, f0, e0, _ = current[d.id]
            for b, c in zip(rows, kids):
                nxt[c.id] = (i, f0 * b.f, e0 * b.e, b.residue_ext)
        current = nxt
    rows = [[] for _ in first.entries]
    for i, f, e, ext in current.values():
        rows[i].append(LocalBehavior(ext, f, e))
    return ConsistentSystem(recipe.degree, tuple((d, tuple(r)) for d, r in zip(first.dvrs, rows)))


def shape(s: ConsistentSystem) -> tuple:
    """Label-free summary: ``m`` and per DVR the sorted ``(f, e, ext_degree)`` keys."""
    return (s.m, tuple((str(d.id), tuple(sorted(b.sort_key() for b in rows))) for d, rows in s.entries))


def _need_pair(n: int) -> None:
    if n < 2:
        raise ValueError("pivot requires ≥ 2 DVRs")


def _single(s: ConsistentSystem, tag: str) -> RealizationRecipe:
    return RealizationRecipe((s,), (tag,))


def _system(dvrs, rows) -> ConsistentSystem:
    rows = [tuple(r) for r in rows]
    m = sum(b.e * b.f for b in rows[0])
    return ConsistentSystem(m, tuple(zip(dvrs, rows)))


def scale_ramification(s: ConsistentSystem, pivot: int | None = None):
    """Multiply every ramification index by ``m``; the result is ``m**2``-consistent and realizable.

    ``pivot`` (1-based, in ``1..n-1``) keeps rows ``1..pivot`` in the first
    stage and collapses the rest; by default only the last row collapses.
    """
    require_consistent(s)
    _need_pair(s.n)
    m = s.m
    out = ConsistentSystem(m * m, tuple((d, tuple(LocalBehavior(b.residue_ext, b.f, m * b.e) for b in rows)) for d, rows in s.entries))
    if m == 1:
        return out, _single(out, "m = 1: identity")
    g = s.n - 1 if pivot is None else pivot
    if not 1 <= g <= s.n - 1:
        raise ValueError(f"pivot must lie in 1..{s.n - 1}, got {pivot}")
    first = [rows if i < g else (behavior(d.residue_field, 1, m),) for i, (d, rows) in enumerate(s.entries)]
    s1 = _system(s.dvrs, first)
    entries = []
    for i, ((d, rows), kids) in enumerate(zip(s.entries, _children(s1))):
        if i < g:
            entries.extend((c, (LocalBehavior(c.residue_field, 1, m),)) for c in kids)
        else:
            entries.append((kids[0], tuple(LocalBehavior(b.residue_ext, b.f, b.e) for b in rows)))
    s2 = ConsistentSystem(m, tuple(entries))
    return out, RealizationRecipe((s1, s2), ("collapse pivot rows to (K, 1, m)", "ramify kept branches by m; expand pivot"))


def scale_residue(s: ConsistentSystem):
    """Multiply every residue degree by ``m`` (finite or suitably capable residue fields)."""
    require_consistent(s)
    _need_pair(s.n)
    m = s.m
    for d, rows in s.entries:
        k = d.residue_field
        for b in rows:
            if not k.has_extension(m * b.f):
                raise ValueError(f"residue field {k.name} of DVR {d.id} lacks an extension of degree {m * b.f}")
    last = s.dvrs[-1].residue_field
    if not last.has_extension(m):
        raise ValueError(f"residue field {last.name} of DVR {s.dvrs[-1].id} lacks an extension of degree {m}")
    if m == 1:
        return s, _single(s, "m = 1: the base field realizes the system")
    star = [[behavior(d.residue_field, m * b.f, b.e) for b in rows] for d, rows in s.entries]
    out = _system(s.dvrs, star)
    first = [rows for rows in s.rows[:-1]] + [(behavior(last, m, 1),)]
    t1 = _system(s.dvrs, first)
    kids = _children(t1)
    entries = []
    for i in range(s.n - 1):
        entries.extend((c, (LocalBehavior(b.residue_ext, m, 1),)) for c, b in zip(kids[i], star[i]))
    entries.append((kids[-1][0], tuple(LocalBehavior(st.residue_ext, b.f, b.e) for st, b in zip(star[-1], s.rows[-1]))))
    t2 = ConsistentSystem(m, tuple(entries))
    return out, RealizationRecipe((t1, t2), ("pivot row to (H_n, m, 1)", "extend residue fields by m; expand pivot"))


def _trivial(ideal: IdealFactorization) -> ConsistentSystem:
    return ConsistentSystem(1, tuple((d, (behavior(d.residue_field, 1, 1),)) for d in ideal.dvrs))


def radical_power_system(ideal: IdealFactorization):
    """Degree ``e_1...e_n`` system with ``e_i`` unramified-residue copies of ``(K_i, 1, E/e_i)``.

    In a realization ``IE = Rad(IE)**(e_1...e_n)``. For a single prime the
    ideal is already a radical power and the identity system is returned.
    """
    if ideal.n == 1:
        s = _trivial(ideal)
        return s, _single(s, "n = 1: I already a radical power (E = D)")
    es = ideal.exponents
    big = math.prod(es)
    s = _system(ideal.dvrs, [[behavior(d.residue_field, 1, big // e)] * e for d, e in ideal.factors])
    if min(es) == 1:
        return s, _single(s, "some e_i = 1: a row is a single behavior")
    head = big // es[-1]
    first = [[behavior(d.residue_field, 1, head // e)] * e for d, e in ideal.factors[:-1]]
    first.append([behavior(ideal.dvrs[-1].residue_field, 1, head)])
    s1 = _system(ideal.dvrs, first)
    kids = _children(s1)
    entries = []
    for i in range(ideal.n - 1):
        entries.extend((c, (LocalBehavior(c.residue_field, 1, es[-1]),)) for c in kids[i])
    c = kids[-1][0]
    entries.append((c, (LocalBehavior(c.residue_field, 1, 1),) * es[-1]))
    s2 = ConsistentSystem(es[-1], tuple(entries))
    return s, RealizationRecipe((s1, s2), ("radical-power system without e_n", "ramify by e_n; split the last prime"))


def common_multiple_system(ideal: IdealFactorization, d: int):
    """Degree ``d * e_n`` variant where ``d`` is any common multiple of ``e_1..e_{n-1}``."""
    _need_pair(ideal.n)
    es = ideal.exponents
    bad = [e for e in es[:-1] if d % e]
    if d < 1 or bad:
        raise ValueError(f"d = {d} is not a common multiple of {list(es[:-1])}")
    dstar = d * es[-1]
    s = _system(ideal.dvrs, [[behavior(q.residue_field, 1, dstar // e)] * e for q, e in ideal.factors])
    first = [[behavior(q.residue_field, 1, d // e)] * e for q, e in ideal.factors[:-1]]
    first.append([behavior(ideal.dvrs[-1].residue_field, 1, d)])
    s1 = _system(ideal.dvrs, first)
    kids = _children(s1)
    entries = []
    for i in range(ideal.n - 1):
        entries.extend((c, (LocalBehavior(c.residue_field, 1, es[-1]),)) for c in kids[i])
    c = kids[-1][0]
    entries.append((c, (LocalBehavior(c.residue_field, 1, 1),) * es[-1]))
    s2 = ConsistentSystem(es[-1], tuple(entries))
    return s, RealizationRecipe((s1, s2), ("common-multiple stage S1*", "ramify by e_n; split the last prime (S2*)"))


def minimal_radical_power_system(ideal: IdealFactorization):
    """Smallest-degree radical-power construction: returns ``(system, recipe, t)``.

    With ``c = gcd(e)``, ``k = e / c`` and ``d = lcm(k)``, row ``i`` has
    ``k_i`` copies of ``(K_i, 1, d / k_i)``, and ``IE = Rad(IE)**(d * c)``.
    The recipe has one stage per prime power ``p**a`` exactly dividing ``d``.
    """
    if ideal.n == 1:
        s = _trivial(ideal)
        return s, _single(s, "n = 1: I already a radical power (E = D)"), ideal.exponents[0]
    es = ideal.exponents
    c = math.gcd(*es)
    ks = [e // c for e in es]
    d = math.lcm(*ks)
    s = _system(ideal.dvrs, [[behavior(q.residue_field, 1, d // k)] * k for q, k in zip(ideal.dvrs, ks)])
    if d == 1:
        return s, _single(s, "all reduced exponents are 1"), c
    stages, tags = [], []
    current = [(i, q) for i, q in enumerate(ideal.dvrs)]
    for prime, top in factor_integer(d):
        rows = []
        for i, q in current:
            a = _valuation(ks[i], prime)
            rows.append([LocalBehavior(q.residue_field, 1, prime ** (top - a))] * prime**a)
        stage = _system([q for _, q in current], rows)
        stages.append(stage)
        tags.append(f"{prime}^{top}-stage")
        kids = _children(stage)
        current = [(i, c_) for (i, _), ks_ in zip(current, kids) for c_ in ks_]
    return s, RealizationRecipe(tuple(stages), tuple(tags)), d * c


def _valuation(n: int, p: int) -> int:
    a = 0
    while n % p == 0:
        n //= p
        a += 1
    return a


def single_prime_system(ideal: IdealFactorization) -> ConsistentSystem:
    """One prime above each ``M_i``, with residue degree ``e_i`` and ramification ``E / e_i``."""
    es = ideal.exponents
    big = math.prod(es)
    rows = []
    for i, (q, e) in enumerate(ideal.factors, 1):
        if not q.residue_field.has_extension(e):
            raise ValueError(f"M_{i} ({q.id}): residue field {q.residue_field.name} has no extension of degree {e}")
        rows.append([behavior(q.residue_field, e, big // e)])
    return _system(ideal.dvrs, rows)


def _check_subfields(dvrs: Sequence[DvrLabel], fs: Sequence[int]) -> None:
    if len(dvrs) != len(fs):
        raise ValueError(f"need one subfield index per DVR: {len(dvrs)} DVRs, {len(fs)} indices")
    for q, f in zip(dvrs, fs):
        if f < 1 or not q.residue_field.has_subfield_index(f):
            raise ValueError(f"{f} is not a subfield index of the residue field {q.residue_field.name} of DVR {q.id}")


def _check_extensions(dvrs: Sequence[DvrLabel], degrees: Sequence[int]) -> None:
    for q, k in zip(dvrs, degrees):
        if not q.residue_field.has_extension(k):
            raise ValueError(f"residue field {q.residue_field.name} of DVR {q.id} lacks an extension of degree {k}")


def residue_degree_system(dvrs: Sequence[DvrLabel], fs: Sequence[int]):
    """Degree ``f_1...f_n`` system with ``f_i`` unramified copies of ``(K_i', F / f_i, 1)``.

    ``f_i`` must be the index of a subfield of ``K_i``.
    """
    dvrs = tuple(dvrs)
    _need_pair(len(dvrs))
    _check_subfields(dvrs, fs)
    big = math.prod(fs)
    _check_extensions(dvrs, [big // f for f in fs])
    s = _system(dvrs, [[behavior(q.residue_field, big // f, 1)] * f for q, f in zip(dvrs, fs)])
    if min(fs) == 1:
        return s, _single(s, "some f_i = 1: a row is a single behavior")
    head = big // fs[-1]
    _check_extensions(dvrs[:-1], [head // f for f in fs[:-1]])
    first = [[behavior(q.residue_field, head // f, 1)] * f for q, f in zip(dvrs[:-1], fs[:-1])]
    first.append([behavior(dvrs[-1].residue_field, head, 1)])
    t1 = _system(dvrs, first)
    kids = _children(t1)
    entries = []
    for i in range(len(dvrs) - 1):
        target = s.rows[i][0].residue_ext
        entries.extend((c, (LocalBehavior(target, fs[-1], 1),)) for c in kids[i])
    c = kids[-1][0]
    entries.append((c, (LocalBehavior(c.residue_field, 1, 1),) * fs[-1]))
    t2 = ConsistentSystem(fs[-1], tuple(entries))
    return s, RealizationRecipe((t1, t2), ("residue-degree system without f_n", "extend by f_n; split the last prime"))


def residue_common_multiple_system(dvrs: Sequence[DvrLabel], fs: Sequence[int], d: int) -> ConsistentSystem:
    """Degree ``d * f_n`` variant where ``d`` is a common multiple of ``f_1..f_{n-1}``."""
    dvrs = tuple(dvrs)
    _need_pair(len(dvrs))
    _check_subfields(dvrs, fs)
    bad = [f for f in fs[:-1] if d % f]
    if d < 1 or bad:
        raise ValueError(f"d = {d} is not a common multiple of {list(fs[:-1])}")
    dstar = d * fs[-1]
    _check_extensions(dvrs, [dstar // f for f in fs])
    return _system(dvrs, [[behavior(q.residue_field, dstar // f, 1)] * f for q, f in zip(dvrs, fs)])


def combined_system(ideal: IdealFactorization, fs: Sequence[int]):
    """Radical power and uniform residue degree at once: degree ``(e_1...e_n)(f_1...f_n)``.

    Row ``i`` has ``e_i * f_i`` copies of ``(K_i*, F / f_i, E / e_i)``. The
    recipe runs the radical-power stages first, then one residue stage over
    every prime they produced.
    """
    _need_pair(ideal.n)
    dvrs = ideal.dvrs
    _check_subfields(dvrs, fs)
    es = ideal.exponents
    big_e, big_f = math.prod(es), math.prod(fs)
    _check_extensions(dvrs, [big_f // f for f in fs])
    rows = [[behavior(q.residue_field, big_f // f, big_e // e)] * (e * f) for q, e, f in zip(dvrs, es, fs)]
    s = _system(dvrs, rows)
    _, rad = radical_power_system(ideal)
    leaves = _leaves(rad.stages)
    entries = [(c, (behavior(c.residue_field, big_f // fs[i], 1),) * fs[i]) for i, c in leaves]
    last = ConsistentSystem(big_f, tuple(entries))
    return s, RealizationRecipe(rad.stages + (last,), rad.tags + ("uniform residue degree stage",))


def square_system(ideal: IdealFactorization):
    """Degree ``E**2`` system, ``E = e_1...e_n``: ``e_i`` copies of ``(H_i, E, E / e_i)``.

    Needs a simple extension of degree ``E`` of every residue field.
    """
    _need_pair(ideal.n)
    es = ideal.exponents
    big = math.prod(es)
    _check_extensions(ideal.dvrs, [big] * ideal.n)
    s = _system(ideal.dvrs, [[behavior(q.residue_field, big, big // e)] * e for q, e in ideal.factors])
    if big == 1:
        return s, _single(s, "E = 1: identity")
    t = _system(ideal.dvrs, [[behavior(q.residue_field, big, 1)] for q in ideal.dvrs])
    kids = _children(t)
    entries = [(k[0], (LocalBehavior(k[0].residue_field, 1, big // e),) * e) for k, e in zip(kids, es)]
    s2 = ConsistentSystem(big, tuple(entries))
    return s, RealizationRecipe((t, s2), ("inert stage (H_i, E, 1)", "radical-power stage over the inert primes"))


COMPOSERS = {
    "scale-ram": scale_ramification,
    "scale-res": scale_residue,
    "radical-power": radical_power_system,
    "common-multiple": common_multiple_system,
    "lcm": minimal_radical_power_system,
    "single-prime": single_prime_system,
    "residue-degree": residue_degree_system,
    "residue-common-multiple": residue_common_multiple_system,
    "combined": combined_system,
    "square": square_system,
}


def dvrs_over(fields: Sequence[ResidueFieldDesc], ids: Sequence | None = None) -> tuple[DvrLabel, ...]:
    """Convenience: DVR labels for a list of residue fields."""
    ids = ids if ids is not None else [f.name for f in fields]
    return tuple(DvrLabel(i, k) for i, k in zip(ids, fields))
