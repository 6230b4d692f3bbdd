import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from consys import ff
from consys.composers import radical_power_system, scale_ramification
from consys.localanalyzer import analyze_local, is_eisenstein, phi_expansion
from consys.polysynth import (
    LocalTarget,
    RealizationError,
    ff_irreducible,
    local_block,
    phi_classes,
    realize_system,
    synthesize,
    targets_from_system,
)
from consys.systems import ConsistentSystem, DvrLabel, IdealFactorization, ResidueFieldDesc, behavior
from consys.zpoly import IntPolynomial, format_poly, parse_poly, valuation
from helpers import brute_irreducible, sympy_factor, system_over_primes, systems


# ---- text format ---------------------------------------------------------------


def test_format_and_parse():
    assert format_poly([12, 0, -3, 0, 0, 0, 1]) == "X^6 - 3*X^2 + 12"
    assert parse_poly("X^6 - 3*X^2 + 12") == [12, 0, -3, 0, 0, 0, 1]
    assert parse_poly("x**2+x+1") == [1, 1, 1]
    assert parse_poly("-X + 2") == [2, -1]
    assert format_poly([0, -1]) == "-X"
    assert str(IntPolynomial((5, 0, 1))) == "X^2 + 5"
    for bad in ("", "X^2 +", "2 3", "X^^2"):
        with pytest.raises(ValueError):
            parse_poly(bad)


@given(st.lists(st.integers(-10**30, 10**30), min_size=1, max_size=10))
def test_text_roundtrip(low):
    coeffs = low + [1]
    p = IntPolynomial(tuple(coeffs))
    assert IntPolynomial.parse(str(p)) == p
    assert IntPolynomial.from_json(json.loads(json.dumps(p.to_json()))) == p


# ---- irreducibles and blocks ------------------------------------------------------


def test_ff_irreducible_examples():
    assert ff_irreducible(2, 1, 0).coeffs == (0, 1)
    assert ff_irreducible(2, 2, 0).coeffs == (1, 1, 1)
    assert ff_irreducible(3, 2, 0).coeffs == (1, 0, 1)
    with pytest.raises(ValueError, match="out of range"):
        ff_irreducible(2, 2, 1)
    with pytest.raises(ValueError):
        ff_irreducible(4, 1, 0)


@pytest.mark.parametrize("p,f", [(2, 3), (2, 4), (3, 2), (3, 3), (5, 2)])
def test_ff_irreducible_enumeration(p, f):
    seen = set()
    for i in range(ff.count_irreducible(p, f)):
        g = ff_irreducible(p, f, i).coeffs
        assert len(g) == f + 1 and brute_irreducible(list(g), p)
        seen.add(g)
    assert len(seen) == ff.count_irreducible(p, f)


def test_local_block_examples():
    assert str(local_block(5, 2, 1, 0)) == "X^2 + 5"
    assert str(local_block(2, 1, 2, 0)) == "X^2 + X + 1"
    assert str(local_block(3, 3, 1, 0)) == "X^3 + 3"
    assert str(local_block(3, 1, 1, 1)) == "X + 2"  # X - 1 with canonical coefficients
    assert is_eisenstein(local_block(5, 2, 1), 5)
    with pytest.raises(ValueError):
        local_block(2, 2, 1, slope=2)


@pytest.mark.parametrize("p", [2, 3, 5])
@pytest.mark.parametrize("e,f", [(2, 1), (3, 1), (2, 2), (4, 1), (3, 2), (2, 3)])
def test_blocks_are_phi_eisenstein(p, e, f):
    for shift in range(min(p, 2)):
        g = local_block(p, e, f, shift)
        phi = ff.reduce(list(local_block(p, 1, f, shift).coeffs), p)
        exp = phi_expansion(list(g.coeffs), phi, p**10)
        assert len(exp) == e + 1
        assert min(valuation(c, p) for c in exp[0] if c) == 1
        assert all(all(c % p == 0 for c in a) for a in exp[:-1])
        assert exp[-1] == [1]


def test_phi_classes_distinct():
    for p, f in [(2, 1), (2, 2), (3, 1), (3, 2)]:
        classes = [tuple(c[2]) for c in phi_classes(p, f)]
        assert len(classes) == len(set(classes)) == ff.count_irreducible(p, f)


# ---- synthesis ------------------------------------------------------------------------


def crt_checks(res, targets, h):
    F = list(res.polynomial.coeffs)
    m = res.polynomial.degree
    assert F[-1] == 1
    for t in targets:
        N = t.p**h
        prod = [1]
        for b in res.local_blocks:
            if b.p == t.p:
                prod = [c % N for c in _mul(prod, list(b.polynomial.coeffs))]
        assert [c % N for c in F] == prod
    q = res.aux_prime
    assert F[0] % q == 0 and F[0] % (q * q) == q
    assert all(c % (q * q) == 0 for c in F[1:m])


def _mul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def test_synthesize_example_m2():
    targets = [LocalTarget(2, ((1, 1), (1, 1))), LocalTarget(3, ((1, 2),))]
    res = synthesize(targets, h=8)
    assert res.aux_prime == 5
    F = list(res.polynomial.coeffs)
    assert sympy_factor(F, 2) == [([0, 1], 1), ([1, 1], 1)]
    assert sympy_factor(F, 3) == [([c % 3 for c in F], 1)]
    crt_checks(res, targets, 8)
    js = res.to_json()
    assert js["modulus_ledger"] == [{"p": 2, "h": 8}, {"p": 3, "h": 8}, {"p": 5, "h": 2}]


def test_synthesize_linear():
    res = synthesize([LocalTarget(2, ((1, 1),)), LocalTarget(3, ((1, 1),))])
    assert res.polynomial.degree == 1
    assert res.aux_prime == 5


def test_synthesize_validation():
    with pytest.raises(ValueError, match="sum e\\*f"):
        synthesize([LocalTarget(2, ((1, 2),)), LocalTarget(3, ((1, 1),))])
    with pytest.raises(ValueError, match="distinct"):
        synthesize([LocalTarget(2, ((1, 1),)), LocalTarget(2, ((1, 1),))])
    with pytest.raises(ValueError, match="auxiliary"):
        synthesize([LocalTarget(2, ((1, 1),))], q_hint=2)
    with pytest.raises(ValueError):
        LocalTarget(4, ((1, 1),))
    with pytest.raises(ValueError):
        synthesize([])


def test_synthesize_respects_q_hint():
    res = synthesize([LocalTarget(2, ((2, 1),))], q_hint=7)
    assert res.aux_prime == 7
    assert is_eisenstein(res.polynomial, 7)


def test_shared_classes_get_distinct_slopes():
    # three ramified primes of residue degree 1 above 2, but only two linear classes mod 2
    target = LocalTarget(2, ((2, 1), (2, 1), (2, 1)))
    res = synthesize([target])
    slopes = {}
    for b in res.local_blocks:
        slopes.setdefault((b.index, b.shift), []).append(b.slope)
    assert sorted(len(v) for v in slopes.values()) == [1, 2]
    for v in slopes.values():
        if len(v) > 1:
            assert len(set(v)) == len(v)
    rep = analyze_local(res.polynomial, 2)
    assert rep.certified and rep.pairs() == [(2, 1)] * 3


def test_synthesize_72_radical_power_target():
    targets = [LocalTarget(2, ((2, 1),) * 3), LocalTarget(3, ((3, 1),) * 2)]
    res = synthesize(targets)
    crt_checks(res, targets, dict(res.modulus_ledger)[2])
    assert analyze_local(res.polynomial, 2).pairs() == [(2, 1)] * 3
    assert analyze_local(res.polynomial, 3).pairs() == [(3, 1)] * 2


@settings(max_examples=40, deadline=None)
@given(s=systems(max_m=6, primes=[2, 3, 5]))
def test_realize_random_systems(s):
    res = realize_system(s)
    assert res.polynomial.degree == s.m
    for d, rows in s.entries:
        rep = analyze_local(res.polynomial, int(d.id))
        assert rep.pairs() == sorted((b.e, b.f) for b in rows)
        assert sum(e * f for e, f in rep.pairs()) == s.m


def test_realize_scaled_m2_system():
    s = system_over_primes(2, [[(1, 1), (1, 1)], [(2, 1)]], [2, 3])
    big, _ = scale_ramification(s)
    res = realize_system(big)
    assert res.polynomial.degree == 4


def test_realize_trivial_system():
    s, _ = radical_power_system(IdealFactorization.over_integers([(2, 1), (3, 1)]))
    assert realize_system(s).polynomial.degree == 1


def test_targets_from_system_errors():
    k = ResidueFieldDesc.abstract("K")
    s = ConsistentSystem(1, ((DvrLabel("V", k), (behavior(k, 1, 1),)),))
    with pytest.raises(ValueError, match="rational prime"):
        targets_from_system(s)
    s = ConsistentSystem(1, ((DvrLabel(2, ResidueFieldDesc.finite(2, 2)), (behavior(ResidueFieldDesc.finite(2, 2), 1, 1),)),))
    with pytest.raises(ValueError, match="GF\\(2\\)"):
        targets_from_system(s)
    with pytest.raises(ValueError, match="exceeds"):
        realize_system(system_over_primes(4, [[(4, 1)]], [2]), max_degree=3)


def test_realize_error_type():
    assert issubclass(RealizationError, RuntimeError)
