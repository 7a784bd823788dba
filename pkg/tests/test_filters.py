import random
import threading

import pytest
from hypothesis import given

from vdwtif.algebra import SetAlgebra
from vdwtif.combinatorics import gap_bound, is_piecewise_syndetic, is_syndetic, is_thick, shift_union
from vdwtif.epset import EMPTY, NAT, EpSet, complement, finite, from_bits, intersect, res, shift_left, union
from vdwtif.filters import (
    FipFamily,
    PeriodicityError,
    b_sub_u,
    b_sub_u_ep,
    build_maximal_tif,
    build_ultrafilter,
    fip,
    verify_prop_syndetic,
)
from vdwtif.vdw import build_filters

from conftest import epsets, random_family
from fip_oracles import certificate_ok, complete_fip

ODDS = from_bits("", "10")
NOISY = from_bits("1101", "001")


# -- FIP kernel --------------------------------------------------------------


def test_fip_examples():
    assert fip(FipFamily([NAT - finite([2])], [ODDS]))
    bad = fip(FipFamily([ODDS]))
    assert not bad and set(bad.counterexample) == {ODDS, shift_left(ODDS, 1)}
    assert fip(FipFamily([], [res(0, 3), res(0, 6)]))
    assert fip(FipFamily()).core == NAT


def test_fip_finite_core():
    # finite singles are allowed; the core may be finite
    got = fip(FipFamily([NAT - finite([1])], [finite([1, 5])]))
    assert got and got.core == finite([5])
    assert not fip(FipFamily([NAT - finite([1, 2, 3, 4, 5])], [finite([1, 5])]))


def test_fip_against_complete_oracle():
    rng = random.Random(99)
    for _ in range(400):
        f = random_family(rng)
        got = fip(f)
        assert got.ok == complete_fip(f), f
        if got.ok:
            assert not got.core.is_empty()
            assert all(got.core.issubset(s) for s in f.singles)
        else:
            assert certificate_ok(f, got.counterexample)


@given(epsets(max_a=6, max_p=8))
def test_thick_tif_both_ways(s):
    # a single shift root has FIP exactly when it is thick
    assert bool(fip(FipFamily([s]))) == is_thick(s)


# -- staged constructions ----------------------------------------------------


def test_ultrafilter_over_cofinite_base():
    alg = SetAlgebra([NOISY])
    tif = build_maximal_tif(alg, FipFamily([NAT]), 50)
    uf = build_ultrafilter(alg, tif.as_family(), 50, parent=tif)
    for d in uf.decisions:
        if d.completion:
            continue
        if d.candidate.is_cofinite():
            assert d.accepted
        if d.candidate.is_finite():
            assert not d.accepted
        assert d.accepted == d.certificate.ok
    assert uf.member(NAT) and not uf.member(EMPTY)


def test_stage_rules():
    alg = SetAlgebra([res(0, 3)])
    uf = build_ultrafilter(alg, FipFamily(), 60)
    accepted = []
    for d in uf.decisions:
        if d.completion:
            continue
        if d.candidate.is_empty():
            assert not d.accepted
        if any(x.issubset(d.candidate) for x in accepted):
            assert d.accepted
        if d.accepted:
            accepted.append(d.candidate)
            assert uf.member(d.candidate)


def test_maximal_tif_examples():
    first = build_maximal_tif(SetAlgebra([ODDS]), FipFamily([NAT]), 1).decisions[0]
    assert first.candidate == ODDS and not first.accepted
    first = build_maximal_tif(SetAlgebra([NAT - finite([3])]), FipFamily([NAT]), 1).decisions[0]
    assert first.candidate == NAT - finite([3]) and first.accepted
    assert first.certificate.core == NAT - finite([1, 2, 3])
    alg = SetAlgebra([finite([2, 4])])
    tif = build_maximal_tif(alg, FipFamily([NAT - finite([1])]), 10)
    assert all(not d.accepted for d in tif.decisions if d.candidate.is_finite())
    with pytest.raises(ValueError):
        build_maximal_tif(alg, FipFamily([ODDS]), 5)
    with pytest.raises(ValueError):
        build_maximal_tif(alg, FipFamily([NAT], [ODDS]), 5)


def test_replay_and_invariants():
    _, _, tif, uf = build_filters(NOISY, 120)
    for filt in (tif, uf):
        assert filt.replay() == [(d.n, d.accepted) for d in filt.decisions]
        assert fip(filt.family)
        for d in filt.decisions:
            if not d.accepted:
                assert certificate_ok(_trial_family(filt, d), d.certificate.counterexample)


def _trial_family(filt, decision):
    """Family in force when ``decision`` was taken, plus its candidate."""
    fam = filt.base
    for d in filt.decisions:
        if d is decision:
            break
        if d.accepted:
            fam = fam.with_single(d.candidate) if filt.kind == "ultrafilter" else fam.with_root(d.candidate)
    cand = decision.candidate
    return fam.with_single(cand) if filt.kind == "ultrafilter" else fam.with_root(cand)


def test_ultrafilter_dichotomy_and_ramsey():
    _, _, tif, uf = build_filters(NOISY, 200)
    alg = uf.algebra
    for n in range(1, 201):
        b = alg.element(n)
        assert uf.member(b) != uf.member(complement(b))
    rng = random.Random(4)
    atoms = alg.atoms()
    for _ in range(50):
        chosen = [x for x in atoms if rng.random() < 0.6] or [atoms[0]]
        whole = EMPTY
        for x in chosen:
            whole = union(whole, x)
        pieces = [EMPTY] * rng.randint(1, 3)
        for x in chosen:
            i = rng.randrange(len(pieces))
            pieces[i] = union(pieces[i], x)
        if uf.member(whole):
            assert any(uf.member(p) for p in pieces)
        else:
            assert not any(uf.member(p) for p in pieces)


def test_tif_axioms():
    _, _, tif, _ = build_filters(NOISY, 200)
    alg = tif.algebra
    members = [alg.element(n) for n in range(1, 201)]
    for s in members:
        if tif.member(s):
            assert tif.member(shift_left(s, 1))
            assert is_thick(s)
    accepted = [d.candidate for d in tif.decisions if d.accepted]
    for x in accepted[:10]:
        for y in accepted[:10]:
            assert tif.member(intersect(x, y))
    assert not tif.member(EMPTY)


def test_membership_needs_algebra():
    _, _, tif, uf = build_filters(res(0, 3), 20)
    with pytest.raises(ValueError):
        uf.member(res(0, 5))


def test_completed_filter_refuses_more_stages():
    _, _, _, uf = build_filters(res(0, 3), 10)
    with pytest.raises(RuntimeError):
        uf.run(20)


def test_concurrent_members_agree():
    _, _, _, uf = build_filters(NOISY, 80)
    alg = uf.algebra
    expected = [uf.member(alg.element(n)) for n in range(1, 81)]
    results = [None] * 4

    def worker(i):
        results[i] = [uf.member(alg.element(n)) for n in range(1, 81)]

    threads = [threading.Thread(target=worker, args=(i,)) for i in range(4)]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    assert all(r == expected for r in results)


# -- B_U and Prop. syndetic ----------------------------------------------------


def test_b_sub_u_examples():
    _, _, _, uf = build_filters(res(0, 3), 60)
    assert b_sub_u_ep(uf, NAT).value == NAT
    bu = b_sub_u_ep(uf, res(0, 3)).value
    win = b_sub_u(uf, res(0, 3), 30)
    for n in range(1, 31):
        assert bu.member(n) == win.member(n) == uf.member(shift_left(res(0, 3), n))
    assert b_sub_u_ep(uf, EMPTY).value == EMPTY


def test_b_sub_u_shift_identity():
    # (B - l)_U = B_U - l, checked pointwise
    _, _, _, uf = build_filters(NOISY, 100)
    b = NOISY
    bu = b_sub_u_ep(uf, b).value
    for ell in range(6):
        assert b_sub_u_ep(uf, shift_left(b, ell)).value == shift_left(bu, ell)


def test_b_sub_u_periodicity_failure():
    _, _, _, uf = build_filters(res(0, 3), 20)
    with pytest.raises(PeriodicityError):
        b_sub_u_ep(uf, res(0, 3), horizon=2)


def test_prop_syndetic():
    _, _, tif, uf = build_filters(NOISY, 200)
    sample = [uf.algebra.element(n) for n in range(1, 200)]
    checks = verify_prop_syndetic(uf, sample)
    in_u = [c for c in checks if c.in_u]
    assert len(in_u) >= 20
    for c in checks:
        assert c.passed
    for c in in_u:
        assert is_piecewise_syndetic(c.b) and is_syndetic(c.b_u)
        assert c.gap == gap_bound(c.b_u)
        assert tif.member(shift_union(c.b, c.cover))
    skipped = [c for c in checks if not c.in_u]
    assert skipped and all(c.b_u is None for c in skipped)


def test_prop_syndetic_nat():
    _, _, tif, uf = build_filters(res(0, 3), 30)
    (c,) = verify_prop_syndetic(uf, [NAT])
    assert c.passed and c.cover == (0,)


def test_prop_syndetic_needs_tif():
    alg = SetAlgebra([res(0, 3)])
    uf = build_ultrafilter(alg, FipFamily(), 10)
    with pytest.raises(ValueError):
        verify_prop_syndetic(uf, [NAT])
