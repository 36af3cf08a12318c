from itertools import product

import pytest

from mdrkit import deductive as ded
from mdrkit.structures import StructureError, chain_join, fixture_pomonoids, truncated_sum


def is_dr_oracle(base, rel):
    """Direct reading of the three axioms, independent of the library."""
    E = range(base.n)
    for a, b in product(E, repeat=2):
        if base.leq[a][b] and (b, a) not in rel:
            return False
    for (a, b), c in product(rel, E):
        if (b, c) in rel and (a, c) not in rel:
            return False
        if (base.add[a][c], base.add[b][c]) not in rel:
            return False
    return True


def all_drs_oracle(base):
    pairs = list(product(range(base.n), repeat=2))
    out = set()
    for bits in range(1 << len(pairs)):
        rel = frozenset(p for i, p in enumerate(pairs) if bits >> i & 1)
        if is_dr_oracle(base, rel):
            out.add(rel)
    return out


# counts computed by all_drs_oracle and frozen
DR_COUNTS = {"trivial1": 1, "chain2": 2, "chain3": 4, "N3": 3}


@pytest.mark.parametrize("base", fixture_pomonoids(), ids=lambda b: b.name)
def test_enumeration_matches_oracle(base):
    found = {d.pairs for d in ded.enumerate_drs(base).items}
    assert found == all_drs_oracle(base)
    assert len(found) == DR_COUNTS[base.name]


def test_enumeration_is_sorted_by_matrix():
    items = ded.enumerate_drs(chain_join(3)).items
    assert [d.key() for d in items] == sorted(d.key() for d in items)
    assert items[0] == ded.least_dr(chain_join(3)) or items[0].key() <= ded.least_dr(chain_join(3)).key()


def test_enumeration_guard_and_cap():
    big = chain_join(6)
    with pytest.raises(StructureError):
        ded.enumerate_drs(big)
    e = ded.enumerate_drs(big, cap=3)
    assert len(e.items) == 3 and e.truncated


def test_validate_reports_failing_axioms():
    b = truncated_sum(3)
    d = ded.dr_from_pairs(b, [(0, 0), (1, 1), (2, 2), (1, 0), (2, 1)])  # missing 2|-0
    rep = ded.validate_dr(d)
    # 2|-1 and 1|-0 without 2|-0 also breaks transitivity
    assert rep.axioms() == ["generalised reflexivity", "transitivity"]
    assert rep.first("transitivity").witness == ("2", "1", "0")
    op = ded.do_from_images(b, [{0}, {0}, {0, 1, 2}])
    assert "enlargement" in ded.validate_do(op).axioms()
    ds = ded.ds_from_family(b, [{1}])
    assert "downset" in ded.validate_ds(ds).axioms()


@pytest.mark.parametrize("base", fixture_pomonoids(), ids=lambda b: b.name)
def test_census_and_roundtrips(base):
    c = ded.trinity_census(base)
    assert (c.drs, c.dos, c.dss) == (DR_COUNTS[base.name],) * 3
    assert not any(c.roundtrips.values())


def test_trinity_rejects_invalid_input():
    b = chain_join(2)
    bad = ded.dr_from_pairs(b, [(0, 0)])
    with pytest.raises(StructureError):
        ded.trinity(bad, "do")
    assert ded.trinity(ded.least_dr(b), "ds").family == frozenset({frozenset({0}), frozenset({0, 1})})


def test_theories_on_n3():
    b = truncated_sum(3)
    d = ded.least_dr(b)
    tr = ded.theories(d)
    # least DR on a chain: Th(a) is the downset of a
    assert tr.principal == (frozenset({0}), frozenset({0, 1}), frozenset({0, 1, 2}))
    assert tr.theorems == frozenset({0})
    assert tr.report.ok
    # every theory is an upset under |- and the Th-pomonoid is valid
    for t in tr.theories:
        assert all(y in t for (x, y) in d.pairs if x in t)


def test_do_meet_is_a_do():
    b = truncated_sum(3)
    ops = [ded.dr_to_do(d) for d in ded.enumerate_drs(b).items]
    m = ded.do_meet(ops)
    assert ded.validate_do(m).ok
    assert m == ded.dr_to_do(ded.least_dr(b))


@pytest.mark.parametrize("base", fixture_pomonoids(), ids=lambda b: b.name)
def test_bj_squares_commute(base):
    rep = ded.bj_diagram_check(base)
    assert rep.ok and rep.checked == 6 * DR_COUNTS[base.name]


def test_bj_companion_contains_empty_set():
    b = chain_join(2)
    ds = ded.dr_to_ds(ded.least_dr(b))
    clos = ded.bj_companion(ds)
    assert frozenset() in clos.family


def test_dr_from_acr():
    # a -> b on {a, b}
    acr = ded.acr_from_rules(2, [({0}, 1)])
    assert ded.validate_acr(acr).ok
    d = ded.dr_from_acr(acr)
    assert ded.validate_dr(d).ok
    lab = d.base.labels
    a, ab = lab.index("{a}"), lab.index("{a,b}")
    assert d.entails(a, ab) and not d.entails(lab.index("{b}"), a)
