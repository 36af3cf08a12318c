import random
from fractions import Fraction

import pytest

from mdrkit.algebra import FiniteAlgebra, LukChain, constants_algebra
from mdrkit.formula import parse_consecution
from mdrkit.matrices import (
    FuzzyMatrix, Hypermatrix, MonoidMatrix, all_partitions, compatible, filter_generate,
    from_hyper, gentzen_bridge, hyper_consequence, hyper_refutation, identity_fuzzy,
    identity_partition, is_congruence, leibniz, leibniz_brute_force, reduce_model,
    roundtrip_check, to_hyper, to_multisets, to_sequents, total_partition, fuzzy_consequence,
)
from mdrkit.multiset import Multiset
from mdrkit.proofs import load_system
from mdrkit.structfile import load_structure_file
from mdrkit.structures import FinitePomonoid, StructureError


def M(*xs):
    return Multiset(xs)


@pytest.fixture
def two():
    return constants_algebra(["0", "1"])


@pytest.fixture
def f01(two):
    return Hypermatrix(two, [M(0, 1)], "F01")


def c(s):
    return parse_consecution(s)


# --- consequence -----------------------------------------------------------------

def test_contextual_and_plain_consequence_differ(f01):
    # [0] sits in the filter, [1] too, but the context [1] separates them
    assert hyper_consequence(f01, c("[0] |> [1]"), "plain")
    assert not hyper_consequence(f01, c("[0] |> [1]"))
    val, ctx = hyper_refutation(f01, c("[0] |> [1]"))
    assert ctx == M(1)
    # adding the context to both sides breaks the plain variant
    assert not hyper_consequence(f01, c("[0, 1] |> [1, 1]"), "plain")


def test_generalized_reflexivity_in_a_random_hypermatrix():
    alg = LukChain(3)
    h = Hypermatrix(alg, [M(2, 2), M(1)])
    for s in ["[p, q] |> [p]", "[p] |> []", "[p, p] |> [p]", "[] |> []"]:
        assert hyper_consequence(h, c(s))


def test_generator_outside_the_carrier_is_rejected(two):
    with pytest.raises(StructureError):
        Hypermatrix(two, [M(5)])


def test_structure_file_hypermatrix(fixtures):
    objs = load_structure_file(fixtures / "hyper.txt")
    h = objs["L3top"]
    assert h.generators == [M(1), M(2, 2, 2)]
    assert hyper_consequence(h, c("[p, p -> q] |> [q]"))
    assert not hyper_consequence(h, c("[p] |> [p, p]"))


# --- filter generation -------------------------------------------------------------

def test_empty_system_leaves_the_seed(two):
    empty = load_system("")
    res = filter_generate(empty, two, [])
    assert res.hypermatrix.generators == [Multiset()]
    assert not res.truncated and res.verified


def test_modus_ponens_on_the_two_element_chain():
    mp = load_system("rule MP: [p, p -> q] |> [q]")
    alg = LukChain(2)
    # a single 1 cannot feed a two-premise rule
    res = filter_generate(mp, alg, [M(1)])
    assert res.hypermatrix.generators == [M(1)] and res.verified
    # [1, 1] -> [1] and [0, 1] -> [0] are absorbed, [1,0] stays as is
    res = filter_generate(mp, alg, [M(0, 1)])
    assert res.hypermatrix.generators == [M(0, 1)] and res.verified
    # [1, 1, 0]: 1 -> 0 is 0, so [1, 0] yields [0], nothing new
    res = filter_generate(mp, alg, [M(1, 1)])
    assert res.hypermatrix.generators == [M(1, 1)]


def test_fusion_elimination_seed_truncates():
    elim = load_system("rule FusElim: [p * q] |> [p, q]")
    alg = LukChain(2)
    # 1 = 1*1 so [1] grows without bound
    res = filter_generate(elim, alg, [M(1)], size_cap=5)
    assert res.truncated and res.verified is None
    assert max(len(g) for g in res.hypermatrix.generators) == 5


def test_generated_filter_is_a_model_of_the_system():
    mp = load_system("rule MP: [p, p -> q] |> [q]")
    alg = LukChain(3)
    res = filter_generate(mp, alg, [M(2, 1)])
    assert not res.truncated and res.verified
    # the only applicable instance is p = q = 1/2, which gives back [1/2]
    assert res.hypermatrix.generators == [M(1, 2)]
    res = filter_generate(mp, alg, [M(1, 2, 2)])
    # every instance inside [1/2, 1, 1] replaces two elements by one
    assert res.hypermatrix.generators == [M(1, 2, 2)]


# --- Leibniz congruence --------------------------------------------------------------

def test_leibniz_of_the_constants_example(two, f01):
    assert leibniz(f01) == identity_partition(2)
    # the empty downset identifies everything
    assert leibniz(Hypermatrix(two, [])) == total_partition(2)


def _random_algebra(rng, n):
    ops = {}
    if rng.random() < 0.8:
        ops["*"] = [[rng.randrange(n) for _ in range(n)] for _ in range(n)]
    if rng.random() < 0.5:
        ops["->"] = [[rng.randrange(n) for _ in range(n)] for _ in range(n)]
    consts = {"1": rng.randrange(n)} if rng.random() < 0.5 else {}
    return FiniteAlgebra([str(i) for i in range(n)], ops, consts, "rnd")


def _random_gens(rng, n):
    return [Multiset(rng.randrange(n) for _ in range(rng.randint(0, 2))) for _ in range(rng.randint(1, 3))]


def _oracle_leibniz(h):
    # maximum among all compatible congruences, found by scanning every partition
    best = None
    for p in all_partitions(h.algebra.n):
        if not is_congruence(h.algebra, p) or not compatible(h, p):
            continue
        if best is None or len(set(p)) < len(set(best)):
            best = p
    return best


def test_leibniz_matches_brute_force():
    rng = random.Random(4)
    for _ in range(120):
        n = rng.randint(1, 3)
        h = Hypermatrix(_random_algebra(rng, n), _random_gens(rng, n))
        assert leibniz(h) == leibniz_brute_force(h) == _oracle_leibniz(h)


def test_reduce_model_is_idempotent():
    rng = random.Random(5)
    for _ in range(60):
        n = rng.randint(1, 3)
        h = reduce_model(Hypermatrix(_random_algebra(rng, n), _random_gens(rng, n)))
        assert leibniz(h) == identity_partition(h.algebra.n)
        h2 = reduce_model(h)
        assert h2.algebra.n == h.algebra.n and h2.generators == h.generators


def test_reduction_preserves_consequence():
    h = Hypermatrix(LukChain(3), [M(2, 2)])
    r = reduce_model(h)
    for s in ["[p, p -> q] |> [q]", "[p] |> [p, p]", "[p * q] |> [p, q]"]:
        assert hyper_consequence(h, c(s)) == hyper_consequence(r, c(s))


# --- sequents ------------------------------------------------------------------------

def test_gentzen_roundtrip(f01):
    s = to_sequents(f01)
    assert (0, 1) in s.sequences and (1, 0) in s.sequences and () in s.sequences
    assert to_multisets(s) == f01
    with pytest.raises(TypeError):
        gentzen_bridge(s, "to_sequents")
    with pytest.raises(ValueError):
        gentzen_bridge(f01, "sideways")


# --- monoid matrices ---------------------------------------------------------------

def _chain2():
    return FinitePomonoid(["0", "1"], [[True, True], [False, True]], [[0, 1], [1, 1]], 0, "chain2")


def test_monoid_matrix_roundtrip_and_counterexample():
    alg = LukChain(2)
    D = _chain2()
    good = MonoidMatrix(alg, D, frozenset({0}), (1, 0))
    rep = roundtrip_check(good)
    assert rep.hyper_ok and rep.monoid_ok
    assert to_hyper(good).hypermatrix.generators == [Multiset([1] * 8)]
    # G contains 1 although nothing is sent to 1 by f
    bad = MonoidMatrix(alg, D, frozenset({0, 1}), (0, 0))
    rep = roundtrip_check(bad)
    assert rep.hyper_ok and not rep.monoid_ok
    assert "pushed G=[0]" in rep.detail


def test_from_hyper_is_the_identity_embedding(f01):
    m = from_hyper(f01)
    assert m.f(M(0, 1)) == M(0, 1)
    assert to_hyper(m, 3).hypermatrix == f01


# --- fuzzy matrices -----------------------------------------------------------------

def test_identity_designation_and_threshold():
    z = identity_fuzzy(3, Fraction(1, 2))
    assert z.validate().ok
    assert z.designation(M(1, 1)) == 0
    assert fuzzy_consequence([z], c("[p, p -> q] |> [q]"))
    # the family criterion is stricter than contraction's converse
    fam = identity_fuzzy(3)
    assert not fuzzy_consequence([fam], c("[p] |> [p, p]"))
    assert fuzzy_consequence([fam], c("[p, p] |> [p]"))


def test_square_designation_is_rejected():
    # on three elements squaring happens to respect fusion
    ch = LukChain(3)
    assert FuzzyMatrix(ch, tuple(ch.value(i) ** 2 for i in range(3))).validate().ok
    ch = LukChain(5)
    sq = FuzzyMatrix(ch, tuple(ch.value(i) ** 2 for i in range(5)), Fraction(1, 2))
    rep = sq.validate()
    assert rep.axioms() == ["preserves fusion"]
    with pytest.raises(StructureError):
        fuzzy_consequence([sq], c("[p] |> [p]"))
