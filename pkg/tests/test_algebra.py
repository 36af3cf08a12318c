from fractions import Fraction

import numpy as np
import pytest

from mdrkit.algebra import (
    FiniteRLAlgebra, LukChain, check_mv_witness, constants_algebra, eval_exact, first_refutation,
    mv_oracle, rl_consequence,
)
from mdrkit.formula import parse_consecution, parse_formula
from mdrkit.structures import StructureError


def luk_tables(n):
    vals = [Fraction(i, n - 1) for i in range(n)]
    idx = {v: i for i, v in enumerate(vals)}
    fus = [[idx[max(Fraction(0), a + b - 1)] for b in vals] for a in vals]
    imp = [[idx[min(Fraction(1), 1 - a + b)] for b in vals] for a in vals]
    return fus, imp


@pytest.mark.parametrize("n", [2, 3, 5, 11])
def test_chain_tables_match_formulas(n):
    ch = LukChain(n)
    fus, imp = luk_tables(n)
    assert ch.ops["*"].tolist() == fus
    assert ch.ops["->"].tolist() == imp
    assert ch.validate().ok


def test_l3_frozen():
    ch = LukChain(3)
    assert ch.labels == ("0", "1/2", "1")
    assert ch.ops["*"].tolist() == [[0, 0, 0], [0, 0, 1], [0, 1, 2]]


def test_rl_validation_catches_broken_residuum():
    ch = LukChain(3)
    ops = {k: v.tolist() for k, v in ch.ops.items()}
    ops["->"][1][0] = 2  # 1/2 -> 0 = 1 breaks residuation
    bad = FiniteRLAlgebra(ch.labels, ops, 2)
    assert "residuation" in bad.validate().axioms()


def test_unknown_symbol_raises():
    a = constants_algebra(["0", "1"])
    with pytest.raises(StructureError):
        a.evaluate(parse_formula("0 * 1"), {})


@pytest.mark.parametrize("claim", [
    "[p, p -> q] |> [q]",
    "[p * q] |> [p, q]",
    "[p * q, q -> r] |> [p, r]",
    "[] |> [(p -> q) | (q -> p)]",
    "[] |> [((p -> q) -> q) -> ((q -> p) -> p)]",
])
def test_oracle_valid(claim):
    v = mv_oracle(parse_consecution(claim))
    assert v.valid and v.label == "Valid≤11"


@pytest.mark.parametrize("claim, witness", [
    ("[p] |> [p, p]", {"p": Fraction(1, 2)}),
    ("[] |> [p]", {"p": Fraction(0)}),
    ("[p -> q] |> [q]", {"p": Fraction(0), "q": Fraction(0)}),
])
def test_oracle_invalid_with_least_witness(claim, witness):
    c = parse_consecution(claim)
    v = mv_oracle(c)
    assert not v.valid and v.witness == witness
    assert check_mv_witness(c, v.witness)


def test_witness_text():
    v = mv_oracle(parse_consecution("[p] |> [p, p]"))
    assert str(v) == "Invalid p=1/2" and v.chain == 3


def test_sampling_phase_finds_counterexamples_beyond_the_chains():
    # excluded middle holds on the 2-chain, so only the sampling phase can refute it
    c = parse_consecution("[] |> [p | (p -> 0)]")
    v = mv_oracle(c, max_chain=2, samples=100)
    assert not v.valid and v.source == "sample"
    assert 0 < v.witness["p"] < 1 and check_mv_witness(c, v.witness)
    assert mv_oracle(c, max_chain=2, samples=100) == v  # same seed, same witness


def test_chain_refutations_are_antitone():
    # a refutation in a subchain L_k survives in L_n whenever (k-1) divides (n-1)
    c = parse_consecution("[p] |> [p * p]")
    assert first_refutation(LukChain(2), c) is None
    assert first_refutation(LukChain(3), c) is not None
    assert not rl_consequence([LukChain(5)], c)
    assert rl_consequence([LukChain(2)], c)


def test_exact_evaluation():
    val = {"p": Fraction(1, 3), "q": Fraction(3, 4)}
    assert eval_exact(parse_formula("p * q"), val) == Fraction(1, 12)
    assert eval_exact(parse_formula("q -> p"), val) == Fraction(7, 12)
    assert eval_exact(parse_formula("p | q"), val) == Fraction(3, 4)


def test_vectorised_matches_pointwise():
    ch = LukChain(4)
    f = parse_formula("(p -> q) * (q | r) -> p & r")
    grid, shape = ch.grid(["p", "q", "r"])
    got = ch.evaluate_all(f, grid, shape)
    assert got.shape == (64,)
    for i, val in enumerate(ch.valuations(["p", "q", "r"])):
        assert got[i] == ch.evaluate(f, val)
