import pytest

from mdrkit.actions import (
    ModuleMorphism, action_invariant_check, cyclic_projective_witness, kernel_do,
    mult_l_witness, quotient_module,
)
from mdrkit.deductive import dr_to_do, enumerate_drs, validate_do
from mdrkit.formula import Substitution, Var, sigma_action, subst_product
from mdrkit.multiset import Multiset
from mdrkit.structfile import load_structure_file
from mdrkit.structures import StructureError, chain_semiring, regular_module, truncated_semiring


def test_non_invariant_operator(fixtures):
    env = load_structure_file(fixtures / "structures.txt")
    m, d = env["M"], env["collapse"]
    assert validate_do(d).ok
    ok, w = action_invariant_check(m, d)
    # 2 in d(1) but 1*2 = 2 is not in d(1*1) = d(0) = {0}
    assert not ok and w == ("1", "2", "1")
    with pytest.raises(StructureError):
        quotient_module(m, d)


@pytest.mark.parametrize("s", [chain_semiring(3), truncated_semiring(3)], ids=lambda s: s.name)
def test_quotients_of_invariant_operators(s):
    m = regular_module(s)
    for dr in enumerate_drs(m.carrier).items:
        d = dr_to_do(dr)
        ok, _ = action_invariant_check(m, d)
        if ok:
            q = quotient_module(m, d)
            assert q.report.ok, q.report
            assert q.module.carrier.n == len(set(d.images))


def test_kernel_of_identity_and_collapse():
    m = regular_module(truncated_semiring(3))
    ident = kernel_do(ModuleMorphism(m, m, (0, 1, 2)))
    assert ident.report.ok
    # kernel of the identity: f*(a) = downset of a
    assert ident.operator.images == (frozenset({0}), frozenset({0, 1}), frozenset({0, 1, 2}))


def test_finite_cyclic_witness():
    m = regular_module(truncated_semiring(3))
    ok, rep = cyclic_projective_witness(m, 1, 1)
    assert ok, rep
    ok, rep = cyclic_projective_witness(m, 0, 1)
    assert not ok and "A*{v} = R" in rep.axioms()


def test_formula_module_witness():
    w = mult_l_witness(samples=300, seed=3)
    assert w.ok
    assert w.premise_held > 100  # the implication is not vacuous


def test_reflection_fails_without_collapsing_mu():
    # with mu = [identity] reflection would demand X <= Y, which is false here
    v = Multiset([Var("x")])
    X = Multiset([Substitution({"x": Var("y"), "z": Var("y")})])
    Y = Multiset([Substitution({"x": Var("y")})])
    assert sigma_action(X, v) <= sigma_action(Y, v)
    assert not subst_product(X, Multiset([Substitution()])) <= subst_product(Y, Multiset([Substitution()]))
    sigma = Multiset([Substitution({"x": Var("x"), "y": Var("x"), "z": Var("x")})])
    assert subst_product(X, sigma) <= subst_product(Y, sigma)
