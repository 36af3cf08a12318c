import itertools
import random

import pytest

from mdrkit.algebra import mv_oracle
from mdrkit.formula import Consecution, Substitution, parse_consecution, parse_formula
from mdrkit.multiset import EMPTY, Multiset
from mdrkit.proofs import (
    Derivation, Justification, ProofError, TreeNode, builtin_system, check_derivation,
    check_tree_proof, concatenate, find_instance, load_system, mdr_from_tcr, parse_derivation,
    parse_tree, random_derivation, search_derivation, split_derivation, tree_to_derivation,
)

F = parse_formula
MV_S = builtin_system("MV_s")
MV = builtin_system("MV")


def c(s):
    return parse_consecution(s)


def fm(*xs):
    return Multiset(F(x) for x in xs)


MP_CERT = """\
step: [p, p -> q]
by: MP subst: {p=p, q=q} at: [p, p -> q]
step: [q]
"""


# --- systems -------------------------------------------------------------------------

def test_load_system_names_and_errors():
    s = load_system("axiom: [] |> [p -> p]\nrule: [p, p -> q] |> [q]  # mp\nrule X: [p] |> [p, p]")
    assert [x.name for x in s.schemata] == ["A1", "R1", "X"]
    assert not s.single_conclusion
    assert [x.name for x in s.axioms] == ["A1"]
    for bad in ["axiom: [p] |> [q]", "rule: [] |> [q]", "rule A: [p] |> [q]\nrule A: [q] |> [p]",
                "lemma: [] |> [p]", "axiom: [] |> [p ->]"]:
        with pytest.raises(ProofError):
            load_system(bad)


def test_builtin_systems():
    assert MV_S.single_conclusion and not MV.single_conclusion
    assert MV.get("FusElim").consecution == c("[p*q] |> [p,q]")
    assert MV_S.get("MP").consecution == c("[p, p -> q] |> [q]")
    with pytest.raises(ProofError):
        builtin_system("S5")


def test_every_shipped_axiom_passes_the_oracle():
    for ax in MV_S.axioms:
        v = mv_oracle(ax.consecution, max_chain=11, samples=200)
        assert v.valid, ax.name


# --- certificates ---------------------------------------------------------------------

def test_modus_ponens_certificate():
    d = parse_derivation(MP_CERT)
    assert check_derivation(MV_S, d, c("[p, p->q] |> [q]")).ok
    assert parse_derivation(d.to_text()).to_text() == d.to_text()
    # a stronger claim is rejected at the last step
    v = check_derivation(MV_S, d, c("[p, p->q] |> [q, q]"))
    assert not v.ok and v.step == 2


def test_checker_pinpoints_the_bad_step():
    text = MP_CERT + "by: MP subst: {p=q, q=r} at: [q, q -> r]\nstep: [r]\n"
    v = check_derivation(MV_S, parse_derivation(text), c("[p, p->q] |> [r]"))
    assert not v.ok and v.step == 3 and "not contained" in v.message
    wrong_result = MP_CERT.replace("step: [q]", "step: [q, q]")
    v = check_derivation(MV_S, parse_derivation(wrong_result), c("[p, p->q] |> [q]"))
    assert not v.ok and v.step == 2 and "expected [q]" in v.message
    wrong_at = MP_CERT.replace("at: [p, p -> q]", "at: [p]")
    assert check_derivation(MV_S, parse_derivation(wrong_at), c("[p, p->q] |> [q]")).step == 2
    unknown = MP_CERT.replace("by: MP", "by: Cut")
    assert "Cut" in check_derivation(MV_S, parse_derivation(unknown), c("[p, p->q] |> [q]")).message
    assert check_derivation(MV_S, parse_derivation(MP_CERT), c("[p] |> [q]")).step == 1


def test_malformed_certificates():
    for bad in ["", "by: MP subst: {} at: []", "step: [p]\nstep: [p]",
                "step: [p]\nby: MP subst: {} at: []", "step: [p]\nby: MP at: []\nstep: [q]",
                "step: [p ->]", "step: [p]\nfoo"]:
        with pytest.raises(ProofError):
            parse_derivation(bad)


def test_fusion_elimination_then_modus_ponens():
    text = """\
step: [p * q, p -> r]
by: FusElim subst: {p=p, q=q} at: [p * q]
step: [p, q, p -> r]
by: MP subst: {p=p, q=r} at: [p, p -> r]
step: [q, r]
"""
    assert check_derivation(MV, parse_derivation(text), c("[p*q, p->r] |> [q, r]")).ok
    assert not check_derivation(MV_S, parse_derivation(text), c("[p*q, p->r] |> [q, r]")).ok


# --- the MDR properties of derivability -----------------------------------------------------

def _accepted(rng, n):
    out = []
    while len(out) < n:
        d, phi = random_derivation(MV_S, rng, 6)
        if phi is not None:
            out.append((d, Consecution(d.start, Multiset([phi]))))
    return out


def test_closure_properties_on_random_derivations():
    rng = random.Random(11)
    sigma = Substitution({"p": F("q -> r"), "q": F("p * p")})
    ctx = fm("r", "p & q")
    for d, claim in _accepted(rng, 40):
        assert check_derivation(MV_S, d, claim).ok
        # substitution invariance
        ds = d.substitute(sigma)
        assert check_derivation(MV_S, ds, Consecution(claim.premises.map(sigma), claim.conclusions.map(sigma))).ok
        # compatibility
        assert check_derivation(MV_S, d.add_context(ctx),
                                Consecution(claim.premises + ctx, claim.conclusions + ctx)).ok
    # generalized reflexivity: the one-step derivation
    assert check_derivation(MV_S, Derivation([fm("p", "q")], []), c("[p, q] |> [q]")).ok


def test_concatenation_is_transitivity():
    d1 = parse_derivation(MP_CERT)
    d2 = parse_derivation("step: [q]\nby: K subst: {p=q, q=p} at: []\nstep: [q, q -> p -> q]\n"
                          "by: MP subst: {p=q, q=p -> q} at: [q, q -> p -> q]\nstep: [p -> q]\n")
    assert check_derivation(MV_S, d2, c("[q] |> [p -> q]")).ok
    d = concatenate(d1.add_context(fm("r")), d2)
    assert check_derivation(MV_S, d, c("[p, p -> q, r] |> [p -> q, r]")).ok
    with pytest.raises(ProofError):
        concatenate(d2, d1)


# --- search ------------------------------------------------------------------------------

@pytest.mark.parametrize("claim,system,depth", [
    ("[p, p->q] |> [q]", "MV_s", 2),
    ("[p*q] |> [p,q]", "MV", 2),
    ("[p*q, q->r] |> [p,r]", "MV", 3),
    ("[p*q, p->r] |> [q,r]", "MV", 3),
    ("[p, q] |> [q]", "MV", 1),
])
def test_search_finds_curated_claims(claim, system, depth):
    res = search_derivation(builtin_system(system), c(claim), max_depth=4)
    assert res.found and res.depth == depth
    assert check_derivation(builtin_system(system), res.derivation, c(claim)).ok


def test_search_is_deterministic():
    a = search_derivation(MV, c("[p*q, q->r] |> [p,r]"), 4)
    b = search_derivation(MV, c("[p*q, q->r] |> [p,r]"), 4)
    assert a.derivation.to_text() == b.derivation.to_text()


def test_invalid_claims_are_never_found():
    assert search_derivation(MV, c("[p] |> [p, p]"), max_depth=5).status == "exhausted"
    for s in ["[] |> [p]", "[] |> [q]"]:
        assert not search_derivation(MV, c(s), max_depth=4).found


def test_search_budget():
    res = search_derivation(MV, c("[p] |> [p, p]"), max_depth=6, node_limit=50)
    assert res.status == "budget" and res.derivation is None


# --- trees ---------------------------------------------------------------------------------

MP_TREE = """\
b :: rule MP {p=a,q=b}
  a :: hyp
  a -> b :: hyp
"""


def test_tree_text_roundtrip_and_conversion():
    t = parse_tree(MP_TREE)
    assert t.to_text() + "\n" == MP_TREE
    assert check_tree_proof(MV_S, t, fm("a", "a -> b"), F("b")).ok
    d = tree_to_derivation(MV_S, t, fm("a", "a -> b"))
    assert len(d) == 2 and check_derivation(MV_S, d, c("[a, a->b] |> [b]")).ok


def test_axiom_only_tree():
    t = parse_tree("p -> p :: axiom")
    assert check_tree_proof(MV_S, t, EMPTY, F("p -> p")).ok
    assert t.rule == "Id"
    d = tree_to_derivation(MV_S, t, EMPTY)
    assert d.steps == [EMPTY, fm("p -> p")]


def test_nested_tree_of_depth_three():
    text = """\
r :: rule
  q :: rule
    p :: hyp
    p -> q :: hyp
  q -> r :: rule
    s :: hyp
    s -> q -> r :: hyp
"""
    t = parse_tree(text)
    prem = fm("p", "p -> q", "s", "s -> q -> r")
    assert check_tree_proof(MV_S, t, prem, F("r")).ok
    d = tree_to_derivation(MV_S, t, prem)
    assert check_derivation(MV_S, d, Consecution(prem, fm("r"))).ok


def test_rejected_trees():
    assert not check_tree_proof(MV_S, parse_tree("q :: hyp"), fm("p"), F("q")).ok
    assert not check_tree_proof(MV_S, parse_tree("p :: axiom"), EMPTY, F("p")).ok
    bad_rule = "q :: rule\n  p :: hyp\n  q -> p :: hyp\n"
    assert not check_tree_proof(MV_S, parse_tree(bad_rule), fm("p", "q -> p"), F("q")).ok
    with pytest.raises(ProofError):
        check_tree_proof(MV, parse_tree("p :: hyp"), fm("p"), F("p"))
    for bad in ["", "p", "p :: lemma", "p :: hyp\nq :: hyp"]:
        with pytest.raises(ProofError):
            parse_tree(bad)


def test_split_single_modus_ponens():
    d = parse_derivation(MP_CERT)
    sp = split_derivation(MV_S, d, c("[p, p->q] |> [q]"), F("q"))
    assert sp.gamma_phi == fm("p", "p -> q") and sp.gamma_rest == EMPTY
    assert sp.tree.to_text() == "q :: rule MP {}\n  p :: hyp\n  p -> q :: hyp"
    assert sp.rest.steps == [EMPTY]


def test_split_trivial_derivation():
    d = Derivation([fm("p", "q", "r")], [])
    sp = split_derivation(MV_S, d, c("[p, q, r] |> [p, q]"), F("p"))
    assert sp.tree.kind == "hyp" and sp.gamma_phi == fm("p")
    assert check_derivation(MV_S, sp.rest, Consecution(sp.gamma_rest, fm("q"))).ok


def test_split_two_conclusions():
    text = MP_CERT.replace("step: [p, p -> q]", "step: [p, p -> q, r, r -> s]") \
                  .replace("step: [q]", "step: [q, r, r -> s]") \
        + "by: MP subst: {p=r, q=s} at: [r, r -> s]\nstep: [q, s]\n"
    d = parse_derivation(text)
    claim = c("[p, p->q, r, r->s] |> [q, s]")
    assert check_derivation(MV_S, d, claim).ok
    sp = split_derivation(MV_S, d, claim, F("s"))
    assert sp.gamma_phi == fm("r", "r -> s") and sp.gamma_rest == fm("p", "p -> q")
    assert check_tree_proof(MV_S, sp.tree, sp.gamma_phi, F("s")).ok
    assert check_derivation(MV_S, sp.rest, Consecution(sp.gamma_rest, fm("q"))).ok


def test_split_preconditions():
    d = parse_derivation(MP_CERT)
    with pytest.raises(ProofError):
        split_derivation(MV_S, d, c("[p, p->q] |> [q]"), F("p"))
    with pytest.raises(ProofError):
        split_derivation(MV, d, c("[p, p->q] |> [q]"), F("q"))


def test_split_then_rebuild_random():
    rng = random.Random(3)
    for d, claim in _accepted(rng, 30):
        (phi,) = list(claim.conclusions)
        sp = split_derivation(MV_S, d, claim, phi)
        assert sp.gamma_phi + sp.gamma_rest == claim.premises
        d2 = tree_to_derivation(MV_S, sp.tree, sp.gamma_phi)
        assert check_derivation(MV_S, d2, Consecution(sp.gamma_phi, claim.conclusions)).ok


def test_find_instance():
    s, sub = find_instance(MV_S, fm("a", "a -> b * c"), fm("b * c"))
    assert s.name == "MP" and sub(F("q")) == F("b * c")
    assert find_instance(MV_S, fm("a"), fm("b")) is None


# --- the set-based encoding ------------------------------------------------------------------

def _identity_tcr(x, psi):
    return psi in x


def _classical_and(x, psi):
    # truth-table consequence over conjunction and variables
    names = sorted({str(v) for f in list(x) + [psi] for v in _vars(f)})
    for bits in itertools.product([False, True], repeat=len(names)):
        val = dict(zip(names, bits))
        if all(_ev(f, val) for f in x) and not _ev(psi, val):
            return False
    return True


def _vars(f):
    from mdrkit.formula import variables_of
    return variables_of([f])


def _ev(f, val):
    s = str(f)
    if "&" in s:
        left, right = s.split("&", 1)
        return _ev(F(left), val) and _ev(F(right), val)
    return val[s.strip()]


def test_mdr_from_tcr():
    assert mdr_from_tcr(_identity_tcr, fm("p"), EMPTY)
    assert mdr_from_tcr(_identity_tcr, fm("p", "p"), fm("p", "p", "p"))
    assert not mdr_from_tcr(_identity_tcr, fm("p"), fm("q"))
    assert mdr_from_tcr(_classical_and, fm("p & q"), fm("p", "q"))
    assert not mdr_from_tcr(_classical_and, fm("p"), fm("p & q"))
