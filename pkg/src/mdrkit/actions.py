"""Action-invariant deductive operators on finite modules, quotients and kernels."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import product
from typing import Sequence

from .deductive import DeductiveOperator, validate_do
from .formula import BINARY, Formula, Substitution, Var, sigma_action, subst_product
from .multiset import Multiset
from .structures import FiniteModule, FinitePomonoid, FinitePoSemiring, Report, StructureError


def action_invariant_check(m: FiniteModule, d: DeductiveOperator):
    """``(True, None)`` or ``(False, (sigma, a, b))`` with ``a in d(b)`` but ``s*a`` not in ``d(s*b)``."""
    if d.base.n != m.carrier.n:
        raise StructureError("operator and module carrier differ")
    S, R = m.scalars, m.carrier
    for s, b in product(range(S.n), range(R.n)):
        target = d.images[m.act[s][b]]
        for a in sorted(d.images[b]):
            if m.act[s][a] not in target:
                return False, (S.labels[s], R.labels[a], R.labels[b])
    return True, None


@dataclass
class ModuleMorphism:
    source: FiniteModule
    target: FiniteModule
    table: tuple  # table[a] = image index

    def __call__(self, a: int) -> int:
        return self.table[a]


def validate_morphism(f: ModuleMorphism) -> Report:
    r = Report()
    A, B = f.source.carrier, f.target.carrier
    if f.source.scalars.n != f.target.scalars.n:
        raise StructureError("morphism between modules over different scalars")
    if len(f.table) != A.n or any(not 0 <= v < B.n for v in f.table):
        raise StructureError("morphism table out of range")
    t = f.table
    if t[A.zero] != B.zero:
        r.add("preserves zero", A.labels[A.zero])
    for a, b in product(range(A.n), repeat=2):
        if t[A.add[a][b]] != B.add[t[a]][t[b]]:
            r.add("preserves sum", A.labels[a], A.labels[b])
        if A.leq[a][b] and not B.leq[t[a]][t[b]]:
            r.add("monotone", A.labels[a], A.labels[b])
    for s, a in product(range(f.source.scalars.n), range(A.n)):
        if t[f.source.act[s][a]] != f.target.act[s][t[a]]:
            r.add("preserves action", f.source.scalars.labels[s], A.labels[a])
    return r


@dataclass
class Quotient:
    module: FiniteModule
    projection: tuple  # projection[a] = index of d(a) among the quotient elements
    classes: list  # quotient elements as frozensets
    report: Report = field(default_factory=Report)


def quotient_module(m: FiniteModule, d: DeductiveOperator) -> Quotient:
    """The module on ``d(R)`` ordered by inclusion, with ``d`` as projection."""
    ok, w = action_invariant_check(m, d)
    if not ok:
        raise StructureError(f"operator is not action-invariant: {w}")
    R, S = m.carrier, m.scalars
    rep = Report()
    classes = sorted(set(d.images), key=lambda s: (len(s), sorted(s)))
    idx = {c: i for i, c in enumerate(classes)}
    proj = tuple(idx[d.images[a]] for a in range(R.n))
    k = len(classes)
    add = [[None] * k for _ in range(k)]
    for a, b in product(range(R.n), repeat=2):
        i, j, v = proj[a], proj[b], proj[R.add[a][b]]
        if add[i][j] is None:
            add[i][j] = v
        elif add[i][j] != v:
            rep.add("sum well defined", R.labels[a], R.labels[b], internal=True)
    act = [[None] * k for _ in range(S.n)]
    for s, a in product(range(S.n), range(R.n)):
        i, v = proj[a], proj[m.act[s][a]]
        if act[s][i] is None:
            act[s][i] = v
        elif act[s][i] != v:
            rep.add("action well defined", S.labels[s], R.labels[a], internal=True)
    labels = ["{" + ",".join(R.labels[x] for x in sorted(c)) + "}" for c in classes]
    carrier = FinitePomonoid(
        labels,
        [[c1 <= c2 for c2 in classes] for c1 in classes],
        [[v or 0 for v in row] for row in add],
        proj[R.zero],
        f"{R.name}/delta",
    )
    qm = FiniteModule(S, carrier, [[v or 0 for v in row] for row in act], f"{m.name}/delta")
    rep.extend(qm.validate(), "quotient ")
    mor = validate_morphism(ModuleMorphism(m, qm, proj))
    rep.extend(mor, "projection ")
    if set(proj) != set(range(k)):
        rep.add("projection surjective", internal=True)
    return Quotient(qm, proj, classes, rep)


@dataclass
class KernelResult:
    operator: DeductiveOperator
    report: Report


def kernel_do(f: ModuleMorphism) -> KernelResult:
    """``f*(a) = {x : f(x) <= f(a)}`` with checks on ``f*`` and the induced map onto ``f[R]``."""
    mrep = validate_morphism(f)
    if not mrep.ok:
        raise StructureError(f"not a module morphism: {mrep.violations[0]}")
    A, B = f.source.carrier, f.target.carrier
    t = f.table
    op = DeductiveOperator(A, tuple(frozenset(x for x in range(A.n) if B.leq[t[x]][t[a]]) for a in range(A.n)))
    rep = Report()
    rep.extend(validate_do(op), "kernel ")
    ok, w = action_invariant_check(f.source, op)
    if not ok:
        rep.add("kernel action-invariant", *w, internal=True)
    # hat f: f*(a) |-> f(a)
    hat: dict = {}
    for a in range(A.n):
        k = op.images[a]
        if k in hat and hat[k] != t[a]:
            rep.add("induced map well defined", A.labels[a], internal=True)
        hat.setdefault(k, t[a])
    if len(set(hat.values())) != len(hat):
        rep.add("induced map injective", internal=True)
    for k1, k2 in product(hat, repeat=2):
        if (k1 <= k2) != B.leq[hat[k1]][hat[k2]]:
            rep.add("induced map order isomorphism", sorted(k1), sorted(k2), internal=True)
    return KernelResult(op, rep)


def cyclic_projective_witness(m: FiniteModule, v: int, mu: int):
    """Check ``mu*v = v``, ``A*{v} = R`` and order reflection; returns ``(ok, report)``."""
    S, R = m.scalars, m.carrier
    if not 0 <= v < R.n:
        raise StructureError("v out of range")
    if not 0 <= mu < S.n:
        raise StructureError("mu out of range")
    rep = Report()
    if m.act[mu][v] != v:
        rep.add("mu*v = v", S.labels[mu], R.labels[v])
    orbit = {m.act[s][v] for s in range(S.n)}
    for a in range(R.n):
        if a not in orbit:
            rep.add("A*{v} = R", R.labels[a])
            break
    L, M = S.base.leq, S.mul
    for s, p in product(range(S.n), repeat=2):
        if R.leq[m.act[s][v]][m.act[p][v]] and not L[M[s][mu]][M[p][mu]]:
            rep.add("order reflection", S.labels[s], S.labels[p])
            break
    return rep.ok, rep


def module_from_tables(
    scalars: FinitePoSemiring, carrier: FinitePomonoid, act: Sequence[Sequence[int]], name: str = ""
) -> FiniteModule:
    return FiniteModule(scalars, carrier, act, name)


# --- the formula module: multisets of substitutions acting on formula multisets ------

def _random_formula(rng: random.Random, names, depth: int) -> Formula:
    if depth == 0 or rng.random() < 0.4:
        return Var(rng.choice(names))
    op = BINARY[rng.choice(sorted(BINARY))]
    return op(_random_formula(rng, names, depth - 1), _random_formula(rng, names, depth - 1))


def _random_subst(rng, names, depth, x=None, image=None) -> Substitution:
    m = {v: _random_formula(rng, names, depth) for v in names if rng.random() < 0.6}
    if x is not None:
        m[x] = image
    return Substitution(m)


@dataclass
class MultWitness:
    mu_fixes_v: bool
    samples: int
    premise_held: int  # pairs with X*v <= Y*v, where reflection is tested
    reflection_failures: list
    cover_failures: list

    @property
    def ok(self) -> bool:
        return self.mu_fixes_v and not self.reflection_failures and not self.cover_failures


def mult_l_witness(samples: int = 1000, seed: int = 0, names=("x", "y", "z"), depth: int = 2) -> MultWitness:
    """Sampled check of the cyclic generator ``v = [x]`` with ``mu = [sigma]``, ``sigma: * -> x``.

    Variables range over the finite universe ``names``; every sampled
    substitution has support inside it, so ``s o sigma`` is the constant
    map to ``s(x)`` there. Checks ``mu*v = v``, that ``Gamma = X*v`` for
    ``X = [x -> g : g in Gamma]``, and order reflection
    ``X*v <= Y*v  =>  X.mu <= Y.mu`` on random pairs, about half of them
    built so that the premise holds.
    """
    x = names[0]
    rng = random.Random(seed)
    v = Multiset([Var(x)])
    sigma = Substitution({n: Var(x) for n in names})
    mu = Multiset([sigma])
    fixes = sigma_action(mu, v) == v
    refl, cover, held = [], [], 0
    for i in range(samples):
        k = rng.randint(0, 3)
        X = Multiset(_random_subst(rng, names, depth) for _ in range(k))
        if rng.random() < 0.5:
            # same images of x, different elsewhere, plus some extra members
            Y = Multiset(_random_subst(rng, names, depth, x, s(Var(x))) for s in X)
            Y = Y + Multiset(_random_subst(rng, names, depth) for _ in range(rng.randint(0, 2)))
        else:
            Y = Multiset(_random_subst(rng, names, depth) for _ in range(rng.randint(0, 3)))
        if sigma_action(X, v) <= sigma_action(Y, v):
            held += 1
            if not subst_product(X, mu) <= subst_product(Y, mu):
                refl.append((str(X), str(Y)))
        gamma = sigma_action(Y, v)
        cov = Multiset(Substitution({x: g}) for g in gamma)
        if sigma_action(cov, v) != gamma:
            cover.append(str(gamma))
    return MultWitness(fixes, samples, held, refl, cover)


__all__ = [
    "action_invariant_check", "ModuleMorphism", "validate_morphism", "Quotient",
    "quotient_module", "KernelResult", "kernel_do", "cyclic_projective_witness",
    "module_from_tables", "MultWitness", "mult_l_witness",
]
