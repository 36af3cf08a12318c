"""Hypermatrices, filters, Leibniz reduction, the sequent bridge, monoid and fuzzy matrices.

A hypermatrix pairs a finite algebra with a downset of finite multisets of
its elements. Downsets are stored as antichains of maximal generators and
multiset elements are carrier indices.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import permutations, product
from typing import Callable, Iterable, Mapping, Sequence

from .algebra import FiniteAlgebra, FiniteRLAlgebra, LukChain
from .formula import Consecution, Formula, variables_of
from .multiset import EMPTY, Multiset, downset, maximal
from .structures import FinitePomonoid, Report, StructureError

MAX_VALUATIONS = 200_000


def _valuations(alg: FiniteAlgebra, names: Sequence[str]):
    if alg.n ** len(names) > MAX_VALUATIONS:
        raise StructureError(f"{alg.n}^{len(names)} valuations exceed the guard of {MAX_VALUATIONS}")
    for vals in product(range(alg.n), repeat=len(names)):
        yield dict(zip(names, vals))


def _image(alg: FiniteAlgebra, g: Multiset, val) -> Multiset:
    c: dict = {}
    for f, k in g.items():
        x = alg.evaluate(f, val)
        c[x] = c.get(x, 0) + k
    return Multiset.from_counts(c)


class Hypermatrix:
    def __init__(self, algebra: FiniteAlgebra, generators: Iterable[Multiset], name: str = ""):
        gens = list(generators)
        for g in gens:
            for x in g.root():
                if not (isinstance(x, int) and 0 <= x < algebra.n):
                    raise StructureError(f"filter generator element {x!r} not in carrier")
        self.algebra = algebra
        self.generators = maximal(gens) if gens else []
        self.name = name

    def member(self, x: Multiset) -> bool:
        return any(x <= g for g in self.generators)

    def elements(self) -> set:
        """Every member of the filter (finite, as a set of multisets)."""
        return downset(self.generators)

    def show(self, x: Multiset) -> str:
        return "[" + ", ".join(self.algebra.labels[i] for i in sorted(x)) + "]"

    def __eq__(self, other):
        return (
            isinstance(other, Hypermatrix)
            and self.algebra is other.algebra
            and self.generators == other.generators
        )

    def __repr__(self):
        return f"Hypermatrix({self.name}: " + " ".join(self.show(g) for g in self.generators) + ")"


def hyper_refutation(h: Hypermatrix, c: Consecution, mode: str = "contextual"):
    """First ``(valuation, context)`` refuting ``c`` in ``h``, or None."""
    if mode not in ("contextual", "plain"):
        raise ValueError(f"unknown mode {mode!r}")
    alg = h.algebra
    names = c.variables()
    for val in _valuations(alg, names):
        fg = _image(alg, c.premises, val)
        fd = _image(alg, c.conclusions, val)
        if mode == "plain":
            if h.member(fg) and not h.member(fd):
                return val, EMPTY
            continue
        for g in h.generators:
            if fg <= g:
                ctx = g - fg
                if not h.member(ctx + fd):
                    return val, ctx
    return None


def hyper_consequence(h: Hypermatrix, c: Consecution, mode: str = "contextual") -> bool:
    """``Gamma |= Delta`` (contextual) or the plain variant without contexts.

    Contexts are only tried up to ``g - f(Gamma)`` for generators ``g``:
    any context that keeps ``f(Gamma)`` in the filter lies below one of these.
    """
    return hyper_refutation(h, c, mode) is None


# --- filter generation ---------------------------------------------------------

@dataclass
class FilterResult:
    hypermatrix: Hypermatrix
    truncated: bool
    iterations: int
    verified: bool | None = None  # None when truncated


def filter_generate(system, alg: FiniteAlgebra, seed: Iterable[Multiset], size_cap: int = 8,
                    iter_cap: int = 64) -> FilterResult:
    """Close ``seed`` under every rule instance of ``system`` evaluated in ``alg``.

    A member X with ``v(Psi) <= X`` adds ``X - v(Psi) + v(Psi')``; results
    larger than ``size_cap`` are dropped and set the truncation flag.
    """
    seed = list(seed) or [EMPTY]
    gens = maximal(seed)
    instances = []
    for rule in system.schemata:
        names = rule.consecution.variables()
        seen = set()
        for val in _valuations(alg, names):
            pre = _image(alg, rule.consecution.premises, val)
            post = _image(alg, rule.consecution.conclusions, val)
            if (pre, post) not in seen:
                seen.add((pre, post))
                instances.append((pre, post))
    truncated = False
    it = 0
    while it < iter_cap:
        it += 1
        new = []
        for x in gens:
            for pre, post in instances:
                if pre <= x:
                    y = (x - pre) + post
                    if len(y) > size_cap:
                        truncated = True
                    elif not any(y <= g for g in gens):
                        new.append(y)
        if not new:
            break
        gens = maximal(gens + new)
    else:
        truncated = True
    h = Hypermatrix(alg, gens, "generated")
    verified = None
    if not truncated:
        verified = all(hyper_consequence(h, r.consecution) for r in system.schemata)
    return FilterResult(h, truncated, it, verified)


# --- congruences and the Leibniz congruence ----------------------------------------

Partition = tuple  # canonical: block index per element, blocks numbered by first occurrence


def canonical(blocks_of: Sequence[int]) -> Partition:
    ren: dict = {}
    return tuple(ren.setdefault(b, len(ren)) for b in blocks_of)


def identity_partition(n: int) -> Partition:
    return tuple(range(n))


def total_partition(n: int) -> Partition:
    return (0,) * n


def partition_leq(p: Partition, q: Partition) -> bool:
    """p refines q."""
    n = len(p)
    return all(q[a] == q[b] for a in range(n) for b in range(n) if p[a] == p[b])


def blocks(p: Partition) -> list[list[int]]:
    out: dict = {}
    for i, b in enumerate(p):
        out.setdefault(b, []).append(i)
    return [out[k] for k in sorted(out)]


def _uf_partition(n: int, pairs: Iterable[tuple[int, int]]) -> list[int]:
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b in pairs:
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[max(ra, rb)] = min(ra, rb)
    return [find(x) for x in range(n)]


def is_congruence(alg: FiniteAlgebra, p: Partition) -> bool:
    n = alg.n
    for tab in alg.ops.values():
        for a, b in product(range(n), repeat=2):
            if p[a] != p[b]:
                continue
            for c in range(n):
                if p[tab[a, c]] != p[tab[b, c]] or p[tab[c, a]] != p[tab[c, b]]:
                    return False
    return True


def principal_congruence(alg: FiniteAlgebra, a: int, b: int) -> Partition:
    n = alg.n
    pairs = {(a, b)}
    while True:
        part = _uf_partition(n, pairs)
        extra = set()
        for tab in alg.ops.values():
            for x, y in product(range(n), repeat=2):
                if part[x] == part[y] and x != y:
                    for c in range(n):
                        for u, v in ((tab[x, c], tab[y, c]), (tab[c, x], tab[c, y])):
                            if part[u] != part[v]:
                                extra.add((int(u), int(v)))
        if not extra:
            return canonical(part)
        pairs |= extra


def join_partitions(p: Partition, q: Partition) -> Partition:
    n = len(p)
    pairs = [(a, b) for a in range(n) for b in range(n) if a < b and (p[a] == p[b] or q[a] == q[b])]
    return canonical(_uf_partition(n, pairs))


def congruences(alg: FiniteAlgebra) -> list[Partition]:
    """All congruences, as joins of principal ones; sorted by number of blocks then lexicographically."""
    if alg.n > 5:
        raise StructureError("congruence enumeration is limited to 5 elements")
    n = alg.n
    found = {identity_partition(n)}
    principals = {principal_congruence(alg, a, b) for a in range(n) for b in range(a + 1, n)}
    found |= principals
    frontier = list(found)
    while frontier:
        nxt = []
        for p in frontier:
            for q in principals:
                j = join_partitions(p, q)
                if j not in found:
                    found.add(j)
                    nxt.append(j)
        frontier = nxt
    return sorted(found, key=lambda p: (-len(set(p)), p))


def all_partitions(n: int) -> list[Partition]:
    """Every partition of ``range(n)`` (restricted growth strings)."""
    out = []

    def go(prefix, m):
        if len(prefix) == n:
            out.append(tuple(prefix))
            return
        for b in range(m + 1):
            go(prefix + [b], max(m, b + 1))

    go([], 0)
    return out


def _class_variants(x: Multiset, p: Partition) -> set:
    """Every multiset whose class multiset equals that of x."""
    cls = blocks(p)
    by_block = [cls[p[a]] for a in x]
    out = set()
    for choice in product(*by_block):
        out.add(Multiset(choice))
    return out


def compatible(h: Hypermatrix, p: Partition) -> bool:
    for g in h.generators:
        for y in _class_variants(g, p):
            if not h.member(y):
                return False
    return True


def leibniz(h: Hypermatrix) -> Partition:
    """The largest congruence compatible with the filter."""
    comp = [p for p in congruences(h.algebra) if compatible(h, p)]
    best = [p for p in comp if all(partition_leq(q, p) for q in comp)]
    if len(best) != 1:
        raise StructureError("INTERNAL: compatible congruences have no maximum")
    return best[0]


def leibniz_brute_force(h: Hypermatrix) -> Partition:
    """Independent check: scan all partitions rather than joins of principal congruences."""
    comp = [p for p in all_partitions(h.algebra.n) if is_congruence(h.algebra, p) and compatible(h, p)]
    best = [p for p in comp if all(partition_leq(q, p) for q in comp)]
    if len(best) != 1:
        raise StructureError("INTERNAL: compatible congruences have no maximum")
    return best[0]


def quotient_algebra(alg: FiniteAlgebra, p: Partition) -> FiniteAlgebra:
    cls = blocks(p)
    k = len(cls)
    labels = [alg.labels[c[0]] if len(c) == 1 else "{" + ",".join(alg.labels[x] for x in c) + "}" for c in cls]
    ops = {}
    for sym, tab in alg.ops.items():
        ops[sym] = [[p[int(tab[cls[i][0], cls[j][0]])] for j in range(k)] for i in range(k)]
    consts = {name: p[v] for name, v in alg.consts.items()}
    if isinstance(alg, FiniteRLAlgebra):
        extra = {kk: v for kk, v in consts.items() if kk != "1"}
        return FiniteRLAlgebra(labels, ops, consts["1"], f"{alg.name}/~", extra)
    return FiniteAlgebra(labels, ops, consts, f"{alg.name}/~")


def reduce_model(h: Hypermatrix) -> Hypermatrix:
    p = leibniz(h)
    q = quotient_algebra(h.algebra, p)
    return Hypermatrix(q, [g.map(lambda a: p[a]) for g in h.generators], f"{h.name}*")


# --- the sequent bridge -------------------------------------------------------------

@dataclass
class SequentModel:
    algebra: FiniteAlgebra
    sequences: frozenset  # of tuples of carrier indices

    def __eq__(self, other):
        return isinstance(other, SequentModel) and self.algebra is other.algebra and self.sequences == other.sequences

    def __hash__(self):
        return hash(self.sequences)


def to_sequents(h: Hypermatrix) -> SequentModel:
    """Every sequence enumerating a member of the filter."""
    seqs = set()
    for x in h.elements():
        seqs.update(permutations(sorted(x)))
    return SequentModel(h.algebra, frozenset(seqs))


def to_multisets(s: SequentModel) -> Hypermatrix:
    return Hypermatrix(s.algebra, {Multiset(t) for t in s.sequences}, "from sequents")


def gentzen_bridge(x, direction: str):
    if direction == "to_sequents":
        if not isinstance(x, Hypermatrix):
            raise TypeError("to_sequents needs a hypermatrix")
        return to_sequents(x)
    if direction == "to_multisets":
        if not isinstance(x, SequentModel):
            raise TypeError("to_multisets needs a sequent model")
        return to_multisets(x)
    raise ValueError(f"unknown direction {direction!r}")


def sequent_compatible(s: SequentModel, p: Partition) -> bool:
    """Positionwise compatibility of a congruence with a set of sequences."""
    cls = blocks(p)
    for t in s.sequences:
        for u in product(*(cls[p[a]] for a in t)):
            if u not in s.sequences:
                return False
    return True


def sequent_leibniz(s: SequentModel) -> Partition:
    comp = [p for p in congruences(s.algebra) if sequent_compatible(s, p)]
    best = [p for p in comp if all(partition_leq(q, p) for q in comp)]
    if len(best) != 1:
        raise StructureError("INTERNAL: compatible congruences have no maximum")
    return best[0]


def reduce_sequent_model(s: SequentModel) -> SequentModel:
    p = sequent_leibniz(s)
    q = quotient_algebra(s.algebra, p)
    return SequentModel(q, frozenset(tuple(p[a] for a in t) for t in s.sequences))


# --- monoid matrices --------------------------------------------------------------

class MultisetPomonoid:
    """The (infinite) pomonoid of finite multisets over a carrier, used for ``M^H``."""

    zero = EMPTY

    def plus(self, x: Multiset, y: Multiset) -> Multiset:
        return x + y

    def le(self, x: Multiset, y: Multiset) -> bool:
        return x <= y


@dataclass
class MonoidMatrix:
    """``(A, D, G, f)``; ``hom`` gives f on single elements and is extended additively.

    For a finite D, G is a set of element indices; for the multiset
    pomonoid it is a hypermatrix-style generator list.
    """

    algebra: FiniteAlgebra
    D: object
    G: object
    hom: tuple

    def f(self, x: Multiset):
        D = self.D
        out = D.zero
        for a in x:
            out = D.plus(out, self.hom[a])
        return out

    def in_G(self, d) -> bool:
        if isinstance(self.D, MultisetPomonoid):
            return any(d <= g for g in self.G)
        return d in self.G

    def validate(self, size_bound: int = 4) -> Report:
        r = Report()
        if isinstance(self.D, FinitePomonoid):
            r.extend(self.D.validate(), "D ")
            if not self.D.is_downset(self.G):
                r.add("G downset", sorted(self.G))
        # the additive extension must be monotone; spot-check on small multisets
        xs = _multisets_up_to(self.algebra.n, size_bound)
        for x in xs:
            for a in range(self.algebra.n):
                y = x + Multiset([a])
                if not self.D.le(self.f(x), self.f(y)):
                    r.add("f monotone", str(x), str(y))
                    return r
        return r


def _multisets_up_to(n: int, size: int) -> list[Multiset]:
    out = []

    def go(i, left, counts):
        if i == n:
            out.append(Multiset.from_counts(dict(enumerate(counts))))
            return
        for k in range(left + 1):
            go(i + 1, left - k, counts + [k])

    go(0, size, [])
    return sorted(out, key=lambda m: (len(m), m.sort_key()))


@dataclass
class HyperResult:
    hypermatrix: Hypermatrix
    truncated: bool


def to_hyper(m: MonoidMatrix, size_bound: int = 8) -> HyperResult:
    """``H^M = {X : f(X) in G}`` by enumeration up to ``size_bound``.

    The flag is set when some member of maximal size still extends, so the
    preimage is not generated below the bound.
    """
    n = m.algebra.n
    members = [x for x in _multisets_up_to(n, size_bound) if m.in_G(m.f(x))]
    truncated = any(
        len(x) == size_bound and any(m.in_G(m.f(x + Multiset([a]))) for a in range(n)) for x in members
    )
    return HyperResult(Hypermatrix(m.algebra, members, "H^M"), truncated)


def from_hyper(h: Hypermatrix) -> MonoidMatrix:
    """``M^H = (A, A-flat, F, id)``."""
    return MonoidMatrix(h.algebra, MultisetPomonoid(), list(h.generators),
                        tuple(Multiset([a]) for a in range(h.algebra.n)))


def push(m: MonoidMatrix, g: Callable, D2: FinitePomonoid, g_domain: Iterable | None = None) -> MonoidMatrix:
    """``(A, D', (g(G)], g o f)`` for a pomonoid homomorphism ``g: D -> D'``.

    When D is the multiset pomonoid, ``G`` is a generator list and g(G) is
    computed on the whole downset.
    """
    if isinstance(m.D, MultisetPomonoid):
        image = {g(x) for x in downset(m.G)}
    else:
        image = {g(x) for x in m.G}
    gdown = frozenset(y for y in D2.elements if any(D2.leq[y][z] for z in image))
    return MonoidMatrix(m.algebra, D2, gdown, tuple(g(h) for h in m.hom))


@dataclass
class RoundtripReport:
    hyper_ok: bool
    monoid_ok: bool
    truncated: bool
    detail: str = ""


def roundtrip_check(m: MonoidMatrix, size_bound: int = 8) -> RoundtripReport:
    """Check ``H^(M^H) = H`` for ``H = H^M`` and ``f_D(M^(H^M)) = M``."""
    hr = to_hyper(m, size_bound)
    h = hr.hypermatrix
    h2 = to_hyper(from_hyper(h), size_bound).hypermatrix
    hyper_ok = h2.generators == h.generators
    back = push(from_hyper(h), m.f, m.D)
    monoid_ok = back.G == frozenset(m.G) and back.hom == m.hom
    detail = "" if monoid_ok else f"G={sorted(m.G)} but pushed G={sorted(back.G)}"
    return RoundtripReport(hyper_ok, monoid_ok, hr.truncated, detail)


def monoid_matrix_ops(m: MonoidMatrix, op: str, **kw):
    if op == "to_hyper":
        return to_hyper(m, kw.get("size_bound", 8))
    if op == "push":
        return push(m, kw["g"], kw["D"])
    if op == "roundtrip_check":
        return roundtrip_check(m, kw.get("size_bound", 8))
    raise ValueError(f"unknown op {op!r}")


# --- fuzzy matrices ------------------------------------------------------------------

def luk_tnorm(x: Fraction, y: Fraction) -> Fraction:
    return max(Fraction(0), x + y - 1)


@dataclass
class FuzzyMatrix:
    """A Lukasiewicz chain with a designation ``f`` into [0,1] and a threshold.

    ``threshold=None`` stands for the whole family ``{[a,1] : a in [0,1]}``.
    """

    algebra: LukChain
    f: tuple  # f[i] is a Fraction
    threshold: Fraction | None = None

    def validate(self) -> Report:
        r = Report()
        alg = self.algebra
        f = self.f
        if len(f) != alg.n:
            raise StructureError("f must give a value for every element")
        for i in range(alg.n):
            if not 0 <= f[i] <= 1:
                r.add("f in [0,1]", alg.labels[i])
        for i in range(alg.n - 1):
            if not f[i] < f[i + 1]:
                r.add("strictly monotone", alg.labels[i], alg.labels[i + 1])
        for i, j in product(range(alg.n), repeat=2):
            if f[alg.op("*", i, j)] != luk_tnorm(f[i], f[j]):
                r.add("preserves fusion", alg.labels[i], alg.labels[j])
        return r

    def designation(self, x: Multiset) -> Fraction:
        out = Fraction(1)
        for a in x:
            out = luk_tnorm(out, self.f[a])
        return out


def identity_fuzzy(n: int, threshold: Fraction | None = None) -> FuzzyMatrix:
    ch = LukChain(n)
    return FuzzyMatrix(ch, tuple(ch.value(i) for i in range(n)), threshold)


def _context_values(m: FuzzyMatrix) -> list[Fraction]:
    vals = {Fraction(1)}
    frontier = [Fraction(1)]
    while frontier:
        nxt = []
        for v in frontier:
            for fa in m.f:
                w = luk_tnorm(v, fa)
                if w not in vals:
                    vals.add(w)
                    nxt.append(w)
        frontier = nxt
    return sorted(vals)


def fuzzy_refutation(m: FuzzyMatrix, c: Consecution):
    rep = m.validate()
    if not rep.ok:
        raise StructureError(f"designation map rejected: {rep.violations[0]}")
    alg = m.algebra
    names = c.variables()
    ctxs = _context_values(m) if m.threshold is not None else None
    for val in _valuations(alg, names):
        dg = m.designation(_image(alg, c.premises, val))
        dd = m.designation(_image(alg, c.conclusions, val))
        if m.threshold is None:
            if dg > dd:
                return val, None
        else:
            for cv in ctxs:
                if luk_tnorm(cv, dg) >= m.threshold and luk_tnorm(cv, dd) < m.threshold:
                    return val, cv
    return None


def fuzzy_consequence(ms: Sequence[FuzzyMatrix], c: Consecution) -> bool:
    """Consequence in every listed fuzzy matrix.

    For the threshold family the criterion ``f(e(Gamma)) <= f(e(Delta))`` is
    used; a single threshold quantifies over every context value instead.
    """
    return all(fuzzy_refutation(m, c) is None for m in ms)


__all__ = [
    "Hypermatrix", "hyper_consequence", "hyper_refutation", "filter_generate", "FilterResult",
    "congruences", "principal_congruence", "is_congruence", "all_partitions", "compatible",
    "leibniz", "leibniz_brute_force", "quotient_algebra", "reduce_model", "identity_partition",
    "total_partition", "partition_leq", "blocks", "SequentModel", "to_sequents", "to_multisets",
    "gentzen_bridge", "sequent_leibniz", "reduce_sequent_model", "MultisetPomonoid",
    "MonoidMatrix", "to_hyper", "from_hyper", "push", "roundtrip_check", "monoid_matrix_ops",
    "FuzzyMatrix", "identity_fuzzy", "fuzzy_consequence", "fuzzy_refutation", "luk_tnorm",
]
