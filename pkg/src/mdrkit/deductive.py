"""Deductive relations, operators and systems on a finite pomonoid.

The three presentations are interconverted by the explicit maps

* ``a |- b``  iff  ``b in delta(a)``,
* ``delta(a) = Th(a) = {b : a |- b}``,
* ``C = {Th(a) : a}`` and ``delta_C(x) = meet of the members of C containing x``.

Their Blok-Jonsson companions live on the powerset of the carrier, where
relations become abstract consequence relations, operators become closure
operators and systems become closure systems.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations, product
from typing import Iterable, Sequence

from .structures import FinitePomonoid, Report, StructureError

MAX_ENUM_CARRIER = 5
MAX_POWERSET_BASE = 4


def _mat_key(n: int, pairs) -> tuple:
    return tuple(1 if (a, b) in pairs else 0 for a in range(n) for b in range(n))


@dataclass(frozen=True)
class DeductiveRelation:
    base: FinitePomonoid
    pairs: frozenset  # of (a, b) meaning a |- b

    def entails(self, a: int, b: int) -> bool:
        return (a, b) in self.pairs

    def matrix(self) -> tuple:
        n = self.base.n
        return tuple(tuple((a, b) in self.pairs for b in range(n)) for a in range(n))

    def key(self) -> tuple:
        return _mat_key(self.base.n, self.pairs)

    def __eq__(self, other):
        return isinstance(other, DeductiveRelation) and self.base is other.base and self.pairs == other.pairs

    def __hash__(self):
        return hash(self.pairs)

    def __le__(self, other: "DeductiveRelation") -> bool:
        return self.pairs <= other.pairs

    def __str__(self):
        lab = self.base.labels
        return "{" + ", ".join(f"{lab[a]}|-{lab[b]}" for a, b in sorted(self.pairs)) + "}"


@dataclass(frozen=True)
class DeductiveOperator:
    base: FinitePomonoid
    images: tuple  # images[a] is a frozenset

    def __call__(self, a: int) -> frozenset:
        return self.images[a]

    def __eq__(self, other):
        return isinstance(other, DeductiveOperator) and self.base is other.base and self.images == other.images

    def __hash__(self):
        return hash(self.images)

    def __le__(self, other: "DeductiveOperator") -> bool:
        return all(x <= y for x, y in zip(self.images, other.images))

    def __str__(self):
        lab = self.base.labels
        return "; ".join(
            f"{lab[a]}: " + " ".join(lab[x] for x in sorted(img)) for a, img in enumerate(self.images)
        )


@dataclass(frozen=True)
class DeductiveSystem:
    base: FinitePomonoid
    family: frozenset  # of frozensets

    def __eq__(self, other):
        return isinstance(other, DeductiveSystem) and self.base is other.base and self.family == other.family

    def __hash__(self):
        return hash(self.family)

    def __le__(self, other: "DeductiveSystem") -> bool:
        # systems are ordered by reverse inclusion
        return self.family >= other.family

    def __str__(self):
        lab = self.base.labels
        members = sorted(tuple(sorted(c)) for c in self.family)
        return " | ".join("{" + ",".join(lab[x] for x in m) + "}" for m in members)


# --- construction helpers ------------------------------------------------------

def least_dr(base: FinitePomonoid) -> DeductiveRelation:
    """The order dual ``>=``."""
    return DeductiveRelation(base, frozenset((b, a) for a in base.elements for b in base.elements if base.leq[a][b]))


def full_dr(base: FinitePomonoid) -> DeductiveRelation:
    return DeductiveRelation(base, frozenset(product(base.elements, repeat=2)))


def dr_from_pairs(base: FinitePomonoid, pairs: Iterable[tuple]) -> DeductiveRelation:
    return DeductiveRelation(base, frozenset(pairs))


def do_from_images(base: FinitePomonoid, images: Sequence[Iterable[int]]) -> DeductiveOperator:
    if len(images) != base.n:
        raise StructureError("operator must give one image per element")
    return DeductiveOperator(base, tuple(frozenset(i) for i in images))


def ds_from_family(base: FinitePomonoid, family: Iterable[Iterable[int]]) -> DeductiveSystem:
    return DeductiveSystem(base, frozenset(frozenset(c) for c in family))


def constant_do(base: FinitePomonoid) -> DeductiveOperator:
    """The top operator ``delta(a) = R``."""
    full = frozenset(base.elements)
    return DeductiveOperator(base, tuple(full for _ in base.elements))


# --- validation -------------------------------------------------------------------

def validate_dr(d: DeductiveRelation) -> Report:
    """The three axioms, plus Cut and Monotonicity flagged as internal if they fail."""
    r = Report()
    R, P = d.base, d.pairs
    lab = R.labels
    els = list(R.elements)
    for a, b in product(els, repeat=2):
        if R.leq[a][b] and (b, a) not in P:
            r.add("generalised reflexivity", lab[b], lab[a])
    for (a, b) in sorted(P):
        for c in els:
            if (b, c) in P and (a, c) not in P:
                r.add("transitivity", lab[a], lab[b], lab[c])
            if (R.add[a][c], R.add[b][c]) not in P:
                r.add("compatibility", lab[a], lab[b], lab[c])
    if r.ok:
        for (a, b) in sorted(P):
            for c in els:
                if (R.add[c][a], b) not in P:
                    r.add("monotonicity", lab[a], lab[b], lab[c], internal=True)
                for dd in els:
                    if (R.add[c][b], dd) in P and (R.add[c][a], dd) not in P:
                        r.add("cut", lab[a], lab[b], lab[c], lab[dd], internal=True)
    return r


def validate_do(d: DeductiveOperator) -> Report:
    r = Report()
    R, im = d.base, d.images
    lab = R.labels
    els = list(R.elements)
    if len(im) != R.n or any(not s <= frozenset(els) for s in im):
        raise StructureError("operator images out of range")
    for a in els:
        if a not in im[a]:
            r.add("enlargement", lab[a])
    for a, b in product(els, repeat=2):
        if R.leq[a][b] and not im[a] <= im[b]:
            r.add("order preservation", lab[a], lab[b])
        if a in im[b] and not im[a] <= im[b]:
            r.add("idempotency", lab[a], lab[b])
        if a in im[b]:
            for c in els:
                if R.add[a][c] not in im[R.add[b][c]]:
                    r.add("compatibility", lab[a], lab[b], lab[c])
    return r


def delta_of_family(base: FinitePomonoid, family) -> tuple:
    full = frozenset(base.elements)
    out = []
    for x in base.elements:
        s = full
        for c in family:
            if x in c:
                s = s & c
        out.append(s)
    return tuple(out)


def validate_ds(d: DeductiveSystem) -> Report:
    r = Report()
    R = d.base
    lab = R.labels
    els = list(R.elements)
    for c in sorted(d.family, key=sorted):
        if not R.is_downset(c):
            r.add("downset", "{" + ",".join(lab[x] for x in sorted(c)) + "}")
    dl = delta_of_family(R, d.family)
    if frozenset(dl) != d.family:
        extra = sorted(sorted(c) for c in d.family - frozenset(dl))
        missing = sorted(sorted(c) for c in frozenset(dl) - d.family)
        r.add("principal generation", f"not principal {extra}", f"missing {missing}")
    for x, y, z in product(els, repeat=3):
        if dl[x] <= dl[y] and not dl[R.add[x][z]] <= dl[R.add[y][z]]:
            r.add("compatibility", lab[x], lab[y], lab[z])
    return r


def validate(x) -> Report:
    if isinstance(x, DeductiveRelation):
        return validate_dr(x)
    if isinstance(x, DeductiveOperator):
        return validate_do(x)
    if isinstance(x, DeductiveSystem):
        return validate_ds(x)
    return x.validate()


# --- the trinity ------------------------------------------------------------------

def dr_to_do(d: DeductiveRelation) -> DeductiveOperator:
    els = list(d.base.elements)
    return DeductiveOperator(d.base, tuple(frozenset(b for b in els if (a, b) in d.pairs) for a in els))


def do_to_dr(d: DeductiveOperator) -> DeductiveRelation:
    return DeductiveRelation(d.base, frozenset((a, b) for a, img in enumerate(d.images) for b in img))


def dr_to_ds(d: DeductiveRelation) -> DeductiveSystem:
    return DeductiveSystem(d.base, frozenset(dr_to_do(d).images))


def ds_to_do(d: DeductiveSystem) -> DeductiveOperator:
    return DeductiveOperator(d.base, delta_of_family(d.base, d.family))


def do_to_ds(d: DeductiveOperator) -> DeductiveSystem:
    return DeductiveSystem(d.base, frozenset(d.images))


def ds_to_dr(d: DeductiveSystem) -> DeductiveRelation:
    return do_to_dr(ds_to_do(d))


_KIND = {DeductiveRelation: "dr", DeductiveOperator: "do", DeductiveSystem: "ds"}
_CONVERT = {
    ("dr", "do"): dr_to_do, ("do", "dr"): do_to_dr,
    ("dr", "ds"): dr_to_ds, ("ds", "dr"): ds_to_dr,
    ("do", "ds"): do_to_ds, ("ds", "do"): ds_to_do,
}


def kind_of(x) -> str:
    try:
        return _KIND[type(x)]
    except KeyError:
        raise TypeError(f"not a deductive object: {x!r}") from None


def trinity(x, target: str, check: bool = True):
    """Convert between the three presentations; ``check`` validates the input first."""
    src = kind_of(x)
    if target not in ("dr", "do", "ds"):
        raise ValueError(f"unknown target {target!r}")
    if check:
        rep = validate(x)
        if not rep.ok:
            raise StructureError(f"invalid {src}: {rep.violations[0]}")
    if src == target:
        return x
    return _CONVERT[(src, target)](x)


# --- enumeration -------------------------------------------------------------------

@dataclass
class Enumeration:
    items: list
    truncated: bool = False

    def __iter__(self):
        return iter(self.items)

    def __len__(self):
        return len(self.items)


def _closure(base: FinitePomonoid, pairs: set) -> frozenset:
    """Least DR containing the pairs."""
    n = base.n
    add = base.add
    rel = [[False] * n for _ in range(n)]
    todo = list(pairs)
    for a in range(n):
        for b in range(n):
            if base.leq[a][b]:
                todo.append((b, a))
    while todo:
        a, b = todo.pop()
        if rel[a][b]:
            continue
        rel[a][b] = True
        for c in range(n):
            if not rel[add[a][c]][add[b][c]]:
                todo.append((add[a][c], add[b][c]))
            if rel[b][c] and not rel[a][c]:
                todo.append((a, c))
            if rel[c][a] and not rel[c][b]:
                todo.append((c, b))
    return frozenset((a, b) for a in range(n) for b in range(n) if rel[a][b])


def enumerate_drs(base: FinitePomonoid, cap: int | None = None) -> Enumeration:
    """Every DR on ``base``, sorted by flattened boolean matrix.

    Every DR is reached from the least one by repeatedly adding a pair and
    closing. Carriers above five elements are refused unless ``cap`` is
    given; hitting ``cap`` sets the truncation flag.
    """
    if base.n > MAX_ENUM_CARRIER and cap is None:
        raise StructureError(f"carrier of {base.n} elements exceeds {MAX_ENUM_CARRIER}; pass cap to force")
    all_pairs = [(a, b) for a in base.elements for b in base.elements]
    start = _closure(base, set())
    seen = {start}
    frontier = [start]
    truncated = False
    while frontier and not truncated:
        nxt = []
        for s in frontier:
            for p in all_pairs:
                if p in s:
                    continue
                t = _closure(base, set(s) | {p})
                if t not in seen:
                    if cap is not None and len(seen) >= cap:
                        truncated = True
                        break
                    seen.add(t)
                    nxt.append(t)
            if truncated:
                break
        frontier = nxt
    items = sorted(seen, key=lambda s: _mat_key(base.n, s))
    return Enumeration([DeductiveRelation(base, s) for s in items], truncated)


def enumerate_dos(base: FinitePomonoid, cap: int | None = None) -> Enumeration:
    e = enumerate_drs(base, cap)
    return Enumeration([dr_to_do(d) for d in e.items], e.truncated)


def enumerate_dss(base: FinitePomonoid, cap: int | None = None) -> Enumeration:
    e = enumerate_drs(base, cap)
    return Enumeration([dr_to_ds(d) for d in e.items], e.truncated)


def brute_force_drs(base: FinitePomonoid) -> list[DeductiveRelation]:
    """All DRs by scanning every relation; only for tiny carriers."""
    pairs = [(a, b) for a in base.elements for b in base.elements]
    if len(pairs) > 16:
        raise StructureError("brute force limited to 4 pairs squared")
    out = []
    for bits in range(1 << len(pairs)):
        rel = frozenset(p for i, p in enumerate(pairs) if bits >> i & 1)
        d = DeductiveRelation(base, rel)
        if validate_dr(d).ok:
            out.append(d)
    return sorted(out, key=lambda d: d.key())


def brute_force_dos(base: FinitePomonoid) -> list[DeductiveOperator]:
    """Every valid DO found by scanning all maps into the powerset; n <= 3."""
    n = base.n
    if n > 3:
        raise StructureError("DO brute force limited to 3 elements")
    subs = [frozenset(x for x in range(n) if m >> x & 1) for m in range(1 << n)]
    out = []
    for imgs in product(subs, repeat=n):
        if any(a not in imgs[a] for a in range(n)):  # cheap Enlargement filter
            continue
        d = DeductiveOperator(base, tuple(imgs))
        if validate_do(d).ok:
            out.append(d)
    return out


def brute_force_dss(base: FinitePomonoid) -> list[DeductiveSystem]:
    """Every valid DS found by scanning all families of downsets; n <= 3."""
    n = base.n
    if n > 3:
        raise StructureError("DS brute force limited to 3 elements")
    downs = [frozenset(x for x in range(n) if m >> x & 1) for m in range(1 << n)]
    downs = [x for x in downs if base.is_downset(x)]
    out = []
    for bits in range(1 << len(downs)):
        d = DeductiveSystem(base, frozenset(x for i, x in enumerate(downs) if bits >> i & 1))
        if validate_ds(d).ok:
            out.append(d)
    return out


@dataclass
class Census:
    drs: int
    dos: int
    dss: int
    roundtrips: dict  # roundtrip name -> number of failures

    @property
    def ok(self) -> bool:
        return self.drs == self.dos == self.dss and not any(self.roundtrips.values())


def trinity_census(base: FinitePomonoid) -> Census:
    """Independent DR/DO/DS counts and failures of the six conversion roundtrips."""
    drs = brute_force_drs(base)
    dos = brute_force_dos(base)
    dss = brute_force_dss(base)
    rt = {
        "dr>do>dr": sum(do_to_dr(dr_to_do(d)) != d for d in drs),
        "dr>ds>dr": sum(ds_to_dr(dr_to_ds(d)) != d for d in drs),
        "do>dr>do": sum(dr_to_do(do_to_dr(d)) != d for d in dos),
        "do>ds>do": sum(ds_to_do(do_to_ds(d)) != d for d in dos),
        "ds>dr>ds": sum(dr_to_ds(ds_to_dr(d)) != d for d in dss),
        "ds>do>ds": sum(do_to_ds(ds_to_do(d)) != d for d in dss),
    }
    return Census(len(drs), len(dos), len(dss), rt)


# --- theories -------------------------------------------------------------------

@dataclass
class TheoryReport:
    theories: list  # all |- upsets, as frozensets
    principal: tuple  # principal[a] = Th(a)
    theorems: frozenset
    pomonoid: FinitePomonoid  # Th^p ordered by inclusion
    th_index: tuple  # th_index[a] = index of Th(a) in ``pomonoid``
    report: Report = field(default_factory=Report)


def _upsets(d: DeductiveRelation) -> list:
    els = list(d.base.elements)
    out = []
    for k in range(len(els) + 1):
        for t in combinations(els, k):
            ts = frozenset(t)
            if all(b in ts for (a, b) in d.pairs if a in ts):
                out.append(ts)
    return sorted(out, key=lambda s: (len(s), sorted(s)))


def theories(d: DeductiveRelation) -> TheoryReport:
    base = d.base
    rep = Report()
    principal = dr_to_do(d).images
    ups = _upsets(d)
    distinct = sorted(set(principal), key=lambda s: (len(s), sorted(s)))
    idx = {t: i for i, t in enumerate(distinct)}
    th_index = tuple(idx[principal[a]] for a in base.elements)
    # Th(x) + Th(y) = Th(x+y); report if that is not well defined
    add = [[None] * len(distinct) for _ in distinct]
    for a, b in product(base.elements, repeat=2):
        i, j, k = th_index[a], th_index[b], th_index[base.add[a][b]]
        if add[i][j] is None:
            add[i][j] = k
        elif add[i][j] != k:
            rep.add("theory sum well defined", base.labels[a], base.labels[b], internal=True)
    labels = ["{" + ",".join(base.labels[x] for x in sorted(t)) + "}" for t in distinct]
    pom = FinitePomonoid(
        labels,
        [[s <= t for t in distinct] for s in distinct],
        [[v if v is not None else 0 for v in row] for row in add],
        th_index[base.zero],
        "Th",
    )
    rep.extend(pom.validate(), "theory pomonoid ")
    for a, b in product(base.elements, repeat=2):
        if base.leq[a][b] and not principal[a] <= principal[b]:
            rep.add("Th monotone", base.labels[a], base.labels[b], internal=True)
    for t in ups:
        union = frozenset().union(*(principal[x] for x in t)) if t else frozenset()
        if union != t:
            rep.add("theory is union of principal theories", sorted(t), internal=True)
    return TheoryReport(ups, principal, principal[base.zero], pom, th_index, rep)


def do_meet(ops: Sequence[DeductiveOperator]) -> DeductiveOperator:
    """Pointwise intersection; the empty meet is the constant-R operator."""
    if not ops:
        raise ValueError("do_meet needs at least one operator (or use constant_do)")
    base = ops[0].base
    if any(o.base is not base for o in ops):
        raise StructureError("operators live on different pomonoids")
    return DeductiveOperator(
        base, tuple(frozenset.intersection(*(o.images[a] for o in ops)) for a in base.elements)
    )


# --- Blok-Jonsson companions --------------------------------------------------------

def subsets(n: int) -> list[frozenset]:
    return [frozenset(i for i in range(n) if m >> i & 1) for m in range(1 << n)]


@dataclass(frozen=True)
class FiniteAcr:
    """A consequence relation between subsets of ``range(n)`` and elements."""

    n: int
    pairs: frozenset  # of (frozenset X, a)

    def entails(self, xs, a) -> bool:
        return (frozenset(xs), a) in self.pairs

    def closure(self) -> "ClosureOperator":
        return acr_to_clop(self)


@dataclass(frozen=True)
class ClosureOperator:
    n: int
    table: tuple  # table[mask] = frozenset, masks in ``subsets(n)`` order

    def __call__(self, xs) -> frozenset:
        xs = frozenset(xs)
        return self.table[sum(1 << i for i in xs)]


@dataclass(frozen=True)
class ClosureSystem:
    n: int
    family: frozenset


def _guard(n: int):
    if n > MAX_POWERSET_BASE:
        raise StructureError(f"powerset of {n} elements exceeds the {MAX_POWERSET_BASE}-element guard")


def acr_to_clop(a: FiniteAcr) -> ClosureOperator:
    return ClosureOperator(a.n, tuple(frozenset(x for x in range(a.n) if (s, x) in a.pairs) for s in subsets(a.n)))


def clop_to_acr(c: ClosureOperator) -> FiniteAcr:
    return FiniteAcr(c.n, frozenset((s, x) for s, img in zip(subsets(c.n), c.table) for x in img))


def acr_to_clos(a: FiniteAcr) -> ClosureSystem:
    fam = []
    for t in subsets(a.n):
        if all(x in t for (s, x) in a.pairs if s == t):
            fam.append(t)
    return ClosureSystem(a.n, frozenset(fam))


def clos_to_clop(c: ClosureSystem) -> ClosureOperator:
    full = frozenset(range(c.n))
    out = []
    for s in subsets(c.n):
        m = full
        for t in c.family:
            if s <= t:
                m = m & t
        out.append(m)
    return ClosureOperator(c.n, tuple(out))


def clop_to_clos(c: ClosureOperator) -> ClosureSystem:
    return ClosureSystem(c.n, frozenset(c.table))


def clos_to_acr(c: ClosureSystem) -> FiniteAcr:
    pairs = []
    for s in subsets(c.n):
        for x in range(c.n):
            if all(x in t for t in c.family if s <= t):
                pairs.append((s, x))
    return FiniteAcr(c.n, frozenset(pairs))


def validate_acr(a: FiniteAcr) -> Report:
    r = Report()
    ss = subsets(a.n)
    for s in ss:
        for x in s:
            if (s, x) not in a.pairs:
                r.add("reflexivity", sorted(s), x)
    for (s, x) in sorted(a.pairs, key=lambda p: (sorted(p[0]), p[1])):
        for t in ss:
            if s <= t and (t, x) not in a.pairs:
                r.add("monotonicity", sorted(s), sorted(t), x)
    cl = acr_to_clop(a)
    for s in ss:
        c = cl(s)
        if cl(c) != c:
            r.add("cut", sorted(s))
    return r


def validate_closure_system(c: ClosureSystem) -> Report:
    r = Report()
    full = frozenset(range(c.n))
    if full not in c.family:
        r.add("contains carrier")
    fam = list(c.family)
    for s, t in product(fam, repeat=2):
        if s & t not in c.family:
            r.add("closed under intersection", sorted(s), sorted(t))
    return r


def bj_companion(x):
    """Lift a DR, DO or DS to an ACR, closure operator or closure system on the carrier."""
    kind = kind_of(x)
    n = x.base.n
    _guard(n)
    ss = subsets(n)
    if kind == "dr":
        return FiniteAcr(n, frozenset((s, a) for s in ss for a in range(n) if any((y, a) in x.pairs for y in s)))
    if kind == "do":
        return ClosureOperator(n, tuple(frozenset().union(*(x.images[y] for y in s)) if s else frozenset() for s in ss))
    fam = list(x.family)
    unions = set()
    for k in range(len(fam) + 1):
        for ys in combinations(fam, k):
            unions.add(frozenset().union(*ys) if ys else frozenset())
    return ClosureSystem(n, frozenset(unions))


@dataclass
class BJReport:
    checked: int = 0
    failures: list = field(default_factory=list)

    @property
    def ok(self):
        return not self.failures


def bj_squares(d: DeductiveRelation) -> list[tuple[str, bool]]:
    """All six commutation squares for one DR and its DO and DS."""
    do = dr_to_do(d)
    ds = dr_to_ds(d)
    bj_dr, bj_do, bj_ds = bj_companion(d), bj_companion(do), bj_companion(ds)
    return [
        ("delta_|-", bj_companion(dr_to_do(d)) == acr_to_clop(bj_dr)),
        ("C_|-", bj_companion(dr_to_ds(d)) == acr_to_clos(bj_dr)),
        ("C_delta", bj_companion(do_to_ds(do)) == clop_to_clos(bj_do)),
        ("|-_delta", bj_companion(do_to_dr(do)) == clop_to_acr(bj_do)),
        ("|-_C", bj_companion(ds_to_dr(ds)) == clos_to_acr(bj_ds)),
        ("delta_C", bj_companion(ds_to_do(ds)) == clos_to_clop(bj_ds)),
    ]


def bj_diagram_check(base: FinitePomonoid) -> BJReport:
    """Check every square for every enumerated DR (with its DO and DS)."""
    if base.n > 4:
        raise StructureError("bj_diagram_check is limited to carriers of at most 4 elements")
    rep = BJReport()
    for d in enumerate_drs(base).items:
        for name, ok in bj_squares(d):
            rep.checked += 1
            if not ok:
                rep.failures.append((name, str(d)))
    return rep


def dr_from_acr(a: FiniteAcr) -> DeductiveRelation:
    """``X |-' Y`` iff ``X |- y`` for every ``y in Y``, on the powerset pomonoid."""
    from .structures import powerset_pomonoid

    _guard(a.n)
    base = powerset_pomonoid([chr(ord("a") + i) for i in range(a.n)])
    ss = subsets(a.n)
    masks = {s: sum(1 << i for i in s) for s in ss}
    pairs = frozenset(
        (masks[x], masks[y]) for x in ss for y in ss if all((x, b) in a.pairs for b in y)
    )
    return DeductiveRelation(base, pairs)


def acr_from_rules(n: int, rules: Iterable[tuple[Iterable[int], int]]) -> FiniteAcr:
    """Least ACR on ``range(n)`` containing the given rules ``(premises, conclusion)``."""
    _guard(n)
    rules = [(frozenset(p), c) for p, c in rules]
    pairs = []
    for s in subsets(n):
        cl = set(s)
        changed = True
        while changed:
            changed = False
            for p, c in rules:
                if p <= cl and c not in cl:
                    cl.add(c)
                    changed = True
        pairs.extend((s, x) for x in cl)
    return FiniteAcr(n, frozenset(pairs))


__all__ = [
    "DeductiveRelation", "DeductiveOperator", "DeductiveSystem", "least_dr", "full_dr",
    "dr_from_pairs", "do_from_images", "ds_from_family", "constant_do", "validate_dr",
    "validate_do", "validate_ds", "validate", "trinity", "dr_to_do", "do_to_dr", "dr_to_ds",
    "ds_to_do", "do_to_ds", "ds_to_dr", "enumerate_drs", "enumerate_dos", "enumerate_dss",
    "brute_force_drs", "brute_force_dos", "brute_force_dss", "Census", "trinity_census",
    "Enumeration", "theories", "TheoryReport", "do_meet", "FiniteAcr",
    "ClosureOperator", "ClosureSystem", "bj_companion", "bj_squares", "bj_diagram_check",
    "dr_from_acr", "acr_from_rules", "validate_acr", "validate_closure_system", "subsets",
]
