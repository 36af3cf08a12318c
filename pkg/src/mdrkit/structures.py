"""Explicit finite pomonoids, po-semirings and modules given by tables.

Elements are referred to by index internally; ``labels`` gives their printed
names. Every validator returns a :class:`Report` listing each violated axiom
together with a witnessing tuple of labels.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Callable, Iterable, Sequence


class StructureError(ValueError):
    """Malformed tables: wrong shape, out-of-range entries and the like."""


@dataclass(frozen=True)
class Violation:
    axiom: str
    witness: tuple
    internal: bool = False

    def __str__(self):
        tag = "INTERNAL " if self.internal else ""
        return f"{tag}{self.axiom}: " + ", ".join(str(w) for w in self.witness)


@dataclass
class Report:
    violations: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def add(self, axiom: str, *witness, internal: bool = False):
        self.violations.append(Violation(axiom, tuple(witness), internal))

    def extend(self, other: "Report", prefix: str = ""):
        for v in other.violations:
            self.violations.append(Violation(prefix + v.axiom, v.witness, v.internal))

    def first(self, axiom: str):
        for v in self.violations:
            if v.axiom == axiom:
                return v
        return None

    def axioms(self) -> list[str]:
        out = []
        for v in self.violations:
            if v.axiom not in out:
                out.append(v.axiom)
        return out

    def __bool__(self):
        return self.ok

    def __str__(self):
        if self.ok:
            return "valid"
        return "\n".join(str(v) for v in self.violations)


def _check_table(name: str, table, rows: int, cols: int, rng: int):
    if len(table) != rows or any(len(r) != cols for r in table):
        raise StructureError(f"{name} table has wrong shape")
    for r in table:
        for v in r:
            if not isinstance(v, int) or not 0 <= v < rng:
                raise StructureError(f"{name} table entry {v!r} out of range")


class FinitePomonoid:
    """``(R, <=, +, 0)`` on ``range(n)``; validity is checked by :meth:`validate`."""

    def __init__(self, labels: Sequence[str], leq, add, zero: int, name: str = ""):
        n = len(labels)
        if n == 0:
            raise StructureError("empty carrier")
        if len(set(labels)) != n:
            raise StructureError("duplicate element labels")
        self.labels = tuple(str(x) for x in labels)
        self.n = n
        self.name = name
        if len(leq) != n or any(len(r) != n for r in leq):
            raise StructureError("leq table has wrong shape")
        self.leq = tuple(tuple(bool(v) for v in r) for r in leq)
        _check_table("add", add, n, n, n)
        self.add = tuple(tuple(r) for r in add)
        if not 0 <= zero < n:
            raise StructureError("zero out of range")
        self.zero = zero

    @classmethod
    def from_functions(cls, elements: Sequence, leq: Callable, add: Callable, zero, name: str = ""):
        idx = {e: i for i, e in enumerate(elements)}
        return cls(
            [str(e) for e in elements],
            [[leq(a, b) for b in elements] for a in elements],
            [[idx[add(a, b)] for b in elements] for a in elements],
            idx[zero],
            name,
        )

    @property
    def elements(self) -> range:
        return range(self.n)

    def index(self, label: str) -> int:
        try:
            return self.labels.index(str(label))
        except ValueError:
            raise StructureError(f"unknown element {label!r}") from None

    def plus(self, a: int, b: int) -> int:
        return self.add[a][b]

    def le(self, a: int, b: int) -> bool:
        return self.leq[a][b]

    def downset(self, a: int) -> frozenset:
        return frozenset(x for x in range(self.n) if self.leq[x][a])

    def is_downset(self, s: Iterable[int]) -> bool:
        s = set(s)
        return all(x in s for a in s for x in range(self.n) if self.leq[x][a])

    def validate(self) -> Report:
        r = Report()
        L, A, n, z = self.leq, self.add, self.n, self.zero
        lab = self.labels
        for a in range(n):
            if not L[a][a]:
                r.add("reflexivity", lab[a])
        for a, b in product(range(n), repeat=2):
            if a != b and L[a][b] and L[b][a]:
                r.add("antisymmetry", lab[a], lab[b])
        for a, b, c in product(range(n), repeat=3):
            if L[a][b] and L[b][c] and not L[a][c]:
                r.add("order transitivity", lab[a], lab[b], lab[c])
        for a, b in product(range(n), repeat=2):
            if A[a][b] != A[b][a]:
                r.add("commutativity", lab[a], lab[b])
        for a, b, c in product(range(n), repeat=3):
            if A[A[a][b]][c] != A[a][A[b][c]]:
                r.add("associativity", lab[a], lab[b], lab[c])
        for a in range(n):
            if A[a][z] != a or A[z][a] != a:
                r.add("unit", lab[a])
        for a, b, c in product(range(n), repeat=3):
            if L[a][b] and not L[A[a][c]][A[b][c]]:
                r.add("compatibility", lab[a], lab[b], lab[c])
        for a in range(n):
            if not L[z][a]:
                r.add("dual integrality", lab[z], lab[a])
        return r

    def __repr__(self):
        return f"FinitePomonoid({self.name or list(self.labels)})"


class FinitePoSemiring:
    """A pomonoid ``(A, <=, +, 0)`` with a multiplication table and unit ``one``."""

    def __init__(self, base: FinitePomonoid, mul, one: int, name: str = ""):
        _check_table("mul", mul, base.n, base.n, base.n)
        if not 0 <= one < base.n:
            raise StructureError("one out of range")
        self.base = base
        self.mul = tuple(tuple(r) for r in mul)
        self.one = one
        self.name = name or base.name

    @classmethod
    def from_functions(cls, elements, leq, add, mul, zero, one, name: str = ""):
        base = FinitePomonoid.from_functions(elements, leq, add, zero, name)
        idx = {e: i for i, e in enumerate(elements)}
        table = [[idx[mul(a, b)] for b in elements] for a in elements]
        return cls(base, table, idx[one], name)

    @property
    def n(self):
        return self.base.n

    @property
    def labels(self):
        return self.base.labels

    def times(self, a: int, b: int) -> int:
        return self.mul[a][b]

    def validate(self) -> Report:
        r = Report()
        r.extend(self.base.validate(), "pomonoid ")
        M, A, L = self.mul, self.base.add, self.base.leq
        n, z, o, lab = self.n, self.base.zero, self.one, self.labels
        for a, b, c in product(range(n), repeat=3):
            if M[M[a][b]][c] != M[a][M[b][c]]:
                r.add("mul associativity", lab[a], lab[b], lab[c])
        for a in range(n):
            if M[a][o] != a or M[o][a] != a:
                r.add("mul unit", lab[a])
            if M[a][z] != z or M[z][a] != z:
                r.add("annihilation", lab[a])
        for a, b, c in product(range(n), repeat=3):
            if M[a][A[b][c]] != A[M[a][b]][M[a][c]]:
                r.add("left distributivity", lab[a], lab[b], lab[c])
            if M[A[a][b]][c] != A[M[a][c]][M[b][c]]:
                r.add("right distributivity", lab[a], lab[b], lab[c])
        for s, p, e in product(range(n), repeat=3):
            if L[s][p] and L[z][e]:
                if not L[M[s][e]][M[p][e]] or not L[M[e][s]][M[e][p]]:
                    r.add("mul monotonicity", lab[s], lab[p], lab[e])
        return r

    def __repr__(self):
        return f"FinitePoSemiring({self.name or list(self.labels)})"


class FiniteModule:
    """A po-semiring of scalars acting on a pomonoid through ``act[s][a]``."""

    def __init__(self, scalars: FinitePoSemiring, carrier: FinitePomonoid, act, name: str = ""):
        _check_table("act", act, scalars.n, carrier.n, carrier.n)
        self.scalars = scalars
        self.carrier = carrier
        self.act = tuple(tuple(r) for r in act)
        self.name = name

    def star(self, s: int, a: int) -> int:
        return self.act[s][a]

    def validate(self) -> Report:
        r = Report()
        S, R = self.scalars, self.carrier
        r.extend(S.validate(), "scalars ")
        r.extend(R.validate(), "carrier ")
        act = self.act
        ls, lr = S.labels, R.labels
        for s, p, a in product(range(S.n), range(S.n), range(R.n)):
            if act[S.mul[s][p]][a] != act[s][act[p][a]]:
                r.add("action associativity", ls[s], ls[p], lr[a])
            if act[S.base.add[s][p]][a] != R.add[act[s][a]][act[p][a]]:
                r.add("scalar distributivity", ls[s], ls[p], lr[a])
            if S.base.leq[s][p] and not R.leq[act[s][a]][act[p][a]]:
                r.add("scalar monotonicity", ls[s], ls[p], lr[a])
        for a in range(R.n):
            if act[S.one][a] != a:
                r.add("action unit", lr[a])
            if act[S.base.zero][a] != R.zero:
                r.add("zero action", lr[a])
        for s, a, b in product(range(S.n), range(R.n), range(R.n)):
            if R.add[act[s][a]][act[s][b]] != act[s][R.add[a][b]]:
                r.add("element distributivity", ls[s], lr[a], lr[b])
            if R.leq[a][b] and not R.leq[act[s][a]][act[s][b]]:
                r.add("element monotonicity", ls[s], lr[a], lr[b])
        return r

    def __repr__(self):
        return f"FiniteModule({self.name})"


def validate_structure(s) -> Report:
    return s.validate()


# --- stock structures ------------------------------------------------------------

def trivial_pomonoid() -> FinitePomonoid:
    return FinitePomonoid(["0"], [[True]], [[0]], 0, "trivial1")


def chain_join(n: int) -> FinitePomonoid:
    """The n-element chain with + = max."""
    return FinitePomonoid.from_functions(
        list(range(n)), lambda a, b: a <= b, max, 0, f"chain{n}"
    )


def truncated_sum(n: int) -> FinitePomonoid:
    """``{0..n-1}`` with ``min(x+y, n-1)``; ``truncated_sum(3)`` is N3."""
    top = n - 1
    return FinitePomonoid.from_functions(
        list(range(n)), lambda a, b: a <= b, lambda a, b: min(a + b, top), 0, f"N{n}"
    )


def powerset_pomonoid(base: Sequence[str]) -> FinitePomonoid:
    """``(P(A), subset, union, empty)``; elements are bitmasks printed as ``{a,b}``."""
    if len(base) > 4:
        raise StructureError("powerset pomonoid refused for more than 4 base elements")
    k = len(base)
    masks = list(range(1 << k))

    def show(m):
        return "{" + ",".join(base[i] for i in range(k) if m >> i & 1) + "}"

    return FinitePomonoid(
        [show(m) for m in masks],
        [[(a & b) == a for b in masks] for a in masks],
        [[a | b for b in masks] for a in masks],
        0,
        "powerset(" + ",".join(base) + ")",
    )


def boolean_semiring() -> FinitePoSemiring:
    return FinitePoSemiring.from_functions([0, 1], lambda a, b: a <= b, max, min, 0, 1, "bool")


def chain_semiring(n: int) -> FinitePoSemiring:
    """The n-chain with max as + and min as multiplication (one = top)."""
    return FinitePoSemiring.from_functions(
        list(range(n)), lambda a, b: a <= b, max, min, 0, n - 1, f"chain{n}"
    )


def truncated_semiring(n: int) -> FinitePoSemiring:
    """``{0..n-1}`` with truncated sum and product."""
    top = n - 1
    return FinitePoSemiring.from_functions(
        list(range(n)),
        lambda a, b: a <= b,
        lambda a, b: min(a + b, top),
        lambda a, b: min(a * b, top),
        0,
        1,
        f"N{n}",
    )


def regular_module(s: FinitePoSemiring) -> FiniteModule:
    """A po-semiring acting on its own additive pomonoid by left multiplication."""
    return FiniteModule(s, s.base, s.mul, f"{s.name} on itself")


def fixture_pomonoids() -> list[FinitePomonoid]:
    """Every dually integral Abelian pomonoid with at most 3 elements, up to isomorphism.

    With 0 the bottom, a 3-element carrier is either the chain 0<a<b or 0
    below two incomparable atoms. In the latter case a+b must be an upper
    bound of both atoms, which does not exist, so only chains remain; on
    the 3-chain ``a+a`` is a or b and ``a+b = b+b = b`` is forced. On two
    elements ``1+1 >= 1+0`` leaves only the join.
    """
    return [trivial_pomonoid(), chain_join(2), chain_join(3), truncated_sum(3)]


__all__ = [
    "StructureError", "Violation", "Report", "FinitePomonoid", "FinitePoSemiring",
    "FiniteModule", "validate_structure", "trivial_pomonoid", "chain_join", "truncated_sum",
    "powerset_pomonoid", "boolean_semiring", "chain_semiring", "truncated_semiring",
    "regular_module", "fixture_pomonoids",
]
