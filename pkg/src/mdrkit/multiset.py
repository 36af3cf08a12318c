"""Finite multisets with sum, sub-multiset order, lattice operations and images.

Finite multisets over any hashable domain form a dually integral Abelian
pomonoid under sum, with the empty multiset as unit and bottom.
"""

from __future__ import annotations

from collections import Counter
from itertools import product
from typing import Callable, Hashable, Iterable, Iterator, Mapping


class Multiset:
    """Immutable finite multiset.

    Only positive multiplicities are stored, so equality and hashing do not
    depend on insertion order or on zero entries.
    """

    __slots__ = ("_counts", "_hash")

    def __init__(self, items: Iterable[Hashable] = ()):
        counts: dict = {}
        for x in items:
            counts[x] = counts.get(x, 0) + 1
        self._counts = counts
        self._hash = None

    @classmethod
    def from_counts(cls, counts: Mapping[Hashable, int]) -> "Multiset":
        for k, n in counts.items():
            if not isinstance(n, int) or n < 0:
                raise ValueError(f"bad multiplicity {n!r} for {k!r}")
        m = cls.__new__(cls)
        m._counts = {k: n for k, n in counts.items() if n > 0}
        m._hash = None
        return m

    @classmethod
    def _trusted(cls, counts: dict) -> "Multiset":
        # counts already positive ints; skips validation on hot paths
        m = cls.__new__(cls)
        m._counts = counts
        m._hash = None
        return m

    # --- basic access -------------------------------------------------

    def __getitem__(self, x) -> int:
        return self._counts.get(x, 0)

    def count(self, x) -> int:
        return self._counts.get(x, 0)

    def root(self) -> frozenset:
        """The set of elements with positive multiplicity."""
        return frozenset(self._counts)

    def items(self):
        return self._counts.items()

    def __len__(self) -> int:
        return sum(self._counts.values())

    def __bool__(self) -> bool:
        return bool(self._counts)

    def __iter__(self) -> Iterator:
        for x, n in self._counts.items():
            for _ in range(n):
                yield x

    def __contains__(self, x) -> bool:
        return x in self._counts

    def sorted(self, key=None) -> list:
        return sorted(self, key=key if key is not None else _default_key)

    # --- algebra ------------------------------------------------------

    def __add__(self, other: "Multiset") -> "Multiset":
        c = dict(self._counts)
        for x, n in other._counts.items():
            c[x] = c.get(x, 0) + n
        return Multiset._trusted(c)

    def __sub__(self, other: "Multiset") -> "Multiset":
        oc = other._counts
        c = {}
        for x, n in self._counts.items():
            k = n - oc.get(x, 0)
            if k > 0:
                c[x] = k
        return Multiset._trusted(c)

    def __or__(self, other: "Multiset") -> "Multiset":
        c = dict(self._counts)
        for x, n in other._counts.items():
            c[x] = max(c.get(x, 0), n)
        return Multiset.from_counts(c)

    def __and__(self, other: "Multiset") -> "Multiset":
        return Multiset.from_counts(
            {x: min(n, other._counts.get(x, 0)) for x, n in self._counts.items()}
        )

    def __le__(self, other: "Multiset") -> bool:
        oc = other._counts
        return all(n <= oc.get(x, 0) for x, n in self._counts.items())

    def __ge__(self, other: "Multiset") -> bool:
        return other <= self

    def __lt__(self, other: "Multiset") -> bool:
        return self <= other and self != other

    def __gt__(self, other: "Multiset") -> bool:
        return other < self

    def __eq__(self, other) -> bool:
        if not isinstance(other, Multiset):
            return NotImplemented
        return self._counts == other._counts

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._counts.items()))
        return self._hash

    def map(self, f: Callable) -> "Multiset":
        c: dict = {}
        for x, n in self._counts.items():
            y = f(x)
            c[y] = c.get(y, 0) + n
        return Multiset.from_counts(c)

    def scale(self, k: int) -> "Multiset":
        return Multiset.from_counts({x: n * k for x, n in self._counts.items()})

    def submultisets(self) -> Iterator["Multiset"]:
        """Every sub-multiset, in a deterministic order."""
        keys = sorted(self._counts, key=_default_key)
        for ns in product(*(range(self._counts[k] + 1) for k in keys)):
            yield Multiset.from_counts(dict(zip(keys, ns)))

    # --- printing -----------------------------------------------------

    def __repr__(self) -> str:
        return "Multiset(" + self.__str__() + ")"

    def __str__(self) -> str:
        return "[" + ", ".join(str(x) for x in self.sorted()) + "]"

    def sort_key(self):
        return tuple(_default_key(x) for x in self.sorted())


EMPTY = Multiset()


def _default_key(x):
    key = getattr(x, "sort_key", None)
    if callable(key):
        return key()
    return (type(x).__name__, str(x))


# Function-style aliases used throughout the package.

def msum(x: Multiset, y: Multiset) -> Multiset:
    return x + y


def submultiset(x: Multiset, y: Multiset) -> bool:
    return x <= y


def join(x: Multiset, y: Multiset) -> Multiset:
    return x | y


def meet(x: Multiset, y: Multiset) -> Multiset:
    return x & y


def difference(x: Multiset, y: Multiset) -> Multiset:
    return x - y


def map_morphism(f: Callable, x: Multiset) -> Multiset:
    return x.map(f)


def msum_all(ms: Iterable[Multiset]) -> Multiset:
    c: Counter = Counter()
    for m in ms:
        c.update(dict(m.items()))
    return Multiset.from_counts(dict(c))


def maximal(ms: Iterable[Multiset]) -> list[Multiset]:
    """Maximal elements (an antichain) of a finite family, deterministically sorted."""
    uniq = sorted(set(ms), key=lambda m: (-len(m), m.sort_key()))
    out: list[Multiset] = []
    for m in uniq:
        if not any(m <= g for g in out):
            out.append(m)
    return sorted(out, key=lambda m: (len(m), m.sort_key()))


def downset(gens: Iterable[Multiset]) -> set[Multiset]:
    """All sub-multisets of the given generators."""
    out: set[Multiset] = set()
    for g in gens:
        out.update(g.submultisets())
    return out


def parse_multiset(src: str, element: Callable[[str], Hashable] = str) -> Multiset:
    """Parse ``[e1, e2, e2]``; element syntax is delegated to ``element``."""
    s = src.strip()
    if not (s.startswith("[") and s.endswith("]")):
        raise ValueError(f"multiset literal must be bracketed: {src!r}")
    body = s[1:-1].strip()
    if not body:
        return EMPTY
    return Multiset(element(tok.strip()) for tok in _split_top(body))


def _split_top(body: str) -> list[str]:
    # split on commas not nested in parentheses or brackets
    parts, depth, cur = [], 0, []
    for ch in body:
        if ch in "([":
            depth += 1
        elif ch in ")]":
            depth -= 1
        if ch == "," and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    parts.append("".join(cur))
    if any(not p.strip() for p in parts):
        raise ValueError(f"empty element in multiset literal: [{body}]")
    return parts
