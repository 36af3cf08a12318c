"""Line-based structure files.

A file is a sequence of blocks. A block opens with ``<kind> <name>`` and
runs until the next header. ``#`` starts a comment. Kinds and their lines::

    pomonoid N3
    elements 0 1 2
    zero 0
    leq 0<=1 1<=2            # closed reflexively and transitively
    add 0+0=0 0+1=1 1+1=2    # closed by commutativity, then must be total

    posemiring S             # pomonoid lines plus
    mul a*b=c ...            # every product, no closure
    one 1

    module M
    scalars S                # names of earlier blocks
    carrier N3
    act s*a=b ...

    dr D                     # also: do, ds
    base N3
    pairs a|-b ...           # dr: the relation as listed
    image a={b,c} ...        # do: one image per element
    member {} {a,b} ...      # ds: the family

    algebra A
    elements 0 1/2 1
    op & a&b=c ...           # & | * are closed by commutativity, -> is not
    const 1 1                # constant name, element
    chain 3                  # instead of tables: the Lukasiewicz chain
    constants                # instead of tables: one constant per element

    hypermatrix H
    algebra A
    filter-gen [0,1] [1]     # generators of the downset

    fuzzymatrix Z
    chain 3
    threshold 1/2            # or "family"
    f id
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product

from .algebra import FiniteAlgebra, FiniteRLAlgebra, LukChain
from .deductive import do_from_images, dr_from_pairs, ds_from_family
from .matrices import FuzzyMatrix, Hypermatrix, identity_fuzzy
from .multiset import parse_multiset
from .structures import FiniteModule, FinitePomonoid, FinitePoSemiring, StructureError


class StructFileError(ValueError):
    def __init__(self, msg: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {msg}" if line else msg)


KINDS = ("pomonoid", "posemiring", "module", "dr", "do", "ds", "algebra", "hypermatrix", "fuzzymatrix")
COMMUTATIVE = ("&", "|", "*")


@dataclass
class Block:
    kind: str
    name: str
    line: int
    lines: list = field(default_factory=list)  # (lineno, key, rest)

    def get(self, key: str, required: bool = True):
        hits = [(n, r) for n, k, r in self.lines if k == key]
        if len(hits) > 1:
            raise StructFileError(f"{self.kind} {self.name}: repeated '{key}'", hits[1][0])
        if not hits:
            if required:
                raise StructFileError(f"{self.kind} {self.name}: missing '{key}'", self.line)
            return None, None
        return hits[0]

    def all(self, key: str) -> list:
        return [(n, r) for n, k, r in self.lines if k == key]

    def keys(self) -> set:
        return {k for _, k, _ in self.lines}


def split_blocks(text: str) -> list[Block]:
    blocks: list[Block] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, _, rest = line.partition(" ")
        rest = rest.strip()
        if key in KINDS and not (blocks and _inner(blocks[-1], key)):
            if not rest or " " in rest:
                raise StructFileError(f"'{key}' needs a single name", lineno)
            blocks.append(Block(key, rest, lineno))
        elif not blocks:
            raise StructFileError(f"expected a block header, got '{key}'", lineno)
        else:
            blocks[-1].lines.append((lineno, key, rest))
    return blocks


# a hypermatrix names its algebra with a line that looks like a header;
# the first such line belongs to the block, a second one opens a new block
_INNER = {"hypermatrix": ("algebra",)}


def _inner(b: Block, key: str) -> bool:
    return key in _INNER.get(b.kind, ()) and key not in b.keys()


def _closure_leq(n: int, pairs) -> list:
    leq = [[i == j for j in range(n)] for i in range(n)]
    for a, b in pairs:
        leq[a][b] = True
    for k, i, j in product(range(n), repeat=3):
        if leq[i][k] and leq[k][j]:
            leq[i][j] = True
    return leq


def _elements(b: Block) -> list[str]:
    n, rest = b.get("elements")
    els = rest.split()
    if not els:
        raise StructFileError("no elements", n)
    if len(set(els)) != len(els):
        raise StructFileError("duplicate elements", n)
    return els


def _index(els, tok, lineno) -> int:
    try:
        return els.index(tok)
    except ValueError:
        raise StructFileError(f"unknown element {tok!r}", lineno) from None


def _entries(b: Block, key: str, sym: str, els, commutative: bool, total: bool = True) -> list:
    n = len(els)
    tab = [[None] * n for _ in range(n)]
    pat = re.compile(rf"^(.+?){re.escape(sym)}(.+)=(.+)$")
    for lineno, rest in b.all(key):
        toks = rest.split()
        if key == "op":
            toks = toks[1:]
        for tok in toks:
            m = pat.match(tok)
            if not m:
                raise StructFileError(f"bad entry {tok!r}, expected x{sym}y=z", lineno)
            x, y, z = (_index(els, t, lineno) for t in m.groups())
            for i, j in ((x, y), (y, x)) if commutative else ((x, y),):
                if tab[i][j] is not None and tab[i][j] != z:
                    raise StructFileError(f"conflicting entry for {els[i]}{sym}{els[j]}", lineno)
                tab[i][j] = z
    if total:
        for i, j in product(range(n), repeat=2):
            if tab[i][j] is None:
                raise StructFileError(f"{b.kind} {b.name}: {els[i]}{sym}{els[j]} undefined", b.line)
    return tab


def _pomonoid(b: Block) -> FinitePomonoid:
    els = _elements(b)
    n, z = b.get("zero")
    zero = _index(els, z.strip(), n)
    pairs = []
    for lineno, rest in b.all("leq"):
        for tok in rest.split():
            if "<=" not in tok:
                raise StructFileError(f"bad leq entry {tok!r}", lineno)
            x, y = tok.split("<=", 1)
            pairs.append((_index(els, x, lineno), _index(els, y, lineno)))
    leq = _closure_leq(len(els), pairs)
    add = _entries(b, "add", "+", els, True)
    return FinitePomonoid(els, leq, add, zero, b.name)


def _semiring(b: Block) -> FinitePoSemiring:
    base = _pomonoid(b)
    els = list(base.labels)
    mul = _entries(b, "mul", "*", els, False)
    n, one = b.get("one")
    return FinitePoSemiring(base, mul, _index(els, one.strip(), n), b.name)


def _ref(b: Block, key: str, env: dict, kinds):
    n, name = b.get(key)
    obj = env.get(name.strip())
    if obj is None or not isinstance(obj, kinds):
        raise StructFileError(f"'{name}' does not name an earlier suitable block", n)
    return obj


def _module(b: Block, env) -> FiniteModule:
    S = _ref(b, "scalars", env, FinitePoSemiring)
    R = _ref(b, "carrier", env, FinitePomonoid)
    act = [[None] * R.n for _ in range(S.n)]
    for lineno, rest in b.all("act"):
        for tok in rest.split():
            m = re.match(r"^(.+?)\*(.+)=(.+)$", tok)
            if not m:
                raise StructFileError(f"bad act entry {tok!r}", lineno)
            s = _index(list(S.labels), m.group(1), lineno)
            a, v = (_index(list(R.labels), t, lineno) for t in m.group(2, 3))
            act[s][a] = v
    for s, a in product(range(S.n), range(R.n)):
        if act[s][a] is None:
            raise StructFileError(f"module {b.name}: {S.labels[s]}*{R.labels[a]} undefined", b.line)
    return FiniteModule(S, R, act, b.name)


def _set(tok: str, els, lineno) -> frozenset:
    tok = tok.strip()
    if not (tok.startswith("{") and tok.endswith("}")):
        raise StructFileError(f"expected a braced set, got {tok!r}", lineno)
    body = tok[1:-1].strip()
    return frozenset(_index(els, t.strip(), lineno) for t in body.split(",")) if body else frozenset()


def _relational(b: Block, env):
    base = _ref(b, "base", env, FinitePomonoid)
    els = list(base.labels)
    if b.kind == "dr":
        pairs = []
        for lineno, rest in b.all("pairs"):
            for tok in rest.split():
                if "|-" not in tok:
                    raise StructFileError(f"bad pair {tok!r}, expected a|-b", lineno)
                x, y = tok.split("|-", 1)
                pairs.append((_index(els, x, lineno), _index(els, y, lineno)))
        return dr_from_pairs(base, pairs)
    if b.kind == "do":
        images = [None] * base.n
        for lineno, rest in b.all("image"):
            for tok in re.findall(r"[^\s=]+=\{[^}]*\}", rest):
                a, s = tok.split("=", 1)
                images[_index(els, a, lineno)] = _set(s, els, lineno)
        for i, im in enumerate(images):
            if im is None:
                raise StructFileError(f"do {b.name}: no image for {els[i]}", b.line)
        return do_from_images(base, images)
    family = []
    for lineno, rest in b.all("member"):
        family.extend(_set(t, els, lineno) for t in re.findall(r"\{[^}]*\}", rest))
    return ds_from_family(base, family)


def _algebra(b: Block):
    n, ch = b.get("chain", required=False)
    if ch is not None:
        try:
            k = int(ch)
        except ValueError:
            raise StructFileError("chain needs an integer", n) from None
        if k < 2:
            raise StructFileError("chain needs at least 2 elements", n)
        return LukChain(k)
    els = _elements(b)
    if "constants" in b.keys():
        return FiniteAlgebra(els, {}, {e: i for i, e in enumerate(els)}, b.name)
    ops = {}
    for lineno, rest in b.all("op"):
        sym = rest.split()[0] if rest.split() else ""
        if sym not in ("&", "|", "*", "->"):
            raise StructFileError(f"unknown operation {sym!r}", lineno)
        if sym in ops:
            continue
        ops[sym] = _entries(_only(b, sym), "op", sym, els, sym in COMMUTATIVE)
    consts = {}
    for lineno, rest in b.all("const"):
        parts = rest.split()
        if len(parts) != 2:
            raise StructFileError("const needs a name and an element", lineno)
        consts[parts[0]] = _index(els, parts[1], lineno)
    if len(ops) == 4 and "1" in consts:
        one = consts.pop("1")
        return FiniteRLAlgebra(els, ops, one, b.name, consts)
    return FiniteAlgebra(els, ops, consts, b.name)


def _only(b: Block, sym: str) -> Block:
    keep = [(n, k, r) for n, k, r in b.lines if k != "op" or r.split()[0] == sym]
    return Block(b.kind, b.name, b.line, keep)


def _hyper(b: Block, env) -> Hypermatrix:
    alg = _ref(b, "algebra", env, FiniteAlgebra)
    gens = []
    for lineno, rest in b.all("filter-gen"):
        for tok in re.findall(r"\[[^\]]*\]", rest):
            try:
                gens.append(parse_multiset(tok, alg.index))
            except (StructureError, ValueError) as e:
                raise StructFileError(str(e), lineno) from None
    return Hypermatrix(alg, gens, b.name)


def _fuzzy(b: Block) -> FuzzyMatrix:
    n, ch = b.get("chain")
    try:
        k = int(ch)
    except ValueError:
        raise StructFileError("chain needs an integer", n) from None
    n, th = b.get("threshold", required=False)
    threshold = None
    if th is not None and th.strip() != "family":
        try:
            threshold = Fraction(th.strip())
        except ValueError:
            raise StructFileError(f"bad threshold {th!r}", n) from None
        if not 0 <= threshold <= 1:
            raise StructFileError("threshold must lie in [0,1]", n)
    n, f = b.get("f", required=False)
    if f is not None and f.strip() != "id":
        raise StructFileError("only 'f id' is supported", n)
    return identity_fuzzy(k, threshold)


def parse_structure_file(text: str) -> dict:
    """Name -> structure, in file order. Raises ``StructFileError``."""
    env: dict = {}
    for b in split_blocks(text):
        if b.name in env:
            raise StructFileError(f"duplicate block name {b.name}", b.line)
        try:
            if b.kind == "pomonoid":
                obj = _pomonoid(b)
            elif b.kind == "posemiring":
                obj = _semiring(b)
            elif b.kind == "module":
                obj = _module(b, env)
            elif b.kind in ("dr", "do", "ds"):
                obj = _relational(b, env)
            elif b.kind == "algebra":
                obj = _algebra(b)
            elif b.kind == "hypermatrix":
                obj = _hyper(b, env)
            else:
                obj = _fuzzy(b)
        except StructureError as e:
            raise StructFileError(f"{b.kind} {b.name}: {e}", b.line) from None
        env[b.name] = obj
    return env


def load_structure_file(path: str) -> dict:
    with open(path, encoding="utf-8") as fh:
        return parse_structure_file(fh.read())


__all__ = ["StructFileError", "parse_structure_file", "load_structure_file", "split_blocks"]
