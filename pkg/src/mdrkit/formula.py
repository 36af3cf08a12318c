"""Formulas of the language with connectives meet, join, fusion, implication and 1.

Concrete syntax::

    p  q1  x_2          variables  [a-z][a-zA-Z0-9_]*
    1                   the unit constant (0 is accepted as a further constant)
    a * b   a ⊗ b       fusion
    a & b               meet
    a | b               join
    a -> b              implication (right associative)

Precedence from tightest: ``*``, ``&``, ``|``, ``->``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping

from .multiset import EMPTY, Multiset, msum_all, parse_multiset


class FormulaSyntaxError(ValueError):
    def __init__(self, msg: str, pos: int, src: str = ""):
        super().__init__(f"{msg} at position {pos}" + (f" in {src!r}" if src else ""))
        self.pos = pos


class Formula:
    __slots__ = ("_hash", "_str")

    def sort_key(self):
        return str(self)

    def __lt__(self, other: "Formula") -> bool:
        return str(self) < str(other)

    def __str__(self) -> str:
        if self._str is None:
            self._str = _show(self, 0)
        return self._str


class Var(Formula):
    __slots__ = ("name",)

    def __init__(self, name: str):
        self.name = name
        self._hash = hash(("var", name))
        self._str = None

    def __eq__(self, other):
        return isinstance(other, Var) and other.name == self.name

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"Var({self.name!r})"


class Const(Formula):
    __slots__ = ("name",)

    def __init__(self, name: str):
        self.name = name
        self._hash = hash(("const", name))
        self._str = None

    def __eq__(self, other):
        return isinstance(other, Const) and other.name == self.name

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"Const({self.name!r})"


class Binary(Formula):
    __slots__ = ("left", "right")
    symbol = "?"
    prec = 0

    def __init__(self, left: Formula, right: Formula):
        self.left = left
        self.right = right
        self._hash = hash((self.symbol, left._hash, right._hash))
        self._str = None

    def __eq__(self, other):
        if self is other:
            return True
        return (
            type(other) is type(self)
            and other._hash == self._hash
            and other.left == self.left
            and other.right == self.right
        )

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"{type(self).__name__}({self.left!r}, {self.right!r})"


class Fusion(Binary):
    __slots__ = ()
    symbol = "*"
    prec = 4


class Meet(Binary):
    __slots__ = ()
    symbol = "&"
    prec = 3


class Join(Binary):
    __slots__ = ()
    symbol = "|"
    prec = 2


class Implication(Binary):
    __slots__ = ()
    symbol = "->"
    prec = 1


ONE = Const("1")
BINARY = {cls.symbol: cls for cls in (Fusion, Meet, Join, Implication)}


def _show(f: Formula, ctx: int) -> str:
    if isinstance(f, Var):
        return f.name
    if isinstance(f, Const):
        return f.name
    assert isinstance(f, Binary)
    p = f.prec
    if isinstance(f, Implication):
        s = f"{_show(f.left, p + 1)} -> {_show(f.right, p)}"
    else:
        s = f"{_show(f.left, p)} {f.symbol} {_show(f.right, p + 1)}"
    return f"({s})" if p < ctx else s


# --- parsing ------------------------------------------------------------

_TOKEN = re.compile(
    r"\s*(?:(?P<var>[a-z][a-zA-Z0-9_]*)|(?P<const>[01])|(?P<op>->|→|\*|⊗|·|&|∧|\||∨)|(?P<lp>\()|(?P<rp>\)))"
)
_ALIASES = {"→": "->", "⊗": "*", "·": "*", "∧": "&", "∨": "|"}
_LEVELS = ["->", "|", "&", "*"]


def _tokenize(src: str) -> list[tuple[str, str, int]]:
    toks = []
    pos = 0
    while pos < len(src):
        if src[pos:].strip() == "":
            break
        m = _TOKEN.match(src, pos)
        if not m:
            start = pos + (len(src[pos:]) - len(src[pos:].lstrip()))
            raise FormulaSyntaxError(f"unexpected character {src[start]!r}", start, src)
        kind = m.lastgroup
        text = m.group(kind)
        start = m.start(kind)
        if kind == "op":
            text = _ALIASES.get(text, text)
        toks.append((kind, text, start))
        pos = m.end()
    toks.append(("end", "", len(src)))
    return toks


class _Parser:
    def __init__(self, src: str):
        self.src = src
        self.toks = _tokenize(src)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def parse(self) -> Formula:
        f = self.level(0)
        kind, text, pos = self.peek()
        if kind != "end":
            raise FormulaSyntaxError(f"unexpected {text!r}", pos, self.src)
        return f

    def level(self, k: int) -> Formula:
        if k == len(_LEVELS):
            return self.atom()
        op = _LEVELS[k]
        left = self.level(k + 1)
        if op == "->":
            kind, text, _ = self.peek()
            if kind == "op" and text == "->":
                self.take()
                return Implication(left, self.level(k))
            return left
        while True:
            kind, text, _ = self.peek()
            if kind == "op" and text == op:
                self.take()
                left = BINARY[op](left, self.level(k + 1))
            else:
                return left

    def atom(self) -> Formula:
        kind, text, pos = self.take()
        if kind == "var":
            return Var(text)
        if kind == "const":
            return Const(text)
        if kind == "lp":
            f = self.level(0)
            k2, t2, p2 = self.take()
            if k2 != "rp":
                raise FormulaSyntaxError("expected ')'", p2, self.src)
            return f
        if kind == "end":
            raise FormulaSyntaxError("unexpected end of input", pos, self.src)
        raise FormulaSyntaxError(f"unexpected {text!r}", pos, self.src)


def parse_formula(src: str) -> Formula:
    return _Parser(src).parse()


def parse_formula_multiset(src: str) -> Multiset:
    return parse_multiset(src, parse_formula)


# --- structural helpers ---------------------------------------------------

def variables(f: Formula) -> set[str]:
    out: set[str] = set()
    stack = [f]
    while stack:
        g = stack.pop()
        if isinstance(g, Var):
            out.add(g.name)
        elif isinstance(g, Binary):
            stack.append(g.left)
            stack.append(g.right)
    return out


def variables_of(fs: Iterable[Formula]) -> list[str]:
    out: set[str] = set()
    for f in fs:
        out |= variables(f)
    return sorted(out)


def subformulas(f: Formula) -> Iterator[Formula]:
    yield f
    if isinstance(f, Binary):
        yield from subformulas(f.left)
        yield from subformulas(f.right)


def size(f: Formula) -> int:
    if isinstance(f, Binary):
        return 1 + size(f.left) + size(f.right)
    return 1


def match(pattern: Formula, target: Formula, binding: dict | None = None) -> dict | None:
    """One-way syntactic matching: a binding of pattern variables or None."""
    b = {} if binding is None else dict(binding)
    stack = [(pattern, target)]
    while stack:
        p, t = stack.pop()
        if isinstance(p, Var):
            seen = b.get(p.name)
            if seen is None:
                b[p.name] = t
            elif seen != t:
                return None
        elif isinstance(p, Const):
            if p != t:
                return None
        else:
            if type(t) is not type(p):
                return None
            stack.append((p.right, t.right))
            stack.append((p.left, t.left))
    return b


# --- substitutions ------------------------------------------------------------

class Substitution:
    """Finite-support endomorphism of the formula algebra (identity elsewhere)."""

    __slots__ = ("_map", "_hash")

    def __init__(self, mapping: Mapping[str, Formula] | None = None):
        m = {}
        for k, v in (mapping or {}).items():
            if not (isinstance(v, Var) and v.name == k):
                m[k] = v
        self._map = m
        self._hash = hash(frozenset(m.items()))

    def __call__(self, f: Formula) -> Formula:
        if not self._map:
            return f
        return self._apply(f)

    def _apply(self, f: Formula) -> Formula:
        if isinstance(f, Var):
            return self._map.get(f.name, f)
        if isinstance(f, Binary):
            left = self._apply(f.left)
            right = self._apply(f.right)
            if left is f.left and right is f.right:
                return f
            return type(f)(left, right)
        return f

    def apply_multiset(self, g: Multiset) -> Multiset:
        return g.map(self)

    def compose(self, other: "Substitution") -> "Substitution":
        """``self ∘ other``: apply ``other`` first."""
        m = {k: self(v) for k, v in other._map.items()}
        for k, v in self._map.items():
            m.setdefault(k, v)
        return Substitution(m)

    def support(self) -> frozenset:
        return frozenset(self._map)

    def items(self):
        return self._map.items()

    def get(self, name: str) -> Formula:
        return self._map.get(name, Var(name))

    def __eq__(self, other):
        return isinstance(other, Substitution) and self._map == other._map

    def __hash__(self):
        return self._hash

    def __str__(self):
        return "{" + ",".join(f"{k}={v}" for k, v in sorted(self._map.items())) + "}"

    __repr__ = __str__

    def sort_key(self):
        return str(self)


IDENTITY = Substitution()


def apply_subst(s: Substitution, g: Multiset) -> Multiset:
    return g.map(s)


def subst_product(x: Multiset, y: Multiset) -> Multiset:
    """Product in the semiring of finite multisets of substitutions."""
    return Multiset(s.compose(p) for s in x for p in y)


def sigma_action(x: Multiset, g: Multiset) -> Multiset:
    """``[s1..sn] * G = s1(G) + ... + sn(G)``."""
    return msum_all(g.map(s) for s in x)


# --- consecutions -------------------------------------------------------------

@dataclass(frozen=True)
class Consecution:
    premises: Multiset
    conclusions: Multiset

    def __str__(self):
        return f"{self.premises} |> {self.conclusions}"

    def substitute(self, s: Substitution) -> "Consecution":
        return Consecution(self.premises.map(s), self.conclusions.map(s))

    def variables(self) -> list[str]:
        return variables_of(list(self.premises) + list(self.conclusions))

    @property
    def single_conclusion(self) -> bool:
        return len(self.conclusions) == 1


_TURNSTILE = re.compile(r"\|>|▷")


def parse_consecution(src: str) -> Consecution:
    parts = _TURNSTILE.split(src)
    if len(parts) != 2:
        raise FormulaSyntaxError("expected exactly one '|>'", 0, src)
    return Consecution(parse_formula_multiset(parts[0]), parse_formula_multiset(parts[1]))


def fusion_of(fs: Iterable[Formula]) -> Formula:
    """Left-nested fusion of the formulas; 1 for none."""
    out = None
    for f in fs:
        out = f if out is None else Fusion(out, f)
    return ONE if out is None else out


__all__ = [
    "Formula", "Var", "Const", "Binary", "Fusion", "Meet", "Join", "Implication", "ONE",
    "FormulaSyntaxError", "parse_formula", "parse_formula_multiset", "variables",
    "variables_of", "subformulas", "match", "Substitution", "IDENTITY", "apply_subst",
    "subst_product", "sigma_action", "Consecution", "parse_consecution", "fusion_of",
    "EMPTY",
]
