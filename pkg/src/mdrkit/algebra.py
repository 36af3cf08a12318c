"""Finite algebras for the formula language, residuated lattices and Lukasiewicz chains.

Evaluation is vectorised: a formula is evaluated at once on every valuation
of its variables by integer table look-ups, so verdicts stay exact.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Iterable, Mapping, Sequence

import numpy as np

from .formula import Binary, Const, Consecution, Formula, Var, variables_of
from .structures import Report, StructureError

MAX_VALUATIONS = 2_000_000
OPS = ("&", "|", "*", "->")


class FiniteAlgebra:
    """Carrier ``range(n)`` with binary operation tables and named constants.

    Only the symbols present in ``ops``/``consts`` may occur in evaluated
    formulas; anything else raises ``StructureError``.
    """

    def __init__(self, labels: Sequence[str], ops: Mapping[str, Sequence[Sequence[int]]] | None = None,
                 consts: Mapping[str, int] | None = None, name: str = ""):
        self.labels = tuple(str(x) for x in labels)
        self.n = len(self.labels)
        if self.n == 0:
            raise StructureError("empty carrier")
        self.name = name
        self.ops: dict = {}
        for sym, tab in (ops or {}).items():
            if sym not in OPS:
                raise StructureError(f"unknown operation symbol {sym!r}")
            arr = np.asarray(tab, dtype=np.int64)
            if arr.shape != (self.n, self.n) or arr.min(initial=0) < 0 or arr.max(initial=0) >= self.n:
                raise StructureError(f"table for {sym!r} malformed")
            self.ops[sym] = arr
        self.consts = dict(consts or {})
        for k, v in self.consts.items():
            if not 0 <= v < self.n:
                raise StructureError(f"constant {k} out of range")

    def index(self, label) -> int:
        try:
            return self.labels.index(str(label))
        except ValueError:
            raise StructureError(f"unknown element {label!r}") from None

    def op(self, sym: str, a: int, b: int) -> int:
        return int(self.ops[sym][a, b])

    # evaluation ------------------------------------------------------

    def evaluate(self, f: Formula, valuation: Mapping[str, int]) -> int:
        if isinstance(f, Var):
            return valuation[f.name]
        if isinstance(f, Const):
            try:
                return self.consts[f.name]
            except KeyError:
                raise StructureError(f"algebra {self.name!r} has no constant {f.name}") from None
        tab = self.ops.get(f.symbol)
        if tab is None:
            raise StructureError(f"algebra {self.name!r} has no operation {f.symbol}")
        return int(tab[self.evaluate(f.left, valuation), self.evaluate(f.right, valuation)])

    def evaluate_all(self, f: Formula, grid: Mapping[str, np.ndarray], shape) -> np.ndarray:
        """Values of ``f`` on every valuation of a grid (arrays indexed like ``shape``)."""
        cache: dict = {}

        def go(g):
            hit = cache.get(g)
            if hit is not None:
                return hit
            if isinstance(g, Var):
                out = grid[g.name]
            elif isinstance(g, Const):
                if g.name not in self.consts:
                    raise StructureError(f"algebra {self.name!r} has no constant {g.name}")
                out = np.full(shape, self.consts[g.name], dtype=np.int64)
            else:
                tab = self.ops.get(g.symbol)
                if tab is None:
                    raise StructureError(f"algebra {self.name!r} has no operation {g.symbol}")
                out = tab[go(g.left), go(g.right)]
            cache[g] = out
            return out

        return go(f)

    def grid(self, names: Sequence[str]):
        k = len(names)
        if self.n ** k > MAX_VALUATIONS:
            raise StructureError(f"{self.n}^{k} valuations exceed the guard of {MAX_VALUATIONS}")
        shape = (self.n ** k,)
        if k == 0:
            return {}, (1,)
        idx = np.indices((self.n,) * k).reshape(k, -1)
        return {v: idx[i] for i, v in enumerate(names)}, shape

    def valuations(self, names: Sequence[str]):
        for vals in product(range(self.n), repeat=len(names)):
            yield dict(zip(names, vals))

    def __repr__(self):
        return f"FiniteAlgebra({self.name or list(self.labels)})"


class FiniteRLAlgebra(FiniteAlgebra):
    """Commutative integral residuated lattice; order is read off the meet."""

    def __init__(self, labels, ops, one: int, name: str = "", extra_consts=None):
        consts = {"1": one}
        consts.update(extra_consts or {})
        super().__init__(labels, ops, consts, name)
        missing = [s for s in OPS if s not in self.ops]
        if missing:
            raise StructureError(f"residuated lattice needs tables for {missing}")
        self.one = one
        m = self.ops["&"]
        self.leq = np.array([[m[a, b] == a for b in range(self.n)] for a in range(self.n)])

    def le(self, a: int, b: int) -> bool:
        return bool(self.leq[a, b])

    def fusion_all(self, arrays: Iterable[np.ndarray], shape) -> np.ndarray:
        out = np.full(shape, self.one, dtype=np.int64)
        tab = self.ops["*"]
        for a in arrays:
            out = tab[out, a]
        return out

    def validate(self) -> Report:
        r = Report()
        n = self.n
        M, J, F, I = (self.ops[s] for s in OPS)
        lab = self.labels
        L = self.leq
        for a, b in product(range(n), repeat=2):
            if M[a, b] != M[b, a]:
                r.add("meet commutative", lab[a], lab[b])
            if J[a, b] != J[b, a]:
                r.add("join commutative", lab[a], lab[b])
            if F[a, b] != F[b, a]:
                r.add("fusion commutative", lab[a], lab[b])
            if M[a, J[a, b]] != a or J[a, M[a, b]] != a:
                r.add("absorption", lab[a], lab[b])
        for a in range(n):
            if M[a, a] != a or J[a, a] != a:
                r.add("idempotence", lab[a])
            if F[a, self.one] != a:
                r.add("fusion unit", lab[a])
            if not L[a, self.one]:
                r.add("integrality", lab[a])
        for a, b, c in product(range(n), repeat=3):
            if M[M[a, b], c] != M[a, M[b, c]]:
                r.add("meet associative", lab[a], lab[b], lab[c])
            if J[J[a, b], c] != J[a, J[b, c]]:
                r.add("join associative", lab[a], lab[b], lab[c])
            if F[F[a, b], c] != F[a, F[b, c]]:
                r.add("fusion associative", lab[a], lab[b], lab[c])
            if bool(L[F[a, b], c]) != bool(L[a, I[b, c]]):
                r.add("residuation", lab[a], lab[b], lab[c])
        return r


def _frac_label(k: int, d: int) -> str:
    f = Fraction(k, d)
    return str(f.numerator) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"


class LukChain(FiniteRLAlgebra):
    """``{0, 1/(n-1), ..., 1}`` with the Lukasiewicz operations; element i means i/(n-1)."""

    def __init__(self, n: int):
        if n < 2:
            raise StructureError("a Lukasiewicz chain needs at least 2 elements")
        d = n - 1
        r = range(n)
        ops = {
            "&": [[min(i, j) for j in r] for i in r],
            "|": [[max(i, j) for j in r] for i in r],
            "*": [[max(0, i + j - d) for j in r] for i in r],
            "->": [[min(d, d - i + j) for j in r] for i in r],
        }
        super().__init__([_frac_label(i, d) for i in r], ops, d, f"L{n}", {"0": 0})
        self.size = n

    def value(self, i: int) -> Fraction:
        return Fraction(i, self.size - 1)


def fusion_values(alg: FiniteRLAlgebra, fs: Iterable[Formula], grid, shape) -> np.ndarray:
    return alg.fusion_all((alg.evaluate_all(f, grid, shape) for f in fs), shape)


def first_refutation(alg: FiniteRLAlgebra, c: Consecution):
    """Lexicographically least valuation with ``*G`` not below ``*D``, or None."""
    names = c.variables()
    grid, shape = alg.grid(names)
    lhs = fusion_values(alg, c.premises.sorted(), grid, shape)
    rhs = fusion_values(alg, c.conclusions.sorted(), grid, shape)
    bad = ~alg.leq[lhs, rhs]
    if not bad.any():
        return None
    i = int(np.argmax(bad))
    return {v: int(grid[v][i]) for v in names}


def rl_consequence(algebras: Sequence[FiniteRLAlgebra], c: Consecution) -> bool:
    """``*Gamma <= *Delta`` under every valuation in every listed algebra (empty fusion is 1)."""
    return all(first_refutation(a, c) is None for a in algebras)


# --- the Lukasiewicz oracle -------------------------------------------------------

@dataclass
class OracleVerdict:
    valid: bool
    max_chain: int
    witness: dict = field(default_factory=dict)  # var -> Fraction
    chain: int | None = None
    source: str = ""  # "chain" or "sample"

    @property
    def label(self) -> str:
        return f"Valid≤{self.max_chain}" if self.valid else "Invalid"

    def witness_text(self) -> str:
        return " ".join(f"{k}={_frac_text(v)}" for k, v in sorted(self.witness.items()))

    def __str__(self):
        return self.label if self.valid else f"Invalid {self.witness_text()}".rstrip()


def _frac_text(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


_CHAINS: dict = {}


def luk_chain(n: int) -> LukChain:
    ch = _CHAINS.get(n)
    if ch is None:
        ch = _CHAINS[n] = LukChain(n)
    return ch


def _scaled_eval(f: Formula, vals: Mapping[str, np.ndarray], d: np.ndarray, cache: dict) -> np.ndarray:
    # Lukasiewicz operations on numerators over per-sample denominators d
    hit = cache.get(f)
    if hit is not None:
        return hit
    if isinstance(f, Var):
        out = vals[f.name]
    elif isinstance(f, Const):
        if f.name == "1":
            out = d
        elif f.name == "0":
            out = np.zeros_like(d)
        else:
            raise StructureError(f"unknown constant {f.name}")
    else:
        a = _scaled_eval(f.left, vals, d, cache)
        b = _scaled_eval(f.right, vals, d, cache)
        s = f.symbol
        if s == "&":
            out = np.minimum(a, b)
        elif s == "|":
            out = np.maximum(a, b)
        elif s == "*":
            out = np.maximum(0, a + b - d)
        else:
            out = np.minimum(d, d - a + b)
    cache[f] = out
    return out


def mv_oracle(c: Consecution, max_chain: int = 11, samples: int = 10_000, seed: int = 0,
              max_den: int = 64) -> OracleVerdict:
    """Bounded refutation search for ``*Gamma <= *Delta`` in the standard MV-algebra.

    Chains L2..L_max_chain are scanned exhaustively; then ``samples`` random
    valuations by exact rationals are tried (each sample draws a common
    denominator up to ``max_den`` and numerators for every variable). An
    Invalid verdict carries an exact refuting valuation; Valid only means
    nothing was found within these bounds.
    """
    if max_chain < 2:
        raise ValueError("max_chain must be at least 2")
    names = c.variables()
    for n in range(2, max_chain + 1):
        ch = luk_chain(n)
        w = first_refutation(ch, c)
        if w is not None:
            return OracleVerdict(False, max_chain, {k: ch.value(v) for k, v in w.items()}, n, "chain")
    if samples > 0 and names:
        rng = np.random.default_rng(seed)
        d = rng.integers(1, max_den + 1, size=samples)
        vals = {v: (rng.random(samples) * (d + 1)).astype(np.int64) for v in names}
        for v in names:
            vals[v] = np.minimum(vals[v], d)
        cache: dict = {}
        lhs, rhs = d.copy(), d.copy()
        for f in c.premises.sorted():
            x = _scaled_eval(f, vals, d, cache)
            lhs = np.maximum(0, lhs + x - d)
        for f in c.conclusions.sorted():
            x = _scaled_eval(f, vals, d, cache)
            rhs = np.maximum(0, rhs + x - d)
        bad = lhs > rhs
        if bad.any():
            i = int(np.argmax(bad))
            w = {v: Fraction(int(vals[v][i]), int(d[i])) for v in names}
            return OracleVerdict(False, max_chain, w, None, "sample")
    return OracleVerdict(True, max_chain)


def check_mv_witness(c: Consecution, witness: Mapping[str, Fraction]) -> bool:
    """True iff the valuation strictly violates ``*Gamma <= *Delta`` in exact arithmetic."""
    return fusion_exact(c.premises, witness) > fusion_exact(c.conclusions, witness)


def eval_exact(f: Formula, val: Mapping[str, Fraction]) -> Fraction:
    if isinstance(f, Var):
        return Fraction(val[f.name])
    if isinstance(f, Const):
        return Fraction(1) if f.name == "1" else Fraction(0)
    a, b = eval_exact(f.left, val), eval_exact(f.right, val)
    s = f.symbol
    if s == "&":
        return min(a, b)
    if s == "|":
        return max(a, b)
    if s == "*":
        return max(Fraction(0), a + b - 1)
    return min(Fraction(1), 1 - a + b)


def fusion_exact(fs, val) -> Fraction:
    out = Fraction(1)
    for f in fs:
        out = max(Fraction(0), out + eval_exact(f, val) - 1)
    return out


def constants_algebra(labels: Sequence[str]) -> FiniteAlgebra:
    """An algebra with no operations and one constant naming each element."""
    return FiniteAlgebra(labels, {}, {str(x): i for i, x in enumerate(labels)}, "consts")


__all__ = [
    "FiniteAlgebra", "FiniteRLAlgebra", "LukChain", "luk_chain", "rl_consequence",
    "first_refutation", "mv_oracle", "OracleVerdict", "check_mv_witness", "eval_exact",
    "fusion_exact", "constants_algebra",
]
