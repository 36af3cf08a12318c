"""Axiomatic systems of consecutions, derivations, tree proofs and bounded search.

A derivation of ``Gamma |> Delta`` is a list of multisets starting at Gamma.
Each later step replaces an instance ``s(Psi)`` of a rule's premises by the
matching conclusions ``s(Psi')``; rules with no premises insert axioms.
The claim holds when Delta sits below the last multiset.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from importlib import resources
from typing import Callable, Iterator, Sequence

from .formula import (
    Binary, Consecution, Formula, FormulaSyntaxError, Implication, Substitution, Var,
    match, parse_consecution, parse_formula, parse_formula_multiset, subformulas, variables,
)
from .multiset import EMPTY, Multiset, _split_top


class ProofError(ValueError):
    pass


@dataclass(frozen=True)
class Schema:
    name: str
    consecution: Consecution

    @property
    def is_axiom(self) -> bool:
        return not self.consecution.premises

    def __str__(self):
        kind = "axiom" if self.is_axiom else "rule"
        return f"{kind} {self.name}: {self.consecution}"


@dataclass
class AxiomaticSystem:
    schemata: list
    name: str = ""

    @property
    def single_conclusion(self) -> bool:
        return all(len(s.consecution.conclusions) == 1 for s in self.schemata)

    @property
    def axioms(self) -> list:
        return [s for s in self.schemata if s.is_axiom]

    @property
    def rules(self) -> list:
        return [s for s in self.schemata if not s.is_axiom]

    def get(self, name: str) -> Schema:
        for s in self.schemata:
            if s.name == name:
                return s
        raise ProofError(f"no schema named {name!r}")

    def __str__(self):
        return "\n".join(str(s) for s in self.schemata)


_LINE = re.compile(r"^(axiom|rule)(?:\s+([A-Za-z0-9_\-]+))?\s*:\s*(.*)$")


def load_system(src: str, name: str = "") -> AxiomaticSystem:
    """Parse ``axiom [name]: [] |> [phi]`` / ``rule [name]: [G] |> [D]`` lines."""
    out = []
    counts = {"axiom": 0, "rule": 0}
    for lineno, raw in enumerate(src.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        m = _LINE.match(line)
        if not m:
            raise ProofError(f"line {lineno}: expected 'axiom:' or 'rule:'")
        kind, nm, body = m.groups()
        try:
            c = parse_consecution(body)
        except (FormulaSyntaxError, ValueError) as e:
            raise ProofError(f"line {lineno}: {e}") from None
        if kind == "axiom" and c.premises:
            raise ProofError(f"line {lineno}: an axiom has no premises")
        if kind == "rule" and not c.premises:
            raise ProofError(f"line {lineno}: a rule needs premises (use 'axiom')")
        counts[kind] += 1
        nm = nm or f"{'A' if kind == 'axiom' else 'R'}{counts[kind]}"
        if any(s.name == nm for s in out):
            raise ProofError(f"line {lineno}: duplicate name {nm}")
        out.append(Schema(nm, c))
    return AxiomaticSystem(out, name)


def _data(name: str) -> str:
    return resources.files("mdrkit").joinpath("data").joinpath(name).read_text(encoding="utf-8")


ELIM = "rule FusElim: [p * q] |> [p, q]\n"


def builtin_system(name: str) -> AxiomaticSystem:
    """``MV_s``: the shipped Lukasiewicz axioms with modus ponens; ``MV`` adds fusion elimination."""
    key = name.replace("^", "_").lower()
    if key in ("mv_s", "mvs"):
        return load_system(_data("mv_axioms.txt"), "MV_s")
    if key == "mv":
        return load_system(_data("mv_axioms.txt") + ELIM, "MV")
    raise ProofError(f"unknown built-in system {name!r}")


def resolve_system(spec: str) -> AxiomaticSystem:
    """A built-in name or a path to a system file."""
    try:
        return builtin_system(spec)
    except ProofError:
        pass
    with open(spec, encoding="utf-8") as fh:
        return load_system(fh.read(), spec)


# --- derivations ---------------------------------------------------------------------

@dataclass(frozen=True)
class Justification:
    rule: str
    subst: Substitution
    at: Multiset  # the matched instance of the rule's premises

    def __str__(self):
        return f"by: {self.rule} subst: {self.subst} at: {self.at}"


@dataclass
class Derivation:
    steps: list  # of Multiset
    justifications: list  # len(steps) - 1

    def __len__(self):
        return len(self.steps)

    @property
    def start(self) -> Multiset:
        return self.steps[0]

    @property
    def end(self) -> Multiset:
        return self.steps[-1]

    def to_text(self) -> str:
        lines = [f"step: {self.steps[0]}"]
        for s, j in zip(self.steps[1:], self.justifications):
            lines.append(str(j))
            lines.append(f"step: {s}")
        return "\n".join(lines) + "\n"

    def substitute(self, s: Substitution) -> "Derivation":
        return Derivation(
            [x.map(s) for x in self.steps],
            [Justification(j.rule, s.compose(j.subst), j.at.map(s)) for j in self.justifications],
        )

    def add_context(self, ctx: Multiset) -> "Derivation":
        return Derivation([x + ctx for x in self.steps], list(self.justifications))


def parse_subst(src: str) -> Substitution:
    s = src.strip()
    if not (s.startswith("{") and s.endswith("}")):
        raise ProofError(f"substitution must be braced: {src!r}")
    body = s[1:-1].strip()
    m = {}
    if body:
        for part in _split_top(body):
            if "=" not in part:
                raise ProofError(f"bad substitution entry {part!r}")
            k, v = part.split("=", 1)
            m[k.strip()] = parse_formula(v)
    return Substitution(m)


_BY = re.compile(r"^by:\s*(\S+)\s+subst:\s*(\{.*\})\s+at:\s*(\[.*\])\s*$")


def parse_derivation(src: str) -> Derivation:
    steps, justs = [], []
    pending = None
    for lineno, raw in enumerate(src.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            if line.startswith("step:"):
                if steps and pending is None:
                    raise ProofError(f"line {lineno}: step without justification")
                if pending is not None:
                    justs.append(pending)
                    pending = None
                steps.append(parse_formula_multiset(line[5:]))
            elif line.startswith("by:"):
                m = _BY.match(line)
                if not m or not steps or pending is not None:
                    raise ProofError(f"line {lineno}: malformed justification")
                pending = Justification(m.group(1), parse_subst(m.group(2)), parse_formula_multiset(m.group(3)))
            else:
                raise ProofError(f"line {lineno}: expected 'step:' or 'by:'")
        except (FormulaSyntaxError, ValueError) as e:
            if isinstance(e, ProofError):
                raise
            raise ProofError(f"line {lineno}: {e}") from None
    if pending is not None:
        raise ProofError("justification without a following step")
    if not steps:
        raise ProofError("empty derivation")
    return Derivation(steps, justs)


@dataclass
class Verdict:
    ok: bool
    step: int | None = None  # 1-based index of the first bad step
    message: str = ""

    def __bool__(self):
        return self.ok

    def __str__(self):
        if self.ok:
            return "accepted"
        where = f" at step {self.step}" if self.step is not None else ""
        return f"rejected{where}: {self.message}"


def check_derivation(system: AxiomaticSystem, d: Derivation, claim: Consecution) -> Verdict:
    if not d.steps:
        return Verdict(False, None, "empty derivation")
    if len(d.justifications) != len(d.steps) - 1:
        return Verdict(False, None, "one justification per step after the first is required")
    if d.steps[0] != claim.premises:
        return Verdict(False, 1, f"first multiset {d.steps[0]} is not the premises {claim.premises}")
    for j, (prev, cur, just) in enumerate(zip(d.steps, d.steps[1:], d.justifications), start=2):
        try:
            schema = system.get(just.rule)
        except ProofError as e:
            return Verdict(False, j, str(e))
        inst = schema.consecution.substitute(just.subst)
        if inst.premises != just.at:
            return Verdict(False, j, f"{just.at} is not the premise instance {inst.premises}")
        if not inst.premises <= prev:
            return Verdict(False, j, f"{inst.premises} is not contained in {prev}")
        expected = (prev - inst.premises) + inst.conclusions
        if cur != expected:
            return Verdict(False, j, f"expected {expected}, got {cur}")
    if not claim.conclusions <= d.steps[-1]:
        return Verdict(False, len(d.steps), f"{claim.conclusions} is not contained in {d.steps[-1]}")
    return Verdict(True)


def concatenate(d1: Derivation, d2: Derivation) -> Derivation:
    """Transitivity: d1 ends above d2's start; the surplus rides along as context."""
    if not d2.start <= d1.end:
        raise ProofError("second derivation does not start below the end of the first")
    extra = d1.end - d2.start
    d2c = d2.add_context(extra)
    return Derivation(d1.steps + d2c.steps[1:], d1.justifications + d2c.justifications)


# --- matching ---------------------------------------------------------------------------

def _pattern_weight(f: Formula) -> int:
    return -sum(1 for _ in subformulas(f))


def match_multiset(patterns: Sequence[Formula], target: Multiset, binding: dict | None = None) -> Iterator[tuple]:
    """Bindings placing the patterns on distinct occurrences of ``target``.

    Yields ``(binding, used)`` with ``used`` the matched sub-multiset.
    """
    pats = sorted(patterns, key=lambda f: (_pattern_weight(f), str(f)))
    items = sorted(target.items(), key=lambda kv: str(kv[0]))

    def go(i, b, used):
        if i == len(pats):
            yield b, used
            return
        for x, k in items:
            if used.get(x, 0) >= k:
                continue
            b2 = match(pats[i], x, b)
            if b2 is None:
                continue
            used[x] = used.get(x, 0) + 1
            yield from go(i + 1, b2, used)
            used[x] -= 1

    seen = set()
    for b, used in go(0, dict(binding or {}), {}):
        key = tuple(sorted((k, v) for k, v in b.items()))
        if key in seen:
            continue
        seen.add(key)
        yield b, Multiset.from_counts(dict(used))


def find_instance(system: AxiomaticSystem, premises: Multiset, conclusions: Multiset, kinds=("rule", "axiom")):
    """A schema and substitution turning the schema into exactly ``premises |> conclusions``."""
    for s in system.schemata:
        if ("axiom" if s.is_axiom else "rule") not in kinds:
            continue
        c = s.consecution
        if len(c.premises) != len(premises) or len(c.conclusions) != len(conclusions):
            continue
        for b, _ in match_multiset(list(c.premises), premises):
            for b2, _ in match_multiset(list(c.conclusions), conclusions, b):
                sub = Substitution(b2)
                if c.substitute(sub) == Consecution(premises, conclusions):
                    return s, sub
    return None


# --- search ---------------------------------------------------------------------------

@dataclass
class SearchResult:
    status: str  # "found", "exhausted" (nothing up to max depth) or "budget"
    derivation: Derivation | None = None
    depth: int | None = None
    nodes: int = 0

    @property
    def found(self) -> bool:
        return self.status == "found"


class _Budget(Exception):
    pass


def _pool(fs) -> list[Formula]:
    out = set()
    for f in fs:
        out.update(subformulas(f))
    return sorted(out, key=str)


class _MoveGen:
    """Deterministic candidate steps: (justification, next state) pairs.

    Rules match their premises against distinct occurrences of the state.
    Axioms are inserted when a whole instance is a subformula of the claim,
    or when the instance is an implication whose antecedent is already
    present. Variables left free are bound to subformulas of the claim.
    """

    def __init__(self, system: AxiomaticSystem, pool: list):
        self.system = system
        self.pool = pool
        self.vars = {s.name: s.consecution.variables() for s in system.schemata}
        self.fixed = []  # state-independent axiom instances
        self.by_antecedent: dict = {}
        seen = set()
        for schema in system.axioms:
            for inst in self._axiom_pool_instances(schema):
                if inst[1] not in seen:
                    seen.add(inst[1])
                    self.fixed.append(inst)

    def _instance(self, schema, b):
        if any(v not in b for v in self.vars[schema.name]):
            return None
        sub = Substitution(b)
        return sub, schema.consecution.substitute(sub)

    def _axiom(self, schema, b):
        r = self._instance(schema, b)
        if r is None or len(r[1].conclusions) != 1:
            return None
        sub, inst = r
        (f,) = list(inst.conclusions)
        return Justification(schema.name, sub, EMPTY), f

    def _extend(self, schema, b):
        free = [v for v in self.vars[schema.name] if v not in b]
        if not free:
            yield b
        elif len(free) == 1:
            for f in self.pool:
                yield {**b, free[0]: f}

    def _axiom_pool_instances(self, schema):
        c = schema.consecution
        if len(c.conclusions) != 1:
            return
        (phi,) = list(c.conclusions)
        for f in self.pool:
            b = match(phi, f)
            if b is not None:
                r = self._axiom(schema, b)
                if r:
                    yield r

    def antecedent_instances(self, x: Formula):
        got = self.by_antecedent.get(x)
        if got is None:
            got = []
            for schema in self.system.axioms:
                (phi,) = list(schema.consecution.conclusions)
                if not isinstance(phi, Implication):
                    continue
                b = match(phi.left, x)
                if b is None:
                    continue
                for b2 in self._extend(schema, b):
                    r = self._axiom(schema, b2)
                    if r:
                        got.append(r)
            self.by_antecedent[x] = got
        return got

    def __call__(self, state: Multiset):
        out = []
        seen = {state}

        def push(just, nxt, inserted=None):
            if nxt not in seen:
                seen.add(nxt)
                out.append((just, nxt, inserted))

        for schema in self.system.rules:
            for b, _ in match_multiset(list(schema.consecution.premises), state):
                for b2 in self._extend(schema, b):
                    r = self._instance(schema, b2)
                    if r is None:
                        continue
                    sub, inst = r
                    if inst.premises <= state:
                        push(Justification(schema.name, sub, inst.premises),
                             (state - inst.premises) + inst.conclusions)
        inserts = list(self.fixed)
        for x in sorted(state.root(), key=str):
            inserts.extend(self.antecedent_instances(x))
        for just, f in inserts:
            push(just, state + Multiset((f,)), f)
        return out


def search_derivation(system: AxiomaticSystem, claim: Consecution, max_depth: int = 4,
                      node_limit: int = 200_000) -> SearchResult:
    """Iterative deepening over derivation length (number of multisets).

    Variables left free by matching are bound to subformulas of the claim.
    An inserted axiom that is not a goal formula must be consumed by the
    next rule step: any derivation can be normalised that way (useless
    steps dropped, insertions delayed to their consumer) without growing.
    A failure memo keyed on the state and these pending insertions records
    the largest remaining depth already refuted. ``exhausted``
    only means nothing exists up to ``max_depth`` within this move
    generator; it never asserts underivability.
    """
    goal = claim.conclusions
    pool = _pool(list(claim.premises) + list(claim.conclusions))
    nodes = 0
    gen = _MoveGen(system, pool)
    width = max((len(r.consecution.premises) for r in system.rules), default=0)
    targets = goal.root()
    moves: dict = {}
    failed: dict = {}  # (state, pending) -> largest remaining depth known to fail

    def dfs(state, pending, remaining, path, justs):
        nonlocal nodes
        if goal <= state:
            return Derivation(list(path), list(justs))
        key = (state, pending)
        if remaining == 0 or failed.get(key, -1) >= remaining:
            return None
        nodes += 1
        if nodes > node_limit:
            raise _Budget
        if state not in moves:
            moves[state] = gen(state)
        for just, nxt, inserted in moves[state]:
            if remaining == 1 and not goal <= nxt:
                continue
            if inserted is None:
                if not pending <= just.at:
                    continue
                nxt_pending = EMPTY
            elif inserted in targets:
                nxt_pending = pending
            else:
                nxt_pending = pending + Multiset((inserted,))
                if len(nxt_pending) > width or remaining < 2:
                    continue
            path.append(nxt)
            justs.append(just)
            res = dfs(nxt, nxt_pending, remaining - 1, path, justs)
            if res is not None:
                return res
            path.pop()
            justs.pop()
        failed[key] = remaining
        return None

    try:
        for depth in range(1, max_depth + 1):
            res = dfs(claim.premises, EMPTY, depth - 1, [claim.premises], [])
            if res is not None:
                return SearchResult("found", res, depth, nodes)
    except _Budget:
        return SearchResult("budget", None, None, nodes)
    return SearchResult("exhausted", None, None, nodes)


def random_derivation(system: AxiomaticSystem, rng, steps: int = 6, atoms: Sequence[str] = ("p", "q", "r")):
    """A random forward derivation and the formula produced by its last step.

    Insertions favour implicational axioms whose antecedent is already
    present, so rules get something to act on; unmatched variables are bound
    to atoms. The derivation is cut after its last rule step when there is
    one. Returns ``(derivation, phi)``; ``phi`` is None when no step was made.
    """
    atoms_f = [Var(a) for a in atoms]
    state = Multiset(rng.choice(atoms_f) for _ in range(rng.randint(0, 2)))
    d = Derivation([state], [])
    made = []  # conclusion produced by each step, None for multi-conclusion steps
    last_rule = None
    for _ in range(steps):
        moves = []
        for schema in system.rules:
            names = schema.consecution.variables()
            for b, _ in match_multiset(list(schema.consecution.premises), state):
                if all(v in b for v in names):
                    moves.append((schema, b))
        if not moves or rng.random() < 0.4:
            schema = rng.choice(system.axioms)
            b = {}
            (phi,) = list(schema.consecution.conclusions)
            if state and isinstance(phi, Implication) and rng.random() < 0.7:
                b = match(phi.left, rng.choice(sorted(state.root(), key=str))) or {}
            for v in schema.consecution.variables():
                b.setdefault(v, rng.choice(atoms_f))
            moves = [(schema, b)]
        schema, b = rng.choice(moves)
        sub = Substitution(b)
        inst = schema.consecution.substitute(sub)
        state = (state - inst.premises) + inst.conclusions
        d.steps.append(state)
        d.justifications.append(Justification(schema.name, sub, inst.premises))
        made.append(next(iter(inst.conclusions)) if len(inst.conclusions) == 1 else None)
        if not schema.is_axiom:
            last_rule = len(made)
    if last_rule is not None:
        d = Derivation(d.steps[:last_rule + 1], d.justifications[:last_rule])
        made = made[:last_rule]
    return d, (made[-1] if made else None)


# --- tree proofs --------------------------------------------------------------------------

@dataclass
class TreeNode:
    label: Formula
    kind: str  # "hyp", "axiom" or "rule"
    children: list = field(default_factory=list)
    rule: str | None = None
    subst: Substitution | None = None

    def leaves(self):
        if not self.children:
            yield self
        for c in self.children:
            yield from c.leaves()

    def postorder(self):
        for c in self.children:
            yield from c.postorder()
        yield self

    def hypotheses(self) -> Multiset:
        return Multiset(n.label for n in self.leaves() if n.kind == "hyp")

    def size(self) -> int:
        return 1 + sum(c.size() for c in self.children)

    def to_text(self, indent: int = 0) -> str:
        pad = "  " * indent
        if self.kind == "hyp":
            tag = "hyp"
        else:
            tag = f"{self.kind} {self.rule} {self.subst}" if self.rule else self.kind
        lines = [f"{pad}{self.label} :: {tag}"]
        lines.extend(c.to_text(indent + 1) for c in self.children)
        return "\n".join(lines)


_TREE = re.compile(r"^(\s*)(.*?)\s*::\s*(hyp|axiom|rule)(?:\s+(\S+)\s*(\{.*\})?)?\s*$")


def parse_tree(src: str) -> TreeNode:
    stack: list[tuple[int, TreeNode]] = []
    root = None
    for lineno, raw in enumerate(src.splitlines(), 1):
        if not raw.strip() or raw.strip().startswith("#"):
            continue
        m = _TREE.match(raw)
        if not m:
            raise ProofError(f"line {lineno}: expected '<formula> :: hyp|axiom|rule'")
        ind, ftxt, kind, name, sub = m.groups()
        level = len(ind.expandtabs(2)) // 2
        try:
            node = TreeNode(parse_formula(ftxt), kind, [], name, parse_subst(sub) if sub else None)
        except FormulaSyntaxError as e:
            raise ProofError(f"line {lineno}: {e}") from None
        while stack and stack[-1][0] >= level:
            stack.pop()
        if not stack:
            if root is not None:
                raise ProofError(f"line {lineno}: second root")
            root = node
        else:
            stack[-1][1].children.append(node)
        stack.append((level, node))
    if root is None:
        raise ProofError("empty tree")
    return root


def check_tree_proof(system: AxiomaticSystem, t: TreeNode, premises: Multiset, phi: Formula) -> Verdict:
    if not system.single_conclusion:
        raise ProofError("tree proofs need a single-conclusion system")
    if t.label != phi:
        return Verdict(False, None, f"root is {t.label}, not {phi}")
    for node in t.postorder():
        if not node.children:
            if node.kind == "hyp":
                continue
            if node.kind != "axiom":
                return Verdict(False, None, f"leaf {node.label} is neither axiom nor hypothesis")
            if not _instance_ok(system, node, EMPTY, ("axiom",)):
                return Verdict(False, None, f"leaf {node.label} is not an axiom instance")
        else:
            if node.kind != "rule":
                return Verdict(False, None, f"inner node {node.label} must be a rule application")
            prem = Multiset(c.label for c in node.children)
            if not _instance_ok(system, node, prem, ("rule",)):
                return Verdict(False, None, f"{prem} |> [{node.label}] is not a rule instance")
    hyps = t.hypotheses()
    if not hyps <= premises:
        return Verdict(False, None, f"hypothesis leaves {hyps} exceed the premises {premises}")
    return Verdict(True)


def _instance_ok(system, node: TreeNode, prem: Multiset, kinds) -> bool:
    concl = Multiset([node.label])
    if node.rule is not None and node.subst is not None:
        try:
            s = system.get(node.rule)
        except ProofError:
            return False
        if ("axiom" if s.is_axiom else "rule") not in kinds:
            return False
        return s.consecution.substitute(node.subst) == Consecution(prem, concl)
    found = find_instance(system, prem, concl, kinds)
    if found:
        node.rule, node.subst = found[0].name, found[1]
    return found is not None


def tree_to_derivation(system: AxiomaticSystem, t: TreeNode, premises: Multiset) -> Derivation:
    """Post-order replay: axiom leaves are insertions, inner nodes rule steps."""
    v = check_tree_proof(system, t, premises, t.label)
    if not v.ok:
        raise ProofError(f"tree proof rejected: {v.message}")
    state = premises
    steps, justs = [state], []
    for node in t.postorder():
        if node.kind == "hyp":
            continue
        prem = EMPTY if node.kind == "axiom" else Multiset(c.label for c in node.children)
        state = (state - prem) + Multiset([node.label])
        steps.append(state)
        justs.append(Justification(node.rule, node.subst, prem))
    return Derivation(steps, justs)


@dataclass
class Split:
    tree: TreeNode
    rest: Derivation
    gamma_phi: Multiset
    gamma_rest: Multiset


def split_derivation(system: AxiomaticSystem, d: Derivation, claim: Consecution, phi: Formula) -> Split:
    """Cut out the tree proof of one conclusion occurrence and keep the rest as a derivation.

    Every occurrence in the derivation becomes a node; a step's new
    occurrence has the consumed ones as children. The subtree below an
    occurrence of phi in the final multiset is the tree proof; the steps
    outside it, replayed from the leftover premises, derive the rest.
    """
    if not system.single_conclusion:
        raise ProofError("splitting needs a single-conclusion system")
    v = check_derivation(system, d, claim)
    if not v.ok:
        raise ProofError(f"derivation rejected: {v}")
    if phi not in claim.conclusions:
        raise ProofError(f"{phi} does not occur among the conclusions")
    live: dict = {}  # formula -> list of node ids, oldest first
    nodes: list[TreeNode] = []
    created_by: list = []  # node id -> step index or None for hypotheses

    def new(node, step):
        nodes.append(node)
        created_by.append(step)
        live.setdefault(node.label, []).append(len(nodes) - 1)
        return len(nodes) - 1

    for f in d.start:
        new(TreeNode(f, "hyp"), None)
    children_of: dict = {}
    for i, j in enumerate(d.justifications):
        consumed = []
        for f in j.at:
            consumed.append(live[f].pop(0))
        schema = system.get(j.rule)
        (concl,) = list(schema.consecution.conclusions.map(j.subst))
        kind = "axiom" if schema.is_axiom else "rule"
        node = TreeNode(concl, kind, [nodes[c] for c in consumed], j.rule, j.subst)
        nid = new(node, i)
        children_of[nid] = consumed
    root = live[phi][0]
    in_tree = set()
    stack = [root]
    while stack:
        x = stack.pop()
        in_tree.add(x)
        stack.extend(children_of.get(x, []))
    tree = nodes[root]
    gamma_phi = Multiset(nodes[x].label for x in in_tree if created_by[x] is None)
    gamma_rest = d.start - gamma_phi
    tree_steps = {created_by[x] for x in in_tree if created_by[x] is not None}
    state = gamma_rest
    steps, justs = [state], []
    for i, j in enumerate(d.justifications):
        if i in tree_steps:
            continue
        schema = system.get(j.rule)
        inst = schema.consecution.substitute(j.subst)
        state = (state - inst.premises) + inst.conclusions
        steps.append(state)
        justs.append(j)
    return Split(tree, Derivation(steps, justs), gamma_phi, gamma_rest)


# --- the set-based encoding ----------------------------------------------------------------

def mdr_from_tcr(tcr: Callable[[frozenset, Formula], bool], g: Multiset, d: Multiset) -> bool:
    """``Gamma |- Delta`` iff the root set of Gamma yields every occurrence in Delta."""
    root = g.root()
    return all(tcr(root, psi) for psi in d.root())


__all__ = [
    "ProofError", "Schema", "AxiomaticSystem", "load_system", "builtin_system", "resolve_system",
    "Justification", "Derivation", "parse_derivation", "parse_subst", "Verdict", "check_derivation",
    "concatenate", "match_multiset", "find_instance", "SearchResult", "search_derivation", "random_derivation",
    "TreeNode",
    "parse_tree", "check_tree_proof", "tree_to_derivation", "Split", "split_derivation", "mdr_from_tcr",
]
