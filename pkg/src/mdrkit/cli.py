"""Command-line entry point.

Exit status: 0 affirmative, 1 negative with a witness, 2 inconclusive
(a budget ran out), 3 bad input.
"""

from __future__ import annotations

import argparse
import sys

from . import deductive as ded
from .algebra import FiniteRLAlgebra, mv_oracle
from .formula import Consecution, FormulaSyntaxError, parse_consecution, parse_formula
from .matrices import (
    FuzzyMatrix, Hypermatrix, blocks, fuzzy_refutation, gentzen_bridge, hyper_refutation,
    leibniz, reduce_model,
)
from .multiset import Multiset
from .parallel import default_jobs, ordered_map
from .proofs import (
    ProofError, check_derivation, load_system, parse_derivation, parse_tree, resolve_system,
    search_derivation, split_derivation,
)
from .structfile import StructFileError, load_structure_file
from .structures import FiniteModule, FinitePomonoid, FinitePoSemiring, Report, StructureError

OK, NEGATIVE, INCONCLUSIVE, INPUT_ERROR = 0, 1, 2, 3


class InputError(Exception):
    pass


class Out:
    """Plain text lines, or tab-separated ``key=value`` records with ``--porcelain``."""

    def __init__(self, porcelain: bool, stream=None):
        self.porcelain = porcelain
        self.stream = stream or sys.stdout

    def emit(self, text: str | None = None, **rec):
        if self.porcelain:
            if rec:
                self.stream.write("\t".join(f"{k}={_clean(v)}" for k, v in rec.items()) + "\n")
        elif text is not None:
            self.stream.write(text + "\n")


def _clean(v) -> str:
    return str(v).replace("\t", " ").replace("\n", "; ")


def _read(path: str) -> str:
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as e:
        raise InputError(f"cannot read {path}: {e.strerror}") from None


def _structures(path: str) -> dict:
    _read(path)
    return load_structure_file(path)


def _system(spec: str):
    try:
        return resolve_system(spec)
    except OSError:
        raise InputError(f"unknown system {spec!r} (neither MV, MV_s nor a readable file)") from None


# --- parse ---------------------------------------------------------------------

def cmd_parse(a, out: Out) -> int:
    kind = a.as_
    src = a.input
    if kind == "auto":
        kind = "consecution" if ("|>" in src or "▷" in src) else "formula"
    if kind == "formula":
        f = parse_formula(src)
        out.emit(str(f), kind="formula", value=f)
    elif kind == "consecution":
        c = parse_consecution(src)
        out.emit(str(c), kind="consecution", value=c)
    elif kind == "system":
        s = load_system(_read(src), src)
        for sch in s.schemata:
            out.emit(str(sch), kind="axiom" if sch.is_axiom else "rule", name=sch.name, value=sch.consecution)
    elif kind == "derivation":
        d = parse_derivation(_read(src))
        out.emit(d.to_text().rstrip("\n"), kind="derivation", steps=len(d.steps))
    elif kind == "tree":
        t = parse_tree(_read(src))
        out.emit(t.to_text(), kind="tree", root=t.label, nodes=t.size())
    else:
        env = _structures(src)
        for name, obj in env.items():
            out.emit(f"{_kind(obj)} {name}", kind=_kind(obj), name=name)
    return OK


def _kind(obj) -> str:
    if isinstance(obj, FinitePoSemiring):
        return "posemiring"
    if isinstance(obj, FinitePomonoid):
        return "pomonoid"
    if isinstance(obj, FiniteModule):
        return "module"
    if isinstance(obj, Hypermatrix):
        return "hypermatrix"
    if isinstance(obj, FuzzyMatrix):
        return "fuzzymatrix"
    if isinstance(obj, (ded.DeductiveRelation, ded.DeductiveOperator, ded.DeductiveSystem)):
        return ded.kind_of(obj)
    return "algebra"


# --- validate / trinity / bj -------------------------------------------------------

def _validate_one(obj) -> Report:
    if isinstance(obj, (ded.DeductiveRelation, ded.DeductiveOperator, ded.DeductiveSystem)):
        return ded.validate(obj)
    if isinstance(obj, (FinitePomonoid, FinitePoSemiring, FiniteModule, FiniteRLAlgebra, FuzzyMatrix)):
        return obj.validate()
    return Report()


def cmd_validate(a, out: Out) -> int:
    env = _structures(a.file)
    reports = ordered_map(_validate_one, list(env.values()), a.jobs)
    bad = 0
    for (name, obj), rep in zip(env.items(), reports):
        kind = _kind(obj)
        if rep.ok:
            out.emit(f"{kind} {name}: valid", block=name, kind=kind, status="valid")
            continue
        bad += 1
        out.emit(f"{kind} {name}: {len(rep.violations)} violation(s)", block=name, kind=kind,
                 status="invalid", violations=len(rep.violations))
        for v in rep.violations[: a.limit]:
            out.emit(f"  {v}", block=name, axiom=v.axiom, witness=",".join(map(str, v.witness)),
                     internal=int(v.internal))
    return NEGATIVE if bad else OK


def _census(base):
    return ded.trinity_census(base)


def cmd_trinity(a, out: Out) -> int:
    env = _structures(a.file)
    bases = [(n, o) for n, o in env.items() if type(o) is FinitePomonoid]
    failed = False
    small = [(n, o) for n, o in bases if o.n <= 3 and o.validate().ok]
    for n, o in bases:
        if (n, o) not in small:
            out.emit(f"pomonoid {n}: skipped (invalid or more than 3 elements)", block=n, status="skipped")
    for (n, o), c in zip(small, ordered_map(_census, [o for _, o in small], a.jobs)):
        rt = " ".join(f"{k}:{v}" for k, v in c.roundtrips.items())
        out.emit(f"pomonoid {n}: DR={c.drs} DO={c.dos} DS={c.dss} roundtrip-failures {rt}",
                 block=n, dr=c.drs, do=c.dos, ds=c.dss, status="ok" if c.ok else "failed",
                 **{k.replace(">", "_"): v for k, v in c.roundtrips.items()})
        failed |= not c.ok
    for n, o in env.items():
        if not isinstance(o, (ded.DeductiveRelation, ded.DeductiveOperator, ded.DeductiveSystem)):
            continue
        rep = ded.validate(o)
        if not rep.ok:
            out.emit(f"{_kind(o)} {n}: invalid, {rep.violations[0]}", block=n, status="invalid",
                     violation=rep.violations[0])
            failed = True
            continue
        images = {t: ded.trinity(o, t) for t in ("dr", "do", "ds")}
        back = all(ded.trinity(images[t], ded.kind_of(o)) == o for t in images)
        out.emit(f"{_kind(o)} {n}: roundtrips {'ok' if back else 'FAILED'}", block=n,
                 status="ok" if back else "failed")
        for t, x in images.items():
            out.emit(f"  {t} {x}", block=n, target=t, value=x)
        failed |= not back
    return NEGATIVE if failed else OK


def _bj(base):
    r = ded.bj_diagram_check(base)
    return r.checked, list(r.failures)


def cmd_bj(a, out: Out) -> int:
    env = _structures(a.file)
    bases = [(n, o) for n, o in env.items() if type(o) is FinitePomonoid and o.validate().ok and o.n <= 4]
    failed = False
    for (n, o), (checked, failures) in zip(bases, ordered_map(_bj, [o for _, o in bases], a.jobs)):
        out.emit(f"pomonoid {n}: {checked} squares checked, {len(failures)} failure(s)", block=n,
                 checked=checked, failures=len(failures))
        for name, d in failures:
            out.emit(f"  {name} fails for {d}", block=n, square=name, relation=d)
        failed |= bool(failures)
    for n, o in env.items():
        if isinstance(o, ded.DeductiveRelation) and ded.validate(o).ok and o.base.n <= 4:
            sq = ded.bj_squares(o)
            bad = [s for s, ok in sq if not ok]
            out.emit(f"dr {n}: {len(sq) - len(bad)}/{len(sq)} squares commute", block=n,
                     checked=len(sq), failures=len(bad))
            failed |= bool(bad)
    return NEGATIVE if failed else OK


# --- proofs ---------------------------------------------------------------------

def cmd_check(a, out: Out) -> int:
    system = _system(a.system)
    d = parse_derivation(_read(a.derivation))
    claim = parse_consecution(a.claim)
    v = check_derivation(system, d, claim)
    if v.ok:
        out.emit(f"accepted: {len(d.steps)} multisets", status="accepted", steps=len(d.steps))
        return OK
    out.emit(str(v), status="rejected", step=v.step if v.step is not None else "-", reason=v.message)
    return NEGATIVE


def cmd_derive(a, out: Out) -> int:
    system = _system(a.system)
    claim = parse_consecution(a.claim)
    r = search_derivation(system, claim, a.depth, a.node_limit)
    if r.found:
        d = r.derivation
        out.emit(f"found at depth {r.depth} ({len(d.justifications)} step(s))", status="found",
                 depth=r.depth, steps=len(d.justifications), nodes=r.nodes)
        for i, (s, j) in enumerate(zip([d.steps[0]] + d.steps[1:], [None] + d.justifications)):
            if j is None:
                out.emit(f"step: {s}", index=i, multiset=s)
            else:
                out.emit(f"{j}\nstep: {s}", index=i, rule=j.rule, subst=j.subst, at=j.at, multiset=s)
        return OK
    if r.status == "budget":
        out.emit(f"inconclusive: node budget of {a.node_limit} exhausted", status="budget", nodes=r.nodes)
    else:
        out.emit(f"not found up to depth {a.depth} (not a proof of underivability)",
                 status="exhausted", depth=a.depth, nodes=r.nodes)
    return INCONCLUSIVE


def cmd_split(a, out: Out) -> int:
    system = _system(a.system)
    d = parse_derivation(_read(a.derivation))
    phi = parse_formula(a.formula)
    claim = Consecution(d.start, Multiset([phi]))
    if not system.single_conclusion:
        raise InputError("split needs a single-conclusion system")
    v = check_derivation(system, d, claim)
    if not v.ok:
        out.emit(str(v), status="rejected", step=v.step if v.step is not None else "-", reason=v.message)
        return NEGATIVE
    sp = split_derivation(system, d, claim, phi)
    out.emit(f"gamma-phi: {sp.gamma_phi}", part="gamma-phi", value=sp.gamma_phi)
    out.emit(f"gamma-rest: {sp.gamma_rest}", part="gamma-rest", value=sp.gamma_rest)
    out.emit("tree:", part="tree", root=sp.tree.label, nodes=sp.tree.size())
    out.emit(sp.tree.to_text())
    out.emit("rest:", part="rest", steps=len(sp.rest.steps), end=sp.rest.end)
    out.emit(sp.rest.to_text().rstrip("\n"))
    return OK


# --- semantics --------------------------------------------------------------------

def cmd_oracle(a, out: Out) -> int:
    c = parse_consecution(a.consecution)
    v = mv_oracle(c, a.max_chain, a.samples, a.seed)
    if v.valid:
        out.emit(v.label, verdict=v.label, max_chain=v.max_chain, samples=a.samples)
        return OK
    src = f"chain {v.chain}" if v.chain else "sample"
    out.emit(f"Invalid {v.witness_text()} ({src})".replace("  ", " "), verdict="Invalid",
             witness=v.witness_text(), source=src)
    return NEGATIVE


def _hyper(env: dict, name: str | None) -> Hypermatrix:
    hs = [(n, o) for n, o in env.items() if isinstance(o, Hypermatrix)]
    if name:
        hs = [(n, o) for n, o in hs if n == name]
    if not hs:
        raise InputError("no hypermatrix block" + (f" named {name}" if name else ""))
    return hs[0][1]


def _valuation_text(alg, val: dict) -> str:
    return " ".join(f"{k}={alg.labels[v]}" for k, v in sorted(val.items())) or "-"


def cmd_hyper(a, out: Out) -> int:
    env = _structures(a.file)
    c = parse_consecution(a.consecution)
    fuzz = [o for n, o in env.items() if isinstance(o, FuzzyMatrix) and (not a.name or n == a.name)]
    if fuzz and (a.name or not any(isinstance(o, Hypermatrix) for o in env.values())):
        m = fuzz[0]
        w = fuzzy_refutation(m, c)
        if w is None:
            out.emit("holds", status="holds", model="fuzzy")
            return OK
        val, ctx = w
        ct = "-" if ctx is None else str(ctx)
        out.emit(f"fails: valuation {_valuation_text(m.algebra, val)} context {ct}", status="fails",
                 valuation=_valuation_text(m.algebra, val), context=ct)
        return NEGATIVE
    h = _hyper(env, a.name)
    w = hyper_refutation(h, c, a.mode)
    if w is None:
        out.emit(f"holds ({a.mode})", status="holds", mode=a.mode)
        return OK
    val, ctx = w
    vt = _valuation_text(h.algebra, val)
    out.emit(f"fails ({a.mode}): valuation {vt} context {h.show(ctx)}", status="fails", mode=a.mode,
             valuation=vt, context=h.show(ctx))
    return NEGATIVE


def _partition_text(alg, p) -> str:
    return " ".join("{" + ",".join(alg.labels[x] for x in b) + "}" for b in blocks(p))


def cmd_leibniz(a, out: Out) -> int:
    env = _structures(a.file)
    h = _hyper(env, a.name)
    if h.algebra.n > 5:
        raise InputError("leibniz is limited to carriers of at most 5 elements")
    p = leibniz(h)
    r = reduce_model(h)
    out.emit(f"leibniz: {_partition_text(h.algebra, p)}", congruence=_partition_text(h.algebra, p),
             classes=len(set(p)))
    gens = " ".join(r.show(g) for g in r.generators)
    out.emit(f"reduced: {r.algebra.n} element(s), generators {gens}", reduced_size=r.algebra.n, generators=gens)
    return OK


def cmd_gentzen(a, out: Out) -> int:
    env = _structures(a.file)
    h = _hyper(env, a.name)
    s = gentzen_bridge(h, "to_sequents")
    lab = h.algebra.labels
    if a.dir == "to_sequents":
        for t in sorted(s.sequences):
            txt = "(" + ", ".join(lab[x] for x in t) + ")"
            out.emit(txt, sequence=txt)
        return OK
    back = gentzen_bridge(s, "to_multisets")
    same = back.generators == h.generators
    gens = " ".join(h.show(g) for g in back.generators)
    out.emit(f"roundtrip {'identity' if same else 'CHANGED'}: {gens}", status="identity" if same else "changed",
             sequences=len(s.sequences), generators=gens)
    return OK if same else NEGATIVE


# --- driver -------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--porcelain", action="store_true", help="tab-separated key=value records")
    common.add_argument("--jobs", type=int, default=None, help="worker processes (default $MDRKIT_JOBS or 1)")
    common.add_argument("--seed", type=int, default=0, help="RNG seed for sampling")

    p = argparse.ArgumentParser(prog="mdrkit", description="Multiset deductive relations toolkit.")
    sub = p.add_subparsers(dest="cmd", required=True)

    s = sub.add_parser("parse", parents=[common], help="parse and pretty-print")
    s.add_argument("input", help="text, or a file path for system/derivation/tree/structure")
    s.add_argument("--as", dest="as_", default="auto",
                   choices=["auto", "formula", "consecution", "system", "derivation", "tree", "structure"])
    s.set_defaults(fn=cmd_parse)

    s = sub.add_parser("validate", parents=[common], help="check every block of a structure file")
    s.add_argument("file")
    s.add_argument("--limit", type=int, default=5, help="violations shown per block")
    s.set_defaults(fn=cmd_validate)

    s = sub.add_parser("trinity", parents=[common], help="census and conversion roundtrips")
    s.add_argument("file")
    s.set_defaults(fn=cmd_trinity)

    s = sub.add_parser("bj", parents=[common], help="check the companion squares")
    s.add_argument("file")
    s.set_defaults(fn=cmd_bj)

    s = sub.add_parser("check", parents=[common], help="verify a derivation certificate")
    s.add_argument("system", help="MV, MV_s or a system file")
    s.add_argument("derivation")
    s.add_argument("claim")
    s.set_defaults(fn=cmd_check)

    s = sub.add_parser("derive", parents=[common], help="bounded derivation search")
    s.add_argument("system")
    s.add_argument("claim")
    s.add_argument("--depth", type=int, default=4, help="maximum number of multisets")
    s.add_argument("--node-limit", type=int, default=200_000)
    s.set_defaults(fn=cmd_derive)

    s = sub.add_parser("split", parents=[common], help="tree proof of one conclusion plus the rest")
    s.add_argument("system")
    s.add_argument("derivation")
    s.add_argument("formula")
    s.set_defaults(fn=cmd_split)

    s = sub.add_parser("oracle-mv", parents=[common], help="bounded MV-validity check")
    s.add_argument("consecution")
    s.add_argument("--max-chain", type=int, default=11)
    s.add_argument("--samples", type=int, default=10_000)
    s.set_defaults(fn=cmd_oracle)

    s = sub.add_parser("hyper", parents=[common], help="consequence in a hypermatrix or fuzzy matrix")
    s.add_argument("file")
    s.add_argument("consecution")
    s.add_argument("--mode", choices=["contextual", "plain"], default="contextual")
    s.add_argument("--name", help="block to use (default: first hypermatrix)")
    s.set_defaults(fn=cmd_hyper)

    s = sub.add_parser("leibniz", parents=[common], help="Leibniz congruence and reduced model")
    s.add_argument("file")
    s.add_argument("--name")
    s.set_defaults(fn=cmd_leibniz)

    s = sub.add_parser("gentzen", parents=[common], help="multiset/sequence bridge")
    s.add_argument("file")
    s.add_argument("--dir", choices=["to_sequents", "roundtrip"], default="roundtrip")
    s.add_argument("--name")
    s.set_defaults(fn=cmd_gentzen)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        a = parser.parse_args(argv)
    except SystemExit as e:
        return INPUT_ERROR if e.code else OK
    if a.jobs is None:
        a.jobs = default_jobs()
    out = Out(a.porcelain)
    try:
        return a.fn(a, out)
    except (InputError, FormulaSyntaxError, ProofError, StructFileError, StructureError, ValueError) as e:
        sys.stderr.write(f"mdrkit: error: {e}\n")
        return INPUT_ERROR


if __name__ == "__main__":
    sys.exit(main())
