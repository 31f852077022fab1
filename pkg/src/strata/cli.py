"""``strata`` command line: generate, analyze, check, export, invariant.

Exit codes are 0 on success, 1 when a check fails and 2 on bad input.  Errors
are printed as one line, ``error: <Kind>: <message>``, on stderr.
"""
from __future__ import annotations

import argparse
import json
import random
import sys

from . import io
from .blowup import blowup_sequence, parse_centers, random_sequence
from .corpus import DIMENSIONS, attach_separatrices, corpus
from .errors import InputError, StrataError
from .foliation import derive_nodal_data
from .hironaka import SIMPLE_THRESHOLD, control_invariant, t_sequence, theta, zeta
from .nodal import NodalData, require_valid, separating_blocks
from .parity import components_by_parity, components_by_search
from .pi1 import replay_tietze, simply_connected_verdict
from .separatrix import FoliatedModel, camacho_sad_check, nod_vs_sep_equivalence

SUITES = ("componentcount", "simplyconnected", "camachosad", "nodsep")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise InputError(message)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="strata", description="Strata structures of divisors and their nodal walls.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def data_flags(q):
        q.add_argument("--residues", metavar="FILE")
        q.add_argument("--nodal", metavar="FILE")
        q.add_argument("--model", metavar="FILE")

    g = sub.add_parser("generate", help="write a blow-up trace")
    g.add_argument("--dim", type=int, required=True)
    g.add_argument("--blowups", help='centers such as "P[];P[0];S[0,1]"')
    g.add_argument("--random", type=int, metavar="N", help="write N random traces instead")
    g.add_argument("--max-blowups", type=int, default=8)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("-o", dest="output", metavar="FILE")

    a = sub.add_parser("analyze", help="blocks, separator and components of a structure")
    a.add_argument("file", nargs="?")
    data_flags(a)
    a.add_argument("--format", choices=("json", "table"), default="json")
    a.add_argument("-o", dest="output", metavar="FILE")

    c = sub.add_parser("check", help="run a property suite on a file or a random corpus")
    c.add_argument("suite", choices=SUITES)
    c.add_argument("file", nargs="?")
    data_flags(c)
    c.add_argument("--random", type=int, metavar="N")
    c.add_argument("--dim", type=int)
    c.add_argument("--max-blowups", type=int, default=8)
    c.add_argument("--seed", type=int, default=0)
    c.add_argument("-o", dest="output", metavar="FILE")

    e = sub.add_parser("export", help="DOT dual graph")
    e.add_argument("file", nargs="?")
    data_flags(e)
    e.add_argument("--dot", metavar="FILE")
    e.add_argument("-o", dest="output", metavar="FILE")

    v = sub.add_parser("invariant", help="local control invariants of a covector space")
    v.add_argument("--matrix", metavar="FILE", required=True)
    v.add_argument("--nu", type=int)
    v.add_argument("--format", choices=("json", "table"), default="json")
    v.add_argument("-o", dest="output", metavar="FILE")
    return p


def _emit(text: str, output) -> None:
    if output:
        with open(output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _load_model(args) -> FoliatedModel:
    """Structure plus nodal data from --model, or FILE with --residues / --nodal."""
    if args.model:
        if args.file or args.residues or args.nodal:
            raise InputError("--model already carries structure and nodal data")
        return io.model_from_doc(io.load_json(args.model))
    if not args.file:
        raise InputError("a structure FILE or --model is required")
    s = io.load_structure(args.file)
    if args.residues and args.nodal:
        raise InputError("give --residues or --nodal, not both")
    if args.residues:
        return FoliatedModel.from_residues(s, io.residues_from_doc(io.load_json(args.residues)))
    if args.nodal:
        return FoliatedModel(s, io.nodal_from_doc(io.load_json(args.nodal)))
    return FoliatedModel(s, NodalData())


# generate


def cmd_generate(args) -> int:
    if args.dim < 1:
        raise InputError("--dim must be positive")
    if args.random is not None:
        if args.blowups:
            raise InputError("--blowups and --random are exclusive")
        if args.random < 1 or args.max_blowups < 1 or args.dim < 2:
            raise InputError("--random needs N >= 1, --max-blowups >= 1 and --dim >= 2")
        rng = random.Random(args.seed)
        docs = [io.trace_to_doc(random_sequence(args.dim, rng.randint(1, args.max_blowups),
                                                rng.randrange(2**32)))
                for _ in range(args.random)]
        _emit(io.dump_json(docs), args.output)
        return 0
    if not args.blowups:
        raise InputError("generate needs --blowups or --random")
    trace = blowup_sequence(args.dim, parse_centers(args.blowups))
    _emit(io.dump_json(io.trace_to_doc(trace)), args.output)
    return 0


# analyze


def analysis(m: FoliatedModel) -> dict:
    s = m.structure
    require_valid(s, m.nodal)
    rep = separating_blocks(s, m.nodal)
    searched = components_by_search(rep.residual)
    verdict = simply_connected_verdict(s)
    doc = {
        "strata": len(s.strata),
        "indices": len(s.indices),
        "nodal": [list(J) for J in m.nodal.strata()],
        "uninterrupted": [list(J) for J in sorted(rep.uninterrupted, key=lambda J: (len(J), J))],
        "blocks": len(rep.blocks),
        "separating_blocks": rep.n_separating,
        "separator": [list(J) for J in sorted(rep.separator_set)],
        "components": len(searched),
        "component_sets": [list(c) for c in searched],
        "pi1": verdict.to_json(),
    }
    if verdict.simply_connected:
        by_parity = components_by_parity(s, m.nodal, provenance=verdict.certificate)
        doc["agreement"] = tuple(sorted(by_parity.components)) == tuple(sorted(searched))
    return doc


def _table(doc: dict) -> str:
    width = max(len(k) for k in doc)
    lines = []
    for k, v in doc.items():
        text = json.dumps(v) if isinstance(v, (list, dict)) else str(v)
        lines.append(f"{k.ljust(width)}  {text}")
    return "\n".join(lines) + "\n"


def cmd_analyze(args) -> int:
    doc = analysis(_load_model(args))
    _emit(io.dump_json(doc) if args.format == "json" else _table(doc), args.output)
    return 0


# check


def _check_componentcount(s, residues=None, nodal=None) -> str | None:
    n = derive_nodal_data(s, residues) if nodal is None else nodal
    rep = separating_blocks(s, n)
    searched = components_by_search(rep.residual)
    if len(searched) != rep.n_separating + 1:
        return f"{len(searched)} components for {rep.n_separating} separating blocks"
    by_parity = components_by_parity(s, n).components
    if tuple(sorted(by_parity)) != tuple(sorted(searched)):
        return f"parity partition {by_parity} differs from search {searched}"
    return None


def _check_simplyconnected(structures) -> str | None:
    for k, s in enumerate(structures):
        v = simply_connected_verdict(s)
        if not v.simply_connected:
            return f"structure {k}: {v.status} {list(v.factors)}"
        if v.certificate == "tietze" and v.presentation is not None and \
                not replay_tietze(v.presentation, v.tietze):
            return f"structure {k}: certificate does not replay"
    return None


def _check_camachosad(m: FoliatedModel) -> str | None:
    rep = camacho_sad_check(m)
    bad = rep.failing()
    if bad:
        return "uncovered " + ", ".join(f"{v.component}={list(v.members)}" for v in bad)
    return None


def _check_nodsep(s, n) -> str | None:
    rep = nod_vs_sep_equivalence(s, n)
    if rep.failing_pairs:
        return f"pairs {list(map(list, rep.failing_pairs))} disagree"
    if rep.bijection is None:
        return "component partitions are not in bijection"
    return None


def _run_instance(suite: str, inst) -> str | None:
    try:
        return _dispatch(suite, inst)
    except StrataError as exc:
        # a generated instance never has bad input, so any raise is a failure
        return f"{type(exc).__name__}: {exc}"


def _dispatch(suite: str, inst) -> str | None:
    s = inst.structure
    if suite == "componentcount":
        return _check_componentcount(s, inst.residues)
    if suite == "simplyconnected":
        return _check_simplyconnected(inst.trace.structures())
    if suite == "camachosad":
        m = attach_separatrices(s, inst.residues, random.Random(inst.seed))
        return _check_camachosad(m)
    return _check_nodsep(s, derive_nodal_data(s, inst.residues))


def cmd_check(args) -> int:
    lines = []
    if args.random is not None:
        if args.file or args.model or args.residues or args.nodal:
            raise InputError("--random takes no input files")
        if args.random < 1 or args.max_blowups < 1:
            raise InputError("--random and --max-blowups must be positive")
        if args.dim is not None and args.dim < 2:
            raise InputError("--dim must be at least 2")
        dims = (args.dim,) if args.dim is not None else DIMENSIONS
        results = [(inst.seed, _run_instance(args.suite, inst))
                   for inst in corpus(args.random, args.seed, dims, args.max_blowups)]
    else:
        m = _load_model(args)
        if args.suite == "componentcount":
            res = _check_componentcount(m.structure, nodal=m.nodal)
        elif args.suite == "simplyconnected":
            structures = [m.structure]
            if args.file and not args.model:
                doc = io.load_json(args.file)
                if isinstance(doc, dict) and "steps" in doc:
                    structures = io.trace_from_doc(doc).structures()
            res = _check_simplyconnected(structures)
        elif args.suite == "camachosad":
            res = _check_camachosad(m)
        else:
            res = _check_nodsep(m.structure, m.nodal)
        results = [(0, res)]
    failed = [(seed, why) for seed, why in results if why is not None]
    for seed, why in failed:
        lines.append(f"FAIL seed={seed}: {why}")
    lines.append(f"{len(results) - len(failed)}/{len(results)} pass")
    _emit("\n".join(lines) + "\n", args.output)
    return 1 if failed else 0


# export


def dot_graph(m: FoliatedModel) -> str:
    s = m.structure
    rep = separating_blocks(s, m.nodal)
    nodal2 = {J for J in m.nodal.level(2)}
    out = ["graph strata {", "  node [shape=circle];"]
    for i in s.indices:
        out.append(f'  {i} [label="E{i}"];')
    for a, b in s.level(2):
        if (a, b) in rep.separator_set:
            style = ' [style="bold,color=red"]'
        elif (a, b) in nodal2:
            style = " [style=dashed]"
        else:
            style = ""
        out.append(f"  {a} -- {b}{style};")
    out.append("}")
    return "\n".join(out) + "\n"


def cmd_export(args) -> int:
    if args.dot and args.output:
        raise InputError("give --dot or -o, not both")
    _emit(dot_graph(_load_model(args)), args.dot or args.output)
    return 0


# invariant


def cmd_invariant(args) -> int:
    u = io.matrix_from_doc(io.load_json(args.matrix))
    t, chain = t_sequence(u)
    doc = {"n": u.n, "e": u.e, "rank": u.rank, "d": u.d, "t": list(t),
           "chain": [list(J) for J in chain], "theta": theta(u), "zeta": zeta(u)}
    if args.nu is not None:
        inv = control_invariant(u, args.nu)
        doc["invariant"] = list(inv.as_tuple())
        doc["threshold"] = list(SIMPLE_THRESHOLD)
        doc["locally_simple"] = inv.locally_simple
    _emit(io.dump_json(doc) if args.format == "json" else _table(doc), args.output)
    return 0


COMMANDS = {"generate": cmd_generate, "analyze": cmd_analyze, "check": cmd_check,
            "export": cmd_export, "invariant": cmd_invariant}


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        return COMMANDS[args.command](args)
    except StrataError as exc:
        msg = " ".join(str(exc).split())
        print(f"error: {type(exc).__name__}: {msg}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
