"""JSON documents for structures, traces, nodal data, residues, models and matrices.

Every reader raises InputError on malformed input, so the CLI can turn any
bad file into a one-line error.
"""
from __future__ import annotations

import json
from fractions import Fraction

from .blowup import BlowupTrace, blowup_sequence, parse_center
from .core import StrataStructure, sorted_strata, validate_structure
from .errors import InputError
from .foliation import Residue, ResidueModel, Symbol, SymbolTable
from .hironaka import CovectorSpace
from .nodal import NodalData, SignPartition
from .separatrix import FoliatedModel, TraceComponent


def _need(doc, key, kind=None):
    if not isinstance(doc, dict) or key not in doc:
        raise InputError(f"missing key {key!r}")
    v = doc[key]
    if kind is not None and not isinstance(v, kind):
        raise InputError(f"key {key!r} has the wrong type")
    return v


def _int_list(v, what) -> list:
    if not isinstance(v, list) or not all(isinstance(x, int) and not isinstance(x, bool) for x in v):
        raise InputError(f"{what} must be a list of integers")
    return v


def _fraction(text) -> Fraction:
    if isinstance(text, bool) or not isinstance(text, (str, int)):
        raise InputError(f"expected an exact rational string, got {text!r}")
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise InputError(f"bad rational {text!r}") from None


def fraction_text(x: Fraction) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def load_json(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON at line {exc.lineno}") from None


def dump_json(doc) -> str:
    return json.dumps(doc, indent=2, sort_keys=False) + "\n"


# structures


def structure_to_doc(s: StrataStructure) -> dict:
    # component names keep the original index; strata use positions
    pos = {i: k for k, i in enumerate(s.indices)}
    return {
        "dimension": s.dimension,
        "components": [f"E{i}" for i in s.indices],
        "strata": [[pos[i] for i in J] for J in s.strata],
    }


def structure_from_doc(doc) -> StrataStructure:
    d = _need(doc, "dimension", int)
    names = _need(doc, "components", list)
    raw = _need(doc, "strata", list)
    strata = [_int_list(J, "a stratum") for J in raw]
    for J in strata:
        if J != sorted(set(J)):
            raise InputError(f"stratum {J} is not sorted without repeats")
        if any(not 0 <= i < len(names) for i in J):
            raise InputError(f"stratum {J} refers to a component outside 0..{len(names) - 1}")
    s = StrataStructure(d, tuple(range(len(names))), tuple(sorted_strata(tuple(J) for J in strata)))
    report = validate_structure(s)
    if not report.ok:
        raise InputError(f"invalid structure: {report.violations[0]}")
    return s


# traces


def trace_to_doc(t: BlowupTrace) -> dict:
    return {
        "dimension": t.dimension,
        "steps": [{"center": str(c), "fresh": o.fresh_index} for c, o in t.steps],
        "final": structure_to_doc(t.final),
    }


def trace_from_doc(doc) -> BlowupTrace:
    d = _need(doc, "dimension", int)
    steps = _need(doc, "steps", list)
    centers = [parse_center(_need(st, "center", str)) for st in steps]
    t = blowup_sequence(d, centers)
    for k, (st, (_, o)) in enumerate(zip(steps, t.steps)):
        if "fresh" in st and st["fresh"] != o.fresh_index:
            raise InputError(f"step {k}: recorded fresh index {st['fresh']} != {o.fresh_index}")
    if "final" in doc and structure_from_doc(doc["final"]) != t.final:
        raise InputError("recorded final structure does not match the replayed trace")
    return t


def load_structure(path: str) -> StrataStructure:
    """A structure document or a trace document (its final structure)."""
    doc = load_json(path)
    if isinstance(doc, dict) and "steps" in doc:
        return trace_from_doc(doc).final
    if isinstance(doc, dict) and "structure" in doc:
        return structure_from_doc(doc["structure"])
    return structure_from_doc(doc)


# nodal data


def nodal_to_doc(n: NodalData) -> dict:
    return {"nodal": [{"stratum": list(J), "plus": list(n[J].plus), "minus": list(n[J].minus)}
                      for J in n.strata()]}


def nodal_from_doc(doc) -> NodalData:
    entries = {}
    for e in _need(doc, "nodal", list):
        J = tuple(_int_list(_need(e, "stratum"), "stratum"))
        plus = _int_list(_need(e, "plus"), "plus")
        minus = _int_list(_need(e, "minus"), "minus")
        try:
            entries[J] = SignPartition(tuple(plus), tuple(minus))
        except ValueError as exc:
            raise InputError(f"stratum {list(J)}: {exc}") from None
    return NodalData(entries)


# residues


def residues_to_doc(m: ResidueModel) -> dict:
    return {
        "symbols": [{"name": s.name, "kind": s.kind} for s in m.table.symbols],
        "residues": {str(i): {"symbol": r.symbol, "scale": fraction_text(r.scale)}
                     for i, r in sorted(m.assignment.items())},
    }


def residues_from_doc(doc) -> ResidueModel:
    syms = _need(doc, "symbols", list)
    table = SymbolTable(tuple(Symbol(_need(x, "name", str), _need(x, "kind", str)) for x in syms))
    out = {}
    for key, r in _need(doc, "residues", dict).items():
        try:
            i = int(key)
        except ValueError:
            raise InputError(f"residue key {key!r} is not an index") from None
        out[i] = Residue(_need(r, "symbol", str), _fraction(_need(r, "scale")))
    return ResidueModel(table, out)


# models


def model_to_doc(m: FoliatedModel) -> dict:
    doc = {"structure": structure_to_doc(m.structure)}
    if m.residues is not None:
        doc["residues"] = residues_to_doc(m.residues)
    else:
        doc.update(nodal_to_doc(m.nodal))
    doc["traces"] = [{"id": t.id, "host": t.host, "adjacent": sorted(t.adjacent)} for t in m.traces]
    return doc


def model_from_doc(doc) -> FoliatedModel:
    s = structure_from_doc(_need(doc, "structure", dict))
    traces = []
    for t in doc.get("traces", []):
        adj = _need(t, "adjacent", list) if "adjacent" in t else []
        traces.append(TraceComponent(str(_need(t, "id")), _need(t, "host", int), frozenset(map(str, adj))))
    if "residues" in doc:
        return FoliatedModel.from_residues(s, residues_from_doc(doc["residues"]), traces)
    if "nodal" in doc:
        return FoliatedModel(s, nodal_from_doc(doc), None, tuple(traces))
    raise InputError("a model needs 'residues' or 'nodal'")


# matrices


def matrix_from_doc(doc) -> CovectorSpace:
    n = _need(doc, "n", int)
    e = _need(doc, "e", int)
    rows = [[_fraction(x) for x in r] for r in _need(doc, "rows", list)]
    return CovectorSpace(n, e, tuple(tuple(r) for r in rows))


def matrix_to_doc(u: CovectorSpace) -> dict:
    return {"n": u.n, "e": u.e, "rows": [[fraction_text(x) for x in r] for r in u.rows]}
