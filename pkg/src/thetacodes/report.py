"""Plain-data views of results and their two serializations.

``json`` is a single JSON document.  ``text`` is one ``dotted.key = value``
line per leaf, each value JSON-encoded, so it parses back to the same
document.  The layout is pinned by ``report.schema.json``.
"""

from __future__ import annotations

import json
from importlib import resources

from . import __version__
from .completion import BlockSpec, CompletionResult, SyncCompletion
from .hull import HullResult
from .problem import ProblemFile
from .properties import Check, CodeReport

TOOL = "thetacodes"


def _sorted(words):
    return sorted(words, key=lambda w: (len(w), w))


def check_to_dict(check: Check | None):
    if check is None:
        return None
    return {"holds": check.holds, "witness": _plain(check.witness)}


def _plain(value):
    if isinstance(value, Check):
        return check_to_dict(value)
    if isinstance(value, dict):
        return {str(k): _plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    if isinstance(value, (set, frozenset)):
        return _sorted(value)
    return value


def envelope(command: str, problem: ProblemFile, result: dict, settings: dict | None = None) -> dict:
    return {
        "tool": TOOL,
        "version": __version__,
        "command": command,
        "input_digest": problem.digest,
        "settings": settings or {},
        "problem": {
            "alphabet": str(problem.alphabet),
            "kind": problem.theta.kind.value,
            "perm": {s: d for s, d in problem.theta.perm},
            "words": list(problem.words),
            "witness": problem.witness,
        },
        "result": result,
    }


def code_report_to_dict(report: CodeReport) -> dict:
    return {
        "is_code": check_to_dict(report.is_code),
        "is_prefix": check_to_dict(report.is_prefix),
        "is_suffix": check_to_dict(report.is_suffix),
        "is_bifix": check_to_dict(report.is_bifix),
        "deciphering_delay": report.deciphering_delay,
        "deciphering_delay_witness": report.deciphering_delay_witness,
        "two_way_delay": report.two_way_delay,
        "two_way_delay_witness": report.two_way_delay_witness,
        "sync_delay": report.sync_delay,
        "is_circular": check_to_dict(report.is_circular),
        "is_complete": check_to_dict(report.is_complete),
        "is_thin": check_to_dict(report.is_thin),
        "is_invariant": report.is_invariant,
        "is_maximal": {"verdict": report.is_maximal.value, "reason": report.maximal_reason},
    }


def hull_to_dict(result: HullResult) -> dict:
    return {
        "generators": result.sorted_generators(),
        "source": _sorted(result.source),
        "iterations": result.iterations,
        "source_is_code": result.source_is_code,
        "defect_holds": result.defect_holds,
        "initial_factor_map": dict(sorted(result.initial_factor_map.items())),
        "terminal_factor_map": dict(sorted(result.terminal_factor_map.items())),
    }


def block_to_dict(spec: BlockSpec) -> dict:
    return {"y": spec.y, "z": spec.z, "Z": spec.sorted_block(), "block_len": spec.block_len}


def sync_to_dict(sc: SyncCompletion, max_enum: int) -> dict:
    return {
        "automaton": sc.generators.to_text(),
        "finite_generators": None if sc.finite_generators is None else _sorted(sc.finite_generators),
        "members": sc.generators.words(max_enum),
        "certificates": {k: check_to_dict(v) for k, v in sc.certificates.items()},
    }


def completion_to_dict(cr: CompletionResult, max_enum: int) -> dict:
    return {
        "t": cr.t,
        "t_length": len(cr.t),
        "steps": _plain(cr.steps),
        "expression": cr.expression,
        "automaton": cr.result.to_text(),
        "U_automaton": cr.U.to_text(),
        "certificates": {k: check_to_dict(v) for k, v in cr.certificates.items()},
        "members": cr.members(max_enum),
    }


# ---------------------------------------------------------------------------
# serialization


def to_json(doc: dict) -> str:
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"


def _flatten(doc, prefix, out):
    if isinstance(doc, dict) and doc:
        for k, v in doc.items():
            _flatten(v, f"{prefix}.{k}" if prefix else k, out)
    else:
        out.append(f"{prefix} = {json.dumps(doc, ensure_ascii=False)}")


def to_text(doc: dict) -> str:
    lines: list[str] = []
    _flatten(doc, "", lines)
    return "\n".join(lines) + "\n"


def parse_text(text: str) -> dict:
    doc: dict = {}
    for line in text.splitlines():
        if not line.strip():
            continue
        key, _, value = line.partition(" = ")
        node = doc
        *parents, leaf = key.split(".")
        for part in parents:
            node = node.setdefault(part, {})
        node[leaf] = json.loads(value)
    return doc


def render(doc: dict, fmt: str) -> str:
    return to_json(doc) if fmt == "json" else to_text(doc)


def schema() -> dict:
    return json.loads(resources.files(__package__).joinpath("report.schema.json").read_text())
