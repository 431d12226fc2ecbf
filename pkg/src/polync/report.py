"""Structured analysis reports with JSON and plain-text renderings.

The text rendering is produced from ``to_dict()``, so both renderings carry
the same values.  ``POLYNC_COLOR=never`` disables ANSI colors; ``auto`` (the
default) colors PASS/FAIL only when writing to a terminal.
"""

from __future__ import annotations

import os
from dataclasses import asdict, dataclass, field, fields
from typing import Any, TextIO

from polync.io import SAFE_INT

SCHEMA_VERSION = 1

# sections whose integers may be large, and must survive a JSON round trip
_NUMERIC_PATHS = {
    ("monodromy", "matrix"),
    ("monodromy", "determinant"),
    ("lattice", "slab_classes", "coordinates"),
    ("lattice", "slab_classes", "exponent"),
}


@dataclass
class AnalysisReport:
    command: str
    ok: bool = True
    validation: dict | None = None
    classification: dict | None = None
    coloring: dict | None = None
    triple_point: dict | None = None
    charges: dict | None = None
    slabs: dict | None = None
    parameters: dict | None = None
    monodromy: dict | None = None
    lattice: dict | None = None
    notes: list[str] = field(default_factory=list)
    schema_version: int = SCHEMA_VERSION

    def fail(self, note: str | None = None) -> None:
        self.ok = False
        if note:
            self.notes.append(note)

    def to_dict(self) -> dict:
        return _encode(asdict(self), ())

    @classmethod
    def from_dict(cls, doc: dict) -> "AnalysisReport":
        if doc.get("schema_version") != SCHEMA_VERSION:
            raise ValueError(f"unsupported report schema version {doc.get('schema_version')!r}")
        names = {f.name for f in fields(cls)}
        unknown = set(doc) - names
        if unknown:
            raise ValueError(f"unknown report fields {sorted(unknown)}")
        return cls(**{k: _decode(v, (k,)) for k, v in doc.items()})

    def render_text(self, stream: TextIO | None = None) -> str:
        return render_text(self.to_dict(), use_color(stream))


def _encode(x: Any, path: tuple) -> Any:
    if isinstance(x, bool):
        return x
    if isinstance(x, int):
        return str(x) if abs(x) > SAFE_INT else x
    if isinstance(x, dict):
        return {k: _encode(v, path + (k,)) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_encode(v, path) for v in x]
    return x


def _decode(x: Any, path: tuple) -> Any:
    if isinstance(x, dict):
        return {k: _decode(v, path + (k,)) for k, v in x.items()}
    if isinstance(x, list):
        return [_decode(v, path) for v in x]
    if isinstance(x, str) and path in _NUMERIC_PATHS:
        return int(x)
    return x


def use_color(stream: TextIO | None) -> bool:
    mode = os.environ.get("POLYNC_COLOR", "auto").lower()
    if mode == "never" or stream is None:
        return False
    return mode == "auto" and hasattr(stream, "isatty") and stream.isatty()


def _verdict(ok: bool, color: bool) -> str:
    word = "PASS" if ok else "FAIL"
    if not color:
        return word
    return f"\033[32m{word}\033[0m" if ok else f"\033[31m{word}\033[0m"


def _fmt_matrix(rows: list[list]) -> list[str]:
    if not rows:
        return ["    (empty)"]
    width = max(len(str(x)) for r in rows for x in r)
    return ["    [" + " ".join(str(x).rjust(width) for x in r) + "]" for r in rows]


def render_text(d: dict, color: bool = False) -> str:
    out = [f"polync {d['command']}: {_verdict(d['ok'], color)}"]

    if (v := d.get("validation")) is not None:
        counts = ", ".join(f"{k}={n}" for k, n in v["counts"].items())
        out.append(f"validation: {_verdict(v['ok'], color)} ({counts})")
        for viol in v["violations"]:
            out.append(f"  [{viol['code']}] {viol['cell']}: {viol['message']}")

    if (c := d.get("classification")) is not None:
        out.append(f"classification: {c['type']}")
        out.append(f"  euler characteristic: {c['euler_characteristic']}")
        if "euler_relations" in c:
            out.append(f"  euler relations: {_verdict(c['euler_relations'], color)}")

    if (c := d.get("coloring")) is not None:
        if c["colorable"]:
            out.append(f"coloring: {len(c['colors'])} colors ({', '.join(c['colors'])}) source={c['source']}")
            if "valid" in c:
                out.append(f"  supplied coloring: {_verdict(c['valid'], color)}")
            for s, cells in c.get("edges_by_color", {}).items():
                out.append(f"  {s}: {len(cells)} edges")
            if c.get("conflicts") is not None:
                pairs = ", ".join(f"{a}-{b}" for a, b in c["conflicts"])
                out.append(f"  conflict graph edges: {pairs or '(none)'}")
        else:
            ob = c["obstruction"]
            out.append(f"coloring: {_verdict(False, color)} obstruction at cell {ob['cell']}")
            out.append(f"  slots {ob['slots'][0]} and {ob['slots'][1]} are forced to share a color")
            for face, coface, i, j in ob["trace"]:
                out.append(f"  {face}[{i}] -> {coface}[{j}]")

    if (t := d.get("triple_point")) is not None:
        out.append(f"triple point formula: {_verdict(t['ok'], color)} ({len(t['violations'])} violations)")
        for e, (total, expected) in t["sums"].items():
            mark = "" if total == expected else "  <-- violation"
            out.append(f"  {e}: {total} (expected {expected}){mark}")

    if (q := d.get("charges")) is not None:
        tail = "" if q["ok"] is None else f" {_verdict(q['ok'], color)}"
        out.append(f"charges: total {q['total']}{tail}")
        for v, comp in q["components"].items():
            cyc = " ".join(str(x) for _, x in comp["cycle"])
            out.append(f"  {v}: k={comp['k']} cycle=({cyc}) Q={comp['charge']}")

    if (s := d.get("slabs")) is not None:
        out.append("slabs:")
        for col, info in s.items():
            ident = info.get("identity")
            tail = f" identity {_verdict(ident, color)}" if ident is not None else ""
            out.append(f"  {col}: n={info['n']} triangles={info['triangles']}{tail}")
            for k, members in enumerate(info["slabs"]):
                out.append(f"    {k}: {' '.join(members)}")

    if (p := d.get("parameters")) is not None:
        out.append(
            f"parameter count: structural {p['structural']}, expected {p['expected']} {_verdict(p['agree'], color)}"
        )
        out.append("  slabs per color: " + ", ".join(f"{c}={n}" for c, n in p["slab_counts"].items()))

    if (m := d.get("monodromy")) is not None:
        out.append(f"monodromy Gram matrix ({', '.join(m['colors'])}):")
        out.extend(_fmt_matrix(m["matrix"]))
        out.append(f"  determinant: {m['determinant']}")
        out.append(f"  rank: {m['rank']}")
        out.append(f"  signature (+, -, 0): {tuple(m['signature'])}")
        for entry in m.get("basechange", []):
            out.append(f"  basechange {entry['pair'][0]}+{entry['pair'][1]}: {entry['triangles']} triangles")

    if (lat := d.get("lattice")) is not None:
        out.append(f"numerically Cartier lattice: rank {lat['rank']} in dimension {lat['dim']}")
        for sc in lat["slab_classes"]:
            line = f"  {sc['color']} slab {sc['slab']}: coordinates {sc['coordinates']}"
            if "ok" in sc:
                line += f" exponent {sc['exponent']} {_verdict(sc['ok'], color)}"
            out.append(line)

    for note in d.get("notes", []):
        out.append(f"note: {note}")
    return "\n".join(out) + "\n"
