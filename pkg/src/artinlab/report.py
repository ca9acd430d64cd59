"""Report documents: a stable JSON structure and a plain-text rendering.

A document is a plain dict. ``render_json`` sorts keys and uses a fixed
indentation, so identical inputs give byte-identical output. Timing is
only embedded on request because wall-clock numbers would break that.
"""

from __future__ import annotations

import hashlib
import json
from typing import Optional

from . import __version__

SCHEMA = "artinlab.report/1"


def input_digest(text: str) -> str:
    return "sha256:" + hashlib.sha256(text.encode("utf-8")).hexdigest()


def build_document(command: str, text: str, parameters: dict, results: list, audits: Optional[list] = None, timing: Optional[dict] = None) -> dict:
    doc = {
        "schema": SCHEMA,
        "tool": {"name": "artinlab", "version": __version__},
        "command": command,
        "input_digest": input_digest(text),
        "parameters": parameters,
        "results": results,
        "audits": audits or [],
    }
    if timing is not None:
        doc["timing"] = timing
    return doc


def render_json(doc: dict) -> str:
    return json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def _value_text(v) -> str:
    if isinstance(v, dict) and "text" in v:
        return str(v["text"])
    if isinstance(v, dict) and set(v) == {"kind", "n"}:
        kind, n = v["kind"], v["n"]
        return {"exact": str(n), "at_least": f">={n}", "infinite_within_cap": f"inf(cap {n})"}.get(kind, "-inf(zero module)")
    if isinstance(v, (list, tuple)):
        return "[" + ", ".join(_value_text(x) for x in v) + "]"
    return str(v)


def render_text(doc: dict) -> str:
    lines = [f"artinlab {doc['tool']['version']}  {doc['command']}  {doc['input_digest'][:19]}"]
    params = doc["parameters"]
    lines.append("parameters: " + ", ".join(f"{k}={params[k]}" for k in sorted(params)))
    for r in doc["results"]:
        subject = r.get("subject", "")
        label = r.get("label", "")
        shown = {k: v for k, v in r.items() if k not in ("operation", "subject", "label")}
        head = f"  [{r['operation']}] {label or subject}"
        if "value" in shown:
            head = f"{head} = {_value_text(shown.pop('value'))}"
        lines.append(head)
        for k in sorted(shown):
            lines.append(f"      {k}: {_value_text(shown[k])}")
    for a in doc["audits"]:
        lines.append(f"  audit {a['audit']} on {a['context']} ({a['hypothesis']})")
        width = max((len(c["label"]) for c in a["conditions"]), default=10)
        for c in a["conditions"]:
            lines.append(f"    {c['label'].ljust(width)}  {c['verdict']:<19} {c['description']}")
        for n in a["notes"]:
            lines.append(f"    note: {n}")
        lines.append(f"    consistency: {a['consistency']}")
        for cf in a["conflicts"]:
            lines.append(f"    conflict: {json.dumps(cf, sort_keys=True)}")
    if "timing" in doc:
        lines.append("timing: " + ", ".join(f"{k}={v:.3f}s" for k, v in sorted(doc["timing"].items())))
    return "\n".join(lines) + "\n"
