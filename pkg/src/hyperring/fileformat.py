"""The .kmn structure file format: a small JSON document.

Schema (all labels are strings, entries are arrays so files diff cleanly):

    {
      "name": "builtin33",
      "m": 3, "n": 3,
      "elements": ["0", "1", "x"],
      "zero": "0",
      "one": "1" | null,
      "f": [{"args": ["0","0","0"], "value": ["0"]}, ...],
      "g": [{"args": ["0","0","0"], "value": "0"}, ...]
    }

Tables must be total over multisets; args may come in any order and are
canonicalized, with conflicting duplicates rejected.  Export writes sorted
entries with a fixed layout so parse/export round-trips are byte-exact.
"""

from __future__ import annotations

import json

from .core import FiniteStructure, StructureError, msort, multisets


class ParseError(ValueError):
    """Structure file rejected, with the offending entry named."""


def export_structure(S: FiniteStructure) -> str:
    doc = {
        "name": S.name,
        "m": S.m,
        "n": S.n,
        "elements": list(S.labels),
        "zero": S.labels[S.zero],
        "one": None if S.one is None else S.labels[S.one],
        "f": [
            {
                "args": [S.labels[i] for i in key],
                "value": sorted((S.labels[v] for v in value), key=_label_key(S)),
            }
            for key, value in sorted(S.add.items())
        ],
        "g": [
            {"args": [S.labels[i] for i in key], "value": S.labels[value]}
            for key, value in sorted(S.mul.items())
        ],
    }
    return json.dumps(doc, indent=2) + "\n"


def _label_key(S: FiniteStructure):
    order = {label: i for i, label in enumerate(S.labels)}
    return lambda label: order[label]


def parse_structure(text: str) -> FiniteStructure:
    """Parse and construct; table canonicalization detects conflicts."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(f"not valid JSON: {e}") from None
    for fld in ("name", "m", "n", "elements", "zero", "f", "g"):
        if fld not in doc:
            raise ParseError(f"missing field {fld!r}")
    labels = doc["elements"]
    if not isinstance(labels, list) or not all(isinstance(l, str) for l in labels):
        raise ParseError("elements must be a list of labels")
    if len(set(labels)) != len(labels):
        raise ParseError("duplicate element labels")
    index = {label: i for i, label in enumerate(labels)}
    m, n = doc["m"], doc["n"]
    if not (isinstance(m, int) and isinstance(n, int) and m >= 2 and n >= 2):
        raise ParseError("arities m, n must be integers >= 2")

    def resolve(label, where):
        if label not in index:
            raise ParseError(f"unknown label {label!r} in {where}")
        return index[label]

    zero = resolve(doc["zero"], "zero")
    declared_one = None
    if doc.get("one") is not None:
        declared_one = resolve(doc["one"], "one")

    add = {}
    for entry in doc["f"]:
        args = entry.get("args")
        value = entry.get("value")
        if not isinstance(args, list) or len(args) != m:
            raise ParseError(f"f entry {entry!r} needs {m} args")
        if not isinstance(value, list) or not value:
            raise ParseError(f"empty value set in f entry for args {args}")
        key = msort(resolve(a, "f args") for a in args)
        vset = frozenset(resolve(v, "f value") for v in value)
        if key in add and add[key] != vset:
            raise ParseError(
                f"conflicting f entries for multiset {sorted(args)} after reordering"
            )
        add[key] = vset
    mul = {}
    for entry in doc["g"]:
        args = entry.get("args")
        value = entry.get("value")
        if not isinstance(args, list) or len(args) != n:
            raise ParseError(f"g entry {entry!r} needs {n} args")
        if not isinstance(value, str):
            raise ParseError(f"g entry for args {args} needs a single value label")
        key = msort(resolve(a, "g args") for a in args)
        v = resolve(value, "g value")
        if key in mul and mul[key] != v:
            raise ParseError(
                f"conflicting g entries for multiset {sorted(args)} after reordering"
            )
        mul[key] = v

    size = len(labels)
    for key in multisets(size, m):
        if key not in add:
            raise ParseError(
                f"incomplete f table: missing multiset {[labels[i] for i in key]}"
            )
    for key in multisets(size, n):
        if key not in mul:
            raise ParseError(
                f"incomplete g table: missing multiset {[labels[i] for i in key]}"
            )
    try:
        return FiniteStructure.build(
            doc["name"], m, n, tuple(labels), add, mul, zero, declared_one
        )
    except StructureError as e:
        raise ParseError(str(e)) from None


def load_structure(path) -> FiniteStructure:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_structure(fh.read())


def save_structure(S: FiniteStructure, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(export_structure(S))
