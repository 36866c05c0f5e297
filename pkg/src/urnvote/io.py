"""JSON and CSV files read and written by the command line tool.

Every JSON document carries ``"schema": 1``. Rationals are written as
``"a/b"`` strings so they survive a round trip exactly; floats stay floats.
Keys are sorted and the layout fixed, so equal content gives equal bytes.
"""

from __future__ import annotations

import csv
import io
import json
from fractions import Fraction
from pathlib import Path

from urnvote.model import (
    BichromaticInstance,
    InstanceError,
    MulticolorInstance,
    lower_bound_instance,
    make_bichromatic,
    make_multicolor,
    to_number,
)

SCHEMA = 1


def encode_number(v):
    if isinstance(v, Fraction):
        return str(v)
    if isinstance(v, int) and not isinstance(v, bool):
        return v
    return float(v)


def decode_number(v):
    return to_number(v)


def dumps(obj: dict) -> str:
    doc = {"schema": SCHEMA, **obj}
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


def loads(text: str) -> dict:
    doc = json.loads(text)
    if not isinstance(doc, dict):
        raise ValueError("expected a JSON object")
    schema = doc.get("schema", SCHEMA)
    if schema != SCHEMA:
        raise ValueError(f"unsupported schema version {schema}")
    return doc


def write_text(path, text: str) -> None:
    if path is None or str(path) == "-":
        print(text, end="")
    else:
        Path(path).write_text(text)


def write_json(path, obj: dict) -> None:
    write_text(path, dumps(obj))


def read_json(path) -> dict:
    return loads(Path(path).read_text())


def csv_text(header: list[str], rows: list[list]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([encode_number(v) if isinstance(v, Fraction) else v for v in row])
    return buf.getvalue()


def write_csv(path, header: list[str], rows: list[list]) -> None:
    write_text(path, csv_text(header, rows))


def parse_csv(text: str) -> tuple[list[str], list[list[str]]]:
    reader = csv.reader(io.StringIO(text))
    rows = list(reader)
    if not rows:
        raise ValueError("empty CSV")
    return rows[0], rows[1:]


def read_csv(path) -> tuple[list[str], list[list[str]]]:
    return parse_csv(Path(path).read_text())


def instance_to_dict(inst) -> dict:
    if isinstance(inst, BichromaticInstance):
        return {"kind": "bichromatic", "probs": [encode_number(p) for p in inst.probs]}
    if isinstance(inst, MulticolorInstance):
        return {"kind": "multicolor", "rows": [[encode_number(v) for v in row] for row in inst.rows]}
    raise TypeError(f"not an instance: {inst!r}")


def instance_from_dict(doc: dict):
    """Build an instance from ``{"kind": "bichromatic", "probs": [...]}``,
    ``{"kind": "multicolor", "rows": [[...], ...]}`` or
    ``{"kind": "lower_bound", "n": 5, "eps": "1/5"}``."""
    kind = doc.get("kind")
    if kind is None:
        kind = "multicolor" if "rows" in doc else "bichromatic"
    if kind == "bichromatic":
        if "probs" not in doc:
            raise InstanceError("bichromatic instance needs 'probs'")
        return make_bichromatic(doc["probs"])
    if kind == "multicolor":
        if "rows" not in doc:
            raise InstanceError("multicolor instance needs 'rows'")
        return make_multicolor(doc["rows"])
    if kind == "lower_bound":
        return lower_bound_instance(int(doc["n"]), doc["eps"])
    raise InstanceError(f"unknown instance kind {kind!r}")


def load_instance(path):
    return instance_from_dict(read_json(path))


def save_instance(path, inst) -> None:
    write_json(path, instance_to_dict(inst))
