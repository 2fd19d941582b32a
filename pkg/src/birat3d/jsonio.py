"""JSON file formats shared by the CLI and the HTTP service.

A control net file is ``{"basis": ..., "index_order": "k-fastest",
"points": [[4 scalars] x 8], "weights": [8 scalars]}``; exact rationals
travel as strings ("3/4"), floats as JSON numbers.  ``check_report`` builds
the one document the ``check`` subcommand and the service's report endpoint
both print, deterministically (exact scalars are normalized and the
rank-one search is seeded), so repeated runs are byte-identical.
"""
from __future__ import annotations

import json

from .birationality import (best_rank_one, canonical_variant_key,
                            delta_variants, is_birational, weight_tensor)
from .controlnet import ControlNet, classification_of
from .errors import InputError
from .geometry import Point
from .scalars import parse_scalar, scalar_to_json


def net_to_json(net: ControlNet) -> dict:
    return {"basis": net.basis,
            "index_order": "k-fastest",
            "points": [[scalar_to_json(c) for c in p.coords]
                       for p in net.points],
            "weights": [scalar_to_json(w) for w in net.weights]}


def net_from_json(data) -> ControlNet:
    if not isinstance(data, dict):
        raise InputError("a control net file must be a JSON object")
    for key in ("points", "weights"):
        if key not in data:
            raise InputError(f"control net is missing '{key}'")
    order = data.get("index_order", "k-fastest")
    if order != "k-fastest":
        raise InputError(f"unsupported index_order {order!r}")
    points = data["points"]
    weights = data["weights"]
    if not isinstance(points, list) or len(points) != 8:
        raise InputError("'points' must list 8 control points")
    if not isinstance(weights, list) or len(weights) != 8:
        raise InputError("'weights' must list 8 scalars")
    pts = []
    for p in points:
        if not isinstance(p, list) or len(p) != 4:
            raise InputError("every control point needs 4 coordinates")
        pts.append(Point(tuple(parse_scalar(c) for c in p)))
    return ControlNet(tuple(pts),
                      tuple(parse_scalar(w) for w in weights),
                      data.get("basis", "monomial"))


def load_json(path: str):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror or exc}")
    except json.JSONDecodeError as exc:
        raise InputError(f"{path} is not valid JSON: {exc}")


def load_net(path: str) -> ControlNet:
    return net_from_json(load_json(path))


def check_report(net: ControlNet) -> dict:
    """The full birationality report document for one net."""
    cls = classification_of(net)
    report = is_birational(net, cls)
    doc = report.to_json()
    doc["weights"] = [scalar_to_json(w) for w in net.weights]
    if cls.class_name == "unclassified":
        doc["distance"] = None
    else:
        key = canonical_variant_key(cls.class_name)
        delta = delta_variants(net, cls)[key].tensor
        doc["distance"] = best_rank_one(weight_tensor(net, delta)).distance
    return doc


def dump_document(doc) -> str:
    """Canonical JSON text: sorted keys, two-space indent, trailing newline."""
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"
