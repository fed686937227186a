"""JSON formats for geometries and Grassmann maps."""

from __future__ import annotations

import json
import os

from .linspace import GeometryError, LinearSpace
from .projspace import ProjectiveSpace, build_pg


class FormatError(ValueError):
    pass


def geometry_to_dict(space):
    out = {
        "label": space.label,
        "n_points": space.n_points,
        "lines": [list(L) for L in space.lines],
    }
    if isinstance(space, ProjectiveSpace):
        out["kind"] = "pg"
        out["n"] = space.n
        out["field"] = space.field.designator
        out["coords"] = [list(c) for c in space.coords]
    else:
        out["kind"] = "linear"
        if space.embedding is not None:
            out["embedding"] = list(space.embedding)
    return out


def geometry_from_dict(d):
    try:
        if d.get("kind") == "pg":
            return build_pg(int(d["n"]), d["field"])
        return LinearSpace(int(d["n_points"]), d["lines"], label=d.get("label", ""), embedding=d.get("embedding"))
    except (KeyError, TypeError, ValueError) as e:
        if isinstance(e, GeometryError):
            raise
        raise FormatError(f"bad geometry description: {e}") from e


def dumps(obj):
    """Deterministic JSON: sorted keys, fixed separators, trailing newline."""
    return json.dumps(obj, sort_keys=True, indent=1, separators=(",", ": ")) + "\n"


def write_json(path, obj):
    with open(path, "w") as fh:
        fh.write(dumps(obj))


def read_json(path):
    try:
        with open(path) as fh:
            return json.load(fh)
    except json.JSONDecodeError as e:
        raise FormatError(f"{path}: {e}") from e


def load_geometry(path):
    return geometry_from_dict(read_json(path))


def _geometry_ref(ref, base_dir):
    if isinstance(ref, dict):
        return geometry_from_dict(ref)
    if isinstance(ref, str):
        path = ref if os.path.isabs(ref) else os.path.join(base_dir, ref)
        return load_geometry(path)
    raise FormatError("geometry reference must be a path or an inline geometry")


def map_to_dict(f, source_ref=None, target_ref=None):
    return {
        "source": source_ref if source_ref is not None else geometry_to_dict(f.source.ambient),
        "target": target_ref if target_ref is not None else geometry_to_dict(f.target.ambient),
        "k": f.k,
        "map": list(f.map),
    }


def map_from_dict(d, base_dir="."):
    from .chow import GrassmannMap
    from .grassmann import grassmannian

    for key in ("source", "target", "k", "map"):
        if key not in d:
            raise FormatError(f"map file lacks {key!r}")
    src = _geometry_ref(d["source"], base_dir)
    tgt = _geometry_ref(d["target"], base_dir)
    k = d["k"]
    if not isinstance(k, int) or not isinstance(d["map"], list) or not all(isinstance(x, int) for x in d["map"]):
        raise FormatError("k must be an int and map a list of ints")
    try:
        return GrassmannMap(grassmannian(src, k), grassmannian(tgt, k), d["map"])
    except GeometryError as e:
        raise FormatError(str(e)) from e


def load_map(path):
    return map_from_dict(read_json(path), os.path.dirname(os.path.abspath(path)))
