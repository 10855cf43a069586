"""File formats: shapes and profiles as JSON, grids of numbers as CSV.

Shape files:    {"outer": [4, 2], "inner": [1]}
Profile files:  {"psi": [[x, y], ...], "phi": [[x, y], ...]}
Tiling files:   [{"type": 1|2|3, "x": int, "y": int}, ...]
Density CSV:    x,y,freq1,freq2,freq3,n          one row per anchor cell
Terms CSV:      tiling_id,log_weight,flat_cells  flat cells joined "x,y;x,y"
Mesh CSV:       node_x,node_y,f
"""
from __future__ import annotations

import csv
import json
from pathlib import Path
from typing import Iterable

from .shapes import SkewShape, StableProfile
from .tiling import Lozenge, Tiling, build_region


def _read_json(path) -> object:
    text = Path(path).read_text()
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValueError(f"{path}: not valid JSON ({exc})") from None


def load_shape(path) -> SkewShape:
    data = _read_json(path)
    if not isinstance(data, dict) or "outer" not in data:
        raise ValueError(f"{path}: expected an object with 'outer' (and 'inner')")
    outer = data["outer"]
    inner = data.get("inner", [])
    if not all(isinstance(v, int) for v in list(outer) + list(inner)):
        raise ValueError(f"{path}: row lengths must be integers")
    return SkewShape(outer, inner)


def save_shape(shape: SkewShape, path) -> None:
    doc = {"outer": list(shape.outer), "inner": list(shape.inner)}
    Path(path).write_text(json.dumps(doc) + "\n")


def load_profile(path) -> StableProfile:
    data = _read_json(path)
    if not isinstance(data, dict) or "psi" not in data:
        raise ValueError(f"{path}: expected an object with 'psi' (and 'phi')")
    psi = [tuple(map(float, p)) for p in data["psi"]]
    phi = [tuple(map(float, p)) for p in data.get("phi", [])]
    return StableProfile(psi, phi)


def save_profile(profile: StableProfile, path) -> None:
    doc = {"psi": [list(p) for p in profile.psi],
           "phi": [list(p) for p in profile.phi]}
    Path(path).write_text(json.dumps(doc) + "\n")


def load_tiling(path, shape: SkewShape) -> Tiling:
    data = _read_json(path)
    if not isinstance(data, list):
        raise ValueError(f"{path}: expected a list of lozenges")
    loz = []
    for item in data:
        try:
            loz.append(Lozenge(int(item["type"]), int(item["x"]), int(item["y"])))
        except (TypeError, KeyError) as exc:
            raise ValueError(f"{path}: bad lozenge entry {item!r}") from None
    return Tiling(loz, build_region(shape))


def save_tiling(tiling: Tiling, path) -> None:
    doc = [{"type": lz.type, "x": lz.x, "y": lz.y} for lz in tiling.lozenges]
    Path(path).write_text(json.dumps(doc) + "\n")


def save_density(field, path) -> None:
    """Write a sampled lozenge density (see sampler.density) as CSV."""
    with open(path, "w", newline="") as fh:
        wr = csv.writer(fh)
        wr.writerow(["x", "y", "freq1", "freq2", "freq3", "n"])
        for row in field.rows():
            wr.writerow(row)


class DensityRows:
    """Anchor cells with per-type frequencies, as loaded from a density CSV."""

    __slots__ = ("anchors", "freqs", "n")

    def __init__(self, anchors, freqs, n):
        self.anchors = anchors
        self.freqs = freqs
        self.n = n


def load_density(path) -> DensityRows:
    anchors, freqs, n = [], [], 0
    with open(path, newline="") as fh:
        rd = csv.reader(fh)
        header = next(rd, None)
        if header is None or header[:2] != ["x", "y"]:
            raise ValueError(f"{path}: not a density CSV")
        for row in rd:
            if len(row) < 6:
                raise ValueError(f"{path}: density rows need 6 columns")
            anchors.append((int(row[0]), int(row[1])))
            freqs.append((float(row[2]), float(row[3]), float(row[4])))
            n = int(row[5])
    return DensityRows(anchors, freqs, n)


def save_terms(rows: Iterable[tuple[int, float, list]], path) -> None:
    """Write per-tiling weight terms: (id, log weight, flat cell list)."""
    with open(path, "w", newline="") as fh:
        wr = csv.writer(fh)
        wr.writerow(["tiling_id", "log_weight", "flat_cells"])
        for tid, logw, cells in rows:
            joined = ";".join(f"{x},{y}" for x, y in cells)
            wr.writerow([tid, f"{logw:.12g}", joined])


def save_mesh(mesh, path) -> None:
    """Write solver node heights as CSV (node_x, node_y, f)."""
    with open(path, "w", newline="") as fh:
        wr = csv.writer(fh)
        wr.writerow(["node_x", "node_y", "f"])
        for (x, y), v in zip(mesh.xy, mesh.f):
            wr.writerow([f"{x:.12g}", f"{y:.12g}", f"{v:.12g}"])
