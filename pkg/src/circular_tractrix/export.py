"""Polyline CSV, triangulated OBJ and cuspidal-edge JSON writers.

Floats are written as their shortest round-trip ``repr`` so identical inputs
give byte-identical files.
"""
from __future__ import annotations

import io
import json
import math
from collections import Counter
from dataclasses import dataclass

import numpy as np

from .frenet import REGULAR_TOL as CUSP_SPEED, frame_from_derivatives
from .pseudosphere import SurfacePatch, cuspidal_edges, surface_point
from .tractrix import TractrixParams, eval_curve

SCHEMA = 1


def fmt(x) -> str:
    x = float(x)
    if x == 0.0:
        return "0.0"
    return repr(x)


def clean_json(obj):
    """Replace non-finite floats by None, recursively."""
    if isinstance(obj, dict):
        return {k: clean_json(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [clean_json(v) for v in obj]
    if isinstance(obj, (float, np.floating)):
        return float(obj) if math.isfinite(obj) else None
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.bool_):
        return bool(obj)
    return obj


def dumps(obj) -> str:
    return json.dumps(clean_json(obj), indent=2) + "\n"


def curve_table(p: TractrixParams, t) -> str:
    """CSV rows ``t,x,y,z,speed,kappa,tau``; curvature and torsion are ``nan`` at cusps."""
    t = np.asarray(t, float)
    s = eval_curve(p, t)
    with np.errstate(divide="ignore", invalid="ignore"):
        _, _, _, kappa, tau = frame_from_derivatives(s.d1, s.d2, s.d3)
    cusp = np.abs(s.xi[:, 1]) < CUSP_SPEED
    kappa = np.where(cusp, np.nan, kappa)
    tau = np.where(cusp, np.nan, tau)
    out = io.StringIO()
    out.write("t,x,y,z,speed,kappa,tau\n")
    for row in zip(t, s.f[:, 0], s.f[:, 1], s.f[:, 2], s.speed, kappa, tau):
        out.write(",".join(fmt(v) for v in row) + "\n")
    return out.getvalue()


@dataclass
class MeshObject:
    name: str
    vertices: np.ndarray     # (n, 3)
    faces: np.ndarray        # (m, 3), zero-based


def grid_mesh(s: SurfacePatch, t_range, a_range, nt: int, na: int, name: str) -> MeshObject:
    if nt < 2 or na < 2:
        raise ValueError("need at least a 2 x 2 grid")
    t = np.linspace(*t_range, nt)
    a = np.linspace(*a_range, na)
    T, A = np.meshgrid(t, a, indexing="ij")
    verts = surface_point(s, T, A).f.reshape(-1, 3)
    i, j = np.meshgrid(np.arange(nt - 1), np.arange(na - 1), indexing="ij")
    v00 = (i * na + j).ravel()
    v01, v10 = v00 + 1, v00 + na
    v11 = v10 + 1
    faces = np.concatenate([np.stack([v00, v10, v11], 1), np.stack([v00, v11, v01], 1)])
    order = np.lexsort((faces[:, 2], faces[:, 1], faces[:, 0]))
    return MeshObject(name, verts, faces[order])


def surface_objects(R: float, t_range, a_range, nt: int, na: int, branches=(1,)) -> list[MeshObject]:
    """One object per branch and per regular piece between consecutive cuspidal edges."""
    objects = []
    for b in branches:
        s = SurfacePatch(R, b)
        cuts = [x for x in cuspidal_edges(s, t_range) if t_range[0] < x < t_range[1]]
        pts = [t_range[0], *cuts, t_range[1]]
        for k, (lo, hi) in enumerate(zip(pts, pts[1:])):
            label = {1: "plus", -1: "minus"}[b]
            objects.append(grid_mesh(s, (lo, hi), a_range, nt, na, f"branch_{label}_piece_{k}"))
    return objects


def obj_text(objects: list[MeshObject], header: str = "") -> str:
    out = io.StringIO()
    if header:
        out.write(f"# {header}\n")
    base = 1
    for obj in objects:
        out.write(f"o {obj.name}\n")
        for v in obj.vertices:
            out.write("v " + " ".join(fmt(c) for c in v) + "\n")
        for f in obj.faces:
            out.write("f " + " ".join(str(int(k) + base) for k in f) + "\n")
        base += len(obj.vertices)
    return out.getvalue()


def cusp_sidecar(R: float, t_range, a_range, n: int, branches=(1,)) -> dict:
    edges = []
    for b in branches:
        s = SurfacePatch(R, b)
        a = np.linspace(*a_range, n)
        for te in cuspidal_edges(s, t_range):
            pts = surface_point(s, np.full_like(a, te), a).f
            edges.append({"t": te, "branch": b, "points": pts.tolist()})
    return {"schema": SCHEMA, "R": R, "cuspidal_edges": edges}


def edge_valence(obj: MeshObject) -> Counter:
    """How many triangles share each undirected edge."""
    count = Counter()
    for f in obj.faces:
        for u, v in ((f[0], f[1]), (f[1], f[2]), (f[2], f[0])):
            count[(min(u, v), max(u, v))] += 1
    return count
