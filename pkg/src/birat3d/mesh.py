"""Boundary-surface quad meshes of the image of the unit cube.

The six faces of ``[0,1]^3`` are sampled on an ``(n+1) x (n+1)`` lattice
each and pushed through the map; vertices are exact while the net is
exact, so the lattice invariant (vertex == map value) can be checked with
equality.  OBJ output works in the affine chart ``x0 = 1`` — a vertex at
infinity aborts the export, since OBJ has no projective semantics.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .controlnet import FACE_NAMES, ControlNet
from .errors import InputError, NonAffineIntersection
from .inversion import eval_map
from .scalars import Scalar


@dataclass(frozen=True)
class FaceMesh:
    """One boundary face: affine vertices on the lattice plus quads."""

    name: str
    vertices: tuple[tuple[Scalar, Scalar, Scalar], ...]
    quads: tuple[tuple[int, int, int, int], ...]   # local 0-based corners


@dataclass(frozen=True)
class MeshExport:
    resolution: int
    faces: tuple[FaceMesh, ...]

    def to_json(self) -> dict:
        return {"resolution": self.resolution,
                "faces": [{"name": f.name,
                           "vertices": [[float(c) for c in v]
                                        for v in f.vertices],
                           "quads": [list(q) for q in f.quads]}
                          for f in self.faces]}


def _lattice_pair(num: int, den: int, exact: bool):
    """Own-basis parameter pair of the affine lattice value x = num/den.

    The affine parameter is the convex-combination coordinate (1 - x, x):
    x = 0 and x = 1 are exactly the two boundary faces of the axis in
    either basis, and ``eval_map`` reads pairs in the net's own basis.
    """
    if exact:
        x = Fraction(num, den)
        return (1 - x, x)
    x = num / den
    return (1.0 - x, x)


def boundary_mesh(net: ControlNet, resolution: int) -> MeshExport:
    """Sample the six boundary faces at lattice (a/n, b/n) parameters."""
    if resolution < 1:
        raise InputError("mesh resolution must be at least 1")
    exact = net.mode() == "exact"
    ctx = net.ctx()
    n = resolution
    faces = []
    for axis in range(3):
        for side in range(2):
            free = [a for a in range(3) if a != axis]
            verts = []
            for a in range(n + 1):
                for b in range(n + 1):
                    coords = [None, None, None]
                    coords[axis] = _lattice_pair(side, 1, exact)
                    coords[free[0]] = _lattice_pair(a, n, exact)
                    coords[free[1]] = _lattice_pair(b, n, exact)
                    img = eval_map(net, coords)
                    scale = max(abs(float(c)) for c in img)
                    if ctx.is_zero(img[0], scale):
                        raise NonAffineIntersection(
                            f"face {FACE_NAMES[2 * axis + side]} maps the "
                            f"lattice point ({a}/{n}, {b}/{n}) to infinity")
                    verts.append(tuple(img[m] / img[0] for m in (1, 2, 3)))
            quads = []
            for a in range(n):
                for b in range(n):
                    i00 = a * (n + 1) + b
                    quads.append((i00, i00 + n + 1, i00 + n + 2, i00 + 1))
            faces.append(FaceMesh(FACE_NAMES[2 * axis + side],
                                  tuple(verts), tuple(quads)))
    return MeshExport(resolution, tuple(faces))


def mesh_to_obj(mesh: MeshExport) -> str:
    """Wavefront OBJ text: `v x y z` vertices, `f` quads, one group per face."""
    lines = []
    offset = 1                     # OBJ indices are 1-based
    for face in mesh.faces:
        lines.append(f"g {face.name}")
        for v in face.vertices:
            lines.append("v " + " ".join(repr(float(c)) for c in v))
        for q in face.quads:
            lines.append("f " + " ".join(str(i + offset) for i in q))
        offset += len(face.vertices)
    return "\n".join(lines) + "\n"
