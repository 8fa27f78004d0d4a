"""Sample a map germ on a parameter grid and export a Wavefront OBJ mesh."""

from __future__ import annotations

from dataclasses import dataclass

from .expr import MapGerm


@dataclass(frozen=True)
class MeshSpec:
    u_range: tuple[float, float] = (-1.0, 1.0)
    v_range: tuple[float, float] = (-1.0, 1.0)
    resolution: tuple[int, int] = (64, 64)  # vertices per axis

    def __post_init__(self):
        if min(self.resolution) < 2:
            raise ValueError("resolution must be at least 2 per axis")
        for lo, hi in (self.u_range, self.v_range):
            if not (lo < hi and abs(lo) < float("inf") and abs(hi) < float("inf")):
                raise ValueError("parameter ranges must be finite and increasing")


def obj_lines(germ_map: MapGerm, spec: MeshSpec) -> list[str]:
    """Vertices in row-major order (u outer), two triangles per grid cell."""
    nu, nv = spec.resolution
    u0, u1 = spec.u_range
    v0, v1 = spec.v_range
    lines = []
    for i in range(nu):
        u = u0 + (u1 - u0) * i / (nu - 1)
        for j in range(nv):
            v = v0 + (v1 - v0) * j / (nv - 1)
            x, y, z = germ_map(u, v)
            lines.append(f"v {x:.17g} {y:.17g} {z:.17g}")
    for i in range(nu - 1):
        for j in range(nv - 1):
            a = i * nv + j + 1  # OBJ indices are 1-based
            b = a + nv
            lines.append(f"f {a} {b} {b + 1}")
            lines.append(f"f {a} {b + 1} {a + 1}")
    return lines


def write_obj(germ_map: MapGerm, spec: MeshSpec, path: str) -> int:
    lines = obj_lines(germ_map, spec)
    with open(path, "w") as fh:
        fh.write("\n".join(lines) + "\n")
    return len(lines)
