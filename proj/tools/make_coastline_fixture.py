#!/usr/bin/env python3
"""Regenerate data/coastline_simplified.csv.

Source: Natural Earth 1:110m admin-0 countries (public domain), as shipped in
the geopandas 0.14 wheel (geopandas/datasets/naturalearth_lowres). Countries are
merged into land masses, small islands are dropped, and the outer rings are
simplified until roughly 500 vertices remain.

usage: make_coastline_fixture.py <naturalearth_lowres.shp> <out.csv>
"""
import sys

import shapefile
from shapely.geometry import shape
from shapely.ops import unary_union

MIN_AREA_DEG2 = 25.0
TOLERANCE_DEG = 1.0
POLE_CUTOFF_DEG = 89.0


def same_point(a, b):
    return a[1] == b[1] and (a[0] - b[0]) % 360 == 0


def main(src, dst):
    reader = shapefile.Reader(src)
    land = unary_union([shape(s.__geo_interface__).buffer(0) for s in reader.shapes()])
    polys = sorted((p for p in land.geoms if p.area >= MIN_AREA_DEG2),
                   key=lambda p: -p.area)
    rings = []
    for p in polys:
        ring = p.exterior.simplify(TOLERANCE_DEG, preserve_topology=False)
        # Vertices on the pole are polygon-closure artifacts (Antarctica), and
        # lon = +-180 name the same meridian, so compare normalized points.
        coords = [(round(x, 4), round(y, 4)) for x, y in ring.coords
                  if abs(y) < POLE_CUTOFF_DEG]
        dedup = [coords[0]]
        for c in coords[1:]:
            if same_point(c, dedup[-1]):
                continue
            dedup.append(c)
        if len(dedup) >= 4:
            rings.append(dedup)
    total = sum(len(r) for r in rings)
    with open(dst, "w") as out:
        out.write("# Simplified world coastline, Natural Earth 1:110m (public domain).\n")
        out.write(f"# polylines: {len(rings)}\n")
        out.write(f"# points: {total}\n")
        out.write("id,lon_deg,lat_deg\n")
        for i, r in enumerate(rings):
            for x, y in r:
                out.write(f"land{i:02d},{x:.4f},{y:.4f}\n")
    print(len(rings), total)


if __name__ == "__main__":
    main(sys.argv[1], sys.argv[2])
