"""Time the compiled kernels against the pure-Python fallback and check they agree.

    python3 benchmarks/bench_kernels.py --n 256 --repeat 3
"""

import argparse
import time

import numpy as np

from geolabel import kernels
from geolabel.geom_graphs import generate_instance, segments_of, to_grid
from geolabel.labeling import bipartize, encode_from_bicliques, parse_biclique_labels
from geolabel.biclique import star_decomposition


def best_of(fn, repeat):
    best = float("inf")
    out = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def same(a, b):
    if isinstance(a, tuple) or isinstance(b, tuple):
        return tuple(int(v) for v in a) == tuple(int(v) for v in b)
    return np.array_equal(np.asarray(a), np.asarray(b))


def workloads(n, seed):
    disks = generate_instance("unit_disk", n, seed)
    g, _ = to_grid([p[0] for p in disks.payload["points"]] + [p[1] for p in disks.payload["points"]] + [1])
    dx, dy, unit = g[:n], g[n:2 * n], g[-1]
    segs = segments_of(generate_instance("segment_intersection", n, seed))
    sg, _ = to_grid([c for s in segs for c in s])
    terrain = generate_instance("terrain_visibility", n, seed).payload["vertices"]
    tg, _ = to_grid([c for v in terrain for c in v])
    poly = generate_instance("polygon_visibility", min(n, 128), seed).payload["vertices"]
    pg, _ = to_grid([c for v in poly for c in v])
    span = max(max(dx), max(dy))
    box = (span // 4, span // 4, span // 2, span // 2)
    rng = np.random.default_rng(seed)
    a = rng.integers(-1000, 1000, n).tolist()
    b = rng.integers(1, 1000, n).tolist()
    c = rng.integers(-10 ** 6, 10 ** 6, n).tolist()
    ls = encode_from_bicliques(star_decomposition(kernels.disk_adjacency(dx, dy, [unit] * n)))
    offsets, bids, sides, _ = parse_biclique_labels(ls)
    us, vs = np.triu_indices(n, 1)
    return {
        "disk_adjacency": lambda f: kernels.disk_adjacency(dx, dy, [unit] * n, force=f),
        "segment_adjacency": lambda f: kernels.segment_adjacency(sg[0::4], sg[1::4], sg[2::4], sg[3::4], force=f),
        "terrain_visibility": lambda f: kernels.terrain_visibility(tg[0::2], tg[1::2], force=f),
        "polygon_visibility": lambda f: kernels.polygon_visibility(pg[0::2], pg[1::2], force=f),
        "find_crossing": lambda f: kernels.find_crossing(pg[0::2], pg[1::2], force=f),
        "classify_disks_box": lambda f: kernels.classify_disks_box(dx, dy, [unit * unit] * n, box, force=f),
        "classify_halfplanes_box": lambda f: kernels.classify_halfplanes_box(a, b, c, (0, 0, 500, 500), force=f),
        "decode_biclique_pairs": lambda f: kernels.decode_biclique_pairs(offsets, bids, sides, us, vs, force=f),
    }


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=256)
    ap.add_argument("--seed", type=int, default=1)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    # warm the bipartition cache so its import cost does not land in the first timing
    bipartize(args.n)
    print(f"backend available: {kernels.BACKEND}")
    print(f"{'kernel':26s} {'python s':>10s} {'compiled s':>11s} {'speedup':>8s}  equal")
    failed = False
    for name, fn in workloads(args.n, args.seed).items():
        tp, out_p = best_of(lambda: fn("python"), args.repeat)
        if kernels.BACKEND != "compiled":
            print(f"{name:26s} {tp:10.4f} {'-':>11s} {'-':>8s}  -")
            continue
        tc, out_c = best_of(lambda: fn("compiled"), args.repeat)
        ok = same(out_p, out_c)
        failed |= not ok
        print(f"{name:26s} {tp:10.4f} {tc:11.4f} {tp / max(tc, 1e-9):8.1f}  {ok}")
    if failed:
        raise SystemExit("compiled and python kernels disagree")


if __name__ == "__main__":
    main()
