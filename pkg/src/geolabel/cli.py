"""Command line: gen, label, verify and bench."""

from __future__ import annotations

import argparse
import csv
import json
import math
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, fields
from pathlib import Path

import numpy as np

from .biclique import metrics, star_decomposition
from .bits import DecodeError
from .geom_graphs import (FAMILIES, BudgetError, GenerationError, Instance, adjacency_matrix,
                          generate_instance, oracle_adjacent, unit_disk_spec)
from .labeling import (LabelSet, decode_pairs, encode_from_bicliques, read_labels, sfc_order,
                       switch_encode, write_labels)
from .partition_tree import (BuildConfig, partition_tree_labels, point_halfplane_labels,
                             segment_labels)

PAIR_BUDGET = 1_000_000

COMPATIBLE = {
    "partition_tree": ("unit_disk", "point_halfplane", "segment_intersection"),
    "semilinear": ("semilinear_dnf", "boxicity"),
    "boxicity": ("boxicity",),
    "hst": ("bichromatic_segments",),
    "capped": ("terrain_visibility", "capped_abstract"),
    "polygon": ("polygon_visibility",),
    "star": FAMILIES,
    "switch": FAMILIES,
}


class UsageError(ValueError):
    pass


def valid_pairs() -> str:
    return "; ".join(f"{s}: {', '.join(fams)}" for s, fams in COMPATIBLE.items())


@dataclass
class BenchRecord:
    family: str
    n: int
    seed: int
    scheme: str
    max_label_bits: int
    total_label_bits: int
    nu_max: int | None
    decomposition_size: int | None
    build_millis: float
    verified: bool


def _point_order(inst: Instance) -> list[int]:
    pl = inst.payload
    if inst.family in ("unit_disk", "disk"):
        return sfc_order(pl["points"])
    return list(range(inst.n))


def build_labels(inst: Instance, scheme: str, opts: dict | None = None) -> tuple[LabelSet, dict]:
    """Labels for ``inst`` under ``scheme`` plus decomposition metrics when there are any."""
    opts = opts or {}
    if scheme not in COMPATIBLE:
        raise UsageError(f"unknown scheme {scheme!r}; valid pairs: {valid_pairs()}")
    if inst.family not in COMPATIBLE[scheme]:
        raise UsageError(f"scheme {scheme!r} does not apply to {inst.family!r}; valid pairs: {valid_pairs()}")
    pl = inst.payload
    cfg = BuildConfig(**{k: opts[k] for k in ("D", "r", "N_exponent", "leaf_point_cap", "seed") if k in opts})
    extra: dict = {}
    if scheme == "partition_tree":
        if inst.family == "unit_disk":
            ls, dec = partition_tree_labels(pl["points"], unit_disk_spec(), cfg)
        elif inst.family == "point_halfplane":
            ls, dec = point_halfplane_labels(pl["points"], pl["lines"], cfg)
        else:
            return segment_labels(pl["segments"], cfg), extra
        met = metrics(dec)
        extra = {"nu_max": met["nu_max"], "decomposition_size": met["size"]}
        return ls, extra
    if scheme == "semilinear":
        from .semilinear import preset_dnf, semilinear_labels
        if inst.family == "boxicity":
            d = len(pl["boxes"][0]) // 2
            return semilinear_labels(pl["boxes"], preset_dnf(f"boxicity-{d}")), extra
        return semilinear_labels(pl["vectors"], preset_dnf(inst.params.get("preset", "interval"))), extra
    if scheme == "boxicity":
        from .semilinear import boxicity_labels
        return boxicity_labels(pl["boxes"]), extra
    if scheme == "hst":
        from .visibility import BichromaticSegments, hst_labels
        return hst_labels(BichromaticSegments(list(pl["red"]), list(pl["blue"]))), extra
    if scheme == "capped":
        from .visibility import CappedInstance, capped_labels
        return capped_labels(CappedInstance(adjacency_matrix(inst), None)), extra
    if scheme == "polygon":
        from .visibility import duals_from_json, polygon_labels
        encoder = opts.get("encoder", "switch_rows")
        duals = None
        if opts.get("duals"):
            duals = duals_from_json(Path(opts["duals"]).read_text())
        return polygon_labels(pl["vertices"], adjacency_matrix(inst), encoder, duals), extra
    m = adjacency_matrix(inst)
    if scheme == "star":
        dec = star_decomposition(m)
        met = metrics(dec)
        return encode_from_bicliques(dec), {"nu_max": met["nu_max"], "decomposition_size": met["size"]}
    return switch_encode(m, _point_order(inst)), extra


def verify_labels(inst: Instance, ls: LabelSet, budget: int = PAIR_BUDGET, seed: int = 0) -> dict:
    """Compare decoding with the oracle on all pairs, or on ``budget`` seeded samples."""
    n = inst.n
    if ls.descriptor.n != n:
        raise UsageError(f"label set has n={ls.descriptor.n} but the instance has n={n}")
    total = n * (n - 1) // 2
    sampled = total > budget
    if sampled:
        rng = np.random.default_rng(seed)
        us = rng.integers(0, n, budget)
        vs = (us + rng.integers(1, n, budget)) % n
        us, vs = np.minimum(us, vs), np.maximum(us, vs)
    else:
        us, vs = np.triu_indices(n, 1)
    try:
        m = adjacency_matrix(inst)
        truth = m[us, vs].astype(np.uint8)
    except BudgetError:
        truth = np.array([oracle_adjacent(inst, int(u), int(v)) for u, v in zip(us, vs)], dtype=np.uint8)
    got = np.asarray(decode_pairs(ls, us, vs))
    errors = int((got == 2).sum())
    mismatches = int(((got != truth) & (got != 2)).sum())
    report = {"pairs_checked": int(len(us)), "mismatches": mismatches, "decode_errors": errors,
              "sampled": sampled}
    if sampled:
        report["sampler_seed"] = seed
    return report


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------


def _parse_params(items) -> dict:
    out = {}
    for item in items or ():
        key, sep, value = item.partition("=")
        if not sep:
            raise UsageError(f"--param expects key=value, got {item!r}")
        try:
            out[key] = json.loads(value)
        except json.JSONDecodeError:
            out[key] = value
    return out


def _scheme_opts(args) -> dict:
    opts = {"D": args.D, "r": args.r, "N_exponent": args.N_exponent, "leaf_point_cap": args.leaf_cap,
            "encoder": args.encoder}
    if getattr(args, "duals", None):
        opts["duals"] = args.duals
    return opts


def _write(path: str | None, text: str) -> None:
    if path in (None, "-"):
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


def cmd_gen(args) -> int:
    inst = generate_instance(args.family, args.n, args.seed, _parse_params(args.param))
    _write(args.out, inst.to_json() + "\n")
    return 0


def cmd_label(args) -> int:
    inst = Instance.from_json(Path(args.instance).read_text())
    ls, _ = build_labels(inst, args.scheme, _scheme_opts(args))
    if args.out in (None, "-"):
        write_labels(ls, sys.stdout)
        return 0
    with open(args.out, "w") as fh:
        write_labels(ls, fh)
    desc_path = Path(args.out).with_suffix(".descriptor.json")
    desc_path.write_text(json.dumps(ls.descriptor.to_json(), sort_keys=True, indent=1) + "\n")
    return 0


def cmd_verify(args) -> int:
    inst = Instance.from_json(Path(args.instance).read_text())
    with open(args.labels) as fh:
        ls = read_labels(fh)
    report = verify_labels(inst, ls, args.budget, args.seed)
    print(json.dumps(report, sort_keys=True))
    return 0 if report["mismatches"] == 0 and report["decode_errors"] == 0 else 1


def bench_cell(family: str, n: int, seed: int, scheme: str, opts: dict, gen_params: dict,
               baseline: bool) -> tuple[BenchRecord, BenchRecord | None]:
    inst = generate_instance(family, n, seed, gen_params)
    t0 = time.perf_counter()
    ls, extra = build_labels(inst, scheme, opts)
    millis = (time.perf_counter() - t0) * 1000.0
    rep = verify_labels(inst, ls, seed=seed)
    ok = rep["mismatches"] == 0 and rep["decode_errors"] == 0
    st = ls.stats
    rec = BenchRecord(family, n, seed, scheme, st["max_bits"], st["total_bits"], extra.get("nu_max"),
                      extra.get("decomposition_size"), round(millis, 3), ok)
    base = None
    if baseline and scheme != "star":
        dec = star_decomposition(adjacency_matrix(inst))
        bls = encode_from_bicliques(dec)
        met = metrics(dec)
        base = BenchRecord(family, n, seed, "star", bls.stats["max_bits"], bls.stats["total_bits"],
                           met["nu_max"], met["size"], 0.0, True)
    return rec, base


def fit_slope(ns, values) -> float | None:
    pts = [(math.log(n), math.log(v)) for n, v in zip(ns, values) if v]
    if len({p[0] for p in pts}) < 2:
        return None
    x, y = np.array(pts).T
    return float(np.polyfit(x, y, 1)[0])


def _per_n_max(records: list[BenchRecord], key: str) -> tuple[list[int], list[float]]:
    ns = sorted({r.n for r in records})
    vals = []
    for n in ns:
        got = [getattr(r, key) for r in records if r.n == n and getattr(r, key) is not None]
        vals.append(float(np.mean(got)) if got else 0.0)
    return ns, vals


def summarize(records: list[BenchRecord], baseline: list[BenchRecord]) -> dict:
    out = {}
    for family in sorted({r.family for r in records}):
        recs = [r for r in records if r.family == family]
        entry: dict = {"scheme": recs[0].scheme, "n": sorted({r.n for r in recs})}
        if not all(r.verified for r in recs):
            entry["status"] = "FAILED"
            entry["unverified"] = [(r.n, r.seed) for r in recs if not r.verified]
            out[family] = entry
            continue
        entry["status"] = "OK"
        for key in ("max_label_bits", "nu_max"):
            ns, vals = _per_n_max(recs, key)
            entry[f"slope_{key}"] = fit_slope(ns, vals)
        ns, vals = _per_n_max(recs, "max_label_bits")
        entry["max_bits_per_log2n"] = max(v / math.log2(n) for n, v in zip(ns, vals))
        base = [b for b in baseline if b.family == family]
        if base:
            entry["baseline"] = {"scheme": "star"}
            for key in ("max_label_bits", "nu_max"):
                ns, vals = _per_n_max(base, key)
                entry["baseline"][f"slope_{key}"] = fit_slope(ns, vals)
        out[family] = entry
    return out


def threads() -> int:
    try:
        return max(1, int(os.environ.get("GEOLABEL_THREADS", "1")))
    except ValueError:
        return 1


def run_bench(family: str, scheme: str, ns: list[int], seeds: list[int], opts: dict | None = None,
              gen_params: dict | None = None, baseline: bool = True):
    if any(a >= b for a, b in zip(ns, ns[1:])):
        raise UsageError("n values must be strictly ascending")
    if not seeds:
        raise UsageError("at least one seed is needed")
    opts, gen_params = opts or {}, gen_params or {}
    cells = [(family, n, s, scheme, opts, gen_params, baseline) for n in ns for s in seeds]
    workers = threads()
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(bench_cell, *zip(*cells)))
    else:
        results = [bench_cell(*c) for c in cells]
    key = lambda r: (r.family, r.n, r.seed)  # noqa: E731
    records = sorted((r for r, _ in results), key=key)
    base = sorted((b for _, b in results if b is not None), key=key)
    return records, base, summarize(records, base)


def write_csv(records: list[BenchRecord], path: str) -> None:
    names = [f.name for f in fields(BenchRecord)]
    with open(path, "w", newline="") as fh:
        w = csv.DictWriter(fh, fieldnames=names)
        w.writeheader()
        for r in records:
            w.writerow(asdict(r))


def cmd_bench(args) -> int:
    records, _, summary = run_bench(args.family, args.scheme, args.n, args.seeds, _scheme_opts(args),
                                    _parse_params(args.param), not args.no_baseline)
    write_csv(records, args.csv)
    _write(args.summary, json.dumps(summary, indent=1, sort_keys=True) + "\n")
    return 0 if all(v["status"] == "OK" for v in summary.values()) else 1


def _add_scheme_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--scheme", required=True, choices=sorted(COMPATIBLE))
    p.add_argument("--D", type=int, default=4)
    p.add_argument("--r", type=int, default=16)
    p.add_argument("--N-exponent", dest="N_exponent", type=float, default=2.0 / 3.0)
    p.add_argument("--leaf-cap", type=int, default=4)
    p.add_argument("--encoder", default="switch_rows", choices=["switch_rows", "hst_with_supplied_duals"])
    p.add_argument("--duals", help="dual segment JSON for the polygon hst cross encoder")


def make_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="geolabel", description=__doc__)
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="generate an instance")
    p.add_argument("--family", required=True, choices=FAMILIES)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--param", action="append", help="generator parameter key=value")
    p.add_argument("--out")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("label", help="label an instance")
    p.add_argument("--instance", required=True)
    _add_scheme_flags(p)
    p.add_argument("--out")
    p.set_defaults(func=cmd_label)

    p = sub.add_parser("verify", help="check labels against the oracle")
    p.add_argument("--instance", required=True)
    p.add_argument("--labels", required=True)
    p.add_argument("--budget", type=int, default=PAIR_BUDGET, help="pairs checked before sampling")
    p.add_argument("--seed", type=int, default=0, help="sampler seed")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("bench", help="label, verify and measure over a doubling sequence")
    p.add_argument("--family", required=True, choices=FAMILIES)
    p.add_argument("--n", type=int, nargs="+", required=True)
    p.add_argument("--seeds", type=int, nargs="+", default=[1])
    _add_scheme_flags(p)
    p.add_argument("--param", action="append")
    p.add_argument("--no-baseline", action="store_true")
    p.add_argument("--csv", required=True)
    p.add_argument("--summary")
    p.set_defaults(func=cmd_bench)
    return ap


def main(argv=None) -> int:
    ap = make_parser()
    args = ap.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"geolabel: {exc}", file=sys.stderr)
        return 2
    except (OSError, DecodeError, json.JSONDecodeError, KeyError) as exc:
        print(f"geolabel: cannot read input: {exc}", file=sys.stderr)
        return 3
    except (GenerationError, BudgetError, ValueError) as exc:
        print(f"geolabel: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
