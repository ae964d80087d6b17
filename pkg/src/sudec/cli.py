"""Command line entry point: ``sudec <command> [options]``.

Every run writes its artifacts and a ``manifest.json`` under ``--out``.
Exit codes: 0 ok, 1 verification failure, 2 bad input, 3 search budget,
4 dimension mismatch, 5 rank mismatch.
"""
import argparse
import csv
import os
import sys
import time
from pathlib import Path

from . import __version__
from .errors import InvalidInput, SudecError
from .groups import contains_center, one_dim_characters
from .io import dump, group_to_json, load, sequence_from_json, sequence_to_json
from .lie import parse_label
from .presets import (ORIENTS, PRESETS, axis_grid, fig2_rows, make_group, preset, synthesize,
                      table3_rows)
from .qecc import (AmbientSpace, build_code, error_set, kl_check, multiplicity_scan)
from .simulate import MODELS, SweepGrid, sweep, write_csv, write_manifest

QECC_PRESETS = {
    "fig6": ("spin", ["T", "D2teddy", "O"], range(0, 15)),
    "fig7": ("qudits", ["Sigma36x3", "Sigma72x3", "Delta24", "Sigma168"], range(0, 15)),
    "fig8": ("qudits", ["Sigma36x3", "Sigma72x3", "Sigma216x3"], range(0, 15)),
}


def _range(text):
    """'a..b' -> inclusive list of ints."""
    try:
        a, b = text.split("..")
        a, b = int(a), int(b)
    except ValueError as exc:
        raise InvalidInput(f"expected a range like 0..12, got {text!r}") from exc
    if b < a:
        raise InvalidInput(f"empty range {text!r}")
    return list(range(a, b + 1))


def _floats(text):
    try:
        return [float(x) for x in text.split(",") if x.strip()]
    except ValueError as exc:
        raise InvalidInput(f"expected comma separated numbers, got {text!r}") from exc


def _write_rows(rows, path, columns=None):
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    columns = columns or list(rows[0])
    with open(path, "w", newline="") as fh:
        w = csv.DictWriter(fh, fieldnames=columns, extrasaction="ignore")
        w.writeheader()
        for r in rows:
            w.writerow(r)
    return path


def _add_group_options(p, mode=True):
    p.add_argument("--n", type=int, help="family parameter for Delta3n2, Delta6n2, Dn")
    p.add_argument("--generators", help="comma separated words in A..Z, e.g. V,X")
    p.add_argument("--orient", choices=ORIENTS)
    p.add_argument("--weyl", help="Weyl permutation such as 12, 123 or e")
    if mode:
        p.add_argument("--mode", choices=["exact", "projective"], default="exact")


def _common(p, top=False):
    d = None if top else argparse.SUPPRESS
    p.add_argument("--config", default=d, help="JSON file with option values")
    p.add_argument("--seed", type=int, default=d, help="random seed (fallback: SUDEC_SEED)")
    p.add_argument("--out", default="." if top else d, help="output directory")


def build_parser():
    parser = argparse.ArgumentParser(prog="sudec", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    _common(parser, top=True)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("group", help="build a catalogued group and summarise it")
    _common(p)
    p.add_argument("--name", help="catalogue name, required (flag or config)")
    _add_group_options(p)
    p.add_argument("--quotient-center", action="store_true")

    p = sub.add_parser("scan", help="trivial-irrep multiplicities")
    _common(p)
    p.add_argument("--groups", default="", help="comma separated group names")
    p.add_argument("--labels", help="semicolon separated labels, e.g. '1,1;3,0'")
    p.add_argument("--table3", action="store_true", help="SU(3) accessibility table preset")
    p.add_argument("--fig2", action="store_true", help="rotation group ladder preset")
    p.add_argument("--lmax", type=int, default=30)
    p.add_argument("--plot", action="store_true", help="also write a PNG figure")

    p = sub.add_parser("sequence", help="synthesise a pulse sequence")
    _common(p)
    p.add_argument("--group", help="catalogue name, required (flag or config)")
    _add_group_options(p)
    p.add_argument("--quotient-center", action=argparse.BooleanOptionalAction, default=True)
    p.add_argument("--kind", choices=["eulerian", "hamiltonian"], default="eulerian")
    p.add_argument("--tau", type=float, default=1.0)
    p.add_argument("--budget", type=int, default=10_000_000)
    p.add_argument("--name", default="sequence.json", help="output file name")

    p = sub.add_parser("simulate", help="average distance sweep")
    _common(p)
    p.add_argument("files", nargs="*", help="sequence JSON files")
    p.add_argument("--preset", choices=sorted(PRESETS))
    p.add_argument("--model", choices=MODELS)
    p.add_argument("--samples", type=int, default=100)
    p.add_argument("--n-sites", type=int, default=3)
    p.add_argument("--tau-delta", help="comma separated tau*Delta values")
    p.add_argument("--tau-gamma", help="comma separated tau*Gamma values")
    p.add_argument("--axes", help="lo,hi,points: log10 range sampled on both axes")
    p.add_argument("--no-nodd", action="store_true")
    p.add_argument("--workers", type=int, default=os.cpu_count() or 1)
    p.add_argument("--plot", action="store_true", help="also write a PNG figure")

    p = sub.add_parser("qecc", help="multiplicity scans and Knill-Laflamme checks")
    _common(p)
    p.add_argument("--group")
    _add_group_options(p, mode=False)
    p.add_argument("--preset", choices=sorted(QECC_PRESETS))
    p.add_argument("--spin", type=int)
    p.add_argument("--spin-scan")
    p.add_argument("--qutrits", type=int)
    p.add_argument("--qutrit-scan")
    p.add_argument("--character", default="trivial", help="index, name or 'trivial'")
    p.add_argument("--errors", default="spin-linear")
    p.add_argument("--mode", dest="kl_mode", choices=["detect", "correct"], default="correct")
    p.add_argument("--k", type=int, help="expected codespace dimension")
    p.add_argument("--plot", action="store_true")

    p = sub.add_parser("verify", help="run self-check suites")
    _common(p)
    p.add_argument("--suite", choices=["all", "lie", "groups", "sequences", "qecc"], default="all")
    return parser


def parse_args(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "config", None):
        cfg = load(args.config)
        if not isinstance(cfg, dict):
            raise InvalidInput("config file must hold a JSON object")
        cfg = {k.replace("-", "_"): v for k, v in cfg.items()}
        # config values become defaults, so explicit flags still win
        sub = parser._subparsers._group_actions[0].choices[args.command]
        top = {k: cfg.pop(k) for k in ("seed", "out") if k in cfg}
        cfg.pop("config", None)
        sub.set_defaults(**cfg)
        parser.set_defaults(**top)
        args = parser.parse_args(argv)
    if getattr(args, "seed", None) is None:
        env = os.environ.get("SUDEC_SEED")
        try:
            args.seed = int(env) if env else 0
        except ValueError as exc:
            raise InvalidInput(f"SUDEC_SEED must be an integer, got {env!r}") from exc
    if getattr(args, "out", None) is None:
        args.out = "."
    return args


# commands -----------------------------------------------------------------


def cmd_group(args, out):
    if not args.name:
        raise InvalidInput("--name is required")
    g, o = make_group(args.name, args.n, args.mode, args.orient, args.weyl, args.generators,
                      args.quotient_center)
    path = dump(group_to_json(g, o), out / "group.json")
    center = contains_center(g) if g.mode == "exact" and not g.so3 else False
    print(f"{g.name}: order {g.order}{'*' if center else ''}, mode {g.mode}")
    print(f"class sizes: {g.class_sizes()}")
    print(f"contains centre: {center}")
    return [path], {"order": g.order, "center": center}


def cmd_scan(args, out):
    outputs = []
    if args.table3:
        rows = table3_rows()
        flat = [{"group": r["group"], "order": r["order"], "center": r["center"],
                 **{lab: m for lab, m in r["multiplicity"].items()}} for r in rows]
        outputs.append(_write_rows(flat, out / "table3.csv"))
        for r in rows:
            marks = "".join("Y" if v else "." for v in r["inaccessible"].values())
            print(f"{r['group']:12s} {r['order']:5d}{'*' if r['center'] else ' '} {marks}")
    if args.fig2:
        rows = fig2_rows(args.lmax)
        outputs.append(_write_rows(rows, out / "fig2.csv"))
        for name in dict.fromkeys(r["group"] for r in rows):
            first = next((r["L"] for r in rows if r["group"] == name and r["L"] > 0
                          and r["multiplicity"] > 0), None)
            print(f"{name}: first accessible L > 0 is {first}")
        if args.plot:
            from .plots import plot_scan
            outputs.append(plot_scan(rows, out / "fig2.png"))
    if not (args.table3 or args.fig2):
        labels = [parse_label(t) for t in (args.labels or "").split(";") if t.strip()]
        names = [n for n in args.groups.split(",") if n.strip()]
        if not labels:
            raise InvalidInput("no labels given")
        if not names:
            raise InvalidInput("no groups given")
        from .groups import accessibility_scan
        groups = [make_group(n.strip())[0] for n in names]
        rows = accessibility_scan(groups, labels)
        flat = [{"group": r["group"], "order": r["order"], "center": r["center"],
                 **r["multiplicity"]} for r in rows]
        outputs.append(_write_rows(flat, out / "scan.csv"))
        for r in flat:
            print(", ".join(f"{k}={v}" for k, v in r.items()))
    return outputs, {}


def cmd_sequence(args, out):
    if not args.group:
        raise InvalidInput("--group is required")
    g, o = make_group(args.group, args.n, args.mode, args.orient, args.weyl, args.generators,
                      args.quotient_center)
    seq = synthesize(g, args.kind, args.seed, args.tau, args.budget, o)
    path = dump(sequence_to_json(seq), out / args.name)
    print(f"{g.name}: {args.kind} sequence with {len(seq)} pulses -> {path}")
    return [path], {"pulses": len(seq), "group_order": g.order}


def cmd_simulate(args, out):
    inputs = [Path(f) for f in args.files]
    sequences = {}
    model = args.model
    if args.preset:
        pmodel, seqs = preset(args.preset, args.seed)
        model = model or pmodel
        sequences.update(seqs)
    for f in inputs:
        label = f.stem if f.stem not in sequences else str(f)
        sequences[label] = sequence_from_json(load(f))
    if not sequences:
        raise InvalidInput("no sequences: give files or --preset")
    model = model or "su3-random"
    if args.axes or not (args.tau_delta or args.tau_gamma):
        lo, hi, pts = _floats(args.axes) if args.axes else (-3.0, -1.5, 6)
        grid = axis_grid(args.samples, args.seed, args.n_sites, lo, hi, int(pts))
    else:
        grid = SweepGrid(_floats(args.tau_delta or "0"), _floats(args.tau_gamma or "0"),
                         args.samples, args.seed, args.n_sites)
    t0 = time.time()
    rows = sweep(grid, sequences, model, include_nodd=not args.no_nodd, workers=args.workers)
    csv_path = write_csv(rows, out / "sweep.csv")
    outputs = [csv_path]
    if args.plot:
        from .plots import plot_sweep
        outputs.append(plot_sweep(rows, out / "sweep.png", args.preset))
    print(f"{len(rows)} rows, {len(sequences)} sequences, {grid.n_samples} samples, "
          f"{time.time() - t0:.1f} s -> {csv_path}")
    return outputs, {"model": model, "grid": grid.grid_points(), "inputs": [str(p) for p in inputs],
                     "sequence_labels": list(sequences)}


def _character_index(g, spec):
    chars = one_dim_characters(g)
    if spec in (None, "trivial"):
        return 0, chars
    if str(spec).isdigit():
        i = int(spec)
        if i >= len(chars):
            raise InvalidInput(f"{g.name} has {len(chars)} one-dimensional characters")
        return i, chars
    for i, c in enumerate(chars):
        if c.name == spec:
            return i, chars
    raise InvalidInput(f"unknown character {spec!r}")


def cmd_qecc(args, out):
    outputs = []
    if args.preset:
        family, names, values = QECC_PRESETS[args.preset]
        rows = []
        for name in names:
            orient = "teddy" if name == "D2teddy" else None
            g, _ = make_group("D2" if orient else name, orient=orient)
            for r in multiplicity_scan(g, family, list(values)):
                rows.append({"group": g.name, **r})
        outputs.append(_write_rows(rows, out / f"{args.preset}.csv"))
        if args.plot:
            from .plots import plot_scan
            trivial = [r for r in rows if r["character"] == 0]
            outputs.append(plot_scan(trivial, out / f"{args.preset}.png", x="value"))
        print(f"{len(rows)} rows -> {outputs[0]}")
        return outputs, {}
    if not args.group:
        raise InvalidInput("--group is required")
    g, _ = make_group(args.group, args.n, "exact", args.orient, args.weyl, args.generators)
    scan = args.spin_scan or args.qutrit_scan
    if scan:
        family = "spin" if args.spin_scan else "qudits"
        rows = [{"group": g.name, **r} for r in multiplicity_scan(g, family, _range(scan))]
        outputs.append(_write_rows(rows, out / "multiplicities.csv"))
        for v in dict.fromkeys(r["value"] for r in rows):
            ms = [r["multiplicity"] for r in rows if r["value"] == v]
            print(f"{'j' if family == 'spin' else 'N'}={v}: {ms}")
        if args.plot:
            from .plots import plot_scan
            outputs.append(plot_scan(rows, out / "multiplicities.png", x="value",
                                     series="character"))
        return outputs, {}
    if args.spin is not None:
        ambient = AmbientSpace.spin(args.spin)
    elif args.qutrits is not None:
        ambient = AmbientSpace.symmetric(args.qutrits, 3)
    else:
        raise InvalidInput("give --spin, --qutrits or a scan range")
    ci, chars = _character_index(g, args.character)
    code = build_code(g, chars[ci], ambient, args.k)
    report = kl_check(code, error_set(args.errors, ambient), args.kl_mode, ci)
    data = report.to_json()
    data["codewords"] = [[[float(z.real), float(z.imag)] for z in col] for col in code.codewords.T]
    outputs.append(dump(data, out / "kl_report.json"))
    print(f"{g.name} on {ambient.kind} dim {ambient.dim}: k={code.k}, {args.errors} "
          f"{args.kl_mode}: {'pass' if report.passed else 'FAIL'} "
          f"(offdiag {report.max_offdiag:.1e}, spread {report.max_diag_spread:.1e})")
    return outputs, {"k": code.k, "pass": report.passed}


def cmd_verify(args, out):
    from .verify import run_suites
    results = run_suites(args.suite)
    rows = [{"suite": s, "check": n, "pass": ok, "detail": d} for s, n, ok, d in results]
    path = _write_rows(rows, out / "verify.csv")
    for s, n, ok, d in results:
        print(f"[{'PASS' if ok else 'FAIL'}] {s}: {n}" + (f"  ({d})" if d else ""))
    failed = sum(not r[2] for r in results)
    print(f"{len(results) - failed}/{len(results)} checks passed")
    return [path], {"failed": failed}


COMMANDS = {"group": cmd_group, "scan": cmd_scan, "sequence": cmd_sequence,
            "simulate": cmd_simulate, "qecc": cmd_qecc, "verify": cmd_verify}


def main(argv=None):
    try:
        args = parse_args(argv)
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        outputs, extra = COMMANDS[args.command](args, out)
        config = {k: v for k, v in vars(args).items()}
        inputs = [Path(f) for f in getattr(args, "files", [])]
        if getattr(args, "config", None):
            inputs.append(Path(args.config))
        write_manifest(out / "manifest.json", inputs, outputs,
                       {"command": args.command, "config": config, "version": __version__,
                        "timestamp": time.strftime("%Y-%m-%dT%H:%M:%S"), **extra})
    except SudecError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code
    if args.command == "verify" and extra.get("failed"):
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
