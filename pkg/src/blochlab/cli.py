"""Command-line front end: potential file I/O and one subcommand per
analysis.

Exit codes: 0 success or positive verdict, 1 negative verdict or failed
check, 2 usage or file error, 3 numerical failure. Every run ends with a
single ``report:`` line holding a JSON run report (command, input digest,
seed, results payload, wall time); for fixed inputs and seed everything in
it except the wall time is reproducible.
"""

from __future__ import annotations

import argparse
import hashlib
import itertools
import json
import math
import sys
import time
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .bands import compute_bands, find_gaps, spectrum_union
from .errors import (
    BlochLabError,
    ConfigMismatchError,
    NonRealPotentialError,
    PotentialFileError,
    SolveBudgetError,
)
from .inverse import construct_exotic_1d, lift_separable
from .lattice import LatticeConfig
from .potential import Potential
from .suites import SUITES, run_suite
from .variety import IDENTITY_TOLERANCE, entire_graph_test, floquet_isospectral


def load_potential_file(path: str | Path) -> Potential:
    """Read a JSON potential file: {"periods": [...], "values": [...]},
    values in cell order as [re, im] pairs (bare numbers allowed when
    real)."""
    p = Path(path)
    try:
        doc = json.loads(p.read_text())
    except FileNotFoundError as exc:
        raise PotentialFileError(f"no such file: {p}") from exc
    except json.JSONDecodeError as exc:
        raise PotentialFileError(f"{p}: not valid JSON ({exc})") from exc
    if not isinstance(doc, dict) or "periods" not in doc or "values" not in doc:
        raise PotentialFileError(f"{p}: expected an object with 'periods' and 'values'")
    periods = doc["periods"]
    if (
        not isinstance(periods, list)
        or not periods
        or not all(isinstance(q, int) and q >= 1 for q in periods)
    ):
        raise PotentialFileError(f"{p}: 'periods' must be a list of positive integers")
    raw = doc["values"]
    cell = int(np.prod(periods))
    if not isinstance(raw, list) or len(raw) != cell:
        raise PotentialFileError(
            f"{p}: 'values' must list exactly {cell} entries for periods {periods}"
        )
    vals = np.empty(cell, dtype=np.complex128)
    for i, entry in enumerate(raw):
        if isinstance(entry, (int, float)):
            re, im = float(entry), 0.0
        elif (
            isinstance(entry, list)
            and len(entry) == 2
            and all(isinstance(c, (int, float)) for c in entry)
        ):
            re, im = float(entry[0]), float(entry[1])
        else:
            raise PotentialFileError(
                f"{p}: values[{i}] must be a number or an [re, im] pair"
            )
        if not (math.isfinite(re) and math.isfinite(im)):
            raise PotentialFileError(f"{p}: values[{i}] is not finite")
        vals[i] = complex(re, im)
    return Potential(LatticeConfig(tuple(periods)), vals)


def save_potential_file(path: str | Path, pot: Potential) -> None:
    """Write the canonical form: [re, im] pairs in cell order."""
    doc = {
        "periods": list(pot.cfg.periods),
        "values": [[float(v.real), float(v.imag)] for v in pot.values],
    }
    Path(path).write_text(json.dumps(doc, indent=1) + "\n")


@dataclass(frozen=True)
class RunReport:
    command: str
    digest: str
    seed: int
    results: dict
    wall_time_s: float

    def as_dict(self) -> dict:
        return {
            "command": self.command,
            "digest": self.digest,
            "seed": self.seed,
            "results": self.results,
            "wall_time_s": self.wall_time_s,
        }


def _digest(command: str, params: dict, files: tuple[str | Path, ...] = ()) -> str:
    file_hashes = [hashlib.sha256(Path(f).read_bytes()).hexdigest() for f in files]
    blob = json.dumps(
        {"command": command, "params": params, "files": file_hashes}, sort_keys=True
    )
    return hashlib.sha256(blob.encode()).hexdigest()[:16]


def _emit_report(command: str, digest: str, seed: int, results: dict, t0: float) -> None:
    rep = RunReport(command, digest, seed, results, round(time.perf_counter() - t0, 6))
    print("report: " + json.dumps(rep.as_dict(), sort_keys=True))


def _fmt_interval(lo: float, hi: float) -> str:
    return f"[{lo:g}, {hi:g}]"


def cmd_bands(args: argparse.Namespace) -> int:
    t0 = time.perf_counter()
    pot = load_potential_file(args.file)
    if not pot.is_real:
        raise NonRealPotentialError(
            "band structure needs a real potential; this file has nonzero imaginary parts"
        )
    resolution = None
    if args.resolution:
        resolution = (
            args.resolution[0] if len(args.resolution) == 1 else tuple(args.resolution)
        )
    bs = compute_bands(pot, resolution)
    d, nbands = pot.cfg.dim, bs.n_bands
    header = ",".join([f"k{j+1}" for j in range(d)] + [f"lam{m+1}" for m in range(nbands)])
    lines = [header]
    for row in bs.rows():
        lines.append(",".join(f"{v:.17g}" for v in row))
    csv_text = "\n".join(lines) + "\n"
    if args.out:
        Path(args.out).write_text(csv_text)
        print(f"wrote {args.out} ({len(lines) - 1} rows)")
    else:
        sys.stdout.write(csv_text)
    intervals = spectrum_union(bs)
    gaps = find_gaps(bs)
    print("spectrum: " + " u ".join(_fmt_interval(a, b) for a, b in intervals))
    if gaps:
        for g in gaps:
            print(f"gap ({g.lower:g}, {g.upper:g}), width {g.width:.3f}")
    else:
        print("no gaps")
    results = {
        "resolution": list(bs.resolution),
        "rows": len(lines) - 1,
        "intervals": [[a, b] for a, b in intervals],
        "gaps": [[g.lower, g.upper] for g in gaps],
    }
    digest = _digest("bands", {"resolution": results["resolution"]}, (args.file,))
    _emit_report("bands", digest, args.seed, results, t0)
    return 0


def cmd_entire_graph(args: argparse.Namespace) -> int:
    t0 = time.perf_counter()
    pot = load_potential_file(args.file)
    cert = entire_graph_test(pot, tolerance=args.tolerance, seed=args.seed)
    rec = cert.to_record()
    print(f"holds: {'true' if cert.holds else 'false'}")
    if cert.holds:
        print(f"l: {rec['l']}")
        print(f"K: {rec['K'][0]:g}{rec['K'][1]:+g}i")
    print(f"residual: {cert.residual:.3e}")
    digest = _digest("entire-graph", {"tolerance": args.tolerance}, (args.file,))
    _emit_report("entire-graph", digest, args.seed, rec, t0)
    return 0 if cert.holds else 1


def cmd_isospectral(args: argparse.Namespace) -> int:
    t0 = time.perf_counter()
    pot_a = load_potential_file(args.file_a)
    pot_b = load_potential_file(args.file_b)
    if pot_a.cfg != pot_b.cfg:
        raise ConfigMismatchError(
            f"period mismatch: {pot_a.cfg.periods} vs {pot_b.cfg.periods}"
        )
    same, residual = floquet_isospectral(
        pot_a, pot_b, tolerance=args.tolerance, seed=args.seed
    )
    print(f"isospectral: {'true' if same else 'false'}")
    print(f"residual: {residual:.3e}")
    digest = _digest(
        "isospectral", {"tolerance": args.tolerance}, (args.file_a, args.file_b)
    )
    _emit_report(
        "isospectral", digest, args.seed,
        {"isospectral": same, "residual": residual}, t0,
    )
    return 0 if same else 1


def cmd_construct_exotic(args: argparse.Namespace) -> int:
    t0 = time.perf_counter()
    periods = tuple(args.periods)
    offsets = tuple(args.l) if args.l else (0,) * len(periods)
    if len(offsets) != len(periods):
        raise ValueError(
            f"--l needs {len(periods)} entries for periods {list(periods)}, got {len(offsets)}"
        )
    for lj, qj in zip(offsets, periods):
        if not 0 <= lj < qj:
            raise ValueError(f"offset {lj} outside [0, {qj})")
    outdir = Path(args.out) if args.out else Path(".")
    outdir.mkdir(parents=True, exist_ok=True)

    if len(periods) == 1:
        fam = construct_exotic_1d(periods[0], offsets[0], seed=args.seed)
        candidates = [(pot, offsets) for pot in fam.solutions]
    else:
        axis_fams = [
            construct_exotic_1d(qj, lj, seed=args.seed + 7 * j)
            for j, (qj, lj) in enumerate(zip(periods, offsets))
        ]
        cfg = LatticeConfig(periods)
        candidates = []
        for combo in itertools.product(*(range(f.count) for f in axis_fams)):
            pot, l_used = lift_separable(
                [(f, i) for f, i in zip(axis_fams, combo)], cfg
            )
            candidates.append((pot, l_used))

    written = []
    residuals = []
    tag_q = "x".join(str(q) for q in periods)
    tag_l = "-".join(str(l) for l in offsets)
    for i, (pot, _) in enumerate(candidates):
        cert = entire_graph_test(pot, tolerance=args.tolerance, seed=args.seed)
        if not cert.holds:
            print(f"candidate {i}: re-verification failed, skipped")
            continue
        path = outdir / f"exotic_q{tag_q}_l{tag_l}_{i}.json"
        save_potential_file(path, pot)
        residuals.append(cert.residual)
        written.append(str(path))
        print(f"wrote {path} (residual {cert.residual:.3e})")
    if not written:
        raise SolveBudgetError("no candidate survived re-verification")
    print(f"{len(written)} verified potential(s)")
    results = {"files": written, "count": len(written), "residuals": residuals}
    digest = _digest(
        "construct-exotic",
        {"periods": list(periods), "l": list(offsets), "tolerance": args.tolerance},
    )
    _emit_report("construct-exotic", digest, args.seed, results, t0)
    return 0


def cmd_verify(args: argparse.Namespace) -> int:
    t0 = time.perf_counter()
    checks = run_suite(args.suite, seed=args.seed)
    all_pass = True
    payload = []
    for c in checks:
        status = "PASS" if c.passed else "FAIL"
        extra = f" ({c.detail})" if c.detail else ""
        print(f"{c.name}: {status} residual={c.residual:.3e}{extra}")
        payload.append(
            {"name": c.name, "passed": c.passed, "residual": c.residual, "detail": c.detail}
        )
        all_pass = all_pass and c.passed
    digest = _digest("verify", {"suite": args.suite})
    _emit_report("verify", digest, args.seed, {"suite": args.suite, "checks": payload}, t0)
    return 0 if all_pass else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="blochlab",
        description="Spectra, gaps, entire-graph certificates, and exotic "
        "potentials for discrete periodic Schrodinger operators.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--seed", type=int, default=0, help="seed for randomized steps")
        p.add_argument(
            "--tolerance",
            type=float,
            default=IDENTITY_TOLERANCE,
            help="relative tolerance for polynomial identity checks",
        )

    p_bands = sub.add_parser("bands", help="band structure, spectrum, and gaps")
    p_bands.add_argument("file", help="potential file (JSON)")
    p_bands.add_argument(
        "--resolution", type=int, nargs="+", help="grid points per axis"
    )
    p_bands.add_argument("--out", help="CSV output path (default: stdout)")
    p_bands.add_argument("--seed", type=int, default=0, help="seed (unused, accepted)")
    p_bands.set_defaults(handler=cmd_bands)

    p_graph = sub.add_parser(
        "entire-graph", help="test whether the Bloch variety carries an entire graph"
    )
    p_graph.add_argument("file", help="potential file (JSON)")
    common(p_graph)
    p_graph.set_defaults(handler=cmd_entire_graph)

    p_iso = sub.add_parser("isospectral", help="Floquet isospectrality of two files")
    p_iso.add_argument("file_a")
    p_iso.add_argument("file_b")
    common(p_iso)
    p_iso.set_defaults(handler=cmd_isospectral)

    p_exotic = sub.add_parser(
        "construct-exotic", help="build and write verified entire-graph potentials"
    )
    p_exotic.add_argument(
        "--periods", type=int, nargs="+", required=True, help="cell periods q1 .. qd"
    )
    p_exotic.add_argument(
        "--l", type=int, nargs="+", help="offset per axis (default all zero)"
    )
    p_exotic.add_argument("--out", help="output directory (default: current)")
    common(p_exotic)
    p_exotic.set_defaults(handler=cmd_construct_exotic)

    p_verify = sub.add_parser("verify", help="run a named invariant suite")
    p_verify.add_argument("--suite", required=True, choices=sorted(SUITES))
    p_verify.add_argument("--seed", type=int, default=0)
    p_verify.set_defaults(handler=cmd_verify)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.handler(args)
    except (
        PotentialFileError,
        ConfigMismatchError,
        NonRealPotentialError,
        ValueError,
    ) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (BlochLabError, np.linalg.LinAlgError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 3


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
