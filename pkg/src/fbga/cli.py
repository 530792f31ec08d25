"""Command-line front end.

::

    fbga plan    --path track.csv --env env.json --v-ini 0 [--out res.csv] [--json run.json] [--dt 0.1]
    fbga compare --path track.csv --env env.json --v-ini 0 [--v-levels 2000] [--threshold 0.01]
    fbga sweep   --path track.csv --env env.json --v-ini 0 --meshes 100,200,500 [--shuffle]

Without ``--path`` a random track is generated from ``--seed``.

Exit codes: 0 success, 1 input error, 2 plan finished with an
infeasibility warning, 3 oracle infeasible or gap above the threshold.
"""

from __future__ import annotations

import argparse
import os
import random
import shlex
import sys
import time
from concurrent.futures import ProcessPoolExecutor

import numpy as np

from .envelope import EnvelopeError, load_envelope
from .io import RunReport, file_digest, write_report, write_result_csv
from .oracle import OracleConfig, oracle_plan
from .path import Path, PathError, load_path, random_track, resample, synth_track
from .planner import BoundaryConditions, plan, time_parameterize

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_INFEASIBLE = 2
EXIT_ORACLE = 3


class InputError(Exception):
    pass


def _timed_plan(path, env, v_ini, repeat=1):
    # minimum wall-clock over `repeat` runs, planner call only
    best = None
    res = None
    for _ in range(max(repeat, 1)):
        t0 = time.perf_counter()
        res = plan(path, env, BoundaryConditions(v_ini))
        dt = (time.perf_counter() - t0) * 1e3
        best = dt if best is None else min(best, dt)
    return res, best


def _load_inputs(args) -> tuple[Path, object, dict]:
    digests = {}
    try:
        env = load_envelope(args.env)
    except FileNotFoundError:
        raise InputError(f"--env: file not found: {args.env}") from None
    except EnvelopeError as exc:
        raise InputError(f"--env: {exc}") from None
    digests[args.env] = file_digest(args.env)
    if args.path is not None:
        try:
            path = load_path(args.path)
        except FileNotFoundError:
            raise InputError(f"--path: file not found: {args.path}") from None
        except PathError as exc:
            raise InputError(f"--path: {exc}") from None
        digests[args.path] = file_digest(args.path)
    else:
        rng = np.random.default_rng(args.seed)
        pieces = random_track(rng, args.corners, args.length)
        path = synth_track(pieces, step=args.step)
        digests["synthetic"] = f"seed={args.seed},corners={args.corners},length={args.length},step={args.step}"
    if not args.v_ini >= 0:
        raise InputError(f"--v-ini must be >= 0, got {args.v_ini}")
    return path, env, digests


def cmd_plan(args) -> int:
    path, env, digests = _load_inputs(args)
    res, cpu_ms = _timed_plan(path, env, args.v_ini, args.repeat)
    print(f"T={res.T:.3f}s")
    print(f"cpu_ms={cpu_ms:.3f} N={path.n}")
    for w in res.warnings:
        print(f"warning: {w}", file=sys.stderr)
    if args.out:
        write_result_csv(args.out, path.s, res.v_x, res.a_x, res.a_y)
    extra = {"infeasible": res.infeasible}
    if res.required_v_ini is not None:
        extra["required_v_ini"] = res.required_v_ini
    if args.dt is not None:
        traj = time_parameterize(res, path, args.dt)
        extra["samples"] = int(traj.t.size)
        if args.out:
            base, ext = os.path.splitext(args.out)
            with open(f"{base}_t{ext or '.csv'}", "w") as f:
                f.write("t,s,v_x,a_x,a_y\n")
                for row in zip(*(x.tolist() for x in (traj.t, traj.s, traj.v_x, traj.a_x, traj.a_y))):
                    f.write(",".join(repr(x) for x in row) + "\n")
    if args.json:
        write_report(args.json, RunReport(args.command_line, digests, res.T, path.n,
                                          cpu_ms, list(res.warnings), extra))
    return EXIT_INFEASIBLE if res.infeasible else EXIT_OK


def cmd_compare(args) -> int:
    path, env, digests = _load_inputs(args)
    res, cpu_ms = _timed_plan(path, env, args.v_ini, args.repeat)
    t0 = time.perf_counter()
    orc = oracle_plan(path, env, args.v_ini, OracleConfig(v_levels=args.v_levels))
    oracle_ms = (time.perf_counter() - t0) * 1e3
    gap = abs(res.T - orc.T) / orc.T if orc.feasible else float("inf")
    print(f"T_fbga={res.T:.6f}s T_oracle={orc.T:.6f}s gap={gap * 100:.4f}%")
    print(f"cpu_ms_fbga={cpu_ms:.3f} cpu_ms_oracle={oracle_ms:.3f} N={path.n}")
    for w in res.warnings:
        print(f"warning (fbga): {w}", file=sys.stderr)
    for w in orc.warnings:
        print(f"warning (oracle): {w}", file=sys.stderr)
    if args.out:
        write_result_csv(args.out, path.s, res.v_x, res.a_x, res.a_y)
    if args.oracle_out:
        write_result_csv(args.oracle_out, path.s, orc.v_x, orc.a_x, orc.a_y)
    if args.json:
        extra = {"T_oracle": orc.T, "cpu_ms_oracle": oracle_ms, "gap": gap,
                 "oracle_feasible": orc.feasible, "oracle_warnings": list(orc.warnings)}
        write_report(args.json, RunReport(args.command_line, digests, res.T, path.n,
                                          cpu_ms, list(res.warnings), extra))
    if not orc.feasible:
        print("oracle found no feasible profile", file=sys.stderr)
        return EXIT_ORACLE
    if gap > args.threshold:
        print(f"gap {gap:.3g} above threshold {args.threshold:g}", file=sys.stderr)
        return EXIT_ORACLE
    return EXIT_OK


def _sweep_point(job):
    path, env, v_ini, n_seg, repeat = job
    res, cpu_ms = _timed_plan(resample(path, n_seg + 1), env, v_ini, repeat)
    return n_seg, res.T, cpu_ms


def _parse_meshes(text: str) -> list[int]:
    try:
        meshes = [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise InputError(f"--meshes: expected comma-separated integers, got {text!r}") from None
    if not meshes or min(meshes) < 1:
        raise InputError("--meshes: need at least one segment count >= 1")
    return meshes


def cmd_sweep(args) -> int:
    path, env, _ = _load_inputs(args)
    meshes = _parse_meshes(args.meshes)
    order = list(meshes)
    if args.shuffle:
        random.Random(args.seed).shuffle(order)
    jobs = [(path, env, args.v_ini, m, args.repeat) for m in order]
    threads = int(os.environ.get("FBGA_THREADS", "1") or 1)
    if threads > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=threads) as ex:
            rows = list(ex.map(_sweep_point, jobs))
    else:
        rows = [_sweep_point(j) for j in jobs]
    rows.sort(key=lambda r: r[0])
    out = open(args.out, "w") if args.out else sys.stdout
    try:
        out.write("n_segments,T,cpu_ms\n")
        for n_seg, T, ms in rows:
            out.write(f"{n_seg},{T!r},{ms:.4f}\n")
    finally:
        if out is not sys.stdout:
            out.close()
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="fbga", description="Time-optimal speed profiles under g-g-v envelopes.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--path", help="s,kappa CSV; omit to generate a random track")
        sp.add_argument("--env", required=True, help="envelope JSON")
        sp.add_argument("--v-ini", type=float, default=0.0, help="initial speed (m/s)")
        sp.add_argument("--seed", type=int, default=0, help="seed of the track generator and of --shuffle")
        sp.add_argument("--corners", type=int, default=6, help="corners of the generated track")
        sp.add_argument("--length", type=float, default=2000.0, help="length of the generated track (m)")
        sp.add_argument("--step", type=float, default=1.0, help="mesh step of the generated track (m)")
        sp.add_argument("--repeat", type=int, default=1, help="report the minimum cpu time of k runs")
        sp.add_argument("--out", help="result CSV")

    sp = sub.add_parser("plan", help="plan one profile")
    common(sp)
    sp.add_argument("--json", help="run summary JSON")
    sp.add_argument("--dt", type=float, help="also write a time-sampled trajectory with this step")
    sp.set_defaults(func=cmd_plan)

    sp = sub.add_parser("compare", help="plan and cross-check against the DP oracle")
    common(sp)
    sp.add_argument("--json", help="run summary JSON")
    sp.add_argument("--v-levels", type=int, default=2000)
    sp.add_argument("--threshold", type=float, default=0.01, help="max relative gap (fraction)")
    sp.add_argument("--oracle-out", help="oracle result CSV")
    sp.set_defaults(func=cmd_compare)

    sp = sub.add_parser("sweep", help="maneuver time and cpu time against mesh size")
    common(sp)
    sp.add_argument("--meshes", required=True, help="comma-separated segment counts")
    sp.add_argument("--shuffle", action="store_true", help="run mesh sizes in random order")
    sp.set_defaults(func=cmd_sweep)
    return p


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    parser = build_parser()
    args = parser.parse_args(argv)
    args.command_line = "fbga " + shlex.join(argv)
    try:
        if args.repeat < 1:
            raise InputError(f"--repeat must be >= 1, got {args.repeat}")
        if getattr(args, "dt", None) is not None and not args.dt > 0:
            raise InputError(f"--dt must be > 0, got {args.dt}")
        if getattr(args, "v_levels", 100) < 100:
            raise InputError(f"--v-levels must be >= 100, got {args.v_levels}")
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
