"""Command line entry point: ``dqc1ent <subcommand> ...``.

Exit codes: 0 success, 2 usage error, 3 numeric-validation failure.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

import numpy as np

from . import report
from .bipartite import Bipartition, boundary_orbit_demo
from .circuits import circuit_qubits, circuit_unitary, cdqc1_unitary, haar_random_unitary, load_circuit, normalized_trace_estimate
from .discord import is_zero_discord
from .errors import NumericValidationError, UsageError
from .search import search_entangling_unitary_for_state
from .spectrum import dqc1_all_cuts_bounds, dqc1_alpha_threshold
from .states import depolarize, dqc1_state, tau_state

log = logging.getLogger("dqc1ent")


def _floats(text: str) -> list[float]:
    return [float(t) for t in text.split(",") if t.strip()]


def _ints(text: str) -> list[int]:
    out = []
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        if ".." in part:
            lo, hi = part.split("..")
            out.extend(range(int(lo), int(hi) + 1))
        else:
            out.append(int(part))
    return out


def _emit(rows: list[dict], fmt: str, output: str | None) -> None:
    if fmt == "json":
        text = json.dumps(rows, indent=1) + "\n"
    else:
        import csv
        import io

        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=list(rows[0]) if rows else [], lineterminator="\n")
        w.writeheader()
        w.writerows(rows)
        text = buf.getvalue()
    if output:
        Path(output).write_text(text)
    else:
        sys.stdout.write(text)


def _save_matrix(u: np.ndarray, path: str | None) -> None:
    if path:
        Path(path).write_text(json.dumps({"real": u.real.tolist(), "imag": u.imag.tolist()}))


def cmd_thresholds(args) -> int:
    if args.n_min > args.n_max or args.n_min < 1:
        raise UsageError("empty or invalid n range")
    rows = []
    for n in range(args.n_min, args.n_max + 1):
        for k in range(1, (n + 1) // 2 + 1):
            exact = 2 * k < n + 1  # closed form is exact only for the strictly smaller party
            rows.append({"n": n, "k": k, "kind": "cut" if exact else "cut-upper-bound", "alpha": dqc1_alpha_threshold(k)})
        if n >= 2:
            nec, suf = dqc1_all_cuts_bounds(n)
            rows.append({"n": n, "k": "", "kind": "all-cuts-necessary", "alpha": nec})
            rows.append({"n": n, "k": "", "kind": "all-cuts-sufficient", "alpha": suf})
    _emit(rows, args.format, args.output)
    return 0


def cmd_scan(args) -> int:
    overrides = dict(
        n_range=_ints(args.n) if args.n else None,
        alpha_grid=_floats(args.alpha) if args.alpha else None,
        cut_sizes=_ints(args.cut_sizes) if args.cut_sizes else None,
        seeds=_ints(args.seed) if args.seed else None,
        criteria=args.criteria.split(",") if args.criteria else None,
        output_path=args.output,
        format=args.format,
        circuit=args.circuit,
        all_cuts=args.all_cuts or None,
        cdqc1=args.cdqc1 or None,
        haar_v=args.haar_v or None,
        workers=args.workers,
    )
    if args.config:
        config = report.SweepConfig.from_file(args.config, **overrides)
    else:
        if overrides["n_range"] is None or overrides["alpha_grid"] is None:
            raise UsageError("scan needs --n and --alpha (or --config)")
        config = report.SweepConfig(**{k: v for k, v in overrides.items() if v is not None})
    records = report.run_scan(config)
    text = report.write_records(records, config.format, config.output_path)
    if not config.output_path:
        sys.stdout.write(text)
    return 0


def _v_unitary(args) -> np.ndarray:
    if args.haar_v is not None:
        if args.n is None:
            raise UsageError("--haar-v needs --n")
        return haar_random_unitary(args.n, args.haar_v)
    if args.circuit is None:
        if args.n is None:
            raise UsageError("need --circuit or --n")
        return np.eye(2**args.n, dtype=complex)
    gates = load_circuit(args.circuit)
    n = args.n if args.n is not None else max(circuit_qubits(gates), 1)
    return circuit_unitary(gates, n)


def cmd_trace(args) -> int:
    if args.shots < 1:
        raise UsageError("shots must be >= 1")
    v = _v_unitary(args)
    exact = complex(np.trace(v)) / v.shape[0]
    est = normalized_trace_estimate(v, args.alpha, args.shots, args.seed)
    row = {
        "exact_re": exact.real,
        "exact_im": exact.imag,
        "estimate_re": est.value.real,
        "estimate_im": est.value.imag,
        "stderr_re": est.stderr_re,
        "stderr_im": est.stderr_im,
        "shots": est.shots,
        "alpha": args.alpha,
        "seed": args.seed,
    }
    _emit([row], args.format, args.output)
    return 0


def cmd_demo_lemma1(args) -> int:
    bp = Bipartition.parse(args.bipartition, args.n + 1) if args.bipartition else Bipartition(args.n + 1, (0,))
    cert = boundary_orbit_demo(args.n, bp, args.epsilon)
    _save_matrix(cert.unitary, args.matrix_out)
    row = {
        "n": args.n,
        "bipartition": bp.label(),
        "epsilon": args.epsilon,
        "theta": cert.theta,
        "distance_trace_norm": cert.distance,
        "negativity": cert.negativity,
        "pair": f"{cert.pair[0]},{cert.pair[1]}",
    }
    _emit([row], args.format, args.output)
    return 0


def _guarantee_note(n: int, alpha: float, bp: Bipartition) -> str:
    k = bp.cut_size
    total = n + 1
    if 2 * k < total and alpha >= dqc1_alpha_threshold(k):
        return "criterion guarantees PPT"
    if 2 * k == total and n >= 2 and alpha >= dqc1_all_cuts_bounds(n)[1]:
        return "criterion guarantees PPT"
    return ""


def cmd_search(args) -> int:
    total = args.n + 1
    bp = Bipartition.parse(args.cut, total) if args.cut else Bipartition(total, (0,))
    if args.state == "tau":
        rho = tau_state(args.n)
        note = ""
    else:
        rho = dqc1_state(args.n, args.alpha)
        note = _guarantee_note(args.n, args.alpha, bp)
    res = search_entangling_unitary_for_state(rho, bp, args.budget, args.seed)
    _save_matrix(res.unitary, args.matrix_out)
    row = {
        "state": args.state,
        "n": args.n,
        "alpha": args.alpha if args.state == "dqc1" else "",
        "bipartition": bp.label(),
        "negativity": res.negativity,
        "min_pt_eigenvalue": res.min_eigenvalue,
        "evaluations": res.evaluations,
        "seed": args.seed,
        "note": note,
    }
    _emit([row], args.format, args.output)
    return 0


def cmd_discord_check(args) -> int:
    v = _v_unitary(args)
    n = int(np.log2(v.shape[0]))
    total = n + 1
    measured = Bipartition.parse(args.measured, total)
    u = cdqc1_unitary(v)
    rho0 = u @ dqc1_state(n, 0.0) @ u.conj().T
    rows = []
    for a in _floats(args.alpha):
        r = is_zero_discord(depolarize(rho0, a), measured)
        rows.append({"n": n, "alpha": a, "measured": ",".join(map(str, measured.party_a)), "zero_discord": r.zero_discord, "residual": r.residual})
    constant = len({row["zero_discord"] for row in rows}) <= 1
    for row in rows:
        row["verdict_constant_in_alpha"] = constant
    _emit(rows, args.format, args.output)
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="dqc1ent", description="Entanglement and discord checks for one-clean-qubit circuits.")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--format", choices=["csv", "json"], default="csv")
        sp.add_argument("--output", default=None)

    sp = sub.add_parser("thresholds", help="analytic noise thresholds per cut size")
    sp.add_argument("--n-min", type=int, default=2)
    sp.add_argument("--n-max", type=int, default=6)
    common(sp)
    sp.set_defaults(func=cmd_thresholds)

    sp = sub.add_parser("scan", help="evaluate criteria over an (n, alpha, bipartition) grid")
    sp.add_argument("--config", help="YAML/JSON file with SweepConfig fields")
    sp.add_argument("--n", help="e.g. 2,3 or 2..5")
    sp.add_argument("--alpha", help="comma separated alpha grid")
    sp.add_argument("--cut-sizes")
    sp.add_argument("--seed", help="root seed(s), comma separated")
    sp.add_argument("--criteria", help=",".join(report.CRITERIA))
    sp.add_argument("--circuit", help="circuit file (whole register, or V with --cdqc1)")
    sp.add_argument("--cdqc1", action="store_true", help="wrap the circuit as controlled-V after H on qubit 0")
    sp.add_argument("--haar-v", action="store_true", help="cDQC1 with a Haar-random V drawn from the seed")
    sp.add_argument("--all-cuts", action="store_true", help=f"every canonical bipartition (n <= {report.ALL_CUTS_MAX_N})")
    sp.add_argument("--workers", type=int, default=1)
    common(sp)
    # None lets a config file's format stand unless overridden
    sp.set_defaults(func=cmd_scan, format=None)

    sp = sub.add_parser("trace", help="estimate tr(V)/2^n with a simulated DQC1 run")
    sp.add_argument("--circuit")
    sp.add_argument("--n", type=int)
    sp.add_argument("--haar-v", type=int, default=None, metavar="SEED")
    sp.add_argument("--alpha", type=float, default=0.0)
    sp.add_argument("--shots", type=int, default=10_000)
    sp.add_argument("--seed", type=int, default=0)
    common(sp)
    sp.set_defaults(func=cmd_trace)

    sp = sub.add_parser("demo-lemma1", help="near-identity unitary that entangles the clean input state")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--epsilon", type=float, required=True)
    sp.add_argument("--bipartition", help="party A qubits, e.g. 0,2")
    sp.add_argument("--matrix-out")
    common(sp)
    sp.set_defaults(func=cmd_demo_lemma1)

    sp = sub.add_parser("search", help="randomized search for an entangling unitary")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--alpha", type=float, default=0.0)
    sp.add_argument("--cut", help="party A qubits, e.g. 0")
    sp.add_argument("--state", choices=["dqc1", "tau"], default="dqc1")
    sp.add_argument("--budget", type=int, default=2000)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--matrix-out")
    common(sp)
    sp.set_defaults(func=cmd_search)

    sp = sub.add_parser("discord-check", help="zero-discord verdicts of a cDQC1 output across alpha")
    sp.add_argument("--circuit", help="circuit file for V")
    sp.add_argument("--n", type=int)
    sp.add_argument("--haar-v", type=int, default=None, metavar="SEED")
    sp.add_argument("--alpha", default="0,0.3,0.9")
    sp.add_argument("--measured", default="0", help="measured qubits, e.g. 0 or 1,2")
    common(sp)
    sp.set_defaults(func=cmd_discord_check)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except NumericValidationError as e:
        print(f"error: {e}", file=sys.stderr)
        return 3
    except (UsageError, FileNotFoundError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
