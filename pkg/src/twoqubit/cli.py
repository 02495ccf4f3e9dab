"""Command-line interface: ``twoqubit {analyze,gen,verify,curve,oracle}``."""

import argparse
import csv
import io
import json
import sys

import numpy as np

from . import _kernels
from . import measures as ms
from .errors import RankTooHigh, TwoQubitError
from .oracle import minimize_ef
from .states import (
    BellKind,
    DensityMatrix,
    PureState,
    as_density,
    bell_mixture,
    bell_state,
    departure_diag,
    departure_orth,
    eigen_rank2,
    magic_basis_state,
    parse_state,
    product_chi,
    random_pure,
    random_rank2,
    to_density,
    werner,
    write_state,
)
from .verify import VerifyConfig, run_all


def _g17(x: float) -> str:
    return format(float(x), ".17g")


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _write(path, text: str):
    if path in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)


def _pair(text: str):
    parts = [p.strip() for p in text.split(",")]
    if len(parts) != 2:
        raise argparse.ArgumentTypeError(f"--pair needs two comma-separated Bell states, got {text!r}")
    try:
        return BellKind.parse(parts[0]), BellKind.parse(parts[1])
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _unit(text: str) -> float:
    x = float(text)
    if not 0.0 <= x <= 1.0:
        raise argparse.ArgumentTypeError(f"value must lie in [0, 1], got {text}")
    return x


def _complex_triple(text: str):
    try:
        vals = [complex(p.strip().replace(" ", "")) for p in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"--x needs three complex numbers like '0.6,0.8j,0', got {text!r}")
    if len(vals) != 3:
        raise argparse.ArgumentTypeError("--x needs exactly three values x1,x2,x4")
    return tuple(vals)


def _require(args, parser, *names):
    missing = [n for n in names if getattr(args, n.replace("-", "_")) is None]
    if missing:
        parser.error(f"{args.family} requires " + ", ".join("--" + n for n in missing))


# analyze

def analyze(rho: DensityMatrix, rank_tol: float = 1e-10) -> dict:
    spectral = ms.spectral_concurrence(rho)
    out = {"rank": rho.rank(rank_tol), "spectral": spectral.as_dict(), "closed_form": None}
    try:
        d = eigen_rank2(rho, rank_tol)
    except RankTooHigh as exc:
        out["note"] = f"rank > 2 (third eigenvalue {exc.third_eigenvalue:.3e}); closed form not applicable"
        return out
    closed = ms.closed_form_concurrence(d)
    out["closed_form"] = closed.as_dict()
    out["eigen"] = {"v1": d.v1, "v2": d.v2,
                    "psi1": [[z.real, z.imag] for z in d.psi1.amplitudes],
                    "psi2": [[z.real, z.imag] for z in d.psi2.amplitudes]}
    out["abs_diff_concurrence"] = abs(closed.concurrence - spectral.concurrence)
    out["abs_diff_concurrence_sq"] = abs(closed.concurrence_sq - spectral.concurrence_sq)
    return out


def _format_analysis(res: dict) -> str:
    rows = [("rank", str(res["rank"]))]
    methods = [("spectral", res["spectral"])]
    if res["closed_form"] is not None:
        methods.append(("closed_form", res["closed_form"]))
    for name, rep in methods:
        rows.append((f"[{name}]", ""))
        rows.append(("concurrence", f"{rep['concurrence']:.6f}"))
        rows.append(("concurrence^2", f"{rep['concurrence_sq']:.6f}"))
        rows.append(("wootters entropy", f"{rep['we_entropy']:.6f}"))
        rows.append(("lambdas", " ".join(f"{x:.6f}" for x in rep["lambdas"])))
        if name == "closed_form":
            rows.append(("branch", rep["branch"]))
            rows.append(("bounds", f"{rep['lower_bound']:.6f} <= C^2 <= {rep['upper_bound']:.6f}"))
            rows.append(("omega+/-", f"{rep['omega_plus']:.6f} {rep['omega_minus']:.6f}"))
    if res["closed_form"] is not None:
        rows.append(("|C_closed - C_spec|", f"{res['abs_diff_concurrence']:.3e}"))
    if "note" in res:
        rows.append(("note", res["note"]))
    width = max(len(k) for k, _ in rows)
    return "".join(f"{k.ljust(width)}  {v}\n" for k, v in rows)


def cmd_analyze(args, parser):
    state = parse_state(_read(args.state))
    res = analyze(as_density(state), args.rank_tol)
    res["state_kind"] = "pure" if isinstance(state, PureState) else "density"
    if args.json:
        _write(args.out, json.dumps(res, indent=2) + "\n")
    else:
        _write(args.out, _format_analysis(res))
    return 0


# gen

GEN_FAMILIES = ("bell", "magic", "bell-mixture", "departure-diag", "departure-orth",
                "werner", "random-pure", "random-rank2")


def generate(args, parser):
    fam = args.family
    if fam == "bell":
        _require(args, parser, "kind")
        return bell_state(args.kind)
    if fam == "magic":
        _require(args, parser, "i")
        return magic_basis_state(args.i)
    if fam == "bell-mixture":
        _require(args, parser, "pair", "g")
        return bell_mixture(args.pair[0], args.pair[1], args.g)
    if fam == "departure-diag":
        _require(args, parser, "i", "p")
        return departure_diag(args.i, args.p)
    if fam == "departure-orth":
        _require(args, parser, "q")
        if (args.u_theta is None) == (args.x is None):
            parser.error("departure-orth requires exactly one of --u-theta or --x")
        x = product_chi(args.u_theta) if args.x is None else args.x
        return departure_orth(args.q, *x)
    if fam == "werner":
        _require(args, parser, "w")
        return werner(args.w)
    if fam == "random-pure":
        return random_pure(args.seed)
    if fam == "random-rank2":
        return to_density(random_rank2(args.seed))
    parser.error(f"unknown family {fam!r}")


def cmd_gen(args, parser):
    _write(args.out, write_state(generate(args, parser)))
    return 0


# verify

def cmd_verify(args, parser):
    if args.trials < 1:
        parser.error("--trials must be >= 1")
    if not args.tol > 0:
        parser.error("--tol must be > 0")
    cfg = VerifyConfig(trials=args.trials, seed=args.seed, tol=args.tol, rank_tol=args.rank_tol,
                       oracle_trials=args.oracle_trials, oracle_restarts=args.restarts, m=args.m)
    results = run_all(cfg, inject_fault=args.inject_fault)
    print(f"backend={_kernels.BACKEND} trials={cfg.trials} seed={cfg.seed} tol={cfg.tol:g}")
    width = max(len(r.name) for r in results)
    print(f"{'suite'.ljust(width)}  {'trials':>6}  {'max_error':>10}  {'tol':>8}  status")
    for r in results:
        status = "PASS" if r.passed else f"FAIL ({len(r.failures)})"
        print(f"{r.name.ljust(width)}  {r.trials:>6}  {r.max_error:>10.3e}  {r.tol:>8.1e}  {status}")
    failed = [r for r in results if not r.passed]
    for r in failed:
        unique = list(dict.fromkeys(s for s, _, _ in r.failures))
        seeds = " ".join(str(s) for s in unique[:20])
        more = " ..." if len(unique) > 20 else ""
        print(f"failing seeds [{r.name}]: {seeds}{more}")
    if failed:
        r = failed[0]
        seed, err, dump = r.failures[0]
        print(f"first counterexample: suite={r.name} seed={seed} error={err:.6e}")
        if dump is not None:
            print(dump())
        return 1
    print("all suites passed")
    return 0


# curve

CURVE_FAMILIES = ("fig1", "bell_mixture", "departure_diag", "departure_orth")


def _closed_and_spectral(rho, rank_tol):
    d = eigen_rank2(rho, rank_tol)
    return ms.closed_form_concurrence(d).concurrence, ms.spectral_concurrence(rho).concurrence


def curve_rows(args, parser):
    n = args.points
    grid = np.linspace(0.0, 1.0, n)
    fam = args.family
    if fam == "fig1":
        v1 = 0.1 if args.v1 is None else args.v1
        header = ["c1", "we", "ef_eigen"]
        rows = [(c, ms.entanglement_of_concurrence(v1 * c), v1 * ms.entanglement_of_concurrence(c))
                for c in grid]
        return header, rows
    if fam == "bell_mixture":
        pair = args.pair or (BellKind.PhiPlus, BellKind.PsiMinus)
        header = ["g", "c_closed", "c_spectral"]
        return header, [(g, *_closed_and_spectral(bell_mixture(pair[0], pair[1], g), args.rank_tol))
                        for g in grid]
    if fam == "departure_diag":
        _require(args, parser, "i")
        header = ["p", "c_closed", "c_spectral"]
        return header, [(p, *_closed_and_spectral(departure_diag(args.i, p), args.rank_tol))
                        for p in grid]
    if fam == "departure_orth":
        if args.x is not None:
            x = args.x
        else:
            x = product_chi(0.0 if args.u_theta is None else args.u_theta)
        header = ["q", "c_closed", "c_spectral"]
        return header, [(q, *_closed_and_spectral(departure_orth(q, *x), args.rank_tol))
                        for q in grid]
    parser.error(f"unknown curve family {fam!r}")


def cmd_curve(args, parser):
    if args.points < 2:
        parser.error("--points must be >= 2")
    header, rows = curve_rows(args, parser)
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([_g17(x) for x in row])
    _write(args.out, buf.getvalue())
    return 0


# oracle

def cmd_oracle(args, parser):
    rho = as_density(parse_state(_read(args.state)))
    res = minimize_ef(rho, m=args.m, restarts=args.restarts, seed=args.seed,
                      rank_tol=args.rank_tol, workers=args.workers)
    we = ms.spectral_concurrence(rho).we_entropy
    doc = res.as_dict()
    doc["we"] = we
    doc["gap"] = res.value - we
    doc["eigen_average"] = ms.eigen_average_entanglement(eigen_rank2(rho, args.rank_tol))
    doc["decomposition"] = [
        {"p": p, "concurrence": ms.pure_concurrence(psi),
         "data": [[z.real, z.imag] for z in psi.amplitudes]}
        for p, psi in res.decomposition.members
    ]
    if args.json:
        _write(args.out, json.dumps(doc, indent=2) + "\n")
    else:
        lines = [
            f"min average entanglement  {doc['min_value']:.6f}",
            f"wootters entanglement     {we:.6f}",
            f"gap                       {doc['gap']:.3e}",
            f"eigendecomposition avg    {doc['eigen_average']:.6f}",
            f"members                   {len(doc['decomposition'])}",
            f"best restart              {res.restart} of {res.restarts} (seed {res.seed}, m {res.m})",
            f"reconstruction residual   {res.residual:.3e}",
        ]
        _write(args.out, "\n".join(lines) + "\n")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="twoqubit", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="concurrence report for a state file")
    p.add_argument("state", help="state JSON file ('-' for stdin)")
    p.add_argument("--json", action="store_true")
    p.add_argument("--rank-tol", type=float, default=1e-10)
    p.add_argument("--out")
    p.set_defaults(func=cmd_analyze, subparser=p)

    p = sub.add_parser("gen", help="write a state file for one of the state families")
    p.add_argument("family", choices=GEN_FAMILIES)
    p.add_argument("--kind", type=BellKind.parse, help="Bell state: phi+, phi-, psi+, psi-")
    p.add_argument("--pair", type=_pair, help="two Bell states, e.g. phi+,psi-")
    p.add_argument("--g", type=_unit)
    p.add_argument("--p", type=_unit)
    p.add_argument("--q", type=_unit)
    p.add_argument("--w", type=_unit)
    p.add_argument("--i", type=int, choices=(1, 2, 3, 4))
    p.add_argument("--u-theta", type=float, help="chi = u(theta) (x) u(theta)")
    p.add_argument("--x", type=_complex_triple, help="chi coefficients x1,x2,x4")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")
    p.set_defaults(func=cmd_gen, subparser=p)

    p = sub.add_parser("verify", help="randomized verification of the closed form")
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--tol", type=float, default=1e-9)
    p.add_argument("--rank-tol", type=float, default=1e-10)
    p.add_argument("--oracle-trials", type=int, default=5)
    p.add_argument("--restarts", type=int, default=16)
    p.add_argument("--m", type=int, default=4, choices=(2, 3, 4))
    p.add_argument("--inject-fault", action="store_true", help=argparse.SUPPRESS)
    p.set_defaults(func=cmd_verify, subparser=p)

    p = sub.add_parser("curve", help="emit a CSV curve")
    p.add_argument("family", choices=CURVE_FAMILIES, type=lambda s: s.replace("-", "_"))
    p.add_argument("--v1", type=_unit)
    p.add_argument("--pair", type=_pair)
    p.add_argument("--i", type=int, choices=(1, 2, 3, 4))
    p.add_argument("--u-theta", type=float)
    p.add_argument("--x", type=_complex_triple)
    p.add_argument("--points", type=int, default=101)
    p.add_argument("--rank-tol", type=float, default=1e-10)
    p.add_argument("--seed", type=int, default=0, help="accepted for uniformity; curves are deterministic")
    p.add_argument("--out")
    p.set_defaults(func=cmd_curve, subparser=p)

    p = sub.add_parser("oracle", help="brute-force entanglement of formation")
    p.add_argument("state")
    p.add_argument("--m", type=int, default=4, choices=(2, 3, 4))
    p.add_argument("--restarts", type=int, default=64)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--rank-tol", type=float, default=1e-10)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--json", action="store_true")
    p.add_argument("--out")
    p.set_defaults(func=cmd_oracle, subparser=p)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args, args.subparser)
    except (TwoQubitError, OSError) as exc:
        print(f"twoqubit {args.command}: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
