"""``symfactor`` command line: factorize, certify, scan, census, generate.

Structured results go to stdout as JSON; errors go to stderr as JSON with
the exit code of the error class (see ``symfactor.errors.EXIT_CODES``).
"""

from __future__ import annotations

import argparse
import math
import sys
from pathlib import Path

import numpy as np

from . import config
from .certify import certify
from .errors import EXIT_CODES, AmbiguousSpectrum, CertificateFailed, ParseError, SymFactorError
from .factorize import (
    SymFactorization,
    factorize_auto,
    factorize_distinct,
    factorize_from_spec,
    factorize_spd,
)
from .generate import ALIASES, ENSEMBLES, generate
from .linalg import general_eigenvalues
from .matrixio import SCHEMA, dump_json, read_matrix, read_spec, spec_to_dict, write_matrix
from .pencil import PencilKind, scan, verify_counts
from .symmetrizer import census_vs_bounds, sharded_census, symmetrizer_basis

_PATHS = {"auto": factorize_auto, "distinct": factorize_distinct, "spd": factorize_spd}


class UsageError(Exception):
    exit_code = EXIT_CODES["UsageError"]


def _clean(obj):
    """Replace non-finite floats so the JSON stays strict."""
    if isinstance(obj, float) and not math.isfinite(obj):
        return str(obj)
    if isinstance(obj, dict):
        return {k: _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return _clean(obj.tolist())
    if isinstance(obj, np.generic):
        return _clean(obj.item())
    return obj


def _emit(payload: dict, out: Path | None = None) -> None:
    text = dump_json(_clean({"schema": SCHEMA, **payload}))
    if out is not None:
        out.write_text(text)
    sys.stdout.write(text)


def _factor_matrix(B, path: str) -> SymFactorization:
    if path == "spec":
        raise UsageError("--path spec needs --spectrum")
    return _PATHS[path](B)


def cmd_factorize(args) -> int:
    if (args.matrix is None) == (args.spectrum is None):
        raise UsageError("give exactly one of --matrix or --spectrum")
    if args.spectrum is not None:
        if args.path not in ("auto", "spec"):
            raise UsageError(f"--path {args.path} needs --matrix")
        spec = read_spec(args.spectrum)
        S = read_matrix(args.S) if args.S else None
        B, fact = factorize_from_spec(spec, S)
    else:
        if args.S:
            raise UsageError("--S only applies with --spectrum")
        B = read_matrix(args.matrix)
        fact = _factor_matrix(B, args.path)

    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    write_matrix(out / "T.txt", fact.T)
    write_matrix(out / "W.txt", fact.W)
    files = {"T": "T.txt", "W": "W.txt"}
    if args.spectrum is not None:
        write_matrix(out / "B.txt", B)
        files["B"] = "B.txt"
    _emit({"factorization": fact.to_dict(), "m": int(B.shape[0]), "files": files}, out / "factorization.json")
    return 0


def cmd_certify(args) -> int:
    B = read_matrix(args.B)
    fact = SymFactorization.from_factors(B, read_matrix(args.T), read_matrix(args.W))
    cert = certify(B, fact)
    body = cert.to_dict()
    body.pop("schema")
    _emit({"certificate": body}, Path(args.out) if args.out else None)
    if cert.indeterminate:
        return AmbiguousSpectrum.exit_code
    return 0 if cert.passed else CertificateFailed.exit_code


def _write_csv(path: Path, result) -> None:
    m = result.trajectories.shape[1]
    lines = [",".join(["param"] + [f"eig_{k + 1}" for k in range(m)])]
    for t, row in zip(result.grid, result.trajectories):
        lines.append(",".join(format(float(x), ".17g") for x in (t, *row)))
    path.write_text("\n".join(lines) + "\n")


def cmd_scan(args) -> int:
    if args.B is not None:
        if args.T or args.W:
            raise UsageError("give either --B or both --T and --W")
        fact = _factor_matrix(read_matrix(args.B), args.path)
        T, W = fact.T, fact.W
    elif args.T and args.W:
        T, W = read_matrix(args.T), read_matrix(args.W)
    else:
        raise UsageError("give either --B or both --T and --W")

    kinds = [PencilKind.V, PencilKind.U] if args.kind == "both" else [PencilKind(args.kind)]
    results = {k: scan(k, T, W) for k in kinds}
    payload: dict = {"scans": [results[k].to_dict() for k in kinds]}
    if args.kind == "both":
        payload["report"] = verify_counts(results[PencilKind.V], results[PencilKind.U], strict=False).to_dict()
    if args.csv:
        prefix = Path(args.csv)
        prefix.parent.mkdir(parents=True, exist_ok=True)
        for k, res in results.items():
            _write_csv(prefix.with_name(f"{prefix.name}_{k.value}.csv"), res)
    _emit(payload)
    if "report" in payload and not payload["report"]["passed"]:
        return EXIT_CODES["CountMismatch"]
    return 0


def cmd_census(args) -> int:
    B = read_matrix(args.B)
    cfg = config.current()
    samples = args.count if args.count is not None else cfg.samples
    if samples < 1 or args.shards < 1:
        raise UsageError("--count and --shards must be positive")
    basis = symmetrizer_basis(B)
    census = sharded_census(basis, B, samples, cfg.seed, args.shards)
    report = census_vs_bounds(census, general_eigenvalues(B))
    _emit({"space_dim": basis.space_dim, "census": census.to_dict(), "report": report.to_dict(), "seed": cfg.seed})
    return 0


def cmd_generate(args) -> int:
    seed = config.current().seed
    g = generate(args.ensemble, args.m, seed, n_pairs=args.n_pairs, n_neg=args.n_neg, identity_S=args.identity_S)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    write_matrix(out / "B.txt", g.B)
    write_matrix(out / "S.txt", g.S)
    (out / "spec.json").write_text(dump_json(spec_to_dict(g.spec)))
    _emit(
        {
            "ensemble": args.ensemble,
            "m": int(g.B.shape[0]),
            "seed": seed,
            "files": {"B": "B.txt", "S": "S.txt", "spec": "spec.json"},
        }
    )
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="symfactor", description="Factor real matrices into two symmetric factors.")
    ap.add_argument("--config", help="JSON file of RunConfig overrides")
    ap.add_argument("--seed", type=int, help="random seed (default 0)")
    ap.add_argument("--tol-sym", type=float, dest="sym_tol")
    ap.add_argument("--tol-zero", type=float, dest="zero_tol")
    ap.add_argument("--tol-pair", type=float, dest="pair_tol")
    ap.add_argument("--tol-pivot", type=float, dest="pivot_tol")
    ap.add_argument("--grid", type=int, dest="grid_size", help="initial pencil grid size")
    ap.add_argument("--samples", type=int, help="census sample count")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("factorize", help="compute B = T W")
    p.add_argument("--matrix", help="matrix file for B")
    p.add_argument("--spectrum", help="spectrum spec JSON; B = S J S^-1")
    p.add_argument("--S", help="similarity for --spectrum (default identity)")
    p.add_argument("--path", choices=["auto", "spec", "distinct", "spd"], default="auto")
    p.add_argument("--out", default=".", help="output directory")
    p.set_defaults(func=cmd_factorize)

    p = sub.add_parser("certify", help="check a factorization against the inertia bounds")
    p.add_argument("--B", required=True)
    p.add_argument("--T", required=True)
    p.add_argument("--W", required=True)
    p.add_argument("--out", help="also write the certificate here")
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("scan", help="singular points of the symmetric pencils")
    p.add_argument("--B")
    p.add_argument("--path", choices=["auto", "distinct", "spd"], default="auto")
    p.add_argument("--T")
    p.add_argument("--W")
    p.add_argument("--kind", choices=["V", "U", "both"], default="both")
    p.add_argument("--csv", help="trajectory CSV prefix; writes PREFIX_V.csv / PREFIX_U.csv")
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("census", help="sample the symmetrizer space and tally inertias")
    p.add_argument("--B", required=True)
    p.add_argument("--count", type=int, help="samples (overrides --samples)")
    p.add_argument("--shards", type=int, default=1)
    p.set_defaults(func=cmd_census)

    p = sub.add_parser("generate", help="random matrix with a known real Jordan structure")
    p.add_argument("--ensemble", "--kind", choices=ENSEMBLES + tuple(ALIASES), required=True)
    p.add_argument("--m", type=int, default=None)
    p.add_argument("--n-pairs", type=int)
    p.add_argument("--n-neg", type=int)
    p.add_argument("--identity-S", action="store_true")
    p.add_argument("--out", default=".")
    p.set_defaults(func=cmd_generate)
    return ap


def _run_config(args) -> config.RunConfig:
    base = config.RunConfig.from_file(args.config) if args.config else config.RunConfig()
    return base.replace(
        seed=args.seed,
        sym_tol=args.sym_tol,
        zero_tol=args.zero_tol,
        pair_tol=args.pair_tol,
        pivot_tol=args.pivot_tol,
        grid_size=args.grid_size,
        samples=args.samples,
    )


def _fail(name: str, code: int, message: str, extra: dict | None = None) -> int:
    body = {"schema": SCHEMA, "error": name, "exit_code": code, "message": message}
    if extra:
        body["details"] = extra
    sys.stderr.write(dump_json(_clean(body)))
    return code


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "generate" and args.m is None:
        args.m = 6 if ALIASES.get(args.ensemble, args.ensemble) == "pair-chain" else 4
    try:
        cfg = _run_config(args)
    except (OSError, ValueError, TypeError) as exc:
        if isinstance(exc, ParseError):
            return _fail("ParseError", exc.exit_code, str(exc))
        return _fail("UsageError", UsageError.exit_code, f"bad configuration: {exc}")
    try:
        with config.using(cfg):
            return args.func(args)
    except UsageError as exc:
        return _fail("UsageError", exc.exit_code, str(exc))
    except SymFactorError as exc:
        extra = {}
        for attr in ("residual", "diagnostics", "bracket", "counterexample"):
            if getattr(exc, attr, None) is not None:
                extra[attr] = getattr(exc, attr)
        return _fail(type(exc).__name__, exc.exit_code, str(exc), extra)


if __name__ == "__main__":
    sys.exit(main())
