"""Command line front end: check, sample, table, lattice and certify.

Exit codes: 0 success, 2 parse or input error, 3 resource cap, 4 verdict refused.
Reports are deterministic for fixed arguments; timings appear only with --timings.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import random
import sys
import time

try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib

from . import __version__
from .check import check_model
from .frobenius import (
    SCHEMA_VERSION,
    CellStatus,
    ModelError,
    VerdictRefused,
    model_from_dict,
    theorem_verdict,
)
from .frobenius.fedder import DegreeError, pair_fsplit
from .gfpoly import GF, FieldError, P2, PolyError, ResourceLimitError, ScanBudgetError, ring
from .geometry import (
    SHAPES,
    PointTree,
    TreeError,
    find_boundary_certificate,
    random_tree,
    root_diagnosis,
    weak_dp_check,
)
from .geometry.certificate import CertificateError
from .lattice import (
    LatticeError,
    classify_root_subsystem,
    enumerate_minus1,
    enumerate_roots,
    coarse_sfr_conditions,
    strongly_f_regular_singularities,
    to_csv,
)
from .sampling import FAMILIES, sample_cell

EXIT_OK, EXIT_PARSE, EXIT_RESOURCE, EXIT_REFUSED = 0, 2, 3, 4
DEFAULT_PRIMES = (2, 3, 5, 7)


class InputError(ValueError):
    pass


# ------------------------------------------------------------------ input


def load_toml(path: str) -> dict:
    try:
        with open(path, "rb") as fh:
            return tomllib.load(fh)
    except tomllib.TOMLDecodeError as exc:
        raise InputError(f"{path}: {exc}") from None
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from None


def load_model(path: str, p: int | None = None):
    data = load_toml(path)
    if p is not None:
        data["p"] = p
        if isinstance(data.get("tree"), dict):
            data["tree"]["p"] = p
    if "p" not in data and "p" not in data.get("tree", {}):
        raise InputError(f"{path}: no characteristic given (set p in the file or pass --p)")
    return model_from_dict(data)


def load_tree(path: str, p: int | None = None) -> PointTree:
    data = load_toml(path)
    data = dict(data.get("tree", data))
    if p is not None:
        data["p"] = p
    return PointTree.from_dict(data)


def parse_primes(text: str | None) -> list[int]:
    if not text:
        return list(DEFAULT_PRIMES)
    try:
        primes = [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise InputError(f"--p expects a comma separated list of primes, got {text!r}") from None
    for p in primes:
        if p < 2 or any(p % d == 0 for d in range(2, int(p**0.5) + 1)):
            raise InputError(f"{p} is not prime")
    return primes


def single_prime(text: str | None) -> int | None:
    if text is None:
        return None
    primes = parse_primes(text)
    if len(primes) != 1:
        raise InputError("this command takes a single prime")
    return primes[0]


# ----------------------------------------------------------------- output


def _flatten(obj, prefix="") -> list[tuple[str, object]]:
    if isinstance(obj, dict):
        rows = []
        for k, v in obj.items():
            rows += _flatten(v, f"{prefix}.{k}" if prefix else str(k))
        return rows
    if isinstance(obj, list) and any(isinstance(v, (dict, list)) for v in obj):
        rows = []
        for i, v in enumerate(obj):
            rows += _flatten(v, f"{prefix}[{i}]")
        return rows
    if isinstance(obj, list):
        return [(prefix, " ".join(str(v) for v in obj))]
    return [(prefix, obj)]


def _csv(rows, header) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def _text(obj, indent=0) -> str:
    pad = "  " * indent
    lines = []
    if isinstance(obj, dict):
        for k, v in obj.items():
            if isinstance(v, (dict, list)) and v:
                lines.append(f"{pad}{k}:")
                lines.append(_text(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {v}")
    elif isinstance(obj, list):
        for v in obj:
            if isinstance(v, (dict, list)):
                lines.append(f"{pad}-")
                lines.append(_text(v, indent + 1))
            else:
                lines.append(f"{pad}- {v}")
    else:
        lines.append(f"{pad}{obj}")
    return "\n".join(lines)


def render(report: dict, fmt: str, table=None) -> str:
    """json: the full report; csv: ``table`` rows if given, else key/value pairs."""
    if fmt == "json":
        return json.dumps(report, indent=2) + "\n"
    if fmt == "csv":
        if table is not None:
            return _csv(table[1], table[0])
        return _csv(_flatten(report), ("key", "value"))
    if table is not None:
        header, rows = table
        widths = [max(len(str(x)) for x in col) for col in zip(header, *rows)]
        out = ["  ".join(str(x).ljust(w) for x, w in zip(r, widths)).rstrip() for r in [header, *rows]]
        return "\n".join(out) + "\n"
    return _text(report) + "\n"


def _envelope(command: str, body: dict) -> dict:
    return {"schema": SCHEMA_VERSION, "command": command, "version": __version__, **body}


# --------------------------------------------------------------- commands


def cmd_check(args) -> tuple[dict, object]:
    model = load_model(args.model, single_prime(args.p))
    v = check_model(model, e_max=args.emax, k_max=args.kmax, retries=args.retries, seed=args.seed)
    body = {"model": model.to_dict(), "verdict": v.to_dict(include_timings=args.timings)}
    return _envelope("check", body), None


def cmd_sample(args) -> tuple[dict, object]:
    p = single_prime(args.p)
    if p is None:
        raise InputError("sample needs --p")
    t0 = time.perf_counter()
    s = sample_cell(
        args.K2, p, args.n, seed=args.seed, k_max=args.kmax, family=args.family,
        target=args.target, max_draws=args.max_draws,
    )
    body = {"summary": s.to_dict()}
    if args.timings:
        body["timings"] = {"total": time.perf_counter() - t0}
    header = ("K2", "p", "n_drawn", "n_smooth_screened", "n_fsplit", "counterexamples")
    rows = [(s.K2, s.p, s.n_drawn, s.n_smooth_screened, s.n_fsplit, len(s.counterexamples))]
    return _envelope("sample", body), (header, rows)


def _certificate_rate(K2: int, p: int, trees: int, seed: int, retries: int) -> dict:
    """Certificate success over random weak del Pezzo trees with 9 - K2 nodes."""
    n = 9 - K2
    fld = GF(p)
    if n == 0:
        R = ring(fld, P2)
        ok, _ = pair_fsplit("P2", list(R.gens()))
        return {"trees": 1, "weak_dp": 1, "certified": int(ok)}
    layouts = [s for s in ("i", "ii", "iii", "iv", "v") if len(SHAPES[s]) >= n]
    weak = cert = 0
    for t in range(trees):
        rng = random.Random(f"{seed}:{K2}:{p}:{t}")
        shape = layouts[t % len(layouts)]
        tree = random_tree(shape, fld, rng)
        tree = PointTree(fld, tree.nodes[:n])
        if not weak_dp_check(tree):
            continue
        weak += 1
        cert += find_boundary_certificate(tree, retries=retries, seed=seed, check_weak_dp=False) is not None
    return {"trees": trees, "weak_dp": weak, "certified": cert}


def cmd_table(args) -> tuple[dict, object]:
    primes = parse_primes(args.p)
    cells = []
    for K2 in range(1, 10):
        for p in primes:
            status = theorem_verdict(K2, p, args.smooth)
            cell = {"K2": K2, "p": p, "status": status.value}
            if args.n and K2 <= 4:
                s = sample_cell(K2, p, args.n, seed=args.seed, k_max=args.kmax)
                cell["sample"] = {
                    "n_smooth_screened": s.n_smooth_screened,
                    "n_fsplit": s.n_fsplit,
                }
            if args.trees and K2 >= 5:
                cell["certificates"] = _certificate_rate(K2, p, args.trees, args.seed, args.retries)
            cells.append(cell)
    exceptional = [[c["K2"], c["p"]] for c in cells if c["status"] == CellStatus.EXCEPTIONAL.value]
    body = {"mode": "smooth" if args.smooth else "canonical", "primes": primes,
            "exceptional": exceptional, "cells": cells}
    header = ["K2"] + [f"p={p}" for p in primes]
    rows = []
    for K2 in range(1, 10):
        row = [K2]
        for c in cells:
            if c["K2"] != K2:
                continue
            mark = "EXC" if c["status"] == CellStatus.EXCEPTIONAL.value else "GFR"
            if "sample" in c:
                mark += f" {c['sample']['n_fsplit']}/{c['sample']['n_smooth_screened']}"
            if "certificates" in c:
                mark += f" cert {c['certificates']['certified']}/{c['certificates']['weak_dp']}"
            row.append(mark)
        rows.append(row)
    return _envelope("table", body), (header, rows)


def cmd_lattice(args) -> tuple[dict, object]:
    primes = parse_primes(args.p)
    target = args.target
    if target.isdigit():
        n = int(target)
        minus1 = enumerate_minus1(n)
        roots = enumerate_roots(n)
        diag = classify_root_subsystem(roots)
        body = {
            "n": n, "K2": 9 - n, "rho": n + 1,
            "minus1_classes": len(minus1), "roots": len(roots), "root_type": diag.label,
        }
        if args.format == "csv":
            classes = minus1 if args.classes == "minus1" else roots
            return _envelope("lattice", body), _csv_table(to_csv(classes))
        return _envelope("lattice", body), None
    tree = load_tree(target)
    if not weak_dp_check(tree):
        raise VerdictRefused("the configuration is not weak del Pezzo")
    diag = root_diagnosis(tree)
    n = len(tree) + (1 if tree.base == "P1xP1" else 0)
    K2 = 9 - n
    body = {
        "tree": tree.to_dict(), "K2": K2, "rho": n + 1 - diag.rank,
        "diagnosis": diag.to_dict(),
        "strongly_f_regular": {str(p): strongly_f_regular_singularities(K2, p, diag) for p in primes},
        "coarse_sufficient": {str(p): coarse_sfr_conditions(K2, p) for p in primes},
    }
    return _envelope("lattice", body), None


def _csv_table(text: str):
    rows = list(csv.reader(io.StringIO(text)))
    return rows[0], rows[1:]


def cmd_certify(args) -> tuple[dict, object]:
    tree = load_tree(args.tree, single_prime(args.p))
    if not weak_dp_check(tree):
        raise VerdictRefused("the configuration is not weak del Pezzo")
    if tree.base == "P1xP1":
        from .geometry import find_p1xp1_certificate, to_p2_tree

        cert = find_p1xp1_certificate(tree, retries=args.retries, seed=args.seed, check_weak_dp=False)
        if cert is None:
            cert = find_boundary_certificate(
                to_p2_tree(tree), retries=args.retries, seed=args.seed, check_weak_dp=False
            )
    else:
        cert = find_boundary_certificate(tree, retries=args.retries, seed=args.seed, check_weak_dp=False)
    body = {
        "tree": tree.to_dict(),
        "found": cert is not None,
        "certificate": cert.to_dict() if cert is not None else None,
    }
    return _envelope("certify", body), None


# ------------------------------------------------------------------ parser


def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return v


def _nonneg(text: str) -> int:
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, got {text}")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--p", help="characteristic (comma separated list where allowed)")
    common.add_argument("--seed", type=_nonneg, default=0, help="random seed (default 0)")
    common.add_argument("--format", choices=("json", "csv", "text"), default="json")
    common.add_argument("--timings", action="store_true", help="include wall-clock timings")
    common.add_argument("--retries", type=_positive, default=8, help="certificate retries (default 8)")
    common.add_argument("--kmax", type=_nonneg, default=2,
                        help="smooth screen over F_{p^k}, k <= kmax (default 2; 0 disables in check)")

    parser = argparse.ArgumentParser(prog="frobsplit", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    c = sub.add_parser("check", parents=[common], help="verdict for one model file")
    c.add_argument("model", help="TOML model file")
    c.add_argument("--emax", type=_nonneg, default=3, help="Frobenius exponent bound for the GFR search")
    c.set_defaults(func=cmd_check)

    s = sub.add_parser("sample", parents=[common], help="random models in one (K2, p) cell")
    s.add_argument("--K2", type=int, choices=(1, 2, 3, 4), required=True)
    s.add_argument("--n", type=_positive, default=50, help="number of draws (default 50)")
    s.add_argument("--family", choices=FAMILIES, default="generic")
    s.add_argument("--target", choices=("draws", "screened"), default="draws",
                   help="count draws, or keep drawing until n models pass the screen")
    s.add_argument("--max-draws", type=_positive, default=None)
    s.set_defaults(func=cmd_sample)

    t = sub.add_parser("table", parents=[common], help="classification table over primes")
    t.add_argument("--smooth", action="store_true", help="smooth surfaces only")
    t.add_argument("--n", type=_nonneg, default=0, help="sampled models per cell with K2 <= 4")
    t.add_argument("--trees", type=_nonneg, default=0, help="random point trees per cell with K2 >= 5")
    t.set_defaults(func=cmd_table)

    lt = sub.add_parser("lattice", parents=[common], help="Picard lattice of n points, or of a tree file")
    lt.add_argument("target", help="number of points (1..8) or a TOML tree file")
    lt.add_argument("--classes", choices=("minus1", "roots"), default="roots",
                    help="which classes to list with --format csv")
    lt.set_defaults(func=cmd_lattice)

    ce = sub.add_parser("certify", parents=[common], help="boundary certificate for a point tree")
    ce.add_argument("tree", help="TOML tree file")
    ce.set_defaults(func=cmd_certify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        report, table = args.func(args)
    except (InputError, TreeError, ModelError, PolyError, FieldError, LatticeError,
            DegreeError, KeyError, ValueError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"frobsplit: error: {msg}", file=sys.stderr)
        return EXIT_PARSE
    except (ResourceLimitError, ScanBudgetError, CertificateError) as exc:
        print(f"frobsplit: resource limit: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except VerdictRefused as exc:
        print(f"frobsplit: refused: {exc}", file=sys.stderr)
        return EXIT_REFUSED
    sys.stdout.write(render(report, args.format, table))
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
