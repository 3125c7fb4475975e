"""Command-line interface: ``tens-semigroup --root-system C2 dim 1,0`` etc.

Weights are comma-separated fundamental coordinates unless ``--coords ambient``.
Exit codes: 0 pass/member, 1 fail/non-member, 2 usage error, 3 resource cap.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass
from fractions import Fraction

from . import charoracle, semigroup
from .charoracle import ResourceCapExceeded
from .polyhedra import ProjectionBlowup, union_from_json, union_to_json
from .rootsys import (
    RootSystemError,
    build_root_system,
    contragredient_fund,
    fmt_frac,
    parse_frac_list,
)

FORMATS = ("json", "csv", "text")
THEOREMS = ("mainBC", "g2", "saturation", "kumar", "esets", "decomposition", "deep", "inclusion")
CONJECTURES = ("C1.1", "C1.2", "C1.3", "Kumar2")


class UsageError(ValueError):
    pass


@dataclass
class CliConfig:
    root_system: str = "C2"
    coords: str = "fund"
    box: int | None = None
    workers: int = 1
    fmt: str = "text"
    seed: int = 0
    out: str | None = None
    timing: bool = False

    def __post_init__(self):
        if self.box is not None and self.box < 0:
            raise UsageError("--box must be >= 0")
        if self.workers < 1:
            raise UsageError("--workers must be >= 1")
        if self.fmt not in FORMATS:
            raise UsageError(f"--format must be one of {FORMATS}")

    @property
    def rs(self):
        return parse_root_system(self.root_system)

    def weight(self, text):
        """Parse one weight into integral fundamental coordinates."""
        rs = self.rs
        try:
            vals = parse_frac_list(text)
        except (ValueError, ZeroDivisionError) as exc:
            raise UsageError(f"cannot parse weight {text!r}: {exc}") from None
        if len(vals) != rs.rank:
            raise UsageError(f"{rs.id} weights need {rs.rank} coordinates, got {text!r}")
        fund = rs.to_fund(vals) if self.coords == "ambient" else vals
        if any(Fraction(c).denominator != 1 for c in fund):
            raise UsageError(f"{text!r} is not in the weight lattice")
        return tuple(int(c) for c in fund)

    def dominant(self, text):
        w = self.weight(text)
        if any(c < 0 for c in w):
            raise UsageError(f"{text!r} is not dominant")
        return w


def parse_root_system(text):
    text = text.strip()
    if not text:
        raise UsageError("empty root system")
    if ";" in text:
        try:
            matrix = [[int(x) for x in row.split(",")] for row in text.split(";")]
        except ValueError:
            raise UsageError(f"cannot parse Cartan matrix {text!r}") from None
        return build_root_system(matrix)
    return build_root_system("C2" if text.upper() == "B2" else text)


def _wstr(w):
    return ",".join(fmt_frac(Fraction(c)) for c in w)


def _emit(cfg, payload, text, rows=None):
    if cfg.fmt == "json":
        out = json.dumps(payload, indent=2, sort_keys=True)
    elif cfg.fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        for r in rows if rows is not None else [[text]]:
            w.writerow(r)
        out = buf.getvalue().rstrip("\n")
    else:
        out = text
    if cfg.out:
        with open(cfg.out, "w") as fh:
            fh.write(out + "\n")
    print(out)


# ---------------------------------------------------------------------------
# commands


def cmd_dim(cfg, args):
    lam = cfg.dominant(args.weight)
    d = charoracle.weyl_dim(cfg.rs, lam)
    _emit(cfg, {"system": cfg.rs.id, "weight": list(lam), "dim": d}, str(d), [["dim", d]])
    return 0


def cmd_weights(cfg, args):
    lam = cfg.dominant(args.weight)
    table = charoracle.all_weights(cfg.rs, lam)
    items = sorted(table.items())
    _emit(
        cfg,
        {"system": cfg.rs.id, "highest": list(lam), "weights": [[list(k), v] for k, v in items]},
        "\n".join(f"{_wstr(k)}\t{v}" for k, v in items),
        [["weight", "multiplicity"]] + [[_wstr(k), v] for k, v in items],
    )
    return 0


def cmd_tensor(cfg, args):
    lam, mu = cfg.dominant(args.lam), cfg.dominant(args.mu)
    table = charoracle.tensor_decompose(cfg.rs, lam, mu)
    items = sorted(table.items())
    _emit(
        cfg,
        {"system": cfg.rs.id, "lambda": list(lam), "mu": list(mu), "summands": [[list(k), v] for k, v in items]},
        "\n".join(f"{_wstr(k)}\t{v}" for k, v in items),
        [["weight", "multiplicity"]] + [[_wstr(k), v] for k, v in items],
    )
    return 0


def _member_by(rs, method, t):
    if method == "oracle":
        d = semigroup.oracle_dim(rs, t)
        return d > 0, d
    if method == "paths":
        from .pathmodel import path_tensor_multiplicity

        d = path_tensor_multiplicity(rs, t.lam, t.mu, contragredient_fund(rs, t.nu))
        return d > 0, d
    if method == "criterion":
        if rs.id not in ("C2", "G2"):
            raise UsageError(f"no criterion is implemented for {rs.id}")
        # Tens sits inside the cone and (for C2) the trace condition
        outside = t.flat not in semigroup.cone_p(rs) or (rs.id == "C2" and not semigroup.lambda_member(rs, t))
        if outside:
            return False, None
        f = semigroup.tens_c2_criterion if rs.id == "C2" else semigroup.tens_g2_criterion
        return f(t), None
    raise UsageError(f"unknown method {method!r}")


def cmd_member(cfg, args):
    rs = cfg.rs
    t = semigroup.Triple(*(cfg.dominant(w) for w in args.weights))
    methods = ["oracle", "paths", "criterion"] if args.method == "all" else [args.method]
    if args.method == "all" and rs.id not in ("C2", "G2"):
        methods.remove("criterion")
    results = {}
    for m in methods:
        results[m] = _member_by(rs, m, t)
    verdicts = {v for v, _ in results.values()}
    agree = len(verdicts) == 1
    member = verdicts == {True}
    payload = {
        "system": rs.id,
        "triple": t.to_list(),
        "member": member if agree else None,
        "methods": {m: {"member": v, **({"dim": d} if d is not None else {})} for m, (v, d) in results.items()},
        "agree": agree,
    }
    lines = [f"{t} {'member' if member else 'NOT member'}" if agree else f"{t} DISCREPANCY"]
    for m, (v, d) in results.items():
        lines.append(f"  {m}: {'member' if v else 'not member'}" + (f" (dim {d})" if d is not None else ""))
    rows = [["method", "member", "dim"]] + [[m, v, "" if d is None else d] for m, (v, d) in results.items()]
    _emit(cfg, payload, "\n".join(lines), rows)
    return 0 if agree and member else 1


_DEFAULT_BOX = {"mainBC": 6, "g2": 3, "saturation": 4, "kumar": 6, "esets": 6, "decomposition": 6, "inclusion": 4}


def _report_out(cfg, rep):
    payload = rep.to_json(timing=cfg.timing)
    lines = [
        f"{rep.theorem} [{rep.system}] box={rep.box}: scanned {rep.scanned}, "
        f"{len(rep.mismatches)} mismatches" + (f", {rep.seconds:.1f}s" if cfg.timing else "") + (" (partial)" if rep.partial else "")
    ]
    lines += [f"  {m}" for m in payload["mismatches"][:20]]
    rows = [["theorem", "system", "box", "scanned", "mismatches"],
            [rep.theorem, rep.system, rep.box, rep.scanned, len(rep.mismatches)]]
    _emit(cfg, payload, "\n".join(lines), rows)
    if rep.partial:
        return 3
    return 0 if rep.passed else 1


def cmd_verify(cfg, args):
    name = args.theorem
    box = cfg.box if cfg.box is not None else _DEFAULT_BOX.get(name)
    rs_id = cfg.rs.id
    if name == "mainBC":
        rep = semigroup.verify_mainbc(box, cfg.workers)
    elif name == "g2":
        rep = semigroup.verify_g2(box, cfg.workers)
    elif name == "esets":
        rep = semigroup.verify_esets(box)
    elif name == "saturation":
        rep = semigroup.verify_saturation(box, cfg.workers, rs_id)
    elif name == "kumar":
        rep = semigroup.verify_kumar(box, cfg.workers, rs_id)
    elif name == "inclusion":
        rep = semigroup.verify_inclusion(rs_id, box, cfg.workers)
    elif name == "deep":
        rep = semigroup.verify_deep(args.count, cfg.seed)
    elif name == "decomposition":
        sets = None
        if args.input:
            with open(args.input) as fh:
                data = json.load(fh)
            if data.get("system", rs_id) != rs_id:
                raise UsageError(f"{args.input} holds a decomposition for {data.get('system')}")
            sets = union_from_json(data)
        rep = semigroup.verify_decomposition(rs_id, box, sets)
    else:
        raise UsageError(f"unknown theorem {name!r}")
    return _report_out(cfg, rep)


def cmd_conjecture(cfg, args):
    box = cfg.box if cfg.box is not None else 3
    rep = semigroup.conjecture_scan(args.target, cfg.rs.id, box, cfg.workers)
    return _report_out(cfg, rep)


def cmd_decompose(cfg, args):
    rs = cfg.rs
    sets = semigroup.compute_tens_decomposition(rs, max_pieces=args.max_pieces or semigroup.DECOMPOSITION_PIECE_CAP)
    payload = union_to_json(sets, system=rs.id)
    if cfg.fmt == "json" and not cfg.out:
        text = json.dumps(payload, indent=2, sort_keys=True)
    else:
        text = f"{rs.id}: {len(sets)} elementary sets"
    if cfg.out:
        with open(cfg.out, "w") as fh:
            fh.write(json.dumps(payload, indent=2, sort_keys=True) + "\n")
    print(text)
    return 0


# ---------------------------------------------------------------------------


def _common(parser, suppress):
    d = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    parser.add_argument("--root-system", default=d("C2"), help="A2, C2 (alias B2), G2 or a Cartan matrix like '2,-1;-1,2'")
    parser.add_argument("--coords", choices=("fund", "ambient"), default=d("fund"))
    parser.add_argument("--box", type=int, default=d(None))
    parser.add_argument("--workers", type=int, default=d(1))
    parser.add_argument("--seed", type=int, default=d(0))
    parser.add_argument("--out", default=d(None))
    parser.add_argument("--format", dest="fmt", choices=FORMATS, default=d("text"))
    parser.add_argument("--timing", action="store_true", default=d(False), help="include wall-clock seconds in reports")


def build_parser():
    p = argparse.ArgumentParser(prog="tens-semigroup", description="Tensor product semigroup tools")
    _common(p, False)
    shared = argparse.ArgumentParser(add_help=False)
    _common(shared, True)
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("dim", parents=[shared])
    s.add_argument("weight")
    s.set_defaults(func=cmd_dim)

    s = sub.add_parser("weights", parents=[shared])
    s.add_argument("weight")
    s.set_defaults(func=cmd_weights)

    s = sub.add_parser("tensor", parents=[shared])
    s.add_argument("lam")
    s.add_argument("mu")
    s.set_defaults(func=cmd_tensor)

    s = sub.add_parser("member", parents=[shared])
    s.add_argument("weights", nargs=3)
    s.add_argument("--method", choices=("all", "oracle", "paths", "criterion"), default="all")
    s.set_defaults(func=cmd_member)

    s = sub.add_parser("verify", parents=[shared])
    s.add_argument("theorem", choices=THEOREMS)
    s.add_argument("--input", help="decomposition JSON produced by 'decompose --out'")
    s.add_argument("--count", type=int, default=10_000, help="samples for 'deep'")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("conjecture", parents=[shared])
    s.add_argument("target", choices=CONJECTURES)
    s.set_defaults(func=cmd_conjecture)

    s = sub.add_parser("decompose", parents=[shared])
    s.add_argument("--max-pieces", type=int)
    s.set_defaults(func=cmd_decompose)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 2
    try:
        cfg = CliConfig(args.root_system, args.coords, args.box, args.workers, args.fmt, args.seed, args.out, args.timing)
        cfg.rs
        return args.func(cfg, args)
    except (UsageError, RootSystemError, semigroup.CriterionInapplicable) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ResourceCapExceeded, ProjectionBlowup) as exc:
        print(f"resource cap: {exc}", file=sys.stderr)
        return 3
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
