"""Command-line front end.

    absppt classify zeta1
    absppt classify 'nu{1,5,3}@0.07'
    absppt sweep nu1 --steps 50 --format csv
    absppt limits
    absppt decompose 'nu{1,5,3}@0.07'
    absppt oracle scan --spectrum s.json --samples 2000 --seed 7 --out report.json
    absppt verify --only limits
    absppt export --format csv --out families.csv

Exit codes: 0 success, 1 bad input or failed verification, 2 NotAP verdict.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import re
import sys
from dataclasses import asdict, dataclass, fields, replace
from pathlib import Path

import numpy as np

from . import acceptance
from . import families as fam
from .criterion import DET_TOL, Kind, classify
from .extremality import GROUP_TOL, NULL_TOL, RANK_TOL, extremality_test
from .oracle import mc_ppt_scan, perturbation_decompose
from .serialize import ParseError, dumps, fmt, parse_spectrum_text, spectrum_to_json
from .spectrum import Spectrum, SpectrumError, make_spectrum, pattern, uniform

OUTPUT_DIR_ENV = "ABSPPT_OUTPUT_DIR"
ENDPOINT_MARGIN = 1e-9

SWEEP_COLUMNS = ("family", "c", "a", "b", "l1", "l2", "min_eig_L1", "min_eig_L2", "corner",
                 "kind", "active", "extremality", "dist_lo", "dist_hi")
LIMIT_COLUMNS = ("family", "end", "c", "target", "closed", "distance")


@dataclass(frozen=True)
class RunConfig:
    det_tol: float = DET_TOL
    psd_tol: float = DET_TOL
    rank_tol: float = RANK_TOL
    group_tol: float = GROUP_TOL
    seed: int = 0
    samples: int = 2000
    steps: int = 20
    format: str = "json"
    out: str | None = None
    renormalize: bool = True

    def __post_init__(self):
        for name in ("det_tol", "psd_tol", "rank_tol", "group_tol"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be > 0")
        if self.format not in ("json", "csv"):
            raise ValueError(f"format must be json or csv, not {self.format!r}")

    @classmethod
    def load(cls, path) -> "RunConfig":
        data = json.loads(Path(path).read_text())
        known = {f.name for f in fields(cls)}
        unknown = set(data) - known
        if unknown:
            raise ValueError(f"unknown config keys: {', '.join(sorted(unknown))}")
        return cls(**data)

    def output_path(self) -> Path | None:
        if self.out is None or self.out == "-":
            return None
        p = Path(self.out)
        root = os.environ.get(OUTPUT_DIR_ENV)
        return Path(root) / p if root and not p.is_absolute() else p


_NAMED = re.compile(r"^nu\{(\d),(\d),(\d)\}(\^\((\d)\))?(@(.+))?$")


def _variant_for(variants, c_text):
    # a bare name is fine when exactly one variant covers the parameter
    try:
        c = float(c_text)
    except (TypeError, ValueError):
        return None
    hits = [g for g in variants if g.kind != "point" and fam._in_range(g, c)]
    return hits[0] if len(hits) == 1 else None


def resolve_named(token: str) -> Spectrum | None:
    """Spectrum for a named constant, or None if ``token`` is not one."""
    t = token.strip()
    if t == "uniform":
        return uniform()
    m = re.fullmatch(r"zeta(\d+)", t)
    if m:
        i = int(m.group(1))
        if not 1 <= i <= 8:
            raise ParseError(f"zeta index must be 1..8, got {i}", 1, 5)
        return fam.zeta(i)
    if t in ("nu621_3", "nu243_3"):
        return fam.special_point(t).spectrum
    if not t.startswith("nu{"):
        return None
    m = _NAMED.match(t)
    if not m:
        raise ParseError(f"cannot parse family constant {t!r}", 1, 1)
    name = "nu{%s,%s,%s}" % m.group(1, 2, 3) + (m.group(4) or "")
    try:
        f = fam.get_family(name)
    except KeyError:
        variants = [g for g in fam.list_families() if g.name.startswith(name + "^")]
        f = _variant_for(variants, m.group(7))
        if f is None:
            hint = f"; name a variant: {', '.join(g.name for g in variants)}" if variants else ""
            raise ParseError(f"unknown family {name}{hint}", 1, 1) from None
    if m.group(7) is None:
        if f.kind != "point":
            raise ParseError(f"{name} needs a parameter, e.g. {name}@c", 1, len(t) + 1)
        return fam.eval_family(f, f.c_interval[0])
    col = m.start(7) + 1
    try:
        c = float(m.group(7))
    except ValueError:
        raise ParseError(f"not a number: {m.group(7)!r}", 1, col) from None
    try:
        return fam.eval_family(f, c)
    except (fam.OutOfRange, ArithmeticError) as exc:
        raise ParseError(str(exc), 1, col) from None


def load_spectrum(arg: str, renormalize: bool = True) -> Spectrum:
    """Named constant, path to a JSON/CSV file, or inline values."""
    named = resolve_named(arg)
    if named is not None:
        return named
    p = Path(arg)
    if not arg.lstrip().startswith("[") and p.is_file():
        return parse_spectrum_text(p.read_text(), renormalize)
    return parse_spectrum_text(arg, renormalize)


def _emit(text: str, cfg: RunConfig) -> None:
    path = cfg.output_path()
    if path is None:
        sys.stdout.write(text)
        return
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text)


def _csv(rows, columns) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(columns)
    for r in rows:
        w.writerow([fmt(r[k]) if isinstance(r[k], float) else ("" if r[k] is None else r[k]) for k in columns])
    return buf.getvalue()


def _table(rows, columns, cfg: RunConfig) -> str:
    return _csv(rows, columns) if cfg.format == "csv" else dumps(rows)


def classify_report(s: Spectrum, cfg: RunConfig) -> dict:
    v = classify(s, cfg.det_tol, cfg.psd_tol)
    e = extremality_test(s, cfg.rank_tol, cfg.det_tol, cfg.group_tol, NULL_TOL)
    return {"spectrum": spectrum_to_json(s), "multiplicities": list(pattern(s, cfg.group_tol).counts),
            "membership": v.to_dict(), "extremality": e.to_dict()}


def sweep_rows(families, cfg: RunConfig) -> list[dict]:
    rows = []
    for f in families:
        lo, hi = f.c_interval
        if f.kind == "point":
            cs = [lo]
        else:
            m = ENDPOINT_MARGIN * (hi - lo)
            cs = np.linspace(lo + m if f.lo_open else lo, hi - m if f.hi_open else hi, cfg.steps)
        targets = [None if t is None else fam.limit_target(t).lam for t in (f.limit_lo, f.limit_hi)]
        for c in cs:
            s = fam.eval_family(f, float(c))
            v = classify(s, cfg.det_tol, cfg.psd_tol)
            e = extremality_test(s, cfg.rank_tol, cfg.det_tol, cfg.group_tol, NULL_TOL)
            d = [None if t is None else float(np.max(np.abs(s.lam - t))) for t in targets]
            rows.append({"family": f.name, "c": float(c), "a": float(s[0]), "b": float(s[f.mu[0]]),
                         "l1": v.l1, "l2": v.l2, "min_eig_L1": v.min_eig_L1, "min_eig_L2": v.min_eig_L2,
                         "corner": v.corner, "kind": v.kind.value, "active": v.active.value,
                         "extremality": e.kind.value, "dist_lo": d[0], "dist_hi": d[1]})
    return rows


def limit_rows(families, eps: float) -> list[dict]:
    rows = []
    for f in families:
        lo, hi = f.c_interval
        for end, target, is_open, c in (("lo", f.limit_lo, f.lo_open, lo), ("hi", f.limit_hi, f.hi_open, hi)):
            if target is None:
                continue
            rows.append({"family": f.name, "end": end, "c": float(c), "target": target,
                         "closed": "false" if is_open else "true",
                         "distance": fam.verify_limit(f, end, eps)})
    return rows


def decompose_report(s: Spectrum, cfg: RunConfig) -> dict:
    out: dict = {"spectrum": spectrum_to_json(s)}
    if pattern(s, cfg.group_tol).counts == (1, 5, 3):
        try:
            x, res = fam.nu153_decompose(s)
            out["zeta1_zeta6"] = {"x": x, "residual": res}
        except fam.PatternMismatch as exc:
            out["zeta1_zeta6"] = {"error": str(exc)}
    e = extremality_test(s, cfg.rank_tol, cfg.det_tol, cfg.group_tol, NULL_TOL)
    out["extremality"] = e.kind.value
    w = None
    if e.direction is not None:
        w = perturbation_decompose(s, e.direction)
    out["witness"] = None if w is None else {
        "direction": e.direction, "alpha": spectrum_to_json(w[0]), "beta": spectrum_to_json(w[1]), "eps": w[2]}
    return out


def _families(selector: str):
    try:
        return fam.select_families(selector)
    except KeyError as exc:
        raise ParseError(str(exc.args[0]), 1, 1) from None


def cmd_classify(args, cfg):
    s = load_spectrum(args.spectrum, cfg.renormalize)
    rep = classify_report(s, cfg)
    if cfg.format == "csv":
        m, e = rep["membership"], rep["extremality"]
        row = {"kind": m["kind"], "active": m["active"], "l1": m["l1"], "l2": m["l2"],
               "min_eig_L1": m["min_eig_L1"], "min_eig_L2": m["min_eig_L2"], "corner": m["corner"],
               "extremality": e["kind"], "spectrum": " ".join(rep["spectrum"])}
        _emit(_csv([row], list(row)), cfg)
    else:
        _emit(dumps(rep), cfg)
    return 2 if rep["membership"]["kind"] == Kind.NOT_AP.value else 0


def cmd_sweep(args, cfg):
    if cfg.steps < 2:
        raise ParseError("--steps must be at least 2")
    _emit(_table(sweep_rows(_families(args.selector), cfg), SWEEP_COLUMNS, cfg), cfg)
    return 0


def cmd_export(args, cfg):
    # every row, including the non-extreme branch and the special points
    _emit(_table(sweep_rows(fam.list_families(), cfg), SWEEP_COLUMNS, cfg), cfg)
    return 0


def cmd_limits(args, cfg):
    fs = fam.list_families() if args.selector == "all" else _families(args.selector)
    _emit(_table(limit_rows(fs, args.eps), LIMIT_COLUMNS, cfg), cfg)
    return 0


def cmd_decompose(args, cfg):
    _emit(dumps(decompose_report(load_spectrum(args.spectrum, cfg.renormalize), cfg)), cfg)
    return 0


def cmd_oracle(args, cfg):
    s = load_spectrum(args.spectrum, cfg.renormalize)
    rep = mc_ppt_scan(s, cfg.samples, cfg.seed).to_dict()
    rep["spectrum"] = spectrum_to_json(s)
    _emit(dumps(rep), cfg)
    return 0


def cmd_verify(args, cfg):
    only = [k for item in (args.only or []) for k in item.split(",") if k]
    for k in only:
        if k not in acceptance.KEYS:
            raise ParseError(f"unknown criterion {k!r}; choose from {', '.join(acceptance.KEYS)}")
    acfg = acceptance.AcceptanceConfig(det_tol=cfg.det_tol, seed=cfg.seed or acceptance.AcceptanceConfig.seed,
                                       mc_samples=cfg.samples)
    results = acceptance.run_acceptance(only, acfg)
    for r in results:
        print(r.line())
        for f in r.failures:
            print(f"    {f}")
    if cfg.out:
        _emit(dumps([r.to_dict() for r in results]), cfg)
    return 0 if all(r.passed for r in results) else 1


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="JSON file with RunConfig fields")
    common.add_argument("--det-tol", type=float)
    common.add_argument("--psd-tol", type=float)
    common.add_argument("--rank-tol", type=float)
    common.add_argument("--group-tol", type=float)
    common.add_argument("--seed", type=int)
    common.add_argument("--samples", type=int)
    common.add_argument("--steps", type=int)
    common.add_argument("--format", choices=("json", "csv"))
    common.add_argument("--out", help=f"output file; relative paths go under ${OUTPUT_DIR_ENV} if set")
    common.add_argument("--no-renormalize", dest="renormalize", action="store_const", const=False)

    p = argparse.ArgumentParser(prog="absppt", description="Absolutely-PPT spectra of two qutrits.")
    sub = p.add_subparsers(dest="command", required=True)
    c = sub.add_parser("classify", parents=[common], help="membership and extremality verdicts")
    c.add_argument("spectrum")
    c.set_defaults(func=cmd_classify)
    c = sub.add_parser("sweep", parents=[common], help="evaluate families across their c range")
    c.add_argument("selector", help="all, nuK, nu{a,b,c} or nu{a,b,c}^(v)")
    c.set_defaults(func=cmd_sweep)
    c = sub.add_parser("limits", parents=[common], help="distances to the tabulated limits")
    c.add_argument("selector", nargs="?", default="all")
    c.add_argument("--eps", type=float, default=1e-8)
    c.set_defaults(func=cmd_limits)
    c = sub.add_parser("decompose", parents=[common], help="non-extremality witness")
    c.add_argument("spectrum")
    c.set_defaults(func=cmd_decompose)
    c = sub.add_parser("oracle", help="randomized checks")
    osub = c.add_subparsers(dest="oracle_command", required=True)
    c = osub.add_parser("scan", parents=[common], help="random-unitary partial-transpose scan")
    c.add_argument("--spectrum", required=True)
    c.set_defaults(func=cmd_oracle)
    c = sub.add_parser("verify", parents=[common], help="run the acceptance criteria")
    c.add_argument("--only", action="append", help=f"criterion keys: {', '.join(acceptance.KEYS)}")
    c.set_defaults(func=cmd_verify)
    c = sub.add_parser("export", parents=[common], help="every family row as CSV or JSON")
    c.set_defaults(func=cmd_export)
    return p


def make_config(args) -> RunConfig:
    cfg = RunConfig.load(args.config) if args.config else RunConfig()
    overrides = {f.name: getattr(args, f.name) for f in fields(RunConfig)
                 if getattr(args, f.name, None) is not None}
    return replace(cfg, **overrides)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = make_config(args)
        return args.func(args, cfg)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (SpectrumError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
