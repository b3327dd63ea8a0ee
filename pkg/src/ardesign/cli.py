"""Command line front end: ``design``, ``table`` and ``variance`` subcommands.

Exit codes: 0 success, 1 computation error, 2 input error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import asdict, dataclass, field
from typing import Optional

import numpy as np

from . import tables
from .ar_process import Ar1Form, Form1, Form2, Form3, discretize
from .asymptotic_design import continuous_design, dstar
from .covariance import EquidistantGrid
from .discretizer import assemble_k2, assemble_k4, normalize_density
from .errors import OffGridError
from .estimators import Constant, Exponential, Monomial, SignedDesign, blue_variance, lse_variance, slse_variance, wlse_variance

KERNELS = ("ar1", "ar2:exp", "ar2:cos", "ar2:lin")


class InputError(Exception):
    """Bad configuration or input file; maps to exit code 2."""


@dataclass
class ScenarioConfig:
    f: str = "const"
    kernel: str = "ar1"
    lam: list = field(default_factory=lambda: [1.0])
    q: Optional[float] = None
    interval: list = field(default_factory=lambda: [0.0, 1.0])
    N: int = 101
    K: list = field(default_factory=list)
    format: Optional[str] = None

    @classmethod
    def from_dict(cls, d):
        d = dict(d)
        if "lambda" in d:
            d["lam"] = d.pop("lambda")
        unknown = set(d) - set(cls.__dataclass_fields__)
        if unknown:
            raise InputError(f"unknown config keys: {', '.join(sorted(unknown))}")
        cfg = cls(**d)
        return cfg.normalized()

    def normalized(self):
        try:
            lam = self.lam if isinstance(self.lam, (list, tuple)) else [self.lam]
            self.lam = [float(x) for x in lam]
            self.q = None if self.q is None else float(self.q)
            self.interval = [float(x) for x in self.interval]
            self.N = int(self.N)
            self.K = sorted({int(k) for k in self.K})
        except (TypeError, ValueError) as exc:
            raise InputError(f"malformed config: {exc}") from exc
        if len(self.interval) != 2:
            raise InputError("interval must be two numbers A,B")
        if self.kernel not in KERNELS:
            raise InputError(f"unknown kernel {self.kernel!r}; valid kernels: {', '.join(KERNELS)}")
        if any(k < 0 for k in self.K):
            raise InputError("K values must be nonnegative")
        return self

    def to_dict(self):
        d = asdict(self)
        d["lambda"] = d.pop("lam")
        return d

    def regression_fn(self):
        name = self.f.strip().lower()
        if name in ("const", "1", "constant"):
            return Constant()
        if name in ("exp", "e^t"):
            return Exponential()
        if name.startswith("mono:"):
            try:
                return Monomial(float(name.split(":", 1)[1]))
            except ValueError as exc:
                raise InputError(f"bad monomial exponent in {self.f!r}") from exc
        raise InputError(f"unknown regression function {self.f!r} (use const, exp or mono:<alpha>)")

    def error_form(self):
        try:
            if self.kernel == "ar1":
                return Ar1Form(self.lam[0])
            if self.kernel == "ar2:lin":
                return Form3(self.lam[0])
            if self.kernel == "ar2:exp":
                if len(self.lam) != 2:
                    raise InputError("ar2:exp needs --lambda l1,l2")
                return Form1(*self.lam)
            if self.q is None:
                raise InputError("ar2:cos needs --q")
            return Form2(self.lam[0], self.q)
        except ValueError as exc:
            raise InputError(str(exc)) from exc

    def grid(self):
        try:
            return EquidistantGrid(self.interval[0], self.interval[1], self.N)
        except ValueError as exc:
            raise InputError(str(exc)) from exc


def _floats(text):
    return [float(x) for x in text.split(",") if x.strip()]


def _ints(text):
    return [int(x) for x in text.split(",") if x.strip()]


def _add_scenario_args(p):
    p.add_argument("--config", help="JSON file with scenario settings; flags override it")
    p.add_argument("--f", dest="f", help="regression function: const, exp, mono:<alpha>")
    p.add_argument("--kernel", choices=KERNELS)
    p.add_argument("--lambda", dest="lam", type=_floats, help="rate(s), comma separated")
    p.add_argument("--q", type=float, help="oscillation frequency for ar2:cos")
    p.add_argument("--interval", type=_floats, help="A,B")
    p.add_argument("--N", type=int, help="number of grid points")
    p.add_argument("--K", type=_ints, help="comma separated list of interior sizes")


def _add_output_args(p):
    p.add_argument("--format", choices=("csv", "json"))
    p.add_argument("--precision", type=int, default=8, help="significant digits (default 8)")


def build_parser():
    parser = argparse.ArgumentParser(prog="ardesign", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("design", help="continuous and executable designs for a scenario")
    _add_scenario_args(p)
    _add_output_args(p)

    p = sub.add_parser("table", help="reproduce one of the reference tables")
    p.add_argument("name", help="table1, table2, table3 or table4")
    p.add_argument("--lambda", dest="lam", type=float, default=1.0, help="rate for table1/table2")
    p.add_argument("--interval", type=_floats, help="A,B for table1/table2 (default 0.1,1.1)")
    p.add_argument("--jobs", type=int, default=1)
    _add_output_args(p)

    p = sub.add_parser("variance", help="variances for a user-supplied design")
    p.add_argument("design_file", help="JSON or CSV file with points and weights")
    _add_scenario_args(p)
    _add_output_args(p)
    return parser


def load_config(args) -> ScenarioConfig:
    base = {}
    if args.config:
        try:
            with open(args.config) as fh:
                base = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise InputError(f"cannot read config {args.config}: {exc}") from exc
        if not isinstance(base, dict):
            raise InputError("config file must hold a JSON object")
    for key in ("f", "kernel", "lam", "q", "interval", "N", "K", "format"):
        val = getattr(args, key, None)
        if val is not None:
            base["lam" if key == "lam" else key] = val
    base.pop("precision", None)
    return ScenarioConfig.from_dict(base)


# ---------------------------------------------------------------------------
# output


def _num(x, precision):
    if x is None:
        return ""
    return format(float(x) + 0.0, f".{precision}g")


def _emit(rows, fmt, out):
    if fmt == "json":
        json.dump(rows, out, indent=2)
        out.write("\n")
        return
    if not rows:
        return
    fields = list(rows[0])
    writer = csv.DictWriter(out, fieldnames=fields, lineterminator="\n")
    writer.writeheader()
    for r in rows:
        writer.writerow({k: (json.dumps(v) if isinstance(v, (list, dict)) else v) for k, v in r.items()})


def _design_payload(cfg, precision):
    f, form, grid = cfg.regression_fn(), cfg.error_form(), cfg.grid()
    A, B = grid.A, grid.B
    design = continuous_design(f, form, A, B)
    fmt = lambda x: _num(x, precision)  # noqa: E731
    cont = {
        "order": design.order,
        "P_A": fmt(design.P_A), "P_B": fmt(design.P_B),
        "Q_A": fmt(design.Q_A), "Q_B": fmt(design.Q_B),
        "dstar": fmt(dstar(design, f)),
        "density": [{"t": fmt(t), "p": fmt(design.p(t))} for t in np.linspace(A, B, 11)],
    }
    designs = []
    if cfg.K:
        nd = normalize_density(design) if any(k > 0 for k in cfg.K) else None
        if nd is not None:
            cont["kappa"] = fmt(nd.kappa)
        for K in cfg.K:
            built = [assemble_k2(design, nd, K, grid)]
            if design.order == 2:
                built.append(assemble_k4(design, nd, K, grid))
            for ex in built:
                designs.append({
                    "K": K, "variant": ex.variant,
                    "points": [fmt(t) for t in ex.points],
                    "weights": [fmt(w) for w in ex.weights],
                    "signs": [int(s) for s in ex.signs],
                })
    return {"config": cfg.to_dict(), "continuous": cont, "designs": designs}


def cmd_design(cfg, precision, out):
    payload = _design_payload(cfg, precision)
    if (cfg.format or "json") == "json":
        json.dump(payload, out, indent=2)
        out.write("\n")
        return
    rows = []
    c = payload["continuous"]
    for key in ("P_A", "P_B", "Q_A", "Q_B", "kappa", "dstar"):
        if key in c:
            rows.append({"section": "continuous", "K": "", "variant": "", "name": key, "t": "", "value": c[key], "sign": ""})
    for s in c["density"]:
        rows.append({"section": "density", "K": "", "variant": "", "name": "p", "t": s["t"], "value": s["p"], "sign": ""})
    for d in payload["designs"]:
        n_int = len(d["signs"])
        lead = (len(d["points"]) - n_int) // 2
        for i, (t, w) in enumerate(zip(d["points"], d["weights"])):
            sign = d["signs"][i - lead] if lead <= i < lead + n_int else ""
            rows.append({"section": "design", "K": d["K"], "variant": d["variant"], "name": "W", "t": t, "value": w, "sign": sign})
    _emit(rows, "csv", out)


def cmd_table(name, lam, interval, jobs, fmt, precision, out):
    A, B = (interval if interval else (None, None))
    rows = tables.build_table(name, lam=lam, A=A, B=B, jobs=jobs)
    rendered = []
    for r in rows:
        row = {}
        for k, v in r.items():
            if k == "points":
                row[k] = ", ".join(f"{x:.2f}" for x in v)
            elif k in tables.PRINTED_DECIMALS:
                row[k] = "" if v is None else repr(float(v))
                row[k + "_rounded"] = "" if v is None else f"{v:.{tables.PRINTED_DECIMALS[k]}f}"
            elif isinstance(v, float) and k not in ("lambda", "A", "B"):
                row[k] = _num(v, precision)
            else:
                row[k] = v
        rendered.append(row)
    _emit(rendered, fmt or "csv", out)


def read_design_file(path):
    """List of ``(points, weights)`` pairs from a JSON or CSV design file."""
    try:
        with open(path) as fh:
            text = fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    try:
        if text.lstrip().startswith(("{", "[")):
            data = json.loads(text)
            items = data.get("designs", [data]) if isinstance(data, dict) else data
            out = [([float(x) for x in d["points"]], [float(x) for x in d["weights"]]) for d in items]
        else:
            reader = csv.DictReader(io.StringIO(text))
            pts, wts = [], []
            for row in reader:
                pts.append(float(row["point"]))
                wts.append(float(row["weight"]))
            out = [(pts, wts)]
    except (ValueError, KeyError, TypeError, AttributeError) as exc:
        raise InputError(f"malformed design file {path}: {exc}") from exc
    if not out or any(len(p) != len(w) or not p for p, w in out):
        raise InputError(f"malformed design file {path}: points and weights must be non-empty and equal length")
    return out


def cmd_variance(cfg, path, precision, out):
    f, form, grid = cfg.regression_fn(), cfg.error_form(), cfg.grid()
    kernel = discretize(form, grid.delta)
    rows = []
    for i, (pts, wts) in enumerate(read_design_file(path)):
        idx = []
        for t in pts:
            try:
                idx.append(grid.index_of(t, rtol=1e-6))
            except OffGridError as exc:
                raise InputError(f"off-grid point {t!r} in design {i}") from exc
        order = np.argsort(idx)
        if len(set(idx)) != len(idx):
            raise InputError(f"duplicate points in design {i}")
        t = np.array([grid.point(j) for j in np.asarray(idx)[order]])
        w = np.asarray(wts)[order]
        rows.append({
            "design": i,
            "n_points": len(t),
            "D_xi": _num(slse_variance(SignedDesign(t, w), f, kernel), precision),
            "var_blue": _num(blue_variance(t, f, kernel), precision),
            "var_lse": _num(lse_variance(t, f, kernel), precision),
            "var_wlse": _num(wlse_variance(t, w, f, kernel), precision),
        })
    _emit(rows, cfg.format or "json", out)


def main(argv=None, out=None):
    out = out or sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "table":
            if args.name not in tables.TABLE_NAMES:
                raise InputError(f"unknown table {args.name!r}; valid names: {', '.join(tables.TABLE_NAMES)}")
            cmd_table(args.name, args.lam, args.interval, args.jobs, args.format, args.precision, out)
            return 0
        cfg = load_config(args)
        # touch the builders first so malformed settings exit with 2
        cfg.regression_fn(), cfg.error_form(), cfg.grid()
        if args.command == "design":
            cmd_design(cfg, args.precision, out)
        else:
            cmd_variance(cfg, args.design_file, args.precision, out)
        return 0
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, ArithmeticError, np.linalg.LinAlgError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
