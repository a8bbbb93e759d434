"""Command-line front end: ``dimercorr <command> [options]``.

Every command prints one report (JSON object or CSV table) on stdout.  Exit
codes: 0 all checked tolerances hold, 1 bad arguments, 2 parameter outside
the admissible domain, 3 a tolerance check failed.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass

import numpy as np

from . import asymptotics, kernel, oracle_fms, toeplitz, wienerhopf
from .errors import CriticalPointError, DimerError, DomainError, SingularSymbolError
from .params import EPS_CRIT, compute_parameters

EXIT_OK, EXIT_PARSE, EXIT_DOMAIN, EXIT_TOLERANCE = 0, 1, 2, 3
ROUTE_TOL = 1e-7
FMS_MAX_N = 16
COMMANDS = ("exact", "asympt", "factor-check", "oracle-compare", "sweep", "constants")


class ParseError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ParseError(message)


@dataclass(frozen=True)
class RunConfig:
    command: str
    ts: tuple[float, ...]
    ns: tuple[int, ...]
    grid: int = 512
    format: str = "json"
    eps_crit: float = EPS_CRIT
    seed: int = 0
    limit: bool = False
    convention: str | None = None


def parse_t_range(text: str) -> tuple[float, ...]:
    try:
        a, b, step = (float(x) for x in text.split(":"))
    except ValueError:
        raise ParseError(f"--t-range expects a:b:step, got {text!r}") from None
    if step <= 0 or b < a:
        raise ParseError(f"empty t range {text!r}")
    count = int(np.floor((b - a) / step + 1e-9)) + 1
    return tuple(float(np.round(a + i * step, 12)) for i in range(count))


def parse_n_range(text: str) -> tuple[int, ...]:
    try:
        a, b = (int(x) for x in text.split(":"))
    except ValueError:
        raise ParseError(f"--n-range expects a:b, got {text!r}") from None
    if b < a or a < 1:
        raise ParseError(f"empty or invalid n range {text!r}")
    return tuple(range(a, b + 1))


DEFAULT_T = {"exact": (0.3,), "asympt": (0.3,), "factor-check": (0.3,),
             "oracle-compare": (0.2, 0.3, 0.6, 0.8), "sweep": (0.3,), "constants": (1.0,)}
DEFAULT_N = {"exact": (8,), "asympt": (20,), "oracle-compare": (4, 6, 8), "sweep": (8,)}


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="dimercorr", description=__doc__.splitlines()[0])
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("--t", type=float, action="append", help="weight t (repeatable)")
    p.add_argument("--t-range", help="a:b:step, inclusive")
    p.add_argument("--n", type=int, action="append", help="separation n (repeatable)")
    p.add_argument("--n-range", help="a:b, inclusive")
    p.add_argument("--grid", type=int, default=512, help="grid size for factorization checks")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--eps-crit", type=float, default=EPS_CRIT)
    p.add_argument("--seed", type=int, default=0, help="seed for random check points")
    p.add_argument("--limit", action="store_true", help="allow t = 1 (constants only)")
    p.add_argument("--convention", choices=asymptotics.CONVENTIONS,
                   help="leading-coefficient convention (default: exact; constants shows both)")
    return p


def parse_config(argv) -> RunConfig:
    a = build_parser().parse_args(argv)
    ts = list(a.t or [])
    if a.t_range:
        ts.extend(parse_t_range(a.t_range))
    ns = list(a.n or [])
    if a.n_range:
        ns.extend(parse_n_range(a.n_range))
    if a.grid < 64 or a.grid & (a.grid - 1):
        raise ParseError(f"--grid must be a power of two >= 64, got {a.grid}")
    if any(n < 1 for n in ns):
        raise ParseError("n must be >= 1")
    ranged = bool(a.t_range)
    ts = tuple(sorted(set(ts))) or DEFAULT_T[a.command]
    if ranged:
        # ranges step across t = 1/2; drop the excluded neighbourhood instead of failing
        kept = tuple(t for t in ts if abs(t - 0.5) > a.eps_crit)
        if len(kept) < len(ts):
            print(f"note: skipped t within {a.eps_crit} of 1/2", file=sys.stderr)
        ts = kept
    ns = tuple(sorted(set(ns))) or DEFAULT_N.get(a.command, (1,))
    return RunConfig(command=a.command, ts=ts, ns=ns, grid=a.grid, format=a.format,
                     eps_crit=a.eps_crit, seed=a.seed, limit=a.limit, convention=a.convention)


def _params(cfg: RunConfig, t: float):
    return compute_parameters(t, cfg.eps_crit, limit=cfg.limit and t == 1.0)


def _rel(a: float, b: float) -> float:
    return abs(a / b - 1)


def _routes(cfg: RunConfig, t: float, n: int) -> dict:
    _params(cfg, t)
    row = {"t": t, "n": n}
    vals = {}
    if n <= FMS_MAX_N:
        vals["k2_fms"] = oracle_fms.fms_k2(t, n)
    vals["k2_toeplitz"] = toeplitz.toeplitz_k2(t, n)
    vals["k2_fredholm"] = kernel.fredholm_k2(t, n)
    row.update(vals)
    v = list(vals.values())
    row["route_max_rel_diff"] = max(_rel(x, y) for x in v for y in v)
    row["ok"] = row["route_max_rel_diff"] < ROUTE_TOL
    return row


def cmd_exact(cfg: RunConfig) -> list[dict]:
    return [_routes(cfg, t, n) for t in cfg.ts for n in cfg.ns]


cmd_oracle_compare = cmd_exact


def cmd_asympt(cfg: RunConfig) -> list[dict]:
    rows = []
    conv = cfg.convention or "exact"
    for t in cfg.ts:
        P = _params(cfg, t)
        c = asymptotics.constants(P, conv)
        for n in cfg.ns:
            row = {"n": n, **c.as_dict()}
            row["k2_asymptotic"] = float(asymptotics.k2_asymptotic(P, n, c))
            if not cfg.limit or t < 1:
                row["k2_fredholm"] = kernel.fredholm_k2(t, n)
            rows.append(row)
    return rows


def cmd_factor_check(cfg: RunConfig) -> list[dict]:
    rows = []
    for t in cfg.ts:
        P = _params(cfg, t)
        rep = wienerhopf.factorization_report(P, N=cfg.grid, seed=cfg.seed)
        row = {"t": t, "grid": cfg.grid, **rep}
        row["ok"] = not wienerhopf.report_failures(rep)
        rows.append(row)
    return rows


def cmd_sweep(cfg: RunConfig) -> list[dict]:
    rows = []
    conv = cfg.convention or "exact"
    for t in cfg.ts:
        P = _params(cfg, t)
        c = asymptotics.constants(P, conv)
        for n in cfg.ns:
            rows.append({"t": t, "n": n, "regime": P.regime.value, "k2_inf": c.k2_inf,
                         "k2_fredholm": kernel.fredholm_k2(t, n),
                         "k2_asymptotic": float(asymptotics.k2_asymptotic(P, n, c))})
    return rows


def cmd_constants(cfg: RunConfig) -> list[dict]:
    rows = []
    convs = (cfg.convention,) if cfg.convention else asymptotics.CONVENTIONS
    for t in cfg.ts:
        P = _params(cfg, t)
        for conv in convs:
            c = asymptotics.constants(P, conv)
            row = c.as_dict()
            for k in ("C1", "C2", "C3", "C4"):
                if k in row:
                    row[k + "_half"] = row[k] / 2
            rows.append(row)
    return rows


HANDLERS = {"exact": cmd_exact, "asympt": cmd_asympt, "factor-check": cmd_factor_check,
            "oracle-compare": cmd_oracle_compare, "sweep": cmd_sweep, "constants": cmd_constants}


def _clean(v):
    if isinstance(v, (bool, np.bool_)):
        return bool(v)
    if isinstance(v, (int, np.integer)):
        return int(v)
    if isinstance(v, (float, np.floating)):
        return float(v)
    return v


def sort_rows(rows: list[dict]) -> list[dict]:
    return sorted(rows, key=lambda r: (r.get("t", 0.0), r.get("n", 0), str(r.get("convention", ""))))


def render(rows: list[dict], cfg: RunConfig, ok: bool) -> str:
    """Serialize deterministically; floats use the shortest round-trip repr."""
    rows = [{k: _clean(v) for k, v in r.items()} for r in sort_rows(rows)]
    if cfg.format == "json":
        doc = {"command": cfg.command, "ok": ok, "rows": rows}
        return json.dumps(doc, indent=2, sort_keys=True) + "\n"
    fields = sorted({k for r in rows for k in r})
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=fields, lineterminator="\n")
    w.writeheader()
    for r in rows:
        w.writerow({k: repr(v) if isinstance(v, float) else v for k, v in r.items()})
    return buf.getvalue()


def run(cfg: RunConfig) -> tuple[int, str]:
    rows = HANDLERS[cfg.command](cfg)
    ok = all(r.get("ok", True) for r in rows)
    return (EXIT_OK if ok else EXIT_TOLERANCE), render(rows, cfg, ok)


def main(argv=None) -> int:
    try:
        cfg = parse_config(sys.argv[1:] if argv is None else argv)
    except ParseError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_PARSE
    try:
        code, text = run(cfg)
    except (DomainError, CriticalPointError, SingularSymbolError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_DOMAIN
    except DimerError as e:
        print(f"tolerance failure: {e}", file=sys.stderr)
        return EXIT_TOLERANCE
    sys.stdout.write(text)
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
