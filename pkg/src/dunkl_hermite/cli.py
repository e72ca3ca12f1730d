"""
Command-line interface: ``hermite verify | table | export-basis | quad-selftest``.

Settings come from flags, then a JSON ``--config`` file, then defaults.
Exit codes: 0 success, 1 failed checks, 2 usage or config error,
3 internal inconsistency.
"""
from __future__ import annotations

import argparse
import json
import math
import sys
from fractions import Fraction
from pathlib import Path
from typing import List, Optional

import numpy as np

from .clifford import format_rational, parse_rational
from .errors import ConfigError, DunklHermiteError, InternalConsistencyError
from .hermite import hermite_generate
from .integrate import gamma_norm, inner_product_H
from .monogenic import module_basis, orthonormalize_Z2
from .numeric import MAX_ORDER, quad_rule
from .reflection import from_config, normalize_family
from .verify import FAIL, VerifyConfig, run_verification

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_INTERNAL = 0, 1, 2, 3

DEFAULTS = {
    "family": "Z2^d",
    "d": 2,
    "m": None,
    "kappa": "1/2,1/3",
    "n": None,
    "max_n": 3,
    "min_s": 0,
    "max_s": 8,
    "quad_order": None,
    "mc_samples": 1_000_000,
    "seed": 0,
    "jobs": 1,
    "out": None,
    "format": "text",
}


def _add_common(p: argparse.ArgumentParser) -> None:
    # default=SUPPRESS keeps unset flags out of the namespace, so the config
    # file can fill them
    S = argparse.SUPPRESS
    p.add_argument("--config", default=S, help="JSON file with any of the flag names as keys")
    p.add_argument("--out", default=S, help="directory for report files")
    p.add_argument("--seed", type=int, default=S)
    p.add_argument("--jobs", type=int, default=S, help="worker processes (one task per n)")
    p.add_argument("--format", choices=("json", "text"), default=S, help="stdout format")
    p.add_argument("--family", default=S, help="Z2^d, A, B or I2")
    p.add_argument("--d", type=int, default=S, help="dimension (Z2^d, A, B)")
    p.add_argument("--m", type=int, default=S, help="dihedral order parameter for I2")
    p.add_argument("--kappa", default=S, help="comma-separated rationals, e.g. 1/2,1/3")
    p.add_argument("--n", default=S, help="comma-separated degrees of P_n (overrides --max-n)")
    p.add_argument("--max-n", dest="max_n", type=int, default=S)
    p.add_argument("--min-s", dest="min_s", type=int, default=S)
    p.add_argument("--max-s", dest="max_s", type=int, default=S)
    p.add_argument("--quad-order", dest="quad_order", type=int, default=S)
    p.add_argument("--mc-samples", dest="mc_samples", type=int, default=S)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hermite",
                                     description="Dunkl-Clifford-Hermite polynomials: tables and verification")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_text in (("verify", "run the verification suite"),
                            ("table", "tabulate H_s with radial coefficients and norms"),
                            ("export-basis", "export a right-module basis of M_n"),
                            ("quad-selftest", "check the generalized Gauss-Hermite rules")):
        _add_common(sub.add_parser(name, help=help_text))
    return parser


# -- settings -------------------------------------------------------------

def resolve_settings(ns: argparse.Namespace) -> dict:
    settings = dict(DEFAULTS)
    cfg_path = getattr(ns, "config", None)
    if cfg_path:
        try:
            data = json.loads(Path(cfg_path).read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError(f"cannot read config file {cfg_path}: {exc}") from exc
        if not isinstance(data, dict):
            raise ConfigError("config file must hold a JSON object")
        for key, value in data.items():
            key = key.replace("-", "_")
            if key not in DEFAULTS:
                raise ConfigError(f"unknown config key {key!r}")
            settings[key] = value
    for key in DEFAULTS:
        if hasattr(ns, key):
            settings[key] = getattr(ns, key)
    return settings


def _kappa_list(value) -> List[str]:
    if isinstance(value, (list, tuple)):
        items = [str(v) for v in value]
    else:
        items = [k.strip() for k in str(value).split(",") if k.strip()]
    if not items:
        raise ConfigError("kappa must not be empty")
    try:
        return [format_rational(parse_rational(k)) for k in items]
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise ConfigError(f"bad kappa value: {exc}") from exc


def _n_values(settings: dict) -> List[int]:
    n = settings["n"]
    if n is None:
        return list(range(int(settings["max_n"]) + 1))
    if isinstance(n, int):
        return [n]
    if isinstance(n, list):
        return [int(v) for v in n]
    try:
        return [int(v) for v in str(n).split(",") if v.strip()]
    except ValueError as exc:
        raise ConfigError(f"bad --n value {n!r}") from exc


def group_config(settings: dict) -> dict:
    family = normalize_family(settings["family"])
    cfg = {"family": family, "kappa": _kappa_list(settings["kappa"])}
    if family == "I2":
        if settings["m"] is None:
            raise ConfigError("I2 needs --m")
        cfg["m"] = int(settings["m"])
    else:
        cfg["d"] = int(settings["d"])
    return cfg


def verify_config(settings: dict) -> VerifyConfig:
    cfg = VerifyConfig(group=group_config(settings), n_values=_n_values(settings),
                       min_s=int(settings["min_s"]), max_s=int(settings["max_s"]),
                       quad_order=settings["quad_order"], mc_samples=int(settings["mc_samples"]),
                       seed=int(settings["seed"]))
    cfg.validate()
    return cfg


def _emit(settings: dict, stem: str, payload: dict, text: str) -> None:
    json_text = json.dumps(payload, indent=2, sort_keys=True) + "\n"
    if settings["out"]:
        out = Path(settings["out"])
        out.mkdir(parents=True, exist_ok=True)
        (out / f"{stem}.json").write_text(json_text)
        (out / f"{stem}.txt").write_text(text)
    sys.stdout.write(json_text if settings["format"] == "json" else text)


# -- commands -------------------------------------------------------------

def cmd_verify(settings: dict) -> int:
    cfg = verify_config(settings)
    jobs = int(settings["jobs"])
    if jobs < 1:
        raise ConfigError("--jobs must be at least 1")
    report = run_verification(cfg, jobs=jobs)
    _emit(settings, "report", report.to_json(), report.to_text())
    return EXIT_FAIL if report.failures else EXIT_OK


def build_table(cfg: VerifyConfig) -> dict:
    rd = from_config(cfg.group)
    entries = []
    s_values = list(range(cfg.min_s, cfg.max_s + 1))
    for n in cfg.n_values:
        basis = module_basis(rd, n, seed=cfg.seed)
        if rd.is_z2 and basis.elements:
            basis = orthonormalize_Z2(basis)
        for j, pn in enumerate(basis.elements):
            rows = []
            if s_values:
                fam = hermite_generate(rd, pn, s_values[-1])
                for s in s_values:
                    row = {"s": s, "poly": fam.polys[s].to_json(),
                           "radial": [format_rational(c) for c in fam.radial[s]],
                           "norm_H": None, "gamma": None}
                    if rd.is_z2:
                        row["norm_H"] = str(inner_product_H(rd, fam.polys[s], fam.polys[s]))
                        row["gamma"] = str(gamma_norm(rd, fam.polys[s], pn, norm=basis.norms[j]))
                    rows.append(row)
            entries.append({"n": n, "generator": j, "P_n": pn.to_json(),
                            "sphere_norm": str(basis.norms[j]) if basis.norms else None,
                            "rows": rows})
    return {"group": rd.to_config(), "mu": format_rational(rd.mu),
            "s_range": [cfg.min_s, cfg.max_s], "entries": entries}


def table_text(table: dict) -> str:
    lines = [f"group {table['group']}  mu = {table['mu']}"]
    header = f"{'n':>2} {'j':>2} {'s':>2}  {'radial coefficients a_0..a_s':<48} gamma_(s,mu,n)"
    body = []
    for e in table["entries"]:
        for r in e["rows"]:
            radial = "[" + ", ".join(r["radial"]) + "]"
            body.append(f"{e['n']:>2} {e['generator']:>2} {r['s']:>2}  {radial:<48} {r['gamma'] or '-'}")
    if body:
        lines.append(header)
        lines.extend(body)
    else:
        lines.append("(empty table)")
    return "\n".join(lines) + "\n"


def cmd_table(settings: dict) -> int:
    cfg = verify_config(settings)
    table = build_table(cfg)
    _emit(settings, "table", table, table_text(table))
    return EXIT_OK


def cmd_export_basis(settings: dict) -> int:
    cfg = verify_config(settings)
    rd = from_config(cfg.group)
    out = []
    lines = [f"group {rd.to_config()}  mu = {format_rational(rd.mu)}"]
    for n in cfg.n_values:
        basis = module_basis(rd, n, seed=cfg.seed)
        if rd.is_z2 and basis.elements:
            basis = orthonormalize_Z2(basis)
        out.append({"n": n, "rank": basis.rank, "expected_rank": basis.expected_rank,
                    "kernel_dim": basis.kernel_dim, "orthogonalized": basis.orthogonalized,
                    "elements": [p.to_json() for p in basis.elements],
                    "norms": [str(g) for g in basis.norms],
                    "gram": [[str(g) for g in row] for row in basis.gram] if basis.gram else None})
        lines.append(f"n={n}: rank {basis.rank} (expected {basis.expected_rank}), "
                     f"kernel dimension {basis.kernel_dim}")
        for j, p in enumerate(basis.elements):
            norm = f"  ||P||^2 = {basis.norms[j]}" if basis.norms else ""
            lines.append(f"  P_{j} = {p}{norm}")
    _emit(settings, "basis", {"group": rd.to_config(), "mu": format_rational(rd.mu), "bases": out},
          "\n".join(lines) + "\n")
    mismatch = any(b["rank"] != b["expected_rank"] for b in out)
    return EXIT_FAIL if mismatch else EXIT_OK


def quad_selftest(kappas: List[Fraction], orders: List[int]) -> List[dict]:
    records = []
    for k in kappas:
        for m in orders:
            rule = quad_rule(k, m)
            worst = 0.0
            for j in range(m):
                exact = math.exp(math.lgamma(j + float(k) + 0.5))
                worst = max(worst, abs(rule.integrate(rule.nodes ** (2 * j)) / exact - 1))
            odd = abs(rule.integrate(rule.nodes ** 3)) / math.exp(math.lgamma(float(k) + 2))
            ok = (worst <= 1e-12 and odd <= 1e-12 and bool(np.all(rule.weights > 0))
                  and bool(np.allclose(rule.nodes, -rule.nodes[::-1], rtol=0, atol=0)))
            records.append({"kappa": format_rational(Fraction(k)), "m": m, "max_rel_moment_error": worst,
                            "odd_moment": odd, "status": "pass" if ok else FAIL})
    return records


def cmd_quad_selftest(settings: dict) -> int:
    kappas = [parse_rational(k) for k in _kappa_list(settings["kappa"])]
    if any(k < 0 for k in kappas):
        raise ConfigError("kappa must be nonnegative")
    m = settings["quad_order"]
    orders = [int(m)] if m is not None else [1, 2, 8, 16, 32, MAX_ORDER]
    if any(not 1 <= o <= MAX_ORDER for o in orders):
        raise ConfigError(f"quadrature order must be in 1..{MAX_ORDER}")
    records = quad_selftest(kappas, orders)
    lines = [f"{r['status']:<5} kappa={r['kappa']:<6} m={r['m']:<3} "
             f"moment err {r['max_rel_moment_error']:.2e}  odd {r['odd_moment']:.1e}" for r in records]
    _emit(settings, "quad_selftest", {"records": records}, "\n".join(lines) + "\n")
    return EXIT_FAIL if any(r["status"] == FAIL for r in records) else EXIT_OK


COMMANDS = {"verify": cmd_verify, "table": cmd_table, "export-basis": cmd_export_basis,
            "quad-selftest": cmd_quad_selftest}


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    ns = parser.parse_args(argv)
    try:
        settings = resolve_settings(ns)
        return COMMANDS[ns.command](settings)
    except InternalConsistencyError as exc:
        print(f"internal inconsistency: {exc}", file=sys.stderr)
        if exc.witness is not None:
            print(f"witness: {exc.witness}", file=sys.stderr)
        return EXIT_INTERNAL
    except (DunklHermiteError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
