"""Batch experiment runner.

Reads a flat JSON scenario, sweeps one parameter across the requested
engines, and writes CSV rows (stdout or a file). Powers and mean gains enter
in dB and are converted to linear once, at ingestion; rate targets are in
nats. Subcommands: analytic, simulate, asymptotic, sweep, validate, sdo.

Exit codes: 0 success, 1 config error, 2 validation failure, 3 numeric error.
"""
from __future__ import annotations

import argparse
import csv
import dataclasses
import json
import math
import sys
from dataclasses import dataclass
from typing import Sequence

from .analytic import sop_total
from .asymptotic import AsymptoticScaling, SdoInputs, sdo, sop_asym_total
from .montecarlo import TrialConfig, estimate_many
from .params import LinkSet, PowerPolicy, SchemeKind, SystemParams
from .quadrature import quadrature

_ENGINES = ("analytic", "asymptotic", "montecarlo")
_SWEEP_VARS = ("P_dB", "omega2_dB", "alpha1", "alphaJ", "K", "m")
_COLUMNS = ("sweep_var", "sweep_value", "scheme", "engine", "sop", "stderr", "trials", "sdo", "error")

_REQUIRED_KEYS = (
    "K", "mR", "mU", "mE",
    "omegaR_dB", "omega1_dB", "omega2_dB", "omegaE_dB",
    "P_dB", "R1_th", "R2_th", "R1_s", "R2_s",
)
_OPTIONAL_KEYS = ("sigma2", "alpha1", "alphaJ", "dpa", "scheme", "engine", "sweep", "trials", "seed", "quad_n", "out")


class ConfigError(ValueError):
    """A config file problem: missing key, bad type, or out-of-domain value."""


def _db_to_linear(db: float) -> float:
    return 10.0 ** (db / 10.0)


def _require_number(raw: dict, key: str) -> float:
    val = raw[key]
    if isinstance(val, bool) or not isinstance(val, (int, float)):
        raise ConfigError(f"{key} must be a number, got {val!r}")
    return float(val)


def _require_positive_int(raw: dict, key: str) -> int:
    val = raw[key]
    if isinstance(val, bool) or not isinstance(val, int) or val < 1:
        raise ConfigError(f"{key} must be a positive integer, got {val!r}")
    return val


@dataclass(frozen=True)
class ExperimentConfig:
    """A validated scenario plus sweep/engine/runtime selections."""

    params: SystemParams
    policy: PowerPolicy
    schemes: tuple[SchemeKind, ...]
    engines: tuple[str, ...]
    sweep_var: str | None
    sweep_values: tuple[float, ...]
    mc: TrialConfig
    quad_n: int
    out: str | None


def load_config(path: str) -> ExperimentConfig:
    """Parse and validate a flat JSON config; fill documented defaults."""
    try:
        with open(path, encoding="utf-8") as fh:
            raw = json.load(fh)
    except FileNotFoundError as exc:
        raise ConfigError(f"config file not found: {path}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config is not valid JSON: {exc}") from exc
    if not isinstance(raw, dict):
        raise ConfigError("config must be a JSON object")

    known = set(_REQUIRED_KEYS) | set(_OPTIONAL_KEYS)
    for key in raw:
        if key not in known:
            raise ConfigError(f"unknown config key: {key}")
    for key in _REQUIRED_KEYS:
        if key not in raw:
            raise ConfigError(f"missing config key: {key}")

    k = _require_positive_int(raw, "K")
    m_r = _require_positive_int(raw, "mR")
    m_u = _require_positive_int(raw, "mU")
    m_e = _require_positive_int(raw, "mE")

    p_lin = _db_to_linear(_require_number(raw, "P_dB"))
    sigma2 = float(raw.get("sigma2", 1.0))
    if not sigma2 > 0:
        raise ConfigError(f"sigma2 must be positive, got {sigma2!r}")
    rates = {key: _require_number(raw, key) for key in ("R1_th", "R2_th", "R1_s", "R2_s")}
    for key in ("R1_th", "R2_th"):
        if rates[key] < 0:
            raise ConfigError(f"{key} must be nonnegative, got {rates[key]!r}")
    for key in ("R1_s", "R2_s"):
        if not rates[key] > 0:
            raise ConfigError(f"{key} must be positive, got {rates[key]!r}")

    links = LinkSet(
        source_relay=_nakagami(m_r, _db_to_linear(_require_number(raw, "omegaR_dB"))),
        relay_user1=_nakagami(m_u, _db_to_linear(_require_number(raw, "omega1_dB"))),
        relay_user2=_nakagami(m_u, _db_to_linear(_require_number(raw, "omega2_dB"))),
        relay_eaves=_nakagami(m_e, _db_to_linear(_require_number(raw, "omegaE_dB"))),
    )
    params = SystemParams(
        K=k, links=links, P_S=p_lin, P_R=p_lin, sigma2=sigma2,
        R1_th=rates["R1_th"], R2_th=rates["R2_th"],
        R1_s=rates["R1_s"], R2_s=rates["R2_s"],
    )

    alpha_j = float(raw.get("alphaJ", 0.0))
    if not 0.0 <= alpha_j < 1.0:
        raise ConfigError(f"alphaJ must be in [0,1), got {alpha_j!r}")
    has_alpha1 = "alpha1" in raw
    has_dpa = "dpa" in raw
    if has_alpha1 and has_dpa:
        raise ConfigError("give either alpha1 (fixed allocation) or dpa (dynamic), not both")
    if has_alpha1:
        alpha1 = _require_number(raw, "alpha1")
        if not 0.0 < alpha1 < 1.0:
            raise ConfigError(f"alpha1 must be in (0,1), got {alpha1!r}")
        policy = PowerPolicy.fixed(alpha1, alphaJ=alpha_j)
    elif has_dpa:
        dpa = raw["dpa"]
        if not isinstance(dpa, dict) or set(dpa) != {"mu", "varpi"}:
            raise ConfigError("dpa must be an object with keys mu and varpi")
        mu, varpi = float(dpa["mu"]), float(dpa["varpi"])
        if not mu > 1:
            raise ConfigError(f"dpa.mu must exceed 1, got {mu!r}")
        if not 0.0 < varpi < 1.0:
            raise ConfigError(f"dpa.varpi must be in (0,1), got {varpi!r}")
        policy = PowerPolicy.dynamic(mu, varpi, alphaJ=alpha_j)
    else:
        raise ConfigError("missing config key: alpha1 or dpa")

    schemes = _parse_schemes(raw.get("scheme", [s.value for s in SchemeKind]))
    engines = _parse_engines(raw.get("engine", ["analytic"]))
    sweep_var, sweep_values = _parse_sweep(raw.get("sweep"), policy)

    trials = raw.get("trials", 1_000_000)
    seed = raw.get("seed", 42)
    try:
        mc = TrialConfig(trials=trials, seed=seed)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    quad_n = raw.get("quad_n", 300)
    if isinstance(quad_n, bool) or not isinstance(quad_n, int) or quad_n < 2:
        raise ConfigError(f"quad_n must be an integer >= 2, got {quad_n!r}")
    out = raw.get("out")
    if out is not None and not isinstance(out, str):
        raise ConfigError(f"out must be a string path, got {out!r}")

    return ExperimentConfig(
        params=params, policy=policy, schemes=schemes, engines=engines,
        sweep_var=sweep_var, sweep_values=sweep_values, mc=mc, quad_n=quad_n, out=out,
    )


def _nakagami(m: int, omega: float):
    from .channels import NakagamiParams

    return NakagamiParams(m=m, omega=omega)


def _parse_schemes(entries) -> tuple[SchemeKind, ...]:
    if not isinstance(entries, list) or not entries:
        raise ConfigError("scheme must be a nonempty list")
    out = []
    for entry in entries:
        try:
            out.append(SchemeKind(str(entry).lower()))
        except ValueError as exc:
            raise ConfigError(f"unknown scheme: {entry!r}") from exc
    return tuple(dict.fromkeys(out))


def _parse_engines(entries) -> tuple[str, ...]:
    if not isinstance(entries, list) or not entries:
        raise ConfigError("engine must be a nonempty list")
    for entry in entries:
        if entry not in _ENGINES:
            raise ConfigError(f"unknown engine: {entry!r} (choose from {', '.join(_ENGINES)})")
    return tuple(dict.fromkeys(entries))


def _parse_sweep(block, policy: PowerPolicy) -> tuple[str | None, tuple[float, ...]]:
    if block is None:
        return None, ()
    if not isinstance(block, dict) or set(block) != {"var", "values"}:
        raise ConfigError("sweep must be an object with keys var and values")
    var = block["var"]
    if var not in _SWEEP_VARS:
        raise ConfigError(f"sweep.var must be one of {', '.join(_SWEEP_VARS)}, got {var!r}")
    values = block["values"]
    if not isinstance(values, list):
        raise ConfigError("sweep.values must be a list")
    checked = []
    for val in values:
        if isinstance(val, bool) or not isinstance(val, (int, float)):
            raise ConfigError(f"sweep value must be a number, got {val!r}")
        if var == "alpha1":
            if policy.is_dynamic:
                raise ConfigError("sweep.var alpha1 requires a fixed power allocation")
            if not 0.0 < val < 1.0:
                raise ConfigError(f"alpha1 must be in (0,1), got {val!r}")
        elif var == "alphaJ" and not 0.0 <= val < 1.0:
            raise ConfigError(f"alphaJ must be in [0,1), got {val!r}")
        elif var in ("K", "m") and (int(val) != val or val < 1):
            raise ConfigError(f"{var} must be a positive integer, got {val!r}")
        checked.append(float(val))
    return var, tuple(checked)


def _point_scenario(cfg: ExperimentConfig, value: float | None) -> tuple[SystemParams, PowerPolicy]:
    """The scenario at one sweep point; value None means the base config."""
    params, policy = cfg.params, cfg.policy
    if value is None or cfg.sweep_var is None:
        return params, policy
    var = cfg.sweep_var
    if var == "P_dB":
        p_lin = _db_to_linear(value)
        return dataclasses.replace(params, P_S=p_lin, P_R=p_lin), policy
    if var == "omega2_dB":
        links = params.links
        omega2 = _db_to_linear(value)
        eps1 = links.relay_user1.omega / links.relay_user2.omega
        eps2 = links.source_relay.omega / links.relay_user2.omega
        new_links = LinkSet(
            source_relay=_nakagami(links.source_relay.m, eps2 * omega2),
            relay_user1=_nakagami(links.relay_user1.m, eps1 * omega2),
            relay_user2=_nakagami(links.relay_user2.m, omega2),
            relay_eaves=links.relay_eaves,
        )
        return dataclasses.replace(params, links=new_links), policy
    if var == "alpha1":
        return params, PowerPolicy.fixed(value, alphaJ=policy.alphaJ)
    if var == "alphaJ":
        return params, dataclasses.replace(policy, alphaJ=value)
    if var == "K":
        return dataclasses.replace(params, K=int(value)), policy
    links = params.links
    new_links = LinkSet(
        source_relay=_nakagami(int(value), links.source_relay.omega),
        relay_user1=_nakagami(int(value), links.relay_user1.omega),
        relay_user2=_nakagami(int(value), links.relay_user2.omega),
        relay_eaves=_nakagami(int(value), links.relay_eaves.omega),
    )
    return dataclasses.replace(params, links=new_links), policy


def _scaling_for(params: SystemParams) -> AsymptoticScaling:
    omega2 = params.links.relay_user2.omega
    return AsymptoticScaling(
        epsilon1=params.links.relay_user1.omega / omega2,
        epsilon2=params.links.source_relay.omega / omega2,
        omega2=omega2,
    )


def _blank_row(cfg: ExperimentConfig, value: float, scheme: SchemeKind, engine: str) -> dict:
    var = cfg.sweep_var if cfg.sweep_var is not None else "P_dB"
    return {
        "sweep_var": var, "sweep_value": value, "scheme": scheme.value, "engine": engine,
        "sop": "", "stderr": "", "trials": "", "sdo": "", "error": "",
    }


def run_sweep(cfg: ExperimentConfig, engines: Sequence[str] | None = None) -> list[dict]:
    """One row per (sweep value, scheme, engine); failures land in the error column."""
    engines = tuple(engines) if engines is not None else cfg.engines
    if cfg.sweep_var is None:
        values = [10.0 * math.log10(cfg.params.P_S)]
    else:
        values = list(cfg.sweep_values)
    rows: list[dict] = []
    for value in values:
        point_value = None if cfg.sweep_var is None else value
        params, policy = _point_scenario(cfg, point_value)
        for engine in engines:
            if engine == "montecarlo":
                rows.extend(_mc_rows(cfg, value, params, policy))
                continue
            for scheme in cfg.schemes:
                row = _blank_row(cfg, value, scheme, engine)
                try:
                    if engine == "analytic":
                        res = sop_total(params, policy, scheme, quadrature(cfg.quad_n))
                        row["sop"] = res.value
                    else:
                        scaling = _scaling_for(params)
                        row["sop"] = sop_asym_total(params, policy, scheme, scaling, quadrature(cfg.quad_n))
                        if policy.is_dynamic:
                            inputs = SdoInputs(
                                K=params.K,
                                m_r=params.links.source_relay.m,
                                m_u=params.links.m_u,
                                varpi=policy.varpi,
                            )
                            row["sdo"] = sdo(scheme, inputs)
                except Exception as exc:  # noqa: BLE001 - a bad point must not kill the sweep
                    row["error"] = str(exc)
                rows.append(row)
    rows.sort(key=lambda r: (r["sweep_value"], r["scheme"], r["engine"]))
    return rows


def _mc_rows(cfg: ExperimentConfig, value: float, params: SystemParams, policy: PowerPolicy) -> list[dict]:
    rows = [_blank_row(cfg, value, scheme, "montecarlo") for scheme in cfg.schemes]
    try:
        estimates = estimate_many(params, policy, cfg.schemes, cfg.mc)
    except Exception as exc:  # noqa: BLE001 - a bad point must not kill the sweep
        for row in rows:
            row["error"] = str(exc)
        return rows
    for row, scheme in zip(rows, cfg.schemes):
        est = estimates[scheme]
        row["sop"] = est.p_hat
        row["stderr"] = est.stderr
        row["trials"] = est.trials
    return rows


def _format_cell(value) -> str:
    if isinstance(value, float):
        return format(value, ".10e")
    return str(value)


def write_rows(rows: list[dict], out: str | None) -> None:
    """Write CSV (header always) to a path, or stdout when out is None."""
    def _dump(fh) -> None:
        writer = csv.writer(fh)
        writer.writerow(_COLUMNS)
        for row in rows:
            writer.writerow([_format_cell(row[col]) for col in _COLUMNS])

    if out is None:
        _dump(sys.stdout)
    else:
        with open(out, "w", newline="", encoding="utf-8") as fh:
            _dump(fh)


def validate(cfg: ExperimentConfig) -> tuple[bool, list[str]]:
    """Cross-check analytic SOP against MC on the sweep grid via z-scores."""
    analytic_rows = run_sweep(cfg, engines=["analytic"])
    mc_rows = run_sweep(cfg, engines=["montecarlo"])
    mc_by_key = {(row["sweep_value"], row["scheme"]): row for row in mc_rows}
    lines: list[str] = []
    z_scores: list[float] = []
    for row in analytic_rows:
        key = (row["sweep_value"], row["scheme"])
        mc_row = mc_by_key[key]
        if row["error"] or mc_row["error"]:
            lines.append(f"value={key[0]:g} scheme={key[1]} error={row['error'] or mc_row['error']}")
            z_scores.append(math.inf)
            continue
        gap = row["sop"] - mc_row["sop"]
        stderr = mc_row["stderr"]
        z = 0.0 if gap == 0.0 else (gap / stderr if stderr > 0 else math.inf)
        z_scores.append(abs(z))
        lines.append(
            f"value={key[0]:g} scheme={key[1]} analytic={row['sop']:.6e} "
            f"mc={mc_row['sop']:.6e} stderr={stderr:.2e} z={z:+.2f}"
        )
    within = sum(1 for z in z_scores if z <= 3.0)
    passed = bool(z_scores) and within >= math.ceil(0.99 * len(z_scores)) and max(z_scores) <= 5.0
    lines.append(
        f"validation: {within}/{len(z_scores)} points within 3 sigma; "
        f"max |z| = {max(z_scores):.2f} -> {'PASS' if passed else 'FAIL'}"
        if z_scores else "validation: no points -> FAIL"
    )
    return passed, lines


def _run_sdo(cfg: ExperimentConfig, out: str | None) -> None:
    inputs = SdoInputs(
        K=cfg.params.K,
        m_r=cfg.params.links.source_relay.m,
        m_u=cfg.params.links.m_u,
        varpi=cfg.policy.varpi if cfg.policy.is_dynamic else None,
    )
    lines = [("scheme", "sdo")] + [(s.value, format(sdo(s, inputs), "g")) for s in cfg.schemes]
    text = "\n".join(",".join(line) for line in lines) + "\n"
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="noma-secrecy",
        description="Secrecy outage evaluation for relay-assisted NOMA downlinks.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, blurb in (
        ("analytic", "closed-form SOP on the config grid"),
        ("simulate", "Monte Carlo SOP on the config grid"),
        ("asymptotic", "high-gain SOP and diversity order on the config grid"),
        ("sweep", "all engines selected in the config"),
        ("validate", "analytic vs Monte Carlo z-score report"),
        ("sdo", "secrecy diversity orders for the configured schemes"),
    ):
        cmd = sub.add_parser(name, help=blurb)
        cmd.add_argument("config", help="path to a JSON scenario file")
        cmd.add_argument("--out", default=None, help="output path (overrides the config's out)")
    return parser


_ENGINE_FOR_COMMAND = {"analytic": ["analytic"], "simulate": ["montecarlo"], "asymptotic": ["asymptotic"]}


def main(argv: Sequence[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        cfg = load_config(args.config)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 1
    out = args.out if args.out is not None else cfg.out
    try:
        if args.command == "sdo":
            _run_sdo(cfg, out)
            return 0
        if args.command == "validate":
            passed, lines = validate(cfg)
            print("\n".join(lines))
            return 0 if passed else 2
        engines = _ENGINE_FOR_COMMAND.get(args.command)
        rows = run_sweep(cfg, engines=engines)
        write_rows(rows, out)
        return 3 if any(row["error"] for row in rows) else 0
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 1
    except Exception as exc:  # noqa: BLE001 - surface numeric failures as exit 3
        print(f"numeric error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
