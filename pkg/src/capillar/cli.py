"""Command-line front door: `capillar run|check-thermo|equilibrium|eigen`.

The CLI is a thin client of the service layer. By default each subcommand
validates the JSON config against the request schema and invokes the
handler in process; with --server URL it POSTs the same request to a
running service and writes the returned artifacts identically.

Exit codes: 0 success, 1 configuration error, 2 numerical failure (a
diagnostic dump is written next to the other outputs).
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from pydantic import ValidationError

from . import __version__, io
from .errors import CapillarError, ConfigInvalid
from .service import handlers, schemas

_ENDPOINTS = {
    "run": ("/v1/run", schemas.RunConfig, schemas.RunArtifacts),
    "check-thermo": ("/v1/check-thermo", schemas.CheckThermoConfig,
                     schemas.ThermoReport),
    "equilibrium": ("/v1/equilibrium", schemas.EquilibriumConfig,
                    schemas.EquilibriumReport),
    "eigen": ("/v1/eigen", schemas.EigenConfig, schemas.EigenReport),
}

_HANDLERS = {
    "run": handlers.handle_run,
    "check-thermo": handlers.handle_check_thermo,
    "equilibrium": handlers.handle_equilibrium,
    "eigen": handlers.handle_eigen,
}


class _RemoteError(Exception):
    def __init__(self, payload: dict):
        super().__init__(payload.get("message", "remote error"))
        self.payload = payload


def _load_config(path: str, model, overrides: dict | None = None):
    try:
        raw = json.loads(Path(path).read_text(encoding="utf-8"))
    except FileNotFoundError:
        raise ConfigInvalid(f"config file not found: {path}")
    except json.JSONDecodeError as exc:
        raise ConfigInvalid(f"config is not valid JSON: {exc}")
    if overrides:
        raw.setdefault("check", {}).update(overrides)
    try:
        return model.model_validate(raw)
    except ValidationError as exc:
        first = exc.errors()[0]
        loc = ".".join(str(p) for p in first["loc"])
        raise ConfigInvalid(f"{loc}: {first['msg']}")


def _call(command: str, cfg, server: str | None):
    if server is None:
        return _HANDLERS[command](cfg)
    import httpx

    path, _, response_model = _ENDPOINTS[command]
    resp = httpx.post(server.rstrip("/") + path, json=cfg.model_dump(),
                      timeout=600.0)
    if resp.status_code == 422:
        raise _RemoteError(resp.json())
    resp.raise_for_status()
    return response_model.model_validate(resp.json())


def _write(path: Path, content: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(content, encoding="utf-8")


def _write_report(out_dir: Path, name: str, report) -> Path:
    target = out_dir / name
    _write(target, io.report_json(report.model_dump()))
    return target


def _cmd_run(args) -> int:
    cfg = _load_config(args.config, schemas.RunConfig)
    out_dir = Path(args.out) if args.out else Path(cfg.output.directory)
    prefix = cfg.output.prefix
    try:
        artifacts = _call("run", cfg, args.server)
    except (CapillarError, _RemoteError) as exc:
        payload = (exc.payload if isinstance(exc, _RemoteError)
                   else handlers.error_payload(exc).model_dump())
        _write(out_dir / f"{prefix}_abort.json", io.report_json(payload))
        print(f"error: {payload.get('message')}", file=sys.stderr)
        return 2
    _write(out_dir / artifacts.monitors_filename, artifacts.monitors_csv)
    _write(out_dir / artifacts.summary_filename,
           io.report_json(artifacts.summary))
    for snap in artifacts.snapshots:
        _write(out_dir / snap.filename, snap.content)
    print(f"wrote {len(artifacts.snapshots) + 2} files to {out_dir}")
    return 0


def _cmd_check_thermo(args) -> int:
    overrides = {}
    if args.h is not None:
        overrides["h"] = args.h
    if args.tol is not None:
        overrides["tol_phase"] = args.tol
    cfg = _load_config(args.config, schemas.CheckThermoConfig, overrides)
    out_dir = Path(args.out)
    try:
        report = _call("check-thermo", cfg, args.server)
    except (CapillarError, _RemoteError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    target = _write_report(out_dir, "check_thermo_report.json", report)
    print(f"{'PASS' if report.passed else 'FAIL'}: {target}")
    return 0 if report.passed else 2


def _cmd_equilibrium(args) -> int:
    cfg = _load_config(args.config, schemas.EquilibriumConfig)
    out_dir = Path(args.out)
    try:
        report = _call("equilibrium", cfg, args.server)
    except (CapillarError, _RemoteError) as exc:
        payload = (exc.payload if isinstance(exc, _RemoteError)
                   else handlers.error_payload(exc).model_dump())
        _write(out_dir / "equilibrium_report.json", io.report_json(
            {"converged": False, **payload}))
        print(f"error: {payload.get('message')}", file=sys.stderr)
        return 2
    target = _write_report(out_dir, "equilibrium_report.json", report)
    print(f"converged in {report.iterations} iterations: {target}")
    return 0


def _cmd_eigen(args) -> int:
    cfg = _load_config(args.config, schemas.EigenConfig)
    out_dir = Path(args.out)
    try:
        report = _call("eigen", cfg, args.server)
    except (CapillarError, _RemoteError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    target = _write_report(out_dir, "eigen_report.json", report)
    print(f"hyperbolic={report.hyperbolic}: {target}")
    return 0


def _cmd_serve(args) -> int:
    import uvicorn

    uvicorn.run("capillar.service.app:app", host=args.host, port=args.port)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="capillar",
        description="Fluid-interface two-phase flow toolbox",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("config", help="path to the JSON configuration")
        p.add_argument("--out", default=".", help="output directory")
        p.add_argument("--server", default=None,
                       help="base URL of a running service (default: in-process)")

    p_run = sub.add_parser("run", help="time-march a configured problem")
    common(p_run)
    p_run.set_defaults(func=_cmd_run, out=None)

    p_check = sub.add_parser("check-thermo", help="EoS self-consistency sweeps")
    common(p_check)
    p_check.add_argument("--h", type=float, default=None,
                         help="override the relative FD step")
    p_check.add_argument("--tol", type=float, default=None,
                         help="override the phase residual tolerance")
    p_check.set_defaults(func=_cmd_check_thermo)

    p_eq = sub.add_parser("equilibrium", help="solve a thermodynamic equilibrium")
    common(p_eq)
    p_eq.set_defaults(func=_cmd_equilibrium)

    p_eig = sub.add_parser("eigen", help="eigenstructure of one cell state")
    common(p_eig)
    p_eig.set_defaults(func=_cmd_eigen)

    p_serve = sub.add_parser("serve", help="start the HTTP service")
    p_serve.add_argument("--host", default="127.0.0.1")
    p_serve.add_argument("--port", type=int, default=8000)
    p_serve.set_defaults(func=_cmd_serve)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ConfigInvalid as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
