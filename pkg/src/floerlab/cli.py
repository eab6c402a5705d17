"""Command-line entry point.

Subcommands: chart (pointwise geometry report), spectrum (Hessian spectra),
flow (spectral flow + index), verify (all invariant suites).  Reports are
JSON; identical configurations (including the seed) produce byte-identical
output.  Exit codes: 1 failed invariants, 2 schema errors, 3 degenerate
form / domain violations, 4 degenerate flow endpoints, 5 other errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field

import numpy as np

from . import action as act
from . import chart as chart_mod
from . import fredholm as fred
from . import loopspace as ls
from . import symplectic, verify
from .errors import (
    Degenerate,
    DegenerateEndpoint,
    FloerlabError,
    InvalidInput,
    OutOfDomain,
    SchemaError,
)
from .loopspace import Loop


@dataclass
class RunConfig:
    command: str
    chart_source: str | None = None
    hamiltonian_source: str | None = None
    loop_source: str | None = None
    path_source: str | None = None
    num_samples: int = 32
    tol: float = 1e-8
    seed: int = 0
    out: str | None = None
    csv: str | None = None
    only: str | None = None
    probes: list[list[float]] = field(default_factory=list)

    def __post_init__(self):
        if self.num_samples < 8 or self.num_samples % 2 != 0:
            raise InvalidInput(f"-M must be even and >= 8, got {self.num_samples}")
        if self.tol <= 0:
            raise InvalidInput("--tol must be positive")

    def echo(self) -> dict:
        return {
            "command": self.command,
            "chart": self.chart_source,
            "hamiltonian": self.hamiltonian_source,
            "loop": self.loop_source,
            "path": self.path_source,
            "M": self.num_samples,
            "tol": self.tol,
            "seed": self.seed,
            "only": self.only,
        }


def _emit(report: dict, config: RunConfig) -> None:
    text = json.dumps(report, sort_keys=True, indent=2, allow_nan=False)
    if config.out:
        with open(config.out, "w") as fh:
            fh.write(text + "\n")
    sys.stdout.write(text + "\n")


def _load_hamiltonian(config: RunConfig, dim: int) -> chart_mod.Hamiltonian | None:
    if config.hamiltonian_source is None:
        return None
    with open(config.hamiltonian_source, "rb") as fh:
        return chart_mod.parse_hamiltonian(fh.read(), dim)


def cmd_chart(config: RunConfig) -> int:
    spec = chart_mod.load_chart(config.chart_source)
    rng = np.random.default_rng(config.seed)
    probes = [np.asarray(p, dtype=float) for p in config.probes] or spec.probes
    reports = []
    for x in probes:
        spec.require_inside(x)
        data = symplectic.symplectic_point(spec.omega(x), x)
        tensor = chart_mod.l_tensor_at(spec, x)
        cyc, schwarz = 0.0, 0.0
        for _ in range(32):
            eta, xi, zeta = rng.standard_normal((3, spec.dim))
            cyc = max(
                cyc,
                abs(
                    tensor.contract(eta, xi, zeta)
                    + tensor.contract(zeta, eta, xi)
                    + tensor.contract(xi, zeta, eta)
                ),
            )
            schwarz = max(
                schwarz,
                abs(
                    tensor.contract(eta, xi, zeta)
                    - tensor.contract(xi, eta, zeta)
                    - tensor.contract(zeta, xi, eta)
                ),
            )
        reports.append(
            {
                "probe": [float(v) for v in x],
                "B": data.b.tolist(),
                "J_B": data.jb.tolist(),
                "detB": float(np.linalg.det(data.b)),
                "l_tensor_max": float(np.max(np.abs(tensor.values))),
                "l_cyclic_residual": cyc,
                "l_schwarz_residual": schwarz,
                "certify": symplectic.certify_point(data, tol=config.tol),
            }
        )
    _emit({"config": config.echo(), "chart": spec.name, "probes": reports}, config)
    return 0


def _spectrum_loop(config: RunConfig, spec: chart_mod.ChartSpec) -> Loop:
    if config.loop_source:
        return ls.load_loop(config.loop_source)
    origin = spec.probes[0] if spec.probes else np.zeros(spec.dim)
    return Loop.constant(origin, config.num_samples)


def cmd_spectrum(config: RunConfig) -> int:
    spec = chart_mod.load_chart(config.chart_source)
    loop = _spectrum_loop(config, spec)
    h = _load_hamiltonian(config, spec.dim)
    op = act.assemble_hessian(spec, h, loop)
    report = act.hessian_report(op, eig_tol=config.tol)
    if config.csv:
        with open(config.csv, "w") as fh:
            fh.write("index,eigenvalue\n")
            for i, val in enumerate(report["eigenvalues"]):
                fh.write(f"{i},{val!r}\n")
    _emit({"config": config.echo(), "report": report}, config)
    return 0


def cmd_flow(config: RunConfig) -> int:
    source = config.path_source or "tanh"
    name = source.removeprefix("builtin:")
    if name in ("constant", "tanh", "degenerate"):
        path = fred.builtin_synthetic_path(name)
        report = fred.spectral_flow_synthetic(path, config.tol)
        cert = fred.index_of_d(path, report)
    else:
        path = fred.load_path(source)
        spec = chart_mod.load_chart(config.chart_source)
        h = _load_hamiltonian(config, spec.dim)
        report = fred.spectral_flow(spec, h, path, config.tol)
        cert = fred.index_of_d(path, report, chart=spec, hamiltonian=h)
    if config.csv:
        with open(config.csv, "w") as fh:
            fh.write(fred.branch_trace_csv(report))
    payload = {
        "config": config.echo(),
        "flow": report.flow,
        "crossings": [[s, j, sign] for s, j, sign in report.crossings],
        "endpointGaps": list(report.endpoint_gaps),
        "index": cert,
    }
    _emit(payload, config)
    return 0


def cmd_verify(config: RunConfig) -> int:
    summary = verify.run_suites(seed=config.seed, only=config.only)
    _emit({"config": config.echo(), "summary": summary}, config)
    return 0 if summary["passed"] else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="floerlab", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)
    for name in ("chart", "spectrum", "flow", "verify"):
        p = sub.add_parser(name)
        p.add_argument("--chart", default="darboux", help="builtin name or chart JSON path")
        p.add_argument("--hamiltonian", default=None, help="Hamiltonian JSON path")
        p.add_argument("--loop", default=None, help="loop CSV path")
        p.add_argument("--path", default=None, help="path directory or builtin name")
        p.add_argument("-M", dest="num_samples", type=int, default=32)
        p.add_argument("--tol", type=float, default=1e-8)
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--out", default=None)
        p.add_argument("--csv", default=None)
        p.add_argument("--only", default=None, help="restrict verify to one suite")
        p.add_argument(
            "--probe",
            action="append",
            default=[],
            help="comma-separated point, e.g. --probe 1,0 (chart command)",
        )
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        probes = [[float(v) for v in p.split(",")] for p in args.probe]
    except ValueError:
        sys.stderr.write(f"error: malformed --probe {args.probe!r}\n")
        return 2
    try:
        config = RunConfig(
            command=args.command,
            chart_source=args.chart,
            hamiltonian_source=args.hamiltonian,
            loop_source=args.loop,
            path_source=args.path,
            num_samples=args.num_samples,
            tol=args.tol,
            seed=args.seed,
            out=args.out,
            csv=args.csv,
            only=args.only,
            probes=probes,
        )
        handler = {
            "chart": cmd_chart,
            "spectrum": cmd_spectrum,
            "flow": cmd_flow,
            "verify": cmd_verify,
        }[args.command]
        return handler(config)
    except SchemaError as exc:
        sys.stderr.write(f"schema error: {exc}\n")
        return 2
    except (Degenerate, OutOfDomain) as exc:
        sys.stderr.write(f"degenerate input: {exc}\n")
        return 3
    except DegenerateEndpoint as exc:
        sys.stderr.write(f"degenerate endpoint: {exc}\n")
        return 4
    except (FloerlabError, FileNotFoundError, KeyError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 5


if __name__ == "__main__":
    sys.exit(main())
