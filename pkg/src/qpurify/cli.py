"""``qpurify`` command-line front end.

    qpurify <command> --in FILE [FILE ...] [--theta R] [--phi R] [--phases R,R,...]
            [--lambda R] [--mu R] [--grid MIN,MAX,N] [--out DIR] [--manifest FILE] [--strict]

Every run writes ``results.json`` into the output directory (``QPURIFY_OUT``
overrides ``--out``) plus any CSV/JSON artifacts of the command. Exit status
is 0 on success, 1 for invalid input and 2 when a numerical check fails.
"""

from __future__ import annotations

import argparse
import os
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Callable

import numpy as np

from . import io
from .density import from_state, mix, purity, spectral, state_from_pure
from .entangle import (
    bipartite,
    entanglement_defect,
    padded_spectrum,
    partial_trace,
    phi_multiply,
    product_eigenbasis,
    schmidt,
    tensor_product,
)
from .errors import NumericalError, QPurifyError, ValidationError
from .phasespace import (
    DEFAULT_GRID,
    Grid1D,
    marginals,
    normalization,
    purity_integral,
    wigner,
    wigner_superposition,
)
from .superpose import SuperposeParams, interference_operator, phi_add, purify_mixture, superpose_states
from .tomography import default_xgrid, tomogram_direct, tomogram_radon, tomogram_superposition

COMMANDS = ("purity", "superpose", "purify", "wigner", "tomogram", "entangle")
DEFAULT_OUT = "qpurify_out"


@dataclass
class RunManifest:
    command: str
    inputs: list[str]
    params: dict[str, Any] = field(default_factory=dict)
    outputs: str = DEFAULT_OUT

    def validate(self) -> None:
        if self.command not in COMMANDS:
            raise ValidationError(f"unknown command {self.command!r}; expected one of {', '.join(COMMANDS)}")
        if not self.inputs:
            raise ValidationError("no input files given (--in)")
        for path in self.inputs:
            if not Path(path).is_file():
                raise ValidationError(f"input file not found: {path}")


class Report:
    """Accumulates scalar results, invariant checks and written artifacts."""

    def __init__(self, manifest: RunManifest):
        self.manifest = manifest
        self.results: dict[str, Any] = {}
        self.checks: list[dict[str, Any]] = []
        self.artifacts: list[str] = []

    def check(self, name: str, value: float, tolerance: float, passed: bool | None = None) -> None:
        value = float(value)
        if passed is None:
            passed = value <= tolerance
        self.checks.append({"name": name, "value": value, "tolerance": float(tolerance), "passed": bool(passed)})

    def artifact(self, name: str) -> Path:
        self.artifacts.append(name)
        return Path(self.manifest.outputs) / name

    @property
    def ok(self) -> bool:
        return all(c["passed"] for c in self.checks)

    def payload(self, status: str, error: str | None = None) -> dict[str, Any]:
        out = {
            "command": self.manifest.command,
            "inputs": list(self.manifest.inputs),
            "params": self.manifest.params,
            "status": status,
            "results": self.results,
            "checks": self.checks,
            "artifacts": self.artifacts,
        }
        if error is not None:
            out["error"] = error
        return out


def _cplx(z: complex) -> list[float]:
    return [float(np.real(z)), float(np.imag(z))]


def _param(m: RunManifest, key: str, default=None, required: bool = False):
    val = m.params.get(key)
    if val is None:
        if required:
            raise ValidationError(f"missing parameter --{key} for command {m.command!r}")
        return default
    return val


def _superpose_params(m: RunManifest) -> SuperposeParams:
    return SuperposeParams(float(_param(m, "theta", required=True)), float(_param(m, "phi", 0.0)))


def _load(path: str) -> tuple[str, dict]:
    obj = io.load_json(path)
    return io.classify(obj), obj


def _wave_grids(m: RunManifest) -> Grid1D:
    g = _param(m, "grid")
    if g is None:
        return DEFAULT_GRID
    return Grid1D(*g)


def cmd_purity(m: RunManifest, rep: Report) -> None:
    entries = []
    for path in m.inputs:
        kind, obj = _load(path)
        if kind == "state":
            rho = from_state(io.state_from_json(obj))
        else:
            rho = io.density_from_json(obj)
        spec = spectral(rho)
        p = purity(rho)
        entries.append(
            {
                "input": path,
                "dim": rho.dim,
                "purity": p,
                "trace": float(np.trace(rho.matrix).real),
                "eigenvalues": [float(x) for x in spec.eigenvalues],
                "rank": spec.rank(),
                "pure": bool(abs(p - 1.0) <= 1e-10),
            }
        )
        rep.check(f"purity_bounds[{path}]", p, 1e-10, 1.0 / rho.dim - 1e-10 <= p <= 1.0 + 1e-10)
    rep.results["states"] = entries


def cmd_superpose(m: RunManifest, rep: Report) -> None:
    if len(m.inputs) != 2:
        raise ValidationError("superpose needs exactly two inputs")
    params = _superpose_params(m)
    loaded = [_load(p) for p in m.inputs]
    if all(kind == "state" for kind, _ in loaded):
        psi1, psi2 = (io.state_from_json(obj) for _, obj in loaded)
        psi = superpose_states(psi1, psi2, params)
        rho = from_state(psi)
    else:
        dens = [from_state(io.state_from_json(obj)) if kind == "state" else io.density_from_json(obj) for kind, obj in loaded]
        rho = phi_add(dens[0], dens[1], params)
        psi1, psi2 = state_from_pure(dens[0]), state_from_pure(dens[1])
        psi = superpose_states(psi1, psi2, params)
    rho1, rho2 = from_state(psi1), from_state(psi2)

    overlap = complex(np.vdot(psi1.amplitudes, psi2.amplitudes))
    n = (1.0 + np.sin(2 * params.theta) * (np.exp(1j * params.phi) * overlap).real) ** -0.5
    h = interference_operator(psi1, psi2, params.phi)
    c2, s2 = np.cos(params.theta) ** 2, np.sin(params.theta) ** 2
    recon = n ** 2 * (c2 * rho1.matrix + s2 * rho2.matrix + np.sin(2 * params.theta) * h)
    resid = float(np.linalg.norm(recon - rho.matrix))
    idem = float(np.linalg.norm(rho.matrix @ rho.matrix - rho.matrix))

    rep.results.update(
        {
            "theta": params.theta,
            "phi": params.phi,
            "overlap": _cplx(overlap),
            "norm_factor": float(n),
            "output_norm": float(np.linalg.norm(psi.amplitudes)),
            "purity": purity(rho),
            "mixture_purity": purity(mix(rho1, rho2, params.theta)),
            "interference_trace": float(np.trace(h).real),
            "decomposition_residual": resid,
            "idempotency_residual": idem,
        }
    )
    rep.check("output_norm", abs(np.linalg.norm(psi.amplitudes) - 1.0), 1e-12)
    rep.check("idempotency", idem, 1e-10)
    rep.check("decomposition", resid, 1e-12)
    io.write_json(rep.artifact("superposed_state.json"), io.state_to_json(psi))
    io.write_json(rep.artifact("superposed_density.json"), io.density_to_json(rho))


def cmd_purify(m: RunManifest, rep: Report) -> None:
    rho = io.density_from_json(io.load_json(m.inputs[0]))
    phases = [float(x) for x in _param(m, "phases", [])]
    out = purify_mixture(rho, phases)
    spec = spectral(rho)
    v = spec.eigenvectors
    in_eig = v.conj().T @ out.matrix @ v
    dephased = v @ np.diag(np.diag(in_eig)) @ v.conj().T
    resid = float(np.linalg.norm(dephased - rho.matrix))
    iu = np.triu_indices(out.dim, 1)
    rep.results.update(
        {
            "input_purity": purity(rho),
            "purity": purity(out),
            "eigenvalues": [float(x) for x in spec.eigenvalues],
            "rank": spec.rank(),
            "phases": phases,
            "offdiagonal": [
                {"row": int(j), "col": int(k), "value": _cplx(out.matrix[j, k])} for j, k in zip(*iu)
            ],
            "dephasing_residual": resid,
        }
    )
    rep.check("purity", abs(purity(out) - 1.0), 1e-10)
    rep.check("dephasing_recovers_input", resid, 1e-10)
    io.write_json(rep.artifact("purified_density.json"), io.density_to_json(out))


def cmd_wigner(m: RunManifest, rep: Report) -> None:
    grid = _wave_grids(m)
    strict = bool(_param(m, "strict", False))
    waves = [io.wavefunction_from_json(io.load_json(p)) for p in m.inputs]
    if len(waves) == 1:
        w = wigner(waves[0], grid, grid, strict=strict)
    elif len(waves) == 2:
        params = _superpose_params(m)
        parts = wigner_superposition(waves[0], waves[1], params, grid, grid, strict=strict)
        w = parts.total
        c2, s2 = np.cos(params.theta) ** 2, np.sin(params.theta) ** 2
        recon = parts.norm_factor ** 2 * (
            c2 * parts.w1.values + s2 * parts.w2.values + np.sin(2 * params.theta) * parts.interference
        )
        resid = float(np.max(np.abs(recon - w.values)))
        rep.results["norm_factor"] = parts.norm_factor
        rep.results["superposition_residual"] = resid
        rep.results["component_purity_integrals"] = [purity_integral(parts.w1), purity_integral(parts.w2)]
        rep.check("superposition_identity", resid, 1e-8)
    else:
        raise ValidationError("wigner takes one or two wavefunction inputs")

    pi_val = purity_integral(w)
    norm = normalization(w)
    pos, mom = marginals(w)
    rep.results.update(
        {
            "purity_integral": pi_val,
            "purity_target": 1.0 / (2 * np.pi),
            "normalization": norm,
            "w_min": float(w.values.min()),
            "w_max": float(w.values.max()),
            "position_marginal_integral": float(pos.sum() * w.qgrid.spacing),
            "momentum_marginal_integral": float(mom.sum() * w.pgrid.spacing),
        }
    )
    rep.check("normalization", abs(norm - 1.0), 1e-6)
    rep.check("purity_criterion", abs(pi_val - 1.0 / (2 * np.pi)), 1e-6)
    rep.check("wigner_bound", float(np.abs(w.values).max()), 1.0 / np.pi + 1e-6)
    io.write_wigner_csv(w, rep.artifact("wigner.csv"))
    rep.artifacts.append("wigner.json")


def cmd_tomogram(m: RunManifest, rep: Report) -> None:
    lam = float(_param(m, "lambda", required=True))
    mu = float(_param(m, "mu", required=True))
    g = _param(m, "grid")
    xgrid = Grid1D(*g) if g is not None else default_xgrid(lam, mu)
    waves = [io.wavefunction_from_json(io.load_json(p)) for p in m.inputs]
    if len(waves) == 1:
        t = tomogram_direct(waves[0], lam, mu, xgrid)
        radon = tomogram_radon(wigner(waves[0]), lam, mu, xgrid)
        agree = float(np.max(np.abs(radon.values - t.values)))
        rep.results["radon_agreement"] = agree
        rep.check("direct_vs_radon", agree, 1e-4)
    elif len(waves) == 2:
        params = _superpose_params(m)
        parts = tomogram_superposition(waves[0], waves[1], params, lam, mu, xgrid)
        t = parts.total
        c2, s2 = np.cos(params.theta) ** 2, np.sin(params.theta) ** 2
        recon = parts.norm_factor ** 2 * (
            c2 * parts.phi1.values + s2 * parts.phi2.values + np.sin(2 * params.theta) * parts.interference.values
        )
        resid = float(np.max(np.abs(recon - t.values)))
        rep.results["norm_factor"] = parts.norm_factor
        rep.results["superposition_residual"] = resid
        rep.results["interference_integral"] = parts.interference.normalization()
        rep.check("superposition_identity", resid, 1e-6)
        io.write_tomogram_csv(parts.interference, rep.artifact("interference.csv"))
        rep.artifacts.append("interference.json")
    else:
        raise ValidationError("tomogram takes one or two wavefunction inputs")
    norm = t.normalization()
    rep.results.update({"lambda": lam, "mu": mu, "normalization": norm, "min_value": float(t.values.min())})
    rep.check("normalization", abs(norm - 1.0), 1e-6)
    rep.check("nonnegative", float(t.values.min()), -1e-8, float(t.values.min()) >= -1e-8)
    io.write_tomogram_csv(t, rep.artifact("tomogram.csv"))
    rep.artifacts.append("tomogram.json")


def cmd_entangle(m: RunManifest, rep: Report) -> None:
    if len(m.inputs) == 1:
        obj = io.load_json(m.inputs[0])
        rho = bipartite(io.density_from_json(obj), int(obj["dimA"]), int(obj["dimB"]))
    elif len(m.inputs) == 2:
        rho_a, rho_b = (io.density_from_json(io.load_json(p)) for p in m.inputs)
        phases = [float(x) for x in _param(m, "phases", [])]
        rho = phi_multiply(rho_a, rho_b, phases)
        res_a = float(np.linalg.norm(partial_trace(rho, "A").matrix - rho_a.matrix))
        res_b = float(np.linalg.norm(partial_trace(rho, "B").matrix - rho_b.matrix))
        u = product_eigenbasis(rho_a, rho_b)
        rep.results.update(
            {
                "phases": phases,
                "marginal_residual_A": res_a,
                "marginal_residual_B": res_b,
                "product_purity": purity(tensor_product(rho_a, rho_b).rho),
                "product_eigenbasis_diagonal": [float(x) for x in np.diag(u.conj().T @ rho.matrix @ u).real],
            }
        )
        rep.check("partial_trace_B_recovers_A", res_a, 1e-10)
        rep.check("partial_trace_A_recovers_B", res_b, 1e-10)
        io.write_json(rep.artifact("entangled_density.json"), io.density_to_json(rho))
    else:
        raise ValidationError("entangle takes one bipartite input or two factor densities")

    red_a, red_b = partial_trace(rho, "A"), partial_trace(rho, "B")
    size = min(rho.dim_a, rho.dim_b)
    spec_a, spec_b = padded_spectrum(red_a, size), padded_spectrum(red_b, size)
    p = purity(rho.rho)
    rep.results.update(
        {
            "dimA": rho.dim_a,
            "dimB": rho.dim_b,
            "purity": p,
            "marginal_spectrum_A": [float(x) for x in spec_a],
            "marginal_spectrum_B": [float(x) for x in spec_b],
            "entanglement_defect": entanglement_defect(rho),
        }
    )
    if abs(p - 1.0) <= 1e-10:
        coeffs = schmidt(state_from_pure(rho.rho), rho.dim_a, rho.dim_b).coefficients
        rep.results["schmidt_coefficients"] = [float(x) for x in coeffs]
        rep.check("marginal_spectra_equal", float(np.max(np.abs(spec_a - spec_b))), 1e-10)
    if len(m.inputs) == 2:
        rep.check("purity", abs(p - 1.0), 1e-10)


HANDLERS: dict[str, Callable[[RunManifest, Report], None]] = {
    "purity": cmd_purity,
    "superpose": cmd_superpose,
    "purify": cmd_purify,
    "wigner": cmd_wigner,
    "tomogram": cmd_tomogram,
    "entangle": cmd_entangle,
}


def run(manifest: RunManifest) -> int:
    """Execute one manifest; returns the process exit status."""
    rep = Report(manifest)
    try:
        manifest.validate()
        Path(manifest.outputs).mkdir(parents=True, exist_ok=True)
        HANDLERS[manifest.command](manifest, rep)
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        _write_results(manifest, rep.payload("invalid_input", str(exc)))
        return 1
    except NumericalError as exc:
        print(f"numeric failure: {exc}", file=sys.stderr)
        _write_results(manifest, rep.payload("numeric_failure", str(exc)))
        return 2
    except (QPurifyError, ValueError, KeyError, TypeError, OSError) as exc:
        # unreadable or malformed input files
        msg = f"{type(exc).__name__}: {exc}"
        print(f"error: {msg}", file=sys.stderr)
        _write_results(manifest, rep.payload("invalid_input", msg))
        return 1
    if not rep.ok:
        failed = ", ".join(c["name"] for c in rep.checks if not c["passed"])
        print(f"numeric failure: checks failed: {failed}", file=sys.stderr)
        _write_results(manifest, rep.payload("numeric_failure", f"checks failed: {failed}"))
        return 2
    _write_results(manifest, rep.payload("ok"))
    return 0


def _write_results(manifest: RunManifest, payload: dict) -> None:
    try:
        Path(manifest.outputs).mkdir(parents=True, exist_ok=True)
        io.write_json(Path(manifest.outputs) / "results.json", payload)
    except OSError as exc:
        print(f"error: cannot write results: {exc}", file=sys.stderr)


def _floats(text: str) -> list[float]:
    text = text.strip()
    return [float(x) for x in text.split(",")] if text else []


def _grid_arg(text: str) -> list:
    parts = text.split(",")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError("--grid expects MIN,MAX,N")
    return [float(parts[0]), float(parts[1]), int(parts[2])]


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="qpurify", description="Purification of density operators, Wigner functions and tomograms.")
    ap.add_argument("command", nargs="?", choices=COMMANDS)
    ap.add_argument("--in", dest="inputs", nargs="+", metavar="FILE")
    ap.add_argument("--theta", type=float)
    ap.add_argument("--phi", type=float)
    ap.add_argument("--phases", type=_floats, metavar="R,R,...")
    ap.add_argument("--lambda", dest="lam", type=float)
    ap.add_argument("--mu", type=float)
    ap.add_argument("--grid", type=_grid_arg, metavar="MIN,MAX,N")
    ap.add_argument("--out")
    ap.add_argument("--manifest", metavar="FILE")
    ap.add_argument("--strict", action="store_true", default=None)
    return ap


def manifest_from_args(args: argparse.Namespace, env: dict[str, str] | None = None) -> RunManifest:
    env = os.environ if env is None else env
    base: dict[str, Any] = {}
    root = Path(".")
    if args.manifest:
        base = io.load_json(args.manifest)
        root = Path(args.manifest).parent
    params = dict(base.get("params", {}))
    for key, val in (
        ("theta", args.theta),
        ("phi", args.phi),
        ("phases", args.phases),
        ("lambda", args.lam),
        ("mu", args.mu),
        ("grid", args.grid),
        ("strict", args.strict),
    ):
        if val is not None:
            params[key] = val
    if args.inputs:
        inputs = list(args.inputs)
    else:
        inputs = [str(root / p) if not Path(p).is_absolute() else p for p in base.get("inputs", [])]
    command = args.command or base.get("command")
    if command is None:
        raise ValidationError("no command given")
    outputs = env.get("QPURIFY_OUT") or args.out or base.get("outputs") or DEFAULT_OUT
    return RunManifest(command, inputs, params, str(outputs))


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        manifest = manifest_from_args(args)
    except (ValidationError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return run(manifest)


if __name__ == "__main__":
    raise SystemExit(main())
