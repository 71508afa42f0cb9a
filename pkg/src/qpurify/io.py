"""JSON and CSV file formats.

Matrices and vectors are stored row-major as real and imaginary parts::

    {"dim": n, "re": [...], "im": [...]}

with n*n entries for a matrix and n for a vector. Bipartite densities add
``"dimA"`` and ``"dimB"``. Wavefunctions add a ``"grid"`` object
``{"xmin", "xmax", "n"}``; a wavefunction file may instead name a catalog
state, e.g. ``{"grid": {...}, "fock": 0}`` or
``{"grid": {...}, "coherent": [re, im]}``.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any

import numpy as np

from .density import DensityMatrix, StateVector, make_density, make_state
from .entangle import BipartiteDensity
from .errors import ValidationError
from .phasespace import (
    Grid1D,
    WaveFunction,
    WignerGrid,
    coherent_wavefunction,
    fock_wavefunction,
    make_wavefunction,
)
from .tomography import TomogramSlice

FLOAT_FMT = ".17g"


def complex_payload(a: np.ndarray) -> dict[str, Any]:
    a = np.asarray(a, dtype=complex)
    flat = a.reshape(-1)
    return {
        "dim": int(a.shape[0]),
        "re": [float(x) for x in flat.real],
        "im": [float(x) for x in flat.imag],
    }


def _complex_array(obj: dict, shape: tuple[int, ...]) -> np.ndarray:
    try:
        re = np.asarray(obj["re"], dtype=float)
        im = np.asarray(obj.get("im", np.zeros_like(re)), dtype=float)
    except KeyError as exc:
        raise ValidationError(f"missing field {exc.args[0]!r}") from None
    size = int(np.prod(shape))
    if re.size != size or im.size != size:
        raise ValidationError(f"expected {size} entries in 're'/'im', got {re.size}/{im.size}")
    return (re + 1j * im).reshape(shape)


def _grid(obj: dict) -> Grid1D:
    try:
        return Grid1D(obj["xmin"], obj["xmax"], obj["n"])
    except KeyError as exc:
        raise ValidationError(f"grid is missing {exc.args[0]!r}") from None


def _dim(obj: dict) -> int:
    if "dim" not in obj:
        raise ValidationError("missing field 'dim'")
    return int(obj["dim"])


def density_from_json(obj: dict) -> DensityMatrix:
    n = _dim(obj)
    return make_density(_complex_array(obj, (n, n)))


def state_from_json(obj: dict) -> StateVector:
    n = _dim(obj)
    return make_state(_complex_array(obj, (n,)))


def wavefunction_from_json(obj: dict) -> WaveFunction:
    grid = _grid(obj["grid"])
    if "fock" in obj:
        return fock_wavefunction(int(obj["fock"]), grid)
    if "coherent" in obj:
        re, im = obj["coherent"]
        return coherent_wavefunction(complex(re, im), grid)
    return make_wavefunction(grid, _complex_array(obj, (grid.n,)))


def density_to_json(rho: DensityMatrix | BipartiteDensity) -> dict[str, Any]:
    if isinstance(rho, BipartiteDensity):
        out = complex_payload(rho.matrix)
        out["dimA"] = rho.dim_a
        out["dimB"] = rho.dim_b
        return out
    return complex_payload(rho.matrix)


def state_to_json(psi: StateVector) -> dict[str, Any]:
    return complex_payload(psi.amplitudes)


def wavefunction_to_json(psi: WaveFunction) -> dict[str, Any]:
    out = complex_payload(psi.values)
    out["grid"] = grid_to_json(psi.grid)
    return out


def grid_to_json(g: Grid1D) -> dict[str, Any]:
    return {"xmin": g.xmin, "xmax": g.xmax, "n": g.n}


def classify(obj: dict) -> str:
    """One of "wavefunction", "bipartite", "density", "state"."""
    if "grid" in obj:
        return "wavefunction"
    if "dimA" in obj or "dimB" in obj:
        return "bipartite"
    n = int(obj.get("dim", 0))
    if len(obj.get("re", [])) == n * n and n > 1:
        return "density"
    return "state"


def load_json(path: str | Path) -> dict:
    with open(path, encoding="utf-8") as fh:
        return json.load(fh)


def write_json(path: str | Path, payload: Any) -> None:
    text = json.dumps(payload, indent=2, sort_keys=True, allow_nan=True)
    Path(path).write_text(text + "\n", encoding="utf-8")


def write_wigner_csv(w: WignerGrid, path: str | Path) -> None:
    """Rows ``q,p,w`` in q-major order plus a ``.json`` sidecar with grid bounds."""
    path = Path(path)
    q = w.qgrid.points
    p = w.pgrid.points
    lines = ["q,p,w"]
    for i, qi in enumerate(q):
        qs = format(qi, FLOAT_FMT)
        row = w.values[i]
        lines.extend(f"{qs},{format(pj, FLOAT_FMT)},{format(row[j], FLOAT_FMT)}" for j, pj in enumerate(p))
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    write_json(
        path.with_suffix(".json"),
        {
            "qmin": w.qgrid.xmin,
            "qmax": w.qgrid.xmax,
            "nq": w.qgrid.n,
            "pmin": w.pgrid.xmin,
            "pmax": w.pgrid.xmax,
            "np": w.pgrid.n,
        },
    )


def read_wigner_csv(path: str | Path) -> WignerGrid:
    path = Path(path)
    meta = load_json(path.with_suffix(".json"))
    qg = Grid1D(meta["qmin"], meta["qmax"], meta["nq"])
    pg = Grid1D(meta["pmin"], meta["pmax"], meta["np"])
    data = np.loadtxt(path, delimiter=",", skiprows=1, ndmin=2)
    return WignerGrid(qg, pg, data[:, 2].reshape(qg.n, pg.n))


def write_tomogram_csv(t: TomogramSlice, path: str | Path) -> None:
    """Rows ``x,phi`` plus a ``.json`` sidecar with lambda, mu and x range."""
    path = Path(path)
    lines = ["x,phi"]
    lines.extend(f"{format(x, FLOAT_FMT)},{format(v, FLOAT_FMT)}" for x, v in zip(t.xgrid.points, t.values))
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    write_json(
        path.with_suffix(".json"),
        {"lambda": t.lam, "mu": t.mu, "xmin": t.xgrid.xmin, "xmax": t.xgrid.xmax, "n": t.xgrid.n},
    )


def read_tomogram_csv(path: str | Path) -> TomogramSlice:
    path = Path(path)
    meta = load_json(path.with_suffix(".json"))
    data = np.loadtxt(path, delimiter=",", skiprows=1, ndmin=2)
    return TomogramSlice(meta["lambda"], meta["mu"], Grid1D(meta["xmin"], meta["xmax"], meta["n"]), data[:, 1])
