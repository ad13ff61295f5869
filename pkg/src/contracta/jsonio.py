"""JSON forms for matrices, channel specs, and estimates.

Complex matrices are row-major nested lists of ``[re, im]`` pairs.
"""

import json
from pathlib import Path

import numpy as np

from .contraction import Estimate
from .errors import InvalidInput
from .qubit import AffineQubitMap
from .superop import Channel

__all__ = [
    "SpecError",
    "matrix_to_json",
    "matrix_from_json",
    "channel_to_json",
    "channel_from_json",
    "load_channel",
    "estimate_to_json",
    "estimate_from_json",
]


class SpecError(InvalidInput):
    """A channel or estimate document could not be parsed."""


def matrix_to_json(M) -> list:
    M = np.asarray(M, dtype=complex)
    return [[[float(z.real), float(z.imag)] for z in row] for row in M]


def matrix_from_json(doc) -> np.ndarray:
    try:
        arr = np.asarray(doc, dtype=float)
    except (TypeError, ValueError) as exc:
        raise SpecError("matrix must be a nested list of [re, im] pairs") from exc
    if arr.ndim != 3 or arr.shape[2] != 2:
        raise SpecError(f"matrix must have shape (rows, cols, 2), got {arr.shape}")
    return arr[..., 0] + 1j * arr[..., 1]


def channel_to_json(phi) -> dict:
    if isinstance(phi, AffineQubitMap):
        doc = {"qubit": {"t": [float(v) for v in phi.t], "T": phi.T.tolist()}}
    else:
        doc = {"dim_in": phi.dim_in, "dim_out": phi.dim_out,
               "kraus": [matrix_to_json(K) for K in phi.kraus]}
    name = getattr(phi, "name", None)
    if name:
        doc["name"] = name
    return doc


def channel_from_json(doc: dict):
    """Parse a channel spec into a :class:`Channel` (Kraus form) or an :class:`AffineQubitMap`.

    Qubit specs come back as affine maps; callers decide whether complete positivity is needed.
    """
    if not isinstance(doc, dict):
        raise SpecError("channel spec must be a JSON object")
    has_kraus = "kraus" in doc
    has_qubit = "qubit" in doc
    if has_kraus == has_qubit:
        raise SpecError("channel spec needs exactly one of 'kraus' or 'qubit'")
    name = doc.get("name")
    if has_qubit:
        q = doc["qubit"]
        try:
            return AffineQubitMap(q["t"], q["T"], name=name)
        except (KeyError, TypeError, ValueError) as exc:
            raise SpecError(f"bad qubit spec: {exc}") from exc
    try:
        kraus = [matrix_from_json(K) for K in doc["kraus"]]
        d_in, d_out = int(doc["dim_in"]), int(doc["dim_out"])
    except (KeyError, TypeError, ValueError) as exc:
        raise SpecError(f"bad Kraus spec: {exc}") from exc
    if any(K.shape != (d_out, d_in) for K in kraus):
        raise SpecError("Kraus shapes disagree with dim_in/dim_out")
    try:
        return Channel(kraus, name=name)
    except InvalidInput as exc:
        raise SpecError(str(exc)) from exc


def load_channel(path):
    try:
        doc = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise SpecError(f"cannot read channel spec {path}: {exc}") from exc
    return channel_from_json(doc)


def _witness_value(v):
    arr = np.asarray(v)
    if arr.ndim == 2:
        return {"matrix": matrix_to_json(arr)}
    return {"vector": [[float(z.real), float(z.imag)] for z in arr.astype(complex)]}


def estimate_to_json(e: Estimate) -> dict:
    return {
        "value": float(e.value),
        "witness": {k: _witness_value(v) for k, v in e.witness.items()},
        "starts": int(e.starts),
        "seed": int(e.seed),
        "converged": bool(e.converged),
        "exact": bool(e.exact),
    }


def estimate_from_json(doc: dict) -> Estimate:
    wit = {}
    for k, v in doc.get("witness", {}).items():
        if "matrix" in v:
            wit[k] = matrix_from_json(v["matrix"])
        else:
            arr = np.asarray(v["vector"], dtype=float)
            wit[k] = arr[:, 0] + 1j * arr[:, 1]
    return Estimate(float(doc["value"]), wit, int(doc["starts"]), int(doc["seed"]),
                    bool(doc["converged"]), bool(doc.get("exact", False)))
