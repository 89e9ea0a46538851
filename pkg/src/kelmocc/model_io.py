"""Save and load trained models as JSON.

The format is a single JSON object with a ``format_version`` field so old
files stay loadable if the layout ever grows. Arrays are stored as nested
lists; Python floats round-trip through JSON exactly, so a saved model
predicts bit-identically to the one in memory.
"""

from __future__ import annotations

import json
import os

import numpy as np

from .data import NormStats
from .kernel import KernelSpec
from .occ import HyperParams, TrainedModel, validate_kind
from .variance import LaplacianSpec

FORMAT_VERSION = 1


def model_to_dict(model: TrainedModel) -> dict:
    return {
        "format_version": FORMAT_VERSION,
        "kind": model.kind,
        "train_x": model.train_x.tolist(),
        "beta": model.beta.tolist(),
        "theta": model.theta,
        "kernel": {"kind": model.kernel.kind, "sigma": model.kernel.sigma},
        "norm": {"mean": model.norm.mean.tolist(), "std": model.norm.std.tolist()},
        "hyper": {
            "c": model.hyper.c,
            "lam": model.hyper.lam,
            "delta": model.hyper.delta,
            "laplacian": {
                "kind": model.hyper.laplacian.kind,
                "k": model.hyper.laplacian.k,
            },
            "target_value": model.hyper.target_value,
        },
    }


def model_from_dict(payload: dict) -> TrainedModel:
    version = payload.get("format_version")
    if not isinstance(version, int) or version < 1:
        raise ValueError(f"model file has no usable format_version: {version!r}")
    if version > FORMAT_VERSION:
        raise ValueError(
            f"model file format_version {version} is newer than the supported "
            f"{FORMAT_VERSION}; upgrade the package to load it"
        )
    kind = validate_kind(payload["kind"])
    hyper_d = payload["hyper"]
    hyper = HyperParams(
        c=float(hyper_d["c"]),
        lam=float(hyper_d["lam"]),
        delta=float(hyper_d["delta"]),
        laplacian=LaplacianSpec(
            kind=hyper_d["laplacian"]["kind"],
            k=int(hyper_d["laplacian"]["k"]),
        ),
        target_value=float(hyper_d["target_value"]),
    )
    norm_d = payload["norm"]
    kernel_d = payload["kernel"]
    return TrainedModel(
        kind=kind,
        train_x=np.asarray(payload["train_x"], dtype=float),
        beta=np.asarray(payload["beta"], dtype=float),
        theta=float(payload["theta"]),
        kernel=KernelSpec(kind=kernel_d["kind"], sigma=float(kernel_d["sigma"])),
        norm=NormStats(
            mean=np.asarray(norm_d["mean"], dtype=float),
            std=np.asarray(norm_d["std"], dtype=float),
        ),
        hyper=hyper,
    )


def save_model(model: TrainedModel, path: str | os.PathLike) -> None:
    with open(path, "w", encoding="utf-8") as handle:
        json.dump(model_to_dict(model), handle, sort_keys=True, indent=2)
        handle.write("\n")


def load_model(path: str | os.PathLike) -> TrainedModel:
    with open(path, encoding="utf-8") as handle:
        try:
            payload = json.load(handle)
        except json.JSONDecodeError as exc:
            raise ValueError(f"cannot parse model file {path}: {exc}") from exc
    if not isinstance(payload, dict):
        raise ValueError(f"model file {path} does not hold a JSON object")
    return model_from_dict(payload)
