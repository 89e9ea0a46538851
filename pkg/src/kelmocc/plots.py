"""Benchmark figures rendered to files next to the CSV output.

Two views of a benchmark result: per-dataset lines of test F1 against the
dismissal fraction delta, and a bar chart of each classifier's mean F1 over
datasets. Rendering uses the file-only matplotlib backend so it works in
headless runs.
"""

from __future__ import annotations

import os

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

KIND_ORDER = ("ockelm", "aakelm", "vockelm", "vaakelm")


def _label(kind: str) -> str:
    return kind.upper()


def render_delta_sweep(result, out_dir) -> list:
    """One PNG per dataset: test F1 against delta, one line per classifier."""
    paths = []
    for name in result.dataset_names:
        rows = [r for r in result.delta_rows if r.dataset == name]
        if not rows:
            continue
        fig, ax = plt.subplots(figsize=(6.0, 4.0))
        for kind in result.kinds:
            points = sorted(
                (r.delta, r.f1) for r in rows if r.kind == kind
            )
            if not points:
                continue
            deltas = [p[0] for p in points]
            scores = [p[1] for p in points]
            ax.plot(deltas, scores, marker="o", label=_label(kind))
        ax.set_xlabel("fraction of dismissal")
        ax.set_ylabel("test F1")
        ax.set_title(name)
        ax.set_ylim(-0.02, 1.02)
        ax.grid(True, alpha=0.3)
        ax.legend()
        fig.tight_layout()
        path = os.path.join(out_dir, f"delta_sweep_{name}.png")
        fig.savefig(path, dpi=120)
        plt.close(fig)
        paths.append(path)
    return paths


def render_summary(result, out_dir) -> list:
    """Bar charts: mean F1 per classifier, and per-dataset F1 side by side."""
    paths = []
    kinds = [k for k in result.kinds if k in result.eta_f1]
    if kinds:
        fig, ax = plt.subplots(figsize=(6.0, 4.0))
        ax.bar(range(len(kinds)), [result.eta_f1[k] for k in kinds])
        ax.set_xticks(range(len(kinds)))
        ax.set_xticklabels([_label(k) for k in kinds])
        ax.set_ylabel("mean F1 over datasets")
        ax.set_ylim(0, 1.05)
        ax.grid(True, axis="y", alpha=0.3)
        fig.tight_layout()
        path = os.path.join(out_dir, "summary_eta_f1.png")
        fig.savefig(path, dpi=120)
        plt.close(fig)
        paths.append(path)

    pairs = [(kind, name) for kind in result.kinds for name in result.dataset_names
             if (kind, name) in result.dataset_f1]
    if pairs:
        fig, ax = plt.subplots(figsize=(1.2 + 1.3 * len(result.dataset_names), 4.0))
        width = 0.8 / max(1, len(result.kinds))
        for offset, kind in enumerate(result.kinds):
            xs, ys = [], []
            for base, name in enumerate(result.dataset_names):
                if (kind, name) in result.dataset_f1:
                    xs.append(base + offset * width)
                    ys.append(result.dataset_f1[(kind, name)])
            if xs:
                ax.bar(xs, ys, width=width, label=_label(kind))
        ax.set_xticks([
            base + 0.4 - width / 2 for base in range(len(result.dataset_names))
        ])
        ax.set_xticklabels(result.dataset_names)
        ax.set_ylabel("median test F1 over seeds")
        ax.set_ylim(0, 1.05)
        ax.grid(True, axis="y", alpha=0.3)
        ax.legend()
        fig.tight_layout()
        path = os.path.join(out_dir, "summary_f1.png")
        fig.savefig(path, dpi=120)
        plt.close(fig)
        paths.append(path)
    return paths
