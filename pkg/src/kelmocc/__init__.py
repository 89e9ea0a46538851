"""Kernel extreme learning machines for one-class classification.

Four closed-form classifiers trained on target samples only: a boundary
regressor (ockelm), a kernel autoencoder (aakelm), and their
variance-embedded variants (vockelm, vaakelm), plus the protocol around
them: z-score normalization, RBF kernel width selection, stratified
splitting, cross-validated grid search, metrics, and a benchmark harness.
"""

from .data import (
    LabeledDataset,
    NormStats,
    load_csv,
    load_manifest,
    make_folds,
    split_80_20,
    zscore_apply,
    zscore_fit,
)
from .evaluate import (
    Confusion,
    EvalReport,
    GridSearchError,
    GridSearchResult,
    GridSpec,
    evaluate_model,
    grid_search,
    mean_f1,
    metrics,
    run_benchmark,
)
from .kernel import KernelSpec, cross_gram, estimate_sigma, gram, rbf
from .linalg import SingularMatrixError, solve
from .model_io import load_model, save_model
from .occ import (
    KINDS,
    HyperParams,
    Prediction,
    TrainedModel,
    fit,
    percentile_threshold,
    predict,
    train,
    training_rejection_count,
)
from .synth import default_suite, make_cloud_shell
from .variance import (
    LaplacianSpec,
    build_laplacian,
    class_variance_laplacian,
    intra_class_laplacian,
    kmeans,
)

__version__ = "0.1.0"

__all__ = [
    "Confusion",
    "EvalReport",
    "GridSearchError",
    "GridSearchResult",
    "GridSpec",
    "HyperParams",
    "KINDS",
    "KernelSpec",
    "LabeledDataset",
    "LaplacianSpec",
    "NormStats",
    "Prediction",
    "SingularMatrixError",
    "TrainedModel",
    "build_laplacian",
    "class_variance_laplacian",
    "cross_gram",
    "default_suite",
    "estimate_sigma",
    "evaluate_model",
    "fit",
    "gram",
    "grid_search",
    "intra_class_laplacian",
    "kmeans",
    "load_csv",
    "load_manifest",
    "load_model",
    "make_cloud_shell",
    "make_folds",
    "mean_f1",
    "metrics",
    "percentile_threshold",
    "predict",
    "rbf",
    "run_benchmark",
    "save_model",
    "solve",
    "split_80_20",
    "train",
    "training_rejection_count",
    "zscore_apply",
    "zscore_fit",
]
