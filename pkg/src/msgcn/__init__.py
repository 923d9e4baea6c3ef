"""Interlayer link-weight prediction on spatial multiplex networks.

A candidate link between node ``i`` of layer ``p`` and node ``j`` of layer
``p + 1`` is scored by projecting ``i`` into layer ``p + 1`` next to ``j``
and running a two-layer spatial graph convolution over the resulting
small graph. Everything is plain numpy, including the gradients.
"""

from .evaluation import (
    ExperimentConfig,
    GroupSpec,
    MetricSet,
    evaluate_networks,
    metrics,
    run_experiment,
    welch_ttest,
)
from .formats import load_checkpoint, load_network, save_checkpoint, save_network
from .graph_core import (
    CandidateLink,
    ProjectedGraph,
    SpatialMultiplexNetwork,
    build_projected_graph,
    candidate_links,
    validate,
)
from .ingest import ingest_files, ingest_temporal, read_tables
from .model import ModelParams, forward, init_params, predict_network, spatial_conv
from .synthgen import GeneratorConfig, generate_dataset, generate_network, make_manifest, train_test_split
from .train import LossConfig, TrainConfig, fit, gradient_check, loss

__version__ = "0.1.0"

__all__ = [
    "CandidateLink",
    "ExperimentConfig",
    "GeneratorConfig",
    "GroupSpec",
    "LossConfig",
    "MetricSet",
    "ModelParams",
    "ProjectedGraph",
    "SpatialMultiplexNetwork",
    "TrainConfig",
    "build_projected_graph",
    "candidate_links",
    "evaluate_networks",
    "fit",
    "forward",
    "generate_dataset",
    "generate_network",
    "gradient_check",
    "ingest_files",
    "ingest_temporal",
    "init_params",
    "load_checkpoint",
    "load_network",
    "loss",
    "make_manifest",
    "metrics",
    "predict_network",
    "read_tables",
    "run_experiment",
    "save_checkpoint",
    "save_network",
    "spatial_conv",
    "train_test_split",
    "validate",
    "welch_ttest",
]
