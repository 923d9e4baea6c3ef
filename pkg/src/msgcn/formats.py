"""On-disk formats: network files, checkpoints, dataset manifests and CSV.

Network files and checkpoints are JSON documents with an explicit
``format_version``. Floats are written with ``repr`` precision so every
value survives a save/load round trip bit for bit. All writes go to a
temporary file in the target directory that is then renamed into place.
"""

from __future__ import annotations

import csv
import io
import json
import math
import os
import tempfile
from dataclasses import asdict, dataclass
from pathlib import Path
from typing import Any, Iterable, Optional, Sequence

import numpy as np

from .graph_core import SpatialMultiplexNetwork, Violation, validate
from .model import ModelParams
from .synthgen import DatasetManifest, GeneratorConfig
from .train import LossConfig, TrainConfig

__all__ = [
    "NETWORK_FORMAT_VERSION",
    "CHECKPOINT_FORMAT_VERSION",
    "FormatError",
    "NetworkValidationError",
    "Checkpoint",
    "atomic_write",
    "network_to_dict",
    "network_from_dict",
    "dumps_network",
    "loads_network",
    "save_network",
    "load_network",
    "save_checkpoint",
    "load_checkpoint",
    "save_manifest",
    "load_manifest",
    "save_file_manifest",
    "write_csv",
    "read_csv",
    "parse_number",
]

NETWORK_FORMAT_VERSION = 1
CHECKPOINT_FORMAT_VERSION = 1
MANIFEST_FORMAT_VERSION = 1


class FormatError(ValueError):
    """Malformed file content; the message names the file, line or field."""


class NetworkValidationError(ValueError):
    def __init__(self, violations: Sequence[Violation], source: str = "network"):
        self.violations = list(violations)
        lines = "\n  ".join(str(v) for v in self.violations)
        super().__init__(f"{source}: {len(self.violations)} invariant violation(s):\n  {lines}")


def atomic_write(path, text: str) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(prefix=f".{path.name}.", dir=path.parent)
    try:
        with os.fdopen(fd, "w", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


# -- networks ---------------------------------------------------------------


def network_to_dict(net: SpatialMultiplexNetwork) -> dict:
    return {
        "format_version": NETWORK_FORMAT_VERSION,
        "num_layers": net.num_layers,
        "nodes": [
            {"id": i, "x": float(net.positions[i, 0]), "y": float(net.positions[i, 1])}
            for i in range(net.num_nodes)
        ],
        "features": [[float(v) for v in row] for row in net.features],
        "intra_edges": [{"layer": e.layer, "u": e.u, "v": e.v, "w": e.weight} for e in net.intra_edges],
        "inter_edges": [
            {"lp": e.layer_p, "u": e.u, "lq": e.layer_q, "v": e.v, "w": e.weight} for e in net.inter_edges
        ],
    }


def _field(obj, key, kind, where):
    if not isinstance(obj, dict):
        raise FormatError(f"{where}: expected an object")
    if key not in obj:
        raise FormatError(f"{where}: missing field {key!r}")
    val = obj[key]
    if kind is int:
        if isinstance(val, bool) or not isinstance(val, int):
            raise FormatError(f"{where}.{key}: expected an integer, got {val!r}")
    elif kind is float:
        if isinstance(val, bool) or not isinstance(val, (int, float)):
            raise FormatError(f"{where}.{key}: expected a number, got {val!r}")
        val = float(val)
    elif kind is list:
        if not isinstance(val, list):
            raise FormatError(f"{where}.{key}: expected a list")
    elif kind is dict:
        if not isinstance(val, dict):
            raise FormatError(f"{where}.{key}: expected an object")
    return val


def network_from_dict(doc: Any, source: str = "network") -> SpatialMultiplexNetwork:
    """Parse and validate a network document."""
    version = _field(doc, "format_version", int, source)
    if version != NETWORK_FORMAT_VERSION:
        raise FormatError(f"{source}: unsupported format_version {version}")
    num_layers = _field(doc, "num_layers", int, source)
    nodes = _field(doc, "nodes", list, source)
    positions = []
    for k, nd in enumerate(nodes):
        where = f"{source}.nodes[{k}]"
        if _field(nd, "id", int, where) != k:
            raise FormatError(f"{where}.id: node ids must be dense 0..M-1 in order, got {nd['id']}")
        positions.append((_field(nd, "x", float, where), _field(nd, "y", float, where)))

    features = _field(doc, "features", list, source)
    feats = []
    for l, row in enumerate(features):
        if not isinstance(row, list):
            raise FormatError(f"{source}.features[{l}]: expected a list")
        vals = []
        for k, v in enumerate(row):
            if isinstance(v, bool) or not isinstance(v, (int, float)):
                raise FormatError(f"{source}.features[{l}][{k}]: expected a number, got {v!r}")
            vals.append(float(v))
        if len(vals) != len(positions):
            raise FormatError(f"{source}.features[{l}]: {len(vals)} values for {len(positions)} nodes")
        feats.append(vals)
    if len(feats) != num_layers:
        raise FormatError(f"{source}.features: {len(feats)} layers, num_layers is {num_layers}")

    intra = []
    for k, e in enumerate(_field(doc, "intra_edges", list, source)):
        where = f"{source}.intra_edges[{k}]"
        intra.append(tuple(_field(e, f, t, where) for f, t in (("layer", int), ("u", int), ("v", int), ("w", float))))
    inter = []
    for k, e in enumerate(_field(doc, "inter_edges", list, source)):
        where = f"{source}.inter_edges[{k}]"
        inter.append(
            tuple(
                _field(e, f, t, where)
                for f, t in (("lp", int), ("u", int), ("lq", int), ("v", int), ("w", float))
            )
        )

    net = SpatialMultiplexNetwork(
        num_layers,
        np.array(positions, dtype=float).reshape(-1, 2),
        np.array(feats, dtype=float).reshape(num_layers, len(positions)),
        intra,
        inter,
    )
    bad = validate(net)
    if bad:
        raise NetworkValidationError(bad, source)
    return net


def dumps_network(net: SpatialMultiplexNetwork) -> str:
    bad = validate(net)
    if bad:
        raise NetworkValidationError(bad)
    return json.dumps(network_to_dict(net), indent=1) + "\n"


def _parse_json(text: str, source: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"{source}: line {exc.lineno}, column {exc.colno}: {exc.msg}") from None


def loads_network(text: str, source: str = "network") -> SpatialMultiplexNetwork:
    return network_from_dict(_parse_json(text, source), source)


def save_network(net: SpatialMultiplexNetwork, path) -> None:
    atomic_write(path, dumps_network(net))


def load_network(path) -> SpatialMultiplexNetwork:
    return loads_network(Path(path).read_text(), str(path))


# -- checkpoints ------------------------------------------------------------


@dataclass
class Checkpoint:
    params: ModelParams
    train_config: TrainConfig
    loss_config: LossConfig


def _plain(d: dict) -> dict:
    return {k: (float(v) if isinstance(v, (float, np.floating)) else int(v) if isinstance(v, (np.integer,)) else v) for k, v in d.items()}


def save_checkpoint(path, params: ModelParams, train_config: TrainConfig, loss_config: LossConfig) -> None:
    doc = {
        "format_version": CHECKPOINT_FORMAT_VERSION,
        "architecture": {"input_dim": 1, "hidden": params.hidden, "conv_layers": 2, "position_dim": 2},
        "params": {
            name: {"shape": list(arr.shape), "data": [float(v) for v in arr.ravel()]}
            for name, arr in params.arrays().items()
        },
        "train_config": _plain(asdict(train_config)),
        "loss_config": _plain(asdict(loss_config)),
    }
    atomic_write(path, json.dumps(doc, indent=1) + "\n")


def load_checkpoint(path) -> Checkpoint:
    source = str(path)
    doc = _parse_json(Path(path).read_text(), source)
    version = _field(doc, "format_version", int, source)
    if version != CHECKPOINT_FORMAT_VERSION:
        raise FormatError(f"{source}: unsupported format_version {version}")
    arch = _field(doc, "architecture", dict, source)
    hidden = _field(arch, "hidden", int, f"{source}.architecture")
    raw = _field(doc, "params", dict, source)
    template = ModelParams(
        U1=np.zeros((2, 1)), b1=np.zeros(1), W1=np.zeros((hidden, 1)), c1=np.zeros(hidden),
        U2=np.zeros((2, hidden)), b2=np.zeros(hidden), W2=np.zeros((hidden, hidden)), c2=np.zeros(hidden),
        w_out=np.zeros(hidden), b_out=np.zeros(()),
    )
    arrays = {}
    for name, ref in template.arrays().items():
        where = f"{source}.params.{name}"
        entry = _field(raw, name, dict, f"{source}.params")
        shape = tuple(_field(entry, "shape", list, where))
        data = _field(entry, "data", list, where)
        if shape != ref.shape:
            raise FormatError(f"{where}: shape {shape} does not match architecture {ref.shape}")
        if len(data) != ref.size or any(isinstance(v, bool) or not isinstance(v, (int, float)) for v in data):
            raise FormatError(f"{where}: expected {ref.size} numbers")
        arrays[name] = np.array(data, dtype=float).reshape(shape)
    try:
        tc = TrainConfig(**_field(doc, "train_config", dict, source))
        lc = LossConfig(**_field(doc, "loss_config", dict, source))
    except TypeError as exc:
        raise FormatError(f"{source}: bad config block: {exc}") from None
    return Checkpoint(ModelParams(**arrays), tc, lc)


# -- manifests --------------------------------------------------------------


def save_manifest(path, manifest: DatasetManifest, files: Sequence[str], extra: Optional[dict] = None) -> None:
    cfg = asdict(manifest.config)
    if cfg["p_range"] is not None:
        cfg["p_range"] = list(cfg["p_range"])
    doc = {
        "format_version": MANIFEST_FORMAT_VERSION,
        "generator": cfg,
        "count": manifest.count,
        "train_fraction": manifest.train_fraction,
        "train_count": manifest.train_count,
        "seeds": [str(s) for s in manifest.seeds],
        "files": list(files),
    }
    if extra:
        doc.update(extra)
    atomic_write(path, json.dumps(doc, indent=1) + "\n")


def save_file_manifest(path, files: Sequence[str], **extra) -> None:
    """Manifest for a directory of networks without a generator (all train)."""
    doc = {"format_version": MANIFEST_FORMAT_VERSION, **extra, "files": list(files), "train_count": len(files)}
    atomic_write(path, json.dumps(doc, indent=1) + "\n")


def load_manifest(path) -> dict:
    """Manifest document with ``files`` and ``train_count`` always present."""
    source = str(path)
    doc = _parse_json(Path(path).read_text(), source)
    _field(doc, "format_version", int, source)
    files = _field(doc, "files", list, source)
    doc.setdefault("train_count", len(files))
    if doc.get("generator") is not None:
        g = dict(doc["generator"])
        if g.get("p_range") is not None:
            g["p_range"] = tuple(g["p_range"])
        doc["generator"] = GeneratorConfig(**g)
    return doc


# -- CSV --------------------------------------------------------------------


def _cell(v) -> str:
    if v is None:
        return ""
    if isinstance(v, (float, np.floating)):
        return repr(float(v))
    return str(v)


def write_csv(path, header: Sequence[str], rows: Iterable[Sequence]) -> None:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([_cell(v) for v in row])
    atomic_write(path, buf.getvalue())


def read_csv(path, required: Sequence[str] = ()) -> list[dict]:
    """Rows as dicts; raises :class:`FormatError` on missing columns."""
    with open(path, newline="") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames is None:
            raise FormatError(f"{path}: empty file, expected a header row")
        missing = [c for c in required if c not in reader.fieldnames]
        if missing:
            raise FormatError(f"{path}: missing column(s) {', '.join(missing)}")
        return list(reader)


def parse_number(text: str, where: str, kind=float):
    try:
        v = kind(text)
    except (TypeError, ValueError):
        raise FormatError(f"{where}: expected {'an integer' if kind is int else 'a number'}, got {text!r}") from None
    if kind is float and not math.isfinite(v):
        raise FormatError(f"{where}: non-finite value {text!r}")
    return v
