"""Temporal passenger-flow tables to two-layer multiplex networks.

Four CSV tables describe one or more service days:

stations   ``station_id, name, x, y``
boardings  ``date, interval_index, station_id, boardings``
intra      ``date, interval_index, origin, dest, passengers``
cross      ``date, interval_index, origin, dest, passengers``

``cross`` rows count passengers who board at ``origin`` during interval
``t`` and reach ``dest`` during interval ``t + 1``. Each pair of adjacent
intervals of a date becomes one network: layer 0 is interval ``t``,
layer 1 is ``t + 1``. Boardings are node features, intra-interval flows
are intralayer weights, and cross-interval flows are the interlayer
ground truth. A cross pair with no row counts as zero passengers.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .formats import FormatError, parse_number, read_csv
from .graph_core import SpatialMultiplexNetwork

__all__ = ["Station", "TemporalFlowTables", "IngestError", "read_tables", "ingest_temporal"]


class IngestError(ValueError):
    pass


@dataclass(frozen=True)
class Station:
    station_id: str
    name: str
    x: float
    y: float


@dataclass
class TemporalFlowTables:
    stations: list[Station]
    # (date, interval, station) -> boardings
    boardings: dict = field(default_factory=dict)
    # (date, interval, origin, dest) -> passengers
    intra_flows: dict = field(default_factory=dict)
    cross_flows: dict = field(default_factory=dict)

    def intervals(self, date: str) -> list[int]:
        seen = {t for d, t, _ in self.boardings if d == date}
        seen |= {t for d, t, _, _ in self.intra_flows if d == date}
        return sorted(seen)


def _count(text, where):
    v = parse_number(text, where, int)
    if v < 0:
        raise FormatError(f"{where}: passenger counts must be >= 0, got {v}")
    return v


def _flow_table(path, label):
    rows = read_csv(path, ["date", "interval_index", "origin", "dest", "passengers"])
    out = {}
    for k, r in enumerate(rows, start=2):
        where = f"{path}:{k}"
        key = (r["date"], parse_number(r["interval_index"], f"{where} interval_index", int), r["origin"], r["dest"])
        if key in out:
            raise FormatError(f"{where}: duplicate {label} row for {key}")
        out[key] = _count(r["passengers"], f"{where} passengers")
    return out


def read_tables(stations, boardings, intra, cross) -> TemporalFlowTables:
    """Load the four CSV tables; row errors cite ``file:line``."""
    st = []
    for k, r in enumerate(read_csv(stations, ["station_id", "name", "x", "y"]), start=2):
        where = f"{stations}:{k}"
        st.append(Station(r["station_id"], r["name"], parse_number(r["x"], f"{where} x"), parse_number(r["y"], f"{where} y")))
    if len({s.station_id for s in st}) != len(st):
        raise FormatError(f"{stations}: duplicate station_id")

    b = {}
    for k, r in enumerate(read_csv(boardings, ["date", "interval_index", "station_id", "boardings"]), start=2):
        where = f"{boardings}:{k}"
        key = (r["date"], parse_number(r["interval_index"], f"{where} interval_index", int), r["station_id"])
        if key in b:
            raise FormatError(f"{where}: duplicate boardings row for {key}")
        b[key] = _count(r["boardings"], f"{where} boardings")
    return TemporalFlowTables(st, b, _flow_table(intra, "intra"), _flow_table(cross, "cross"))


def ingest_temporal(tables: TemporalFlowTables, date: str) -> list[SpatialMultiplexNetwork]:
    """One two-layer network per adjacent interval pair of ``date``.

    Stations with no boardings and no intra flow in both intervals of a
    pair are dropped from that network; the rest keep the station table
    order. Intra flows in both directions between two stations are summed
    into one undirected weight; station pairs with zero flow get no edge.
    """
    intervals = tables.intervals(date)
    if not intervals:
        raise IngestError(f"date {date!r} not present in the tables")
    if intervals != list(range(intervals[0], intervals[-1] + 1)):
        raise IngestError(f"intervals of {date!r} are not contiguous: {intervals}")
    known = {s.station_id for s in tables.stations}

    activity = defaultdict(int)
    intra = defaultdict(dict)
    for (d, t, o, de), n in tables.intra_flows.items():
        if d != date:
            continue
        for sid in (o, de):
            if sid not in known:
                raise IngestError(f"intra flow references unknown station {sid!r}")
        activity[t, o] += n
        activity[t, de] += n
        if o != de:
            pair = (o, de) if o < de else (de, o)
            intra[t][pair] = intra[t].get(pair, 0) + n
    for (d, t, s), n in tables.boardings.items():
        if d == date:
            if s not in known:
                raise IngestError(f"boardings reference unknown station {s!r}")
            activity[t, s] += n

    nets = []
    for t in intervals[:-1]:
        pair_t = (t, t + 1)
        keep = [s for s in tables.stations if any(activity[tt, s.station_id] > 0 for tt in pair_t)]
        if not keep:
            raise IngestError(f"no station has passenger flow in intervals {pair_t} of {date!r}")
        index = {s.station_id: k for k, s in enumerate(keep)}

        feats = np.empty((2, len(keep)))
        for layer, tt in enumerate(pair_t):
            for s in keep:
                key = (date, tt, s.station_id)
                if key not in tables.boardings:
                    raise IngestError(f"missing boardings for station {s.station_id!r} in interval {tt} of {date!r}")
                feats[layer, index[s.station_id]] = tables.boardings[key]

        intra_edges = []
        for layer, tt in enumerate(pair_t):
            for (a, b), n in intra[tt].items():
                if n > 0 and a in index and b in index:
                    u, v = sorted((index[a], index[b]))
                    intra_edges.append((layer, u, v, float(n)))
        intra_edges.sort()

        inter = []
        for s in keep:
            for r in keep:
                n = tables.cross_flows.get((date, t, s.station_id, r.station_id), 0)
                inter.append((0, index[s.station_id], 1, index[r.station_id], float(n)))

        positions = np.array([(s.x, s.y) for s in keep])
        nets.append(SpatialMultiplexNetwork(2, positions, feats, intra_edges, inter))
    return nets


def ingest_files(stations, boardings, intra, cross, date) -> list[SpatialMultiplexNetwork]:
    return ingest_temporal(read_tables(*(Path(p) for p in (stations, boardings, intra, cross))), date)
