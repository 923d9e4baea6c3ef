"""
From passenger counts to multiplex networks
===========================================

Four small CSV tables describe two stations over three intervals. Each
pair of adjacent intervals becomes one two-layer network.
"""

import tempfile
from pathlib import Path

from msgcn import candidate_links, ingest_files

tables = {
    "stations.csv": "station_id,name,x,y\nA,Alpha,0,0\nB,Beta,1,0\n",
    "boardings.csv": "date,interval_index,station_id,boardings\n"
    + "".join(f"d1,{t},{s},{n}\n" for t, s, n in [(0, "A", 10), (0, "B", 4), (1, "A", 7), (1, "B", 9), (2, "A", 3), (2, "B", 5)]),
    "intra.csv": "date,interval_index,origin,dest,passengers\nd1,0,A,B,6\nd1,1,B,A,2\nd1,2,A,B,1\n",
    # only one cross-interval row; every other pair counts as zero passengers
    "cross.csv": "date,interval_index,origin,dest,passengers\nd1,0,A,B,5\n",
}

with tempfile.TemporaryDirectory() as tmp:
    paths = []
    for name, text in tables.items():
        (Path(tmp) / name).write_text(text)
        paths.append(Path(tmp) / name)
    nets = ingest_files(*paths, date="d1")

for k, net in enumerate(nets):
    print(f"intervals ({k}, {k + 1}): boardings {net.features.tolist()}")
    for c in candidate_links(net):
        print("   ", c.source_node, "->", c.target_node, "passengers", c.true_weight)
