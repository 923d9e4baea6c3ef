"""
Scoring one interlayer link
===========================

Build a tiny two-layer network by hand, project a node of layer 0 into
layer 1 and run the untrained model on the projected graph.
"""

import numpy as np

from msgcn import (
    CandidateLink,
    SpatialMultiplexNetwork,
    build_projected_graph,
    candidate_links,
    forward,
    init_params,
)

# three stations on a line, a path in each layer
positions = np.array([[0.0, 0.0], [1.0, 0.0], [2.0, 0.0]])
features = np.array([[0.4, 0.8, 0.1], [0.3, 0.5, 0.9]])
intra = [(0, 0, 1, 0.5), (0, 1, 2, 0.2), (1, 0, 1, 0.7), (1, 1, 2, 0.4)]
net = SpatialMultiplexNetwork(2, positions, features, intra)

print(len(candidate_links(net)), "candidate links")  # 3 x 3

# node 0 of layer 0 projected next to node 2 of layer 1
g = build_projected_graph(net, CandidateLink(0, 0, 1, 2))
print("nodes:", g.node_ids, "edges:", g.edges)
print("projected node sits at", g.node_positions[g.projected_index])

# an untrained model still gives a nonnegative score
y, trace = forward(init_params(seed=0), g)
print("prediction", y, "pooled embedding size", trace.pooled.shape[1])
