"""
Training on synthetic complete networks
=======================================

Generate networks whose interlayer weights are known, train the model for
a few epochs and look at the test metrics.
"""

from msgcn import GeneratorConfig, TrainConfig, evaluate_networks, fit, generate_dataset, make_manifest, train_test_split

# 60 complete networks of 5 nodes, 48 for training
manifest = make_manifest(GeneratorConfig("complete", num_nodes=5, num_layers=2, seed=1), count=60)
train, test = train_test_split(generate_dataset(manifest))

# fewer epochs than the default 40 to keep this quick
result = fit(train, TrainConfig(epochs=10, seed=1))
print("loss by epoch:", [round(v, 3) for v in result.history])

m, pred, actual = evaluate_networks(result.params, test)
print(f"{m.n} test links  mse {m.mse:.4f}  r {m.pearson_r:.3f}  R2 {m.r_squared:.3f}")

# the spread term keeps predictions from collapsing to one value
print("prediction std", pred.std().round(4), "target std", actual.std().round(4))
