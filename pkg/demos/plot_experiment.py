"""
Comparing network families
==========================

Repeated trials per group, each on a fresh dataset, with a Welch t-test
on the pooled absolute errors.
"""

from msgcn import ExperimentConfig, GeneratorConfig, GroupSpec, TrainConfig, run_experiment

cfg = ExperimentConfig(
    groups=[
        GroupSpec("complete", GeneratorConfig("complete", 5)),
        GroupSpec("small world", GeneratorConfig("small_world", 6, k=2)),
    ],
    trials=2,
    count=40,
    train=TrainConfig(epochs=5),
)
report = run_experiment(cfg)

for row in report.summary():
    print(f"{row['group']:>12}: mse {row['mse_mean']:.4f}  r {row['pearson_r_mean']:.3f}")

for t in report.ttests:
    print(f"{t.group_a} vs {t.group_b}: t = {t.t:.2f}, p = {t.p:.3g}")
