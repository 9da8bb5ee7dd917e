"""Time the compiled kernels against their numpy fallbacks.

    python benchmarks/bench_kernels.py [--repeat N]

Inputs are sized like real workloads: a long news article (60 sentences),
a paper-versus-article cross comparison, and score samples of 50k values.
"""

import argparse
import timeit

import numpy as np

from newsprominence import kernels


def workloads(rng):
    def counts(rows, vocab=400):
        c = rng.integers(0, 3, size=(rows, vocab)).astype(np.float64)
        c[rng.random(c.shape) < 0.95] = 0.0
        return c

    article, paper = counts(60), counts(200)
    w = rng.random((60, 60))
    np.fill_diagonal(w, 0.0)
    w /= w.sum(axis=1, keepdims=True)
    a, b = np.sort(rng.normal(size=50_000)), np.sort(rng.normal(0.1, size=50_000))
    p, q = rng.dirichlet(np.ones(400)), rng.dirichlet(np.ones(400))
    return {
        "js_distance (V=400)": lambda k: k.js_distance(p, q),
        "bow_jsd_matrix (60 sentences)": lambda k: k.bow_jsd_matrix(article),
        "bow_jsd_cross (200 x 60)": lambda k: k.bow_jsd_cross(paper, article),
        "power_iterate (S=60, tol 1e-12)": lambda k: k.power_iterate(w, 0.85, 1000, 1e-12),
        "ks_statistic (50k + 50k)": lambda k: k.ks_statistic(a, b),
    }


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args()

    backends = kernels.backends()
    if "cython" not in backends:
        print("compiled extension not available; timing the numpy fallback only")
    names = sorted(backends)
    header = f"{'kernel':34s}" + "".join(f"{n + ' (ms)':>14s}" for n in names)
    if len(names) == 2:
        header += f"{'speedup':>10s}"
    print(header)
    for label, call in workloads(np.random.default_rng(0)).items():
        times = {}
        for name in names:
            impl = backends[name]
            number = 3
            best = min(timeit.repeat(lambda: call(impl), number=number, repeat=args.repeat))
            times[name] = best / number * 1e3
        row = f"{label:34s}" + "".join(f"{times[n]:14.3f}" for n in names)
        if len(names) == 2:
            row += f"{times['python'] / times['cython']:9.1f}x"
        print(row)


if __name__ == "__main__":
    main()
