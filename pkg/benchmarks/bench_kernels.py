"""Benchmark the compiled kernels against the pure-Python fallback.

Usage: python benchmarks/bench_kernels.py [--pairs N]

Times the two hot paths (pair featurization, logistic loss/gradient) on a
synthetic workload sized like a mid-size scoring run and prints a table
with the speedup of the compiled backend.
"""

import argparse
import time

import numpy as np

from valuenli.kernels import available_backends


def make_text_pack(rng, n_texts, vocab=30_000, min_types=8, max_types=40):
    ids, weights, offsets, lengths, norms = [], [], [0], [], []
    for _ in range(n_texts):
        n_types = int(rng.integers(min_types, max_types))
        type_ids = np.sort(
            rng.choice(vocab, size=n_types, replace=False).astype(np.int64)
        )
        w = rng.uniform(0.2, 4.0, size=n_types)
        ids.append(type_ids)
        weights.append(w)
        offsets.append(offsets[-1] + n_types)
        lengths.append(int(rng.integers(n_types, n_types * 2)))
        norms.append(float(np.sqrt(np.dot(w, w))))
    return (
        np.concatenate(ids),
        np.concatenate(weights),
        np.array(offsets, dtype=np.int64),
        np.array(norms, dtype=np.float64),
        np.array(lengths, dtype=np.int64),
    )


def make_content(rng, ids, offsets):
    content, content_off = [], [0]
    for t in range(len(offsets) - 1):
        seg = ids[offsets[t] : offsets[t + 1]]
        keep = seg[rng.uniform(size=len(seg)) < 0.8]
        content.append(keep)
        content_off.append(content_off[-1] + len(keep))
    return np.concatenate(content), np.array(content_off, dtype=np.int64)


def best_of(fn, repeats=3):
    timings = []
    for _ in range(repeats):
        started = time.perf_counter()
        fn()
        timings.append(time.perf_counter() - started)
    return min(timings)


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--pairs", type=int, default=200_000)
    args = parser.parse_args()

    backends = available_backends()
    if "native" not in backends:
        print("note: compiled kernels not built; timing the pure backend only")

    rng = np.random.default_rng(0)
    n_premises, n_hypotheses = 2_000, 640
    premises = make_text_pack(rng, n_premises)
    hypotheses = make_text_pack(rng, n_hypotheses, min_types=6, max_types=14)
    content = make_content(rng, hypotheses[0], hypotheses[2])
    pair_p = rng.integers(0, n_premises, size=args.pairs).astype(np.int64)
    pair_h = rng.integers(0, n_hypotheses, size=args.pairs).astype(np.int64)

    X = rng.uniform(0, 1, size=(args.pairs, 4))
    y = rng.integers(0, 2, size=args.pairs).astype(np.float64)
    sw = np.ones(args.pairs)
    params = rng.normal(size=5)

    Xb = np.ascontiguousarray(X[:128])
    yb, swb = y[:128], sw[:128]

    def batched_steps(mod):
        for _ in range(500):
            mod.logistic_loss_grad(Xb, yb, swb, params)

    tasks = {
        "pair_feature_matrix": lambda mod: mod.pair_feature_matrix(
            *premises, *hypotheses, *content, pair_p, pair_h
        ),
        "logistic_loss_grad": lambda mod: mod.logistic_loss_grad(X, y, sw, params),
        "500 x 128-row batches": batched_steps,
        "logistic_scores": lambda mod: mod.logistic_scores(X, params),
    }

    print(f"workload: {args.pairs:,} pairs, {n_premises:,} premises, "
          f"{n_hypotheses:,} hypotheses\n")
    print(f"{'kernel':<24}{'pure (s)':>12}{'native (s)':>12}{'speedup':>10}")
    for name, task in tasks.items():
        pure_time = best_of(lambda: task(backends["pure"]))
        if "native" in backends:
            native_time = best_of(lambda: task(backends["native"]))
            print(f"{name:<24}{pure_time:>12.4f}{native_time:>12.4f}"
                  f"{pure_time / native_time:>9.1f}x")
        else:
            print(f"{name:<24}{pure_time:>12.4f}{'-':>12}{'-':>10}")


if __name__ == "__main__":
    main()
