"""Time the numba kernels against their numpy fallbacks.

Run with ``python3 benchmarks/bench_kernels.py``.  Each kernel is warmed up
once (numba compiles on first call), results are checked for equality, then
the best of several repeats is reported.
"""

import argparse
import time

import numpy as np

from twistspace import _kernels, corpus
from twistspace.realpart import slot_matching
from twistspace.wspace import _generators, direction_basis


def best_of(fn, repeats: int) -> float:
    times = []
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def cases():
    rng = np.random.default_rng(0)
    mat = rng.integers(0, 2, size=(200, 300), dtype=np.uint8)
    yield "rref 200x300", _kernels.numpy_rref, _kernels.numba_rref, (mat,)

    g, t = corpus.load_all()["petersen"]
    sm = slot_matching(g, t)
    masks = np.arange(1 << direction_basis(g, t).k, dtype=np.int64)
    args = (sm.arc_mate, sm.plain_mate, sm.twist_mate, sm.coord, masks)
    yield f"cycle_counts petersen ({masks.size} lifts)", _kernels.numpy_cycle_counts, _kernels.numba_cycle_counts, args

    gens = _generators(g, t)
    yield f"action_zero petersen ({masks.size} masks)", _kernels.numpy_action_zero, _kernels.numba_action_zero, (gens, masks)


def main() -> None:
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeats", type=int, default=5)
    args = ap.parse_args()
    if _kernels.numba_rref is None:
        print("numba unavailable or disabled; timing the numpy path only")
    print(f"{'kernel':45s} {'numpy [s]':>10s} {'numba [s]':>10s} {'speedup':>8s}")
    for name, np_fn, nb_fn, fargs in cases():
        ref = np_fn(*fargs)
        t_np = best_of(lambda: np_fn(*fargs), args.repeats)
        if nb_fn is None:
            print(f"{name:45s} {t_np:10.4f} {'-':>10s} {'-':>8s}")
            continue
        got = nb_fn(*fargs)
        if isinstance(ref, tuple):
            assert ref[1] == got[1] and np.array_equal(ref[0], got[0]), name
        else:
            assert np.array_equal(np.asarray(ref), np.asarray(got)), name
        t_nb = best_of(lambda: nb_fn(*fargs), args.repeats)
        print(f"{name:45s} {t_np:10.4f} {t_nb:10.4f} {t_np / t_nb:7.1f}x")


if __name__ == "__main__":
    main()
