"""Compare the numba kernels with the pure-numpy fallback.

Kernel timings call both implementations directly. The end-to-end timing
(one forward+backward of the default network) runs in a child process per
backend, since the backend is fixed at import time by ``UAMT_PURE_NUMPY``.

    python benchmarks/bench_kernels.py [--repeat N] [--skip-e2e]
"""
import argparse
import json
import os
import subprocess
import sys
import time

import numpy as np

from uamt import _kernels as k


def best_of(fn, repeat):
    fn()  # warm-up (numba compile / caches)
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


E2E = """
import json, time, numpy as np
from uamt import backbone as bb, _kernels
cfg = bb.NetConfig()
p = bb.init_params(cfg, 0)
x = np.random.default_rng(0).standard_normal((4, 1, 32, 32, 24)).astype(np.float32)
mode = bb.ForwardMode(True, 0.1, 3)
fn = lambda z: (float(z.sum()), np.ones_like(z))
bb.backward(p, x, mode, cfg, fn)
best = min((lambda t0: (bb.backward(p, x, mode, cfg, fn), time.perf_counter() - t0)[1])(time.perf_counter())
           for _ in range({repeat}))
_, g, _ = bb.backward(p, x, mode, cfg, fn)
print(json.dumps({{"backend": _kernels.BACKEND, "seconds": best,
                   "checksum": float(sum(np.abs(v).sum(dtype=np.float64) for v in g.values()))}}))
"""


def end_to_end(pure_numpy, repeat):
    env = dict(os.environ, UAMT_PURE_NUMPY="1" if pure_numpy else "0")
    out = subprocess.run([sys.executable, "-c", E2E.format(repeat=repeat)], env=env,
                         capture_output=True, text=True, check=True)
    return json.loads(out.stdout.strip().splitlines()[-1])


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--skip-e2e", action="store_true")
    args = ap.parse_args(argv)
    if not k.HAS_NUMBA:
        print("numba unavailable (or UAMT_PURE_NUMPY set); only the numpy path can be timed")
    rng = np.random.default_rng(0)
    rows = []

    for shape in [(34, 34, 26, 1), (18, 18, 14, 16), (10, 10, 8, 64)]:
        xp = rng.standard_normal(shape).astype(np.float32)
        t_np = best_of(lambda: k.im2col3_numpy(xp).copy(), args.repeat)
        t_nb = best_of(lambda: k.im2col3(xp), args.repeat) if k.HAS_NUMBA else float("nan")
        same = np.array_equal(k.im2col3(xp), k.im2col3_numpy(xp))
        rows.append((f"im2col3 {shape}", t_np, t_nb, same))

    for n in (500, 3000):
        a = rng.integers(0, 64, size=(n, 3))
        b = rng.integers(0, 64, size=(n, 3))
        t_np = best_of(lambda: k.nearest_distances_numpy(a, b), args.repeat)
        t_nb = best_of(lambda: k.nearest_distances(a, b), args.repeat) if k.HAS_NUMBA else float("nan")
        same = np.array_equal(k.nearest_distances(a, b), k.nearest_distances_numpy(a, b))
        rows.append((f"nearest_distances n={n}", t_np, t_nb, same))

    if not args.skip_e2e:
        r_np = end_to_end(True, max(1, args.repeat // 2))
        r_nb = end_to_end(False, max(1, args.repeat // 2))
        rows.append(("fwd+bwd 4x32x32x24", r_np["seconds"], r_nb["seconds"],
                     r_np["checksum"] == r_nb["checksum"]))

    print(f"{'kernel':<32}{'numpy [ms]':>12}{'numba [ms]':>12}{'speedup':>9}  identical")
    for name, t_np, t_nb, same in rows:
        print(f"{name:<32}{1e3 * t_np:>12.2f}{1e3 * t_nb:>12.2f}{t_np / t_nb:>8.1f}x  {same}")


if __name__ == "__main__":
    main()
