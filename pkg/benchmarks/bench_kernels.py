"""Compiled kernels against the pure-Python fallback, on the workloads the sweeps issue.

    python benchmarks/bench_kernels.py [--repeat N]
"""
import argparse
import random
import timeit

from cpsphere import _pykernels as py
from cpsphere.search import EnumerationBounds, enumerate_models

try:
    from cpsphere import _ckernels as ck
except ImportError:
    ck = None


def workload(seed=0):
    """(chain, x, member masks, a, b) drawn from the 3-world centered enumeration."""
    rng = random.Random(seed)
    out = []
    for m in enumerate_models(EnumerationBounds(3, ("p", "q"), "centered")):
        for x in range(m.n):
            chain = m.chain(x)
            full = chain[-1]
            members = [rng.randrange(full + 1) & full for _ in range(4)]
            out.append((chain, x, members, rng.randrange(full + 1), rng.randrange(full + 1)))
    return out


def run(mod, items):
    for chain, x, members, a, b in items:
        mod.shell_counts(chain, a)
        for mode in (0, 1, 2):
            mod.rank_chain(chain, members, x, mode)
        mod.lewis_cf(chain, a, b)
        mod.lewis_pl(chain, a, b)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    items = workload()
    print(f"{len(items)} pointed frames, 6 kernel calls each")
    backends = [("python", py)] + ([("cython", ck)] if ck else [])
    times = {}
    for name, mod in backends:
        times[name] = min(timeit.repeat(lambda: run(mod, items), number=1, repeat=args.repeat))
        print(f"{name:>7}: {times[name] * 1e3:8.1f} ms")
    if "cython" in times:
        print(f"speedup: {times['python'] / times['cython']:.1f}x")
    else:
        print("compiled kernels not built; only the fallback was timed")


if __name__ == "__main__":
    main()
