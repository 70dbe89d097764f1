"""Benchmark the compiled word kernel against the pure-Python twin.

Runs free reduction and concatenate-reduce over random dart words on cycle
and wedge involutions. Usage: python benchmarks/bench_wordcore.py [repeats]
"""

import random
import sys
import time
from array import array

from orbigroupoid import _wordcore_py

try:
    from orbigroupoid import _wordcore
except ImportError:
    _wordcore = None


def make_cases(rng, n_darts, n_words, word_len):
    invol = array("i", [d + 1 if d % 2 == 0 else d - 1 for d in range(n_darts)])
    words = []
    for _ in range(n_words):
        words.append(tuple(rng.randrange(n_darts) for _ in range(word_len)))
    return invol, words


def run(impl, invol, words, repeats):
    reduced = [impl.reduce_word(w, invol) for w in words]
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        for w in words:
            impl.reduce_word(w, invol)
        for a, b in zip(reduced, reversed(reduced)):
            impl.concat_reduce(a, b, invol)
        best = min(best, time.perf_counter() - t0)
    return best


def main():
    repeats = int(sys.argv[1]) if len(sys.argv) > 1 else 5
    rng = random.Random(1)
    print(f"{'case':<28}{'pure (s)':>12}{'cython (s)':>12}{'speedup':>10}")
    for n_darts, n_words, word_len in ((8, 400, 200), (64, 400, 200),
                                       (8, 40, 5000), (256, 20, 20000)):
        invol, words = make_cases(rng, n_darts, n_words, word_len)
        label = f"darts={n_darts} len={word_len}"
        pure = run(_wordcore_py, invol, words, repeats)
        if _wordcore is None:
            print(f"{label:<28}{pure:>12.4f}{'n/a':>12}{'n/a':>10}")
            continue
        for w in words:
            assert _wordcore.reduce_word(w, invol) == _wordcore_py.reduce_word(w, invol)
        compiled = run(_wordcore, invol, words, repeats)
        print(f"{label:<28}{pure:>12.4f}{compiled:>12.4f}{pure / compiled:>9.1f}x")
    if _wordcore is None:
        print("compiled kernel not built; showing pure-python times only")


if __name__ == "__main__":
    main()
