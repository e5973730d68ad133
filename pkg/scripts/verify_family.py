"""Cross-check the memoised family tree against brute force on small members.

For each (n, k) the script compares the memo's N with the word found by
simulating P(n, k), and (when the tree is small enough) with exhaustive actree
search.  Exit status 1 if any check disagrees.
"""
import argparse
import sys
import time

from pdaconv import oracles
from pdaconv.family import FamilyParams, build_family_pda, build_unique_actree


def check(n, k, max_bfs, max_trees):
    params = FamilyParams(n, k)
    t0 = time.perf_counter()
    stats = build_unique_actree(params)
    N, dim = stats.size, stats.dimension
    line = f"P({n},{k}): N={N} d={dim}"
    ok = dim == n * n * k and N >= 2 ** (n * n * k)
    pda = build_family_pda(params)
    if N <= max_bfs:
        res = oracles.enumerate_pda_language(pda, N + 2)
        same = res.complete and res.words == {("b",) * N}
        line += f" bfs={'ok' if same else 'MISMATCH'}"
        ok &= same
    if N <= max_trees:
        trees = oracles.enumerate_actrees(pda, N + 2)
        same = trees == [stats.expand()]
        line += f" actrees={'ok' if same else 'MISMATCH'}"
        ok &= same
    return ok, line + f" ({time.perf_counter() - t0:.2f}s)"


def main(argv=None):
    ap = argparse.ArgumentParser(description="verify small members of the PDA family")
    ap.add_argument("--max-n", type=int, default=3)
    ap.add_argument("--max-k", type=int, default=3)
    ap.add_argument("--max-bfs", type=int, default=25_000, help="simulate only when N is at most this")
    ap.add_argument("--max-trees", type=int, default=200, help="search actrees only when N is at most this")
    args = ap.parse_args(argv)
    all_ok = True
    for n in range(1, args.max_n + 1):
        for k in range(1, args.max_k + 1):
            ok, line = check(n, k, args.max_bfs, args.max_trees)
            print(line)
            all_ok &= ok
    return 0 if all_ok else 1


if __name__ == "__main__":
    sys.exit(main())
