#!/usr/bin/env python3
"""Download the benchmark graphs and write them as `u v` edge lists.

The graphs are the MATLAB adjacency matrices distributed with the SEAL
reference code (variable `net`). Each one becomes `<out>/<Name>.txt`.

    python3 scripts/fetch_datasets.py            # all graphs into ./data
    python3 scripts/fetch_datasets.py USAir NS   # a subset
"""

import argparse
import io
import pathlib
import sys
import urllib.request

import scipy.io
import scipy.sparse

BASE = "https://raw.githubusercontent.com/muhanzhang/SEAL/master/MATLAB/data/{}.mat"
GRAPHS = ["USAir", "NS", "PB", "Yeast", "Power", "Router"]


def fetch(name: str, timeout: float) -> scipy.sparse.spmatrix:
    with urllib.request.urlopen(BASE.format(name), timeout=timeout) as resp:
        blob = resp.read()
    return scipy.sparse.csr_matrix(scipy.io.loadmat(io.BytesIO(blob))["net"])


def write_edges(adj: scipy.sparse.spmatrix, path: pathlib.Path) -> int:
    upper = scipy.sparse.triu(adj + adj.T, k=1).tocoo()
    edges = sorted(zip(upper.row.tolist(), upper.col.tolist()))
    with path.open("w") as f:
        f.write(f"# {adj.shape[0]} nodes, {len(edges)} links\n")
        for u, v in edges:
            f.write(f"{u} {v}\n")
    return len(edges)


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("graphs", nargs="*", default=GRAPHS)
    ap.add_argument("--out", type=pathlib.Path, default=pathlib.Path("data"))
    ap.add_argument("--timeout", type=float, default=60.0)
    args = ap.parse_args()
    args.out.mkdir(parents=True, exist_ok=True)
    failed = 0
    for name in args.graphs:
        try:
            adj = fetch(name, args.timeout)
        except Exception as e:  # network errors, missing file, bad .mat
            print(f"{name}: {e}", file=sys.stderr)
            failed += 1
            continue
        links = write_edges(adj, args.out / f"{name}.txt")
        print(f"{name}: {adj.shape[0]} nodes, {links} links -> {args.out / (name + '.txt')}")
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main())
