"""Regenerate the dimension golden files from the independent oracles.

Run from the repository root: python tests/golden/make_golden.py
"""

import json
import pathlib
import sys

HERE = pathlib.Path(__file__).resolve().parent
sys.path.insert(0, str(HERE.parent))
import oracles  # noqa: E402

FAMILIES = ("mu1", "mu2", "mu3")


def grid(nmax=20, kmax=3):
    for fam in FAMILIES:
        for k in range(1, kmax + 1):
            for n in range(2 * k + 4, nmax + 1):
                yield fam, n, k


def closed_aut(fam, n, k):
    return {"mu1": n + 2 * k * k + k, "mu2": n + 2 * k * k + 1,
            "mu3": n + 2 * k * k + 2 * k + 1}[fam]


def closed_local(fam, n, k):
    num = {"mu1": n * n + 10 * k * k - 4 * k * n + n + 6 * k,
           "mu2": n * n + 10 * k * k - 4 * k * n + n + 2 * k + 4,
           "mu3": n * n + 10 * k * k - 4 * k * n - n + 12 * k + 4}[fam]
    return num // 2


def main():
    aut = [{"family": f, "n": n, "k": k, "computed": oracles.aut_count_literal(f, n, k),
            "remark": closed_aut(f, n, k)} for f, n, k in grid()]
    loc = [{"family": f, "n": n, "k": k, "computed": oracles.pattern_count(f, n, k),
            "remark": closed_local(f, n, k)} for f, n, k in grid()]
    for name, rows in (("aut_dims.json", aut), ("localaut_dims.json", loc)):
        (HERE / name).write_text(json.dumps(rows, indent=1) + "\n")


if __name__ == "__main__":
    main()
