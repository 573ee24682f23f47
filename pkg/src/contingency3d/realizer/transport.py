"""Transport engine: build a table through an integer (mu, nu) matrix and a Gale-Ryser fill.

A table with marginals (lam, mu, nu) exists iff some non-negative integer
matrix C with row sums mu and column sums nu has entries, sorted
non-increasingly, dominated by conj(lam). Given such a C, the axis-1 rows
are filled greedily, each row taking its lam_i cells from the (j, k)
columns of largest residual capacity. The matrix is chosen proportionally,
C[j, k] ~ mu_j nu_k / n, which keeps its entries flat.
"""

from __future__ import annotations

import numpy as np

from ..partitions import Partition, conjugate, dominates_seq


def proportional_matrix(mu, nu) -> np.ndarray:
    """Integer matrix with the given margins and entries near mu_j nu_k / n.

    Rows are rounded one at a time with largest-remainder rounding against
    the residual column sums, so both margins come out exact.
    """
    mu = np.asarray(mu, dtype=np.int64)
    res = np.asarray(nu, dtype=np.int64).copy()
    C = np.zeros((len(mu), len(res)), dtype=np.int64)
    left = int(mu.sum())
    for j, m in enumerate(mu):
        if left == m:
            C[j] = res
            res[:] = 0
            break
        w = res * (m / left)
        x = np.minimum(np.floor(w).astype(np.int64), res)
        short = int(m - x.sum())
        if short:
            frac = w - x
            frac[x >= res] = -1.0
            idx = np.argsort(-frac, kind="stable")[:short]
            x[idx] += 1
        C[j] = x
        res -= x
        left -= int(m)
    return C


def matrix_feasible(lam, C: np.ndarray) -> bool:
    c = np.sort(C.ravel())[::-1]
    c = c[c > 0]
    lc = conjugate(Partition.from_parts(int(v) for v in lam)).parts
    return dominates_seq(lc, [int(v) for v in c])


def transport_table(lam, mu, nu) -> list[tuple[int, int, int]] | None:
    """Cells (1-based, in sorted coordinates) of a table with the given marginals, or None.

    None means the proportional matrix failed the dominance test; it does
    not prove that no table exists.
    """
    lam = [int(v) for v in lam]
    if not lam:
        return []
    C = proportional_matrix(mu, nu)
    if not matrix_feasible(lam, C):
        return None
    cap = C.ravel().copy()
    q = C.shape[1]
    cells: list[tuple[int, int, int]] = []
    for i in np.argsort([-v for v in lam], kind="stable"):
        d = lam[i]
        if d > int((cap > 0).sum()):
            return None
        idx = np.argpartition(-cap, d - 1)[:d]
        cap[idx] -= 1
        for t in idx.tolist():
            cells.append((int(i) + 1, t // q + 1, t % q + 1))
    if cap.any():  # pragma: no cover - margins are exact by construction
        return None
    return cells
