"""Point enumeration and batch evaluation over prime fields.

Projective points are canonical representatives: the first nonzero
coordinate is 1. Enumeration order is deterministic (chart index, then the
remaining coordinates lexicographically), so everything downstream that
iterates over points is reproducible.

Batch evaluation uses numpy power tables per variable. Intermediate products
are reduced mod p at every step, so values stay below p**2 and fit int64 for
any prime this package will realistically see.
"""

from __future__ import annotations

import numpy as np

from .errors import FieldError
from .poly import Polynomial


def projective_point_count(p: int, n: int) -> int:
    return (p ** (n + 1) - 1) // (p - 1)


def projective_points_array(p: int, n: int) -> np.ndarray:
    """All points of P^n(F_p) as an (N, n+1) int64 array of representatives."""
    blocks = []
    for k in range(n + 1):
        tail = n - k
        count = p ** tail
        block = np.zeros((count, n + 1), dtype=np.int64)
        block[:, k] = 1
        idx = np.arange(count)
        for j in range(tail):
            block[:, k + 1 + j] = (idx // p ** (tail - 1 - j)) % p
        blocks.append(block)
    return np.concatenate(blocks, axis=0)


def projective_points_list(p: int, n: int) -> list:
    return [tuple(int(x) for x in row) for row in projective_points_array(p, n)]


def evaluate_batch(f: Polynomial, points: np.ndarray) -> np.ndarray:
    """Evaluate f at every row of `points`, returning residues in [0, p)."""
    ring = f.ring
    if ring.field.kind != "Fp":
        raise FieldError("batch evaluation needs a prime field")
    p = ring.field.p
    n = ring.nvars
    if points.ndim != 2 or points.shape[1] != n:
        raise ValueError(f"points must be (N, {n}) shaped")
    count = points.shape[0]
    if f.is_zero or count == 0:
        return np.zeros(count, dtype=np.int64)

    max_exp = [0] * n
    for exps in f.terms:
        for v, e in enumerate(exps):
            if e > max_exp[v]:
                max_exp[v] = e
    pows = []
    for v in range(n):
        tbl = np.empty((max_exp[v] + 1, count), dtype=np.int64)
        tbl[0] = 1
        col = points[:, v] % p
        for e in range(1, max_exp[v] + 1):
            tbl[e] = (tbl[e - 1] * col) % p
        pows.append(tbl)

    acc = np.zeros(count, dtype=np.int64)
    for exps, coeff in f.terms.items():
        term = np.full(count, int(coeff) % p, dtype=np.int64)
        for v, e in enumerate(exps):
            if e:
                term = (term * pows[v][e]) % p
        acc = (acc + term) % p
    return acc


def vanishing_filter(polys, points: np.ndarray) -> np.ndarray:
    """Rows of `points` where every polynomial in `polys` vanishes.

    Evaluates one polynomial at a time and drops non-vanishing rows before
    touching the next, which is what makes full-space sweeps affordable.
    """
    survivors = points
    for g in polys:
        if survivors.shape[0] == 0:
            break
        if g.is_zero:
            continue
        vals = evaluate_batch(g, survivors)
        survivors = survivors[vals == 0]
    return survivors


def singular_points_array(f: Polynomial) -> np.ndarray:
    """Points of P^n(F_p) where f and all its partials vanish.

    Checking f itself alongside the partials keeps the test correct in every
    characteristic, including p dividing deg f where the Euler relation
    degenerates.
    """
    ring = f.ring
    if ring.field.kind != "Fp":
        raise FieldError("singular point enumeration needs a prime field")
    pts = projective_points_array(ring.field.p, ring.nvars - 1)
    polys = [f] + [f.partial_derivative(i) for i in range(ring.nvars)]
    return vanishing_filter(polys, pts)


def is_singular_hypersurface(f: Polynomial) -> bool:
    return singular_points_array(f).shape[0] > 0


def inverse_table(p: int) -> np.ndarray:
    """inv[v] = v^-1 mod p for v in 1..p-1 (inv[0] unused, set to 0)."""
    inv = np.zeros(p, dtype=np.int64)
    inv[1:] = np.array([pow(v, p - 2, p) for v in range(1, p)], dtype=np.int64)
    return inv


def canonicalize_rows(points: np.ndarray, p: int) -> np.ndarray:
    """Scale each nonzero row so its first nonzero coordinate is 1."""
    pts = points % p
    nonzero = pts != 0
    if not nonzero.any(axis=1).all():
        raise ValueError("cannot canonicalize a zero row")
    first = nonzero.argmax(axis=1)
    lead = pts[np.arange(pts.shape[0]), first]
    inv = inverse_table(p)
    return (pts * inv[lead][:, None]) % p


def encode_rows(points: np.ndarray, p: int) -> np.ndarray:
    """Injective integer encoding of rows (base-p digits)."""
    n = points.shape[1]
    weights = np.array([p ** i for i in range(n)], dtype=np.int64)
    return points @ weights


def point_index(p: int, n: int) -> dict:
    """Encoded canonical representative -> row number in the standard
    enumeration of P^n(F_p)."""
    pts = projective_points_array(p, n)
    codes = encode_rows(pts, p)
    return {int(c): i for i, c in enumerate(codes)}
