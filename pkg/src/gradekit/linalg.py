"""Dense exact linear algebra over finite fields.

Conventions used across the package:

* matrices are 2-D numpy int64 arrays of field-element codes;
* operators act on column vectors (``w = A @ v``);
* subspaces are stored as echelonized row matrices (reduced row echelon
  form with no zero rows), which makes membership tests and coordinate
  extraction trivial.
"""

from __future__ import annotations

import numpy as np

from .ff import Field, padd, pdeg, pdivmod, pgcd, pmul, ptrim

_I64 = np.int64


def zeros(rows: int, cols: int) -> np.ndarray:
    return np.zeros((rows, cols), dtype=_I64)


def eye(n: int) -> np.ndarray:
    return np.eye(n, dtype=_I64)


def as_matrix(m) -> np.ndarray:
    m = np.asarray(m, dtype=_I64)
    if m.ndim != 2:
        raise ValueError(f"expected a 2-D matrix, got shape {m.shape}")
    return m


def rref(F: Field, m):
    """Reduced row echelon form; returns (reduced, rank, pivot columns)."""
    r = as_matrix(m).copy()
    nrows, ncols = r.shape
    pivots = []
    row = 0
    for col in range(ncols):
        if row == nrows:
            break
        hits = np.nonzero(r[row:, col])[0]
        if hits.size == 0:
            continue
        pr = row + int(hits[0])
        if pr != row:
            r[[row, pr]] = r[[pr, row]]
        r[row] = F.mul(int(F.inv(int(r[row, col]))), r[row])
        others = np.nonzero(r[:, col])[0]
        others = others[others != row]
        if others.size:
            r[others] = F.sub(r[others], F.mul(r[others, col][:, None], r[row][None, :]))
        pivots.append(col)
        row += 1
    return r, row, pivots


def rank(F: Field, m) -> int:
    return rref(F, m)[1]


def row_space(F: Field, m) -> np.ndarray:
    """Echelonized basis of the row space (zero rows dropped)."""
    r, rk, _ = rref(F, m)
    return r[:rk]


def kernel_basis(F: Field, m) -> np.ndarray:
    """Rows form a basis of the right null space {v : m @ v = 0}."""
    m = as_matrix(m)
    ncols = m.shape[1]
    r, rk, pivots = rref(F, m)
    free = [c for c in range(ncols) if c not in set(pivots)]
    out = zeros(len(free), ncols)
    for i, fc in enumerate(free):
        out[i, fc] = 1
        for j, pc in enumerate(pivots):
            out[i, pc] = F.neg(r[j, fc])
    return out


def left_kernel_basis(F: Field, m) -> np.ndarray:
    return kernel_basis(F, as_matrix(m).T)


def inverse(F: Field, m) -> np.ndarray:
    m = as_matrix(m)
    n = m.shape[0]
    if m.shape[1] != n:
        raise ValueError("inverse of a non-square matrix")
    aug = np.hstack([m, eye(n)])
    r, rk, _ = rref(F, aug)
    if rk < n or not np.array_equal(r[:, :n], eye(n)):
        raise np.linalg.LinAlgError("matrix is singular")
    return r[:, n:]


def is_invertible(F: Field, m) -> bool:
    m = as_matrix(m)
    return m.shape[0] == m.shape[1] and rank(F, m) == m.shape[0]


def reduce_row(F: Field, basis: np.ndarray, pivots, v: np.ndarray) -> np.ndarray:
    """Residual of v after reduction against an rref row basis."""
    v = v.copy()
    for i, pc in enumerate(pivots):
        c = v[pc]
        if c:
            v = F.sub(v, F.mul(int(c), basis[i]))
    return v


def coords_in_rowspace(F: Field, basis: np.ndarray, pivots, v: np.ndarray):
    """Coordinates of v in an rref row basis, or None if v is outside it."""
    c = np.asarray(v, dtype=_I64)[list(pivots)] if pivots else zeros(1, 0)[0]
    if basis.shape[0]:
        residual = F.sub(np.asarray(v, dtype=_I64), F.matmul(c, basis))
    else:
        residual = np.asarray(v, dtype=_I64)
    if np.any(residual):
        return None
    return c


def spin(F: Field, seeds, operators) -> np.ndarray:
    """Echelonized basis of the least subspace containing the seed row
    vectors and stable under every operator (acting on column vectors)."""
    seeds = np.asarray(seeds, dtype=_I64)
    if seeds.ndim == 1:
        seeds = seeds[None, :]
    n = seeds.shape[1]
    for op in operators:
        op = as_matrix(op)
        if op.shape != (n, n):
            raise ValueError(f"operator shape {op.shape} does not match dimension {n}")
    basis = row_space(F, seeds)
    while True:
        if basis.shape[0] == 0 or basis.shape[0] == n:
            return basis
        images = [F.matmul(basis, as_matrix(op).T) for op in operators]
        stacked = np.vstack([basis] + images)
        new_basis = row_space(F, stacked)
        if new_basis.shape[0] == basis.shape[0]:
            return new_basis
        basis = new_basis


def is_stable(F: Field, basis: np.ndarray, operators) -> bool:
    """True when the row space of an rref basis is invariant under all operators."""
    _, _, pivots = rref(F, basis)
    for op in operators:
        img = F.matmul(basis, as_matrix(op).T)
        for row in img:
            if np.any(reduce_row(F, basis, pivots, row)):
                return False
    return True


def kron(F: Field, a, b) -> np.ndarray:
    """Kronecker product with blocks a[i, j] * b."""
    a, b = as_matrix(a), as_matrix(b)
    if F.k == 1:
        return np.kron(a, b) % F.p
    ra, ca = a.shape
    rb, cb = b.shape
    out = F.mul(a[:, None, :, None], b[None, :, None, :])
    return out.reshape(ra * rb, ca * cb)


def intersect_row_spaces(F: Field, a, b) -> np.ndarray:
    """Echelonized basis of the intersection of two row spaces."""
    a = row_space(F, a)
    b = row_space(F, b)
    if a.shape[0] == 0 or b.shape[0] == 0:
        return zeros(0, a.shape[1] if a.size else b.shape[1])
    stacked = np.vstack([a, F.neg(b)])
    combos = left_kernel_basis(F, stacked)
    if combos.shape[0] == 0:
        return zeros(0, a.shape[1])
    inter = F.matmul(combos[:, : a.shape[0]], a)
    return row_space(F, inter)


def sum_row_spaces(F: Field, a, b) -> np.ndarray:
    return row_space(F, np.vstack([as_matrix(a), as_matrix(b)]))


def random_matrix(F: Field, rng: np.random.Generator, rows: int, cols: int) -> np.ndarray:
    return F.random(rng, (rows, cols))


class SpanSolver:
    """Expresses vectors in a fixed (not necessarily echelonized) row basis."""

    def __init__(self, F: Field, rows: np.ndarray):
        rows = as_matrix(rows)
        self.field = F
        self.rows = rows
        n = rows.shape[1]
        aug = np.hstack([rows, eye(rows.shape[0])])
        red, rk, piv = rref(F, aug)
        if rk != rows.shape[0] or any(p >= n for p in piv):
            raise ValueError("row basis is linearly dependent")
        self._piv = piv
        self._transform = red[:, n:]
        self._rref = red[:, :n]

    def coords(self, v: np.ndarray):
        """x with x @ rows = v, or None when v is outside the span."""
        v = np.asarray(v, dtype=_I64)
        c = v[self._piv]
        x = self.field.matmul(c, self._transform)
        if not np.array_equal(self.field.matmul(x, self.rows), v):
            return None
        return x

    def coords_batch(self, vs: np.ndarray) -> np.ndarray:
        """Coordinates for rows all known to lie in the span (checked)."""
        vs = as_matrix(vs)
        x = self.field.matmul(vs[:, self._piv], self._transform)
        if not np.array_equal(self.field.matmul(x, self.rows), vs):
            raise ValueError("vector outside the spanned subspace")
        return x


def matrix_power_semistable(F: Field, a, max_doublings: int = 40):
    """a^(2^i) iterated until the rank stabilizes; returns the stable power.

    For a linear operator on a finite-dimensional space this reaches the
    Fitting decomposition: ker and im of the result are complementary and
    a-stable.
    """
    a = as_matrix(a)
    cur = a
    r_prev = rank(F, cur)
    for _ in range(max_doublings):
        nxt = F.matmul(cur, cur)
        r_next = rank(F, nxt)
        if r_next == r_prev:
            return nxt
        cur, r_prev = nxt, r_next
    return cur


def _local_annihilator(F: Field, a: np.ndarray, v: np.ndarray) -> np.ndarray:
    """Monic minimal polynomial of a relative to the vector v."""
    n = a.shape[0]
    basis = zeros(0, n)
    pivots: list[int] = []
    tags: list[np.ndarray] = []
    w = v.copy()
    for step in range(n + 1):
        tag = zeros(1, n + 1)[0]
        tag[step] = 1
        red = w.copy()
        for i, pc in enumerate(pivots):
            c = red[pc]
            if c:
                red = F.sub(red, F.mul(int(c), basis[i]))
                tag = F.sub(tag, F.mul(int(c), tags[i]))
        if not np.any(red):
            return ptrim(tag)
        lead = int(np.nonzero(red)[0][0])
        scale = int(F.inv(int(red[lead])))
        basis = np.vstack([basis, F.mul(scale, red)[None, :]])
        tags.append(F.mul(scale, tag))
        pivots.append(lead)
        w = F.matmul(a, w)
    raise AssertionError("annihilator search exceeded dimension bound")


def minpoly_matrix(F: Field, a) -> np.ndarray:
    """Monic minimal polynomial of a square matrix."""
    a = as_matrix(a)
    n = a.shape[0]
    mp = np.array([1], dtype=_I64)
    for j in range(n):
        if pdeg(mp) == n:
            break
        e = zeros(1, n)[0]
        e[j] = 1
        loc = _local_annihilator(F, a, e)
        g = pgcd(F, mp, loc)
        mp = pdivmod(F, pmul(F, mp, loc), g)[0]
    return mp


def poly_apply_matrix(F: Field, poly, a) -> np.ndarray:
    """Evaluate a polynomial at a square matrix (Horner)."""
    a = as_matrix(a)
    n = a.shape[0]
    out = zeros(n, n)
    for c in ptrim(poly)[::-1]:
        out = F.matmul(out, a)
        if c:
            out = F.add(out, F.mul(int(c), eye(n)))
    return out


def block_diag(mats: list[np.ndarray]) -> np.ndarray:
    """Block-diagonal assembly of square blocks (zero-size blocks allowed)."""
    sizes = [as_matrix(m).shape[0] for m in mats]
    n = sum(sizes)
    out = zeros(n, n)
    off = 0
    for m, s in zip(mats, sizes):
        out[off : off + s, off : off + s] = m
        off += s
    return out
