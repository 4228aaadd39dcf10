"""Finite-dimensional associative unital algebras over finite fields.

An algebra is given by its structure-constant tensor sc, where sc[i, j] is
the coordinate vector of b_i * b_j.  Group algebras, quotients, endomorphism
algebras and radical-layer graded algebras are all instances.  Ideals and
subspaces are echelonized row bases in the coordinate space of the algebra.
"""

from __future__ import annotations

import numpy as np

from . import linalg as la
from .ff import Field, is_prime

_I64 = np.int64

ASSOC_FULL_DIM_LIMIT = 300
ASSOC_SAMPLE_TRIPLES = 10_000


class AlgebraError(ValueError):
    pass


class Algebra:
    """Associative unital algebra from structure constants."""

    def __init__(
        self,
        field: Field,
        sc: np.ndarray,
        unit: np.ndarray,
        labels=None,
        gens: np.ndarray | None = None,
        check: str = "auto",
        group=None,
        name: str = "A",
    ):
        sc = np.asarray(sc, dtype=_I64)
        d = sc.shape[0]
        if sc.shape != (d, d, d):
            raise AlgebraError(f"structure tensor must be (d,d,d), got {sc.shape}")
        unit = np.asarray(unit, dtype=_I64)
        if unit.shape != (d,):
            raise AlgebraError("unit coordinate vector has wrong length")
        self.field = field
        self.dim = d
        self.sc = sc
        self.unit = unit
        self.labels = list(labels) if labels is not None else [f"b{i}" for i in range(d)]
        # generating set as coordinate vectors; None means all basis elements
        self.gens = np.asarray(gens, dtype=_I64) if gens is not None else la.eye(d)
        self.group = group
        self.name = name
        self._radical = None
        self._regular = None
        if check != "skip":
            self._check_unit()
            self._check_associativity(check)

    def __repr__(self):
        return f"Algebra({self.name}, dim={self.dim}, field={self.field!r})"

    def _check_unit(self):
        F = self.field
        left = F.lincomb(self.unit, self.sc)  # row j = unit * b_j
        right = F.lincomb(self.unit, self.sc.transpose(1, 0, 2))  # row j = b_j * unit
        if not (np.array_equal(left, la.eye(self.dim)) and np.array_equal(right, la.eye(self.dim))):
            raise AlgebraError("unit does not act as a two-sided identity")

    def _check_associativity(self, mode: str):
        F, sc, d = self.field, self.sc, self.dim
        if mode == "auto":
            mode = "full" if d <= ASSOC_FULL_DIM_LIMIT else "sample"
        if mode == "full":
            flat = sc.reshape(d, d * d)
            for i in range(d):
                lhs = F.matmul(sc[i], flat).reshape(d, d, d)  # (b_i b_j) b_k
                # rhs[j,k,l] = sum_m sc[j,k,m] sc[i,m,l]
                rhs = F.matmul(sc.reshape(d * d, d), sc[i]).reshape(d, d, d)
                if not np.array_equal(lhs, rhs):
                    raise AlgebraError(f"associativity fails on basis triples with i={i}")
        elif mode == "sample":
            rng = np.random.default_rng(0)
            idx = rng.integers(0, d, size=(ASSOC_SAMPLE_TRIPLES, 3))
            for i, j, k in idx:
                left = self.multiply(self.sc[i, j], la.eye(d)[k])
                right = self.multiply(la.eye(d)[i], self.sc[j, k])
                if not np.array_equal(left, right):
                    raise AlgebraError("associativity fails on sampled triple")
        else:
            raise AlgebraError(f"unknown check mode {mode!r}")

    # -- multiplication -----------------------------------------------------

    def multiply(self, u, v) -> np.ndarray:
        """Product of two coordinate vectors."""
        F = self.field
        m = F.lincomb(np.asarray(u, dtype=_I64), self.sc)  # row j = u * b_j
        return F.matmul(np.asarray(v, dtype=_I64), m)

    def left_mult_matrix(self, u) -> np.ndarray:
        """Matrix of x -> u*x on column vectors."""
        return self.field.lincomb(np.asarray(u, dtype=_I64), self.sc).T

    def right_mult_matrix(self, u) -> np.ndarray:
        """Matrix of x -> x*u on column vectors."""
        return self.field.lincomb(np.asarray(u, dtype=_I64), self.sc.transpose(1, 0, 2)).T

    def gen_matrices_on(self, action: np.ndarray) -> list[np.ndarray]:
        """Operator matrices of the generating set in a given representation."""
        return [self.field.lincomb(g, action) for g in self.gens]

    # -- modules and radical (implemented in .modules, imported lazily) ------

    def regular_module(self):
        if self._regular is None:
            from .modules import AModule

            action = self.sc.transpose(0, 2, 1).copy()  # action[i] = left mult by b_i
            self._regular = AModule(self, action, check="skip", name=f"{self.name}-regular")
        return self._regular

    def radical(self) -> "IdealBasis":
        """Jacobson radical, cached.

        Group algebras of p-groups in characteristic p short-circuit to the
        augmentation ideal; otherwise the radical is the joint annihilator of
        the composition factors of the regular module.
        """
        if self._radical is not None:
            return self._radical
        F, d = self.field, self.dim
        if self.group is not None and _is_p_power(self.group.order, F.p):
            rows = la.zeros(self.group.order - 1, d)
            for i in range(1, self.group.order):
                rows[i - 1, i] = 1
                rows[i - 1, 0] = int(F.neg(1))
            self._radical = IdealBasis(self, la.row_space(F, rows))
            return self._radical
        from .modules import chop

        factors = chop(self.regular_module(), seed=0)
        blocks = []
        for simple, _mult in factors.items:
            mats = np.stack([F.lincomb(la.eye(d)[i], simple.action) for i in range(d)])
            blocks.append(mats.reshape(d, -1).T)  # rows = (a,b)-entries, cols = i
        stacked = np.vstack(blocks) if blocks else la.zeros(0, d)
        rows = la.kernel_basis(F, stacked)
        self._radical = IdealBasis(self, la.row_space(F, rows))
        return self._radical

    def is_semisimple(self) -> bool:
        return self.radical().dim == 0


def _is_p_power(n: int, p: int) -> bool:
    while n % p == 0:
        n //= p
    return n == 1


class IdealBasis:
    """Echelonized basis of a two-sided ideal; closure is verified."""

    def __init__(self, algebra: Algebra, rows, verify: bool = True):
        self.algebra = algebra
        basis, rank, pivots = la.rref(algebra.field, np.asarray(rows, dtype=_I64).reshape(-1, algebra.dim))
        self.basis = basis[:rank]
        self.pivots = pivots
        if verify and rank:
            self._verify_closed()

    @property
    def dim(self) -> int:
        return self.basis.shape[0]

    def _verify_closed(self):
        A, F = self.algebra, self.algebra.field
        for r in self.basis:
            left = F.lincomb(r, A.sc)  # rows j: r * b_j
            right = F.lincomb(r, A.sc.transpose(1, 0, 2))  # rows j: b_j * r
            for row in np.vstack([left, right]):
                if np.any(la.reduce_row(F, self.basis, self.pivots, row)):
                    raise AlgebraError("row basis is not a two-sided ideal")

    def contains(self, v) -> bool:
        return not np.any(la.reduce_row(self.algebra.field, self.basis, self.pivots, np.asarray(v, dtype=_I64)))


def ideal_product(I: IdealBasis, J: IdealBasis) -> IdealBasis:
    """Span of pairwise products of the two ideals' basis vectors."""
    if I.algebra is not J.algebra:
        raise AlgebraError("ideal product across different algebras")
    A = I.algebra
    if I.dim == 0 or J.dim == 0:
        return IdealBasis(A, la.zeros(0, A.dim), verify=False)
    rows = [A.multiply(u, v) for u in I.basis for v in J.basis]
    return IdealBasis(A, np.array(rows), verify=False)


def ideal_power(I: IdealBasis, n: int) -> IdealBasis:
    """n-th power; power 0 is the whole algebra."""
    A = I.algebra
    if n == 0:
        return IdealBasis(A, la.eye(A.dim), verify=False)
    out = I
    for _ in range(n - 1):
        out = ideal_product(out, I)
    return out


def quotient_algebra(A: Algebra, I: IdealBasis):
    """Quotient by a two-sided ideal.

    Returns (Q, proj) where proj is the (dim Q x dim A) matrix expressing the
    class of an element in the complement-coordinate basis.
    """
    if I.algebra is not A:
        raise AlgebraError("ideal does not belong to this algebra")
    if I.dim:
        I._verify_closed()
    F, d = A.field, A.dim
    piv = set(I.pivots)
    nonpiv = [c for c in range(d) if c not in piv]
    dq = len(nonpiv)
    proj = la.zeros(dq, d)
    for r, j in enumerate(nonpiv):
        proj[r, j] = 1
        for k, pc in enumerate(I.pivots):
            proj[r, pc] = F.neg(I.basis[k, j])
    section = la.zeros(d, dq)
    for r, j in enumerate(nonpiv):
        section[j, r] = 1
    sc = la.zeros(dq, dq * dq).reshape(dq, dq, dq)
    for i in range(dq):
        for j in range(dq):
            prod = A.multiply(section[:, i], section[:, j])
            sc[i, j] = F.matmul(proj, prod)
    unit = F.matmul(proj, A.unit)
    gens = F.matmul(A.gens, proj.T)
    labels = [A.labels[j] for j in nonpiv]
    Q = Algebra(F, sc, unit, labels=labels, gens=la.row_space(F, np.vstack([gens, unit[None, :]])),
                check="auto", name=f"{A.name}/I")
    return Q, proj


def subalgebra_structure(B: Algebra, emb_rows: np.ndarray, name: str = "a") -> tuple["Algebra", np.ndarray]:
    """Abstract algebra carried by an embedded unital subalgebra of B.

    emb_rows are coordinate vectors in B forming a basis of a subspace that
    must be closed under multiplication and contain the unit of B.
    """
    F = B.field
    basis, rank, pivots = la.rref(F, np.asarray(emb_rows, dtype=_I64))
    basis = basis[:rank]
    da = rank
    unit_coords = la.coords_in_rowspace(F, basis, pivots, B.unit)
    if unit_coords is None:
        raise AlgebraError("subalgebra does not contain the unit")
    sc = la.zeros(da, da * da).reshape(da, da, da)
    for i in range(da):
        for j in range(da):
            prod = B.multiply(basis[i], basis[j])
            coords = la.coords_in_rowspace(F, basis, pivots, prod)
            if coords is None:
                raise AlgebraError("subspace is not closed under multiplication")
            sc[i, j] = coords
    return Algebra(F, sc, unit_coords, check="auto", name=name), basis


class SubalgebraPair:
    """A normal subalgebra pair: sub embedded in big with (rad sub)*big = big*(rad sub).

    The embedding rows map the basis of the abstract subalgebra into big's
    coordinates.  Construction verifies the embedding is a unital algebra
    homomorphism and that normality holds, and precomputes the filtration of
    big by powers of J = (rad sub)*big.
    """

    def __init__(self, big: Algebra, emb: np.ndarray, sub: Algebra | None = None, name: str = "pair"):
        F = big.field
        emb = np.asarray(emb, dtype=_I64)
        if sub is None:
            sub, basis = subalgebra_structure(big, emb)
            emb = basis
        if emb.shape != (sub.dim, big.dim):
            raise AlgebraError("embedding matrix has wrong shape")
        if la.rank(F, emb) != sub.dim:
            raise AlgebraError("embedding is not injective")
        if sub.field != big.field:
            raise AlgebraError("sub and big algebras live over different fields")
        # unital homomorphism check
        if not np.array_equal(F.matmul(sub.unit, emb), big.unit):
            raise AlgebraError("embedding does not preserve the unit")
        for i in range(sub.dim):
            for j in range(sub.dim):
                lhs = big.multiply(emb[i], emb[j])
                rhs = F.matmul(sub.sc[i, j], emb)
                if not np.array_equal(lhs, rhs):
                    raise AlgebraError("embedding is not an algebra homomorphism")
        self.big = big
        self.sub = sub
        self.emb = emb
        self.name = name
        self.rad_sub = sub.radical()
        self.rad_in_big = F.matmul(self.rad_sub.basis, emb) if self.rad_sub.dim else la.zeros(0, big.dim)
        left = _side_product(big, self.rad_in_big, side="left")
        right = _side_product(big, self.rad_in_big, side="right")
        if not np.array_equal(left, right):
            raise AlgebraError("normality fails: (rad sub)*big != big*(rad sub)")
        self.J = IdealBasis(big, left, verify=True)
        self.filtration = _nilpotent_filtration(big, self.J)

    @property
    def layer_dims(self) -> list[int]:
        return self.filtration.layer_dims


def _side_product(B: Algebra, rows: np.ndarray, side: str) -> np.ndarray:
    """Echelonized span of r*B (side='left' means the rows multiply from the left)."""
    F = B.field
    if rows.shape[0] == 0:
        return la.zeros(0, B.dim)
    chunks = []
    for r in rows:
        if side == "left":
            chunks.append(F.lincomb(r, B.sc))  # rows j = r * b_j
        else:
            chunks.append(F.lincomb(r, B.sc.transpose(1, 0, 2)))  # rows j = b_j * r
    return la.row_space(F, np.vstack(chunks))


def pair_normality_check(big: Algebra, emb: np.ndarray, sub: Algebra | None = None) -> bool:
    """True iff (rad sub)*big and big*(rad sub) coincide as subspaces."""
    F = big.field
    emb = np.asarray(emb, dtype=_I64)
    if sub is None:
        sub, emb = subalgebra_structure(big, emb)
    rad = sub.radical()
    rad_in_big = F.matmul(rad.basis, emb) if rad.dim else la.zeros(0, big.dim)
    left = _side_product(big, rad_in_big, side="left")
    right = _side_product(big, rad_in_big, side="right")
    return np.array_equal(left, right)


class Filtration:
    """A strictly decreasing chain of subspaces with chosen layer sections.

    chain[0] is the whole ambient space (or module) and chain[-1] is zero.
    Layer n is chain[n]/chain[n+1]; its section rows are the rows of the
    echelon basis of chain[n] whose pivots are not pivots of chain[n+1],
    which form a complement of chain[n+1] in chain[n].
    """

    def __init__(self, F: Field, chain: list[np.ndarray]):
        self.field = F
        self.chain = chain
        self.ambient_dim = chain[0].shape[1]
        self.length = len(chain) - 1  # number of layers
        self.sections = []
        self._piv = []
        self._express = []
        for n in range(self.length):
            vn, vn1 = chain[n], chain[n + 1]
            _, _, piv_n = la.rref(F, vn)
            _, _, piv_n1 = la.rref(F, vn1)
            deep = set(piv_n1)
            sec = vn[[i for i, p in enumerate(piv_n) if p not in deep]]
            self.sections.append(sec)
            # solver turning v in chain[n] into its section coordinates
            mixed = np.vstack([sec, vn1]) if vn1.shape[0] else sec
            aug = np.hstack([mixed, la.eye(mixed.shape[0])])
            red, rk, piv_aug = la.rref(F, aug)
            if rk != mixed.shape[0]:
                raise AlgebraError("filtration chain is not strictly decreasing")
            self._piv.append([p for p in piv_aug if p < self.ambient_dim])
            self._express.append(red[:, self.ambient_dim:])
        self.layer_dims = [s.shape[0] for s in self.sections]
        self._chain_pivots = [la.rref(F, c)[2] for c in chain]

    def project(self, rows: np.ndarray, n: int) -> np.ndarray:
        """Layer-n coordinates of vectors lying in chain[n] (checked)."""
        F = self.field
        rows = np.asarray(rows, dtype=_I64).reshape(-1, self.ambient_dim)
        sec = self.sections[n]
        k = sec.shape[0]
        coords_full = F.matmul(rows[:, self._piv[n]], self._express[n])
        alpha = coords_full[:, :k]
        # safety: residual must lie in chain[n+1]
        resid = F.sub(rows, F.matmul(alpha, sec)) if k else rows
        nxt = self.chain[n + 1]
        piv = self._chain_pivots[n + 1]
        for r in resid:
            if np.any(la.reduce_row(F, nxt, piv, r)):
                raise AlgebraError("vector does not lie in the expected filtration level")
        return alpha

    def level_of(self, v) -> int:
        """Largest n with v in chain[n]; len(chain)-1 for the zero vector."""
        v = np.asarray(v, dtype=_I64)
        lvl = 0
        for n in range(1, len(self.chain)):
            if np.any(la.reduce_row(self.field, self.chain[n], self._chain_pivots[n], v)):
                return n - 1
            lvl = n
        return lvl


def _nilpotent_filtration(B: Algebra, J: IdealBasis) -> Filtration:
    chain = [la.eye(B.dim)]
    cur = J
    for _ in range(B.dim + 1):
        chain.append(cur.basis)
        if cur.dim == 0:
            return Filtration(B.field, chain)
        cur = ideal_product(cur, J)
    raise AlgebraError("ideal powers do not reach zero (not nilpotent)")


class GradedAlgebra(Algebra):
    """Associated graded algebra of a normal subalgebra pair.

    Basis elements carry a grade; sections[n] maps layer-n basis elements to
    representative vectors in the filtered algebra.  Multiplication of grades
    m and n lands in grade m+n (or is zero past the last layer).
    """

    def __init__(self, pair: SubalgebraPair, gens=None):
        F = pair.big.field
        filt = pair.filtration
        grades = np.concatenate(
            [np.full(dim, n, dtype=_I64) for n, dim in enumerate(filt.layer_dims)]
        ) if filt.length else np.zeros(0, dtype=_I64)
        d = int(grades.size)
        offsets = np.concatenate([[0], np.cumsum(filt.layer_dims)]).astype(int)
        sections = np.vstack([s for s in filt.sections if s.shape[0]]) if d else la.zeros(0, filt.ambient_dim)
        sc = la.zeros(d, d * d).reshape(d, d, d)
        for i in range(d):
            gi = int(grades[i])
            for j in range(d):
                gj = int(grades[j])
                g = gi + gj
                if g >= filt.length:
                    continue  # product lies in the zero level
                prod = pair.big.multiply(sections[i], sections[j])
                alpha = filt.project(prod[None, :], g)[0]
                sc[i, j, offsets[g] : offsets[g] + filt.layer_dims[g]] = alpha
        unit = la.zeros(1, d)[0]
        u0 = filt.project(pair.big.unit[None, :], 0)[0]
        unit[offsets[0] : offsets[0] + filt.layer_dims[0]] = u0
        self.pair = pair
        self.grades = grades
        self.layer_dims = list(filt.layer_dims)
        self.layer_offsets = offsets
        self.sections = sections
        super().__init__(
            F, sc, unit, gens=gens, check="auto", name=f"gr({pair.big.name})"
        )
        self._check_grade_additivity()

    def _check_grade_additivity(self):
        d = self.dim
        top = len(self.layer_dims)
        for i in range(d):
            for j in range(d):
                g = int(self.grades[i] + self.grades[j])
                nz = np.nonzero(self.sc[i, j])[0]
                if nz.size and (g >= top or np.any(self.grades[nz] != g)):
                    raise AlgebraError("graded structure constants violate grade additivity")

    def project_to_grade(self, vec_in_big: np.ndarray, n: int) -> np.ndarray:
        """Class of a filtered-algebra vector in the grade-n coordinate block,
        embedded in full graded coordinates."""
        alpha = self.pair.filtration.project(np.asarray(vec_in_big, dtype=_I64)[None, :], n)[0]
        out = la.zeros(1, self.dim)[0]
        off = self.layer_offsets[n]
        out[off : off + self.layer_dims[n]] = alpha
        return out


def graded_algebra(pair: SubalgebraPair, gens=None) -> GradedAlgebra:
    """Associated graded algebra of the pair, with layer maps available on
    the result (sections, layer_dims, project_to_grade)."""
    return GradedAlgebra(pair, gens=gens)


def group_algebra(G, F: Field) -> Algebra:
    """The group algebra of a finite group: basis indexed by group elements."""
    n = G.order
    sc = la.zeros(n, n * n).reshape(n, n, n)
    rows = np.arange(n)
    for i in range(n):
        sc[i, rows, G.mul[i]] = 1
    unit = la.zeros(1, n)[0]
    unit[0] = 1
    gens = la.eye(n)[list(G.gens)] if G.gens else la.eye(n)[:1]
    return Algebra(
        F, sc, unit, labels=list(G.labels), gens=gens, check="auto", group=G,
        name=f"k[{G.name}]",
    )
