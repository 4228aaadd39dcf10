"""Modules over structure-constant algebras.

Covers the randomized split/certify loop for composition factors, Hom
spaces and isomorphism testing, heads, socles and radical filtrations,
the decomposition of the regular module into projective indecomposable
summands, and the isotypic Clifford correspondence between modules of a
group algebra and modules of the quotient group algebra.

A module is stored as one action matrix per algebra basis element; all
operators act on column vectors.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field

import numpy as np

from . import linalg as la
from .algebra import Algebra
from .ff import distinct_irreducible_factors, pdeg

_I64 = np.int64

ISO_EXHAUSTIVE_CAP = 4096
ISO_LINE_SCAN_CAP = 4096
ISO_RANDOM_TRIALS = 64
MEATAXE_TRIES = 120
FITTING_BUDGET = 200


class ModuleError(ValueError):
    pass


class NonSplittingFieldError(ModuleError):
    """The ground field does not split the algebra; carries a suggestion."""

    def __init__(self, message: str, suggested_degree: int):
        super().__init__(message)
        self.suggested_degree = suggested_degree


class UndecidedError(ModuleError):
    """A randomized search exhausted its budget without reaching a decision."""


class AModule:
    """A finite-dimensional left module given by per-basis action matrices."""

    def __init__(self, algebra: Algebra, action: np.ndarray, check: str = "full", name: str = "M"):
        action = np.asarray(action, dtype=_I64)
        if action.ndim != 3 or action.shape[0] != algebra.dim or action.shape[1] != action.shape[2]:
            raise ModuleError(f"action tensor has wrong shape {action.shape}")
        self.algebra = algebra
        self.dim = int(action.shape[1])
        self.action = action
        self.name = name
        self.known_irreducible = False
        self._gen_ops = None
        self._trace_key = None
        if check == "full":
            self.verify_axioms()
        elif check != "skip":
            raise ModuleError(f"unknown check mode {check!r}")

    def __repr__(self):
        return f"AModule({self.name}, dim={self.dim}, over={self.algebra.name})"

    def verify_axioms(self):
        """Unit acts as identity; action respects the structure constants."""
        A, F = self.algebra, self.algebra.field
        if self.dim == 0:
            return
        if not np.array_equal(F.lincomb(A.unit, self.action), la.eye(self.dim)):
            raise ModuleError("unit does not act as the identity")
        for i in range(A.dim):
            lhs = F.matmul(self.action[i], self.action)  # lhs[j] = a_i a_j
            rhs = np.stack([F.lincomb(A.sc[i, j], self.action) for j in range(A.dim)])
            if not np.array_equal(lhs, rhs):
                raise ModuleError(f"action violates structure constants at basis index {i}")

    def act(self, vec) -> np.ndarray:
        """Operator matrix of an algebra element given by coordinates."""
        return self.algebra.field.lincomb(np.asarray(vec, dtype=_I64), self.action)

    def gen_ops(self) -> list[np.ndarray]:
        if self._gen_ops is None:
            self._gen_ops = [self.act(g) for g in self.algebra.gens]
        return self._gen_ops

    def trace_key(self) -> tuple:
        """Traces of all basis actions; an isomorphism invariant."""
        if self._trace_key is None:
            F = self.algebra.field
            self._trace_key = tuple(
                int(F.sum(np.diagonal(self.action[i]))) for i in range(self.algebra.dim)
            )
        return self._trace_key

    # -- submodules and quotients -----------------------------------------

    def spin(self, seed_rows) -> np.ndarray:
        return la.spin(self.algebra.field, seed_rows, self.gen_ops())

    def submodule(self, rows, name: str | None = None):
        """Restriction to a stable subspace; returns (module, echelon basis)."""
        F = self.algebra.field
        basis, rank, piv = la.rref(F, np.asarray(rows, dtype=_I64).reshape(-1, self.dim))
        basis = basis[:rank]
        sub_action = la.zeros(self.algebra.dim, rank * rank).reshape(self.algebra.dim, rank, rank)
        bt = basis.T
        for i in range(self.algebra.dim):
            img = F.matmul(self.action[i], bt)  # columns: images of basis vectors
            coords = img[piv, :]
            if not np.array_equal(F.matmul(bt, coords), img):
                raise ModuleError("subspace is not stable under the action")
            sub_action[i] = coords
        sub = AModule(self.algebra, sub_action, check="skip", name=name or f"{self.name}.sub")
        return sub, basis

    def quotient_module(self, rows, name: str | None = None):
        """Quotient by a stable subspace; returns (module, projection matrix)."""
        F = self.algebra.field
        basis, rank, piv = la.rref(F, np.asarray(rows, dtype=_I64).reshape(-1, self.dim))
        basis = basis[:rank]
        nonpiv = [c for c in range(self.dim) if c not in set(piv)]
        mq = len(nonpiv)
        proj = la.zeros(mq, self.dim)
        for r, j in enumerate(nonpiv):
            proj[r, j] = 1
            for t, pc in enumerate(piv):
                proj[r, pc] = F.neg(basis[t, j])
        section = la.zeros(self.dim, mq)
        for r, j in enumerate(nonpiv):
            section[j, r] = 1
        q_action = np.stack([F.matmul(F.matmul(proj, self.action[i]), section) for i in range(self.algebra.dim)]) if mq else la.zeros(self.algebra.dim, 0).reshape(self.algebra.dim, 0, 0)
        # stability of the subspace makes the quotient action well-defined
        for i in range(self.algebra.dim):
            img = F.matmul(self.action[i], basis.T)
            if np.any(F.matmul(proj, img)):
                raise ModuleError("subspace is not stable under the action")
        quo = AModule(self.algebra, q_action, check="skip", name=name or f"{self.name}.quo")
        return quo, proj

    def direct_sum(self, other: "AModule", name: str | None = None) -> "AModule":
        if other.algebra is not self.algebra:
            raise ModuleError("direct sum across different algebras")
        d = self.algebra.dim
        act = np.stack([la.block_diag([self.action[i], other.action[i]]) for i in range(d)])
        return AModule(self.algebra, act, check="skip", name=name or f"{self.name}+{other.name}")


def zero_module(A: Algebra) -> AModule:
    return AModule(A, la.zeros(A.dim, 0).reshape(A.dim, 0, 0), check="skip", name="0")


def direct_sum(mods: list[AModule], name: str = "sum") -> AModule:
    out = mods[0]
    for m in mods[1:]:
        out = out.direct_sum(m)
    out.name = name
    return out


def restrict_module(M: AModule, target: Algebra, basis_index_map, name: str | None = None) -> AModule:
    """Restriction along an algebra map sending target basis i to the
    basis element basis_index_map[i] of M's algebra."""
    action = M.action[np.asarray(basis_index_map, dtype=np.intp)]
    return AModule(target, action, check="skip", name=name or f"{M.name}|")


def pullback_module(M: AModule, target: Algebra, elem_map, name: str | None = None) -> AModule:
    """Pullback along a basis-to-basis surjection (e.g. a group quotient map)."""
    action = M.action[np.asarray(elem_map, dtype=np.intp)]
    return AModule(target, action, check="skip", name=name or f"{M.name}^")


def tensor_group_modules(M: AModule, N: AModule, name: str | None = None) -> AModule:
    """Diagonal tensor product of modules over the same group algebra."""
    A = M.algebra
    if N.algebra is not A:
        raise ModuleError("tensor across different algebras")
    if A.group is None:
        raise ModuleError("diagonal tensor requires a group algebra")
    F = A.field
    act = np.stack([la.kron(F, M.action[i], N.action[i]) for i in range(A.dim)])
    return AModule(A, act, check="skip", name=name or f"{M.name}(x){N.name}")


# -- randomized irreducibility / splitting ------------------------------------


def _random_operator(M: AModule, rng: np.random.Generator) -> np.ndarray:
    F = M.algebra.field
    gens = M.gen_ops()
    pool = gens + [la.eye(M.dim)]
    out = la.zeros(M.dim, M.dim)
    for _ in range(int(rng.integers(2, 5))):
        w = la.eye(M.dim)
        for _ in range(int(rng.integers(1, 4))):
            w = F.matmul(w, pool[int(rng.integers(len(pool)))])
        c = int(rng.integers(1, F.q))
        out = F.add(out, F.mul(c, w))
    return out


def _analyze(M: AModule, rng: np.random.Generator, tries: int = MEATAXE_TRIES):
    """Either a proper nonzero submodule basis or a certificate of irreducibility.

    Returns ("submodule", basis) or ("irreducible", witness-dict).  The
    certificate is the classical one: an algebra element theta and an
    irreducible factor f of its minimal polynomial with nullity(f(theta))
    equal to deg f, such that a kernel vector spins to the whole module and a
    kernel vector of the transpose spins to the whole dual.
    """
    F = M.algebra.field
    n = M.dim
    if n == 0:
        raise ModuleError("zero module")
    if n == 1:
        return "irreducible", {"reason": "dimension 1"}
    gen_mats = M.gen_ops()
    gen_t = [g.T for g in gen_mats]
    for attempt in range(tries):
        theta = _random_operator(M, rng)
        mp = la.minpoly_matrix(F, theta)
        for f in distinct_irreducible_factors(F, mp, rng):
            z = la.poly_apply_matrix(F, f, theta)
            ker = la.kernel_basis(F, z)
            if ker.shape[0] == 0:
                continue
            w = M.spin(ker[0])
            if 0 < w.shape[0] < n:
                return "submodule", w
            if ker.shape[0] == pdeg(f):
                kert = la.kernel_basis(F, z.T)
                wt = la.spin(F, kert[0], gen_t)
                if wt.shape[0] < n:
                    sub = la.row_space(F, la.kernel_basis(F, wt))
                    return "submodule", sub
                return "irreducible", {
                    "attempt": attempt,
                    "factor": [int(c) for c in f],
                    "nullity": int(ker.shape[0]),
                }
    raise UndecidedError(f"split/certify loop exhausted {tries} attempts on {M!r}")


def is_irreducible(M: AModule, seed: int = 0):
    """(True, certificate) or (False, proper submodule basis)."""
    if M.dim == 0:
        raise ModuleError("zero module")
    rng = np.random.default_rng([seed, 0x1D])
    kind, data = _analyze(M, rng)
    if kind == "irreducible":
        M.known_irreducible = True
        return True, data
    return False, data


@dataclass
class CompositionMultiset:
    """Composition factors with multiplicities, canonically ordered."""

    items: list = dc_field(default_factory=list)  # list of [AModule, int]

    @property
    def total_dim(self) -> int:
        return sum(m.dim * k for m, k in self.items)

    def multiplicity_of(self, simple: AModule, seed: int = 0) -> int:
        for rep, mult in self.items:
            if is_isomorphic(rep, simple, seed=seed).isomorphic:
                return mult
        return 0

    def same_as(self, other: "CompositionMultiset", seed: int = 0) -> bool:
        if len(self.items) != len(other.items):
            return False
        if sorted((m.dim, k) for m, k in self.items) != sorted((m.dim, k) for m, k in other.items):
            return False
        used = [False] * len(other.items)
        for rep, mult in self.items:
            hit = False
            for j, (rep2, mult2) in enumerate(other.items):
                if used[j] or mult2 != mult or rep2.dim != rep.dim:
                    continue
                if is_isomorphic(rep, rep2, seed=seed).isomorphic:
                    used[j] = True
                    hit = True
                    break
            if not hit:
                return False
        return True

    def signature(self) -> list:
        return sorted((m.dim, m.trace_key(), k) for m, k in self.items)


def chop(M: AModule, seed: int = 0) -> CompositionMultiset:
    """Full composition-factor multiset of a module (deterministic per seed)."""
    rng = np.random.default_rng([seed, 0xC4])
    stack = [M]
    factors: list[AModule] = []
    while stack:
        x = stack.pop()
        if x.dim == 0:
            continue
        kind, data = _analyze(x, rng)
        if kind == "irreducible":
            x.known_irreducible = True
            factors.append(x)
        else:
            sub, _ = x.submodule(data)
            quo, _ = x.quotient_module(data)
            stack.append(sub)
            stack.append(quo)
    classes: list[list] = []
    for f in factors:
        for entry in classes:
            if entry[0].dim == f.dim and is_isomorphic(entry[0], f, seed=seed).isomorphic:
                entry[1] += 1
                break
        else:
            classes.append([f, 1])
    classes.sort(key=lambda e: (e[0].dim, e[0].trace_key()))
    return CompositionMultiset([(e[0], e[1]) for e in classes])


# -- Hom spaces and isomorphism ------------------------------------------------


def hom_space(M: AModule, N: AModule) -> list[np.ndarray]:
    """Basis of {X : X a_M(g) = a_N(g) X for all algebra generators g}.

    Matrices map M to N (shape dim N x dim M) acting on column vectors.
    """
    if M.algebra is not N.algebra:
        raise ModuleError("Hom between modules of different algebras")
    F = M.algebra.field
    mm, mn = M.dim, N.dim
    if mm == 0 or mn == 0:
        return []
    blocks = []
    for gm, gn in zip(M.gen_ops(), N.gen_ops()):
        lhs = la.kron(F, la.eye(mn), gm.T)
        rhs = la.kron(F, gn, la.eye(mm))
        blocks.append(F.sub(lhs, rhs))
    if not blocks:
        blocks = [la.zeros(1, mn * mm)]
    stacked = np.vstack(blocks)
    vecs = la.kernel_basis(F, stacked)
    return [v.reshape(mn, mm) for v in vecs]


@dataclass
class IsoResult:
    status: str  # "isomorphic" | "not_isomorphic" | "undecided"
    witness: np.ndarray | None = None

    @property
    def isomorphic(self) -> bool:
        return self.status == "isomorphic"


def _first_invertible(F, basis: list[np.ndarray], cap: int, rng, trials: int):
    """Search for an invertible combination of the Hom basis.

    Returns (status, witness) with status True/False/None; None means the
    search was exhausted without a complete sweep.
    """
    h = len(basis)
    q = F.q
    if h == 0:
        return False, None
    if h == 1:
        ok = la.is_invertible(F, basis[0])
        return ok, (basis[0] if ok else None)
    # complete enumeration of all nonzero coefficient tuples
    if q**h <= cap:
        for coeffs in itertools.product(range(q), repeat=h):
            if not any(coeffs):
                continue
            cand = F.lincomb(np.array(coeffs, dtype=_I64), np.stack(basis))
            if la.is_invertible(F, cand):
                return True, cand
        return False, None
    # projective-line sweep decides the two-dimensional case completely
    if h == 2 and q + 1 <= ISO_LINE_SCAN_CAP:
        for lam in range(q):
            cand = F.add(basis[0], F.mul(lam, basis[1]))
            if la.is_invertible(F, cand):
                return True, cand
        if la.is_invertible(F, basis[1]):
            return True, basis[1]
        return False, None
    for _ in range(trials):
        coeffs = F.random(rng, (h,))
        cand = F.lincomb(coeffs, np.stack(basis))
        if la.is_invertible(F, cand):
            return True, cand
    return None, None


def is_isomorphic(M: AModule, N: AModule, seed: int = 0, trials: int = ISO_RANDOM_TRIALS) -> IsoResult:
    """Decide module isomorphism, producing an invertible intertwiner.

    Screens by dimension, trace invariants and composition multisets, then
    searches Hom(M, N) for an invertible element.  For Hom dimension at most
    two (and small complete enumerations generally) the outcome is exact;
    otherwise a seeded search may return "undecided".
    """
    if M.algebra is not N.algebra:
        raise ModuleError("isomorphism across different algebras")
    F = M.algebra.field
    if M.dim != N.dim:
        return IsoResult("not_isomorphic")
    if M.dim == 0:
        return IsoResult("isomorphic", la.zeros(0, 0))
    if np.array_equal(M.action, N.action):
        return IsoResult("isomorphic", la.eye(M.dim))
    if M.trace_key() != N.trace_key():
        return IsoResult("not_isomorphic")
    both_irr = M.known_irreducible and N.known_irreducible
    if not both_irr:
        if not chop(M, seed=seed).same_as(chop(N, seed=seed), seed=seed):
            return IsoResult("not_isomorphic")
    basis = hom_space(M, N)
    if not basis:
        return IsoResult("not_isomorphic")
    if both_irr:
        # a nonzero map between irreducibles is invertible
        witness = basis[0]
        if not la.is_invertible(F, witness):
            raise AssertionError("nonzero hom between irreducibles is singular")
        return IsoResult("isomorphic", witness)
    rng = np.random.default_rng([seed, 0x150])
    found, witness = _first_invertible(F, basis, ISO_EXHAUSTIVE_CAP, rng, trials)
    if found is True:
        return IsoResult("isomorphic", witness)
    if found is False:
        return IsoResult("not_isomorphic")
    return IsoResult("undecided")


# -- heads, socles, filtrations -------------------------------------------------


def radical_operators(M: AModule) -> list[np.ndarray]:
    rad = M.algebra.radical()
    return [M.act(r) for r in rad.basis]


def radical_filtration(M: AModule) -> list[np.ndarray]:
    """Bases of M > JM > J^2 M > ... ending with the zero space."""
    F = M.algebra.field
    ops = radical_operators(M)
    chain = [la.eye(M.dim)]
    cur = chain[0]
    while cur.shape[0]:
        if not ops:
            chain.append(la.zeros(0, M.dim))
            break
        rows = np.vstack([F.matmul(cur, op.T) for op in ops])
        nxt = la.row_space(F, rows)
        chain.append(nxt)
        if nxt.shape[0] >= cur.shape[0] and nxt.shape[0]:
            raise ModuleError("radical filtration does not descend (radical not nilpotent?)")
        cur = nxt
    return chain


def head(M: AModule) -> AModule:
    """Largest semisimple quotient M / rad(A)M."""
    chain = radical_filtration(M)
    quo, _ = M.quotient_module(chain[1], name=f"head({M.name})")
    return quo


def socle(M: AModule) -> AModule:
    """Largest submodule annihilated by the radical."""
    F = M.algebra.field
    ops = radical_operators(M)
    if not ops:
        return M
    stacked = np.vstack(ops)
    ker = la.kernel_basis(F, stacked)
    sub, _ = M.submodule(ker, name=f"soc({M.name})")
    return sub


# -- endomorphism algebras and Fitting decomposition ---------------------------


def endomorphism_algebra(M: AModule):
    """(E, basis) where E is End(M) as an abstract algebra on the given basis."""
    F = M.algebra.field
    if M.dim == 0:
        raise ModuleError("endomorphisms of the zero module")
    if M is M.algebra._regular:
        basis = [M.algebra.right_mult_matrix(la.eye(M.algebra.dim)[i]) for i in range(M.algebra.dim)]
    else:
        basis = hom_space(M, M)
    h = len(basis)
    vecs = np.stack([b.reshape(-1) for b in basis])
    solver = la.SpanSolver(F, vecs)
    sc = la.zeros(h, h * h).reshape(h, h, h)
    for i in range(h):
        for j in range(h):
            prod = F.matmul(basis[i], basis[j]).reshape(-1)
            coords = solver.coords(prod)
            if coords is None:
                raise AssertionError("endomorphism space is not closed under composition")
            sc[i, j] = coords
    unit = solver.coords(la.eye(M.dim).reshape(-1))
    if unit is None:
        raise AssertionError("identity missing from endomorphism space")
    E = Algebra(F, sc, unit, check="skip", name=f"End({M.name})")
    return E, basis


def _is_local(E: Algebra) -> bool:
    return E.dim - E.radical().dim == 1


def indecomposable_summands(M: AModule, seed: int = 0, budget: int = FITTING_BUDGET):
    """Split M into indecomposable direct summands via Fitting decompositions.

    Returns a list of (module, rows) with rows embedding each summand into
    M's coordinates; the row spaces sum directly to the whole space.
    """
    F = M.algebra.field
    rng = np.random.default_rng([seed, 0xF1])
    work = [(M, la.eye(M.dim))]
    out = []
    while work:
        x, rows = work.pop()
        if x.dim == 0:
            continue
        E, basis = endomorphism_algebra(x)
        if _is_local(E):
            out.append((x, rows))
            continue
        split = None
        candidates = itertools.chain(
            (b for b in basis),
            (F.lincomb(F.random(rng, (len(basis),)), np.stack(basis)) for _ in range(budget)),
        )
        for theta in candidates:
            stable = la.matrix_power_semistable(F, theta)
            ker = la.kernel_basis(F, stable)
            if 0 < ker.shape[0] < x.dim:
                image = la.row_space(F, stable.T)
                split = (ker, image)
                break
        if split is None:
            raise UndecidedError("indecomposability undecided after retry budget")
        for part in split:
            sub, b = x.submodule(part)
            work.append((sub, F.matmul(b, rows)))
    out.sort(key=lambda t: int(np.nonzero(t[1][0])[0][0]))
    return out


def simples(A: Algebra, seed: int = 0) -> list[AModule]:
    """Canonical enumeration of the simple modules (sorted by dim, traces)."""
    if getattr(A, "_simples", None) is None:
        factors = chop(A.regular_module(), seed=seed)
        A._simples = [rep for rep, _ in factors.items]
    return A._simples


def splitting_defect(A: Algebra, seed: int = 0) -> int:
    """lcm of endomorphism dimensions of the simples; 1 means a splitting field."""
    out = 1
    for s in simples(A, seed=seed):
        e = len(hom_space(s, s))
        out = out * e // np.gcd(out, e)
    return int(out)


@dataclass
class PimEntry:
    simple: AModule
    pim: AModule
    rows: np.ndarray  # embedding of the summand into the regular module
    idempotent: np.ndarray  # algebra element with A*e = the summand


def pims(A: Algebra, seed: int = 0) -> list[PimEntry]:
    """Projective indecomposable modules of A over a splitting field.

    Decomposes the regular module into indecomposable summands, groups them
    by head, and pairs each simple with its projective cover.  Raises
    NonSplittingFieldError (with a suggested total extension degree over the
    prime field) when some simple has a non-scalar endomorphism algebra.
    """
    if getattr(A, "_pims", None) is not None:
        return A._pims
    F = A.field
    defect = splitting_defect(A, seed=seed)
    if defect != 1:
        raise NonSplittingFieldError(
            f"{A.name} is not split over {F!r}; try extension degree {F.k * defect}",
            suggested_degree=F.k * defect,
        )
    reg = A.regular_module()
    parts = indecomposable_summands(reg, seed=seed)
    all_rows = np.vstack([rows for _, rows in parts])
    if la.rank(F, all_rows) != A.dim:
        raise AssertionError("summands do not span the regular module")
    solver = la.SpanSolver(F, all_rows)
    unit_coords = solver.coords(A.unit)
    entries = []
    offset = 0
    for mod, rows in parts:
        h = head(mod)
        ok, _ = is_irreducible(h, seed=seed)
        if not ok:
            raise AssertionError("head of an indecomposable projective is not simple")
        e = F.matmul(unit_coords[offset : offset + mod.dim], rows)
        offset += mod.dim
        entries.append((mod, rows, h, e))
    out = []
    for s in simples(A, seed=seed):
        covers = [t for t in entries if t[2].dim == s.dim and is_isomorphic(t[2], s, seed=seed).isomorphic]
        if not covers:
            raise AssertionError(f"no projective cover found for a simple of dim {s.dim}")
        mod, rows, _, e = covers[0]
        out.append(PimEntry(simple=s, pim=mod, rows=rows, idempotent=e))
    total = sum(p.pim.dim * p.simple.dim for p in out)
    if total != A.dim:
        raise AssertionError(f"Cartan dimension identity fails: {total} != {A.dim}")
    A._pims = out
    return out


def projective_cover(A: Algebra, simple: AModule, seed: int = 0) -> AModule:
    for entry in pims(A, seed=seed):
        if is_isomorphic(entry.simple, simple, seed=seed).isomorphic:
            return entry.pim
    raise ModuleError("no projective cover: module is not one of the simples")


# -- Clifford correspondence for isotypic restrictions --------------------------


def _check_isotypic(ctx, L_ext: AModule, M: AModule):
    """L restricted to N, M restricted to N, with isotypicity verified."""
    F = ctx.kG.field
    L_N = restrict_module(L_ext, ctx.kN, ctx.sub_indices, name="L|N")
    ok, _ = is_irreducible(L_N, seed=0)
    if not ok:
        raise ModuleError("L does not restrict to an irreducible module")
    if len(hom_space(L_N, L_N)) != 1:
        raise NonSplittingFieldError(
            "L is not absolutely irreducible over the subgroup algebra",
            suggested_degree=F.k * len(hom_space(L_N, L_N)),
        )
    M_N = restrict_module(M, ctx.kN, ctx.sub_indices, name=f"{M.name}|N")
    for op in radical_operators(M_N):
        if np.any(op):
            raise ModuleError("restriction to the subgroup is not semisimple")
    for rep, _mult in chop(M_N, seed=0).items:
        if not is_isomorphic(rep, L_N, seed=0).isomorphic:
            raise ModuleError("restriction to the subgroup is not L-isotypic")
    return L_N, M_N


def clifford_functor(ctx, L_ext: AModule, M: AModule) -> AModule:
    """Hom_N(L, M) as a module over the quotient group algebra.

    ctx provides the group pair data (kG, kN, sub_indices, quotient group
    and its algebra kQ, quotient projection and coset representatives).
    The action is by conjugation of homomorphisms: g sends f to the map
    x -> g f(g^{-1} x); it is verified to kill N.
    """
    F = ctx.kG.field
    G = ctx.G
    L_N, M_N = _check_isotypic(ctx, L_ext, M)
    basis = hom_space(L_N, M_N)
    if not basis:
        raise ModuleError("Hom_N(L, M) is zero")
    h = len(basis)
    solver = la.SpanSolver(F, np.stack([b.reshape(-1) for b in basis]))
    def action_of(g: int) -> np.ndarray:
        ginv = int(G.inv[g])
        out = la.zeros(h, h)
        for j, f in enumerate(basis):
            img = F.matmul(F.matmul(M.action[g], f), L_ext.action[ginv])
            coords = solver.coords(img.reshape(-1))
            if coords is None:
                raise AssertionError("conjugated homomorphism left the Hom space")
            out[:, j] = coords
        return out

    for n in ctx.sub_indices:
        if not np.array_equal(action_of(int(n)), la.eye(h)):
            raise AssertionError("subgroup does not act trivially on Hom_N(L, M)")
    q_action = np.stack([action_of(int(rep)) for rep in ctx.coset_reps])
    return AModule(ctx.kQ, q_action, check="full", name=f"Hom_N(L,{M.name})")


def clifford_inverse_check(ctx, L_ext: AModule, M: AModule) -> bool:
    """Whether evaluation L (x) Hom_N(L, M) -> M is a kG-isomorphism."""
    F = ctx.kG.field
    L_N, _ = _check_isotypic(ctx, L_ext, M)
    basis = hom_space(L_N, restrict_module(M, ctx.kN, ctx.sub_indices))
    h = len(basis)
    hom_q = clifford_functor(ctx, L_ext, M)
    hom_g = pullback_module(hom_q, ctx.kG, ctx.proj, name="Hom^G")
    tens = tensor_group_modules(L_ext, hom_g)
    ml, mm = L_ext.dim, M.dim
    phi = la.zeros(mm, ml * h)
    for a in range(ml):
        for j in range(h):
            phi[:, a * h + j] = basis[j][:, a]
    for g in range(ctx.G.order):
        lhs = F.matmul(phi, tens.action[g])
        rhs = F.matmul(M.action[g], phi)
        if not np.array_equal(lhs, rhs):
            raise AssertionError("evaluation map fails to intertwine")
    return bool(phi.shape[0] == phi.shape[1] and la.is_invertible(F, phi))
