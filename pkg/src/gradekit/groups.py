"""Finite groups from permutation generators.

Groups are fully enumerated: elements get fixed indices (identity at 0,
then breadth-first discovery order) and all structure lives in an index
valued multiplication table.  Permutations are tuples of images acting on
0-based points, composed as (s * t)(x) = s(t(x)).
"""

from __future__ import annotations

import re

import numpy as np

GROUP_ORDER_CAP = 5000

_I64 = np.int64


class GroupError(ValueError):
    pass


def compose(s: tuple, t: tuple) -> tuple:
    return tuple(s[t[x]] for x in range(len(t)))


def perm_inverse(s: tuple) -> tuple:
    out = [0] * len(s)
    for i, v in enumerate(s):
        out[v] = i
    return tuple(out)


def cycle_string(perm: tuple) -> str:
    """Cycle notation with 1-based points; identity prints as ()."""
    seen = [False] * len(perm)
    parts = []
    for start in range(len(perm)):
        if seen[start] or perm[start] == start:
            seen[start] = True
            continue
        cyc = [start]
        seen[start] = True
        nxt = perm[start]
        while nxt != start:
            cyc.append(nxt)
            seen[nxt] = True
            nxt = perm[nxt]
        parts.append("(" + " ".join(str(p + 1) for p in cyc) + ")")
    return "".join(parts) if parts else "()"


class FiniteGroup:
    """Enumerated finite group with multiplication and inverse tables."""

    def __init__(self, mul: np.ndarray, gens: list[int], labels=None, perms=None, name="G"):
        mul = np.asarray(mul, dtype=_I64)
        n = mul.shape[0]
        if mul.shape != (n, n):
            raise GroupError("multiplication table must be square")
        if n == 0:
            raise GroupError("empty group")
        if mul.min() < 0 or mul.max() >= n:
            raise GroupError("multiplication table is not closed")
        if not (np.array_equal(mul[0], np.arange(n)) and np.array_equal(mul[:, 0], np.arange(n))):
            raise GroupError("index 0 is not a two-sided identity")
        inv = np.full(n, -1, dtype=_I64)
        for i in range(n):
            js = np.nonzero(mul[i] == 0)[0]
            if js.size != 1 or mul[js[0], i] != 0:
                raise GroupError(f"element {i} lacks a two-sided inverse")
            inv[i] = js[0]
        if n <= 200:
            left = mul[mul]  # (i,j,k) -> (i*j)*k
            right = mul[:, mul]  # (i,j,k) -> i*(j*k)
            if not np.array_equal(left, right):
                raise GroupError("multiplication table is not associative")
        self.order = n
        self.mul = mul
        self.inv = inv
        self.gens = list(gens)
        self.labels = list(labels) if labels is not None else [f"g{i}" for i in range(n)]
        self.perms = perms
        self.name = name

    def __repr__(self):
        return f"FiniteGroup({self.name}, order={self.order})"

    def conj(self, g: int, h: int) -> int:
        """g h g^-1."""
        return int(self.mul[self.mul[g, h], self.inv[g]])

    def element_order(self, g: int) -> int:
        n, x = 1, g
        while x != 0:
            x = int(self.mul[x, g])
            n += 1
        return n

    def is_abelian(self) -> bool:
        return np.array_equal(self.mul, self.mul.T)

    def subgroup(self, gen_indices, name="H") -> "Subgroup":
        """Closure of the given element indices under multiplication."""
        elems = {0}
        frontier = [0]
        gen_indices = [int(g) for g in gen_indices]
        while frontier:
            e = frontier.pop()
            for g in gen_indices:
                x = int(self.mul[e, g])
                if x not in elems:
                    elems.add(x)
                    frontier.append(x)
        return Subgroup(self, sorted(elems), gen_indices, name=name)

    def index_of_perm(self, perm: tuple) -> int:
        if self.perms is None:
            raise GroupError("group has no permutation realization")
        key = np.asarray(perm, dtype=_I64).tobytes()
        try:
            return self._perm_index[key]
        except AttributeError:
            self._perm_index = {self.perms[i].tobytes(): i for i in range(self.order)}
            return self.index_of_perm(perm)
        except KeyError:
            raise GroupError(f"permutation {cycle_string(perm)} is not in {self.name}")


class Subgroup:
    """A subgroup presented as a sorted list of parent element indices."""

    def __init__(self, parent: FiniteGroup, indices, gen_indices=None, name="H"):
        self.parent = parent
        self.indices = np.asarray(sorted(int(i) for i in indices), dtype=_I64)
        if self.indices.size == 0 or self.indices[0] != 0:
            raise GroupError("subgroup must contain the identity")
        pos = {int(i): p for p, i in enumerate(self.indices)}
        mul = parent.mul
        for i in self.indices:
            if int(parent.inv[i]) not in pos:
                raise GroupError("subgroup not closed under inverse")
            for j in self.indices:
                if int(mul[i, j]) not in pos:
                    raise GroupError("subgroup not closed under multiplication")
        self.pos = pos
        self.gen_indices = list(gen_indices) if gen_indices is not None else [int(i) for i in self.indices if i != 0]
        self.name = name

    @property
    def order(self) -> int:
        return int(self.indices.size)

    def __contains__(self, idx: int) -> bool:
        return int(idx) in self.pos

    def as_group(self) -> FiniteGroup:
        """The subgroup as an abstract group (positions as element indices)."""
        idx = self.indices
        n = idx.size
        lookup = np.full(self.parent.order, -1, dtype=_I64)
        lookup[idx] = np.arange(n)
        mul = lookup[self.parent.mul[np.ix_(idx, idx)]]
        gens = [self.pos[g] for g in self.gen_indices]
        labels = [self.parent.labels[int(i)] for i in idx]
        perms = self.parent.perms[idx] if self.parent.perms is not None else None
        return FiniteGroup(mul, gens, labels=labels, perms=perms, name=self.name)


def group_from_permutations(gens, name="G", order_cap: int = GROUP_ORDER_CAP) -> FiniteGroup:
    """Enumerate the group generated by permutations (breadth-first order)."""
    gens = [tuple(int(x) for x in g) for g in gens]
    if not gens:
        gens = [(0,)]
    domain = max(len(g) for g in gens)
    norm = []
    for g in gens:
        g = g + tuple(range(len(g), domain))
        if sorted(g) != list(range(domain)):
            raise GroupError(f"not a permutation of 0..{domain - 1}: {g}")
        norm.append(g)
    ident = tuple(range(domain))
    elements = [ident]
    index = {ident: 0}
    head = 0
    while head < len(elements):
        e = elements[head]
        head += 1
        for g in norm:
            f = compose(e, g)
            if f not in index:
                if len(elements) >= order_cap:
                    raise GroupError(f"group order exceeds cap {order_cap}")
                index[f] = len(elements)
                elements.append(f)
    n = len(elements)
    parr = np.array(elements, dtype=_I64)
    mul = np.empty((n, n), dtype=_I64)
    for i in range(n):
        rows = parr[i][parr]  # compose(elements[i], elements[j]) for all j
        for j in range(n):
            mul[i, j] = index[tuple(rows[j])]
    labels = [cycle_string(e) for e in elements]
    gen_idx = []
    for g in norm:
        gi = index[g]
        if gi not in gen_idx:
            gen_idx.append(gi)
    return FiniteGroup(mul, gen_idx, labels=labels, perms=parr, name=name)


def trivial_group(name="1") -> FiniteGroup:
    return FiniteGroup(np.zeros((1, 1), dtype=_I64), [], labels=["()"], name=name)


def is_normal(G: FiniteGroup, N: Subgroup) -> bool:
    """gNg^-1 = N for all generators g of G."""
    if N.parent is not G:
        raise GroupError("subgroup does not belong to this group")
    members = set(int(i) for i in N.indices)
    for g in G.gens or range(G.order):
        for h in N.indices:
            if G.conj(int(g), int(h)) not in members:
                return False
    return True


def left_cosets(G: FiniteGroup, N: Subgroup):
    """Left cosets gN in order of least member; returns (reps, coset_id, n_part).

    coset_id[e] is the coset index of element e; n_part[e] is the position in
    N of the unique n with e = rep * n.
    """
    coset_id = np.full(G.order, -1, dtype=_I64)
    n_part = np.full(G.order, -1, dtype=_I64)
    reps = []
    for g in range(G.order):
        if coset_id[g] >= 0:
            continue
        cid = len(reps)
        reps.append(g)
        members = G.mul[g, N.indices]
        coset_id[members] = cid
        n_part[members] = np.arange(N.indices.size)
    return reps, coset_id, n_part


def right_cosets(G: FiniteGroup, N: Subgroup):
    """Right cosets Ng in order of least member; e = n * rep decomposition."""
    coset_id = np.full(G.order, -1, dtype=_I64)
    n_part = np.full(G.order, -1, dtype=_I64)
    reps = []
    for g in range(G.order):
        if coset_id[g] >= 0:
            continue
        cid = len(reps)
        reps.append(g)
        members = G.mul[N.indices, g]
        coset_id[members] = cid
        n_part[members] = np.arange(N.indices.size)
    return reps, coset_id, n_part


def quotient_group(G: FiniteGroup, N: Subgroup):
    """The coset group G/N and the projection map (as an index array)."""
    if not is_normal(G, N):
        raise GroupError(f"{N.name} is not normal in {G.name}")
    reps, coset_id, _ = left_cosets(G, N)
    m = len(reps)
    qmul = np.empty((m, m), dtype=_I64)
    for a in range(m):
        qmul[a] = coset_id[G.mul[reps[a], reps]]
    proj = coset_id.copy()
    # verify the projection is a homomorphism on all pairs
    if not np.array_equal(proj[G.mul], qmul[proj[:, None], proj[None, :]]):
        raise AssertionError("quotient projection failed homomorphism check")
    qgens = []
    for g in G.gens:
        img = int(proj[g])
        if img != 0 and img not in qgens:
            qgens.append(img)
    labels = [G.labels[r] + "·" + N.name for r in reps]
    Q = FiniteGroup(qmul, qgens, labels=labels, name=f"{G.name}/{N.name}")
    return Q, proj


def conjugation_matrix(G: FiniteGroup, N: Subgroup, g: int) -> np.ndarray:
    """Permutation matrix of n -> g n g^-1 on the basis of N's elements."""
    if not is_normal(G, N):
        raise GroupError(f"{N.name} is not normal in {G.name}")
    n = N.order
    out = np.zeros((n, n), dtype=_I64)
    for j, h in enumerate(N.indices):
        out[N.pos[G.conj(int(g), int(h))], j] = 1
    return out


# -- group specification files ------------------------------------------------
#
# Grammar (statements end with ';', comments start with '#'):
#   group  NAME = (1 2), (1 2 3 4);
#   subgroup NAME = (1 2)(3 4), (1 3)(2 4);
# A subgroup statement refers to the most recent group statement.  Points are
# 1-based; the domain of a group is 1..max point over its generators; the
# identity permutation is written ().

_CYCLE_RE = re.compile(r"\(([^()]*)\)")


def parse_permutation(text: str, domain: int = 0) -> tuple:
    """Parse cycle notation like ``(1 2)(3 4)`` into an image tuple."""
    text = text.strip()
    if not re.fullmatch(r"(\s*\([\d\s,]*\)\s*)+", text):
        raise GroupError(f"malformed permutation: {text!r}")
    cycles = []
    maxpt = domain
    for body in _CYCLE_RE.findall(text):
        pts = [int(t) for t in re.split(r"[\s,]+", body.strip()) if t]
        if any(p < 1 for p in pts):
            raise GroupError(f"points must be >= 1 in {text!r}")
        if len(set(pts)) != len(pts):
            raise GroupError(f"repeated point inside a cycle: {text!r}")
        cycles.append(pts)
        maxpt = max(maxpt, max(pts, default=0))
    img = list(range(maxpt))
    for pts in cycles:
        for a, b in zip(pts, pts[1:] + pts[:1]):
            img[a - 1] = b - 1
    return tuple(img)


def _split_generators(rhs: str) -> list[str]:
    parts = []
    depth = 0
    cur = ""
    for ch in rhs:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == "," and depth == 0:
            parts.append(cur)
            cur = ""
        else:
            cur += ch
    if cur.strip():
        parts.append(cur)
    return parts


def parse_group_spec(text: str, order_cap: int = GROUP_ORDER_CAP) -> dict:
    """Parse a group specification file.

    Returns an ordered dict  name -> {"group": FiniteGroup,
    "subgroups": {name: Subgroup}}.
    """
    out: dict[str, dict] = {}
    current: str | None = None
    cleaned = "\n".join(line.split("#", 1)[0] for line in text.splitlines())
    for stmt in cleaned.split(";"):
        stmt = stmt.strip()
        if not stmt:
            continue
        m = re.fullmatch(r"(group|subgroup)\s+([A-Za-z_]\w*)\s*=\s*(.+)", stmt, re.S)
        if not m:
            raise GroupError(f"malformed statement: {stmt!r}")
        kind, name, rhs = m.group(1), m.group(2), m.group(3)
        gen_texts = _split_generators(rhs)
        if kind == "group":
            perms = [parse_permutation(t) for t in gen_texts]
            domain = max(len(p) for p in perms)
            perms = [p + tuple(range(len(p), domain)) for p in perms]
            if name in out:
                raise GroupError(f"duplicate group name {name!r}")
            out[name] = {"group": group_from_permutations(perms, name=name, order_cap=order_cap), "subgroups": {}}
            current = name
        else:
            if current is None:
                raise GroupError("subgroup statement before any group statement")
            G = out[current]["group"]
            domain = G.perms.shape[1]
            idxs = []
            for t in gen_texts:
                p = parse_permutation(t)
                if len(p) > domain:
                    raise GroupError(f"subgroup generator {t.strip()!r} leaves the domain of {current}")
                p = p + tuple(range(len(p), domain))
                idxs.append(G.index_of_perm(p))
            if name in out[current]["subgroups"]:
                raise GroupError(f"duplicate subgroup name {name!r}")
            out[current]["subgroups"][name] = G.subgroup(idxs, name=name)
    return out
