"""Exact arithmetic in GF(p^k) and univariate polynomials over it.

Elements of GF(p^k) are encoded as integers in ``range(p**k)``: the base-p
digits of the integer are the coefficients of the residue polynomial in the
canonical generator ``x``.  For prime fields this is plain arithmetic mod p.
Extension fields multiply through discrete exp/log tables and add digit-wise.

All elementwise operations accept and return numpy int64 arrays (or plain
ints) so matrix code can stay vectorized.
"""

from __future__ import annotations

import functools

import numpy as np

FIELD_ORDER_CAP = 2**20

_I64 = np.int64


def is_prime(n: int) -> bool:
    """Trial-division primality check (fields here are small)."""
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def prime_factors(n: int) -> list[int]:
    """Distinct prime factors of n, ascending."""
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out.append(n)
    return out


class FieldError(ValueError):
    pass


class Field:
    """The finite field GF(p^k) with a deterministic defining polynomial.

    The defining polynomial is the monic irreducible of degree k over GF(p)
    whose integer encoding (lower coefficients in base p) is smallest.
    """

    def __init__(self, p: int, k: int, order_cap: int = FIELD_ORDER_CAP):
        if not is_prime(p):
            raise FieldError(f"characteristic {p} is not prime")
        if k < 1:
            raise FieldError(f"extension degree must be >= 1, got {k}")
        q = p**k
        if q > order_cap:
            raise FieldError(f"field order {q} exceeds cap {order_cap}")
        self.p = p
        self.k = k
        self.q = q
        self._pow_p = p ** np.arange(k, dtype=_I64)
        if k == 1:
            # defining polynomial is x itself
            self.defining_poly = np.array([0, 1], dtype=_I64)
            self._inv_table = None
        else:
            self.defining_poly = _least_irreducible(p, k)
            self._build_tables()

    def __repr__(self):
        return f"GF({self.p}^{self.k})" if self.k > 1 else f"GF({self.p})"

    def __eq__(self, other):
        return (
            isinstance(other, Field) and self.p == other.p and self.k == other.k
        )

    def __hash__(self):
        return hash((self.p, self.k))

    # -- construction of exp/log tables ------------------------------------

    def _slow_mul(self, a: int, b: int) -> int:
        """Scalar product via polynomial multiplication; table bootstrap only."""
        p, k = self.p, self.k
        da = [(a // p**i) % p for i in range(k)]
        db = [(b // p**i) % p for i in range(k)]
        prod = [0] * (2 * k - 1)
        for i, ai in enumerate(da):
            if ai:
                for j, bj in enumerate(db):
                    prod[i + j] = (prod[i + j] + ai * bj) % p
        # reduce degrees >= k using x^k = -(lower part of defining poly)
        f = self.defining_poly
        for d in range(2 * k - 2, k - 1, -1):
            c = prod[d]
            if c:
                prod[d] = 0
                for i in range(k):
                    prod[d - k + i] = (prod[d - k + i] - c * int(f[i])) % p
        return sum(prod[i] * p**i for i in range(k))

    def _slow_pow(self, a: int, e: int) -> int:
        r = 1
        while e:
            if e & 1:
                r = self._slow_mul(r, a)
            a = self._slow_mul(a, a)
            e >>= 1
        return r

    def _find_generator(self) -> int:
        """Smallest multiplicative generator of GF(q)^x."""
        n = self.q - 1
        if n == 1:
            return 1
        checks = [n // ell for ell in prime_factors(n)]
        for g in range(2, self.q):
            if all(self._slow_pow(g, c) != 1 for c in checks):
                return g
        raise AssertionError("no generator found")

    def _build_tables(self):
        p, k, q = self.p, self.k, self.q
        g = self._find_generator()
        # multiplication by g is GF(p)-linear on digit vectors
        mg = np.zeros((k, k), dtype=_I64)
        for j in range(k):
            v = self._slow_mul(g, int(p**j))
            mg[:, j] = [(v // p**i) % p for i in range(k)]
        digits = np.zeros((q - 1, k), dtype=_I64)
        digits[0, 0] = 1
        n, mn = 1, mg
        while n < q - 1:
            m = min(n, q - 1 - n)
            digits[n : n + m] = digits[:m] @ mn.T % p
            mn = mn @ mn % p
            n += m
        vals = digits @ self._pow_p
        self._exp = np.concatenate([vals, vals])
        self._log = np.zeros(q, dtype=_I64)
        self._log[vals] = np.arange(q - 1, dtype=_I64)

    # -- elementwise arithmetic ---------------------------------------------

    def _digits(self, a):
        return (np.asarray(a, dtype=_I64)[..., None] // self._pow_p) % self.p

    def _undigits(self, d):
        return d @ self._pow_p

    def add(self, a, b):
        a = np.asarray(a, dtype=_I64)
        b = np.asarray(b, dtype=_I64)
        if self.k == 1:
            return (a + b) % self.p
        if self.p == 2:
            return a ^ b
        return self._undigits((self._digits(a) + self._digits(b)) % self.p)

    def neg(self, a):
        a = np.asarray(a, dtype=_I64)
        if self.k == 1:
            return (-a) % self.p
        if self.p == 2:
            return a.copy()
        return self._undigits((-self._digits(a)) % self.p)

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        a = np.asarray(a, dtype=_I64)
        b = np.asarray(b, dtype=_I64)
        if self.k == 1:
            return (a * b) % self.p
        out = self._exp[self._log[a] + self._log[b]]
        return np.where((a == 0) | (b == 0), 0, out)

    def inv(self, a):
        a = np.asarray(a, dtype=_I64)
        if np.any(a == 0):
            raise ZeroDivisionError("inverse of 0 in " + repr(self))
        if self.k == 1:
            if self._inv_table is None:
                t = np.zeros(self.p, dtype=_I64)
                for i in range(1, self.p):
                    t[i] = pow(i, self.p - 2, self.p)
                self._inv_table = t
            return self._inv_table[a]
        return self._exp[(self.q - 1 - self._log[a]) % (self.q - 1)]

    def pow_scalar(self, a: int, e: int) -> int:
        """a**e for a scalar field element and non-negative integer e."""
        if self.k == 1:
            return pow(int(a) % self.p, e, self.p)
        if a == 0:
            return 0 if e else 1
        return int(self._exp[(int(self._log[a]) * e) % (self.q - 1)])

    def sum(self, a, axis=None):
        a = np.asarray(a, dtype=_I64)
        if self.k == 1:
            return a.sum(axis=axis) % self.p
        if self.p == 2:
            return np.bitwise_xor.reduce(a, axis=axis)
        return self._undigits(self._digits(a).sum(axis=axis) % self.p)

    # -- vectorized linear algebra kernels ----------------------------------

    def matmul(self, a, b):
        """Matrix product over the field, mirroring numpy's ``@`` for
        inputs of dimension one to three (batched on the leading axis)."""
        a = np.asarray(a, dtype=_I64)
        b = np.asarray(b, dtype=_I64)
        if self.k == 1:
            return (a @ b) % self.p
        if a.ndim == 3 or b.ndim == 3:
            if a.ndim == 3 and b.ndim == 3:
                return np.stack([self._matmul2(x, y) for x, y in zip(a, b)])
            if a.ndim == 3:
                return np.stack([self._matmul2(x, b) for x in a])
            return np.stack([self._matmul2(a, y) for y in b])
        return self._matmul2(a, b)

    def _matmul2(self, a, b):
        squeeze_left = a.ndim == 1
        squeeze_right = b.ndim == 1
        a2 = a[None, :] if squeeze_left else a
        b2 = b[:, None] if squeeze_right else b
        out = np.empty((a2.shape[0], b2.shape[1]), dtype=_I64)
        step = max(1, 4_000_000 // max(1, a2.shape[1] * b2.shape[1]))
        for r0 in range(0, a2.shape[0], step):
            blk = self.mul(a2[r0 : r0 + step, :, None], b2[None, :, :])
            out[r0 : r0 + step] = self.sum(blk, axis=1)
        if squeeze_left and squeeze_right:
            return out[0, 0]
        if squeeze_left:
            return out[0]
        if squeeze_right:
            return out[:, 0]
        return out

    def lincomb(self, coeffs, mats):
        """Sum of coeffs[i] * mats[i] over the leading axis."""
        coeffs = np.asarray(coeffs, dtype=_I64)
        mats = np.asarray(mats, dtype=_I64)
        if self.k == 1:
            return np.tensordot(coeffs, mats, axes=(0, 0)) % self.p
        flat = mats.reshape(mats.shape[0], -1)
        return self.matmul(coeffs[None, :], flat).reshape(mats.shape[1:])

    def random(self, rng: np.random.Generator, shape=()):
        return rng.integers(0, self.q, size=shape, dtype=_I64)

    def elements(self):
        return np.arange(self.q, dtype=_I64)


@functools.lru_cache(maxsize=64)
def field_make(p: int, k: int = 1) -> Field:
    """GF(p^k) with the deterministic least defining polynomial (cached)."""
    return Field(p, k)


# -- polynomials over a field -----------------------------------------------
#
# Polynomials are 1-D int64 arrays of coefficients, lowest degree first.
# The zero polynomial is an empty array.


def ptrim(c) -> np.ndarray:
    c = np.asarray(c, dtype=_I64)
    nz = np.nonzero(c)[0]
    return c[: nz[-1] + 1] if nz.size else np.zeros(0, dtype=_I64)


def pdeg(c) -> int:
    c = ptrim(c)
    return len(c) - 1


def padd(F: Field, a, b):
    a, b = np.asarray(a, dtype=_I64), np.asarray(b, dtype=_I64)
    n = max(len(a), len(b))
    out = F.add(np.pad(a, (0, n - len(a))), np.pad(b, (0, n - len(b))))
    return ptrim(out)


def psub(F: Field, a, b):
    return padd(F, a, F.neg(np.asarray(b, dtype=_I64)))


def pmul(F: Field, a, b):
    a, b = ptrim(a), ptrim(b)
    if not len(a) or not len(b):
        return np.zeros(0, dtype=_I64)
    if F.k == 1:
        return ptrim(np.convolve(a, b) % F.p)
    out = np.zeros(len(a) + len(b) - 1, dtype=_I64)
    for i, ai in enumerate(a):
        if ai:
            out[i : i + len(b)] = F.add(out[i : i + len(b)], F.mul(ai, b))
    return ptrim(out)


def pmonic(F: Field, a):
    a = ptrim(a)
    if not len(a):
        return a
    lead = int(a[-1])
    if lead == 1:
        return a
    return F.mul(int(F.inv(lead)), a)


def pdivmod(F: Field, a, b):
    a, b = ptrim(a), ptrim(b)
    if not len(b):
        raise ZeroDivisionError("polynomial division by zero")
    if len(a) < len(b):
        return np.zeros(0, dtype=_I64), a
    inv_lead = int(F.inv(int(b[-1])))
    rem = a.copy()
    quo = np.zeros(len(a) - len(b) + 1, dtype=_I64)
    for d in range(len(a) - len(b), -1, -1):
        c = int(F.mul(int(rem[d + len(b) - 1]), inv_lead))
        if c:
            quo[d] = c
            rem[d : d + len(b)] = F.sub(rem[d : d + len(b)], F.mul(c, b))
    return ptrim(quo), ptrim(rem)


def pmod(F: Field, a, b):
    return pdivmod(F, a, b)[1]


def pgcd(F: Field, a, b):
    a, b = ptrim(a), ptrim(b)
    while len(b):
        a, b = b, pmod(F, a, b)
    return pmonic(F, a)


def ppowmod(F: Field, base, e: int, mod):
    """base**e reduced mod the polynomial ``mod``; e is a plain integer."""
    result = np.array([1], dtype=_I64)
    base = pmod(F, base, mod)
    while e:
        if e & 1:
            result = pmod(F, pmul(F, result, base), mod)
        base = pmod(F, pmul(F, base, base), mod)
        e >>= 1
    return result


def pcompose_mod(F: Field, f, g, mod):
    """f(g) mod ``mod`` by Horner evaluation."""
    f = ptrim(f)
    out = np.zeros(0, dtype=_I64)
    for c in f[::-1]:
        out = pmod(F, pmul(F, out, g), mod)
        out = padd(F, out, np.array([c], dtype=_I64))
    return out


def pderiv(F: Field, a):
    a = ptrim(a)
    if len(a) <= 1:
        return np.zeros(0, dtype=_I64)
    # i * a_i, with i acting through the prime subfield
    mult = np.arange(1, len(a), dtype=_I64) % F.p
    return ptrim(F.mul(mult, a[1:]))


def peval(F: Field, a, x: int) -> int:
    out = 0
    for c in ptrim(a)[::-1]:
        out = int(F.add(int(F.mul(out, x)), int(c)))
    return out


_X = np.array([0, 1], dtype=_I64)


def _least_irreducible(p: int, k: int) -> np.ndarray:
    """Monic irreducible of degree k over GF(p) with least integer encoding."""
    F = field_make(p, 1)
    subchecks = [k // ell for ell in prime_factors(k)]
    for code in range(p**k):
        low = [(code // p**i) % p for i in range(k)]
        f = np.array(low + [1], dtype=_I64)
        xpk = ppowmod(F, _X, p**k, f)
        if pdeg(psub(F, xpk, _X)) >= 0:
            continue
        ok = True
        for d in subchecks:
            g = psub(F, ppowmod(F, _X, p**d, f), _X)
            if pdeg(pgcd(F, f, g)) > 0:
                ok = False
                break
        if ok:
            return f
    raise AssertionError("irreducible polynomial search failed")


def psquarefree_radical(F: Field, f):
    """Product of the distinct monic irreducible factors of f."""
    f = pmonic(F, f)
    if pdeg(f) <= 1:
        return f
    df = pderiv(F, f)
    if pdeg(df) < 0:
        # f = g(x^p) = (decimated g)^p in characteristic p
        coeffs = f[:: F.p]
        root_exp = F.q // F.p
        dec = np.array([F.pow_scalar(int(c), root_exp) for c in coeffs], dtype=_I64)
        return psquarefree_radical(F, dec)
    d = pgcd(F, f, df)
    w = pdivmod(F, f, d)[0]  # squarefree: factors of multiplicity prime to p
    # strip w's factors from d; what survives has multiplicity divisible by p
    while True:
        g = pgcd(F, d, w)
        if pdeg(g) <= 0:
            break
        d = pdivmod(F, d, g)[0]
    if pdeg(d) <= 0:
        return pmonic(F, w)
    return pmul(F, pmonic(F, w), psquarefree_radical(F, d))


def distinct_irreducible_factors(F: Field, f, rng: np.random.Generator):
    """Distinct monic irreducible factors of f, sorted by (degree, coeffs).

    Multiplicities are discarded; the input need not be squarefree.
    Distinct-degree splitting via gcd with x^{q^d} - x, then randomized
    equal-degree splitting.
    """
    rem = psquarefree_radical(F, f)
    n = pdeg(rem)
    if n <= 0:
        return []
    out = []
    xq = ppowmod(F, _X, F.q, rem)
    xqd = _X
    d = 0
    while pdeg(rem) > 0 and 2 * (d + 1) <= pdeg(rem):
        d += 1
        xqd = pmod(F, pcompose_mod(F, xq, xqd, rem) if d > 1 else xq, rem)
        g = pgcd(F, rem, psub(F, xqd, _X))
        if pdeg(g) > 0:
            out.extend(_equal_degree_split(F, g, d, rng))
            rem = pdivmod(F, rem, g)[0]
            xqd = pmod(F, xqd, rem) if pdeg(rem) > 0 else xqd
    if pdeg(rem) > 0:
        out.append(pmonic(F, rem))
    out.sort(key=lambda g: (len(g), tuple(int(c) for c in g)))
    return out


def _equal_degree_split(F: Field, h, d: int, rng: np.random.Generator):
    """Split a squarefree product of degree-d irreducibles into its factors."""
    n = pdeg(h)
    if n == d:
        return [pmonic(F, h)]
    for _ in range(200):
        u = ptrim(F.random(rng, (n,)))
        if pdeg(u) < 1:
            continue
        g = pgcd(F, h, u)
        if 0 < pdeg(g) < n:
            return _equal_degree_split(F, g, d, rng) + _equal_degree_split(
                F, pdivmod(F, h, g)[0], d, rng
            )
        if F.p == 2:
            # trace map splitting in characteristic 2
            t = np.zeros(0, dtype=_I64)
            w = pmod(F, u, h)
            for _i in range(F.k * d):
                t = padd(F, t, w)
                w = pmod(F, pmul(F, w, w), h)
            g = pgcd(F, h, t)
        else:
            e = (F.q**d - 1) // 2
            w = ppowmod(F, u, e, h)
            g = pgcd(F, h, psub(F, w, np.array([1], dtype=_I64)))
        if 0 < pdeg(g) < n:
            return _equal_degree_split(F, g, d, rng) + _equal_degree_split(
                F, pdivmod(F, h, g)[0], d, rng
            )
    raise AssertionError(f"equal-degree splitting failed for degree {d}")
