"""Exact arithmetic in F_p and F_{p^k}, plus characteristic-p binomials.

Field elements are polynomial residues stored little-endian as length-k
integer vectors; a prime field is the k=1 case.  All bulk operations work
on numpy int64 arrays whose trailing axis is the coefficient axis, so the
linear algebra layer can stay fully vectorized.  The defining modulus for
each (p, k) is the lexicographically least monic irreducible polynomial,
which pins down serialization across runs.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def lucas_binom(a: int, b: int, p: int) -> int:
    """Binomial coefficient C(a, b) mod p for a, b >= 0, digit-wise in base p.

    Returns 0 exactly when some base-p digit of b exceeds the matching
    digit of a.
    """
    if b < 0 or a < 0:
        raise ValueError("lucas_binom expects nonnegative arguments")
    r = 1
    while b > 0:
        ad, bd = a % p, b % p
        if bd > ad:
            return 0
        num = den = 1
        for t in range(bd):
            num = num * (ad - t) % p
            den = den * (t + 1) % p
        r = r * num * pow(den, p - 2, p) % p
        a //= p
        b //= p
    return r


def binom_int(a: int, b: int, p: int) -> int:
    """Generalized C(a, b) mod p with a allowed negative (b >= 0)."""
    if b < 0:
        return 0
    if a >= 0:
        return lucas_binom(a, b, p)
    # C(-n, b) = (-1)^b C(n+b-1, b)
    v = lucas_binom(-a + b - 1, b, p)
    return (-v) % p if b % 2 else v


def inv_mod(a: int, p: int) -> int:
    a %= p
    if a == 0:
        raise ZeroDivisionError("inverse of 0 mod %d" % p)
    return pow(a, p - 2, p)


def factorial_mod(n: int, p: int) -> int:
    r = 1
    for t in range(2, n + 1):
        r = r * t % p
    return r


def _poly_is_irreducible(coeffs: tuple[int, ...], p: int) -> bool:
    """Exhaustive root/factor test for a monic poly of degree k <= 6 over F_p.

    coeffs are the k non-leading coefficients, little-endian.
    """
    k = len(coeffs)
    full = list(coeffs) + [1]

    def evalp(poly, x):
        v = 0
        for c in reversed(poly):
            v = (v * x + c) % p
        return v

    if any(evalp(full, x) == 0 for x in range(p)):
        return False
    if k <= 3:
        return True
    # trial division by monic irreducible polys of degree 2 .. k//2
    def polydiv_exact(num, den):
        num = list(num)
        dd = len(den) - 1
        while len(num) - 1 >= dd:
            lead = num[-1]
            if lead:
                shift = len(num) - 1 - dd
                for i, c in enumerate(den):
                    num[shift + i] = (num[shift + i] - lead * c) % p
            num.pop()
        return all(c == 0 for c in num)

    for d in range(2, k // 2 + 1):
        for idx in range(p**d):
            cs = [(idx // p**t) % p for t in range(d)]
            den = cs + [1]
            if any(evalp(den, x) == 0 for x in range(p)):
                continue
            if d > 2 and not _poly_is_irreducible(tuple(cs), p):
                continue
            if polydiv_exact(full, den):
                return False
    return True


def least_irreducible(p: int, k: int) -> tuple[int, ...]:
    """Non-leading coefficients of the least monic irreducible of degree k."""
    if k == 1:
        return (0,)
    for idx in range(p**k):
        cs = tuple((idx // p**t) % p for t in range(k))
        if _poly_is_irreducible(cs, p):
            return cs
    raise RuntimeError("no irreducible polynomial found (impossible)")


class Field:
    """F_{p^k} with vectorized coefficient-array arithmetic.

    Elements handled by this class are numpy int64 arrays with trailing
    axis of length k holding reduced coefficients.  Use element() /
    FieldElement for a scalar-level API.
    """

    def __init__(self, p: int, k: int = 1):
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        if k < 1:
            raise ValueError("extension degree must be >= 1")
        self.p = p
        self.k = k
        self.q = p**k
        self.modulus = least_irreducible(p, k)
        # x^i * x^j = sum_s MULT_TENSOR[i,j,s] x^s, already reduced
        self._tmul = self._build_tmul()
        self._inv_table = None
        self._idx_tables = None

    def __repr__(self):
        return f"Field(p={self.p}, k={self.k})"

    def __eq__(self, other):
        return isinstance(other, Field) and (self.p, self.k) == (other.p, other.k)

    def __hash__(self):
        return hash((self.p, self.k))

    def _build_tmul(self) -> np.ndarray:
        p, k = self.p, self.k
        # powers of x reduced mod modulus, degrees 0 .. 2k-2
        pows = np.zeros((2 * k - 1, k), dtype=np.int64)
        cur = np.zeros(k, dtype=np.int64)
        cur[0] = 1
        for d in range(2 * k - 1):
            pows[d] = cur
            # multiply by x
            nxt = np.zeros(k, dtype=np.int64)
            nxt[1:] = cur[: k - 1]
            top = cur[k - 1]
            if top:
                for i, c in enumerate(self.modulus):
                    nxt[i] = (nxt[i] - top * c) % p
            cur = nxt % p
        t = np.zeros((k, k, k), dtype=np.int64)
        for i in range(k):
            for j in range(k):
                t[i, j] = pows[i + j]
        return t

    # ------------------------------------------------------------------
    # array constructors

    def zeros(self, shape=()) -> np.ndarray:
        return np.zeros(tuple(shape) + (self.k,), dtype=np.int64)

    def scalar(self, c: int) -> np.ndarray:
        v = self.zeros()
        v[0] = c % self.p
        return v

    def one(self) -> np.ndarray:
        return self.scalar(1)

    def from_coeffs(self, coeffs) -> np.ndarray:
        a = np.asarray(coeffs, dtype=np.int64) % self.p
        if a.shape[-1] != self.k:
            raise ValueError("coefficient vector has wrong length")
        return a

    def eye(self, n: int) -> np.ndarray:
        m = self.zeros((n, n))
        m[np.arange(n), np.arange(n), 0] = 1
        return m

    def random(self, shape, rng) -> np.ndarray:
        return rng.integers(0, self.p, size=tuple(shape) + (self.k,), dtype=np.int64)

    # ------------------------------------------------------------------
    # arithmetic

    def add(self, a, b) -> np.ndarray:
        return (a + b) % self.p

    def sub(self, a, b) -> np.ndarray:
        return (a - b) % self.p

    def neg(self, a) -> np.ndarray:
        return (-a) % self.p

    def mul(self, a, b) -> np.ndarray:
        if self.k == 1:
            return (a * b) % self.p
        return np.einsum("...i,...j,ijs->...s", a, b, self._tmul) % self.p

    def smul(self, c: int, a) -> np.ndarray:
        return (a * (c % self.p)) % self.p

    def matmul(self, a, b) -> np.ndarray:
        """(n, m, k) @ (m, l, k) -> (n, l, k)."""
        if self.k == 1:
            return (a[..., 0] @ b[..., 0])[..., None] % self.p
        return np.einsum("nmi,mlj,ijs->nls", a, b, self._tmul) % self.p

    def matvec(self, a, v) -> np.ndarray:
        return self.matmul(a, v[:, None, :])[:, 0, :]

    def to_index(self, a) -> np.ndarray:
        """Pack coefficient vectors into integer indices (base p)."""
        w = self.p ** np.arange(self.k, dtype=np.int64)
        return (np.asarray(a) * w).sum(axis=-1)

    def from_index(self, idx) -> np.ndarray:
        idx = np.asarray(idx, dtype=np.int64)
        out = np.zeros(idx.shape + (self.k,), dtype=np.int64)
        for t in range(self.k):
            out[..., t] = (idx // self.p**t) % self.p
        return out

    def _ensure_inv_table(self):
        if self._inv_table is None:
            els = self.from_index(np.arange(self.q))
            table = np.zeros(self.q, dtype=np.int64)
            # x^(q-2) by square and multiply, vectorized over the whole field
            acc = np.tile(self.scalar(1), (self.q, 1))
            base = els.copy()
            e = self.q - 2
            while e:
                if e & 1:
                    acc = self.mul(acc, base)
                base = self.mul(base, base)
                e >>= 1
            table = self.to_index(acc)
            self._inv_table = table

    def inv(self, a) -> np.ndarray:
        """Elementwise multiplicative inverse; raises on zero."""
        a = np.asarray(a)
        if not self.nonzero_mask(a).all():
            raise ZeroDivisionError("field inverse of zero")
        if self.k == 1:
            flat = a.reshape(-1)
            out = np.array([pow(int(v), self.p - 2, self.p) for v in flat],
                           dtype=np.int64)
            return out.reshape(a.shape)
        self._ensure_inv_table()
        return self.from_index(self._inv_table[self.to_index(a)])

    def pow_el(self, a, e: int) -> np.ndarray:
        acc = self.scalar(1)
        base = a
        while e:
            if e & 1:
                acc = self.mul(acc, base)
            base = self.mul(base, base)
            e >>= 1
        return acc

    def frobenius(self, a) -> np.ndarray:
        """x -> x^p, a field automorphism fixing the prime subfield."""
        return self.pow_el(a, self.p)

    def nonzero_mask(self, a) -> np.ndarray:
        return np.asarray(a).any(axis=-1)

    def is_zero(self, a) -> bool:
        return not np.asarray(a).any()

    def equal(self, a, b) -> bool:
        return bool(np.array_equal(np.asarray(a) % self.p, np.asarray(b) % self.p))

    # ------------------------------------------------------------------

    def all_elements(self) -> np.ndarray:
        return self.from_index(np.arange(self.q))

    # ------------------------------------------------------------------
    # index-level arithmetic: elements encoded as integers in [0, q),
    # used where structure constants are stored as flat integer arrays

    def _ensure_idx_tables(self):
        if self._idx_tables is not None:
            return
        els = self.all_elements()
        add_t = self.to_index(self.add(els[:, None, :], els[None, :, :]))
        mul_t = self.to_index(self.mul(els[:, None, :], els[None, :, :]))
        neg_t = self.to_index(self.neg(els))
        frob_t = self.to_index(self.frobenius(els))
        self._ensure_inv_table()
        self._idx_tables = (add_t.astype(np.int64), mul_t.astype(np.int64),
                            neg_t.astype(np.int64), frob_t.astype(np.int64))

    def idx_add(self, i, j):
        self._ensure_idx_tables()
        return self._idx_tables[0][i, j]

    def idx_mul(self, i, j):
        self._ensure_idx_tables()
        return self._idx_tables[1][i, j]

    def idx_neg(self, i):
        self._ensure_idx_tables()
        return self._idx_tables[2][i]

    def idx_frobenius(self, i):
        self._ensure_idx_tables()
        return self._idx_tables[3][i]

    def idx_pow(self, i, e: int):
        acc, base = 1, int(i)
        while e:
            if e & 1:
                acc = int(self.idx_mul(acc, base))
            base = int(self.idx_mul(base, base))
            e >>= 1
        return acc

    def idx_embed_int(self, c: int) -> int:
        return c % self.p

    def artin_schreier_roots(self, c) -> list[np.ndarray]:
        """All x in F_{p^k} with x^p - x = c; empty list means enlarge k."""
        els = self.all_elements()
        vals = self.sub(self.pow_el_batch(els, self.p), els)
        mask = (vals == np.asarray(c) % self.p).all(axis=-1)
        return [els[i] for i in np.nonzero(mask)[0]]

    def pow_el_batch(self, a, e: int) -> np.ndarray:
        acc = np.tile(self.scalar(1), a.shape[:-1] + (1,))
        base = a.copy()
        while e:
            if e & 1:
                acc = self.mul(acc, base)
            base = self.mul(base, base)
            e >>= 1
        return acc


@lru_cache(maxsize=None)
def field(p: int, k: int = 1) -> Field:
    return Field(p, k)


class FieldElement:
    """Scalar wrapper over Field coefficient vectors, for the public API."""

    __slots__ = ("field", "coeffs")

    def __init__(self, fld: Field, coeffs):
        self.field = fld
        self.coeffs = fld.from_coeffs(np.asarray(coeffs, dtype=np.int64).reshape(fld.k))

    @classmethod
    def from_int(cls, fld: Field, c: int) -> "FieldElement":
        return cls(fld, fld.scalar(c))

    def __add__(self, other):
        return FieldElement(self.field, self.field.add(self.coeffs, other.coeffs))

    def __sub__(self, other):
        return FieldElement(self.field, self.field.sub(self.coeffs, other.coeffs))

    def __neg__(self):
        return FieldElement(self.field, self.field.neg(self.coeffs))

    def __mul__(self, other):
        return FieldElement(self.field, self.field.mul(self.coeffs, other.coeffs))

    def inverse(self):
        return FieldElement(self.field, self.field.inv(self.coeffs))

    def frobenius(self):
        return FieldElement(self.field, self.field.frobenius(self.coeffs))

    def is_zero(self) -> bool:
        return self.field.is_zero(self.coeffs)

    def __eq__(self, other):
        return (isinstance(other, FieldElement) and self.field == other.field
                and self.field.equal(self.coeffs, other.coeffs))

    def __hash__(self):
        return hash((self.field.p, self.field.k, int(self.field.to_index(self.coeffs))))

    def __repr__(self):
        return f"F{self.field.p}^{self.field.k}{list(map(int, self.coeffs))}"

    def to_json(self):
        return [int(c) for c in self.coeffs]


def artin_schreier_roots(fld: Field, c) -> list[np.ndarray]:
    """Solve x^p - x = c in F_{p^k}.  Result has 0 or p elements."""
    return fld.artin_schreier_roots(c)


def enlarge_until_artin_schreier(p: int, c_int_or_coeffs, k_start: int = 1,
                                 k_max: int = 12):
    """Smallest field F_{p^k}, k >= k_start, where x^p - x = c has roots.

    c must be prime-field rational (an int), which covers every p-character
    sampled by the verification grids.  Returns (field, roots).
    """
    c = int(c_int_or_coeffs) % p
    for k in range(k_start, k_max + 1):
        fld = field(p, k)
        roots = fld.artin_schreier_roots(fld.scalar(c))
        if roots:
            return fld, roots
    raise RuntimeError("Artin-Schreier solution not found below k_max")
