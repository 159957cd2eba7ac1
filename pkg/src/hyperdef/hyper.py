"""Finite-dimensional algebras: Di(G_r), U^[r]_chi(SL2), U_chi(sl2), centers.

Basis monomials are triples (i, k, j) standing for e^(i) binom(h;k) f^(j)
in the divided-power PBW order, with every exponent below the level bound
(p^r for the distribution algebra of the r-th Frobenius kernel, p^(r+1)
for the reduced higher enveloping algebra).

Multiplication of U^[r]_chi is computed by straightening inside the
crossed-product picture:

  * f^(j1) e^(i2) rewrites through the classical divided-power identity
    f^(a) e^(b) = sum_s e^(b-s) binom(-h-a-b+2s; s) f^(a-s);
  * h-binomials translate across e/f powers, binom(h;k) e^(i) =
    e^(i) binom(h+2i; k), and multiply inside a faithful function model
    of the torus part (digit coordinates below level r, one Artin-Schreier
    coordinate at level r obeying Theta^p = Theta + chi(h)^p);
  * e- and f-family overflows past the exponent bound extract the central
    elements (x^(p^r))^{tensor p} - (x^(p^r))^p, which the quotient pins to
    chi(x)^p.

At chi = 0 the result must coincide exactly with the distribution-algebra
tensor computed independently by the dist oracle; that comparison is part
of the acceptance suite.

Structure constants are stored as flat integer indices into the coefficient
field (for a prime field, index == value).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .gf import Field, field, lucas_binom, binom_int, factorial_mod, inv_mod

# ----------------------------------------------------------------------
# small helpers


def digits(n: int, p: int, length: int) -> list[int]:
    return [(n // p**t) % p for t in range(length)]


def _matinv_modp(M: np.ndarray, p: int) -> np.ndarray:
    n = M.shape[0]
    A = np.concatenate([M % p, np.eye(n, dtype=np.int64)], axis=1)
    r = 0
    for c in range(n):
        pivs = np.nonzero(A[r:, c])[0]
        if pivs.size == 0:
            raise ValueError("matrix not invertible mod p")
        pr = r + int(pivs[0])
        if pr != r:
            A[[r, pr]] = A[[pr, r]]
        A[r] = A[r] * inv_mod(int(A[r, c]), p) % p
        others = np.nonzero(A[:, c])[0]
        others = others[others != r]
        A[others] = (A[others] - np.outer(A[others, c], A[r])) % p
        r += 1
    return A[:, n:]


# ----------------------------------------------------------------------
# chi-independent straightening tables for a fixed (p, r)


class CrossedProductTables:
    """Per-(p, r) tables driving U^[r]_chi multiplication (P = p^(r+1))."""

    def __init__(self, p: int, r: int):
        self.p = p
        self.r = r
        self.D = p**r
        self.P = p ** (r + 1)
        P, D = self.P, self.D
        # same-family products  x^(s) x^(t), overflow tracked
        EC = np.zeros((P, P), dtype=np.int64)
        ET = np.zeros((P, P), dtype=np.int64)
        EO = np.zeros((P, P), dtype=np.int64)
        for s in range(P):
            for t in range(P):
                tot = s + t
                if tot < P:
                    EC[s, t] = lucas_binom(tot, s, p)
                    ET[s, t] = tot
                else:
                    a, b = s % D, s // D
                    a2, b2 = t % D, t // D
                    carry, arem = divmod(a + a2, D)
                    B = b + b2 + carry
                    c = lucas_binom(a + a2, a, p) * factorial_mod(B - p, p)
                    c = c * inv_mod(factorial_mod(b, p) * factorial_mod(b2, p), p)
                    EC[s, t] = c % p
                    ET[s, t] = arem + D * (B - p)
                    EO[s, t] = 1
        self.EC, self.ET, self.EO = EC, ET, EO

        # binom(h + c; k) = sum_s TRANSB[c, k, s] binom(h; s)
        TRANSB = np.zeros((2 * P - 1, P, P), dtype=np.int64)
        for c in range(2 * P - 1):
            for k in range(P):
                for s in range(k + 1):
                    TRANSB[c, k, s] = lucas_binom(c, k - s, p)
        self.TRANSB = TRANSB

        # binom(-h - d; s) = sum_v BRACK[s, d, v] binom(h; v)
        BRACK = np.zeros((P, 2 * P - 1, P), dtype=np.int64)
        for s in range(P):
            for d in range(2 * P - 1):
                for u in range(s + 1):
                    cu = binom_int(-d, s - u, p)
                    if cu == 0:
                        continue
                    sign = (p - 1) ** u % p
                    for v in range(u + 1):
                        t = cu * sign * binom_int(u - 1, u - v, p) % p
                        BRACK[s, d, v] = (BRACK[s, d, v] + t) % p
        self.BRACK = BRACK

        # torus function model: binom(h;k) evaluates, on the character with
        # digit string ds and top coordinate Theta, to
        # prod_t C(ds_t, k_t) * Bpoly_{k_r}(Theta)
        Bco = np.zeros((p, p), dtype=np.int64)
        for b in range(p):
            poly = [1]
            for s in range(b):
                nxt = []
                for i in range(len(poly) + 1):
                    v = -s * poly[i] if i < len(poly) else 0
                    if i >= 1:
                        v += poly[i - 1]
                    nxt.append(v % p)
                poly = nxt
            fi = inv_mod(factorial_mod(b, p), p)
            for m, cf in enumerate(poly):
                Bco[b, m] = cf * fi % p
        FWD = np.zeros((P, D * p), dtype=np.int64)
        for k in range(P):
            kd = digits(k, p, r + 1)
            for ds in range(D):
                dd = digits(ds, p, r)
                w = 1
                for t in range(r):
                    w = w * lucas_binom(dd[t], kd[t], p) % p
                for m in range(p):
                    FWD[k, ds * p + m] = w * Bco[kd[r], m] % p
        self.FWD = FWD
        self.BACKM = _matinv_modp(FWD, p)

        # model forms of the translation and bracket tables
        self.TRANSB_M = (TRANSB.reshape(-1, P) @ FWD % p).reshape(
            2 * P - 1, P, D, p)
        self.BRACK_M = (BRACK.reshape(-1, P) @ FWD % p).reshape(
            P, 2 * P - 1, D, p)

    def theta_reduction(self, chp: int) -> np.ndarray:
        """Rows: Theta^m reduced by Theta^p = Theta + chp, m < 2p-1."""
        p = self.p
        rows = np.zeros((2 * p - 1, p), dtype=np.int64)
        cur = np.zeros(p, dtype=np.int64)
        cur[0] = 1
        for m in range(2 * p - 1):
            rows[m] = cur
            top = cur[p - 1]
            nxt = np.zeros(p, dtype=np.int64)
            nxt[1:] = cur[: p - 1]
            nxt[0] = (nxt[0] + top * chp) % p
            nxt[1] = (nxt[1] + top) % p
            cur = nxt
        return rows


@lru_cache(maxsize=None)
def crossed_tables(p: int, r: int) -> CrossedProductTables:
    return CrossedProductTables(p, r)


def _model_mul(X, Y, redth, p):
    """Pointwise product of torus-model vectors (..., D, p)."""
    shp = np.broadcast_shapes(X.shape, Y.shape)
    out = np.zeros(shp[:-1] + (2 * p - 1,), dtype=np.int64)
    for m in range(p):
        for n in range(p):
            out[..., m + n] += X[..., m] * Y[..., n]
    return np.einsum("...c,cq->...q", out % p, redth) % p


# ----------------------------------------------------------------------
# p-characters


class PCharacter:
    """chi in sl2* by its values on the Chevalley basis (e, h, f)."""

    def __init__(self, fld: Field, e_idx: int, h_idx: int, f_idx: int):
        self.field = fld
        self.values = (int(e_idx) % fld.q, int(h_idx) % fld.q, int(f_idx) % fld.q)

    @classmethod
    def from_ints(cls, fld: Field, ce: int, ch: int, cf: int) -> "PCharacter":
        return cls(fld, ce % fld.p, ch % fld.p, cf % fld.p)

    @property
    def e(self):
        return self.values[0]

    @property
    def h(self):
        return self.values[1]

    @property
    def f(self):
        return self.values[2]

    def is_zero(self) -> bool:
        return self.values == (0, 0, 0)

    def is_prime_valued(self) -> bool:
        return all(v < self.field.p for v in self.values)

    def powers_p(self) -> tuple[int, int, int]:
        """(chi(e)^p, chi(h)^p, chi(f)^p) as field indices."""
        f = self.field
        return tuple(f.idx_pow(v, f.p) for v in self.values)

    def in_field(self, big: Field) -> "PCharacter":
        if not self.is_prime_valued():
            raise ValueError("only prime-valued characters move between fields")
        return PCharacter(big, *self.values)

    def __repr__(self):
        return f"PCharacter(e={self.e},h={self.h},f={self.f} in F_{self.field.q})"

    def __eq__(self, other):
        return (isinstance(other, PCharacter) and self.field == other.field
                and self.values == other.values)

    def __hash__(self):
        return hash((self.field.p, self.field.k, self.values))

    def to_json(self):
        return [list(map(int, self.field.from_index(v))) for v in self.values]


def classify_pchar(chi: PCharacter) -> dict:
    """Semisimple / nilpotent / regular flags of chi (sl2 conventions).

    For p > 2 the trace form matches chi with x_chi = chi(f) e + (chi(h)/2) h
    + chi(e) f and reads the flags off det(x_chi).  The form degenerates at
    p = 2; there the documented convention takes b' = chi(h) in the same
    determinant and calls chi semisimple iff chi(e) = chi(f) = 0.  Every
    nonzero chi of sl2 is regular.
    """
    fld = chi.field
    p = fld.p
    if p != 2:
        half = inv_mod(2, p)
        b = fld.idx_mul(chi.h, half)
    else:
        b = chi.h
    disc = fld.idx_add(fld.idx_mul(b, b), fld.idx_mul(chi.e, chi.f))
    nilpotent = disc == 0
    if chi.is_zero():
        semisimple = True
    elif p != 2:
        semisimple = disc != 0
    else:
        semisimple = chi.e == 0 and chi.f == 0
    kind = "semisimple" if semisimple else ("nilpotent" if nilpotent else "mixed")
    return {
        "regular": not chi.is_zero(),
        "nilpotent": nilpotent,
        "semisimple": semisimple,
        "kind": kind,
    }


def conjugate_pchar(chi: PCharacter, g: np.ndarray) -> PCharacter:
    """Coadjoint action (g . chi)(y) = chi(g^-1 y g) for g in SL2(F_q).

    g is a 2x2 matrix of field indices; det(g) must be 1.
    """
    fld = chi.field
    a, b = int(g[0, 0]), int(g[0, 1])
    c, d = int(g[1, 0]), int(g[1, 1])
    det = fld.idx_add(fld.idx_mul(a, d), fld.idx_neg(fld.idx_mul(b, c)))
    if det != 1:
        raise ValueError("conjugating matrix must have determinant 1")
    ginv = np.array([[d, fld.idx_neg(b)], [fld.idx_neg(c), a]], dtype=np.int64)

    def mat_mul(X, Y):
        Z = np.zeros((2, 2), dtype=np.int64)
        for i in range(2):
            for j in range(2):
                acc = 0
                for t in range(2):
                    acc = fld.idx_add(acc, fld.idx_mul(int(X[i, t]), int(Y[t, j])))
                Z[i, j] = acc
        return Z

    basis = {
        "e": np.array([[0, 1], [0, 0]], dtype=np.int64),
        "h": np.array([[1, 0], [0, fld.idx_neg(1)]], dtype=np.int64),
        "f": np.array([[0, 0], [1, 0]], dtype=np.int64),
    }
    new = []
    for key in ("e", "h", "f"):
        m = mat_mul(mat_mul(ginv, basis[key]), g)
        # decompose  m = alpha e + beta h + gamma f  (alpha=m01, beta=m00, gamma=m10)
        alpha, beta, gamma = int(m[0, 1]), int(m[0, 0]), int(m[1, 0])
        val = fld.idx_mul(chi.e, alpha)
        val = fld.idx_add(val, fld.idx_mul(chi.h, beta))
        val = fld.idx_add(val, fld.idx_mul(chi.f, gamma))
        new.append(val)
    return PCharacter(fld, *new)


# ----------------------------------------------------------------------
# structure-constant algebras


class StructureConstantAlgebra:
    """Associative algebra on divided-power monomials with sparse tensor.

    basis[i] is an exponent triple; mult is CSR over pairs (a, b) with
    column = product basis index and value = coefficient as a field index.
    """

    def __init__(self, label: str, p: int, r: int, fld: Field, chi,
                 bound: int, generators: dict, csr, basis=None,
                 monomial_style: str = "divided"):
        self.label = label
        self.p = p
        self.r = r
        self.field = fld
        self.chi = chi
        self.bound = bound
        self.monomial_style = monomial_style
        if basis is None:
            basis = [(i, k, j) for i in range(bound)
                     for k in range(bound) for j in range(bound)]
        self.basis = basis
        self.index = {m: t for t, m in enumerate(basis)}
        self.dim = len(basis)
        self.unit = self.index[(0, 0, 0)]
        self.generators = generators
        self.indptr, self.cols, self.vals = csr

    def row(self, a: int, b: int):
        t = a * self.dim + b
        sl = slice(self.indptr[t], self.indptr[t + 1])
        return self.cols[sl], self.vals[sl]

    def mul_elements(self, x: dict, y: dict) -> dict:
        fld = self.field
        out: dict[int, int] = {}
        for a, ca in x.items():
            if ca == 0:
                continue
            for b, cb in y.items():
                if cb == 0:
                    continue
                c = int(fld.idx_mul(ca, cb))
                ws, vs = self.row(a, b)
                for w, v in zip(ws.tolist(), vs.tolist()):
                    out[w] = int(fld.idx_add(out.get(w, 0), fld.idx_mul(c, v)))
        return {w: v for w, v in out.items() if v}

    def element_power(self, x: dict, n: int) -> dict:
        acc = {self.unit: 1}
        for _ in range(n):
            acc = self.mul_elements(acc, x)
        return acc

    def check_unit(self) -> bool:
        n = self.dim
        for b in range(n):
            for a0, b0 in ((self.unit, b), (b, self.unit)):
                ws, vs = self.row(a0, b0)
                if not (len(ws) == 1 and ws[0] == b and vs[0] == 1):
                    return False
        return True

    def check_associativity(self, n_samples: int = 0, seed: int = 0xC0FFEE,
                            exhaustive: bool = False):
        """a(bc) = (ab)c on all triples (exhaustive) or a sampled set."""
        fld = self.field
        n = self.dim

        def assoc_triple(a, b, c):
            lhs: dict[int, int] = {}
            ws, vs = self.row(a, b)
            for w, v in zip(ws.tolist(), vs.tolist()):
                ws2, vs2 = self.row(w, c)
                for w2, v2 in zip(ws2.tolist(), vs2.tolist()):
                    lhs[w2] = int(fld.idx_add(lhs.get(w2, 0), fld.idx_mul(v, v2)))
            ws, vs = self.row(b, c)
            for w, v in zip(ws.tolist(), vs.tolist()):
                ws2, vs2 = self.row(a, w)
                for w2, v2 in zip(ws2.tolist(), vs2.tolist()):
                    lhs[w2] = int(fld.idx_add(lhs.get(w2, 0),
                                              fld.idx_neg(fld.idx_mul(v, v2))))
            return all(v == 0 for v in lhs.values())

        count = 0
        if exhaustive:
            for a in range(n):
                for b in range(n):
                    for c in range(n):
                        if not assoc_triple(a, b, c):
                            return False, count
                        count += 1
            return True, count
        rng = np.random.default_rng([seed, n])
        trips = rng.integers(0, n, size=(n_samples, 3))
        for a, b, c in trips.tolist():
            if not assoc_triple(a, b, c):
                return False, count
            count += 1
        return True, count

    def gen_index(self, fam: str, t: int) -> int:
        return self.generators[(fam, t)]

    def gen_key(self, fam: str, t: int):
        if (fam, t) in self.generators:
            return (fam, t)
        if t == 0 and fam in self.generators:
            return fam
        raise KeyError((fam, t))

    def di_generator_keys(self):
        """Generator keys of the Di(G_r) subalgebra (levels below r)."""
        if self.bound == self.p ** (self.r + 1):
            return [key for key in sorted(self.generators) if key[1] < self.r]
        return sorted(self.generators)

    def tensor_equal(self, other: "StructureConstantAlgebra") -> bool:
        return (self.basis == other.basis
                and np.array_equal(self.indptr, other.indptr)
                and np.array_equal(self.cols, other.cols)
                and np.array_equal(self.vals, other.vals))

    def to_json(self) -> dict:
        mult = []
        n = self.dim
        for a in range(n):
            for b in range(n):
                ws, vs = self.row(a, b)
                for w, v in zip(ws.tolist(), vs.tolist()):
                    mult.append([a, b, int(w),
                                 [int(c) for c in self.field.from_index(v)]])
        return {
            "label": self.label,
            "p": self.p,
            "r": self.r,
            "chi": self.chi.to_json() if self.chi is not None else None,
            "basis": [list(m) for m in self.basis],
            "mult": mult,
        }


def _csr_from_coo(n_rows: int, rowkeys, cols, vals):
    order = np.lexsort((cols, rowkeys))
    rowkeys, cols, vals = rowkeys[order], cols[order], vals[order]
    indptr = np.zeros(n_rows + 1, dtype=np.int64)
    np.add.at(indptr, rowkeys + 1, 1)
    np.cumsum(indptr, out=indptr)
    return indptr, cols.astype(np.int32), vals.astype(np.int16)


# ----------------------------------------------------------------------
# the multiplication kernel (prime-valued chi, vectorized)


def _build_tensor_prime(tab: CrossedProductTables, chie_p: int, chih_p: int,
                        chif_p: int):
    p, P, D = tab.p, tab.P, tab.D
    n = P**3
    redth = tab.theta_reduction(chih_p)
    EC, ET, EO = tab.EC, tab.ET, tab.EO
    rk_l, cl_l, vl_l = [], [], []
    for j1 in range(P):
        for i2 in range(P):
            g_rk, g_cl, g_vl = [], [], []
            for s in range(min(j1, i2) + 1):
                ei, fj = i2 - s, j1 - s
                d = i2 + j1 - 2 * s
                se = EC[:, ei] * np.where(EO[:, ei] == 1, chie_p, 1) % p
                sf = EC[fj, :] * np.where(EO[fj, :] == 1, chif_p, 1) % p
                nzi = np.nonzero(se)[0]
                nzj = np.nonzero(sf)[0]
                if nzi.size == 0 or nzj.size == 0:
                    continue
                A1 = tab.TRANSB_M[2 * ei]            # (P, D, p) over k1
                A2 = tab.TRANSB_M[2 * fj]            # (P, D, p) over k2
                mid = tab.BRACK_M[s, d]              # (D, p)
                C1 = _model_mul(A1, mid[None], redth, p)
                OUT = _model_mul(C1[:, None], A2[None, :], redth, p)
                H = OUT.reshape(P, P, D * p) @ tab.BACKM % p   # (k1, k2, k')
                k1a, k2a, kpa = np.nonzero(H)
                if k1a.size == 0:
                    continue
                hv = H[k1a, k2a, kpa]
                ti = ET[:, ei]
                tj = ET[fj, :]
                # broadcast (i1-nz, h-nz, j2-nz)
                I1 = nzi[:, None, None]
                J2 = nzj[None, None, :]
                K1 = k1a[None, :, None]
                K2 = k2a[None, :, None]
                KP = kpa[None, :, None]
                HV = hv[None, :, None]
                a_idx = (I1 * P + K1) * P + j1
                b_idx = (i2 * P + K2) * P + J2
                w_idx = (ti[I1] * P + KP) * P + tj[J2]
                val = se[I1] * HV % p * sf[J2] % p
                g_rk.append((a_idx * n + b_idx).ravel())
                g_cl.append(w_idx.ravel())
                g_vl.append(val.ravel())
            if not g_rk:
                continue
            rk = np.concatenate(g_rk)
            cl = np.concatenate(g_cl)
            vl = np.concatenate(g_vl)
            # aggregate duplicates within the group
            order = np.lexsort((cl, rk))
            rk, cl, vl = rk[order], cl[order], vl[order]
            key = rk * n + cl
            boundary = np.empty(key.size, dtype=bool)
            boundary[0] = True
            boundary[1:] = key[1:] != key[:-1]
            starts = np.nonzero(boundary)[0]
            sums = np.add.reduceat(vl, starts) % p
            keep = sums != 0
            rk_l.append(rk[starts][keep])
            cl_l.append(cl[starts][keep])
            vl_l.append(sums[keep])
    rk = np.concatenate(rk_l)
    cl = np.concatenate(cl_l)
    vl = np.concatenate(vl_l)
    return _csr_from_coo(n * n, rk, cl, vl)


def _idx_model_mul(fld: Field, X, Y, redth_idx):
    """Generic-field version of _model_mul on index-valued model arrays."""
    p = fld.p
    D = X.shape[-2]
    out = np.zeros(X.shape[:-2] + (D, 2 * p - 1), dtype=np.int64)
    for m in range(p):
        for n in range(p):
            out[..., m + n] = fld.idx_add(out[..., m + n],
                                          fld.idx_mul(X[..., m], Y[..., n]))
    res = np.zeros(X.shape[:-2] + (D, p), dtype=np.int64)
    for c in range(2 * p - 1):
        for q in range(p):
            res[..., q] = fld.idx_add(res[..., q],
                                      fld.idx_mul(out[..., c], int(redth_idx[c, q])))
    return res


def _theta_reduction_idx(fld: Field, p: int, chp_idx: int) -> np.ndarray:
    rows = np.zeros((2 * p - 1, p), dtype=np.int64)
    cur = np.zeros(p, dtype=np.int64)
    cur[0] = 1
    for m in range(2 * p - 1):
        rows[m] = cur
        top = int(cur[p - 1])
        nxt = np.zeros(p, dtype=np.int64)
        nxt[1:] = cur[: p - 1]
        nxt[0] = fld.idx_add(int(nxt[0]), fld.idx_mul(top, chp_idx))
        nxt[1] = fld.idx_add(int(nxt[1]), top)
        cur = nxt
    return rows


def _mul_monomials_generic(tab: CrossedProductTables, fld: Field,
                           chie_p: int, chih_p: int, chif_p: int,
                           redth_idx, m1, m2) -> dict:
    """Single basis product with field-index coefficients (any chi)."""
    p, P, D = tab.p, tab.P, tab.D
    i1, k1, j1 = m1
    i2, k2, j2 = m2
    out: dict[tuple, int] = {}
    for s in range(min(j1, i2) + 1):
        ei, fj = i2 - s, j1 - s
        d = i2 + j1 - 2 * s
        ec = int(tab.EC[i1, ei])
        if tab.EO[i1, ei]:
            ec = fld.idx_mul(ec, chie_p)
        fc = int(tab.EC[fj, j2])
        if tab.EO[fj, j2]:
            fc = fld.idx_mul(fc, chif_p)
        cef = fld.idx_mul(int(ec), int(fc))
        if cef == 0:
            continue
        A1 = tab.TRANSB_M[2 * ei, k1]
        A2 = tab.TRANSB_M[2 * fj, k2]
        mid = tab.BRACK_M[s, d]
        C1 = _idx_model_mul(fld, A1, mid, redth_idx)
        OUT = _idx_model_mul(fld, C1, A2, redth_idx)
        flat = OUT.reshape(D * p)
        ti, tj = int(tab.ET[i1, ei]), int(tab.ET[fj, j2])
        for kp in range(P):
            acc = 0
            for t in range(D * p):
                if flat[t] and tab.BACKM[t, kp]:
                    acc = fld.idx_add(acc, fld.idx_mul(int(flat[t]),
                                                       int(tab.BACKM[t, kp])))
            if acc:
                key = (ti, kp, tj)
                prev = out.get(key, 0)
                out[key] = int(fld.idx_add(prev, fld.idx_mul(cef, acc)))
    return {k: v for k, v in out.items() if v}


def _build_tensor_generic(tab: CrossedProductTables, fld: Field,
                          chie_p, chih_p, chif_p):
    P = tab.P
    n = P**3
    redth_idx = _theta_reduction_idx(fld, tab.p, chih_p)
    basis = [(i, k, j) for i in range(P) for k in range(P) for j in range(P)]
    rks, cls, vls = [], [], []
    for a, m1 in enumerate(basis):
        for b, m2 in enumerate(basis):
            prod = _mul_monomials_generic(tab, fld, chie_p, chih_p, chif_p,
                                          redth_idx, m1, m2)
            for (i, k, j), v in sorted(prod.items()):
                rks.append(a * n + b)
                cls.append((i * P + k) * P + j)
                vls.append(v)
    return _csr_from_coo(n * n, np.array(rks, dtype=np.int64),
                         np.array(cls, dtype=np.int64),
                         np.array(vls, dtype=np.int64))


def _generator_map(r: int, p: int, bound: int, index) -> dict:
    gens = {}
    top = r + 1 if bound == p ** (r + 1) else r
    for t in range(top):
        gens[("e", t)] = index[(p**t, 0, 0)]
        gens[("h", t)] = index[(0, p**t, 0)]
        gens[("f", t)] = index[(0, 0, p**t)]
    return gens


def build_u_r_chi(r: int, chi: PCharacter, fld: Field | None = None
                  ) -> StructureConstantAlgebra:
    """The higher reduced enveloping algebra U^[r]_chi(SL2), dim p^{3(r+1)}."""
    fld = fld or chi.field
    p = fld.p
    tab = crossed_tables(p, r)
    chie_p, chih_p, chif_p = chi.powers_p()
    if chi.is_prime_valued():
        coeff_field = field(p, 1)
        csr = _build_tensor_prime(tab, chie_p % p, chih_p % p, chif_p % p)
        chi_out = PCharacter(coeff_field, *chi.values) if fld.k > 1 else chi
    else:
        if r >= 1:
            raise NotImplementedError(
                "extension-valued chi is supported at level r = 0 only")
        coeff_field = fld
        csr = _build_tensor_generic(tab, fld, chie_p, chih_p, chif_p)
        chi_out = chi
    P = tab.P
    basis = [(i, k, j) for i in range(P) for k in range(P) for j in range(P)]
    index = {m: t for t, m in enumerate(basis)}
    alg = StructureConstantAlgebra(
        label=f"UrChi(r={r})", p=p, r=r, fld=coeff_field, chi=chi_out,
        bound=P, generators=_generator_map(r, p, P, index), csr=csr)
    return alg


def build_di_gr(r: int, p: int) -> StructureConstantAlgebra:
    """Di(G_r) for SL2, structure constants pulled from the dist oracle.

    r = 0 gives the one-dimensional algebra of the trivial group scheme.
    """
    from . import dist

    if r < 0:
        raise ValueError("Frobenius kernel level must be >= 0")
    basis, csr = dist.oracle_structure_constants(p, r)
    index = {m: t for t, m in enumerate(basis)}
    alg = StructureConstantAlgebra(
        label=f"DiGr(r={r})", p=p, r=r, fld=field(p, 1), chi=None,
        bound=p**r, generators=_generator_map(r - 1, p, p**r, index), csr=csr,
        basis=basis)
    return alg


# ----------------------------------------------------------------------
# the reduced enveloping algebra U_chi(sl2), built by its own straightening


def build_u_chi_g(chi: PCharacter, fld: Field | None = None
                  ) -> StructureConstantAlgebra:
    """U_chi(sl2) on monomials e^i h^k f^j (i, k, j < p).

    Straightening uses only the sl2 relations and the p-power relations
    e^p = chi(e)^p, h^p = h + chi(h)^p, f^p = chi(f)^p, so this algebra is
    independent of the crossed-product kernel and cross-checks it via the
    Upsilon quotient map.
    """
    fld = fld or chi.field
    p = fld.p
    chie_p, chih_p, chif_p = chi.powers_p()
    n = p**3

    def idx_of(m):
        return (m[0] * p + m[1]) * p + m[2]

    def add_into(d, key, v):
        if v:
            d[key] = int(fld.idx_add(d.get(key, 0), v))
            if d[key] == 0:
                del d[key]

    def mul_f(x):
        out: dict = {}
        for (i, k, j), c in x.items():
            if j + 1 < p:
                add_into(out, (i, k, j + 1), c)
            else:
                add_into(out, (i, k, 0), fld.idx_mul(c, chif_p))
        return out

    def mul_h(x):
        out: dict = {}
        for (i, k, j), c in x.items():
            # e^i h^k f^j . h = e^i h^(k+1) f^j + 2j e^i h^k f^j
            tw = fld.idx_mul(c, (2 * j) % p)
            add_into(out, (i, k, j), tw)
            if k + 1 < p:
                add_into(out, (i, k + 1, j), c)
            else:
                add_into(out, (i, 1, j), c)
                add_into(out, (i, 0, j), fld.idx_mul(c, chih_p))
        return out

    def mul_e(x):
        out: dict = {}
        for (i, k, j), c in x.items():
            if j == 0:
                # e^i h^k e = e^(i+1) (h+2)^k
                for s2 in range(k + 1):
                    cf = lucas_binom(k, s2, p) * pow(2, k - s2, p) % p
                    v = fld.idx_mul(c, cf)
                    if i + 1 < p:
                        add_into(out, (i + 1, s2, 0), v)
                    else:
                        add_into(out, (0, s2, 0), fld.idx_mul(v, chie_p))
            else:
                # x = y f with y = e^i h^k f^(j-1):  x e = (y e) f - y h
                ye = mul_e({(i, k, j - 1): c})
                for key, v in mul_f(ye).items():
                    add_into(out, key, v)
                for key, v in mul_h({(i, k, j - 1): c}).items():
                    add_into(out, key, fld.idx_neg(v))
        return out

    rks, cls, vls = [], [], []
    basis = [(i, k, j) for i in range(p) for k in range(p) for j in range(p)]
    for a, ma in enumerate(basis):
        for b, (i2, k2, j2) in enumerate(basis):
            x = {ma: 1}
            for _ in range(i2):
                x = mul_e(x)
            for _ in range(k2):
                x = mul_h(x)
            for _ in range(j2):
                x = mul_f(x)
            for key, v in sorted(x.items()):
                rks.append(a * n + b)
                cls.append(idx_of(key))
                vls.append(v)
    csr = _csr_from_coo(n * n, np.array(rks, dtype=np.int64),
                        np.array(cls, dtype=np.int64),
                        np.array(vls, dtype=np.int64))
    index = {m: t for t, m in enumerate(basis)}
    gens = {"e": index[(1, 0, 0)], "h": index[(0, 1, 0)], "f": index[(0, 0, 1)]}
    return StructureConstantAlgebra(
        label="Ug_chi", p=p, r=0, fld=fld, chi=chi, bound=p,
        generators=gens, csr=csr, monomial_style="plain")


# ----------------------------------------------------------------------
# Upsilon, hat-Borel subalgebra, centers


def upsilon(alg: StructureConstantAlgebra, target: StructureConstantAlgebra
            ) -> dict[int, dict]:
    """The quotient map U^[r]_chi -> U_chi(g) on basis elements.

    Kills monomials with a nonzero base-p digit below position r; on the
    surviving monomials e^(c p^r) |-> e^c / c!, binom(h; c p^r) |->
    binom(h;1)^c-image computed inside the target, f likewise.
    """
    p, r = alg.p, alg.r
    D = p**r
    fld = target.field

    def h_image(c: int) -> dict:
        # product h (h-1) ... (h-c+1) / c! inside the target
        x = {target.unit: 1}
        for s in range(c):
            hx = target.mul_elements(x, {target.generators["h"]: 1})
            for key, v in x.items():
                shift = int(fld.idx_mul(v, fld.idx_neg(s % p)))
                hx[key] = int(fld.idx_add(hx.get(key, 0), shift))
            x = {key: v for key, v in hx.items() if v}
        fi = inv_mod(factorial_mod(c, p), p)
        return {key: int(fld.idx_mul(v, fi)) for key, v in x.items()}

    images: dict[int, dict] = {}
    for t, (i, k, j) in enumerate(alg.basis):
        if i % D or k % D or j % D:
            images[t] = {}
            continue
        ci, ck, cj = i // D, k // D, j // D
        x = {target.index[(ci, 0, 0)]: inv_mod(factorial_mod(ci, p), p)}
        x = target.mul_elements(x, h_image(ck))
        x = target.mul_elements(x, {target.index[(0, 0, cj)]:
                                    inv_mod(factorial_mod(cj, p), p)})
        images[t] = x
    return images


def upsilon_is_multiplicative(alg, target, images, pairs) -> bool:
    fld = target.field
    for a, b in pairs:
        ws, vs = alg.row(a, b)
        lhs: dict = {}
        for w, v in zip(ws.tolist(), vs.tolist()):
            for kk, vv in images[w].items():
                lhs[kk] = int(fld.idx_add(lhs.get(kk, 0), fld.idx_mul(v, vv)))
        rhs = target.mul_elements(images[a], images[b])
        lhs = {k: v for k, v in lhs.items() if v}
        if lhs != rhs:
            return False
    return True


def upsilon_rank(alg, target, images) -> int:
    from .linalg import rank as _rank

    rows = np.zeros((alg.dim, target.dim), dtype=np.int64)
    for t, img in images.items():
        for w, v in img.items():
            rows[t, w] = v
    fl = target.field
    return _rank(fl, fl.from_index(rows))


def build_uhat_b(alg: StructureConstantAlgebra) -> StructureConstantAlgebra:
    """The Borel-level subalgebra: f-exponent below p^r, dim p^(3r+2).

    Requires chi(e) = 0 so the e-overflow reduction keeps the span closed.
    """
    p, r = alg.p, alg.r
    if alg.chi is not None and alg.chi.e != 0:
        raise ValueError("build_uhat_b requires chi(e) = 0")
    D = p**r
    keep = [t for t, (i, k, j) in enumerate(alg.basis) if j < D]
    old2new = {t: s for s, t in enumerate(keep)}
    n = len(keep)
    rks, cls, vls = [], [], []
    for s1, t1 in enumerate(keep):
        for s2, t2 in enumerate(keep):
            ws, vs = alg.row(t1, t2)
            for w, v in zip(ws.tolist(), vs.tolist()):
                if w not in old2new:
                    raise ValueError("not closed")
                rks.append(s1 * n + s2)
                cls.append(old2new[w])
                vls.append(v)
    csr = _csr_from_coo(n * n, np.array(rks, dtype=np.int64),
                        np.array(cls, dtype=np.int64),
                        np.array(vls, dtype=np.int64))
    basis = [alg.basis[t] for t in keep]
    gens = {key: old2new[idx] for key, idx in alg.generators.items()
            if idx in old2new}
    return StructureConstantAlgebra(
        label=f"UhatB(r={r})", p=p, r=r, fld=alg.field, chi=alg.chi,
        bound=alg.bound, generators=gens, csr=csr, basis=basis)


@dataclass
class CenterData:
    p_center_scalars: tuple
    realized_relations_ok: bool
    basis: list
    dim: int


def center(alg: StructureConstantAlgebra) -> CenterData:
    """Full center by a commutant solve against the generators.

    Verified afterwards against every basis element.  Also certifies the
    realized p-center relations delta^{(x) p} = delta^p + chi(delta)^p on
    the three level-r generators.
    """
    from .linalg import nullspace as _nullspace

    fld = alg.field
    if fld.k != 1:
        raise NotImplementedError("center solve expects prime-field constants")
    n = alg.dim
    p = alg.p
    blocks = []
    for key in sorted(alg.generators):
        g = alg.generators[key]
        E = np.zeros((n, n), dtype=np.int64)
        for b in range(n):
            ws, vs = alg.row(b, g)
            E[ws, b] = (E[ws, b] + vs) % p
            ws, vs = alg.row(g, b)
            E[ws, b] = (E[ws, b] - vs) % p
        blocks.append(E)
    big = np.concatenate(blocks, axis=0)[..., None]
    null = _nullspace(field(p, 1), big)
    basis = []
    for vec in null:
        z = {t: int(vec[t, 0]) for t in range(n) if vec[t, 0]}
        basis.append(z)
    # verify against the full basis
    for z in basis:
        for b in range(n):
            zb = alg.mul_elements(z, {b: 1})
            bz = alg.mul_elements({b: 1}, z)
            if zb != bz:
                raise AssertionError("commutant verification failed")
    ok = realized_relations_hold(alg)
    chi_p = alg.chi.powers_p() if alg.chi is not None else (0, 0, 0)
    return CenterData(p_center_scalars=chi_p, realized_relations_ok=ok,
                      basis=basis, dim=len(basis))


def realized_relations_hold(alg: StructureConstantAlgebra) -> bool:
    """delta^{(x)p} = delta^p + chi(delta)^p on the three level-r generators."""
    fld = alg.field
    p, r = alg.p, alg.r
    if ("e", r) not in alg.generators:
        return True  # distribution algebra: no level-r generators to reduce
    chie_p, chih_p, chif_p = (alg.chi.powers_p() if alg.chi is not None
                              else (0, 0, 0))
    E = alg.generators[("e", r)]
    H = alg.generators[("h", r)]
    F = alg.generators[("f", r)]
    ok = alg.element_power({E: 1}, p) == ({alg.unit: chie_p} if chie_p else {})
    ok &= alg.element_power({F: 1}, p) == ({alg.unit: chif_p} if chif_p else {})
    expect = {H: 1}
    if chih_p:
        expect[alg.unit] = chih_p
    ok &= alg.element_power({H: 1}, p) == expect
    return bool(ok)
