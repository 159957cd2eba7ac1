"""Exact dense linear algebra over F_q and generic module machinery.

Matrices are numpy int64 arrays of shape (rows, cols, k) whose trailing
axis holds field-element coefficients (see gf.Field).  Row reduction uses
deterministic leftmost-pivot choice so every derived object (spin bases,
composition series, hom bases) is bit-stable across runs.

Modules over a structure-constant algebra are held as Representation
objects carrying one action matrix per algebra generator plus, when
assembled by repthy, the full basis-action table.  All module-theoretic
operations (spin, irreducibility, chop, Hom, socle) only ever need the
generator matrices, since actions are certified multiplicative.
"""

from __future__ import annotations

import numpy as np

from .gf import Field

NORTON_SEED = 0xC0FFEE
# exhaustive spin is a proof but costs ~q^(dim-1) spins; above this budget the
# two-sided Norton criterion (also a complete certificate) takes over
EXHAUSTIVE_SPIN_BOUND = 2048


# ----------------------------------------------------------------------
# dense row reduction


def rref(fld: Field, M: np.ndarray):
    """Reduced row echelon form with exact arithmetic.

    Returns (R, rank, pivot_cols).  Pivot choice is deterministic:
    leftmost column, then least row index.
    """
    R = np.asarray(M).copy() % fld.p
    nrows, ncols = R.shape[0], R.shape[1]
    pivots = []
    r = 0
    for c in range(ncols):
        if r >= nrows:
            break
        col = R[r:, c, :]
        nz = fld.nonzero_mask(col)
        hits = np.nonzero(nz)[0]
        if hits.size == 0:
            continue
        pr = r + int(hits[0])
        if pr != r:
            R[[r, pr]] = R[[pr, r]]
        R[r] = fld.mul(R[r], fld.inv(R[r, c])[None, :])
        mask = fld.nonzero_mask(R[:, c, :])
        mask[r] = False
        rows = np.nonzero(mask)[0]
        if rows.size:
            factors = R[rows, c, :]
            R[rows] = fld.sub(R[rows], fld.mul(factors[:, None, :], R[r][None, :, :]))
        pivots.append(c)
        r += 1
    return R, len(pivots), pivots


def rank(fld: Field, M: np.ndarray) -> int:
    return rref(fld, M)[1]


def nullspace(fld: Field, M: np.ndarray) -> np.ndarray:
    """Basis (as rows) of the right kernel {x : M x = 0}."""
    R, rk, piv = rref(fld, M)
    ncols = M.shape[1]
    free = [c for c in range(ncols) if c not in piv]
    out = fld.zeros((len(free), ncols))
    for t, c in enumerate(free):
        out[t, c] = fld.one()
        for rr, pc in enumerate(piv):
            out[t, pc] = fld.neg(R[rr, c])
    return out


def is_invertible(fld: Field, M: np.ndarray) -> bool:
    return M.shape[0] == M.shape[1] and rank(fld, M) == M.shape[0]


def inv_matrix(fld: Field, M: np.ndarray) -> np.ndarray:
    """Inverse of a square matrix over F_q; raises if singular."""
    n = M.shape[0]
    aug = np.concatenate([M, fld.eye(n)], axis=1)
    R, rk, piv = rref(fld, aug)
    if piv[:n] != list(range(n)):
        raise ValueError("matrix is singular")
    return R[:, n:, :]


def field_kron(fld: Field, X: np.ndarray, Y: np.ndarray) -> np.ndarray:
    """Kronecker product respecting the field coefficient axis."""
    n1, m1 = X.shape[0], X.shape[1]
    n2, m2 = Y.shape[0], Y.shape[1]
    if fld.k == 1:
        out = (X[:, None, :, None, 0] * Y[None, :, None, :, 0]) % fld.p
        return out.reshape(n1 * n2, m1 * m2, 1)
    out = np.einsum("abi,cdj,ijs->acbds", X, Y, fld._tmul) % fld.p
    return out.reshape(n1 * n2, m1 * m2, fld.k)


class EchelonBasis:
    """Incrementally maintained RREF row basis of a subspace of F_q^d."""

    def __init__(self, fld: Field, dim: int):
        self.fld = fld
        self.dim = dim
        self.rows = fld.zeros((0, dim))
        self.pivots: list[int] = []

    def __len__(self):
        return len(self.pivots)

    def reduce(self, v: np.ndarray) -> np.ndarray:
        fld = self.fld
        v = v.copy() % fld.p
        for i, c in enumerate(self.pivots):
            if fld.nonzero_mask(v[c]):
                v = fld.sub(v, fld.mul(v[c][None, :], self.rows[i]))
        return v

    def add(self, v: np.ndarray) -> bool:
        """Insert v; returns True if it enlarged the space."""
        fld = self.fld
        w = self.reduce(v)
        nz = np.nonzero(fld.nonzero_mask(w))[0]
        if nz.size == 0:
            return False
        c = int(nz[0])
        w = fld.mul(w, fld.inv(w[c])[None, :])
        # back-eliminate the new pivot column from existing rows
        for i in range(len(self.pivots)):
            if fld.nonzero_mask(self.rows[i, c]):
                self.rows[i] = fld.sub(self.rows[i],
                                       fld.mul(self.rows[i, c][None, :], w))
        pos = 0
        while pos < len(self.pivots) and self.pivots[pos] < c:
            pos += 1
        self.rows = np.concatenate([self.rows[:pos], w[None], self.rows[pos:]])
        self.pivots.insert(pos, c)
        return True

    def coords(self, v: np.ndarray) -> np.ndarray:
        """Coordinates of v in this basis; raises if v is outside the span."""
        res = self.reduce(v)
        if self.fld.nonzero_mask(res).any():
            raise ValueError("vector not in span")
        return v[np.array(self.pivots, dtype=np.int64)]

    def contains(self, v: np.ndarray) -> bool:
        return not self.fld.nonzero_mask(self.reduce(v)).any()


# ----------------------------------------------------------------------
# representations


class Representation:
    """A module over a structure-constant algebra.

    gens maps generator keys to (dim, dim, k) action matrices; the same
    keys must be used by every module over the same algebra.  When built
    through repthy the full basis-action table is attached as
    basis_action (algebra basis index -> matrix).
    """

    def __init__(self, fld: Field, gens: dict, dim: int, algebra=None,
                 basis_action=None, weights=None, label: str = ""):
        self.field = fld
        self.gens = gens
        self.dim = dim
        self.algebra = algebra
        self.basis_action = basis_action
        self.weights = weights
        self.label = label

    def gen_keys(self):
        return sorted(self.gens.keys())

    def gen_mats(self):
        return [self.gens[key] for key in self.gen_keys()]

    def act_rows(self, g: np.ndarray, rows: np.ndarray) -> np.ndarray:
        """Apply g to a batch of row vectors: rows |-> rows . g^T."""
        return self.field.matmul(rows, g.transpose(1, 0, 2))

    def action_of(self, idx: int) -> np.ndarray:
        if self.basis_action is None:
            raise ValueError("representation has no full basis-action table")
        return self.basis_action[idx]

    def element_action(self, coeffs: dict) -> np.ndarray:
        """Action matrix of sum_w coeffs[w] * basis[w]."""
        fld = self.field
        out = fld.zeros((self.dim, self.dim))
        for w, c in coeffs.items():
            cv = c if isinstance(c, np.ndarray) else fld.scalar(int(c))
            out = fld.add(out, fld.mul(cv[None, None, :], self.action_of(w)))
        return out

    def restrict(self, gen_keys, label="") -> "Representation":
        sub = {key: self.gens[key] for key in gen_keys}
        return Representation(self.field, sub, self.dim, algebra=self.algebra,
                              basis_action=self.basis_action,
                              weights=self.weights, label=label or self.label)

    def __repr__(self):
        return f"Representation({self.label or 'module'}, dim={self.dim})"


def spin(rep: Representation, v: np.ndarray) -> EchelonBasis:
    """Smallest subspace containing v closed under all generator actions."""
    fld = rep.field
    if not fld.nonzero_mask(v).any():
        raise ValueError("zero seed")
    basis = EchelonBasis(fld, rep.dim)
    basis.add(v)
    frontier = basis.rows.copy()
    mats = rep.gen_mats()
    while frontier.shape[0] and len(basis) < rep.dim:
        fresh = []
        for g in mats:
            images = rep.act_rows(g, frontier)
            for w in images:
                if basis.add(w):
                    fresh.append(w)
        if not fresh:
            break
        frontier = np.stack(fresh)
    return basis


def sub_rep(rep: Representation, basis: EchelonBasis, label="") -> Representation:
    """Representation on an invariant subspace given by an echelon basis."""
    fld = rep.field
    rows = basis.rows
    gens = {}
    for key in rep.gen_keys():
        images = rep.act_rows(rep.gens[key], rows)
        mat = fld.zeros((len(basis), len(basis)))
        for j, w in enumerate(images):
            mat[:, j, :] = basis.coords(w)
        gens[key] = mat
    weights = None
    if rep.weights is not None:
        weights = _carried_weights(rep, rows)
    return Representation(fld, gens, len(basis), algebra=rep.algebra,
                          weights=weights, label=label or rep.label + ".sub")


def _carried_weights(rep, rows):
    # weights survive only when each basis row is supported in one weight
    ws = []
    for v in rows:
        support = np.nonzero(rep.field.nonzero_mask(v))[0]
        vals = {rep.weights[int(i)] for i in support}
        if len(vals) != 1:
            return None
        ws.append(vals.pop())
    return ws


def quotient_rep(rep: Representation, basis: EchelonBasis, label="") -> Representation:
    """Representation on the quotient by an invariant subspace."""
    fld = rep.field
    piv = set(basis.pivots)
    free = [c for c in range(rep.dim) if c not in piv]
    qdim = len(free)
    gens = {}
    for key in rep.gen_keys():
        g = rep.gens[key]
        mat = fld.zeros((qdim, qdim))
        for j, c in enumerate(free):
            e = fld.zeros((rep.dim,))
            e[c] = fld.one()
            w = rep.act_rows(g, e[None])[0]
            w = basis.reduce(w)
            mat[:, j, :] = w[np.array(free, dtype=np.int64)]
        gens[key] = mat
    return Representation(fld, gens, qdim, algebra=rep.algebra,
                          label=label or rep.label + ".quo")


def _enumerate_seed_vectors(fld: Field, dim: int):
    """All vectors with first nonzero coordinate equal to 1.

    Spin is scale-invariant, so these seeds witness every possible cyclic
    submodule that a full q^dim enumeration would find.
    """
    for lead in range(dim):
        tail = dim - lead - 1
        for idx in range(fld.q**tail):
            v = fld.zeros((dim,))
            v[lead] = fld.one()
            rem = idx
            for t in range(tail):
                v[lead + 1 + t] = fld.from_index(rem % fld.q)
                rem //= fld.q
            yield v


def _dual_rep(rep: Representation) -> Representation:
    gens = {key: m.transpose(1, 0, 2) for key, m in rep.gens.items()}
    return Representation(rep.field, gens, rep.dim, label=rep.label + "*")


def _random_algebra_element(rep: Representation, rng) -> np.ndarray:
    fld = rep.field
    mats = rep.gen_mats()
    theta = fld.zeros((rep.dim, rep.dim))
    # random span of generators, pair products and a scalar
    for m in mats:
        theta = fld.add(theta, fld.mul(fld.random((), rng)[None, None, :], m))
    for _ in range(2):
        a = mats[rng.integers(0, len(mats))]
        b = mats[rng.integers(0, len(mats))]
        theta = fld.add(theta, fld.mul(fld.random((), rng)[None, None, :],
                                       fld.matmul(a, b)))
    theta = fld.add(theta, fld.mul(fld.random((), rng)[None, None, :],
                                   fld.eye(rep.dim)))
    return theta


def is_irreducible(rep: Representation, seed: int = NORTON_SEED):
    """(bool, witness): witness generates a proper submodule when reducible.

    Exhaustive spin over every (normalized) vector while q^dim stays at
    desk scale; otherwise a Norton-style test with a deterministic seed.
    """
    fld = rep.field
    if rep.dim == 0:
        raise ValueError("zero module")
    if rep.dim == 1:
        return True, None
    if fld.q**rep.dim <= EXHAUSTIVE_SPIN_BOUND:
        for v in _enumerate_seed_vectors(fld, rep.dim):
            if len(spin(rep, v)) < rep.dim:
                return False, v
        return True, None
    return _norton_test(rep, seed)


def _norton_test(rep: Representation, seed: int):
    fld = rep.field
    dual = _dual_rep(rep)
    rng = np.random.default_rng([seed, rep.dim])
    for attempt in range(400):
        theta = _random_algebra_element(rep, rng)
        null = nullspace(fld, theta)
        if null.shape[0] == 0 or null.shape[0] == rep.dim:
            continue
        for v in null:
            basis = spin(rep, v)
            if len(basis) < rep.dim:
                return False, v
        nullT = nullspace(fld, theta.transpose(1, 0, 2))
        for w in nullT:
            basis = spin(dual, w)
            if len(basis) < rep.dim:
                # annihilator of a proper dual submodule is a proper submodule
                ann = nullspace(fld, basis.rows)
                return False, ann[0]
        return True, None
    raise RuntimeError("Norton test exhausted its singular-element budget")


class HomSpace:
    """Basis of Hom_A(source, target) as explicit matrices phi."""

    def __init__(self, source: Representation, target: Representation,
                 basis: list[np.ndarray]):
        self.source = source
        self.target = target
        self.basis = basis

    @property
    def dim(self):
        return len(self.basis)


def hom_space(P: Representation, M: Representation) -> HomSpace:
    """Solve phi . rho_P(g) = rho_M(g) . phi over all generators g.

    Commuting with the generators forces commuting with every product and
    linear combination, hence with the whole algebra.
    """
    fld = P.field
    keys = P.gen_keys()
    if keys != M.gen_keys():
        raise ValueError("modules are not over the same generator set")
    dM, dP = M.dim, P.dim
    if not keys:
        # no constraints: every linear map is a homomorphism
        basis = []
        for i in range(dM):
            for a in range(dP):
                phi = fld.zeros((dM, dP))
                phi[i, a] = fld.one()
                basis.append(phi)
        return HomSpace(P, M, basis)
    blocks = []
    eyeM = fld.eye(dM)
    eyeP = fld.eye(dP)
    for key in keys:
        A = P.gens[key]
        B = M.gens[key]
        # vec(phi) row-major: eq (r,c):  sum_a phi[r,a] A[a,c] - sum_i B[r,i] phi[i,c]
        M1 = field_kron(fld, eyeM, A.transpose(1, 0, 2))
        M2 = field_kron(fld, B, eyeP)
        blocks.append(fld.sub(M1, M2))
    big = np.concatenate(blocks, axis=0)
    null = nullspace(fld, big)
    basis = [v.reshape(dM, dP, fld.k) for v in null]
    return HomSpace(P, M, basis)


def _trace(fld: Field, m: np.ndarray) -> np.ndarray:
    return m[np.arange(m.shape[0]), np.arange(m.shape[0])].sum(axis=0) % fld.p


def _iso_invariants(rep: Representation):
    """Cheap isomorphism invariants: traces of short generator words."""
    fld = rep.field
    keys = rep.gen_keys()
    inv = [rep.dim]
    mats = [rep.gens[key] for key in keys]
    for m in mats:
        inv.append(tuple(_trace(fld, m)))
        inv.append(tuple(_trace(fld, fld.matmul(m, m))))
    for a in range(len(mats)):
        for b in range(a + 1, len(mats)):
            inv.append(tuple(_trace(fld, fld.matmul(mats[a], mats[b]))))
    return tuple(inv)


def are_isomorphic(a: Representation, b: Representation,
                   seed: int = NORTON_SEED) -> bool:
    """True iff an invertible element of Hom(a, b) exists."""
    if a.dim != b.dim:
        return False
    if _iso_invariants(a) != _iso_invariants(b):
        return False
    hom = hom_space(a, b)
    if hom.dim == 0:
        return False
    fld = a.field
    for phi in hom.basis:
        if is_invertible(fld, phi):
            return True
    rng = np.random.default_rng([seed, a.dim, hom.dim])
    for _ in range(fld.q * a.dim):
        phi = fld.zeros((a.dim, a.dim))
        for base in hom.basis:
            phi = fld.add(phi, fld.mul(fld.random((), rng)[None, None, :], base))
        if is_invertible(fld, phi):
            return True
    return False


def composition_factors(rep: Representation, seed: int = NORTON_SEED,
                        _depth: int = 0) -> list[Representation]:
    """Jordan-Hoelder factors by recursive chop (up to order, with multiplicity)."""
    if rep.dim == 0:
        return []
    irr, wit = is_irreducible(rep, seed)
    if irr:
        return [rep]
    basis = spin(rep, wit)
    sub = sub_rep(rep, basis)
    quo = quotient_rep(rep, basis)
    return (composition_factors(sub, seed, _depth + 1)
            + composition_factors(quo, seed, _depth + 1))


def factor_multiset_dims(factors: list[Representation]) -> list[int]:
    return sorted(f.dim for f in factors)


def direct_sum(a: Representation, b: Representation) -> Representation:
    """Block-diagonal sum of two modules over the same generator set."""
    fld = a.field
    if a.gen_keys() != b.gen_keys():
        raise ValueError("modules are not over the same generator set")
    d = a.dim + b.dim
    gens = {}
    for key in a.gen_keys():
        m = fld.zeros((d, d))
        m[: a.dim, : a.dim] = a.gens[key]
        m[a.dim:, a.dim:] = b.gens[key]
        gens[key] = m
    return Representation(fld, gens, d, algebra=a.algebra,
                          label=f"{a.label}+{b.label}")


def extend_scalars(rep: Representation, big: Field) -> Representation:
    """Base change along the prime subfield F_p -> F_{p^k}."""
    if rep.field.k != 1 or big.p != rep.field.p:
        raise ValueError("extend_scalars starts from the prime field")
    pad = [(0, 0)] * 2 + [(0, big.k - 1)]
    gens = {key: np.pad(m, pad) for key, m in rep.gens.items()}
    return Representation(big, gens, rep.dim, algebra=rep.algebra,
                          weights=rep.weights, label=rep.label)


def regular_representation(alg) -> Representation:
    """Left multiplication of the generators on the algebra itself."""
    fld = alg.field
    n = alg.dim
    gens = {}
    for key, g in alg.generators.items():
        m = fld.zeros((n, n))
        for b in range(n):
            ws, vs = alg.row(g, b)
            m[ws, b, :] = fld.from_index(vs)
        gens[key] = m
    return Representation(fld, gens, n, algebra=alg, label=alg.label + ".reg")


def _minimal_submodule(rep: Representation, seed: int = NORTON_SEED):
    """Some simple submodule, as an echelon basis of the ambient space."""
    fld = rep.field
    e0 = fld.zeros((rep.dim,))
    e0[0] = fld.one()
    basis = spin(rep, e0)
    while True:
        current = sub_rep(rep, basis)
        irr, wit = is_irreducible(current, seed)
        if irr:
            return basis
        # lift the witness back to the ambient space and spin again
        v = fld.zeros((rep.dim,))
        for c, coord in zip(range(len(basis)), wit):
            v = fld.add(v, fld.mul(coord[None, :], basis.rows[c]))
        basis = spin(rep, v)


def simple_socle_component(rep: Representation, sub_gen_keys,
                           seed: int = NORTON_SEED):
    """The unique simple submodule class of an isotypic restriction.

    Restricts rep to the given generator keys, spins a minimal submodule
    P, and certifies that the restriction is a direct sum of copies of P
    (raises "not isotypic" otherwise, which would violate the decomposition
    theorem being tested).  Returns (P, hom_basis).
    """
    restr = rep.restrict(sub_gen_keys, label=rep.label + "|D")
    basis = _minimal_submodule(restr, seed)
    P = sub_rep(restr, basis, label=rep.label + ".socle")
    hom = hom_space(P, restr)
    if hom.dim * P.dim != rep.dim:
        raise ValueError("not isotypic")
    # the evaluation map Hom(P, M) x P -> M must fill the whole space
    stack = np.concatenate([phi.transpose(1, 0, 2) for phi in hom.basis], axis=0)
    if rank(rep.field, stack) != rep.dim:
        raise ValueError("not isotypic")
    return P, hom
