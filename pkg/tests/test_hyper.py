import itertools

import numpy as np
import pytest

from hyperdef import dist, gf, hyper


def chi_of(p, e, h, f, k=1):
    return hyper.PCharacter.from_ints(gf.field(p, k), e, h, f)


@pytest.mark.parametrize("p,r", [(2, 0), (2, 1), (3, 0), (5, 0)])
def test_dimension_formula(p, r):
    for vals in [(0, 0, 0), (0, 0, 1), (0, 1, 1)]:
        alg = hyper.build_u_r_chi(r, chi_of(p, *vals))
        assert alg.dim == p ** (3 * (r + 1))
        assert alg.check_unit()


@pytest.mark.parametrize("p,r", [(2, 0), (3, 0), (2, 1)])
def test_chi_zero_equals_distribution_algebra(p, r):
    A = hyper.build_u_r_chi(r, chi_of(p, 0, 0, 0))
    B = hyper.build_di_gr(r + 1, p)
    assert A.tensor_equal(B)


def test_p2_r0_f_squares_to_chi_value():
    alg = hyper.build_u_r_chi(0, chi_of(2, 0, 0, 1))
    F = alg.index[(0, 0, 1)]
    assert alg.mul_elements({F: 1}, {F: 1}) == {alg.unit: 1}


@pytest.mark.parametrize("p,r", [(2, 0), (2, 1), (3, 0), (3, 1), (5, 0)])
def test_realized_central_relations(p, r):
    for vals in [(0, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 1)]:
        alg = hyper.build_u_r_chi(r, chi_of(p, *vals))
        assert hyper.realized_relations_hold(alg)


def test_generic_kernel_matches_prime_kernel():
    # prime-valued chi handed in over F_4 must give the same constants
    fld4 = gf.field(2, 2)
    chi = hyper.PCharacter(fld4, 0, 1, 1)
    A = hyper.build_u_r_chi(0, chi)           # prime fast path
    tab = hyper.crossed_tables(2, 0)
    csr = hyper._build_tensor_generic(tab, fld4, *chi.powers_p())
    B = hyper.StructureConstantAlgebra(
        "generic", 2, 0, fld4, chi, 2, A.generators, csr)
    assert np.array_equal(A.indptr, B.indptr)
    assert np.array_equal(A.cols, B.cols)
    assert np.array_equal(A.vals, B.vals)


def test_upsilon_quotient_map():
    for p, r in [(2, 1), (3, 0)]:
        for vals in [(0, 0, 0), (0, 1, 1)]:
            chi = chi_of(p, *vals)
            A = hyper.build_u_r_chi(r, chi)
            G = hyper.build_u_chi_g(chi)
            im = hyper.upsilon(A, G)
            # e^(p^r) -> e; low divided powers die
            E = A.index[(p**r, 0, 0)]
            assert im[E] == {G.index[(1, 0, 0)]: 1}
            if r >= 1:
                assert im[A.index[(1, 0, 0)]] == {}
            pairs = list(itertools.product(range(A.dim), repeat=2)) \
                if A.dim <= 64 else np.random.default_rng(0).integers(
                    0, A.dim, (2000, 2)).tolist()
            assert hyper.upsilon_is_multiplicative(A, G, im, pairs)
            assert hyper.upsilon_rank(A, G, im) == p**3


def test_u_chi_g_dimension_and_relations():
    for p in (2, 3, 5):
        chi = chi_of(p, 0, 1, 1)
        G = hyper.build_u_chi_g(chi)
        assert G.dim == p**3
        E, H, F = (G.index[m] for m in [(1, 0, 0), (0, 1, 0), (0, 0, 1)])
        # p-th power relations
        assert G.element_power({E: 1}, p) == {}
        expect_h = {H: 1, G.unit: 1}
        assert G.element_power({H: 1}, p) == expect_h
        assert G.element_power({F: 1}, p) == {G.unit: 1}
        # [e, f] = h
        ef = G.mul_elements({E: 1}, {F: 1})
        fe = G.mul_elements({F: 1}, {E: 1})
        diff = {k: (ef.get(k, 0) - fe.get(k, 0)) % p for k in set(ef) | set(fe)}
        assert {k: v for k, v in diff.items() if v} == {H: 1}


def test_uhat_b_subalgebra():
    p, r = 3, 1
    alg = hyper.build_u_r_chi(r, chi_of(p, 0, 0, 1))
    sub = hyper.build_uhat_b(alg)
    assert sub.dim == p ** (3 * r + 2)
    # contains Di(G_r): all monomials below p^r survive
    di = hyper.build_di_gr(r, p)
    assert set(di.basis) <= set(sub.basis)
    ok, _ = sub.check_associativity(n_samples=2000)
    assert ok and sub.check_unit()
    # Upsilon image is U_chi(b), of dimension p^2
    G = hyper.build_u_chi_g(chi_of(p, 0, 0, 1))
    im = hyper.upsilon(alg, G)
    rows = np.zeros((len(sub.basis), G.dim), dtype=np.int64)
    for s, mono in enumerate(sub.basis):
        for w, v in im[alg.index[mono]].items():
            rows[s, w] = v
    from hyperdef.linalg import rank
    assert rank(G.field, G.field.from_index(rows)) == p**2


def test_uhat_b_requires_chi_e_zero():
    alg = hyper.build_u_r_chi(0, chi_of(3, 1, 0, 0))
    with pytest.raises(ValueError, match="chi\\(e\\) = 0"):
        hyper.build_uhat_b(alg)


def test_center_contains_casimir():
    G = hyper.build_u_chi_g(chi_of(3, 0, 0, 0))
    cd = hyper.center(G)
    # Casimir image 2ef + 2h + 2h^2 is central, hence inside the commutant
    cas = {G.index[(1, 0, 1)]: 2, G.index[(0, 1, 0)]: 2, G.index[(0, 2, 0)]: 2}
    for b in range(G.dim):
        assert G.mul_elements(cas, {b: 1}) == G.mul_elements({b: 1}, cas)
    rows = np.zeros((cd.dim + 1, G.dim), dtype=np.int64)
    for t, z in enumerate(cd.basis):
        for w, v in z.items():
            rows[t, w] = v
    for w, v in cas.items():
        rows[cd.dim, w] = v
    from hyperdef.linalg import rank
    fld = gf.field(3, 1)
    assert rank(fld, rows[..., None]) == cd.dim   # no enlargement


def test_center_p_center_scalars():
    for p, r, vals in [(2, 1, (0, 1, 0)), (3, 0, (0, 0, 1))]:
        alg = hyper.build_u_r_chi(r, chi_of(p, *vals))
        cd = hyper.center(alg)
        assert cd.realized_relations_ok
        assert cd.p_center_scalars == tuple(
            pow(v, p, p) for v in (0, vals[1], vals[2]))


def test_conjugate_pchar():
    fld = gf.field(3, 1)
    chi = chi_of(3, 0, 0, 1)
    eye = np.array([[1, 0], [0, 1]], dtype=np.int64)
    assert hyper.conjugate_pchar(chi, eye) == chi
    # diagonal (s, s^-1) scales chi(f) by s^2
    g = np.array([[2, 0], [0, 2]], dtype=np.int64)   # 2 * 2 = 4 = 1 mod 3
    out = hyper.conjugate_pchar(chi, g)
    assert out.values == (0, 0, (2 * 2) % 3)
    with pytest.raises(ValueError, match="determinant"):
        hyper.conjugate_pchar(chi, np.array([[2, 0], [0, 1]], dtype=np.int64))


def test_classify_pchar():
    z = hyper.classify_pchar(chi_of(3, 0, 0, 0))
    assert z["semisimple"] and z["nilpotent"] and not z["regular"]
    rn = hyper.classify_pchar(chi_of(3, 0, 0, 1))
    assert rn["regular"] and rn["nilpotent"] and not rn["semisimple"]
    rs = hyper.classify_pchar(chi_of(3, 0, 1, 0))
    assert rs["regular"] and rs["semisimple"] and not rs["nilpotent"]
    # p = 2 conventions
    m2 = hyper.classify_pchar(chi_of(2, 1, 1, 0))
    assert m2["kind"] == "mixed"


def test_associativity_sampled_u1_chi_p3():
    alg = hyper.build_u_r_chi(1, chi_of(3, 0, 1, 0))
    ok, n = alg.check_associativity(n_samples=10_000)
    assert ok and n == 10_000


def test_extension_chi_requires_r0():
    fld = gf.field(2, 2)
    chi = hyper.PCharacter(fld, 0, 2, 1)   # genuinely extension-valued
    with pytest.raises(NotImplementedError):
        hyper.build_u_r_chi(1, chi)
    alg = hyper.build_u_r_chi(0, chi)
    assert alg.dim == 8 and hyper.realized_relations_hold(alg)
