"""Acceptance suite: one test per criterion, at the stated exact tolerances.

All arithmetic is exact, so every assertion is equality on the nose.  The
checks run over the default verification grid (p in {2,3}, r in {0,1},
canonical chi representatives plus seeded pseudorandom ones, with the
additional algebra-level pairs (5,0) and the r = 2 oracle comparisons).
Each test prints one PASS line when its criterion holds.
"""

import numpy as np
import pytest

from hyperdef import dist, gf, hyper, repthy, verify


@pytest.fixture(scope="module")
def ctx():
    return verify.GridContext(verify.DEFAULT_GRID)


def _assert_pass(check, label):
    assert check.verdict == "pass", (label, check.params, check.evidence)


def test_criterion_01_pbw_dimension_associativity(ctx):
    """dim U^[r]_chi = p^(3(r+1)); associativity exhaustive <= 27, sampled
    >= 10^5 triples at dim 729, for all sampled chi."""
    for p, r in verify.DEFAULT_GRID["pr_algebra"]:
        chk = verify.check_cor_basis(ctx, p, r)
        _assert_pass(chk, "cor-basis")
        assert chk.evidence["dims"] == [p ** (3 * (r + 1))] * len(
            chk.evidence["dims"])
        if p ** (3 * (r + 1)) == 729:
            assert all(n >= 100_000 for n in chk.evidence["assoc_triples"])
    print("\nACCEPTANCE 1 PASS: PBW dimension p^(3(r+1)) and associativity "
          "on all five (p, r) pairs")


def test_criterion_02_oracle_equivalence(ctx):
    """build_di_gr(r) equals the dist oracle for p in {2,3}, r <= 2, and
    build_u_r_chi(r, 0) equals build_di_gr(r+1)."""
    for p in (2, 3):
        chk = verify.check_oracle_di(ctx, p)
        _assert_pass(chk, "oracle-di")
        for r in (1, 2):
            assert chk.evidence[f"di_g{r}_matches_oracle"]
        for r in (0, 1):
            assert chk.evidence[f"u{r}_chi0_equals_di_g{r + 1}"]
    print("ACCEPTANCE 2 PASS: oracle equivalence up to dim 729 and "
          "U^[r]_0 = Di(G_(r+1)) for p in {2,3}")


def test_criterion_03_centrality(ctx):
    """Realized relation delta^(x)p = delta^p + chi(delta)^p on all three
    generators of every built algebra; p-center scalars central."""
    for p, r in verify.DEFAULT_GRID["pr_algebra"]:
        chk = verify.check_cor_central(ctx, p, r)
        _assert_pass(chk, "cor-central")
        assert all(flag for _chi, flag in chk.evidence["realized_relations"])
    print("ACCEPTANCE 3 PASS: central relations realized for every built "
          "algebra over the grid")


def test_criterion_04_steinberg_bijection_chi0(ctx):
    """p=3, r=1, chi=0: exactly 9 classes with dims {(a+1)(b+1)}; both
    round trips of the bijection are the identity up to isomorphism."""
    chk = verify.check_cor_chibij(ctx, 3, 1)
    _assert_pass(chk, "cor-chibij")
    ev = chk.evidence["(0, 0, 0)"]
    assert ev["n"] == 9
    assert ev["dims"] == sorted((a + 1) * (b + 1)
                                for a in range(3) for b in range(3))
    _assert_pass(verify.check_thm_equiv(ctx, 3, 1), "thm-equiv")
    print("ACCEPTANCE 4 PASS: Steinberg bijection at chi=0, p=3, r=1 "
          "(9 classes, dims {1,2,3,2,4,6,3,6,9}, round trips identity)")


def test_criterion_05_regular_classification(ctx):
    """p=3, r=1: regular semisimple gives 9 pairwise non-isomorphic
    irreducible teenage Vermas of dims 3*{1,2,3}; regular nilpotent gives
    unique heads and the dot-action orbit pattern, 6 classes."""
    for part in (2, 3, 4):
        _assert_pass(verify.check_thm_regular(ctx, 3, 1, part),
                     f"thm-regular-{part}")
    _assert_pass(verify.check_prop_heads(ctx, 3, 1), "prop-heads")
    classes_ss, _g, ev_ss = ctx.enumeration(3, 1, (0, 1, 0))
    assert ev_ss["n_classes"] == 9
    assert sorted(c["M"].dim for c in classes_ss) == [3, 3, 3, 6, 6, 6, 9, 9, 9]
    classes_n, _g, ev_n = ctx.enumeration(3, 1, (0, 0, 1))
    assert ev_n["n_classes"] == 6 and ev_n["n_g_classes"] == 2
    print("ACCEPTANCE 5 PASS: regular chi classification at p=3, r=1 "
          "(semisimple: 9 classes; nilpotent: 2 lambda-orbits, 6 classes)")


def test_criterion_06_maximal_dimension(ctx):
    """Max irreducible dimension over the grid is p^(r+1), attained at the
    Steinberg P with chi regular."""
    for p, r in verify.DEFAULT_GRID["pr_cells"]:
        chk = verify.check_cor_maxdim(ctx, p, r)
        _assert_pass(chk, "cor-maxdim")
        assert chk.evidence["max_dim"] == p ** (r + 1)
        assert all(digs == [p - 1] * r for _chi, digs in
                   chk.evidence["attained"])
    print("ACCEPTANCE 6 PASS: maximal irreducible dimension p^(r+1), "
          "attained exactly over the Steinberg P")


def test_criterion_07_premet_divisibility(ctx):
    """p | dim N for chi != 0, wherever Premet's theorem applies (p=3);
    at p=2 the hypothesis provably fails and the check records the skip."""
    for r in (0, 1):
        chk = verify.check_cor_prem(ctx, 3, r)
        _assert_pass(chk, "cor-prem")
        chk2 = verify.check_cor_prem(ctx, 2, r)
        assert chk2.verdict == "skipped" and "Premet" in chk2.hypothesis
    print("ACCEPTANCE 7 PASS: Premet divisibility at p=3; p=2 skipped with "
          "the failing hypothesis recorded (1-dim simple witness)")


def test_criterion_08_hom_space_p_character(ctx):
    """hom_g_action certification: sl2 + p-th power relations hold
    matrix-exactly for every irreducible over the grid."""
    for p, r in verify.DEFAULT_GRID["pr_cells"]:
        _assert_pass(verify.check_prop_decomp(ctx, p, r), "prop-decomp")
    print("ACCEPTANCE 8 PASS: Hom-space g-action certified with p-character "
          "chi on every grid cell")


def test_criterion_09_verma_correspondence(ctx):
    """Hom_{G_r}(P, Z^r) = Z_chi(lambda); every irreducible is witnessed as
    a teenage-Verma quotient; quotient correspondence holds."""
    for p, r in verify.DEFAULT_GRID["pr_cells"]:
        _assert_pass(verify.check_lem_bvcorresp(ctx, p, r), "lem-bvcorresp")
        _assert_pass(verify.check_prop_quotcorresp(ctx, p, r),
                     "prop-quotcorresp")
        _assert_pass(verify.check_prop_tvm(ctx, p, r), "prop-tvm")
        _assert_pass(verify.check_lambda_chi(ctx, p, r), "lambda-chi")
    print("ACCEPTANCE 9 PASS: baby/teenage Verma correspondence and "
          "quotient witnesses on every grid cell")


def test_criterion_10_central_character_diagram(ctx):
    """zeta^[r]_M = zeta_N o Omega_P on the p-center slice; pseudo-Azumaya
    membership flag consistent with criterion 6."""
    for p, r in verify.DEFAULT_GRID["pr_cells"]:
        _assert_pass(verify.check_prop_azudiag(ctx, p, r), "prop-azudiag")
    print("ACCEPTANCE 10 PASS: central-character diagram commutes and "
          "pseudo-Azumaya flags are consistent")


def test_criterion_11_orbit_invariance(ctx):
    """Irreducible-dimension multisets agree along coadjoint orbits for
    three random g in SL2(F_q), at (2,0) and (3,0)."""
    for p, r in verify.DEFAULT_GRID["orbit_pr"]:
        chk = verify.check_cor_orbit(ctx, p, r)
        _assert_pass(chk, "cor-orbit")
        assert len(chk.evidence["matrices"]) == 3
    print("ACCEPTANCE 11 PASS: coadjoint-orbit invariance of irreducible "
          "dimension multisets at r=0, p in {2,3}")
