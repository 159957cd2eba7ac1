import math

import numpy as np
import pytest

from hyperdef import dist


def test_ring_dimensions():
    assert dist.TruncatedCoordinateRing(3, 1).dim == 4        # 1, t, b, c
    assert dist.TruncatedCoordinateRing(2, 2).dim == 10
    for n in range(1, 9):
        ring = dist.TruncatedCoordinateRing(5, n)
        assert ring.dim == math.comb(n + 3, 3)


@pytest.mark.parametrize("p", [2, 3])
def test_coassociativity_and_counit(p):
    for n in (4, 6, 8):
        ring = dist.TruncatedCoordinateRing(p, n)
        assert dist.check_coassociativity(ring)
        assert dist.check_counit(ring)


def test_unit_distribution():
    ring = dist.TruncatedCoordinateRing(3, 4)
    table = dist.DeltaTable(ring, 4, 4)
    fam = dist.DividedPowerFamilies(ring)
    eps = fam.e[0]                       # dual of 1 = the counit
    x = fam.e[2]
    assert np.array_equal(dist.dist_product(x, eps, table).values, x.values)
    assert np.array_equal(dist.dist_product(eps, x, table).values, x.values)


@pytest.mark.parametrize("p", [2, 3])
def test_sl2_relations_and_divided_squares(p):
    ring = dist.TruncatedCoordinateRing(p, 6)
    table = dist.DeltaTable(ring, 6, 6)
    fam = dist.DividedPowerFamilies(ring)
    e1, h1, f1 = fam.e[1], fam.h[1], fam.f[1]
    ef = dist.dist_product(e1, f1, table)
    fe = dist.dist_product(f1, e1, table)
    assert np.array_equal((ef.values - fe.values) % p, h1.values)
    ee = dist.dist_product(e1, e1, table)
    assert np.array_equal(ee.values, 2 * fam.e[2].values % p)
    if p == 2:
        assert not ee.values.any()      # e^(1) e^(1) = 2 e^(2) = 0


def test_bracket_order_drop():
    # [x, y] has order <= ord x + ord y - 1: it kills the top degree
    p = 3
    ring = dist.TruncatedCoordinateRing(p, 6)
    table = dist.DeltaTable(ring, 6, 6)
    fam = dist.DividedPowerFamilies(ring)
    x, y = fam.e[2], fam.f[1]
    br = (dist.dist_product(x, y, table).values
          - dist.dist_product(y, x, table).values) % p
    for m in ring.monomials:
        if sum(m) == 3:
            assert br[ring.index[m]] == 0


def test_dist_product_truncation_error():
    ring = dist.TruncatedCoordinateRing(3, 4)
    table = dist.DeltaTable(ring, 4, 4)
    fam = dist.DividedPowerFamilies(ring)
    with pytest.raises(ValueError, match="raise n"):
        dist.dist_product(fam.e[3], fam.f[2], table)


@pytest.mark.parametrize("p", [2, 3])
def test_identify_divided_powers(p):
    ring = dist.TruncatedCoordinateRing(p, 6)
    fam = dist.identify_divided_powers(ring)
    # e^(i) normalized against b^i etc, exactly dual to the monomials
    assert fam.e[2].value((0, 2, 0)) == 1
    assert fam.h[2].value((2, 0, 0)) == 1
    assert fam.f[2].value((0, 0, 2)) == 1


def test_pbw_spans_whole_dual():
    p = 3
    ring = dist.TruncatedCoordinateRing(p, 5)
    fam = dist.DividedPowerFamilies(ring)
    table = dist.DeltaTable(ring, 5, 5)
    triples, rows = fam.pbw_value_matrix(table, 5)
    assert len(triples) == ring.dim
    # triangular with unit diagonal => a basis of Di_n
    assert fam.certify_pbw_triangular(table, 5)


@pytest.mark.parametrize("p,r,dim", [(2, 1, 8), (3, 1, 27), (5, 1, 125)])
def test_oracle_di_g1_dimension_and_unit(p, r, dim):
    basis, (indptr, cols, vals) = dist.oracle_structure_constants(p, r)
    n = len(basis)
    assert n == dim
    unit = basis.index((0, 0, 0))
    for b in range(n):
        sl = slice(indptr[unit * n + b], indptr[unit * n + b + 1])
        assert cols[sl].tolist() == [b] and vals[sl].tolist() == [1]


def test_oracle_associativity_exhaustive_p2():
    from hyperdef import hyper
    alg = hyper.build_di_gr(1, 2)
    ok, count = alg.check_associativity(exhaustive=True)
    assert ok and count == 512


@pytest.mark.parametrize("p,r", [(2, 1), (3, 1), (2, 2)])
def test_literal_engine_matches_bigcell(p, r):
    b1, c1 = dist.literal_structure_tensor(p, r)
    b2, c2 = dist.bigcell_structure_tensor(p, r)
    assert b1 == b2
    assert all(np.array_equal(x, y) for x, y in zip(c1, c2))


def test_closure_window_rejects_escapes():
    # the exported tensors certify closure; spot-check the window directly
    eng = dist.BigCellEngine(3, 1)
    for (i, k, j), arr in eng.cell_coefficients([(4, 0, 4), (0, 6, 0)]):
        assert max(i, k, j) >= 3
        assert not arr.any()


def test_dump_schema():
    data = dist.dump_di_gr(2, 1)
    assert data["basis"][0] == "e^(0) h^[0] f^(0)"
    assert len(data["basis"]) == 8
    assert all(len(row) == 4 for row in data["mult"])
