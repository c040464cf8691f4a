from fractions import Fraction

import pytest

from qbrauer.algebra import AlgebraContext, QBrauerElement, e_k_element, product
from qbrauer.cellular import (
    CellModuleIndex,
    InflationCoords,
    MalformedCoords,
    cell_chain_check,
    cell_dimension_checksum,
    cell_module_dims,
    double_factorial_odd,
    e_of_q,
    from_inflation,
    hook_count,
    inflation_bijection_check,
    inflation_product_check,
    involution_symmetry_check,
    is_quasi_hereditary,
    is_restricted,
    partitions,
    phi_k,
    simple_module_index,
    to_inflation,
)
from qbrauer.diagrams import (
    diagram_from_edges,
    e_k_diagram,
    identity_diagram,
    identity_perm,
    perm_mul,
    s_ij,
)
from qbrauer.hecke import HeckeElement
from qbrauer.scalars import PrimeField, b_scalar


def test_partitions():
    assert partitions(0) == [()]
    assert partitions(4) == [(4,), (3, 1), (2, 2), (2, 1, 1), (1, 1, 1, 1)]
    counts = [len(partitions(m)) for m in range(9)]
    assert counts == [1, 1, 2, 3, 5, 7, 11, 15, 22]


def test_hook_count_known_values():
    assert hook_count(()) == 1
    assert hook_count((3,)) == 1
    assert hook_count((2, 1)) == 2
    assert hook_count((3, 2)) == 5
    assert hook_count((2, 2, 1)) == 5
    assert hook_count((4, 3, 2, 1)) == 768
    # brute-force oracle: count standard fillings by backtracking
    import itertools

    def brute(lam):
        m = sum(lam)
        cells = [(i, j) for i, row in enumerate(lam) for j in range(row)]
        count = 0
        for perm in itertools.permutations(range(1, m + 1)):
            fill = dict(zip(cells, perm))
            ok = all(
                fill[(i, j)] < fill[(i, j + 1)]
                for i, j in cells
                if (i, j + 1) in fill
            ) and all(
                fill[(i, j)] < fill[(i + 1, j)]
                for i, j in cells
                if (i + 1, j) in fill
            )
            count += ok
        return count

    for lam in partitions(5):
        assert hook_count(lam) == brute(lam)


def test_restricted_partitions():
    assert is_restricted((2,), None)
    assert not is_restricted((2,), 2)
    assert is_restricted((1, 1), 2)
    assert is_restricted((3, 2, 1), 2)
    assert not is_restricted((3, 1), 2)


def test_cell_dims_and_checksum():
    dims = cell_module_dims(2)
    assert dims == {
        CellModuleIndex(0, (2,)): 1,
        CellModuleIndex(0, (1, 1)): 1,
        CellModuleIndex(1, ()): 1,
    }
    assert double_factorial_odd(2) == 3
    for n in range(1, 9):
        assert cell_dimension_checksum(n)
    n = 6
    dims = cell_module_dims(6)
    assert dims[CellModuleIndex(3, ())] == 720 // (2 ** 3 * 6)


def test_inflation_round_trip():
    for n in (2, 3, 4, 5):
        ctx = AlgebraContext(n)
        rep = inflation_bijection_check(ctx)
        assert rep["failures"] == []


def test_inflation_coords_of_cap():
    ctx = AlgebraContext(4)
    c = to_inflation(ctx, e_k_diagram(4, 2))
    assert c.k == 2
    assert c.d1 == e_k_diagram(4, 2)
    assert c.d2 == e_k_diagram(4, 2)
    assert c.h == HeckeElement.unit(4)
    ident = to_inflation(ctx, identity_diagram(4))
    assert ident.k == 0 and ident.h == HeckeElement.unit(4)


def test_inflation_coords_worked_example():
    # the rank-7 diagram with factorization (s1,4 s2 | s5 s6 | s4,1 s5,2 s6,4)
    ctx = AlgebraContext(7)
    d = diagram_from_edges(
        7, [(2, 4), (3, 5), (1, 11), (6, 8), (7, 9), (10, 12), (13, 14)]
    )
    c = to_inflation(ctx, d)
    assert c.k == 2
    assert c.d1.top_edges() == [(2, 4), (3, 5)]
    assert c.d2.bottom_edges() == [(10, 12), (13, 14)]
    wd = perm_mul(s_ij(7, 5, 5), s_ij(7, 6, 6))
    assert c.h == HeckeElement.basis(wd)
    assert from_inflation(ctx, c) == QBrauerElement.basis(d)


def test_from_inflation_rejects_malformed():
    ctx = AlgebraContext(4)
    good = to_inflation(ctx, e_k_diagram(4, 1))
    bad_h = HeckeElement.basis(s_ij(4, 1, 1))  # does not fix {1, 2}
    with pytest.raises(MalformedCoords):
        from_inflation(ctx, InflationCoords(1, good.d1, good.d2, bad_h))
    # a top part with edge {2,3} is not a valid bottom part
    skew = diagram_from_edges(4, [(2, 3), (5, 6), (1, 7), (4, 8)])
    with pytest.raises(MalformedCoords):
        from_inflation(ctx, InflationCoords(1, good.d1, skew, good.h))


def test_phi_cap_values():
    for n in range(2, 7):
        ctx = AlgebraContext(n)
        for k in range(n // 2 + 1):
            ek = e_k_diagram(n, k)
            f = phi_k(ctx, ek, ek)
            assert f.terms == {identity_perm(n): b_scalar() ** k}


def test_phi_layer_zero_is_hecke_product():
    # both parts trivial at layer 0: the form of the identity pair is 1
    ctx = AlgebraContext(3)
    ident = identity_diagram(3)
    assert phi_k(ctx, ident, ident) == HeckeElement.unit(3)


def test_inflation_product_congruence():
    for n in (2, 3):
        rep = inflation_product_check(AlgebraContext(n))
        assert rep["failures"] == []


def test_involution_symmetry():
    rep = involution_symmetry_check(AlgebraContext(3))
    assert rep["failures"] == []


def test_cell_chain():
    for n in (2, 3):
        rep = cell_chain_check(AlgebraContext(n))
        assert rep["failures"] == []


def test_heredity_witness_square():
    # the cap element squares to b^k times itself within its own layer
    for n in (3, 4, 5):
        ctx = AlgebraContext(n)
        for k in range(n // 2 + 1):
            x = e_k_element(ctx, k)
            assert product(ctx, x, x) == x.scale(b_scalar() ** k)


def test_e_of_q():
    assert e_of_q(Fraction(-1)) == 2
    assert e_of_q(Fraction(2), cap=20) is None
    F7 = PrimeField(7)
    assert e_of_q(F7(2)) == 3
    assert e_of_q(F7(1)) == 7  # characteristic
    for p in (2, 3, 5, 7):
        F = PrimeField(p)
        assert e_of_q(F(1)) == p
    with pytest.raises(ValueError):
        e_of_q(Fraction(0))


def test_e_of_q_brute_force_finite_fields():
    for p in (2, 3, 5, 7):
        F = PrimeField(p)
        for v in range(1, p):
            got = e_of_q(F(v), cap=64)
            total = F(0)
            want = None
            for m in range(1, 65):
                total = total + F(v) ** (m - 1)
                if total == F(0):
                    want = m
                    break
            assert got == want


def test_quasi_heredity_decision():
    assert is_quasi_hereditary(3, Fraction(2), Fraction(3)) == (
        True,
        "e(q) > 3 (no vanishing quantum integer up to cap 4)",
    )
    ok, why = is_quasi_hereditary(3, Fraction(-1), Fraction(3))
    assert not ok and why == "false: e(q)=2 <= 3"
    F7 = PrimeField(7)
    ok, _ = is_quasi_hereditary(2, F7(2), F7(3))
    assert ok  # e(q) = 3 > 2
    with pytest.raises(ValueError):
        is_quasi_hereditary(3, Fraction(1), Fraction(3))
    with pytest.raises(ValueError):
        is_quasi_hereditary(3, Fraction(2), Fraction(1))
    with pytest.raises(ValueError):
        is_quasi_hereditary(3, Fraction(0), Fraction(2))


def test_simple_module_index():
    idx = simple_module_index(2, Fraction(5))
    assert {(i.k, i.lam) for i in idx} == {(0, (2,)), (0, (1, 1)), (1, ())}
    idx = simple_module_index(2, Fraction(-1))  # e(q) = 2
    assert {(i.k, i.lam) for i in idx} == {(0, (1, 1)), (1, ())}
    assert len(simple_module_index(4, Fraction(7))) == 5 + 2 + 1
