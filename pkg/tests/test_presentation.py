import random
from fractions import Fraction
from math import gcd

import pytest

from toric_os import ToricArrangement
from toric_os.presentation import (
    GeneratorSymbol,
    LinComb,
    build_presentation,
    circuit_relations,
    integral_basis_change,
    inversion_length,
    product,
    toro_relation,
    unimodular_circuit_relation,
)

from conftest import random_essential_arrangement


def sym(arr, layer, a, b):
    return GeneratorSymbol(layer, tuple(a), tuple(b))


def test_inversion_length_examples():
    assert inversion_length((1, 3), (2,)) == 1
    assert inversion_length((), (0, 4, 7)) == 0
    assert inversion_length((2,), (0, 1)) == 2
    with pytest.raises(ValueError):
        inversion_length((1, 2), (2, 3))


def test_product_examples(torsion_triple):
    arr = torsion_triple
    t = arr.torus()
    h0 = arr.layers_of((0,))[0]
    h1 = arr.layers_of((1,))[0]
    h2 = arr.layers_of((2,))[0]
    p, q, r = arr.layers_of((0, 1))

    out = product(arr, sym(arr, h0, (0,), ()), sym(arr, h1, (1,), ()))
    assert out == LinComb(
        [
            (sym(arr, p, (0, 1), ()), Fraction(1)),
            (sym(arr, q, (0, 1), ()), Fraction(1)),
            (sym(arr, r, (0, 1), ()), Fraction(1)),
        ]
    )

    psi1 = sym(arr, t, (), (1,))
    assert not product(arr, psi1, psi1)

    single = arr.layers_of((1, 2))[0]
    out = product(arr, sym(arr, h1, (1,), ()), sym(arr, h2, (2,), ()))
    assert out == LinComb.single(sym(arr, single, (1, 2), ()))

    # dependent union dies
    w01 = sym(arr, p, (0, 1), ())
    assert not product(arr, w01, sym(arr, h2, (2,), ()))
    # disjoint translations die
    assert not product(arr, sym(arr, q, (0, 1), ()), sym(arr, h2, (2,), ()))


def test_product_mixed_parts(torsion_triple):
    arr = torsion_triple
    t = arr.torus()
    h0 = arr.layers_of((0,))[0]
    out = product(arr, sym(arr, t, (), (1,)), sym(arr, h0, (0,), ()))
    assert out == LinComb.single(sym(arr, h0, (0,), (1,)), -1)


def test_product_graded_commutative(torsion_triple):
    arr = torsion_triple
    pres = build_presentation(arr)
    gens = pres.generators
    for g in gens:
        for h in gens:
            lhs = pres.product(g, h)
            rhs = pres.product(h, g).scale((-1) ** (g.degree * h.degree))
            assert lhs == rhs


def test_product_associative(torsion_triple):
    arr = torsion_triple
    pres = build_presentation(arr)
    gens = pres.generators

    def times(comb, s):
        return pres.multiply(comb, s)

    def times_left(s, comb):
        out = LinComb()
        for g, c in comb.terms.items():
            out = out + pres.product(s, g).scale(c)
        return out

    for g in gens:
        for h in gens:
            gh = pres.product(g, h)
            for k in gens:
                assert times(gh, k) == times_left(g, pres.product(h, k))


def test_toro_relation_examples(torsion_triple, unimodular_triple):
    arr = torsion_triple
    t = arr.torus()
    rel = toro_relation(arr, (-1, 1, 3))
    assert rel == LinComb(
        [
            (sym(arr, t, (), (0,)), Fraction(-1)),
            (sym(arr, t, (), (1,)), Fraction(1)),
            (sym(arr, t, (), (2,)), Fraction(3)),
        ]
    )
    assert not toro_relation(arr, (0, 0, 0))
    with pytest.raises(ValueError):
        toro_relation(arr, (1, 0, 0))

    rel = toro_relation(unimodular_triple, (-1, 1, 1))
    assert len(rel) == 3


def test_circuit_relation_golden(torsion_triple):
    arr = torsion_triple
    t = arr.torus()
    p = arr.components_of((0, 1, 2))[0]
    rel = circuit_relations(arr, (0, 1, 2), p)
    expected = LinComb(
        [
            (sym(arr, p, (0, 1), ()), Fraction(1)),
            (sym(arr, p, (0, 2), ()), Fraction(-1)),
            (sym(arr, p, (1, 2), ()), Fraction(1)),
            (sym(arr, t, (), (0, 1)), Fraction(-1, 3)),
            (sym(arr, t, (), (0, 2)), Fraction(-1)),
            (sym(arr, t, (), (1, 2)), Fraction(1)),
        ]
    )
    assert rel == expected


def test_circuit_relation_unimodular_case(unimodular_triple):
    arr = unimodular_triple
    t = arr.torus()
    p = arr.components_of((0, 1, 2))[0]
    rel = circuit_relations(arr, (0, 1, 2), p)
    expected = LinComb(
        [
            (sym(arr, p, (0, 1), ()), Fraction(1)),
            (sym(arr, p, (0, 2), ()), Fraction(-1)),
            (sym(arr, p, (1, 2), ()), Fraction(1)),
            (sym(arr, t, (), (0, 1)), Fraction(-1)),
            (sym(arr, t, (), (0, 2)), Fraction(-1)),
            (sym(arr, t, (), (1, 2)), Fraction(1)),
        ]
    )
    assert rel == expected
    assert rel == unimodular_circuit_relation(arr, (0, 1, 2))


def test_circuit_relation_degree3_golden(rank3_example):
    arr = rank3_example
    h3 = arr.layers_of((3,))[0]
    for low in arr.components_of((0, 1, 2, 3)):
        rel = circuit_relations(arr, (0, 1, 2, 3), low)
        third = Fraction(1, 3)
        expected = LinComb(
            [
                (sym(arr, low, (0, 1, 3), ()), Fraction(1)),
                (sym(arr, low, (0, 2, 3), ()), Fraction(-1)),
                (sym(arr, low, (1, 2, 3), ()), Fraction(1)),
                (sym(arr, h3, (3,), (0, 1)), third),
                (sym(arr, h3, (3,), (0, 2)), -third),
                (sym(arr, h3, (3,), (1, 2)), -third),
            ]
        )
        assert rel == expected


def test_circuit_relation_validation(torsion_triple):
    arr = torsion_triple
    p = arr.components_of((0, 1, 2))[0]
    with pytest.raises(ValueError):
        circuit_relations(arr, (0, 1), p)
    q = arr.layers_of((0, 1))[1]
    with pytest.raises(ValueError):
        circuit_relations(arr, (0, 1, 2), q)


def test_circuit_relation_boundary_part_is_unit():
    rng = random.Random(13)
    for _ in range(25):
        arr = random_essential_arrangement(rng)
        for x in arr.matroid.corank_one_subsets():
            for low in arr.components_of(x):
                rel = circuit_relations(arr, x, low)
                for s, coeff in rel.terms.items():
                    if not s.b_part:
                        assert abs(coeff) == 1


def test_unimodular_relation_two_element_circuit():
    arr = ToricArrangement([[1, 0], [1, 0]])
    rel = unimodular_circuit_relation(arr, (0, 1))
    h = arr.layers_of((0,))[0]
    expected = LinComb(
        [
            (sym(arr, h, (1,), ()), Fraction(1)),
            (sym(arr, h, (0,), ()), Fraction(-1)),
        ]
    )
    assert rel in (expected, -expected)


def test_unimodular_relation_rejects_torsion(torsion_triple):
    with pytest.raises(ValueError):
        unimodular_circuit_relation(torsion_triple, (0, 1, 2))


def test_unimodular_agreement_random():
    rng = random.Random(17)
    seen = 0
    for _ in range(80):
        arr = random_essential_arrangement(rng, max_size=4)
        if not arr.is_unimodular():
            continue
        for c in arr.matroid.circuits():
            seen += 1
            low = arr.components_of(c)[0]
            assert unimodular_circuit_relation(arr, c) == circuit_relations(arr, c, low)
    assert seen > 5


def test_integral_basis_change_golden(torsion_triple):
    arr = torsion_triple
    p = arr.components_of((0, 1, 2))[0]
    t = arr.torus()
    h0 = arr.layers_of((0,))[0]
    h1 = arr.layers_of((1,))[0]
    change = integral_basis_change(arr, p, (0, 1), ())
    expected = LinComb(
        [
            (sym(arr, p, (0, 1), ()), Fraction(4)),
            (sym(arr, h1, (1,), (0,)), Fraction(-2, 3)),
            (sym(arr, h0, (0,), (1,)), Fraction(-2, 3)),
            (sym(arr, t, (), (0, 1)), Fraction(1, 3)),
        ]
    )
    assert change == expected


def test_integral_basis_change_trivial_cases(torsion_triple):
    arr = torsion_triple
    t = arr.torus()
    assert integral_basis_change(arr, t, (), (0, 2)) == LinComb.single(
        sym(arr, t, (), (0, 2))
    )
    h2 = arr.layers_of((2,))[0]
    change = integral_basis_change(arr, h2, (2,), ())
    expected = LinComb(
        [
            (sym(arr, h2, (2,), ()), Fraction(2)),
            (sym(arr, t, (), (2,)), Fraction(-1)),
        ]
    )
    assert change == expected


def test_integral_basis_change_rejects_invalid(torsion_triple):
    arr = torsion_triple
    p = arr.components_of((0, 1, 2))[0]
    with pytest.raises(ValueError):
        integral_basis_change(arr, p, (0,), ())  # wrong codimension
    with pytest.raises(ValueError):
        integral_basis_change(arr, p, (0, 1), (1,))  # overlap
    with pytest.raises(ValueError):
        integral_basis_change(arr, p, (0, 1), (2,))  # dependent union


def test_circuit_relations_integral_denominator_bound():
    # rewritten over the integral family, a circuit relation for X has
    # denominators dividing 2^|X| times the lcm of m(X minus j) over j in
    # the circuit
    rng = random.Random(19)
    for _ in range(20):
        arr = random_essential_arrangement(rng, max_size=4)
        m = arr.matroid
        for x in m.corank_one_subsets():
            circuit = m.circuit_within(x)
            bound = 2 ** len(x)
            acc = 1
            for j in circuit:
                mj = m.multiplicity(tuple(k for k in x if k != j))
                acc = acc * mj // gcd(acc, mj)
            bound *= acc
            for low in arr.components_of(x):
                rel = circuit_relations(arr, x, low)
                rewritten = LinComb()
                for s, coeff in rel.terms.items():
                    rewritten = rewritten + integral_basis_change(
                        arr, s.layer, s.a_part, s.b_part
                    ).scale(coeff)
                for coeff in rewritten.terms.values():
                    assert bound % coeff.denominator == 0


def test_build_presentation_counts(torsion_triple, unimodular_triple):
    pres = build_presentation(torsion_triple)
    by_deg = {k: len(v) for k, v in pres.symbols_by_degree().items()}
    assert by_deg == {0: 1, 1: 6, 2: 14}
    assert len(pres.toro_relations) == 1
    assert len(pres.circuit_relations) == 1

    pres = build_presentation(unimodular_triple)
    assert len(pres.circuit_relations) == 1

    point = build_presentation(ToricArrangement([], dimension=0))
    assert len(point.generators) == 1 and point.generators[0].degree == 0


def test_presentation_of_nonessential_records_deficit():
    arr = ToricArrangement([[1, 0]])
    pres = build_presentation(arr)
    assert pres.torus_rank_deficit == 1
    assert pres.arrangement.dimension == 1
