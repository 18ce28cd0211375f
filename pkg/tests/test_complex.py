# tests/test_complex.py
import random
from itertools import combinations

import pytest
import sympy

from app.core.braid import new_braid, self_linking, unknot
from app.core.exterior import add_term
from app.core.planar import vertex_circles
from app.engine.complex import (
    Coefficients,
    LaurentPolynomial,
    Theory,
    apply_differential,
    build_complex,
    complex_of,
    dump_matrices,
    edge_image,
    euler_characteristic,
    expand_reduced,
    grading,
    jones_polynomial,
    psi_chain,
)
from app.engine.cube import build_cube
from app.errors import MalformedCoefficients


def random_braid(rng: random.Random, max_len: int = 6):
    strands = rng.randint(2, 4)
    letters = [rng.choice([1, -1]) * rng.randint(1, strands - 1) for _ in range(rng.randint(1, max_len))]
    return new_braid(letters, strands)


def d_squared_vanishes(cx) -> bool:
    return all(not cx.differential((r + 1, q)).matmul(cx.differential((r, q))).nnz() for r, q in cx.bigradings())


def test_theory_and_coefficient_parsing():
    assert Theory.parse("odd-reduced") is Theory.REDUCED
    assert Theory.parse("even") is Theory.EVEN
    assert Coefficients.parse("Z") == Coefficients.integers()
    assert Coefficients.parse("q") == Coefficients.rationals()
    f3 = Coefficients.parse("Fp:3")
    assert f3.modulus == 3 and f3.is_field
    assert f3.group_symbol() == "F_3" and str(f3) == "Fp:3"
    for bad in ("Fp:4", "Fp:x", "R"):
        with pytest.raises(MalformedCoefficients):
            Coefficients.parse(bad)


def test_gradings():
    b = new_braid([1, 1, 1])
    assert grading(b, 0, 0, Theory.ODD) == (0, 5)
    assert grading(b, 0, 2, Theory.ODD) == (0, 1)
    assert grading(b, 0, 1, Theory.REDUCED) == (0, 2)


def test_unknot_complex():
    cx = complex_of(unknot())
    assert cx.bigradings() == [(0, -1), (0, 1)]
    assert cx.dim((0, -1)) == cx.dim((0, 1)) == 1
    reduced = complex_of(unknot(), Theory.REDUCED)
    assert reduced.bigradings() == [(0, 0)]


@pytest.mark.parametrize("theory", list(Theory))
def test_d_squared_on_known_words(theory):
    for letters in ([1, 1, 1], [1, -2, 1, -2], [-1, -2, 1, 2, 2, -1], [1, -1], [1, 2, 3, 1, 2, 2, 3]):
        assert d_squared_vanishes(complex_of(new_braid(letters), theory))


@pytest.mark.slow
def test_random_complexes():
    rng = random.Random(404)
    for _ in range(200):
        b = random_braid(rng, max_len=8)
        for theory in Theory:
            assert d_squared_vanishes(complex_of(b, theory)), (b, theory)
        for theory, shift in ((Theory.ODD, 0), (Theory.REDUCED, 1)):
            cx = complex_of(b, theory)
            chain = psi_chain(b, theory)
            assert chain.bigrading == (0, self_linking(b) + shift)
            assert not any(apply_differential(cx, chain.bigrading, chain.coordinates(cx)))


def test_restricted_build_matches_full_blocks():
    b = new_braid([1, -2, 1, -2, 1])
    full = complex_of(b)
    for bg in full.bigradings():
        part = build_complex(build_cube(b), Theory.ODD, bigradings=[bg])
        assert part.differential(bg) == full.differential(bg)


def test_dump_matrices():
    lines = dump_matrices(complex_of(new_braid([1]))).splitlines()
    # one block per source bigrading with its entries
    headers = [l for l in lines if len(l.split()) == 4]
    assert headers
    r, q, rows, cols = map(int, headers[0].split())
    assert (rows, cols) != (0, 0)


def test_expand_reduced():
    assert expand_reduced((0, 1), (0,)) == {(0,): 1, (1,): -1}
    assert expand_reduced((0, 2, 5), ()) == {(): 1}


# ====================
# EULER CHARACTERISTIC
# ====================
def test_jones_of_unknot_and_trefoil():
    assert jones_polynomial(unknot()) == LaurentPolynomial({1: 1, -1: 1})
    assert jones_polynomial(new_braid([1, 1, 1])) == LaurentPolynomial({1: 1, 3: 1, 5: 1, 9: -1})
    assert str(jones_polynomial(unknot())) == "q + 1/q"


def test_jones_of_mirror_inverts_q():
    b = new_braid([1, 1, 1])
    assert jones_polynomial(new_braid([-1, -1, -1])) == jones_polynomial(b).inverted()


def test_euler_characteristics_agree():
    q = sympy.Symbol("q")
    rng = random.Random(8)
    for _ in range(20):
        b = random_braid(rng)
        jones = jones_polynomial(b)
        assert euler_characteristic(complex_of(b, Theory.ODD)) == jones
        assert euler_characteristic(complex_of(b, Theory.EVEN)) == jones
        reduced = euler_characteristic(complex_of(b, Theory.REDUCED)).to_sympy()
        assert sympy.expand(jones.to_sympy() - (q + 1 / q) * reduced) == 0


# ====================
# REDUCED SUBCOMPLEX
# ====================
def linear(f, vec) -> dict:
    out = {}
    for mono, coef in vec.items():
        for m, c in f(mono).items():
            add_term(out, m, coef * c)
    return out


def test_reduced_maps_are_restrictions_of_odd_maps():
    rng = random.Random(505)
    compared = 0
    for _ in range(30):
        b = random_braid(rng)
        cube = build_cube(b)
        for v, x in cube.edges():
            source = vertex_circles(b, v)
            target = vertex_circles(b, v | 1 << x)
            for size in range(len(source)):
                for mono in combinations(range(len(source) - 1), size):
                    odd = linear(lambda m: edge_image(cube, Theory.ODD, v, x, m), expand_reduced(source, mono))
                    reduced = edge_image(cube, Theory.REDUCED, v, x, mono)
                    assert odd == linear(lambda m: expand_reduced(target, m), reduced), (b, v, x, mono)
                    compared += 1
    assert compared > 100
