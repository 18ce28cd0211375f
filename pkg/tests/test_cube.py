# tests/test_cube.py
import random
from itertools import combinations

import pytest

from app.core.braid import new_braid
from app.engine.cube import build_cube, count_af_faces, describe_action, square_anticommutes, verify_skew
from app.errors import NotASquareRoot


def random_braid(rng: random.Random, max_len: int):
    strands = rng.randint(2, 4)
    letters = [rng.choice([1, -1]) * rng.randint(1, strands - 1) for _ in range(rng.randint(1, max_len))]
    return new_braid(letters, strands)


def test_edges_and_squares_enumeration():
    cube = build_cube(new_braid([1, -2, 1]))
    edges = list(cube.edges())
    assert len(edges) == 3 * 4
    assert edges[0] == (0, 0)
    assert len(list(cube.squares())) == 3 * 2


def test_dump_format():
    assert build_cube(new_braid([1])).dump() == "0 0 +1 merge(0,1->0)\n"
    dump = build_cube(new_braid([1, 1])).dump().splitlines()
    assert len(dump) == 4
    assert dump[0].startswith("00 0 ")


def test_describe_split():
    cube = build_cube(new_braid([1, 1]))
    assert describe_action(cube.action(0b01, 1)) == "split(0->2,0)"


def test_signs_are_units():
    cube = build_cube(new_braid([1, -2, 1, -2]))
    assert {cube.sign(v, x) for v, x in cube.edges()} <= {1, -1}
    # edges into the last crossing never pick up a factor
    assert all(cube.sign(v, 3) == 1 for v in range(8))


def test_even_sign_counts_earlier_bits():
    cube = build_cube(new_braid([1, 1, 1]))
    assert cube.even_sign(0b011, 2) == 1
    assert cube.even_sign(0b001, 1) == -1
    assert cube.even_sign(0b110, 0) == 1


@pytest.mark.parametrize("letters", [[1, 1, 1], [1, -1], [1, -2, 1, -2], [-1, -2, 1, 2, 2, -1], [1, 2, 3, 1, 2, 2, 3]])
def test_known_words_are_skew(letters):
    assert verify_skew(build_cube(new_braid(letters)))


@pytest.mark.slow
def test_random_cubes_are_skew():
    rng = random.Random(2024)
    for _ in range(200):
        b = random_braid(rng, max_len=8)
        assert verify_skew(build_cube(b)), b


def test_corrupted_sign_breaks_skew():
    cube = build_cube(new_braid([1, 1]))
    assert square_anticommutes(cube, 0, 0, 1)
    cube.override_sign(0, 0, -cube.sign(0, 0))
    assert not square_anticommutes(cube, 0, 0, 1)
    assert not verify_skew(cube)


@pytest.mark.slow
def test_three_cubes_have_even_af_faces():
    rng = random.Random(99)
    for _ in range(200):
        b = random_braid(rng, max_len=8)
        cube = build_cube(b)
        for root in range(1 << b.n):
            zeros = [x for x in range(b.n) if not root >> x & 1]
            for c1, c2, c3 in combinations(zeros, 3):
                assert count_af_faces(cube, root, c1, c2, c3) % 2 == 0


def test_af_faces_need_a_real_three_cube():
    cube = build_cube(new_braid([1, 1, 1]))
    with pytest.raises(NotASquareRoot):
        count_af_faces(cube, 0b001, 0, 1, 2)
    with pytest.raises(NotASquareRoot):
        count_af_faces(cube, 0, 0, 0, 1)
