# tests/test_braid.py
import pytest

from app.core.braid import (
    BraidRelation,
    Conjugate,
    StabilizeNegative,
    StabilizePositive,
    applicable_relation_sites,
    connect_sum,
    delete_letter,
    format_braid,
    markov_move,
    mirror,
    new_braid,
    parse_braid,
    reverse,
    self_linking,
    unknot,
)
from app.errors import MalformedWord, RelationNotApplicable, StrandOutOfRange

CHIRAL = [3, 3, -2, 3, -2, 1, 3, -2, 1]


def test_strand_inference_and_counts():
    b = new_braid(CHIRAL)
    assert b.strands == 4
    assert (b.n, b.n_plus, b.n_minus) == (9, 6, 3)
    assert not b.is_positive()


def test_empty_word_is_the_unknot():
    b = new_braid([], strands=1)
    assert b == unknot()
    assert b.n == 0
    assert self_linking(b) == -1


def test_zero_letter_rejected():
    with pytest.raises(MalformedWord):
        new_braid([1, 0, 2])


def test_letter_beyond_strands_rejected():
    with pytest.raises(StrandOutOfRange):
        new_braid([3], strands=3)


def test_self_linking():
    assert self_linking(new_braid([1, 1, 1])) == 1
    # -4 + 6 - 3
    assert self_linking(new_braid(CHIRAL)) == -1
    assert self_linking(new_braid([1, 2, 3, 1, 2, 2, 3, 3, 2])) == 5


def test_oriented_vertex_marks_negative_letters():
    assert new_braid([1, -2, 1, -2]).oriented_vertex() == 0b1010
    assert new_braid([1, 1, 1]).oriented_vertex() == 0


def test_parse_and_format():
    b = parse_braid("1,1,1@3")
    assert b.letters == (1, 1, 1) and b.strands == 3
    assert format_braid(b) == "1,1,1@3"
    assert format_braid(parse_braid("3,3,-2,1")) == "3,3,-2,1"
    assert format_braid(parse_braid("[1, -2]"), with_strands=True) == "1,-2@3"
    assert parse_braid("") == unknot()
    assert parse_braid("@1") == unknot()


def test_parse_rejects_garbage():
    with pytest.raises(MalformedWord):
        parse_braid("1,x,2")
    with pytest.raises(MalformedWord):
        parse_braid("1,1@z")


def test_mirror_reverse_delete():
    assert mirror(new_braid([1, 1, 1])).letters == (-1, -1, -1)
    assert reverse(new_braid([1, 2])).letters == (2, 1)
    shorter = delete_letter(new_braid([1, 1, 1]), 0)
    assert shorter.letters == (1, 1) and shorter.strands == 2
    with pytest.raises(IndexError):
        delete_letter(new_braid([1]), 1)


def test_mirror_swaps_self_linking_signs():
    b = new_braid(CHIRAL)
    assert self_linking(mirror(b)) == -b.strands + b.n_minus - b.n_plus


def test_connect_sum():
    right = new_braid([1, 1, 1])
    total = right + mirror(right)
    assert total.letters == (1, 1, 1, -2, -2, -2)
    assert total.strands == 3
    assert connect_sum(new_braid([1]), new_braid([1])).letters == (1, 2)
    assert connect_sum(right, unknot()) == right


def test_markov_moves():
    trefoil = new_braid([1, 1, 1])
    stab = markov_move(trefoil, StabilizePositive())
    assert stab.letters == (1, 1, 1, 2) and stab.strands == 3
    assert self_linking(stab) == self_linking(trefoil)

    neg = markov_move(trefoil, StabilizeNegative())
    assert neg.letters == (1, 1, 1, -2)
    assert self_linking(neg) == self_linking(trefoil) - 2

    assert markov_move(trefoil, Conjugate(1)).letters == (-1, 1, 1, 1, 1)
    with pytest.raises(StrandOutOfRange):
        markov_move(trefoil, Conjugate(2))


def test_braid_relations():
    assert markov_move(new_braid([1, 2, 1]), BraidRelation(0)).letters == (2, 1, 2)
    assert markov_move(new_braid([1, 3]), BraidRelation(0)).letters == (3, 1)
    assert markov_move(new_braid([-1, -2, -1]), BraidRelation(0)).letters == (-2, -1, -2)
    with pytest.raises(RelationNotApplicable):
        markov_move(new_braid([1, 2, 2]), BraidRelation(0))
    with pytest.raises(RelationNotApplicable):
        markov_move(new_braid([1, -2, 1]), BraidRelation(0))


def test_applicable_relation_sites():
    assert applicable_relation_sites(new_braid([1, 3, 1, 2, 1])) == [0, 1, 2]
    assert applicable_relation_sites(new_braid([1, 1, 1])) == []
