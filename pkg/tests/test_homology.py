# tests/test_homology.py
import random

from app.core.braid import new_braid, self_linking, unknot
from app.core.grid import grid_to_braid, parse_grid
from app.engine.complex import Coefficients, LaurentPolynomial, Theory, complex_of, euler_characteristic
from app.engine.homology import HomologyGroup, format_report, homology, is_wide, to_report_model

GRID_8_19 = "0,1,6,2,5,7,8,3,4,9;6,7,8,9,1,4,5,0,2,3"

LISTING_8_19 = """\
KH'_( 0)(L) = Z^1[ 7] + Z^1[ 5]
KH'_( 1)(L) = 0
KH'_( 2)(L) = Z^1[11] + Z^1[ 9]
KH'_( 3)(L) = 0
KH'_( 4)(L) = Z/2[13] + Z/2[11]
KH'_( 5)(L) = Z^1[17] + (Z^1 + Z/3)[15] + Z/3[13]
Wide knot, sigma = 6, sl = 5.
"""


def free(rank: int = 1) -> HomologyGroup:
    return HomologyGroup(rank)


def random_braid(rng: random.Random, max_len: int = 6):
    strands = rng.randint(2, 4)
    letters = [rng.choice([1, -1]) * rng.randint(1, strands - 1) for _ in range(rng.randint(1, max_len))]
    return new_braid(letters, strands)


def test_unknot():
    groups = homology(complex_of(unknot()))
    assert groups == {(0, -1): free(), (0, 1): free()}
    assert format_report(groups, Theory.ODD) == "KH'_( 0)(L) = Z^1[ 1] + Z^1[-1]\n"


def test_one_crossing_unknot():
    assert homology(complex_of(new_braid([1]))) == homology(complex_of(unknot()))


def test_trefoil_odd_is_torsion_free():
    groups = homology(complex_of(new_braid([1, 1, 1])))
    assert groups == {bg: free() for bg in [(0, 1), (0, 3), (2, 5), (2, 7), (3, 7), (3, 9)]}


def test_trefoil_even_has_two_torsion():
    groups = homology(complex_of(new_braid([1, 1, 1]), Theory.EVEN))
    assert groups == {
        (0, 1): free(),
        (0, 3): free(),
        (2, 5): free(),
        (3, 7): HomologyGroup(0, (2,)),
        (3, 9): free(),
    }


def test_trefoil_reduced():
    groups = homology(complex_of(new_braid([1, 1, 1]), Theory.REDUCED))
    assert groups == {(0, 2): free(), (2, 6): free(), (3, 8): free()}
    assert not is_wide(groups, Theory.REDUCED)


def test_8_19_listing():
    b = grid_to_braid(parse_grid(GRID_8_19))
    groups = homology(complex_of(b))
    report = format_report(groups, Theory.ODD, sl=self_linking(b), sigma=6)
    assert report == LISTING_8_19


def test_threads_do_not_change_results():
    b = new_braid([1, -2, 1, -2, 1, 1])
    assert homology(complex_of(b), threads=3) == homology(complex_of(b), threads=1)


def test_report_labels_and_symbols():
    groups = {(0, 1): free(2)}
    assert format_report(groups, Theory.EVEN, coefficients=Coefficients.prime_field(2)) == "KH_( 0)(L) = F_2^2[ 1]\n"
    assert format_report(groups, Theory.REDUCED, coefficients=Coefficients.rationals()).startswith("KHr'_( 0)(L) = Q^2[ 1]")
    assert format_report({}, Theory.ODD) == "KH'_( 0)(L) = 0\n"
    assert format_report(groups, Theory.ODD, sl=-1).endswith("sl = -1.\n")


def test_json_report():
    groups = homology(complex_of(unknot()))
    model = to_report_model(groups, Theory.ODD, Coefficients.integers())
    assert model.theory == "odd" and model.coefficients == "Z"
    assert [(g.r, g.q, g.free, g.torsion) for g in model.groups] == [(0, -1, 1, []), (0, 1, 1, [])]


def test_width_rule():
    assert not is_wide({(0, 1): free(), (0, 3): free()}, Theory.ODD)
    assert is_wide({(0, 1): free(), (0, 3): free(), (1, 9): free()}, Theory.ODD)
    assert is_wide({(0, 1): free(), (0, 3): free()}, Theory.REDUCED)


# ====================
# PROPERTIES
# ====================
def ranks(groups) -> dict:
    return {bg: g.free for bg, g in groups.items() if g.free}


def test_euler_characteristic_from_homology():
    rng = random.Random(12)
    for _ in range(15):
        b = random_braid(rng)
        cx = complex_of(b, Theory.ODD, Coefficients.rationals())
        chi = LaurentPolynomial()
        for (r, q), g in homology(cx).items():
            chi.add(q, (-1) ** (r % 2) * g.free)
        assert chi == euler_characteristic(cx)


def test_field_dimensions_bound_rational_ranks():
    rng = random.Random(13)
    for _ in range(10):
        b = random_braid(rng)
        over_q = ranks(homology(complex_of(b, Theory.ODD, Coefficients.rationals())))
        over_f2 = ranks(homology(complex_of(b, Theory.ODD, Coefficients.prime_field(2))))
        assert all(over_f2.get(bg, 0) >= rank for bg, rank in over_q.items())


def test_odd_splits_into_shifted_reduced():
    rng = random.Random(14)
    for coefficients in (Coefficients.rationals(), Coefficients.prime_field(2)):
        for _ in range(10):
            b = random_braid(rng)
            odd = ranks(homology(complex_of(b, Theory.ODD, coefficients)))
            red = ranks(homology(complex_of(b, Theory.REDUCED, coefficients)))
            keys = set(odd) | {(r, q + 1) for r, q in red} | {(r, q - 1) for r, q in red}
            for r, q in keys:
                assert odd.get((r, q), 0) == red.get((r, q - 1), 0) + red.get((r, q + 1), 0)


def test_even_and_odd_agree_mod_two():
    rng = random.Random(15)
    f2 = Coefficients.prime_field(2)
    for _ in range(10):
        b = random_braid(rng)
        assert ranks(homology(complex_of(b, Theory.ODD, f2))) == ranks(homology(complex_of(b, Theory.EVEN, f2)))
