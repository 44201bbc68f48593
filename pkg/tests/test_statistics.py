import json
import random

import pytest

from colorperm.core import Signature, identity, make_element
from colorperm.enumeration import enumerate_group
from colorperm.formulas import K_of_q
from colorperm.poly import MultiPolynomial, q
from colorperm.statistics import (
    csum_p,
    cyc,
    exc_A,
    exc_definitional,
    exc_via_proposition,
    fix,
    stats,
)

SIG32 = Signature.parse("3,2")
PAPER_ELEMENT = make_element(SIG32, 3, [3, 1, 2], [(0, 0), (2, 1), (0, 1)])


def test_exc_identity_is_zero():
    assert exc_definitional(identity(SIG32, 3)) == 0


def test_exc_paper_element_is_13():
    assert exc_definitional(PAPER_ELEMENT) == 13


def test_exc_one_digit_two_colors():
    # Sweep the 2-symbol alphabet by hand: exactly one of the two colored
    # copies of the digit maps upward.
    sig = Signature((2,))
    el = make_element(sig, 1, [1], [(1,)])
    assert exc_definitional(el) == 1


def test_exc_A_fixtures():
    assert exc_A(identity(SIG32, 3)) == 0
    assert exc_A(PAPER_ELEMENT) == 1
    s3 = make_element(Signature((1,)), 3, [2, 3, 1], [(0,)] * 3)
    assert exc_A(s3) == 2


def test_csum_paper_four_palettes():
    sig = Signature.parse("2,3,2,3")
    el = make_element(sig, 3, [3, 1, 2], [(1, 2, 0, 1), (0, 0, 1, 2), (0, 2, 1, 1)])
    assert [csum_p(el, p) for p in (1, 2, 3, 4)] == [1, 2, 1, 0]


def test_csum_paper_two_palettes():
    assert csum_p(PAPER_ELEMENT, 1) == 2
    assert csum_p(PAPER_ELEMENT, 2) == 1


def test_csum_zero_colors():
    el = identity(Signature.parse("2,3,2,3"), 3)
    assert all(csum_p(el, p) == 0 for p in (1, 2, 3, 4))


def test_csum_palette_out_of_range():
    with pytest.raises(ValueError):
        csum_p(PAPER_ELEMENT, 0)
    with pytest.raises(ValueError):
        csum_p(PAPER_ELEMENT, 3)


def test_fix_and_cyc():
    assert fix(identity(SIG32, 3)) == 3
    assert cyc(identity(SIG32, 3)) == 3
    assert fix(PAPER_ELEMENT) == 0
    assert cyc(PAPER_ELEMENT) == 1
    swap = make_element(SIG32, 3, [2, 1, 3], [(0, 0)] * 3)
    assert fix(swap) == 1
    assert cyc(swap) == 2


def test_proposition_on_paper_element():
    # r * exc_A + csum_1 * r_2 + csum_2 * r_1 = 6 + 4 + 3.
    assert exc_via_proposition(PAPER_ELEMENT) == 13


def test_proposition_identity():
    assert exc_via_proposition(identity(SIG32, 3)) == 0


@pytest.mark.parametrize(
    "parts,n",
    [((2,), 2), ((2,), 3), ((1,), 4), ((3, 2), 2), ((2, 3), 2), ((2, 2, 2), 2)],
)
def test_proposition_equals_definitional_exhaustively(parts, n):
    sig = Signature(parts)
    for el in enumerate_group(sig, n):
        assert exc_definitional(el) == exc_via_proposition(el)


def test_stats_record_paper_element():
    rec = stats(PAPER_ELEMENT)
    assert rec.to_json_dict() == {
        "exc": 13,
        "exc_A": 1,
        "csum": 7,
        "csum_per_palette": [2, 1],
        "fix": 0,
        "cyc": 1,
    }


def test_stats_record_identity():
    rec = stats(identity(SIG32, 3))
    assert (rec.exc, rec.exc_A, rec.csum, rec.fix, rec.cyc) == (0, 0, 0, 3, 3)
    assert rec.csum_per_palette == (0, 0)


def test_stats_record_s2_transposition():
    el = make_element(Signature((1,)), 2, [2, 1], [(0,), (0,)])
    rec = stats(el)
    assert (rec.exc, rec.exc_A, rec.csum, rec.fix, rec.cyc) == (1, 1, 0, 0, 1)


def test_stats_json_key_order():
    text = json.dumps(stats(PAPER_ELEMENT).to_json_dict())
    assert text.index('"exc"') < text.index('"exc_A"') < text.index('"csum"')
    assert text.index('"csum"') < text.index('"csum_per_palette"')
    assert text.index('"csum_per_palette"') < text.index('"fix"') < text.index('"cyc"')


def test_classical_case_reduces_to_plain_excedance():
    sig = Signature((1,))
    for el in enumerate_group(sig, 4):
        classical = sum(1 for i, image in enumerate(el.sigma, start=1) if image > i)
        # Digit n can never exceed, so classical excedance equals exc_A here.
        assert exc_definitional(el) == classical == exc_A(el)
        assert csum_p(el, 1) == 0


def test_signature_order_changes_the_statistic():
    # Same abstract group, reordered palette sizes, different excedance.
    a = make_element(Signature((3, 2)), 1, [1], [(1, 0)])
    b = make_element(Signature((2, 3)), 1, [1], [(1, 0)])
    assert exc_definitional(a) == 2
    assert exc_definitional(b) == 3


@pytest.mark.parametrize("parts", [(1,), (2,), (3,), (3, 2), (2, 3), (2, 2, 2), (3, 2, 2, 3)])
def test_single_digit_layer_identity(parts):
    # 1 + K(q) must enumerate q^exc over all colorings of one digit.
    sig = Signature(parts)
    total = MultiPolynomial.zero()
    for el in enumerate_group(sig, 1):
        total = total + q ** exc_definitional(el)
    assert total == MultiPolynomial.constant(1) + K_of_q(sig)


def test_proposition_on_random_elements_of_large_groups():
    # Beyond the exhaustively-swept sizes: uniformly random elements drawn
    # through the rank bijection, at least 10^5 in total.
    from colorperm.enumeration import element_unrank, group_order

    rng = random.Random(574401)
    cells = [((3, 2, 2, 3), 5), ((4, 3), 6), ((2,), 9), ((5, 5), 4)]
    draws = 25_000
    for parts, n in cells:
        sig = Signature(parts)
        order = group_order(sig, n)
        assert order > 10 ** 6
        for _ in range(draws):
            el = element_unrank(sig, n, rng.randrange(order))
            assert exc_definitional(el) == exc_via_proposition(el)


def test_stats_internal_invariants_sampled():
    sig = Signature((2, 3))
    for el in enumerate_group(sig, 2):
        rec = stats(el)
        weighted = sum(
            c * (sig.r // p) for c, p in zip(rec.csum_per_palette, sig.parts)
        )
        assert rec.exc == sig.r * rec.exc_A + weighted
        assert rec.csum == rec.exc - sig.r * rec.exc_A
        assert 0 <= rec.exc_A <= el.n - 1 or el.n == 1
        assert 0 <= rec.fix <= el.n
        assert 1 <= rec.cyc <= el.n
