import math
import random
from fractions import Fraction

import pytest

from modscatter import arith
from modscatter.scatterset import (
    INFINITY,
    ScatterSet,
    UnimodularMatrix,
    canonical_fraction,
    equivalence_witness,
    fraction_record,
    iter_fractions,
    pairing_census,
    partner,
    scatter_set,
    sojourn_time,
)


def phi(q):
    out = q
    for p, _ in arith.factorize(q).factors:
        out -= out // p
    return out


class TestUnimodularMatrix:
    def test_rejects_bad_determinant(self):
        with pytest.raises(ValueError):
            UnimodularMatrix(1, 0, 0, 2)
        with pytest.raises(ValueError):
            UnimodularMatrix(0, 1, 1, 0)  # det -1

    def test_sign_normalization(self):
        assert UnimodularMatrix(-1, 0, 0, -1) == UnimodularMatrix.identity()
        m = UnimodularMatrix(-2, -1, -5, -3)
        assert m.c > 0
        assert m == UnimodularMatrix(2, 1, 5, 3)

    def test_group_operations(self):
        rng = random.Random(5)
        t = UnimodularMatrix(1, 1, 0, 1)
        s = UnimodularMatrix(0, -1, 1, 0)
        for _ in range(50):
            m = UnimodularMatrix.identity()
            for _ in range(rng.randrange(1, 10)):
                m = m * rng.choice([t, s, t.inverse()])
            assert m * m.inverse() == UnimodularMatrix.identity()
            assert m.a * m.d - m.b * m.c == 1

    def test_fraction_action(self):
        m = UnimodularMatrix(4, -1, 5, -1)
        assert m.apply_to(INFINITY) == Fraction(4, 5)
        assert m.apply_to(Fraction(1, 5)) == INFINITY
        t = UnimodularMatrix(1, 3, 0, 1)
        assert t.apply_to(INFINITY) == INFINITY
        assert t.apply_to(Fraction(1, 2)) == Fraction(7, 2)


def test_partner_golden():
    assert partner(1, 5) == 4
    assert partner(2, 5) == 2
    assert partner(3, 7) == 2


def test_partner_involutive_and_valid():
    for q in range(2, 200):
        for p in range(1, q):
            if math.gcd(p, q) != 1:
                continue
            y = partner(p, q)
            assert 1 <= y < q
            assert (p * y + 1) % q == 0
            assert partner(y, q) == p


def test_partner_rejects():
    with pytest.raises(ValueError):
        partner(2, 4)
    with pytest.raises(ValueError):
        partner(0, 5)
    with pytest.raises(ValueError):
        partner(5, 5)
    with pytest.raises(ValueError):
        partner(1, 1)


def test_scatter_set_golden():
    g5 = scatter_set(5)
    assert g5.self_paired == (2, 3)
    assert g5.pairs == ((1, 4),)
    assert g5.members == (Fraction(1, 5), Fraction(2, 5), Fraction(3, 5))

    g2 = scatter_set(2)
    assert g2.self_paired == (1,)
    assert g2.pairs == ()
    assert g2.members == (Fraction(1, 2),)

    g7 = scatter_set(7)
    assert g7.self_paired == ()
    assert g7.pairs == ((1, 6), (2, 3), (4, 5))
    assert g7.members == (Fraction(1, 7), Fraction(2, 7), Fraction(4, 7))

    assert scatter_set(1) == ScatterSet(1, (), (), (Fraction(0),))
    # the pairing construction applies verbatim at q = 4
    assert scatter_set(4).members == (Fraction(1, 4),)


def test_partition_and_cardinality():
    for q in range(2, 2000):
        g = scatter_set(q)
        units = sorted(g.self_paired + tuple(p for pr in g.pairs for p in pr))
        assert units == [p for p in range(1, q) if math.gcd(p, q) == 1]
        s = arith.count_sqrt_minus_one(q)
        assert len(g.self_paired) == s
        assert 2 * len(g.members) == phi(q) + s
        for p1, p2 in g.pairs:
            assert p1 < p2
            assert (p1 * p2 + 1) % q == 0


def test_census_matches_construction():
    for q in range(2, 400):
        g = scatter_set(q)
        units, selfp, members = pairing_census(q)
        assert units == phi(q)
        assert selfp == len(g.self_paired)
        assert members == len(g.members)


def test_iteration_golden():
    assert list(iter_fractions(1)) == [Fraction(0)]
    assert list(iter_fractions(3)) == [Fraction(0), Fraction(1, 2), Fraction(1, 3)]
    assert list(iter_fractions(7)) == [
        Fraction(0),
        Fraction(1, 2),
        Fraction(1, 3),
        Fraction(1, 4),
        Fraction(1, 5),
        Fraction(2, 5),
        Fraction(3, 5),
    ]


def test_iteration_order_and_uniqueness():
    seen = set()
    prev_key = None
    for w in iter_fractions(100_000):
        key = (w.denominator, w)
        assert key not in seen
        seen.add(key)
        if prev_key is not None:
            assert key > prev_key
        prev_key = key


def test_equivalence_golden():
    assert equivalence_witness(Fraction(1, 5), Fraction(4, 5)) == UnimodularMatrix(4, -1, 5, -1)
    assert equivalence_witness(Fraction(1, 3), Fraction(1, 3)) == UnimodularMatrix.identity()
    assert equivalence_witness(Fraction(1, 5), Fraction(2, 5)) is None
    assert equivalence_witness(Fraction(1, 3), Fraction(1, 2)) is None


def test_equivalence_rejects_out_of_range():
    with pytest.raises(ValueError):
        equivalence_witness(Fraction(0), Fraction(1, 2))
    with pytest.raises(ValueError):
        equivalence_witness(Fraction(1, 2), Fraction(3, 2))


def test_witness_action_exact():
    for q in range(2, 120):
        for p1 in range(1, q):
            if math.gcd(p1, q) != 1:
                continue
            p2 = partner(p1, q)
            if p2 == p1:
                continue
            w1, w2 = Fraction(p1, q), Fraction(p2, q)
            m = equivalence_witness(w1, w2)
            assert m is not None
            assert m.a * m.d - m.b * m.c == 1
            assert m.apply_to(INFINITY) == w2
            assert m.apply_to(w1) == INFINITY
            # and symmetrically
            back = equivalence_witness(w2, w1)
            assert back is not None
            assert back.apply_to(INFINITY) == w1


def test_equivalence_classes_have_size_one_or_two():
    for q in range(2, 60):
        units = [p for p in range(1, q) if math.gcd(p, q) == 1]
        for p1 in units:
            mates = [
                p2
                for p2 in units
                if p2 != p1
                and equivalence_witness(Fraction(p1, q), Fraction(p2, q)) is not None
            ]
            assert len(mates) <= 1
            if mates:
                assert partner(p1, q) == mates[0]


def test_canonical_golden():
    assert canonical_fraction(Fraction(4, 5)) == Fraction(1, 5)
    assert canonical_fraction(Fraction(2, 5)) == Fraction(2, 5)
    assert canonical_fraction(Fraction(0)) == Fraction(0)


def test_canonical_idempotent_and_consistent():
    for q in range(2, 100):
        for p in range(1, q):
            if math.gcd(p, q) != 1:
                continue
            w = Fraction(p, q)
            c = canonical_fraction(w)
            assert canonical_fraction(c) == c
            assert c in scatter_set(q).members
            # same canonical image exactly when a witness exists
            same = equivalence_witness(w, c) is not None if w != c else True
            assert same


def test_canonical_separates_inequivalent():
    for q in (5, 7, 10, 13):
        units = [p for p in range(1, q) if math.gcd(p, q) == 1]
        for p1 in units:
            for p2 in units:
                w1, w2 = Fraction(p1, q), Fraction(p2, q)
                has_witness = equivalence_witness(w1, w2) is not None
                assert has_witness == (canonical_fraction(w1) == canonical_fraction(w2))


def test_sojourn_time():
    assert sojourn_time(Fraction(0), 2.0) == pytest.approx(2 * math.log(2), abs=1e-12)
    assert sojourn_time(Fraction(1, 2), 2.0) == pytest.approx(2 * math.log(4), abs=1e-12)
    with pytest.raises(ValueError):
        sojourn_time(Fraction(2, 5), 1.0)


def test_fraction_record():
    rec = fraction_record(Fraction(2, 5), 2.0)
    assert rec == {
        "q": 5,
        "p": 2,
        "class": "self_paired",
        "sojourn": pytest.approx(2 * math.log(10)),
    }
    assert fraction_record(Fraction(1, 5), 2.0)["class"] == "pair_min"
    assert fraction_record(Fraction(0), 2.0)["class"] == "self_paired"
