import itertools
import random
from fractions import Fraction as F

import pytest

from belyi.passport import (
    ExponentProfile,
    Passport,
    allowed_n,
    check_n,
    derive_tables,
    exponent_profile,
    format_passport,
    hurwitz_defect,
    normalize_n,
    parse_passport,
    schwarz_target,
)


# -- profiles and normalization ---------------------------------------------

def test_normalize_n():
    assert normalize_n(-2) == 1
    assert normalize_n(F(5, 6)) == F(5, 6)
    assert normalize_n(F(-11, 6)) == F(5, 6)
    # idempotent, and an involution composed with the reflection
    rng = random.Random(1)
    for _ in range(50):
        n = F(rng.randint(-40, 40), rng.randint(1, 12))
        m = normalize_n(n)
        assert normalize_n(m) == m
        assert normalize_n(-n - 1) == m


def test_exponent_profile_shapes():
    p = exponent_profile("lame", n0=F(11, 6))
    assert p.labels() == ("e1", "e2", "e3", "inf")
    assert p.diff("inf") == F(7, 3)
    g2 = exponent_profile("gen2", n1=F(5, 6))
    assert g2.diff("wpa") == F(8, 3)
    assert g2.diff("inf") == F(1, 2)
    g3 = exponent_profile("gen3", n0=0, n1=0)
    assert set(d for _, d in g3.diffs) == {F(1, 2), F(1)}
    with pytest.raises(ValueError):
        exponent_profile("lame", n0=F(11, 6), n1=1)
    with pytest.raises(ValueError):
        exponent_profile("gen2", n1=F(-3, 4))  # not normalized
    with pytest.raises(ValueError):
        exponent_profile("lame", n0=F(-1, 2))  # zero difference


# -- passports ---------------------------------------------------------------

def test_passport_parse_format_round_trip():
    for text in ["[1^2 2^10, 3^5 7^1, 2^1 4^5]", "[1,1,1]", "[1^2 2^4, 3^2 4^1, 2^1 4^2]"]:
        p = parse_passport(text)
        assert parse_passport(format_passport(p)) == p


def test_passport_rejects_bad_columns():
    with pytest.raises(ValueError):
        parse_passport("[1^2, 3^1, 1^3]")


def test_hurwitz_defect():
    assert hurwitz_defect(parse_passport("[1,1,1]")) == 0
    assert hurwitz_defect(parse_passport("[1^2 2^10, 3^5 7^1, 2^1 4^5]")) == 0
    assert hurwitz_defect(Passport([2], [2], [2])) == -1


# -- derive_tables -----------------------------------------------------------

def test_degree_22_tables():
    tabs = derive_tables(exponent_profile("lame", n0=F(11, 6)), schwarz_target("S4"))
    assert len(tabs) == 2
    assert tabs[0].degree == 22
    assert format_passport(tabs[0].passport()) == "[1^2 2^10, 3^5 7^1, 2^1 4^5]"


def test_lame_5_6_tables():
    tabs = derive_tables(exponent_profile("lame", n0=F(5, 6)), schwarz_target("S4"))
    got = {format_passport(t.passport()) for t in tabs}
    assert "[1^2 2^4, 3^2 4^1, 2^1 4^2]" in got
    assert any(t.degree == 10 for t in tabs)


def test_gen2_5_8_tables():
    tabs = derive_tables(exponent_profile("gen2", n1=F(5, 8)), schwarz_target("S4"))
    assert len(tabs) == 2
    assert all(t.degree == 15 for t in tabs)
    assert format_passport(tabs[0].passport()) == "[1^3 2^6, 3^5, 2^1 4^1 9^1]"


def test_lame_parity_exclusion():
    # integral ram at the infinity point fails for every assignment: no tables
    tabs = derive_tables(exponent_profile("lame", n0=F(1, 7)), schwarz_target("S4"))
    assert tabs == []


def test_table_json_shape():
    t = derive_tables(exponent_profile("lame", n0=F(11, 6)), schwarz_target("S4"))[0]
    obj = t.to_json()
    assert obj["degree"] == 22
    assert obj["assignment"]["inf"] == ["1", 7]
    assert obj["free"] == {"0": 10, "1": 5, "inf": 5}


def _oracle_tables(profile, target, n_max=60):
    """Brute force: enumerate assignments and free counts up to n_max, filter
    by exact column sums and Riemann-Hurwitz.  Independent of derive_tables'
    linear algebra."""
    labels = profile.labels()
    opts = []
    for lab in labels:
        d = profile.diff(lab)
        o = []
        for t in ("0", "1", "inf"):
            e = d / target.diff(t)
            if e.denominator == 1 and e >= 1:
                o.append((t, int(e)))
        if not o:
            return set()
        opts.append(o)
    found = set()
    for choice in itertools.product(*opts):
        for n in range(1, n_max + 1):
            cols = {"0": [], "1": [], "inf": []}
            for (t, e) in choice:
                cols[t].append(e)
            ok = True
            free = []
            for t in ("0", "1", "inf"):
                m = target.free_ram(t)
                k, r = divmod(n - sum(cols[t]), m)
                if r or k < 0:
                    ok = False
                    break
                free.append(k)
                cols[t].extend([m] * k)
            if not ok:
                continue
            p = Passport(cols["0"], cols["1"], cols["inf"])
            if hurwitz_defect(p) == 0:
                found.add(p)
    return found


def test_derive_tables_against_oracle():
    rng = random.Random(20)
    targets = [schwarz_target(x) for x in ("A4", "S4", "A5", "D3", "D5")]
    checked = 0
    while checked < 20:
        kind = rng.choice(["lame", "gen2", "gen3"])
        def rnd_n():
            return normalize_n(F(rng.randint(-10, 10), rng.choice([2, 3, 4, 5, 6, 8, 10, 12])))
        try:
            if kind == "lame":
                prof = exponent_profile("lame", n0=rnd_n())
            elif kind == "gen2":
                prof = exponent_profile("gen2", n1=rnd_n())
            else:
                prof = exponent_profile("gen3", n0=rnd_n(), n1=rnd_n())
        except ValueError:
            continue
        target = rng.choice(targets)
        tabs = derive_tables(prof, target)
        got = {t.passport() for t in tabs if t.degree <= 60}
        assert got == _oracle_tables(prof, target, n_max=60)
        for t in tabs:
            pp = t.passport()
            assert pp.is_consistent() and hurwitz_defect(pp) == 0
        checked += 1


def test_dihedral_target_parameter():
    t = schwarz_target("D5")
    assert t.diffs == (F(1, 2), F(1, 2), F(1, 5))
    with pytest.raises(ValueError):
        schwarz_target("D1")
    tabs = derive_tables(exponent_profile("gen3", n0=1, n1=F(1, 3)), schwarz_target("D12"))
    for t2 in tabs:
        assert hurwitz_defect(t2.passport()) == 0


# -- residue tables ----------------------------------------------------------

def test_check_n_examples():
    assert check_n("G22", "lame", F(7, 10))
    assert not check_n("G12", "lame", F(1, 2))
    assert check_n("G22", "gen2", F(5, 6))


def test_check_n_side_conditions():
    # class membership alone is not enough: lame needs n > 0 after folding
    assert not check_n("G12", "lame", F(-1, 4))  # folds to -1/4 < 0... -(-1/4)-1
    assert check_n("G12", "lame", F(1, 4))
    # gen2 floor: n >= 1/6; 1/8 is in the G13 class but below the floor
    assert not check_n("G13", "gen2", F(1, 8))
    assert check_n("G13", "gen2", F(3, 8))


def test_allowed_n_description():
    s = allowed_n("G22", "gen2")
    assert F(5, 6) in s and F(1, 2) not in s and F(7, 10) in s
    assert "Z" in s.describe()


def test_check_n_gen3_a4_rule():
    # n0 = (1+2k)/6, n1 = l/6, k = -1, l = 5: k+l = 4, k+l % 3 == 1, k % 3 == 2
    assert check_n("A4", "gen3", F(-1, 6), F(5, 6))
    # k + l too small
    assert not check_n("A4", "gen3", F(1, 6), F(1, 6))
    # k % 3 == 1 excluded
    assert not check_n("A4", "gen3", F(3, 6), F(7, 6))


def test_check_n_gen3_s4_a5():
    assert check_n("S4", "gen3", F(1, 4), F(1, 8))
    assert not check_n("S4", "gen3", F(1, 3), F(1, 8))  # n0 in Z/3 excluded
    assert check_n("A5", "gen3", F(1, 10), F(1, 4))
    assert not check_n("A5", "gen3", F(1, 5), F(1, 4))  # n0 in Z/5 excluded
    with pytest.raises(ValueError):
        check_n("G12", "gen3", F(1, 4), F(1, 8))
