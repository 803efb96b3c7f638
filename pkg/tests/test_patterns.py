import pytest

from gfmredux.patterns import FAMILIES, gen_pattern
from gfmredux.ltl import parse, to_string


def test_renderings():
    assert to_string(gen_pattern("TDR", (3,))) == "GF(a & XXXb)"
    assert to_string(gen_pattern("LIB", (2,))) == (
        "GF(a1 & X!a1 | !a1 & Xa1 | a2 & X!a2 | !a2 & Xa2)"
    )
    assert to_string(gen_pattern("BRP", (2,))) == (
        "G(!msg_sent | F(ack_send & (ack_rev | X(ack_rev | Xack_rev))))"
    )
    assert to_string(gen_pattern("EHP")) == (
        "a U (b & X(c & F(d & XF(e & XF(f & XFg)))))"
    )
    assert to_string(gen_pattern("NU", (2,))) == "G(!p1 | p1 U (p2 & p2 U p3))"
    assert to_string(gen_pattern("LFR", (2,))) == (
        "F(b1 & Fb2) & GF(a1 & Xa2)"
    )
    assert to_string(gen_pattern("NCS", (1, 2, 1))) == (
        "GF(a & Xb & XXXc & XXXXd)"
    )


def test_all_renderings_parse_back():
    for fam in FAMILIES:
        params = () if fam == "EHP" else ((2, 1) if fam == "NCS" else (2,))
        f = gen_pattern(fam, params)
        assert parse(to_string(f)) == f


def test_case_insensitive_family():
    assert gen_pattern("tdr", (4,)) == gen_pattern("TDR", (4,))


def test_param_validation():
    with pytest.raises(ValueError):
        gen_pattern("XYZ", (1,))
    with pytest.raises(ValueError):
        gen_pattern("TDR", ())
    with pytest.raises(ValueError):
        gen_pattern("TDR", (1, 2))
    with pytest.raises(ValueError):
        gen_pattern("TDR", (0,))
    with pytest.raises(ValueError):
        gen_pattern("EHP", (1,))
    with pytest.raises(ValueError):
        gen_pattern("NCS", ())


def test_ncs_offsets_accumulate():
    # offsets are gaps, so NCS[2,2] puts c at X-depth 4
    assert to_string(gen_pattern("NCS", (2, 2))) == "GF(a & XXb & XXXXc)"
