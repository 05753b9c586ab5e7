import random

import pytest

from eigenperiod.expr import LatticeExprError, canonical_form, parse_expr, parse_lattice_expr
from eigenperiod.k3 import k3_lattice
from eigenperiod.lattice import direct_sum, rescale, standard_lattice


def test_examples():
    L = parse_lattice_expr("U+U+U+E8^2")
    assert L.rank == 22 and L.signature() == (3, 19, 0)
    assert L == k3_lattice()
    L = parse_lattice_expr("A2(-1)+A2^3")
    assert L.rank == 8 and L.signature() == (2, 6, 0)
    assert parse_lattice_expr("<-2>").gram == ((-2,),)


def test_semantics():
    U, A2 = standard_lattice("U"), standard_lattice("A2")
    assert parse_lattice_expr("U(2)") == rescale(U, 2)
    assert parse_lattice_expr("U + A2(-1)") == direct_sum([U, rescale(A2, -1)])
    assert parse_lattice_expr("<3>(2)").gram == ((6,),)
    assert parse_lattice_expr(" D4 ^ 2 ") == direct_sum([standard_lattice("D4")] * 2)


def test_canonical_printing():
    assert canonical_form("E8+U+A2+U") == "U^2+A2+E8"
    assert canonical_form("D4+A1(2)+U(2)+D4") == "U(2)+A1(2)+D4^2"
    assert canonical_form("A2(1)") == "A2"
    assert canonical_form("<-2>+U+<-2>") == "U+<-2>^2"
    assert canonical_form("E6+D6+A6") == "A6+D6+E6"


@pytest.mark.parametrize("text,pos", [("", 0), ("U+", 2), ("U++U", 2), ("A", 1), ("X2", 0),
                                      ("U(2", 3), ("U)", 1), ("<2", 2), ("U^0", 2), ("U^-1", 2)])
def test_syntax_errors_carry_position(text, pos):
    with pytest.raises(LatticeExprError) as exc:
        parse_expr(text)
    assert exc.value.pos == pos


@pytest.mark.parametrize("text", ["E9", "D3", "A0", "U(0)", "<0>"])
def test_semantic_errors(text):
    with pytest.raises(LatticeExprError):
        parse_expr(text)


def random_expr(rnd):
    terms = []
    for _ in range(rnd.randint(1, 5)):
        kind = rnd.choice("UADE<")
        if kind == "U":
            base = "U"
        elif kind == "A":
            base = f"A{rnd.randint(1, 6)}"
        elif kind == "D":
            base = f"D{rnd.randint(4, 7)}"
        elif kind == "E":
            base = f"E{rnd.choice([6, 7, 8])}"
        else:
            base = f"<{rnd.choice([-6, -4, -2, -1, 1, 2, 3])}>"
        if rnd.random() < 0.4:
            base += f"({rnd.choice([-3, -2, -1, 2, 3])})"
        if rnd.random() < 0.3:
            base += f"^{rnd.randint(1, 3)}"
        if rnd.random() < 0.2:
            base = f" {base} "
        terms.append(base)
    return "+".join(terms)


def test_round_trip_random_corpus():
    rnd = random.Random(500)
    for _ in range(500):
        text = random_expr(rnd)
        e = parse_expr(text)
        again = parse_expr(e.canonical())
        assert again.canonical() == e.canonical()
        assert again.lattice().gram == e.lattice().gram
        assert e.lattice().rank == sum(
            (2 if t.base == "U" else 1 if t.base == "<>" else t.n) * t.power for t in e.terms)
