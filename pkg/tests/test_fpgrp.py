from pathlib import Path

import pytest

from tensq import metagrp
from tensq.fpgrp import (
    DEFAULT_MAX_COSETS,
    PresentationSyntaxError,
    certify_nu_order,
    parse_presentation,
    todd_coxeter,
)
from tensq.presentations import (
    NU_GENERATORS,
    Presentation,
    nu_presentation,
    presentation_to_text,
    tensor_presentation,
)

DATA = Path(__file__).parent / "data"


def pres(gens, relators):
    return Presentation(name="t", generators=gens, relators=relators)


def test_enumeration_classics():
    cases = [
        (pres(("x",), (((0, 5),),)), 5),
        (pres(("x",), (((0, 1),),)), 1),
        # Klein four group
        (pres(("x", "y"), (((0, 2),), ((1, 2),), ((0, -1), (1, -1), (0, 1), (1, 1)))), 4),
        # S3 as <x, y | x^2, y^3, (xy)^2>
        (pres(("x", "y"), (((0, 2),), ((1, 3),), ((0, 1), (1, 1), (0, 1), (1, 1)))), 6),
        # quaternion group
        (pres(("x", "y"), (((0, 4),), ((0, 2), (1, -2)), ((1, -1), (0, 1), (1, 1), (0, 1)))), 8),
    ]
    for presentation, order in cases:
        result = todd_coxeter(presentation)
        assert result.closed
        assert result.order == order


def test_enumeration_overflow_is_a_value():
    result = todd_coxeter(pres(("x",), (((0, 5),),)), max_cosets=2)
    assert result.order is None
    assert not result.closed
    assert result.cosets_used == 2


def test_parse_minimal():
    p = parse_presentation("gens: x\nx^5\n")
    assert p.generators == ("x",)
    assert p.relators == (((0, 5),),)


def test_parse_header_commas_and_bare_names():
    p = parse_presentation("tensq-pres v1\ngens: x, y\n\nx * y^2\ny^-1 * x\n")
    assert p.generators == ("x", "y")
    assert p.relators == (((0, 1), (1, 2)), ((1, -1), (0, 1)))


@pytest.mark.parametrize(
    "text,line,column,fragment",
    [
        ("gens: x\nx^", 2, 3, "integer exponent"),
        ("gens: x\nx^0", 2, 3, "zero exponent"),
        ("gens: x\ny^2", 2, 1, "unknown generator"),
        ("gens: x\nx^2 x^3", 2, 5, "expected '*'"),
        ("gens: x\nx^2 *", 2, 6, "generator name"),
        ("x^2\n", 1, 1, "gens:"),
        ("", 1, 1, "gens:"),
        ("gens: x x\nx^2", 1, 1, "duplicate"),
        ("gens: 2x\n", 1, 1, "bad generator name"),
        ("gens:\nx^2", 1, 1, "no generators"),
    ],
)
def test_parse_errors(text, line, column, fragment):
    with pytest.raises(PresentationSyntaxError) as info:
        parse_presentation(text)
    err = info.value
    assert err.line == line
    assert err.column == column
    assert fragment in str(err)


def test_round_trip_nu_and_tensor():
    for tup in [(3, 2, 2, 0), (9, 3, 4, 3)]:
        p = metagrp.validate(*tup)
        for build in (nu_presentation, tensor_presentation):
            original = build(p)
            parsed = parse_presentation(presentation_to_text(original))
            assert parsed.generators == original.generators
            assert parsed.relators == original.relators


def test_golden_text_parses_to_nu():
    parsed = parse_presentation((DATA / "nu_3220.txt").read_text())
    original = nu_presentation(metagrp.validate(3, 2, 2, 0))
    assert parsed.generators == NU_GENERATORS
    assert parsed.relators == original.relators


def test_certify_small_group():
    result = certify_nu_order(metagrp.validate(3, 2, 2, 0))
    assert result.status == "PASS"
    assert result.predicted == 216
    assert result.enumerated == 216
    assert result.cosets_used == 559


def test_certify_inconclusive_on_tiny_table():
    result = certify_nu_order(metagrp.validate(3, 2, 2, 0), max_cosets=10)
    assert result.status == "INCONCLUSIVE"
    assert result.predicted == 216
    assert result.enumerated is None
    assert result.cosets_used == 10


def test_default_budget_is_generous():
    assert DEFAULT_MAX_COSETS >= 10**5
