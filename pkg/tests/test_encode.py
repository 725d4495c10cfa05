import re

import pytest

from acmoves.encode import (
    GROUP_AXIOMS,
    EncodeError,
    Translation,
    emit_task,
    goal_formula,
    rule_axiom,
    rule_axioms,
)
from acmoves.presentation import Conj, Inv, Mul, MulInv, Presentation, ak, shehper_p, trivial
from acmoves.proofex import decode_atom
from acmoves.word import Word


def test_nonground_rules_n2():
    assert rule_axioms(Translation.NONGROUND) == [
        "R(x,y) -> R(x',y).",
        "R(x,y) -> R(x,y * x).",
        "R(x,y) -> R(x * y,y).",
        "R(x,y) -> R((z * x) * z',y).",
    ]


def test_ground_rules_n2():
    assert rule_axioms(Translation.GROUND)[3:] == [
        "R(x,y) -> R((a * x) * a',y).",
        "R(x,y) -> R((b * x) * b',y).",
    ]


def test_modified_rules():
    axioms = rule_axioms(Translation.MODIFIED12)
    assert len(axioms) == len(set(axioms)) == 12
    assert "R(x,y) -> R(x * y',y)." in axioms
    assert "R(x,y) -> R(x,(b' * y) * b)." in axioms
    assert not any("R(x',y)" in a for a in axioms)


def test_rule_axiom_variants():
    assert rule_axiom(MulInv(1, 0), 2) == "R(x,y) -> R(x,y * x')."
    assert rule_axiom(Inv(2), 3) == "R(x1,x2,x3) -> R(x1,x2,x3')."
    assert rule_axiom(Conj(0, Word("aB")), 2) == "R(x,y) -> R(((a * b') * x) * (b * a'),y)."


def test_higher_rank_rules():
    rules = rule_axioms(Translation.NONGROUND, 3)
    assert len(rules) == 3 + 6 + 3
    assert all(r.startswith("R(x1,x2,x3) -> ") for r in rules)


def test_goal_formula_styles():
    assert goal_formula(trivial(2), trivial(2)) == "R(a,b) -> R(a,b)"
    assert goal_formula(Presentation.of("aB", "e"), trivial(2), "math") == "R(a·r(b),e) → R(a,b)"


def test_task_layout():
    task = emit_task(shehper_p(), ak(3))
    assert task.text.startswith("formulas(assumptions).\n")
    assert task.text.rstrip().endswith("end_of_list.")
    assert task.goal + "." in task.text
    for ax in GROUP_AXIOMS:
        assert ax in task.text and ax in task.raw
    assert task.raw.splitlines()[0] == "Assumptions:"
    assert task.raw.splitlines()[-1] == task.goal


def test_goal_decodes_back():
    task = emit_task(shehper_p(), ak(3))
    lhs, rhs = task.goal.split(" -> ")
    assert decode_atom(lhs) == shehper_p()
    assert decode_atom(rhs) == ak(3)


def test_emit_task_errors():
    with pytest.raises(EncodeError):
        emit_task(ak(3), trivial(3))
    with pytest.raises(EncodeError):
        emit_task(trivial(3), trivial(3), Translation.MODIFIED12)
    with pytest.raises(EncodeError):
        emit_task(trivial(5), trivial(5))
    with pytest.raises(EncodeError):
        emit_task(Presentation(2, (Word("a"),)), Presentation(2, (Word("b"),)))
    with pytest.raises(ValueError):
        Translation.parse("bogus")
    assert emit_task(ak(2), trivial(2), "ground").kind is Translation.GROUND


def test_prover_syntax_is_balanced():
    for kind in Translation:
        task = emit_task(ak(3), trivial(2), kind)
        for line in task.text.splitlines():
            assert line.count("(") == line.count(")")
            assert not re.search(r"\s,|,\s", line.split(" -> ")[0]) or "=" in line


def test_emission_is_deterministic():
    for kind in Translation:
        a = emit_task(ak(3), trivial(2), kind)
        b = emit_task(ak(3), trivial(2), kind)
        assert a.text.encode() == b.text.encode() and a.raw == b.raw


@pytest.mark.parametrize("kind", [Translation.GROUND, Translation.MODIFIED12])
def test_goal_constants_occur_in_rules(kind):
    task = emit_task(shehper_p(), ak(3), kind)
    constants = set(re.findall(r"\b[a-d]\b", task.goal))
    rules = " ".join(rule_axioms(kind))
    for c in constants:
        assert re.search(rf"\b{c}\b", rules)


def test_identity_only_for_empty_relators():
    assert not re.search(r"\be\b", emit_task(shehper_p(), ak(3)).goal)
    goal = emit_task(Presentation.of("e", "b"), trivial(2)).goal
    assert goal.startswith("R(e,b)")


def test_goal_terms_are_left_associated():
    goal = emit_task(shehper_p(), ak(3)).goal
    # no right-nested product such as "x * (y * z)"
    assert not re.search(r"\* \(", goal)
