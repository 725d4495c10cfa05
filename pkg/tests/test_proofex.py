import logging
import random

import pytest

from acmoves.certificate import check, replay
from acmoves.encode import goal_formula
from acmoves.presentation import (
    EXTENDED,
    MODIFIED12,
    PAPER_S2,
    RACT2,
    Conj,
    Inv,
    Mul,
    Presentation,
    ak,
    apply_move,
    trivial,
)
from acmoves.proofex import (
    ExtractionError,
    ProofParseError,
    certificate_from_chain,
    decode_atom,
    extract_certificate,
    extract_chain,
    infer_move,
    parse_proof,
)
from acmoves.search import scramble
from acmoves.word import Word, render_term, word_to_term

BANNER = "============================== PROOF =================================\n"
FOOTER = "============================== end of proof ==========================\n"


def atom(p):
    return "R(" + ",".join(render_term(word_to_term(r)) for r in p.relators) + ")"


def synthetic_proof(chain):
    """Proof text deriving ``chain[-1]`` from ``chain[0]`` one hyper step at a time."""
    lines = [BANNER, "1 -R(x,y) | R(x',y).  [assumption].\n"]
    lines.append(f"2 {goal_formula(chain[0], chain[-1])} # label(goal).  [goal].\n")
    lines.append(f"3 {atom(chain[0])}.  [deny(2)].\n")
    lines.append(f"4 -{atom(chain[-1])}.  [deny(2)].\n")
    prev = 3
    for k, p in enumerate(chain[1:], start=5):
        lines.append(f"{k} {atom(p)}.  [hyper(1,a,{prev},a)].\n")
        prev = k
    lines.append(f"{prev + 1} $F.  [resolve({prev},a,4,a)].\n")
    lines.append(FOOTER)
    return "".join(lines)


def test_synthetic_fixture(fixtures_dir):
    proof = parse_proof((fixtures_dir / "synthetic.proof").read_text())
    assert len(proof) == 12
    assert sum(1 for l in proof if l.kind == "atom") == 6
    assert proof[-1].kind == "refutation" and proof[-1].refs == (11, 6)
    cert = extract_certificate(proof, PAPER_S2)
    assert check(cert).ok
    assert cert.moves == (Inv(0), Conj(0, Word("a")), Mul(1, 0))


def test_single_line():
    text = BANNER + "12 R(a,b) # label(goal).  [hyper(3,a,9,a)].\n" + FOOTER
    (line,) = parse_proof(text)
    assert line.id == 12 and line.refs == (3, 9) and line.rule == "hyper"
    assert line.kind == "atom" and line.presentation == trivial(2)


def test_refs_parsing():
    text = BANNER + (
        "7 R(a,b).  [para(3(a,1),5(a,1,2)),rewrite([4(2),2(6)]),merge(1)].\n"
        "8 R(a,b).  [hyper(1,a,7,a),xx(1)].\n"
    ) + FOOTER
    a, b = parse_proof(text)
    assert a.refs == (3, 5, 4, 2)
    assert b.refs == (1, 7)


def test_no_banner():
    with pytest.raises(ProofParseError):
        parse_proof("1 R(a,b).  [assumption].\n")


def test_duplicate_ids():
    with pytest.raises(ProofParseError):
        parse_proof(BANNER + "1 R(a,b).  [assumption].\n1 R(a,b).  [assumption].\n")


def test_malformed_lines_are_skipped(caplog):
    text = BANNER + "this is not a clause\n1 R(a,b).  [assumption].\n" + FOOTER
    with caplog.at_level(logging.WARNING):
        lines = parse_proof(text)
    assert len(lines) == 1 and "malformed" in caplog.text
    with pytest.raises(ProofParseError):
        parse_proof(text, strict=True)


def test_decode_atom():
    assert decode_atom("R((a * b)',b)") == Presentation.of("BA", "b")
    assert decode_atom("R(e,b)") == Presentation.of("e", "b")
    assert decode_atom("R(x,b)") is None
    assert decode_atom("S(a,b)") is None
    assert decode_atom("R(a,b) -> R(b,a)") is None


def test_gap_is_broken_chain():
    chain = [ak(2), apply_move(ak(2), Inv(0))]
    text = synthetic_proof(chain).replace("hyper(1,a,3,a)", "hyper(1,a,99,a)")
    with pytest.raises(ExtractionError, match="broken chain"):
        extract_certificate(text, PAPER_S2)


def test_two_parents_is_broken_chain():
    chain = [ak(2), apply_move(ak(2), Inv(0))]
    text = synthetic_proof(chain).replace("[hyper(1,a,3,a)]", "[resolve(3,a,4,a)]")
    text = text.replace("resolve(5,a,4,a)", "resolve(5,a,3,a)")
    with pytest.raises(ExtractionError, match="broken chain"):
        extract_certificate(text, PAPER_S2)


def test_degenerate_goal():
    text = synthetic_proof([ak(2), ak(2)])
    chain = extract_chain(parse_proof(text), ak(2), ak(2))
    assert chain == [ak(2)]
    assert len(extract_certificate(text, PAPER_S2, ak(2), ak(2))) == 0


def test_fused_last_step():
    p = ak(2)
    q = apply_move(p, Inv(0))
    # the proof never states q positively; the refutation resolves p's successor rule with -R(q)
    text = BANNER + (
        "1 -R(x,y) | R(x',y).  [assumption].\n"
        f"2 {goal_formula(p, q)} # label(goal).  [goal].\n"
        f"3 {atom(p)}.  [deny(2)].\n"
        f"4 -{atom(q)}.  [deny(2)].\n"
        "5 $F.  [hyper(1,a,3,a),unit_del(a,4)].\n"
    ) + FOOTER
    cert = extract_certificate(text, PAPER_S2)
    assert cert.moves == (Inv(0),)


def test_infer_move_precedence():
    p = Presentation.of("ab", "ab")
    # Mul(0,1) and Conj could both explain some steps; the cheapest kind wins
    assert infer_move(p, apply_move(p, Inv(1)), EXTENDED) == Inv(1)
    q = Presentation.of("ab", "ba")
    assert infer_move(p, q, EXTENDED) == Conj(1, Word("A"))
    assert infer_move(p, q, MODIFIED12) == Conj(1, Word("A"))
    assert infer_move(Presentation.of("ab", "b"), Presentation.of("ba", "b"), RACT2) == Conj(0, Word("b"))
    with pytest.raises(ExtractionError):
        infer_move(p, Presentation.of("aa", "bb"), EXTENDED)
    with pytest.raises(ExtractionError):
        infer_move(p, Presentation.of("ab", "aab"), EXTENDED)


def test_bridge_closes_a_gap():
    p = ak(2)
    q = apply_move(apply_move(p, Inv(0)), Mul(0, 1))
    with pytest.raises(ExtractionError, match="gap"):
        certificate_from_chain([p, q], PAPER_S2)
    cert = certificate_from_chain([p, q], PAPER_S2, bridge=2)
    assert replay(cert).final == q


@pytest.mark.parametrize("family", [RACT2, PAPER_S2, MODIFIED12, EXTENDED])
def test_random_walk_proofs(family):
    for seed in range(20):
        end, walk = scramble(ak(2), family, 12, seed)
        chain = replay(walk).presentations
        text = synthetic_proof(chain)
        cert = extract_certificate(text, family)
        assert check(cert).ok
        assert replay(cert).final == end


def test_multi_letter_conjugation():
    p = ak(2)
    q = apply_move(p, Conj(0, Word("abA")))
    cert = extract_certificate(synthetic_proof([p, q]), EXTENDED)
    assert cert.moves == (Conj(0, Word("abA")),)


@pytest.mark.parametrize("family", [RACT2, PAPER_S2, MODIFIED12])
def test_infer_move_succeeds_for_every_family_move(family):
    rng = random.Random(3)
    for _ in range(30):
        p, _ = scramble(Presentation.of("abAAB", "bbaB"), family, rng.randint(0, 6), rng.randrange(10**6))
        for m in family.moves(2):
            q = apply_move(p, m)
            if q == p:
                continue
            inferred = infer_move(p, q, family)
            assert inferred in family
            assert apply_move(p, inferred) == q
