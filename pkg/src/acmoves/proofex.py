"""Turn a Prover9 refutation into a replayable certificate.

The proof section is read clause by clause.  Positive ground atoms
``R(t1,...,tn)`` are decoded into presentations; everything else is kept as
opaque text with its justification.  The chain of presentations is recovered
by walking backwards from ``$F`` through the single R-atom parent of each
R-atom, and consecutive presentations are then explained by one elementary
move each.
"""

from __future__ import annotations

import logging
import re
from collections import deque
from dataclasses import dataclass
from typing import Optional

from .certificate import Certificate
from .presentation import (
    Aut,
    Conj,
    Inv,
    MoveFamily,
    Mul,
    MulInv,
    Presentation,
    apply_move,
    canonical_key,
    neighbors,
)
from .word import TermSyntaxError, find_conjugator, invert, letter_key, parse_term, term_to_word, Word

log = logging.getLogger(__name__)

_BEGIN = re.compile(r"^=+\s*PROOF\s*=+\s*$")
_END = re.compile(r"^=+\s*end of proof\s*=+\s*$")
_CLAUSE = re.compile(r"^(\d+)\s+(.*?)\.\s+\[(.*)\]\.\s*$")
_NO_REFS = {"merge", "flip", "xx"}


class ProofParseError(ValueError):
    pass


class ExtractionError(ValueError):
    pass


@dataclass(frozen=True)
class ProofLine:
    id: int
    formula: str
    justification: str
    refs: tuple
    rule: str
    kind: str = "opaque"  # "atom", "negated_atom", "refutation" or "opaque"
    presentation: Optional[Presentation] = None


def _split_args(text: str) -> Optional[list]:
    parts, depth, cur = [], 0, []
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
            if depth < 0:
                return None
        if ch == "," and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    if depth != 0:
        return None
    parts.append("".join(cur))
    return parts


def decode_atom(formula: str) -> Optional[Presentation]:
    """Presentation named by a ground atom ``R(t1,...,tn)``, else ``None``."""
    f = formula.strip()
    if not (f.startswith("R(") and f.endswith(")")):
        return None
    args = _split_args(f[2:-1])
    if not args:
        return None
    try:
        words = tuple(term_to_word(parse_term(a)) for a in args)
        return Presentation(len(words), words)
    except (TermSyntaxError, ValueError):
        return None


def _refs(justification: str) -> tuple:
    """Clause ids cited by a justification such as ``hyper(4,a,5,a),rewrite([3(2)])``."""
    refs = []
    for step in re.finditer(r"([A-Za-z_]+)\((.*?)\)(?=,[A-Za-z_]|$)", justification):
        name, body = step.group(1), step.group(2)
        if name in _NO_REFS:
            continue
        depth = 0
        for tok in re.finditer(r"\d+|[()]", body):
            t = tok.group()
            if t == "(":
                depth += 1
            elif t == ")":
                depth -= 1
            elif depth == 0:
                refs.append(int(t))
    return tuple(dict.fromkeys(refs))


def _strip_attributes(formula: str) -> str:
    return formula.split(" # ", 1)[0].strip()


def _classify(formula: str):
    f = _strip_attributes(formula)
    if f == "$F":
        return "refutation", None
    if f.startswith("-R("):
        p = decode_atom(f[1:])
        return ("negated_atom", p) if p is not None else ("opaque", None)
    p = decode_atom(f)
    return ("atom", p) if p is not None else ("opaque", None)


def parse_proof(text: str, strict: bool = False) -> list:
    """Parse the first ``PROOF`` section of Prover9 output into ``ProofLine`` records."""
    lines = text.splitlines()
    start = next((k for k, l in enumerate(lines) if _BEGIN.match(l.strip())), None)
    if start is None:
        raise ProofParseError("no proof section found")
    out: list = []
    seen: set = set()
    for lineno in range(start + 1, len(lines)):
        raw = lines[lineno].strip()
        if _END.match(raw):
            break
        if not raw or raw.startswith("%"):
            continue
        m = _CLAUSE.match(raw)
        if not m:
            msg = f"line {lineno + 1}: malformed clause line {raw[:60]!r}"
            if strict:
                raise ProofParseError(msg)
            log.warning(msg)
            continue
        cid = int(m.group(1))
        if cid in seen:
            raise ProofParseError(f"line {lineno + 1}: duplicate clause id {cid}")
        seen.add(cid)
        just = m.group(3)
        kind, pres = _classify(m.group(2))
        out.append(ProofLine(
            id=cid,
            formula=m.group(2),
            justification=just,
            refs=_refs(just),
            rule=just.split("(", 1)[0],
            kind=kind,
            presentation=pres,
        ))
    return out


def goal_endpoints(proof: list) -> tuple:
    """``(start, end)`` read from the denied goal, either may be ``None``."""
    start = end = None
    for line in proof:
        f = _strip_attributes(line.formula)
        if "->" in f and line.rule == "goal":
            lhs, _, rhs = f.partition("->")
            start, end = decode_atom(lhs), decode_atom(rhs)
    if end is None:
        end = next((l.presentation for l in proof if l.kind == "negated_atom"), None)
    return start, end


def extract_chain(proof: list, start: Optional[Presentation] = None,
                  end: Optional[Presentation] = None) -> list:
    """Presentations from ``start`` to ``end`` along the refutation's R-atom ancestry."""
    by_id = {l.id: l for l in proof}
    if start is None or end is None:
        s, e = goal_endpoints(proof)
        start = start if start is not None else s
        end = end if end is not None else e

    def r_parents(line):
        parents = []
        for r in line.refs:
            if r not in by_id:
                raise ExtractionError(f"clause {line.id} cites missing clause {r}: broken chain")
            if by_id[r].kind == "atom":
                parents.append(by_id[r])
        return parents

    if start is not None and end is not None and start == end:
        if any(l.kind == "atom" and l.presentation == start for l in proof):
            return [start]
    refutation = next((l for l in reversed(proof) if l.kind == "refutation"), None)
    if refutation is None:
        raise ExtractionError("proof has no $F line")
    parents = r_parents(refutation)
    if len(parents) != 1:
        ids = [p.id for p in parents]
        raise ExtractionError(f"refutation {refutation.id} has {len(parents)} R-atom parents {ids}: broken chain")
    chain = []
    cur = parents[0]
    visited = set()
    while True:
        if cur.id in visited:
            raise ExtractionError(f"cyclic justification at clause {cur.id}")
        visited.add(cur.id)
        chain.append(cur.presentation)
        ps = r_parents(cur)
        if not ps:
            break
        if len(ps) > 1:
            raise ExtractionError(f"clause {cur.id} has {len(ps)} R-atom parents {[p.id for p in ps]}: broken chain")
        cur = ps[0]
    chain.reverse()
    if start is not None and chain[0] != start:
        raise ExtractionError(f"chain starts at {chain[0]} (clause {cur.id}), not at {start}: broken chain")
    if end is not None and chain[-1] != end:
        # the last step may be fused into the refutation itself
        if any(r in by_id and by_id[r].kind == "negated_atom" and by_id[r].presentation == end
               for r in refutation.refs):
            chain.append(end)
        else:
            raise ExtractionError(f"chain ends at {chain[-1]}, not at the goal {end}")
    deduped = [chain[0]]
    for p in chain[1:]:
        if p != deduped[-1]:
            deduped.append(p)
    return deduped


def infer_move(p: Presentation, q: Presentation, family: MoveFamily):
    """The lowest-precedence move of ``family`` taking ``p`` to ``q``.

    Precedence is inversion, multiplication, multiplication by an inverse,
    conjugation, and last a generator automorphism.
    """
    if p.n != q.n or len(p.relators) != len(q.relators):
        raise ExtractionError(f"cannot relate {p} and {q}: dimensions differ")
    diff = [i for i, (a, b) in enumerate(zip(p.relators, q.relators)) if a != b]
    if len(diff) != 1:
        m = _infer_aut(p, q, family)
        if m is None:
            raise ExtractionError(f"{len(diff)} relators differ between {p} and {q}")
        return m
    i = diff[0]
    others = [j for j in range(len(p.relators)) if j != i]
    candidates = [Inv(i)] + [Mul(i, j) for j in others] + [MulInv(i, j) for j in others]
    for m in candidates:
        if m in family and apply_move(p, m) == q:
            return m
    # single-letter conjugators first, in letter order, then the shortest witness
    letters = sorted([c for g in range(1, p.n + 1) for c in (g, -g)], key=letter_key)
    for c in letters:
        m = Conj(i, Word([c]))
        if m in family and apply_move(p, m) == q:
            return m
    w = find_conjugator(p.relators[i], q.relators[i])
    if w is not None and Conj(i, w) in family:
        return Conj(i, w)
    m = _infer_aut(p, q, family)
    if m is not None:
        return m
    raise ExtractionError(f"no {family.name} move takes {p} to {q}")


def _infer_aut(p: Presentation, q: Presentation, family: MoveFamily):
    for m in family.moves(p.n):
        if isinstance(m, Aut) and apply_move(p, m) == q:
            return m
    return None


def _bridge(p: Presentation, q: Presentation, family: MoveFamily, depth: int) -> Optional[list]:
    target = canonical_key(q)
    parent = {canonical_key(p): None}
    frontier = deque([(p, 0)])
    while frontier:
        cur, d = frontier.popleft()
        if d == depth:
            continue
        for m, nxt in neighbors(cur, family):
            key = canonical_key(nxt)
            if key in parent:
                continue
            parent[key] = (canonical_key(cur), m)
            if key == target:
                path = []
                while parent[key] is not None:
                    key, mv = parent[key]
                    path.append(mv)
                return path[::-1]
            frontier.append((nxt, d + 1))
    return None


def certificate_from_chain(chain: list, family: MoveFamily, bridge: int = 0) -> Certificate:
    moves = []
    for k, (p, q) in enumerate(zip(chain, chain[1:]), start=1):
        if p == q:
            continue
        try:
            moves.append(infer_move(p, q, family))
        except ExtractionError as exc:
            path = _bridge(p, q, family, bridge) if bridge > 0 else None
            if path is None:
                raise ExtractionError(f"gap between chain steps {k - 1} and {k}: {exc}") from None
            moves.extend(path)
    return Certificate(chain[0], tuple(moves), chain[-1], family.name)


def extract_certificate(proof, family: MoveFamily, start: Optional[Presentation] = None,
                        end: Optional[Presentation] = None, bridge: int = 0) -> Certificate:
    """Certificate reproducing the proof's chain.  ``proof`` may be text or parsed lines."""
    if isinstance(proof, str):
        proof = parse_proof(proof)
    chain = extract_chain(proof, start, end)
    return certificate_from_chain(chain, family, bridge)
