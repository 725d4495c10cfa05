"""Emit first-order proving tasks for AC-reachability in Prover9 syntax.

A presentation with relators ``t1, ..., tn`` becomes the atom ``R(t1,...,tn)``.
Each move schema becomes an implication ``R(x,y) -> R(x',y)`` etc., and the
task asks for ``R(start) -> R(target)`` from the group axioms plus those
implications.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .presentation import MODIFIED12, Conj, Inv, Move, Mul, MulInv, Presentation
from .word import MAX_TERM_GENERATORS, GroupTerm, Inverse, Product, Var, Word, render_term, word_to_term

GROUP_AXIOMS = (
    "(x * y) * z = x * (y * z).",
    "x * e = x.",
    "e * x = x.",
    "x * x' = e.",
    "x' * x = e.",
)


class Translation(enum.Enum):
    GROUND = "ground"
    NONGROUND = "nonground"
    MODIFIED12 = "modified"

    @classmethod
    def parse(cls, name: str) -> "Translation":
        key = name.strip().lower().replace("_", "")
        aliases = {"ground": cls.GROUND, "nonground": cls.NONGROUND, "non-ground": cls.NONGROUND,
                   "modified": cls.MODIFIED12, "modified12": cls.MODIFIED12}
        if key not in aliases:
            raise ValueError(f"unknown translation {name!r}")
        return aliases[key]


class EncodeError(ValueError):
    pass


@dataclass(frozen=True)
class ProverTask:
    kind: Translation
    n: int
    source: Presentation
    target: Presentation
    assumptions: tuple
    goal: str

    @property
    def text(self) -> str:
        """Input file with ``formulas(...)`` wrappers."""
        lines = ["formulas(assumptions).", *self.assumptions, "end_of_list.", "",
                 "formulas(goals).", self.goal + ".", "end_of_list."]
        return "\n".join(lines) + "\n"

    @property
    def raw(self) -> str:
        """The bare ``Assumptions:`` / ``Goal:`` blocks."""
        return "\n".join(["Assumptions:", *self.assumptions, "Goal:", self.goal]) + "\n"


def group_axioms(n: int = 2) -> list:
    return list(GROUP_AXIOMS)


def _variables(n: int) -> list:
    return ["x", "y"] if n == 2 else [f"x{i + 1}" for i in range(n)]


def _atom(args) -> str:
    return "R(" + ",".join(render_term(t) for t in args) + ")"


def rule_axiom(move: Move, n: int, conjugator: GroupTerm = None) -> str:
    """Implication encoding one move schema over variable relators."""
    args = [Var(v) for v in _variables(n)]
    new = list(args)
    if isinstance(move, Inv):
        new[move.i] = Inverse(args[move.i])
    elif isinstance(move, Mul):
        new[move.i] = Product(args[move.i], args[move.j])
    elif isinstance(move, MulInv):
        new[move.i] = Product(args[move.i], Inverse(args[move.j]))
    elif isinstance(move, Conj):
        if conjugator is None:
            left, right = word_to_term(move.word), word_to_term(~move.word)
        else:
            left, right = conjugator, Inverse(conjugator)
        new[move.i] = Product(Product(left, args[move.i]), right)
    else:
        raise EncodeError(f"no rule encoding for {move!r}")
    return f"{_atom(args)} -> {_atom(new)}."


def _rule_moves(kind: Translation, n: int) -> list:
    if kind is Translation.MODIFIED12:
        return MODIFIED12.moves(n)
    if n == 2:
        # inversion, then right and left multiplication, then conjugation
        moves = [Inv(0), Mul(1, 0), Mul(0, 1)]
        conj_at = [0]
    else:
        moves = [Inv(i) for i in range(n)]
        moves += [Mul(i, j) for i in reversed(range(n)) for j in range(n) if i != j]
        conj_at = list(range(n))
    if kind is Translation.GROUND:
        moves += [Conj(i, Word([g + 1])) for i in conj_at for g in range(n)]
    else:
        moves += [Conj(i, Word()) for i in conj_at]
    return moves


def rule_axioms(kind: Translation, n: int = 2) -> list:
    out = []
    for m in _rule_moves(kind, n):
        if kind is Translation.NONGROUND and isinstance(m, Conj):
            out.append(rule_axiom(m, n, conjugator=Var("z")))
        else:
            out.append(rule_axiom(m, n))
    return out


def goal_formula(source: Presentation, target: Presentation, style: str = "prover") -> str:
    lhs = ",".join(render_term(word_to_term(r), style) for r in source.relators)
    rhs = ",".join(render_term(word_to_term(r), style) for r in target.relators)
    arrow = "→" if style == "math" else "->"
    return f"R({lhs}) {arrow} R({rhs})"


def emit_task(source: Presentation, target: Presentation, kind=Translation.NONGROUND) -> ProverTask:
    if isinstance(kind, str):
        kind = Translation.parse(kind)
    if source.n != target.n or len(source.relators) != len(target.relators):
        raise EncodeError(f"dimension mismatch: {source.n} vs {target.n} generators")
    if not source.balanced or not target.balanced:
        raise EncodeError("both presentations must be balanced")
    n = source.n
    if kind is Translation.MODIFIED12 and n != 2:
        raise EncodeError("the modified translation is defined for two generators only")
    if n < 2 or n > MAX_TERM_GENERATORS:
        raise EncodeError(f"term syntax supports 2..{MAX_TERM_GENERATORS} generators, got {n}")
    assumptions = tuple(group_axioms(n)) + tuple(rule_axioms(kind, n))
    return ProverTask(kind, n, source, target, assumptions, goal_formula(source, target))
