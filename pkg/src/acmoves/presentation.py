"""Balanced presentations and the elementary moves acting on them."""

from __future__ import annotations

import itertools
import re
from array import array
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence, Union

from .word import (
    Word,
    WordSyntaxError,
    concat,
    conjugate,
    cyclic_reduce,
    exponent_vector,
    invert,
    letter_key,
    parse_word,
    render_word,
)


class MoveError(ValueError):
    pass


class PresentationSyntaxError(ValueError):
    pass


@dataclass(frozen=True)
class Presentation:
    n: int
    relators: tuple

    def __post_init__(self):
        rels = tuple(r if isinstance(r, Word) else Word(r) for r in self.relators)
        for r in rels:
            for c in r:
                if abs(c) > self.n:
                    raise ValueError(f"relator {render_word(r)} uses a generator beyond n={self.n}")
        object.__setattr__(self, "relators", rels)

    @classmethod
    def of(cls, *relators: str, n: Optional[int] = None) -> "Presentation":
        n = len(relators) if n is None else n
        return cls(n, tuple(parse_word(r, n) for r in relators))

    @property
    def balanced(self) -> bool:
        return len(self.relators) == self.n

    @property
    def total_length(self) -> int:
        return sum(len(r) for r in self.relators)

    def __str__(self) -> str:
        return render_presentation(self)


def ak(n: int) -> Presentation:
    """Akbulut-Kirby presentation ``<a, b | a^n b^-(n+1), a b a b^-1 a^-1 b^-1>``."""
    if n < 2:
        raise ValueError("AK(n) is defined for n >= 2")
    return Presentation(2, (Word([1] * n + [-2] * (n + 1)), Word([1, 2, 1, -2, -1, -2])))


def shehper_p() -> Presentation:
    return Presentation.of("ABaBAbaBBabAb", "BAbbABabaBBa")


def trivial(n: int) -> Presentation:
    if n < 1:
        raise ValueError("trivial(n) needs n >= 1")
    return Presentation(n, tuple(Word([g + 1]) for g in range(n)))


# --- moves ---------------------------------------------------------------------


@dataclass(frozen=True)
class Inv:
    i: int


@dataclass(frozen=True)
class Mul:
    """``r_i := r_i r_j``"""

    i: int
    j: int


@dataclass(frozen=True)
class MulInv:
    """``r_i := r_i r_j^-1``"""

    i: int
    j: int


@dataclass(frozen=True)
class Conj:
    """``r_i := w r_i w^-1``"""

    i: int
    word: Word

    def __post_init__(self):
        if not isinstance(self.word, Word):
            object.__setattr__(self, "word", Word(self.word))


@dataclass(frozen=True)
class Aut:
    """Signed generator permutation; ``images[g]`` is the letter code for ``g``."""

    images: tuple

    @classmethod
    def swap(cls, g: int = 0, h: int = 1, n: int = 2) -> "Aut":
        images = list(range(1, n + 1))
        images[g], images[h] = images[h], images[g]
        return cls(tuple(images))

    def inverse(self) -> "Aut":
        inv = [0] * len(self.images)
        for g, img in enumerate(self.images):
            inv[abs(img) - 1] = (g + 1) if img > 0 else -(g + 1)
        return Aut(tuple(inv))


@dataclass(frozen=True)
class StabAdd:
    pass


@dataclass(frozen=True)
class StabRemove:
    pass


Move = Union[Inv, Mul, MulInv, Conj, Aut, StabAdd, StabRemove]

def move_kind(m: Move) -> str:
    return type(m).__name__


def _check_index(p: Presentation, i: int) -> None:
    if not 0 <= i < len(p.relators):
        raise MoveError(f"relator index {i} out of range (have {len(p.relators)})")


def _replace(p: Presentation, i: int, w: Word) -> Presentation:
    rels = list(p.relators)
    rels[i] = w
    return Presentation(p.n, tuple(rels))


def _check_aut(images: Sequence[int], n: int) -> None:
    if len(images) != n or sorted(abs(c) for c in images) != list(range(1, n + 1)):
        raise MoveError(f"automorphism {images!r} is not a signed permutation of {n} generators")


def apply_move(p: Presentation, m: Move) -> Presentation:
    if isinstance(m, Inv):
        _check_index(p, m.i)
        return _replace(p, m.i, invert(p.relators[m.i]))
    if isinstance(m, (Mul, MulInv)):
        _check_index(p, m.i)
        _check_index(p, m.j)
        if m.i == m.j:
            raise MoveError("multiplication needs two distinct relators")
        rj = p.relators[m.j]
        return _replace(p, m.i, concat(p.relators[m.i], rj if isinstance(m, Mul) else invert(rj)))
    if isinstance(m, Conj):
        _check_index(p, m.i)
        if any(abs(c) > p.n for c in m.word):
            raise MoveError(f"conjugator {m.word} uses a generator beyond n={p.n}")
        return _replace(p, m.i, conjugate(p.relators[m.i], m.word))
    if isinstance(m, Aut):
        _check_aut(m.images, p.n)
        rels = tuple(
            Word(m.images[abs(c) - 1] * (1 if c > 0 else -1) for c in r) for r in p.relators
        )
        return Presentation(p.n, rels)
    if isinstance(m, StabAdd):
        return Presentation(p.n + 1, p.relators + (Word([p.n + 1]),))
    if isinstance(m, StabRemove):
        if not p.relators or p.relators[-1] != (p.n,):
            raise MoveError("last relator is not the last generator")
        if any(abs(c) == p.n for r in p.relators[:-1] for c in r):
            raise MoveError("last generator still occurs in another relator")
        return Presentation(p.n - 1, p.relators[:-1])
    raise TypeError(f"not a move: {m!r}")


def inverse_move(m: Move, p_before: Optional[Presentation] = None) -> Move:
    """Move undoing ``m``; validated against ``p_before`` when given."""
    if p_before is not None:
        apply_move(p_before, m)
    if isinstance(m, Inv):
        return m
    if isinstance(m, Mul):
        return MulInv(m.i, m.j)
    if isinstance(m, MulInv):
        return Mul(m.i, m.j)
    if isinstance(m, Conj):
        return Conj(m.i, invert(m.word))
    if isinstance(m, Aut):
        _check_aut(m.images, len(m.images))
        return m.inverse()
    if isinstance(m, StabAdd):
        return StabRemove()
    if isinstance(m, StabRemove):
        return StabAdd()
    raise TypeError(f"not a move: {m!r}")


# --- move families -------------------------------------------------------------


def _signed_letters(n: int, positive_only: bool = False) -> list:
    codes = [c for g in range(1, n + 1) for c in (g, -g)]
    if positive_only:
        codes = [c for c in codes if c > 0]
    return sorted(codes, key=letter_key)


def _signed_perms(n: int) -> list:
    out = []
    for perm in itertools.permutations(range(1, n + 1)):
        for signs in itertools.product((1, -1), repeat=n):
            images = tuple(s * g for s, g in zip(signs, perm))
            if images != tuple(range(1, n + 1)):
                out.append(Aut(images))
    return out


@dataclass(frozen=True)
class MoveFamily:
    """A named set of moves plus the finite part of it used for enumeration.

    ``allows`` decides membership for replay and inference; ``enumerate``
    lists the moves proposed at a given generator count, in the fixed order
    kind, indices, conjugator letter.
    """

    name: str
    allows: Callable[[Move], bool] = field(repr=False, compare=False)
    enumerate: Callable[[int], list] = field(repr=False, compare=False)

    def __contains__(self, m: Move) -> bool:
        return self.allows(m)

    def moves(self, n: int) -> list:
        return _enumeration_cache(self.name, n)


def _single_letter(m: Conj, positive_only: bool) -> bool:
    return len(m.word) == 1 and (m.word[0] > 0 or not positive_only)


def _pairs(n: int) -> list:
    return [(i, j) for i in range(n) for j in range(n) if i != j]


def _ract2_allows(m):
    if isinstance(m, Inv):
        return m.i == 0
    if isinstance(m, Mul):
        return True
    if isinstance(m, Conj):
        return m.i == 0 and _single_letter(m, positive_only=True)
    return False


def _ract2_enum(n):
    return (
        [Inv(0)]
        + [Mul(i, j) for i, j in _pairs(n)]
        + [Conj(0, Word([c])) for c in _signed_letters(n, positive_only=True)]
    )


def _full_allows(m):
    if isinstance(m, (Inv, Mul)):
        return True
    return isinstance(m, Conj) and _single_letter(m, positive_only=True)


def _full_enum(n):
    return (
        [Inv(i) for i in range(n)]
        + [Mul(i, j) for i, j in _pairs(n)]
        + [Conj(i, Word([c])) for i in range(n) for c in _signed_letters(n, positive_only=True)]
    )


def _paper_s2_allows(m):
    if isinstance(m, Inv):
        return m.i == 0
    if isinstance(m, Conj):
        return m.i == 0
    return isinstance(m, Mul)


def _paper_s2_enum(n):
    return (
        [Inv(0)]
        + [Mul(i, j) for i, j in _pairs(n)]
        + [Conj(0, Word([c])) for c in _signed_letters(n)]
    )


def _modified_allows(m):
    if isinstance(m, (Mul, MulInv)):
        return True
    return isinstance(m, Conj) and _single_letter(m, positive_only=False)


def _modified_enum(n):
    return (
        [Mul(i, j) for i, j in _pairs(n)]
        + [MulInv(i, j) for i, j in _pairs(n)]
        + [Conj(i, Word([c])) for i in range(n) for c in _signed_letters(n)]
    )


def _extended_allows(m):
    return isinstance(m, (Inv, Mul, MulInv, Conj, Aut))


def _extended_enum(n):
    return (
        [Inv(i) for i in range(n)]
        + [Mul(i, j) for i, j in _pairs(n)]
        + [MulInv(i, j) for i, j in _pairs(n)]
        + [Conj(i, Word([c])) for i in range(n) for c in _signed_letters(n)]
        + _signed_perms(n)
    )


RACT2 = MoveFamily("RACT2", _ract2_allows, _ract2_enum)
FULL_ACT2 = MoveFamily("FULL_ACT2", _full_allows, _full_enum)
PAPER_S2 = MoveFamily("PAPER_S2", _paper_s2_allows, _paper_s2_enum)
EXTENDED = MoveFamily("EXTENDED", _extended_allows, _extended_enum)
MODIFIED12 = MoveFamily("MODIFIED12", _modified_allows, _modified_enum)
# stabilisations are checkable but never enumerated
STABLE = MoveFamily("STABLE", lambda m: True, _extended_enum)

FAMILIES = {f.name: f for f in (RACT2, FULL_ACT2, PAPER_S2, EXTENDED, MODIFIED12, STABLE)}

_enum_cache: dict = {}


def _enumeration_cache(name: str, n: int) -> list:
    key = (name, n)
    if key not in _enum_cache:
        _enum_cache[key] = FAMILIES[name].enumerate(n)
    return _enum_cache[key]


def get_family(name: str) -> MoveFamily:
    try:
        return FAMILIES[name.upper().replace("-", "_")]
    except KeyError:
        raise ValueError(f"unknown move family {name!r}; choose from {', '.join(FAMILIES)}") from None


def neighbors(p: Presentation, family: MoveFamily, max_relator_len: Optional[int] = None) -> list:
    out = []
    for m in family.moves(p.n):
        q = apply_move(p, m)
        if max_relator_len is not None and any(len(r) > max_relator_len for r in q.relators):
            continue
        out.append((m, q))
    return out


# --- invariants ----------------------------------------------------------------


def _min_rotation(w: Word) -> tuple:
    if not w:
        return ()
    rots = [tuple(w[k:]) + tuple(w[:k]) for k in range(len(w))]
    return min(rots, key=lambda r: [letter_key(c) for c in r])


def canonical_key(p: Presentation, mode: str = "exact") -> bytes:
    """Injective byte encoding of ``p``.

    ``mode="cyclic"`` replaces every relator by the least rotation of its
    cyclic reduction first; that identifies presentations a path may still
    distinguish, so it only suits coarse deduplication.
    """
    if mode == "exact":
        rels = [tuple(r) for r in p.relators]
    elif mode == "cyclic":
        rels = [_min_rotation(cyclic_reduce(r)[0]) for r in p.relators]
    else:
        raise ValueError(f"unknown key mode {mode!r}")
    buf = array("i", [p.n, len(rels)])
    for r in rels:
        buf.append(len(r))
        buf.extend(r)
    return buf.tobytes()


def exponent_matrix(p: Presentation) -> list:
    return [list(exponent_vector(r, p.n)) for r in p.relators]


def integer_det(matrix: Sequence[Sequence[int]]) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    a = [list(row) for row in matrix]
    n = len(a)
    if any(len(row) != n for row in a):
        raise ValueError("determinant of a non-square matrix")
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for r in range(k + 1, n):
                if a[r][k] != 0:
                    a[k], a[r] = a[r], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def abs_det(p: Presentation) -> int:
    if not p.balanced:
        raise ValueError("abs_det needs a balanced presentation")
    return abs(integer_det(exponent_matrix(p)))


# --- text format ---------------------------------------------------------------

_BUILTIN = re.compile(r"^\s*(?:(AK)\s*\(\s*(\d+)\s*\)|(T)\s*\(\s*(\d+)\s*\)|(P))\s*$")


def render_relators(p: Presentation) -> str:
    return ", ".join(render_word(r, p.n) for r in p.relators)


def render_presentation(p: Presentation) -> str:
    return f"{p.n} | {render_relators(p)}"


def parse_relators(text: str, n: int) -> tuple:
    parts = [s.strip() for s in text.split(",")]
    if parts == [""]:
        return ()
    try:
        return tuple(parse_word(s, n) for s in parts)
    except WordSyntaxError as exc:
        raise PresentationSyntaxError(str(exc)) from None


def parse_presentation(text: str) -> Presentation:
    """Parse ``"<gens> | r1, r2, ..."`` or one of ``AK(n)``, ``P``, ``T(n)``."""
    m = _BUILTIN.match(text)
    if m:
        if m.group(1):
            return ak(int(m.group(2)))
        if m.group(3):
            return trivial(int(m.group(4)))
        return shehper_p()
    head, sep, tail = text.partition("|")
    if not sep:
        raise PresentationSyntaxError(f"expected '<gens> | <relators>', got {text.strip()!r}")
    try:
        n = int(head.strip())
    except ValueError:
        raise PresentationSyntaxError(f"bad generator count {head.strip()!r}") from None
    if not 1 <= n:
        raise PresentationSyntaxError("generator count must be positive")
    return Presentation(n, parse_relators(tail, n))
