"""Free-group words and the ground group terms they correspond to.

Letters are stored as nonzero integers: ``+(g + 1)`` is generator ``g`` and
``-(g + 1)`` its inverse.  In text, generators are ``a, b, c, ...`` and their
inverses ``A, B, C, ...``; the empty word is spelled ``e`` (or ``1``).

Group terms use the prover syntax: infix ``*``, postfix ``'`` for inverse
and the constant ``e`` for the identity.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, NamedTuple, Optional, Union

MAX_LETTER_GENERATORS = 26
# the term syntax reserves ``e`` for the identity, so only a..d are generators
MAX_TERM_GENERATORS = 4

IDENTITY_SPELLING = "e"


class WordSyntaxError(ValueError):
    pass


class TermSyntaxError(ValueError):
    pass


class Letter(NamedTuple):
    generator_index: int
    sign: int

    @property
    def code(self) -> int:
        return self.sign * (self.generator_index + 1)

    @classmethod
    def from_code(cls, code: int) -> "Letter":
        return cls(abs(code) - 1, 1 if code > 0 else -1)


def _code(item) -> int:
    if isinstance(item, Letter):
        return item.code
    code = int(item)
    if code == 0:
        raise ValueError("letter code 0 is not a letter")
    return code


def _reduce(raw: Iterable) -> list:
    out: list = []
    for item in raw:
        c = _code(item)
        if out and out[-1] == -c:
            out.pop()
        else:
            out.append(c)
    return out


class Word(tuple):
    """An element of a free group, always held in freely reduced form."""

    __slots__ = ()

    def __new__(cls, letters: Iterable = ()):
        if isinstance(letters, str):
            return parse_word(letters)
        return super().__new__(cls, _reduce(letters))

    def __str__(self) -> str:
        return render_word(self)

    def __repr__(self) -> str:
        return f"Word({render_word(self)!r})"

    def __mul__(self, other):
        return concat(self, other)

    def __invert__(self):
        return invert(self)

    def letters(self) -> tuple:
        return tuple(Letter.from_code(c) for c in self)


EMPTY = Word()


def free_reduce(raw: Iterable) -> Word:
    """Cancel adjacent ``x x^-1`` pairs until none remain."""
    return Word(raw)


def invert(w: Word) -> Word:
    return tuple.__new__(Word, [-c for c in reversed(w)])


def concat(u: Word, v: Word) -> Word:
    # only the junction can cancel when both inputs are reduced
    k = 0
    m = min(len(u), len(v))
    while k < m and u[-1 - k] == -v[k]:
        k += 1
    return tuple.__new__(Word, u[: len(u) - k] + v[k:])


def conjugate(w: Word, u: Word) -> Word:
    """Return ``u w u^-1``."""
    return concat(concat(u, w), invert(u))


def cyclic_reduce(w: Word) -> tuple:
    """Split ``w`` as ``u core u^-1`` with ``core`` cyclically reduced.

    Returns ``(core, u)``.
    """
    i, j = 0, len(w) - 1
    while i < j and w[i] == -w[j]:
        i += 1
        j -= 1
    core = tuple.__new__(Word, w[i : j + 1])
    return core, tuple.__new__(Word, w[:i])


def letter_key(code: int) -> tuple:
    # a < A < b < B < ...
    return (abs(code), code < 0)


def shortlex_key(w: Word) -> tuple:
    return (len(w), tuple(letter_key(c) for c in w))


def _primitive_root(c: Word) -> Word:
    n = len(c)
    for d in range(1, n + 1):
        if n % d == 0 and c[:d] * (n // d) == tuple(c):
            return tuple.__new__(Word, c[:d])
    return c


def find_conjugator(p: Word, q: Word) -> Optional[Word]:
    """Return the shortest ``w`` with ``w p w^-1 = q``, or ``None``.

    Ties between equally short witnesses are broken lexicographically with
    the letter order ``a < A < b < B < ...``.
    """
    p, q = Word(p), Word(q)
    if not p or not q:
        return EMPTY if not p and not q else None
    c1, u1 = cyclic_reduce(p)
    c2, u2 = cyclic_reduce(q)
    if len(c1) != len(c2):
        return None
    doubled = tuple(c1) * 2
    n = len(c1)
    shift = None
    for k in range(n):
        if doubled[k : k + n] == tuple(c2):
            shift = k
            break
    if shift is None:
        return None
    # c2 = x^-1 c1 x where x is the first `shift` letters of c1
    x = tuple.__new__(Word, c1[:shift])
    w0 = concat(concat(u2, invert(x)), invert(u1))
    # every witness is w0 * root^j for the root of p
    root = conjugate(_primitive_root(c1), u1)
    span = 2 * len(w0) // len(_primitive_root(c1)) + 2
    best = w0
    power = EMPTY
    for _ in range(span):
        power = concat(power, root)
    cand = concat(w0, invert(power))
    for _ in range(2 * span + 1):
        if shortlex_key(cand) < shortlex_key(best):
            best = cand
        cand = concat(cand, root)
    return best


def exponent_vector(w: Word, n: int) -> tuple:
    counts = [0] * n
    for c in w:
        g = abs(c) - 1
        if g >= n:
            raise ValueError(f"generator index {g} out of range for n={n}")
        counts[g] += 1 if c > 0 else -1
    return tuple(counts)


# --- letter syntax -----------------------------------------------------------


def render_word(w: Word, n: Optional[int] = None) -> str:
    if not w:
        # 'e' is a generator once there are five or more
        return "1" if n is not None and n > 4 else IDENTITY_SPELLING
    out = []
    for c in w:
        g = abs(c) - 1
        if g >= MAX_LETTER_GENERATORS:
            raise ValueError(f"generator index {g} has no letter spelling")
        ch = chr(ord("a") + g)
        out.append(ch if c > 0 else ch.upper())
    return "".join(out)


def parse_word(text: str, n: int = MAX_LETTER_GENERATORS) -> Word:
    s = text.strip()
    if s == "1" or (s == IDENTITY_SPELLING and n <= 4) or s == "":
        return EMPTY
    codes = []
    for pos, ch in enumerate(s):
        if not ("a" <= ch <= "z" or "A" <= ch <= "Z"):
            raise WordSyntaxError(f"unexpected character {ch!r} at position {pos} in {text!r}")
        g = ord(ch.lower()) - ord("a")
        if g >= n:
            raise WordSyntaxError(f"letter {ch!r} is outside the {n}-generator alphabet")
        codes.append(g + 1 if ch.islower() else -(g + 1))
    return Word(codes)


# --- group terms ---------------------------------------------------------------


@dataclass(frozen=True)
class Gen:
    index: int


@dataclass(frozen=True)
class Identity:
    pass


@dataclass(frozen=True)
class Product:
    left: "GroupTerm"
    right: "GroupTerm"


@dataclass(frozen=True)
class Inverse:
    child: "GroupTerm"


@dataclass(frozen=True)
class Var:
    name: str


GroupTerm = Union[Gen, Identity, Product, Inverse, Var]


def _letter_term(code: int) -> GroupTerm:
    g = Gen(abs(code) - 1)
    return g if code > 0 else Inverse(g)


def word_to_term(w: Word) -> GroupTerm:
    """Left-associated product of signed generator constants."""
    if not w:
        return Identity()
    term = _letter_term(w[0])
    for c in w[1:]:
        term = Product(term, _letter_term(c))
    return term


def term_to_word(t: GroupTerm) -> Word:
    return Word(_term_letters(t))


def _term_letters(t: GroupTerm) -> list:
    if isinstance(t, Gen):
        return [t.index + 1]
    if isinstance(t, Identity):
        return []
    if isinstance(t, Product):
        return _term_letters(t.left) + _term_letters(t.right)
    if isinstance(t, Inverse):
        return [-c for c in reversed(_term_letters(t.child))]
    raise TermSyntaxError(f"term is not ground: {t!r}")


def _gen_name(index: int) -> str:
    if index >= MAX_TERM_GENERATORS:
        raise ValueError(f"generator index {index} has no term spelling")
    return chr(ord("a") + index)


def render_term(t: GroupTerm, style: str = "prover") -> str:
    """Fully parenthesised left-associated rendering.

    ``style="prover"`` gives ``(a * b) * b'``; ``style="math"`` gives
    ``(a·b)·r(b)``.
    """
    return _render(t, style, top=True)


def _render(t: GroupTerm, style: str, top: bool) -> str:
    if isinstance(t, Gen):
        return _gen_name(t.index)
    if isinstance(t, Identity):
        return IDENTITY_SPELLING
    if isinstance(t, Var):
        return t.name
    if isinstance(t, Inverse):
        if style == "math":
            return f"r({_render(t.child, style, top=True)})"
        return _render(t.child, style, top=False) + "'"
    if isinstance(t, Product):
        op = "·" if style == "math" else " * "
        s = _render(t.left, style, False) + op + _render(t.right, style, False)
        return s if top else f"({s})"
    raise TypeError(f"not a group term: {t!r}")


_TOKEN = re.compile(r"\s*(?:([A-Za-z_$][A-Za-z0-9_]*)|(\*|·|')|(\()|(\))|(.))")


def _tokenize(text: str) -> list:
    tokens = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m.group(5) is not None:
            raise TermSyntaxError(f"unexpected {m.group(5)!r} at position {m.start(5)}")
        tokens.append(m.group(1) or m.group(2) or m.group(3) or m.group(4))
        pos = m.end()
    return tokens


class _TermParser:
    def __init__(self, text: str, allow_variables: bool):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0
        self.allow_variables = allow_variables

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else None

    def take(self, expected=None):
        tok = self.peek()
        if tok is None or (expected is not None and tok != expected):
            want = expected or "a token"
            raise TermSyntaxError(f"expected {want}, got {tok!r} in {self.text!r}")
        self.i += 1
        return tok

    def expr(self) -> GroupTerm:
        t = self.unary()
        while self.peek() in ("*", "·"):
            self.take()
            t = Product(t, self.unary())
        return t

    def unary(self) -> GroupTerm:
        t = self.atom()
        while self.peek() == "'":
            self.take()
            t = Inverse(t)
        return t

    def atom(self) -> GroupTerm:
        tok = self.take()
        if tok == "(":
            t = self.expr()
            self.take(")")
            return t
        if tok in ("*", "·", "'", ")"):
            raise TermSyntaxError(f"unexpected {tok!r} in {self.text!r}")
        if tok == "r" and self.peek() == "(":
            self.take("(")
            t = self.expr()
            self.take(")")
            return Inverse(t)
        if tok == IDENTITY_SPELLING:
            return Identity()
        if len(tok) == 1 and "a" <= tok <= "d":
            return Gen(ord(tok) - ord("a"))
        if tok[0] in "uvwxyz":
            if not self.allow_variables:
                raise TermSyntaxError(f"variable {tok!r} in a ground term")
            return Var(tok)
        raise TermSyntaxError(f"unknown symbol {tok!r} in {self.text!r}")


def parse_term(text: str, allow_variables: bool = False) -> GroupTerm:
    p = _TermParser(text, allow_variables)
    t = p.expr()
    if p.peek() is not None:
        raise TermSyntaxError(f"trailing input {p.peek()!r} in {text!r}")
    return t
