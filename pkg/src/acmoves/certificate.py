"""Certificates: a start presentation, a move list and the expected endpoint.

File format (UTF-8, one item per line, ``#`` starts a comment)::

    gens: 2
    start: ABaBAbaBBabAb, BAbbABabaBBa
    end: aaaBBBB, abaBAB
    family: PAPER_S2
    INV L
    CONJ L Ab
    MUL 0 1
    MULINV 1 0
    AUT a->b,b->a
    STAB+
    STAB-

``L``/``R`` stand for relator 0/1.  The listing spellings ``MULT-L``,
``MULT-R``, ``INV-R``, ``CONJ-R`` and ``CONJ wXw'`` are accepted too.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Optional

from .presentation import (
    Aut,
    Conj,
    Inv,
    Move,
    MoveError,
    Mul,
    MulInv,
    Presentation,
    PresentationSyntaxError,
    StabAdd,
    StabRemove,
    apply_move,
    get_family,
    move_kind,
    parse_relators,
    render_relators,
)
from .word import EMPTY, Word, WordSyntaxError, concat, invert, parse_word, render_word


class CertificateSyntaxError(ValueError):
    def __init__(self, message: str, lineno: Optional[int] = None):
        self.lineno = lineno
        super().__init__(f"line {lineno}: {message}" if lineno else message)


class ReplayError(Exception):
    """A move failed to apply, or the final presentation is not the expected one."""

    def __init__(self, message: str, step: Optional[int] = None, trace=None):
        self.step = step
        self.trace = trace
        super().__init__(f"step {step}: {message}" if step else message)


@dataclass(frozen=True)
class Certificate:
    start: Presentation
    moves: tuple = ()
    expected_end: Optional[Presentation] = None
    family_tag: Optional[str] = None

    def __post_init__(self):
        object.__setattr__(self, "moves", tuple(self.moves))

    @property
    def n(self) -> int:
        return self.start.n

    def __len__(self) -> int:
        return len(self.moves)


@dataclass
class Trace:
    presentations: list
    moves: list

    @property
    def final(self) -> Presentation:
        return self.presentations[-1]


@dataclass
class Report:
    ok: bool
    steps: int
    failure_step: Optional[int] = None
    message: str = ""
    histogram: dict = field(default_factory=dict)
    max_total_length: int = 0
    max_relator_length: int = 0
    final: Optional[Presentation] = None

    def summary(self) -> str:
        lines = [
            f"result: {'OK' if self.ok else 'FAIL'}",
            f"moves: {self.steps}",
        ]
        if not self.ok:
            where = f" at step {self.failure_step}" if self.failure_step else ""
            lines.append(f"failure{where}: {self.message}")
        if self.histogram:
            lines.append("histogram: " + ", ".join(f"{k}={v}" for k, v in sorted(self.histogram.items())))
        lines.append(f"max total length: {self.max_total_length}")
        lines.append(f"max relator length: {self.max_relator_length}")
        if self.final is not None:
            lines.append(f"final: {self.final}")
        return "\n".join(lines)


def _short(p: Presentation, limit: int = 120) -> str:
    text = str(p)
    return text if len(text) <= limit else text[: limit - 3] + "..."


def replay(c: Certificate) -> Trace:
    p = c.start
    trace = Trace([p], [])
    for k, m in enumerate(c.moves, start=1):
        try:
            p = apply_move(p, m)
        except (MoveError, ValueError) as exc:
            raise ReplayError(str(exc), step=k, trace=trace) from None
        trace.presentations.append(p)
        trace.moves.append(m)
    if c.expected_end is not None and p != c.expected_end:
        raise ReplayError(f"ended at {_short(p)} but expected {_short(c.expected_end)}", trace=trace)
    return trace


def check(c: Certificate) -> Report:
    hist = Counter(move_kind(m) for m in c.moves)
    try:
        trace = replay(c)
    except ReplayError as exc:
        pres = exc.trace.presentations if exc.trace else [c.start]
        return Report(
            ok=False,
            steps=len(c.moves),
            failure_step=exc.step,
            message=str(exc),
            histogram=dict(hist),
            max_total_length=max(q.total_length for q in pres),
            max_relator_length=max((len(r) for q in pres for r in q.relators), default=0),
            final=pres[-1],
        )
    pres = trace.presentations
    return Report(
        ok=True,
        steps=len(c.moves),
        histogram=dict(hist),
        max_total_length=max(q.total_length for q in pres),
        max_relator_length=max((len(r) for q in pres for r in q.relators), default=0),
        final=trace.final,
    )


def compress_conjugations(c: Certificate) -> Certificate:
    """Merge every run of consecutive conjugations of one relator into one move."""
    replay(c)
    out: list = []
    run_index: Optional[int] = None
    run_word = EMPTY
    in_run = False

    def flush():
        if in_run and run_word:
            out.append(Conj(run_index, run_word))

    for m in c.moves:
        if isinstance(m, Conj) and in_run and m.i == run_index:
            # later conjugator multiplies on the left
            run_word = concat(m.word, run_word)
            continue
        flush()
        if isinstance(m, Conj):
            in_run, run_index, run_word = True, m.i, m.word
        else:
            in_run = False
            out.append(m)
    flush()
    return Certificate(c.start, tuple(out), c.expected_end, c.family_tag)


# --- text format ---------------------------------------------------------------

_SIDES = {"L": 0, "R": 1}


def _index(tok: str, lineno: int) -> int:
    if tok.upper() in _SIDES:
        return _SIDES[tok.upper()]
    if tok.isdigit():
        return int(tok)
    raise CertificateSyntaxError(f"bad relator index {tok!r}", lineno)


def _conj_word(tok: str, n: int, lineno: int) -> Word:
    try:
        if "X" in tok and n < 24:
            prefix, _, suffix = tok.partition("X")
            w = parse_word(prefix or "1", n)
            if parse_word(suffix or "1", n) != invert(w):
                raise CertificateSyntaxError(f"in {tok!r} the suffix is not the inverse of the prefix", lineno)
            return w
        return parse_word(tok, n)
    except WordSyntaxError as exc:
        raise CertificateSyntaxError(str(exc), lineno) from None


def _parse_aut(spec: str, n: int, lineno: int) -> Aut:
    images = [0] * n
    for part in spec.replace(" ", "").strip("[]()").split(","):
        src, arrow, dst = part.partition("->")
        if not arrow or len(src) != 1 or len(dst) != 1:
            raise CertificateSyntaxError(f"bad automorphism entry {part!r}", lineno)
        s = parse_word(src, n)
        d = parse_word(dst, n)
        if len(s) != 1 or len(d) != 1 or s[0] < 0:
            raise CertificateSyntaxError("automorphism sources must be generators", lineno)
        images[s[0] - 1] = d[0]
    for g in range(n):
        if images[g] == 0:
            images[g] = g + 1
    return Aut(tuple(images))


def parse_move(line: str, n: int, lineno: int = 0) -> Move:
    toks = line.split()
    kw = toks[0].upper()
    args = toks[1:]

    def need(k):
        if len(args) != k:
            raise CertificateSyntaxError(f"{kw} takes {k} argument(s), got {len(args)}", lineno)

    if kw == "INV":
        if not args:
            return Inv(0)
        need(1)
        return Inv(_index(args[0], lineno))
    if kw == "INV-R":
        need(0)
        return Inv(1)
    if kw in ("MUL", "MULINV"):
        need(2)
        i, j = _index(args[0], lineno), _index(args[1], lineno)
        return Mul(i, j) if kw == "MUL" else MulInv(i, j)
    if kw == "MULT-L":
        need(0)
        return Mul(0, 1)
    if kw == "MULT-R":
        need(0)
        return Mul(1, 0)
    if kw in ("CONJ", "CONJ-R"):
        if kw == "CONJ-R":
            need(1)
            return Conj(1, _conj_word(args[0], n, lineno))
        if len(args) == 1:
            return Conj(0, _conj_word(args[0], n, lineno))
        need(2)
        return Conj(_index(args[0], lineno), _conj_word(args[1], n, lineno))
    if kw == "AUT" or kw.startswith("AUT["):
        spec = line.strip()[3:]
        try:
            return _parse_aut(spec, n, lineno)
        except WordSyntaxError as exc:
            raise CertificateSyntaxError(str(exc), lineno) from None
    if kw == "STAB+":
        need(0)
        return StabAdd()
    if kw == "STAB-":
        need(0)
        return StabRemove()
    raise CertificateSyntaxError(f"unknown move keyword {toks[0]!r}", lineno)


def render_move(m: Move, n: int = 0) -> str:
    """Canonical spelling of ``m`` for a presentation on ``n`` generators."""

    def idx(i):
        return "LR"[i] if n == 2 else str(i)

    if isinstance(m, Inv):
        return f"INV {idx(m.i)}"
    if isinstance(m, Mul):
        return f"MUL {m.i} {m.j}"
    if isinstance(m, MulInv):
        return f"MULINV {m.i} {m.j}"
    if isinstance(m, Conj):
        return f"CONJ {idx(m.i)} {render_word(m.word, n or None)}"
    if isinstance(m, Aut):
        parts = [f"{render_word(Word([g + 1]))}->{render_word(Word([img]))}" for g, img in enumerate(m.images)]
        return "AUT " + ",".join(parts)
    if isinstance(m, StabAdd):
        return "STAB+"
    if isinstance(m, StabRemove):
        return "STAB-"
    raise TypeError(f"not a move: {m!r}")


def parse_certificate(text: str) -> Certificate:
    n: Optional[int] = None
    start = end = None
    family = None
    moves: list = []
    cur_n = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, colon, value = line.partition(":")
        key = key.strip().lower()
        if colon and key in ("gens", "start", "end", "family"):
            if moves:
                raise CertificateSyntaxError(f"header {key!r} after the first move", lineno)
            try:
                if key == "gens":
                    n = int(value)
                    if n < 1:
                        raise ValueError
                elif n is None:
                    raise CertificateSyntaxError("'gens:' must come first", lineno)
                elif key == "start":
                    start = Presentation(n, parse_relators(value, n))
                elif key == "end":
                    end = value.strip()
                else:
                    family = get_family(value.strip()).name
            except PresentationSyntaxError as exc:
                raise CertificateSyntaxError(str(exc), lineno) from None
            except ValueError as exc:
                raise CertificateSyntaxError(str(exc) or f"bad {key!r} value", lineno) from None
            continue
        if start is None:
            raise CertificateSyntaxError("move before 'start:'", lineno)
        # moves are parsed against the running generator count
        if cur_n is None:
            cur_n = n
        m = parse_move(line, cur_n, lineno)
        if isinstance(m, StabAdd):
            cur_n += 1
        elif isinstance(m, StabRemove):
            cur_n -= 1
        moves.append(m)
    if start is None:
        raise CertificateSyntaxError("missing 'start:' line")
    expected = None
    if end is not None:
        end_n = n if cur_n is None else cur_n
        try:
            expected = Presentation(end_n, parse_relators(end, end_n))
        except (PresentationSyntaxError, ValueError) as exc:
            raise CertificateSyntaxError(f"bad 'end:' line: {exc}") from None
    return Certificate(start, tuple(moves), expected, family)


def render_certificate(c: Certificate) -> str:
    lines = [f"gens: {c.n}", f"start: {render_relators(c.start)}"]
    if c.expected_end is not None:
        lines.append(f"end: {render_relators(c.expected_end)}")
    if c.family_tag:
        lines.append(f"family: {c.family_tag}")
    cur_n = c.n
    for m in c.moves:
        lines.append(render_move(m, cur_n))
        if isinstance(m, StabAdd):
            cur_n += 1
        elif isinstance(m, StabRemove):
            cur_n -= 1
    return "\n".join(lines) + "\n"


def load_certificate(path) -> Certificate:
    with open(path, encoding="utf-8") as fh:
        return parse_certificate(fh.read())
