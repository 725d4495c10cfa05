"""The published P -> AK(3) move sequences as replayable certificates.

S2 is stored verbatim in ``data/s2.cert``.  S3 and S4 share a prefix with S2
and differ only in their last few moves, so they are rebuilt from it.
"""

from __future__ import annotations

from importlib import resources

from .certificate import Certificate, parse_certificate
from .presentation import Aut, Conj, Inv, ak
from .word import Word

S3_SHARED = 67
S4_SHARED = 52


def s2() -> Certificate:
    text = resources.files(__package__).joinpath("data/s2.cert").read_text(encoding="utf-8")
    return parse_certificate(text)


def s3() -> Certificate:
    base = s2()
    tail = (Conj(0, Word("a")), Conj(1, Word("a")), Inv(1))
    return Certificate(base.start, base.moves[:S3_SHARED] + tail, ak(3), "EXTENDED")


def s4() -> Certificate:
    # the listing numbers its endpoint row 57; there are 56 moves
    base = s2()
    tail = (Aut.swap(), Conj(0, Word("b")), Inv(0), Conj(1, Word("b")))
    return Certificate(base.start, base.moves[:S4_SHARED] + tail, ak(3), "EXTENDED")


SEQUENCES = {"s2": s2, "s3": s3, "s4": s4}
