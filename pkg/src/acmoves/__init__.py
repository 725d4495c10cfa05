"""Andrews-Curtis transformations of balanced presentations."""

from .word import Word, conjugate, concat, find_conjugator, free_reduce, invert, parse_word, render_word
from .presentation import (
    FAMILIES,
    Aut,
    Conj,
    Inv,
    Mul,
    MulInv,
    Presentation,
    StabAdd,
    StabRemove,
    abs_det,
    ak,
    apply_move,
    inverse_move,
    neighbors,
    parse_presentation,
    shehper_p,
    trivial,
)
from .certificate import Certificate, check, compress_conjugations, parse_certificate, render_certificate, replay

__version__ = "0.1.0"
