"""Codes invariant under literal (anti)morphisms: deciders, free hulls and completions."""

__version__ = "0.1.0"

from .automata import RegularLang, from_words  # noqa: E402
from .errors import (BudgetExhausted, ConstructionError, InputError,  # noqa: E402
                     PreconditionError, ThetaCodesError)
from .words import (Alphabet, Kind, LiteralMap, apply, identity, is_invariant,  # noqa: E402
                    make_map, orbit, orbit_lang, order)

__all__ = [
    "Alphabet", "Kind", "LiteralMap", "RegularLang", "apply", "from_words", "identity",
    "is_invariant", "make_map", "orbit", "orbit_lang", "order",
    "BudgetExhausted", "ConstructionError", "InputError", "PreconditionError", "ThetaCodesError",
]
