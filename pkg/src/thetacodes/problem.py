"""The problem file read by every CLI command.

::

    alphabet=abc
    kind=antimorphism
    perm=a:b,b:c,c:a
    witness=aaab        # optional
    words:
    ab
    cb

``#`` starts a comment; blank lines are ignored.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass

from .errors import InputError
from .words import Alphabet, LiteralMap, Word, make_map

HEADER_KEYS = ("alphabet", "kind", "perm", "witness")


@dataclass(frozen=True)
class ProblemFile:
    alphabet: Alphabet
    theta: LiteralMap
    words: tuple[Word, ...]
    witness: Word | None = None
    digest: str = ""

    @property
    def word_set(self) -> frozenset:
        return frozenset(self.words)


def _fail(lineno, msg):
    raise InputError(f"line {lineno}: {msg}")


def parse_problem(text: str) -> ProblemFile:
    header: dict[str, tuple[int, str]] = {}
    words: list[tuple[int, str]] = []
    in_words = False
    last = 0
    for lineno, raw in enumerate(text.splitlines(), 1):
        last = lineno
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if in_words:
            words.append((lineno, line))
        elif line == "words:":
            in_words = True
        elif "=" in line:
            key, _, value = line.partition("=")
            key, value = key.strip(), value.strip()
            if key not in HEADER_KEYS:
                _fail(lineno, f"unknown field {key!r}")
            if key in header:
                _fail(lineno, f"duplicate field {key!r}")
            header[key] = (lineno, value)
        else:
            _fail(lineno, f"expected 'key=value' or 'words:', got {line!r}")
    for key in ("alphabet", "kind", "perm"):
        if key not in header:
            _fail(last, f"missing field {key!r}")
    if not in_words:
        _fail(last, "missing 'words:' section")
    if not words:
        _fail(last, "the words section is empty")

    lineno, letters = header["alphabet"]
    try:
        alphabet = Alphabet.of(letters)
    except InputError as exc:
        _fail(lineno, str(exc))

    lineno, perm = header["perm"]
    pairs = []
    for item in perm.split(","):
        src, sep, dst = item.strip().partition(":")
        if not sep or len(src) != 1 or len(dst) != 1:
            _fail(lineno, f"bad pair {item!r}; expected x:y")
        pairs.append((src, dst))
    kind_line, kind = header["kind"]
    if kind not in ("morphism", "antimorphism"):
        _fail(kind_line, f"kind must be morphism or antimorphism, not {kind!r}")
    try:
        theta = make_map(alphabet, pairs, kind)
    except InputError as exc:
        _fail(lineno, str(exc))

    seen = []
    for lineno, w in words:
        try:
            alphabet.check(w)
        except InputError as exc:
            _fail(lineno, str(exc))
        if w not in seen:
            seen.append(w)

    witness = None
    if "witness" in header:
        lineno, witness = header["witness"]
        try:
            alphabet.check(witness)
        except InputError as exc:
            _fail(lineno, str(exc))

    digest = "sha256:" + hashlib.sha256(text.encode()).hexdigest()
    return ProblemFile(alphabet, theta, tuple(seen), witness, digest)


def format_problem(problem: ProblemFile) -> str:
    lines = [f"alphabet={problem.alphabet}",
             f"kind={problem.theta.kind.value}",
             "perm=" + ",".join(f"{s}:{d}" for s, d in problem.theta.perm)]
    if problem.witness:
        lines.append(f"witness={problem.witness}")
    lines.append("words:")
    lines.extend(problem.words)
    return "\n".join(lines) + "\n"
