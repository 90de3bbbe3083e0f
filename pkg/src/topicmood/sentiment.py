"""Lexicon-based polarity scoring.

A small self-contained replacement for heavier sentiment backends: word
polarities are looked up in a lexicon, flipped by nearby negators, scaled
by nearby intensifiers, and averaged into a document score in [-1, 1].
Posts that already carry a polarity value bypass the scorer entirely.
"""

from __future__ import annotations

from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from types import MappingProxyType
from typing import Mapping

from .corpus import CleanDoc, Post

__all__ = [
    "Lexicon",
    "PolarityScore",
    "LexiconError",
    "load_lexicon",
    "default_lexicon",
    "score_polarity",
    "resolve_polarity",
    "COMPUTED",
    "SUPPLIED",
]

COMPUTED = "computed"
SUPPLIED = "supplied"


class LexiconError(ValueError):
    """Raised for malformed lexicon files."""


@dataclass(frozen=True)
class Lexicon:
    """Word polarities plus negator and intensifier word lists.

    The three key sets must be pairwise disjoint: a word is either scored,
    a negation marker, or an intensity multiplier, never two of those.
    """

    entries: Mapping[str, float]
    negators: frozenset[str] = frozenset()
    intensifiers: Mapping[str, float] = MappingProxyType({})

    def __post_init__(self):
        object.__setattr__(self, "entries", MappingProxyType(dict(self.entries)))
        object.__setattr__(self, "negators", frozenset(self.negators))
        object.__setattr__(self, "intensifiers", MappingProxyType(dict(self.intensifiers)))
        for word, pol in self.entries.items():
            if not -1.0 <= pol <= 1.0:
                raise LexiconError(f"entry {word!r}: polarity {pol} outside [-1, 1]")
        for word, mult in self.intensifiers.items():
            if mult <= 0:
                raise LexiconError(f"intensifier {word!r}: multiplier must be > 0, got {mult}")
        keys = set(self.entries)
        if keys & self.negators or keys & set(self.intensifiers) or self.negators & set(self.intensifiers):
            raise LexiconError("entries, negators and intensifiers must not share words")


@dataclass(frozen=True)
class PolarityScore:
    """Per-document sentiment in [-1, 1] with provenance."""

    post_id: str
    value: float
    source: str  # COMPUTED or SUPPLIED

    def __post_init__(self):
        if not -1.0 <= self.value <= 1.0:
            raise ValueError(f"polarity {self.value} outside [-1, 1]")
        if self.source not in (COMPUTED, SUPPLIED):
            raise ValueError(f"unknown source {self.source!r}")


def load_lexicon(path: str | Path) -> Lexicon:
    """Parse a lexicon file.

    Format: one ``word<TAB>polarity`` pair per line; a ``[negators]``
    section lists one word per line; an ``[intensifiers]`` section lists
    ``word<TAB>multiplier`` pairs. Blank lines and '#' comments are
    ignored. Duplicate words and out-of-range polarities are errors.
    """
    entries: dict[str, float] = {}
    negators: set[str] = set()
    intensifiers: dict[str, float] = {}
    seen: dict[str, int] = {}
    section = "entries"

    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            if line.startswith("[") and line.endswith("]"):
                name = line[1:-1].strip().lower()
                if name not in ("entries", "negators", "intensifiers"):
                    raise LexiconError(f"{path}, line {lineno}: unknown section [{name}]")
                section = name
                continue

            parts = line.split("\t")
            word = parts[0].strip().lower()
            if not word:
                raise LexiconError(f"{path}, line {lineno}: empty word")
            if word in seen:
                raise LexiconError(
                    f"{path}, line {lineno}: duplicate word {word!r} (first on line {seen[word]})"
                )
            seen[word] = lineno

            if section == "negators":
                if len(parts) != 1:
                    raise LexiconError(f"{path}, line {lineno}: negator lines carry a single word")
                negators.add(word)
                continue

            if len(parts) != 2:
                raise LexiconError(f"{path}, line {lineno}: expected 'word<TAB>number'")
            try:
                number = float(parts[1])
            except ValueError:
                raise LexiconError(f"{path}, line {lineno}: not a number: {parts[1]!r}") from None

            if section == "entries":
                if not -1.0 <= number <= 1.0:
                    raise LexiconError(
                        f"{path}, line {lineno}: polarity {number} outside [-1, 1]"
                    )
                entries[word] = number
            else:
                if number <= 0:
                    raise LexiconError(f"{path}, line {lineno}: multiplier must be > 0")
                intensifiers[word] = number

    return Lexicon(entries=entries, negators=frozenset(negators), intensifiers=intensifiers)


def default_lexicon() -> Lexicon:
    """Miniature English lexicon bundled with the package."""
    data = resources.files("topicmood.data").joinpath("lexicon_en.txt")
    with resources.as_file(data) as path:
        return load_lexicon(path)


def score_polarity(doc: CleanDoc, lex: Lexicon, neg_window: int = 1) -> PolarityScore:
    """Score a document as the mean of its modified lexicon hits.

    A hit is a token present in the lexicon entries. Its polarity is
    multiplied by -1 for each negator among the preceding ``neg_window``
    tokens (so double negation cancels) and by the product of intensifier
    multipliers found in the same window. The document score is the mean
    over hits, clamped to [-1, 1]; a document without hits scores 0.
    """
    if neg_window < 0:
        raise ValueError("neg_window must be >= 0")
    hits: list[float] = []
    tokens = doc.tokens
    for i, token in enumerate(tokens):
        base = lex.entries.get(token)
        if base is None:
            continue
        value = base
        for prev in tokens[max(0, i - neg_window):i]:
            if prev in lex.negators:
                value = -value
            else:
                mult = lex.intensifiers.get(prev)
                if mult is not None:
                    value *= mult
        hits.append(value)
    if not hits:
        return PolarityScore(doc.post_id, 0.0, COMPUTED)
    mean = sum(hits) / len(hits)
    return PolarityScore(doc.post_id, min(1.0, max(-1.0, mean)), COMPUTED)


def resolve_polarity(
    post: Post, doc: CleanDoc, lex: Lexicon, neg_window: int = 1
) -> PolarityScore:
    """Use the post's supplied polarity when present, else compute one."""
    if post.polarity is not None:
        return PolarityScore(post.id, post.polarity, SUPPLIED)
    return score_polarity(doc, lex, neg_window)
