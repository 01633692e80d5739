"""Sentence splitting, diacritic-aware word matching and Jaccard, and
cosine-based duplicate removal.

Matching semantics: two words are *incompatible* when their base-letter
skeletons differ or some shared position carries two different explicit
vowel marks.  Shaddah never conflicts on its own (subset-unifiability
rule), so ``{shaddah+fatha}`` vs ``{fatha}`` and ``{shaddah}`` vs
``{fatha}`` are both compatible.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass

from .errors import EmptySeparatorSet, InvalidThreshold
from .script import ar_strip, decompose

IDENTICAL = "identical"
COMPATIBLE = "compatible"
INCOMPATIBLE = "incompatible"

SEPARATOR_CLASSES: dict[str, frozenset[str]] = {
    "period": frozenset({"."}),
    "question": frozenset({"?", "؟"}),
    "exclamation": frozenset({"!"}),
    "linebreak": frozenset({"\n"}),
}


@dataclass(frozen=True)
class SplitConfig:
    """Separator selection for sentence splitting.

    ``classes`` holds names from SEPARATOR_CLASSES; ``custom`` holds extra
    separator codepoints.  The combined set must be non-empty.
    """

    classes: frozenset[str] = frozenset({"period", "question", "exclamation", "linebreak"})
    custom: frozenset[str] = frozenset()
    attach_separator: bool = True

    def __post_init__(self):
        unknown = self.classes - SEPARATOR_CLASSES.keys()
        if unknown:
            raise ValueError(f"unknown separator classes: {sorted(unknown)}")
        if not self.classes and not self.custom:
            raise EmptySeparatorSet("at least one separator must be selected")

    def separator_chars(self) -> frozenset[str]:
        chars = set(self.custom)
        for name in self.classes:
            chars |= SEPARATOR_CLASSES[name]
        return frozenset(chars)


def split_sentences(text: str, config: SplitConfig | None = None) -> list[str]:
    """Split at the selected separators only; unselected ones are ignored.

    Segments are whitespace-trimmed at the edges and empty segments are
    dropped, so the concatenation of the output reconstructs the input up
    to trimmed whitespace.  With attach_separator the splitting codepoint
    stays on the end of its sentence.
    """
    if config is None:
        config = SplitConfig()
    separators = config.separator_chars()
    sentences: list[str] = []
    segment: list[str] = []
    for ch in text:
        if ch in separators:
            body = "".join(segment).strip()
            if body:
                sentences.append(body + ch if config.attach_separator else body)
            segment.clear()
        else:
            segment.append(ch)
    tail = "".join(segment).strip()
    if tail:
        sentences.append(tail)
    return sentences


@dataclass(frozen=True)
class MatchVerdict:
    relation: str
    first_conflict: int | None = None


def match_words(w1: str, w2: str) -> MatchVerdict:
    """Compare two Arabic words allowing for partial diacritization.

    identical: equal skeletons and equal marks everywhere.
    compatible: equal skeletons, every position unifiable (one side's
    vowel missing, or equal; shaddah free on either side).
    incompatible: differing skeletons, or two different explicit vowels
    at one position; first_conflict reports the position.
    """
    s1, s2 = decompose(w1), decompose(w2)
    b1, b2 = s1.bases(), s2.bases()
    if b1 != b2:
        conflict = min(len(b1), len(b2))
        for i, (x, y) in enumerate(zip(b1, b2)):
            if x != y:
                conflict = i
                break
        return MatchVerdict(INCOMPATIBLE, conflict)
    identical = True
    for i, (p1, p2) in enumerate(zip(s1.positions, s2.positions)):
        v1, v2 = p1.marks.vowel, p2.marks.vowel
        if v1 is not None and v2 is not None and v1 != v2:
            return MatchVerdict(INCOMPATIBLE, i)
        if p1.marks != p2.marks:
            identical = False
    return MatchVerdict(IDENTICAL if identical else COMPATIBLE)


@dataclass(frozen=True)
class JaccardReport:
    union_size: int
    intersection_size: int
    similarity: float


def jaccard(set1, set2, mode: str = "diacritic_aware") -> JaccardReport:
    """Union/intersection/similarity between two word sets.

    In diacritic_aware mode two words count as equal when match_words does
    not return incompatible.  That relation is not transitive, so words
    are grouped into connected components (union-find over the combined
    input, in input order) and the report counts components.  Two empty
    sets have similarity 1.0.
    """
    if mode not in ("exact", "diacritic_aware"):
        raise ValueError(f"unknown jaccard mode {mode!r}")
    words: list[str] = []
    seen: dict[str, int] = {}
    origin1: set[int] = set()
    origin2: set[int] = set()
    for source, origin in ((set1, origin1), (set2, origin2)):
        for w in source:
            idx = seen.get(w)
            if idx is None:
                idx = len(words)
                seen[w] = idx
                words.append(w)
            origin.add(idx)

    parent = list(range(len(words)))

    def find(i: int) -> int:
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    if mode == "diacritic_aware":
        for i in range(len(words)):
            for j in range(i + 1, len(words)):
                if find(i) == find(j):
                    continue
                if match_words(words[i], words[j]).relation != INCOMPATIBLE:
                    parent[find(j)] = find(i)

    components: dict[int, tuple[bool, bool]] = {}
    for idx in range(len(words)):
        root = find(idx)
        in1, in2 = components.get(root, (False, False))
        components[root] = (in1 or idx in origin1, in2 or idx in origin2)
    union_size = len(components)
    intersection_size = sum(1 for in1, in2 in components.values() if in1 and in2)
    similarity = intersection_size / union_size if union_size else 1.0
    return JaccardReport(union_size, intersection_size, similarity)


def _tf_vector(sentence: str) -> Counter:
    return Counter(ar_strip(sentence, diacritics=True).split())


def _cosine_counts(a: Counter, na: float, b: Counter, nb: float) -> float:
    if not a and not b:
        return 1.0
    if not a or not b:
        return 0.0
    small, large = (a, b) if len(a) <= len(b) else (b, a)
    dot = sum(count * large.get(token, 0) for token, count in small.items())
    return dot / (na * nb)


def remove_duplicates(sentences, threshold: float = 0.8) -> list[str]:
    """Drop a sentence when its term-frequency cosine similarity with any
    previously kept sentence reaches the threshold; first occurrence wins.

    Vectors are token counts after diacritic stripping.  Thresholds above
    1.0 are legal and keep everything; negative or non-finite thresholds
    are rejected.
    """
    try:
        threshold = float(threshold)
    except (TypeError, ValueError) as exc:
        raise InvalidThreshold(f"threshold must be a number, got {threshold!r}") from exc
    if math.isnan(threshold) or math.isinf(threshold) or threshold < 0:
        raise InvalidThreshold(f"threshold must be a finite non-negative number, got {threshold}")
    kept: list[str] = []
    kept_vectors: list[tuple[Counter, float]] = []
    for sentence in sentences:
        vector = _tf_vector(sentence)
        norm = math.sqrt(sum(c * c for c in vector.values()))
        duplicate = any(
            _cosine_counts(vector, norm, other, other_norm) >= threshold
            for other, other_norm in kept_vectors
        )
        if not duplicate:
            kept.append(sentence)
            kept_vectors.append((vector, norm))
    return kept
