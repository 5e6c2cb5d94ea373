"""Turn raw or pre-segmented text into a :class:`Corpus` of words made of syllables.

Four segmentation schemes are supported:

``presegmented``
    Words separated by whitespace, syllables by a single delimiter
    code point (default ``"-"``).
``english-heuristic``
    Raw English prose. Lowercased, split on anything that is not a letter,
    syllabified with :func:`syllabify_english`.
``chinese-char``
    Whitespace-segmented Chinese. Every Han character is one syllable.
``ngram-fixed``
    Spaceless character stream chopped into consecutive ``N``-character
    words, one syllable per character.

English normalization rules (applied in order):

1. Unicode NFKD, combining marks dropped (``"é"`` becomes ``"e"``).
2. Lowercase.
3. An apostrophe (``'`` or ``’``) between two letters is deleted
   (``"dick's"`` becomes ``"dicks"``). Any other apostrophe is a separator.
4. Every non-letter, hyphens included, separates words
   (``"Moby-Dick's"`` becomes ``["moby", "dicks"]``).
5. Words still containing non-ASCII letters after step 1 are dropped.
"""
from __future__ import annotations

import re
import unicodedata
from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from types import MappingProxyType
from typing import Mapping

from .exceptions import MalformedInputError

__all__ = [
    "Corpus",
    "SegmentationScheme",
    "SyllableType",
    "WordType",
    "english_words",
    "syllabify_english",
    "tokenize",
    "tokenize_chinese_chars",
    "tokenize_english",
    "tokenize_ngram",
    "tokenize_presegmented",
]

SCHEME_KINDS = ("english-heuristic", "presegmented", "chinese-char", "ngram-fixed")


@dataclass(frozen=True)
class WordType:
    syllables: tuple[str, ...]
    first: int
    count: int


@dataclass(frozen=True)
class SyllableType:
    first: int
    count: int


@dataclass(frozen=True)
class SegmentationScheme:
    kind: str = "presegmented"
    word_delim: str = " "
    syll_delim: str = "-"
    n: int | None = None

    def __post_init__(self):
        if self.kind not in SCHEME_KINDS:
            raise ValueError(f"unknown scheme kind {self.kind!r}; expected one of {SCHEME_KINDS}")
        if len(self.word_delim) != 1 or len(self.syll_delim) != 1:
            raise ValueError("delimiters must be single code points")
        if self.word_delim == self.syll_delim:
            raise ValueError("word and syllable delimiters must differ")
        if self.kind == "ngram-fixed" and (self.n is None or self.n < 1):
            raise ValueError("ngram-fixed scheme needs n >= 1")


class Corpus:
    """Immutable token stream of words, each a sequence of syllables.

    Positions are 0-based. A word's first occurrence is its index in the
    word-token stream; a syllable's first occurrence is its index in the
    syllable-token stream (every syllable of every token, in order), which
    keeps syllable positions distinct even inside one word.

    Syllable counts include multiplicity: one token of ``"AA"`` adds 2 to
    the count of ``"A"``.
    """

    __slots__ = ("_tokens", "_word_types", "_syllable_types")

    def __init__(self, words: Iterable[Sequence[str]] = ()):
        tokens: list[str] = []
        word_types: dict[str, list] = {}
        syll_types: dict[str, list] = {}
        syll_pos = 0
        for pos, sylls in enumerate(words):
            sylls = tuple(sylls)
            if not sylls or any(not s for s in sylls):
                raise MalformedInputError(f"word at position {pos} has an empty syllable", position=pos)
            form = "".join(sylls)
            entry = word_types.get(form)
            if entry is None:
                word_types[form] = [sylls, pos, 1]
            else:
                if entry[0] != sylls:
                    raise MalformedInputError(
                        f"word {form!r} at position {pos} segmented as {sylls}, "
                        f"earlier as {entry[0]}",
                        position=pos,
                    )
                entry[2] += 1
            tokens.append(form)
            for s in sylls:
                sentry = syll_types.get(s)
                if sentry is None:
                    syll_types[s] = [syll_pos, 1]
                else:
                    sentry[1] += 1
                syll_pos += 1
        self._tokens = tuple(tokens)
        self._word_types = MappingProxyType(
            {w: WordType(s, f, c) for w, (s, f, c) in word_types.items()}
        )
        self._syllable_types = MappingProxyType(
            {s: SyllableType(f, c) for s, (f, c) in syll_types.items()}
        )

    @classmethod
    def from_tables(
        cls,
        tokens: Sequence[str],
        word_types: Mapping[str, WordType],
        syllable_types: Mapping[str, SyllableType],
    ) -> "Corpus":
        """Assemble a corpus from precomputed tables without any checking.

        Meant for loading external frequency tables; nothing guarantees the
        conservation identity holds (see
        :func:`rankrank.rrd.verify_frequency_conservation`).
        """
        obj = cls.__new__(cls)
        obj._tokens = tuple(tokens)
        obj._word_types = MappingProxyType(dict(word_types))
        obj._syllable_types = MappingProxyType(dict(syllable_types))
        return obj

    @property
    def tokens(self) -> tuple[str, ...]:
        return self._tokens

    @property
    def word_types(self) -> Mapping[str, WordType]:
        return self._word_types

    @property
    def syllable_types(self) -> Mapping[str, SyllableType]:
        return self._syllable_types

    @property
    def length_L(self) -> int:
        return sum(w.count for w in self._word_types.values())

    def __len__(self) -> int:
        return len(self._tokens)

    def token_syllables(self) -> Iterable[tuple[str, ...]]:
        wt = self._word_types
        return (wt[t].syllables for t in self._tokens)

    def prefix(self, n_tokens: int) -> "Corpus":
        return Corpus(self._word_types[t].syllables for t in self._tokens[:n_tokens])

    def __add__(self, other: "Corpus") -> "Corpus":
        return Corpus([*self.token_syllables(), *other.token_syllables()])

    def __eq__(self, other) -> bool:
        if not isinstance(other, Corpus):
            return NotImplemented
        return (
            self._tokens == other._tokens
            and dict(self._word_types) == dict(other._word_types)
            and dict(self._syllable_types) == dict(other._syllable_types)
        )

    def __hash__(self):
        return hash(self._tokens)

    def __repr__(self) -> str:
        return (
            f"Corpus(L={self.length_L}, words={len(self._word_types)}, "
            f"syllables={len(self._syllable_types)})"
        )

    def to_text(self, word_delim: str = " ", syll_delim: str = "-") -> str:
        """Serialize back to the pre-segmented text format."""
        wt = self._word_types
        return word_delim.join(syll_delim.join(wt[t].syllables) for t in self._tokens)


# ---------------------------------------------------------------- presegmented


def tokenize_presegmented(text: str, scheme: SegmentationScheme | None = None) -> Corpus:
    scheme = scheme or SegmentationScheme()
    if scheme.kind != "presegmented":
        raise ValueError(f"expected a presegmented scheme, got {scheme.kind!r}")
    seps = {scheme.word_delim, " ", "\n", "\r", "\t"} - {scheme.syll_delim}
    pattern = "[" + re.escape("".join(sorted(seps))) + "]+"
    words = []
    offset = 0
    for chunk in re.split(f"({pattern})", text):
        if chunk and not re.fullmatch(pattern, chunk):
            sylls = [s for s in chunk.split(scheme.syll_delim) if s]
            if not sylls:
                raise MalformedInputError(
                    f"word with zero syllables at character offset {offset}", position=offset
                )
            words.append(sylls)
        offset += len(chunk)
    return Corpus(words)


# --------------------------------------------------------------------- chinese

_HAN = "㐀-䶿一-鿿豈-﫿\U00020000-\U0002ebef\U00030000-\U0003134f"
_HAN_RUN = re.compile(f"[{_HAN}]+")


def tokenize_chinese_chars(text: str) -> Corpus:
    """One syllable per Han character; anything else separates words."""
    return Corpus(tuple(run) for run in _HAN_RUN.findall(text))


def tokenize_ngram(text: str, n: int) -> Corpus:
    """Chop the Han character stream into consecutive ``n``-character words.

    A trailing remainder shorter than ``n`` is kept as a final short word.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    stream = "".join(_HAN_RUN.findall(text))
    return Corpus(tuple(stream[i : i + n]) for i in range(0, len(stream), n))


# --------------------------------------------------------------------- english

_VOWELS = frozenset("aeiou")

# Legal syllable onsets for the maximal-onset split. Any single consonant
# other than "x" is also legal.
ONSETS = frozenset(
    """
    bl br ch cl cr dr dw fl fr gl gn gr kn kl kr ph pl pr ps qu sc sh sk sl sm sn sp
    st sw th tr tw wh wr
    chr phr sch scr shr sph spl spr squ str thr
    """.split()
)


def _nuclei(word: str) -> list[tuple[int, int]]:
    """Vowel-group spans ``[start, end)`` acting as syllable nuclei."""
    n = len(word)
    is_v = [c in _VOWELS for c in word]
    for i, c in enumerate(word):
        if c == "y" and i > 0:
            prev_v = word[i - 1] in _VOWELS
            next_v = i + 1 < n and word[i + 1] in _VOWELS
            if not prev_v and not next_v:
                is_v[i] = True
    spans = []
    i = 0
    while i < n:
        if is_v[i]:
            j = i
            while j < n and is_v[j]:
                j += 1
            spans.append((i, j))
            i = j
        else:
            i += 1
    # silent final "e" ("make"), but not consonant + "le" ("table")
    if len(spans) > 1:
        s, e = spans[-1]
        if e == n and e - s == 1 and word[-1] == "e" and not (n >= 3 and word[-2] == "l" and word[-3] not in _VOWELS):
            spans.pop()
    return spans


def syllabify_english(word: str) -> list[str]:
    """Split a lowercase alphabetic word into syllables.

    Pass one marks nuclei: runs of ``a e i o u``, plus ``y`` when it is
    neither word-initial nor next to another vowel letter. A word-final
    single ``e`` is silent when another nucleus exists, unless it ends a
    consonant + ``le`` cluster. Pass two gives each consonant cluster between
    two nuclei to the following syllable as far as the longest legal onset in
    :data:`ONSETS` allows; the rest closes the preceding syllable.

    >>> syllabify_english("behavior")
    ['be', 'ha', 'vior']
    >>> syllabify_english("rhythm")
    ['rhythm']
    """
    if not word:
        raise ValueError("cannot syllabify an empty word")
    spans = _nuclei(word)
    if len(spans) <= 1:
        return [word]
    cuts = []
    for (_, e1), (s2, _) in zip(spans, spans[1:]):
        cluster = word[e1:s2]
        onset = 0
        for k in range(len(cluster), 0, -1):
            cand = cluster[-k:]
            if (k == 1 and cand != "x") or cand in ONSETS:
                onset = k
                break
        cuts.append(s2 - onset)
    bounds = [0, *cuts, len(word)]
    return [word[a:b] for a, b in zip(bounds, bounds[1:])]


_INNER_APOSTROPHE = re.compile(r"(?<=[^\W\d_])['’](?=[^\W\d_])")
_LETTER_RUN = re.compile(r"[^\W\d_]+")


def _normalize_english(text: str) -> str:
    text = unicodedata.normalize("NFKD", text)
    text = "".join(c for c in text if not unicodedata.combining(c))
    return _INNER_APOSTROPHE.sub("", text.lower())


def english_words(text: str) -> list[str]:
    """Normalized word forms of raw English text, in order."""
    return [w for w in _LETTER_RUN.findall(_normalize_english(text)) if w.isascii()]


def tokenize_english(text: str) -> Corpus:
    cache: dict[str, tuple[str, ...]] = {}

    def syll(w):
        s = cache.get(w)
        if s is None:
            s = cache[w] = tuple(syllabify_english(w))
        return s

    return Corpus(syll(w) for w in english_words(text))


# -------------------------------------------------------------------- dispatch


def tokenize(text: str, scheme: SegmentationScheme | None = None) -> Corpus:
    """Ingest ``text`` with whichever scheme ``scheme.kind`` names."""
    scheme = scheme or SegmentationScheme()
    if scheme.kind == "presegmented":
        return tokenize_presegmented(text, scheme)
    if scheme.kind == "english-heuristic":
        return tokenize_english(text)
    if scheme.kind == "chinese-char":
        return tokenize_chinese_chars(text)
    return tokenize_ngram(text, scheme.n)
