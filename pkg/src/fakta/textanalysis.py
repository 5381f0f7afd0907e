"""Deterministic text analysis: tokenization, sentence splitting, coarse POS
tagging, heuristic named-entity spans, and lexicon loading.

Everything here is a pure function of its inputs plus immutable bundled
resources, so all of it is safe to call concurrently.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, replace
from functools import lru_cache
from importlib import resources
from pathlib import Path

from .errors import LexiconFormatError

POS_TAGS = ("NN", "NNS", "NNP", "NNPS", "JJ", "CD", "VB", "OTHER")

# Numbers stay whole ("3.5", "1,000"); words are unicode \w runs; every other
# non-space character is its own token.
_TOKEN_RE = re.compile(r"\d+(?:[.,/:-]\d+)*%?|\w+|[^\w\s]", re.UNICODE)
_NUMBER_RE = re.compile(r"\d+(?:[.,/:-]\d+)*%?")
_TERMINATOR_RE = re.compile(r"[.!?]+")

# Function words tagged OTHER ahead of the lexicon: determiners, pronouns,
# prepositions, conjunctions, modals, wh-words and a few particles.
_CLOSED_CLASS = frozenset(
    """
    a an the this that these those some any each every either neither no
    i you he she it we they me him her us them my your his its our their
    mine yours hers ours theirs myself yourself himself herself itself
    ourselves themselves who whom whose which what when where why how
    whether if because although though while since unless until
    and or but nor so yet for
    of in on at by with from into onto upon about above below under over
    between among through during before after against within without
    toward towards across behind beyond near off out up down
    to as than then there here not nor
    can could will would shall should may might must
    """.split()
)

_SENTENCE_POLISH = frozenset("\"')]}»’”")


@dataclass(frozen=True)
class Token:
    """One token: original surface, case-folded form, coarse tag, char span."""

    surface: str
    normalized: str
    start: int
    end: int
    pos: str = "OTHER"

    @property
    def is_word(self) -> bool:
        """True for alphabetic/numeric tokens (punctuation excluded)."""
        return any(ch.isalnum() for ch in self.surface)


@dataclass(frozen=True)
class Sentence:
    start: int
    end: int
    tokens: tuple[Token, ...]

    def text(self, source: str) -> str:
        return source[self.start : self.end]


@dataclass(frozen=True)
class EntitySpan:
    """A maximal run of entity-like tokens, by index into the token list."""

    token_indices: tuple[int, ...]
    text: str


@dataclass(frozen=True)
class Lexicon:
    """A named set of single-token cues, optionally tagged +/- polarity."""

    name: str
    cues: frozenset[str]
    polarity: dict[str, str]

    @property
    def is_polar(self) -> bool:
        return bool(self.polarity)

    def cues_with_polarity(self, tag: str) -> frozenset[str]:
        return frozenset(c for c, p in self.polarity.items() if p == tag)


def tokenize(text: str) -> list[Token]:
    """Split text into word and punctuation tokens with character spans.

    Deterministic; concatenating surfaces with the original gaps reproduces
    the input exactly.
    """
    tokens = []
    for m in _TOKEN_RE.finditer(text):
        surface = m.group()
        tokens.append(
            Token(
                surface=surface,
                normalized=surface.casefold(),
                start=m.start(),
                end=m.end(),
            )
        )
    return tokens


def _sentence_initial_flags(tokens: list[Token] | tuple[Token, ...]) -> list[bool]:
    """True for the first token and any token right after a .!? run."""
    flags = []
    prev_terminator = True
    for tok in tokens:
        flags.append(prev_terminator)
        if _TERMINATOR_RE.fullmatch(tok.surface):
            prev_terminator = True
        elif tok.is_word:
            prev_terminator = False
    return flags


def split_sentences(text: str, abbreviations: frozenset[str] | None = None) -> list[Sentence]:
    """Split on . ! ? runs, guarded by an abbreviation list.

    A terminator run ends a sentence only when followed by whitespace (or the
    end of text), the next non-space character is not lowercase, and the word
    immediately before the run is not a known abbreviation. Text with no
    terminator comes back as a single sentence; whitespace-only text yields
    none.
    """
    if abbreviations is None:
        abbreviations = default_abbreviations()
    tokens = tokenize(text)
    if not tokens:
        return []

    breaks = []  # char offsets: end (exclusive) of each sentence
    for m in _TERMINATOR_RE.finditer(text):
        end = m.end()
        # allow closing quotes/brackets to ride along with the terminator
        while end < len(text) and text[end] in _SENTENCE_POLISH:
            end += 1
        if end < len(text) and not text[end].isspace():
            continue  # mid-token period, e.g. "3.5" or "U.S."
        nxt = text[end:].lstrip()
        if nxt and nxt[0].islower():
            continue  # next char lowercase: treat as abbreviation-like
        before = text[: m.start()].rstrip()
        word = before.split()[-1] if before.split() else ""
        word = word.lstrip("\"'([{«‘“").casefold()
        if word and word in abbreviations:
            continue
        breaks.append(end)

    if not breaks or breaks[-1] < tokens[-1].end:
        breaks.append(tokens[-1].end)

    sentences = []
    tok_i = 0
    cursor = 0
    for brk in breaks:
        # sentence starts at first non-space char at or after the cursor
        while cursor < len(text) and text[cursor].isspace():
            cursor += 1
        if cursor >= brk:
            continue
        sent_tokens = []
        while tok_i < len(tokens) and tokens[tok_i].end <= brk:
            sent_tokens.append(tokens[tok_i])
            tok_i += 1
        if sent_tokens:
            sentences.append(Sentence(start=cursor, end=brk, tokens=tuple(sent_tokens)))
        cursor = brk
    return sentences


def pos_tag(
    tokens: list[Token] | tuple[Token, ...],
    tag_lexicon: dict[str, str] | None = None,
) -> list[Token]:
    """Assign one coarse tag per token.

    Rule order: punctuation -> OTHER; digit shapes -> CD; closed-class words
    -> OTHER; capitalized non-sentence-initial -> NNP; tag lexicon lookup;
    plural/inflection suffix against the lexicon; default NN.
    """
    if tag_lexicon is None:
        tag_lexicon = default_tag_lexicon()
    initial = _sentence_initial_flags(tokens)
    tagged = []
    for tok, is_initial in zip(tokens, initial):
        tagged.append(replace(tok, pos=_tag_one(tok, is_initial, tag_lexicon)))
    return tagged


def _tag_one(tok: Token, sentence_initial: bool, lexicon: dict[str, str]) -> str:
    surface, norm = tok.surface, tok.normalized
    if not tok.is_word:
        return "OTHER"
    if _NUMBER_RE.fullmatch(surface):
        return "CD"
    if norm in _CLOSED_CLASS:
        return "OTHER"
    if surface[0].isupper() and not sentence_initial:
        return "NNP"
    # plural of a known noun outranks a homographic verb form ("states")
    if norm.endswith("s") and lexicon.get(norm) != "NNS":
        for stem in _plural_stems(norm):
            if lexicon.get(stem) == "NN":
                return "NNS"
    tag = lexicon.get(norm)
    if tag is not None:
        return tag
    if norm.endswith("s"):
        for stem in _plural_stems(norm):
            if lexicon.get(stem) == "VB":
                return "VB"
    return "NN"


def _plural_stems(norm: str) -> list[str]:
    stems = [norm[:-1]]
    if norm.endswith("ies") and len(norm) > 3:
        stems.append(norm[:-3] + "y")
    if norm.endswith("es") and len(norm) > 2:
        stems.append(norm[:-2])
    return stems


def extract_named_entities(
    tokens: list[Token] | tuple[Token, ...],
    gazetteer: frozenset[str] | None = None,
) -> list[EntitySpan]:
    """Maximal runs of proper-noun tokens, left to right.

    Sentence-initial capitalized tokens count only when the gazetteer knows
    them or the same surface is tagged NNP/NNPS elsewhere in the text.
    Returned spans never overlap.
    """
    if gazetteer is None:
        gazetteer = default_gazetteer()
    initial = _sentence_initial_flags(tokens)
    proper_elsewhere = {
        t.normalized for t, ini in zip(tokens, initial) if t.pos in ("NNP", "NNPS") and not ini
    }

    def qualifies(i: int) -> bool:
        tok = tokens[i]
        if tok.pos in ("NNP", "NNPS"):
            return True
        if not initial[i] or not tok.is_word:
            return False
        if not tok.surface[0].isupper():
            return False
        return tok.normalized in gazetteer or tok.normalized in proper_elsewhere

    spans = []
    run: list[int] = []
    for i in range(len(tokens) + 1):
        if i < len(tokens) and qualifies(i):
            run.append(i)
            continue
        if run:
            spans.append(
                EntitySpan(
                    token_indices=tuple(run),
                    text=" ".join(tokens[j].surface for j in run),
                )
            )
            run = []
    return spans


# ---------------------------------------------------------------------------
# Resource files. One entry per line; "#" starts a comment; an optional
# whitespace-separated second column carries a polarity ("+"/"-") for
# lexicons or a POS tag for the tag lexicon and gazetteer.
# ---------------------------------------------------------------------------


def _iter_lines(path: Path):
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            yield lineno, line


def load_lexicon(path: str | Path, name: str) -> Lexicon:
    """Read a cue lexicon; duplicates collapse after case-folding."""
    path = Path(path)
    cues: list[str] = []
    seen: set[str] = set()
    polarity: dict[str, str] = {}
    for lineno, line in _iter_lines(path):
        parts = line.split()
        cue = parts[0].casefold()
        if len(parts) > 2:
            raise LexiconFormatError(f"{path}:{lineno}: too many columns: {line!r}")
        if len(parts) == 2:
            if parts[1] not in ("+", "-"):
                raise LexiconFormatError(
                    f"{path}:{lineno}: polarity must be '+' or '-', got {parts[1]!r}"
                )
            if cue not in seen:
                polarity[cue] = parts[1]
        if cue not in seen:
            seen.add(cue)
            cues.append(cue)
    return Lexicon(name=name, cues=frozenset(cues), polarity=polarity)


def load_wordlist(path: str | Path) -> frozenset[str]:
    """One word per line, case-folded (stopwords, abbreviations)."""
    return frozenset(line.split()[0].casefold() for _, line in _iter_lines(Path(path)))


def load_tagged_wordlist(path: str | Path) -> dict[str, str]:
    """Word + tag per line (tag lexicon, gazetteer)."""
    path = Path(path)
    table: dict[str, str] = {}
    for lineno, line in _iter_lines(path):
        parts = line.split()
        if len(parts) != 2:
            raise LexiconFormatError(f"{path}:{lineno}: expected 'word TAG', got {line!r}")
        word, tag = parts[0].casefold(), parts[1]
        if tag not in POS_TAGS:
            raise LexiconFormatError(f"{path}:{lineno}: unknown tag {tag!r}")
        table.setdefault(word, tag)
    return table


def data_path(*relative: str) -> Path:
    """Absolute path of a bundled data file."""
    node = resources.files("fakta")
    for part in ("data",) + relative:
        node = node.joinpath(part)
    return Path(str(node))


@lru_cache(maxsize=None)
def default_tag_lexicon() -> dict[str, str]:
    return load_tagged_wordlist(data_path("tag_lexicon.txt"))


@lru_cache(maxsize=None)
def default_gazetteer() -> frozenset[str]:
    return frozenset(load_tagged_wordlist(data_path("gazetteer.txt")))


@lru_cache(maxsize=None)
def default_abbreviations() -> frozenset[str]:
    return load_wordlist(data_path("abbreviations.txt"))


@lru_cache(maxsize=None)
def default_stopwords() -> frozenset[str]:
    return load_wordlist(data_path("stopwords.txt"))
