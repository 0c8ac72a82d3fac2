"""French lexical entries and number-marked surface realization.

Stores curated surface forms (no morphology engine) and realizes noun
phrases and verbs with French elision (le/la -> l') and preposition
contraction (de+le -> du, de+les -> des, a+le -> au, a+les -> aux).
"""

from __future__ import annotations

import unicodedata
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path

APOSTROPHE = "’"  # output apostrophe; ASCII ' is normalized on load

# Vowel letters that trigger elision.  Mute-h words are not detectable from
# spelling, so entries flag vowel_onset explicitly and 'h' words may carry
# either value.
_VOWELS = set("aàâäeéèêëiîïoôöuùûüœy")

DEFAULT_PREPOSITIONS = ("avec", "de", "sur", "à", "dans")

_CONTRACTIONS = {
    ("de", "le"): "du",
    ("de", "les"): "des",
    ("à", "le"): "au",
    ("à", "les"): "aux",
}


class Category(str, Enum):
    NOUN = "Noun"
    VERB = "Verb"
    FIXED_PP = "FixedPP"
    FIXED_TMP = "FixedTMP"
    FIXED_MNR = "FixedMNR"
    REL_CLAUSE = "RelClause"


class Gender(str, Enum):
    MASC = "Masc"
    FEM = "Fem"
    NA = "NA"


class Number(str, Enum):
    SING = "Sing"
    PLUR = "Plur"

    def flipped(self) -> "Number":
        return Number.PLUR if self is Number.SING else Number.SING


class LexiconError(Exception):
    """Base class for lexical errors."""


class LexiconParseError(LexiconError):
    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


class DuplicateEntryError(LexiconError):
    pass


class EntryInvariantError(LexiconError):
    pass


class CategoryError(LexiconError):
    pass


class MissingEntryError(LexiconError):
    pass


def _normalize(text: str) -> str:
    return unicodedata.normalize("NFC", text).replace("'", APOSTROPHE)


def has_vowel_onset(form: str) -> bool:
    """Spelling-level onset test; 'h' words must be flagged explicitly."""
    return bool(form) and form[0].lower() in _VOWELS


@dataclass(frozen=True)
class LexEntry:
    lemma: str
    category: Category
    gender: Gender
    sing_form: str
    plur_form: str
    vowel_onset: bool

    def __post_init__(self):
        if not self.sing_form or not self.plur_form:
            raise EntryInvariantError(f"{self.lemma}: empty surface form")
        if self.category in (Category.NOUN, Category.VERB) and self.sing_form == self.plur_form:
            raise EntryInvariantError(
                f"{self.lemma}: sing_form and plur_form must differ for {self.category.value}"
            )
        first = self.sing_form[0].lower()
        if first != "h" and self.vowel_onset != has_vowel_onset(self.sing_form):
            raise EntryInvariantError(
                f"{self.lemma}: vowel_onset={self.vowel_onset} contradicts sing_form "
                f"{self.sing_form!r}"
            )
        if self.category is Category.NOUN and self.gender is Gender.NA:
            raise EntryInvariantError(f"{self.lemma}: nouns need Masc or Fem gender")

    def form(self, number: Number) -> str:
        return self.sing_form if number is Number.SING else self.plur_form


@dataclass
class Lexicon:
    entries: dict[tuple[str, Category], LexEntry] = field(default_factory=dict)
    prepositions: tuple[str, ...] = DEFAULT_PREPOSITIONS

    def add(self, entry: LexEntry) -> None:
        key = (entry.lemma, entry.category)
        if key in self.entries:
            raise DuplicateEntryError(f"duplicate entry {key}")
        self.entries[key] = entry

    def get(self, lemma: str, category: Category) -> LexEntry:
        try:
            return self.entries[(lemma, category)]
        except KeyError:
            raise MissingEntryError(f"no entry ({lemma!r}, {category.value})") from None

    def __contains__(self, entry: LexEntry) -> bool:
        return self.entries.get((entry.lemma, entry.category)) == entry

    def __len__(self) -> int:
        return len(self.entries)

    def by_category(self, category: Category) -> list[LexEntry]:
        return [e for e in self.entries.values() if e.category is category]

    def nouns(self) -> list[LexEntry]:
        return self.by_category(Category.NOUN)

    def verbs(self) -> list[LexEntry]:
        return self.by_category(Category.VERB)


def load_lexicon(path: str | Path) -> Lexicon:
    """Load a tab-separated lexicon file.

    Record format: category, lemma, gender, sing_form, plur_form,
    vowel_onset; '#' begins a comment line.  Forms are NFC-normalized and
    ASCII apostrophes replaced with U+2019.
    """
    lexicon = Lexicon()
    text = Path(path).read_text(encoding="utf-8")
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        fields = line.split("\t")
        if len(fields) != 6:
            raise LexiconParseError(f"expected 6 tab-separated fields, got {len(fields)}", lineno)
        cat_s, lemma, gender_s, sing, plur, onset_s = (f.strip() for f in fields)
        try:
            category = Category(cat_s)
        except ValueError:
            raise LexiconParseError(f"unknown category {cat_s!r}", lineno) from None
        try:
            gender = Gender(gender_s)
        except ValueError:
            raise LexiconParseError(f"unknown gender {gender_s!r}", lineno) from None
        if onset_s not in ("true", "false"):
            raise LexiconParseError(f"vowel_onset must be true or false, got {onset_s!r}", lineno)
        try:
            entry = LexEntry(
                lemma=_normalize(lemma),
                category=category,
                gender=gender,
                sing_form=_normalize(sing),
                plur_form=_normalize(plur),
                vowel_onset=onset_s == "true",
            )
        except EntryInvariantError as exc:
            raise LexiconParseError(str(exc), lineno) from None
        try:
            lexicon.add(entry)
        except DuplicateEntryError:
            raise DuplicateEntryError(f"line {lineno}: duplicate entry ({lemma!r}, {cat_s})") from None
    return lexicon


def _determined_np(entry: LexEntry, number: Number) -> str:
    """Definite determiner + noun, with elision."""
    if number is Number.PLUR:
        return f"les {entry.plur_form}"
    if entry.vowel_onset:
        return f"l{APOSTROPHE}{entry.sing_form}"
    det = "le" if entry.gender is Gender.MASC else "la"
    return f"{det} {entry.sing_form}"


def realize_np(entry: LexEntry, number: Number, after_prep: str | None = None) -> str:
    """Realize a definite noun phrase, optionally governed by a preposition.

    Subject position: (ordinateur, Sing) -> "l'ordinateur".  After a
    preposition the contractions de+le -> du, de+les -> des, a+le -> au,
    a+les -> aux apply; elided l' blocks contraction ("de l'experience").
    """
    if entry.category is not Category.NOUN:
        raise CategoryError(f"realize_np needs a Noun, got {entry.category.value} ({entry.lemma})")
    np = _determined_np(entry, number)
    if after_prep is None:
        return np
    det, _, rest = np.partition(" ")
    contracted = _CONTRACTIONS.get((after_prep, det))
    if contracted is not None:
        return f"{contracted} {rest}"
    return f"{after_prep} {np}"


def realize_verb(entry: LexEntry, number: Number) -> str:
    if entry.category is not Category.VERB:
        raise CategoryError(f"realize_verb needs a Verb, got {entry.category.value} ({entry.lemma})")
    return entry.form(number)
