"""
Module Text Model - Person Linker
Vocabulaire commun: documents, tokens, spans, mentions, annotations
"""

import unicodedata
from bisect import bisect_right
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from typing import Dict, FrozenSet, List, Optional
import config
import utils

# ========================================================================
# NORMALISATION
# ========================================================================

def normalize(s):
    """
    Forme de comparaison: NFC, casefold, strip, espaces internes réduits.
    Args: s (str)
    Returns: str (idempotent)

    Exemple: "  Mr.  DARCY " → "mr. darcy"
    """
    if not s:
        return ""

    folded = unicodedata.normalize('NFC', s).casefold()
    folded = unicodedata.normalize('NFC', folded)
    return " ".join(folded.split())

# ========================================================================
# TYPES
# ========================================================================

@dataclass(frozen=True, order=True)
class Span:
    """Intervalle [start, end) en indices de caractères Unicode."""
    start: int
    end: int

    def __post_init__(self):
        if self.start < 0 or self.end <= self.start:
            raise utils.ValidationError(f"span invalide: ({self.start}, {self.end})")

    def fits(self, text):
        return self.end <= len(text)

    def overlaps(self, other):
        return self.start < other.end and other.start < self.end


@dataclass(frozen=True)
class Token:
    text: str
    span: Span


@dataclass(frozen=True)
class Document:
    """Texte immuable d'un document du corpus."""
    id: str
    text: str

    def __post_init__(self):
        if not self.id:
            raise utils.ValidationError("document sans id")

    def substring(self, span):
        return self.text[span.start:span.end]


class PrefixType(Enum):
    TITLE = "title"
    THE = "the"
    NONE = "none"


@dataclass(frozen=True)
class PrefixKind:
    """Mot qui précède la mention: titre, article "the" ou rien."""
    variant: PrefixType
    title: Optional[str] = None

    @classmethod
    def of_title(cls, title):
        return cls(PrefixType.TITLE, title)

    @classmethod
    def the(cls):
        return cls(PrefixType.THE)

    @classmethod
    def none(cls):
        return cls(PrefixType.NONE)

    @property
    def is_title(self):
        return self.variant is PrefixType.TITLE

    @property
    def is_the(self):
        return self.variant is PrefixType.THE

    def __str__(self):
        if self.is_title:
            return self.title
        if self.is_the:
            return config.FAMILY_ARTICLE
        return ""


@dataclass(frozen=True)
class Mention:
    doc_id: str
    span: Span
    surface: str
    prefix: PrefixKind

    def __post_init__(self):
        if not self.surface.strip():
            raise utils.ValidationError(f"mention vide dans {self.doc_id}")


@dataclass(frozen=True)
class Annotation:
    doc_id: str
    span: Span
    surface: str
    tag: str

    @property
    def sort_key(self):
        return (self.doc_id, self.span.start, self.span.end)

    def to_record(self) -> Dict:
        """Enregistrement du format standoff JSON."""
        return {
            'doc_id': self.doc_id,
            'start': self.span.start,
            'end': self.span.end,
            'surface': self.surface,
            'tag': self.tag,
        }

    @classmethod
    def from_record(cls, record, index=None):
        """
        Construit une annotation depuis un enregistrement JSON.
        Raises: ValidationError si un champ manque ou a le mauvais type
        """
        where = f"enregistrement {index}" if index is not None else "enregistrement"

        if not isinstance(record, dict):
            raise utils.ValidationError(f"{where}: objet JSON attendu")

        for field_name, field_type in (('doc_id', str), ('start', int), ('end', int),
                                       ('surface', str), ('tag', str)):
            value = record.get(field_name)
            if not isinstance(value, field_type) or isinstance(value, bool):
                raise utils.ValidationError(f"{where}: champ '{field_name}' manquant ou invalide")

        try:
            span = Span(record['start'], record['end'])
        except utils.ValidationError as e:
            raise utils.ValidationError(f"{where}: {e}") from None

        return cls(record['doc_id'], span, record['surface'], record['tag'])


def sort_annotations(annotations):
    """Trie par (doc_id, start, end)."""
    return sorted(annotations, key=lambda a: a.sort_key)

# ========================================================================
# TOKENIZER
# ========================================================================

def default_abbreviations() -> FrozenSet[str]:
    """Titres abrégés (avec point final) de la table par défaut."""
    return frozenset(t for t in config.DEFAULT_TITLES if t.endswith('.'))


def tokenize(text, abbreviations=None) -> List[Token]:
    """
    Découpe le texte en tokens avec leurs offsets.
    Args:
        text (str)
        abbreviations (set de titres normalisés gardés entiers, ex: {'mr.'})
    Returns: list de Token dans l'ordre du document

    Exemple: "Mr. Bennet spoke." → Mr. | Bennet | spoke | .
    """
    if abbreviations is None:
        abbreviations = default_abbreviations()
    return list(_tokenize(text, frozenset(abbreviations)))


@lru_cache(maxsize=256)
def _tokenize(text, abbreviations):
    tokens = []
    position = 0
    length = len(text)

    while position < length:
        # Saute les espaces
        if text[position].isspace():
            position += 1
            continue

        end = position
        while end < length and not text[end].isspace():
            end += 1

        tokens.extend(_split_run(text, position, end, abbreviations))
        position = end

    return tuple(tokens)


def _split_run(text, start, end, abbreviations):
    """Détache la ponctuation d'une suite de caractères non blancs."""
    head = []
    tail = []

    # Ponctuation ouvrante
    while start < end and text[start] in config.LEADING_PUNCTUATION:
        head.append(Token(text[start], Span(start, start + 1)))
        start += 1

    # Ponctuation finale, sauf le point d'un titre abrégé ("Mr.")
    while start < end and text[end - 1] in config.TRAILING_PUNCTUATION:
        if text[end - 1] == '.' and normalize(text[start:end]) in abbreviations:
            break
        tail.append(Token(text[end - 1], Span(end - 1, end)))
        end -= 1

    # Possessif
    if end - start > 2 and text[end - 2:end].casefold() in config.POSSESSIVE_SUFFIXES:
        tail.append(Token(text[end - 2:end], Span(end - 2, end)))
        end -= 2

    core = [Token(text[start:end], Span(start, end))] if start < end else []
    return head + core + list(reversed(tail))


def token_before(tokens, position) -> Optional[Token]:
    """Dernier token qui se termine avant `position` (None en début de texte)."""
    index = bisect_right(tokens, position, key=lambda t: t.span.end)
    return tokens[index - 1] if index > 0 else None
