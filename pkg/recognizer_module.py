"""
Module Recognizer - Person Linker
Phase NER: mentions candidates de personnes, rappel maximal.

Trois stratégies interchangeables:
    - heuristic: suites de mots à majuscule (hors mots vides)
    - gazetteer: suites de tokens de noms des personnages / diminutifs connus
    - import: spans produits par un modèle NER externe (format standoff)
"""

import logging
from enum import Enum
from typing import Dict, List, Mapping

import utils
from corpus_module import read_records
from lexicon_module import TitleLexicon
from text_model import (Annotation, Document, Mention, PrefixKind, Span, normalize,
                        token_before, tokenize)

logger = logging.getLogger(__name__)

# ========================================================================
# TYPES
# ========================================================================

class RecognizerKind(Enum):
    HEURISTIC = "heuristic"
    GAZETTEER = "gazetteer"
    IMPORT = "import"

# ========================================================================
# PREFIX
# ========================================================================

def classify_prefix_token(token, titles):
    """Titre, article "the" ou rien pour un token précédent (ou None)."""
    if token is None:
        return PrefixKind.none()
    if titles.is_title(token.text):
        return PrefixKind.of_title(token.text)
    if normalize(token.text) == "the":
        return PrefixKind.the()
    return PrefixKind.none()


def extract_prefix(doc, span, titles, tokens=None):
    """
    Classe le token qui précède immédiatement le span. Un span importé qui
    commence déjà par un titre ("Mrs. Bennet") prend ce titre.
    Args: doc (Document), span (Span), titles (TitleLexicon), tokens (optionnel)
    Returns: PrefixKind

    Exemple: "the Bennet family", span sur "Bennet" → THE
    """
    inner = tokenize(doc.substring(span), titles.abbreviations)
    if len(inner) > 1 and titles.is_title(inner[0].text):
        return PrefixKind.of_title(inner[0].text)

    if tokens is None:
        tokens = tokenize(doc.text, titles.abbreviations)
    return classify_prefix_token(token_before(tokens, span.start), titles)


def _mentions_from_runs(doc, tokens, runs, titles):
    """Runs = listes d'indices de tokens consécutifs → Mentions."""
    mentions = []
    for run in runs:
        first, last = tokens[run[0]], tokens[run[-1]]
        span = Span(first.span.start, last.span.end)
        previous = tokens[run[0] - 1] if run[0] > 0 else None
        mentions.append(Mention(doc.id, span, doc.substring(span),
                                classify_prefix_token(previous, titles)))
    return mentions


def _maximal_runs(tokens, qualifies):
    runs = []
    current = []
    for index, token in enumerate(tokens):
        if qualifies(token):
            current.append(index)
        elif current:
            runs.append(current)
            current = []
    if current:
        runs.append(current)
    return runs

# ========================================================================
# HEURISTIC
# ========================================================================

def recognize_heuristic(doc, titles, stopwords) -> List[Mention]:
    """
    Suites maximales de tokens à majuscule initiale (hors mots vides et titres).
    Le titre qui précède n'est pas inclus dans le span.
    Args: doc (Document), titles (TitleLexicon), stopwords (set normalisé)
    Returns: list de Mention triée par start

    Exemple: "Elizabeth Bennet met Jane" → "Elizabeth Bennet", "Jane"
    """
    tokens = tokenize(doc.text, titles.abbreviations)

    def qualifies(token):
        return (token.text[0].isupper()
                and normalize(token.text) not in stopwords
                and not titles.is_title(token.text))

    return _mentions_from_runs(doc, tokens, _maximal_runs(tokens, qualifies), titles)

# ========================================================================
# GAZETTEER
# ========================================================================

def gazetteer_vocabulary(protagonists, dims):
    """
    (noms normalisés, noms tels qu'écrits) des personnages, plus les
    diminutifs dont le prénom canonique est un token de nom d'un personnage.
    """
    names = set()
    verbatim = set()
    for protagonist in protagonists:
        verbatim.update(protagonist.name_tokens)
        names.update(protagonist.normalized_tokens)

    diminutives = {d for d, canonical in dims.entries.items() if canonical in names}
    return frozenset(names | diminutives), frozenset(verbatim)


def recognize_gazetteer(doc, protagonists, dims, titles=None) -> List[Mention]:
    """
    Suites maximales de tokens de noms de personnages ou de diminutifs connus.
    Args:
        doc (Document), protagonists (ProtagonistList),
        dims (DiminutiveLexicon), titles (TitleLexicon)
    Returns: list de Mention triée par start, sans chevauchement

    Exemple: "Miss Bennet" → Mention("Bennet", prefix Miss)
    """
    titles = titles if titles is not None else TitleLexicon.default()
    tokens = tokenize(doc.text, titles.abbreviations)
    names, verbatim = gazetteer_vocabulary(protagonists, dims)

    def anchors(token):
        return token.text[0].isupper() and normalize(token.text) in names

    def qualifies(token):
        return anchors(token) or token.text in verbatim

    runs = []
    for run in _maximal_runs(tokens, qualifies):
        # particule en minuscule ("de") seulement entre deux noms
        while run and not anchors(tokens[run[0]]):
            run = run[1:]
        while run and not anchors(tokens[run[-1]]):
            run = run[:-1]
        if run:
            runs.append(run)

    return _mentions_from_runs(doc, tokens, runs, titles)

# ========================================================================
# IMPORT
# ========================================================================

def _index_documents(docs) -> Dict[str, Document]:
    if isinstance(docs, Mapping):
        return dict(docs)
    return {doc.id: doc for doc in docs}


def mentions_from_records(records, docs, titles=None) -> List[Mention]:
    """
    Valide des enregistrements standoff et les transforme en Mentions.
    Args: records (list de dict), docs (corpus), titles (TitleLexicon)
    Returns: list de Mention triée par (doc_id, start)
    Raises: ValidationError (index de l'enregistrement dans le message)
    """
    titles = titles if titles is not None else TitleLexicon.default()
    by_id = _index_documents(docs)
    token_cache = {}
    mentions = []

    for index, record in enumerate(records):
        annotation = Annotation.from_record(record, index)
        doc = by_id.get(annotation.doc_id)

        if doc is None:
            raise utils.ValidationError(
                f"enregistrement {index}: document inconnu '{annotation.doc_id}'")

        if not annotation.span.fits(doc.text):
            raise utils.ValidationError(
                f"enregistrement {index}: span ({annotation.span.start}, {annotation.span.end}) "
                f"hors du document '{doc.id}' ({len(doc.text)} caractères)")

        surface = doc.substring(annotation.span)
        if surface != annotation.surface:
            raise utils.ValidationError(
                f"enregistrement {index}: surface '{annotation.surface}' ≠ texte '{surface}'")

        if doc.id not in token_cache:
            token_cache[doc.id] = tokenize(doc.text, titles.abbreviations)

        prefix = extract_prefix(doc, annotation.span, titles, token_cache[doc.id])
        mentions.append(Mention(doc.id, annotation.span, surface, prefix))

    mentions.sort(key=lambda m: (m.doc_id, m.span.start, m.span.end))

    for previous, current in zip(mentions, mentions[1:]):
        if previous.doc_id == current.doc_id and previous.span.overlaps(current.span):
            raise utils.ValidationError(
                f"mentions chevauchantes dans '{current.doc_id}' à {current.span.start}")

    return mentions


def import_mentions(path, docs, titles=None) -> List[Mention]:
    """
    Charge les spans d'un NER externe (standoff JSON, tag "person").
    Args: path (chemin), docs (corpus: list ou dict id → Document)
    Returns: list de Mention
    Raises: ValidationError, OSError
    """
    records = read_records(path)
    logger.info(f"📥 Import NER: {len(records)} spans depuis {path}")
    return mentions_from_records(records, docs, titles)

# ========================================================================
# DISPATCH
# ========================================================================

def recognize(doc, kind, protagonists, lexicons, stopwords, imported=None) -> List[Mention]:
    """
    Lance la stratégie demandée sur un document.
    Args:
        imported (Iterable[Mention]): mentions importées (kind == IMPORT)
    """
    if kind is RecognizerKind.HEURISTIC:
        return recognize_heuristic(doc, lexicons.titles, stopwords)

    if kind is RecognizerKind.GAZETTEER:
        return recognize_gazetteer(doc, protagonists, lexicons.diminutives, lexicons.titles)

    return [m for m in (imported or []) if m.doc_id == doc.id]
