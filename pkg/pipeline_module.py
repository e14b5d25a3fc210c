"""
Module Pipeline - Person Linker
Enchaîne les deux phases: reconnaissance (NER) puis rattachement (NED),
par document puis sur tout le corpus.
"""

import html
import logging
import re
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import FrozenSet, List, Optional, Tuple

import config
import utils
from corpus_module import index_by_id, read_records
from lexicon_module import load_lexicons, load_stopwords
from matcher_module import MatchConfig, find_best_match
from recognizer_module import RecognizerKind, mentions_from_records, recognize
from text_model import Annotation, Span, sort_annotations

logger = logging.getLogger(__name__)

# ========================================================================
# CONFIG
# ========================================================================

@dataclass(frozen=True)
class PipelineConfig:
    recognizer: RecognizerKind = RecognizerKind.GAZETTEER
    match: MatchConfig = field(default_factory=MatchConfig)
    emit_unmatched: bool = False
    import_path: Optional[Path] = None
    stopwords: FrozenSet[str] = frozenset()
    workers: int = 1

    def __post_init__(self):
        if self.recognizer is RecognizerKind.IMPORT:
            if self.import_path is None:
                raise utils.ConfigurationError("--ner import demande un fichier --import")
            if not Path(self.import_path).is_file():
                raise utils.ConfigurationError(f"fichier d'import introuvable: {self.import_path}")

        if not isinstance(self.workers, int) or self.workers < 1:
            raise utils.ConfigurationError(f"workers invalide: {self.workers}")


def build_pipeline_config(recognizer=config.NER_GAZETTEER,
                          threshold=config.DEFAULT_PARTIAL_SIMILARITY_PRECISION,
                          rules_enabled=True, emit_unmatched=False, import_path=None,
                          diminutives_path=None, genders_path=None, titles_path=None,
                          stopwords_path=None, workers=1):
    """
    Construit la config complète en chargeant les lexiques depuis les fichiers.

    Args:
        recognizer (str): 'heuristic', 'gazetteer' ou 'import'
        threshold (int): seuil de similarité partielle (0-100)
        *_path: fichiers de lexiques (ressources livrées si None)

    Returns:
        PipelineConfig

    Raises: ConfigurationError, LexiconError, OSError
    """
    if recognizer not in config.VALID_NER:
        raise utils.ConfigurationError(f"recognizer inconnu: '{recognizer}'")

    lexicons = load_lexicons(diminutives_path, genders_path, titles_path)
    stopwords = load_stopwords(stopwords_path or config.STOPWORDS_PATH)

    return PipelineConfig(
        recognizer=RecognizerKind(recognizer),
        match=MatchConfig(threshold, rules_enabled, lexicons),
        emit_unmatched=emit_unmatched,
        import_path=Path(import_path) if import_path else None,
        stopwords=stopwords,
        workers=workers,
    )

# ========================================================================
# ANNOTATION
# ========================================================================

def annotate_document(doc, protagonists, cfg, mentions=None) -> List[Annotation]:
    """
    NER puis NED sur un document.

    Args:
        doc (Document), protagonists (ProtagonistList), cfg (PipelineConfig)
        mentions (list de Mention): mentions importées déjà validées (import)

    Returns:
        list: Annotations triées par start (une par mention retenue)
    """
    lexicons = cfg.match.lexicons

    if cfg.recognizer is RecognizerKind.IMPORT and mentions is None:
        records = [r for r in read_records(cfg.import_path)
                   if isinstance(r, dict) and r.get('doc_id') == doc.id]
        mentions = mentions_from_records(records, [doc], lexicons.titles)

    found = recognize(doc, cfg.recognizer, protagonists, lexicons, cfg.stopwords, mentions)

    annotations = []
    for mention in found:
        outcome = find_best_match(mention.surface, mention.prefix, protagonists, cfg.match)
        if outcome.is_unmatched and not cfg.emit_unmatched:
            continue
        annotations.append(Annotation(doc.id, mention.span, mention.surface, outcome.tag))

    return sorted(annotations, key=lambda a: a.span.start)


def annotate_corpus(docs, protagonists, cfg) -> List[Annotation]:
    """
    Annote tous les documents (indépendants les uns des autres).

    Args:
        docs (list de Document), protagonists (ProtagonistList), cfg (PipelineConfig)

    Returns:
        list: Annotations triées par (doc_id, start), quel que soit l'ordre de traitement

    Raises: ConfigurationError si deux documents ont le même id
    """
    by_id = index_by_id(docs)
    logger.info(f"🔍 Annotation de {len(by_id)} document(s) "
                f"({cfg.recognizer.value}, seuil {cfg.match.partial_similarity_precision})")

    imported = None
    if cfg.recognizer is RecognizerKind.IMPORT:
        imported = mentions_from_records(read_records(cfg.import_path), by_id,
                                         cfg.match.lexicons.titles)

    def run(doc):
        doc_mentions = None
        if imported is not None:
            doc_mentions = [m for m in imported if m.doc_id == doc.id]
        return annotate_document(doc, protagonists, cfg, doc_mentions)

    if cfg.workers > 1 and len(docs) > 1:
        with ThreadPoolExecutor(max_workers=cfg.workers) as executor:
            results = list(executor.map(run, docs))
    else:
        results = [run(doc) for doc in docs]

    annotations = sort_annotations(a for result in results for a in result)
    logger.info(f"✅ {len(annotations)} annotation(s)")
    return annotations

# ========================================================================
# INLINE
# ========================================================================

INLINE_PATTERN = re.compile(r'<person name="([^"]*)">(.*?)</person>', re.DOTALL)


def render_inline(doc, annotations):
    """
    Texte du document avec chaque span entouré de `<person name="TAG">...</person>`.
    Le texte est échappé (&, <, >): un balisage déjà présent dans le roman
    n'est pas relu comme une annotation.

    Args: doc (Document), annotations (list d'Annotation de ce document)
    Returns: str
    Raises: ValidationError si deux annotations se chevauchent

    Exemple: "Lizzy laughed." → '<person name="Elizabeth Bennet">Lizzy</person> laughed.'
    """
    ordered = sorted(annotations, key=lambda a: (a.span.start, a.span.end))

    parts = []
    position = 0
    for annotation in ordered:
        if annotation.span.start < position:
            raise utils.ValidationError(
                f"annotations chevauchantes dans '{doc.id}' à {annotation.span.start}")
        if not annotation.span.fits(doc.text):
            raise utils.ValidationError(
                f"annotation hors du document '{doc.id}': {annotation.span.end}")

        parts.append(html.escape(doc.text[position:annotation.span.start], quote=False))
        parts.append(f'<person name="{html.escape(annotation.tag, quote=True)}">'
                     f'{html.escape(doc.substring(annotation.span), quote=False)}</person>')
        position = annotation.span.end

    parts.append(html.escape(doc.text[position:], quote=False))
    return "".join(parts)


def parse_inline(doc_id, rendered) -> Tuple[str, List[Annotation]]:
    """
    Inverse de render_inline.
    Returns: (texte d'origine, annotations)
    """
    text_parts = []
    annotations = []
    length = 0
    position = 0

    for match in INLINE_PATTERN.finditer(rendered):
        before = html.unescape(rendered[position:match.start()])
        text_parts.append(before)
        length += len(before)

        surface = html.unescape(match.group(2))
        span = Span(length, length + len(surface))
        annotations.append(Annotation(doc_id, span, surface, html.unescape(match.group(1))))

        text_parts.append(surface)
        length += len(surface)
        position = match.end()

    text_parts.append(html.unescape(rendered[position:]))
    return "".join(text_parts), annotations
