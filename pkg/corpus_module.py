"""
================================================================================
CORPUS MODULE - Entrées / sorties fichiers
================================================================================
Supporte: dossier de documents .txt, liste de personnages, annotations
standoff JSON (or, prédictions, NER importé), fichiers inline .annotated.txt
================================================================================
"""

import json
import logging
from pathlib import Path
from typing import Dict, List

import config
import utils
from text_model import Annotation, Document, sort_annotations

logger = logging.getLogger(__name__)


# ========================================================================
# DOCUMENTS
# ========================================================================

def load_corpus(directory):
    """
    Charge tous les documents `*.txt` d'un dossier (id = nom sans extension).

    Args:
        directory: Dossier du corpus

    Returns:
        list: Documents triés par id

    Les fichiers `*.annotated.txt` (sorties inline) sont ignorés.
    """
    directory = Path(directory)
    if not directory.is_dir():
        raise FileNotFoundError(f"Dossier introuvable: {directory}")

    documents = []
    for path in sorted(directory.glob(f"*{config.DOCUMENT_SUFFIX}")):
        if path.name.endswith(config.INLINE_SUFFIX):
            continue
        text = path.read_text(encoding='utf-8-sig')
        documents.append(Document(path.stem, text))

    logger.info(f"📥 Corpus: {len(documents)} document(s) dans {directory}")
    return documents


def index_by_id(documents) -> Dict[str, Document]:
    """
    Dict id → Document.
    Raises: ConfigurationError si un id apparaît deux fois
    """
    by_id = {}
    for doc in documents:
        if doc.id in by_id:
            raise utils.ConfigurationError(f"id de document dupliqué: '{doc.id}'")
        by_id[doc.id] = doc
    return by_id


# ========================================================================
# PERSONNAGES
# ========================================================================

def load_protagonists(path, titles=None):
    """
    Charge une liste de personnages: un tag par ligne, ordre significatif,
    commentaires '#' ignorés.

    Returns:
        ProtagonistList
    """
    from matcher_module import ProtagonistList

    tags = []
    for line in utils.read_lines(path):
        line = line.strip()
        if line and not line.startswith('#'):
            tags.append(line)

    protagonists = ProtagonistList.from_tags(tags, titles)
    logger.info(f"👥 {len(protagonists)} personnage(s) depuis {path}")
    return protagonists


# ========================================================================
# STANDOFF JSON
# ========================================================================

def read_records(path) -> List[dict]:
    """
    Lit un fichier standoff JSON brut (liste d'objets).
    Raises: ValidationError si ce n'est pas une liste JSON, OSError
    """
    with open(path, 'r', encoding='utf-8-sig') as f:
        try:
            data = json.load(f)
        except json.JSONDecodeError as e:
            raise utils.ValidationError(f"JSON invalide dans {path}: {e}") from None

    if not isinstance(data, list):
        raise utils.ValidationError(f"{path}: liste JSON attendue")
    return data


def read_standoff(path) -> List[Annotation]:
    """
    Lit des annotations standoff.

    Returns:
        list: Annotations triées par (doc_id, start)
    """
    records = read_records(path)
    annotations = [Annotation.from_record(record, i) for i, record in enumerate(records)]
    return sort_annotations(annotations)


def dumps_standoff(annotations):
    """Sérialisation déterministe (triée, UTF-8 lisible, fin de ligne finale)."""
    records = [a.to_record() for a in sort_annotations(annotations)]
    return json.dumps(records, ensure_ascii=False, indent=2) + "\n"


def write_standoff(path, annotations):
    """
    Écrit les annotations au format standoff JSON.

    Returns:
        dict avec 'success' (bool), 'count' (int), 'file_path' (str)
    """
    Path(path).write_text(dumps_standoff(annotations), encoding='utf-8')
    logger.info(f"✅ {len(annotations)} annotation(s) écrites: {path}")
    return {
        'success': True,
        'count': len(annotations),
        'file_path': str(path)
    }


# ========================================================================
# INLINE
# ========================================================================

def write_inline_files(out_dir, documents, annotations):
    """
    Écrit un fichier `<id>.annotated.txt` par document.

    Returns:
        list: chemins écrits
    """
    from pipeline_module import render_inline

    out_dir = Path(out_dir)
    by_doc = {}
    for annotation in annotations:
        by_doc.setdefault(annotation.doc_id, []).append(annotation)

    written = []
    for doc in documents:
        path = out_dir / f"{doc.id}{config.INLINE_SUFFIX}"
        path.write_text(render_inline(doc, sort_annotations(by_doc.get(doc.id, []))),
                        encoding='utf-8')
        written.append(path)

    logger.info(f"📝 {len(written)} fichier(s) inline dans {out_dir}")
    return written
