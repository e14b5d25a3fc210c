"""
Module Stats - Person Linker
Statistiques de corpus: formes de surface d'un personnage, titres devant un
nom de famille, tags qui partagent un nom
"""

from collections import Counter
from fractions import Fraction
from typing import Dict, Tuple

import config
import utils
from corpus_module import index_by_id
from recognizer_module import extract_prefix
from text_model import normalize, tokenize

# ========================================================================
# SURFACES
# ========================================================================

def _ranked(counter):
    """Décroissant par nombre, puis alphabétique (sortie stable)."""
    return dict(sorted(counter.items(), key=lambda item: (-item[1], item[0])))


def surface_form_counts(annotations, tag) -> Dict[str, int]:
    """
    Formes de surface des annotations d'un tag.
    Args: annotations (list d'Annotation), tag (str)
    Returns: dict surface → nombre, décroissant

    Exemple: "Lizzy", "Lizzy", "Elizabeth" → {'Lizzy': 2, 'Elizabeth': 1}
    """
    counter = Counter(utils.collapse_whitespace(a.surface)
                      for a in annotations if a.tag == tag)
    return _ranked(counter)


def tag_frequencies(annotations) -> Dict[str, int]:
    """Nombre d'annotations par tag."""
    return _ranked(Counter(a.tag for a in annotations))

# ========================================================================
# TITRES
# ========================================================================

def title_breakdown(annotations, surname, titles, docs) -> Dict[str, int]:
    """
    Répartition des mentions d'un nom de famille selon le titre qui les précède.

    Args:
        annotations (list d'Annotation), surname (str)
        titles (TitleLexicon), docs (list de Document)

    Returns:
        dict titre → nombre, plus le seau 'bare' (sans titre)

    Exemple: "Mr. Bennet... Mrs. Bennet... Bennet" → {'Mr.': 1, 'Mrs.': 1, 'bare': 1}
    """
    by_id = index_by_id(docs)
    key = normalize(surname)
    token_cache = {}
    counter = Counter()

    for annotation in annotations:
        words = tokenize(annotation.surface, titles.abbreviations)
        if not words or normalize(words[-1].text) != key:
            continue

        doc = by_id.get(annotation.doc_id)
        if doc is None:
            raise utils.ValidationError(f"document inconnu '{annotation.doc_id}'")

        if doc.id not in token_cache:
            token_cache[doc.id] = tokenize(doc.text, titles.abbreviations)

        prefix = extract_prefix(doc, annotation.span, titles, token_cache[doc.id])
        counter[prefix.title if prefix.is_title else config.BARE_BUCKET] += 1

    return _ranked(counter)


def titled_share(breakdown) -> Tuple[int, int]:
    """
    (mentions avec titre, total) d'une répartition title_breakdown.
    """
    total = sum(breakdown.values())
    return total - breakdown.get(config.BARE_BUCKET, 0), total

# ========================================================================
# TAGS
# ========================================================================

def shared_common_part_stats(protagonists, titles) -> Tuple[int, Fraction]:
    """
    Nombre de tags qui partagent au moins un token de nom (hors titres) avec
    un autre tag, et leur part dans la liste.

    Args: protagonists (ProtagonistList), titles (TitleLexicon)
    Returns: (count, Fraction) - (0, 0) pour une liste vide

    Exemple: Elizabeth Bennet, Mr. Bennet, Mr. Darcy → (2, 2/3)
    """
    entries = list(protagonists)
    if not entries:
        return 0, Fraction(0)

    parts = [
        {normalize(t) for t in p.name_tokens if not titles.is_title(t)}
        for p in entries
    ]

    owners = Counter()
    for tokens in parts:
        owners.update(tokens)

    count = sum(1 for tokens in parts if any(owners[t] > 1 for t in tokens))
    return count, Fraction(count, len(entries))


def corpus_summary(docs, annotations, protagonists, titles):
    """
    Résumé texte d'un corpus annoté.
    Returns: str (plusieurs lignes)
    """
    frequencies = tag_frequencies(annotations)
    unmatched = frequencies.get(config.UNMATCHED_TAG, 0)
    used = [tag for tag in frequencies if tag in protagonists]
    shared, share = shared_common_part_stats(protagonists, titles)

    lines = [
        f"Documents: {len(docs)}",
        f"Annotations: {len(annotations)}",
        f"Non rattachées ({config.UNMATCHED_TAG}): {unmatched}",
        f"Tags utilisés: {len(used)} / {len(protagonists)}",
        f"Tags partageant un nom: {shared} ({utils.format_percentage(share.numerator, share.denominator)})",
    ]
    return "\n".join(lines) + "\n"
