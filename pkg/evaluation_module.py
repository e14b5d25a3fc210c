"""
Module Evaluation - Person Linker
Précision / rappel / F-mesure des prédictions contre une annotation de référence
"""

import logging
from collections import defaultdict
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Dict, Mapping, Tuple

import config
import utils
from corpus_module import read_standoff
from text_model import normalize

logger = logging.getLogger(__name__)

# ========================================================================
# TYPES
# ========================================================================

class MatchMode(Enum):
    SPAN_ONLY = config.MODE_SPAN
    SPAN_AND_TAG = config.MODE_SPAN_TAG


@dataclass(frozen=True)
class MetricsReport:
    """Compteurs bruts; les métriques sont des Fractions calculées à la demande."""
    tp: int = 0
    fp: int = 0
    fn: int = 0
    per_tag: Mapping[str, Tuple[int, int, int]] = field(default_factory=dict)

    @property
    def precision(self) -> Fraction:
        return utils.ratio(self.tp, self.tp + self.fp)

    @property
    def recall(self) -> Fraction:
        return utils.ratio(self.tp, self.tp + self.fn)

    @property
    def f1(self) -> Fraction:
        p, r = self.precision, self.recall
        if p + r == 0:
            return Fraction(0)
        return 2 * p * r / (p + r)

    @property
    def support(self):
        return self.tp + self.fn

# ========================================================================
# COMPARAISON
# ========================================================================

def _check_documents(annotations, doc_ids, label):
    for annotation in annotations:
        if annotation.doc_id not in doc_ids:
            raise utils.ValidationError(
                f"{label}: document inconnu '{annotation.doc_id}' ({annotation.surface})")


def compare(gold, pred, mode=MatchMode.SPAN_AND_TAG, doc_ids=None) -> MetricsReport:
    """
    Compare prédictions et référence, span exact (et tag en mode SPAN_AND_TAG).

    Args:
        gold, pred (list d'Annotation)
        mode (MatchMode)
        doc_ids (set): ids du corpus; si fourni, toute annotation hors corpus est refusée

    Returns:
        MetricsReport

    Exemple: 4 références, 5 prédictions dont 3 exactes → P=3/5, R=3/4
    """
    if doc_ids is not None:
        doc_ids = set(doc_ids)
        _check_documents(gold, doc_ids, "référence")
        _check_documents(pred, doc_ids, "prédiction")

    def key(annotation):
        base = (annotation.doc_id, annotation.span.start, annotation.span.end)
        if mode is MatchMode.SPAN_AND_TAG:
            return base + (normalize(annotation.tag),)
        return base

    # Chaque référence n'est consommée qu'une fois
    available = defaultdict(list)
    for annotation in gold:
        available[key(annotation)].append(annotation)

    counts = defaultdict(lambda: [0, 0, 0])
    tp = fp = 0

    for annotation in pred:
        bucket = available.get(key(annotation))
        if bucket:
            matched = bucket.pop(0)
            counts[matched.tag][0] += 1
            tp += 1
        else:
            counts[annotation.tag][1] += 1
            fp += 1

    fn = 0
    for bucket in available.values():
        for annotation in bucket:
            counts[annotation.tag][2] += 1
            fn += 1

    per_tag = {tag: tuple(values) for tag, values in sorted(counts.items())}
    return MetricsReport(tp, fp, fn, per_tag)


def aggregate(reports) -> MetricsReport:
    """
    Micro-moyenne: somme des compteurs, métriques recalculées.
    Returns: MetricsReport
    """
    tp = fp = fn = 0
    per_tag = defaultdict(lambda: [0, 0, 0])

    for report in reports:
        tp += report.tp
        fp += report.fp
        fn += report.fn
        for tag, values in report.per_tag.items():
            for i in range(3):
                per_tag[tag][i] += values[i]

    return MetricsReport(tp, fp, fn, {tag: tuple(v) for tag, v in sorted(per_tag.items())})


def compare_by_document(gold, pred, mode=MatchMode.SPAN_AND_TAG, doc_ids=None) -> Dict[str, MetricsReport]:
    """
    Un rapport par document (lignes par roman des tableaux de résultats).
    Returns: dict doc_id → MetricsReport, trié par doc_id
    """
    ids = set(a.doc_id for a in gold) | set(a.doc_id for a in pred)
    if doc_ids is not None:
        compare(gold, pred, mode, doc_ids)  # validation seule
        ids |= set(doc_ids)

    gold_by_doc = defaultdict(list)
    pred_by_doc = defaultdict(list)
    for annotation in gold:
        gold_by_doc[annotation.doc_id].append(annotation)
    for annotation in pred:
        pred_by_doc[annotation.doc_id].append(annotation)

    return {doc_id: compare(gold_by_doc[doc_id], pred_by_doc[doc_id], mode)
            for doc_id in sorted(ids)}

# ========================================================================
# RAPPORTS
# ========================================================================

def report_to_dict(report):
    """
    Forme JSON du rapport.
    Returns: dict {tp, fp, fn, precision, recall, f1, support, per_tag}
    """
    return {
        'tp': report.tp,
        'fp': report.fp,
        'fn': report.fn,
        'precision': utils.round_metric(report.precision),
        'recall': utils.round_metric(report.recall),
        'f1': utils.round_metric(report.f1),
        'support': report.support,
        'per_tag': {
            tag: {'tp': tp, 'fp': fp, 'fn': fn}
            for tag, (tp, fp, fn) in sorted(report.per_tag.items())
        },
    }


def render_report_table(rows, overall):
    """
    Tableau texte aligné: Precision / Recall / F-measure / Support.

    Args:
        rows (dict libellé → MetricsReport), overall (MetricsReport)
    Returns: str
    """
    labels = list(rows.keys()) + [config.OVERALL_LABEL]
    width = max(len(label) for label in labels)

    header = f"{'':<{width}}  {'Precision':>9}  {'Recall':>6}  {'F-measure':>9}  {'Support':>7}"
    lines = [header]

    def line(label, report):
        return (f"{label:<{width}}  {float(report.precision):>9.2f}  "
                f"{float(report.recall):>6.2f}  {float(report.f1):>9.2f}  {report.support:>7}")

    for label, report in rows.items():
        lines.append(line(label, report))
    lines.append(line(config.OVERALL_LABEL, overall))

    return "\n".join(lines) + "\n"


def evaluate_files(gold_path, pred_path, mode, doc_ids=None):
    """
    Lit référence et prédictions puis évalue.
    Sans liste de documents (--corpus), les ids connus sont ceux de la référence.

    Returns:
        dict: {'overall': MetricsReport, 'by_document': dict, 'table': str}
    """
    gold = read_standoff(gold_path)
    pred = read_standoff(pred_path)
    logger.info(f"📊 Évaluation ({mode.value}): {len(gold)} référence(s), {len(pred)} prédiction(s)")

    if doc_ids is None:
        doc_ids = {a.doc_id for a in gold}

    overall = compare(gold, pred, mode, doc_ids)
    by_document = compare_by_document(gold, pred, mode, doc_ids)

    return {
        'overall': overall,
        'by_document': by_document,
        'table': render_report_table(by_document, overall),
    }
