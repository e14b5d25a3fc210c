"""
Module Matcher - Person Linker
Phase NED: relie une mention reconnue au meilleur tag de la liste de
personnages, à un tag de famille ("the Bennet") ou au tag générique "person".

Étapes de find_best_match:
    1. identité (similarité régulière == 100) → ce personnage
    2. candidats = similarité partielle >= seuil, triés (score desc, ordre liste)
    3. plus d'un candidat → "the" = famille, titre = premier du même genre,
       sinon le premier candidat
    4. aucun candidat → diminutif (prénom canonique contenu dans un tag)
       sinon "person"
    5. un seul candidat → ce candidat, sans regarder le préfixe
"""

from dataclasses import dataclass, field
from enum import Enum
from typing import List, Optional, Tuple

import config
import utils
from lexicon_module import (Lexicons, TitleLexicon, get_name_from_diminutive,
                            get_name_gender, get_title_gender, load_lexicons)
from similarity_module import partial_string_similarity, regular_string_similarity
from text_model import PrefixKind, normalize

# ========================================================================
# PERSONNAGES
# ========================================================================

@dataclass(frozen=True)
class Protagonist:
    """Un tag (nom complet) et ses tokens de nom, titre initial séparé."""
    tag: str
    name_tokens: Tuple[str, ...]
    title: Optional[str] = None

    @classmethod
    def from_tag(cls, tag, titles=None):
        titles = titles if titles is not None else TitleLexicon.default()
        tag = utils.collapse_whitespace(tag)
        if not tag:
            raise utils.ValidationError("tag de personnage vide")

        tokens = tag.split(' ')
        title = None
        if len(tokens) > 1 and titles.is_title(tokens[0]):
            title, tokens = tokens[0], tokens[1:]

        return cls(tag, tuple(tokens), title)

    @property
    def normalized_tokens(self):
        return tuple(normalize(t) for t in self.name_tokens)


@dataclass(frozen=True)
class ProtagonistList:
    """Liste ordonnée; l'ordre départage les égalités de score."""
    entries: Tuple[Protagonist, ...]

    def __post_init__(self):
        seen = set()
        for protagonist in self.entries:
            key = normalize(protagonist.tag)
            if key in seen:
                raise utils.ValidationError(f"tag dupliqué: '{protagonist.tag}'")
            seen.add(key)

    @classmethod
    def from_tags(cls, tags, titles=None):
        return cls(tuple(Protagonist.from_tag(tag, titles) for tag in tags))

    def __iter__(self):
        return iter(self.entries)

    def __len__(self):
        return len(self.entries)

    @property
    def tags(self):
        return [p.tag for p in self.entries]

    def __contains__(self, tag):
        return any(p.tag == tag for p in self.entries)

# ========================================================================
# CONFIG & RÉSULTAT
# ========================================================================

@dataclass(frozen=True)
class MatchConfig:
    partial_similarity_precision: int = config.DEFAULT_PARTIAL_SIMILARITY_PRECISION
    rules_enabled: bool = True
    lexicons: Lexicons = field(default_factory=load_lexicons)

    def __post_init__(self):
        if not config.validate_threshold(self.partial_similarity_precision):
            raise utils.ConfigurationError(
                f"seuil invalide: {self.partial_similarity_precision} (0-100 attendu)")


class OutcomeKind(Enum):
    MATCHED = "matched"
    FAMILY = "family"
    UNMATCHED = "unmatched"


# Branches de l'algorithme (affichées par `match --explain`)
BRANCH_EXACT = "exact"
BRANCH_FAMILY = "family"
BRANCH_TITLE_GENDER = "title-gender"
BRANCH_TITLE_FALLBACK = "title-fallback"
BRANCH_TOP_CANDIDATE = "top-candidate"
BRANCH_DIMINUTIVE = "diminutive"
BRANCH_UNMATCHED = "unmatched"
BRANCH_SINGLE_CANDIDATE = "single-candidate"


@dataclass(frozen=True)
class MatchOutcome:
    kind: OutcomeKind
    tag: str = config.UNMATCHED_TAG
    score: Optional[int] = None
    branch: str = field(default=BRANCH_UNMATCHED, compare=False)

    @classmethod
    def matched(cls, tag, score, branch):
        return cls(OutcomeKind.MATCHED, tag, score, branch)

    @classmethod
    def family(cls, entity):
        tag = f"{config.FAMILY_ARTICLE} {utils.collapse_whitespace(entity)}"
        return cls(OutcomeKind.FAMILY, tag, None, BRANCH_FAMILY)

    @classmethod
    def unmatched(cls):
        return cls(OutcomeKind.UNMATCHED, config.UNMATCHED_TAG, None, BRANCH_UNMATCHED)

    @property
    def is_unmatched(self):
        return self.kind is OutcomeKind.UNMATCHED

# ========================================================================
# ALGORITHME
# ========================================================================

def score_candidates(entity, protagonists, threshold) -> List[Tuple[Protagonist, int]]:
    """
    Personnages dont la similarité partielle avec l'entité atteint le seuil.
    Args: entity (str), protagonists (ProtagonistList), threshold (int 0-100)
    Returns: list de (Protagonist, score), score desc puis ordre de la liste
    """
    scored = []
    for protagonist in protagonists:
        score = partial_string_similarity(protagonist.tag, entity)
        if score >= threshold:
            scored.append((protagonist, score))

    # sorted() est stable: l'ordre de la liste départage
    return sorted(scored, key=lambda item: -item[1])


def find_protagonist_with_name(protagonists, name):
    """Premier personnage dont un token de nom est exactement `name`."""
    key = normalize(name)
    for protagonist in protagonists:
        if key in protagonist.normalized_tokens:
            return protagonist
    return None


def find_best_match(entity, prefix, protagonists, cfg) -> MatchOutcome:
    """
    Meilleur tag pour une entité reconnue.
    Args:
        entity (str): texte de la mention
        prefix (PrefixKind): mot qui précède la mention
        protagonists (ProtagonistList)
        cfg (MatchConfig)
    Returns: MatchOutcome (fonction totale)
    """
    if not normalize(entity):
        return MatchOutcome.unmatched()

    prefix = prefix if prefix is not None else PrefixKind.none()
    lexicons = cfg.lexicons

    # 1. Identité
    for protagonist in protagonists:
        if regular_string_similarity(protagonist.tag, entity) == config.MAX_SCORE:
            return MatchOutcome.matched(protagonist.tag, config.MAX_SCORE, BRANCH_EXACT)

    # 2. Candidats
    candidates = score_candidates(entity, protagonists, cfg.partial_similarity_precision)

    # 3. Plusieurs candidats
    if len(candidates) > 1:
        top, top_score = candidates[0]

        if cfg.rules_enabled and prefix.is_the:
            return MatchOutcome.family(entity)

        if cfg.rules_enabled and prefix.is_title:
            title_gender = get_title_gender(lexicons.titles, prefix.title)
            for protagonist, score in candidates:
                gender = get_name_gender(lexicons.genders, protagonist.tag, lexicons.titles)
                if gender is title_gender:
                    return MatchOutcome.matched(protagonist.tag, score, BRANCH_TITLE_GENDER)
            return MatchOutcome.matched(top.tag, top_score, BRANCH_TITLE_FALLBACK)

        return MatchOutcome.matched(top.tag, top_score, BRANCH_TOP_CANDIDATE)

    # 4. Aucun candidat
    if not candidates:
        if cfg.rules_enabled:
            original_name = get_name_from_diminutive(lexicons.diminutives, entity)
            if original_name is not None:
                protagonist = find_protagonist_with_name(protagonists, original_name)
                if protagonist is not None:
                    score = partial_string_similarity(protagonist.tag, entity)
                    return MatchOutcome.matched(protagonist.tag, score, BRANCH_DIMINUTIVE)
        return MatchOutcome.unmatched()

    # 5. Un seul candidat
    protagonist, score = candidates[0]
    return MatchOutcome.matched(protagonist.tag, score, BRANCH_SINGLE_CANDIDATE)
