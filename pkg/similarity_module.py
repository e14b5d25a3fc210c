"""
Module Similarité - Person Linker
Similarité régulière et partielle (échelle 0-100) basées sur Levenshtein
"""

from rapidfuzz.distance import Levenshtein
import config
from text_model import normalize

# ========================================================================
# DISTANCE
# ========================================================================

def levenshtein(a, b):
    """
    Nombre minimal d'insertions, suppressions et substitutions (coût 1).
    Args: a, b (str)
    Returns: int

    Exemple: ("kitten", "sitting") → 3
    """
    return Levenshtein.distance(a, b)

# ========================================================================
# SCORES
# ========================================================================

def _ratio(a, b):
    """Score sur chaînes déjà normalisées."""
    total = len(a) + len(b)
    if total == 0:
        return config.MAX_SCORE

    distance = Levenshtein.distance(a, b)
    # Arrondi au demi supérieur, en entiers
    score = (200 * (total - distance) + total) // (2 * total)

    # 100 réservé à l'égalité stricte (longues chaînes à 1 édition près)
    if distance > 0:
        score = min(score, config.MAX_SCORE - 1)
    return score


def regular_string_similarity(a, b):
    """
    Similarité de Levenshtein normalisée, après normalisation des deux chaînes.
    Args: a, b (str)
    Returns: int dans [0, 100], 100 ssi normalize(a) == normalize(b)

    Exemple: ("Lizzy", "Lizzie") → 82
    """
    return _ratio(normalize(a), normalize(b))


def partial_string_similarity(a, b):
    """
    Meilleur score de la plus courte contre chaque fenêtre de même longueur
    de la plus longue.
    Args: a, b (str)
    Returns: int dans [0, 100]

    Exemple: ("Bennet", "Mrs. Bennet") → 100
    """
    a = normalize(a)
    b = normalize(b)
    shorter, longer = (a, b) if len(a) <= len(b) else (b, a)

    if not shorter:
        return config.MAX_SCORE

    if shorter in longer:
        return config.MAX_SCORE

    width = len(shorter)
    # Jamais en dessous de la similarité régulière
    best = _ratio(shorter, longer)
    for start in range(len(longer) - width + 1):
        score = _ratio(shorter, longer[start:start + width])
        if score > best:
            best = score
    return best

# ========================================================================
# DEBUG
# ========================================================================

if __name__ == "__main__":
    print("=" * 60)
    print("SIMILARITY MODULE - TEST")
    print("=" * 60)
    print(f"  levenshtein kitten/sitting: {levenshtein('kitten', 'sitting')}")
    print(f"  regular Lizzy/Lizzie: {regular_string_similarity('Lizzy', 'Lizzie')}")
    print(f"  partial Bennet/Mrs. Bennet: {partial_string_similarity('Bennet', 'Mrs. Bennet')}")
    print(f"  partial Darcy/Dracula: {partial_string_similarity('Darcy', 'Dracula')}")
    print("=" * 60)
