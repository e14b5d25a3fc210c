"""
Fonctions utilitaires - Person Linker
Erreurs, logging, formatage, petites conversions
"""

import logging
import sys
from fractions import Fraction
import config

# ========================================================================
# ERREURS
# ========================================================================

class TaggerError(Exception):
    """Erreur de base de l'outil (code de sortie 1)."""


class ValidationError(TaggerError):
    """Donnée invalide: enregistrement, span, liste de personnages, argument."""


class ConfigurationError(TaggerError):
    """Configuration incohérente (ids dupliqués, fichier d'import absent...)."""


class LexiconError(TaggerError):
    """Ligne mal formée dans un lexique."""


class UnknownTitleError(LexiconError, KeyError):
    """Titre absent de la table des titres (table fermée)."""

    def __str__(self):
        return Exception.__str__(self)

# ========================================================================
# LOGGING
# ========================================================================

def setup_logging(level=None):
    """
    Configure le logging racine une seule fois.
    Args: level (str) - défaut: config.LOG_LEVEL
    Returns: logging.Logger racine

    Les diagnostics vont sur stderr, stdout reste réservé aux résultats.
    Un nouvel appel remplace les handlers posés par le précédent.
    """
    level = (level or config.get_log_level()).upper()
    root = logging.getLogger()
    root.setLevel(level)

    for handler in getattr(root, '_person_linker_handlers', []):
        root.removeHandler(handler)
        handler.close()

    handlers = [logging.StreamHandler(sys.stderr)]
    if config.LOG_TO_FILE:
        handlers.append(logging.FileHandler(config.LOG_FILENAME, encoding='utf-8'))

    for handler in handlers:
        handler.setFormatter(logging.Formatter(config.LOG_FORMAT))
        root.addHandler(handler)

    root._person_linker_handlers = handlers
    return root

# ========================================================================
# TEXT
# ========================================================================

def collapse_whitespace(text):
    """
    Strip + espaces multiples → un seul espace (casse conservée).
    Args: str
    Returns: str
    """
    if not text:
        return ""

    return " ".join(text.split())

# ========================================================================
# FORMATTING
# ========================================================================

def format_percentage(value, total):
    """
    Calcule et formate pourcentage.
    Args: value, total (numbers)
    Returns: str "XX.X%"
    """
    if total == 0:
        return "0.0%"

    percent = (value / total) * 100
    return f"{percent:.1f}%"

def ratio(numerator, denominator, empty=1):
    """
    Fraction exacte numerator/denominator.
    Args: numerator, denominator (int), empty (valeur si dénominateur nul)
    Returns: Fraction
    """
    if denominator == 0:
        return Fraction(empty)

    return Fraction(numerator, denominator)

def round_metric(value, decimals=None):
    """Arrondit une métrique (Fraction ou float) pour l'affichage / le JSON."""
    if decimals is None:
        decimals = config.METRICS_DECIMALS

    return round(float(value), decimals)

# ========================================================================
# HELPERS
# ========================================================================

def safe_int(value, default=0):
    """
    Convertit value en int, retourne default si échec.
    Args: value (any), default (int)
    Returns: int
    """
    try:
        return int(value)
    except (ValueError, TypeError):
        return default

def read_lines(source):
    """
    Lit une source texte UTF-8 (chemin, flux binaire ou flux texte).
    Returns: list de lignes sans fin de ligne
    """
    if hasattr(source, 'read'):
        data = source.read()
        if isinstance(data, bytes):
            data = data.decode('utf-8-sig')
        elif data.startswith('\ufeff'):
            data = data[1:]
    else:
        with open(source, 'r', encoding='utf-8-sig') as f:
            data = f.read()

    return data.splitlines()

# ========================================================================
# DEBUG
# ========================================================================

if __name__ == "__main__":
    print("=" * 60)
    print("UTILS - TESTS")
    print("=" * 60)
    print(f"  collapse: '{collapse_whitespace('  Mr.   Darcy ')}'")
    print(f"  pourcentage 13/18: {format_percentage(13, 18)}")
    print(f"  ratio 3/5: {ratio(3, 5)}")
    print("=" * 60)
