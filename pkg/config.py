"""
Configuration centralisée - Person Linker
Toutes les constantes et paramètres de l'outil
"""

from pathlib import Path

# ========================================================================
# PATHS & FILES
# ========================================================================

# Dossier de l'outil (les ressources sont livrées à côté du code)
CURRENT_DIR = Path(__file__).parent

# Ressources livrées
DATA_DIR = CURRENT_DIR / "data"
DIMINUTIVES_PATH = DATA_DIR / "diminutives.csv"
GENDERS_PATH = DATA_DIR / "genders.tsv"
STOPWORDS_PATH = DATA_DIR / "stopwords_en.txt"
PROTAGONISTS_DIR = DATA_DIR / "protagonists"

# Extensions
DOCUMENT_SUFFIX = ".txt"
INLINE_SUFFIX = ".annotated.txt"

# ========================================================================
# MATCHING
# ========================================================================

# Seuil de similarité partielle (0-100) pour qu'un personnage soit candidat
DEFAULT_PARTIAL_SIMILARITY_PRECISION = 75

# Score maximal (identité après normalisation)
MAX_SCORE = 100

# Tag générique si aucun personnage ne correspond
UNMATCHED_TAG = "person"

# Article qui désigne toute la famille ("the Bennet")
FAMILY_ARTICLE = "the"

# ========================================================================
# TITLES
# ========================================================================

# Titres de civilité par défaut (un fichier TSV peut compléter / remplacer)
DEFAULT_TITLES = {
    'mr.': 'male',
    'mrs.': 'female',
    'ms.': 'female',
    'miss': 'female',
}

# ========================================================================
# TOKENIZER
# ========================================================================

# Ponctuation détachée en fin de mot (un token par caractère)
TRAILING_PUNCTUATION = ".,;:!?\"')]”’-—"

# Ponctuation détachée en début de mot
LEADING_PUNCTUATION = "\"'([“‘-—"

# Possessif anglais ("Bennet's" → "Bennet" + "'s")
POSSESSIVE_SUFFIXES = ("'s", "’s")

# ========================================================================
# EVALUATION
# ========================================================================

# Modes acceptés par la ligne de commande
MODE_SPAN = "span"
MODE_SPAN_TAG = "span-tag"
VALID_MODES = [MODE_SPAN, MODE_SPAN_TAG]

# Ligne de total des tableaux
OVERALL_LABEL = "-- Overall results --"

# Décimales des métriques dans le JSON
METRICS_DECIMALS = 4

# Seau des mentions sans titre (stats)
BARE_BUCKET = "bare"

# ========================================================================
# RECOGNIZER
# ========================================================================

NER_HEURISTIC = "heuristic"
NER_GAZETTEER = "gazetteer"
NER_IMPORT = "import"
VALID_NER = [NER_HEURISTIC, NER_GAZETTEER, NER_IMPORT]

# ========================================================================
# DOWNLOAD (dictionnaire public des diminutifs)
# ========================================================================

DIMINUTIVES_URL = (
    "https://raw.githubusercontent.com/carltonnorthern/"
    "nickname-and-diminutive-names-lookup/master/names.csv"
)
HTTP_TIMEOUT = 10
HTTP_MAX_RETRIES = 3
HTTP_RETRY_DELAY = 2  # secondes

# ========================================================================
# LOGGING
# ========================================================================

LOG_LEVEL = "INFO"  # DEBUG, INFO, WARNING, ERROR
LOG_TO_FILE = False  # Si True, écrit aussi dans person_linker.log
LOG_FILENAME = "person_linker.log"
LOG_FORMAT = "%(levelname)s %(name)s: %(message)s"

# ========================================================================
# EXIT CODES
# ========================================================================

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_IO = 2

# ========================================================================
# HELPERS
# ========================================================================

def get_data_dir():
    """Retourne le chemin absolu du dossier data."""
    return str(DATA_DIR.absolute())

def get_protagonists_path(name):
    """Retourne le chemin d'une liste de personnages livrée (ex: 'pride_and_prejudice')."""
    return PROTAGONISTS_DIR / f"{name}.txt"

def validate_threshold(value):
    """Valide qu'un seuil est un entier dans [0, 100]."""
    return isinstance(value, int) and not isinstance(value, bool) and 0 <= value <= MAX_SCORE

def get_log_level():
    """Retourne le niveau de log configuré (défaut INFO si inconnu)."""
    level = LOG_LEVEL.upper()
    return level if level in ('DEBUG', 'INFO', 'WARNING', 'ERROR') else 'INFO'

# ========================================================================
# DEBUG INFO
# ========================================================================

if __name__ == "__main__":
    print("=" * 60)
    print("PERSON LINKER - CONFIGURATION")
    print("=" * 60)
    print(f"Data dir: {get_data_dir()}")
    print(f"Seuil par défaut: {DEFAULT_PARTIAL_SIMILARITY_PRECISION}")
    print(f"Titres: {list(DEFAULT_TITLES.keys())}")
    print(f"Recognizers: {VALID_NER}")
    print(f"Log level: {get_log_level()}")
    print("=" * 60)
