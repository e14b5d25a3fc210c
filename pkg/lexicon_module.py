"""
Module Lexiques - Person Linker
Diminutifs → prénom canonique, genre des prénoms, genre des titres, mots vides
"""

import csv
import io
import logging
import time
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from types import MappingProxyType
from typing import Mapping, Optional

import requests

import config
import utils
from text_model import normalize

logger = logging.getLogger(__name__)

# ========================================================================
# TYPES
# ========================================================================

class Gender(Enum):
    FEMALE = "female"
    MALE = "male"
    UNKNOWN = "unknown"

    @classmethod
    def parse(cls, value):
        try:
            return cls(normalize(value))
        except ValueError:
            raise utils.LexiconError(f"genre inconnu: '{value}'") from None


def _frozen(mapping):
    return MappingProxyType(dict(mapping))


@dataclass(frozen=True)
class DiminutiveLexicon:
    """Diminutif normalisé → prénom canonique normalisé."""
    entries: Mapping[str, str] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, 'entries', _frozen(self.entries))

    def __len__(self):
        return len(self.entries)

    def lookup(self, name) -> Optional[str]:
        return self.entries.get(normalize(name))


@dataclass(frozen=True)
class GenderLexicon:
    """Prénom normalisé → Gender."""
    entries: Mapping[str, Gender] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, 'entries', _frozen(self.entries))

    def lookup(self, name) -> Gender:
        return self.entries.get(normalize(name), Gender.UNKNOWN)


@dataclass(frozen=True)
class TitleLexicon:
    """Titre normalisé ("mr.") → Gender (jamais UNKNOWN)."""
    entries: Mapping[str, Gender] = field(default_factory=dict)

    def __post_init__(self):
        for title, gender in self.entries.items():
            if gender is Gender.UNKNOWN:
                raise utils.LexiconError(f"titre sans genre: '{title}'")
        object.__setattr__(self, 'entries', _frozen(self.entries))

    def is_title(self, token):
        return normalize(token) in self.entries

    @property
    def abbreviations(self):
        """Titres terminés par un point (gardés entiers par le tokenizer)."""
        return frozenset(t for t in self.entries if t.endswith('.'))

    @classmethod
    def default(cls):
        return cls({title: Gender(gender) for title, gender in config.DEFAULT_TITLES.items()})


@dataclass(frozen=True)
class Lexicons:
    """Les trois ressources consultées par l'algorithme de matching."""
    diminutives: DiminutiveLexicon
    genders: GenderLexicon
    titles: TitleLexicon

# ========================================================================
# CHARGEMENT
# ========================================================================

def _data_lines(source):
    """Lignes (numéro, texte) sans lignes vides ni commentaires '#'."""
    for number, line in enumerate(utils.read_lines(source), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith('#'):
            continue
        yield number, stripped


def load_diminutives(source):
    """
    Charge un CSV `canonique,dim1,dim2,...` (UTF-8).
    Args: source (chemin ou flux)
    Returns: DiminutiveLexicon

    Les lignes suivantes écrasent les précédentes en cas de collision.
    Raises: LexiconError (ligne avec moins de 2 champs)
    """
    entries = {}

    for number, line in _data_lines(source):
        fields = [normalize(f) for f in next(csv.reader([line]))]
        fields = [f for f in fields if f]

        if len(fields) < 2:
            raise utils.LexiconError(f"diminutifs, ligne {number}: au moins 2 champs attendus")

        canonical = fields[0]
        for diminutive in fields[1:]:
            if diminutive != canonical:
                entries[diminutive] = canonical

    return DiminutiveLexicon(entries)


def load_genders(source):
    """
    Charge un TSV `prénom<TAB>female|male|unknown`.
    Returns: GenderLexicon
    Raises: LexiconError
    """
    entries = {}

    for number, line in _data_lines(source):
        parts = line.split('\t')
        if len(parts) != 2 or not parts[0].strip():
            raise utils.LexiconError(f"genres, ligne {number}: 'prénom<TAB>genre' attendu")
        try:
            entries[normalize(parts[0])] = Gender.parse(parts[1])
        except utils.LexiconError as e:
            raise utils.LexiconError(f"genres, ligne {number}: {e}") from None

    return GenderLexicon(entries)


def load_titles(source, base=None):
    """
    Charge un TSV `titre<TAB>female|male` par-dessus la table par défaut.
    Args: source (chemin ou flux), base (TitleLexicon, défaut: titres de config)
    Returns: TitleLexicon
    Raises: LexiconError
    """
    base = base if base is not None else TitleLexicon.default()
    entries = dict(base.entries)

    for number, line in _data_lines(source):
        parts = line.split('\t')
        if len(parts) != 2 or not parts[0].strip():
            raise utils.LexiconError(f"titres, ligne {number}: 'titre<TAB>genre' attendu")
        try:
            gender = Gender.parse(parts[1])
        except utils.LexiconError as e:
            raise utils.LexiconError(f"titres, ligne {number}: {e}") from None
        if gender is Gender.UNKNOWN:
            raise utils.LexiconError(f"titres, ligne {number}: female ou male attendu")
        entries[normalize(parts[0])] = gender

    return TitleLexicon(entries)


def load_stopwords(source):
    """Un mot par ligne → frozenset normalisé."""
    return frozenset(normalize(line) for _, line in _data_lines(source))


def load_lexicons(diminutives_path=None, genders_path=None, titles_path=None):
    """
    Charge les trois lexiques (ressources livrées pour les chemins absents).
    Returns: Lexicons
    """
    diminutives = load_diminutives(diminutives_path or config.DIMINUTIVES_PATH)
    genders = load_genders(genders_path or config.GENDERS_PATH)
    titles = load_titles(titles_path) if titles_path else TitleLexicon.default()

    logger.debug(f"📚 Lexiques: {len(diminutives)} diminutifs, "
                 f"{len(genders.entries)} prénoms, {len(titles.entries)} titres")
    return Lexicons(diminutives, genders, titles)

# ========================================================================
# LOOKUPS
# ========================================================================

def get_name_from_diminutive(lex, name):
    """
    Prénom canonique d'un diminutif.
    Args: lex (DiminutiveLexicon), name (str)
    Returns: str ou None

    Exemple: "Miss Lizzy" → "elizabeth" ("miss" absent, "lizzy" trouvé)
    """
    key = normalize(name)
    if not key:
        return None

    if key in lex.entries:
        return lex.entries[key]

    for token in key.split(' '):
        if token in lex.entries:
            return lex.entries[token]

    return None


def get_title_gender(lex, title):
    """
    Genre d'un titre de civilité.
    Raises: UnknownTitleError si le titre n'est pas dans la table
    """
    try:
        return lex.entries[normalize(title)]
    except KeyError:
        raise utils.UnknownTitleError(f"titre inconnu: '{title}'") from None


def get_name_gender(lex, full_name, titles=None):
    """
    Genre d'un nom complet.
    Args: lex (GenderLexicon), full_name (str), titles (TitleLexicon)
    Returns: Gender

    Un tag qui commence par un titre ("Mrs. Bennet") prend le genre du titre;
    sinon le premier prénom est cherché dans le lexique (UNKNOWN si absent).
    """
    titles = titles if titles is not None else TitleLexicon.default()
    tokens = normalize(full_name).split(' ')

    if tokens and tokens[0] in titles.entries:
        return titles.entries[tokens[0]]

    if not tokens or not tokens[0]:
        return Gender.UNKNOWN

    return lex.lookup(tokens[0])

# ========================================================================
# DOWNLOAD
# ========================================================================

def fetch_diminutives_csv(url):
    """
    Télécharge le CSV public des diminutifs (avec retries).
    Args: url (str)
    Returns: str (contenu) ou None
    """
    for attempt in range(1, config.HTTP_MAX_RETRIES + 1):
        try:
            response = requests.get(url, timeout=config.HTTP_TIMEOUT)

            if response.status_code == 200:
                response.encoding = 'utf-8'
                return response.text

            logger.warning(f"⚠️ HTTP {response.status_code} pour {url} (essai {attempt})")

        except requests.exceptions.Timeout:
            logger.warning(f"⚠️ Timeout pour {url} (essai {attempt})")

        except requests.exceptions.RequestException as e:
            logger.error(f"❌ Erreur réseau pour {url}: {e}")

        if attempt < config.HTTP_MAX_RETRIES:
            time.sleep(config.HTTP_RETRY_DELAY)

    return None


def download_diminutives(dest, url=None):
    """
    Télécharge, valide et enregistre le dictionnaire public des diminutifs.
    Args: dest (chemin), url (str, défaut: config.DIMINUTIVES_URL)
    Returns:
        dict: {'success': bool, 'count': int, 'message': str}
    """
    url = url or config.DIMINUTIVES_URL
    logger.info(f"📥 Téléchargement diminutifs: {url}")

    content = fetch_diminutives_csv(url)
    if content is None:
        return {
            'success': False,
            'count': 0,
            'message': f"Téléchargement impossible: {url}"
        }

    try:
        lexicon = load_diminutives(io.StringIO(content))
    except utils.LexiconError as e:
        return {
            'success': False,
            'count': 0,
            'message': f"Fichier reçu invalide: {e}"
        }

    Path(dest).write_text(content, encoding='utf-8')
    logger.info(f"✅ {len(lexicon)} diminutifs enregistrés dans {dest}")

    return {
        'success': True,
        'count': len(lexicon),
        'message': f"{len(lexicon)} diminutifs enregistrés"
    }

# ========================================================================
# DEBUG
# ========================================================================

if __name__ == "__main__":
    print("=" * 60)
    print("LEXICON MODULE - TEST")
    print("=" * 60)
    lexicons = load_lexicons()
    print(f"  Lizzy → {get_name_from_diminutive(lexicons.diminutives, 'Lizzy')}")
    print(f"  Mr. → {get_title_gender(lexicons.titles, 'Mr.').value}")
    print(f"  Mrs. Bennet → {get_name_gender(lexicons.genders, 'Mrs. Bennet').value}")
    print("=" * 60)
