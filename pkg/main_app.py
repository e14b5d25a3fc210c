"""
================================================================================
PERSON LINKER - APPLICATION PRINCIPALE
================================================================================
Ligne de commande: annote les mentions de personnes d'un corpus avec les noms
complets d'une liste de personnages, évalue, explique un rattachement, et
calcule des statistiques de corpus.

    python main_app.py annotate --corpus DIR --protagonists FILE --out FILE
    python main_app.py evaluate --gold FILE --pred FILE --mode span-tag
    python main_app.py match --entity "Lizzy" --protagonists FILE --explain
    python main_app.py stats --pred FILE --tag "Elizabeth Bennet"
    python main_app.py fetch-diminutives --out data/diminutives.csv
================================================================================
"""

import argparse
import json
import logging
import sys
from pathlib import Path

import config
import utils
from corpus_module import (dumps_standoff, load_corpus, load_protagonists, read_standoff,
                           write_inline_files, write_standoff)
from evaluation_module import MatchMode, evaluate_files, report_to_dict
from lexicon_module import download_diminutives, load_lexicons
from matcher_module import MatchConfig, find_best_match
from pipeline_module import annotate_corpus, build_pipeline_config
from stats_module import (corpus_summary, shared_common_part_stats, surface_form_counts,
                          title_breakdown, titled_share)
from text_model import PrefixKind, normalize

logger = logging.getLogger("person_linker")


class CliParser(argparse.ArgumentParser):
    """Erreur d'usage → message sur stderr, code 1."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(config.EXIT_VALIDATION, f"{self.prog}: erreur: {message}\n")


def threshold_arg(value):
    """Seuil entier 0-100."""
    number = utils.safe_int(value, default=None)
    if number is None or not config.validate_threshold(number):
        raise argparse.ArgumentTypeError(f"seuil invalide: '{value}' (entier 0-100 attendu)")
    return number


def workers_arg(value):
    number = utils.safe_int(value, default=0)
    if number < 1:
        raise argparse.ArgumentTypeError(f"nombre de workers invalide: '{value}'")
    return number

# ========================================================================
# HELPERS
# ========================================================================

def write_output(text, out_path=None):
    """Écrit dans --out si fourni, sinon sur stdout."""
    if out_path:
        Path(out_path).write_text(text, encoding='utf-8')
    else:
        sys.stdout.write(text)


def parse_prefix(value, titles):
    """Texte de --prefix → PrefixKind."""
    if not value:
        return PrefixKind.none()
    if normalize(value) == config.FAMILY_ARTICLE:
        return PrefixKind.the()
    if titles.is_title(value):
        return PrefixKind.of_title(value)
    raise utils.ValidationError(f"préfixe inconnu: '{value}' (titre ou 'the' attendu)")


def read_annotations(args):
    path = args.pred or args.gold
    if not path:
        raise utils.ValidationError("--pred ou --gold requis")
    return read_standoff(path)

# ========================================================================
# COMMANDES
# ========================================================================

def cmd_annotate(args):
    cfg = build_pipeline_config(
        recognizer=args.ner,
        threshold=args.threshold,
        rules_enabled=not args.no_rules,
        emit_unmatched=args.emit_unmatched,
        import_path=args.import_path,
        diminutives_path=args.diminutives,
        genders_path=args.genders,
        titles_path=args.titles,
        stopwords_path=args.stopwords,
        workers=args.workers,
    )
    protagonists = load_protagonists(args.protagonists, cfg.match.lexicons.titles)
    docs = load_corpus(args.corpus)

    annotations = annotate_corpus(docs, protagonists, cfg)

    if args.out:
        write_standoff(args.out, annotations)
    else:
        sys.stdout.write(dumps_standoff(annotations))

    if args.inline:
        inline_dir = Path(args.out).parent if args.out else Path(args.corpus)
        write_inline_files(inline_dir, docs, annotations)

    return config.EXIT_OK


def cmd_evaluate(args):
    doc_ids = None
    if args.corpus:
        doc_ids = [doc.id for doc in load_corpus(args.corpus)]

    mode = MatchMode(args.mode)
    result = evaluate_files(args.gold, args.pred, mode, doc_ids)

    report = report_to_dict(result['overall'])
    report['by_document'] = {doc_id: report_to_dict(r)
                             for doc_id, r in result['by_document'].items()}
    payload = json.dumps(report, ensure_ascii=False, indent=2) + "\n"

    sys.stdout.write(result['table'])
    if args.out:
        write_output(payload, args.out)
    else:
        sys.stdout.write(payload)

    return config.EXIT_OK


def cmd_match(args):
    lexicons = load_lexicons(args.diminutives, args.genders, args.titles)
    protagonists = load_protagonists(args.protagonists, lexicons.titles)
    cfg = MatchConfig(args.threshold, not args.no_rules, lexicons)
    prefix = parse_prefix(args.prefix, lexicons.titles)

    outcome = find_best_match(args.entity, prefix, protagonists, cfg)

    print(outcome.tag)
    if args.explain:
        score = "-" if outcome.score is None else outcome.score
        print(f"branche: {outcome.branch}, score: {score}, préfixe: '{prefix}'")

    return config.EXIT_OK


def cmd_stats(args):
    lexicons = load_lexicons(args.diminutives, args.genders, args.titles)
    titles = lexicons.titles

    if args.tag:
        for surface, count in surface_form_counts(read_annotations(args), args.tag).items():
            print(f"{surface}\t{count}")
        return config.EXIT_OK

    if args.surname:
        if not args.corpus:
            raise utils.ValidationError("--surname demande --corpus")
        docs = load_corpus(args.corpus)
        breakdown = title_breakdown(read_annotations(args), args.surname, titles, docs)
        for bucket, count in breakdown.items():
            print(f"{bucket}\t{count}")
        titled, total = titled_share(breakdown)
        print(f"avec titre: {titled} / {total}")
        return config.EXIT_OK

    if not args.protagonists:
        raise utils.ValidationError("stats: --tag, --surname ou --protagonists requis")

    protagonists = load_protagonists(args.protagonists, titles)
    count, share = shared_common_part_stats(protagonists, titles)
    print(f"tags: {len(protagonists)}\tpartagés: {count}\t"
          f"({utils.format_percentage(share.numerator, share.denominator)})")

    if args.corpus and (args.pred or args.gold):
        docs = load_corpus(args.corpus)
        sys.stdout.write(corpus_summary(docs, read_annotations(args), protagonists, titles))

    return config.EXIT_OK


def cmd_fetch_diminutives(args):
    result = download_diminutives(args.out, args.url)
    if not result['success']:
        logger.error(f"❌ {result['message']}")
        return config.EXIT_IO

    print(result['message'])
    return config.EXIT_OK

# ========================================================================
# PARSER
# ========================================================================

def add_lexicon_args(parser):
    parser.add_argument("--diminutives", type=Path, default=None,
                        help="CSV des diminutifs (défaut: ressource livrée)")
    parser.add_argument("--genders", type=Path, default=None, help="TSV prénom → genre")
    parser.add_argument("--titles", type=Path, default=None, help="TSV titre → genre")


def add_matching_args(parser):
    parser.add_argument("--protagonists", type=Path, required=True,
                        help="Liste de personnages (un nom complet par ligne)")
    parser.add_argument("--threshold", type=threshold_arg,
                        default=config.DEFAULT_PARTIAL_SIMILARITY_PRECISION,
                        help="Seuil de similarité partielle (0-100)")
    parser.add_argument("--no-rules", action="store_true",
                        help="Similarité seule (sans règles titre / famille / diminutif)")


def build_parser():
    parser = CliParser(prog="person_linker",
                       description="Rattache les mentions de personnes à une liste de personnages")
    parser.add_argument("--log-level", default=None,
                        choices=['DEBUG', 'INFO', 'WARNING', 'ERROR'])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=CliParser)

    annotate = sub.add_parser("annotate", help="Annoter un corpus")
    annotate.add_argument("--corpus", type=Path, required=True, help="Dossier de documents .txt")
    add_matching_args(annotate)
    annotate.add_argument("--out", type=Path, default=None, help="Fichier standoff JSON")
    annotate.add_argument("--inline", action="store_true",
                          help="Écrit aussi les fichiers <id>.annotated.txt")
    annotate.add_argument("--emit-unmatched", action="store_true",
                          help="Garde les mentions non rattachées (tag 'person')")
    annotate.add_argument("--ner", choices=config.VALID_NER, default=config.NER_GAZETTEER)
    annotate.add_argument("--import", dest="import_path", type=Path, default=None,
                          help="Spans NER externes (standoff JSON) pour --ner import")
    annotate.add_argument("--stopwords", type=Path, default=None)
    annotate.add_argument("--workers", type=workers_arg, default=1)
    add_lexicon_args(annotate)
    annotate.set_defaults(func=cmd_annotate)

    evaluate = sub.add_parser("evaluate", help="Comparer des prédictions à une référence")
    evaluate.add_argument("--gold", type=Path, required=True)
    evaluate.add_argument("--pred", type=Path, required=True)
    evaluate.add_argument("--mode", choices=config.VALID_MODES, default=config.MODE_SPAN_TAG)
    evaluate.add_argument("--corpus", type=Path, default=None,
                          help="Refuse les annotations de documents hors corpus")
    evaluate.add_argument("--out", type=Path, default=None, help="Rapport JSON")
    evaluate.set_defaults(func=cmd_evaluate)

    match = sub.add_parser("match", help="Rattacher une seule entité")
    match.add_argument("--entity", required=True)
    match.add_argument("--prefix", default=None, help="Titre ou 'the' devant l'entité")
    match.add_argument("--explain", action="store_true", help="Affiche la branche suivie")
    add_matching_args(match)
    add_lexicon_args(match)
    match.set_defaults(func=cmd_match)

    stats = sub.add_parser("stats", help="Statistiques de corpus")
    stats.add_argument("--pred", type=Path, default=None)
    stats.add_argument("--gold", type=Path, default=None)
    stats.add_argument("--tag", default=None, help="Formes de surface d'un tag")
    stats.add_argument("--surname", default=None, help="Titres devant un nom de famille")
    stats.add_argument("--corpus", type=Path, default=None)
    stats.add_argument("--protagonists", type=Path, default=None)
    add_lexicon_args(stats)
    stats.set_defaults(func=cmd_stats)

    fetch = sub.add_parser("fetch-diminutives", help="Télécharger le dictionnaire public")
    fetch.add_argument("--out", type=Path, required=True)
    fetch.add_argument("--url", default=None)
    fetch.set_defaults(func=cmd_fetch_diminutives)

    return parser

# ========================================================================
# MAIN
# ========================================================================

def main(argv=None):
    """
    Point d'entrée.
    Returns: code de sortie (0 succès, 1 donnée invalide, 2 erreur d'E/S)
    """
    parser = build_parser()
    args = parser.parse_args(argv)
    utils.setup_logging(args.log_level)

    try:
        return args.func(args)

    except utils.TaggerError as e:
        logger.error(f"❌ {e}")
        return config.EXIT_VALIDATION

    except (OSError, UnicodeDecodeError) as e:
        logger.error(f"❌ Erreur fichier: {e}")
        return config.EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
