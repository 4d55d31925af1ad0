import json
import sys

from django.core.management.base import BaseCommand

from analysis.hierarchy import Level, classify
from cli.documents import command_errors, read_file
from empirical.algebra import format_weight

RETURNCODES = {
    Level.LOCAL: 0,
    Level.PROB_NON_EXTENDABLE: 10,
    Level.POSS_NON_EXTENDABLE: 11,
    Level.STRONGLY_CONTEXTUAL: 12,
}


class Command(BaseCommand):
    """классифицировать модель по иерархии"""

    help = 'Place a probabilistic model in the contextuality hierarchy; the exit code encodes the level.'

    def add_arguments(self, parser):
        """добавить аргументы"""
        parser.add_argument('model')
        parser.add_argument('--json', action='store_true', dest='as_json')

    def handle(self, *args, **options):
        """обработать"""
        with command_errors():
            model = read_file(options['model']).model
            report = classify(model)
        if options['as_json']:
            self.stdout.write(json.dumps(report_document(report), indent=2, ensure_ascii=False))
        else:
            self.stdout.write(report.level.value)
            self.stdout.write(f'|S_e| = {len(report.s_e)}')
            self.stdout.write(f'noncontextual fraction = {fraction_text(report.ncf.value)}')
        code = RETURNCODES[report.level]
        if code:
            sys.exit(code)


def fraction_text(value):
    """дробь всегда в виде p/q"""
    return f'{value.numerator}/{value.denominator}'


def report_document(report):
    """отчёт классификации как JSON-объект"""
    document = {
        'level': report.level.value,
        'boolean_solvable': report.boolean.solvable,
        'S_e': [section.as_dict() for section in report.s_e],
        'noncontextual_fraction': fraction_text(report.ncf.value),
    }
    if report.global_section is not None:
        document['global_section'] = {
            ','.join(s.assignment): format_weight(w) for s, w in report.global_section.items() if w
        }
    return document
