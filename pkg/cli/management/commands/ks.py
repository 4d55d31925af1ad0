import sys
from pathlib import Path

from django.core.management.base import BaseCommand

from cli.documents import UNREADABLE_FILE_ERROR, DocumentError, command_errors, read_document
from kspec.formats import read_cover, read_graph, read_vectors, sniff
from kspec.graphs import (
    co_context_graph, cover_scenario, one_section_exists, orthogonality_graph, parity_obstruction,
    stable_transversal,
)

NEGATIVE_RETURNCODE = 1


class Command(BaseCommand):
    """проверки Кохена-Шпекера"""

    help = (
        'Parity obstruction, ONE-section search or stable transversal search on a cover, '
        'graph, vector family or scenario document.'
    )

    def add_arguments(self, parser):
        """добавить аргументы"""
        parser.add_argument('check', choices=['parity', 'one-section', 'transversal'])
        parser.add_argument('source')

    def handle(self, *args, **options):
        """обработать"""
        with command_errors():
            scenario, graph = load_source(options['source'])
        check = options['check']
        if check == 'parity':
            verdict = parity_obstruction(scenario)
            self.stdout.write(f'gcd {verdict.divisor}, contexts {verdict.n_contexts}')
            self.stdout.write('obstructed' if verdict.obstructed else 'not obstructed')
            positive = not verdict.obstructed
        elif check == 'one-section':
            result = one_section_exists(scenario)
            if result.exists:
                self.stdout.write('ONE-section: ' + ' '.join(map(str, result.ones)))
            else:
                self.stdout.write('no ONE-section')
            positive = result.exists
        else:
            witness = stable_transversal(graph)
            self.stdout.write(
                'stable transversal: ' + ' '.join(map(str, witness)) if witness is not None
                else 'no stable transversal')
            positive = witness is not None
        if not positive:
            sys.exit(NEGATIVE_RETURNCODE)


def load_source(path):
    """сценарий и граф из файла любого поддерживаемого вида"""
    try:
        text = Path(path).read_text(encoding='utf-8')
    except OSError as e:
        raise DocumentError(UNREADABLE_FILE_ERROR.format(path=path, reason=e.strerror)) from None
    if text.lstrip().startswith('{'):
        scenario = read_document(text, require_tables=False).scenario
        return scenario, co_context_graph(scenario)
    kind = sniff(text)
    if kind == 'graph':
        graph = read_graph(text)
    elif kind == 'vectors':
        graph = orthogonality_graph(read_vectors(text))
    else:
        scenario = read_cover(text)
        return scenario, co_context_graph(scenario)
    return cover_scenario(graph), graph
