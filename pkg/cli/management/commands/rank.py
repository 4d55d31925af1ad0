from django.core.management.base import BaseCommand, CommandError

from cli.documents import command_errors, read_file
from empirical.scenario import dimension_D
from empirical.tableau import build_incidence, dump_matrix, rank

RANK_MISMATCH_ERROR = "rank {rank} differs from the dimension D = {dimension}"


class Command(BaseCommand):
    """ранг матрицы инцидентности"""

    help = 'Print the rank of the incidence matrix of a model or scenario document and check it against D.'

    def add_arguments(self, parser):
        """добавить аргументы"""
        parser.add_argument('document')
        parser.add_argument('--dump', action='store_true')

    def handle(self, *args, **options):
        """обработать"""
        with command_errors():
            scenario = read_file(options['document'], require_tables=False).scenario
            tableau = build_incidence(scenario)
            result = rank(tableau)
        dimension = dimension_D(scenario)
        if options['dump']:
            self.stdout.write(dump_matrix(tableau))
        self.stdout.write(f'rank {result}')
        self.stdout.write(f'D {dimension}')
        if result != dimension:
            raise CommandError(RANK_MISMATCH_ERROR.format(rank=result, dimension=dimension))
