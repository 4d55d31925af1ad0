import logging
from pathlib import Path

from django.core.management.base import BaseCommand

from analysis.hierarchy import noncontextual_fraction
from cli.documents import command_errors, model_document, read_file, write
from cli.management.commands.classify import fraction_text

logger = logging.getLogger(__name__)


class Command(BaseCommand):
    """доля неконтекстуальности"""

    help = 'Print the exact noncontextual fraction; with --output-dir also write the decomposition.'

    def add_arguments(self, parser):
        """добавить аргументы"""
        parser.add_argument('model')
        parser.add_argument('--output-dir', default=None)

    def handle(self, *args, **options):
        """обработать"""
        with command_errors():
            model = read_file(options['model']).model
            result = noncontextual_fraction(model)
        self.stdout.write(fraction_text(result.value))
        if options['output_dir'] and result.local is not None:
            write_decomposition(result, Path(options['output_dir']))


def write_decomposition(result, directory):
    """записать e = λ L + (1 - λ) q в два документа"""
    directory.mkdir(parents=True, exist_ok=True)
    weight = fraction_text(result.value)
    write(model_document(result.local, {'role': 'local', 'weight': weight}), directory / 'local.json')
    write(model_document(result.residual, {'role': 'residual', 'weight': fraction_text(1 - result.value)}),
          directory / 'residual.json')
