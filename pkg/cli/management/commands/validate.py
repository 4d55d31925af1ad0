import logging
import sys

from django.core.management.base import BaseCommand

from cli.documents import command_errors, read_file
from empirical.models import check_no_signalling

logger = logging.getLogger(__name__)

NOT_COMPATIBLE_RETURNCODE = 1


class Command(BaseCommand):
    """проверить совместность модели"""

    help = 'Check that the families of a model document agree on every overlap.'

    def add_arguments(self, parser):
        """добавить аргументы"""
        parser.add_argument('model')

    def handle(self, *args, **options):
        """обработать"""
        with command_errors():
            model = read_file(options['model'], raw=True).model
        report = check_no_signalling(model)
        if report.is_compatible:
            self.stdout.write('compatible')
            return
        for message in report.messages():
            self.stdout.write(message)
        logger.info('%d signalling violations in %s', len(report.violations), options['model'])
        sys.exit(NOT_COMPATIBLE_RETURNCODE)
