import logging
import sys

import numpy as np
from django.conf import settings
from django.core.management.base import BaseCommand, CommandError

from cli.documents import MALFORMED_RETURNCODE, model_document, write
from empirical.catalog import ghz
from quantum.born import ConversionError, born_model, ghz_observables, ghz_state

logger = logging.getLogger(__name__)

DEVIATION_RETURNCODE = 1


class Command(BaseCommand):
    """модели Борна"""

    help = 'Build the Born-rule GHZ(n) model; --compare checks it against the exact catalog model.'

    def add_arguments(self, parser):
        """добавить аргументы"""
        parser.add_argument('family', choices=['ghz'])
        parser.add_argument('--n', type=int, default=3)
        parser.add_argument('--compare', action='store_true')
        parser.add_argument('-o', '--output', default=None)

    def handle(self, *args, **options):
        """обработать"""
        n = options['n']
        try:
            entry = ghz(n)
        except ValueError as e:
            raise CommandError(str(e), returncode=MALFORMED_RETURNCODE) from e
        model = born_model(ghz_state(n), ghz_observables(n), entry.scenario)
        for context, table in zip(model.scenario.cover, model.tables):
            self.stdout.write(f'{" ".join(context)}: {" ".join(f"{w:.6f}" for w in table)}')
        if options['output']:
            try:
                exact = model.to_rational()
            except ConversionError as e:
                self.stderr.write(str(e))
            else:
                write(model_document(exact, {'source': f'Born rule, GHZ({n})'}), options['output'])
        if options['compare']:
            deviation = max(
                float(np.max(np.abs(table - np.array([float(w) for w in exact.weights]))))
                for table, exact in zip(model.tables, entry.model.tables)
            )
            self.stdout.write(f'max deviation from catalog: {deviation:.3e}')
            logger.info('GHZ(%d) Born model deviates by %.3e', n, deviation)
            if deviation > settings.QUANTUM_OPERATOR_TOLERANCE:
                sys.exit(DEVIATION_RETURNCODE)
