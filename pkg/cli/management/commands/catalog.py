from django.core.management.base import BaseCommand, CommandError

from cli.documents import command_errors, dump, model_document, scenario_document, write
from empirical import catalog

NAME_REQUIRED_ERROR = "Give an entry name or --list"


class Command(BaseCommand):
    """вывести элемент каталога"""

    help = 'Emit a catalog scenario or model as a document.'

    def add_arguments(self, parser):
        """добавить аргументы"""
        parser.add_argument('name', nargs='?')
        parser.add_argument('-o', '--output', default=None)
        parser.add_argument('--list', action='store_true', dest='list_entries')

    def handle(self, *args, **options):
        """обработать"""
        if options['list_entries']:
            for name in catalog.names():
                self.stdout.write(name)
            return
        if not options['name']:
            raise CommandError(NAME_REQUIRED_ERROR)
        with command_errors():
            entry = catalog.lookup(options['name'])
        document = entry_document(entry)
        if options['output']:
            write(document, options['output'])
        else:
            self.stdout.write(dump(document), ending='')


def entry_document(entry):
    """документ модели или сценария с происхождением"""
    metadata = {'name': entry.name, 'provenance': entry.provenance}
    if entry.model is None:
        return scenario_document(entry.scenario, metadata)
    return model_document(entry.model, metadata)
