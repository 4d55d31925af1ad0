import tempfile
from dataclasses import dataclass
from io import StringIO
from pathlib import Path

from django.core.management import call_command
from django.test import SimpleTestCase


@dataclass(frozen=True)
class CommandRun:
    """результат запуска команды"""

    returncode: int
    stdout: str
    stderr: str

    @property
    def lines(self):
        return self.stdout.splitlines()


class FunctionalTest(SimpleTestCase):
    """функциональный тест: команды в рабочем каталоге"""

    def setUp(self):
        """Установка"""
        self.workdir = tempfile.TemporaryDirectory(prefix='contextuality-')
        self.addCleanup(self.workdir.cleanup)
        self.root = Path(self.workdir.name)

    def path(self, name):
        """путь в рабочем каталоге"""
        return str(self.root / name)

    def run_command(self, name, *args):
        """запустить команду manage.py и вернуть код выхода и вывод"""
        stdout, stderr = StringIO(), StringIO()
        try:
            call_command(name, *args, stdout=stdout, stderr=stderr)
        except SystemExit as e:
            return CommandRun(e.code, stdout.getvalue(), stderr.getvalue())
        return CommandRun(0, stdout.getvalue(), stderr.getvalue())
