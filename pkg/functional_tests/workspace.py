import json
from pathlib import Path


class Workspace:
    """рабочий каталог исследователей: файлы моделей и команды над ними"""

    def __init__(self, test):
        self.test = test

    def export(self, name):
        """выгрузить элемент каталога в файл"""
        path = self.test.path(f'{name}.json')
        run = self.test.run_command('catalog', name, '-o', path)
        self.test.assertEqual(run.returncode, 0)
        return path

    def read(self, path):
        return json.loads(Path(path).read_text(encoding='utf-8'))

    def save(self, document, name):
        """записать изменённый документ"""
        path = self.test.path(name)
        Path(path).write_text(json.dumps(document), encoding='utf-8')
        return path

    def level(self, path):
        """уровень иерархии и код выхода classify"""
        run = self.test.run_command('classify', path)
        return run.lines[0], run.returncode
