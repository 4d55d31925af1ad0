from .base import FunctionalTest
from .workspace import Workspace


class BornModelTest(FunctionalTest):
    """тест: модели Борна для состояний GHZ"""

    def test_born_models_match_the_catalog(self):
        """тест: GHZ(n) по правилу Борна совпадает с точной моделью"""
        # Исследователи сравнивают численные модели с каталогом при n = 3, 4, 5
        for n in (3, 4, 5):
            run = self.run_command('quantum', 'ghz', '--n', str(n), '--compare')
            self.assertEqual(run.returncode, 0, n)
            self.assertEqual(len(run.lines), 2 ** n + 1)
            self.assertTrue(run.lines[-1].startswith('max deviation from catalog: '))

    def test_exact_born_model_is_strongly_contextual(self):
        """тест: записанная точная модель сильно контекстуальна"""
        # Исследователи сохраняют точную версию модели GHZ(4)
        path = self.path('ghz4.json')
        run = self.run_command('quantum', 'ghz', '--n', '4', '-o', path)
        self.assertEqual(run.returncode, 0)

        # и классифицируют её
        self.assertEqual(Workspace(self).level(path), ('StronglyContextual', 12))
