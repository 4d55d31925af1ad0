import importlib
import os
from unittest.mock import patch

from django.conf import settings
from django.test import SimpleTestCase

from contextuality import settings as project_settings


class LoggingSettingsTest(SimpleTestCase):
    """тест настроек журналирования"""

    def reload(self, level=None):
        """перечитать модуль настроек с другим уровнем в окружении"""
        self.addCleanup(importlib.reload, project_settings)
        with patch.dict(os.environ):
            os.environ.pop('CONTEXTUALITY_LOG_LEVEL', None)
            if level is not None:
                os.environ['CONTEXTUALITY_LOG_LEVEL'] = level
            return importlib.reload(project_settings)

    def test_default_level_is_info(self):
        """тест: без переменной окружения корень и приложения на INFO"""
        module = self.reload()
        self.assertEqual(module.LOGGING['root']['level'], 'INFO')
        for app in ('empirical', 'analysis', 'kspec', 'quantum', 'cli'):
            self.assertEqual(module.LOGGING['loggers'][app]['level'], 'INFO')

    def test_level_from_environment(self):
        """тест: CONTEXTUALITY_LOG_LEVEL меняет корень и приложения вместе"""
        module = self.reload('DEBUG')
        self.assertEqual(module.LOGGING['root']['level'], 'DEBUG')
        self.assertEqual(module.LOGGING['loggers']['analysis']['level'], 'DEBUG')

    def test_active_settings_agree(self):
        """тест: корень журнала на уровне LOG_LEVEL"""
        self.assertEqual(settings.LOGGING['root']['level'], settings.LOG_LEVEL)
