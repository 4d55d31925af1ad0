from django.apps import AppConfig


class KspecConfig(AppConfig):
    name = 'kspec'
