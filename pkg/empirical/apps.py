from django.apps import AppConfig


class EmpiricalConfig(AppConfig):
    name = 'empirical'
