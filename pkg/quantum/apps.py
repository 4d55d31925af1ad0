from django.apps import AppConfig


class QuantumConfig(AppConfig):
    name = 'quantum'
