from django import forms
from django.conf import settings
from django.core.exceptions import ValidationError

from empirical.algebra import Distribution, SemiringTag
from empirical.models import EmpiricalModel
from empirical.scenario import Scenario

VERSION_ERROR = "Unsupported document version {got}, expected {expected}"
MISSING_FIELD_ERROR = "This field is required"
LABEL_LIST_ERROR = "Expected a non-empty list of labels"
CONTEXT_LIST_ERROR = "Expected a list of contexts, each a list of measurement labels"
TABLES_MISSING_ERROR = "The document has no tables"
TABLE_ENTRY_ERROR = "Table {index} must have a context and a weights object"
TABLE_CONTEXT_ERROR = "Table {index} is over {got}, expected context {expected}"
TABLE_COUNT_ERROR = "{got} tables for {expected} contexts"
WEIGHT_KEY_ERROR = "Table {index} has weight key {key!r}, which is not an outcome tuple over {context}"
UNKNOWN_FIELD_ERROR = "Unknown field {field!r}"


def _label_list(value):
    if not isinstance(value, list) or not value or not all(isinstance(x, str) for x in value):
        raise ValidationError(LABEL_LIST_ERROR)
    return tuple(value)


class ModelDocumentForm(forms.Form):
    """форма документа модели или сценария

    Tables are optional when require_tables is False; the resulting model
    is raw when raw is True so that signalling families can be reported
    instead of rejected.
    """

    version = forms.IntegerField(error_messages={'required': MISSING_FIELD_ERROR})
    measurements = forms.JSONField(error_messages={'required': MISSING_FIELD_ERROR})
    outcomes = forms.JSONField(error_messages={'required': MISSING_FIELD_ERROR})
    contexts = forms.JSONField(error_messages={'required': MISSING_FIELD_ERROR})
    semiring = forms.ChoiceField(choices=[(t.value, t.value) for t in SemiringTag], required=False)
    tables = forms.JSONField(required=False)
    metadata = forms.JSONField(required=False)

    def __init__(self, data, require_tables=True, raw=False, strict=None):
        super().__init__(data=data)
        self.require_tables = require_tables
        self.raw = raw
        self.strict = settings.DOCUMENT_STRICT if strict is None else strict
        self.scenario = None
        self.model = None

    def clean_version(self):
        version = self.cleaned_data['version']
        if version != settings.DOCUMENT_FORMAT_VERSION:
            raise ValidationError(VERSION_ERROR.format(got=version, expected=settings.DOCUMENT_FORMAT_VERSION))
        return version

    def clean_measurements(self):
        return _label_list(self.cleaned_data['measurements'])

    def clean_outcomes(self):
        return _label_list(self.cleaned_data['outcomes'])

    def clean_contexts(self):
        contexts = self.cleaned_data['contexts']
        if not isinstance(contexts, list) or not all(isinstance(c, list) for c in contexts):
            raise ValidationError(CONTEXT_LIST_ERROR)
        return tuple(tuple(c) for c in contexts)

    def clean_semiring(self):
        return SemiringTag(self.cleaned_data['semiring'] or SemiringTag.NONNEG.value)

    def clean(self):
        """собрать сценарий и модель"""
        cleaned = super().clean()
        if self.strict:
            for name in self.data:
                if name not in self.fields:
                    self.add_error(None, UNKNOWN_FIELD_ERROR.format(field=name))
        if self.errors:
            return cleaned
        try:
            self.scenario = Scenario(cleaned['measurements'], cleaned['outcomes'], cleaned['contexts'])
        except ValidationError as e:
            self.add_error('contexts', e)
            return cleaned
        tables = cleaned.get('tables')
        if tables is None:
            if self.require_tables:
                self.add_error('tables', TABLES_MISSING_ERROR)
            return cleaned
        try:
            self.model = self._build_model(tables, cleaned['semiring'])
        except ValidationError as e:
            self.add_error('tables', e)
        return cleaned

    def _build_model(self, tables, semiring):
        """таблицы в порядке покрытия; отсутствующие веса равны нулю"""
        scenario = self.scenario
        if not isinstance(tables, list):
            raise ValidationError(TABLE_ENTRY_ERROR.format(index=0))
        if len(tables) != len(scenario.cover):
            raise ValidationError(TABLE_COUNT_ERROR.format(got=len(tables), expected=len(scenario.cover)))
        distributions = []
        for index, (entry, context) in enumerate(zip(tables, scenario.cover)):
            if not isinstance(entry, dict) or 'context' not in entry or not isinstance(entry.get('weights'), dict):
                raise ValidationError(TABLE_ENTRY_ERROR.format(index=index))
            if tuple(scenario.canonical(entry['context'])) != context or len(entry['context']) != len(context):
                raise ValidationError(TABLE_CONTEXT_ERROR.format(
                    index=index, got=entry['context'], expected=list(context)))
            order = tuple(entry['context'])
            domain = scenario.sections(context)
            weights = [semiring.zero] * len(domain)
            for key, value in entry['weights'].items():
                values = tuple(key.split(','))
                if len(values) != len(order) or any(o not in scenario.outcomes for o in values):
                    raise ValidationError(WEIGHT_KEY_ERROR.format(index=index, key=key, context=list(order)))
                by_measurement = dict(zip(order, values))
                assignment = tuple(by_measurement[m] for m in context)
                weights[scenario.section_index(scenario.section(context, assignment))] = value
            distributions.append(Distribution(semiring, context, scenario.outcomes, tuple(weights), raw=self.raw))
        return EmpiricalModel(scenario, semiring, distributions, raw=self.raw)
