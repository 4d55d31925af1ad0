"""JSON model and scenario documents.

{
  "version": 1,
  "measurements": ["a", "a'", "b", "b'"],
  "outcomes": ["0", "1"],
  "contexts": [["a", "b"], ...],
  "semiring": "nonneg",
  "tables": [{"context": ["a", "b"], "weights": {"0,0": "1/2", ...}}, ...],
  "metadata": {...}
}

Weights are exact "p/q" strings keyed by the comma-joined outcomes of the
table's context; missing keys are zero. Scenario documents omit tables.
"""
import json
import logging
from contextlib import contextmanager
from pathlib import Path

from django.conf import settings
from django.core.exceptions import ValidationError
from django.core.management.base import CommandError

from cli.forms import ModelDocumentForm
from empirical.algebra import SemiringTag, format_weight
from empirical.tableau import TableauTooLarge

logger = logging.getLogger(__name__)

MALFORMED_JSON_ERROR = "line {line}, column {column}: {message}"
NOT_AN_OBJECT_ERROR = "The document must be a JSON object"
UNREADABLE_FILE_ERROR = "Cannot read {path}: {reason}"

MALFORMED_RETURNCODE = 2
TOO_LARGE_RETURNCODE = 3


class DocumentError(ValueError):
    """документ не разобран"""


def parse_json(text):
    """JSON с указанием строки и столбца при ошибке"""
    try:
        document = json.loads(text)
    except json.JSONDecodeError as e:
        raise DocumentError(MALFORMED_JSON_ERROR.format(line=e.lineno, column=e.colno, message=e.msg)) from None
    if not isinstance(document, dict):
        raise DocumentError(NOT_AN_OBJECT_ERROR)
    return document


def _form_messages(form):
    messages = []
    for field, errors in form.errors.items():
        prefix = '' if field == '__all__' else f'{field}: '
        messages.extend(prefix + str(error) for error in errors)
    return messages


def read_document(text, require_tables=True, raw=False, strict=None):
    """разобрать документ; вернуть форму с полями scenario, model, metadata"""
    form = ModelDocumentForm(parse_json(text), require_tables=require_tables, raw=raw, strict=strict)
    if not form.is_valid():
        raise DocumentError('; '.join(_form_messages(form)))
    return form


def read_file(path, **kwargs):
    try:
        text = Path(path).read_text(encoding='utf-8')
    except OSError as e:
        raise DocumentError(UNREADABLE_FILE_ERROR.format(path=path, reason=e.strerror)) from None
    return read_document(text, **kwargs)


def scenario_document(scenario, metadata=None):
    """документ сценария без таблиц"""
    document = {
        'version': settings.DOCUMENT_FORMAT_VERSION,
        'measurements': list(scenario.measurements),
        'outcomes': list(scenario.outcomes),
        'contexts': [list(c) for c in scenario.cover],
    }
    if metadata:
        document['metadata'] = metadata
    return document


def model_document(model, metadata=None):
    """документ модели; нулевые веса опущены"""
    document = scenario_document(model.scenario)
    document['semiring'] = model.semiring.value
    tables = []
    for table in model.tables:
        weights = {}
        for section, weight in table.items():
            if weight:
                key = ','.join(section.assignment)
                weights[key] = weight if model.semiring is SemiringTag.BOOLEAN else format_weight(weight)
        tables.append({'context': list(table.context), 'weights': weights})
    document['tables'] = tables
    if metadata:
        document['metadata'] = metadata
    return document


def dump(document):
    return json.dumps(document, indent=2, ensure_ascii=False) + '\n'


def write(document, path):
    Path(path).write_text(dump(document), encoding='utf-8')
    logger.info('wrote %s', path)


@contextmanager
def command_errors():
    """ошибки разбора и размера в CommandError с кодом возврата"""
    try:
        yield
    except DocumentError as e:
        raise CommandError(str(e), returncode=MALFORMED_RETURNCODE) from e
    except ValidationError as e:
        raise CommandError('; '.join(e.messages), returncode=MALFORMED_RETURNCODE) from e
    except TableauTooLarge as e:
        raise CommandError(str(e), returncode=TOO_LARGE_RETURNCODE) from e
