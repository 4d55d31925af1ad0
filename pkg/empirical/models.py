"""Empirical models: compatible families of distributions over a cover."""
import itertools
import logging
from dataclasses import dataclass, field

from django.core.exceptions import ValidationError

from empirical.algebra import Distribution, SemiringTag, marginalize, to_boolean
from empirical.scenario import Section, restrict, sections

logger = logging.getLogger(__name__)

TABLE_COUNT_ERROR = "The model has {got} tables for {expected} contexts"
TABLE_CONTEXT_ERROR = "Table {index} is over {got}, expected context {expected}"
TABLE_OUTCOMES_ERROR = "Table over {context} uses outcomes {got}, expected {expected}"
TABLE_SEMIRING_ERROR = "Table over {context} is over the {got} semiring, expected {expected}"
SIGNALLING_ERROR = "Contexts {left} and {right} disagree on {overlap} at {section}: {left_weight} != {right_weight}"
NO_CONTAINING_CONTEXT_ERROR = "{subset} is not contained in any context"
SIGNED_SUPPORT_ERROR = "The support of a signed model is not defined"
SCENARIO_MISMATCH_ERROR = "The distribution is over {got}, not the measurements {expected}"


@dataclass(frozen=True)
class SignallingViolation:
    """расхождение маргиналов на пересечении двух контекстов"""

    left: tuple
    right: tuple
    overlap: tuple
    section: object
    left_weight: object
    right_weight: object

    def __str__(self):
        return SIGNALLING_ERROR.format(
            left=list(self.left), right=list(self.right), overlap=list(self.overlap),
            section=self.section, left_weight=self.left_weight, right_weight=self.right_weight,
        )


@dataclass(frozen=True)
class CompatibilityReport:
    """отчёт о совместности семейства"""

    violations: tuple = ()

    @property
    def is_compatible(self):
        return not self.violations

    def messages(self):
        return [str(v) for v in self.violations]


@dataclass(frozen=True)
class EmpiricalModel:
    """эмпирическая модель: по распределению на каждый контекст покрытия

    A raw model skips the compatibility check at construction.
    """

    scenario: object
    semiring: SemiringTag
    tables: tuple
    raw: bool = field(default=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, 'tables', tuple(self.tables))
        cover = self.scenario.cover
        if len(self.tables) != len(cover):
            raise ValidationError(TABLE_COUNT_ERROR.format(got=len(self.tables), expected=len(cover)))
        errors = []
        for index, (table, context) in enumerate(zip(self.tables, cover)):
            if table.context != context:
                errors.append(TABLE_CONTEXT_ERROR.format(index=index, got=list(table.context), expected=list(context)))
            if table.outcomes != self.scenario.outcomes:
                errors.append(TABLE_OUTCOMES_ERROR.format(
                    context=list(context), got=list(table.outcomes), expected=list(self.scenario.outcomes)))
            if table.semiring is not self.semiring:
                errors.append(TABLE_SEMIRING_ERROR.format(
                    context=list(context), got=table.semiring.value, expected=self.semiring.value))
        if errors:
            raise ValidationError(errors)
        if not self.raw:
            report = check_no_signalling(self)
            if not report.is_compatible:
                raise ValidationError(report.messages())

    @classmethod
    def from_rows(cls, scenario, rows, semiring=SemiringTag.NONNEG, raw=False):
        """модель из строк весов в порядке покрытия"""
        tables = [
            Distribution(semiring, context, scenario.outcomes, tuple(row), raw=raw)
            for context, row in zip(scenario.cover, rows)
        ]
        return cls(scenario, semiring, tables, raw=raw)

    def table(self, context):
        return self.tables[self.scenario.cover.index(tuple(context))]

    def rows(self):
        return [list(t.weights) for t in self.tables]

    def checked(self):
        """та же модель с проверкой совместности"""
        return EmpiricalModel(self.scenario, self.semiring, self.tables)


def check_no_signalling(model):
    """сравнить маргиналы каждой пары контекстов на пересечении"""
    violations = []
    for left, right in itertools.combinations(model.tables, 2):
        overlap = tuple(m for m in left.context if m in set(right.context))
        left_marginal = marginalize(left, overlap)
        right_marginal = marginalize(right, overlap)
        for section, lw, rw in zip(left_marginal.domain, left_marginal.weights, right_marginal.weights):
            if lw != rw:
                violations.append(SignallingViolation(left.context, right.context, overlap, section, lw, rw))
    if violations:
        logger.debug('%d signalling violations', len(violations))
    return CompatibilityReport(tuple(violations))


def support_model(model):
    """булева модель-носитель"""
    if model.semiring is SemiringTag.SIGNED:
        raise ValueError(SIGNED_SUPPORT_ERROR)
    if model.semiring is SemiringTag.BOOLEAN:
        return model
    return EmpiricalModel(
        model.scenario, SemiringTag.BOOLEAN, [to_boolean(t) for t in model.tables], raw=model.raw)


def marginal(model, subset):
    """маргинал e_U на частичном контексте"""
    chosen = set(subset)
    for table in model.tables:
        if chosen <= set(table.context):
            return marginalize(table, chosen)
    raise ValueError(NO_CONTAINING_CONTEXT_ERROR.format(subset=sorted(chosen, key=str)))


def from_global_section(scenario, d, raw=False):
    """семейство {d | C} глобального распределения"""
    if d.context != scenario.measurements:
        raise ValueError(SCENARIO_MISMATCH_ERROR.format(got=list(d.context), expected=list(scenario.measurements)))
    tables = [marginalize(d, context) for context in scenario.cover]
    return EmpiricalModel(scenario, d.semiring, tables, raw=raw)


def relabel_outcomes(model, relabelling):
    """переименовать исходы выбранных измерений

    relabelling maps a measurement to a dict {old outcome: new outcome}
    that permutes the outcome set.
    """
    outcomes = model.scenario.outcomes
    tables = []
    for table in model.tables:
        weights = [model.semiring.zero] * len(table.weights)
        for section, weight in table.items():
            moved = tuple(
                relabelling.get(m, {}).get(o, o) for m, o in zip(section.context, section.assignment))
            weights[model.scenario.section_index(Section(section.context, moved))] = weight
        tables.append(Distribution(model.semiring, table.context, outcomes, tuple(weights), raw=table.raw))
    return EmpiricalModel(model.scenario, model.semiring, tables, raw=model.raw)


def flip_outcomes(model, measurements):
    """поменять местами два исхода дихотомических измерений"""
    first, second = model.scenario.outcomes
    swap = {first: second, second: first}
    return relabel_outcomes(model, {m: swap for m in measurements})


def deterministic_model(scenario, assignment, semiring=SemiringTag.NONNEG):
    """детерминированная модель глобального назначения"""
    weights_by_context = []
    for context in scenario.cover:
        local = restrict(assignment, context)
        weights_by_context.append([
            semiring.one if s == local else semiring.zero for s in sections(context, scenario.outcomes)
        ])
    return EmpiricalModel.from_rows(scenario, weights_by_context, semiring)
