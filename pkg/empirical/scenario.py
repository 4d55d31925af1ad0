"""Measurement scenarios: measurements, outcomes, covers, sections.

A scenario fixes a global order on measurements and outcomes; contexts are
stored in that order and every table or matrix built downstream inherits it.
"""
import itertools
import logging
from collections import Counter
from dataclasses import InitVar, dataclass, field
from fractions import Fraction
from math import comb

from django.core.exceptions import ValidationError

logger = logging.getLogger(__name__)

DUPLICATE_LABEL_ERROR = "Duplicate label {label!r} in {where}"
COVER_GAP_ERROR = "Measurement {measurement!r} is not covered by any context"
ANTICHAIN_ERROR = "Context {inner} is contained in context {outer}"
UNKNOWN_MEASUREMENT_ERROR = "Context {context} mentions unknown measurement {measurement!r}"
EMPTY_OUTCOMES_ERROR = "The outcome set is empty"
EMPTY_COVER_ERROR = "The cover has no contexts"
NOT_SUBSET_ERROR = "{target} is not a subset of {context}"
OVERLAPPING_PARTS_ERROR = "Measurement {measurement!r} appears in more than one part"
EMPTY_PART_ERROR = "Part {index} has no measurements"
UNKNOWN_OUTCOME_ERROR = "Outcome {outcome!r} is not in {outcomes}"
NOT_HOMOGENEOUS_ERROR = "The cover is not homogeneous"


class NotHomogeneous(ValueError):
    """покрытие не однородно"""


@dataclass(frozen=True)
class Violation:
    """нарушенный инвариант сценария"""

    kind: str
    message: str


@dataclass(frozen=True)
class ScenarioReport:
    """отчёт проверки сценария"""

    violations: tuple = ()

    @property
    def is_valid(self):
        return not self.violations

    def messages(self):
        return [v.message for v in self.violations]


@dataclass(frozen=True)
class Scenario:
    """сценарий измерений: X, O и покрытие M"""

    measurements: tuple
    outcomes: tuple
    cover: tuple
    check: InitVar[bool] = True

    def __post_init__(self, check):
        measurements = tuple(self.measurements)
        position = {m: i for i, m in enumerate(measurements)}
        cover = tuple(
            tuple(sorted(context, key=lambda m: position.get(m, len(position))))
            for context in self.cover
        )
        object.__setattr__(self, 'measurements', measurements)
        object.__setattr__(self, 'outcomes', tuple(self.outcomes))
        object.__setattr__(self, 'cover', cover)
        if check:
            report = validate(self)
            if not report.is_valid:
                raise ValidationError(report.messages())

    @property
    def n_outcomes(self):
        return len(self.outcomes)

    def position(self, measurement):
        """позиция измерения в глобальном порядке"""
        return self.measurements.index(measurement)

    def canonical(self, measurements):
        """упорядочить подмножество измерений глобально"""
        chosen = set(measurements)
        return tuple(m for m in self.measurements if m in chosen)

    def containing(self, measurement):
        """контексты, содержащие измерение"""
        return [c for c in self.cover if measurement in c]

    def section(self, context, assignment):
        """проверенное сечение над подмножеством X"""
        for outcome in assignment:
            if outcome not in self.outcomes:
                raise ValueError(UNKNOWN_OUTCOME_ERROR.format(outcome=outcome, outcomes=self.outcomes))
        return Section(tuple(context), tuple(assignment))

    def sections(self, context):
        return sections(context, self.outcomes)

    def section_index(self, section):
        return section_index(section, self.outcomes)


def validate(scenario):
    """проверить инварианты сценария, ничего не поднимая"""
    violations = []
    for where, labels in (('measurements', scenario.measurements), ('outcomes', scenario.outcomes)):
        for label, count in Counter(labels).items():
            if count > 1:
                violations.append(Violation('duplicate', DUPLICATE_LABEL_ERROR.format(label=label, where=where)))
    if not scenario.outcomes:
        violations.append(Violation('empty_outcomes', EMPTY_OUTCOMES_ERROR))
    if not scenario.cover:
        violations.append(Violation('empty_cover', EMPTY_COVER_ERROR))
    known = set(scenario.measurements)
    for context in scenario.cover:
        for label, count in Counter(context).items():
            if count > 1:
                violations.append(Violation(
                    'duplicate', DUPLICATE_LABEL_ERROR.format(label=label, where=list(context))))
            if label not in known:
                violations.append(Violation(
                    'unknown_measurement',
                    UNKNOWN_MEASUREMENT_ERROR.format(context=list(context), measurement=label)))
    covered = set(itertools.chain.from_iterable(scenario.cover))
    for m in scenario.measurements:
        if m not in covered:
            violations.append(Violation('cover_gap', COVER_GAP_ERROR.format(measurement=m)))
    contexts = [frozenset(c) for c in scenario.cover]
    for i, inner in enumerate(contexts):
        for j, outer in enumerate(contexts):
            if i != j and inner <= outer and (inner != outer or i > j):
                violations.append(Violation(
                    'antichain',
                    ANTICHAIN_ERROR.format(inner=list(scenario.cover[i]), outer=list(scenario.cover[j]))))
    return ScenarioReport(tuple(violations))


def bell_scenario(parts, outcomes):
    """сценарий типа Белла: контексты - трансверсали частей

    The first part varies fastest in the cover order, so for two parts
    [[a, a'], [b, b']] the contexts are (a,b), (a',b), (a,b'), (a',b').
    """
    errors = []
    seen = set()
    for index, part in enumerate(parts):
        if not part:
            errors.append(EMPTY_PART_ERROR.format(index=index))
        for m in part:
            if m in seen:
                errors.append(OVERLAPPING_PARTS_ERROR.format(measurement=m))
            seen.add(m)
    if errors:
        raise ValidationError(errors)
    measurements = tuple(itertools.chain.from_iterable(parts))
    cover = [tuple(reversed(choice)) for choice in itertools.product(*reversed(parts))]
    return Scenario(measurements, tuple(outcomes), tuple(cover))


@dataclass(frozen=True)
class Section:
    """сечение: по одному исходу на измерение контекста"""

    context: tuple
    assignment: tuple

    def __post_init__(self):
        if len(self.context) != len(self.assignment):
            raise ValueError(f"{len(self.assignment)} outcomes for a context of size {len(self.context)}")

    def __getitem__(self, measurement):
        return self.assignment[self.context.index(measurement)]

    def as_dict(self):
        return dict(zip(self.context, self.assignment))

    def __str__(self):
        return '{' + ', '.join(f'{m}->{o}' for m, o in zip(self.context, self.assignment)) + '}'


def sections(context, outcomes):
    """все сечения над контекстом; исход первого измерения меняется быстрее всего"""
    context = tuple(context)
    return [
        Section(context, tuple(reversed(values)))
        for values in itertools.product(outcomes, repeat=len(context))
    ]


def section_index(section, outcomes):
    """номер сечения в каноническом порядке"""
    base = len(outcomes)
    index = 0
    for outcome in reversed(section.assignment):
        index = index * base + outcomes.index(outcome)
    return index


def restrict(section, target):
    """ограничение сечения s | U"""
    target = set(target)
    missing = target - set(section.context)
    if missing:
        raise ValueError(NOT_SUBSET_ERROR.format(target=sorted(target, key=str), context=list(section.context)))
    pairs = [(m, o) for m, o in zip(section.context, section.assignment) if m in target]
    return Section(tuple(m for m, _ in pairs), tuple(o for _, o in pairs))


@dataclass(frozen=True)
class PartialContextFamily:
    """частичные контексты: все подмножества элементов покрытия"""

    subsets: tuple
    p: int
    n: int = None
    counts: dict = field(default=None, compare=False)

    @property
    def homogeneous(self):
        return self.counts is not None

    def of_size(self, j):
        return [u for u in self.subsets if len(u) == j]

    def __len__(self):
        return len(self.subsets)

    def __contains__(self, subset):
        return tuple(subset) in self.subsets


def partial_contexts(scenario):
    """семейство U частичных контекстов с параметрами однородности"""
    found = set()
    for context in scenario.cover:
        for size in range(len(context) + 1):
            found.update(itertools.combinations(context, size))
    position = {m: i for i, m in enumerate(scenario.measurements)}
    subsets = tuple(sorted(found, key=lambda u: (len(u), [position[m] for m in u])))
    p = len(scenario.cover)
    sizes = {len(c) for c in scenario.cover}
    if len(sizes) != 1:
        return PartialContextFamily(subsets, p)
    n = sizes.pop()
    counts = {}
    for u in subsets:
        containing = sum(1 for c in scenario.cover if set(u) <= set(c))
        if counts.setdefault(len(u), containing) != containing:
            return PartialContextFamily(subsets, p, n)
    logger.debug('homogeneous cover: p=%d n=%d N=%s', p, n, counts)
    return PartialContextFamily(subsets, p, n, counts)


def homogeneous_dimension(scenario):
    """замкнутая формула D для однородного покрытия"""
    family = partial_contexts(scenario)
    if not family.homogeneous:
        raise NotHomogeneous(NOT_HOMOGENEOUS_ERROR)
    l_minus_one = scenario.n_outcomes - 1
    total = sum(
        Fraction(comb(family.n, j) * family.p * l_minus_one ** j, family.counts[j])
        for j in range(family.n + 1)
    )
    assert total.denominator == 1, total
    return int(total)


def dimension_D(scenario, closed_form=False):
    """D = сумма (l-1)^|U| по частичным контекстам

    With closed_form=True the homogeneous formula is required and must
    agree with the enumeration; otherwise it is checked whenever the cover
    happens to be homogeneous.
    """
    family = partial_contexts(scenario)
    D = sum((scenario.n_outcomes - 1) ** len(u) for u in family.subsets)
    if closed_form or family.homogeneous:
        closed = homogeneous_dimension(scenario)
        assert closed == D, (closed, D)
    return D
