"""Finite distributions over the boolean, probability and signed semirings."""
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from functools import cached_property, reduce

from django.core.exceptions import ValidationError

from empirical.scenario import NOT_SUBSET_ERROR, restrict, section_index, sections


LENGTH_ERROR = "Context {context} has {expected} sections but {got} weights were given"
CARRIER_ERROR = "Weight {weight} at section {section} is not in the {semiring} semiring"
NORMALIZATION_ERROR = "Weights over {context} sum to {total}, not 1"
BOOLEAN_EMPTY_ERROR = "Boolean weights over {context} have no 1"
NO_HOMOMORPHISM_ERROR = "There is no semiring homomorphism from signed weights to booleans"
MIXED_SEMIRING_ERROR = "Factors are over different semirings: {semirings}"
MISSING_FACTOR_ERROR = "No single-measurement factor for {measurement!r}"
FACTOR_CONTEXT_ERROR = "Factor over {context} is not a single-measurement distribution"


class NoHomomorphism(ValueError):
    """нет гомоморфизма полуколец"""


class SemiringTag(Enum):
    """одно из трёх полуколец весов"""

    BOOLEAN = 'boolean'
    NONNEG = 'nonneg'
    SIGNED = 'signed'

    @property
    def zero(self):
        return 0 if self is SemiringTag.BOOLEAN else Fraction(0)

    @property
    def one(self):
        return 1 if self is SemiringTag.BOOLEAN else Fraction(1)

    def add(self, x, y):
        if self is SemiringTag.BOOLEAN:
            return x | y
        return x + y

    def mul(self, x, y):
        if self is SemiringTag.BOOLEAN:
            return x & y
        return x * y

    def sum(self, values):
        return reduce(self.add, values, self.zero)

    def coerce(self, value):
        """привести вес к носителю полукольца"""
        if self is SemiringTag.BOOLEAN:
            if value in (0, 1, True, False):
                return int(value)
            raise ValueError(value)
        if isinstance(value, float):
            raise ValueError(value)
        value = Fraction(value)
        if self is SemiringTag.NONNEG and value < 0:
            raise ValueError(value)
        return value


def parse_weight(value):
    """вес из строки вида "p/q" """
    if isinstance(value, str):
        return Fraction(value.strip())
    return value


def format_weight(value):
    """вес в строку вида "p/q" """
    return str(Fraction(value))


@dataclass(frozen=True)
class Distribution:
    """распределение над сечениями одного контекста

    Weights are dense over sections(context, outcomes) in canonical order.
    A raw distribution skips normalization so that perturbed tables stay
    representable.
    """

    semiring: SemiringTag
    context: tuple
    outcomes: tuple
    weights: tuple
    raw: bool = field(default=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, 'context', tuple(self.context))
        object.__setattr__(self, 'outcomes', tuple(self.outcomes))
        domain = self.domain
        if len(self.weights) != len(domain):
            raise ValidationError(LENGTH_ERROR.format(
                context=list(self.context), expected=len(domain), got=len(self.weights)))
        errors = []
        weights = []
        for section, weight in zip(domain, self.weights):
            try:
                weights.append(self.semiring.coerce(parse_weight(weight)))
            except (ValueError, TypeError, ZeroDivisionError):
                errors.append(CARRIER_ERROR.format(weight=weight, section=section, semiring=self.semiring.value))
        if errors:
            raise ValidationError(errors)
        object.__setattr__(self, 'weights', tuple(weights))
        if self.raw:
            return
        total = self.semiring.sum(weights)
        if self.semiring is SemiringTag.BOOLEAN:
            if total != 1:
                raise ValidationError(BOOLEAN_EMPTY_ERROR.format(context=list(self.context)))
        elif total != 1:
            raise ValidationError(NORMALIZATION_ERROR.format(context=list(self.context), total=total))

    @cached_property
    def domain(self):
        return sections(self.context, self.outcomes)

    def __getitem__(self, section):
        return self.weights[section_index(section, self.outcomes)]

    def items(self):
        return zip(self.domain, self.weights)

    def support(self):
        """сечения с ненулевым весом"""
        return [s for s, w in self.items() if w != 0]

    def total(self):
        return self.semiring.sum(self.weights)


def marginalize(d, target):
    """маргинал d | U"""
    missing = set(target) - set(d.context)
    if missing:
        raise ValueError(NOT_SUBSET_ERROR.format(target=sorted(target, key=str), context=list(d.context)))
    chosen = set(target)
    target = tuple(m for m in d.context if m in chosen)
    weights = [d.semiring.zero] * (len(d.outcomes) ** len(target))
    for section, weight in zip(d.domain, d.weights):
        index = section_index(restrict(section, target), d.outcomes)
        weights[index] = d.semiring.add(weights[index], weight)
    return Distribution(d.semiring, target, d.outcomes, tuple(weights), raw=d.raw)


def delta(section, outcomes, semiring=SemiringTag.NONNEG):
    """точечное распределение delta_s"""
    weights = [semiring.zero] * (len(outcomes) ** len(section.context))
    weights[section_index(section, outcomes)] = semiring.one
    return Distribution(semiring, section.context, outcomes, tuple(weights))


def to_boolean(d):
    """носитель распределения как булево распределение"""
    if d.semiring is SemiringTag.SIGNED:
        raise NoHomomorphism(NO_HOMOMORPHISM_ERROR)
    if d.semiring is SemiringTag.BOOLEAN:
        return d
    return Distribution(
        SemiringTag.BOOLEAN, d.context, d.outcomes,
        tuple(1 if w != 0 else 0 for w in d.weights), raw=d.raw,
    )


def product_over_singletons(factors, context):
    """произведение одноточечных распределений по измерениям контекста"""
    by_measurement = {}
    for factor in factors:
        if len(factor.context) != 1:
            raise ValueError(FACTOR_CONTEXT_ERROR.format(context=list(factor.context)))
        by_measurement[factor.context[0]] = factor
    semirings = {f.semiring for f in factors}
    if len(semirings) > 1:
        raise ValueError(MIXED_SEMIRING_ERROR.format(semirings=sorted(s.value for s in semirings)))
    for m in context:
        if m not in by_measurement:
            raise ValueError(MISSING_FACTOR_ERROR.format(measurement=m))
    context = tuple(context)
    semiring = semirings.pop() if semirings else SemiringTag.NONNEG
    outcomes = factors[0].outcomes if factors else ()
    weights = []
    for section in sections(context, outcomes):
        weight = semiring.one
        for m, outcome in zip(context, section.assignment):
            factor = by_measurement[m]
            weight = semiring.mul(weight, factor.weights[factor.outcomes.index(outcome)])
        weights.append(weight)
    return Distribution(semiring, context, outcomes, tuple(weights))
