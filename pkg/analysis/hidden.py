"""Hidden-variable models with a context-independent prior.

Each hidden variable λ carries a compatible family h^λ (parameter
independence); the model is factorizable when every h^λ_C is the product
of its single-measurement marginals.
"""
import logging
from dataclasses import dataclass
from fractions import Fraction

from django.conf import settings
from django.core.exceptions import ValidationError

from empirical.algebra import Distribution, SemiringTag, marginalize, product_over_singletons
from empirical.models import EmpiricalModel, check_no_signalling, deterministic_model
from empirical.seeding import default_random

logger = logging.getLogger(__name__)

PRIOR_LENGTH_ERROR = "{priors} prior weights for {lambdas} hidden variables"
PRIOR_NEGATIVE_ERROR = "Prior weight of {label!r} is negative"
PRIOR_NORMALIZATION_ERROR = "Prior weights sum to {total}, not 1"
TABLES_LENGTH_ERROR = "{tables} families for {lambdas} hidden variables"
FAMILY_SCENARIO_ERROR = "The family of {label!r} is over another scenario"
FAMILY_SEMIRING_ERROR = "The family of {label!r} is not probabilistic"
FAMILY_SIGNALLING_ERROR = "The family of {label!r} violates parameter independence: {detail}"
NOT_FACTORIZABLE_ERROR = "The model is not factorizable at {label!r}, {context}, {section}"


class NotFactorizable(ValueError):
    """модель не факторизуема"""


@dataclass(frozen=True)
class HiddenVariableModel:
    """модель со скрытыми переменными (Λ, h_Λ, h^λ)"""

    scenario: object
    lambdas: tuple
    prior: tuple
    tables: tuple

    def __post_init__(self):
        object.__setattr__(self, 'lambdas', tuple(self.lambdas))
        object.__setattr__(self, 'prior', tuple(Fraction(p) for p in self.prior))
        object.__setattr__(self, 'tables', tuple(self.tables))
        errors = []
        if len(self.prior) != len(self.lambdas):
            errors.append(PRIOR_LENGTH_ERROR.format(priors=len(self.prior), lambdas=len(self.lambdas)))
        if len(self.tables) != len(self.lambdas):
            errors.append(TABLES_LENGTH_ERROR.format(tables=len(self.tables), lambdas=len(self.lambdas)))
        for label, weight in zip(self.lambdas, self.prior):
            if weight < 0:
                errors.append(PRIOR_NEGATIVE_ERROR.format(label=label))
        if sum(self.prior) != 1:
            errors.append(PRIOR_NORMALIZATION_ERROR.format(total=sum(self.prior)))
        for label, family in zip(self.lambdas, self.tables):
            if family.scenario != self.scenario:
                errors.append(FAMILY_SCENARIO_ERROR.format(label=label))
            elif family.semiring is not SemiringTag.NONNEG:
                errors.append(FAMILY_SEMIRING_ERROR.format(label=label))
            elif family.raw:
                report = check_no_signalling(family)
                if not report.is_compatible:
                    errors.append(FAMILY_SIGNALLING_ERROR.format(label=label, detail=report.messages()[0]))
        if errors:
            raise ValidationError(errors)


@dataclass(frozen=True)
class Factorizability:
    """результат проверки факторизуемости"""

    factorizable: bool
    counterexample: tuple = None

    def __bool__(self):
        return self.factorizable


def is_factorizable(h):
    """h^λ_C(s) = произведение h^λ_C|{m}(s|{m}) для всех λ, C, s"""
    for label, family in zip(h.lambdas, h.tables):
        for table in family.tables:
            factors = [marginalize(table, [m]) for m in table.context]
            product = product_over_singletons(factors, table.context)
            for section, weight, expected in zip(table.domain, table.weights, product.weights):
                if weight != expected:
                    return Factorizability(False, (label, table.context, section, weight, expected))
    return Factorizability(True)


def realize(h):
    """e_C(s) = сумма по λ h^λ_C(s) h_Λ(λ)"""
    rows = []
    for k, context in enumerate(h.scenario.cover):
        row = [Fraction(0)] * (h.scenario.n_outcomes ** len(context))
        for weight, family in zip(h.prior, h.tables):
            for i, value in enumerate(family.tables[k].weights):
                row[i] += weight * value
        rows.append(row)
    return EmpiricalModel.from_rows(h.scenario, rows)


def hv_from_global_section(scenario, d):
    """детерминированная модель: Λ = носитель d, h^s_C = delta(s | C)"""
    support = [(s, w) for s, w in d.items() if w]
    return HiddenVariableModel(
        scenario,
        tuple(s for s, _ in support),
        tuple(w for _, w in support),
        tuple(deterministic_model(scenario, s) for s, _ in support),
    )


def global_section_from_factorizable(h):
    """d(s) = сумма по λ h^λ_X(s) h_Λ(λ), где h^λ_X - произведение по измерениям"""
    check = is_factorizable(h)
    if not check:
        label, context, section, _, _ = check.counterexample
        raise NotFactorizable(NOT_FACTORIZABLE_ERROR.format(label=label, context=list(context), section=section))
    logger.debug('global section from %d hidden variables', len(h.lambdas))
    scenario = h.scenario
    weights = [Fraction(0)] * (scenario.n_outcomes ** len(scenario.measurements))
    for prior, family in zip(h.prior, h.tables):
        factors = []
        for m in scenario.measurements:
            table = next(t for t in family.tables if m in t.context)
            factors.append(marginalize(table, [m]))
        joint = product_over_singletons(factors, scenario.measurements)
        for i, value in enumerate(joint.weights):
            weights[i] += prior * value
    return Distribution(SemiringTag.NONNEG, scenario.measurements, scenario.outcomes, tuple(weights))


def _random_weights(rng, size, max_denominator):
    """случайное рациональное распределение с ограниченным знаменателем"""
    denominator = rng.randint(1, max_denominator)
    cuts = sorted(rng.randint(0, denominator) for _ in range(size - 1))
    parts = [b - a for a, b in zip([0] + cuts, cuts + [denominator])]
    return [Fraction(p, denominator) for p in parts]


def random_factorizable_model(scenario, n_lambdas=3, rng=None, max_denominator=None):
    """случайная факторизуемая модель из одноточечных распределений"""
    if rng is None:
        rng = default_random()
    if max_denominator is None:
        max_denominator = settings.HIDDEN_MAX_DENOMINATOR
    families = []
    for _ in range(n_lambdas):
        singles = {
            m: Distribution(SemiringTag.NONNEG, (m,), scenario.outcomes,
                            tuple(_random_weights(rng, scenario.n_outcomes, max_denominator)))
            for m in scenario.measurements
        }
        tables = [product_over_singletons([singles[m] for m in context], context) for context in scenario.cover]
        families.append(EmpiricalModel(scenario, SemiringTag.NONNEG, tables))
    prior = _random_weights(rng, n_lambdas, max_denominator)
    lambdas = tuple(f'λ{i}' for i in range(n_lambdas))
    return HiddenVariableModel(scenario, lambdas, tuple(prior), tuple(families))


def random_global_distribution(scenario, rng=None, max_denominator=None):
    """случайное распределение на O^X"""
    if rng is None:
        rng = default_random()
    if max_denominator is None:
        max_denominator = settings.HIDDEN_MAX_DENOMINATOR
    size = scenario.n_outcomes ** len(scenario.measurements)
    weights = _random_weights(rng, size, max_denominator)
    return Distribution(SemiringTag.NONNEG, scenario.measurements, scenario.outcomes, tuple(weights))
