"""Born-rule empirical models and the quantum fixtures built on them.

Outcomes are tracked by section: P_s is the ordered product of the outcome
projectors of the measurements in the context, and ρ_C(s) = Tr(ρ P_s).
"""
import itertools
import logging
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from django.conf import settings
from django.core.exceptions import ValidationError

from empirical.algebra import SemiringTag
from empirical.catalog import ghz_parts
from empirical.models import CompatibilityReport, EmpiricalModel, SignallingViolation
from empirical.scenario import Scenario, restrict, section_index, sections
from kspec.graphs import BINARY, maximal_cliques, orthogonality_graph
from quantum.operators import (
    DichotomicObservable, QuantumState, commutator_norm, commuting_cover, local_observable,
)

logger = logging.getLogger(__name__)

NON_COMMUTING_ERROR = "Observables {left!r} and {right!r} in context {context} do not commute"
NEGATIVE_WEIGHT_ERROR = "Born weight {weight} at {section} is negative beyond tolerance"
NORMALIZATION_ERROR = "Born weights over {context} sum to {total}"
GHZ_SIZE_ERROR = "GHZ states need n >= 2, got {n}"
NOT_EMBEDDABLE_ERROR = "Vector {label!r} lies in no orthogonal basis of dimension {dimension} within the family"
CONVERSION_ERROR = "The rounded model is not a valid exact model: {detail}"
UNKNOWN_OBSERVABLE_ERROR = "No observable for measurement {label!r}"

SQRT_HALF = 1 / np.sqrt(2)
UP = np.array([1, 0], dtype=complex)
DOWN = np.array([0, 1], dtype=complex)
# outcome 0 = Right / Forward, outcome 1 = Left / Back
X_BASIS = ((UP + DOWN) * SQRT_HALF, (UP - DOWN) * SQRT_HALF)
Y_BASIS = ((UP + 1j * DOWN) * SQRT_HALF, (UP - 1j * DOWN) * SQRT_HALF)


class NonCommutingContext(ValueError):
    """наблюдаемые контекста не коммутируют"""


class NegativeWeight(ValueError):
    """отрицательный вес Борна"""


class ConversionError(ValueError):
    """округлённая модель не прошла точную проверку"""


class NotEmbeddable(ValueError):
    """вектор не входит ни в один полный базис семейства"""


def _observable_map(observables):
    if isinstance(observables, dict):
        return dict(observables)
    return {o.label: o for o in observables}


def section_projector(observables, section, outcomes):
    """P_s = P^{s(m1)}_{m1} ... P^{s(mk)}_{mk}"""
    dimension = next(iter(observables.values())).dimension
    product = np.eye(dimension, dtype=complex)
    for m, o in zip(section.context, section.assignment):
        product = product @ observables[m].projectors[outcomes.index(o)]
    return product


def check_context(observables, context, tolerance=None):
    """проверить попарную коммутацию наблюдаемых контекста"""
    tolerance = settings.QUANTUM_OPERATOR_TOLERANCE if tolerance is None else tolerance
    for left, right in itertools.combinations(context, 2):
        if commutator_norm(observables[left].operator, observables[right].operator) > tolerance:
            raise NonCommutingContext(NON_COMMUTING_ERROR.format(left=left, right=right, context=list(context)))


def resolution_of_identity(observables, scenario, context):
    """отклонение Σ_s P_s от I в max-норме"""
    observables = _observable_map(observables)
    total = sum(section_projector(observables, s, scenario.outcomes) for s in scenario.sections(context))
    return float(np.max(np.abs(total - np.eye(total.shape[0]))))


@dataclass(frozen=True, eq=False)
class BornModel:
    """модель с вещественными весами по правилу Борна"""

    scenario: Scenario
    tables: tuple

    def table(self, context):
        return self.tables[self.scenario.cover.index(tuple(context))]

    def supports(self, epsilon=None):
        """булева модель-носитель: вес выше порога ε"""
        epsilon = settings.QUANTUM_SUPPORT_THRESHOLD if epsilon is None else epsilon
        rows = [[1 if w > epsilon else 0 for w in table] for table in self.tables]
        return EmpiricalModel.from_rows(self.scenario, rows, SemiringTag.BOOLEAN)

    def to_rational(self, max_denominator=None):
        """ближайшие дроби со знаменателем не больше 2^n и точная проверка"""
        if max_denominator is None:
            bits = settings.QUANTUM_DENOMINATOR_BITS
            if bits is None:
                bits = max(len(c) for c in self.scenario.cover)
            max_denominator = 2 ** bits
        rows = [[Fraction(float(w)).limit_denominator(max_denominator) for w in table] for table in self.tables]
        try:
            return EmpiricalModel.from_rows(self.scenario, rows)
        except ValidationError as e:
            raise ConversionError(CONVERSION_ERROR.format(detail='; '.join(e.messages))) from e


def born_model(state, observables, cover=None, tolerance=None):
    """ρ_C(s) = Tr(ρ P_s) на каждом контексте покрытия"""
    tolerance = settings.QUANTUM_OPERATOR_TOLERANCE if tolerance is None else tolerance
    observables = _observable_map(observables)
    if cover is None:
        cover = commuting_cover(list(observables.values()), tolerance)
    for m in cover.measurements:
        if m not in observables:
            raise ValidationError(UNKNOWN_OBSERVABLE_ERROR.format(label=m))
    tables = []
    for context in cover.cover:
        check_context(observables, context, tolerance)
        weights = []
        for s in cover.sections(context):
            weight = float(np.trace(state.rho @ section_projector(observables, s, cover.outcomes)).real)
            if weight < -tolerance:
                raise NegativeWeight(NEGATIVE_WEIGHT_ERROR.format(weight=weight, section=s))
            weights.append(max(weight, 0.0))
        total = sum(weights)
        if abs(total - 1) > tolerance:
            raise ValidationError(NORMALIZATION_ERROR.format(context=list(context), total=total))
        tables.append(np.array(weights))
    logger.debug('Born model over %d contexts', len(tables))
    return BornModel(cover, tuple(tables))


def _float_marginal(table, context, overlap, outcomes):
    weights = np.zeros(len(outcomes) ** len(overlap))
    for s, w in zip(sections(context, outcomes), table):
        weights[section_index(restrict(s, overlap), outcomes)] += w
    return weights


def check_generalized_no_signalling(model, tolerance=None):
    """сравнить маргиналы на пересечениях контекстов с допуском τ"""
    tolerance = settings.QUANTUM_OPERATOR_TOLERANCE if tolerance is None else tolerance
    scenario = model.scenario
    violations = []
    for (left, lt), (right, rt) in itertools.combinations(zip(scenario.cover, model.tables), 2):
        overlap = tuple(m for m in left if m in set(right))
        lm = _float_marginal(lt, left, overlap, scenario.outcomes)
        rm = _float_marginal(rt, right, overlap, scenario.outcomes)
        for s, lw, rw in zip(scenario.sections(overlap), lm, rm):
            if abs(lw - rw) > tolerance:
                violations.append(SignallingViolation(left, right, overlap, s, float(lw), float(rw)))
    return CompatibilityReport(tuple(violations))


def ghz_state(n):
    """(|↑...↑> + |↓...↓>)/√2 в базисе Z"""
    if n < 2:
        raise ValueError(GHZ_SIZE_ERROR.format(n=n))
    vector = np.zeros(2 ** n, dtype=complex)
    vector[0] = vector[-1] = SQRT_HALF
    return QuantumState.pure(vector)


def ghz_observables(n):
    """локальные X и Y на каждом из n кубитов, метки X1, Y1, ..."""
    if n < 2:
        raise ValueError(GHZ_SIZE_ERROR.format(n=n))
    observables = {}
    dims = (2,) * n
    for site, (x, y) in enumerate(ghz_parts(n)):
        observables[x] = local_observable(DichotomicObservable.from_basis(x, *X_BASIS), site, dims)
        observables[y] = local_observable(DichotomicObservable.from_basis(y, *Y_BASIS), site, dims)
    return observables


def ks_observables(family, require_bases=True):
    """проекторы на лучи и покрытие из полных ортогональных базисов

    Outcome 1 means the ray fired. With require_bases=False every maximal
    orthogonal clique becomes a context.
    """
    graph = orthogonality_graph(family)
    cliques = maximal_cliques(graph)
    if require_bases:
        cliques = tuple(c for c in cliques if len(c) == family.dimension)
        covered = set(itertools.chain.from_iterable(cliques))
        for label in family.labels:
            if label not in covered:
                raise NotEmbeddable(NOT_EMBEDDABLE_ERROR.format(label=label, dimension=family.dimension))
    observables = {
        label: DichotomicObservable.from_vector(label, vector)
        for label, vector in zip(family.labels, family.vectors)
    }
    return observables, Scenario(family.labels, BINARY, cliques)
