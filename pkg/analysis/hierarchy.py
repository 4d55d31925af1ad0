"""Classification of empirical models along the contextuality hierarchy.

Local < probabilistically non-extendable < possibilistically non-extendable
< strongly contextual, together with the noncontextual fraction and the
CSP and SAT views of a model's support.
"""
import itertools
import logging
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from django.conf import settings
from django.core.exceptions import ValidationError

from analysis.solve import enumerate_Se, maximize, solve_boolean, solve_nonneg
from empirical.algebra import Distribution, SemiringTag
from empirical.models import EmpiricalModel, check_no_signalling, support_model
from empirical.scenario import Section
from empirical.tableau import augment, build_incidence, model_vector

logger = logging.getLogger(__name__)

NOT_PROBABILISTIC_ERROR = "Classification needs a probabilistic model, got {semiring}"
NOT_DICHOTOMIC_ERROR = "Formulas need exactly two outcomes, got {count}"
DECOMPOSITION_ERROR = "The decomposition does not reconstruct the model"


class NotDichotomic(ValueError):
    """исходов не два"""


class Level(Enum):
    """уровень иерархии контекстуальности"""

    LOCAL = 'Local'
    PROB_NON_EXTENDABLE = 'ProbNonExtendable'
    POSS_NON_EXTENDABLE = 'PossNonExtendable'
    STRONGLY_CONTEXTUAL = 'StronglyContextual'

    @property
    def strength(self):
        return list(Level).index(self)


@dataclass(frozen=True)
class NoncontextualFraction:
    """λ* и разложение e = λ* L + (1 - λ*) q"""

    value: Fraction
    column_weights: dict
    local: EmpiricalModel = None
    residual: EmpiricalModel = None


@dataclass(frozen=True)
class ClassificationReport:
    """отчёт классификации модели"""

    level: Level
    global_section: Distribution
    boolean: object
    s_e: tuple
    ncf: NoncontextualFraction

    @property
    def is_local(self):
        return self.level is Level.LOCAL


def _require_probabilistic(model):
    """модель над неотрицательными рациональными и совместна"""
    if model.semiring is not SemiringTag.NONNEG:
        raise ValidationError(NOT_PROBABILISTIC_ERROR.format(semiring=model.semiring.value))
    if model.raw:
        report = check_no_signalling(model)
        if not report.is_compatible:
            raise ValidationError(report.messages())


def global_distribution(tableau, column_weights):
    """распределение на O^X по весам столбцов"""
    scenario = tableau.scenario
    weights = [Fraction(0)] * (scenario.n_outcomes ** len(scenario.measurements))
    for j, w in column_weights.items():
        weights[scenario.section_index(tableau.column(j))] += w
    return Distribution(SemiringTag.NONNEG, scenario.measurements, scenario.outcomes, tuple(weights))


def _model_from_vector(scenario, vector):
    """модель из вектора строк таблицы"""
    rows, start = [], 0
    for context in scenario.cover:
        size = scenario.n_outcomes ** len(context)
        rows.append(vector[start:start + size])
        start += size
    return EmpiricalModel.from_rows(scenario, rows)


def noncontextual_fraction(model, tableau=None):
    """максимум 1.x при M x <= V, x >= 0

    Columns outside the support are forced to zero and dropped; the residual
    V - M x is a nonnegative compatible family, so the optimum is the
    noncontextual fraction.
    """
    _require_probabilistic(model)
    if tableau is None:
        tableau = build_incidence(model.scenario)
    v = model_vector(model, tableau)
    mask = tableau.admissible(v.weights)
    columns = [int(j) for j in mask.nonzero()[0]]
    keep = [i for i, w in enumerate(v.weights) if w != 0]
    matrix = tableau.entries[keep][:, mask].astype(int).tolist()
    outcome = maximize([1] * len(columns), A_ub=matrix, b_ub=[v.weights[i] for i in keep])
    value = outcome.optimum
    weights = {j: x for j, x in zip(columns, outcome.witness) if x}
    logger.info('noncontextual fraction %s over %d admissible columns', value, len(columns))
    if value in (0, 1):
        return NoncontextualFraction(value, weights)
    explained = tableau.apply(list(weights.values()), list(weights))
    local = _model_from_vector(model.scenario, [x / value for x in explained])
    residual = _model_from_vector(
        model.scenario, [(w - x) / (1 - value) for w, x in zip(v.weights, explained)])
    pairs = zip(model_vector(local).weights, model_vector(residual).weights)
    mixed = [value * a + (1 - value) * b for a, b in pairs]
    if tuple(mixed) != v.weights:
        raise AssertionError(DECOMPOSITION_ERROR)
    return NoncontextualFraction(value, weights, local, residual)


def classify(model):
    """определить уровень иерархии, собрав все свидетельства"""
    _require_probabilistic(model)
    tableau = build_incidence(model.scenario)
    v = model_vector(model, tableau)
    nonneg = solve_nonneg(augment(tableau, v))
    boolean = solve_boolean(tableau, model_vector(support_model(model), tableau))
    s_e = tuple(enumerate_Se(model))
    global_section = None
    if nonneg.feasible:
        level = Level.LOCAL
        global_section = global_distribution(
            tableau, {j: x for j, x in enumerate(nonneg.witness) if x})
    elif boolean.solvable:
        level = Level.PROB_NON_EXTENDABLE
    elif s_e:
        level = Level.POSS_NON_EXTENDABLE
    else:
        level = Level.STRONGLY_CONTEXTUAL
    ncf = noncontextual_fraction(model, tableau)
    logger.info('classified as %s, |S_e| = %d, ncf = %s', level.value, len(s_e), ncf.value)
    return ClassificationReport(level, global_section, boolean, s_e, ncf)


@dataclass(frozen=True)
class CSPInstance:
    """CSP (X, O, {(C, supp e_C)})"""

    variables: tuple
    values: tuple
    constraints: tuple

    def satisfied_by(self, assignment):
        return all(tuple(assignment[m] for m in scope) in allowed for scope, allowed in self.constraints)

    def solutions(self):
        """все решения полным перебором"""
        found = []
        for values in itertools.product(self.values, repeat=len(self.variables)):
            assignment = dict(zip(self.variables, values))
            if self.satisfied_by(assignment):
                found.append(Section(self.variables, values))
        return found


def to_csp(model):
    """CSP, решения которой - элементы S_e"""
    support = support_model(model)
    constraints = tuple(
        (table.context, frozenset(s.assignment for s, w in table.items() if w))
        for table in support.tables
    )
    return CSPInstance(model.scenario.measurements, model.scenario.outcomes, constraints)


def csp_document(csp):
    """CSP в виде документа, повторяющего формат модели"""
    return {
        'version': settings.DOCUMENT_FORMAT_VERSION,
        'variables': list(csp.variables),
        'values': list(csp.values),
        'constraints': [
            {
                'scope': list(scope),
                'allowed': sorted(','.join(map(str, a)) for a in allowed),
            }
            for scope, allowed in csp.constraints
        ],
    }


@dataclass(frozen=True)
class Formula:
    """КНФ из дизъюнкций кубов: по клаузе на нетривиальный контекст

    A literal (m, True) reads "m has the second outcome".
    """

    variables: tuple
    outcomes: tuple
    clauses: tuple

    def evaluate(self, assignment):
        return all(
            any(all((assignment[m] == self.outcomes[1]) == value for m, value in cube) for cube in clause)
            for clause in self.clauses
        )

    def satisfying_assignments(self):
        """все выполняющие назначения полным перебором"""
        found = []
        for values in itertools.product(self.outcomes, repeat=len(self.variables)):
            if self.evaluate(dict(zip(self.variables, values))):
                found.append(Section(self.variables, values))
        return found

    def readable(self):
        lines = []
        for clause in self.clauses:
            cubes = ['(' + ' & '.join(m if value else '~' + m for m, value in cube) + ')' for cube in clause]
            lines.append(' | '.join(cubes))
        return '\n& '.join(lines)


def to_formula(model):
    """формула φ_e; тавтологические контексты опущены"""
    outcomes = model.scenario.outcomes
    if len(outcomes) != 2:
        raise NotDichotomic(NOT_DICHOTOMIC_ERROR.format(count=len(outcomes)))
    support = support_model(model)
    clauses = []
    for table in support.tables:
        if all(table.weights):
            continue
        clauses.append(tuple(
            tuple((m, o == outcomes[1]) for m, o in zip(s.context, s.assignment))
            for s, w in table.items() if w
        ))
    return Formula(model.scenario.measurements, outcomes, tuple(clauses))


def to_dimacs(formula):
    """DIMACS CNF; каждый куб заменён вспомогательной переменной y -> куб"""
    number = {m: i + 1 for i, m in enumerate(formula.variables)}
    next_var = len(formula.variables)
    cnf = []
    for clause in formula.clauses:
        heads = []
        for cube in clause:
            next_var += 1
            heads.append(next_var)
            for m, value in cube:
                cnf.append([-next_var, number[m] if value else -number[m]])
        cnf.append(heads)
    lines = [f'c {number[m]} {m}' for m in formula.variables]
    lines.append(f'p cnf {next_var} {len(cnf)}')
    lines.extend(' '.join(map(str, clause + [0])) for clause in cnf)
    return '\n'.join(lines) + '\n'
