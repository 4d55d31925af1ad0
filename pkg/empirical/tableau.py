"""Incidence tableau of a cover, model vectors and linear systems.

Rows are (context, section) pairs, contexts in cover order and sections in
canonical order. Columns are the global assignments O^X, enumerated by
column_order(): the first measurement of that order is the fastest digit.
"""
import logging
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from django.conf import settings

from empirical.scenario import Section, sections

logger = logging.getLogger(__name__)

TABLEAU_TOO_LARGE_ERROR = "{columns} global assignments exceed the bound of {bound} columns"
SCENARIO_MISMATCH_ERROR = "The model and the tableau are over different scenarios"
VECTOR_LENGTH_ERROR = "Vector of length {got} does not match {expected} tableau rows"

GRAM_CHUNK = 1 << 14


class TableauTooLarge(ValueError):
    """таблица превышает допустимый размер"""


def column_order(scenario):
    """порядок разрядов глобальных назначений, младший первым

    Contexts are walked from last to first; each contributes its
    measurements not yet listed, in context order.
    """
    order = []
    for context in reversed(scenario.cover):
        order.extend(m for m in context if m not in order)
    return tuple(order)


class IncidenceTableau:
    """0/1 матрица инцидентности покрытия"""

    def __init__(self, scenario, rows, order, entries, section_index):
        self.scenario = scenario
        self.rows = rows
        self.order = order
        self.entries = entries
        self.section_index = section_index
        self.offsets = {}
        offset = 0
        for context in scenario.cover:
            self.offsets[context] = offset
            offset += scenario.n_outcomes ** len(context)
        self._weight = {m: scenario.n_outcomes ** k for k, m in enumerate(order)}

    @property
    def shape(self):
        return self.entries.shape

    @property
    def n_columns(self):
        return self.entries.shape[1]

    def column(self, j):
        """глобальное назначение столбца j"""
        outcomes = self.scenario.outcomes
        base = len(outcomes)
        return Section(
            self.scenario.measurements,
            tuple(outcomes[(j // self._weight[m]) % base] for m in self.scenario.measurements),
        )

    def columns(self, indices=None):
        if indices is None:
            indices = range(self.n_columns)
        return [self.column(int(j)) for j in indices]

    def column_index(self, assignment):
        outcomes = self.scenario.outcomes
        return sum(outcomes.index(assignment[m]) * self._weight[m] for m in self.scenario.measurements)

    def row_index(self, context, section):
        return self.offsets[tuple(context)] + self.scenario.section_index(section)

    def context_blocks(self, weights):
        """разбить вектор строк по контекстам"""
        blocks = []
        for context in self.scenario.cover:
            start = self.offsets[context]
            blocks.append(list(weights[start:start + self.scenario.n_outcomes ** len(context)]))
        return blocks

    def apply(self, column_weights, columns=None):
        """M . d точно: семейство маргиналов глобального распределения"""
        if columns is None:
            columns = range(self.n_columns)
        result = [Fraction(0)] * self.shape[0]
        for j, w in zip(columns, column_weights):
            if w == 0:
                continue
            for k, context in enumerate(self.scenario.cover):
                result[self.offsets[context] + int(self.section_index[k, j])] += w
        return result

    def admissible(self, weights):
        """маска столбцов, чьи ограничения лежат в носителе вектора"""
        mask = np.ones(self.n_columns, dtype=bool)
        for k, block in enumerate(self.context_blocks(weights)):
            support = np.array([w != 0 for w in block], dtype=bool)
            mask &= support[self.section_index[k]]
        return mask


def build_incidence(scenario, max_columns=None):
    """построить матрицу инцидентности M"""
    if max_columns is None:
        max_columns = settings.TABLEAU_MAX_COLUMNS
    base = scenario.n_outcomes
    q = base ** len(scenario.measurements)
    if q > max_columns:
        raise TableauTooLarge(TABLEAU_TOO_LARGE_ERROR.format(columns=q, bound=max_columns))
    order = column_order(scenario)
    weight = {m: base ** k for k, m in enumerate(order)}
    j = np.arange(q, dtype=np.int64)
    rows = []
    for context in scenario.cover:
        rows.extend((context, s) for s in sections(context, scenario.outcomes))
    entries = np.zeros((len(rows), q), dtype=np.uint8)
    section_index = np.zeros((len(scenario.cover), q), dtype=np.int64)
    offset = 0
    for k, context in enumerate(scenario.cover):
        for i, m in enumerate(context):
            section_index[k] += ((j // weight[m]) % base) * base ** i
        entries[offset + section_index[k], j] = 1
        offset += base ** len(context)
    logger.debug('incidence tableau %dx%d, column order %s', len(rows), q, order)
    return IncidenceTableau(scenario, tuple(rows), order, entries, section_index)


@dataclass(frozen=True)
class ModelVector:
    """вектор модели V в порядке строк таблицы"""

    semiring: object
    weights: tuple

    def __len__(self):
        return len(self.weights)

    def support(self):
        return tuple(1 if w != 0 else 0 for w in self.weights)


def model_vector(model, tableau=None):
    """V[i] = e_C(s_i)"""
    if tableau is not None and tableau.scenario != model.scenario:
        raise ValueError(SCENARIO_MISMATCH_ERROR)
    weights = []
    for table in model.tables:
        weights.extend(table.weights)
    return ModelVector(model.semiring, tuple(weights))


@dataclass(frozen=True, eq=False)
class LinearSystem:
    """система M X = V над выбранными столбцами таблицы"""

    matrix: np.ndarray
    rhs: tuple
    columns: np.ndarray
    augmented: bool = False

    @property
    def shape(self):
        return self.matrix.shape

    def sparse_rows(self):
        return [{int(c): 1 for c in np.flatnonzero(row)} for row in self.matrix]

    def restricted(self, mask):
        """оставить только столбцы по маске"""
        return LinearSystem(self.matrix[:, mask], self.rhs, self.columns[mask], self.augmented)


def linear_system(tableau, v):
    """система без строки нормировки"""
    if len(v) != tableau.shape[0]:
        raise ValueError(VECTOR_LENGTH_ERROR.format(got=len(v), expected=tableau.shape[0]))
    return LinearSystem(
        tableau.entries, tuple(Fraction(w) for w in v.weights), np.arange(tableau.n_columns))


def augment(tableau, v):
    """дописать строку X[1] + ... + X[q] = 1"""
    system = linear_system(tableau, v)
    matrix = np.vstack([system.matrix, np.ones((1, tableau.n_columns), dtype=np.uint8)])
    return LinearSystem(matrix, system.rhs + (Fraction(1),), system.columns, augmented=True)


def exact_rank(matrix):
    """точный ранг рациональной матрицы без дробей"""
    rows = []
    for row in matrix:
        row = [Fraction(x) for x in row]
        scale = math.lcm(*(x.denominator for x in row)) if row else 1
        integer = [int(x * scale) for x in row]
        if any(integer):
            rows.append(integer)
    rank = 0
    width = len(rows[0]) if rows else 0
    for col in range(width):
        pivot = next((i for i in range(rank, len(rows)) if rows[i][col]), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        head = rows[rank]
        a = head[col]
        for i in range(rank + 1, len(rows)):
            b = rows[i][col]
            if b:
                reduced = [a * x - b * y for x, y in zip(rows[i], head)]
                g = math.gcd(*reduced)
                rows[i] = [x // g for x in reduced] if g > 1 else reduced
        rank += 1
        if rank == len(rows):
            break
    return rank


def gram_matrix(tableau):
    """M M^T, накопленная по блокам столбцов"""
    n_rows, q = tableau.shape
    gram = np.zeros((n_rows, n_rows), dtype=np.float64)
    for start in range(0, q, GRAM_CHUNK):
        block = tableau.entries[:, start:start + GRAM_CHUNK].astype(np.float64)
        gram += block @ block.T
    return np.rint(gram).astype(np.int64).tolist()


def rank(tableau):
    """ранг M над вещественными числами

    rank(M) = rank(M M^T); the Gram matrix is square in the number of rows,
    which stays small while the columns grow as |O|^|X|.
    """
    result = exact_rank(gram_matrix(tableau))
    logger.debug('rank of %dx%d tableau: %d', tableau.shape[0], tableau.shape[1], result)
    return result


def dump_matrix(tableau):
    """строки матрицы как 0/1 текст"""
    return '\n'.join(''.join('1' if x else '0' for x in row) for row in tableau.entries.tolist())
