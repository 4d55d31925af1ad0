"""Exact solvers for the incidence system M X = V.

solve_signed works over the rationals, solve_nonneg adds X >= 0 through
the exact simplex, solve_boolean and enumerate_Se work on supports.
"""
import logging
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction

import numpy as np

from analysis.simplex import LPOutcome, LPStatus, feasible_point, maximize
from empirical.models import support_model
from empirical.scenario import Section
from empirical.tableau import column_order

logger = logging.getLogger(__name__)

__all__ = [
    'BooleanSolution', 'BooleanStatus', 'LPOutcome', 'LPStatus', 'NoSolution', 'SignedSolution',
    'enumerate_Se', 'maximize', 'solve_boolean', 'solve_nonneg', 'solve_signed',
]


@dataclass(frozen=True)
class SignedSolution:
    """решение со знаками: частное решение и размерность ядра"""

    particular: tuple
    nullity: int
    rank: int
    solvable: bool = field(default=True, init=False)


@dataclass(frozen=True)
class NoSolution:
    """несовместная система с сертификатом y: y.M = 0, y.V != 0"""

    certificate: dict
    residual: Fraction
    solvable: bool = field(default=False, init=False)

    def verify(self, system):
        """проверить сертификат на исходной системе"""
        combined = np.zeros(system.shape[1], dtype=object)
        value = Fraction(0)
        for i, y in self.certificate.items():
            combined = combined + y * system.matrix[i].astype(object)
            value += y * system.rhs[i]
        return all(c == 0 for c in combined) and value != 0 and value == self.residual


def solve_signed(system):
    """метод Гаусса-Жордана с точными опорными элементами

    Rows are reduced one at a time against the pivots found so far. A row
    that reduces to 0 = c with c != 0 proves inconsistency; its combination
    of original rows is the certificate. Free variables are set to 0.
    """
    pivots = {}
    for index, (row, value) in enumerate(zip(system.sparse_rows(), system.rhs)):
        row = {c: Fraction(x) for c, x in row.items()}
        value = Fraction(value)
        combo = {index: Fraction(1)}
        for c in [c for c in row if c in pivots]:
            f = row.get(c)
            if not f:
                continue
            p_row, p_value, p_combo = pivots[c]
            _subtract(row, p_row, f)
            value -= f * p_value
            _subtract(combo, p_combo, f)
        if not row:
            if value != 0:
                logger.debug('inconsistent row %d after %d pivots', index, len(pivots))
                return NoSolution(combo, value)
            continue
        c = min(row)
        f = row[c]
        row = {k: x / f for k, x in row.items()}
        value /= f
        combo = {k: x / f for k, x in combo.items()}
        for other, (o_row, o_value, o_combo) in pivots.items():
            g = o_row.get(c)
            if g:
                _subtract(o_row, row, g)
                _subtract(o_combo, combo, g)
                pivots[other] = (o_row, o_value - g * value, o_combo)
        pivots[c] = (row, value, combo)
    particular = [Fraction(0)] * system.shape[1]
    for c, (_, value, _) in pivots.items():
        particular[c] = value
    rank = len(pivots)
    return SignedSolution(tuple(particular), system.shape[1] - rank, rank)


def _subtract(target, source, factor):
    """target -= factor * source для разреженных строк"""
    for k, x in source.items():
        updated = target.get(k, 0) - factor * x
        if updated:
            target[k] = updated
        else:
            target.pop(k, None)


def _admissible_part(system):
    """убрать столбцы, пересекающие нулевые строки правой части"""
    zero_rows = [i for i, v in enumerate(system.rhs) if v == 0]
    mask = ~system.matrix[zero_rows].any(axis=0) if zero_rows else np.ones(system.shape[1], dtype=bool)
    keep = [i for i, v in enumerate(system.rhs) if v != 0]
    return mask, system.matrix[keep][:, mask], [system.rhs[i] for i in keep]


def solve_nonneg(system):
    """неотрицательное решение через первую фазу симплекс-метода

    Columns meeting a row with zero right-hand side are forced to zero and
    left out of the simplex.
    """
    mask, matrix, rhs = _admissible_part(system)
    logger.debug('nonnegative system: %d of %d columns admissible', int(mask.sum()), system.shape[1])
    outcome = feasible_point(matrix.astype(int).tolist(), rhs)
    if not outcome.feasible:
        return outcome
    witness = [Fraction(0)] * system.shape[1]
    for j, x in zip(np.flatnonzero(mask), outcome.witness):
        witness[int(j)] = x
    return LPOutcome(LPStatus.OPTIMAL, Fraction(0), tuple(witness))


class BooleanStatus(Enum):
    """статус булевой системы"""

    SOLVABLE = 'solvable'
    UNSOLVABLE = 'unsolvable'


@dataclass(frozen=True)
class BooleanSolution:
    """булево решение: множество допустимых столбцов"""

    status: BooleanStatus
    witness: tuple

    @property
    def solvable(self):
        return self.status is BooleanStatus.SOLVABLE


def solve_boolean(tableau, vector):
    """булево решение M X = V_b в замкнутой форме

    A column is admissible iff its support lies inside supp(V); the system
    is solvable iff the admissible columns cover every row of supp(V).
    """
    support = np.array([w != 0 for w in vector.weights], dtype=bool)
    mask = tableau.admissible(vector.weights)
    covered = tableau.entries[:, mask].any(axis=1)
    status = BooleanStatus.SOLVABLE if np.array_equal(covered, support) else BooleanStatus.UNSOLVABLE
    return BooleanSolution(status, tuple(int(j) for j in np.flatnonzero(mask)))


def enumerate_Se(model):
    """S_e: глобальные назначения, согласные с носителем на каждом контексте

    Backtracks over measurements in global order; a context is checked as
    soon as its last measurement is assigned.
    """
    support = support_model(model)
    scenario = model.scenario
    position = {m: i for i, m in enumerate(scenario.measurements)}
    allowed = [
        (context, {s.assignment for s, w in table.items() if w})
        for context, table in zip(scenario.cover, support.tables)
    ]
    closing = {}
    for context, sections_ in allowed:
        last = max(position[m] for m in context) if context else -1
        closing.setdefault(last, []).append((tuple(position[m] for m in context), sections_))
    found = []
    current = []
    stats = {'nodes': 0}

    def extend(depth):
        for context, sections_ in closing.get(depth - 1, ()):
            if tuple(current[i] for i in context) not in sections_:
                return
        if depth == len(scenario.measurements):
            found.append(tuple(current))
            return
        for outcome in scenario.outcomes:
            stats['nodes'] += 1
            current.append(outcome)
            extend(depth + 1)
            current.pop()

    extend(0)
    logger.debug('S_e search visited %d nodes, found %d', stats['nodes'], len(found))
    order = column_order(scenario)
    base = scenario.n_outcomes

    def column_key(values):
        return sum(scenario.outcomes.index(values[position[m]]) * base ** k for k, m in enumerate(order))

    return [Section(scenario.measurements, values) for values in sorted(found, key=column_key)]
