"""Two-phase simplex over exact rationals with Bland's rule."""
import logging
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

logger = logging.getLogger(__name__)


class LPStatus(Enum):
    """статус задачи ЛП"""

    OPTIMAL = 'optimal'
    INFEASIBLE = 'infeasible'
    UNBOUNDED = 'unbounded'


@dataclass(frozen=True)
class LPOutcome:
    """результат задачи ЛП"""

    status: LPStatus
    optimum: Fraction = None
    witness: tuple = None

    @property
    def feasible(self):
        return self.status is not LPStatus.INFEASIBLE


class SimplexTableau:
    """симплекс-таблица для A x = b, x >= 0, b >= 0

    Columns n..n+m-1 are the artificial variables of phase I.
    """

    def __init__(self, A, b):
        self.m = len(A)
        self.n = len(A[0]) if A else 0
        self.A = [
            [Fraction(x) for x in row] + [Fraction(int(i == k)) for k in range(self.m)]
            for i, row in enumerate(A)
        ]
        self.b = [Fraction(x) for x in b]
        self.basis = [self.n + i for i in range(self.m)]
        self.r = [Fraction(0)] * (self.n + self.m)
        self.z = Fraction(0)
        self.pivots = 0

    def pivot(self, i, j):
        """ввести столбец j в базис вместо строки i"""
        row = self.A[i]
        piv = row[j]
        row = [x / piv for x in row]
        self.A[i] = row
        self.b[i] /= piv
        for k in range(self.m):
            f = self.A[k][j]
            if k != i and f:
                self.A[k] = [x - f * y for x, y in zip(self.A[k], row)]
                self.b[k] -= f * self.b[i]
        f = self.r[j]
        if f:
            self.r = [x - f * y for x, y in zip(self.r, row)]
            self.z += f * self.b[i]
        self.basis[i] = j
        self.pivots += 1

    def set_objective(self, c):
        """приведённые стоимости r = c - c_B B^-1 A"""
        c = list(c) + [Fraction(0)] * (len(self.r) - len(c))
        self.r = list(c)
        self.z = Fraction(0)
        for i, var in enumerate(self.basis):
            cb = c[var]
            if cb:
                self.r = [x - cb * y for x, y in zip(self.r, self.A[i])]
                self.z += cb * self.b[i]

    def bland_step(self, allowed):
        """один шаг по правилу Бленда"""
        entering = next((j for j in range(allowed) if self.r[j] > 0), None)
        if entering is None:
            return LPStatus.OPTIMAL
        candidates = [
            (self.b[i] / self.A[i][entering], self.basis[i], i)
            for i in range(self.m) if self.A[i][entering] > 0
        ]
        if not candidates:
            return LPStatus.UNBOUNDED
        _, _, leaving = min(candidates)
        self.pivot(leaving, entering)
        return None

    def run(self, allowed):
        while True:
            status = self.bland_step(allowed)
            if status is not None:
                return status

    def phase_one(self):
        """найти допустимый базис; False, если его нет"""
        self.set_objective([Fraction(0)] * self.n + [Fraction(-1)] * self.m)
        self.run(self.n + self.m)
        if self.z < 0:
            return False
        self.drive_out_artificials()
        return True

    def drive_out_artificials(self):
        """вывести искусственные переменные из базиса, убрав лишние строки"""
        i = 0
        while i < self.m:
            if self.basis[i] >= self.n:
                j = next((j for j in range(self.n) if self.A[i][j] != 0), None)
                if j is None:
                    del self.A[i], self.b[i], self.basis[i]
                    self.m -= 1
                    continue
                self.pivot(i, j)
            i += 1
        self.A = [row[:self.n] for row in self.A]
        self.r = self.r[:self.n]

    def solution(self):
        x = [Fraction(0)] * self.n
        for i, var in enumerate(self.basis):
            x[var] = self.b[i]
        return tuple(x)


def _normalized(rows, rhs):
    """строки с неотрицательной правой частью"""
    out_rows, out_rhs = [], []
    for row, value in zip(rows, rhs):
        value = Fraction(value)
        if value < 0:
            out_rows.append([-Fraction(x) for x in row])
            out_rhs.append(-value)
        else:
            out_rows.append([Fraction(x) for x in row])
            out_rhs.append(value)
    return out_rows, out_rhs


def maximize(objective, A_ub=None, b_ub=None, A_eq=None, b_eq=None):
    """максимизировать c.x при A_ub x <= b_ub, A_eq x = b_eq, x >= 0"""
    n = len(objective)
    A_ub, b_ub = A_ub or [], b_ub or []
    A_eq, b_eq = A_eq or [], b_eq or []
    if n == 0:
        if all(Fraction(b) == 0 for b in b_eq) and all(Fraction(b) >= 0 for b in b_ub):
            return LPOutcome(LPStatus.OPTIMAL, Fraction(0), ())
        return LPOutcome(LPStatus.INFEASIBLE)
    slacks = len(A_ub)
    rows = []
    for i, row in enumerate(A_ub):
        rows.append(list(row) + [int(i == k) for k in range(slacks)])
    for row in A_eq:
        rows.append(list(row) + [0] * slacks)
    rows, rhs = _normalized(rows, list(b_ub) + list(b_eq))
    width = n + slacks
    if not rows:
        if any(Fraction(c) > 0 for c in objective):
            return LPOutcome(LPStatus.UNBOUNDED)
        return LPOutcome(LPStatus.OPTIMAL, Fraction(0), tuple(Fraction(0) for _ in range(n)))
    tableau = SimplexTableau([row[:width] for row in rows], rhs)
    if not tableau.phase_one():
        logger.debug('infeasible after %d pivots', tableau.pivots)
        return LPOutcome(LPStatus.INFEASIBLE)
    tableau.set_objective([Fraction(c) for c in objective] + [Fraction(0)] * slacks)
    status = tableau.run(width)
    logger.debug('simplex %s after %d pivots', status.value, tableau.pivots)
    if status is LPStatus.UNBOUNDED:
        return LPOutcome(LPStatus.UNBOUNDED)
    return LPOutcome(LPStatus.OPTIMAL, tableau.z, tableau.solution()[:n])


def feasible_point(A_eq, b_eq):
    """задача допустимости A x = b, x >= 0"""
    n = len(A_eq[0]) if A_eq else 0
    return maximize([0] * n, A_eq=A_eq, b_eq=b_eq)
