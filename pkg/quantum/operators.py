"""Finite-dimensional operators: projectors, dichotomic observables, states.

Matrices are dense complex numpy arrays. Identities are checked in the max
norm against the tolerance τ from settings.
"""
import logging
from dataclasses import dataclass
from functools import reduce

import networkx as nx
import numpy as np
from django.conf import settings
from django.core.exceptions import ValidationError

from empirical.scenario import Scenario
from empirical.seeding import default_numpy_rng
from kspec.graphs import BINARY, DimensionMismatch, maximal_cliques

logger = logging.getLogger(__name__)

NOT_SQUARE_ERROR = "{what} is not a square matrix"
NOT_FINITE_ERROR = "{what} has non-finite entries"
NOT_IDEMPOTENT_ERROR = "Projector {outcome} of {label!r} is not idempotent"
NOT_SELF_ADJOINT_ERROR = "{what} is not self-adjoint"
NOT_COMPLETE_ERROR = "The projectors of {label!r} do not sum to the identity"
TRACE_ERROR = "The state has trace {trace}, not 1"
NOT_POSITIVE_ERROR = "The state has eigenvalue {value} < 0"
ZERO_VECTOR_ERROR = "Cannot build a projector onto the zero vector"
OBSERVABLE_DIMENSIONS_ERROR = "Observables act on dimensions {dimensions}"
MATRIX_HEADER_ERROR = "line {line}: expected the dimension"
MATRIX_ROW_ERROR = "line {line}: expected {dimension} entries of the form re,im"
MATRIX_ROWS_ERROR = "expected {dimension} rows, got {got}"


def _tolerance(tolerance):
    return settings.QUANTUM_OPERATOR_TOLERANCE if tolerance is None else tolerance


def _deviation(a, b):
    return float(np.max(np.abs(a - b))) if a.size else 0.0


def _as_matrix(values, what):
    matrix = np.asarray(values, dtype=complex)
    if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1] or matrix.shape[0] == 0:
        raise ValidationError(NOT_SQUARE_ERROR.format(what=what))
    if not np.all(np.isfinite(matrix)):
        raise ValidationError(NOT_FINITE_ERROR.format(what=what))
    return matrix


def adjoint(matrix):
    return matrix.conj().T


def projector(vector):
    """|v><v| / <v|v>"""
    v = np.asarray(vector, dtype=complex).reshape(-1)
    norm = np.vdot(v, v).real
    if norm == 0:
        raise ValueError(ZERO_VECTOR_ERROR)
    return np.outer(v, v.conj()) / norm


def commutator_norm(a, b):
    return float(np.max(np.abs(a @ b - b @ a)))


@dataclass(frozen=True, eq=False)
class DichotomicObservable:
    """наблюдаемая с двумя исходами: пара проекторов (P0, P1)"""

    label: str
    projectors: tuple
    tolerance: float = None

    def __post_init__(self):
        tolerance = _tolerance(self.tolerance)
        p0, p1 = (_as_matrix(p, f'projector of {self.label!r}') for p in self.projectors)
        if p0.shape != p1.shape:
            raise DimensionMismatch(OBSERVABLE_DIMENSIONS_ERROR.format(dimensions=[p0.shape[0], p1.shape[0]]))
        errors = []
        for outcome, p in enumerate((p0, p1)):
            if _deviation(p, adjoint(p)) > tolerance:
                errors.append(NOT_SELF_ADJOINT_ERROR.format(what=f'Projector {outcome} of {self.label!r}'))
            if _deviation(p @ p, p) > tolerance:
                errors.append(NOT_IDEMPOTENT_ERROR.format(outcome=outcome, label=self.label))
        if _deviation(p0 + p1, np.eye(p0.shape[0])) > tolerance:
            errors.append(NOT_COMPLETE_ERROR.format(label=self.label))
        if errors:
            raise ValidationError(errors)
        object.__setattr__(self, 'projectors', (p0, p1))

    @classmethod
    def from_vector(cls, label, vector, tolerance=None):
        """исход 1 - проектор на луч, исход 0 - его дополнение"""
        ray = projector(vector)
        return cls(label, (np.eye(ray.shape[0]) - ray, ray), tolerance)

    @classmethod
    def from_basis(cls, label, zero, one, tolerance=None):
        """наблюдаемая из ортогонального базиса кубита"""
        return cls(label, (projector(zero), projector(one)), tolerance)

    @property
    def dimension(self):
        return self.projectors[0].shape[0]

    @property
    def operator(self):
        """A = P0 - P1"""
        return self.projectors[0] - self.projectors[1]


def local_observable(observable, site, dims):
    """I ⊗ ... ⊗ A ⊗ ... ⊗ I на позиции site"""
    dims = tuple(dims)
    if observable.dimension != dims[site]:
        raise DimensionMismatch(OBSERVABLE_DIMENSIONS_ERROR.format(dimensions=[observable.dimension, dims[site]]))

    def extend(p):
        factors = [p if k == site else np.eye(d) for k, d in enumerate(dims)]
        return reduce(np.kron, factors)

    return DichotomicObservable(
        observable.label, tuple(extend(p) for p in observable.projectors), observable.tolerance)


@dataclass(frozen=True, eq=False)
class QuantumState:
    """матрица плотности ρ"""

    rho: np.ndarray
    tolerance: float = None

    def __post_init__(self):
        tolerance = _tolerance(self.tolerance)
        rho = _as_matrix(self.rho, 'The state')
        errors = []
        if _deviation(rho, adjoint(rho)) > tolerance:
            errors.append(NOT_SELF_ADJOINT_ERROR.format(what='The state'))
        trace = np.trace(rho)
        if abs(trace - 1) > tolerance:
            errors.append(TRACE_ERROR.format(trace=trace))
        if not errors:
            smallest = float(np.linalg.eigvalsh((rho + adjoint(rho)) / 2).min())
            if smallest < -tolerance:
                errors.append(NOT_POSITIVE_ERROR.format(value=smallest))
        if errors:
            raise ValidationError(errors)
        object.__setattr__(self, 'rho', rho)

    @classmethod
    def pure(cls, vector, tolerance=None):
        return cls(projector(vector), tolerance)

    @property
    def dimension(self):
        return self.rho.shape[0]

    def expectation(self, operator):
        """Tr(ρ A)"""
        return complex(np.trace(self.rho @ operator))


def _rng(rng):
    return default_numpy_rng() if rng is None else rng


def random_state(dim, rng=None, rank=1):
    """случайное состояние: смесь rank гауссовых векторов"""
    rng = _rng(rng)
    rho = np.zeros((dim, dim), dtype=complex)
    for weight in rng.dirichlet(np.ones(rank)):
        v = rng.normal(size=dim) + 1j * rng.normal(size=dim)
        rho += weight * projector(v)
    return QuantumState(rho)


def product_state(vectors):
    """чистое состояние ⊗|ψ_i>"""
    normalized = [np.asarray(v, dtype=complex) / np.linalg.norm(v) for v in vectors]
    return QuantumState.pure(reduce(np.kron, normalized))


def commuting_cover(observables, tolerance=None, outcomes=BINARY):
    """покрытие из максимальных коммутирующих подсемейств"""
    tolerance = _tolerance(tolerance)
    dimensions = sorted({o.dimension for o in observables})
    if len(dimensions) > 1:
        raise DimensionMismatch(OBSERVABLE_DIMENSIONS_ERROR.format(dimensions=dimensions))
    graph = nx.Graph()
    graph.add_nodes_from(o.label for o in observables)
    for i, a in enumerate(observables):
        for b in observables[i + 1:]:
            if commutator_norm(a.operator, b.operator) <= tolerance:
                graph.add_edge(a.label, b.label)
    cover = maximal_cliques(graph)
    logger.debug('%d observables, %d maximal commuting families', len(observables), len(cover))
    return Scenario(tuple(graph.nodes), outcomes, cover)


def read_matrix(text):
    """матрица из текста: размерность, затем строки пар re,im"""
    lines = [(n, raw.split()) for n, raw in enumerate(text.splitlines(), start=1)
             if raw.strip() and not raw.strip().startswith('#')]
    if not lines:
        raise ValidationError(MATRIX_HEADER_ERROR.format(line=1))
    number, header = lines[0]
    try:
        (dimension,) = header
        dimension = int(dimension)
    except ValueError:
        raise ValidationError(MATRIX_HEADER_ERROR.format(line=number)) from None
    if len(lines) - 1 != dimension:
        raise ValidationError(MATRIX_ROWS_ERROR.format(dimension=dimension, got=len(lines) - 1))
    matrix = np.zeros((dimension, dimension), dtype=complex)
    for row, (number, fields) in enumerate(lines[1:]):
        try:
            if len(fields) != dimension:
                raise ValueError(fields)
            for column, entry in enumerate(fields):
                re, im = entry.split(',')
                matrix[row, column] = complex(float(re), float(im))
        except ValueError:
            raise ValidationError(MATRIX_ROW_ERROR.format(line=number, dimension=dimension)) from None
    return matrix
