import numpy as np
from django.core.exceptions import ValidationError
from django.test import SimpleTestCase

from kspec.graphs import DimensionMismatch
from quantum.born import DOWN, UP, X_BASIS, Y_BASIS
from quantum.operators import (
    MATRIX_ROW_ERROR, DichotomicObservable, QuantumState, commuting_cover, local_observable, product_state,
    projector, random_state, read_matrix,
)

PAULI_Z = DichotomicObservable.from_basis('Z', UP, DOWN)
PAULI_X = DichotomicObservable.from_basis('X', *X_BASIS)


class ObservableTest(SimpleTestCase):
    """тест дихотомических наблюдаемых"""

    def test_projectors_resolve_identity(self):
        """тест: P0 + P1 = I"""
        for observable in (PAULI_Z, PAULI_X):
            p0, p1 = observable.projectors
            self.assertTrue(np.allclose(p0 + p1, np.eye(2)))

    def test_operator_is_pauli(self):
        """тест: P0 - P1 для базиса X - матрица Паули X"""
        self.assertTrue(np.allclose(PAULI_X.operator, [[0, 1], [1, 0]]))

    def test_half_identity_is_not_a_projector(self):
        """тест: I/2 не идемпотентна"""
        with self.assertRaises(ValidationError):
            DichotomicObservable('bad', (np.eye(2) / 2, np.eye(2) / 2))

    def test_incomplete_pair_is_rejected(self):
        """тест: проекторы, не дающие в сумме I"""
        with self.assertRaises(ValidationError):
            DichotomicObservable('bad', (projector(UP), projector(UP)))

    def test_ray_observable(self):
        """тест: исход 1 - проектор на луч"""
        observable = DichotomicObservable.from_vector('e1', (1, 0, 0))
        self.assertTrue(np.allclose(observable.projectors[1], np.diag([1, 0, 0])))

    def test_down_coefficients(self):
        """тест: коэффициенты при |↓> для X0, X1, Y0, Y1"""
        coefficients = [v[1] / v[0] for v in (*X_BASIS, *Y_BASIS)]
        self.assertTrue(np.allclose(coefficients, [1, -1, 1j, -1j]))


class LocalObservableTest(SimpleTestCase):
    """тест тензорного расширения"""

    def test_extension_commutes_across_sites(self):
        """тест: X на первом кубите коммутирует с Z на втором"""
        a = local_observable(PAULI_X, 0, (2, 2))
        b = local_observable(PAULI_Z, 1, (2, 2))
        self.assertEqual(a.dimension, 4)
        self.assertTrue(np.allclose(a.operator @ b.operator, b.operator @ a.operator))

    def test_dimension_mismatch(self):
        """тест: наблюдаемая не той размерности"""
        with self.assertRaises(DimensionMismatch):
            local_observable(PAULI_X, 0, (3, 2))


class StateTest(SimpleTestCase):
    """тест матриц плотности"""

    def test_random_state_is_valid(self):
        """тест: случайное состояние самосопряжено и имеет след 1"""
        rng = np.random.default_rng(5)
        state = random_state(4, rng, rank=2)
        self.assertAlmostEqual(np.trace(state.rho).real, 1)
        self.assertTrue(np.allclose(state.rho, state.rho.conj().T))

    def test_trace_two_is_rejected(self):
        """тест: след 2 отклоняется"""
        with self.assertRaises(ValidationError):
            QuantumState(np.eye(2))

    def test_negative_eigenvalue_is_rejected(self):
        """тест: отрицательное собственное значение"""
        with self.assertRaises(ValidationError):
            QuantumState(np.diag([1.5, -0.5]))

    def test_product_state(self):
        """тест: произведение |↑> и |↓> - базисный вектор |01>"""
        state = product_state([UP, DOWN * 3])
        self.assertTrue(np.allclose(state.rho, np.diag([0, 1, 0, 0])))


class CommutingCoverTest(SimpleTestCase):
    """тест покрытия из коммутирующих семейств"""

    def test_non_commuting_pair(self):
        """тест: X и Z на одном кубите - два одноэлементных контекста"""
        scenario = commuting_cover([PAULI_X, PAULI_Z])
        self.assertEqual(scenario.cover, (('X',), ('Z',)))

    def test_single_observable(self):
        """тест: одна наблюдаемая - один контекст"""
        self.assertEqual(commuting_cover([PAULI_Z]).cover, (('Z',),))

    def test_mixed_dimensions(self):
        """тест: наблюдаемые разной размерности"""
        with self.assertRaises(DimensionMismatch):
            commuting_cover([PAULI_Z, local_observable(PAULI_X, 0, (2, 2))])


class ReadMatrixTest(SimpleTestCase):
    """тест чтения матрицы"""

    def test_reads_complex_entries(self):
        """тест: пары re,im по строкам"""
        matrix = read_matrix('2\n0.5,0 0,-0.5\n0,0.5 0.5,0\n')
        self.assertTrue(np.allclose(matrix, [[0.5, -0.5j], [0.5j, 0.5]]))
        QuantumState(matrix)

    def test_bad_row_names_the_line(self):
        """тест: ошибка в строке с номером"""
        with self.assertRaises(ValidationError) as caught:
            read_matrix('2\n1,0 0,0\n0,0\n')
        self.assertEqual(caught.exception.messages, [MATRIX_ROW_ERROR.format(line=3, dimension=2)])
