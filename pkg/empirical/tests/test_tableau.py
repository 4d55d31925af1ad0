import itertools
import random
from fractions import Fraction
from functools import reduce

import numpy as np
from django.test import SimpleTestCase, override_settings

from analysis.hidden import random_global_distribution
from analysis.solve import solve_signed
from empirical.algebra import delta, marginalize
from empirical.catalog import (
    BINARY, bell, bell_scenario_222, cabello18_cover, peres_mermin_cover, pr_box, triangle_cover, uniform_model,
)
from empirical.scenario import Scenario, bell_scenario, dimension_D, restrict
from empirical.tableau import (
    TableauTooLarge, augment, build_incidence, column_order, dump_matrix, exact_rank, linear_system, model_vector,
    rank,
)

BELL_INCIDENCE = """\
1111000000000000
0000111100000000
0000000011110000
0000000000001111
1010101000000000
0101010100000000
0000000010101010
0000000001010101
1100000011000000
0000110000001100
0011000000110000
0000001100000011
1000100010001000
0100010001000100
0010001000100010
0001000100010001"""

M1 = np.array([[1, 1, 0, 0], [0, 0, 1, 1], [1, 0, 1, 0], [0, 1, 0, 1]])


def parts(n):
    return [[f'a{k}', f"a{k}'"] for k in range(1, n + 1)]


class IncidenceTest(SimpleTestCase):
    """тест матрицы инцидентности"""

    def test_bell_matrix_is_bit_exact(self):
        """тест: (2,2,2) - напечатанная матрица 16x16"""
        tableau = build_incidence(bell_scenario_222())
        self.assertEqual(tableau.shape, (16, 16))
        self.assertEqual(dump_matrix(tableau), BELL_INCIDENCE)

    def test_bell_rank(self):
        """тест: ранг 9"""
        self.assertEqual(rank(build_incidence(bell_scenario_222())), 9)

    def test_column_order(self):
        """тест: разряды a', b', a, b"""
        self.assertEqual(column_order(bell_scenario_222()), ("a'", "b'", 'a', 'b'))

    def test_one_part(self):
        """тест: (1,2,2) - базовая матрица M(1)"""
        tableau = build_incidence(bell_scenario(parts(1), BINARY))
        self.assertTrue(np.array_equal(tableau.entries, M1))

    def test_self_similarity(self):
        """тест: M(n) - кронекерова степень M(1) в рекурсивной нумерации"""
        for n in (2, 3):
            scenario = bell_scenario(parts(n), BINARY)
            tableau = build_incidence(scenario)
            rows, columns = [], []
            for digits in itertools.product(range(4), repeat=n):
                per_part = list(reversed(digits))
                context = tuple(parts(n)[k][d // 2] for k, d in enumerate(per_part))
                assignment = tuple(BINARY[d % 2] for d in per_part)
                rows.append(tableau.row_index(context, scenario.section(context, assignment)))
                values = {}
                for k, d in enumerate(per_part):
                    values[parts(n)[k][0]] = BINARY[d // 2]
                    values[parts(n)[k][1]] = BINARY[d % 2]
                columns.append(tableau.column_index(values))
            expected = reduce(np.kron, [M1] * n)
            self.assertTrue(np.array_equal(tableau.entries[np.ix_(rows, columns)], expected), n)

    def test_definition(self):
        """тест: M[i, j] = 1 тогда и только тогда, когда s_j | C = s_i"""
        scenario = peres_mermin_cover().scenario
        tableau = build_incidence(scenario)
        for i, (context, section) in enumerate(tableau.rows[::7]):
            for j in range(0, tableau.n_columns, 13):
                restricted = tuple(tableau.column(j)[m] for m in context)
                self.assertEqual(tableau.entries[i * 7, j], int(restricted == section.assignment))

    def test_columns_round_trip(self):
        """тест: номер столбца по назначению"""
        tableau = build_incidence(bell_scenario_222())
        for j in range(tableau.n_columns):
            self.assertEqual(tableau.column_index(tableau.column(j)), j)

    def test_size_bound(self):
        """тест: превышение границы столбцов"""
        with self.assertRaises(TableauTooLarge):
            build_incidence(peres_mermin_cover().scenario, max_columns=256)

    @override_settings(TABLEAU_MAX_COLUMNS=8)
    def test_size_bound_from_settings(self):
        """тест: граница из настроек"""
        with self.assertRaises(TableauTooLarge):
            build_incidence(bell_scenario_222())


class RankTest(SimpleTestCase):
    """тест ранга: rank(M) = D"""

    def test_bell_type(self):
        """тест: (n,2,2) - ранг 3^n"""
        for n in range(1, 5):
            scenario = bell_scenario(parts(n), BINARY)
            self.assertEqual(rank(build_incidence(scenario)), 3 ** n)
            self.assertEqual(dimension_D(scenario), 3 ** n)

    def test_peres_mermin(self):
        """тест: квадрат Переса-Мермина - 34"""
        self.assertEqual(rank(build_incidence(peres_mermin_cover().scenario)), 34)

    def test_eighteen_measurements(self):
        """тест: покрытие из 18 измерений - 118"""
        self.assertEqual(rank(build_incidence(cabello18_cover().scenario)), 118)

    def test_non_homogeneous_cover(self):
        """тест: неоднородное покрытие"""
        scenario = Scenario(('a', 'b', 'c'), BINARY, (('a', 'b'), ('c',)))
        self.assertEqual(rank(build_incidence(scenario)), dimension_D(scenario))

    def test_exact_rank(self):
        """тест: точный ранг рациональной матрицы"""
        matrix = [[Fraction(1, 2), 1, 0], [1, 2, 0], [0, 0, Fraction(1, 3)]]
        self.assertEqual(exact_rank(matrix), 2)
        self.assertEqual(exact_rank([[0, 0], [0, 0]]), 0)


class ModelVectorTest(SimpleTestCase):
    """тест вектора модели и линейной системы"""

    def test_bell_vector(self):
        """тест: вектор Белла начинается с 1/2, 0, 0, 1/2, 3/8, 1/8"""
        v = model_vector(bell().model)
        self.assertEqual(len(v), 16)
        self.assertEqual(v.weights[:6], tuple(map(Fraction, ('1/2', '0', '0', '1/2', '3/8', '1/8'))))

    def test_pr_vector(self):
        """тест: PR-ящик - (1/2,0,0,1/2) трижды и (0,1/2,1/2,0)"""
        half = Fraction(1, 2)
        self.assertEqual(model_vector(pr_box(0).model).weights, (half, 0, 0, half) * 3 + (0, half, half, 0))

    def test_pr_signed_solution(self):
        """тест: напечатанный вектор со знаками решает M x = V"""
        tableau = build_incidence(bell_scenario_222())
        x = [Fraction(w) for w in '1/2 0 0 0 -1/2 0 1/2 0 -1/2 1/2 0 0 1/2 0 0 0'.split()]
        self.assertEqual(tuple(tableau.apply(x)), model_vector(pr_box(0).model).weights)

    def test_augmented_system(self):
        """тест: строка нормировки"""
        tableau = build_incidence(bell_scenario_222())
        system = augment(tableau, model_vector(bell().model))
        self.assertEqual(system.shape, (17, 16))
        self.assertEqual(system.rhs[-1], 1)
        self.assertEqual(linear_system(tableau, model_vector(bell().model)).shape, (16, 16))

    def test_triangle_system(self):
        """тест: треугольник - расширенная система 13x8, ранг равен D"""
        scenario = triangle_cover().scenario
        tableau = build_incidence(scenario)
        v = model_vector(uniform_model(scenario), tableau)
        self.assertEqual(augment(tableau, v).shape, (13, 8))
        self.assertEqual(rank(tableau), dimension_D(scenario))
        self.assertEqual(rank(tableau), 7)

    def test_bell_type_solution_sums_to_one(self):
        """тест: на сценарии Белла решение без строки нормировки суммируется в 1"""
        tableau = build_incidence(bell_scenario_222())
        for model in (bell().model, pr_box(0).model, pr_box(5).model):
            solution = solve_signed(linear_system(tableau, model_vector(model, tableau)))
            self.assertEqual(sum(solution.particular), 1)


class DefiningPropertyTest(SimpleTestCase):
    """тест: M d - семейство маргиналов глобального распределения d"""

    def column_weights(self, tableau, d):
        scenario = tableau.scenario
        return [d.weights[scenario.section_index(tableau.column(j))] for j in range(tableau.n_columns)]

    def test_random_global_distributions(self):
        """тест: случайные d на покрытиях Белла, треугольника и Переса-Мермина"""
        rng = random.Random(23)
        for scenario in (bell_scenario_222(), triangle_cover().scenario, peres_mermin_cover().scenario):
            tableau = build_incidence(scenario)
            for _ in range(10):
                d = random_global_distribution(scenario, rng, max_denominator=1000)
                expected = []
                for context in scenario.cover:
                    expected.extend(marginalize(d, context).weights)
                self.assertEqual(tableau.apply(self.column_weights(tableau, d)), expected)

    def test_point_masses_on_eighteen_measurements(self):
        """тест: столбец - ограничения своего назначения на каждый контекст"""
        scenario = cabello18_cover().scenario
        tableau = build_incidence(scenario)
        rng = random.Random(24)
        for j in rng.sample(range(tableau.n_columns), 20):
            column = tableau.column(j)
            expected = []
            for context in scenario.cover:
                expected.extend(delta(restrict(column, context), scenario.outcomes).weights)
            self.assertEqual(tableau.apply([1], [j]), expected)

    def test_one_entry_per_context(self):
        """тест: в каждом столбце по одной единице на контекст"""
        covers = (bell_scenario_222(), triangle_cover().scenario, peres_mermin_cover().scenario,
                  cabello18_cover().scenario)
        for scenario in covers:
            tableau = build_incidence(scenario)
            self.assertTrue(np.all(tableau.entries.sum(axis=0) == len(scenario.cover)))
            for context in scenario.cover:
                start = tableau.offsets[context]
                block = tableau.entries[start:start + scenario.n_outcomes ** len(context)]
                self.assertTrue(np.all(block.sum(axis=0) == 1))

    def test_admissible_columns(self):
        """тест: столбцы внутри носителя Белла - a = b"""
        tableau = build_incidence(bell_scenario_222())
        mask = tableau.admissible(model_vector(bell().model).weights)
        self.assertEqual(int(mask.sum()), 8)
        self.assertTrue(all(tableau.column(int(j))['a'] == tableau.column(int(j))['b'] for j in np.flatnonzero(mask)))
