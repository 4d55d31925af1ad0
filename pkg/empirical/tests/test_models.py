import random
from fractions import Fraction

from django.core.exceptions import ValidationError
from django.test import SimpleTestCase

from analysis.hidden import random_global_distribution
from empirical.algebra import SemiringTag
from empirical.catalog import bell, bell_scenario_222, hardy, pr_box, triangle_cover
from empirical.models import (
    EmpiricalModel, check_no_signalling, deterministic_model, flip_outcomes, from_global_section, marginal,
    relabel_outcomes, support_model,
)
from empirical.scenario import Section


def signalling_rows():
    """таблица (a,b) Белла заменена точкой (0,0)"""
    rows = bell().model.rows()
    rows[0] = [1, 0, 0, 0]
    return rows


class CompatibilityTest(SimpleTestCase):
    """тест совместности семейств"""

    def test_bell_has_no_violations(self):
        """тест: модель Белла совместна"""
        self.assertTrue(check_no_signalling(bell().model).is_compatible)

    def test_signalling_family_is_reported(self):
        """тест: изменённая таблица даёт нарушения"""
        model = EmpiricalModel.from_rows(bell_scenario_222(), signalling_rows(), raw=True)
        report = check_no_signalling(model)
        self.assertFalse(report.is_compatible)
        overlaps = {v.overlap for v in report.violations}
        self.assertEqual(overlaps, {('a',), ('b',)})
        self.assertTrue(all('disagree' in message for message in report.messages()))

    def test_checked_model_raises(self):
        """тест: проверка совместности при построении"""
        with self.assertRaises(ValidationError):
            EmpiricalModel.from_rows(bell_scenario_222(), signalling_rows())
        raw = EmpiricalModel.from_rows(bell_scenario_222(), signalling_rows(), raw=True)
        with self.assertRaises(ValidationError):
            raw.checked()

    def test_table_count(self):
        """тест: таблиц меньше, чем контекстов"""
        with self.assertRaises(ValidationError):
            EmpiricalModel(bell_scenario_222(), SemiringTag.NONNEG, bell().model.tables[:3])


class MarginalTest(SimpleTestCase):
    """тест маргиналов модели"""

    def test_single_measurement(self):
        """тест: e_{a} Белла равномерно"""
        self.assertEqual(marginal(bell().model, ['a']).weights, (Fraction(1, 2), Fraction(1, 2)))

    def test_empty_set(self):
        """тест: e_{} = 1"""
        self.assertEqual(marginal(hardy().model, []).weights, (Fraction(1),))

    def test_non_context_subset(self):
        """тест: {a, a'} не лежит ни в одном контексте"""
        with self.assertRaises(ValueError):
            marginal(bell().model, ['a', "a'"])


class GlobalSectionTest(SimpleTestCase):
    """тест семейств глобальных распределений"""

    def test_global_sections_are_compatible(self):
        """тест: ограничения глобального распределения совместны"""
        rng = random.Random(5)
        for scenario in (bell_scenario_222(), triangle_cover().scenario):
            for _ in range(20):
                d = random_global_distribution(scenario, rng)
                model = from_global_section(scenario, d, raw=True)
                self.assertTrue(check_no_signalling(model).is_compatible)

    def test_deterministic_model(self):
        """тест: детерминированная модель - точка на каждом контексте"""
        scenario = bell_scenario_222()
        model = deterministic_model(scenario, Section(scenario.measurements, ('1', '0', '1', '0')))
        self.assertEqual(model.table(("a'", "b'")).support(), [Section(("a'", "b'"), ('0', '0'))])
        self.assertEqual(model.table(('a', 'b')).weights, (0, 0, 0, 1))

    def test_wrong_measurements(self):
        """тест: распределение не над X"""
        d = bell().model.tables[0]
        with self.assertRaises(ValueError):
            from_global_section(bell_scenario_222(), d)


class RelabelTest(SimpleTestCase):
    """тест переименования исходов"""

    def test_flip_moves_weights(self):
        """тест: переворот a сдвигает (1/2,0,0,1/2) в (0,1/2,1/2,0)"""
        flipped = flip_outcomes(bell().model, ['a'])
        self.assertEqual(flipped.table(('a', 'b')).weights, (0, Fraction(1, 2), Fraction(1, 2), 0))
        self.assertEqual(flipped.table(("a'", "b'")), bell().model.table(("a'", "b'")))

    def test_flip_twice(self):
        """тест: двойной переворот - тождество"""
        model = pr_box(0).model
        self.assertEqual(flip_outcomes(flip_outcomes(model, ['a', "b'"]), ["b'", 'a']), model)

    def test_relabelling_keeps_compatibility(self):
        """тест: переименование сохраняет совместность"""
        model = relabel_outcomes(hardy().model, {'b': {'0': '1', '1': '0'}})
        self.assertTrue(check_no_signalling(model).is_compatible)

    def test_pr_variants_are_distinct(self):
        """тест: восемь различных PR-ящиков"""
        self.assertEqual(len({tuple(map(tuple, pr_box(v).model.rows())) for v in range(8)}), 8)


class SupportTest(SimpleTestCase):
    """тест модели-носителя"""

    def test_bell_support(self):
        """тест: носитель модели Белла"""
        support = support_model(bell().model)
        self.assertIs(support.semiring, SemiringTag.BOOLEAN)
        self.assertEqual(support.rows()[0], [1, 0, 0, 1])
        self.assertEqual(support.rows()[1], [1, 1, 1, 1])

    def test_signed_model_has_no_support(self):
        """тест: у модели со знаками носителя нет"""
        rows = [['3/2', '-1/2', '-1/2', '1/2']] + [['1/4'] * 4] * 3
        model = EmpiricalModel.from_rows(bell_scenario_222(), rows, SemiringTag.SIGNED, raw=True)
        with self.assertRaises(ValueError):
            support_model(model)
