from fractions import Fraction

from django.core.exceptions import ValidationError
from django.test import SimpleTestCase

from analysis.hierarchy import (
    Level, NotDichotomic, classify, csp_document, noncontextual_fraction, to_csp, to_dimacs, to_formula,
)
from analysis.solve import enumerate_Se, solve_nonneg
from empirical import catalog
from empirical.algebra import SemiringTag
from empirical.models import EmpiricalModel, check_no_signalling, flip_outcomes
from empirical.scenario import Scenario, Section
from empirical.tableau import augment, build_incidence, model_vector

HARDY_WITNESS = Section(('a', "a'", 'b', "b'"), ('1', '0', '1', '0'))


def bell_dual_rows(tableau):
    """строки неравенства Белла: нечётные сечения трёх контекстов и чётные - последнего"""
    rows = []
    for i, (context, section) in enumerate(tableau.rows):
        ones = section.assignment.count('1') % 2
        if (ones == 1) != (context == ("a'", "b'")):
            rows.append(i)
    return rows


class ClassifyTest(SimpleTestCase):
    """тест уровней иерархии"""

    def test_bell(self):
        """тест: модель Белла - ProbNonExtendable"""
        report = classify(catalog.bell().model)
        self.assertIs(report.level, Level.PROB_NON_EXTENDABLE)
        self.assertTrue(report.boolean.solvable)
        self.assertIsNone(report.global_section)

    def test_hardy(self):
        """тест: модель Харди - PossNonExtendable, свидетель в S_e"""
        report = classify(catalog.hardy().model)
        self.assertIs(report.level, Level.POSS_NON_EXTENDABLE)
        self.assertFalse(report.boolean.solvable)
        self.assertIn(HARDY_WITNESS, report.s_e)

    def test_ghz(self):
        """тест: GHZ(n), n = 3..6 - StronglyContextual"""
        for n in range(3, 7):
            report = classify(catalog.ghz(n).model)
            self.assertIs(report.level, Level.STRONGLY_CONTEXTUAL, n)
            self.assertEqual(report.s_e, ())
            self.assertEqual(report.ncf.value, 0)

    def test_pr_boxes(self):
        """тест: все восемь PR-ящиков - StronglyContextual"""
        for variant in range(8):
            self.assertIs(classify(catalog.pr_box(variant).model).level, Level.STRONGLY_CONTEXTUAL, variant)

    def test_local_model_has_global_section(self):
        """тест: локальная модель и её глобальное распределение"""
        scenario = catalog.bell_scenario_222()
        model = catalog.product_model(scenario, {m: ('1/4', '3/4') for m in scenario.measurements})
        report = classify(model)
        self.assertTrue(report.is_local)
        self.assertEqual(report.global_section.total(), 1)
        self.assertEqual(report.ncf.value, 1)

    def test_invariant_under_relabelling(self):
        """тест: переименование исходов не меняет уровень"""
        for entry in (catalog.bell(), catalog.hardy()):
            flipped = flip_outcomes(entry.model, ["a'", 'b'])
            self.assertIs(classify(flipped).level, classify(entry.model).level)

    def test_levels_are_ordered(self):
        """тест: сила уровней растёт"""
        self.assertEqual([level.strength for level in Level], [0, 1, 2, 3])

    def test_boolean_model_is_rejected(self):
        """тест: классификация требует вероятностной модели"""
        with self.assertRaises(ValidationError):
            classify(catalog.hardy_support().model)


class NoncontextualFractionTest(SimpleTestCase):
    """тест неконтекстуальной доли"""

    def test_pr_box(self):
        """тест: λ*(PR) = 0"""
        self.assertEqual(noncontextual_fraction(catalog.pr_box(0).model).value, 0)

    def test_product_model(self):
        """тест: λ*(произведение) = 1"""
        scenario = catalog.bell_scenario_222()
        model = catalog.product_model(scenario, {m: ('1/2', '1/2') for m in scenario.measurements})
        self.assertEqual(noncontextual_fraction(model).value, 1)

    def test_bell_matches_dual_certificate(self):
        """тест: λ*(Белл) = 3/4 и совпадает с двойственной оценкой"""
        # вместо перебора вершин 16-мерного многогранника: любая допустимая
        # точка даёт λ <= сумме V по строкам неравенства, а решение её достигает
        model = catalog.bell().model
        tableau = build_incidence(model.scenario)
        v = model_vector(model, tableau).weights
        rows = bell_dual_rows(tableau)
        for j in range(tableau.n_columns):
            self.assertGreaterEqual(sum(int(tableau.entries[i, j]) for i in rows), 1)
        bound = sum(v[i] for i in rows)
        ncf = noncontextual_fraction(model, tableau)
        self.assertEqual(bound, Fraction(3, 4))
        self.assertEqual(ncf.value, bound)
        explained = tableau.apply(list(ncf.column_weights.values()), list(ncf.column_weights))
        self.assertTrue(all(x <= w for x, w in zip(explained, v)))
        self.assertEqual(sum(ncf.column_weights.values()), ncf.value)

    def test_decomposition(self):
        """тест: e = λ* L + (1 - λ*) q, L локальна, q совместна"""
        for model in (catalog.bell().model, catalog.hardy().model):
            ncf = noncontextual_fraction(model)
            self.assertTrue(0 < ncf.value < 1)
            self.assertTrue(check_no_signalling(ncf.residual).is_compatible)
            self.assertTrue(classify(ncf.local).is_local)
            for e, l, q in zip(model.tables, ncf.local.tables, ncf.residual.tables):
                self.assertEqual(
                    list(e.weights), [ncf.value * a + (1 - ncf.value) * b for a, b in zip(l.weights, q.weights)])

    def test_mixture_with_pr_box(self):
        """тест: 2/3 PR-ящика и 1/3 равномерной модели - λ* = 2 - 2 * 2/3"""
        scenario = catalog.bell_scenario_222()
        local = catalog.uniform_model(scenario)
        pr = catalog.pr_box(0).model
        rows = [[Fraction(2, 3) * x + Fraction(1, 3) * y for x, y in zip(r, s)] for r, s in zip(pr.rows(), local.rows())]
        model = EmpiricalModel.from_rows(scenario, rows)
        self.assertEqual(noncontextual_fraction(model).value, Fraction(2, 3))


class CSPTest(SimpleTestCase):
    """тест CSP и формул"""

    def test_hardy_csp_solutions_are_Se(self):
        """тест: решения CSP Харди - это S_e"""
        model = catalog.hardy().model
        csp = to_csp(model)
        self.assertIn(HARDY_WITNESS, csp.solutions())
        self.assertEqual(set(csp.solutions()), set(enumerate_Se(model)))

    def test_pr_csp_has_no_solution(self):
        """тест: у CSP PR-ящика решений нет"""
        self.assertEqual(to_csp(catalog.pr_box(3).model).solutions(), [])

    def test_csp_document(self):
        """тест: документ CSP"""
        document = csp_document(to_csp(catalog.bell().model))
        self.assertEqual(document['variables'], ['a', "a'", 'b', "b'"])
        self.assertEqual(document['constraints'][0], {'scope': ['a', 'b'], 'allowed': ['0,0', '1,1']})

    def test_ghz_formula(self):
        """тест: GHZ(3) - 4 клаузы по 4 куба, невыполнима"""
        formula = to_formula(catalog.ghz(3).model)
        self.assertEqual([len(clause) for clause in formula.clauses], [4, 4, 4, 4])
        self.assertEqual(formula.satisfying_assignments(), [])

    def test_bell_formula(self):
        """тест: выполняющие назначения формулы Белла - это S_e"""
        model = catalog.bell().model
        formula = to_formula(model)
        self.assertEqual(len(formula.clauses), 1)
        self.assertEqual(set(formula.satisfying_assignments()), set(enumerate_Se(model)))
        self.assertEqual(formula.readable(), '(~a & ~b) | (a & b)')

    def test_dimacs(self):
        """тест: заголовок DIMACS для GHZ(3)"""
        text = to_dimacs(to_formula(catalog.ghz(3).model))
        lines = text.splitlines()
        self.assertEqual(lines[6], 'p cnf 22 52')
        self.assertEqual(len(lines), 7 + 52)
        self.assertTrue(all(line.endswith(' 0') for line in lines[7:]))

    def test_three_outcomes(self):
        """тест: формула только для двух исходов"""
        scenario = Scenario(('a', 'b'), ('0', '1', '2'), (('a', 'b'),))
        with self.assertRaises(NotDichotomic):
            to_formula(catalog.uniform_model(scenario))


class CatalogWitnessTest(SimpleTestCase):
    """тест: свидетельства уровней согласованы на всём каталоге"""

    def test_witnesses_agree(self):
        """тест: S_e = решения CSP = решения формулы; λ* = 0 <=> S_e пусто; λ* = 1 <=> есть d"""
        scenario = catalog.bell_scenario_222()
        models = [(name, catalog.lookup(name).model) for name in catalog.names()]
        models.append(('product', catalog.product_model(scenario, {m: ('1/3', '2/3') for m in scenario.measurements})))
        for name, model in models:
            if model is None or model.semiring is not SemiringTag.NONNEG:
                continue
            s_e = set(enumerate_Se(model))
            self.assertEqual(set(to_csp(model).solutions()), s_e, name)
            self.assertEqual(set(to_formula(model).satisfying_assignments()), s_e, name)
            value = noncontextual_fraction(model).value
            tableau = build_incidence(model.scenario)
            feasible = solve_nonneg(augment(tableau, model_vector(model, tableau))).feasible
            self.assertEqual(value == 0, not s_e, name)
            self.assertEqual(value == 1, feasible, name)
