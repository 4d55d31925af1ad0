"""Canonical scenarios and models used as fixtures across the project."""
from dataclasses import dataclass
from fractions import Fraction

from django.core.exceptions import ValidationError

from empirical.algebra import Distribution, SemiringTag, product_over_singletons
from empirical.models import EmpiricalModel, deterministic_model, flip_outcomes
from empirical.scenario import Scenario, Section, bell_scenario, sections
from empirical.seeding import default_random

BINARY = ('0', '1')

GHZ_SIZE_ERROR = "GHZ models need n >= 3, got {n}"
PR_VARIANT_ERROR = "PR box variant must be in 0..7, got {variant}"
UNKNOWN_ENTRY_ERROR = "Unknown catalog entry {name!r}"


@dataclass(frozen=True)
class CatalogEntry:
    """элемент каталога"""

    name: str
    scenario: Scenario
    model: EmpiricalModel = None
    provenance: str = ''


def _rows(*rows):
    return [[Fraction(w) for w in row.split()] for row in rows]


def bell_parts():
    return [['a', "a'"], ['b', "b'"]]


def bell_scenario_222():
    """сценарий (2,2,2)"""
    return bell_scenario(bell_parts(), BINARY)


def bell():
    """модель Белла"""
    scenario = bell_scenario_222()
    rows = _rows('1/2 0 0 1/2', '3/8 1/8 1/8 3/8', '3/8 1/8 1/8 3/8', '1/8 3/8 3/8 1/8')
    return CatalogEntry('bell', scenario, EmpiricalModel.from_rows(scenario, rows), 'Bell table')


def hardy_support():
    """возможностная модель Харди"""
    scenario = bell_scenario_222()
    rows = [[int(c) for c in row] for row in ('1111', '0111', '0111', '1110')]
    model = EmpiricalModel.from_rows(scenario, rows, SemiringTag.BOOLEAN)
    return CatalogEntry('hardy-support', scenario, model, 'possibilistic Hardy table')


def hardy():
    """вероятностная модель с носителем Харди; одна из многих"""
    scenario = bell_scenario_222()
    rows = _rows('1/16 1/16 1/16 13/16', '0 1/8 3/4 1/8', '0 3/4 1/8 1/8', '1/2 1/4 1/4 0')
    return CatalogEntry('hardy', scenario, EmpiricalModel.from_rows(scenario, rows), 'completion of the Hardy support')


def pr_box(variant=0):
    """PR-ящик; вариант 0 - напечатанная таблица

    Variant bits (alpha, beta, gamma) flip a' when alpha xor gamma, a when
    gamma and b' when beta, which moves the anticorrelated context around
    the four contexts.
    """
    if variant not in range(8):
        raise ValueError(PR_VARIANT_ERROR.format(variant=variant))
    scenario = bell_scenario_222()
    rows = _rows('1/2 0 0 1/2', '1/2 0 0 1/2', '1/2 0 0 1/2', '0 1/2 1/2 0')
    model = EmpiricalModel.from_rows(scenario, rows)
    alpha, beta, gamma = variant & 1, (variant >> 1) & 1, (variant >> 2) & 1
    flipped = [m for m, bit in (("a'", alpha ^ gamma), ('a', gamma), ("b'", beta)) if bit]
    if flipped:
        model = flip_outcomes(model, flipped)
    return CatalogEntry(f'pr-box-{variant}', scenario, model, 'PR box')


def ghz_parts(n):
    return [[f'X{i}', f'Y{i}'] for i in range(1, n + 1)]


def ghz(n):
    """GHZ(n) по правилам чётности

    Contexts with an odd number of Y are uniform; with #Y = 0 mod 4 the
    support is the outcomes with an even number of 1s, with #Y = 2 mod 4
    an odd number, each with weight 2^(1-n).
    """
    if n < 3:
        raise ValueError(GHZ_SIZE_ERROR.format(n=n))
    scenario = bell_scenario(ghz_parts(n), BINARY)
    rows = []
    for context in scenario.cover:
        ys = sum(1 for m in context if m.startswith('Y'))
        row = []
        for s in sections(context, BINARY):
            ones = s.assignment.count('1')
            if ys % 2:
                row.append(Fraction(1, 2 ** n))
            elif (ones % 2) == (ys % 4) // 2:
                row.append(Fraction(2, 2 ** n))
            else:
                row.append(Fraction(0))
        rows.append(row)
    return CatalogEntry(f'ghz-{n}', scenario, EmpiricalModel.from_rows(scenario, rows), 'GHZ parity rules')


def peres_mermin_cover():
    """покрытие магического квадрата Переса-Мермина"""
    measurements = tuple('ABCDEFGHI')
    cover = ('ABC', 'DEF', 'GHI', 'ADG', 'BEH', 'CFI')
    scenario = Scenario(measurements, BINARY, tuple(tuple(c) for c in cover))
    return CatalogEntry('peres-mermin', scenario, None, 'Peres-Mermin square')


CABELLO_COLUMNS = (
    (1, 2, 3, 4), (1, 5, 6, 7), (8, 9, 3, 10), (8, 11, 7, 12), (2, 5, 13, 14),
    (9, 11, 14, 15), (16, 17, 4, 10), (16, 18, 6, 12), (17, 18, 13, 15),
)


def cabello18_cover():
    """покрытие из 18 измерений в 9 контекстах"""
    measurements = tuple(f'm{i}' for i in range(1, 19))
    cover = tuple(tuple(f'm{i}' for i in column) for column in CABELLO_COLUMNS)
    return CatalogEntry('cabello18', Scenario(measurements, BINARY, cover), None, 'eighteen-measurement cover')


def triangle_cover():
    """треугольник {a,b}, {b,c}, {a,c}"""
    scenario = Scenario(('a', 'b', 'c'), BINARY, (('a', 'b'), ('b', 'c'), ('a', 'c')))
    return CatalogEntry('triangle', scenario, None, 'triangle cover')


def uniform_model(scenario):
    """равномерные таблицы на каждом контексте"""
    rows = [[Fraction(1, scenario.n_outcomes ** len(c))] * scenario.n_outcomes ** len(c) for c in scenario.cover]
    return EmpiricalModel.from_rows(scenario, rows)


def product_model(scenario, factors):
    """локальная модель из распределений по измерениям

    factors maps each measurement to its outcome weights.
    """
    singles = {
        m: Distribution(SemiringTag.NONNEG, (m,), scenario.outcomes, tuple(weights))
        for m, weights in factors.items()
    }
    tables = [product_over_singletons([singles[m] for m in context], context) for context in scenario.cover]
    return EmpiricalModel(scenario, SemiringTag.NONNEG, tables)


def random_mixture(rng=None, components=4, max_denominator=12):
    """случайная выпуклая смесь детерминированных моделей и PR-ящиков на (2,2,2)"""
    if rng is None:
        rng = default_random()
    scenario = bell_scenario_222()
    pool = []
    for _ in range(components):
        if rng.random() < 0.5:
            pool.append(pr_box(rng.randrange(8)).model)
        else:
            values = tuple(rng.choice(BINARY) for _ in scenario.measurements)
            pool.append(deterministic_model(scenario, Section(scenario.measurements, values)))
    cuts = sorted(rng.randint(0, max_denominator) for _ in range(components - 1))
    coefficients = [
        Fraction(b - a, max_denominator) for a, b in zip([0] + cuts, cuts + [max_denominator])
    ]
    rows = []
    for k in range(len(scenario.cover)):
        row = [sum(c * model.tables[k].weights[i] for c, model in zip(coefficients, pool))
               for i in range(len(pool[0].tables[k].weights))]
        rows.append(row)
    return EmpiricalModel.from_rows(scenario, rows)


ENTRIES = {
    'bell': bell,
    'hardy': hardy,
    'hardy-support': hardy_support,
    'peres-mermin': peres_mermin_cover,
    'cabello18': cabello18_cover,
    'triangle': triangle_cover,
}
ENTRIES.update({f'pr-box-{v}': (lambda v=v: pr_box(v)) for v in range(8)})
ENTRIES.update({f'ghz-{n}': (lambda n=n: ghz(n)) for n in range(3, 7)})


def names():
    return sorted(ENTRIES)


def lookup(name):
    """элемент каталога по имени"""
    try:
        build = ENTRIES[name]
    except KeyError:
        raise ValidationError(UNKNOWN_ENTRY_ERROR.format(name=name)) from None
    return build()


def catalog_models():
    """все модели каталога"""
    entries = [lookup(name) for name in names()]
    return [entry.model for entry in entries if entry.model is not None]
