"""Kochen-Specker combinatorics of covers and graphs.

A ONE-section assigns 1 to exactly one measurement of every context; for
the maximal-clique cover of a graph this is a stable transversal.
"""
import itertools
import logging
from dataclasses import dataclass
from functools import reduce
from math import gcd

import networkx as nx
from django.core.exceptions import ValidationError

from empirical.scenario import Scenario, Section

logger = logging.getLogger(__name__)

BINARY = ('0', '1')

DIMENSION_MISMATCH_ERROR = "Vector {label!r} has dimension {got}, expected {expected}"
ZERO_VECTOR_ERROR = "Vector {label!r} is zero"
DUPLICATE_VECTOR_LABEL_ERROR = "Duplicate vector label {label!r}"
EMPTY_GRAPH_ERROR = "The graph has no vertices"
NOT_INDEPENDENT_ERROR = "Transversal {witness} is not an independent set"


class DimensionMismatch(ValueError):
    """векторы разной размерности"""


@dataclass(frozen=True)
class ParityVerdict:
    """вердикт проверки чётности"""

    obstructed: bool
    divisor: int
    n_contexts: int
    occurrences: dict


def parity_obstruction(scenario):
    """g = НОД |M(m)|; препятствие, если g не делит |M|"""
    occurrences = {m: len(scenario.containing(m)) for m in scenario.measurements}
    divisor = reduce(gcd, occurrences.values(), 0)
    n_contexts = len(scenario.cover)
    obstructed = divisor == 0 or n_contexts % divisor != 0
    logger.debug('parity: gcd %d, |M| = %d, obstructed %s', divisor, n_contexts, obstructed)
    return ParityVerdict(obstructed, divisor, n_contexts, occurrences)


@dataclass(frozen=True)
class OneSection:
    """результат поиска: измерения, получившие 1, или None"""

    ones: tuple
    nodes: int

    @property
    def exists(self):
        return self.ones is not None

    def section(self, measurements, outcomes=BINARY):
        """свидетель как глобальное сечение"""
        chosen = set(self.ones)
        values = tuple(outcomes[1] if m in chosen else outcomes[0] for m in measurements)
        return Section(tuple(measurements), values)


def _exact_hitting_set(items, contexts, rank=None):
    """множество, пересекающее каждый контекст ровно в одном элементе

    Picks the open context with the fewest live candidates, tries its
    candidates in rank order and excludes every neighbour of a chosen item.
    """
    rank = rank or {}
    containing = {x: [k for k, c in enumerate(contexts) if x in c] for x in items}
    chosen = []
    state = {'nodes': 0}

    def search(open_contexts, excluded):
        if not open_contexts:
            return True
        best = None
        for k in open_contexts:
            live = [x for x in contexts[k] if x not in excluded]
            if best is None or len(live) < len(best[1]):
                best = (k, live)
            if not live:
                return False
        _, live = best
        for x in sorted(live, key=lambda x: rank.get(x, 0)):
            state['nodes'] += 1
            closed = set(containing[x])
            neighbours = {y for k in closed for y in contexts[k]}
            chosen.append(x)
            if search(open_contexts - closed, excluded | neighbours):
                return True
            chosen.pop()
        return False

    found = search(frozenset(range(len(contexts))), frozenset())
    return (tuple(chosen) if found else None), state['nodes']


def one_section_exists(scenario):
    """глобальное назначение с ровно одной 1 в каждом контексте"""
    ones, nodes = _exact_hitting_set(scenario.measurements, list(scenario.cover))
    if ones is not None:
        position = {m: i for i, m in enumerate(scenario.measurements)}
        ones = tuple(sorted(ones, key=position.get))
    logger.debug('ONE-section search: %d nodes, found %s', nodes, ones is not None)
    return OneSection(ones, nodes)


def maximal_cliques(graph):
    """максимальные клики (Брон-Кербош с опорной вершиной) как покрытие"""
    if graph.number_of_nodes() == 0:
        raise ValidationError(EMPTY_GRAPH_ERROR)
    position = {v: i for i, v in enumerate(graph.nodes)}
    cliques = [tuple(sorted(c, key=position.get)) for c in nx.find_cliques(graph)]
    return tuple(sorted(cliques, key=lambda c: [position[v] for v in c]))


def cover_scenario(graph, outcomes=BINARY):
    """сценарий M_G из максимальных клик"""
    return Scenario(tuple(graph.nodes), outcomes, maximal_cliques(graph))


def stable_transversal(graph):
    """множество вершин, пересекающее каждую максимальную клику ровно раз

    Vertices are tried in degree-descending order.
    """
    cliques = list(maximal_cliques(graph))
    rank = {v: -graph.degree(v) for v in graph.nodes}
    witness, nodes = _exact_hitting_set(tuple(graph.nodes), cliques, rank)
    logger.debug('stable transversal search: %d nodes', nodes)
    if witness is None:
        return None
    position = {v: i for i, v in enumerate(graph.nodes)}
    witness = tuple(sorted(witness, key=position.get))
    if any(graph.has_edge(u, v) for u, v in itertools.combinations(witness, 2)):
        raise AssertionError(NOT_INDEPENDENT_ERROR.format(witness=list(witness)))
    return witness


def co_context_graph(scenario):
    """граф совместимости: ребро, если измерения встречаются в одном контексте"""
    graph = nx.Graph()
    graph.add_nodes_from(scenario.measurements)
    for context in scenario.cover:
        graph.add_edges_from(itertools.combinations(context, 2))
    return graph


@dataclass(frozen=True)
class VectorFamily:
    """помеченные целочисленные векторы одной размерности"""

    labels: tuple
    vectors: tuple

    def __post_init__(self):
        object.__setattr__(self, 'labels', tuple(self.labels))
        object.__setattr__(self, 'vectors', tuple(tuple(int(x) for x in v) for v in self.vectors))
        if self.vectors:
            expected = len(self.vectors[0])
            for label, vector in zip(self.labels, self.vectors):
                if len(vector) != expected:
                    raise DimensionMismatch(DIMENSION_MISMATCH_ERROR.format(
                        label=label, got=len(vector), expected=expected))
        errors = []
        seen = set()
        for label, vector in zip(self.labels, self.vectors):
            if label in seen:
                errors.append(DUPLICATE_VECTOR_LABEL_ERROR.format(label=label))
            seen.add(label)
            if not any(vector):
                errors.append(ZERO_VECTOR_ERROR.format(label=label))
        if errors:
            raise ValidationError(errors)

    @property
    def dimension(self):
        return len(self.vectors[0]) if self.vectors else 0

    def vector(self, label):
        return self.vectors[self.labels.index(label)]


def orthogonality_graph(family):
    """ребро, если скалярное произведение равно нулю"""
    graph = nx.Graph()
    graph.add_nodes_from(family.labels)
    for (u, x), (v, y) in itertools.combinations(zip(family.labels, family.vectors), 2):
        if sum(a * b for a, b in zip(x, y)) == 0:
            graph.add_edge(u, v)
    return graph


@dataclass(frozen=True)
class KSGraphReport:
    """проверка условия: все максимальные клики размера d"""

    dimension: int
    undersized: tuple

    @property
    def uniform(self):
        return not self.undersized


def ks_graph_report(graph, dimension):
    """максимальные клики, размер которых отличен от d"""
    return KSGraphReport(dimension, tuple(c for c in maximal_cliques(graph) if len(c) != dimension))


@dataclass(frozen=True)
class BellType:
    """разбиение на части, если покрытие типа Белла"""

    is_bell: bool
    parts: tuple = None

    def __bool__(self):
        return self.is_bell


def is_bell_type(scenario):
    """несовместимость плюс тождество - отношение эквивалентности,
    а покрытие - все трансверсали классов"""
    compatible = co_context_graph(scenario)
    measurements = scenario.measurements
    for a, b, c in itertools.permutations(measurements, 3):
        if (not compatible.has_edge(a, b) and not compatible.has_edge(b, c)
                and compatible.has_edge(a, c)):
            return BellType(False)
    parts = []
    for m in measurements:
        for part in parts:
            if not compatible.has_edge(m, part[0]):
                part.append(m)
                break
        else:
            parts.append([m])
    transversals = {frozenset(choice) for choice in itertools.product(*parts)}
    if transversals != {frozenset(c) for c in scenario.cover}:
        return BellType(False)
    return BellType(True, tuple(tuple(p) for p in parts))
