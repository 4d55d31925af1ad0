"""Plain-text graph, vector and cover files.

Blank lines and lines starting with '#' are ignored everywhere.

graph:    vertices a b c
          a b
          b c
vectors:  m1 0 0 0 1
cover:    m1 m2 m3 m4
"""
import logging

import networkx as nx
from django.core.exceptions import ValidationError

from kspec.graphs import BINARY, VectorFamily
from empirical.scenario import Scenario

logger = logging.getLogger(__name__)

MISSING_VERTICES_ERROR = "line {line}: the first line must list the vertices"
EDGE_ARITY_ERROR = "line {line}: an edge needs exactly two vertices"
UNKNOWN_VERTEX_ERROR = "line {line}: unknown vertex {vertex!r}"
SELF_LOOP_ERROR = "line {line}: self-loop at {vertex!r}"
DUPLICATE_VERTEX_ERROR = "line {line}: duplicate vertex {vertex!r}"
VECTOR_SYNTAX_ERROR = "line {line}: expected a label followed by integer coordinates"
EMPTY_FILE_ERROR = "The file has no content"


def _content_lines(text):
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if line and not line.startswith('#'):
            yield number, line.split()


def read_graph(text):
    """граф из текста: строка вершин и по ребру на строку"""
    lines = list(_content_lines(text))
    if not lines:
        raise ValidationError(EMPTY_FILE_ERROR)
    number, header = lines[0]
    if header[0] != 'vertices':
        raise ValidationError(MISSING_VERTICES_ERROR.format(line=number))
    graph = nx.Graph()
    for vertex in header[1:]:
        if vertex in graph:
            raise ValidationError(DUPLICATE_VERTEX_ERROR.format(line=number, vertex=vertex))
        graph.add_node(vertex)
    for number, fields in lines[1:]:
        if len(fields) != 2:
            raise ValidationError(EDGE_ARITY_ERROR.format(line=number))
        for vertex in fields:
            if vertex not in graph:
                raise ValidationError(UNKNOWN_VERTEX_ERROR.format(line=number, vertex=vertex))
        u, v = fields
        if u == v:
            raise ValidationError(SELF_LOOP_ERROR.format(line=number, vertex=u))
        graph.add_edge(u, v)
    logger.debug('read graph with %d vertices, %d edges', graph.number_of_nodes(), graph.number_of_edges())
    return graph


def write_graph(graph):
    lines = ['vertices ' + ' '.join(map(str, graph.nodes))]
    lines.extend(f'{u} {v}' for u, v in graph.edges)
    return '\n'.join(lines) + '\n'


def read_vectors(text):
    """семейство векторов: метка и целые координаты на строку"""
    labels, vectors = [], []
    for number, fields in _content_lines(text):
        try:
            coordinates = [int(x) for x in fields[1:]]
        except ValueError:
            raise ValidationError(VECTOR_SYNTAX_ERROR.format(line=number)) from None
        if not coordinates:
            raise ValidationError(VECTOR_SYNTAX_ERROR.format(line=number))
        labels.append(fields[0])
        vectors.append(coordinates)
    if not labels:
        raise ValidationError(EMPTY_FILE_ERROR)
    return VectorFamily(tuple(labels), tuple(vectors))


def read_cover(text, outcomes=BINARY):
    """покрытие: контекст на строку; измерения в порядке первого появления"""
    measurements, cover = [], []
    for _, fields in _content_lines(text):
        for m in fields:
            if m not in measurements:
                measurements.append(m)
        cover.append(tuple(fields))
    if not cover:
        raise ValidationError(EMPTY_FILE_ERROR)
    return Scenario(tuple(measurements), outcomes, tuple(cover))


def sniff(text):
    """тип файла: graph, vectors или cover"""
    lines = list(_content_lines(text))
    if lines and lines[0][1][0] == 'vertices':
        return 'graph'
    if lines and all(len(fields) > 1 and _is_int(fields[1]) for _, fields in lines):
        return 'vectors'
    return 'cover'


def _is_int(value):
    try:
        int(value)
    except ValueError:
        return False
    return True
