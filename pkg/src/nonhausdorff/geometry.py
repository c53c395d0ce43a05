"""Piecewise-flat metrics on triangulated adjunction systems.

Curvature is concentrated at vertices as angle defects (cone metric), so the
half-total-curvature of any region is the sum of the defects of the vertices
interior to it, and the geodesic-curvature counterterm along a frontier cycle
is pi minus the interior angle sum at each boundary vertex.  These choices
make the glued Gauss-Bonnet ledger an exact identity up to float roundoff;
this is the only module that uses floating point, with a 1e-9 budget.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Mapping, Sequence

from .adjunction import (
    AdjunctionSystem,
    ClassKey,
    closed_intersection,
    glued_cell_classes,
    normalized_tuples,
)
from .cells import CellComplex, CellSet, closure, star
from .cohomology import CoreAssignment, euler_inclusion_exclusion
from .errors import PreconditionError, ValidationReport

ANGLE_TOLERANCE = 1e-9


@dataclass(frozen=True, eq=False)
class MetricComplex:
    """A pure 2-dimensional piece together with positive edge lengths."""

    base: CellComplex
    edge_lengths: Mapping[str, float]

    def length(self, edge: str) -> float:
        return self.edge_lengths[edge]


def _triangle_corners(mc: MetricComplex, triangle: str) -> dict[str, tuple[str, str, str]]:
    """vertex -> (adjacent edge, adjacent edge, opposite edge) for a triangle."""
    base = mc.base
    edges = sorted(base.faces_of(triangle))
    if len(edges) != 3:
        raise PreconditionError(f"cell {triangle!r} is not a triangle (has {len(edges)} edges)")
    vertex_edges: dict[str, list[str]] = {}
    for edge in edges:
        endpoints = sorted(base.faces_of(edge))
        if len(endpoints) != 2:
            raise PreconditionError(f"edge {edge!r} does not have two endpoints")
        for v in endpoints:
            vertex_edges.setdefault(v, []).append(edge)
    if len(vertex_edges) != 3 or any(len(es) != 2 for es in vertex_edges.values()):
        raise PreconditionError(f"cell {triangle!r} is not a triangle")
    out: dict[str, tuple[str, str, str]] = {}
    for v, (e1, e2) in vertex_edges.items():
        (opposite,) = [e for e in edges if e not in (e1, e2)]
        out[v] = (e1, e2, opposite)
    return out


def corner_angles(mc: MetricComplex, triangle: str) -> dict[str, float]:
    """Law-of-cosines corner angles of one flat triangle, keyed by vertex."""
    corners = _triangle_corners(mc, triangle)
    out: dict[str, float] = {}
    for v, (e1, e2, opposite) in corners.items():
        b, c, a = mc.length(e1), mc.length(e2), mc.length(opposite)
        cos_angle = (b * b + c * c - a * a) / (2.0 * b * c)
        out[v] = math.acos(max(-1.0, min(1.0, cos_angle)))
    assert abs(sum(out.values()) - math.pi) <= ANGLE_TOLERANCE
    return out


def validate_metric(system: AdjunctionSystem, metrics: Sequence[MetricComplex]) -> ValidationReport:
    """Triangle inequalities per triangle and exact length equality on glued
    edges, closures included (the isometry condition)."""
    report = ValidationReport()
    if len(metrics) != system.n():
        report.add("metric-count", "system", "need one metric per piece")
        return report
    for idx, mc in enumerate(metrics):
        name = system.names[idx]
        if mc.base is not system.pieces[idx]:
            report.add("metric-base", name, "metric is not attached to the piece complex")
        for edge in mc.base.cells_of_dim(1):
            length = mc.edge_lengths.get(edge)
            if length is None:
                report.add("edge-length-missing", f"{name}/{edge}", "no length")
            elif not length > 0:
                report.add("edge-length-positive", f"{name}/{edge}", f"length {length} <= 0")
        for tri in mc.base.cells_of_dim(2):
            try:
                _triangle_corners(mc, tri)
            except PreconditionError as exc:
                report.add("triangulation", f"{name}/{tri}", str(exc))
                continue
            sides = sorted(mc.edge_lengths.get(e, 0.0) for e in mc.base.faces_of(tri))
            if not sides[0] + sides[1] > sides[2]:
                report.add(
                    "triangle-inequality",
                    f"{name}/{tri}",
                    f"side lengths {sides} are degenerate",
                )
    for (i, j) in system.ordered_pairs():
        if i >= j:
            continue
        gm = system.gluing(i, j)
        if gm is None:
            continue
        for cell, image in sorted(gm.closure_forward.items()):
            if system.pieces[i].dims.get(cell) != 1:
                continue
            left = metrics[i].edge_lengths.get(cell)
            right = metrics[j].edge_lengths.get(image)
            if left is not None and right is not None and left != right:
                report.add(
                    "isometry",
                    f"map({system.names[i]},{system.names[j]}):{cell}",
                    f"glued edge lengths differ: {left} vs {right}",
                )
    return report


def _require_closed_surfaces(system: AdjunctionSystem) -> None:
    for idx, piece in enumerate(system.pieces):
        if piece.top_dimension != 2:
            raise PreconditionError(f"piece {system.names[idx]} is not 2-dimensional")
        for edge in piece.cells_of_dim(1):
            carriers = [t for t in piece.cofaces_of(edge) if piece.dims[t] == 2]
            if len(carriers) != 2:
                raise PreconditionError(
                    f"piece {system.names[idx]} is not a closed surface at edge {edge!r}"
                )


def _piece_angle_sums(system: AdjunctionSystem, metrics: Sequence[MetricComplex]) -> list[dict[str, float]]:
    sums: list[dict[str, float]] = []
    for idx, mc in enumerate(metrics):
        acc = {v: 0.0 for v in mc.base.cells_of_dim(0)}
        for tri in mc.base.cells_of_dim(2):
            for v, angle in corner_angles(mc, tri).items():
                acc[v] += angle
        sums.append(acc)
    return sums


def _interior_vertices(piece: CellComplex, domain: CellSet) -> set[str]:
    out = set()
    for v in domain.members_of_dim(0):
        if star(CellSet.of(piece, [v])).members <= domain.members:
            out.add(v)
    return out


def _domain_angle_sums(
    mc: MetricComplex, domain: CellSet
) -> dict[str, float]:
    acc = {v: 0.0 for v in domain.members_of_dim(0)}
    for tri in domain.members_of_dim(2):
        for v, angle in corner_angles(mc, tri).items():
            if v in acc:
                acc[v] += angle
    return acc


@dataclass(eq=False)
class CurvatureLedger:
    """Angle defects per vertex class and turning angles along the frontier
    cycles of each normalized intersection closure."""

    class_defects: dict[ClassKey, float]
    piece_defects: list[dict[str, float]]
    piece_totals: list[float]
    tuple_interior_totals: dict[tuple[int, ...], float]
    turning_angles: dict[tuple[int, ...], dict[str, float]]
    tuple_turning_totals: dict[tuple[int, ...], float]
    pair_side_turnings: dict[tuple[int, int], dict[str, float]]


def curvature_ledger(
    system: AdjunctionSystem,
    metrics: Sequence[MetricComplex],
    max_tuple: int | None = None,
) -> CurvatureLedger:
    """Defect 2*pi - (angle sum) at every vertex of every piece (doubled
    frontier vertices count once per copy, inside their own piece) and
    turning angle pi - (angle sum inside) at every boundary vertex of every
    closed intersection domain."""
    validate_metric(system, metrics).require("curvature_ledger")
    _require_closed_surfaces(system)
    angle_sums = _piece_angle_sums(system, metrics)

    piece_defects: list[dict[str, float]] = []
    for idx in range(system.n()):
        piece_defects.append({v: 2.0 * math.pi - s for v, s in sorted(angle_sums[idx].items())})
    piece_totals = [sum(d.values()) for d in piece_defects]

    classes = glued_cell_classes(system)
    class_defects: dict[ClassKey, float] = {}
    for key in classes.classes:
        i, cell = key[0]
        if system.pieces[i].dims[cell] == 0:
            class_defects[key] = piece_defects[i][cell]

    tuple_interior_totals: dict[tuple[int, ...], float] = {}
    turning_angles: dict[tuple[int, ...], dict[str, float]] = {}
    tuple_turning_totals: dict[tuple[int, ...], float] = {}
    for tup in normalized_tuples(system.n(), 2, max_tuple):
        ref = tup[0]
        domain = closed_intersection(system, tup)
        if not domain.members:
            tuple_interior_totals[tup] = 0.0
            turning_angles[tup] = {}
            tuple_turning_totals[tup] = 0.0
            continue
        inside = _interior_vertices(system.pieces[ref], domain)
        tuple_interior_totals[tup] = sum(piece_defects[ref][v] for v in sorted(inside))
        inside_sums = _domain_angle_sums(metrics[ref], domain)
        turnings = {
            v: math.pi - inside_sums[v]
            for v in sorted(domain.members_of_dim(0))
            if v not in inside
        }
        turning_angles[tup] = turnings
        tuple_turning_totals[tup] = sum(turnings.values())

    pair_side_turnings: dict[tuple[int, int], dict[str, float]] = {}
    for (i, j) in system.ordered_pairs():
        side_domain = closure(system.region(i, j))
        inside = _interior_vertices(system.pieces[i], side_domain)
        sums = _domain_angle_sums(metrics[i], side_domain)
        pair_side_turnings[(i, j)] = {
            v: math.pi - sums[v]
            for v in sorted(side_domain.members_of_dim(0))
            if v not in inside
        }
    return CurvatureLedger(
        class_defects=class_defects,
        piece_defects=piece_defects,
        piece_totals=piece_totals,
        tuple_interior_totals=tuple_interior_totals,
        turning_angles=turning_angles,
        tuple_turning_totals=tuple_turning_totals,
        pair_side_turnings=pair_side_turnings,
    )


@dataclass(eq=False)
class GaussBonnetRow:
    tup: tuple[int, ...]
    sign: int
    interior_defect: float
    turning: float


@dataclass(eq=False)
class GaussBonnetReport:
    chi: int
    lhs: float
    curvature_half_integral: float
    counterterms: float
    rhs: float
    residual: float
    rows: list[GaussBonnetRow]
    ledger: CurvatureLedger


def gauss_bonnet_report(
    system: AdjunctionSystem,
    metrics: Sequence[MetricComplex],
    cores: CoreAssignment | None = None,
    max_tuple: int | None = None,
) -> GaussBonnetReport:
    """lhs = 2*pi*chi (chi by inclusion-exclusion over cores); rhs assembles
    the inclusion-exclusion of angle defects plus the alternating
    turning-angle counterterms.  The contract is |lhs - rhs| <= 1e-9."""
    ledger = curvature_ledger(system, metrics, max_tuple=max_tuple)
    chi = euler_inclusion_exclusion(system, cores, max_tuple=max_tuple)
    lhs = 2.0 * math.pi * chi

    curvature = sum(ledger.piece_totals)
    counterterms = 0.0
    rows: list[GaussBonnetRow] = []
    for i, total in enumerate(ledger.piece_totals):
        rows.append(GaussBonnetRow((i,), 1, total, 0.0))
    for tup in sorted(ledger.tuple_interior_totals, key=lambda t: (len(t), t)):
        sign = (-1) ** (len(tup) + 1)
        curvature += sign * ledger.tuple_interior_totals[tup]
        counterterms += sign * ledger.tuple_turning_totals[tup]
        rows.append(
            GaussBonnetRow(
                tup, sign, ledger.tuple_interior_totals[tup], ledger.tuple_turning_totals[tup]
            )
        )
    rhs = curvature + counterterms
    return GaussBonnetReport(
        chi=chi,
        lhs=lhs,
        curvature_half_integral=curvature,
        counterterms=counterterms,
        rhs=rhs,
        residual=lhs - rhs,
        rows=rows,
        ledger=ledger,
    )
