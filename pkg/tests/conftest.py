"""Shared builders: fixture access, random compatible cochains, random
clopen (Hausdorff) systems for the oracle-equivalence sweeps."""

from __future__ import annotations

import random
from fractions import Fraction
from pathlib import Path

import pytest

from nonhausdorff import fixtures as fixture_mod
from nonhausdorff.adjunction import AdjunctionSystem, glued_cell_classes
from nonhausdorff.cells import CellComplex, Orientation, closure
from nonhausdorff.cochains import Cochain, GlobalCochain, assemble_global

FIXTURES_DIR = Path(__file__).resolve().parent.parent / "fixtures"

GOOD_FIXTURES = [
    "line_two_origins",
    "variant_n",
    "branched_line",
    "glued_circles",
    "glued_circles_clopen",
    "two_squares",
    "line_three_origins",
    "line_three_origins_mixed",
    "glued_icosahedra",
    "glued_tori",
]

CORE_FIXTURES = [
    "line_two_origins",
    "variant_n",
    "branched_line",
    "glued_circles",
    "glued_circles_clopen",
    "line_three_origins",
    "line_three_origins_mixed",
    "closure_violation",
    "glued_icosahedra",
    "glued_tori",
]


@pytest.fixture(scope="session")
def built():
    """All fixture bundles, built once."""
    return {name: builder() for name, builder in fixture_mod.FIXTURE_BUILDERS.items()}


def random_fraction(rng: random.Random) -> Fraction:
    return Fraction(rng.randint(-6, 6), rng.randint(1, 6))


def random_global_cochain(system: AdjunctionSystem, degree: int, rng: random.Random) -> GlobalCochain:
    """A random cochain satisfying the fibre-product compatibility, frontier
    agreement included: one random value per identification class."""
    classes = glued_cell_classes(system)
    parent = list(range(len(classes)))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(a: int, b: int) -> None:
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb

    for (i, j), gm in sorted(system.maps.items()):
        if i >= j:
            continue
        for cell, image in sorted(gm.closure_forward.items()):
            if system.pieces[i].dims[cell] == degree:
                union(classes.index[(i, cell)], classes.index[(j, image)])

    values: dict[int, Fraction] = {}
    components = []
    for k, piece in enumerate(system.pieces):
        comp: dict[str, Fraction] = {}
        for cell in piece.cells_of_dim(degree):
            root = find(classes.index[(k, cell)])
            if root not in values:
                values[root] = random_fraction(rng)
            comp[cell] = values[root]
        components.append(Cochain.of(piece.whole_set(), degree, comp))
    return assemble_global(system, components, degree)


# -- random clopen systems -----------------------------------------------------


def _component(rng: random.Random, tag: str) -> tuple[list[tuple[str, int]], dict[str, dict[str, int]]]:
    kind = rng.choice(["vertex", "path", "cycle", "disc", "sphere"])
    cells: list[tuple[str, int]] = []
    inc: dict[str, dict[str, int]] = {}

    def v(k: int) -> str:
        return f"{tag}v{k}"

    def e(k: int) -> str:
        return f"{tag}e{k}"

    if kind == "vertex":
        cells.append((v(0), 0))
    elif kind == "path":
        n = rng.randint(2, 4)
        cells.extend((v(k), 0) for k in range(n))
        for k in range(n - 1):
            cells.append((e(k), 1))
            inc[e(k)] = {v(k): -1, v(k + 1): 1}
    elif kind == "cycle":
        n = rng.randint(3, 6)
        cells.extend((v(k), 0) for k in range(n))
        for k in range(n):
            cells.append((e(k), 1))
            inc[e(k)] = {v(k): -1, v((k + 1) % n): 1}
    elif kind == "disc":
        # one filled triangle
        cells.extend((v(k), 0) for k in range(3))
        for k in range(3):
            cells.append((e(k), 1))
            inc[e(k)] = {v(k): -1, v((k + 1) % 3): 1}
        cells.append((f"{tag}t", 2))
        inc[f"{tag}t"] = {e(0): 1, e(1): 1, e(2): 1}
    else:
        # boundary of a tetrahedron
        verts = [v(k) for k in range(4)]
        cells.extend((x, 0) for x in verts)
        edge_of = {}
        k = 0
        for a in range(4):
            for b in range(a + 1, 4):
                edge_of[(a, b)] = e(k)
                cells.append((e(k), 1))
                inc[e(k)] = {verts[a]: -1, verts[b]: 1}
                k += 1
        t = 0
        for a in range(4):
            for b in range(a + 1, 4):
                for c in range(b + 1, 4):
                    name = f"{tag}t{t}"
                    cells.append((name, 2))
                    inc[name] = {
                        edge_of[(b, c)]: 1,
                        edge_of[(a, c)]: -1,
                        edge_of[(a, b)]: 1,
                    }
                    t += 1
    return cells, inc


def random_clopen_system(rng: random.Random, max_cells: int = 40) -> AdjunctionSystem:
    """Pieces are unions of shared components, glued by identity on every
    shared component: all regions clopen, no Hausdorff violations."""
    while True:
        n_pieces = rng.randint(2, 3)
        n_components = rng.randint(1, 4)
        comps = [_component(rng, f"c{k}_") for k in range(n_components)]
        total = sum(len(cells) for cells, _ in comps)
        if total > max_cells:
            continue
        membership: list[set[int]] = [set() for _ in range(n_pieces)]
        for k in range(n_components):
            homes = rng.sample(range(n_pieces), rng.randint(1, n_pieces))
            for h in homes:
                membership[h].add(k)
        if any(not m for m in membership):
            continue
        pieces = []
        for m in membership:
            cells: list[tuple[str, int]] = []
            inc: dict[str, dict[str, int]] = {}
            for k in sorted(m):
                cells.extend(comps[k][0])
                inc.update(comps[k][1])
            pieces.append(CellComplex.build(cells, inc))
        regions = {}
        maps = {}
        for i in range(n_pieces):
            for j in range(i + 1, n_pieces):
                shared = membership[i] & membership[j]
                cells = [c for k in sorted(shared) for c, _ in comps[k][0]]
                if not cells:
                    continue
                regions[(i, j)] = cells
                maps[(i, j)] = ({c: c for c in cells}, None)
        return AdjunctionSystem.assemble(pieces, None, regions, maps)


def oriented_copy(system: AdjunctionSystem) -> AdjunctionSystem:
    orientations = [
        Orientation({c: 1 for c in piece.cells_of_dim(piece.top_dimension)})
        for piece in system.pieces
    ]
    return AdjunctionSystem(system.pieces, system.names, system.regions, system.maps, orientations)


def closed_region_cochain_values(system, i, j, degree):
    """Cells of the closure of region(i, j) in the given degree."""
    return closure(system.region(i, j)).members_of_dim(degree)
