"""Lattice geometry, Hamiltonian parameters and region splits.

Sites are 0-indexed integers. Edges are undirected and stored once with
``i < j``. JSON payloads may be 1-indexed via their ``index_base`` field
(default 1), which is translated on load.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

from .errors import (
    CrossEdgeError,
    DuplicateEdgeError,
    IndexOutOfRangeError,
    LengthMismatchError,
    NonFiniteParameterError,
    NonzeroInterfaceFieldError,
    NotACoverError,
    SelfEdgeError,
)

Edge = tuple[int, int, float]


@dataclass(frozen=True)
class LatticeSpec:
    """Graph of spin sites with ZZ couplings and per-site transverse fields.

    ``h`` are the x-axis fields, ``g`` the y-axis fields. Construct through
    :func:`validate_lattice` (or the ``make_*`` helpers), which canonicalizes
    and checks the data.
    """

    n_sites: int
    edges: tuple[Edge, ...]
    h: tuple[float, ...]
    g: tuple[float, ...]

    def coupling(self, i: int, j: int) -> float:
        a, b = min(i, j), max(i, j)
        for (p, q, J) in self.edges:
            if (p, q) == (a, b):
                return J
        return 0.0

    def neighbors(self, i: int) -> tuple[int, ...]:
        out = []
        for (p, q, _) in self.edges:
            if p == i:
                out.append(q)
            elif q == i:
                out.append(p)
        return tuple(sorted(out))


@dataclass(frozen=True)
class RegionSplit:
    """Cover of the sites by two sets X, Y with interface S = X ∩ Y.

    Valid splits have no edge between X\\S and Y\\S, and exactly zero
    transverse fields on every interface site.
    """

    n_sites: int
    X: frozenset[int]
    Y: frozenset[int]
    S: frozenset[int]

    @property
    def A(self) -> frozenset[int]:
        """Bulk of X (sites of X not on the interface)."""
        return self.X - self.S

    @property
    def B(self) -> frozenset[int]:
        """Bulk of Y (sites of Y not on the interface)."""
        return self.Y - self.S


def validate_lattice(n_sites: int, edges, h, g=None) -> LatticeSpec:
    """Canonicalize and check a lattice description.

    Edges are returned sorted with ``i < j``. ``g`` defaults to all zeros.
    Raises ``SelfEdgeError``, ``DuplicateEdgeError``, ``IndexOutOfRangeError``,
    ``LengthMismatchError`` or ``NonFiniteParameterError``.
    """
    if n_sites < 1:
        raise IndexOutOfRangeError(f"n_sites must be positive, got {n_sites}")
    canon: list[Edge] = []
    seen: set[tuple[int, int]] = set()
    for (i, j, J) in edges:
        i, j = int(i), int(j)
        if i == j:
            raise SelfEdgeError(f"edge ({i}, {j}) joins a site to itself")
        if not (0 <= i < n_sites and 0 <= j < n_sites):
            raise IndexOutOfRangeError(f"edge ({i}, {j}) outside 0..{n_sites - 1}")
        pair = (min(i, j), max(i, j))
        if pair in seen:
            raise DuplicateEdgeError(f"duplicate edge {pair}")
        seen.add(pair)
        J = float(J)
        if not math.isfinite(J):
            raise NonFiniteParameterError(f"coupling on edge {pair} is not finite")
        canon.append((pair[0], pair[1], J))
    canon.sort(key=lambda e: (e[0], e[1]))

    h = tuple(float(x) for x in h)
    g = tuple(float(x) for x in g) if g is not None else (0.0,) * n_sites
    if len(h) != n_sites or len(g) != n_sites:
        raise LengthMismatchError(
            f"field lists have lengths {len(h)}/{len(g)}, expected {n_sites}"
        )
    for name, values in (("h", h), ("g", g)):
        if any(not math.isfinite(x) for x in values):
            raise NonFiniteParameterError(f"non-finite entry in {name}")
    return LatticeSpec(n_sites, tuple(canon), h, g)


def validate_split(lat: LatticeSpec, X, Y, *,
                   require_zero_interface_fields: bool = True) -> RegionSplit:
    """Check a candidate (X, Y) cover against ``lat`` and derive S = X ∩ Y.

    Symmetric in X and Y. ``require_zero_interface_fields=False`` skips the
    zero-field check; it exists only so control experiments can build
    deliberately broken splits.
    """
    X = frozenset(int(i) for i in X)
    Y = frozenset(int(i) for i in Y)
    for i in X | Y:
        if not 0 <= i < lat.n_sites:
            raise IndexOutOfRangeError(f"site {i} outside 0..{lat.n_sites - 1}")
    if X | Y != frozenset(range(lat.n_sites)):
        missing = sorted(frozenset(range(lat.n_sites)) - (X | Y))
        raise NotACoverError(f"sites {missing} belong to neither region")
    S = X & Y
    bulk_x, bulk_y = X - S, Y - S
    for (i, j, _) in lat.edges:
        if (i in bulk_x and j in bulk_y) or (j in bulk_x and i in bulk_y):
            raise CrossEdgeError(f"edge ({i}, {j}) crosses between the two bulks")
    if require_zero_interface_fields:
        for l in sorted(S):
            if lat.h[l] != 0.0 or lat.g[l] != 0.0:
                raise NonzeroInterfaceFieldError(
                    f"interface site {l} carries field h={lat.h[l]}, g={lat.g[l]}"
                )
    return RegionSplit(lat.n_sites, X, Y, S)


def make_chain(n: int, J, h) -> LatticeSpec:
    """Open chain of ``n`` sites with nearest-neighbor couplings and g ≡ 0."""
    J = list(J)
    h = list(h)
    if len(J) != n - 1 or len(h) != n:
        raise LengthMismatchError(
            f"chain of {n} sites needs {n - 1} couplings and {n} fields, "
            f"got {len(J)} and {len(h)}"
        )
    edges = [(i, i + 1, J[i]) for i in range(n - 1)]
    return validate_lattice(n, edges, h)


def make_diamond(h_left: float = 1.0, h_right: float = 1.0,
                 coupling: float = 1.0) -> LatticeSpec:
    """Four-site diamond: 0 — {1, 2} — 3 with field-free middle sites.

    Site 0 couples to sites 1 and 2, which couple to site 3; there is no
    edge between 1 and 2. The natural two-site-interface split is
    X = {0, 1, 2}, Y = {1, 2, 3}.
    """
    edges = [(0, 1, coupling), (0, 2, coupling), (1, 3, coupling), (2, 3, coupling)]
    return validate_lattice(4, edges, [h_left, 0.0, 0.0, h_right])


def make_triangular_patch(row_sizes, coupling: float = 1.0):
    """Triangular-lattice patch built row by row.

    Row ``r`` holds ``row_sizes[r]`` sites; site (r, c) connects to
    (r, c+1), (r+1, c) and (r+1, c+1) where those exist. All fields start
    at zero. Returns ``(spec, rows)`` with ``rows`` the per-row site lists.
    """
    rows: list[list[int]] = []
    k = 0
    for size in row_sizes:
        rows.append(list(range(k, k + size)))
        k += size
    edges: list[tuple[int, int, float]] = []
    for r, row in enumerate(rows):
        for c in range(len(row) - 1):
            edges.append((row[c], row[c + 1], coupling))
        if r + 1 < len(rows):
            nxt = rows[r + 1]
            for c in range(len(row)):
                if c < len(nxt):
                    edges.append((row[c], nxt[c], coupling))
                if c + 1 < len(nxt):
                    edges.append((row[c], nxt[c + 1], coupling))
    return validate_lattice(k, edges, [0.0] * k), rows


def update_parameters(lat: LatticeSpec, h=None, g=None, J_by_edge=None) -> LatticeSpec:
    """Copy of ``lat`` with some parameters replaced.

    ``J_by_edge`` maps unordered pairs ``(i, j)`` to new couplings; the edge
    set itself never changes.
    """
    new_h = tuple(float(x) for x in h) if h is not None else lat.h
    new_g = tuple(float(x) for x in g) if g is not None else lat.g
    edges = lat.edges
    if J_by_edge:
        lookup = {(min(i, j), max(i, j)): float(v) for (i, j), v in J_by_edge.items()}
        edges = tuple((i, j, lookup.get((i, j), J)) for (i, j, J) in edges)
    out = replace(lat, edges=edges, h=new_h, g=new_g)
    return validate_lattice(out.n_sites, out.edges, out.h, out.g)


# -- JSON payloads -------------------------------------------------------------

def lattice_from_json(obj: dict) -> LatticeSpec:
    """Build a lattice from its JSON form.

    Expected keys: ``n_sites``, ``edges`` as ``[[i, j, J], ...]``, ``h``,
    optional ``g`` (default zeros) and optional ``index_base`` (0 or 1,
    default 1).
    """
    base = int(obj.get("index_base", 1))
    if base not in (0, 1):
        raise IndexOutOfRangeError(f"index_base must be 0 or 1, got {base}")
    n = int(obj["n_sites"])
    edges = [(int(i) - base, int(j) - base, float(J)) for (i, j, J) in obj["edges"]]
    return validate_lattice(n, edges, obj["h"], obj.get("g"))


def split_from_json(obj: dict, lat: LatticeSpec, index_base: int = 1, **kwargs) -> RegionSplit:
    """Build a split from ``{"X": [...], "Y": [...]}`` using the lattice's index base."""
    X = [int(i) - index_base for i in obj["X"]]
    Y = [int(i) - index_base for i in obj["Y"]]
    return validate_split(lat, X, Y, **kwargs)
