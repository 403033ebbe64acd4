"""Simplicial complexes, orientations and the fixtures used throughout."""

from __future__ import annotations

import itertools
import json
from collections import deque
from collections.abc import Iterable
from dataclasses import dataclass
from functools import cached_property
from math import comb

from .fields import QQ, Field, PrimeField
from .linalg import rank

Face = tuple[int, ...]


class ComplexError(ValueError):
    pass


class NonOrientable(ComplexError):
    pass


class NotPseudomanifold(ComplexError):
    pass


class SimplicialComplex:
    """A simplicial complex on vertices 1..n given by its facets."""

    def __init__(self, n: int, facets: Iterable[Iterable[int]]):
        facets = {tuple(sorted(set(f))) for f in facets}
        if not facets:
            raise ComplexError("empty facet list")
        for f in facets:
            if not f:
                raise ComplexError("empty facet")
            if f[0] < 1 or f[-1] > n:
                raise ComplexError(f"vertex label out of range 1..{n} in {f}")
        sets = {f: frozenset(f) for f in facets}
        maximal = [f for f in facets if not any(sets[f] < sets[g] for g in facets if len(g) > len(f))]
        self.n = n
        self.facets: tuple[Face, ...] = tuple(sorted(maximal))
        sizes = {len(f) for f in self.facets}
        self.pure = len(sizes) == 1
        self.d = max(sizes)

    @property
    def dim(self) -> int:
        return self.d - 1

    def __repr__(self) -> str:
        return f"SimplicialComplex(n={self.n}, facets={list(self.facets)})"

    def __eq__(self, other) -> bool:
        return isinstance(other, SimplicialComplex) and (self.n, self.facets) == (other.n, other.facets)

    def __hash__(self) -> int:
        return hash((self.n, self.facets))

    # faces ----------------------------------------------------------------

    @cached_property
    def _faces(self) -> list[set[Face]]:
        by_size: list[set[Face]] = [set() for _ in range(self.d + 1)]
        for f in self.facets:
            for k in range(len(f) + 1):
                by_size[k].update(itertools.combinations(f, k))
        return by_size

    def faces(self, size: int) -> list[Face]:
        """All faces with ``size`` vertices, sorted."""
        if size < 0 or size > self.d:
            return []
        return sorted(self._faces[size])

    def is_face(self, g: Iterable[int]) -> bool:
        g = tuple(sorted(set(g)))
        return len(g) <= self.d and g in self._faces[len(g)]

    @cached_property
    def facet_set(self) -> frozenset[Face]:
        return frozenset(self.facets)

    def is_facet(self, g: Iterable[int]) -> bool:
        return tuple(sorted(g)) in self.facet_set

    @cached_property
    def vertices(self) -> tuple[int, ...]:
        return tuple(sorted({v for f in self.facets for v in f}))

    def facets_containing(self, g: Iterable[int]) -> list[Face]:
        g = set(g)
        return [f for f in self.facets if g <= set(f)]

    def f_vector(self) -> list[int]:
        """(f_{-1}, f_0, ..., f_{d-1})."""
        return [len(self._faces[k]) for k in range(self.d + 1)]

    @cached_property
    def ridge_map(self) -> dict[Face, list[Face]]:
        out: dict[Face, list[Face]] = {}
        for f in self.facets:
            for m in range(len(f)):
                out.setdefault(f[:m] + f[m + 1 :], []).append(f)
        return out

    def to_json(self) -> str:
        return json.dumps({"n": self.n, "facets": [list(f) for f in self.facets]})

    @classmethod
    def from_json(cls, text: str) -> SimplicialComplex:
        data = json.loads(text)
        return from_facets(data["n"], data["facets"])


def from_facets(n: int, facets: Iterable[Iterable[int]]) -> SimplicialComplex:
    return SimplicialComplex(n, facets)


def boundary_simplex(d: int) -> SimplicialComplex:
    """Boundary of the d-simplex: all d-subsets of {1, ..., d+1}."""
    if d < 1:
        raise ComplexError("d must be at least 1")
    return SimplicialComplex(d + 1, itertools.combinations(range(1, d + 2), d))


def join(a: SimplicialComplex, b: SimplicialComplex) -> SimplicialComplex:
    if not (a.pure and b.pure):
        raise ComplexError("join needs pure complexes")
    facets = [fa + tuple(v + a.n for v in fb) for fa in a.facets for fb in b.facets]
    return SimplicialComplex(a.n + b.n, facets)


def s0() -> SimplicialComplex:
    return boundary_simplex(1)


def suspension(c: SimplicialComplex) -> SimplicialComplex:
    return join(c, s0())


def sigma(d: int) -> SimplicialComplex:
    """Suspension of the boundary of the (d-1)-simplex; vertices 1..d+2."""
    if d < 2:
        raise ComplexError("sigma needs d >= 2")
    base = boundary_simplex(d - 1)
    return suspension(base)


def cycle(n: int) -> SimplicialComplex:
    if n < 3:
        raise ComplexError("a cycle needs at least 3 vertices")
    return SimplicialComplex(n, [(i, i % n + 1) for i in range(1, n + 1)])


def octahedron() -> SimplicialComplex:
    return join(s0(), join(s0(), s0()))


def stellar_subdivide(c: SimplicialComplex, f: Iterable[int]) -> SimplicialComplex:
    f = tuple(sorted(f))
    if f not in c.facet_set:
        raise ComplexError(f"{f} is not a facet")
    v = c.n + 1
    new = [g for g in c.facets if g != f]
    new += [tuple(x for x in f if x != j) + (v,) for j in f]
    return SimplicialComplex(v, new)


def stacked_sphere(d: int, steps: int) -> SimplicialComplex:
    """Boundary of the d-simplex subdivided ``steps`` times, each time in the
    lexicographically largest facet."""
    c = boundary_simplex(d)
    for _ in range(steps):
        c = stellar_subdivide(c, c.facets[-1])
    return c


def rp2_six_vertex() -> SimplicialComplex:
    """The minimal 6-vertex triangulation of the real projective plane."""
    facets = [
        (1, 2, 3), (1, 3, 4), (1, 4, 5), (1, 5, 6), (1, 2, 6),
        (2, 3, 5), (2, 4, 5), (2, 4, 6), (3, 4, 6), (3, 5, 6),
    ]
    return SimplicialComplex(6, facets)


def link(c: SimplicialComplex, g: Iterable[int]) -> SimplicialComplex | None:
    """Link of a face; None stands for the complex {empty set} (link of a facet)."""
    g = tuple(sorted(set(g)))
    if not c.is_face(g):
        raise ComplexError(f"{g} is not a face")
    gs = set(g)
    facets = [tuple(v for v in f if v not in gs) for f in c.facets if gs <= set(f)]
    facets = [f for f in facets if f]
    if not facets:
        return None
    return SimplicialComplex(c.n, facets)


def closed_star(c: SimplicialComplex, g: Iterable[int]) -> SimplicialComplex:
    g = tuple(sorted(set(g)))
    if not c.is_face(g):
        raise ComplexError(f"{g} is not a face")
    return SimplicialComplex(c.n, c.facets_containing(g))


# ---------------------------------------------------------------------------
# homology


def _coefficient_field(char: int) -> Field:
    return QQ if char == 0 else PrimeField(char)


def reduced_betti(c: SimplicialComplex | None, char: int = 0) -> list[int]:
    """Reduced Betti numbers beta_0..beta_{d-1}; None is {empty} (beta_{-1} = 1)."""
    if c is None:
        return []
    field = _coefficient_field(char)
    chains = [c.faces(k) for k in range(c.d + 1)]  # chains[k]: faces of size k
    ranks = [0] * (c.d + 2)
    # boundary from faces of size k to size k-1, with the augmentation at k = 1
    for k in range(1, c.d + 1):
        lower = {f: i for i, f in enumerate(chains[k - 1])}
        rows = []
        for f in chains[k]:
            row = [field.zero] * len(lower)
            for m in range(k):
                sign = field.one if m % 2 == 0 else field.neg(field.one)
                row[lower[f[:m] + f[m + 1 :]]] = sign
            rows.append(row)
        ranks[k] = rank(rows, field) if rows else 0
    betti = []
    for q in range(c.d):
        size = q + 1
        betti.append(len(chains[size]) - ranks[size] - ranks[size + 1])
    return betti


@dataclass(frozen=True)
class TopologyReport:
    connected: bool
    reduced_betti: tuple[int, ...]
    is_homology_manifold: bool
    is_homology_sphere: bool
    is_pseudomanifold: bool

    def as_dict(self) -> dict:
        return {
            "connected": self.connected,
            "reduced_betti": list(self.reduced_betti),
            "is_homology_manifold": self.is_homology_manifold,
            "is_homology_sphere": self.is_homology_sphere,
            "is_pseudomanifold": self.is_pseudomanifold,
        }


def _is_sphere_homology(c: SimplicialComplex | None, dim: int, char: int) -> bool:
    if c is None:
        return dim == -1
    if not c.pure or c.dim != dim:
        return False
    betti = reduced_betti(c, char)
    return all(b == 0 for b in betti[:-1]) and betti[-1] == 1


def strongly_connected(c: SimplicialComplex) -> bool:
    seen = {c.facets[0]}
    queue = deque(seen)
    while queue:
        f = queue.popleft()
        for m in range(len(f)):
            for g in c.ridge_map[f[:m] + f[m + 1 :]]:
                if g not in seen:
                    seen.add(g)
                    queue.append(g)
    return len(seen) == len(c.facets)


def is_pseudomanifold(c: SimplicialComplex) -> bool:
    if not c.pure:
        return False
    if c.d > 1 and any(len(fs) != 2 for fs in c.ridge_map.values()):
        return False
    if c.d == 1:
        return len(c.facets) == 2
    return strongly_connected(c)


def is_homology_manifold(c: SimplicialComplex, char: int = 0) -> bool:
    if not c.pure:
        raise ComplexError("manifold tests need a pure complex")
    for size in range(1, c.d + 1):
        for g in c.faces(size):
            if not _is_sphere_homology(link(c, g), c.d - size - 1, char):
                return False
    return True


def is_connected(c: SimplicialComplex) -> bool:
    adj: dict[int, set[int]] = {v: set() for v in c.vertices}
    for f in c.facets:
        for u in f:
            adj[u].update(f)
    start = c.vertices[0]
    seen = {start}
    queue = deque([start])
    while queue:
        u = queue.popleft()
        for w in adj[u] - seen:
            seen.add(w)
            queue.append(w)
    return len(seen) == len(c.vertices)


def topology_report(c: SimplicialComplex, char: int = 0) -> TopologyReport:
    if not c.pure:
        raise ComplexError("topology report needs a pure complex")
    betti = tuple(reduced_betti(c, char))
    manifold = is_homology_manifold(c, char)
    sphere = manifold and all(b == 0 for b in betti[:-1]) and betti[-1] == 1
    return TopologyReport(is_connected(c), betti, manifold, sphere, is_pseudomanifold(c))


# ---------------------------------------------------------------------------
# orientation


@dataclass(frozen=True)
class Orientation:
    sign: dict
    char2: bool = False

    def __getitem__(self, facet: Face) -> int:
        return self.sign[facet]

    def flipped(self) -> Orientation:
        if self.char2:
            return self
        return Orientation({f: -s for f, s in self.sign.items()}, False)

    def with_sign(self, facet: Face, s: int) -> Orientation:
        """A copy with one facet sign replaced (used for corrupted fixtures)."""
        new = dict(self.sign)
        new[facet] = s
        return Orientation(new, self.char2)

    def as_dict(self) -> dict:
        return {",".join(map(str, f)): s for f, s in sorted(self.sign.items())}


def induced_ridge_sign(facet: Face, sign: int, m: int) -> int:
    """Sign induced on facet minus its m-th vertex (0-based), relative to
    the sorted order of the ridge."""
    return sign if m % 2 == 0 else -sign


def orient(c: SimplicialComplex, char: int = 0) -> Orientation:
    """Consistent facet signs, propagated from the smallest facet."""
    if not is_pseudomanifold(c):
        raise NotPseudomanifold("orientations need a pseudomanifold")
    if char == 2:
        return Orientation({f: 1 for f in c.facets}, True)
    seed = c.facets[0]
    # S^0: the seed vertex {1} gets -1 so that the second vertex gets +1
    sign = {seed: -1 if c.d == 1 else 1}
    queue = deque([seed])
    while queue:
        f = queue.popleft()
        for m in range(len(f)):
            ridge = f[:m] + f[m + 1 :]
            induced = induced_ridge_sign(f, sign[f], m)
            for g in c.ridge_map[ridge]:
                if g == f:
                    continue
                mg = next(i for i in range(len(g)) if g[:i] + g[i + 1 :] == ridge)
                want = -induced if mg % 2 == 0 else induced
                if g not in sign:
                    sign[g] = want
                    queue.append(g)
                elif sign[g] != want:
                    raise NonOrientable(f"orientation conflict across ridge {ridge}")
    return Orientation(sign, False)


def orientation_violations(c: SimplicialComplex, o: Orientation) -> list[Face]:
    """Ridges whose two facets induce the same orientation."""
    if o.char2:
        return []
    bad = []
    for ridge, fs in sorted(c.ridge_map.items()):
        if len(fs) != 2:
            continue
        induced = []
        for f in fs:
            m = next(i for i in range(len(f)) if f[:i] + f[i + 1 :] == ridge)
            induced.append(induced_ridge_sign(f, o[f], m))
        if induced[0] == induced[1]:
            bad.append(ridge)
    return bad


def f_h_vectors(c: SimplicialComplex) -> tuple[list[int], list[int]]:
    if not c.pure:
        raise ComplexError("h-vector needs a pure complex")
    f = c.f_vector()
    d = c.d
    h = [
        sum((-1) ** (k - i) * comb(d - i, k - i) * f[i] for i in range(k + 1))
        for k in range(d + 1)
    ]
    return f, h


# ---------------------------------------------------------------------------
# named fixtures


def fixture(name: str) -> SimplicialComplex:
    """Built-in complexes by name, e.g. ``sigma:3`` or ``stacked:3:2``."""
    head, *args = name.split(":")
    nums = [int(a) for a in args]
    builders = {
        "simplex_boundary": lambda: boundary_simplex(*nums),
        "sigma": lambda: sigma(*nums),
        "s0": s0,
        "octahedron": octahedron,
        "octahedron_subdivided": lambda: stellar_subdivide(octahedron(), (1, 3, 5)),
        "cycle": lambda: cycle(*nums),
        "stacked": lambda: stacked_sphere(*nums),
        "rp2": rp2_six_vertex,
        "rp2_suspension": lambda: suspension(rp2_six_vertex()),
    }
    if head not in builders:
        raise KeyError(f"unknown fixture {name!r}")
    try:
        return builders[head]()
    except TypeError as exc:
        raise KeyError(f"bad parameters for fixture {name!r}") from exc


FIXTURE_NAMES = (
    "s0",
    "simplex_boundary:2",
    "simplex_boundary:3",
    "simplex_boundary:4",
    "sigma:2",
    "sigma:3",
    "sigma:4",
    "cycle:4",
    "cycle:5",
    "octahedron",
    "octahedron_subdivided",
    "stacked:3:1",
    "stacked:3:2",
    "rp2",
    "rp2_suspension",
)
