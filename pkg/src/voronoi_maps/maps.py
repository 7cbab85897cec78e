"""Planar maps as rotation systems, and the two corner-chord bijections.

Conventions
-----------
* Darts are ``0 .. 2E-1``; ``alpha`` pairs the two darts of an edge and
  ``sigma`` turns counterclockwise around the origin vertex.
* Faces are orbits of ``phi = sigma o alpha``.  Following ``phi`` keeps the face
  on the right of each dart, so the corners of a face come out in clockwise
  order around it.
* The corner of dart ``e`` is the angular sector swept counterclockwise from
  ``sigma^-1(e)`` to ``e``.  It lies in the face of ``e``.
* Vertices and faces are numbered by the smallest dart they contain.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property

SCHEMA_VERSION = 1


class MapDomainError(ValueError):
    """Input map violates the preconditions of a construction."""


def _orbits(perm) -> list[list[int]]:
    seen = [False] * len(perm)
    out = []
    for d in range(len(perm)):
        if seen[d]:
            continue
        orbit = []
        x = d
        while not seen[x]:
            seen[x] = True
            orbit.append(x)
            x = perm[x]
        out.append(orbit)
    return out


def _inverse(perm) -> list[int]:
    inv = [0] * len(perm)
    for i, p in enumerate(perm):
        inv[p] = i
    return inv


@dataclass(frozen=True, eq=False)
class PlanarMap:
    """Rotation system with optional integer labels (one per vertex)."""

    alpha: tuple
    sigma: tuple
    labels: tuple | None = None

    def __post_init__(self):
        object.__setattr__(self, "alpha", tuple(self.alpha))
        object.__setattr__(self, "sigma", tuple(self.sigma))
        if self.labels is not None:
            object.__setattr__(self, "labels", tuple(self.labels))

    @classmethod
    def from_cycles(cls, alpha_pairs, sigma_cycles, labels=None) -> "PlanarMap":
        """Build from edge pairs and per-vertex ccw dart cycles.

        ``labels`` (if given) is aligned with ``sigma_cycles``.
        """
        n = 2 * len(alpha_pairs)
        alpha = [-1] * n
        for a, b in alpha_pairs:
            alpha[a] = b
            alpha[b] = a
        sigma = [-1] * n
        for cyc in sigma_cycles:
            for i, d in enumerate(cyc):
                sigma[d] = cyc[(i + 1) % len(cyc)]
        m = cls(tuple(alpha), tuple(sigma))
        if labels is None:
            return m
        if len(labels) != len(sigma_cycles):
            raise MapDomainError("labels must align with sigma cycles")
        by_vertex = [0] * len(sigma_cycles)
        for cyc, lab in zip(sigma_cycles, labels):
            by_vertex[m.vertex_of[cyc[0]]] = lab
        return m.with_labels(by_vertex)

    def with_labels(self, labels) -> "PlanarMap":
        return PlanarMap(self.alpha, self.sigma, tuple(labels))

    # structure
    @property
    def n_darts(self) -> int:
        return len(self.alpha)

    @property
    def n_edges(self) -> int:
        return len(self.alpha) // 2

    @cached_property
    def vertices(self) -> list[list[int]]:
        return _orbits(self.sigma)

    @cached_property
    def vertex_of(self) -> list[int]:
        out = [0] * self.n_darts
        for i, orb in enumerate(self.vertices):
            for d in orb:
                out[d] = i
        return out

    @cached_property
    def phi(self) -> tuple:
        return tuple(self.sigma[self.alpha[d]] for d in range(self.n_darts))

    @cached_property
    def faces(self) -> list[list[int]]:
        return _orbits(self.phi)

    @cached_property
    def face_of(self) -> list[int]:
        out = [0] * self.n_darts
        for i, orb in enumerate(self.faces):
            for d in orb:
                out[d] = i
        return out

    @cached_property
    def sigma_inv(self) -> list[int]:
        return _inverse(self.sigma)

    @property
    def n_vertices(self) -> int:
        return len(self.vertices)

    @property
    def n_faces(self) -> int:
        return len(self.faces)

    def origin(self, d: int) -> int:
        return self.vertex_of[d]

    def target(self, d: int) -> int:
        return self.vertex_of[self.alpha[d]]

    def label(self, v: int) -> int:
        if self.labels is None:
            raise MapDomainError("map carries no labels")
        return self.labels[v]

    def corner_label(self, d: int) -> int:
        return self.labels[self.vertex_of[d]]

    def face_degree(self, f: int) -> int:
        return len(self.faces[f])

    def edges(self) -> list[tuple[int, int]]:
        return [(d, self.alpha[d]) for d in range(self.n_darts) if d < self.alpha[d]]

    def neighbours(self, v: int) -> list[int]:
        return [self.target(d) for d in self.vertices[v]]

    def __eq__(self, other):
        if not isinstance(other, PlanarMap):
            return NotImplemented
        return (self.alpha, self.sigma, self.labels) == (other.alpha, other.sigma, other.labels)

    def __hash__(self):
        return hash((self.alpha, self.sigma, self.labels))


def validate(m: PlanarMap) -> list[str]:
    """Diagnostics for a rotation system; empty iff it is a connected planar map."""
    diags = []
    n = len(m.alpha)
    if len(m.sigma) != n:
        return ["size mismatch: alpha and sigma differ in length"]
    if n == 0 or n % 2:
        return ["dart count must be positive and even"]
    if sorted(m.alpha) != list(range(n)):
        return ["involution violation: alpha is not a permutation"]
    for d in range(n):
        if m.alpha[d] == d:
            diags.append(f"involution violation: alpha fixes dart {d}")
            break
        if m.alpha[m.alpha[d]] != d:
            diags.append(f"involution violation: alpha(alpha({d})) != {d}")
            break
    if sorted(m.sigma) != list(range(n)):
        diags.append("sigma is not a permutation")
    if diags:
        return diags
    seen = {0}
    stack = [0]
    while stack:
        d = stack.pop()
        for e in (m.sigma[d], m.alpha[d]):
            if e not in seen:
                seen.add(e)
                stack.append(e)
    if len(seen) != n:
        diags.append("transitivity violation: map is not connected")
        return diags
    euler = m.n_vertices - m.n_edges + m.n_faces
    if euler != 2:
        diags.append(f"Euler violation: V - E + F = {euler}, expected 2")
    if m.labels is not None and len(m.labels) != m.n_vertices:
        diags.append("label count does not match vertex count")
    return diags


def distances(m: PlanarMap, source: int) -> list[int]:
    """BFS graph distances from vertex ``source`` (``-1`` if unreachable)."""
    dist = [-1] * m.n_vertices
    dist[source] = 0
    q = deque([source])
    while q:
        v = q.popleft()
        for w in m.neighbours(v):
            if dist[w] < 0:
                dist[w] = dist[v] + 1
                q.append(w)
    return dist


# --------------------------------------------------------------------------
# decorated maps
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class BipointedQuad:
    map: PlanarMap
    v1: int
    v2: int

    def check(self) -> list[str]:
        diags = validate(self.map)
        if diags:
            return diags
        for f in range(self.map.n_faces):
            if self.map.face_degree(f) != 4:
                diags.append(f"face {f} has degree {self.map.face_degree(f)}")
        if self.v1 == self.v2:
            diags.append("marked vertices coincide")
        elif distances(self.map, self.v1)[self.v2] % 2:
            diags.append("d(v1, v2) is odd")
        return diags


@dataclass(frozen=True)
class IltFM:
    """Labelled map with two faces ``f1`` and ``f2`` (face indices)."""

    map: PlanarMap
    f1: int
    f2: int

    @property
    def n_edges(self) -> int:
        return self.map.n_edges

    def face_vertices(self, f: int) -> set[int]:
        return {self.map.vertex_of[d] for d in self.map.faces[f]}

    def loop_edges(self) -> list[tuple[int, int]]:
        fo = self.map.face_of
        return [(d, e) for d, e in self.map.edges() if fo[d] != fo[e]]

    def loop_vertices(self) -> set[int]:
        vo = self.map.vertex_of
        return {vo[d] for edge in self.loop_edges() for d in edge}

    def check(self) -> list[str]:
        m = self.map
        diags = validate(m)
        if diags:
            return diags
        if m.labels is None:
            return ["missing labels"]
        if m.n_faces != 2 or {self.f1, self.f2} != {0, 1}:
            return [f"expected exactly two distinguished faces, found {m.n_faces}"]
        for d, e in m.edges():
            if abs(m.corner_label(d) - m.corner_label(e)) > 1:
                diags.append(f"edge {d}-{e} has label jump > 1")
        for name, f in (("f1", self.f1), ("f2", self.f2)):
            lo = min(m.labels[v] for v in self.face_vertices(f))
            if lo != 1:
                diags.append(f"minimum label around {name} is {lo}, expected 1")
        return diags


@dataclass(frozen=True)
class GeneralBipointedMap:
    map: PlanarMap
    v1: int
    v2: int


def _require(diags: list[str]):
    if diags:
        raise MapDomainError("; ".join(diags))


def label_bipointed(q: BipointedQuad) -> BipointedQuad:
    """Attach ``l(v) = min(d(v, v1), d(v, v2))``."""
    _require(validate(q.map))
    d1 = distances(q.map, q.v1)
    d2 = distances(q.map, q.v2)
    if d1[q.v2] % 2:
        raise MapDomainError("d(v1, v2) is odd; only the even case is supported")
    labels = [min(a, b) for a, b in zip(d1, d2)]
    return BipointedQuad(q.map.with_labels(labels), q.v1, q.v2)


def _ensure_labelled(q: BipointedQuad) -> BipointedQuad:
    if q.map.labels is None:
        return label_bipointed(q)
    return q


# --------------------------------------------------------------------------
# chord constructions
# --------------------------------------------------------------------------


def _chord_corners(m: PlanarMap, face: list[int], rule: str) -> tuple[int, int]:
    """Positions ``a < b`` in ``face`` of the two corners joined by the chord.

    ``rule='down'`` picks corners followed (in face order) by a smaller label,
    ``rule='up'`` the complementary corners followed by a larger label.
    """
    labs = [m.corner_label(d) for d in face]
    if len(labs) != 4:
        raise MapDomainError("chord rules apply to quadrangular faces only")
    if rule == "down":
        picks = [k for k in range(4) if labs[(k + 1) % 4] < labs[k]]
    else:
        picks = [k for k in range(4) if labs[(k + 1) % 4] > labs[k]]
    if len(picks) != 2 or any(abs(labs[(k + 1) % 4] - labs[k]) != 1 for k in range(4)):
        raise MapDomainError(f"face labels {labs} are not a valid quadrangle labelling")
    return picks[0], picks[1]


def _right_side(a: int, b: int, k: int, size: int = 4) -> bool:
    """Whether corner position ``k`` is on the right of the chord ``a -> b``."""
    return 0 < (k - b) % size < (a - b) % size


@dataclass
class _ChordImage:
    map: PlanarMap
    new_vertex: dict  # old vertex -> new vertex
    chord_darts: dict  # old face index -> (dart at corner a, dart at corner b)
    corners: dict  # old face index -> (a, b)


def _chord_map(q: BipointedQuad, rule: str) -> _ChordImage:
    m = q.map
    corners = {}
    at_corner = {}  # old dart (corner) -> new dart
    pairs = []
    for fi, face in enumerate(m.faces):
        a, b = _chord_corners(m, face, rule)
        corners[fi] = (a, b)
        da, db = 2 * fi, 2 * fi + 1
        at_corner[face[a]] = da
        at_corner[face[b]] = db
        pairs.append((da, db))
    cycles = []
    owners = []
    for v, orb in enumerate(m.vertices):
        cyc = [at_corner[e] for e in orb if e in at_corner]
        if cyc:
            cycles.append(cyc)
            owners.append(v)
    labels = [m.labels[v] for v in owners]
    new = PlanarMap.from_cycles(pairs, cycles, labels)
    new_vertex = {v: new.vertex_of[cyc[0]] for v, cyc in zip(owners, cycles)}
    chord_darts = {fi: (2 * fi, 2 * fi + 1) for fi in corners}
    return _ChordImage(new, new_vertex, chord_darts, corners)


def _face_containing(q: BipointedQuad, img: _ChordImage, v: int) -> int:
    """New face that contains the deleted vertex ``v``."""
    m = q.map
    found = set()
    for e in m.vertices[v]:
        fi = m.face_of[e]
        face = m.faces[fi]
        k = face.index(e)
        a, b = img.corners[fi]
        da, db = img.chord_darts[fi]
        dart = da if _right_side(a, b, k) else db
        found.add(img.map.face_of[dart])
    if len(found) != 1:
        raise AssertionError(f"vertex {v} is split between new faces {found}")
    return found.pop()


def miermont_forward(q: BipointedQuad) -> IltFM:
    """Quadrangulation with two marked points to its two-face labelled map."""
    q = _ensure_labelled(q)
    _require(q.check())
    img = _chord_map(q, "down")
    f1 = _face_containing(q, img, q.v1)
    f2 = _face_containing(q, img, q.v2)
    out = IltFM(img.map, f1, f2)
    diags = out.check()
    if diags:
        raise AssertionError("forward image is not a valid two-face map: " + "; ".join(diags))
    return out


def miermont_inverse(t: IltFM) -> BipointedQuad:
    """Two-face labelled map back to the bi-pointed quadrangulation."""
    _require(t.check())
    m = t.map
    n = m.n_darts
    # target corner of each corner: the first corner with label one less,
    # searching backwards along the face; None means the new vertex v_i
    target = {}
    sources: dict[int, list[int]] = {e: [] for e in range(n)}
    pos = {}
    for face in m.faces:
        for i, e in enumerate(face):
            pos[e] = i
    for face in m.faces:
        size = len(face)
        for i, e in enumerate(face):
            lab = m.corner_label(e)
            if lab == 1:
                target[e] = None
                continue
            for step in range(1, size):
                c = face[(i - step) % size]
                if m.corner_label(c) == lab - 1:
                    target[e] = c
                    sources[c].append(e)
                    break
            else:
                raise MapDomainError(f"corner {e} has no successor corner")
    # quad darts: 2e is emitted at corner e, 2e + 1 is its far end
    pairs = [(2 * e, 2 * e + 1) for e in range(n)]
    cycles = []
    labels = []
    for orb in m.vertices:
        cyc = []
        for e in orb:
            size = len(m.faces[m.face_of[e]])
            cyc.append(2 * e)
            srcs = sorted(sources[e], key=lambda s: (pos[s] - pos[e]) % size, reverse=True)
            cyc.extend(2 * s + 1 for s in srcs)
        cycles.append(cyc)
        labels.append(m.labels[m.vertex_of[orb[0]]])
    extra = []
    for f in (t.f1, t.f2):
        face = m.faces[f]
        ones = [e for e in reversed(face) if target[e] is None]
        if not ones:
            raise MapDomainError("face without a label-1 corner")
        extra.append([2 * e + 1 for e in ones])
    cycles.extend(extra)
    labels.extend([0, 0])
    quad = PlanarMap.from_cycles(pairs, cycles, labels)
    v1 = quad.vertex_of[extra[0][0]]
    v2 = quad.vertex_of[extra[1][0]]
    # far ends of emitted darts landing on ordinary corners
    for e, c in target.items():
        if c is not None and quad.vertex_of[2 * e + 1] != quad.vertex_of[2 * c]:
            raise AssertionError("inverse construction mis-wired an edge")
    out = BipointedQuad(quad, v1, v2)
    diags = out.check()
    if diags:
        raise AssertionError("inverse image is not a quadrangulation: " + "; ".join(diags))
    return out


def ambjorn_budd(q: BipointedQuad) -> GeneralBipointedMap:
    """Complementary chord rule; local maxima of the labelling disappear."""
    q = _ensure_labelled(q)
    _require(q.check())
    img = _chord_map(q, "up")
    _require(validate(img.map))
    return GeneralBipointedMap(img.map, img.new_vertex[q.v1], img.new_vertex[q.v2])


# --------------------------------------------------------------------------
# cells, parity, rebound
# --------------------------------------------------------------------------


def voronoi_areas(t: IltFM) -> tuple[Fraction, Fraction]:
    """Edges strictly inside each face, plus half of every loop edge."""
    fo = t.map.face_of
    inner = {t.f1: 0, t.f2: 0}
    loop = 0
    for d, e in t.map.edges():
        if fo[d] == fo[e]:
            inner[fo[d]] += 1
        else:
            loop += 1
    half = Fraction(loop, 2)
    return inner[t.f1] + half, inner[t.f2] + half


def parity_classify(t: IltFM) -> tuple[str, int]:
    """``('even' | 'odd', s)`` with ``s`` the minimal loop label."""
    m = t.map
    loop = t.loop_edges()
    s = min(m.corner_label(d) for edge in loop for d in edge)
    odd = any(m.corner_label(d) == s and m.corner_label(e) == s for d, e in loop)
    return ("odd" if odd else "even"), s


@dataclass
class ReboundReport:
    violations: list = field(default_factory=list)
    delta1: list = field(default_factory=list)
    delta2: list = field(default_factory=list)
    edge_side: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


def check_rebound(q: BipointedQuad) -> ReboundReport:
    """Check that each AB vertex sits in the cell of the closer marked point.

    Every AB edge is placed in ``f1``, ``f2`` or ``both`` (crossing the loop).
    A vertex incident to an edge lying in ``f_i`` must be weakly closer to
    ``v_i``, so one touching edges in ``f1`` and in ``f2`` is equidistant.
    """
    q = _ensure_labelled(q)
    mq = q.map
    down = _chord_map(q, "down")
    up = _chord_map(q, "up")
    f1 = _face_containing(q, down, q.v1)
    f2 = _face_containing(q, down, q.v2)
    side_name = {f1: 1, f2: 2}
    tm = down.map
    ab = up.map
    edge_side = []
    vertex_sides: dict[int, set] = {}
    for fi in range(mq.n_faces):
        a, b = down.corners[fi]
        da, db = down.chord_darts[fi]
        left, right = tm.face_of[db], tm.face_of[da]  # faces on each side of a -> b
        p, r = up.corners[fi]
        if left == right:
            side = side_name[left]
        else:
            rp, rr = _right_side(a, b, p), _right_side(a, b, r)
            if rp != rr:
                side = "both"
            else:
                side = side_name[right] if rp else side_name[left]
        edge_side.append(side)
        for d in up.chord_darts[fi]:
            vertex_sides.setdefault(ab.vertex_of[d], set()).add(side)
    v1 = up.new_vertex[q.v1]
    v2 = up.new_vertex[q.v2]
    d1 = distances(ab, v1)
    d2 = distances(ab, v2)
    report = ReboundReport(delta1=d1, delta2=d2, edge_side=edge_side)
    for v, sides in sorted(vertex_sides.items()):
        # edges crossing the loop join the two cells and constrain nothing
        ok = (1 not in sides or d1[v] <= d2[v]) and (2 not in sides or d2[v] <= d1[v])
        if not ok:
            report.violations.append(
                {"vertex": v, "sides": sorted(map(str, sides)), "delta1": d1[v], "delta2": d2[v]}
            )
    return report


# --------------------------------------------------------------------------
# canonical codes
# --------------------------------------------------------------------------


def _dart_tags(m: PlanarMap, face_tags=None, vertex_marks=None):
    lab = m.labels
    tags = []
    for d in range(m.n_darts):
        v = m.vertex_of[d]
        tags.append((
            0 if lab is None else lab[v],
            0 if face_tags is None else face_tags.get(m.face_of[d], 0),
            0 if vertex_marks is None else vertex_marks.get(v, 0),
        ))
    return tags


def rooted_code(m: PlanarMap, root: int, tags=None) -> tuple:
    """BFS relabelling of darts from ``root``; equal codes iff rooted-isomorphic."""
    if tags is None:
        tags = _dart_tags(m)
    num = {root: 0}
    order = [root]
    i = 0
    while i < len(order):
        d = order[i]
        i += 1
        for e in (m.sigma[d], m.alpha[d]):
            if e not in num:
                num[e] = len(order)
                order.append(e)
    return tuple((num[m.sigma[d]], num[m.alpha[d]]) + tags[d] for d in order)


def canonical_code(m: PlanarMap, tags=None) -> tuple:
    if tags is None:
        tags = _dart_tags(m)
    return min(rooted_code(m, r, tags) for r in range(m.n_darts))


def iltfm_code(t: IltFM, root: int | None = None) -> tuple:
    tags = _dart_tags(t.map, face_tags={t.f1: 1, t.f2: 2})
    if root is None:
        return canonical_code(t.map, tags)
    return rooted_code(t.map, root, tags)


def quad_code(q: BipointedQuad) -> tuple:
    return canonical_code(q.map, _dart_tags(q.map, vertex_marks={q.v1: 1, q.v2: 2}))


def general_code(g: GeneralBipointedMap) -> tuple:
    return canonical_code(g.map, _dart_tags(g.map, vertex_marks={g.v1: 1, g.v2: 2}))


# --------------------------------------------------------------------------
# exchange format
# --------------------------------------------------------------------------


def _map_payload(m: PlanarMap) -> dict:
    out = {
        "darts": m.n_darts,
        "alpha": [list(e) for e in m.edges()],
        "sigma": [list(orb) for orb in m.vertices],
    }
    if m.labels is not None:
        out["labels"] = list(m.labels)
    return out


def to_payload(obj) -> dict:
    if isinstance(obj, PlanarMap):
        body = {"kind": "planar_map", **_map_payload(obj)}
    elif isinstance(obj, BipointedQuad):
        body = {"kind": "bipointed_quad", **_map_payload(obj.map), "v1": obj.v1, "v2": obj.v2}
    elif isinstance(obj, GeneralBipointedMap):
        body = {"kind": "general_bipointed", **_map_payload(obj.map), "v1": obj.v1, "v2": obj.v2}
    elif isinstance(obj, IltFM):
        body = {"kind": "iltfm", **_map_payload(obj.map),
                "f1": obj.map.faces[obj.f1][0], "f2": obj.map.faces[obj.f2][0]}
    else:
        raise TypeError(f"cannot serialise {type(obj).__name__}")
    return {"schema_version": SCHEMA_VERSION, **body}


def serialize(obj) -> str:
    return json.dumps(to_payload(obj), sort_keys=True, separators=(",", ":"))


def from_payload(data: dict):
    if data.get("schema_version") != SCHEMA_VERSION:
        raise MapDomainError(f"unsupported schema_version {data.get('schema_version')!r}")
    try:
        pairs = [tuple(p) for p in data["alpha"]]
        cycles = [list(c) for c in data["sigma"]]
        n = int(data["darts"])
    except (KeyError, TypeError, ValueError) as exc:
        raise MapDomainError(f"malformed map document: {exc}") from exc
    flat = sorted(d for p in pairs for d in p)
    if any(len(p) != 2 for p in pairs) or flat != list(range(n)):
        raise MapDomainError("involution violation: alpha pairs do not cover the darts exactly once")
    if any(a == b for a, b in pairs):
        raise MapDomainError("involution violation: alpha pairs a dart with itself")
    if sorted(d for c in cycles for d in c) != list(range(n)):
        raise MapDomainError("sigma cycles do not cover the darts exactly once")
    m = PlanarMap.from_cycles(pairs, cycles, data.get("labels"))
    diags = validate(m)
    if diags:
        raise MapDomainError("; ".join(diags))
    kind = data.get("kind", "planar_map")
    if kind == "planar_map":
        return m
    if kind in ("bipointed_quad", "general_bipointed"):
        # vertex indices refer to the cycle order of the document
        v1 = m.vertex_of[cycles[data["v1"]][0]]
        v2 = m.vertex_of[cycles[data["v2"]][0]]
        cls = BipointedQuad if kind == "bipointed_quad" else GeneralBipointedMap
        return cls(m, v1, v2)
    if kind == "iltfm":
        return IltFM(m, m.face_of[data["f1"]], m.face_of[data["f2"]])
    raise MapDomainError(f"unknown kind {kind!r}")


def parse(text: str):
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MapDomainError(f"not a JSON document: {exc}") from exc
    if not isinstance(data, dict):
        raise MapDomainError("map document must be a JSON object")
    return from_payload(data)


# --------------------------------------------------------------------------
# small examples
# --------------------------------------------------------------------------


def path3() -> BipointedQuad:
    """The path a - b - c marked at its ends: one quadrangular face."""
    m = PlanarMap.from_cycles([(0, 1), (2, 3)], [[0], [1, 2], [3]])
    return BipointedQuad(m, m.vertex_of[0], m.vertex_of[3])


def self_loop(label: int = 1) -> IltFM:
    m = PlanarMap.from_cycles([(0, 1)], [[0, 1]], [label])
    return IltFM(m, m.face_of[1], m.face_of[0])
