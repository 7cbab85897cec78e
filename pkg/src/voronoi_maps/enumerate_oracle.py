"""Brute-force enumeration of rooted two-face labelled maps.

A rooted object is a tuple ``(loop labels, left trees, right trees)``: a cycle
of ``L`` loop vertices with cyclic label increments in ``{-1, 0, 1}``, and at
each loop vertex one labelled plane tree hanging into ``f1`` and one into
``f2``.  The root is the loop edge from vertex 0 to vertex 1, with ``f1`` on
its left.  Distinct tuples are distinct rooted maps, and each unrooted map with
a ``k``-fold rotational symmetry is hit ``L / k`` times, so weighting every
tuple by ``1/L`` produces the ``1/k`` symmetry factor.
"""

from __future__ import annotations

import itertools
import os
from collections import defaultdict
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .exact_arith import BiSeries
from .maps import IltFM, PlanarMap, iltfm_code, parity_classify

# a labelled plane tree is (label, (subtree, subtree, ...))
Tree = tuple


@lru_cache(maxsize=None)
def _trees_exact(edges: int, label: int, min_label: int) -> tuple:
    """All trees with exactly ``edges`` edges, root ``label``, labels >= ``min_label``."""
    if label < min_label:
        return ()
    return tuple((label, kids) for kids in _forests(edges, label, min_label))


@lru_cache(maxsize=None)
def _forests(edges: int, parent: int, min_label: int) -> tuple:
    """Ordered child sequences of a vertex labelled ``parent`` using ``edges`` edges."""
    if edges == 0:
        return ((),)
    out = []
    for first in range(1, edges + 1):
        heads = [
            t
            for lab in (parent - 1, parent, parent + 1)
            for t in _trees_exact(first - 1, lab, min_label)
        ]
        for rest in _forests(edges - first, parent, min_label):
            out.extend((h,) + rest for h in heads)
    return tuple(out)


def enum_labelled_trees(edge_budget: int, root_label: int, min_label: int | None = None):
    """Every labelled plane tree with at most ``edge_budget`` edges, each once.

    ``min_label=None`` drops the lower bound.
    """
    if edge_budget < 0:
        raise ValueError("edge_budget must be >= 0")
    lo = root_label - edge_budget - 1 if min_label is None else min_label
    for k in range(edge_budget + 1):
        yield from _trees_exact(k, root_label, lo)


def tree_size(t: Tree) -> int:
    return sum(1 + tree_size(c) for c in t[1])


def tree_min(t: Tree) -> int:
    return min([t[0]] + [tree_min(c) for c in t[1]])


@dataclass(frozen=True)
class RootedIltFM:
    iltfm: IltFM
    root: int
    loop_labels: tuple
    left: tuple
    right: tuple

    @property
    def loop_length(self) -> int:
        return len(self.loop_labels)

    def weight_exponents(self) -> tuple[int, int]:
        """``(i, j)`` of the monomial ``u^i v^j``."""
        a = sum(tree_size(t) for t in self.left)
        b = sum(tree_size(t) for t in self.right)
        L = self.loop_length
        return 2 * a + L, 2 * b + L


def build_iltfm(loop_labels, left, right) -> tuple[IltFM, int]:
    """Assemble the rotation system; returns the map and its root dart."""
    L = len(loop_labels)
    pairs = []
    nxt = [0]

    def new_edge():
        d = nxt[0]
        nxt[0] += 2
        pairs.append((d, d + 1))
        return d, d + 1

    fwd = [new_edge() for _ in range(L)]  # fwd[i] = (w_i -> w_{i+1}, reverse)
    cycles = []
    labels = []

    def hang(tree, up_dart) -> None:
        # up_dart points from the child back to its parent
        cyc = [up_dart]
        for child in tree[1]:
            down, up = new_edge()
            cyc.append(down)
            hang(child, up)
        cycles.append(cyc)
        labels.append(tree[0])

    loop_cycles = []
    for i in range(L):
        # ccw at w_i: forward loop dart, f1 trees, backward loop dart, f2 trees
        cyc = [fwd[i][0]]
        for child in left[i][1]:
            down, up = new_edge()
            cyc.append(down)
            hang(child, up)
        cyc.append(fwd[(i - 1) % L][1])
        for child in right[i][1]:
            down, up = new_edge()
            cyc.append(down)
            hang(child, up)
        loop_cycles.append(cyc)
    cycles = loop_cycles + cycles
    labels = list(loop_labels) + labels
    m = PlanarMap.from_cycles(pairs, cycles, labels)
    root = fwd[0][0]
    f1 = m.face_of[fwd[0][1]]
    f2 = m.face_of[root]
    return IltFM(m, f1, f2), root


def _loop_label_sequences(L: int, max_min: int):
    """Cyclic label words of length ``L``, steps in {-1,0,1}, min label in [1, max_min]."""
    for first in range(1, max_min + L):
        for steps in itertools.product((-1, 0, 1), repeat=L - 1):
            labs = [first]
            for s in steps:
                labs.append(labs[-1] + s)
            if abs(labs[-1] - first) > 1 or not 1 <= min(labs) <= max_min:
                continue
            yield tuple(labs)


def _compositions(total: int, parts: int):
    if parts == 1:
        yield (total,)
        return
    for k in range(total + 1):
        for rest in _compositions(total - k, parts - 1):
            yield (k,) + rest


def _tree_choices(labels, sizes):
    pools = [_trees_exact(n, lab, 1) for lab, n in zip(labels, sizes)]
    return itertools.product(*pools)


def _enum_for_loop(E: int, labs: tuple):
    """Rooted objects with a given loop labelling and exactly ``E`` edges."""
    L = len(labs)
    budget = E - L
    out = []
    for split in range(budget + 1):
        for lsizes in _compositions(split, L):
            for rsizes in _compositions(budget - split, L):
                for left in _tree_choices(labs, lsizes):
                    lmin = min(min(labs), min(tree_min(t) for t in left))
                    if lmin != 1:
                        continue
                    for right in _tree_choices(labs, rsizes):
                        rmin = min(min(labs), min(tree_min(t) for t in right))
                        if rmin != 1:
                            continue
                        out.append((labs, left, right))
    return out


def _work_items(E: int):
    for L in range(1, E + 1):
        # a face reaching label 1 from loop label l needs l - 1 tree edges
        yield from _loop_label_sequences(L, E - L + 1)


def _threads() -> int:
    try:
        return max(1, int(os.environ.get("VORONOI_MAPS_THREADS", "1")))
    except ValueError:
        return 1


def _raw_tuples(E: int):
    items = list(_work_items(E))
    n = _threads()
    if n > 1 and len(items) > 1:
        with ProcessPoolExecutor(max_workers=n) as pool:
            chunks = pool.map(_enum_for_loop, [E] * len(items), items)
            for chunk in chunks:
                yield from chunk
    else:
        for labs in items:
            yield from _enum_for_loop(E, labs)


def enum_rooted_iltfm(E: int, check_unique: bool = True):
    """Every rooted two-face labelled map with exactly ``E`` edges, once each."""
    if E < 1:
        raise ValueError("E must be >= 1")
    seen = set() if check_unique else None
    for labs, left, right in _raw_tuples(E):
        t, root = build_iltfm(labs, left, right)
        if seen is not None:
            code = iltfm_code(t, root)
            if code in seen:
                raise AssertionError("enumeration emitted a duplicate rooted map")
            seen.add(code)
        yield RootedIltFM(t, root, labs, left, right)


def oracle_strata(E: int) -> dict[tuple[int, int], Fraction]:
    """Weight per monomial at total area ``E``."""
    acc = defaultdict(Fraction)
    for r in enum_rooted_iltfm(E, check_unique=False):
        acc[r.weight_exponents()] += Fraction(1, r.loop_length)
    return dict(acc)


def oracle_F(E_max: int) -> BiSeries:
    """``sum u^{2a+L} v^{2b+L} / L`` over rooted objects with at most ``E_max`` edges."""
    terms = {}
    for E in range(1, E_max + 1):
        terms.update(oracle_strata(E))
    return BiSeries.from_terms(terms, 2 * E_max)


def oracle_parity_split(E_max: int) -> tuple[BiSeries, BiSeries]:
    even = defaultdict(Fraction)
    odd = defaultdict(Fraction)
    for E in range(1, E_max + 1):
        for r in enum_rooted_iltfm(E, check_unique=False):
            kind, _ = parity_classify(r.iltfm)
            target = even if kind == "even" else odd
            target[r.weight_exponents()] += Fraction(1, r.loop_length)
    order = 2 * E_max
    return BiSeries.from_terms(dict(even), order), BiSeries.from_terms(dict(odd), order)


def unrooted_classes(E: int) -> dict:
    """Canonical code -> one representative, over all rooted objects with ``E`` edges."""

    out = {}
    for r in enum_rooted_iltfm(E, check_unique=False):
        out.setdefault(iltfm_code(r.iltfm), r.iltfm)
    return out
