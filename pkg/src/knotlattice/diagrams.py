"""Labelled uni-trivalent diagrams and their isomorphism classes.

A diagram of degree ``n`` lives over a fixed label set: with leg bound
``k`` there are ``N = 3n - k`` edge labels, and edge ``i`` owns the
half-edge pair ``{2i-1, 2i}``.  A labelled diagram uses a subset of the
labels (its "visible" edges); the remaining labels are "absent".  The
half-edges of the visible edges are partitioned into univalent vertices
(legs, singletons, carrying a cyclic order) and trivalent vertices
(triples).  Legs are thought of as sitting on an oriented circle in the
order given.

Vertex orientations: each trivalent vertex is stored as a 3-tuple whose
rotation class is the cyclic order of its half-edges.  Reversing one
vertex's cyclic order flips the sign of the diagram in the quotient
algebra; isomorphism and automorphism counts ignore orientations.

Everything here is immutable and side-effect free; canonical forms are
cached, so diagrams are cheap to re-canonicalize.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass
from functools import lru_cache
from math import factorial
from typing import Iterable, Iterator, Sequence

Triple = tuple[int, int, int]


def edge_label(h: int) -> int:
    """Label of the edge owning half-edge ``h``."""
    return (h + 1) // 2


def partner(h: int) -> int:
    """The other half-edge of ``h``'s edge."""
    return h - 1 if h % 2 == 0 else h + 1


def edge_halves(i: int) -> tuple[int, int]:
    return (2 * i - 1, 2 * i)


def _rotate_min(seq: Sequence[int]) -> tuple[int, ...]:
    """Rotate a cyclic sequence so its minimum entry comes first."""
    seq = tuple(seq)
    if not seq:
        return seq
    j = seq.index(min(seq))
    return seq[j:] + seq[:j]


def cyclic_parity(tri: Sequence[int]) -> int:
    """+1 if the cyclic order of ``tri`` agrees with ascending order, else -1."""
    a, b, c = _rotate_min(tri)
    return 1 if b < c else -1


@dataclass(frozen=True)
class LabelledDiagram:
    """A labelled diagram: degree, leg bound, legs in cyclic order,
    oriented trivalent triples, and the visible edge labels.

    ``legs`` is rotated so the smallest half-edge comes first; each triple
    is rotated likewise and the triples are sorted.  These normalizations
    preserve the cyclic data, so construction never changes meaning.
    """

    n: int
    k: int
    legs: tuple[int, ...]
    triples: tuple[Triple, ...]
    visible: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "legs", _rotate_min(self.legs))
        tris = tuple(sorted(tuple(_rotate_min(t)) for t in self.triples))
        object.__setattr__(self, "triples", tris)
        object.__setattr__(self, "visible", tuple(sorted(self.visible)))

    # -- basic derived data -------------------------------------------------

    @property
    def num_labels(self) -> int:
        return 3 * self.n - self.k

    @property
    def num_legs(self) -> int:
        return len(self.legs)

    @property
    def absent(self) -> tuple[int, ...]:
        vis = set(self.visible)
        return tuple(i for i in range(1, self.num_labels + 1) if i not in vis)

    def vertices(self) -> list[tuple[int, ...]]:
        """All vertices, legs first (in sigma order) then triples."""
        return [(h,) for h in self.legs] + [t for t in self.triples]

    def used_halves(self) -> set[int]:
        out = set(self.legs)
        for t in self.triples:
            out.update(t)
        return out

    def vertex_of(self, h: int) -> tuple[int, ...]:
        if h in self._leg_set():
            return (h,)
        for t in self.triples:
            if h in t:
                return t
        raise KeyError(h)

    def _leg_set(self) -> frozenset[int]:
        return frozenset(self.legs)

    def sigma_successor(self, h: int) -> int:
        i = self.legs.index(h)
        return self.legs[(i + 1) % len(self.legs)]

    def with_reference_orientation(self) -> "LabelledDiagram":
        """Same diagram with every vertex orientation set to ascending order."""
        return LabelledDiagram(
            self.n, self.k, self.legs,
            tuple(tuple(sorted(t)) for t in self.triples), self.visible)

    def orientation_parity(self) -> int:
        """Sign of the stored orientation against the ascending reference."""
        s = 1
        for t in self.triples:
            s *= cyclic_parity(t)
        return s


# -- validation --------------------------------------------------------------


def validate(d: LabelledDiagram, require_triply_connected: bool = True) -> list[str]:
    """Check the defining conditions; returns a list of violations (empty = ok).

    Never raises on bad combinatorial data; structural nonsense (indices out
    of range, repeated half-edges) is reported the same way.
    """
    errs: list[str] = []
    if d.n < 1:
        errs.append("degree must be >= 1")
        return errs
    if d.k > 2 * d.n:
        errs.append("k must be <= 2n")
    nlab = d.num_labels
    all_halves = list(d.legs) + [h for t in d.triples for h in t]
    if any(h < 1 or h > 2 * nlab for h in all_halves):
        errs.append("half-edge index out of range")
        return errs
    if len(set(all_halves)) != len(all_halves):
        errs.append("legs and triples are not disjoint singletons/triples")
        return errs
    if any(len(set(t)) != 3 for t in d.triples):
        errs.append("trivalent vertex with repeated half-edge")
        return errs
    if any(i < 1 or i > nlab for i in d.visible):
        errs.append("visible edge label out of range")
        return errs

    used = set(all_halves)
    visible_halves = {h for i in d.visible for h in edge_halves(i)}
    if used != visible_halves:
        errs.append("vertices do not partition the visible half-edges")
    if len(d.legs) + len(d.triples) != 2 * d.n:
        errs.append("vertex count differs from 2n")
    for t in d.triples:
        if len({edge_label(h) for h in t}) != 3:
            errs.append(f"trivalent vertex {t} does not meet three different edges")
    for comp in components(d):
        if not any(len(v) == 1 for v in comp):
            errs.append("connected component without univalent vertex")
    if require_triply_connected and not errs and not is_triply_connected(d):
        errs.append("not triply connected to the legs")
    return errs


def edge_counts(d: LabelledDiagram, A: Iterable[tuple[int, ...]]) -> tuple[int, int]:
    """For a set ``A`` of vertices, count (interior edges, boundary edges).

    Interior edges have both half-edges in ``A``; boundary edges exactly one.
    Raises on an empty ``A`` or on vertices not belonging to ``d``.
    """
    verts = list(A)
    if not verts:
        raise ValueError("vertex subset must be nonempty")
    dverts = set(d.vertices())
    for v in verts:
        if tuple(v) not in dverts:
            raise ValueError(f"{v} is not a vertex of the diagram")
    inside = {h for v in verts for h in v}
    e_int = e_bdy = 0
    for i in d.visible:
        a, b = edge_halves(i)
        c = (a in inside) + (b in inside)
        if c == 2:
            e_int += 1
        elif c == 1:
            e_bdy += 1
    return e_int, e_bdy


def is_triply_connected(d: LabelledDiagram) -> bool:
    """True if every set of >=2 trivalent vertices has >=3 outgoing edges.

    Exhaustive subset scan; fine for the <=6 trivalent vertices we ever see.
    """
    ts = d.triples
    for r in range(2, len(ts) + 1):
        for sub in itertools.combinations(ts, r):
            if edge_counts(d, sub)[1] < 3:
                return False
    return True


def components(d: LabelledDiagram) -> list[list[tuple[int, ...]]]:
    """Connected components as lists of vertices (graph connectivity only;
    the circle carrying the legs does not connect them)."""
    verts = d.vertices()
    owner = {}
    for v in verts:
        for h in v:
            owner[h] = v
    parent = {v: v for v in verts}

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for i in d.visible:
        a, b = edge_halves(i)
        ra, rb = find(owner[a]), find(owner[b])
        if ra != rb:
            parent[ra] = rb
    groups: dict[tuple, list] = {}
    for v in verts:
        groups.setdefault(find(v), []).append(v)
    return list(groups.values())


def _component_is_tree(d: LabelledDiagram, comp: list[tuple[int, ...]]) -> bool:
    inside = {h for v in comp for h in v}
    n_edges = sum(1 for i in d.visible if edge_halves(i)[0] in inside)
    return n_edges == len(comp) - 1


def has_four_leg_property(d: LabelledDiagram) -> bool:
    """True if every component containing a cycle has at least 4 legs."""
    for comp in components(d):
        if _component_is_tree(d, comp):
            continue
        if sum(1 for v in comp if len(v) == 1) < 4:
            return False
    return True


# -- canonical forms ----------------------------------------------------------
#
# A canonical run fixes a starting leg (rotation of sigma) and, each time a
# trivalent vertex is discovered, one of the two orders in which to push its
# remaining half-edges.  Edges are numbered in traversal order.  The minimal
# resulting encoding over all runs is a complete isomorphism invariant; the
# runs attaining it give exactly the automorphisms.


def _run(d: LabelledDiagram, start: int, bits: int):
    legs = d.legs[start:] + d.legs[:start]
    owner_triple: dict[int, Triple] = {}
    for t in d.triples:
        for h in t:
            owner_triple[h] = t
    edge_id: dict[int, int] = {}
    first_half: dict[int, int] = {}
    t_id: dict[Triple, int] = {}
    agenda = deque(legs)
    n_t = 0
    while agenda:
        h = agenda.popleft()
        lab = edge_label(h)
        if lab in edge_id:
            continue
        edge_id[lab] = len(edge_id) + 1
        first_half[lab] = h
        p = partner(h)
        t = owner_triple.get(p)
        if t is not None and t not in t_id:
            t_id[t] = n_t
            j = t.index(p)
            a, b = t[(j + 1) % 3], t[(j + 2) % 3]
            if (bits >> n_t) & 1:
                a, b = b, a
            n_t += 1
            agenda.append(a)
            agenda.append(b)

    def slot(h: int) -> int:
        lab = edge_label(h)
        return 2 * edge_id[lab] - (1 if h == first_half[lab] else 0)

    legs_enc = tuple(edge_id[edge_label(h)] for h in legs)
    tris_enc = tuple(sorted(tuple(sorted(edge_id[edge_label(h)] for h in t))
                            for t in d.triples))
    enc = (d.n, len(legs), legs_enc, tris_enc)
    # reversal pattern: per new edge id, whether the first-seen half is even
    rev = tuple(first_half[lab] % 2 == 0
                for lab in sorted(edge_id, key=edge_id.get))
    # orientation parity of each triple, pushed through the relabelling
    tri_par = tuple(cyclic_parity([slot(h) for h in t])
                    for t in sorted(d.triples, key=lambda t: t_id.get(t, 0)))
    halfmap = {h: slot(h) for h in d.used_halves()}
    return enc, rev, tri_par, halfmap


@lru_cache(maxsize=None)
def _scan(d: LabelledDiagram):
    u, nt = len(d.legs), len(d.triples)
    runs = [_run(d, s, b) for s in range(u) for b in range(1 << nt)]
    best = min(r[0] for r in runs)
    minimal = [r for r in runs if r[0] == best]
    maps = {}
    for enc, rev, tri_par, halfmap in minimal:
        key = tuple(sorted(halfmap.items()))
        par = 1
        for p in tri_par:
            par *= p
        maps.setdefault(key, par)
    aut = len(maps)
    parities = set(maps.values())
    # deterministic representative run: first minimal in scan order
    enc, rev, tri_par, halfmap = minimal[0]
    m = len(d.visible)
    rep = LabelledDiagram(
        n=d.n,
        k=3 * d.n - m,
        legs=tuple(halfmap[h] for h in d.legs),
        triples=tuple(tuple(sorted(halfmap[h] for h in t)) for t in d.triples),
        visible=tuple(range(1, m + 1)),
    )
    sign = 1
    for p in tri_par:
        sign *= p
    sn_key = min((r[0], r[1]) for r in runs)
    sn_key_oriented = min((r[0], r[1], r[2]) for r in runs)
    return best, rep, aut, len(parities) > 1, sign, sn_key, sn_key_oriented


@dataclass(frozen=True)
class DiagramClass:
    """Isomorphism class of a diagram: canonical representative (reference
    orientation), automorphism count, and whether some automorphism reverses
    the total orientation (such classes vanish in the quotient algebra)."""

    rep: LabelledDiagram
    aut: int
    orientation_reversible: bool

    @property
    def n(self) -> int:
        return self.rep.n

    @property
    def num_legs(self) -> int:
        return self.rep.num_legs

    @property
    def key(self):
        return _scan(self.rep)[0]

    def is_triply_connected(self) -> bool:
        return is_triply_connected(self.rep)

    def has_four_leg_property(self) -> bool:
        return has_four_leg_property(self.rep)

    def is_chord_diagram(self) -> bool:
        return not self.rep.triples

    def component_count(self) -> int:
        return len(components(self.rep))

    def __repr__(self):
        return f"DiagramClass(n={self.n}, u={self.num_legs}, aut={self.aut})"


@lru_cache(maxsize=None)
def canonical_class(d: LabelledDiagram) -> DiagramClass:
    _, rep, aut, orient_rev, _, _, _ = _scan(d)
    if rep is not d:
        # re-root the class data on the canonical representative itself so
        # equal classes compare equal regardless of the input labelling
        _, rep2, aut2, rev2, _, _, _ = _scan(rep)
        return DiagramClass(rep2, aut2, rev2)
    return DiagramClass(rep, aut, orient_rev)


def class_with_sign(d: LabelledDiagram) -> tuple[DiagramClass, int]:
    """Canonical class plus the orientation sign of ``d`` relative to the
    representative's reference orientation (meaningful up to the class's
    orientation-reversing automorphisms, which make the class vanish)."""
    sign = _scan(d)[4]
    return canonical_class(d), sign


def automorphism_count(c: DiagramClass) -> int:
    return c.aut


def canonical_key(d: LabelledDiagram):
    return _scan(d)[0]


def labelling_key(d: LabelledDiagram, oriented: bool = False):
    """Canonical key modulo label permutations only (edge reversals and, if
    ``oriented``, vertex orientations remain distinguishing data)."""
    s = _scan(d)
    return s[6] if oriented else s[5]


# -- enumeration ---------------------------------------------------------------


def _triple_partitions(halves: list[int]) -> Iterator[list[Triple]]:
    """Partitions of ``halves`` into unordered triples, no triple meeting an
    edge twice."""
    if not halves:
        yield []
        return
    h0 = halves[0]
    rest = halves[1:]
    for a, b in itertools.combinations(rest, 2):
        t = (h0, a, b)
        if len({edge_label(x) for x in t}) != 3:
            continue
        remaining = [x for x in rest if x != a and x != b]
        for tail in _triple_partitions(remaining):
            yield [t] + tail


def enumerate_labelled(n: int, k: int,
                       require_triply_connected: bool = True) -> Iterator[LabelledDiagram]:
    """Generate every labelled diagram of degree ``n`` with leg bound ``k``
    exactly once, in a deterministic order.

    The full set is huge for small ``k`` at degree 3; this is a generator so
    callers can stream it.
    """
    if n < 1 or n > 3:
        raise ValueError("degree must be between 1 and 3")
    if k > 2 * n:
        raise ValueError("k must be <= 2n")
    N = 3 * n - k
    for m in range(1, N + 1):
        u = k + (N - m)  # forced: #legs = #absent + k
        if u < 1 or u + 3 * (2 * n - u) != 2 * m or u > 2 * n:
            continue
        t_count = 2 * n - u
        for vis in itertools.combinations(range(1, N + 1), m):
            halves = [h for i in vis for h in edge_halves(i)]
            for legs_set in itertools.combinations(halves, u):
                rest = [h for h in halves if h not in set(legs_set)]
                for tris in _triple_partitions(rest):
                    if len(tris) != t_count:
                        continue
                    base = legs_set[0]
                    others = legs_set[1:]
                    for perm in itertools.permutations(others):
                        d = LabelledDiagram(n, k, (base,) + perm,
                                            tuple(tris), vis)
                        if any(len({edge_label(h) for h in t}) != 3 for t in d.triples):
                            continue
                        if require_triply_connected and not is_triply_connected(d):
                            continue
                        yield d


def enumerate_classes(n: int) -> list[DiagramClass]:
    """All isomorphism classes of degree-``n`` diagrams (every component has a
    leg; triple connectivity is *not* required here -- it is a flag on the
    class).  Sorted by canonical key."""
    if n < 1 or n > 3:
        raise ValueError("degree must be between 1 and 3")
    found: dict = {}
    for u in range(1, 2 * n + 1):
        t_count = 2 * n - u
        m = 3 * n - u
        slots = [("L", i) for i in range(u)] + [("T", j, c) for j in range(t_count)
                                                for c in range(3)]
        for matching in _matchings(slots):
            d = _diagram_from_matching(n, u, t_count, m, matching)
            if d is None:
                continue
            errs = validate(d, require_triply_connected=False)
            if errs:
                continue
            cls = canonical_class(d)
            found.setdefault(cls.key, cls)
    return [found[key] for key in sorted(found)]


def _matchings(slots: list) -> Iterator[list[tuple]]:
    if not slots:
        yield []
        return
    s0 = slots[0]
    for j in range(1, len(slots)):
        s1 = slots[j]
        if s0[0] == "T" and s1[0] == "T" and s0[1] == s1[1]:
            continue  # no loop at a trivalent vertex
        rest = slots[1:j] + slots[j + 1:]
        for tail in _matchings(rest):
            yield [(s0, s1)] + tail


def _diagram_from_matching(n, u, t_count, m, matching):
    half_of_slot = {}
    for i, (s0, s1) in enumerate(matching, start=1):
        half_of_slot[s0] = 2 * i - 1
        half_of_slot[s1] = 2 * i
    legs = tuple(half_of_slot[("L", i)] for i in range(u))
    triples = tuple(tuple(sorted(half_of_slot[("T", j, c)] for c in range(3)))
                    for j in range(t_count))
    d = LabelledDiagram(n, 3 * n - m, legs, triples, tuple(range(1, m + 1)))
    for t in d.triples:
        if len({edge_label(h) for h in t}) != 3:
            return None
    return d


def labelling_count(cls: DiagramClass, n: int, k: int) -> int:
    """Number of labelled diagrams with leg bound ``k`` in the class, counted
    honestly: all placements of the representative's edges onto one fixed
    label subset are generated and deduplicated, then scaled by the number of
    label subsets.  Exact, and independent of the automorphism count."""
    rep = cls.rep
    m = len(rep.visible)
    N = 3 * n - k
    if m > N or cls.num_legs < k:
        return 0

    def count_on(labels: tuple[int, ...]) -> int:
        seen = set()
        for perm in itertools.permutations(labels):
            for rev in range(1 << m):
                mapping = {}
                for old, new in zip(rep.visible, perm):
                    a, b = edge_halves(old)
                    na, nb = edge_halves(new)
                    if (rev >> (old - 1)) & 1:
                        na, nb = nb, na
                    mapping[a], mapping[b] = na, nb
                d2 = LabelledDiagram(
                    n, k, tuple(mapping[h] for h in rep.legs),
                    tuple(tuple(mapping[h] for h in t) for t in rep.triples),
                    perm)
                seen.add((d2.legs, tuple(sorted(tuple(sorted(t)) for t in d2.triples)),
                          d2.visible))
        return len(seen)

    base = count_on(tuple(range(1, m + 1)))
    if N > m:
        # relabelling symmetry spot-check on a second label subset
        alt = count_on(tuple(range(2, m + 2)))
        if alt != base:
            raise AssertionError("label-subset symmetry violated")
    return base * factorial(N) // (factorial(m) * factorial(N - m))


# -- text format ----------------------------------------------------------------


def format_diagram(d: LabelledDiagram) -> str:
    """The line-oriented record used by every command; bit-stable."""
    lines = [
        f"n={d.n} k={d.k}",
        "U: " + " ".join(str(h) for h in d.legs),
        "T: " + "; ".join(" ".join(str(h) for h in t) for t in d.triples),
        "Ev: " + " ".join(str(i) for i in d.visible),
    ]
    return "\n".join(lines)


def parse_diagrams(text: str) -> list[LabelledDiagram]:
    out = []
    for block in text.split("\n\n"):
        block = block.strip()
        if not block:
            continue
        lines = block.splitlines()
        if len(lines) != 4:
            raise ValueError(f"diagram record must have 4 lines, got {len(lines)}")
        head = dict(part.split("=") for part in lines[0].split())
        n, k = int(head["n"]), int(head["k"])
        legs = tuple(int(x) for x in lines[1].split(":", 1)[1].split())
        tpart = lines[2].split(":", 1)[1].strip()
        triples = tuple(tuple(int(x) for x in grp.split())
                        for grp in tpart.split(";") if grp.strip()) if tpart else ()
        visible = tuple(int(x) for x in lines[3].split(":", 1)[1].split())
        out.append(LabelledDiagram(n, k, legs, triples, visible))
    return out


# -- small constructors used throughout the tests --------------------------------


def theta() -> LabelledDiagram:
    """The single-edge diagram: two legs, one chord."""
    return LabelledDiagram(1, 2, (1, 2), (), (1,))


def chord_diagram(n: int, k: int, sigma: Sequence[int]) -> LabelledDiagram:
    """Chord diagram from a cyclic order of half-edges (legs = all of them)."""
    labels = tuple(sorted({edge_label(h) for h in sigma}))
    return LabelledDiagram(n, k, tuple(sigma), (), labels)


def crossed_chords() -> LabelledDiagram:
    return chord_diagram(2, 4, (1, 3, 2, 4))


def parallel_chords() -> LabelledDiagram:
    return chord_diagram(2, 4, (1, 2, 3, 4))


def tripod() -> LabelledDiagram:
    """One trivalent vertex joined to three legs."""
    return LabelledDiagram(2, 3, (1, 3, 5), ((2, 4, 6),), (1, 2, 3))


def double_edge() -> LabelledDiagram:
    """Two trivalent vertices joined by a double edge, one leg each.

    The smallest diagram that is not triply connected to its legs.
    """
    # edges: 1 = leg-t1, 2 = leg-t2, 3,4 = the double edge
    return LabelledDiagram(2, 2, (1, 3), ((2, 5, 7), (4, 6, 8)), (1, 2, 3, 4))
