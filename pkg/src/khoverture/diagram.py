"""Planar diagram combinatorics: PD codes, complete resolutions, surgery arcs.

A crossing ``X(a,b,c,d)`` lists the four arc identifiers counterclockwise
starting at the incoming under-strand, so the under-strand runs a -> c.
Crossingless unknot components are written ``O(k)``.

Resolutions follow the convention forced by the usual knot-table codes:
the 0-smoothing of a crossing joins corner 0 to corner 3 and corner 1 to
corner 2 (the under-strand turns toward its clockwise neighbour); the
1-smoothing joins corners 0-1 and 2-3.  A crossing is positive exactly
when the over-strand enters at corner 1.  With these conventions the
standard right trefoil code X(1,4,2,5) X(3,6,4,1) X(5,2,6,3) has writhe
+3, two Seifert circles at (0,0,0) and three circles at (1,1,1).

Circles of a resolution are stored as cyclic slot sequences (a slot is a
(crossing, corner) pair), not as bare partitions: the ladybug right-pair
rule downstream needs the planar cyclic order and the local sides of the
surgery-arc endpoints.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field


Slot = tuple  # (crossing index, corner 0..3)


class PDError(ValueError):
    """Malformed or inconsistent PD input."""


_TOKEN_RE = re.compile(
    r"""
    (?P<x>[Xx]\s*[\(\[]\s*(\d+)\s*,\s*(\d+)\s*,\s*(\d+)\s*,\s*(\d+)\s*[\)\]])
    | (?P<o>[Oo]\s*[\(\[]\s*(\d+)\s*[\)\]])
    | (?P<base>base\s*=\s*(\d+))
    | (?P<junk>\S+)
    """,
    re.VERBOSE,
)


def _trace_components(crossings, arc_slots):
    """Connected strands of the 4-valent graph, as sets of arcs.

    A passage through a crossing connects corners 0-2 (under) and 1-3
    (over); arcs glue end to end through passages.
    """
    parent = {}

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    def union(a, b):
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb

    for arc in arc_slots:
        parent[arc] = arc
    for c, (a, b, cc, d) in enumerate(crossings):
        union(a, cc)
        union(b, d)
    comps = {}
    for arc in arc_slots:
        comps.setdefault(find(arc), set()).add(arc)
    return list(comps.values())


def _orient(crossings, arc_slots, components):
    """Assign a head slot (arc flows in) and tail slot to every arc.

    Under-passages force corner 0 to be a head and corner 2 a tail; the
    over corners 1 and 3 carry opposite roles; the two slots of an arc
    carry opposite roles.  Components that never pass under are oriented
    so that their least arc flows out of its least slot.
    """
    role = {}  # slot -> True if head (incoming)

    def set_role(slot, is_head, queue):
        if slot in role:
            if role[slot] != is_head:
                raise PDError(f"inconsistent orientations at slot {slot}")
            return
        role[slot] = is_head
        queue.append(slot)

    def propagate(queue):
        while queue:
            slot = queue.pop()
            c, k = slot
            if k in (1, 3):
                set_role((c, 4 - k), not role[slot], queue)
            arc = crossings[c][k]
            s1, s2 = arc_slots[arc]
            other = s2 if slot == s1 else s1
            set_role(other, not role[slot], queue)

    queue = []
    for c in range(len(crossings)):
        set_role((c, 0), True, queue)
        set_role((c, 2), False, queue)
    propagate(queue)

    for comp in sorted(components, key=min):
        least = min(comp)
        anchor = min(arc_slots[least])
        if anchor not in role:
            q = []
            set_role(anchor, False, q)  # least arc flows out of its least slot
            propagate(q)
    return role


@dataclass(frozen=True)
class LinkDiagram:
    """An oriented link diagram given by its PD code.

    crossings: PD 4-tuples, in the order that fixes cube coordinates.
    free_loops: identifiers of crossingless components.
    basepoint: an arc identifier, or None.
    """

    crossings: tuple
    free_loops: tuple = ()
    basepoint: int | None = None
    _cache: dict = field(default_factory=dict, compare=False, repr=False, hash=False)

    def __post_init__(self):
        arc_slots = {}
        for c, x in enumerate(self.crossings):
            if len(x) != 4:
                raise PDError(f"crossing {x} is not a 4-tuple")
            for k, arc in enumerate(x):
                arc_slots.setdefault(arc, []).append((c, k))
        for arc, slots in arc_slots.items():
            if len(slots) != 2:
                raise PDError(f"arc {arc} appears {len(slots)} time(s), expected 2")
        for k in self.free_loops:
            if k in arc_slots:
                raise PDError(f"O({k}) collides with a crossing arc")
        if len(set(self.free_loops)) != len(self.free_loops):
            raise PDError("repeated O() identifier")
        components = _trace_components(self.crossings, arc_slots)
        role = _orient(self.crossings, arc_slots, components)
        signs = []
        for c in range(len(self.crossings)):
            signs.append(+1 if role[(c, 1)] else -1)
        if self.basepoint is not None:
            if self.basepoint not in arc_slots and self.basepoint not in self.free_loops:
                raise PDError(f"basepoint {self.basepoint} is not an arc of the diagram")
        object.__setattr__(self, "_cache", {})
        self._cache["arc_slots"] = {a: tuple(s) for a, s in arc_slots.items()}
        self._cache["components"] = components
        self._cache["role"] = role
        self._cache["signs"] = tuple(signs)

    # -- basic data -------------------------------------------------------

    @property
    def n(self) -> int:
        return len(self.crossings)

    @property
    def arcs(self):
        return sorted(self._cache["arc_slots"])

    @property
    def arc_slots(self):
        return self._cache["arc_slots"]

    @property
    def signs(self):
        return self._cache["signs"]

    @property
    def n_plus(self) -> int:
        return sum(1 for s in self.signs if s > 0)

    @property
    def n_minus(self) -> int:
        return sum(1 for s in self.signs if s < 0)

    @property
    def writhe(self) -> int:
        return self.n_plus - self.n_minus

    @property
    def component_count(self) -> int:
        return len(self._cache["components"]) + len(self.free_loops)

    def is_head(self, slot) -> bool:
        """True if the arc at this slot flows into the crossing."""
        return self._cache["role"][slot]

    def with_basepoint(self, arc) -> "LinkDiagram":
        return LinkDiagram(self.crossings, self.free_loops, arc)

    def mirror(self) -> "LinkDiagram":
        """Reverse every crossing's cyclic corner order (reflection)."""
        return LinkDiagram(
            tuple((a, d, c, b) for (a, b, c, d) in self.crossings),
            self.free_loops,
            self.basepoint,
        )

    def embedding_euler_characteristics(self):
        """Euler characteristic of each connected piece of the 4-valent map.

        Faces are traced from the rotation system (corners are ccw); a PD
        code is realizable in the 2-sphere iff every value equals 2.
        """
        if not self.crossings:
            return [2] * len(self.free_loops)
        alpha = {}
        for a, (s1, s2) in self.arc_slots.items():
            alpha[s1], alpha[s2] = s2, s1
        # group crossings into connected pieces of the underlying graph
        comp_of = {}
        for comp in self._cache["components"]:
            cs = {c for arc in comp for (c, _) in self.arc_slots[arc]}
            root = min(cs)
            for c in cs:
                comp_of.setdefault(c, root)
        # merge strand components sharing a crossing
        changed = True
        while changed:
            changed = False
            for comp in self._cache["components"]:
                roots = {comp_of[c] for arc in comp for (c, _) in self.arc_slots[arc]}
                if len(roots) > 1:
                    r = min(roots)
                    for c in comp_of:
                        if comp_of[c] in roots:
                            comp_of[c] = r
                    changed = True
        # count faces per piece: orbits of slot -> rotate(alpha(slot))
        face_count = {}
        seen = set()
        for start in ((c, k) for c in range(self.n) for k in range(4)):
            if start in seen:
                continue
            s = start
            while s not in seen:
                seen.add(s)
                c, k = alpha[s]
                s = (c, (k + 1) % 4)
            root = comp_of[start[0]]
            face_count[root] = face_count.get(root, 0) + 1
        out = []
        for root, fcount in sorted(face_count.items()):
            cs = [c for c in range(self.n) if comp_of[c] == root]
            e = len({a for a in self.arcs if self.arc_slots[a][0][0] in cs})
            out.append(len(cs) - e + fcount)
        out.extend([2] * len(self.free_loops))
        return out

    # -- resolutions ------------------------------------------------------

    def _join_partner(self, v, slot):
        c, k = slot
        if v[c] == 0:
            return (c, {0: 3, 3: 0, 1: 2, 2: 1}[k])
        return (c, {0: 1, 1: 0, 2: 3, 3: 2}[k])

    def resolve(self, v) -> "Resolution":
        """Complete resolution P(v); deterministic circle numbering."""
        v = tuple(v)
        if len(v) != self.n or any(b not in (0, 1) for b in v):
            raise PDError(f"vertex {v} does not match crossing count {self.n}")
        if v in self._cache.setdefault("resolutions", {}):
            return self._cache["resolutions"][v]
        arcmate = {}
        for a, (s1, s2) in self.arc_slots.items():
            arcmate[s1], arcmate[s2] = s2, s1
        unvisited = set(arcmate)
        circles = []
        while unvisited:
            start = min(unvisited)
            seq = []
            s = start
            while True:
                seq.append(s)
                unvisited.discard(s)
                t = arcmate[s]
                seq.append(t)
                unvisited.discard(t)
                s = self._join_partner(v, t)
                if s == start:
                    break
            circles.append(Circle(slots=tuple(seq), diagram=self, vertex=v))
        circles.sort(key=lambda z: z.slots[0])
        for k in self.free_loops:
            circles.append(Circle(slots=(), diagram=self, vertex=v, loop_id=k))
        res = Resolution(diagram=self, vertex=v, circles=tuple(circles))
        self._cache["resolutions"][v] = res
        return res


@dataclass(frozen=True)
class Circle:
    """One circle of a complete resolution, as a cyclic slot sequence.

    slots[2k] -> slots[2k+1] is an arc traversal, slots[2k+1] -> slots[2k+2]
    crosses the smoothing join at their common crossing.  Empty slots with a
    loop_id encode a crossingless O-component.
    """

    slots: tuple
    diagram: LinkDiagram = field(compare=False, repr=False)
    vertex: tuple = field(compare=False)
    loop_id: int | None = None

    @property
    def arcs(self):
        if self.loop_id is not None:
            return frozenset([self.loop_id])
        return frozenset(self.diagram.crossings[c][k] for (c, k) in self.slots)

    @property
    def key(self):
        """Identity of the circle across resolutions that do not touch it."""
        if self.loop_id is not None:
            return ("O", self.loop_id)
        return frozenset(self.slots)

    def join_positions(self):
        """Map join key (crossing, min corner of the joined pair) -> position."""
        out = {}
        m = len(self.slots) // 2
        for k in range(m):
            s = self.slots[2 * k + 1]
            t = self.slots[(2 * k + 2) % (2 * m)]
            out[(s[0], min(s[1], t[1]))] = k
        return out

    def contains_arc(self, arc) -> bool:
        return arc in self.arcs


@dataclass(frozen=True)
class Resolution:
    diagram: LinkDiagram = field(compare=False, repr=False)
    vertex: tuple = ()
    circles: tuple = ()

    def __len__(self):
        return len(self.circles)

    def circle_index_of_arc(self, arc) -> int:
        for i, z in enumerate(self.circles):
            if z.contains_arc(arc):
                return i
        raise KeyError(arc)

    def circle_index_of_join(self, join_key) -> int:
        for i, z in enumerate(self.circles):
            if join_key in z.join_positions():
                return i
        raise KeyError(join_key)

    def circle_keys(self):
        return [z.key for z in self.circles]


@dataclass(frozen=True)
class JoinPoint:
    """An attachment point of a surgery arc: a join on a circle.

    forward_is_right: arriving along the surgery arc and turning right
    continues in the circle's stored traversal direction.  (At a join the
    right turn continues toward the odd corner of the joined pair; which
    neighbour that is depends on how the circle was traced.)
    """

    circle: int
    position: int
    forward_is_right: bool


@dataclass(frozen=True)
class SurgeryArc:
    """The 1-handle core at a 0-resolved crossing of a resolution."""

    crossing: int
    ends: tuple  # (JoinPoint, JoinPoint) at joins (c,0) and (c,1)

    @property
    def is_split(self) -> bool:
        return self.ends[0].circle == self.ends[1].circle


def surgery_data(d: LinkDiagram, v, i: int) -> SurgeryArc:
    """Endpoints and local sides of the handle core at crossing i in P(v)."""
    v = tuple(v)
    if v[i] != 0:
        raise PDError(f"crossing {i} is not 0-resolved at {v}")
    res = d.resolve(v)
    ends = []
    for join_key in ((i, 0), (i, 1)):
        ci = res.circle_index_of_join(join_key)
        z = res.circles[ci]
        pos = z.join_positions()[join_key]
        m = len(z.slots) // 2
        nxt = z.slots[(2 * pos + 2) % (2 * m)]
        # 0-smoothing joins are {0,3} and {1,2}; right turn exits at corner 3
        # resp. 1, the odd corner of the pair.
        ends.append(JoinPoint(ci, pos, forward_is_right=(nxt[1] % 2 == 1)))
    return SurgeryArc(crossing=i, ends=tuple(ends))


def interleaved_on_circle(res: Resolution, i: int, j: int):
    """If the surgery arcs at crossings i and j are interleaved chords of one
    circle of ``res``, return (circle index, arc_i, arc_j); else None."""
    ai = surgery_data(res.diagram, res.vertex, i)
    aj = surgery_data(res.diagram, res.vertex, j)
    if not (ai.is_split and aj.is_split):
        return None
    if ai.ends[0].circle != aj.ends[0].circle:
        return None
    p1, p2 = ai.ends[0].position, ai.ends[1].position
    q1, q2 = aj.ends[0].position, aj.ends[1].position

    def between(a, b, x):  # x in the cyclic open interval (a, b)?
        if a < b:
            return a < x < b
        return x > a or x < b

    if between(p1, p2, q1) == between(p1, p2, q2):
        return None
    return ai.ends[0].circle, ai, aj


def ladybug_right_pair(res: Resolution, chord_a: SurgeryArc, chord_b: SurgeryArc):
    """Right pairs for both chords of a ladybug circle; returns the two
    landing sub-arcs per chord, as (start cut-point, end cut-point) pairs.

    The four endpoints cut the circle into four sub-arcs.  Planarity makes
    the two right pairs coincide; this is asserted.
    """
    cuts = sorted(
        {chord_a.ends[0].position, chord_a.ends[1].position,
         chord_b.ends[0].position, chord_b.ends[1].position}
    )
    if len(cuts) != 4:
        raise ValueError("chords do not cut the circle into four sub-arcs")

    def subarc_from(pos):  # sub-arc starting at cut point pos, forward
        k = cuts.index(pos)
        return (cuts[k], cuts[(k + 1) % 4])

    def subarc_to(pos):  # sub-arc ending at cut point pos
        k = cuts.index(pos)
        return (cuts[(k - 1) % 4], cuts[k])

    def landings(chord):
        out = []
        for end in chord.ends:
            if end.forward_is_right:
                out.append(subarc_from(end.position))
            else:
                out.append(subarc_to(end.position))
        return frozenset(out)

    ra, rb = landings(chord_a), landings(chord_b)
    if ra != rb:
        raise AssertionError(
            f"right pairs disagree ({ra} vs {rb}); non-planar input?"
        )
    return ra


def subarc_positions(circle: Circle, cuts, subarc):
    """Join positions of the circle lying on the given sub-arc (cut-to-cut,
    endpoints excluded)."""
    a, b = subarc
    m = len(circle.slots) // 2
    out = []
    x = (a + 1) % m
    while x != b:
        out.append(x)
        x = (x + 1) % m
    return out


def parse_pd(text: str) -> LinkDiagram:
    """Parse a PD-code string into a LinkDiagram.

    Accepts whitespace/comma separated ``X(a,b,c,d)`` tokens, optional
    ``O(k)`` tokens for crossingless components and an optional
    ``base=<arc>`` token.
    """
    crossings = []
    loops = []
    base = None
    pos = 0
    for m in _TOKEN_RE.finditer(text):
        if m.group("x"):
            crossings.append(tuple(int(g) for g in m.groups()[1:5]))
        elif m.group("o"):
            loops.append(int(m.group(7)))
        elif m.group("base"):
            if base is not None:
                raise PDError("multiple base= tokens")
            base = int(m.group(9))
        else:
            tok = m.group("junk")
            if tok.strip(", \t"):
                raise PDError(f"malformed token {tok!r}")
    return LinkDiagram(tuple(crossings), tuple(loops), base)


def disjoint_union(d1: LinkDiagram, d2: LinkDiagram, keep_basepoint=1):
    """Disjoint union; d2's arcs are shifted above d1's, and d1's crossings
    come first (so cube coordinates split as (v1, v2))."""
    offset = max(list(d1.arcs) + list(d1.free_loops) + [0]) + 1
    crossings = d1.crossings + tuple(
        tuple(a + offset for a in x) for x in d2.crossings
    )
    loops = d1.free_loops + tuple(k + offset for k in d2.free_loops)
    if keep_basepoint == 1:
        base = d1.basepoint
    else:
        base = d2.basepoint + offset if d2.basepoint is not None else None
    return LinkDiagram(crossings, loops, base), offset


def connected_sum(d1: LinkDiagram, d2: LinkDiagram) -> LinkDiagram:
    """Connected sum at the basepoint arcs, respecting orientations.

    Both diagrams must be based on a crossing arc.  The two arcs are cut
    and cross-joined; the result keeps d1's basepoint label (one of the
    two arcs in the summing region) as its basepoint, and d1's crossings
    come first.
    """
    if d1.basepoint is None or d2.basepoint is None:
        raise PDError("connected sum needs based diagrams")
    if d1.basepoint in d1.free_loops or d2.basepoint in d2.free_loops:
        if d1.basepoint in d1.free_loops:
            # unknot # K = K with the basepoint moved to K's pointed arc
            return LinkDiagram(d2.crossings, d2.free_loops, d2.basepoint)
        return LinkDiagram(d1.crossings, d1.free_loops, d1.basepoint)
    offset = max(list(d1.arcs) + list(d1.free_loops) + [0]) + 1
    b1 = d1.basepoint
    b2 = d2.basepoint + offset
    # head slot: arc flows into the crossing there; tail slot: flows out.
    crossings = [list(x) for x in d1.crossings] + [
        [a + offset for a in x] for x in d2.crossings
    ]
    s1h, s1t = d1.arc_slots[b1]
    if not d1.is_head(s1h):
        s1h, s1t = s1t, s1h
    s2h, s2t = d2.arc_slots[d2.basepoint]
    if not d2.is_head(s2h):
        s2h, s2t = s2t, s2h
    # b1 now runs from its tail slot into d2's head slot; b2 from d2's tail
    # slot back into d1's head slot.
    crossings[s2h[0] + d1.n][s2h[1]] = b1
    crossings[s1h[0]][s1h[1]] = b2
    return LinkDiagram(tuple(tuple(x) for x in crossings), d1.free_loops + tuple(
        k + offset for k in d2.free_loops), b1)
