"""Framed links as Morse presentations (blackboard framing).

A diagram is read bottom to top as a list of events acting on the current
left-to-right list of strands.  Positions are 1-based.

    cup p o   insert two new strands at p, p+1; o is the orientation (u|d) of the left one
    cap p     join strands p, p+1 (they must be oppositely oriented)
    x+ p      positive crossing of strands p, p+1
    x- p      negative crossing

Crossing signs are taken with respect to the strand orientations, so which
strand passes over is derived from the sign and the two orientations.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

UP, DOWN = "u", "d"
CUP, CAP, XPOS, XNEG = "cup", "cap", "x+", "x-"


class DiagramError(ValueError):
    pass


class MLPParseError(DiagramError):
    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


@dataclass(frozen=True)
class MorseEvent:
    kind: str
    pos: int
    orient: Optional[str] = None

    def __post_init__(self) -> None:
        if self.kind not in (CUP, CAP, XPOS, XNEG):
            raise DiagramError(f"unknown event kind {self.kind!r}")
        if self.pos < 1:
            raise DiagramError("event positions are 1-based")
        if (self.kind == CUP) != (self.orient is not None):
            raise DiagramError("cups (and only cups) carry an orientation")
        if self.orient not in (None, UP, DOWN):
            raise DiagramError(f"bad orientation {self.orient!r}")

    @property
    def sign(self) -> int:
        return {XPOS: 1, XNEG: -1}.get(self.kind, 0)

    def shifted(self, by: int) -> "MorseEvent":
        return MorseEvent(self.kind, self.pos + by, self.orient)

    def __str__(self) -> str:
        return f"{self.kind} {self.pos}" + (f" {self.orient}" if self.orient else "")


def cup(pos: int, orient: str = UP) -> MorseEvent:
    return MorseEvent(CUP, pos, orient)


def cap(pos: int) -> MorseEvent:
    return MorseEvent(CAP, pos)


def cross(pos: int, sign: int) -> MorseEvent:
    return MorseEvent(XPOS if sign > 0 else XNEG, pos)


def flip(orient: str) -> str:
    return DOWN if orient == UP else UP


@dataclass
class _UnionFind:
    parent: list[int] = field(default_factory=list)

    def make(self) -> int:
        self.parent.append(len(self.parent))
        return len(self.parent) - 1

    def find(self, a: int) -> int:
        while self.parent[a] != a:
            self.parent[a] = self.parent[self.parent[a]]
            a = self.parent[a]
        return a

    def union(self, a: int, b: int) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[max(ra, rb)] = min(ra, rb)


@dataclass(frozen=True)
class Tracing:
    """Result of walking a diagram: component labels along every slice."""

    count: int
    # per event: (orientations, component labels) of the strands just before it
    before: tuple[tuple[tuple[str, ...], tuple[int, ...]], ...]
    final: tuple[tuple[str, ...], tuple[int, ...]]
    boundary_in: tuple[int, ...]


@dataclass(frozen=True)
class MorseDiagram:
    events: tuple[MorseEvent, ...] = ()
    k_in: int = 0
    k_out: int = 0

    def __post_init__(self) -> None:
        object.__setattr__(self, "events", tuple(self.events))
        self.trace()  # validates

    @property
    def closed(self) -> bool:
        return self.k_in == 0 and self.k_out == 0

    def width(self) -> int:
        n = w = self.k_in
        for ev in self.events:
            n += 2 if ev.kind == CUP else (-2 if ev.kind == CAP else 0)
            w = max(w, n)
        return w

    def trace(self) -> Tracing:
        uf = _UnionFind()
        strands = [(UP, uf.make()) for _ in range(self.k_in)]
        boundary = [node for _, node in strands]
        snapshots = []
        for n, ev in enumerate(self.events):
            snapshots.append(list(strands))
            cnt = len(strands)
            if ev.kind == CUP:
                if ev.pos > cnt + 1:
                    raise DiagramError(f"event {n + 1} ({ev}): position out of range for {cnt} strands")
                node = uf.make()
                strands[ev.pos - 1 : ev.pos - 1] = [(ev.orient, node), (flip(ev.orient), node)]
            else:
                if ev.pos + 1 > cnt:
                    raise DiagramError(f"event {n + 1} ({ev}): needs strands {ev.pos},{ev.pos + 1} but only {cnt} present")
                a, b = strands[ev.pos - 1], strands[ev.pos]
                if ev.kind == CAP:
                    if a[0] == b[0]:
                        raise DiagramError(f"event {n + 1} ({ev}): cap on parallel-oriented strands")
                    uf.union(a[1], b[1])
                    del strands[ev.pos - 1 : ev.pos + 1]
                else:
                    strands[ev.pos - 1], strands[ev.pos] = b, a
        if len(strands) != self.k_out:
            raise DiagramError(f"diagram ends with {len(strands)} strands, declared {self.k_out}")
        labels: dict[int, int] = {}

        def lab(node: int) -> int:
            r = uf.find(node)
            if r not in labels:
                labels[r] = len(labels)
            return labels[r]

        # label in order of first appearance
        for node in range(len(uf.parent)):
            lab(node)
        before = tuple((tuple(o for o, _ in s), tuple(lab(node) for _, node in s)) for s in snapshots)
        final = (tuple(o for o, _ in strands), tuple(lab(node) for _, node in strands))
        return Tracing(len(labels), before, final, tuple(lab(b) for b in boundary))

    def __str__(self) -> str:
        return format_mlp(self)


# -- text format ---------------------------------------------------------------

def parse_mlp(text: str) -> MorseDiagram:
    header_seen = False
    ended = False
    k_in = k_out = 0
    boundary_line = None
    events: list[MorseEvent] = []
    lines_of: list[int] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if ended:
            raise MLPParseError(lineno, "content after 'end'")
        parts = line.split()
        head = parts[0]
        if not header_seen:
            if parts != ["mlp", "1"]:
                raise MLPParseError(lineno, "expected header 'mlp 1'")
            header_seen = True
            continue
        if head == "end":
            if len(parts) != 1:
                raise MLPParseError(lineno, "'end' takes no arguments")
            ended = True
            continue
        if head == "boundary":
            if events or boundary_line is not None:
                raise MLPParseError(lineno, "'boundary' must precede all events and appear once")
            if len(parts) != 3:
                raise MLPParseError(lineno, "usage: boundary <k_in> <k_out>")
            k_in, k_out = (_parse_int(p, lineno, minimum=0) for p in parts[1:])
            boundary_line = lineno
            continue
        if head == "cup":
            if len(parts) != 3 or parts[2] not in (UP, DOWN):
                raise MLPParseError(lineno, "usage: cup <pos> <u|d>")
            events.append(MorseEvent(CUP, _parse_int(parts[1], lineno, minimum=1), parts[2]))
        elif head in (CAP, XPOS, XNEG):
            if len(parts) != 2:
                raise MLPParseError(lineno, f"usage: {head} <pos>")
            events.append(MorseEvent(head, _parse_int(parts[1], lineno, minimum=1)))
        else:
            raise MLPParseError(lineno, f"unknown directive {head!r}")
        lines_of.append(lineno)
    if not header_seen:
        raise MLPParseError(1, "missing header 'mlp 1'")
    if not ended:
        raise MLPParseError(len(text.splitlines()) or 1, "missing 'end'")
    # validate incrementally so errors carry the offending line
    for n in range(len(events) + 1):
        try:
            MorseDiagram(tuple(events[:n]), k_in, _running_count(events[:n], k_in))
        except DiagramError as exc:
            raise MLPParseError(lines_of[n - 1], str(exc).split(": ", 1)[-1]) from None
    try:
        return MorseDiagram(tuple(events), k_in, k_out)
    except DiagramError as exc:
        raise MLPParseError(boundary_line or (lines_of[-1] if lines_of else 1), f"arity mismatch: {exc}") from None


def _running_count(events: Sequence[MorseEvent], k_in: int) -> int:
    n = k_in
    for ev in events:
        n += 2 if ev.kind == CUP else (-2 if ev.kind == CAP else 0)
        if n < 0:
            raise DiagramError("strand count becomes negative")
    return n


def _parse_int(tok: str, lineno: int, minimum: int) -> int:
    try:
        v = int(tok)
    except ValueError:
        raise MLPParseError(lineno, f"expected an integer, got {tok!r}") from None
    if v < minimum:
        raise MLPParseError(lineno, f"value {v} out of range (minimum {minimum})")
    return v


def format_mlp(d: MorseDiagram) -> str:
    lines = ["mlp 1"]
    if not d.closed:
        lines.append(f"boundary {d.k_in} {d.k_out}")
    lines.extend(str(ev) for ev in d.events)
    lines.append("end")
    return "\n".join(lines) + "\n"


# -- constructions ------------------------------------------------------------

def braid_closure(word: Sequence[int], n: int) -> MorseDiagram:
    """Trace closure of an n-strand braid word (+i / -i = sigma_i^{+-1}), braid strands oriented up."""
    if n < 1:
        raise DiagramError("a braid needs at least one strand")
    for g in word:
        if g == 0 or abs(g) >= n:
            raise DiagramError(f"bad generator index {g} for {n} strands")
    events = [cup(i, UP) for i in range(1, n + 1)]
    events += [cross(abs(g), 1 if g > 0 else -1) for g in word]
    events += [cap(i) for i in range(n, 0, -1)]
    return MorseDiagram(tuple(events))


def closure(d: MorseDiagram) -> MorseDiagram:
    """Close a (k, k) tangle with upward boundary to the right: strand i joins a returning arc."""
    if d.k_in != d.k_out:
        raise DiagramError("closure needs a (k, k) tangle")
    if any(o != UP for o in d.trace().final[0]):
        raise DiagramError("closure needs upward output strands")
    k = d.k_in
    events = [cup(i, UP) for i in range(1, k + 1)]
    events += list(d.events)
    events += [cap(i) for i in range(k, 0, -1)]
    return MorseDiagram(tuple(events))


def unknot(framing: int = 0) -> MorseDiagram:
    """The framed unknot O_f drawn with |f| twists between the arms of a single cup."""
    s = 1 if framing > 0 else -1
    return MorseDiagram((cup(1, UP),) + tuple(cross(1, s) for _ in range(abs(framing))) + (cap(1),))


def hopf(f1: int = 0, f2: int = 0) -> MorseDiagram:
    """Hopf link with linking number +1 and framings (f1, f2)."""
    d = braid_closure([1, 1], 2)
    for comp, f in ((1, f1), (2, f2)):
        for _ in range(abs(f)):
            d = add_kink(d, comp, 1 if f > 0 else -1)
    return d


def empty_link() -> MorseDiagram:
    return MorseDiagram(())


def identity_tangle(k: int) -> MorseDiagram:
    return MorseDiagram((), k, k)


# -- derived data -------------------------------------------------------------

def components(d: MorseDiagram) -> Tracing:
    return d.trace()


@dataclass(frozen=True)
class LinkingData:
    matrix: tuple[tuple[int, ...], ...]
    writhes: tuple[int, ...]
    component_count: int


def linking_matrix(d: MorseDiagram) -> LinkingData:
    if not d.closed:
        raise DiagramError("linking matrix needs a closed diagram")
    t = d.trace()
    m = t.count
    twice = [[0] * m for _ in range(m)]
    for ev, (_, labels) in zip(d.events, t.before):
        if ev.sign:
            a, b = labels[ev.pos - 1], labels[ev.pos]
            if a == b:
                twice[a][a] += 2 * ev.sign
            else:
                twice[a][b] += ev.sign
                twice[b][a] += ev.sign
    for i in range(m):
        for j in range(m):
            if twice[i][j] % 2:
                raise DiagramError(f"odd crossing count between components {i} and {j}")
    A = tuple(tuple(x // 2 for x in row) for row in twice)
    return LinkingData(A, tuple(A[i][i] for i in range(m)), m)


def _after(t: Tracing, n: int) -> tuple[tuple[str, ...], tuple[int, ...]]:
    return t.before[n + 1] if n + 1 < len(t.before) else t.final


def _cabled(d: MorseDiagram, mult: Sequence[int], marks: bool = False):
    """Blackboard cable; with ``marks`` also report the first cup-block of every component.

    A mark is (events emitted so far, first position of the upward block, block size, component).
    """
    t = d.trace()
    if len(mult) != t.count:
        raise DiagramError(f"need one multiplicity per component ({t.count})")
    if any(m < 0 for m in mult):
        raise DiagramError("multiplicities must be nonnegative")
    out: list[MorseEvent] = []
    inserts: list[tuple[int, int, int, int]] = []
    seen: set[int] = set()
    for n, (ev, (_, labels)) in enumerate(zip(d.events, t.before)):
        base = 1 + sum(mult[c] for c in labels[: ev.pos - 1])
        if ev.kind == CUP:
            comp = _after(t, n)[1][ev.pos - 1]
            l = mult[comp]
            out.extend(cup(base + i, ev.orient) for i in range(l))
            if marks and l and comp not in seen:
                seen.add(comp)
                inserts.append((len(out), base if ev.orient == UP else base + l, l, comp))
        elif ev.kind == CAP:
            l = mult[labels[ev.pos - 1]]
            out.extend(cap(base + l - 1 - i) for i in range(l))
        else:
            la, lb = mult[labels[ev.pos - 1]], mult[labels[ev.pos]]
            for i in reversed(range(la)):
                for j in range(lb):
                    out.append(cross(base + i + j, ev.sign))
    k_in = sum(mult[c] for c in t.boundary_in)
    k_out = sum(mult[c] for c in t.final[1])
    return MorseDiagram(tuple(out), k_in, k_out), inserts


def cable(d: MorseDiagram, mult: Sequence[int]) -> MorseDiagram:
    """Replace component c by mult[c] blackboard-parallel copies (0 deletes it)."""
    return _cabled(d, mult)[0]


def _component_index(t: Tracing, number: int) -> int:
    if not 1 <= number <= t.count:
        raise DiagramError(f"no component {number} (diagram has {t.count}, numbered from 1)")
    return number - 1


def add_kink(d: MorseDiagram, component: int, sign: int) -> MorseDiagram:
    """Change the framing of component number ``component`` (counted from 1) by sign (+1 or -1).

    When the component has a cup, that cup is replaced by the oppositely
    oriented cup followed by a crossing of its two arms, which leaves the
    width unchanged.  Otherwise (a boundary arc) a small curl is inserted at
    the bottom of its first strand.
    """
    if sign not in (1, -1):
        raise DiagramError("kink sign must be +1 or -1")
    t = d.trace()
    component = _component_index(t, component)
    events = list(d.events)
    for n, ev in enumerate(events):
        if ev.kind == CUP and _after(t, n)[1][ev.pos - 1] == component:
            events[n : n + 1] = [cup(ev.pos, flip(ev.orient)), cross(ev.pos, sign)]
            return MorseDiagram(tuple(events), d.k_in, d.k_out)
    p = t.boundary_in.index(component) + 1
    curl = [cup(p + 1, DOWN), cross(p, sign), cap(p)]
    return MorseDiagram(tuple(curl + events), d.k_in, d.k_out)


def disjoint_union(d1: MorseDiagram, d2: MorseDiagram) -> MorseDiagram:
    """d2 placed to the right of d1 (for closed links: drawn after it)."""
    events = list(d1.events) + [ev.shifted(d1.k_out) for ev in d2.events]
    return MorseDiagram(tuple(events), d1.k_in + d2.k_in, d1.k_out + d2.k_out)


def reverse_component(d: MorseDiagram, component: int) -> MorseDiagram:
    """Reverse the orientation of closed component number ``component`` (counted from 1).

    The geometry is kept: its cups swap their orientation flag and its
    crossings with other components change sign; self-crossings keep theirs.
    """
    t = d.trace()
    component = _component_index(t, component)
    if component in t.boundary_in or component in t.final[1]:
        raise DiagramError("boundary arcs keep their upward orientation")
    out = []
    for n, (ev, (_, labels)) in enumerate(zip(d.events, t.before)):
        if ev.kind == CUP and _after(t, n)[1][ev.pos - 1] == component:
            out.append(cup(ev.pos, flip(ev.orient)))
        elif ev.sign and (labels[ev.pos - 1] == component) != (labels[ev.pos] == component):
            out.append(cross(ev.pos, -ev.sign))
        else:
            out.append(ev)
    return MorseDiagram(tuple(out), d.k_in, d.k_out)


def mirror(d: MorseDiagram) -> MorseDiagram:
    return MorseDiagram(tuple(cross(ev.pos, -ev.sign) if ev.sign else ev for ev in d.events), d.k_in, d.k_out)


def encircled_strands(k: int, annulus_framing: int = 1) -> MorseDiagram:
    """(k, k) tangle: k upward strands encircled once by an unknotted annulus.

    The strands are components 0..k-1 and the annulus is component k.  Each
    strand links the annulus with linking number +1; the annulus has
    framing ``annulus_framing``.
    """
    f = annulus_framing
    # start orientation chosen so that after |f| twists the arms read (down, up)
    events = [cup(1, UP if abs(f) % 2 else DOWN)]
    events += [cross(1, 1 if f > 0 else -1) for _ in range(abs(f))]
    # upward arm passes over the strands to the right, then comes back under them
    events += [cross(2 + j, 1) for j in range(k)]
    events += [cross(1 + j, 1) for j in range(k, 0, -1)]
    events.append(cap(1))
    return MorseDiagram(tuple(events), k, k)
