"""Colored directed multigraphs and their signed symmetry classes.

Conventions used throughout the package:

* Vertices are labeled ``0..v-1``.  Edges are labeled ``1..e``; an edge's
  label is its 1-based position in the record list (internal indices are
  0-based).
* An edge record is a flat tuple ``(tail, head, s_1, ..., s_k)`` with
  ``tail != head`` and every color sign ``s_c`` in ``{+1, -1}``.  The
  intrinsic orientation runs tail -> head; color ``c`` runs tail -> head
  when ``s_c = +1`` and head -> tail when ``s_c = -1``.
* Reversing an edge swaps tail/head and negates all color signs, so the
  colored orientations relative to the vertices never change.
* Symmetries carry signs depending only on the parity of the grading
  parameter ``n``:

  - ``n`` even: transposing two edge labels flips the sign; vertex
    relabelings and edge reversals are sign-free.
  - ``n`` odd: transposing two vertex labels flips the sign, and so does
    each single edge reversal; edge relabelings are sign-free.

* A graph whose symmetry class supports an odd automorphism is zero; the
  canonical form machinery detects this and reports the distinguished
  ``Zero`` value.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache


class Parity(enum.Enum):
    """Parity of the integer grading parameter n."""

    EVEN = 0
    ODD = 1

    @classmethod
    def from_n(cls, n: int) -> "Parity":
        return cls(n & 1)

    @property
    def flipped(self) -> "Parity":
        return Parity(1 - self.value)


@dataclass(frozen=True)
class ColoredGraph:
    """A labeled directed multigraph with k per-edge orientation signs.

    ``records[i]`` is the flat record of the edge labeled ``i + 1``.
    """

    v: int
    k: int
    records: tuple

    @property
    def e(self) -> int:
        return len(self.records)

    @property
    def edges(self):
        """Ordered (tail, head) pairs, one per edge."""
        return tuple(r[:2] for r in self.records)

    @property
    def colors(self):
        """Per-edge tuples of the k color signs."""
        return tuple(r[2:] for r in self.records)

    def __lt__(self, other):
        return sort_key(self) < sort_key(other)


def make_graph(v, edges, colors=None, check=True):
    """Build a ColoredGraph from (tail, head) pairs and color-sign rows."""
    if colors is None:
        colors = [()] * len(edges)
    if len(colors) != len(edges):
        raise ValueError("one color row per edge required")
    k = len(colors[0]) if colors else 0
    records = tuple(tuple(e) + tuple(c) for e, c in zip(edges, colors))
    g = ColoredGraph(v, k, records)
    if check:
        check_graph(g)
    return g


def check_graph(g: ColoredGraph):
    """Validate the ColoredGraph invariants, raising ValueError on failure."""
    for rec in g.records:
        if len(rec) != 2 + g.k:
            raise ValueError(f"record {rec} does not carry {g.k} color signs")
        t, h = rec[0], rec[1]
        if t == h:
            raise ValueError(f"tadpole edge at vertex {t}")
        if not (0 <= t < g.v and 0 <= h < g.v):
            raise ValueError(f"vertex index out of range in record {rec}")
        if any(s not in (1, -1) for s in rec[2:]):
            raise ValueError(f"color signs must be +-1 in record {rec}")
    for c in range(1, g.k + 1):
        if not is_acyclic_in_color(g, c):
            raise ValueError(f"color {c} orientation has a directed cycle")


@dataclass(frozen=True)
class GroupElement:
    """One symmetry: a vertex relabeling, an edge relabeling and reversals.

    ``vertex_perm[i]`` is the new label of vertex ``i``; ``edge_perm[i]``
    is the new 0-based index of the edge at index ``i``; ``flips`` holds
    0-based indices of reversed edges.
    """

    vertex_perm: tuple
    edge_perm: tuple
    flips: frozenset


@dataclass(frozen=True)
class CanonicalClass:
    """Canonical representative with sign, or the distinguished Zero.

    A non-zero value means the input graph equals ``sign`` times the class
    of ``rep`` in the signed quotient.  ``rep is None`` encodes Zero.
    """

    rep: ColoredGraph | None
    sign: int

    @property
    def is_zero(self) -> bool:
        return self.rep is None


ZERO = CanonicalClass(None, 0)


def perm_parity(perm) -> int:
    """Sign (+1/-1) of a permutation given as a sequence of images."""
    perm = list(perm)
    n = len(perm)
    seen = [False] * n
    sign = 1
    for i in range(n):
        if seen[i]:
            continue
        j = i
        length = 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def _inversion_parity(items) -> int:
    """Sign of the permutation sorting ``items`` (must be tie-free)."""
    inv = 0
    n = len(items)
    for i in range(n):
        a = items[i]
        for j in range(i + 1, n):
            if a > items[j]:
                inv += 1
    return -1 if inv & 1 else 1


@lru_cache(maxsize=None)
def _perms_with_signs(v: int):
    return tuple((p, perm_parity(p)) for p in itertools.permutations(range(v)))


def sort_key(g: ColoredGraph):
    """Total order on graphs: (tail, head) data first, then color data.

    Comparing all pair data before any color data makes the canonical
    colored graph sit over the canonical underlying multigraph, which the
    basis enumerator relies on.
    """
    return (g.v, g.k, tuple(r[:2] for r in g.records), tuple(r[2:] for r in g.records))


def _records_key(records):
    return (tuple(r[:2] for r in records), tuple(r[2:] for r in records))


def _canonical_records(v, records, parity, perms):
    """Minimal normalized record tuple with sign over the given vertex perms.

    Returns ``(records, sign)`` or None when an odd automorphism kills the
    class.  ``perms`` is an iterable of (vertex permutation, permutation
    sign) pairs; passing all of S_v gives the true canonical form, passing
    the stabilizer of an already-canonical underlying multigraph gives the
    same answer faster.
    """
    even = parity is Parity.EVEN
    best = None
    best_key = None
    best_sign = 0
    for perm, psign in perms:
        sign = 1 if even else psign
        recs = []
        for rec in records:
            t = perm[rec[0]]
            h = perm[rec[1]]
            if t > h:
                if not even:
                    sign = -sign
                recs.append((h, t) + tuple(-s for s in rec[2:]))
            else:
                recs.append((t, h) + rec[2:])
        if even:
            srt = sorted(recs)
            dup = any(srt[i] == srt[i + 1] for i in range(len(srt) - 1))
            if dup:
                return None
            sign *= _inversion_parity(recs)
            recs = srt
        else:
            recs.sort()
        key = (tuple(r[:2] for r in recs), tuple(r[2:] for r in recs))
        if best_key is None or key < best_key:
            best = tuple(recs)
            best_key = key
            best_sign = sign
        elif key == best_key and sign != best_sign:
            return None
    return best, best_sign


def canonicalize(g: ColoredGraph, parity: Parity) -> CanonicalClass:
    """Canonical representative of g's signed symmetry class.

    Exhausts all v! vertex relabelings; for each, reverses edges so that
    tail < head and sorts the records, folding the sign rules of the
    parity.  Two relabelings reaching the same normal form with opposite
    signs witness an odd automorphism and yield Zero.
    """
    out = _canonical_records(g.v, g.records, parity, _perms_with_signs(g.v))
    if out is None:
        return ZERO
    recs, sign = out
    return CanonicalClass(ColoredGraph(g.v, g.k, recs), sign)


def act(g: ColoredGraph, elem: GroupElement, parity: Parity):
    """Apply a symmetry to g; returns (new graph, sign).

    The sign follows the parity rule: sgn(edge permutation) for n even,
    sgn(vertex permutation) * (-1)^#flips for n odd.
    """
    if len(elem.vertex_perm) != g.v or len(elem.edge_perm) != g.e:
        raise ValueError("group element dimensions do not match the graph")
    vp = elem.vertex_perm
    new_records = [None] * g.e
    for i, rec in enumerate(g.records):
        t, h = vp[rec[0]], vp[rec[1]]
        cs = rec[2:]
        if i in elem.flips:
            t, h = h, t
            cs = tuple(-s for s in cs)
        new_records[elem.edge_perm[i]] = (t, h) + cs
    if parity is Parity.EVEN:
        sign = perm_parity(elem.edge_perm)
    else:
        sign = perm_parity(vp) * (-1 if len(elem.flips) & 1 else 1)
    return ColoredGraph(g.v, g.k, tuple(new_records)), sign


def is_acyclic_in_color(g: ColoredGraph, c: int) -> bool:
    """True iff the color-c orientation of g has no directed cycle."""
    if not (1 <= c <= g.k):
        raise ValueError(f"color {c} out of range 1..{g.k}")
    arcs = []
    for rec in g.records:
        if rec[1 + c] > 0:
            arcs.append((rec[0], rec[1]))
        else:
            arcs.append((rec[1], rec[0]))
    return _arcs_acyclic(g.v, arcs)


def _arcs_acyclic(v, arcs) -> bool:
    indeg = [0] * v
    out = [[] for _ in range(v)]
    for a, b in arcs:
        out[a].append(b)
        indeg[b] += 1
    stack = [x for x in range(v) if indeg[x] == 0]
    seen = 0
    while stack:
        x = stack.pop()
        seen += 1
        for y in out[x]:
            indeg[y] -= 1
            if indeg[y] == 0:
                stack.append(y)
    return seen == v


def is_connected(g: ColoredGraph) -> bool:
    """True iff the underlying undirected graph has one component."""
    if g.v < 1:
        raise ValueError("graph needs at least one vertex")
    parent = list(range(g.v))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    comps = g.v
    for rec in g.records:
        a, b = find(rec[0]), find(rec[1])
        if a != b:
            parent[a] = b
            comps -= 1
    return comps == 1


def valence(g: ColoredGraph, x: int) -> int:
    if not (0 <= x < g.v):
        raise ValueError(f"vertex {x} out of range")
    return sum((rec[0] == x) + (rec[1] == x) for rec in g.records)


def is_passing_in_color(g: ColoredGraph, x: int, c: int) -> bool:
    """2-valent with color-c in-degree 1 and out-degree 1 at x."""
    incident = [rec for rec in g.records if x in rec[:2]]
    if len(incident) != 2 or incident[0][0] == incident[0][1]:
        return False
    heads = 0
    for rec in incident:
        head = rec[1] if rec[1 + c] > 0 else rec[0]
        if head == x:
            heads += 1
    return heads == 1


def is_passing(g: ColoredGraph, x: int) -> bool:
    """2-valent and the head of one edge and the tail of the other in
    every color.  With no colors every 2-valent vertex passes."""
    if not (0 <= x < g.v):
        raise ValueError(f"vertex {x} out of range")
    if valence(g, x) != 2:
        return False
    return all(is_passing_in_color(g, x, c) for c in range(1, g.k + 1))


def is_weakly_passing(g: ColoredGraph, x: int) -> bool:
    """Passing in every color but the last one, where it is not passing.

    The graph's last color plays the distinguished role; the remaining
    k - 1 colors are the base ones.
    """
    if g.k < 1:
        raise ValueError("weak passing needs at least one color")
    if not (0 <= x < g.v):
        raise ValueError(f"vertex {x} out of range")
    if valence(g, x) != 2:
        return False
    if is_passing_in_color(g, x, g.k):
        return False
    return all(is_passing_in_color(g, x, c) for c in range(1, g.k))


def has_passing_vertex(g: ColoredGraph) -> bool:
    return any(is_passing(g, x) for x in range(g.v))


def to_text(g: ColoredGraph) -> str:
    """Debug serialization: header line, then one edge per line
    ``a: t h s_1...s_k`` with signs written + or -."""
    lines = [f"v {g.v} k {g.k}"]
    for i, rec in enumerate(g.records):
        signs = " ".join("+" if s > 0 else "-" for s in rec[2:])
        line = f"{i + 1}: {rec[0]} {rec[1]}"
        if signs:
            line += " " + signs
        lines.append(line)
    return "\n".join(lines)


def from_text(text: str) -> ColoredGraph:
    lines = [ln for ln in text.strip().splitlines() if ln.strip()]
    head = lines[0].split()
    v, k = int(head[1]), int(head[3])
    records = []
    for ln in lines[1:]:
        label, rest = ln.split(":")
        parts = rest.split()
        t, h = int(parts[0]), int(parts[1])
        signs = tuple(1 if s == "+" else -1 for s in parts[2:])
        if len(signs) != k:
            raise ValueError(f"edge {label} carries {len(signs)} signs, expected {k}")
        records.append((t, h) + signs)
    return ColoredGraph(v, k, tuple(records))


class TermVector:
    """Finite formal linear combination with exact rational coefficients.

    Keys are hashable graph objects (canonical representatives); zero
    coefficients are dropped eagerly.
    """

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {}
        if terms:
            for key, coeff in terms.items() if isinstance(terms, dict) else terms:
                self.add(key, coeff)

    def add(self, key, coeff):
        coeff = Fraction(coeff)
        if not coeff:
            return
        new = self.terms.get(key, 0) + coeff
        if new:
            self.terms[key] = new
        else:
            del self.terms[key]

    def add_class(self, cls, coeff=1):
        if not cls.is_zero:
            self.add(cls.rep, Fraction(coeff) * cls.sign)

    def add_vector(self, other, scale=1):
        for key, coeff in other.terms.items():
            self.add(key, Fraction(scale) * coeff)

    def scaled(self, scale):
        out = TermVector()
        for key, coeff in self.terms.items():
            out.add(key, Fraction(scale) * coeff)
        return out

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        return isinstance(other, TermVector) and self.terms == other.terms

    def __len__(self):
        return len(self.terms)

    def __repr__(self):
        return f"TermVector({len(self.terms)} terms)"
