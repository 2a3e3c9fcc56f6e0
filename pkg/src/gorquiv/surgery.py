"""Degree-4 vertex cutting, its gluing inverse, and the reduction of
biserial overlap algebras to disjoint Nakayama components.

Cutting a degree-4 vertex v with labelled arrows (a1, a2 in; b1, b2 out)
whose mixed products a1*b2 and a2*b1 vanish replaces v by two vertices so
that a1 flows into the source of b2 and a2 into the source of b1.  All
arrow ids and relation words survive unchanged.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import MonomialPresentation, PresentationError, Quiver
from .analysis import two_gorenstein_criterion, _word_in_some_relation
from .nakayama import kupisch_from_presentation


class SurgeryError(ValueError):
    pass


@dataclass(frozen=True)
class CutLabeling:
    a1: str
    a2: str
    b1: str
    b2: str

    def as_tuple(self):
        return (self.a1, self.a2, self.b1, self.b2)


@dataclass(frozen=True)
class CutEvent:
    vertex: str
    v1: str
    v2: str
    labeling: CutLabeling


@dataclass
class CutTrace:
    events: list
    vertex_map: dict  # original vertex -> vertex in the final presentation
    final: MonomialPresentation


def cuttable_vertices(pres):
    """Degree-4 vertices with a valid cut labeling, one canonical labeling
    per vertex (swapping the roles of the two branches gives the same cut)."""
    q = pres.quiver
    out = []
    for v in sorted(q.vertices):
        if q.deg_in(v) != 2 or q.deg_out(v) != 2:
            continue
        ins = q.in_arrows[v]
        outs = q.out_arrows[v]
        best = None
        for a1, a2 in ((ins[0], ins[1]), (ins[1], ins[0])):
            for b1, b2 in ((outs[0], outs[1]), (outs[1], outs[0])):
                if not pres.is_zero_word((a1, b2)):
                    continue
                if not pres.is_zero_word((a2, b1)):
                    continue
                if _word_in_some_relation(pres, (a1, b1)):
                    continue
                if _word_in_some_relation(pres, (a2, b2)):
                    continue
                cand = (a1, a2, b1, b2)
                if best is None or cand < best:
                    best = cand
        if best is not None:
            out.append((v, CutLabeling(*best)))
    return tuple(out)


def _fresh_names(taken, base):
    v1, v2 = f"{base}_1", f"{base}_2"
    while v1 in taken or v2 in taken:
        v1 += "'"
        v2 += "'"
    return v1, v2


def cut(pres, v, labeling: CutLabeling):
    """Split the degree-4 vertex v along the labeling; returns the new
    presentation and a single-event trace."""
    if (v, labeling) not in set(cuttable_vertices(pres)):
        raise SurgeryError(f"vertex {v!r} with labeling {labeling} is not cuttable")
    q = pres.quiver
    v1, v2 = _fresh_names(set(q.vertices), v)
    vertices = [w for w in q.vertices if w != v] + [v1, v2]

    def move(aid, src, tgt):
        if aid == labeling.a1:
            tgt = v1
        elif aid == labeling.a2:
            tgt = v2
        if aid == labeling.b2:
            src = v1
        elif aid == labeling.b1:
            src = v2
        return (aid, src, tgt)

    arrows = [move(aid, src, tgt) for aid, src, tgt in q.arrows]
    quiver = Quiver(vertices, arrows)
    try:
        gens = [quiver.path(g.arrows) for g in pres.generators]
    except PresentationError as exc:
        raise SurgeryError(f"a relation breaks at the cut: {exc}") from exc
    new = MonomialPresentation(quiver, gens, name=f"{pres.name}_cut_{v}")
    event = CutEvent(v, v1, v2, labeling)
    vertex_map = {w: w for w in q.vertices if w != v}
    trace = CutTrace([event], vertex_map, new)
    return new, trace


def glue(pres, v1, v2, merged_name=None):
    """Merge two vertices into one; the inverse of cut on its image.

    Validation re-runs the finiteness check and fails loudly when the
    glued algebra is infinite-dimensional.
    """
    q = pres.quiver
    if v1 == v2:
        raise SurgeryError("cannot glue a vertex to itself")
    for w in (v1, v2):
        if w not in set(q.vertices):
            raise SurgeryError(f"unknown vertex {w!r}")
    if q.deg_in(v1) + q.deg_in(v2) > 2 or q.deg_out(v1) + q.deg_out(v2) > 2:
        raise SurgeryError("glued vertex would have more than two arrows per side")
    merged = merged_name
    if merged is None:
        merged = v1[:-2] if v1.endswith("_1") and v1[:-2] else v1
        taken = set(q.vertices) - {v1, v2}
        while merged in taken:
            merged += "'"
    vertices = [w for w in q.vertices if w not in (v1, v2)] + [merged]
    arrows = [(aid,
               merged if src in (v1, v2) else src,
               merged if tgt in (v1, v2) else tgt)
              for aid, src, tgt in q.arrows]
    quiver = Quiver(vertices, arrows)
    gens = [quiver.path(g.arrows) for g in pres.generators]
    try:
        return MonomialPresentation(quiver, gens, name=f"{pres.name}_glued")
    except PresentationError as exc:
        raise SurgeryError(f"gluing failed: {exc}") from exc


def connected_components(pres):
    """Split into connected components of the underlying graph; returns a
    list of presentations (relations stay within their component)."""
    q = pres.quiver
    parent = {v: v for v in q.vertices}

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for aid, src, tgt in q.arrows:
        rs, rt = find(src), find(tgt)
        if rs != rt:
            parent[rs] = rt
    groups = {}
    for v in q.vertices:
        groups.setdefault(find(v), []).append(v)
    comps = []
    for i, root in enumerate(sorted(groups)):
        vs = set(groups[root])
        quiver = Quiver(sorted(vs),
                        [(a, s, t) for a, s, t in q.arrows if s in vs])
        gens = [quiver.path(g.arrows) for g in pres.generators
                if g.source in vs]
        comps.append(MonomialPresentation(quiver, gens,
                                          name=f"{pres.name}_c{i}"))
    return comps


def reduce_to_nakayama(pres):
    """Cut every degree-4 vertex (lexicographic order); on biserial overlap
    algebras the result is a disjoint union of Nakayama components.

    Returns (final presentation, CutTrace, components, kupisch list) or
    None when the overlap criterion fails.
    """
    if not two_gorenstein_criterion(pres).passed:
        return None
    current = pres
    events = []
    vertex_map = {v: v for v in pres.quiver.vertices}
    while True:
        options = cuttable_vertices(current)
        if not options:
            break
        v, labeling = options[0]
        current, trace = cut(current, v, labeling)
        events.extend(trace.events)
        vertex_map = {orig: w for orig, w in vertex_map.items() if w != v}
    q = current.quiver
    if any(q.deg_in(v) > 1 or q.deg_out(v) > 1 for v in q.vertices):
        raise SurgeryError("reduction left a vertex of degree > 2")
    comps = connected_components(current)
    series = [kupisch_from_presentation(c) for c in comps]
    if any(s is None for s in series):
        raise SurgeryError("a reduced component is not recognisably Nakayama")
    trace = CutTrace(events, vertex_map, current)
    return current, trace, comps, series
