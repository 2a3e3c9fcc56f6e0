"""Quivers, paths and monomial presentations.

A presentation is a finite quiver together with a set of forbidden paths
(the monomial relations).  Zero-testing of a path reduces to forbidden
factor containment, which is answered by an Aho-Corasick automaton over
the arrow alphabet.  Validation enumerates the finite basis of nonzero
paths and rejects infinite-dimensional input exactly, by detecting a cycle
in the graph of (vertex, automaton state) pairs.
"""

from __future__ import annotations

import json
from dataclasses import dataclass


class PresentationError(ValueError):
    """Invalid DSL source or inconsistent presentation data."""

    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        if line is not None:
            loc = f"line {line}"
            if column is not None:
                loc += f", column {column}"
            message = f"{loc}: {message}"
        super().__init__(message)


@dataclass(frozen=True)
class Path:
    """A composable word of arrows, or a trivial path at a vertex."""

    source: str
    target: str
    arrows: tuple

    @property
    def length(self) -> int:
        return len(self.arrows)

    @property
    def is_trivial(self) -> bool:
        return not self.arrows

    def key(self):
        """Shortlex sort key: length, then word, then base vertex."""
        return (len(self.arrows), self.arrows, self.source)

    def __str__(self):
        if not self.arrows:
            return f"e_{self.source}"
        return "*".join(self.arrows)


class Quiver:
    """Finite quiver with string vertex and arrow ids.

    Loops and parallel arrows are allowed; a loop counts +1 towards both
    the in-degree and the out-degree of its vertex.
    """

    def __init__(self, vertices, arrows):
        vertices = tuple(vertices)
        seen = set()
        for v in vertices:
            if v in seen:
                raise PresentationError(f"duplicate vertex id {v!r}")
            seen.add(v)
        self.vertices = tuple(sorted(seen))
        self._vertex_set = seen
        vertex_set = seen
        arrow_list = []
        self.source = {}
        self.target = {}
        for aid, src, tgt in arrows:
            if aid in self.source:
                raise PresentationError(f"duplicate arrow id {aid!r}")
            if src not in vertex_set:
                raise PresentationError(f"unknown vertex {src!r} in arrow {aid!r}")
            if tgt not in vertex_set:
                raise PresentationError(f"unknown vertex {tgt!r} in arrow {aid!r}")
            self.source[aid] = src
            self.target[aid] = tgt
            arrow_list.append((aid, src, tgt))
        arrow_list.sort()
        self.arrows = tuple(arrow_list)
        self.arrow_ids = tuple(a for a, _, _ in arrow_list)
        self.out_arrows = {v: [] for v in self.vertices}
        self.in_arrows = {v: [] for v in self.vertices}
        for aid, src, tgt in arrow_list:
            self.out_arrows[src].append(aid)
            self.in_arrows[tgt].append(aid)

    def deg_out(self, v) -> int:
        return len(self.out_arrows[v])

    def deg_in(self, v) -> int:
        return len(self.in_arrows[v])

    def trivial_path(self, v) -> Path:
        if v not in self._vertex_set:
            raise PresentationError(f"unknown vertex {v!r}")
        return Path(v, v, ())

    def path(self, arrow_ids, base=None) -> Path:
        """Build a path from a word of arrow ids, checking composability."""
        word = tuple(arrow_ids)
        if not word:
            if base is None:
                raise PresentationError("trivial path needs a base vertex")
            return self.trivial_path(base)
        prev = None
        for aid in word:
            if aid not in self.source:
                raise PresentationError(f"unknown arrow {aid!r}")
            if prev is not None and self.target[prev] != self.source[aid]:
                raise PresentationError(
                    f"arrows {prev!r} and {aid!r} do not compose"
                )
            prev = aid
        return Path(self.source[word[0]], self.target[word[-1]], word)

    def compose(self, p: Path, q: Path) -> Path:
        if p.target != q.source:
            raise PresentationError(f"paths {p} and {q} do not compose")
        if not p.arrows:
            return q
        if not q.arrows:
            return p
        return Path(p.source, q.target, p.arrows + q.arrows)


class _Automaton:
    """Aho-Corasick matcher for the minimal relation words."""

    def __init__(self, words):
        self.goto = [{}]
        self.fail = [0]
        self.terminal = [False]
        for word in words:
            state = 0
            for sym in word:
                nxt = self.goto[state].get(sym)
                if nxt is None:
                    nxt = len(self.goto)
                    self.goto[state][sym] = nxt
                    self.goto.append({})
                    self.fail.append(0)
                    self.terminal.append(False)
                state = nxt
            self.terminal[state] = True
        # breadth-first failure links
        queue = []
        for sym, s in self.goto[0].items():
            self.fail[s] = 0
            queue.append(s)
        while queue:
            state = queue.pop(0)
            if self.terminal[self.fail[state]]:
                self.terminal[state] = True
            for sym, nxt in self.goto[state].items():
                queue.append(nxt)
                f = self.fail[state]
                while f and sym not in self.goto[f]:
                    f = self.fail[f]
                self.fail[nxt] = self.goto[f].get(sym, 0)
                if self.fail[nxt] == nxt:
                    self.fail[nxt] = 0

    def step(self, state: int, sym) -> int:
        while True:
            nxt = self.goto[state].get(sym)
            if nxt is not None:
                return nxt
            if state == 0:
                return 0
            state = self.fail[state]

    def hits(self, word) -> bool:
        state = 0
        for sym in word:
            state = self.step(state, sym)
            if self.terminal[state]:
                return True
        return False


def minimal_relation_words(words) -> tuple:
    """Antichain of words under contiguous-subword containment."""
    uniq = sorted(set(tuple(w) for w in words), key=lambda w: (len(w), w))
    kept = []
    for w in uniq:
        redundant = False
        for v in kept:
            lv = len(v)
            if lv <= len(w):
                for i in range(len(w) - lv + 1):
                    if w[i:i + lv] == v:
                        redundant = True
                        break
            if redundant:
                break
        if not redundant:
            kept.append(w)
    return tuple(kept)


class MonomialPresentation:
    """A finite-dimensional monomial quiver algebra kQ/I.

    Immutable after construction; all queries are pure.  Construction
    validates admissibility (generators of length >= 2) and finite
    dimensionality, and normalises the generators to the set of minimal
    relations.  The original generator list is kept for serialization.
    """

    def __init__(self, quiver: Quiver, generators, name="A"):
        self.name = name
        self.quiver = quiver
        gens = []
        for g in generators:
            if not isinstance(g, Path):
                g = quiver.path(g)
            if g.length < 2:
                raise PresentationError(
                    f"relation {g} has length {g.length}; admissibility needs length >= 2"
                )
            gens.append(g)
        self.generators = tuple(sorted(gens, key=Path.key))
        words = minimal_relation_words(g.arrows for g in self.generators)
        self.relations = tuple(quiver.path(w) for w in words)
        self._automaton = _Automaton(words)
        self._basis, self._children = self._enumerate_basis()
        self._basis_by_source = {v: [] for v in quiver.vertices}
        self._basis_by_target = {v: [] for v in quiver.vertices}
        for p in self._basis:
            self._basis_by_source[p.source].append(p)
            self._basis_by_target[p.target].append(p)
        self._cache = {}

    # -- construction helpers -------------------------------------------

    def _enumerate_basis(self):
        """All nonzero paths, or raise when the algebra is infinite-dimensional.

        Works on the product graph of (vertex, automaton state): if its
        reachable relation-free part has a cycle, some nonzero path can be
        pumped forever.  Otherwise the walks of the resulting DAG are the
        basis.
        """
        quiver = self.quiver
        aut = self._automaton
        WHITE, GRAY, BLACK = 0, 1, 2
        color = {}

        def successors(node):
            v, state = node
            out = []
            for aid in quiver.out_arrows[v]:
                nstate = aut.step(state, aid)
                if not aut.terminal[nstate]:
                    out.append((aid, (quiver.target[aid], nstate)))
            return out

        for v in quiver.vertices:
            start = (v, 0)
            if color.get(start, WHITE) == BLACK:
                continue
            stack = [(start, iter(successors(start)))]
            color[start] = GRAY
            while stack:
                node, it = stack[-1]
                advanced = False
                for _, nxt in it:
                    c = color.get(nxt, WHITE)
                    if c == GRAY:
                        raise PresentationError(
                            "infinite-dimensional: nonzero paths can be pumped "
                            f"around a cycle through vertex {nxt[0]!r}"
                        )
                    if c == WHITE:
                        color[nxt] = GRAY
                        stack.append((nxt, iter(successors(nxt))))
                        advanced = True
                        break
                if not advanced:
                    color[node] = BLACK
                    stack.pop()

        basis = []
        children = {}
        for v in quiver.vertices:
            root = quiver.trivial_path(v)
            todo = [(root, (v, 0))]
            while todo:
                path, node = todo.pop()
                basis.append(path)
                kids = []
                for aid, nxt in successors(node):
                    child = Path(path.source, nxt[0],
                                 path.arrows + (aid,))
                    kids.append((aid, child))
                    todo.append((child, nxt))
                children[path] = kids
        basis.sort(key=Path.key)
        return tuple(basis), children

    # -- queries ---------------------------------------------------------

    @property
    def dimension(self) -> int:
        return len(self._basis)

    def nonzero_paths(self) -> tuple:
        return self._basis

    def basis_from(self, v) -> tuple:
        return tuple(self._basis_by_source[v])

    def basis_to(self, v) -> tuple:
        return tuple(self._basis_by_target[v])

    def extensions(self, p: Path):
        """Nonzero one-arrow right extensions of a nonzero path."""
        return self._children[p]

    def is_zero_word(self, word) -> bool:
        return self._automaton.hits(word)

    def path_is_zero(self, p) -> bool:
        if isinstance(p, Path):
            word = p.arrows
        else:
            word = tuple(p)
            self.quiver.path(word)  # composability check
        if len(word) < 2:
            return False
        return self._automaton.hits(word)

    def compose_nonzero(self, p: Path, q: Path):
        """p*q as a basis path, or None when the product is zero."""
        if p.target != q.source:
            raise PresentationError(f"paths {p} and {q} do not compose")
        word = p.arrows + q.arrows
        if not word:
            return self.quiver.trivial_path(p.source)
        if self._automaton.hits(word):
            return None
        return Path(p.source, q.target, word)

    def maximal_paths(self, x, side) -> tuple:
        """Left-maximal paths ending at x, or right-maximal paths from x."""
        if x not in set(self.quiver.vertices):
            raise PresentationError(f"unknown vertex {x!r}")
        quiver = self.quiver
        result = []
        if side == "left":
            for p in self._basis_by_target[x]:
                if all(self._automaton.hits((a,) + p.arrows)
                       for a in quiver.in_arrows[p.source]):
                    result.append(p)
        elif side == "right":
            for p in self._basis_by_source[x]:
                if all(self._automaton.hits(p.arrows + (a,))
                       for a in quiver.out_arrows[p.target]):
                    result.append(p)
        else:
            raise ValueError("side must be 'left' or 'right'")
        return tuple(sorted(result, key=Path.key))

    def opposite(self) -> "MonomialPresentation":
        """Reverse all arrows and relation words.  An involution."""
        cached = self._cache.get("opposite")
        if cached is not None:
            return cached
        quiver = self.quiver
        op_quiver = Quiver(quiver.vertices,
                           [(a, quiver.target[a], quiver.source[a])
                            for a, _, _ in quiver.arrows])
        op_gens = [tuple(reversed(g.arrows)) for g in self.generators]
        op = MonomialPresentation(op_quiver, [op_quiver.path(w) for w in op_gens],
                                  name=self.name)
        self._cache["opposite"] = op
        op._cache["opposite"] = self
        return op

    def structure_key(self):
        return (self.quiver.vertices, self.quiver.arrows,
                tuple(r.arrows for r in self.relations))

    def __eq__(self, other):
        if not isinstance(other, MonomialPresentation):
            return NotImplemented
        return self.structure_key() == other.structure_key()

    def __hash__(self):
        return hash(self.structure_key())

    def __repr__(self):
        return (f"MonomialPresentation({self.name!r}, "
                f"|Q0|={len(self.quiver.vertices)}, "
                f"|Q1|={len(self.quiver.arrows)}, "
                f"relations={len(self.relations)}, dim={self.dimension})")

    # -- serialization ---------------------------------------------------

    def to_dsl(self) -> str:
        lines = [f"algebra {self.name}"]
        lines.append("vertices " + " ".join(self.quiver.vertices))
        for aid, src, tgt in self.quiver.arrows:
            lines.append(f"arrow {aid}: {src} -> {tgt}")
        for g in self.generators:
            lines.append("relation " + " ".join(g.arrows))
        return "\n".join(lines) + "\n"

    def to_json_dict(self) -> dict:
        return {
            "name": self.name,
            "vertices": list(self.quiver.vertices),
            "arrows": [{"id": a, "src": s, "tgt": t}
                       for a, s, t in self.quiver.arrows],
            "relations": [list(g.arrows) for g in self.generators],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), indent=2)

    def to_dot(self) -> str:
        lines = [f'digraph "{self.name}" {{']
        for v in self.quiver.vertices:
            lines.append(f'  "{v}";')
        for aid, src, tgt in self.quiver.arrows:
            lines.append(f'  "{src}" -> "{tgt}" [label="{aid}"];')
        for r in self.relations:
            lines.append(f'  // relation: {" ".join(r.arrows)}')
        lines.append("}")
        return "\n".join(lines) + "\n"


def presentation_from_json(data) -> MonomialPresentation:
    if isinstance(data, str):
        data = json.loads(data)
    quiver = Quiver(data["vertices"],
                    [(a["id"], a["src"], a["tgt"]) for a in data["arrows"]])
    gens = [quiver.path(tuple(w)) for w in data.get("relations", [])]
    return MonomialPresentation(quiver, gens, name=data.get("name", "A"))


def parse_presentation(text: str) -> MonomialPresentation:
    """Parse the line-oriented DSL.  '#' starts a comment."""
    name = None
    vertices = []
    arrows = []
    relation_words = []
    seen_vertices = False
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        head = tokens[0]
        if head == "algebra":
            if len(tokens) != 2:
                raise PresentationError("expected: algebra <name>", lineno)
            name = tokens[1]
        elif head == "vertices":
            if len(tokens) < 2:
                raise PresentationError("expected at least one vertex id", lineno)
            vertices.extend(tokens[1:])
            seen_vertices = True
        elif head == "arrow":
            rest = line[len("arrow"):].strip()
            if ":" not in rest:
                raise PresentationError(
                    "expected: arrow <id>: <src> -> <tgt>", lineno,
                    column=raw.find(rest) + 1)
            aid, spec = rest.split(":", 1)
            aid = aid.strip()
            if not aid:
                raise PresentationError("missing arrow id", lineno)
            if "->" not in spec:
                raise PresentationError(
                    "expected '->' between source and target", lineno,
                    column=raw.find(spec) + 1)
            src, tgt = (part.strip() for part in spec.split("->", 1))
            if not src or not tgt or " " in src or " " in tgt:
                raise PresentationError(
                    "expected: arrow <id>: <src> -> <tgt>", lineno)
            arrows.append((aid, src, tgt, lineno))
        elif head == "relation":
            if len(tokens) < 2:
                raise PresentationError("empty relation", lineno)
            relation_words.append((tuple(tokens[1:]), lineno))
        else:
            raise PresentationError(f"unknown directive {head!r}", lineno,
                                    column=raw.find(head) + 1)
    if not seen_vertices:
        raise PresentationError("no 'vertices' line found", len(text.splitlines()) or 1)
    vertex_set = set(vertices)
    for aid, src, tgt, lineno in arrows:
        if src not in vertex_set:
            raise PresentationError(f"unknown vertex {src!r}", lineno)
        if tgt not in vertex_set:
            raise PresentationError(f"unknown vertex {tgt!r}", lineno)
    try:
        quiver = Quiver(vertices, [(a, s, t) for a, s, t, _ in arrows])
    except PresentationError:
        raise
    gens = []
    for word, lineno in relation_words:
        try:
            p = quiver.path(word)
        except PresentationError as exc:
            raise PresentationError(str(exc), lineno) from None
        if p.length < 2:
            raise PresentationError(
                f"relation {' '.join(word)} has length {p.length} (< 2)", lineno)
        gens.append(p)
    return MonomialPresentation(quiver, gens, name=name or "A")
