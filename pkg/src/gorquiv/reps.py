"""Module constructors and exact representation arithmetic.

A representation assigns to each vertex a rational vector space and to
each arrow a matrix from its source component to its target component.
All homological primitives reduce to per-vertex Gaussian elimination.

The structured constructors (projectives, injectives, uniserial quotients
M(p) and cyclic submodules pA) carry path-labelled bases, which the
identification routines exploit.
"""

from __future__ import annotations

from fractions import Fraction

from . import linalg
from .core import MonomialPresentation, Path, PresentationError


class RepresentationError(ValueError):
    pass


class PathSummandError(RepresentationError):
    """The representation is not a direct sum of cyclic path modules."""


class Representation:
    """dims: vertex -> dimension; mats: arrow id -> (dim_tgt x dim_src) matrix."""

    def __init__(self, pres, dims, mats, basis_labels=None):
        self.pres = pres
        self.dims = dict(dims)
        for v in pres.quiver.vertices:
            self.dims.setdefault(v, 0)
        self.mats = mats
        self.basis_labels = basis_labels  # optional, vertex -> list of labels

    @property
    def total_dim(self) -> int:
        return sum(self.dims.values())

    def is_zero(self) -> bool:
        return all(d == 0 for d in self.dims.values())

    def mat(self, aid):
        m = self.mats.get(aid)
        if m is None:
            q = self.pres.quiver
            return linalg.zeros(self.dims[q.target[aid]], self.dims[q.source[aid]])
        return m

    def dim_vector(self) -> tuple:
        return tuple(self.dims[v] for v in self.pres.quiver.vertices)

    def check_relations(self) -> bool:
        """Every minimal relation composes to the zero matrix."""
        q = self.pres.quiver
        for rel in self.pres.relations:
            word = rel.arrows
            m = self.mat(word[0])
            for aid in word[1:]:
                m = linalg.mat_mul(self.mat(aid), m)
            if any(any(x for x in row) for row in m):
                return False
        return True

    def act_on_vector(self, v, vec, word):
        """Right action of an arrow word on a vector sitting at vertex v."""
        q = self.pres.quiver
        cur_v, cur = v, vec
        for aid in word:
            if q.source[aid] != cur_v:
                raise RepresentationError(f"word not composable at {cur_v}")
            cur = linalg.mat_vec(self.mat(aid), cur)
            cur_v = q.target[aid]
        return cur_v, cur

    def to_json_dict(self) -> dict:
        def fmt(x):
            f = Fraction(x)
            return f"{f.numerator}/{f.denominator}" if f.denominator != 1 else str(f.numerator)
        return {
            "dims": {v: self.dims[v] for v in self.pres.quiver.vertices},
            "arrows": {aid: [[fmt(x) for x in row] for row in self.mat(aid)]
                       for aid in self.pres.quiver.arrow_ids},
        }


def zero_representation(pres) -> Representation:
    return Representation(pres, {v: 0 for v in pres.quiver.vertices}, {})


def _rep_from_labels(pres, labels, act):
    """Build a representation from labelled basis elements.

    labels: list of (label, vertex); act(label, arrow) -> label or None.
    """
    quiver = pres.quiver
    by_vertex = {v: [] for v in quiver.vertices}
    for label, v in labels:
        by_vertex[v].append(label)
    index = {}
    for v in quiver.vertices:
        for i, label in enumerate(by_vertex[v]):
            index[label] = (v, i)
    dims = {v: len(by_vertex[v]) for v in quiver.vertices}
    mats = {}
    for aid, src, tgt in quiver.arrows:
        m = linalg.zeros(dims[tgt], dims[src])
        nonzero = False
        for j, label in enumerate(by_vertex[src]):
            out = act(label, aid)
            if out is not None:
                _, i = index[out]
                m[i][j] = 1
                nonzero = True
        if nonzero:
            mats[aid] = m
    return Representation(pres, dims, mats, basis_labels=by_vertex)


def projective(pres, x) -> Representation:
    """P(x): basis the nonzero paths from x, action by right composition."""
    paths = sorted(pres.basis_from(x), key=Path.key)
    ext = {p: dict(pres.extensions(p)) for p in paths}

    def act(p, aid):
        return ext[p].get(aid)

    return _rep_from_labels(pres, [(p, p.target) for p in paths], act)


def injective(pres, x) -> Representation:
    """I(x): basis the nonzero paths ending at x; an arrow strips itself
    from the front of a path that starts with it."""
    paths = sorted(pres.basis_to(x), key=Path.key)
    present = {p.arrows: p for p in paths}

    def act(p, aid):
        if p.arrows and p.arrows[0] == aid:
            return present[p.arrows[1:]]
        return None

    return _rep_from_labels(pres, [(p, p.source) for p in paths], act)


def simple(pres, x) -> Representation:
    return _rep_from_labels(pres, [(pres.quiver.trivial_path(x), x)],
                            lambda p, aid: None)


def uniserial_module(pres, p: Path) -> Representation:
    """M(p): basis the left subpaths of p."""
    if pres.path_is_zero(p):
        raise RepresentationError(f"defining path {p} is zero")
    prefixes = [Path(p.source, p.source, ()) if k == 0
                else pres.quiver.path(p.arrows[:k])
                for k in range(p.length + 1)]

    def act(q, aid):
        k = q.length
        if k < p.length and p.arrows[k] == aid:
            return prefixes[k + 1]
        return None

    return _rep_from_labels(pres, [(q, q.target) for q in prefixes], act)


def cyclic_module(pres, p: Path) -> Representation:
    """pA: basis the continuations q of p with p*q nonzero."""
    if pres.path_is_zero(p):
        raise RepresentationError(f"defining path {p} is zero")
    conts = [q for q in pres.basis_from(p.target)
             if not pres.is_zero_word(p.arrows + q.arrows)]
    conts.sort(key=Path.key)
    cont_set = {q.arrows for q in conts}
    by_word = {q.arrows: q for q in conts}

    def act(q, aid):
        w = q.arrows + (aid,)
        if w in cont_set:
            return by_word[w]
        return None

    return _rep_from_labels(pres, [(q, q.target) for q in conts], act)


def path_module(pres, kind, p: Path) -> Representation:
    if kind == "quotient":
        return uniserial_module(pres, p)
    if kind == "cyclic":
        return cyclic_module(pres, p)
    raise ValueError("kind must be 'quotient' or 'cyclic'")


# -- tops, socles, covers ---------------------------------------------------


def radical_spans(rep):
    """Per vertex, a matrix whose columns span (rad M)_v."""
    q = rep.pres.quiver
    spans = {}
    for v in q.vertices:
        cols = []
        for aid in q.in_arrows[v]:
            m = rep.mats.get(aid)
            if m is None:
                continue
            src = q.source[aid]
            for j in range(rep.dims[src]):
                col = [m[i][j] for i in range(rep.dims[v])]
                if any(col):
                    cols.append(col)
        spans[v] = cols  # list of column vectors
    return spans


def top(rep) -> dict:
    """Multiplicities of the simple summands of M/rad M."""
    spans = radical_spans(rep)
    out = {}
    for v in rep.pres.quiver.vertices:
        n = rep.dims[v]
        if n == 0:
            continue
        rows = [[c[i] for c in spans[v]] for i in range(n)] if spans[v] else []
        r = linalg.rank(rows) if rows else 0
        if n - r:
            out[v] = n - r
    return out


def socle(rep) -> dict:
    """Multiplicities of the simple summands of the socle."""
    q = rep.pres.quiver
    out = {}
    for v in q.vertices:
        n = rep.dims[v]
        if n == 0:
            continue
        stacked = []
        for aid in q.out_arrows[v]:
            m = rep.mats.get(aid)
            if m is not None:
                stacked.extend(m)
        if stacked:
            k = len(linalg.nullspace(stacked, n))
        else:
            k = n
        if k:
            out[v] = k
    return out


def top_generators(rep):
    """Deterministic list of (vertex, vector) spanning a complement of rad."""
    spans = radical_spans(rep)
    gens = []
    for v in rep.pres.quiver.vertices:
        n = rep.dims[v]
        if n == 0:
            continue
        cols = [list(c) for c in spans[v]]
        current = linalg.rank([[c[i] for c in cols] for i in range(n)]) if cols else 0
        for i in range(n):
            if current == n:
                break
            e = [1 if k == i else 0 for k in range(n)]
            trial = cols + [e]
            r = linalg.rank([[c[k] for c in trial] for k in range(n)])
            if r > current:
                cols = trial
                current = r
                gens.append((v, e))
    return gens


class Morphism:
    """Per-vertex matrices of a module map src -> dst."""

    def __init__(self, src, dst, blocks):
        self.src = src
        self.dst = dst
        self.blocks = blocks  # vertex -> matrix (dst_dim x src_dim)

    def block(self, v):
        b = self.blocks.get(v)
        if b is None:
            return linalg.zeros(self.dst.dims[v], self.src.dims[v])
        return b

    def commutes(self) -> bool:
        q = self.src.pres.quiver
        for aid, u, v in q.arrows:
            left = linalg.mat_mul(self.dst.mat(aid), self.block(u))
            right = linalg.mat_mul(self.block(v), self.src.mat(aid))
            if left != right:
                return False
        return True

    def is_surjective(self) -> bool:
        for v in self.dst.pres.quiver.vertices:
            n = self.dst.dims[v]
            if n == 0:
                continue
            if linalg.rank(self.block(v)) != n:
                return False
        return True


def direct_sum(pres, reps):
    dims = {v: sum(r.dims[v] for r in reps) for v in pres.quiver.vertices}
    offsets = []
    running = {v: 0 for v in pres.quiver.vertices}
    for r in reps:
        offsets.append(dict(running))
        for v in pres.quiver.vertices:
            running[v] += r.dims[v]
    mats = {}
    q = pres.quiver
    for aid, u, v in q.arrows:
        if all(aid not in r.mats for r in reps):
            continue
        m = linalg.zeros(dims[v], dims[u])
        for r, off in zip(reps, offsets):
            block = r.mats.get(aid)
            if block is None:
                continue
            for i in range(r.dims[v]):
                for j in range(r.dims[u]):
                    x = block[i][j]
                    if x:
                        m[off[v] + i][off[u] + j] = x
        mats[aid] = m
    return Representation(pres, dims, mats), offsets


def projective_cover(pres, rep):
    """Minimal projective cover with its surjection.

    Returns (cover, morphism, vertices) where vertices is the multiset of
    cover summands in deterministic order.
    """
    gens = top_generators(rep)
    summands = [projective(pres, v) for v, _ in gens]
    cover, offsets = direct_sum(pres, summands)
    blocks = {v: [[0] * cover.dims[v] for _ in range(rep.dims[v])]
              for v in pres.quiver.vertices}
    for (gen_v, gen_vec), summand, off in zip(gens, summands, offsets):
        index = {p: (v, i) for v in pres.quiver.vertices
                 for i, p in enumerate(summand.basis_labels[v])}
        # image of each basis path of P(gen_v), found by walking the path tree
        images = {}  # path -> (vertex, vector in rep)
        root = pres.quiver.trivial_path(gen_v)
        images[root] = (gen_v, list(gen_vec))
        stack = [root]
        while stack:
            p = stack.pop()
            pv, pvec = images[p]
            for aid, child in pres.extensions(p):
                cv = pres.quiver.target[aid]
                images[child] = (cv, linalg.mat_vec(rep.mat(aid), pvec))
                stack.append(child)
        for p, (pv, pvec) in images.items():
            col = off[pv] + index[p][1]
            for i, x in enumerate(pvec):
                if x:
                    blocks[pv][i][col] = x
    phi = Morphism(cover, rep, blocks)
    vertices = sorted(v for v, _ in gens)
    return cover, phi, vertices


def kernel(phi: Morphism):
    """Kernel of a module map, with its inclusion into the source."""
    src = phi.src
    pres = src.pres
    q = pres.quiver
    kbasis = {}
    for v in q.vertices:
        n = src.dims[v]
        if n == 0:
            kbasis[v] = []
            continue
        block = phi.block(v)
        kbasis[v] = linalg.nullspace(block, n) if block else \
            [[1 if i == j else 0 for i in range(n)] for j in range(n)]
    dims = {v: len(kbasis[v]) for v in q.vertices}
    # columns of incl[v] are the kernel basis vectors
    incl = {v: [[kbasis[v][j][i] for j in range(dims[v])]
                for i in range(src.dims[v])] for v in q.vertices}
    mats = {}
    for aid, u, v in q.arrows:
        if dims[u] == 0 or dims[v] == 0:
            continue
        img = linalg.mat_mul(src.mat(aid), incl[u])
        if not any(any(row) for row in img):
            continue
        mats[aid] = linalg.solve_columns(incl[v], img, dims[v], dims[u])
    ker = Representation(pres, dims, mats)
    return ker, Morphism(ker, src, incl)


def kernel_of_cover(pres, rep):
    cover, phi, vertices = projective_cover(pres, rep)
    ker, _ = kernel(phi)
    return ker, vertices


def decompose_projective(rep):
    """Vertices v_i with rep ~ (+) P(v_i), or None when not projective."""
    pres = rep.pres
    if rep.is_zero():
        return []
    t = top(rep)
    expected = sum(len(pres.basis_from(v)) * mult for v, mult in t.items())
    if expected != rep.total_dim:
        return None
    cover, phi, vertices = projective_cover(pres, rep)
    if cover.total_dim != rep.total_dim:
        return None
    for v in pres.quiver.vertices:
        block = phi.block(v)
        if rep.dims[v] and linalg.rank(block) != rep.dims[v]:
            return None
    return vertices


# -- identification of path-module sums -------------------------------------


def path_classes(pres):
    """Isomorphism classes of cyclic modules pA over length >= 1 paths.

    Two paths give isomorphic cyclic modules exactly when they share the
    same root vertex and the same continuation set.  Returns
    {(root, frozenset(words)): representative Path} with shortlex-least
    representatives, plus a per-vertex list sorted by (size, rep word).
    """
    cached = pres._cache.get("path_classes")
    if cached is not None:
        return cached
    classes = {}
    for p in pres.nonzero_paths():
        if p.length == 0:
            continue
        t = frozenset(q.arrows for q in pres.basis_from(p.target)
                      if not pres.is_zero_word(p.arrows + q.arrows))
        key = (p.target, t)
        old = classes.get(key)
        if old is None or p.key() < old.key():
            classes[key] = p
    by_vertex = {v: [] for v in pres.quiver.vertices}
    for (root, t), rep_path in classes.items():
        by_vertex[root].append((len(t), rep_path.key(), (root, t)))
    for v in by_vertex:
        by_vertex[v].sort()
    result = (classes, by_vertex)
    pres._cache["path_classes"] = result
    return result


def _action_columns(pres, rep, v):
    """For each continuation path q from v with nonzero action, the matrix
    of g -> g.q.  Zero branches are pruned (children of zero are zero)."""
    n = rep.dims[v]
    cols = {}
    root = pres.quiver.trivial_path(v)
    cols[root.arrows] = (v, linalg.identity(n))
    stack = [(root, v, linalg.identity(n))]
    while stack:
        p, pv, m = stack.pop()
        for aid, child in pres.extensions(p):
            cv = pres.quiver.target[aid]
            if rep.dims[pv] == 0 or rep.dims[cv] == 0:
                continue
            cm = linalg.mat_mul(rep.mat(aid), m)
            if not any(any(row) for row in cm):
                continue
            cols[child.arrows] = (cv, cm)
            stack.append((child, cv, cm))
    return cols


def _quotient_by_submodule(rep, span_cols):
    """Quotient representation by the submodule spanned per vertex.

    In the quotient basis (the coordinates away from the rref pivots of the
    span), a pivot coordinate e_pc reduces to -sum_f u[f] e_f where u is
    the rref row with leading entry pc.
    """
    pres = rep.pres
    q = pres.quiver
    proj = {}
    section = {}
    dims = {}
    for v in q.vertices:
        n = rep.dims[v]
        cols = span_cols.get(v, [])
        if n == 0 or not cols:
            dims[v] = n
            proj[v] = linalg.identity(n)
            section[v] = linalg.identity(n)
            continue
        work, pivots = linalg.rref([list(c) for c in cols])
        pivot_set = set(pivots)
        free = [i for i in range(n) if i not in pivot_set]
        dims[v] = len(free)
        pm = []
        for f in free:
            row = [0] * n
            row[f] = 1
            for r, pc in enumerate(pivots):
                row[pc] = -work[r][f]
            pm.append(row)
        proj[v] = pm  # dims[v] x n
        section[v] = [[1 if i == free[j] else 0 for j in range(len(free))]
                      for i in range(n)]  # n x dims[v]
    mats = {}
    for aid, u, v in q.arrows:
        if dims[u] == 0 or dims[v] == 0:
            continue
        m = linalg.mat_mul(proj[v], linalg.mat_mul(rep.mat(aid), section[u]))
        if any(any(r) for r in m):
            mats[aid] = m
    return Representation(pres, dims, mats)


def identify_path_summands(pres, rep):
    """Decompose a representation known to be a direct sum of cyclic path
    modules; returns the list of shortlex-least representative paths.

    Raises PathSummandError when the input does not have that shape.
    """
    classes, by_vertex = path_classes(pres)
    found = []
    current = rep
    guard = rep.total_dim + 1
    while not current.is_zero():
        guard -= 1
        if guard < 0:
            raise PathSummandError("peeling did not terminate")
        tops = top(current)
        if not tops:
            raise PathSummandError("nonzero module with zero top")
        v = sorted(tops)[0]
        n = current.dims[v]
        rad_cols = radical_spans(current)[v]
        rad_rows = [[c[i] for c in rad_cols] for i in range(n)] if rad_cols else None
        rad_rank = linalg.rank(rad_rows) if rad_rows else 0
        action = _action_columns(pres, current, v)
        all_words = set(action.keys())
        chosen = None
        for size, repkey, key in by_vertex[v]:
            root, tset = key
            # g must be killed by every continuation outside the class set
            outside = sorted(all_words - set(tset) - {()})
            rows = []
            for w in outside:
                _, m = action[w]
                rows.extend(m)
            if rows:
                sol = linalg.nullspace(rows, n)
            else:
                sol = [[1 if i == j else 0 for i in range(n)] for j in range(n)]
            if not sol:
                continue
            # pick a solution vector outside the radical
            g = None
            for cand in sol:
                if rad_rows is None:
                    g = cand
                    break
                ext = [row + [cand[i]] for i, row in enumerate(rad_rows)]
                if linalg.rank(ext) > rad_rank:
                    g = cand
                    break
            if g is None:
                continue
            chosen = (key, g, tset)
            break
        if chosen is None:
            raise PathSummandError(
                f"no cyclic path module splits off at vertex {v!r}")
        key, g, tset = chosen
        # span of gA and consistency check
        span = {u: [] for u in pres.quiver.vertices}
        count = 0
        for w in sorted(tset):
            wv, m = action[w]
            vec = linalg.mat_vec(m, g)
            if any(vec):
                span[wv].append(vec)
                count += 1
        expected = len(tset)
        total_rank = sum(linalg.rank([[c[i] for c in span[u]]
                                      for i in range(current.dims[u])])
                         for u in pres.quiver.vertices if span[u])
        if count != expected or total_rank != expected:
            raise PathSummandError(
                "candidate generator does not span a cyclic path module")
        found.append(classes[key])
        current = _quotient_by_submodule(current, span)
    return sorted(found, key=Path.key)
