"""Kupisch series and the interval calculus for Nakayama algebras.

A Nakayama algebra is a linearly oriented line or cycle; it is determined
by the dimensions c_j of its indecomposable projectives.  On the cyclic
shape all indices live in Z (c and the co-series d are extended
N-periodically) and resolutions of uniserial modules become iteration of
two monotone maps:

    f: j -> j + c_j        g: j -> j - d_j

P(j) is the interval [j, f(j)-1], I(j) is [g(j)+1, j]; cosyzygies and
syzygies move interval endpoints by g and f.  The closed-form dimension
formulas below evaluate the resulting infima lazily and decide infinity
by repetition of the shift-invariant state, never by a depth cutoff.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import MonomialPresentation, PresentationError, Quiver

INF = float("inf")


class KupischError(ValueError):
    pass


@dataclass(frozen=True)
class KupischSeries:
    shape: str  # "linear" or "cyclic"
    c: tuple

    def __post_init__(self):
        c = tuple(int(x) for x in self.c)
        object.__setattr__(self, "c", c)
        n = len(c)
        if n == 0:
            raise KupischError("empty series")
        if self.shape == "linear":
            if c[-1] != 1:
                raise KupischError("linear series must end with 1")
            for j in range(n - 1):
                if c[j] < 2:
                    raise KupischError(
                        f"linear series needs c_{j+1} >= 2 before the last entry")
                if c[j + 1] < c[j] - 1:
                    raise KupischError(
                        f"series drops too fast at position {j+1}")
        elif self.shape == "cyclic":
            for j in range(n):
                if c[j] < 2:
                    raise KupischError("cyclic series needs every entry >= 2")
                if c[(j + 1) % n] < c[j] - 1:
                    raise KupischError(
                        f"series drops too fast at position {j+1}")
        else:
            raise KupischError(f"unknown shape {self.shape!r}")

    @property
    def n(self) -> int:
        return len(self.c)

    def c_at(self, j: int) -> int:
        """c_j, N-periodically on the cyclic shape."""
        n = len(self.c)
        if self.shape == "cyclic":
            return self.c[(j - 1) % n]
        if not 1 <= j <= n:
            raise KupischError(f"index {j} out of range 1..{n}")
        return self.c[j - 1]


def presentation_from_kupisch(ks: KupischSeries) -> MonomialPresentation:
    """Oriented line or cycle with the relation of length c_j at each j
    where that path exists; minimalisation prunes the redundant ones."""
    n = ks.n
    vertices = [str(j) for j in range(1, n + 1)]
    arrows = []
    if ks.shape == "linear":
        for j in range(1, n):
            arrows.append((f"a{j}", str(j), str(j + 1)))
    else:
        for j in range(1, n + 1):
            arrows.append((f"a{j}", str(j), str(j % n + 1)))
    quiver = Quiver(vertices, arrows)
    gens = []
    for j in range(1, n + 1):
        c = ks.c_at(j)
        if ks.shape == "linear":
            if j + c > n:
                continue
            word = tuple(f"a{k}" for k in range(j, j + c))
        else:
            word = tuple(f"a{(j - 1 + k) % n + 1}" for k in range(c))
        gens.append(quiver.path(word))
    name = f"nakayama_{ks.shape}_" + "-".join(str(x) for x in ks.c)
    pres = MonomialPresentation(quiver, gens, name=name)
    for j in range(1, n + 1):
        if len(pres.basis_from(str(j))) != ks.c_at(j):
            raise KupischError(
                f"series does not realise dim P({j}) = {ks.c_at(j)}")
    return pres


def kupisch_from_presentation(pres: MonomialPresentation):
    """Recover the Kupisch series, or None when not a Nakayama algebra.

    Cyclic series are returned in their lexicographically least rotation.
    """
    q = pres.quiver
    verts = q.vertices
    if any(q.deg_in(v) > 1 or q.deg_out(v) > 1 for v in verts):
        return None
    n = len(verts)
    sources = [v for v in verts if q.deg_in(v) == 0]
    arrows = q.arrows
    if len(arrows) == n - 1 and len(sources) == 1:
        order = [sources[0]]
        while q.out_arrows[order[-1]]:
            aid = q.out_arrows[order[-1]][0]
            order.append(q.target[aid])
        if len(order) != n:
            return None
        c = tuple(len(pres.basis_from(v)) for v in order)
        try:
            return KupischSeries("linear", c)
        except KupischError:
            return None
    if len(arrows) == n and not sources and n >= 1:
        start = verts[0]
        order = [start]
        while True:
            aid = q.out_arrows[order[-1]][0]
            nxt = q.target[aid]
            if nxt == start:
                break
            if nxt in order:
                return None
            order.append(nxt)
        if len(order) != n:
            return None
        c = [len(pres.basis_from(v)) for v in order]
        best = min(tuple(c[k:] + c[:k]) for k in range(n))
        try:
            return KupischSeries("cyclic", best)
        except KupischError:
            return None
    return None


def co_kupisch(ks: KupischSeries) -> tuple:
    """d_j = dim I(j), read off the realised presentation."""
    pres = presentation_from_kupisch(ks)
    return tuple(len(pres.basis_to(str(j))) for j in range(1, ks.n + 1))


def f_map(ks: KupischSeries, j: int) -> int:
    return j + ks.c_at(j)


def g_map(ks: KupischSeries, j: int, _d_cache={}) -> int:
    d = _d_cache.get(ks)
    if d is None:
        d = co_kupisch(ks)
        if len(_d_cache) > 2048:
            _d_cache.clear()
        _d_cache[ks] = d
    n = ks.n
    if ks.shape == "cyclic":
        return j - d[(j - 1) % n]
    if not 1 <= j <= n:
        raise KupischError(f"index {j} out of range 1..{n}")
    return j - d[j - 1]


def idim_projective_closed_form(ks: KupischSeries, i: int):
    """idim P(i) as the infimum over the g-iterate conditions
    2j:  g^j(i-1) <= g^{j+1}(a)   and   2j+1:  g^{j+1}(a) <= g^{j+1}(i-1),
    with a = i + c_i - 1.  Infinite when no condition ever fires, which is
    detected by repetition of the shift-invariant iterate state.
    """
    if not 1 <= i <= ks.n:
        raise KupischError(f"index {i} out of range 1..{ks.n}")
    a = i + ks.c_at(i) - 1
    s, u = a, i - 1
    n = ks.n
    seen = set()
    guard = 4 * n * n + n + 4
    j = 0
    while True:
        if ks.shape == "cyclic":
            state = (s % n, s - u)
            if state in seen:
                return INF
            seen.add(state)
        gs = g_map(ks, s)
        if u <= gs:
            return 2 * j
        gu = g_map(ks, u)
        if gs <= gu:
            return 2 * j + 1
        s, u = gs, gu
        j += 1
        if j > guard:
            raise KupischError("iteration guard exceeded in closed form")


def pdim_injective_closed_form(ks: KupischSeries, j: int):
    """pdim I(j) as the dual infimum over f-iterates of c = g(j)+1 and
    d = j+1:  2t:  f^{t+1}(c) <= f^t(d)   and   2t+1:  f^{t+1}(d) <= f^{t+1}(c)."""
    if not 1 <= j <= ks.n:
        raise KupischError(f"index {j} out of range 1..{ks.n}")
    s = g_map(ks, j) + 1
    u = j + 1
    n = ks.n
    seen = set()
    guard = 4 * n * n + n + 4
    t = 0
    while True:
        if ks.shape == "cyclic":
            state = (s % n, u - s)
            if state in seen:
                return INF
            seen.add(state)
        fs = f_map(ks, s)
        if fs <= u:
            return 2 * t
        fu = f_map(ks, u)
        if fu <= fs:
            return 2 * t + 1
        s, u = fs, fu
        t += 1
        if t > guard:
            raise KupischError("iteration guard exceeded in closed form")


def enumerate_kupisch_linear(n_max: int):
    """All linear series with N <= n_max, in (N, lexicographic) order."""
    for n in range(1, n_max + 1):
        if n == 1:
            yield KupischSeries("linear", (1,))
            continue

        def extend(suffix):
            # suffix is (c_j, ..., c_N); prepend admissible values
            if len(suffix) == n:
                yield KupischSeries("linear", suffix)
                return
            for c in range(2, suffix[0] + 2):
                yield from extend((c,) + suffix)

        yield from sorted(extend((1,)), key=lambda ks: ks.c)


def enumerate_kupisch_cyclic(n_max: int, cap=None):
    """All cyclic series with N <= n_max and entries bounded by 2N (or by
    an explicit cap), in (N, lexicographic) order."""
    for n in range(1, n_max + 1):
        bound = cap if cap is not None else 2 * n

        def extend(prefix):
            if len(prefix) == n:
                if prefix[0] >= prefix[-1] - 1:
                    yield KupischSeries("cyclic", prefix)
                return
            for c in range(max(2, prefix[-1] - 1), bound + 1):
                yield from extend(prefix + (c,))

        for c1 in range(2, bound + 1):
            yield from extend((c1,))


def enumerate_kupisch(n_max: int, cap=None):
    yield from enumerate_kupisch_linear(n_max)
    yield from enumerate_kupisch_cyclic(n_max, cap=cap)
