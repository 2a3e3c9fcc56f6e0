"""Minimal projective resolutions, exact dimensions and dominant dimension.

Two routes compute every resolution:

* the hybrid pipeline: exact kernels for the first two syzygies, then the
  combinatorial continuation rule on cyclic path modules (valid from the
  second syzygy on, where every summand is such a module);
* the engine: iterated cover-plus-kernel on explicit representations,
  with syzygies recognised by linear-algebra peeling.

Infinity is decided by repetition of the (finite) set of syzygy classes,
never by a depth cutoff.  Both routes share nothing past the membership
automaton, so their agreement is a meaningful cross-check.
"""

from __future__ import annotations

from collections import Counter

from .core import MonomialPresentation, Path, PresentationError
from .reps import (
    PathSummandError,
    cyclic_module,
    decompose_projective,
    identify_path_summands,
    injective,
    kernel_of_cover,
    projective_cover,
    top,
)

INF = float("inf")

# resource guard multiplier for state-orbit walks; overruns raise
_GUARD_FACTOR = 10


class ResolutionError(RuntimeError):
    """Internal inconsistency between resolution routes, or guard overrun."""


def combinatorial_syzygy_step(pres, p: Path) -> tuple:
    """Minimal nonzero continuations q of p with p*q zero.

    The syzygy of the cyclic module pA is the direct sum of qA over these
    continuations; empty output means pA is projective.
    """
    cache = pres._cache.setdefault("syzygy_step", {})
    hit = cache.get(p)
    if hit is not None:
        return hit
    if pres.path_is_zero(p):
        raise PresentationError(f"path {p} is zero")
    out = []
    aut = pres._automaton
    state0 = 0
    for sym in p.arrows:
        state0 = aut.step(state0, sym)
    # walk the tree of nonzero continuations q; a child that dies under p
    # (but is itself nonzero) is a minimal continuation
    root = pres.quiver.trivial_path(p.target)
    stack = [(root, state0)]
    while stack:
        q, state = stack.pop()
        for aid, child in pres.extensions(q):
            nstate = aut.step(state, aid)
            if aut.terminal[nstate]:
                out.append(child)
            else:
                stack.append((child, nstate))
    result = tuple(sorted(out, key=Path.key))
    cache[p] = result
    return result


def _canonical_path(pres, p: Path) -> Path:
    """Shortlex-least path with cyclic module isomorphic to pA."""
    from .reps import path_classes
    classes, _ = path_classes(pres)
    t = frozenset(q.arrows for q in pres.basis_from(p.target)
                  if not pres.is_zero_word(p.arrows + q.arrows))
    return classes[(p.target, t)]


def _step_support(pres, support: frozenset) -> frozenset:
    out = set()
    for p in support:
        out.update(combinatorial_syzygy_step(pres, p))
    return frozenset(out)


def _step_multiset(pres, state: Counter) -> Counter:
    out = Counter()
    for p, mult in state.items():
        for q in combinatorial_syzygy_step(pres, p):
            out[q] += mult
    return out


def _orbit_rem(start, step, memo, guard):
    """Steps until the empty set in a functional orbit; INF on a cycle."""
    chain = []
    positions = {}
    cur = start
    while True:
        if cur in memo:
            base = memo[cur]
            break
        if not cur:
            base = 0
            break
        if cur in positions:
            base = INF
            break
        positions[cur] = len(chain)
        chain.append(cur)
        if len(chain) > guard:
            raise ResolutionError("state-orbit guard exceeded")
        cur = step(cur)
    if base is INF:
        for node in chain:
            memo[node] = INF
        return INF
    val = base
    for node in reversed(chain):
        val += 1
        memo[node] = val
    return memo[start] if chain else base


def _orbit_cycle(start, step, guard):
    """(preperiod, period) of the orbit of a state that never empties."""
    seen = {}
    cur = start
    i = 0
    while cur not in seen:
        seen[cur] = i
        cur = step(cur)
        i += 1
        if i > guard:
            raise ResolutionError("state-orbit guard exceeded")
    first = seen[cur]
    return first, i - first


class ResolutionTrace:
    """Terms of one minimal projective resolution.

    term(i) is the Counter of vertices v with P(v) a summand of the i-th
    term.  For infinite resolutions, (preperiod, period) describe the
    degree from which term supports repeat.
    """

    def __init__(self, pres, x, pdim, terms, state2, preperiod=None, period=None):
        self.pres = pres
        self.x = x
        self.pdim = pdim
        self._terms = list(terms)
        self._states = {}
        if state2 is not None:
            self._states[2] = state2
        self.preperiod = preperiod
        self.period = period

    def state(self, r) -> Counter:
        """Syzygy multiset (class representative paths) in degree r >= 2."""
        if r < 2 or 2 not in self._states:
            raise ValueError("syzygy states start in degree 2")
        known = max(self._states)
        while known < r:
            self._states[known + 1] = _step_multiset(self.pres, self._states[known])
            known += 1
        return self._states[r]

    def term(self, i) -> Counter:
        if i < len(self._terms):
            return Counter(self._terms[i])
        if self.pdim is not INF and i > self.pdim:
            return Counter()
        state = self.state(i)
        return Counter({p.target: m for p, m in state.items()})

    def terms_list(self):
        upper = self.pdim if self.pdim is not INF else max(
            (self.preperiod or 2) + (self.period or 1) - 1, len(self._terms) - 1)
        return [self.term(i) for i in range(int(upper) + 1)]

    def last_summands(self):
        """For finite pdim: the last term as (multiset of vertices, simple-top flag)."""
        if self.pdim is INF:
            return None
        d = int(self.pdim)
        return self.term(d)


def pdim_injective(pres, x):
    """Exact projective dimension of I(x) with its resolution trace."""
    cache = pres._cache.setdefault("pdim_injective", {})
    hit = cache.get(x)
    if hit is not None:
        return hit
    ix = injective(pres, x)
    term0 = Counter(top(ix))
    omega1, _ = kernel_of_cover(pres, ix)
    if omega1.is_zero():
        trace = ResolutionTrace(pres, x, 0, [term0], None)
        cache[x] = trace
        return trace
    term1 = Counter(top(omega1))
    omega2, _ = kernel_of_cover(pres, omega1)
    if omega2.is_zero():
        trace = ResolutionTrace(pres, x, 1, [term0, term1], None)
        cache[x] = trace
        return trace
    try:
        paths = identify_path_summands(pres, omega2)
    except PathSummandError as exc:
        raise ResolutionError(
            f"second syzygy of I({x}) is not a sum of cyclic path modules: {exc}"
        ) from exc
    state2 = Counter(paths)
    guard = _GUARD_FACTOR * max(len(pres.nonzero_paths()) ** 2, 16)
    memo = pres._cache.setdefault("rem_hybrid", {})
    rem = _orbit_rem(frozenset(state2), lambda s: _step_support(pres, s),
                     memo, guard)
    if rem is INF:
        pre, per = _orbit_cycle(frozenset(state2),
                                lambda s: _step_support(pres, s), guard)
        trace = ResolutionTrace(pres, x, INF, [term0, term1], state2,
                                preperiod=2 + pre, period=per)
    else:
        trace = ResolutionTrace(pres, x, 1 + rem, [term0, term1], state2)
    cache[x] = trace
    return trace


def idim_projective(pres, x):
    """Injective dimension of P(x): projective dimension of the injective
    at x over the opposite algebra."""
    return pdim_injective(pres.opposite(), x)


def pdim_simple(pres, x):
    """Projective dimension of the simple at x (first syzygy is rad P(x),
    the sum of the cyclic modules on the arrows out of x)."""
    arrows = pres.quiver.out_arrows[x]
    if not arrows:
        return 0
    state1 = frozenset(pres.quiver.path((a,)) for a in arrows)
    guard = _GUARD_FACTOR * max(len(pres.nonzero_paths()) ** 2, 16)
    memo = pres._cache.setdefault("rem_hybrid", {})
    rem = _orbit_rem(state1, lambda s: _step_support(pres, s), memo, guard)
    return INF if rem is INF else rem


def global_dimension(pres):
    vals = [pdim_simple(pres, x) for x in pres.quiver.vertices]
    return max(vals) if vals else 0


def first_syzygy_injective(pres, x):
    """Kernel of the projective cover of I(x), with the combinatorial
    generator report (difference and extension generators)."""
    ix = injective(pres, x)
    omega1, _ = kernel_of_cover(pres, ix)
    bmax = pres.maximal_paths(x, "left")
    differences = []
    for i in range(len(bmax)):
        for j in range(i + 1, len(bmax)):
            p, t = bmax[i], bmax[j]
            k = 0
            while (k < p.length and k < t.length
                   and p.arrows[p.length - 1 - k] == t.arrows[t.length - 1 - k]):
                k += 1
            r_p = p.arrows[:p.length - k]
            r_t = t.arrows[:t.length - k]
            differences.append(((p, r_p), (t, r_t)))
    extensions = []
    for p in bmax:
        for aid in pres.quiver.out_arrows[x]:
            if not pres.is_zero_word(p.arrows + (aid,)):
                extensions.append((p, p.arrows + (aid,)))
    report = {
        "cover_summands": bmax,
        "difference_generators": differences,
        "extension_generators": extensions,
    }
    return omega1, report


# -- engine: pure cover-plus-kernel resolutions ------------------------------


def _engine_class_step(pres, p: Path) -> Counter:
    """One cover-plus-kernel step on the cyclic module pA, recognised by
    linear-algebra peeling.  Memoised per presentation and class."""
    cache = pres._cache.setdefault("engine_step", {})
    hit = cache.get(p)
    if hit is not None:
        return hit
    rep = cyclic_module(pres, p)
    ker, _ = kernel_of_cover(pres, rep)
    if ker.is_zero():
        out = Counter()
    else:
        out = Counter(identify_path_summands(pres, ker))
    cache[p] = out
    return out


def _engine_step_support(pres, support: frozenset) -> frozenset:
    out = set()
    for p in support:
        out.update(_engine_class_step(pres, p))
    return frozenset(out)


def _engine_step_multiset(pres, state: Counter) -> Counter:
    out = Counter()
    for p, mult in state.items():
        for q, m in _engine_class_step(pres, p).items():
            out[q] += mult * m
    return out


class EngineResolution:
    """Resolution data from the pure linear-algebra engine."""

    def __init__(self, pdim, last_term, psi_vertex):
        self.pdim = pdim
        self.last_term = last_term  # Counter of vertices, or None when infinite
        self.psi_vertex = psi_vertex  # vertex when last term is indecomposable


def engine_pdim_injective(pres, x) -> EngineResolution:
    cache = pres._cache.setdefault("engine_pdim_injective", {})
    hit = cache.get(x)
    if hit is not None:
        return hit
    ix = injective(pres, x)
    omega1, _ = kernel_of_cover(pres, ix)
    if omega1.is_zero():
        summands = decompose_projective(ix)
        result = EngineResolution(0, Counter(summands),
                                  summands[0] if len(summands) == 1 else None)
        cache[x] = result
        return result
    omega2, _ = kernel_of_cover(pres, omega1)
    if omega2.is_zero():
        summands = decompose_projective(omega1)
        if summands is None:
            raise ResolutionError("terminating syzygy is not projective")
        result = EngineResolution(1, Counter(summands),
                                  summands[0] if len(summands) == 1 else None)
        cache[x] = result
        return result
    state2 = Counter(identify_path_summands(pres, omega2))
    guard = _GUARD_FACTOR * max(len(pres.nonzero_paths()) ** 2, 16)
    memo = pres._cache.setdefault("rem_engine", {})
    rem = _orbit_rem(frozenset(state2), lambda s: _engine_step_support(pres, s),
                     memo, guard)
    if rem is INF:
        result = EngineResolution(INF, None, None)
        cache[x] = result
        return result
    pdim = 1 + rem
    state = state2
    for _ in range(int(pdim) - 2):
        state = _engine_step_multiset(pres, state)
    last = Counter({p.target: m for p, m in state.items()})
    psi = None
    if sum(state.values()) == 1:
        (p, _), = state.items()
        psi = p.target
    result = EngineResolution(pdim, last, psi)
    cache[x] = result
    return result


def engine_idim_projective(pres, x) -> EngineResolution:
    return engine_pdim_injective(pres.opposite(), x)


# -- dominant dimension ------------------------------------------------------


def _injective_is_projective(pres, v) -> bool:
    cache = pres._cache.setdefault("projinj", {})
    hit = cache.get(v)
    if hit is None:
        hit = decompose_projective(injective(pres, v)) is not None
        cache[v] = hit
    return hit


def dominant_dimension(pres):
    """Leading projective-injective terms in the minimal injective
    coresolution of the regular module; INF when the whole (finite or
    periodic) coresolution consists of projective-injectives."""
    op = pres.opposite()
    best = INF
    for x in pres.quiver.vertices:
        trace = pdim_injective(op, x)
        if trace.pdim is INF:
            horizon = trace.preperiod + trace.period
        else:
            horizon = int(trace.pdim) + 1
        contribution = INF
        for i in range(horizon):
            if not all(_injective_is_projective(pres, v)
                       for v in trace.term(i)):
                contribution = i
                break
        best = min(best, contribution)
        if best == 0:
            return 0
    return best
