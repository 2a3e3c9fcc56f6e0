"""Gorenstein profiles, the Auslander-Reiten vertex map, and the
combinatorial classifiers for gentle, string and biserial monomial input.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from math import lcm

from .core import MonomialPresentation, Path
from .reps import decompose_projective, injective, kernel_of_cover
from .resolve import (
    INF,
    dominant_dimension,
    global_dimension,
    pdim_injective,
    idim_projective,
)


@dataclass
class GorensteinProfile:
    gor_level: object          # int or INF
    idim_right: object
    idim_left: object
    is_1_gorenstein: bool
    is_auslander_gorenstein: bool
    is_iwanaga_gorenstein: bool
    is_auslander_regular: bool
    dominant_dimension: object
    global_dimension: object


@dataclass
class ARMapResult:
    well_defined: bool
    bijective: bool
    assignments: dict          # vertex -> vertex or None
    statuses: dict             # vertex -> "ok" | "infinite-pdim" | "last-term-decomposable"
    cycles: list               # cycle notation when bijective, else None


@dataclass
class TwoGorensteinReport:
    passed: bool
    failures: dict             # condition name -> sorted list of witnesses
    labelings: dict = field(default_factory=dict)  # degree-4 vertex -> labeling


def _term_support(trace, i):
    """Vertices appearing in term i of a resolution trace (support only)."""
    if i < len(trace._terms):
        return frozenset(trace._terms[i])
    if trace.pdim is not INF and i > trace.pdim:
        return frozenset()
    cache = getattr(trace, "_support_states", None)
    if cache is None:
        cache = {2: frozenset(trace.state(2))}
        trace._support_states = cache
    known = max(cache)
    from .resolve import _step_support
    while known < i:
        cache[known + 1] = _step_support(trace.pres, cache[known])
        known += 1
    return frozenset(p.target for p in cache[i])


def is_n_gorenstein(pres, n: int) -> bool:
    """Walk the minimal projective resolution of every indecomposable
    injective to depth n-1 and bound the injective dimension of each
    projective summand by its degree."""
    if n < 1:
        raise ValueError("n must be >= 1")
    idim = {}
    for x in pres.quiver.vertices:
        trace = pdim_injective(pres, x)
        depth = n - 1
        if trace.pdim is not INF:
            depth = min(depth, int(trace.pdim))
        for i in range(depth + 1):
            for v in _term_support(trace, i):
                val = idim.get(v)
                if val is None:
                    val = idim_projective(pres, v).pdim
                    idim[v] = val
                if val > i:
                    return False
    return True


def gorenstein_profile(pres) -> GorensteinProfile:
    """Exact Gorenstein data, with the all-n certificate decided from the
    eventually periodic shape of the injective coresolution of the regular
    module."""
    cached = pres._cache.get("profile")
    if cached is not None:
        return cached
    op = pres.opposite()
    verts = pres.quiver.vertices
    # coresolution of P(x) corresponds to the projective resolution of the
    # injective at x over the opposite algebra
    traces = {x: pdim_injective(op, x) for x in verts}
    pdim_inj = {v: pdim_injective(pres, v).pdim for v in verts}

    idim_right = max((traces[x].pdim for x in verts), default=0)
    idim_left = max((pdim_inj[v] for v in verts), default=0)

    horizon = 1
    finite_pdims = [p for p in pdim_inj.values() if p is not INF]
    bound_fin = int(max(finite_pdims)) if finite_pdims else 0
    periods = [t.period for t in traces.values() if t.pdim is INF]
    starts = [t.preperiod for t in traces.values() if t.pdim is INF]
    starts += [int(t.pdim) + 1 for t in traces.values() if t.pdim is not INF]
    if starts:
        horizon = max(starts) + (lcm(*periods) if periods else 1)
    horizon = max(horizon, bound_fin + 1) + 1

    gor_level = INF
    for i in range(horizon + 1):
        vs = set()
        for x in verts:
            vs |= _term_support(traces[x], i)
        if any(pdim_inj[v] > i for v in vs):
            gor_level = i
            break

    gldim = global_dimension(pres)
    domdim = dominant_dimension(pres)
    ag = gor_level is INF and idim_right is not INF
    profile = GorensteinProfile(
        gor_level=gor_level,
        idim_right=idim_right,
        idim_left=idim_left,
        is_1_gorenstein=(gor_level is INF or gor_level >= 1),
        is_auslander_gorenstein=ag,
        is_iwanaga_gorenstein=(idim_right is not INF and idim_right == idim_left),
        is_auslander_regular=(gor_level is INF and gldim is not INF),
        dominant_dimension=domdim,
        global_dimension=gldim,
    )
    pres._cache["profile"] = profile
    return profile


def _cycles_of_permutation(perm: dict) -> list:
    seen = set()
    cycles = []
    for start in sorted(perm):
        if start in seen:
            continue
        cur = start
        cycle = []
        while cur not in seen:
            seen.add(cur)
            cycle.append(cur)
            cur = perm[cur]
        cycles.append(tuple(cycle))
    return cycles


def ar_map(pres) -> ARMapResult:
    """Vertex map x -> t when the minimal projective resolution of the
    injective at x ends in the single indecomposable projective P(t)."""
    cached = pres._cache.get("ar_map")
    if cached is not None:
        return cached
    assignments = {}
    statuses = {}
    for x in pres.quiver.vertices:
        trace = pdim_injective(pres, x)
        if trace.pdim is INF:
            statuses[x] = "infinite-pdim"
            assignments[x] = None
            continue
        d = int(trace.pdim)
        if d == 0:
            summands = decompose_projective(injective(pres, x))
        elif d == 1:
            omega1, _ = kernel_of_cover(pres, injective(pres, x))
            summands = decompose_projective(omega1)
        else:
            state = trace.state(d)
            summands = []
            for p, m in state.items():
                summands.extend([p.target] * m)
        if summands is None or len(summands) != 1:
            statuses[x] = "last-term-decomposable"
            assignments[x] = None
        else:
            statuses[x] = "ok"
            assignments[x] = summands[0]
    well_defined = all(s == "ok" for s in statuses.values())
    bijective = well_defined and (
        sorted(assignments.values()) == list(pres.quiver.vertices))
    cycles = _cycles_of_permutation(assignments) if bijective else None
    result = ARMapResult(well_defined, bijective, assignments, statuses, cycles)
    pres._cache["ar_map"] = result
    return result


# -- combinatorial classifiers ----------------------------------------------


def _is_biserial(pres) -> bool:
    q = pres.quiver
    return all(q.deg_in(v) <= 2 and q.deg_out(v) <= 2 for v in q.vertices)


def is_string_algebra(pres) -> bool:
    """Biserial, and composable arrow pairs through a common arrow kill at
    least one of the two possible length-2 products."""
    if not _is_biserial(pres):
        return False
    q = pres.quiver
    for v in q.vertices:
        incoming = q.in_arrows[v]
        outgoing = q.out_arrows[v]
        for b in outgoing:
            live = [a for a in incoming if not pres.is_zero_word((a, b))]
            if len(live) > 1:
                return False
        for a in incoming:
            live = [b for b in outgoing if not pres.is_zero_word((a, b))]
            if len(live) > 1:
                return False
    return True


def is_gentle(pres) -> bool:
    """String conditions sharpened to exactly-one-zero, with all minimal
    relations of length 2."""
    if any(r.length != 2 for r in pres.relations):
        return False
    if not _is_biserial(pres):
        return False
    q = pres.quiver
    for v in q.vertices:
        incoming = q.in_arrows[v]
        outgoing = q.out_arrows[v]
        for b in outgoing:
            if len(incoming) == 2:
                a1, a2 = incoming
                if (pres.is_zero_word((a1, b)) + pres.is_zero_word((a2, b))) != 1:
                    return False
        for a in incoming:
            if len(outgoing) == 2:
                b1, b2 = outgoing
                if (pres.is_zero_word((a, b1)) + pres.is_zero_word((a, b2))) != 1:
                    return False
    return True


def gentle_ag_criterion(pres) -> bool:
    """Degree test for gentle input: two arrows in iff two arrows out."""
    if not is_gentle(pres):
        raise ValueError("input is not gentle")
    q = pres.quiver
    return all((q.deg_in(v) == 2) == (q.deg_out(v) == 2) for v in q.vertices)


def _left_maximal_path_to(pres, v) -> Path:
    """The unique left-maximal nonzero path ending at v (string input)."""
    q = pres.quiver
    word = ()
    cur = v
    bound = len(pres.nonzero_paths()) + 1
    while True:
        step = None
        for a in q.in_arrows[cur]:
            if not pres.is_zero_word((a,) + word):
                if step is not None:
                    raise ValueError(f"two left extensions at {cur}")
                step = a
        if step is None:
            if word:
                return pres.quiver.path(word)
            return q.trivial_path(v)
        word = (step,) + word
        cur = q.source[step]
        bound -= 1
        if bound < 0:
            raise ValueError("runaway left-maximal path")


def _maximal_critical_path_from(pres, v) -> Path:
    """The unique maximal path from v whose length-2 factors all vanish."""
    q = pres.quiver
    outs = q.out_arrows[v]
    if len(outs) != 1:
        raise ValueError(f"expected a single arrow out of {v}")
    word = (outs[0],)
    bound = len(q.arrows) + 1
    while True:
        last = word[-1]
        nxt = None
        for b in q.out_arrows[q.target[last]]:
            if pres.is_zero_word((last, b)):
                if nxt is not None:
                    raise ValueError("critical continuation not unique")
                nxt = b
        if nxt is None:
            return pres.quiver.path(word)
        word = word + (nxt,)
        bound -= 1
        if bound < 0:
            raise ValueError("critical cycle: no maximal critical path")


def gentle_ar_formula(pres) -> dict:
    """Resolution-free vertex map for gentle input satisfying the degree
    test: fixed at degree 0 and 4; source of the left-maximal path when the
    unique incoming arrow has no nonzero continuation; otherwise the target
    of the maximal critical path."""
    if not gentle_ag_criterion(pres):
        raise ValueError("degree test fails; the formula does not apply")
    q = pres.quiver
    out = {}
    for v in q.vertices:
        din, dout = q.deg_in(v), q.deg_out(v)
        if (din, dout) in ((0, 0), (2, 2)):
            out[v] = v
            continue
        if din == 1:
            alpha = q.in_arrows[v][0]
            has_continuation = any(not pres.is_zero_word((alpha, b))
                                   for b in q.out_arrows[v])
            if not has_continuation:
                out[v] = _left_maximal_path_to(pres, v).source
                continue
        # remaining: no incoming with deg_out 1, or incoming composable
        out[v] = _maximal_critical_path_from(pres, v).target
    return out


def two_gorenstein_criterion(pres) -> TwoGorensteinReport:
    """Combinatorial test: biserial; two-in iff two-out; overlap pattern
    with free diagonals at every degree-4 vertex; every arrow inside a
    minimal relation starts or ends one."""
    q = pres.quiver
    failures = {}
    bad = sorted(v for v in q.vertices
                 if q.deg_in(v) > 2 or q.deg_out(v) > 2)
    if bad:
        failures["biserial"] = bad
    bad = sorted(v for v in q.vertices
                 if (q.deg_in(v) == 2) != (q.deg_out(v) == 2))
    if bad:
        failures["degree"] = bad

    labelings = {}
    bad = []
    for v in sorted(q.vertices):
        if q.deg_in(v) != 2 or q.deg_out(v) != 2:
            continue
        found = None
        ins = q.in_arrows[v]
        outs = q.out_arrows[v]
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
                if found is None or cand < found:
                    found = cand
        if found is None:
            bad.append(v)
        else:
            labelings[v] = found
    if bad:
        failures["overlap"] = sorted(bad)

    in_rel = set()
    starts_or_ends = set()
    for r in pres.relations:
        in_rel.update(r.arrows)
        starts_or_ends.add(r.arrows[0])
        starts_or_ends.add(r.arrows[-1])
    bad = sorted(in_rel - starts_or_ends)
    if bad:
        failures["start-or-end"] = bad

    return TwoGorensteinReport(passed=not failures, failures=failures,
                               labelings=labelings)


def _word_in_some_relation(pres, word) -> bool:
    w = tuple(word)
    k = len(w)
    for r in pres.relations:
        arrows = r.arrows
        for i in range(len(arrows) - k + 1):
            if arrows[i:i + k] == w:
                return True
    return False
