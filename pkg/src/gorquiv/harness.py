"""Exhaustive enumeration of small algebras and theorem verification.

Monomial enumeration walks all labelled quivers within the bounds, then
all antichain relation sets over the composable words, pruned by a
necessary condition for finite dimensionality (every short cycle must be
covered by a relation inside its infinite repetition) and finished by the
exact validation in the core.  Everything is deterministic; verification
workers are pure, so instances can be checked in parallel and merged by
index.
"""

from __future__ import annotations

import time
from collections import Counter
from dataclasses import dataclass, field
from itertools import combinations_with_replacement
from math import comb

from .core import MonomialPresentation, PresentationError, Quiver, parse_presentation
from .analysis import (
    ar_map,
    gentle_ag_criterion,
    gentle_ar_formula,
    gorenstein_profile,
    is_gentle,
    is_n_gorenstein,
    is_string_algebra,
    two_gorenstein_criterion,
)
from .nakayama import (
    KupischSeries,
    enumerate_kupisch,
    idim_projective_closed_form,
    kupisch_from_presentation,
    pdim_injective_closed_form,
    presentation_from_kupisch,
)
from .resolve import (
    INF,
    engine_pdim_injective,
    idim_projective,
    pdim_injective,
)
from .surgery import connected_components, cut, cuttable_vertices, glue, reduce_to_nakayama

BUDGET_LIMIT = 10 ** 7


class BudgetExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class EnumerationBounds:
    max_vertices: int = 3
    max_arrows: int = 4
    max_relation_length: int = 3
    max_relations: int = 4
    shape: str = "any"  # any | nakayama | gentle

    def __post_init__(self):
        if min(self.max_vertices, self.max_arrows,
               self.max_relation_length, self.max_relations) < 0:
            raise ValueError("bounds must be nonnegative")
        if self.max_relation_length < 2:
            raise ValueError("relations have length >= 2")
        if self.shape not in ("any", "nakayama", "gentle"):
            raise ValueError(f"unknown shape filter {self.shape!r}")


@dataclass
class VerificationReport:
    theorem: str
    instances: int
    counterexamples: list
    elapsed: float
    passed: bool = field(init=False)

    def __post_init__(self):
        self.passed = not self.counterexamples


# -- monomial enumeration -----------------------------------------------------


def _quiver_specs(bounds):
    """(n_vertices, arrow multiset) in deterministic order."""
    specs = []
    for n in range(1, bounds.max_vertices + 1):
        pairs = [(str(i), str(j))
                 for i in range(1, n + 1) for j in range(1, n + 1)]
        for m in range(0, bounds.max_arrows + 1):
            for combo in combinations_with_replacement(pairs, m):
                specs.append((n, combo))
    return specs


def _candidate_words(quiver, max_len):
    """Composable arrow words of length 2..max_len, shortlex order."""
    words = []
    layer = [(a,) for a in quiver.arrow_ids]
    for _ in range(max_len - 1):
        nxt = []
        for w in layer:
            for b in quiver.out_arrows[quiver.target[w[-1]]]:
                nxt.append(w + (b,))
        words.extend(nxt)
        layer = nxt
    words.sort(key=lambda w: (len(w), w))
    return words


def _contains(w, u) -> bool:
    lu = len(u)
    if lu > len(w):
        return False
    return any(w[i:i + lu] == u for i in range(len(w) - lu + 1))


def _short_cycles(quiver, max_len):
    """Simple directed cycles (no repeated arrow) up to rotation."""
    cycles = set()
    ids = quiver.arrow_ids

    def extend(path, used):
        last = path[-1]
        for b in quiver.out_arrows[quiver.target[last]]:
            if b in used:
                continue
            if quiver.target[b] == quiver.source[path[0]]:
                cyc = path + (b,)
                rots = [cyc[i:] + cyc[:i] for i in range(len(cyc))]
                cycles.add(min(rots))
            if len(path) + 1 < max_len:
                extend(path + (b,), used | {b})

    for a in ids:
        if quiver.target[a] == quiver.source[a]:
            cycles.add((a,))
        extend((a,), {a})
    return sorted(cycles)


def _covers_cycle(word, cycle) -> bool:
    """Is the word a factor of the infinite repetition of the cycle?"""
    reps = cycle * (len(word) // len(cycle) + 2)
    return _contains(reps, word)


def _presentations_for_quiver(n, arrow_pairs, bounds):
    vertices = [str(i) for i in range(1, n + 1)]
    arrows = [(f"a{k+1}", s, t) for k, (s, t) in enumerate(arrow_pairs)]
    quiver = Quiver(vertices, arrows)
    words = _candidate_words(quiver, bounds.max_relation_length)
    cycles = _short_cycles(quiver, bounds.max_relation_length + 1)
    ncand = len(words)
    covers = [frozenset(ci for ci, cyc in enumerate(cycles)
                        if _covers_cycle(w, cyc)) for w in words]
    can_cover_sets = [frozenset(wi for wi in range(ncand) if ci in covers[wi])
                      for ci in range(len(cycles))]
    comparable = [frozenset(j for j in range(ncand) if j != i and
                            (_contains(words[j], words[i])
                             or _contains(words[i], words[j])))
                  for i in range(ncand)]

    results = []

    def emit(chosen):
        try:
            pres = MonomialPresentation(
                quiver, [quiver.path(words[i]) for i in chosen],
                name=_auto_name(n, arrow_pairs, [words[i] for i in chosen]))
        except PresentationError:
            return
        results.append(pres)

    _search_antichains(words, comparable, covers, can_cover_sets,
                       len(cycles), bounds.max_relations, emit)
    return results


def _search_antichains(words, comparable, covers, can_cover_sets, n_cycles,
                       max_pick, emit):
    """Depth-first antichain enumeration with cycle-coverage pruning."""
    ncand = len(words)

    def rec(start, chosen, covered, blocked):
        if len(covered) == n_cycles:
            emit(list(chosen))
        if len(chosen) == max_pick:
            return
        # prune: some uncovered cycle has no available candidate left
        for ci in range(n_cycles):
            if ci not in covered:
                if not any(wi >= start and wi not in blocked
                           for wi in can_cover_sets[ci]):
                    return
        for i in range(start, ncand):
            if i in blocked:
                continue
            rec(i + 1, chosen + [i], covered | covers[i],
                blocked | comparable[i])

    rec(0, [], frozenset(), frozenset())


def _auto_name(n, arrow_pairs, words):
    arr = ",".join(f"{s}>{t}" for s, t in arrow_pairs)
    rel = ";".join("".join(w) for w in words)
    return f"m{n}[{arr}][{rel}]"


def estimate_monomial_instances(bounds) -> int:
    """Upper bound used by the budget guard: relation subsets per quiver."""
    total = 0
    for n, arrow_pairs in _quiver_specs(bounds):
        arrows = [(f"a{k+1}", s, t) for k, (s, t) in enumerate(arrow_pairs)]
        quiver = Quiver([str(i) for i in range(1, n + 1)], arrows)
        ncand = len(_candidate_words(quiver, bounds.max_relation_length))
        total += sum(comb(ncand, k)
                     for k in range(0, bounds.max_relations + 1))
    return total


def enumerate_monomial(bounds, force=False):
    """All finite-dimensional monomial presentations within the bounds,
    deterministically ordered; refuses over-budget requests unless forced."""
    est = estimate_monomial_instances(bounds)
    if est > BUDGET_LIMIT and not force:
        raise BudgetExceeded(
            f"estimated {est} relation sets exceeds the budget of {BUDGET_LIMIT}; "
            "pass force=True (CLI: --force) to run anyway")
    for n, arrow_pairs in _quiver_specs(bounds):
        for pres in _presentations_for_quiver(n, arrow_pairs, bounds):
            if bounds.shape == "gentle" and not is_gentle(pres):
                continue
            if bounds.shape == "nakayama" and kupisch_from_presentation(pres) is None:
                continue
            yield pres


def enumerate_nakayama(n_max: int):
    """All valid linear and cyclic Kupisch series with N <= n_max (cyclic
    entries capped at 2N), each exactly once."""
    yield from enumerate_kupisch(n_max)


# -- per-instance checks -------------------------------------------------------


def _fmt(value):
    return "infinity" if value is INF else int(value)


def check_nakayama_series(ks: KupischSeries):
    """All Nakayama-suite facts for one Kupisch series.

    Returns (violations, facts); a violation is (theorem id, detail).
    """
    violations = []
    pres = presentation_from_kupisch(ks)
    n = ks.n
    closed_idim = {}
    closed_pdim = {}
    for j in range(1, n + 1):
        x = str(j)
        ci = idim_projective_closed_form(ks, j)
        cp = pdim_injective_closed_form(ks, j)
        closed_idim[j] = ci
        closed_pdim[j] = cp
        hi = idim_projective(pres, x).pdim
        hp = pdim_injective(pres, x).pdim
        ei = engine_pdim_injective(pres.opposite(), x).pdim
        ep = engine_pdim_injective(pres, x).pdim
        if not (ci == hi == ei):
            violations.append(("nakayama-closed-forms",
                               f"idim P({j}): closed={_fmt(ci)} hybrid={_fmt(hi)} engine={_fmt(ei)}"))
        if not (cp == hp == ep):
            violations.append(("nakayama-closed-forms",
                               f"pdim I({j}): closed={_fmt(cp)} hybrid={_fmt(hp)} engine={_fmt(ep)}"))
        if hp is not INF and hp > 2 * n - 2:
            violations.append(("finitistic",
                               f"pdim I({j}) = {_fmt(hp)} exceeds 2N-2 = {2*n-2}"))
    profile = gorenstein_profile(pres)
    ar = ar_map(pres)
    if profile.gor_level in (2, 4, 6):
        violations.append(("thm6.2",
                           f"{profile.gor_level}-Gorenstein but not "
                           f"{profile.gor_level + 1}-Gorenstein"))
    wdbij = ar.well_defined and ar.bijective
    if profile.is_auslander_gorenstein != wdbij:
        violations.append(("thm6.8",
                           f"AG={profile.is_auslander_gorenstein} but AR map "
                           f"well-defined+bijective={wdbij}"))
    two = two_gorenstein_criterion(pres)
    direct2 = is_n_gorenstein(pres, 2)
    if two.passed != direct2:
        violations.append(("nakayama-2gor-criterion",
                           f"criterion={two.passed}, 2-Gorenstein={direct2}"))
    facts = {
        "kupisch": ks,
        "gor_level": profile.gor_level,
        "closed_idim": closed_idim,
        "closed_pdim": closed_pdim,
    }
    return violations, facts


_NAK_IDS = ("nakayama-closed-forms", "finitistic", "thm6.2", "thm6.8",
            "nakayama-2gor-criterion")


def _clamp_gor(level):
    """Collapse Gorenstein levels that n = 2..6 cannot distinguish."""
    if level is INF or level > 6:
        return 7
    return int(level) if level >= 2 else 1


def _iwanaga_threshold(profile):
    if not profile.is_iwanaga_gorenstein:
        return 7
    return min(int(profile.idim_right), 7)


def check_monomial_presentation(pres, deep=True, cut_checks=True):
    """All monomial-suite facts for one presentation."""
    violations = []
    profile = gorenstein_profile(pres)
    ar = ar_map(pres)
    two = two_gorenstein_criterion(pres)
    wdbij = ar.well_defined and ar.bijective

    direct2 = is_n_gorenstein(pres, 2)
    if two.passed != direct2:
        violations.append(("thm4.1", f"criterion={two.passed}, 2-Gorenstein={direct2}"))
    if two.passed and not is_string_algebra(pres):
        violations.append(("cor4.2", "2-Gorenstein but not a string algebra"))
    if profile.is_auslander_gorenstein != wdbij:
        violations.append(("thm7.3",
                           f"AG={profile.is_auslander_gorenstein}, AR wd+bij={wdbij}"))
    if profile.gor_level in (2, 4, 6):
        violations.append(("cor7.1",
                           f"{profile.gor_level}-Gorenstein but not "
                           f"{profile.gor_level + 1}-Gorenstein"))
    op = pres.opposite()
    for nn in range(1, 5):
        if is_n_gorenstein(pres, nn) != is_n_gorenstein(op, nn):
            violations.append(("thm2.2", f"n={nn} asymmetric under opposite"))
    nverts = len(pres.quiver.vertices)
    if nverts <= 3:
        bound = 4 * nverts - 2
        level_ok = profile.gor_level is INF or profile.gor_level >= bound
        if level_ok:
            if not (profile.is_iwanaga_gorenstein
                    and profile.idim_right <= bound
                    and profile.idim_left <= bound):
                violations.append(("cor7.4",
                                   f"{bound}-Gorenstein but not {bound}-Iwanaga-Gorenstein"))
    if two.passed and profile.dominant_dimension >= 2:
        comps = connected_components(pres)
        if any(kupisch_from_presentation(c) is None for c in comps):
            violations.append(("cor4.14",
                               "2-Gorenstein with dominant dimension >= 2 "
                               "but a component is not Nakayama"))
    # AR-map structural facts
    if profile.is_auslander_gorenstein:
        for x in pres.quiver.vertices:
            px = pdim_injective(pres, x).pdim
            tgt = ar.assignments[x]
            ix = idim_projective(pres, tgt).pdim
            if px != ix:
                violations.append(("thm2.3",
                                   f"pdim I({x})={_fmt(px)} != idim P(psi({x}))={_fmt(ix)}"))
    if wdbij:
        if not (profile.gor_level is INF or profile.gor_level >= 1):
            violations.append(("lem7.5", "AR wd+bij but not 1-Gorenstein"))
        for x in pres.quiver.vertices:
            if len(pres.maximal_paths(x, "left")) > 2:
                violations.append(("lem7.6", f"dim top I({x}) > 2"))
            if len(pres.maximal_paths(x, "right")) > 2:
                violations.append(("lem7.6", f"dim soc P({x}) > 2"))
    if is_gentle(pres):
        crit = gentle_ag_criterion(pres)
        if crit != profile.is_auslander_gorenstein:
            violations.append(("thm3.2",
                               f"degree criterion={crit}, AG={profile.is_auslander_gorenstein}"))
        one_gor = is_n_gorenstein(pres, 1)
        if crit != one_gor:
            violations.append(("cor3.4",
                               f"degree criterion={crit}, 1-Gorenstein={one_gor}"))
        if crit:
            formula = gentle_ar_formula(pres)
            if formula != ar.assignments:
                violations.append(("cor3.6",
                                   f"formula {formula} != resolved {ar.assignments}"))
    if deep:
        violations.extend(_oracle_checks(pres))
    if cut_checks and two.passed:
        violations.extend(_cutting_checks(pres, profile, ar))
    return violations


def _oracle_checks(pres):
    """Engine vs hybrid on every pdim/idim value and psi assignment."""
    violations = []
    ar = ar_map(pres)
    for side, alg in (("right", pres), ("left", pres.opposite())):
        for x in alg.quiver.vertices:
            h = pdim_injective(alg, x).pdim
            e = engine_pdim_injective(alg, x).pdim
            if h != e:
                violations.append(("oracle",
                                   f"{side} pdim I({x}): hybrid={_fmt(h)} engine={_fmt(e)}"))
    for x in pres.quiver.vertices:
        eng = engine_pdim_injective(pres, x)
        hy_status = ar.statuses[x]
        if eng.pdim is INF:
            if hy_status != "infinite-pdim":
                violations.append(("oracle", f"psi({x}): engine infinite, hybrid {hy_status}"))
        else:
            expected = ar.assignments[x]
            if eng.psi_vertex != expected:
                violations.append(("oracle",
                                   f"psi({x}): engine={eng.psi_vertex} hybrid={expected}"))
    # internal route agreement: profile level vs direct criterion
    profile = gorenstein_profile(pres)
    for nn in range(1, 4):
        direct = is_n_gorenstein(pres, nn)
        via_level = profile.gor_level is INF or profile.gor_level >= nn
        if direct != via_level:
            violations.append(("oracle",
                               f"n={nn}: resolution criterion {direct} vs "
                               f"coresolution level {via_level}"))
    return violations


def _cutting_checks(pres, profile, ar):
    """Theorem 5.1 clauses plus round-trip over every single cut."""
    violations = []
    options = cuttable_vertices(pres)
    degree4 = [v for v in pres.quiver.vertices
               if pres.quiver.deg_in(v) == 2 and pres.quiver.deg_out(v) == 2]
    if set(v for v, _ in options) != set(degree4):
        violations.append(("thm5.1", "degree-4 vertex without cut labeling "
                                     "in a 2-Gorenstein algebra"))
    wdbij = ar.well_defined and ar.bijective
    for v, labeling in options:
        cut_pres, _ = cut(pres, v, labeling)
        p2 = gorenstein_profile(cut_pres)
        ar2 = ar_map(cut_pres)
        if _clamp_gor(profile.gor_level) != _clamp_gor(p2.gor_level):
            violations.append(("thm5.1",
                               f"cut at {v}: n-Gorenstein profile changed "
                               f"({_fmt(profile.gor_level)} vs {_fmt(p2.gor_level)})"))
        if _iwanaga_threshold(profile) != _iwanaga_threshold(p2):
            violations.append(("thm5.1",
                               f"cut at {v}: Iwanaga-Gorenstein bound changed"))
        if profile.is_auslander_gorenstein != p2.is_auslander_gorenstein:
            violations.append(("thm5.1", f"cut at {v}: AG changed"))
        wdbij2 = ar2.well_defined and ar2.bijective
        if wdbij != wdbij2:
            violations.append(("thm5.1", f"cut at {v}: AR bijectivity changed"))
        event_v1, event_v2 = f"{v}_1", f"{v}_2"
        glued = glue(cut_pres, event_v1, event_v2, merged_name=v)
        if glued.structure_key() != pres.structure_key():
            violations.append(("thm5.1", f"glue(cut at {v}) does not round-trip"))
    if degree4:
        reduced = reduce_to_nakayama(pres)
        if reduced is None:
            violations.append(("thm5.1", "reduction refused on a 2-Gorenstein algebra"))
        else:
            _, _, comps, series = reduced
            if any(s is None for s in series):
                violations.append(("cor5.2", "reduced component not Nakayama"))
    return violations


_MONOMIAL_IDS = ("thm4.1", "cor4.2", "thm7.3", "cor7.1", "thm2.2", "cor7.4",
                 "cor4.14", "thm2.3", "lem7.5", "lem7.6", "thm3.2", "cor3.4",
                 "cor3.6", "oracle", "thm5.1", "cor5.2")


# -- theorem verification ------------------------------------------------------


def _check_series_worker(args):
    shape, c = args
    ks = KupischSeries(shape, c)
    violations, _ = check_nakayama_series(ks)
    return (f"{shape} kupisch {list(c)}", violations)


def _check_monomial_worker(dsl):
    pres = parse_presentation(dsl)
    violations = check_monomial_presentation(pres)
    return (dsl, violations)


def run_nakayama_suite(n_max, jobs=1, progress=None):
    """Run every Nakayama check on the full census; returns
    (instances, violations) with violations as (theorem, instance, detail)."""
    items = [(ks.shape, ks.c) for ks in enumerate_nakayama(n_max)]
    return _run_suite(items, _check_series_worker, jobs, progress)


def run_monomial_suite(bounds, jobs=1, force=False, progress=None):
    items = [pres.to_dsl() for pres in enumerate_monomial(bounds, force=force)]
    return _run_suite(items, _check_monomial_worker, jobs, progress)


def _run_suite(items, worker, jobs, progress=None):
    out = []
    count = 0
    if jobs and jobs > 1:
        import multiprocessing as mp
        with mp.Pool(jobs) as pool:
            for name, violations in pool.imap(worker, items, chunksize=64):
                count += 1
                for theorem, detail in violations:
                    out.append((theorem, name, detail))
                if progress and count % 5000 == 0:
                    progress(count, len(items))
    else:
        for item in items:
            name, violations = worker(item)
            count += 1
            for theorem, detail in violations:
                out.append((theorem, name, detail))
            if progress and count % 5000 == 0:
                progress(count, len(items))
    return count, out


_THEOREM_SOURCES = {
    "thm3.2": "gentle",
    "cor3.4": "gentle",
    "cor3.6": "gentle",
    "thm4.1": "monomial",
    "cor4.2": "monomial",
    "thm5.1": "monomial",
    "cor5.2": "monomial",
    "thm2.2": "monomial",
    "thm2.3": "monomial",
    "lem7.5": "monomial",
    "lem7.6": "monomial",
    "thm7.3": "monomial",
    "cor7.1": "monomial",
    "cor7.4": "monomial",
    "cor4.14": "monomial",
    "oracle": "monomial",
    "thm6.2": "nakayama",
    "thm6.8": "nakayama",
    "nakayama-closed-forms": "nakayama",
    "nakayama-2gor-criterion": "nakayama",
    "finitistic": "nakayama",
}


def known_theorems():
    return sorted(_THEOREM_SOURCES)


def verify_theorem(theorem_id, bounds=None, nakayama_n=6, force=False, jobs=1):
    """Run one theorem's property over its enumerated class."""
    if theorem_id not in _THEOREM_SOURCES:
        raise ValueError(f"unknown theorem id {theorem_id!r}; "
                         f"known: {', '.join(known_theorems())}")
    start = time.time()
    source = _THEOREM_SOURCES[theorem_id]
    if source == "nakayama":
        instances, violations = run_nakayama_suite(nakayama_n, jobs=jobs)
    else:
        if bounds is None:
            bounds = EnumerationBounds()
        if source == "gentle" and bounds.shape == "any":
            bounds = EnumerationBounds(bounds.max_vertices, bounds.max_arrows,
                                       bounds.max_relation_length,
                                       bounds.max_relations, "gentle")
        instances, violations = run_monomial_suite(bounds, jobs=jobs, force=force)
    relevant = [(name, detail) for theorem, name, detail in violations
                if theorem == theorem_id]
    return VerificationReport(theorem_id, instances, relevant,
                              time.time() - start)
