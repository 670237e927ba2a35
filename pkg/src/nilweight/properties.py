"""The aggregated property suite: module invariants plus the lemma checks.

Each property emits one outcome row per instance; failures carry the
witnessing instance. Brute-force oracles (closure order, normalizers,
subgroup enumeration) are implemented here from scratch on raw image
tuples so they share no code path with the stabilizer-chain engine.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .chartab import (
    character_table,
    conjugate_character,
    has_sigma_defect_zero,
    induce_character,
    inner_product,
    restrict_character,
)
from .groups import PermGroup
from .lattice import (
    _orbit_of_subgroup,
    carter_subgroups,
    is_carter_in,
    subgroup_classes,
)
from .perms import Perm
from .pipartial import (
    GlaubermanAction,
    clifford_correspondent,
    decompose_on_subgroup,
    enumerate_weights,
    glauberman_correspondent,
    glauberman_map,
    induced_partial_values,
    ipi_with_vertex,
    is_invariant_character,
    partial_character_stabilizer,
    sigma_partial_characters,
    vertices,
)
from .sigma import is_prime, sigma_part
from .verify import (
    HOLDS,
    bijection_setup,
    check_canonical_bijection,
    check_carter_refinement,
    check_weight_count,
    sigma_subsets,
)

DEFAULT_BRUTE_BOUND = 200
DEFAULT_LATTICE_BRUTE_BOUND = 500
DEFAULT_HEAVY_BOUND = 150


@dataclass(frozen=True)
class PropertyOutcome:
    prop: str
    instance: str
    ok: bool
    note: str = ""

    def line(self) -> str:
        status = "pass" if self.ok else "FAIL"
        note = f" ({self.note})" if self.note else ""
        return f"{status}  {self.prop}  {self.instance}{note}"


@dataclass
class PropertyReport:
    outcomes: list[PropertyOutcome]

    @property
    def ok(self) -> bool:
        return all(o.ok for o in self.outcomes)

    def failures(self) -> list[PropertyOutcome]:
        return [o for o in self.outcomes if not o.ok]

    def by_property(self) -> dict[str, tuple[int, int]]:
        stats: dict[str, list[int]] = {}
        for o in self.outcomes:
            entry = stats.setdefault(o.prop, [0, 0])
            entry[o.ok] += 1
        return {k: (v[1], v[0]) for k, v in stats.items()}  # (passed, failed)


# --- brute-force oracles (independent of the stabilizer chain) ---------------


def _bf_mult(a, b):
    return tuple(b[i] for i in a)


def _bf_inv(a):
    out = [0] * len(a)
    for i, j in enumerate(a):
        out[j] = i
    return tuple(out)


def _bf_conj(x, g):
    return _bf_mult(_bf_mult(_bf_inv(g), x), g)


def _bf_closure(gens, degree):
    identity = tuple(range(degree))
    elems = {identity}
    frontier = [identity]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = _bf_mult(x, g)
                if y not in elems:
                    elems.add(y)
                    nxt.append(y)
        frontier = nxt
    return elems


def _bf_all_subgroups(elems, degree):
    identity = tuple(range(degree))
    found = {frozenset([identity])}
    frontier = list(found)
    while frontier:
        H = frontier.pop()
        for g in elems:
            if g in H:
                continue
            K = frozenset(_bf_closure(set(H) | {g}, degree))
            if K not in found:
                found.add(K)
                frontier.append(K)
    return found


# --- individual properties -------------------------------------------------


def _prop_order_certificate(corpus, bound):
    for name, G in corpus:
        if G.order > bound:
            continue
        brute = len(_bf_closure([g.images for g in G.generators], G.degree))
        yield PropertyOutcome(
            "order-certificate", name, brute == G.order, f"brute={brute} chain={G.order}"
        )


def _prop_class_equation(corpus):
    for name, G in corpus:
        ok = sum(c.size for c in G.conjugacy_classes()) == G.order
        for c in G.conjugacy_classes():
            ok = ok and c.size * G.centralizer(c.representative).order == G.order
        yield PropertyOutcome("class-equation", name, ok)


def _prop_normalizer_sandwich(corpus, bound):
    for name, G in corpus:
        if G.order > bound:
            continue
        elems = [Perm(im) for im in G.element_set()]
        ok = True
        for cls in subgroup_classes(G):
            H = cls.representative
            N = G.normalizer(H)
            if not (H.is_subset(N) and N.is_subset(G)):
                ok = False
                break
            h_set = H.element_set()
            brute = {
                g.images
                for g in elems
                if frozenset(x.conjugate(g).images for x in map(Perm, h_set)) == h_set
            }
            if brute != N.element_set():
                ok = False
                break
        yield PropertyOutcome("normalizer-sandwich", name, ok)


def _prop_subgroup_completeness(corpus, bound):
    for name, G in corpus:
        if G.order > bound:
            continue
        brute = _bf_all_subgroups(G.element_set(), G.degree)
        classes = subgroup_classes(G)
        total = sum(c.class_size for c in classes)
        by_conjugacy = set()
        for H in brute:
            by_conjugacy.add(min(tuple(sorted(s)) for s in _orbit_of_subgroup(G, H)))
        ok = total == len(brute) and len(by_conjugacy) == len(classes)
        yield PropertyOutcome(
            "subgroup-completeness",
            name,
            ok,
            f"brute={len(brute)} classes={len(classes)}",
        )


def _prop_hall(corpus):
    for name, G in corpus:
        for sigma in sigma_subsets(G):
            H = G.find_hall_sigma_subgroup(sigma)
            target = sigma_part(G.order, sigma)
            if H is not None:
                yield PropertyOutcome(
                    "hall-consistency", f"{name} sigma={sigma}", H.order == target
                )
            hall_classes = [c for c in subgroup_classes(G) if c.order == target]
            if G.is_sigma_separable(sigma):
                yield PropertyOutcome(
                    "hall-conjugacy",
                    f"{name} sigma={sigma}",
                    len(hall_classes) == 1,
                    f"classes of Hall order: {len(hall_classes)}",
                )


def _prop_o_sigma(corpus, bound):
    for name, G in corpus:
        if G.order > bound:
            continue
        normals = G.normal_subgroups()
        # cross-check the normal-subgroup search against the lattice
        lattice_normals = {
            cls.representative.element_set()
            for cls in subgroup_classes(G)
            if cls.class_size == 1
        }
        yield PropertyOutcome(
            "normal-subgroup-search",
            name,
            {N.element_set() for N in normals} == lattice_normals,
        )
        for sigma in sigma_subsets(G):
            O = G.o_sigma(sigma)
            ok = G.is_normal(O) and sigma.is_sigma_number(O.order)
            for N in normals:
                if sigma.is_sigma_number(N.order):
                    ok = ok and N.is_subset(O)
            yield PropertyOutcome("o-sigma-maximal", f"{name} sigma={sigma}", ok)


def _prop_carter(corpus):
    for name, G in corpus:
        if not G.is_solvable():
            continue
        cls = carter_subgroups(G)
        R = cls.representative
        ok = R.is_nilpotent() and G.normalizer(R).order == R.order
        yield PropertyOutcome("carter-uniqueness", name, ok, f"|C|={cls.order}")


def _prop_carter_lifting(corpus):
    """R Carter in Q iff RK/K Carter in Q/K, for K = O_{sigma'}(G), N_K(R) <= R."""
    for name, G in corpus:
        if not G.is_solvable():
            continue
        for sigma in sigma_subsets(G):
            coprime = sigma.complement_within(G.order)
            K = G.o_sigma(coprime)
            if K.order == 1 or K.order == G.order:
                continue
            quo, proj = G.quotient(K)
            checked = 0
            ok = True
            for cls in subgroup_classes(G):
                if not coprime.is_sigma_number(cls.order):
                    continue
                Q = cls.representative
                if not K.is_subset(Q):
                    continue
                q_img = quo.subgroup([proj(g) for g in Q.generators])
                for rcls in subgroup_classes(Q):
                    R = rcls.representative
                    if not R.is_nilpotent():
                        continue
                    nk_r = _normalizer_of_set(K, R)
                    if not nk_r.is_subset(R):
                        continue
                    r_img = quo.subgroup([proj(g) for g in R.generators])
                    lifted = is_carter_in(R, Q)
                    dropped = is_carter_in(r_img, q_img)
                    if lifted != dropped:
                        ok = False
                    checked += 1
            if checked:
                yield PropertyOutcome(
                    "carter-lifting", f"{name} sigma={sigma}", ok, f"{checked} pairs"
                )


def _alt_series_choice(S: PermGroup) -> PermGroup:
    """The smallest prime-index normal subgroup (the default picks the largest)."""
    options = [
        T
        for T in S.normal_subgroups()
        if T.order < S.order and is_prime(S.order // T.order)
    ]
    return min(options, key=lambda T: (T.order, sorted(T.element_set())))


def _normalizer_of_set(K: PermGroup, R: PermGroup) -> PermGroup:
    trans, stab = K._stabilizer_of_action(
        R.element_set(),
        lambda ps, g: frozenset(Perm(im).conjugate(g).images for im in ps),
    )
    return K.subgroup(stab)


def _prop_table_invariants(corpus):
    for name, G in corpus:
        tab = character_table(G)
        try:
            tab.verify()
            ok = True
        except AssertionError:
            ok = False
        yield PropertyOutcome("character-table-invariants", name, ok)


def _prop_frobenius(corpus, samples, seed):
    rng = random.Random(seed)
    for name, G in corpus:
        tab = character_table(G)
        classes = list(subgroup_classes(G))
        ok = True
        for _ in range(samples):
            H = rng.choice(classes).representative
            sub = character_table(H)
            theta = rng.choice(sub.irreducibles)
            chi = rng.choice(tab.irreducibles)
            lhs = inner_product(induce_character(theta, G), chi)
            rhs = inner_product(theta, restrict_character(chi, H))
            if lhs != rhs:
                ok = False
                break
        yield PropertyOutcome("frobenius-reciprocity", name, ok, f"{samples} samples")


def _prop_defect_zero_radical(corpus):
    for name, G in corpus:
        tab = character_table(G)
        for sigma in sigma_subsets(G):
            if not sigma.primes:
                continue
            has_dz = any(has_sigma_defect_zero(chi, sigma) for chi in tab.irreducibles)
            o_trivial = G.o_sigma(sigma).order == 1
            # defect zero forces a trivial radical (not conversely)
            yield PropertyOutcome(
                "defect-zero-radical",
                f"{name} sigma={sigma}",
                (not has_dz) or o_trivial,
                f"defect_zero={has_dz} O_sigma=1:{o_trivial}",
            )


def _prop_ipi_count(corpus):
    for name, G in corpus:
        for sigma in sigma_subsets(G):
            if not G.is_sigma_separable(sigma):
                continue
            n = len(sigma_partial_characters(G, sigma))
            want = len(G.sigma_element_classes(sigma))
            yield PropertyOutcome(
                "ipi-count", f"{name} sigma={sigma}", n == want, f"{n} vs {want}"
            )


def _prop_vertex_degree_law(corpus, heavy_bound):
    for name, G in corpus:
        if G.order > heavy_bound:
            continue
        for sigma in sigma_subsets(G):
            if not G.is_sigma_separable(sigma):
                continue
            coprime = sigma.complement_within(G.order)
            ok = True
            for phi in sigma_partial_characters(G, sigma):
                cls = vertices(phi)
                if coprime.part(phi.degree) != coprime.part(G.order // cls.order):
                    ok = False
            yield PropertyOutcome("vertex-degree-law", f"{name} sigma={sigma}", ok)


def _prop_clifford_roundtrip(corpus, heavy_bound):
    for name, G in corpus:
        if G.order > heavy_bound:
            continue
        normals = [N for N in G.normal_subgroups() if 1 < N.order < G.order]
        for sigma in sigma_subsets(G):
            if not G.is_sigma_separable(sigma) or not sigma.primes:
                continue
            checked = 0
            ok = True
            for N in normals[:3]:
                for phi in sigma_partial_characters(G, sigma):
                    theta = decompose_on_subgroup(phi, N)[0][0]
                    mu, T = clifford_correspondent(phi, N, theta)
                    if induced_partial_values(mu, G) != phi.values:
                        ok = False
                    checked += 1
            if checked:
                yield PropertyOutcome(
                    "clifford-roundtrip", f"{name} sigma={sigma}", ok, f"{checked} cases"
                )


def _glauberman_actions(corpus, heavy_bound):
    """Coprime solvable actions harvested from normal-Hall decompositions."""
    for name, G in corpus:
        if G.order > heavy_bound:
            continue
        for sigma in sigma_subsets(G):
            if not sigma.primes:
                continue
            setup = bijection_setup(G, sigma)
            if setup is None:
                continue
            N, H = setup
            if N.order == 1 or H.order == 1:
                continue
            for cls in subgroup_classes(H):
                if cls.order == 1:
                    continue
                S = cls.representative
                yield f"{name} sigma={sigma} |S|={S.order}", G, N, S


def _prop_glauberman(corpus, heavy_bound):
    seen = set()
    for label, G, N, S in _glauberman_actions(corpus, heavy_bound):
        key = (id(G), N.element_set(), S.element_set())
        if key in seen:
            continue
        seen.add(key)
        action = GlaubermanAction(G, N, S)
        try:
            pairs = glauberman_map(action)
            ok = True
        except AssertionError:
            ok = False
            pairs = []
        yield PropertyOutcome("glauberman-bijective", label, ok, f"{len(pairs)} chars")
        if not ok:
            continue
        # series independence: a different maximal normal subgroup at every
        # level of the descent must give the same correspondents
        ok_series = all(
            glauberman_correspondent(action, chi, _alt_series_choice).values
            == img.values
            for chi, img in pairs
        )
        yield PropertyOutcome("glauberman-series-independence", label, ok_series)
        # equivariance of the T-correspondence under the S-action
        for T in S.normal_subgroups():
            if not 1 < T.order < S.order:
                continue
            t_action = GlaubermanAction(G, N, T)
            C_T = t_action.fixed
            ok_eq = True
            for chi in character_table(N).irreducibles:
                if not is_invariant_character(chi, T):
                    continue
                img = glauberman_correspondent(t_action, chi)
                for s in S.generators:
                    lhs = glauberman_correspondent(
                        t_action, conjugate_character(chi, s, N)
                    )
                    rhs = conjugate_character(img, s, C_T)
                    if lhs.values != rhs.values:
                        ok_eq = False
            yield PropertyOutcome(
                "glauberman-equivariance", f"{label} |T|={T.order}", ok_eq
            )


def _prop_lemma_intersection_counts(corpus, heavy_bound):
    """|Iso(G|Q,tau)| = sum over orbit reps U of |Iso(G_tau|U,tau)|."""
    for name, G in corpus:
        if G.order > heavy_bound:
            continue
        normals = [N for N in G.normal_subgroups() if 1 < N.order < G.order]
        for sigma in sigma_subsets(G):
            if not sigma.primes or not G.is_sigma_separable(sigma):
                continue
            coprime = sigma.complement_within(G.order)
            instances = 0
            ok = True
            for N in normals[:2]:
                q_classes = [
                    c
                    for c in subgroup_classes(G)
                    if 1 < c.order and coprime.is_sigma_number(c.order)
                ]
                for cls in q_classes[:3]:
                    Q = cls.representative
                    for tau in sigma_partial_characters(N, sigma):
                        if not _is_q_invariant_partial(tau, N, Q):
                            continue
                        lhs = len(ipi_with_vertex(G, sigma, Q, theta=tau))
                        T = partial_character_stabilizer(G, N, tau)
                        rhs = 0
                        t_set = T.element_set()
                        reps = []
                        seen_orbits = set()
                        for conj_set in _orbit_of_subgroup(G, Q.element_set()):
                            if not conj_set <= t_set:
                                continue
                            key = min(
                                tuple(sorted(s))
                                for s in _orbit_of_subgroup(T, conj_set)
                            )
                            if key in seen_orbits:
                                continue
                            seen_orbits.add(key)
                            reps.append(conj_set)
                        for conj_set in reps:
                            U = T.subgroup(
                                [Perm(im) for im in conj_set if not Perm(im).is_identity()]
                            )
                            rhs += len(ipi_with_vertex(T, sigma, U, theta=tau))
                        if lhs != rhs:
                            ok = False
                        instances += 1
                        # simplified form when G_tau N_G(Q) = G
                        NQ = G.normalizer(Q)
                        inter = sum(1 for x in NQ.elements() if T.contains(x))
                        if T.order * NQ.order // inter == G.order:
                            q_in_t = T.subgroup(Q.generators) if all(
                                T.contains(g) for g in Q.generators
                            ) else None
                            if q_in_t is not None:
                                simple = len(
                                    ipi_with_vertex(T, sigma, q_in_t, theta=tau)
                                )
                                if lhs != simple:
                                    ok = False
            if instances:
                yield PropertyOutcome(
                    "clifford-vertex-orbit-count",
                    f"{name} sigma={sigma}",
                    ok,
                    f"{instances} instances",
                )


def _is_q_invariant_partial(tau, N, Q) -> bool:
    sidx = N.sigma_class_indices(tau.sigma)
    classes = N.conjugacy_classes()
    for q in Q.generators:
        qi = q.inverse()
        for pos, i in enumerate(sidx):
            moved = N.class_index_of(q * classes[i].representative * qi)
            if tau.values[sidx.index(moved)] != tau.values[pos]:
                return False
    return True


def _prop_normalizer_counting(corpus, heavy_bound):
    """|Iso(G|Q,phi)| = |Iso(N_G(Q)|Q,phi)| in the normal-LQ situation."""
    from .verify import check_normalizer_counting

    for name, G in corpus:
        if G.order > heavy_bound:
            continue
        center = G.center()
        for sigma in sigma_subsets(G):
            if not sigma.primes or not G.is_sigma_separable(sigma):
                continue
            coprime = sigma.complement_within(G.order)
            L = G.o_sigma(sigma)
            zl_gens = [g for g in center.generators if L.contains(g)]
            m_options = [G.subgroup([])]
            if zl_gens:
                ZL = G.subgroup(zl_gens)
                if ZL.order > 1 and ZL.is_subset(L):
                    m_options.append(ZL)
            checked = 0
            ok = True
            for cls in subgroup_classes(G):
                if not coprime.is_sigma_number(cls.order):
                    continue
                Q = cls.representative
                if not Q.is_solvable():
                    continue
                LQ = G.subgroup(tuple(L.generators) + tuple(Q.generators))
                if not G.is_normal(LQ):
                    continue
                for M in m_options:
                    for phi in character_table(M).irreducibles:
                        rep = check_normalizer_counting(G, sigma, Q, L, M, phi, name)
                        if rep.hypotheses_met and rep.verdict != HOLDS:
                            ok = False
                        if rep.hypotheses_met:
                            checked += 1
            if checked:
                yield PropertyOutcome(
                    "normalizer-counting",
                    f"{name} sigma={sigma}",
                    ok,
                    f"{checked} instances",
                )


def _prop_weight_count(corpus):
    for name, G in corpus:
        for sigma in sigma_subsets(G):
            rep = check_weight_count(G, sigma, name)
            if rep.hypotheses_met:
                yield PropertyOutcome(
                    "weight-count-theorem",
                    f"{name} sigma={sigma}",
                    rep.verdict == HOLDS,
                    f"lhs={rep.lhs} rhs={rep.rhs}",
                )


def _prop_carter_refinement(corpus, heavy_bound):
    for name, G in corpus:
        if G.order > heavy_bound:
            continue
        for sigma in sigma_subsets(G):
            coprime = sigma.complement_within(G.order)
            hallc = G.find_hall_sigma_subgroup(coprime)
            if not (
                G.is_sigma_separable(sigma)
                and hallc is not None
                and hallc.is_solvable()
            ):
                continue
            lhs_total = rhs_total = 0
            ok = True
            for cls in subgroup_classes(G):
                if not (coprime.is_sigma_number(cls.order) and cls.is_nilpotent()):
                    continue
                rep = check_carter_refinement(G, sigma, cls.representative, name)
                if rep.verdict != HOLDS:
                    ok = False
                info = [r.count for r in rep.rows if r.side == "info"]
                if info and info[0] != rep.rhs:
                    ok = False  # weight link: |Iso(N(R)|R)| = #weights at R
                lhs_total += rep.lhs or 0
                rhs_total += rep.rhs or 0
            n_ipi = len(sigma_partial_characters(G, sigma))
            n_weights = len(enumerate_weights(G, coprime, nilpotent_only=True))
            agg = lhs_total == n_ipi and rhs_total == n_weights
            yield PropertyOutcome(
                "carter-refinement-theorem", f"{name} sigma={sigma}", ok
            )
            yield PropertyOutcome(
                "refinement-aggregation",
                f"{name} sigma={sigma}",
                agg,
                f"lhs_total={lhs_total} |Iso|={n_ipi} rhs_total={rhs_total} weights={n_weights}",
            )


def _prop_canonical_bijection(corpus, heavy_bound):
    for name, G in corpus:
        if G.order > heavy_bound:
            continue
        for sigma in sigma_subsets(G):
            if not sigma.primes:
                continue
            setup = bijection_setup(G, sigma)
            if setup is None:
                continue
            N, H = setup
            if H.order == 1:
                continue
            for cls in subgroup_classes(H):
                if not cls.is_nilpotent():
                    continue
                rep = check_canonical_bijection(G, sigma, N, H, cls.representative, name)
                yield PropertyOutcome(
                    "canonical-bijection",
                    f"{name} sigma={sigma} |R|={cls.order}",
                    rep.verdict == HOLDS and "THEOREM-VIOLATION" not in rep.detail,
                    f"size={rep.lhs}",
                )


def run_property_suite(
    corpus,
    brute_bound: int = DEFAULT_BRUTE_BOUND,
    lattice_brute_bound: int = DEFAULT_LATTICE_BRUTE_BOUND,
    heavy_bound: int = DEFAULT_HEAVY_BOUND,
    frobenius_samples: int = 100,
    seed: int = 0,
) -> PropertyReport:
    """Run every property over the corpus; failures become report rows."""
    outcomes: list[PropertyOutcome] = []
    outcomes += _prop_order_certificate(corpus, brute_bound)
    outcomes += _prop_class_equation(corpus)
    outcomes += _prop_normalizer_sandwich(corpus, lattice_brute_bound)
    outcomes += _prop_subgroup_completeness(corpus, lattice_brute_bound)
    outcomes += _prop_hall(corpus)
    outcomes += _prop_o_sigma(corpus, lattice_brute_bound)
    outcomes += _prop_carter(corpus)
    outcomes += _prop_carter_lifting(corpus)
    outcomes += _prop_table_invariants(corpus)
    outcomes += _prop_frobenius(corpus, frobenius_samples, seed)
    outcomes += _prop_defect_zero_radical(corpus)
    outcomes += _prop_ipi_count(corpus)
    outcomes += _prop_vertex_degree_law(corpus, heavy_bound)
    outcomes += _prop_clifford_roundtrip(corpus, heavy_bound)
    outcomes += _prop_glauberman(corpus, heavy_bound)
    outcomes += _prop_lemma_intersection_counts(corpus, min(heavy_bound, 40))
    outcomes += _prop_normalizer_counting(corpus, min(heavy_bound, 60))
    outcomes += _prop_weight_count(corpus)
    outcomes += _prop_carter_refinement(corpus, heavy_bound)
    outcomes += _prop_canonical_bijection(corpus, heavy_bound)
    return PropertyReport(outcomes)
