"""Subgroup lattices up to conjugacy, Carter subgroups and Carter fibers.

Subgroup classes are enumerated bottom-up by cyclic extension: a known
class representative H is extended by elements z of its normalizer with
z^p in H, so that <H, z> contains H with prime index. That reaches every
solvable subgroup; for a non-solvable ambient group a join-closure pass
with prime-power cyclic subgroups picks up the perfect overgroups.
Conjugacy of candidates is decided on element sets with an
(order, element-order histogram) fingerprint as prefilter.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from collections import Counter

from .groups import PermGroup, ResourceLimitError, Subgroup
from .perms import Perm
from .sigma import PrimeSet, factorize

LATTICE_ORDER_BOUND = 2000


@dataclass(frozen=True)
class SubgroupClass:
    """A conjugacy class of subgroups, carried by one representative."""

    representative: Subgroup
    class_size: int
    canonical_key: tuple

    @property
    def order(self) -> int:
        return self.representative.order

    def is_nilpotent(self) -> bool:
        return self.representative.is_nilpotent()

    def is_solvable(self) -> bool:
        return self.representative.is_solvable()

    def is_sigma_group(self, sigma: PrimeSet) -> bool:
        return sigma.is_sigma_number(self.order)

    def __repr__(self) -> str:
        gens = ",".join(g.cycle_string() for g in self.representative.generators) or "()"
        return f"SubgroupClass(order={self.order}, size={self.class_size}, <{gens}>)"


def _fingerprint(H: PermGroup) -> tuple:
    hist = Counter(Perm(im).order() for im in H.element_set())
    return (H.order, tuple(sorted(hist.items())))


def _orbit_of_subgroup(G: PermGroup, elems: frozenset) -> set[frozenset]:
    key = ("subgroup_orbit", elems)
    if key in G._memo:
        return G._memo[key]
    orbit = {elems}
    frontier = [elems]
    while frontier:
        current = frontier.pop()
        perms = [Perm(im) for im in current]
        for g in G.generators:
            image = frozenset(x.conjugate(g).images for x in perms)
            if image not in orbit:
                orbit.add(image)
                frontier.append(image)
    for member in orbit:
        G._memo[("subgroup_orbit", member)] = orbit
    return orbit


def _canonical_key(orbit: set[frozenset]) -> tuple:
    return min(tuple(sorted(s)) for s in orbit)


class _ClassCollector:
    """Dedupes candidate subgroups into conjugacy classes."""

    def __init__(self, G: PermGroup):
        self.G = G
        self.by_key: dict[tuple, SubgroupClass] = {}
        self.keys_by_fingerprint: dict[tuple, list[frozenset]] = {}
        self._orbits: dict[tuple, set[frozenset]] = {}

    def add(self, H: Subgroup) -> SubgroupClass | None:
        """Register H; returns its new class, or None if already known."""
        elems = H.element_set()
        fp = _fingerprint(H)
        for key in self.keys_by_fingerprint.get(fp, []):
            if elems in self._orbits[key]:
                return None
        orbit = _orbit_of_subgroup(self.G, elems)
        key = _canonical_key(orbit)
        cls = SubgroupClass(representative=H, class_size=len(orbit), canonical_key=key)
        self.by_key[key] = cls
        self.keys_by_fingerprint.setdefault(fp, []).append(key)
        self._orbits[key] = orbit
        return cls

    def classes(self) -> list[SubgroupClass]:
        return sorted(self.by_key.values(), key=lambda c: (c.order, c.canonical_key))


def subgroup_classes(G: PermGroup, bound: int | None = None) -> tuple[SubgroupClass, ...]:
    """All subgroup conjugacy classes of G."""
    limit = bound if bound is not None else LATTICE_ORDER_BOUND
    if G.order > limit:
        raise ResourceLimitError(
            f"group order {G.order} exceeds subgroup-lattice bound {limit}"
        )
    if "subgroup_classes" not in G._memo:
        collector = _ClassCollector(G)
        trivial = collector.add(G.subgroup([]))
        frontier = [trivial]
        while frontier:
            cls = frontier.pop()
            H = cls.representative
            N = G.normalizer(H)
            h_set = H.element_set()
            seen_candidates = set()
            for images in sorted(N.element_set()):
                if images in h_set:
                    continue
                z = Perm(images)
                coset_order = _coset_order(z, H)
                if len(factorize(coset_order)) != 1 or factorize(coset_order)[0][1] != 1:
                    continue  # z must have prime order modulo H
                K = G.subgroup(tuple(H.generators) + (z,))
                assert K.order == coset_order * H.order
                if K.element_set() in seen_candidates:
                    continue
                seen_candidates.add(K.element_set())
                new_cls = collector.add(K)
                if new_cls is not None:
                    frontier.append(new_cls)
        if not G.is_solvable():
            _nonsolvable_completion(G, collector)
        classes = collector.classes()
        assert classes[0].order == 1 and classes[-1].order == G.order
        G._memo["subgroup_classes"] = tuple(classes)
    return G._memo["subgroup_classes"]


def _coset_order(z: Perm, H: PermGroup) -> int:
    k = 1
    x = z
    while not H.contains(x):
        x = x * z
        k += 1
    return k


def _nonsolvable_completion(G: PermGroup, collector: _ClassCollector) -> None:
    """Join-closure with prime-power cyclic subgroups; finds perfect overgroups.

    Every subgroup is generated by its cyclic subgroups of prime-power
    order, so closing the solvable layer under these joins reaches every
    remaining class.
    """
    cyclics = []
    seen = set()
    for c in G.conjugacy_classes():
        if len(factorize(c.element_order)) == 1:
            Z = G.subgroup([c.representative])
            for conj_set in _orbit_of_subgroup(G, Z.element_set()):
                if conj_set not in seen:
                    seen.add(conj_set)
                    cyclics.append([Perm(im) for im in conj_set if not Perm(im).is_identity()])
    frontier = list(collector.by_key.values())
    while frontier:
        cls = frontier.pop()
        H = cls.representative
        h_set = H.element_set()
        for zgens in cyclics:
            if all(z.images in h_set for z in zgens):
                continue
            K = G.subgroup(tuple(H.generators) + tuple(zgens))
            if K.order == H.order:
                continue
            new_cls = collector.add(K)
            if new_cls is not None:
                frontier.append(new_cls)


def nilpotent_sigma_subgroup_classes(
    G: PermGroup, sigma: PrimeSet, nilpotent_only: bool = True
) -> tuple[SubgroupClass, ...]:
    """Subgroup classes whose order is a sigma-number, optionally nilpotent."""
    return tuple(
        cls
        for cls in subgroup_classes(G)
        if cls.is_sigma_group(sigma) and (not nilpotent_only or cls.is_nilpotent())
    )


def subgroup_class_of(G: PermGroup, H: PermGroup) -> SubgroupClass:
    """The class of subgroup H within G's lattice."""
    if "subgroup_member_index" not in G._memo:
        index = {}
        for cls in subgroup_classes(G):
            for member in _orbit_of_subgroup(G, cls.representative.element_set()):
                index[member] = cls
        G._memo["subgroup_member_index"] = index
    try:
        return G._memo["subgroup_member_index"][H.element_set()]
    except KeyError:
        raise ValueError(
            "subgroup not found in the lattice (is it a subgroup of G?)"
        ) from None


def carter_subgroups(G: PermGroup) -> SubgroupClass:
    """The unique class of self-normalizing nilpotent subgroups of solvable G."""
    if not G.is_solvable():
        raise ValueError("Carter subgroups require a solvable group")
    hits = [
        cls
        for cls in subgroup_classes(G)
        if cls.is_nilpotent() and G.normalizer(cls.representative).order == cls.order
    ]
    if len(hits) != 1:
        raise AssertionError(
            f"expected exactly one self-normalizing nilpotent class, found {len(hits)}"
        )
    return hits[0]


def is_carter_in(R: PermGroup, Q: PermGroup) -> bool:
    """True iff R is a self-normalizing nilpotent subgroup of Q."""
    if not R.is_subset(Q):
        raise ValueError("R is not a subgroup of Q")
    if not R.is_nilpotent():
        return False
    return Q.normalizer(R).order == R.order


def carter_fiber(G: PermGroup, sigma: PrimeSet, R: PermGroup) -> tuple[SubgroupClass, ...]:
    """Classes of sigma'-subgroups with a conjugate containing R as Carter subgroup.

    Each returned class carries a representative that actually contains R.
    """
    coprimes = sigma.complement_within(G.order)
    if not coprimes.is_sigma_number(R.order):
        raise ValueError("R is not a sigma'-subgroup")
    if not R.is_nilpotent():
        raise ValueError("R is not nilpotent")
    r_set = R.element_set()
    out = []
    for cls in subgroup_classes(G):
        if not coprimes.is_sigma_number(cls.order):
            continue
        if cls.order < R.order or cls.order % R.order:
            continue
        for conj_set in sorted(
            _orbit_of_subgroup(G, cls.representative.element_set()),
            key=lambda s: tuple(sorted(s)),
        ):
            if not r_set <= conj_set:
                continue
            Q = G.subgroup([Perm(im) for im in conj_set if not Perm(im).is_identity()])
            if is_carter_in(R, Q):
                out.append(replace(cls, representative=Q))
                break
    return tuple(out)
