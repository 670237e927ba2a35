"""Permutation groups with a certified stabilizer chain.

Construction is a deterministic Schreier-Sims: no randomization, base
points picked greedily by largest orbit, ties broken by smallest point.
The group order is the product of the basic orbit lengths, which the test
suite cross-checks against brute-force closure on small groups.

Conjugacy classes, centralizers and normalizers are computed by explicit
orbit/stabilizer runs at desk scale; resource bounds guard against inputs
far beyond the intended corpus.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .perms import MalformedPermError, Perm
from .sigma import PrimeSet, factorize, prime_divisors, sigma_part

CLASS_ORDER_BOUND = 100_000
STABILIZER_ORDER_BOUND = 100_000


class ResourceLimitError(RuntimeError):
    """An operation was asked to run past its configured desk-scale bound."""


class _ChainLevel:
    __slots__ = ("point", "gens", "transversal")

    def __init__(self, point: int):
        self.point = point
        self.gens: list[Perm] = []
        # transversal[p] = u with point^u = p
        self.transversal: dict[int, Perm] = {}

    def rebuild(self, identity: Perm) -> None:
        trans = {self.point: identity}
        frontier = [self.point]
        while frontier:
            nxt = []
            for p in frontier:
                u = trans[p]
                for g in self.gens:
                    q = g.images[p]
                    if q not in trans:
                        trans[q] = u * g
                        nxt.append(q)
            frontier = sorted(nxt)
        self.transversal = trans


def _greedy_point(perms: list[Perm], degree: int) -> int:
    """Moved point lying in the largest orbit of <perms>; smallest point on ties."""
    seen = set()
    best = None
    for start in range(degree):
        if start in seen:
            continue
        orbit = {start}
        frontier = [start]
        while frontier:
            p = frontier.pop()
            for g in perms:
                q = g.images[p]
                if q not in orbit:
                    orbit.add(q)
                    frontier.append(q)
        seen |= orbit
        if len(orbit) > 1 and (best is None or len(orbit) > best[0]):
            best = (len(orbit), min(orbit))
    if best is None:
        raise AssertionError("no moved point")
    return best[1]


class PermGroup:
    """A finite permutation group acting on {1..degree} (0-based inside)."""

    def __init__(self, degree: int, generators):
        gens = []
        for g in generators:
            if g.degree != degree:
                raise MalformedPermError(
                    f"generator degree {g.degree} != group degree {degree}"
                )
            if not g.is_identity() and g not in gens:
                gens.append(g)
        self.degree = degree
        self.generators: tuple[Perm, ...] = tuple(gens)
        self.identity = Perm.identity(degree)
        self._levels: list[_ChainLevel] = []
        self._schreier_sims()
        self.order: int = math.prod(len(l.transversal) for l in self._levels) or 1
        self._memo: dict = {}

    # --- stabilizer chain -------------------------------------------------

    def _schreier_sims(self) -> None:
        if not self.generators:
            return
        levels = self._levels

        def new_level(seed_gens: list[Perm]) -> None:
            levels.append(_ChainLevel(_greedy_point(seed_gens, self.degree)))

        new_level(list(self.generators))
        # every generator must move some base point
        for g in self.generators:
            if all(g.images[lvl.point] == lvl.point for lvl in levels):
                new_level([g])
        # level i holds the generators fixing all earlier base points
        for i, lvl in enumerate(levels):
            lvl.gens = [
                g
                for g in self.generators
                if all(g.images[levels[k].point] == levels[k].point for k in range(i))
            ]
            lvl.rebuild(self.identity)

        def strip(g: Perm, start: int):
            for j in range(start, len(levels)):
                lvl = levels[j]
                p = g.images[lvl.point]
                if p not in lvl.transversal:
                    return g, j
                g = g * lvl.transversal[p].inverse()
            return g, len(levels)

        def process(i: int):
            lvl = levels[i]
            lvl.rebuild(self.identity)
            for p in sorted(lvl.transversal):
                u = lvl.transversal[p]
                for x in lvl.gens:
                    target = lvl.transversal[x.images[p]]
                    sg = u * x * target.inverse()
                    if sg.is_identity():
                        continue
                    h, j = strip(sg, i + 1)
                    if h.is_identity():
                        continue
                    if j == len(levels):
                        new_level([h])
                        levels[-1].rebuild(self.identity)
                    for k in range(i + 1, j + 1):
                        levels[k].gens.append(h)
                        levels[k].rebuild(self.identity)
                    return j
            return None

        i = len(levels) - 1
        while i >= 0:
            j = process(i)
            i = i - 1 if j is None else j

    @property
    def base(self) -> tuple[int, ...]:
        return tuple(lvl.point for lvl in self._levels)

    @property
    def strong_generators(self) -> tuple[Perm, ...]:
        out = []
        for lvl in self._levels:
            for g in lvl.gens:
                if g not in out:
                    out.append(g)
        return tuple(out)

    def contains(self, g: Perm) -> bool:
        if g.degree != self.degree:
            raise MalformedPermError("degree mismatch in membership test")
        for lvl in self._levels:
            p = g.images[lvl.point]
            if p not in lvl.transversal:
                return False
            g = g * lvl.transversal[p].inverse()
        return g.is_identity()

    __contains__ = contains

    def elements(self) -> tuple[Perm, ...]:
        """All group elements, materialized once and cached."""
        if "elements" not in self._memo:
            out = [self.identity]
            for lvl in reversed(self._levels):
                trans = [lvl.transversal[p] for p in sorted(lvl.transversal)]
                out = [h * u for h in out for u in trans]
            assert len(out) == self.order
            self._memo["elements"] = tuple(out)
        return self._memo["elements"]

    def element_set(self) -> frozenset:
        if "element_set" not in self._memo:
            self._memo["element_set"] = frozenset(g.images for g in self.elements())
        return self._memo["element_set"]

    # --- subgroups --------------------------------------------------------

    def subgroup(self, generators) -> "Subgroup":
        return Subgroup(self, generators)

    def is_subset(self, other: "PermGroup") -> bool:
        """True if every generator of self lies in other."""
        return all(other.contains(g) for g in self.generators) or not self.generators

    def conjugated_subgroup(self, H: "PermGroup", g: Perm) -> "Subgroup":
        return self.subgroup([x.conjugate(g) for x in H.generators])

    # --- conjugacy classes --------------------------------------------------

    def conjugacy_classes(self, bound: int | None = None) -> tuple["ConjugacyClass", ...]:
        limit = bound if bound is not None else CLASS_ORDER_BOUND
        if self.order > limit:
            raise ResourceLimitError(
                f"group order {self.order} exceeds class bound {limit}"
            )
        if "classes" not in self._memo:
            remaining = sorted(self.element_set())
            in_class: set = set()
            classes = []
            for images in remaining:
                if images in in_class:
                    continue
                rep = Perm(images)
                orbit = {images}
                frontier = [rep]
                while frontier:
                    x = frontier.pop()
                    for g in self.generators:
                        y = x.conjugate(g)
                        if y.images not in orbit:
                            orbit.add(y.images)
                            frontier.append(y)
                in_class |= orbit
                classes.append(
                    ConjugacyClass(
                        representative=rep,
                        size=len(orbit),
                        element_order=rep.order(),
                        members=frozenset(orbit),
                    )
                )
            classes.sort(key=lambda c: (c.element_order, c.size, c.representative.images))
            assert sum(c.size for c in classes) == self.order
            self._memo["classes"] = tuple(classes)
        return self._memo["classes"]

    def class_index_of(self, g: Perm) -> int:
        if "class_lookup" not in self._memo:
            lookup = {}
            for i, c in enumerate(self.conjugacy_classes()):
                for images in c.members:
                    lookup[images] = i
            self._memo["class_lookup"] = lookup
        try:
            return self._memo["class_lookup"][g.images]
        except KeyError:
            raise ValueError(f"{g!r} is not an element of this group") from None

    def inverse_class_map(self) -> tuple[int, ...]:
        if "inverse_classes" not in self._memo:
            self._memo["inverse_classes"] = tuple(
                self.class_index_of(c.representative.inverse())
                for c in self.conjugacy_classes()
            )
        return self._memo["inverse_classes"]

    def exponent(self) -> int:
        out = 1
        for c in self.conjugacy_classes():
            out = math.lcm(out, c.element_order)
        return out

    # --- orbit/stabilizer machinery ----------------------------------------

    def _stabilizer_of_action(self, start, act):
        """Schreier generators for the stabilizer of `start` under action `act`.

        `act(point, g)` must define a right action of the group on hashable
        points. Returns (orbit dict point -> transversal element, stab gens).
        """
        trans = {start: self.identity}
        frontier = [start]
        stab_gens: list[Perm] = []
        while frontier:
            nxt = []
            for p in frontier:
                u = trans[p]
                for g in self.generators:
                    q = act(p, g)
                    if q not in trans:
                        trans[q] = u * g
                        nxt.append(q)
                    else:
                        sg = u * g * trans[q].inverse()
                        if not sg.is_identity() and sg not in stab_gens:
                            stab_gens.append(sg)
            frontier = nxt
        return trans, stab_gens

    def centralizer(self, g: Perm, check_membership: bool = True) -> "Subgroup":
        if check_membership and not self.contains(g):
            raise ValueError("element is not in the group")
        trans, stab = self._stabilizer_of_action(g, lambda x, s: x.conjugate(s))
        C = self.subgroup(stab)
        assert len(trans) * C.order == self.order
        return C

    def centralizer_of_subgroup(self, H: "PermGroup") -> "Subgroup":
        """C_self(H) = elements commuting with every generator of H.

        H need not be contained in self; conjugation still makes sense as
        long as degrees match.
        """
        current: PermGroup = self
        for s in H.generators:
            trans, stab = current._stabilizer_of_action(s, lambda x, g: x.conjugate(g))
            current = current.subgroup(stab)
        if current is self:
            return self.subgroup(self.generators)
        return self.subgroup(current.generators)

    def center(self) -> "Subgroup":
        return self.centralizer_of_subgroup(self)

    def normalizer(self, H: "PermGroup") -> "Subgroup":
        """N_self(H) for a subgroup H of self."""
        if not H.is_subset(self):
            raise ValueError("H is not a subgroup of the group")
        if self.order > STABILIZER_ORDER_BOUND:
            raise ResourceLimitError(
                f"group order {self.order} exceeds normalizer bound {STABILIZER_ORDER_BOUND}"
            )
        key = ("normalizer", H.element_set())
        if key not in self._memo:
            start = H.element_set()

            def act(pointset, g):
                return frozenset(
                    x.conjugate(g).images for x in map(Perm, pointset)
                )

            trans, stab = self._stabilizer_of_action(start, act)
            N = self.subgroup(tuple(stab) + tuple(H.generators))
            assert len(trans) * N.order == self.order
            self._memo[key] = N
        return self._memo[key]

    def subgroup_conjugates(self, H: "PermGroup"):
        """All conjugates of H in self as (frozenset of images, conjugator)."""
        start = H.element_set()
        trans, _ = self._stabilizer_of_action(
            start, lambda ps, g: frozenset(x.conjugate(g).images for x in map(Perm, ps))
        )
        return trans

    def are_conjugate_subgroups(self, H: "PermGroup", K: "PermGroup") -> bool:
        if H.order != K.order:
            return False
        return K.element_set() in self.subgroup_conjugates(H)

    # --- normal structure ---------------------------------------------------

    def normal_closure(self, seeds) -> "Subgroup":
        gens = [g for g in seeds if not g.is_identity()]
        K = self.subgroup(gens)
        queue = list(gens)
        while queue:
            x = queue.pop()
            for g in self.generators:
                y = x.conjugate(g)
                if not K.contains(y):
                    gens.append(y)
                    K = self.subgroup(gens)
                    queue.append(y)
        return K

    def derived_subgroup(self) -> "Subgroup":
        comms = []
        gens = self.generators
        for i, a in enumerate(gens):
            for b in gens[i + 1 :]:
                c = a.inverse() * b.inverse() * a * b
                if not c.is_identity():
                    comms.append(c)
        return self.normal_closure(comms)

    def is_abelian(self) -> bool:
        gens = self.generators
        return all(
            a.commutes_with(b) for i, a in enumerate(gens) for b in gens[i + 1 :]
        )

    def structure_flags(self) -> "StructureFlags":
        if "structure" not in self._memo:
            # derived series
            derived_length = 0
            current: PermGroup = self
            while current.order > 1:
                nxt = current.derived_subgroup()
                if nxt.order == current.order:
                    derived_length = None
                    break
                current = nxt
                derived_length += 1
            solvable = derived_length is not None
            # lower central series
            nilpotent = False
            if solvable:
                term: PermGroup = self
                while True:
                    comms = [
                        a.inverse() * b.inverse() * a * b
                        for a in self.generators
                        for b in term.generators
                    ]
                    nxt = self.normal_closure(comms)
                    if nxt.order == 1:
                        nilpotent = True
                        break
                    if nxt.order == term.order:
                        break
                    term = nxt
            self._memo["structure"] = StructureFlags(
                is_solvable=solvable,
                is_nilpotent=nilpotent,
                derived_length=derived_length if solvable else None,
            )
        return self._memo["structure"]

    def is_solvable(self) -> bool:
        return self.structure_flags().is_solvable

    def is_nilpotent(self) -> bool:
        return self.structure_flags().is_nilpotent

    def is_normal(self, H: "PermGroup") -> bool:
        if not H.is_subset(self):
            return False
        return all(
            H.contains(h.conjugate(g)) for h in H.generators for g in self.generators
        )

    def normal_subgroups(self) -> tuple["Subgroup", ...]:
        """All normal subgroups, via join-closure of class-rep normal closures."""
        if "normal_subgroups" not in self._memo:
            atoms = []
            seen_atom = set()
            for c in self.conjugacy_classes():
                if c.element_order == 1:
                    continue
                ncl = self.normal_closure([c.representative])
                if ncl.element_set() not in seen_atom:
                    seen_atom.add(ncl.element_set())
                    atoms.append(ncl)
            found = {frozenset({self.identity.images}): self.subgroup([])}
            frontier = list(found.values())
            while frontier:
                H = frontier.pop()
                for A in atoms:
                    join = self.subgroup(tuple(H.generators) + tuple(A.generators))
                    key = join.element_set()
                    if key not in found:
                        found[key] = join
                        frontier.append(join)
            subs = sorted(found.values(), key=lambda s: (s.order, sorted(s.element_set())))
            self._memo["normal_subgroups"] = tuple(subs)
        return self._memo["normal_subgroups"]

    def minimal_proper_normal(self) -> "Subgroup | None":
        """A nontrivial proper normal subgroup of least order, or None if simple."""
        best = None
        for c in self.conjugacy_classes():
            if c.element_order == 1:
                continue
            ncl = self.normal_closure([c.representative])
            if ncl.order < self.order and (best is None or ncl.order < best.order):
                best = ncl
        return best

    def composition_factor_orders(self) -> tuple[int, ...]:
        """Multiset of composition factor orders, sorted ascending."""
        if "comp_factors" not in self._memo:
            self._memo["comp_factors"] = tuple(sorted(_composition_factors(self)))
        return self._memo["comp_factors"]

    def is_sigma_separable(self, sigma: PrimeSet) -> bool:
        return all(
            sigma.is_sigma_number(f) or sigma.is_coprime_number(f)
            for f in self.composition_factor_orders()
        )

    def o_sigma(self, sigma: PrimeSet) -> "Subgroup":
        """The largest normal sigma-subgroup."""
        key = ("o_sigma", sigma)
        if key not in self._memo:
            acc = self.subgroup([])
            for c in self.conjugacy_classes():
                if not sigma.is_sigma_number(c.element_order):
                    continue
                if acc.contains(c.representative):
                    continue
                ncl = self.normal_closure([c.representative])
                if not sigma.is_sigma_number(ncl.order):
                    continue
                acc = self.subgroup(tuple(acc.generators) + tuple(ncl.generators))
                assert sigma.is_sigma_number(acc.order)
            self._memo[key] = acc
        return self._memo[key]

    def hall_sigma_subgroup(self, sigma: PrimeSet) -> "Subgroup":
        """A subgroup of order |G|_sigma, found by subgroup-class search."""
        H = self.find_hall_sigma_subgroup(sigma)
        if H is None:
            raise RuntimeError(
                f"no Hall subgroup of order {sigma_part(self.order, sigma)} found; "
                "the group is probably not sigma-separable"
            )
        return H

    def find_hall_sigma_subgroup(self, sigma: PrimeSet) -> "Subgroup | None":
        key = ("hall", sigma)
        if key not in self._memo:
            target = sigma_part(self.order, sigma)
            result = None
            if target == 1:
                result = self.subgroup([])
            elif target == self.order:
                result = self.subgroup(self.generators)
            else:
                from .lattice import subgroup_classes

                for cls in subgroup_classes(self):
                    if cls.order == target:
                        result = cls.representative
                        break
            self._memo[key] = result
        return self._memo[key]

    def sigma_element_classes(self, sigma: PrimeSet) -> tuple["ConjugacyClass", ...]:
        return tuple(
            c for c in self.conjugacy_classes() if sigma.is_sigma_number(c.element_order)
        )

    def sigma_class_indices(self, sigma: PrimeSet) -> tuple[int, ...]:
        return tuple(
            i
            for i, c in enumerate(self.conjugacy_classes())
            if sigma.is_sigma_number(c.element_order)
        )

    # --- coset actions and quotients -----------------------------------------

    def coset_action(self, H: "PermGroup"):
        """Permutation image of the right-coset action on H\\G.

        Returns (image group, project) where project maps an element of G to
        its permutation of the cosets. Coset 0 is H itself.
        """
        if not H.is_subset(self):
            raise ValueError("H is not a subgroup of the group")
        h_elems = [Perm(im) for im in sorted(H.element_set())]

        def label(x: Perm):
            return min((h * x).images for h in h_elems)

        labels = {label(self.identity): 0}
        reps = [self.identity]
        frontier = [self.identity]
        while frontier:
            nxt = []
            for r in frontier:
                for g in self.generators:
                    x = r * g
                    key = label(x)
                    if key not in labels:
                        labels[key] = len(reps)
                        reps.append(x)
                        nxt.append(x)
            frontier = nxt

        n_cosets = len(reps)

        def project(g: Perm) -> Perm:
            return Perm(tuple(labels[label(r * g)] for r in reps))

        image = PermGroup(n_cosets, [project(g) for g in self.generators])
        return image, project

    def quotient(self, H: "PermGroup"):
        """(G/H, projection) for normal H; errors if H is not normal."""
        if not self.is_normal(H):
            raise ValueError("quotient requested for a non-normal subgroup")
        image, project = self.coset_action(H)
        assert image.order * H.order == self.order
        return image, project

    # --- misc ---------------------------------------------------------------

    def primes(self) -> tuple[int, ...]:
        return prime_divisors(self.order)

    def __repr__(self) -> str:
        gens = ", ".join(g.cycle_string() for g in self.generators) or "()"
        return f"PermGroup(degree={self.degree}, order={self.order}, <{gens}>)"


class Subgroup(PermGroup):
    """A PermGroup remembering the parent it was created in."""

    def __init__(self, parent: PermGroup, generators):
        gens = tuple(generators)
        for g in gens:
            if not parent.contains(g):
                raise ValueError(f"{g!r} is not an element of the parent group")
        self.parent = parent
        super().__init__(parent.degree, gens)
        if parent.order % self.order != 0:
            raise AssertionError("Lagrange violation; stabilizer chain is broken")


@dataclass(frozen=True)
class ConjugacyClass:
    representative: Perm
    size: int
    element_order: int
    members: frozenset

    def __repr__(self) -> str:
        return (
            f"Class(rep={self.representative.cycle_string()}, "
            f"size={self.size}, order={self.element_order})"
        )


@dataclass(frozen=True)
class StructureFlags:
    is_solvable: bool
    is_nilpotent: bool
    derived_length: int | None


def _composition_factors(G: PermGroup) -> list[int]:
    if G.order == 1:
        return []
    if len(factorize(G.order)) == 1 and factorize(G.order)[0][1] == 1:
        return [G.order]
    M = G.minimal_proper_normal()
    if M is None:
        return [G.order]
    if M.is_abelian():
        factors_m = [p for p, e in factorize(M.order) for _ in range(e)]
    else:
        factors_m = _composition_factors(PermGroup(M.degree, M.generators))
    Q, _ = G.quotient(M)
    return factors_m + _composition_factors(Q)


def bsgs_construct(generators, degree: int | None = None) -> PermGroup:
    """Build a group from a generator list; degree defaults to the generators'."""
    gens = list(generators)
    if degree is None:
        if not gens:
            raise MalformedPermError("degree required for an empty generating set")
        degree = gens[0].degree
    for g in gens:
        if g.degree != degree:
            raise MalformedPermError("generators have inconsistent degrees")
    return PermGroup(degree, gens)
