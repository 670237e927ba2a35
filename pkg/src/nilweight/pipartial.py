"""Irreducible sigma-partial characters, vertices, and weights.

A sigma-partial character is the restriction of an ordinary character to
the sigma-elements; the irreducible ones are found by peeling distinct
restrictions in increasing degree order and rejecting any that decompose
as nonnegative integer combinations of the smaller ones. The count is
certified against the number of sigma-element classes, which the theory
forces to match, so a wrong set cannot survive construction.

Vertices are located by exhaustive search over pairs (U, alpha) of a
subgroup class and a sigma-degree member of Iso(U) inducing the target;
all hits must produce one conjugacy class of Hall sigma'-subgroups.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
import math

from .chartab import (
    Character,
    character_table,
    inner_product,
    restrict_character,
)
from .cyclotomic import Cyclotomic
from .groups import PermGroup
from .lattice import SubgroupClass, subgroup_class_of, subgroup_classes
from .linalg import nonneg_integer_solution
from .perms import Perm
from .sigma import PrimeSet, factorize, sigma_part


class InternalConsistencyError(AssertionError):
    """A certified identity failed; the engine itself is wrong somewhere."""


class PartialCharacter:
    """A class function on the sigma-elements, with its lifts in Irr(G)."""

    __slots__ = ("group", "sigma", "values", "lifts", "class_indices", "_vertex", "_hash")

    def __init__(self, group: PermGroup, sigma: PrimeSet, values, lifts, class_indices):
        object.__setattr__(self, "group", group)
        object.__setattr__(self, "sigma", sigma)
        object.__setattr__(self, "values", tuple(values))
        object.__setattr__(self, "lifts", tuple(lifts))
        object.__setattr__(self, "class_indices", tuple(class_indices))
        object.__setattr__(self, "_vertex", None)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, *a):
        raise AttributeError("PartialCharacter is immutable")

    @property
    def degree(self) -> int:
        return self.values[0].to_int()

    def value_at(self, g: Perm) -> Cyclotomic:
        idx = self.group.class_index_of(g)
        try:
            return self.values[self.class_indices.index(idx)]
        except ValueError:
            raise ValueError("element is not a sigma-element") from None

    @property
    def vertex(self) -> SubgroupClass | None:
        return self._vertex

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, PartialCharacter)
            and self.group is other.group
            and self.sigma == other.sigma
            and self.values == other.values
        )

    def __hash__(self) -> int:
        if self._hash is None:
            object.__setattr__(
                self,
                "_hash",
                hash((id(self.group), self.sigma) + tuple(hash(v) for v in self.values)),
            )
        return self._hash

    def __repr__(self) -> str:
        return f"PartialCharacter(deg={self.values[0]}, [{', '.join(map(str, self.values))}])"


def _flatten(values, conductor) -> list[Fraction]:
    out: list[Fraction] = []
    for v in values:
        out.extend(v.sort_key(conductor))
    return out


def sigma_partial_characters(G: PermGroup, sigma: PrimeSet) -> tuple[PartialCharacter, ...]:
    """The set Iso(G) of irreducible sigma-partial characters."""
    key = ("ipi", sigma)
    if key not in G._memo:
        if not G.is_sigma_separable(sigma):
            raise ValueError("partial-character theory requires a sigma-separable group")
        tab = character_table(G)
        sidx = G.sigma_class_indices(sigma)
        restrictions: dict[tuple, list[int]] = {}
        for i, chi in enumerate(tab.irreducibles):
            v = tuple(chi.values[j] for j in sidx)
            restrictions.setdefault(v, []).append(i)
        e = G.exponent()
        ordered = sorted(
            restrictions, key=lambda v: (v[0].to_int(), [x.sort_key(e) for x in v])
        )
        accepted: list[tuple] = []
        for v in ordered:
            deg = v[0].to_int()
            smaller = [u for u in accepted if u[0].to_int() < deg]
            if smaller:
                sol = nonneg_integer_solution(
                    [_flatten(u, e) for u in smaller], _flatten(v, e)
                )
                if sol is not None:
                    continue  # a sum of smaller members, hence reducible
            accepted.append(v)
        if len(accepted) != len(sidx):
            raise InternalConsistencyError(
                f"found {len(accepted)} irreducible partial characters, "
                f"expected {len(sidx)} (the sigma-class count)"
            )
        # every restriction must decompose nonnegative-integrally in the basis
        columns = [_flatten(u, e) for u in accepted]
        for v in ordered:
            if nonneg_integer_solution(columns, _flatten(v, e)) is None:
                raise InternalConsistencyError(
                    "a restriction does not decompose over the irreducible set"
                )
        G._memo[key] = tuple(
            PartialCharacter(G, sigma, v, restrictions[v], sidx) for v in accepted
        )
    return G._memo[key]


def partial_restriction_values(phi: PartialCharacter, H: PermGroup):
    """Values of phi on the sigma-classes of a subgroup H."""
    return tuple(
        phi.value_at(H.conjugacy_classes()[i].representative)
        for i in H.sigma_class_indices(phi.sigma)
    )


def decompose_on_subgroup(phi: PartialCharacter, H: PermGroup):
    """phi restricted to H as a multiset over Iso(H); multiplicities certified."""
    basis = sigma_partial_characters(H, phi.sigma)
    # exp(H) divides exp(G), so the parent exponent is a common conductor
    e = phi.group.exponent()
    target = _flatten(partial_restriction_values(phi, H), e)
    sol = nonneg_integer_solution([_flatten(mu.values, e) for mu in basis], target)
    if sol is None:
        raise InternalConsistencyError("restriction is not a nonnegative combination")
    return [(mu, m) for mu, m in zip(basis, sol) if m]


def lies_over(phi: PartialCharacter, theta: PartialCharacter) -> bool:
    """True iff theta appears in the restriction of phi to theta's group."""
    return any(mu == theta for mu, _ in decompose_on_subgroup(phi, theta.group))


def induced_partial_values(alpha: PartialCharacter, G: PermGroup):
    """Values of the induced partial character alpha^G on G's sigma-classes."""
    H = alpha.group
    sigma = alpha.sigma
    h_classes = H.conjugacy_classes()
    by_target: dict[int, Cyclotomic] = {}
    for pos, i in enumerate(H.sigma_class_indices(sigma)):
        c = h_classes[i]
        j = G.class_index_of(c.representative)
        acc = by_target.get(j, Cyclotomic.zero())
        by_target[j] = acc + alpha.values[pos] * c.size
    g_classes = G.conjugacy_classes()
    out = []
    for j in G.sigma_class_indices(sigma):
        total = by_target.get(j, Cyclotomic.zero())
        centralizer_order = G.order // g_classes[j].size
        out.append(total * centralizer_order / H.order)
    return tuple(out)


def partial_character_stabilizer(G: PermGroup, N: PermGroup, theta: PartialCharacter):
    """G_theta for theta in Iso(N), N normal in G."""
    members = sigma_partial_characters(N, theta.sigma)
    lookup = {mu.values: i for i, mu in enumerate(members)}
    n_classes = N.conjugacy_classes()
    sidx = N.sigma_class_indices(theta.sigma)

    def act(idx, g):
        gi = g.inverse()
        vals = members[idx].values
        moved = tuple(
            vals[sidx.index(N.class_index_of(g * n_classes[i].representative * gi))]
            for i in sidx
        )
        return lookup[moved]

    start = lookup[theta.values]
    trans, stab = G._stabilizer_of_action(start, act)
    if len(trans) == 1:
        return G
    T = G.subgroup(stab)
    assert len(trans) * T.order == G.order
    return T


def clifford_correspondent(
    phi: PartialCharacter, N: PermGroup, theta: PartialCharacter
):
    """The unique mu in Iso(G_theta | theta) inducing phi; returns (mu, G_theta)."""
    G = phi.group
    if not G.is_normal(N):
        raise ValueError("N is not normal")
    if not lies_over(phi, theta):
        raise ValueError("theta does not lie under phi")
    T = partial_character_stabilizer(G, N, theta)
    hits = [
        mu
        for mu in sigma_partial_characters(T, phi.sigma)
        if induced_partial_values(mu, G) == phi.values and lies_over(mu, theta)
    ]
    if len(hits) != 1:
        raise InternalConsistencyError(
            f"Clifford correspondence produced {len(hits)} candidates instead of 1"
        )
    return hits[0], T


def vertices(phi: PartialCharacter) -> SubgroupClass:
    """The conjugacy class of vertices of phi, found by exhaustive (U, alpha) search."""
    if phi._vertex is not None:
        return phi._vertex
    G, sigma = phi.group, phi.sigma
    coprime_in_g = sigma.complement_within(G.order)
    target_coorder = coprime_in_g.part(G.order) // coprime_in_g.part(phi.degree)
    hits = []
    for cls in sorted(
        subgroup_classes(G), key=lambda c: (-sigma.copart(c.order), -c.order)
    ):
        U = cls.representative
        index = G.order // U.order
        if phi.degree % index:
            continue
        alpha_degree = phi.degree // index
        if not sigma.is_sigma_number(alpha_degree):
            continue
        if sigma.copart(U.order) != target_coorder:
            continue
        for alpha in sigma_partial_characters(U, sigma):
            if alpha.degree != alpha_degree:
                continue
            if induced_partial_values(alpha, G) == phi.values:
                hits.append(U)
                break
    if not hits:
        raise InternalConsistencyError("no inducing pair found for a vertex")
    vertex_classes = []
    for U in hits:
        Q = U.find_hall_sigma_subgroup(sigma.complement_within(U.order))
        if Q is None:
            raise InternalConsistencyError("inducing subgroup has no Hall complement")
        vertex_classes.append(subgroup_class_of(G, Q))
    keys = {cls.canonical_key for cls in vertex_classes}
    if len(keys) != 1:
        raise InternalConsistencyError("non-conjugate vertices found")
    result = vertex_classes[0]
    # postcondition: phi(1)_{sigma'} = |G:Q|_{sigma'}
    if coprime_in_g.part(phi.degree) != coprime_in_g.part(G.order // result.order):
        raise InternalConsistencyError("vertex degree law fails")
    object.__setattr__(phi, "_vertex", result)
    return result


def ipi_with_vertex(
    G: PermGroup,
    sigma: PrimeSet,
    Q: PermGroup,
    theta: PartialCharacter | None = None,
):
    """Members of Iso(G) with vertex class containing Q, optionally over theta."""
    if not sigma.complement_within(G.order).is_sigma_number(Q.order):
        raise ValueError("Q is not a sigma'-subgroup")
    q_class = subgroup_class_of(G, Q)
    out = []
    for phi in sigma_partial_characters(G, sigma):
        if vertices(phi).canonical_key != q_class.canonical_key:
            continue
        if theta is not None and not lies_over(phi, theta):
            continue
        out.append(phi)
    return tuple(out)


# --- Glauberman correspondence ------------------------------------------------


@dataclass(frozen=True)
class GlaubermanAction:
    """A coprime action: `acting` normalizes `acted` inside a common group."""

    ambient: PermGroup
    acted: PermGroup
    acting: PermGroup

    def __post_init__(self):
        if math.gcd(self.acted.order, self.acting.order) != 1:
            raise ValueError("action is not coprime")
        if not self.acting.is_solvable():
            raise ValueError("acting group must be solvable")
        for s in self.acting.generators:
            for g in self.acted.generators:
                if not self.acted.contains(g.conjugate(s)):
                    raise ValueError("acting group does not normalize the acted group")

    @property
    def fixed(self) -> PermGroup:
        key = ("glauberman_fixed", self.acting.element_set())
        if key not in self.acted._memo:
            self.acted._memo[key] = self.acted.centralizer_of_subgroup(self.acting)
        return self.acted._memo[key]


def is_invariant_character(chi: Character, acting: PermGroup) -> bool:
    G = chi.group
    for s in acting.generators:
        si = s.inverse()
        for c in G.conjugacy_classes():
            if chi.values[G.class_index_of(s * c.representative * si)] != chi.values[
                G.class_index_of(c.representative)
            ]:
                return False
    return True


def _largest_proper_normal(S: PermGroup) -> PermGroup:
    best = None
    for N in S.normal_subgroups():
        if N.order < S.order:
            if best is None or (N.order, sorted(N.element_set())) > (
                best.order,
                sorted(best.element_set()),
            ):
                best = N
    return best


def glauberman_correspondent(
    action: GlaubermanAction, chi: Character, _series_choice=None
) -> Character:
    """The correspondent of an invariant character in Irr(C_G(S)).

    Descends a composition series of the acting group; at each prime-order
    step the correspondent is the unique constituent of the restriction to
    the fixed-point subgroup whose multiplicity is prime to the step.
    """
    S = action.acting
    if not is_invariant_character(chi, S):
        raise ValueError("character is not invariant under the action")
    if S.order == 1:
        return restrict_character(chi, action.fixed)
    choose = _series_choice or _largest_proper_normal
    T = choose(S)
    if T.order > 1:
        inner = GlaubermanAction(action.ambient, action.acted, T)
        chi = glauberman_correspondent(inner, chi, _series_choice)
        if not is_invariant_character(chi, S):
            raise InternalConsistencyError("descent lost invariance")
    p = S.order // T.order
    step = factorize(p)
    if len(step) != 1 or step[0][1] != 1:
        raise InternalConsistencyError("composition step is not of prime order")
    C = action.fixed
    res = restrict_character(chi, C)
    hits = [
        psi
        for psi in character_table(C).irreducibles
        if inner_product(res, psi) % p != 0
    ]
    if len(hits) != 1:
        raise InternalConsistencyError(
            f"{len(hits)} constituents with multiplicity prime to {p}"
        )
    return hits[0]


def glauberman_map(action: GlaubermanAction):
    """The full correspondence Irr_S(G) -> Irr(C), verified bijective."""
    tab = character_table(action.acted)
    invariant = [chi for chi in tab.irreducibles if is_invariant_character(chi, action.acting)]
    images = [glauberman_correspondent(action, chi) for chi in invariant]
    c_tab = character_table(action.fixed)
    if len({tuple(img.values) for img in images}) != len(images):
        raise InternalConsistencyError("Glauberman map is not injective")
    if len(images) != len(c_tab.irreducibles):
        raise InternalConsistencyError("Glauberman map is not surjective")
    return list(zip(invariant, images))


# --- weights ------------------------------------------------------------------


@dataclass(frozen=True)
class Weight:
    """A pair (Q, gamma): Q a sigma-subgroup class, gamma of full sigma-defect zero."""

    subgroup_class: SubgroupClass
    character: Character
    quotient: PermGroup
    projection: object

    @property
    def q_order(self) -> int:
        return self.subgroup_class.order

    def __repr__(self) -> str:
        return f"Weight(|Q|={self.q_order}, deg={self.character.values[0]})"


def weight_quotient(G: PermGroup, cls: SubgroupClass):
    """N_G(Q)/Q with its projection, memoized per subgroup class."""
    key = ("weight_quotient", cls.canonical_key)
    if key not in G._memo:
        Q = cls.representative
        N = G.normalizer(Q)
        G._memo[key] = N.quotient(Q)
    return G._memo[key]


def enumerate_weights(
    G: PermGroup, sigma: PrimeSet, nilpotent_only: bool = True
) -> tuple[Weight, ...]:
    """All weight classes (Q, gamma) for nilpotent (default) sigma-subgroups Q."""
    out = []
    for cls in subgroup_classes(G):
        if not sigma.is_sigma_number(cls.order):
            continue
        if nilpotent_only and not cls.is_nilpotent():
            continue
        quo, proj = weight_quotient(G, cls)
        tab = character_table(quo)
        quo_sigma_part = sigma_part(quo.order, sigma)
        for gamma in tab.irreducibles:
            if sigma_part(gamma.degree, sigma) == quo_sigma_part:
                out.append(Weight(cls, gamma, quo, proj))
    return tuple(out)


def weights_with_first_component(G: PermGroup, sigma: PrimeSet, R: PermGroup):
    """Weights (R, gamma) for one fixed subgroup R: the defect-zero count of N(R)/R."""
    N = G.normalizer(R)
    quo, proj = N.quotient(R)
    tab = character_table(quo)
    quo_sigma_part = sigma_part(quo.order, sigma)
    cls = subgroup_class_of(G, R)
    return tuple(
        Weight(cls, gamma, quo, proj)
        for gamma in tab.irreducibles
        if sigma_part(gamma.degree, sigma) == quo_sigma_part
    )
