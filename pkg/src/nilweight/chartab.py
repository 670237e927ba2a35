"""Exact ordinary character tables and character arithmetic.

Tables are computed by the classical finite-field method: common
eigenvectors of the class-sum matrices over F_q (q = 1 mod exp(G),
q > 2*sqrt(|G|)) give the central characters, degrees are recovered from
the orthogonality relations, and values are lifted to exact cyclotomics
from the eigenvalue multiplicities of each power map. The splitting uses
seeded pseudo-random linear combinations of class matrices, so results
are reproducible; the final table is sorted by (degree, values) and all
orthogonality invariants are verified before the table is returned.
"""

from __future__ import annotations

import math
import random
from fractions import Fraction

from .cyclotomic import Cyclotomic, weighted_conjugate_dot
from .groups import PermGroup, ResourceLimitError
from .linalg import (
    charpoly_mod,
    find_splitting_prime,
    mat_vec_mod,
    nullspace_mod,
    poly_roots_mod,
    primitive_root,
    rref_mod,
)
from .perms import Perm
from .sigma import PrimeSet, sigma_part

CHARTAB_ORDER_BOUND = 20_000
_MAX_SPLIT_ROUNDS = 500


class Character:
    """A class function on a group, given by its values on the ordered classes."""

    __slots__ = ("group", "values", "_hash")

    def __init__(self, group: PermGroup, values):
        vals = tuple(v if isinstance(v, Cyclotomic) else Cyclotomic.from_rational(v) for v in values)
        if len(vals) != len(group.conjugacy_classes()):
            raise ValueError("value count differs from class count")
        object.__setattr__(self, "group", group)
        object.__setattr__(self, "values", vals)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, *a):
        raise AttributeError("Character is immutable")

    @property
    def degree(self) -> int:
        return self.values[0].to_int()

    def __call__(self, g: Perm) -> Cyclotomic:
        return self.values[self.group.class_index_of(g)]

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Character)
            and self.group is other.group
            and self.values == other.values
        )

    def __hash__(self) -> int:
        if self._hash is None:
            object.__setattr__(
                self, "_hash", hash((id(self.group),) + tuple(hash(v) for v in self.values))
            )
        return self._hash

    def __add__(self, other: "Character") -> "Character":
        if other.group is not self.group:
            raise ValueError("characters live on different groups")
        return Character(self.group, [a + b for a, b in zip(self.values, other.values)])

    def __rmul__(self, n: int) -> "Character":
        return Character(self.group, [v * n for v in self.values])

    def __repr__(self) -> str:
        return f"Character(deg={self.values[0]}, [{', '.join(map(str, self.values))}])"


class CharacterTable:
    def __init__(self, group: PermGroup, irreducibles):
        self.group = group
        self.irreducibles: tuple[Character, ...] = tuple(irreducibles)
        self.conductor = group.exponent()
        self.verify()

    def degrees(self) -> tuple[int, ...]:
        return tuple(chi.degree for chi in self.irreducibles)

    def verify(self) -> None:
        """Exact orthogonality and degree invariants; raises on any failure."""
        G = self.group
        classes = G.conjugacy_classes()
        r = len(classes)
        if len(self.irreducibles) != r:
            raise AssertionError("number of irreducibles differs from class count")
        if sum(chi.degree ** 2 for chi in self.irreducibles) != G.order:
            raise AssertionError("degree squares do not sum to the group order")
        for chi in self.irreducibles:
            if G.order % chi.degree:
                raise AssertionError("character degree does not divide group order")
        for i, chi in enumerate(self.irreducibles):
            for j, psi in enumerate(self.irreducibles):
                ip = inner_product(chi, psi)
                if ip != (1 if i == j else 0):
                    raise AssertionError("row orthogonality fails")
        # column orthogonality: the conjugate is folded into the dot helper
        for i in range(r):
            for j in range(r):
                total = weighted_conjugate_dot(
                    (1, chi.values[i], chi.values[j]) for chi in self.irreducibles
                )
                want = G.order // classes[i].size if i == j else 0
                if total != Cyclotomic.from_rational(want):
                    raise AssertionError("column orthogonality fails")

    def __repr__(self) -> str:
        return f"CharacterTable(order={self.group.order}, degrees={self.degrees()})"


def character_table(G: PermGroup, seed: int = 0, bound: int | None = None) -> CharacterTable:
    limit = bound if bound is not None else CHARTAB_ORDER_BOUND
    if G.order > limit:
        raise ResourceLimitError(f"group order {G.order} exceeds table bound {limit}")
    if "chartab" not in G._memo:
        G._memo["chartab"] = _dixon_schneider(G, seed)
    return G._memo["chartab"]


# --- the finite-field computation -------------------------------------------


def _class_matrices(G: PermGroup):
    classes = G.conjugacy_classes()
    r = len(classes)
    reps = [c.representative for c in classes]
    mats = []
    for i, ci in enumerate(classes):
        M = [[0] * r for _ in range(r)]
        members = [Perm(im) for im in ci.members]
        for k, gk in enumerate(reps):
            for x in members:
                j = G.class_index_of(x.inverse() * gk)
                M[j][k] += 1
        mats.append(M)
    return mats


def _split_to_common_eigenvectors(mats, q, r, seed):
    rng = random.Random(seed)
    # start from the full space, given by the identity basis (already in RREF)
    spaces = [[[1 if i == j else 0 for j in range(r)] for i in range(r)]]
    rounds = 0
    while any(len(B) > 1 for B in spaces) and rounds < _MAX_SPLIT_ROUNDS:
        rounds += 1
        coeffs = [rng.randrange(q) for _ in range(len(mats))]
        M = [
            [sum(c * mat[j][k] for c, mat in zip(coeffs, mats)) % q for k in range(r)]
            for j in range(r)
        ]
        new_spaces = []
        for B in spaces:
            if len(B) == 1:
                new_spaces.append(B)
                continue
            new_spaces.extend(_split_space(B, M, q))
        spaces = new_spaces
    if any(len(B) > 1 for B in spaces):
        raise RuntimeError("class-matrix splitting did not converge")
    return [B[0] for B in spaces]


def _split_space(B, M, q):
    """Split an invariant subspace (rows of B in RREF) by eigenvalues of M."""
    _, pivots = rref_mod(B, q)
    d = len(B)
    A = []
    for b in B:
        w = mat_vec_mod(M, b, q)
        coords = [w[pc] % q for pc in pivots]
        # verify w really lies in the span (it must: the space is invariant)
        check = [
            sum(coords[s] * B[s][c] for s in range(d)) % q for c in range(len(b))
        ]
        assert check == [x % q for x in w], "subspace not invariant"
        A.append(coords)
    # eigenvalues of the restriction; the operator on coordinates is A^T
    At = [[A[i][j] for i in range(d)] for j in range(d)]
    poly = charpoly_mod(At, q)
    out = []
    found = 0
    for lam in poly_roots_mod(poly, q):
        shifted = [[(At[i][j] - (lam if i == j else 0)) % q for j in range(d)] for i in range(d)]
        vecs = []
        for kv in nullspace_mod(shifted, q):
            vecs.append(
                [sum(kv[s] * B[s][c] for s in range(d)) % q for c in range(len(B[0]))]
            )
        if vecs:
            found += len(vecs)
            out.append(rref_mod(vecs, q)[0])
    assert found == d, "eigenspaces do not fill the subspace"
    return out


def _dixon_schneider(G: PermGroup, seed: int) -> CharacterTable:
    classes = G.conjugacy_classes()
    r = len(classes)
    e = G.exponent()
    q = find_splitting_prime(e, G.order)
    z = pow(primitive_root(q), (q - 1) // e, q)

    mats = _class_matrices(G)
    vectors = _split_to_common_eigenvectors(mats, q, r, seed)

    inv = G.inverse_class_map()
    sizes = [c.size for c in classes]
    # power maps: class of rep_j^s
    powmap = []
    for c in classes:
        m = c.element_order
        row = []
        x = G.identity
        for _ in range(m):
            row.append(G.class_index_of(x))
            x = x * c.representative
        powmap.append(row)

    chars = []
    for u in vectors:
        if u[0] % q == 0:
            raise AssertionError("eigenvector vanishes on the identity class")
        scale = pow(u[0], -1, q)
        u = [(x * scale) % q for x in u]
        # degree from the first orthogonality relation
        s = sum(u[j] * u[inv[j]] * pow(sizes[j], -1, q) for j in range(r)) % q
        d2 = (G.order * pow(s, -1, q)) % q
        degree = next(
            (d for d in range(1, math.isqrt(G.order) + 1) if (d * d) % q == d2), None
        )
        if degree is None:
            raise AssertionError("no valid degree below sqrt(|G|)")
        # character values mod q on every class
        chi_mod = [(degree * u[j] * pow(sizes[j], -1, q)) % q for j in range(r)]
        values = []
        for j, c in enumerate(classes):
            m = c.element_order
            zm = pow(z, e // m, q)
            minv = pow(m, -1, q)
            terms = {}
            total = 0
            for t in range(m):
                mt = 0
                for s_ in range(m):
                    mt += chi_mod[powmap[j][s_]] * pow(zm, -s_ * t % (q - 1), q)
                mt = (mt * minv) % q
                total += mt
                if mt:
                    terms[(e // m) * t] = Fraction(mt)
            if total != degree:
                raise AssertionError("eigenvalue multiplicities do not sum to the degree")
            values.append(Cyclotomic(e, terms))
        chars.append(Character(G, values))

    chars.sort(key=lambda chi: (chi.degree, [v.sort_key(e) for v in chi.values]))
    return CharacterTable(G, chars)


# --- character arithmetic -------------------------------------------------


def inner_product(alpha: Character, beta: Character) -> Fraction:
    """(1/|G|) sum over classes of |C| alpha(g) conj(beta(g)); exact."""
    if alpha.group is not beta.group:
        raise ValueError("class functions live on different groups")
    G = alpha.group
    total = weighted_conjugate_dot(
        (c.size, a, b)
        for c, a, b in zip(G.conjugacy_classes(), alpha.values, beta.values)
    )
    return (total / G.order).to_fraction()


def restrict_character(chi: Character, H: PermGroup) -> Character:
    """Values of chi on the classes of a subgroup H."""
    G = chi.group
    if not H.is_subset(G):
        raise ValueError("H is not a subgroup of the character's group")
    return Character(
        H, [chi.values[G.class_index_of(c.representative)] for c in H.conjugacy_classes()]
    )


def induce_character(theta: Character, G: PermGroup) -> Character:
    """The induced class function theta^G from a subgroup to G."""
    H = theta.group
    if not H.is_subset(G):
        raise ValueError("theta does not live on a subgroup of G")
    h_classes = H.conjugacy_classes()
    fused = [G.class_index_of(c.representative) for c in h_classes]
    values = []
    for j, cj in enumerate(G.conjugacy_classes()):
        total = Cyclotomic.zero()
        for i, ci in enumerate(h_classes):
            if fused[i] == j:
                total = total + theta.values[i] * ci.size
        centralizer_order = G.order // cj.size
        values.append(total * centralizer_order / H.order)
    return Character(G, values)


def conjugate_character(chi: Character, g: Perm, target: PermGroup) -> Character:
    """chi^g on H^g, where chi lives on H; target must equal H^g as a group."""
    H = chi.group
    values = []
    for c in target.conjugacy_classes():
        x = c.representative
        values.append(chi.values[H.class_index_of(g * x * g.inverse())])
    return Character(target, values)


def decompose_into_irreducibles(chi: Character, table: CharacterTable):
    """Multiplicities of chi in Irr; asserts they are nonnegative integers."""
    out = []
    for psi in table.irreducibles:
        m = inner_product(chi, psi)
        if m.denominator != 1 or m < 0:
            raise AssertionError(f"non-integral multiplicity {m}")
        out.append(int(m))
    return out


def irr_over(table: CharacterTable, N: PermGroup, theta: Character):
    """All irreducibles of G lying over theta in Irr(N), N normal in G."""
    G = table.group
    if not G.is_normal(N):
        raise ValueError("N is not normal in G")
    out = []
    for chi in table.irreducibles:
        if inner_product(restrict_character(chi, N), theta) != 0:
            out.append(chi)
    if not out:
        raise AssertionError("no irreducible lies over theta")
    return out


def has_sigma_defect_zero(chi: Character, sigma: PrimeSet) -> bool:
    """True iff the sigma-part of the degree equals the sigma-part of |G|."""
    return sigma_part(chi.degree, sigma) == sigma_part(chi.group.order, sigma)


def character_stabilizer(G: PermGroup, N: PermGroup, theta: Character):
    """The stabilizer G_theta of theta in Irr(N) under conjugation.

    G must normalize N (it need not contain it)."""
    if theta.group is not N:
        raise ValueError("theta must live on N")
    n_classes = N.conjugacy_classes()

    def act(values, g):
        gi = g.inverse()
        # (v.g)(x) = v(g x g^-1), the right action chi -> chi^g
        return tuple(
            values[N.class_index_of(g * c.representative * gi)] for c in n_classes
        )

    trans, stab = G._stabilizer_of_action(tuple(theta.values), act)
    if len(trans) == 1:
        return G
    T = G.subgroup(stab)
    assert len(trans) * T.order == G.order
    return T
