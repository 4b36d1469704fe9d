"""Divisor theory of the pair K[S_G] ⊆ K[S_X]: facet classification over the
invariant ring, ramification indices, contraction of monomial divisors, the
minimal effective divisor of a character, class groups from the facet
presentation, and the rank-one freeness test.

The engine only ever needs monomial data: every height-one prime of K[S]
lying over a facet prime of K[S_G] is itself a facet prime, and non-monomial
primes contract with height at most one, so all sums over height-one primes
collapse to sums over facets.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from .errors import (
    CharacterNotRealizedError,
    InputError,
    InvariantViolationError,
)
from .lattice import QuotientGroup, Sublattice, matrix_rank
from .semigroup import (
    AffineSemigroup,
    Vec,
    WeightedAction,
    build_semigroup,
    fiber_sample,
    fiber_sample_with_bounds,
    fiber_sample_with_values,
)
from .subgroups import invariant_action

HT0 = "ht0"
HT1 = "ht1"
HT2PLUS = "ht2plus"


@dataclass(frozen=True)
class FacetOverInvariants:
    """How one facet of S_X sits over the invariant semigroup."""

    tier: str
    q_index: int | None = None  # facet of S_G under it, when tier == ht1
    ram_index: int | None = None  # positive generator of u_P(ZS_G), when ht1


@dataclass(frozen=True)
class FacetClassification:
    """Per-facet tiers, fibers over invariant facets, and the slack lattice.

    `ramification_lattice` spans, inside Z^{facets of S_X}, the full-fiber
    columns (e(P,q) at each P over q) together with the unit vectors at
    deep (height >= 2) facets; divisors of relative invariants are
    canonical exactly modulo this lattice.
    """

    facets: tuple[FacetOverInvariants, ...]
    fibers: tuple[tuple[int, ...], ...]  # q index -> facet indices of S_X over q
    ht0: tuple[int, ...]
    ht2plus: tuple[int, ...]
    ramification_lattice: Sublattice

    @property
    def all_invariant_facets_covered(self) -> bool:
        return all(len(f) > 0 for f in self.fibers)


def classify_facets(S_X: AffineSemigroup, S_G: AffineSemigroup) -> FacetClassification:
    """Tier every facet of S_X by the height of its contraction to K[S_G]."""
    hbg = S_G.hilbert_basis
    infos = []
    fibers: list[list[int]] = [[] for _ in S_G.facets]
    ht0 = []
    ht2plus = []
    for P in S_X.facets:
        vals = [P.value(h) for h in hbg]
        zero_idx = frozenset(i for i, v in enumerate(vals) if v == 0)
        zero_rank = matrix_rank([hbg[i] for i in zero_idx])
        if zero_rank == S_G.rank:
            assert all(v == 0 for v in vals)
            infos.append(FacetOverInvariants(HT0))
            ht0.append(P.index)
        elif zero_rank == S_G.rank - 1:
            q = next((q for q in S_G.facets if q.zero_set == zero_idx), None)
            if q is None:
                raise InvariantViolationError("corank-one face does not match a facet")
            e = 0
            for col in S_G.lattice.basis:
                e = gcd(e, P.value(col))
            assert e > 0
            if any(P.value(h) != e * q.value(h) for h in hbg):
                raise InvariantViolationError("facet valuation is not a multiple of the base one")
            infos.append(FacetOverInvariants(HT1, q_index=q.index, ram_index=e))
            fibers[q.index].append(P.index)
        else:
            infos.append(FacetOverInvariants(HT2PLUS))
            ht2plus.append(P.index)
    nf = S_X.facet_count
    cols = []
    for q in S_G.facets:
        col = [0] * nf
        for pi in fibers[q.index]:
            col[pi] = infos[pi].ram_index
        if any(col):
            cols.append(tuple(col))
    for pi in ht2plus:
        col = [0] * nf
        col[pi] = 1
        cols.append(tuple(col))
    ram = Sublattice.from_columns(cols, nf)
    return FacetClassification(
        facets=tuple(infos),
        fibers=tuple(tuple(f) for f in fibers),
        ht0=tuple(ht0),
        ht2plus=tuple(ht2plus),
        ramification_lattice=ram,
    )


def no_blowing_up_check(
    S_X: AffineSemigroup, S_G: AffineSemigroup, cls: FacetClassification
) -> bool:
    """No codimension jump at height one: every invariant facet is covered and
    no facet of S_X contracts to height two or more."""
    return cls.all_invariant_facets_covered and not cls.ht2plus


@dataclass(frozen=True)
class DivisorVector:
    """Weil divisor supported on the facets of one of the two rings."""

    target: str  # "R" or "RG"
    coeffs: Vec

    @property
    def is_effective(self) -> bool:
        return all(c >= 0 for c in self.coeffs)

    def add(self, other: "DivisorVector") -> "DivisorVector":
        if self.target != other.target:
            raise InputError("divisors on different rings")
        return DivisorVector(self.target, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def sub(self, other: "DivisorVector") -> "DivisorVector":
        if self.target != other.target:
            raise InputError("divisors on different rings")
        return DivisorVector(self.target, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def scale(self, m: int) -> "DivisorVector":
        return DivisorVector(self.target, tuple(m * c for c in self.coeffs))


@dataclass(frozen=True)
class ClassGroupData:
    """Divisor class group of K[S] presented as coker(ZS -> Z^facets)."""

    target: str
    facet_count: int
    presentation: Sublattice  # image of the valuation map
    quotient: QuotientGroup

    @staticmethod
    def of(S: AffineSemigroup, target: str) -> "ClassGroupData":
        nf = S.facet_count
        cols = [S.valuation_vector(col) for col in S.lattice.basis]
        image = Sublattice.from_columns(cols, nf)
        if image.rank != S.lattice.rank:
            raise InvariantViolationError("facet valuations do not separate the lattice")
        return ClassGroupData(target, nf, image, QuotientGroup.of(image))

    @property
    def invariant_factors(self) -> tuple[int, ...]:
        return self.quotient.invariant_factors

    def class_of(self, D: DivisorVector) -> Vec:
        if D.target != self.target or len(D.coeffs) != self.facet_count:
            raise InputError("divisor does not live on this ring")
        return self.quotient.canonical(D.coeffs)

    def order_of(self, D: DivisorVector) -> int | None:
        if D.target != self.target or len(D.coeffs) != self.facet_count:
            raise InputError("divisor does not live on this ring")
        return self.quotient.order_of(D.coeffs)

    def is_principal(self, D: DivisorVector) -> bool:
        return self.order_of(D) == 1


def _ceil_div(a: int, b: int) -> int:
    return -((-a) // b)


class DivisorContext:
    """Bundles one action with its semigroup pair, classification, and class
    groups; memoizes the per-character computations."""

    def __init__(self, action: WeightedAction, max_norm: int = 96, max_nodes: int = 10**6):
        self.action = action
        self.max_norm = max_norm
        self.max_nodes = max_nodes
        self.S = build_semigroup(action, max_norm=max_norm, max_nodes=max_nodes)
        self.S_G = build_semigroup(invariant_action(action), max_norm=max_norm, max_nodes=max_nodes)
        self.cls = classify_facets(self.S, self.S_G)
        self.cl_R = ClassGroupData.of(self.S, "R")
        self.cl_RG = ClassGroupData.of(self.S_G, "RG")
        self._char_div: dict[Vec, DivisorVector] = {}
        self._module_div: dict[Vec, DivisorVector] = {}
        self._free: dict[Vec, tuple[bool, Vec | None]] = {}

    # -- fibers ------------------------------------------------------------

    def fiber_element(self, chi: Vec) -> Vec:
        a = fiber_sample(self.action, self.action.reduce_char(chi))
        if a is None:
            raise CharacterNotRealizedError(f"character {chi} has empty fiber")
        return a

    def second_fiber_element(self, a: Vec) -> Vec | None:
        if not self.S_G.hilbert_basis:
            return None
        g = self.S_G.hilbert_basis[0]
        return tuple(x + y for x, y in zip(a, g))

    # -- the minimal effective divisor of a character ----------------------

    def char_divisor(self, chi: Vec) -> DivisorVector:
        """Minimal effective divisor of the character: the common divisor of
        all weight-chi monomials with every full-fiber multiple stripped."""
        chi = self.action.reduce_char(chi)
        hit = self._char_div.get(chi)
        if hit is not None:
            return hit
        a = self.fiber_element(chi)
        D = self._char_divisor_from(a)
        b = self.second_fiber_element(a)
        if b is not None and self._char_divisor_from(b) != D:
            raise InvariantViolationError("character divisor depends on the fiber element")
        if not D.is_effective:
            raise InvariantViolationError("character divisor not effective")
        self._check_minimality(D)
        self._char_div[chi] = D
        return D

    def _char_divisor_from(self, a: Vec) -> DivisorVector:
        vals = self.S.valuation_vector(a)
        coeffs = list(vals)
        for q in self.S_G.facets:
            fiber = self.cls.fibers[q.index]
            if not fiber:
                continue
            drop = min(vals[pi] // self.cls.facets[pi].ram_index for pi in fiber)
            for pi in fiber:
                coeffs[pi] -= drop * self.cls.facets[pi].ram_index
        for pi in self.cls.ht2plus:
            coeffs[pi] = 0
        return DivisorVector("R", tuple(coeffs))

    def _check_minimality(self, D: DivisorVector):
        for q in self.S_G.facets:
            fiber = self.cls.fibers[q.index]
            if fiber and not any(
                D.coeffs[pi] < self.cls.facets[pi].ram_index for pi in fiber
            ):
                raise InvariantViolationError("character divisor is not minimal over a facet")

    # -- contraction to the invariant ring ---------------------------------

    def contraction_divisor(self, vals: Vec) -> DivisorVector:
        """Divisor on K[S_G] of the contraction of a monomial fractional ideal
        with the given facet valuations (rounded up fiberwise)."""
        if len(vals) != self.S.facet_count:
            raise InputError("one valuation per facet required")
        coeffs = []
        for q in self.S_G.facets:
            fiber = self.cls.fibers[q.index]
            if fiber:
                coeffs.append(
                    max(_ceil_div(vals[pi], self.cls.facets[pi].ram_index) for pi in fiber)
                )
            else:
                coeffs.append(0)
        return DivisorVector("RG", tuple(coeffs))

    def module_divisor(self, chi: Vec) -> DivisorVector:
        """Divisor on K[S_G] of the module of weight-chi elements, via the
        contraction of (1/f) K[S] for a weight-chi monomial f."""
        chi = self.action.reduce_char(chi)
        hit = self._module_div.get(chi)
        if hit is not None:
            return hit
        a = self.fiber_element(chi)
        D = self.contraction_divisor(tuple(-v for v in self.S.valuation_vector(a)))
        b = self.second_fiber_element(a)
        if b is not None:
            # moving to f * g for invariant g shifts the contraction by div(g)
            D2 = self.contraction_divisor(tuple(-v for v in self.S.valuation_vector(b)))
            shift = self.S_G.valuation_vector(self.S_G.hilbert_basis[0])
            if tuple(x + s for x, s in zip(D2.coeffs, shift)) != D.coeffs:
                raise InvariantViolationError("module divisor depends on the fiber element")
        self._module_div[chi] = D
        return D

    def module_class(self, chi: Vec) -> Vec:
        """Class of the weight-chi module in Cl(K[S_G])."""
        return self.cl_RG.class_of(self.module_divisor(chi))

    def module_class_order(self, chi: Vec) -> int | None:
        return self.cl_RG.order_of(self.module_divisor(chi))

    def char_class_order(self, chi: Vec) -> int | None:
        return self.cl_R.order_of(self.char_divisor(chi))

    # -- freeness ----------------------------------------------------------

    def free_test(self, chi: Vec) -> tuple[bool, Vec | None]:
        """Rank-one freeness of the weight-chi module over the invariants.

        Two independent routes must agree: an exact-match monomial whose
        valuations equal the character divisor away from deep facets, and a
        witness satisfying the strict fiberwise bound v_P(f) < e(P, q).
        """
        chi = self.action.reduce_char(chi)
        hit = self._free.get(chi)
        if hit is not None:
            return hit
        D = self.char_divisor(chi)
        exact = {}
        for P in self.S.facets:
            if self.cls.facets[P.index].tier in (HT0, HT1):
                exact[P.coord] = P.scale * D.coeffs[P.index]
        w1 = fiber_sample_with_values(self.action, chi, exact)
        # any witness of the strict fiberwise bounds has valuations pinned to
        # the character divisor, so its degree is controlled; the second
        # route searches only up to that bound
        limit = 2 * (sum(exact.values()) + sum(self.fiber_element(chi))) + 16
        w2 = self._strict_bound_witness(chi, limit)
        if (w1 is None) != (w2 is None):
            raise InvariantViolationError("freeness routes disagree")
        result = (w1 is not None, w1)
        self._free[chi] = result
        return result

    def _strict_bound_witness(self, chi: Vec, degree_limit: int) -> Vec | None:
        choices: list[list[tuple[int, int]]] = []
        for q in self.S_G.facets:
            fiber = self.cls.fibers[q.index]
            if not fiber:
                return None
            opts = []
            for pi in fiber:
                P = self.S.facets[pi]
                opts.append((P.coord, P.scale * (self.cls.facets[pi].ram_index - 1)))
            choices.append(opts)
        return self._search_bound_combos(chi, choices, 0, {}, degree_limit)

    def _search_bound_combos(self, chi, choices, k, bounds, degree_limit):
        if k == len(choices):
            return fiber_sample_with_bounds(
                self.action, chi, bounds, degree_limit=degree_limit
            )
        for coord, bound in choices[k]:
            if coord in bounds:
                if bound < bounds[coord]:
                    nxt = dict(bounds)
                    nxt[coord] = bound
                else:
                    nxt = bounds
            else:
                nxt = dict(bounds)
                nxt[coord] = bound
            got = self._search_bound_combos(chi, choices, k + 1, nxt, degree_limit)
            if got is not None:
                return got
        return None

    def not_free_violator(self, chi: Vec) -> tuple[Vec, Vec] | None:
        """Exact witness that the weight-chi module is not free, or None.

        A rank-one-free module is generated by its unique minimal-degree
        monomial, so either two minimal monomials exist, or some fiber
        element drops below the minimal one at a coordinate.  Independent of
        the divisor-theoretic freeness route.
        """
        from .semigroup import enumerate_fiber

        chi = self.action.reduce_char(chi)
        a0 = fiber_sample(self.action, chi)
        if a0 is None:
            raise CharacterNotRealizedError(f"character {chi} has empty fiber")
        slice_ = enumerate_fiber(self.S, self.action, chi, sum(a0))
        dmin = sum(slice_[0])
        mins = [b for b in slice_ if sum(b) == dmin]
        if len(mins) > 1:
            return mins[0], mins[1]
        a = mins[0]
        for i in range(self.action.ambient_dim):
            if a[i] == 0:
                continue
            b = fiber_sample_with_bounds(self.action, chi, {i: a[i] - 1})
            if b is not None:
                return a, b
        return None

    def min_free_multiple(self, chi: Vec) -> int | None:
        """Least multiple of the character whose module is free, or None.

        Equals the order of the module class; when that order is finite it
        must also equal the order of the character divisor class and is
        cross-checked against the freeness test at every multiple up to it.
        A module class of infinite order has no free multiple (only a few
        small multiples are spot-checked then); the divisor class order
        carries no information in that case.
        """
        chi = self.action.reduce_char(chi)
        d_ord = self.char_class_order(chi)
        m_ord = self.module_class_order(chi)
        if m_ord is None:
            for k in range(1, 4):
                if self.free_test(self.action.char_scale(k, chi))[0]:
                    raise InvariantViolationError("free multiple of a non-torsion module class")
            return None
        if d_ord != m_ord:
            raise InvariantViolationError(
                f"divisor-class and module-class orders disagree ({d_ord} vs {m_ord})"
            )
        for k in range(1, d_ord):
            if self.free_test(self.action.char_scale(k, chi))[0]:
                raise InvariantViolationError("free multiple below the class order")
        if not self.free_test(self.action.char_scale(d_ord, chi))[0]:
            raise InvariantViolationError("module not free at the class order")
        return d_ord

    # -- facet principality (for the non-principal reflection subgroup) ----

    # spec-facing operation names
    def minimal_effective_divisor(self, chi: Vec) -> DivisorVector:
        return self.char_divisor(chi)

    def stanley_free_test(self, chi: Vec) -> tuple[bool, Vec | None]:
        return self.free_test(chi)

    def principal_facet_flags(self) -> dict[int, bool]:
        out = {}
        for P in self.S.facets:
            unit = DivisorVector("R", tuple(1 if i == P.index else 0 for i in range(self.S.facet_count)))
            out[P.index] = self.cl_R.is_principal(unit)
        return out

    def obstructing_facet_flags(self) -> dict[int, bool]:
        """Per height-one facet: principality of the contracted invariant prime.

        Only a facet sitting over an invariant prime of nonzero class can
        contribute to the module-class subgroup, so these flags (not the
        facet's own class upstairs) drive the non-principal reflection
        subgroup.
        """
        q_principal = {}
        for q in self.S_G.facets:
            unit = DivisorVector(
                "RG", tuple(1 if i == q.index else 0 for i in range(self.S_G.facet_count))
            )
            q_principal[q.index] = self.cl_RG.is_principal(unit)
        out = {}
        for P in self.S.facets:
            info = self.cls.facets[P.index]
            out[P.index] = q_principal[info.q_index] if info.tier == HT1 else True
        return out

    def ht1_facets(self) -> list:
        return [P for P in self.S.facets if self.cls.facets[P.index].tier == HT1]
