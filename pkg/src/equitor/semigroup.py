"""Affine semigroups cut out of Z_0^n by homogeneous congruences, with the
diagonalizable-group action recorded as one character weight per variable.

Hilbert bases and integer feasibility are computed by a completion solver
(Contejean-Devie) over exact integers; facets of the cone come from the
coordinate hyperplanes, which support every facet because the cone is the
intersection of an orthant with a subspace.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .errors import CappedComputationError, InputError
from .lattice import (
    IntMatrix,
    Sublattice,
    CAPPED,
    EMPTY,
    FOUND,
    coset_interval_point,
    coset_orthant_search,
    matrix_rank,
    rational_shifted_cone_nonempty,
    solve_diophantine,
)

Vec = tuple[int, ...]

DEFAULT_DEGREE_CAP = 24
DEFAULT_MAX_CANDIDATES = 10**6


@dataclass(frozen=True)
class WeightedAction:
    """Diagonalizable group acting diagonally on K^n, with a quotient semigroup.

    The character group has `free_rank` copies of Z followed by Z/m for each
    m in `torsion_moduli`.  Each variable carries one weight.  The
    congruences (coeffs, modulus) carve the semigroup out of Z_0^n; modulus 0
    means the exact equation coeffs . a = 0.
    """

    ambient_dim: int
    free_rank: int
    torsion_moduli: tuple[int, ...]
    weights: tuple[Vec, ...]
    congruences: tuple[tuple[Vec, int], ...] = ()

    def __post_init__(self):
        if self.free_rank < 0 or self.ambient_dim < 0:
            raise InputError("negative dimensions")
        if any(m < 2 for m in self.torsion_moduli):
            raise InputError("torsion moduli must be >= 2")
        if len(self.weights) != self.ambient_dim:
            raise InputError("need one weight per variable")
        k = self.char_length
        object.__setattr__(
            self, "weights", tuple(self.reduce_char(tuple(w)) for w in self.weights)
        )
        for w in self.weights:
            if len(w) != k:
                raise InputError("weight length does not match character group rank")
        for coeffs, m in self.congruences:
            if len(coeffs) != self.ambient_dim:
                raise InputError("congruence coefficient length mismatch")
            if m < 0:
                raise InputError("congruence modulus must be >= 0")

    @property
    def char_length(self) -> int:
        return self.free_rank + len(self.torsion_moduli)

    def reduce_char(self, chi: Vec) -> Vec:
        if len(chi) != self.char_length:
            raise InputError("character length mismatch")
        out = list(chi)
        for i, m in enumerate(self.torsion_moduli):
            out[self.free_rank + i] %= m
        return tuple(out)

    def char_add(self, a: Vec, b: Vec) -> Vec:
        return self.reduce_char(tuple(x + y for x, y in zip(a, b)))

    def char_neg(self, a: Vec) -> Vec:
        return self.reduce_char(tuple(-x for x in a))

    def char_scale(self, m: int, a: Vec) -> Vec:
        return self.reduce_char(tuple(m * x for x in a))

    @property
    def zero_char(self) -> Vec:
        return (0,) * self.char_length

    def weight_of(self, a: Vec) -> Vec:
        """Weight of the monomial x^a, reduced in the character group."""
        if len(a) != self.ambient_dim:
            raise InputError("exponent vector length mismatch")
        return self.reduce_char(self.raw_weight(a))

    def raw_weight(self, a: Vec) -> Vec:
        """Integer weight W.a before torsion reduction."""
        return tuple(sum(w[i] * x for w, x in zip(self.weights, a)) for i in range(self.char_length))

    def relation_lattice(self) -> Sublattice:
        """Lattice of character-group relations inside Z^char_length."""
        k = self.char_length
        cols = []
        for i, m in enumerate(self.torsion_moduli):
            col = [0] * k
            col[self.free_rank + i] = m
            cols.append(tuple(col))
        return Sublattice.from_columns(cols, k)

    def weight_rows(self) -> list[tuple[Vec, int]]:
        """The weight map as (coefficients over variables, modulus) rows."""
        rows = []
        for i in range(self.char_length):
            coeffs = tuple(w[i] for w in self.weights)
            m = 0 if i < self.free_rank else self.torsion_moduli[i - self.free_rank]
            rows.append((coeffs, m))
        return rows


@dataclass(frozen=True)
class FacetPrime:
    """Height-one monomial prime of K[S]: a facet of cone(S).

    The primitive facet valuation is the coordinate functional `coord`
    divided by `scale` (the gcd of that coordinate over the lattice ZS).
    """

    index: int
    coord: int
    scale: int
    zero_set: frozenset[int]
    face_generators: tuple[Vec, ...]

    def value(self, a: Vec) -> int:
        v = a[self.coord]
        if v % self.scale != 0:
            raise InputError("vector is not in the semigroup lattice")
        return v // self.scale


@dataclass(frozen=True)
class AffineSemigroup:
    """Saturated affine semigroup S = L ∩ Z_0^n with its Hilbert basis and facets."""

    ambient_dim: int
    hilbert_basis: tuple[Vec, ...]
    lattice: Sublattice
    facets: tuple[FacetPrime, ...]
    rank: int

    def contains(self, v: Vec) -> bool:
        return all(x >= 0 for x in v) and self.lattice.contains(v)

    def degree(self, v: Vec) -> int:
        return sum(v)

    @property
    def facet_count(self) -> int:
        return len(self.facets)

    def valuation_vector(self, a: Vec) -> Vec:
        """All facet valuations of the monomial x^a."""
        return tuple(p.value(a) for p in self.facets)


def _dot(a: Vec, b: Vec) -> int:
    return sum(x * y for x, y in zip(a, b))


def minimal_nonneg_solutions(
    rows: list[Vec],
    n: int,
    max_norm: int = 4 * DEFAULT_DEGREE_CAP,
    max_nodes: int = DEFAULT_MAX_CANDIDATES,
    stop_on_coord: tuple[int, int] | None = None,
) -> list[Vec]:
    """Minimal nonzero solutions of rows . x = 0 with x in Z_0^n.

    Completion solver: breadth-first by 1-norm, branching on directions that
    reduce the residual (Contejean-Devie criterion), pruning nodes dominated
    by an already-found solution.  With `stop_on_coord = (j, v)` returns early
    with the single first solution whose j-th coordinate equals v.
    """
    if n == 0:
        return []
    if not rows:
        units = [tuple(1 if i == j else 0 for i in range(n)) for j in range(n)]
        if stop_on_coord is not None:
            j, v = stop_on_coord
            return [units[j]] if v == 1 else []
        return units
    cols = [tuple(r[j] for r in rows) for j in range(n)]
    zero = (0,) * len(rows)
    frontier: dict[Vec, Vec] = {}
    for j in range(n):
        e = tuple(1 if i == j else 0 for i in range(n))
        frontier[e] = cols[j]
    seen: set[Vec] = set(frontier)
    sols: list[Vec] = []
    nodes = 0
    norm = 1
    while frontier:
        if norm > max_norm:
            raise CappedComputationError("completion solver (degree)", max_norm)
        new_sols = []
        expand = []
        for x, v in frontier.items():
            if v == zero:
                new_sols.append(x)
            else:
                expand.append((x, v))
        for s in new_sols:
            sols.append(s)
            if stop_on_coord is not None:
                j, want = stop_on_coord
                if s[j] == want:
                    return [s]
        nxt: dict[Vec, Vec] = {}
        for x, v in expand:
            for j in range(n):
                if _dot(v, cols[j]) < 0:
                    y = list(x)
                    y[j] += 1
                    yt = tuple(y)
                    if yt in seen:
                        continue
                    seen.add(yt)
                    if any(all(a >= b for a, b in zip(yt, s)) for s in sols):
                        continue
                    nodes += 1
                    if nodes > max_nodes:
                        raise CappedComputationError("completion solver (candidates)", max_nodes)
                    nxt[yt] = tuple(a + b for a, b in zip(v, cols[j]))
        frontier = nxt
        norm += 1
    if stop_on_coord is not None:
        return []
    return sols


def _lift_system(
    congruences: tuple[tuple[Vec, int], ...], n: int, rhs: dict[int, int] | None = None
) -> tuple[list[Vec], int, list[int]]:
    """Turn congruence rows into equations over extra nonneg slack variables.

    Coefficients of modulus-m rows are reduced into [0, m) so that a single
    slack k >= 0 with coefficient -m is lossless.  Returns (rows over n+s
    variables, total variable count, right-hand sides).
    """
    rows = []
    rhs = rhs or {}
    slack_rows = []
    out_rhs = []
    for idx, (coeffs, m) in enumerate(congruences):
        r = rhs.get(idx, 0)
        if m == 0:
            rows.append(tuple(coeffs))
            out_rhs.append(r)
        else:
            rows.append(tuple(c % m for c in coeffs))
            slack_rows.append(len(rows) - 1)
            out_rhs.append(r % m)
    s_at = {ri: k for k, ri in enumerate(slack_rows)}
    full_rows = []
    for i, row in enumerate(rows):
        ext = [0] * len(slack_rows)
        if i in s_at:
            ext[s_at[i]] = -congruences[i][1]
        full_rows.append(tuple(row) + tuple(ext))
    return full_rows, n + len(slack_rows), out_rhs


def solve_system_nonneg(
    congruences: tuple[tuple[Vec, int], ...],
    n: int,
    rhs: dict[int, int] | None = None,
    max_norm: int = 4 * DEFAULT_DEGREE_CAP,
    max_nodes: int = DEFAULT_MAX_CANDIDATES,
) -> Vec | None:
    """One nonneg integer solution of the congruence system with right-hand sides.

    rhs maps congruence index -> target value (mod the row modulus); omitted
    rows are homogeneous.  Returns a solution in the original n variables or
    None when the system is infeasible (decided exactly).
    """
    rows, total, rvals = _lift_system(congruences, n, rhs)
    if all(v == 0 for v in rvals):
        return (0,) * n
    # exact prefilters: integral solvability of the equalities, then rational
    # feasibility of the nonnegativity constraints on the solution coset
    sol = solve_diophantine(IntMatrix.from_rows(rows), tuple(rvals))
    if sol is None:
        return None
    x0, ker = sol
    if not rational_shifted_cone_nonempty(x0, list(ker.basis)):
        return None
    if all(v >= 0 for v in x0):
        return x0[:n]
    if ker.rank == 0:
        return None
    if ker.rank == 1:
        got = coset_interval_point(x0, ker.basis[0])
        return got[:n] if got is not None else None
    # direct coset search: a complete decision whenever the region is a
    # polytope, and a fast witness finder otherwise
    status, got = coset_orthant_search(x0, list(ker.basis))
    if status == FOUND:
        return got[:n]
    if status == EMPTY:
        return None
    if status == CAPPED:
        raise CappedComputationError("coset search (candidates)", max_nodes)
    # unbounded region: the completion search decides exactly
    hom_rows = [row + (-rv,) for row, rv in zip(rows, rvals)]
    got = minimal_nonneg_solutions(
        hom_rows, total + 1, max_norm=max_norm, max_nodes=max_nodes, stop_on_coord=(total, 1)
    )
    if not got:
        return None
    return got[0][:n]


def hilbert_basis(
    congruences: tuple[tuple[Vec, int], ...],
    n: int,
    max_norm: int = 4 * DEFAULT_DEGREE_CAP,
    max_nodes: int = DEFAULT_MAX_CANDIDATES,
) -> tuple[Vec, ...]:
    """Unique minimal generating set of {a in Z_0^n : congruences hold}, graded-lex."""
    rows, total, _ = _lift_system(congruences, n)
    sols = minimal_nonneg_solutions(rows, total, max_norm=max_norm, max_nodes=max_nodes)
    # slack values are determined by the a-part, so projection preserves minimality
    basis = sorted({s[:n] for s in sols if any(s[:n])}, key=lambda v: (sum(v), v))
    return tuple(basis)


_SEMIGROUP_CACHE: dict[tuple, AffineSemigroup] = {}


def build_semigroup(
    action: WeightedAction,
    extra_congruences: tuple[tuple[Vec, int], ...] = (),
    max_norm: int = 4 * DEFAULT_DEGREE_CAP,
    max_nodes: int = DEFAULT_MAX_CANDIDATES,
) -> AffineSemigroup:
    """Build the affine semigroup of the action (optionally further constrained)."""
    key = (action.ambient_dim, action.congruences, extra_congruences)
    hit = _SEMIGROUP_CACHE.get(key)
    if hit is not None:
        return hit
    n = action.ambient_dim
    congs = action.congruences + extra_congruences
    hb = hilbert_basis(congs, n, max_norm=max_norm, max_nodes=max_nodes)
    lattice = Sublattice.from_columns(list(hb), n)
    rank = lattice.rank
    facets = _facets_from_basis(hb, lattice, rank, n)
    S = AffineSemigroup(n, hb, lattice, facets, rank)
    _SEMIGROUP_CACHE[key] = S
    return S


def _facets_from_basis(
    hb: tuple[Vec, ...], lattice: Sublattice, rank: int, n: int
) -> tuple[FacetPrime, ...]:
    # cone(S) = orthant ∩ span(S), so every facet lies in a coordinate hyperplane
    facet_map: dict[frozenset[int], int] = {}
    order: list[tuple[int, frozenset[int]]] = []
    for coord in range(n):
        zs = frozenset(i for i, h in enumerate(hb) if h[coord] == 0)
        if len(zs) == len(hb):
            continue  # coordinate vanishes on all of S: not a supporting facet
        if matrix_rank([hb[i] for i in zs]) != rank - 1:
            continue
        if zs not in facet_map:
            facet_map[zs] = coord
            order.append((coord, zs))
    facets = []
    for idx, (coord, zs) in enumerate(sorted(order)):
        vals = [col[coord] for col in lattice.basis]
        scale = 0
        for v in vals:
            scale = _gcd(scale, v)
        assert scale > 0
        facets.append(
            FacetPrime(
                index=idx,
                coord=coord,
                scale=scale,
                zero_set=zs,
                face_generators=tuple(hb[i] for i in sorted(zs)),
            )
        )
    return tuple(facets)


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return abs(a)


def weight_fiber_congruences(action: WeightedAction) -> tuple[tuple[Vec, int], ...]:
    """The weight map as additional congruence rows (for fibers and quotients)."""
    return tuple(action.weight_rows())


def fiber_rhs(action: WeightedAction, chi: Vec) -> dict[int, int]:
    """Right-hand sides putting the weight rows at the character chi."""
    base = len(action.congruences)
    chi = action.reduce_char(chi)
    return {base + i: chi[i] for i in range(action.char_length)}


@lru_cache(maxsize=65536)
def fiber_sample(
    action: WeightedAction,
    chi: Vec,
    extra: tuple[tuple[Vec, int], ...] = (),
    max_norm: int = 4 * DEFAULT_DEGREE_CAP,
    max_nodes: int = DEFAULT_MAX_CANDIDATES,
) -> Vec | None:
    """Some exponent vector of weight chi in the semigroup, or None (exact).

    `extra` adds congruence rows (with homogeneous right-hand side) on top of
    the action's own; used for face and valuation constraints.
    """
    congs = action.congruences + weight_fiber_congruences(action) + extra
    return solve_system_nonneg(
        congs, action.ambient_dim, fiber_rhs(action, chi), max_norm=max_norm, max_nodes=max_nodes
    )


def fiber_sample_with_values(
    action: WeightedAction,
    chi: Vec,
    coord_values: dict[int, int],
    max_norm: int = 4 * DEFAULT_DEGREE_CAP,
    max_nodes: int = DEFAULT_MAX_CANDIDATES,
) -> Vec | None:
    """Fiber element with prescribed exact values at some coordinates."""
    n = action.ambient_dim
    congs = list(action.congruences) + list(weight_fiber_congruences(action))
    rhs = fiber_rhs(action, chi)
    for coord, val in sorted(coord_values.items()):
        row = tuple(1 if j == coord else 0 for j in range(n))
        rhs[len(congs)] = val
        congs.append((row, 0))
    return solve_system_nonneg(tuple(congs), n, rhs, max_norm=max_norm, max_nodes=max_nodes)


def fiber_sample_with_bounds(
    action: WeightedAction,
    chi: Vec,
    coord_bounds: dict[int, int],
    degree_limit: int | None = None,
    max_norm: int = 4 * DEFAULT_DEGREE_CAP,
    max_nodes: int = DEFAULT_MAX_CANDIDATES,
) -> Vec | None:
    """Fiber element with a[coord] <= bound for each given coordinate.

    Bounds become equations with one extra slack variable each; the slack
    block is appended after the real variables and projected away.  With
    `degree_limit` the search is restricted to total degree <= limit.
    """
    n = action.ambient_dim
    items = sorted(coord_bounds.items())
    if any(bound < 0 for _, bound in items):
        return None
    s = len(items) + (1 if degree_limit is not None else 0)
    congs = []
    for coeffs, m in action.congruences + weight_fiber_congruences(action):
        congs.append((tuple(coeffs) + (0,) * s, m))
    rhs = dict(fiber_rhs(action, chi))
    for k, (coord, bound) in enumerate(items):
        row = [0] * (n + s)
        row[coord] = 1
        row[n + k] = 1
        rhs[len(congs)] = bound
        congs.append((tuple(row), 0))
    if degree_limit is not None:
        row = [1] * n + [0] * s
        row[n + len(items)] = 1
        rhs[len(congs)] = degree_limit
        congs.append((tuple(row), 0))
    sol = solve_system_nonneg(tuple(congs), n + s, rhs, max_norm=max_norm, max_nodes=max_nodes)
    return sol[:n] if sol is not None else None


def fiber_avoids_prime(
    S: AffineSemigroup, action: WeightedAction, chi: Vec, P: FacetPrime
) -> bool:
    """True iff some weight-chi monomial lies off the facet prime P."""
    return fiber_sample_with_values(action, chi, {P.coord: 0}) is not None


@lru_cache(maxsize=4096)
def _weight_slices(action: WeightedAction, degree_cap: int) -> dict[Vec, tuple[Vec, ...]]:
    """Semigroup elements of degree <= cap, grouped by weight, graded-lex."""
    groups: dict[Vec, list[Vec]] = {}
    for a in _nonneg_vectors(action.ambient_dim, degree_cap):
        if _satisfies(action.congruences, a):
            groups.setdefault(action.weight_of(a), []).append(a)
    return {
        w: tuple(sorted(vs, key=lambda v: (sum(v), v))) for w, vs in groups.items()
    }


def enumerate_fiber(
    S: AffineSemigroup, action: WeightedAction, chi: Vec, degree_cap: int
) -> list[Vec]:
    """All weight-chi semigroup elements of total degree <= degree_cap, graded-lex."""
    if degree_cap < 0:
        raise InputError("degree cap must be >= 0")
    return list(_weight_slices(action, degree_cap).get(action.reduce_char(chi), ()))


def _nonneg_vectors(n: int, cap: int):
    if n == 0:
        yield ()
        return
    for head in range(cap + 1):
        for tail in _nonneg_vectors(n - 1, cap - head):
            yield (head,) + tail


def _satisfies(congruences, a: Vec) -> bool:
    for coeffs, m in congruences:
        v = sum(c * x for c, x in zip(coeffs, a))
        if (m == 0 and v != 0) or (m != 0 and v % m != 0):
            return False
    return True


def semigroup_member_sample(S: AffineSemigroup) -> Vec:
    """A strictly interior element: the sum of the Hilbert basis."""
    n = S.ambient_dim
    out = [0] * n
    for h in S.hilbert_basis:
        for i in range(n):
            out[i] += h[i]
    return tuple(out)


def weight_unit_lattice(S: AffineSemigroup, action: WeightedAction) -> Sublattice:
    """Subgroup of the character group of weights realized with both signs.

    A Hilbert-basis weight w is a unit iff -w is realized; the units form a
    subgroup generated by the qualifying basis weights.
    """
    gens = []
    seen = set()
    for h in S.hilbert_basis:
        w = action.weight_of(h)
        if w in seen:
            continue
        seen.add(w)
        if w == action.zero_char:
            continue
        if fiber_sample(action, action.char_neg(w)) is not None:
            gens.append(action.raw_weight(h))
    rel = action.relation_lattice()
    return Sublattice.from_columns(gens + list(rel.basis), action.char_length)


def paired_unit_lattice(
    S: AffineSemigroup,
    action: WeightedAction,
    max_norm: int = 4 * DEFAULT_DEGREE_CAP,
    max_nodes: int = DEFAULT_MAX_CANDIDATES,
) -> Sublattice:
    """Unit-weight subgroup from the paired system {(a,b): wt(a) + wt(b) = 0}.

    Independent route kept as an oracle for weight_unit_lattice.
    """
    n = action.ambient_dim
    congs = []
    for coeffs, m in action.congruences:
        congs.append((tuple(coeffs) + (0,) * n, m))
        congs.append(((0,) * n + tuple(coeffs), m))
    for coeffs, m in action.weight_rows():
        congs.append((tuple(coeffs) + tuple(coeffs), m))
    rows, total, _ = _lift_system(tuple(congs), 2 * n)
    sols = minimal_nonneg_solutions(rows, total, max_norm=max_norm, max_nodes=max_nodes)
    gens = [action.raw_weight(s[:n]) for s in sols]
    rel = action.relation_lattice()
    return Sublattice.from_columns(gens + list(rel.basis), action.char_length)
