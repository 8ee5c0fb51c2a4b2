"""Log-canonical thresholds of central hyperplane arrangements.

The lct at the origin of a reduced central arrangement is the
minimum of rank/count over the intersection lattice.  Two routes are
provided: a generic one that enumerates the lattice with exact
matrix ranks, and a braid-specific fast path that works on the
partition lattice of {1..g} without ever building a matrix.
"""

import os
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import comb

from .errors import InputError, SizeError
from .linalg import in_rowspace, reduce_row, rref
from .rationals import rat, rat_str

DEFAULT_MAX_CANDIDATES = 2 ** 20
MAX_FLATS_ENV = "KSTAB_MAX_FLATS"


@dataclass(frozen=True)
class LinearForm:
    """A nonzero linear form, normalized so its first nonzero entry is 1."""

    coefficients: tuple

    def __init__(self, coefficients):
        coeffs = tuple(rat(c) for c in coefficients)
        lead = next((c for c in coeffs if c != 0), None)
        if lead is None:
            raise InputError("the zero form does not define a hyperplane")
        object.__setattr__(
            self, "coefficients", tuple(c / lead for c in coeffs)
        )

    @property
    def dim(self):
        return len(self.coefficients)


@dataclass(frozen=True)
class CentralArrangement:
    """A reduced set of hyperplanes through the origin."""

    ambient_dim: int
    forms: tuple

    def __init__(self, ambient_dim, forms):
        if ambient_dim < 1:
            raise InputError("ambient dimension must be >= 1")
        norm = tuple(
            f if isinstance(f, LinearForm) else LinearForm(f) for f in forms
        )
        if not norm:
            raise InputError("arrangement needs at least one hyperplane")
        for f in norm:
            if f.dim != ambient_dim:
                raise InputError("form length does not match ambient dimension")
        if len(set(norm)) != len(norm):
            raise InputError("duplicate hyperplanes: arrangement must be reduced")
        object.__setattr__(self, "ambient_dim", ambient_dim)
        object.__setattr__(self, "forms", norm)


@dataclass(frozen=True)
class Flat:
    """An intersection subspace with its lattice statistics.

    member_indices is the maximal set of hyperplanes containing the
    flat, rank its codimension, count == len(member_indices).
    """

    member_indices: frozenset
    rank: int
    count: int

    def __post_init__(self):
        if self.count != len(self.member_indices):
            raise InputError("count must equal the number of members")
        if self.rank < 1 or self.count < 1:
            raise InputError("flat must have rank >= 1 and count >= 1")

    @property
    def ratio(self):
        return Fraction(self.rank, self.count)

    def sort_key(self):
        return (self.rank, self.count, tuple(sorted(self.member_indices)))

    def to_json(self):
        return {
            "rank": self.rank,
            "count": self.count,
            "hyperplanes": sorted(self.member_indices),
        }


@dataclass(frozen=True)
class LctCertificate:
    value: Fraction
    minimizers: tuple

    def to_json(self):
        return {
            "lct": rat_str(self.value),
            "minimizers": [f.to_json() for f in self.minimizers],
        }


def _max_candidates(override=None):
    if override is not None:
        return override
    env = os.environ.get(MAX_FLATS_ENV)
    if env is not None:
        try:
            return int(env)
        except ValueError as exc:
            raise InputError(f"{MAX_FLATS_ENV} must be an integer") from exc
    return DEFAULT_MAX_CANDIDATES


def intersection_lattice(arr, max_candidates=None):
    """All flats of the arrangement, ambient space excluded.

    Closure by joins: start from the hyperplanes and repeatedly
    intersect with one more hyperplane, deduplicating subspaces by
    their canonical reduced row echelon basis.  Aborts loudly if the
    number of candidate subspaces exceeds the configured cap.
    """
    limit = _max_candidates(max_candidates)
    forms = [f.coefficients for f in arr.forms]
    n = arr.ambient_dim

    seen = {}
    queue = []
    examined = 0

    def visit(rows):
        nonlocal examined
        examined += 1
        if examined > limit:
            raise SizeError(
                f"intersection lattice exceeds {limit} candidate subspaces "
                f"(override with {MAX_FLATS_ENV})"
            )
        basis, pivots = rref(rows)
        if basis in seen:
            return
        members = frozenset(
            i for i, f in enumerate(forms) if in_rowspace(f, basis, pivots)
        )
        seen[basis] = (members, len(basis), pivots)
        queue.append((basis, pivots, members))

    for f in forms:
        visit([f])
    while queue:
        basis, pivots, members = queue.pop()
        if len(basis) == n:
            continue  # already the origin; no further joins
        for i, f in enumerate(forms):
            if i in members:
                continue
            visit(list(basis) + [f])

    flats = [
        Flat(member_indices=members, rank=rk, count=len(members))
        for members, rk, _ in seen.values()
    ]
    flats.sort(key=Flat.sort_key)
    return flats


def lct_central(arr, max_candidates=None):
    """Minimum of rank/count over all flats, with all minimizers."""
    flats = intersection_lattice(arr, max_candidates=max_candidates)
    value = min(f.ratio for f in flats)
    # a reduced arrangement always has a (1,1) flat, so the minimum
    # can never exceed 1; keep the cap as a hard guarantee
    if value > 1:
        value = Fraction(1)
    minimizers = tuple(
        sorted((f for f in flats if f.ratio == value), key=Flat.sort_key)
    )
    return LctCertificate(value=value, minimizers=minimizers)


# ---------------------------------------------------------------------------
# braid arrangements and the partition-lattice fast path


def braid_pairs(g):
    """The hyperplane index order used for braid arrangements."""
    return list(combinations(range(g), 2))


def braid_arrangement(g):
    """The arrangement of u_i - u_j = 0 over all pairs i < j."""
    if g < 2:
        raise InputError("braid arrangement needs g >= 2")
    forms = []
    for i, j in braid_pairs(g):
        coeffs = [Fraction(0)] * g
        coeffs[i] = Fraction(1)
        coeffs[j] = Fraction(-1)
        forms.append(LinearForm(coeffs))
    return CentralArrangement(g, forms)


def set_partitions(g):
    """All set partitions of {0..g-1} as tuples of sorted blocks."""
    def rec(elements):
        if not elements:
            yield ()
            return
        first, rest = elements[0], elements[1:]
        for sub in rec(rest):
            yield ((first,),) + sub
            for i, block in enumerate(sub):
                yield sub[:i] + ((first,) + block,) + sub[i + 1:]

    yield from rec(tuple(range(g)))


def partition_flat(g, blocks):
    """The braid flat of a set partition (ignoring singleton-only input)."""
    pair_index = {p: idx for idx, p in enumerate(braid_pairs(g))}
    members = frozenset(
        pair_index[(a, b)]
        for block in blocks
        for a, b in combinations(sorted(block), 2)
    )
    nblocks = len(blocks)
    count = sum(comb(len(b), 2) for b in blocks)
    return Flat(member_indices=members, rank=g - nblocks, count=count)


def braid_flats(g):
    """All braid flats via the partition lattice (no matrices)."""
    if g < 2:
        raise InputError("braid lattice needs g >= 2")
    flats = []
    for blocks in set_partitions(g):
        if all(len(b) == 1 for b in blocks):
            continue  # the ambient space
        flats.append(partition_flat(g, blocks))
    flats.sort(key=Flat.sort_key)
    return flats


def _integer_partitions(g, largest=None):
    if largest is None:
        largest = g
    if g == 0:
        yield ()
        return
    for first in range(min(g, largest), 0, -1):
        for rest in _integer_partitions(g - first, first):
            yield (first,) + rest


def _set_partitions_with_sizes(elements, sizes):
    if not sizes:
        yield ()
        return
    first = elements[0]
    size = sizes[0]
    rest_sizes = sizes[1:]
    for others in combinations(elements[1:], size - 1):
        block = (first,) + others
        remaining = tuple(e for e in elements if e not in block)
        for sub in _set_partitions_with_sizes(remaining, rest_sizes):
            yield (block,) + sub


def lct_braid(g):
    """lct of the braid arrangement on g variables, via partitions.

    Block sizes determine (rank, count), so the minimum is taken
    over integer partitions of g and only the minimizing shapes are
    expanded into actual set partitions.
    """
    if g < 2:
        raise InputError("lct_braid requires g >= 2")
    best = None
    best_shapes = []
    for shape in _integer_partitions(g):
        if all(b == 1 for b in shape):
            continue
        r = g - len(shape)
        s = sum(comb(b, 2) for b in shape)
        ratio = Fraction(r, s)
        if best is None or ratio < best:
            best, best_shapes = ratio, [shape]
        elif ratio == best:
            best_shapes.append(shape)
    minimizers = []
    elements = tuple(range(g))
    for shape in best_shapes:
        # blocks of equal size commute; dedupe whole partitions
        found = set()
        for blocks in _set_partitions_with_sizes(elements, shape):
            key = tuple(sorted(tuple(sorted(b)) for b in blocks))
            if key in found:
                continue
            found.add(key)
            minimizers.append(partition_flat(g, key))
    minimizers = tuple(sorted(set(minimizers), key=Flat.sort_key))
    return LctCertificate(value=best, minimizers=minimizers)


def diagonal_discrepancy(g, c):
    """Discrepancy of the small-diagonal blowup: g - 2 - c*g*(g-1)/2."""
    if g < 2:
        raise InputError("needs g >= 2")
    c = rat(c)
    if c < 0:
        raise InputError("coefficient must be >= 0")
    return Fraction(g - 2) - c * Fraction(g * (g - 1), 2)


# ---------------------------------------------------------------------------
# JSON wire format


def arrangement_from_json(data):
    if not isinstance(data, dict):
        raise InputError("arrangement JSON must be an object")
    if "n" not in data:
        raise InputError("arrangement JSON missing field 'n'")
    if "forms" not in data:
        raise InputError("arrangement JSON missing field 'forms'")
    n = data["n"]
    if not isinstance(n, int):
        raise InputError("field 'n' must be an integer")
    forms = data["forms"]
    if not isinstance(forms, list):
        raise InputError("field 'forms' must be a list")
    return CentralArrangement(n, [[rat(c) for c in row] for row in forms])
