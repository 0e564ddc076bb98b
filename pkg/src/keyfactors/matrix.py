"""Aggregation of chain sets into the influence-factor relationship matrix.

Cell (r, c) counts how often factor r immediately precedes factor c
across all chains; repeated observations add up, which is the weighting
of relationships by frequency. Row sums are active sums (how often a
factor influenced others), column sums are passive sums (how often it
was influenced).
"""

from __future__ import annotations

from dataclasses import dataclass

from keyfactors.model import (
    CATEGORY_ORDER,
    ChainSet,
    ChainValidationError,
    Factor,
    FactorCategory,
    normalize_name,
    validate_chain,
)

Identity = tuple[FactorCategory, str]


@dataclass(frozen=True)
class RelationshipMatrix:
    """Dense square grid of transition counts over an ordered factor list."""

    factors: tuple[Factor, ...]
    counts: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        n = len(self.factors)
        if len(self.counts) != n or any(len(row) != n for row in self.counts):
            raise ValueError("counts must be square with one row per factor")

    @property
    def size(self) -> int:
        return len(self.factors)

    def total(self) -> int:
        return sum(sum(row) for row in self.counts)

    def cell(self, source_id: int, target_id: int) -> int:
        return self.counts[source_id - 1][target_id - 1]

    def cells_by_identity(self) -> dict[tuple[Identity, Identity], int]:
        """Nonzero cells keyed by factor identities, independent of ordering."""
        out: dict[tuple[Identity, Identity], int] = {}
        for r, row in enumerate(self.counts):
            for c, value in enumerate(row):
                if value:
                    out[(self.factors[r].identity, self.factors[c].identity)] = value
        return out


@dataclass(frozen=True)
class SumsTable:
    """Active and passive sums per factor, in factor id order."""

    factors: tuple[Factor, ...]
    active: tuple[int, ...]
    passive: tuple[int, ...]

    def __post_init__(self) -> None:
        if not (len(self.factors) == len(self.active) == len(self.passive)):
            raise ValueError("factors, active and passive must have equal length")

    def __len__(self) -> int:
        return len(self.factors)

    def total_active(self) -> int:
        return sum(self.active)

    def total_passive(self) -> int:
        return sum(self.passive)


def _ordered_factors(appearance: dict[Identity, int], display: dict[Identity, str]) -> tuple[Factor, ...]:
    # Presentation order: category group first, then first appearance.
    idents = sorted(appearance, key=lambda ident: (CATEGORY_ORDER[ident[0]], appearance[ident]))
    return tuple(
        Factor(category=ident[0], display_name=display[ident], canonical_key=ident[1], id=i)
        for i, ident in enumerate(idents, start=1)
    )


def build_matrix(chains: ChainSet) -> RelationshipMatrix:
    """Fold a chain set into the relationship matrix.

    Rejects the whole input (no partial matrix) if any chain is invalid,
    raising ChainValidationError with every offending chain's violations.
    """
    invalid = []
    for index, chain in enumerate(chains):
        violations = validate_chain(chain)
        if violations:
            invalid.append((index, violations))
    if invalid:
        raise ChainValidationError(invalid)

    appearance: dict[Identity, int] = {}
    display: dict[Identity, str] = {}
    for chain in chains:
        for category, name in chain.steps:
            ident = (category, normalize_name(name))
            if ident not in appearance:
                appearance[ident] = len(appearance)
                display[ident] = name
    factors = _ordered_factors(appearance, display)
    index_of = {factor.identity: factor.id - 1 for factor in factors}

    n = len(factors)
    grid = [[0] * n for _ in range(n)]
    for chain in chains:
        path = [index_of[(category, normalize_name(name))] for category, name in chain.steps]
        for r, c in zip(path, path[1:]):
            grid[r][c] += 1
    return RelationshipMatrix(factors, tuple(tuple(row) for row in grid))


def merge(a: RelationshipMatrix, b: RelationshipMatrix) -> RelationshipMatrix:
    """Combine two matrices: factor union by identity, counts added cell-wise.

    Ordering is reapplied with a's factors appearing before b's novel
    ones inside each category; display names keep the first-seen spelling.
    """
    appearance: dict[Identity, int] = {}
    display: dict[Identity, str] = {}
    for factor in a.factors + b.factors:
        if factor.identity not in appearance:
            appearance[factor.identity] = len(appearance)
            display[factor.identity] = factor.display_name
    factors = _ordered_factors(appearance, display)
    index_of = {factor.identity: factor.id - 1 for factor in factors}

    n = len(factors)
    grid = [[0] * n for _ in range(n)]
    for source in (a, b):
        for r, row in enumerate(source.counts):
            for c, value in enumerate(row):
                if value:
                    grid[index_of[source.factors[r].identity]][
                        index_of[source.factors[c].identity]
                    ] += value
    return RelationshipMatrix(factors, tuple(tuple(row) for row in grid))


def sums(matrix: RelationshipMatrix) -> SumsTable:
    """Row and column sums of the matrix: the active and passive sums."""
    active = tuple(sum(row) for row in matrix.counts)
    passive = tuple(sum(column) for column in zip(*matrix.counts)) if matrix.factors else ()
    return SumsTable(matrix.factors, active, passive)


def brute_force_sums(chains: ChainSet) -> SumsTable:
    """Independent oracle: count transition endpoints directly, no matrix.

    Must equal sums(build_matrix(chains)) for every valid chain set.
    """
    active: dict[Identity, int] = {}
    passive: dict[Identity, int] = {}
    appearance: dict[Identity, int] = {}
    display: dict[Identity, str] = {}
    for chain in chains:
        idents = [(category, normalize_name(name)) for category, name in chain.steps]
        for ident, (_, name) in zip(idents, chain.steps):
            if ident not in appearance:
                appearance[ident] = len(appearance)
                display[ident] = name
                active[ident] = 0
                passive[ident] = 0
        for source, target in zip(idents, idents[1:]):
            active[source] += 1
            passive[target] += 1
    idents_sorted = sorted(appearance, key=lambda ident: (CATEGORY_ORDER[ident[0]], appearance[ident]))
    factors = tuple(
        Factor(category=ident[0], display_name=display[ident], canonical_key=ident[1], id=i)
        for i, ident in enumerate(idents_sorted, start=1)
    )
    return SumsTable(
        factors,
        tuple(active[ident] for ident in idents_sorted),
        tuple(passive[ident] for ident in idents_sorted),
    )
