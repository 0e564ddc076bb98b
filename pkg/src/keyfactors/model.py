"""Domain model for failure sequence chains.

A failure chain is a linear, time-ordered sequence of typed influencing
factors (components, functions, control and noise factors, actions,
effects) that ends in exactly one harm. Factors are identified by their
category plus a whitespace- and case-normalized name, so different
spellings of the same factor merge across chains.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Iterator, Sequence


class EmptyNameError(ValueError):
    """Raised when a factor name normalizes to the empty string."""


class FactorCategory(Enum):
    """The seven factor categories. HARM is the only terminal one.

    Member order is the presentation order for matrix rows/columns and
    reports. Values double as the step keywords of the chain document
    format and the category tokens of all CSV outputs.
    """

    COMPONENT = "component"
    FUNCTION = "function"
    CONTROL_FACTOR = "control"
    NOISE_FACTOR = "noise"
    ACTION = "action"
    EFFECT = "effect"
    HARM = "harm"

    @classmethod
    def parse(cls, text: str) -> "FactorCategory":
        key = " ".join(text.split()).casefold()
        try:
            return _CATEGORY_ALIASES[key]
        except KeyError:
            raise ValueError(f"unknown category {text!r}") from None


_CATEGORY_ALIASES: dict[str, FactorCategory] = {}
for _cat in FactorCategory:
    _CATEGORY_ALIASES[_cat.value] = _cat
    _CATEGORY_ALIASES[_cat.name.casefold()] = _cat
    _CATEGORY_ALIASES[_cat.name.casefold().replace("_", " ")] = _cat
    _CATEGORY_ALIASES[_cat.name.casefold().replace("_", "")] = _cat

CATEGORY_ORDER: dict[FactorCategory, int] = {c: i for i, c in enumerate(FactorCategory)}


def normalize_name(raw: str) -> str:
    """Trim, collapse internal whitespace runs, and casefold a factor name.

    Idempotent; raises EmptyNameError if nothing remains.
    """
    key = " ".join(raw.split()).casefold()
    if not key:
        raise EmptyNameError(f"factor name {raw!r} is empty after normalization")
    return key


@dataclass(frozen=True)
class Factor:
    """One influencing factor. Identity is (category, canonical_key)."""

    category: FactorCategory
    display_name: str
    canonical_key: str
    id: int

    @property
    def identity(self) -> tuple[FactorCategory, str]:
        return (self.category, self.canonical_key)

    @property
    def label(self) -> str:
        return f"{self.category.value}:{self.display_name}"


Step = tuple[FactorCategory, str]


@dataclass(frozen=True)
class FailureChain:
    """One documented failure scenario.

    Construction is permissive so that malformed chains can still be
    inspected; invariants are enforced by validate_chain at the points
    of use (matrix building, serialization).
    """

    source_alert: str
    case_label: str
    steps: tuple[Step, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "source_alert", self.source_alert.strip())
        object.__setattr__(self, "case_label", self.case_label.strip())
        object.__setattr__(self, "steps", tuple((cat, name) for cat, name in self.steps))

    def __len__(self) -> int:
        return len(self.steps)


@dataclass(frozen=True)
class ChainSet:
    """An ordered collection of failure chains; duplicates are allowed."""

    chains: tuple[FailureChain, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "chains", tuple(self.chains))

    def __iter__(self) -> Iterator[FailureChain]:
        return iter(self.chains)

    def __len__(self) -> int:
        return len(self.chains)

    def transitions(self) -> int:
        """Total number of consecutive step pairs across all chains."""
        return sum(max(len(chain) - 1, 0) for chain in self.chains)


TOO_SHORT = "TooShort"
HARM_NOT_TERMINAL = "HarmNotTerminal"
MISSING_HARM = "MissingHarm"
SELF_TRANSITION = "SelfTransition"
EMPTY_NAME = "EmptyName"


@dataclass(frozen=True)
class Violation:
    """A broken chain invariant; step numbers are 1-based."""

    rule: str
    step: int
    message: str


class ChainValidationError(ValueError):
    """One or more chains violate the chain invariants."""

    def __init__(self, invalid: Sequence[tuple[int, Sequence[Violation]]]):
        self.invalid: tuple[tuple[int, tuple[Violation, ...]], ...] = tuple(
            (index, tuple(violations)) for index, violations in invalid
        )
        summary = "; ".join(
            f"chain {index}: " + ", ".join(v.rule for v in violations)
            for index, violations in self.invalid
        )
        super().__init__(f"invalid chains: {summary}")


def validate_chain(chain: FailureChain) -> list[Violation]:
    """Check every chain invariant, reporting violations in step order.

    An empty list means the chain is accepted by the matrix builder.
    MissingHarm is suppressed when a misplaced harm already explains why
    the final step is not the harm.
    """
    violations: list[Violation] = []
    steps = chain.steps
    n = len(steps)

    if n < 2:
        violations.append(
            Violation(
                TOO_SHORT,
                1,
                f"chain has {n} step(s); at least one step must precede the terminal harm",
            )
        )

    keys: list[str | None] = []
    for _, name in steps:
        try:
            keys.append(normalize_name(name))
        except EmptyNameError:
            keys.append(None)

    misplaced_harm = False
    for i, (category, name) in enumerate(steps, start=1):
        if keys[i - 1] is None:
            violations.append(
                Violation(EMPTY_NAME, i, f"step {i} name {name!r} is empty after normalization")
            )
        if category is FactorCategory.HARM and i < n:
            misplaced_harm = True
            violations.append(
                Violation(
                    HARM_NOT_TERMINAL, i, f"harm {name!r} at step {i} is not the final step"
                )
            )
        if i >= 2 and keys[i - 1] is not None and keys[i - 2] is not None:
            if category is steps[i - 2][0] and keys[i - 1] == keys[i - 2]:
                violations.append(
                    Violation(
                        SELF_TRANSITION, i, f"step {i} repeats the preceding factor {name!r}"
                    )
                )

    if n >= 1 and steps[-1][0] is not FactorCategory.HARM and not misplaced_harm:
        violations.append(
            Violation(
                MISSING_HARM,
                n,
                f"final step must be a harm, got category '{steps[-1][0].value}'",
            )
        )

    violations.sort(key=lambda v: v.step)
    return violations
