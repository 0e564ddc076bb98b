"""Reader and writer for the line-oriented chain document format.

A ``.chains`` document holds one or more failure chains separated by a
line containing only ``---``. Each chain is two required header lines
followed by one step line per event::

    alert: A12/02261/23
    case: burn
    component "hair dryer"
    control "power I [A]"
    effect "Joule-Lenz-Heating"
    control "increasing temperature Q [J]"
    action "operation without breaks"
    harm "burn"

Step keywords are ``component``, ``function``, ``control``, ``noise``,
``action``, ``effect`` and ``harm``. Names are double-quoted with
``\\"``, ``\\\\``, ``\\n``, ``\\r`` and ``\\t`` escapes. A line whose
first non-blank character is ``#`` is a comment; blank lines are
ignored. Documents are UTF-8 with LF line endings (a trailing CR per
line is tolerated on input).

Parsing is total: any input yields a (possibly empty) chain set plus a
deterministic list of diagnostics. A chain with a syntax error or a
broken chain invariant is excluded and reported with one error
diagnostic per problem; warnings never exclude anything.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum

from keyfactors.model import (
    ChainSet,
    ChainValidationError,
    FactorCategory,
    FailureChain,
    validate_chain,
)


class Severity(Enum):
    ERROR = "error"
    WARNING = "warning"


@dataclass(frozen=True)
class Diagnostic:
    """A parse or validation finding located in the source document."""

    severity: Severity
    line: int
    column: int
    message: str


_STEP_KEYWORDS = {category.value: category for category in FactorCategory}
_HEADER_RE = re.compile(r"^(alert|case):\s?(.*)$", re.IGNORECASE)
_KEYWORD_RE = re.compile(r"[A-Za-z_]+")
_ESCAPES = {"\\": "\\\\", '"': '\\"', "\n": "\\n", "\r": "\\r", "\t": "\\t"}
_UNESCAPES = {"\\": "\\", '"': '"', "n": "\n", "r": "\r", "t": "\t"}


def parse_document(source: str) -> tuple[ChainSet, list[Diagnostic]]:
    """Parse a chain document; never raises on malformed input."""
    lines = source.split("\n")
    diagnostics: list[Diagnostic] = []
    chains: list[FailureChain] = []

    blocks: list[list[tuple[int, str]]] = [[]]
    block_starts = [1]
    has_separator = False
    for lineno, raw in enumerate(lines, start=1):
        line = raw.rstrip("\r")
        if line.strip() == "---":
            has_separator = True
            blocks.append([])
            block_starts.append(lineno + 1)
            continue
        blocks[-1].append((lineno, line))

    for start, block in zip(block_starts, blocks):
        content = [
            (lineno, text)
            for lineno, text in block
            if text.strip() and not text.lstrip().startswith("#")
        ]
        if not content:
            if has_separator:
                diagnostics.append(
                    Diagnostic(Severity.WARNING, min(start, len(lines)), 1, "empty chain block")
                )
            continue
        chain, block_diagnostics = _parse_block(content)
        diagnostics.extend(block_diagnostics)
        if chain is not None:
            chains.append(chain)

    return ChainSet(tuple(chains)), diagnostics


def _parse_block(content: list[tuple[int, str]]) -> tuple[FailureChain | None, list[Diagnostic]]:
    errors: list[Diagnostic] = []
    headers: dict[str, str] = {}
    steps: list[tuple[FactorCategory, str]] = []
    positions: list[tuple[int, int]] = []

    for lineno, text in content:
        stripped = text.strip()
        column = len(text) - len(text.lstrip()) + 1

        header = _HEADER_RE.match(stripped)
        if header:
            key = header.group(1).casefold()
            if steps:
                errors.append(
                    Diagnostic(
                        Severity.ERROR, lineno, column, f"'{key}:' header after the first step"
                    )
                )
            elif key in headers:
                errors.append(
                    Diagnostic(Severity.ERROR, lineno, column, f"duplicate header '{key}:'")
                )
            else:
                headers[key] = header.group(2).strip()
            continue

        keyword_match = _KEYWORD_RE.match(stripped)
        if not keyword_match:
            errors.append(
                Diagnostic(
                    Severity.ERROR,
                    lineno,
                    column,
                    f"expected a header or step line, got {stripped[:30]!r}",
                )
            )
            continue
        keyword = keyword_match.group(0)
        category = _STEP_KEYWORDS.get(keyword.casefold())
        if category is None:
            if keyword.casefold() in ("alert", "case"):
                message = f"header must be written '{keyword.casefold()}: <text>'"
            else:
                message = f"unknown category '{keyword}'"
            errors.append(Diagnostic(Severity.ERROR, lineno, column, message))
            continue
        name, error = _parse_quoted_name(
            stripped[keyword_match.end() :], lineno, column + keyword_match.end()
        )
        if error is not None:
            errors.append(error)
            continue
        steps.append((category, name))
        positions.append((lineno, column))

    first_line = content[0][0]
    for key in ("alert", "case"):
        if key not in headers:
            errors.append(
                Diagnostic(Severity.ERROR, first_line, 1, f"missing required header '{key}:'")
            )
    if errors:
        return None, errors

    chain = FailureChain(headers["alert"], headers["case"], tuple(steps))
    for violation in validate_chain(chain):
        if 1 <= violation.step <= len(positions):
            lineno, column = positions[violation.step - 1]
        else:
            lineno, column = first_line, 1
        errors.append(
            Diagnostic(Severity.ERROR, lineno, column, f"{violation.rule}: {violation.message}")
        )
    if errors:
        return None, errors
    return chain, []


def _parse_quoted_name(rest: str, lineno: int, column: int) -> tuple[str, None] | tuple[None, Diagnostic]:
    offset = len(rest) - len(rest.lstrip())
    column += offset
    rest = rest.lstrip()
    if not rest.startswith('"'):
        return None, Diagnostic(
            Severity.ERROR, lineno, column, 'expected a quoted name after the category keyword'
        )
    chars: list[str] = []
    i = 1
    while i < len(rest):
        ch = rest[i]
        if ch == "\\":
            if i + 1 >= len(rest):
                break
            replacement = _UNESCAPES.get(rest[i + 1])
            if replacement is None:
                return None, Diagnostic(
                    Severity.ERROR,
                    lineno,
                    column + i,
                    f"invalid escape '\\{rest[i + 1]}' in quoted name",
                )
            chars.append(replacement)
            i += 2
            continue
        if ch == '"':
            trailing = rest[i + 1 :]
            if trailing.strip():
                return None, Diagnostic(
                    Severity.ERROR,
                    lineno,
                    column + i + 1 + (len(trailing) - len(trailing.lstrip())),
                    f"unexpected text after the quoted name: {trailing.strip()[:20]!r}",
                )
            return "".join(chars), None
        chars.append(ch)
        i += 1
    return None, Diagnostic(Severity.ERROR, lineno, column, "unterminated quoted name")


def _escape_name(name: str) -> str:
    return "".join(_ESCAPES.get(ch, ch) for ch in name)


def serialize_document(chains: ChainSet) -> str:
    """Render a chain set in the document format.

    Round-trips exactly: parse_document(serialize_document(cs)) yields
    cs with no diagnostics. Refuses invalid chains with their violation
    list; header texts cannot span lines in a line-oriented format.
    """
    parts: list[str] = []
    for index, chain in enumerate(chains):
        violations = validate_chain(chain)
        if violations:
            raise ChainValidationError([(index, violations)])
        for field_name, value in (("alert", chain.source_alert), ("case", chain.case_label)):
            if "\n" in value or "\r" in value:
                raise ValueError(f"chain {index}: {field_name} text cannot span lines")
        lines = [f"alert: {chain.source_alert}", f"case: {chain.case_label}"]
        lines.extend(f'{category.value} "{_escape_name(name)}"' for category, name in chain.steps)
        parts.append("\n".join(lines))
    if not parts:
        return ""
    return "\n---\n".join(parts) + "\n"
