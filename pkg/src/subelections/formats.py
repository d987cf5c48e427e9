"""Text formats: elections, graphs and matchings.

Elections use the strict-order-complete layout of the preference-data
archive::

    # NUMBER ALTERNATIVES: 3
    # ALTERNATIVE NAME 1: a
    3
    2: 1,2,3
    1: 3,2,1

Comment lines start with ``#``; ``ALTERNATIVE NAME`` comments, when present,
carry candidate names. The first other line is the candidate count (it may
be omitted when a ``NUMBER ALTERNATIVES`` comment gives it). Each remaining
line is ``count: c1,...,cm`` with 1-based candidate numbers, or names.
Groups are written for runs of consecutive equal votes, so voter order
survives a round trip.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from itertools import groupby
from typing import Sequence

from .core import CandidateMatching, Election, InvalidArgumentError, Matching, VoterMatching
from .hard.graph import Graph


class FormatError(ValueError):
    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}" + (f", column {column}" if column is not None else "") + ": "
        super().__init__(where + message)


_NAME_RE = re.compile(r"^#\s*ALTERNATIVE NAME\s+(\d+)\s*:\s*(.*?)\s*$", re.IGNORECASE)
_COUNT_RE = re.compile(r"^#\s*NUMBER ALTERNATIVES\s*:\s*(\d+)\s*$", re.IGNORECASE)


@dataclass(frozen=True)
class ElectionFile:
    election: Election
    names: tuple[str, ...] | None = None

    def name(self, c: int) -> str:
        return self.names[c] if self.names else str(c + 1)


def parse_election_file(text: str) -> ElectionFile:
    names: dict[int, str] = {}
    declared = None
    m = None
    votes: list[tuple[int, ...]] = []
    lookup: dict[str, int] | None = None

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            if (match := _NAME_RE.match(line)) is not None:
                names[int(match.group(1)) - 1] = match.group(2)
            elif (match := _COUNT_RE.match(line)) is not None:
                declared = int(match.group(1))
            continue
        if m is None and ":" not in line:
            try:
                m = int(line)
            except ValueError:
                raise FormatError(f"expected candidate count, got {line!r}", lineno, 1) from None
            if m < 1:
                raise FormatError("candidate count must be positive", lineno, 1)
            if declared is not None and declared != m:
                raise FormatError(f"candidate count {m} disagrees with header {declared}", lineno, 1)
            continue
        if m is None:
            if declared is None:
                raise FormatError("vote line before candidate count", lineno, 1)
            m = declared
        if lookup is None:
            lookup = {str(c + 1): c for c in range(m)}
            for c, name in names.items():
                if not 0 <= c < m:
                    raise FormatError(f"name given for nonexistent candidate {c + 1}")
                lookup.setdefault(name, c)
        votes.extend(_parse_group(line, lineno, m, lookup, raw))

    if m is None:
        raise FormatError("empty election file")
    if not votes:
        raise FormatError("election has no votes")
    name_list = None
    if names:
        name_list = tuple(names.get(c, str(c + 1)) for c in range(m))
    return ElectionFile(Election(m, votes), name_list)


def _parse_group(line: str, lineno: int, m: int, lookup: dict[str, int], raw: str):
    head, sep, body = line.partition(":")
    offset = raw.index(line[0]) + 1
    if not sep:
        raise FormatError("vote line must look like 'count: c1,...,cm'", lineno, offset)
    try:
        count = int(head)
    except ValueError:
        raise FormatError(f"bad vote count {head.strip()!r}", lineno, offset) from None
    if count < 1:
        raise FormatError("vote count must be positive", lineno, offset)
    vote = []
    col = offset + len(head) + 1
    for token in body.split(","):
        name = token.strip()
        token_col = col + (len(token) - len(token.lstrip()))
        if name not in lookup:
            raise FormatError(f"unknown candidate {name!r}", lineno, token_col)
        c = lookup[name]
        if c in vote:
            raise FormatError(f"candidate {name!r} repeated", lineno, token_col)
        vote.append(c)
        col += len(token) + 1
    if len(vote) != m:
        raise FormatError(f"vote ranks {len(vote)} candidates, expected {m}", lineno, offset)
    return [tuple(vote)] * count


def parse_election(text: str) -> Election:
    return parse_election_file(text).election


def write_election(e: Election, names: Sequence[str] | None = None) -> str:
    lines = [f"# NUMBER ALTERNATIVES: {e.m}", f"# NUMBER VOTERS: {e.n}"]
    if names is not None:
        if len(names) != e.m:
            raise InvalidArgumentError("need one name per candidate")
        lines.extend(f"# ALTERNATIVE NAME {c + 1}: {name}" for c, name in enumerate(names))
    lines.append(str(e.m))
    for vote, run in groupby(e.votes):
        lines.append(f"{len(list(run))}: " + ",".join(str(c + 1) for c in vote))
    return "\n".join(lines) + "\n"


def _int_rows(text: str, what: str):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            yield lineno, [int(tok) for tok in line.split()]
        except ValueError:
            raise FormatError(f"non-integer token in {what}", lineno) from None


def parse_graph(text: str) -> Graph:
    """One ``u v`` edge per line, 0-based. A line holding a single integer
    fixes the vertex count (otherwise it is the largest index plus one)."""
    n = None
    edges = []
    for lineno, row in _int_rows(text, "graph"):
        if len(row) == 1 and n is None and not edges:
            n = row[0]
        elif len(row) == 2:
            edges.append((row[0], row[1]))
        else:
            raise FormatError("expected 'u v'", lineno)
    if n is None:
        n = 1 + max((max(e) for e in edges), default=-1)
    try:
        return Graph(n, edges)
    except InvalidArgumentError as exc:
        raise FormatError(str(exc)) from None


def write_graph(g: Graph) -> str:
    return "\n".join([str(g.n)] + [f"{x} {y}" for x, y in g.edges]) + "\n"


def parse_matching(text: str, kind: type[Matching] = CandidateMatching) -> Matching:
    pairs = []
    for lineno, row in _int_rows(text, "matching"):
        if len(row) != 2:
            raise FormatError("expected 'left right'", lineno)
        pairs.append((row[0], row[1]))
    try:
        return kind(pairs)
    except InvalidArgumentError as exc:
        raise FormatError(str(exc)) from None


def parse_voter_matching(text: str) -> VoterMatching:
    return parse_matching(text, VoterMatching)


def write_matching(matching: Matching) -> str:
    return "".join(f"{a} {b}\n" for a, b in matching)
