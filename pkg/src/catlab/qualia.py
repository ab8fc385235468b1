"""Finite matching calculus over qualia.

Qualia are opaque string identifiers; ``M`` is a symmetric, irreflexive-as-stored
relation given by unordered pairs.  Every quale is treated as matching itself.
Matching is not transitive: only its ancestral (M-paths) is ever closed.
"""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass
from itertools import combinations, product
from typing import Iterable

from .errors import DomainError, FormatError, UnknownQuale

__all__ = [
    "LinearSpanArray",
    "Manor",
    "MatchGraph",
    "NetworkKind",
    "brute_force_max_manor",
    "categories",
    "clan_partition",
    "expand_linear_span",
    "is_category",
    "is_clan",
    "is_m_path",
    "manor_of",
    "max_manor_size",
    "realm",
]


class MatchGraph:
    """Qualia plus an unordered match relation.  Input order is kept everywhere."""

    def __init__(self, qualia: Iterable[str], matches: Iterable[Iterable[str]] = ()):
        self.qualia = tuple(str(q) for q in qualia)
        self._index = {q: i for i, q in enumerate(self.qualia)}
        if len(self._index) != len(self.qualia):
            raise FormatError("duplicate quale identifiers")
        self._adj: dict[str, list[str]] = {q: [] for q in self.qualia}
        seen = set()
        pairs = []
        for pair in matches:
            pair = list(pair)
            if len(pair) != 2:
                raise FormatError(f"match {pair!r} is not a pair")
            a, b = str(pair[0]), str(pair[1])
            for q in (a, b):
                if q not in self._index:
                    raise FormatError(f"match [{a!r}, {b!r}] references unknown quale {q!r}")
            if a == b:
                raise FormatError(f"self-pair [{a!r}, {b!r}] is not allowed")
            key = frozenset((a, b))
            if key in seen:
                raise FormatError(f"duplicate pair [{a!r}, {b!r}]")
            seen.add(key)
            pairs.append((a, b))
            self._adj[a].append(b)
            self._adj[b].append(a)
        self.matches = tuple(pairs)

    def __contains__(self, q) -> bool:
        return q in self._index

    def __len__(self) -> int:
        return len(self.qualia)

    def _require(self, q: str) -> str:
        if q not in self._index:
            raise UnknownQuale(q)
        return q

    def matches_pair(self, a: str, b: str) -> bool:
        self._require(a)
        self._require(b)
        return a == b or b in self._adj[a]

    def neighbours(self, q: str) -> list[str]:
        return list(self._adj[self._require(q)])

    def order(self, items: Iterable[str]) -> list[str]:
        return sorted(items, key=self._index.__getitem__)

    def to_dict(self) -> dict:
        return {"qualia": list(self.qualia), "matches": [list(p) for p in self.matches]}

    def dumps(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    @classmethod
    def from_dict(cls, doc) -> "MatchGraph":
        if not isinstance(doc, dict):
            raise FormatError("match graph document must be an object")
        unknown = set(doc) - {"qualia", "matches"}
        if unknown:
            raise FormatError(f"unknown keys: {', '.join(sorted(unknown))}")
        if "qualia" not in doc:
            raise FormatError("missing key 'qualia'")
        qualia, matches = doc["qualia"], doc.get("matches", [])
        if not isinstance(qualia, list) or not all(isinstance(q, str) for q in qualia):
            raise FormatError("'qualia' must be a list of strings")
        if not isinstance(matches, list) or not all(isinstance(m, list) for m in matches):
            raise FormatError("'matches' must be a list of two-element lists")
        return cls(qualia, matches)

    @classmethod
    def loads(cls, text: str) -> "MatchGraph":
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise FormatError(f"invalid JSON: {exc}") from None
        return cls.from_dict(doc)

    def __repr__(self):
        return f"MatchGraph({len(self.qualia)} qualia, {len(self.matches)} matches)"


@dataclass(frozen=True)
class Manor:
    center: str
    members: tuple[str, ...]

    def __contains__(self, q) -> bool:
        return q in self.members


def manor_of(g: MatchGraph, q: str) -> Manor:
    """The quale together with everything that matches it."""
    g._require(q)
    return Manor(q, tuple(g.order([q, *g.neighbours(q)])))


def _component(g: MatchGraph, start: str) -> set[str]:
    seen = {start}
    stack = [start]
    while stack:
        for nb in g.neighbours(stack.pop()):
            if nb not in seen:
                seen.add(nb)
                stack.append(nb)
    return seen


def is_m_path(g: MatchGraph, a: str, b: str) -> bool:
    g._require(a)
    g._require(b)
    return a == b or b in _component(g, a)


def clan_partition(g: MatchGraph) -> list[tuple[str, ...]]:
    """Connected components of the match relation, in first-seen order."""
    out = []
    assigned: set[str] = set()
    for q in g.qualia:
        if q in assigned:
            continue
        comp = _component(g, q)
        assigned |= comp
        out.append(tuple(g.order(comp)))
    return out


def categories(g: MatchGraph) -> list[tuple[str, ...]]:
    """Most comprehensive clans; these coincide with the clan partition."""
    return clan_partition(g)


def is_clan(g: MatchGraph, members: Iterable[str]) -> bool:
    """True if ``members`` cannot be split in two parts with no match across.

    Checked by enumerating bipartitions, so only use on small sets.
    """
    members = list(dict.fromkeys(g._require(q) for q in members))
    if len(members) <= 1:
        return bool(members)
    first, rest = members[0], members[1:]
    for mask in product((False, True), repeat=len(rest)):
        left = [first] + [q for q, side in zip(rest, mask) if not side]
        right = [q for q, side in zip(rest, mask) if side]
        if right and not any(g.matches_pair(a, b) for a in left for b in right):
            return False
    return True


def is_category(g: MatchGraph, members: Iterable[str]) -> bool:
    """A connected set that contains every quale matching any of its parts."""
    members = set(members)
    if not members:
        return False
    for q in members:
        g._require(q)
    if any(nb not in members for q in members for nb in g.neighbours(q)):
        return False
    start = next(iter(members))
    return _component(g, start) == members


def realm(g: MatchGraph, selected: Iterable[Iterable[str]]) -> tuple[str, ...]:
    """Sum of the given categories.  Anything that is not a category is rejected."""
    union: set[str] = set()
    for cat in selected:
        cat = set(cat)
        if not is_category(g, cat):
            raise DomainError(f"{sorted(cat)} is not a category")
        union |= cat
    return tuple(g.order(union))


@dataclass(frozen=True)
class LinearSpanArray:
    """Qualia ``1..count`` where ``i`` matches ``j`` iff ``|i - j| <= span``."""

    count: int
    span: int

    def __post_init__(self):
        if self.count < 1 or self.span < 0:
            raise DomainError(f"need count >= 1 and span >= 0, got {self.count}, {self.span}")


def expand_linear_span(arr: LinearSpanArray) -> MatchGraph:
    labels = [str(i) for i in range(1, arr.count + 1)]
    pairs = [
        (str(i), str(j))
        for i, j in combinations(range(1, arr.count + 1), 2)
        if j - i <= arr.span
    ]
    return MatchGraph(labels, pairs)


class NetworkKind(enum.Enum):
    SQUARE = "square"
    TRIANGULAR = "triangular"
    CUBICAL = "cubical"


def max_manor_size(kind: NetworkKind, n: int) -> int:
    if n < 0:
        raise DomainError(f"n must be >= 0, got {n}")
    kind = NetworkKind(kind)
    if kind is NetworkKind.SQUARE:
        return 1 + 2 * n * (n + 1)
    if kind is NetworkKind.TRIANGULAR:
        return 1 + 3 * n * (n + 1)
    return 1 + 2 * n + 2 * n * (n + 1) * (2 * n + 1) // 3


def brute_force_max_manor(kind: NetworkKind, n: int) -> int:
    """Count cells within matching distance ``n`` of a centre cell by enumeration."""
    if not 0 <= n <= 20:
        raise DomainError(f"brute force is limited to 0 <= n <= 20, got {n}")
    kind = NetworkKind(kind)
    r = range(-n, n + 1)
    if kind is NetworkKind.SQUARE:
        return sum(1 for dx, dy in product(r, r) if abs(dx) + abs(dy) <= n)
    if kind is NetworkKind.TRIANGULAR:
        # axial hex coordinates
        return sum(1 for dq, dr in product(r, r) if (abs(dq) + abs(dr) + abs(dq + dr)) // 2 <= n)
    return sum(1 for d in product(r, r, r) if sum(map(abs, d)) <= n)
