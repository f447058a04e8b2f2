"""Problem instances: requisitions, arc weights, tours.

An instance of size n asks for a minimum-weight closed tour over vertices
1..n where the vertex placed at position i must be chosen from a prescribed
candidate set of one or two vertices (the position's requisition).  Position
n is followed by position 1.  Arc weights are nonnegative integers, stored
sparsely: only ordered pairs (u, v) with u in the candidates of some
position i, v in the candidates of position i+1 and u != v can ever appear
on a tour, and those are the arcs an instance must provide.

File format (line oriented, UTF-8, '#' starts a comment line):

    n
    <requisition of position 1: one or two distinct vertex indices>
    ...
    <requisition of position n>
    m
    <m weight lines: u v w>

Canonical serialisation writes requisition indices in ascending order and
weight lines sorted by (u, v), with no comments; parse followed by
serialise is the identity on canonical text.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Sequence

# Weights live in signed 64-bit arithmetic inside the compiled kernel.  A
# tour sums exactly n arcs and the incremental step forms one transient
# partial sum, so cap n * max_weight with one bit of headroom.
MAX_TOTAL_COST = 2**62 - 1


class TspvrError(Exception):
    """Base class for errors raised by this package."""


class InstanceError(TspvrError):
    """Malformed instance text or a violated instance invariant."""

    def __init__(self, message: str, line: int | None = None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


@dataclass(frozen=True)
class Instance:
    """A validated problem instance.

    requisitions[i - 1] holds the sorted candidate vertices of position i;
    weights maps ordered arcs (u, v) to nonnegative integer costs.  Treat
    instances as immutable once constructed.
    """

    n: int
    requisitions: tuple[tuple[int, ...], ...]
    weights: dict[tuple[int, int], int]

    def __post_init__(self):
        _validate(self.n, self.requisitions, self.weights)

    def requisition(self, i: int) -> tuple[int, ...]:
        """Candidate vertices of position i (1-based)."""
        return self.requisitions[i - 1]

    def relevant_arcs(self) -> list[tuple[int, int]]:
        """All ordered arcs a tour could use, sorted by (u, v)."""
        arcs = set()
        for i in range(1, self.n + 1):
            nxt = 1 if i == self.n else i + 1
            for u in self.requisition(i):
                for v in self.requisition(nxt):
                    if u != v:
                        arcs.add((u, v))
        return sorted(arcs)

    def max_weight(self) -> int:
        return max(self.weights.values(), default=0)


def make_instance(n: int,
                  requisitions: Sequence[Sequence[int]],
                  weights: dict[tuple[int, int], int]) -> Instance:
    """Normalise raw inputs and build a validated Instance."""
    reqs = []
    for req in requisitions:
        req = tuple(sorted(int(u) for u in req))
        if len(set(req)) != len(req):
            raise InstanceError(f"duplicate vertex in requisition {req}")
        reqs.append(req)
    return Instance(n, tuple(reqs), {(int(u), int(v)): int(w)
                                     for (u, v), w in weights.items()})


def _validate(n, requisitions, weights):
    if not isinstance(n, int) or n < 2:
        raise InstanceError(f"instance size must be an integer >= 2, got {n!r}"
                            + (" (a single position admits no tour)" if n == 1 else ""))
    if len(requisitions) != n:
        raise InstanceError(f"expected {n} requisitions, got {len(requisitions)}")
    for i, req in enumerate(requisitions, start=1):
        if not 1 <= len(req) <= 2:
            raise InstanceError(f"requisition of position {i} must hold one or "
                                f"two vertices, got {len(req)}")
        if len(set(req)) != len(req):
            raise InstanceError(f"requisition of position {i} repeats a vertex")
        if tuple(sorted(req)) != tuple(req):
            raise InstanceError(f"requisition of position {i} is not sorted")
        for u in req:
            if not isinstance(u, int) or not 1 <= u <= n:
                raise InstanceError(f"requisition of position {i}: vertex {u!r} "
                                    f"out of range 1..{n}")
    for key, w in weights.items():
        u, v = key
        if not (1 <= u <= n and 1 <= v <= n):
            raise InstanceError(f"weight entry {u} {v}: index out of range 1..{n}")
        if u == v:
            raise InstanceError(f"weight entry {u} {v}: self-loop arcs do not exist")
        if not isinstance(w, int) or w < 0:
            raise InstanceError(f"weight entry {u} {v}: weight must be a "
                                f"nonnegative integer, got {w!r}")
    # Every arc a tour could traverse needs a weight.  A forced self-loop
    # (consecutive equal singletons) is reported as the missing arc (u, u).
    for i in range(1, n + 1):
        nxt = 1 if i == n else i + 1
        for u in requisitions[i - 1]:
            for v in requisitions[nxt - 1]:
                if u == v:
                    if len(requisitions[i - 1]) == 1 and len(requisitions[nxt - 1]) == 1:
                        raise InstanceError(
                            f"positions {i} and {nxt} both require vertex {u}: "
                            f"missing arc ({i}, {u}, {u})")
                    continue
                if (u, v) not in weights:
                    raise InstanceError(
                        f"missing weight for arc ({i}, {u}, {v}): position {i} "
                        f"may take {u} and position {nxt} may take {v}")
    maxw = max(weights.values(), default=0)
    if n * maxw > MAX_TOTAL_COST:
        raise InstanceError(
            f"n * max_weight = {n * maxw} exceeds the representable cost "
            f"range ({MAX_TOTAL_COST})")


# ====== text format ======

def parse_instance(text) -> Instance:
    """Parse instance text (a string or a readable stream)."""
    if hasattr(text, "read"):
        text = text.read()
    tokens = _content_lines(text)

    def take(what):
        try:
            return next(tokens)
        except StopIteration:
            raise InstanceError(f"unexpected end of input: expected {what}") from None

    lineno, raw = take("instance size")
    n = _parse_int(raw, lineno, "instance size")
    if n < 1:
        raise InstanceError(f"instance size must be positive, got {n}", lineno)
    requisitions = []
    for i in range(1, n + 1):
        lineno, raw = take(f"requisition of position {i}")
        fields = raw.split()
        if not 1 <= len(fields) <= 2:
            raise InstanceError(f"requisition of position {i} must hold one or "
                                f"two vertices, got {len(fields)}", lineno)
        req = [_parse_int(f, lineno, "vertex index") for f in fields]
        if len(req) == 2 and req[0] == req[1]:
            raise InstanceError(f"requisition of position {i} repeats vertex "
                                f"{req[0]}", lineno)
        requisitions.append(sorted(req))
    lineno, raw = take("weight count")
    m = _parse_int(raw, lineno, "weight count")
    if m < 0:
        raise InstanceError(f"weight count must be nonnegative, got {m}", lineno)
    weights: dict[tuple[int, int], int] = {}
    for _ in range(m):
        lineno, raw = take("weight entry")
        fields = raw.split()
        if len(fields) != 3:
            raise InstanceError(f"weight entry must be 'u v w', got {raw!r}", lineno)
        u, v, w = (_parse_int(f, lineno, "weight entry field") for f in fields)
        if (u, v) in weights:
            raise InstanceError(f"duplicate weight entry for arc ({u}, {v})", lineno)
        weights[(u, v)] = w
    extra = next(tokens, None)
    if extra is not None:
        raise InstanceError(f"unexpected trailing content: {extra[1]!r}", extra[0])
    return make_instance(n, requisitions, weights)


def _content_lines(text: str) -> Iterator[tuple[int, str]]:
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        yield lineno, stripped


def _parse_int(token: str, lineno: int, what: str) -> int:
    try:
        return int(token)
    except ValueError:
        raise InstanceError(f"expected an integer for {what}, got {token!r}",
                            lineno) from None


def serialize_instance(inst: Instance) -> str:
    """Canonical text form; parse(serialize(x)) == x."""
    lines = [str(inst.n)]
    for req in inst.requisitions:
        lines.append(" ".join(str(u) for u in req))
    lines.append(str(len(inst.weights)))
    for (u, v) in sorted(inst.weights):
        lines.append(f"{u} {v} {inst.weights[(u, v)]}")
    return "\n".join(lines) + "\n"


# ====== tours ======

def validate_tour(inst: Instance, assignment: Sequence[int]) -> bool:
    """True iff assignment is a bijection onto 1..n honouring requisitions."""
    n = inst.n
    if len(assignment) != n:
        return False
    seen = set()
    for i, v in enumerate(assignment, start=1):
        if not isinstance(v, int) or v in seen or v not in inst.requisition(i):
            return False
        seen.add(v)
    return len(seen) == n


def tour_cost(inst: Instance, assignment: Sequence[int]) -> int:
    """Total weight of the closed tour visiting assignment[0..n-1] in order."""
    if not validate_tour(inst, assignment):
        raise ValueError("assignment is not a feasible tour for this instance")
    n = inst.n
    total = 0
    for i in range(n):
        total += inst.weights[(assignment[i], assignment[(i + 1) % n])]
    return total


@dataclass(frozen=True)
class Tour:
    assignment: tuple[int, ...]
    cost: int

    @classmethod
    def build(cls, inst: Instance, assignment: Sequence[int]) -> "Tour":
        return cls(tuple(assignment), tour_cost(inst, assignment))
