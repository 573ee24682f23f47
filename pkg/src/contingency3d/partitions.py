"""Integer partitions, conjugation, dominance order and cover moves."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import accumulate
from typing import Iterable, Iterator, Sequence

from .errors import (
    IndexOutOfRange,
    InvalidPartition,
    NotDominated,
    OrderViolation,
    PartitionParseError,
    UnequalTotals,
)


@dataclass(frozen=True)
class Partition:
    """A non-increasing tuple of positive integers.

    ``total`` is cached at construction. Use :meth:`from_parts` to build one
    from an unsorted iterable that may contain zeros.
    """

    parts: tuple[int, ...] = ()
    total: int = field(init=False, compare=False, repr=False)

    def __post_init__(self) -> None:
        parts = tuple(int(p) for p in self.parts)
        prev = None
        for p in parts:
            if p < 1:
                raise InvalidPartition(f"parts must be positive, got {parts}")
            if prev is not None and p > prev:
                raise InvalidPartition(f"parts must be non-increasing, got {parts}")
            prev = p
        object.__setattr__(self, "parts", parts)
        object.__setattr__(self, "total", sum(parts))

    @classmethod
    def from_parts(cls, values: Iterable[int]) -> "Partition":
        return cls(tuple(sorted((int(v) for v in values if v), reverse=True)))

    @classmethod
    def parse(cls, text: str) -> "Partition":
        """Parse the canonical text form ``4,3,3,1``; an empty string is ()."""
        text = text.strip()
        if not text:
            return cls(())
        values = []
        for tok in text.split(","):
            tok_s = tok.strip()
            if not tok_s.isdigit() or int(tok_s) < 1:
                raise PartitionParseError(tok, text)
            values.append(int(tok_s))
        try:
            return cls(tuple(values))
        except InvalidPartition as exc:
            raise PartitionParseError(text, text) from exc

    def __len__(self) -> int:
        return len(self.parts)

    def __iter__(self) -> Iterator[int]:
        return iter(self.parts)

    def __getitem__(self, idx):
        return self.parts[idx]

    def part(self, j: int) -> int:
        """1-based part access with zero padding."""
        return self.parts[j - 1] if 1 <= j <= len(self.parts) else 0

    def prefix_sums(self, length: int | None = None) -> list[int]:
        out = list(accumulate(self.parts))
        if length is not None and length > len(out):
            out.extend([self.total] * (length - len(out)))
        return out

    def runs(self) -> list[tuple[int, int]]:
        """Run-length view: ``[(value, multiplicity), ...]`` in decreasing value."""
        out: list[tuple[int, int]] = []
        for p in self.parts:
            if out and out[-1][0] == p:
                out[-1] = (p, out[-1][1] + 1)
            else:
                out.append((p, 1))
        return out

    def to_text(self) -> str:
        return ",".join(str(p) for p in self.parts)

    def to_json(self) -> dict:
        return {"parts": list(self.parts)}

    @classmethod
    def from_json(cls, obj: dict) -> "Partition":
        return cls(tuple(obj["parts"]))

    def __str__(self) -> str:
        return "(" + ",".join(str(p) for p in self.parts) + ")"


@dataclass(frozen=True)
class CoverStep:
    """One cover of the dominance order.

    Ascending, part ``j`` gains a unit taken from part ``k`` (``j < k``);
    descending reverses it. Adjacent covers have ``k == j + 1``; the other
    covers move a unit across a run of equal parts.
    """

    j: int
    k: int

    def __post_init__(self) -> None:
        if not 1 <= self.j < self.k:
            raise InvalidPartition(f"cover step needs 1 <= j < k, got {self}")

    @property
    def span(self) -> int:
        return self.k - self.j


def conjugate(p: Partition) -> Partition:
    if not p.parts:
        return Partition(())
    out = []
    i = len(p.parts)
    for k in range(1, p.parts[0] + 1):
        while i > 0 and p.parts[i - 1] < k:
            i -= 1
        out.append(i)
    return Partition(tuple(out))


def _check_totals(a: Partition, b: Partition) -> None:
    if a.total != b.total:
        raise UnequalTotals(f"totals differ: {a.total} vs {b.total}")


def dominates_seq(upper: Sequence[int], lower: Sequence[int]) -> bool:
    """Prefix-sum dominance on raw non-negative sequences with equal sums."""
    su = sl = 0
    for j in range(max(len(upper), len(lower))):
        su += upper[j] if j < len(upper) else 0
        sl += lower[j] if j < len(lower) else 0
        if sl > su:
            return False
    return su == sl


def dominance_leq(a: Partition, b: Partition) -> bool:
    """True iff ``a`` is dominated by ``b``."""
    _check_totals(a, b)
    return dominates_seq(b.parts, a.parts)


def _excess(cur: list[int], lower: list[int]) -> list[int]:
    out, s = [], 0
    for c, t in zip(cur, lower):
        s += c - t
        out.append(s)
    return out


def _next_cover_down(cur: list[int], lower: list[int]) -> tuple[int, int] | None:
    """Find the cover below ``cur`` that stays above ``lower`` with the smallest donor.

    Both lists are 0-based and zero padded to the same length. Returns 0-based
    ``(j, k)``: one unit moves from position j to position k.
    """
    ex = _excess(cur, lower)
    L = len(cur)
    j = 0
    while j < L:
        if cur[j] == 0:
            return None
        # donor must end its run of equal values
        end = j
        while end + 1 < L and cur[end + 1] == cur[j]:
            end += 1
        j = end
        v = cur[j]
        # adjacent cover: next value at least 2 smaller
        if j + 1 < L and v - cur[j + 1] >= 2:
            if ex[j] >= 1:
                return j, j + 1
        elif j + 1 < L and cur[j + 1] == v - 1:
            # jump across the run of (v - 1) to the first part equal to v - 2
            k = j + 1
            while k < L and cur[k] == v - 1:
                k += 1
            if k < L and cur[k] == v - 2 and all(ex[t] >= 1 for t in range(j, k)):
                return j, k
        j += 1
    return None


def covering_chain(lower: Partition, upper: Partition) -> list[CoverStep]:
    """Covers leading from ``lower`` up to ``upper``.

    The list is in ascending order: applying the steps in reverse, each moving
    one unit from part ``j`` to part ``k``, turns ``upper`` into ``lower`` and
    every intermediate sequence is a partition. The total span of the steps
    equals the sum of prefix-sum gaps. The chain is built top-down by always
    taking the admissible cover with the smallest donor index.
    """
    if not dominance_leq(lower, upper):
        raise NotDominated(f"{lower} is not dominated by {upper}")
    L = max(len(lower), len(upper)) + 1
    cur = list(upper.parts) + [0] * (L - len(upper))
    low = list(lower.parts) + [0] * (L - len(lower))
    down: list[CoverStep] = []
    while cur != low:
        mv = _next_cover_down(cur, low)
        if mv is None:  # pragma: no cover - contradicts lattice theory
            raise AssertionError(f"no admissible cover from {cur} toward {low}")
        j, k = mv
        cur[j] -= 1
        cur[k] += 1
        down.append(CoverStep(j + 1, k + 1))
    down.reverse()
    return down


def replay_descending(upper: Partition, steps: Sequence[CoverStep]) -> list[Partition]:
    """Apply ``steps`` in reverse to ``upper``; return every partition visited."""
    cur = list(upper.parts)
    out = [upper]
    for st in reversed(steps):
        need = st.k
        if len(cur) < need:
            cur.extend([0] * (need - len(cur)))
        cur[st.j - 1] -= 1
        cur[st.k - 1] += 1
        while cur and cur[-1] == 0:
            cur.pop()
        out.append(Partition(tuple(cur)))
    return out


def rectangle_majorant(n: int, cap: int) -> Partition:
    """Largest partition of ``n`` in dominance order with parts at most ``cap``."""
    if cap < 1:
        raise InvalidPartition("cap must be positive")
    if n < 0:
        raise InvalidPartition("n must be non-negative")
    q, r = divmod(n, cap)
    return Partition((cap,) * q + ((r,) if r else ()))


def move_mass(p: Partition, from_index: int, to_index: int, amount: int) -> Partition:
    """Move ``amount`` from part ``from_index`` to the earlier part ``to_index``."""
    L = len(p.parts)
    if not (1 <= from_index <= L and 1 <= to_index <= L):
        raise IndexOutOfRange(f"indices {from_index}, {to_index} outside 1..{L}")
    if to_index >= from_index:
        raise OrderViolation("to_index must precede from_index")
    if amount < 1 or amount > p.parts[from_index - 1]:
        raise OrderViolation(f"cannot move {amount} from part {p.parts[from_index - 1]}")
    vals = list(p.parts)
    vals[from_index - 1] -= amount
    vals[to_index - 1] += amount
    vals = [v for v in vals if v]
    if any(vals[i] < vals[i + 1] for i in range(len(vals) - 1)):
        raise OrderViolation(f"result {tuple(vals)} is not non-increasing")
    return Partition(tuple(vals))


def partitions_of(n: int, max_part: int | None = None) -> Iterator[Partition]:
    """All partitions of ``n`` in reverse lexicographic order."""
    if max_part is None:
        max_part = n

    def rec(rem: int, cap: int, acc: list[int]):
        if rem == 0:
            yield Partition(tuple(acc))
            return
        for k in range(min(rem, cap), 0, -1):
            acc.append(k)
            yield from rec(rem - k, k, acc)
            acc.pop()

    yield from rec(n, max_part, [])
