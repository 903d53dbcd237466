"""
Working storage of the ranged matching algorithm: composite items and the ten decile buckets.
"""

from collections.abc import Iterator
from dataclasses import dataclass

from packing.core import NUM_RANGES, range_index


@dataclass(frozen=True, slots=True)
class CompositeItem:
    """
    A partially built bin that the algorithm treats as a single item.

    A composite is either a leaf wrapping one original item, or the merge of two earlier
    composites. Members are recovered by walking the merge tree, so a merge costs O(1)
    however many items the two sides already hold.

    Attributes:
        uid (int): Identity used by trace events; leaves reuse the item id
        load (int): Exact sum of the member sizes
        item_id (int | None): The wrapped item for a leaf, None for a merge
        parts (tuple[CompositeItem, CompositeItem] | None): The two merged sides, None for a leaf
    """

    uid: int
    load: int
    item_id: int | None = None
    parts: tuple["CompositeItem", "CompositeItem"] | None = None

    @classmethod
    def leaf(cls, item_id: int, size: int) -> "CompositeItem":
        return cls(uid=item_id, load=size, item_id=item_id)

    @classmethod
    def merge(cls, uid: int, a: "CompositeItem", b: "CompositeItem") -> "CompositeItem":
        return cls(uid=uid, load=a.load + b.load, parts=(a, b))

    @property
    def members(self) -> tuple[int, ...]:
        """Original item ids held by this composite, in increasing order."""
        found: list[int] = []
        stack: list[CompositeItem] = [self]
        while stack:
            node = stack.pop()
            if node.parts is None:
                assert node.item_id is not None
                found.append(node.item_id)
            else:
                stack.extend(node.parts)
        found.sort()
        return tuple(found)


class RangeBuckets:
    """
    Ten stacks of composites, bucket `k` holding the loads whose weight lies in [k/10, (k+1)/10).

    Removal is swap-remove: the last composite of the stack takes the place of the removed one,
    so drawing any position is O(1).
    """

    def __init__(self, capacity: int) -> None:
        self.capacity = capacity
        self._stacks: list[list[CompositeItem]] = [[] for _ in range(NUM_RANGES)]

    def __len__(self) -> int:
        return sum(len(stack) for stack in self._stacks)

    def bucket_of(self, composite: CompositeItem) -> int:
        return range_index(composite.load, self.capacity)

    def insert(self, composite: CompositeItem) -> int:
        """Puts a composite in the bucket of its load and returns that bucket."""
        bucket = self.bucket_of(composite)
        self._stacks[bucket].append(composite)
        return bucket

    def size(self, bucket: int) -> int:
        return len(self._stacks[bucket])

    def peek(self, bucket: int, position: int) -> CompositeItem:
        return self._stacks[bucket][position]

    def take(self, bucket: int, position: int) -> CompositeItem:
        stack = self._stacks[bucket]
        last = stack.pop()
        if position == len(stack):
            return last
        taken = stack[position]
        stack[position] = last
        return taken

    def highest_nonempty_below(self, bucket: int) -> int | None:
        for lower in range(bucket - 1, -1, -1):
            if self._stacks[lower]:
                return lower
        return None

    def member_count(self) -> int:
        return sum(len(composite.members) for stack in self._stacks for composite in stack)

    def drain(self) -> Iterator[CompositeItem]:
        """Removes and yields every remaining composite, lowest bucket first."""
        for stack in self._stacks:
            while stack:
                yield stack.pop()
