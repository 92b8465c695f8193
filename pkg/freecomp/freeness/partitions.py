"""Non-crossing set partitions."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional

from freecomp.config import get_config
from freecomp.errors import ResourceError

Block = tuple[int, ...]


@dataclass(frozen=True)
class NCPartition:
    """A partition of {0, …, size−1} into blocks sorted by their least element."""

    size: int
    blocks: tuple[Block, ...]

    @classmethod
    def from_blocks(cls, blocks) -> "NCPartition":
        blocks = tuple(sorted(tuple(sorted(b)) for b in blocks))
        elements = sorted(i for b in blocks for i in b)
        if elements != list(range(len(elements))):
            raise ValueError(f"blocks {blocks} do not partition 0..{len(elements) - 1}")
        partition = cls(len(elements), blocks)
        if not partition.is_noncrossing():
            raise ValueError(f"blocks {blocks} cross")
        return partition

    def is_noncrossing(self) -> bool:
        label = {i: n for n, block in enumerate(self.blocks) for i in block}
        for a, c in itertools.combinations(range(self.size), 2):
            if label[a] != label[c]:
                continue
            for b in range(a + 1, c):
                if label[b] == label[a]:
                    continue
                for d in range(c + 1, self.size):
                    if label[d] == label[b]:
                        return False
        return True

    @property
    def block_sizes(self) -> tuple[int, ...]:
        return tuple(len(b) for b in self.blocks)

    def __len__(self):
        return len(self.blocks)


@lru_cache(maxsize=None)
def _partitions(elements: tuple[int, ...]) -> tuple[tuple[Block, ...], ...]:
    if not elements:
        return ((),)
    first, rest = elements[0], elements[1:]
    out = []
    # choose the companions of the first element; the gaps they leave
    # are partitioned independently
    for mask in range(1 << len(rest)):
        block = (first,) + tuple(rest[i] for i in range(len(rest)) if mask >> i & 1)
        gaps = [
            tuple(e for e in rest if lo < e < hi)
            for lo, hi in zip(block, block[1:] + (elements[-1] + 1,))
        ]
        for combo in itertools.product(*(_partitions(g) for g in gaps)):
            out.append((block,) + tuple(itertools.chain.from_iterable(combo)))
    return tuple(out)


def enumerate_nc(n: int, cap: Optional[int] = None) -> list[NCPartition]:
    """All non-crossing partitions of n points, in a fixed order."""
    if cap is None:
        cap = get_config().getint("symbolic", "max_partition_size", 12)
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    if n > cap:
        raise ResourceError(f"NC({n}) exceeds the partition cap {cap}")
    return [
        NCPartition(n, tuple(sorted(blocks)))
        for blocks in _partitions(tuple(range(n)))
    ]
