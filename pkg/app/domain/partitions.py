"""
Set partitions of {0, ..., n-1} in a canonical tuple form.

A partition is a tuple of blocks, each block a sorted tuple, with blocks
ordered by their least element.
"""

from collections.abc import Iterable, Iterator, Sequence

Partition = tuple[tuple[int, ...], ...]


def canonical(blocks: Iterable[Iterable[int]]) -> Partition:
    return tuple(sorted((tuple(sorted(b)) for b in blocks if b), key=lambda b: b[0]))


def from_labels(labels: Sequence[int]) -> Partition:
    """Builds the partition whose blocks are the fibres of ``labels``."""
    blocks: dict[int, list[int]] = {}
    for element, label in enumerate(labels):
        blocks.setdefault(label, []).append(element)
    return canonical(blocks.values())


def to_labels(partition: Partition, size: int) -> list[int]:
    """Maps each element to the position of its block."""
    labels = [-1] * size
    for position, block in enumerate(partition):
        for element in block:
            labels[element] = position
    return labels


def is_partition_of(partition: Partition, size: int) -> bool:
    elements = sorted(e for block in partition for e in block)
    return elements == list(range(size))


def discrete(size: int) -> Partition:
    return tuple((i,) for i in range(size))


def universal(size: int) -> Partition:
    return (tuple(range(size)),) if size else ()


def all_partitions(size: int) -> Iterator[Partition]:
    """Enumerates every partition through restricted growth strings."""

    def grow(prefix: list[int], top: int) -> Iterator[Partition]:
        if len(prefix) == size:
            yield from_labels(prefix)
            return
        for label in range(top + 2):
            yield from grow(prefix + [label], max(top, label))

    if size == 0:
        yield ()
        return
    yield from grow([0], 0)


def related(partition: Partition, size: int) -> list[tuple[int, int]]:
    """All pairs (i, j) with i and j in the same block."""
    labels = to_labels(partition, size)
    return [(i, j) for i in range(size) for j in range(size) if labels[i] == labels[j]]
