"""
Exhaustive enumerations over small finite semigroups: congruences of a
given semigroup, and all monoids of small order up to isomorphism.
"""

import itertools
import logging
from collections.abc import Iterator

import numpy as np

from app.domain.entities import FinSemigroup
from app.domain.errors import SizeGuardExceeded
from app.domain.partitions import Partition, canonical, discrete
from app.domain.repositories import IMonoidRepository
from app.domain.terms import Signature

logger = logging.getLogger(__name__)


class _UnionFind:
    def __init__(self, size: int) -> None:
        self.parent = list(range(size))

    def find(self, x: int) -> int:
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a: int, b: int) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        self.parent[max(ra, rb)] = min(ra, rb)
        return True

    def partition(self) -> Partition:
        blocks: dict[int, list[int]] = {}
        for x in range(len(self.parent)):
            blocks.setdefault(self.find(x), []).append(x)
        return canonical(blocks.values())


class EnumerationService:
    """
    Enumerates congruences and small monoids.
    """

    def __init__(
        self,
        monoid_repo: IMonoidRepository,
        max_congruence_order: int = 12,
        max_monoid_order: int = 5,
    ) -> None:
        """
        Initializes the service.

        Args:
            monoid_repo (IMonoidRepository): Cache for enumerated monoids.
            max_congruence_order (int): Largest semigroup whose congruences
                may be enumerated.
            max_monoid_order (int): Largest order for monoid enumeration.

        Returns:
            None
        """

        self.monoid_repo = monoid_repo
        self.max_congruence_order = max_congruence_order
        self.max_monoid_order = max_monoid_order

    # --- congruences -----------------------------------------------------

    def _close(self, semigroup: FinSemigroup, uf: _UnionFind) -> Partition:
        table = semigroup.table.tolist()
        n = semigroup.order
        changed = True
        while changed:
            changed = False
            for x in range(n):
                root = uf.find(x)
                if root == x:
                    continue
                for c in range(n):
                    changed |= uf.union(table[x][c], table[root][c])
                    changed |= uf.union(table[c][x], table[c][root])
        return uf.partition()

    def _join(
        self, semigroup: FinSemigroup, first: Partition, second: Partition
    ) -> Partition:
        uf = _UnionFind(semigroup.order)
        for block in first + second:
            for element in block[1:]:
                uf.union(block[0], element)
        return self._close(semigroup, uf)

    def principal_congruence(
        self, semigroup: FinSemigroup, a: int, b: int
    ) -> Partition:
        """The least congruence identifying a and b."""
        uf = _UnionFind(semigroup.order)
        uf.union(a, b)
        return self._close(semigroup, uf)

    def enumerate_congruences(
        self, semigroup: FinSemigroup, max_order: int | None = None
    ) -> list[Partition]:
        """
        Lists every congruence of a finite semigroup.

        Every congruence is a join of principal congruences, so the joins
        are closed breadth first starting from the principal ones.

        Args:
            semigroup (FinSemigroup): The semigroup.
            max_order (int | None): Overrides the configured size guard.

        Returns:
            list[Partition]: The congruences in canonical form, sorted.

        Raises:
            SizeGuardExceeded: If the semigroup is larger than the guard.
        """

        limit = self.max_congruence_order if max_order is None else max_order
        if semigroup.order > limit:
            raise SizeGuardExceeded(
                f"congruence enumeration is limited to order {limit}, "
                f"got {semigroup.order}"
            )
        n = semigroup.order
        principals = {
            self.principal_congruence(semigroup, a, b)
            for a in range(n)
            for b in range(a + 1, n)
        }
        found = {discrete(n)} | principals
        frontier = list(principals)
        while frontier:
            fresh = []
            for congruence in frontier:
                for principal in principals:
                    joined = self._join(semigroup, congruence, principal)
                    if joined not in found:
                        found.add(joined)
                        fresh.append(joined)
            frontier = fresh
        logger.info(f"Found {len(found)} congruences on {semigroup.label or n}")
        return sorted(found)

    # --- monoids ---------------------------------------------------------

    @staticmethod
    def _consistent(table: list[list[int]], n: int) -> bool:
        for a in range(n):
            row = table[a]
            for b in range(n):
                ab = row[b]
                if ab < 0:
                    continue
                for c in range(n):
                    bc = table[b][c]
                    if bc < 0:
                        continue
                    left, right = table[ab][c], row[bc]
                    if left >= 0 and right >= 0 and left != right:
                        return False
        return True

    def _labelled_monoids(self, n: int) -> Iterator[list[list[int]]]:
        table = [[-1] * n for _ in range(n)]
        for x in range(n):
            table[0][x] = table[x][0] = x
        cells = [(i, j) for i in range(1, n) for j in range(1, n)]

        def extend(position: int) -> Iterator[list[list[int]]]:
            if position == len(cells):
                yield [row[:] for row in table]
                return
            i, j = cells[position]
            for value in range(n):
                table[i][j] = value
                if self._consistent(table, n):
                    yield from extend(position + 1)
            table[i][j] = -1

        yield from extend(0)

    @staticmethod
    def canonical_table(table: np.ndarray) -> np.ndarray:
        """
        Least relabelling of a monoid table with identity 0, fixing 0.
        """

        n = table.shape[0]
        best: tuple[int, ...] | None = None
        for perm in itertools.permutations(range(1, n)):
            sigma = np.array((0,) + perm, dtype=np.int64)
            inverse = np.argsort(sigma)
            relabelled = tuple(sigma[table][np.ix_(inverse, inverse)].ravel().tolist())
            if best is None or relabelled < best:
                best = relabelled
        return np.array(best, dtype=np.int64).reshape(n, n)

    def _monoid_tables(self, n: int) -> list[np.ndarray]:
        cached = self.monoid_repo.get_by_order(n)
        if cached is not None:
            return cached
        logger.info(f"Enumerating monoids of order {n}")
        seen: set[tuple[int, ...]] = set()
        for labelled in self._labelled_monoids(n):
            canonical_form = self.canonical_table(np.array(labelled, dtype=np.int64))
            seen.add(tuple(canonical_form.ravel().tolist()))
        tables = [np.array(t, dtype=np.int64).reshape(n, n) for t in sorted(seen)]
        logger.info(f"Found {len(tables)} monoids of order {n}")
        self.monoid_repo.save_all(n, tables)
        return tables

    def enumerate_monoids(self, max_order: int) -> Iterator[FinSemigroup]:
        """
        Yields every monoid of order 1..max_order up to isomorphism.

        Tables are searched by backtracking with identity 0 and partial
        associativity checks, then reduced to a canonical relabelling.

        Raises:
            SizeGuardExceeded: If ``max_order`` exceeds the configured
                guard.
        """

        if max_order > self.max_monoid_order:
            raise SizeGuardExceeded(
                f"monoid enumeration is limited to order {self.max_monoid_order}"
            )
        for n in range(1, max_order + 1):
            for k, table in enumerate(self._monoid_tables(n)):
                yield FinSemigroup(
                    table,
                    identity=0,
                    signature=Signature.MONOID,
                    label=f"M{n}.{k}",
                )
