"""
Rees matrix semigroups over finite groups and the description of their
congruences by triples (rho1, rho2, N).
"""

import itertools
import logging

import numpy as np

from app.domain.entities import CongruenceTriple, FinSemigroup, ReesMatrix
from app.domain.errors import (
    NotACongruence,
    NotAGroup,
    SemigroupError,
    SizeGuardExceeded,
)
from app.domain.partitions import (
    Partition,
    all_partitions,
    from_labels,
    is_partition_of,
    to_labels,
)
from app.application.services.catalog_service import CatalogService

logger = logging.getLogger(__name__)


class ReesService:
    """
    Builds Rees matrix semigroups and translates between their congruences
    and congruence triples.
    """

    def __init__(self, catalog_service: CatalogService, max_index_size: int = 6) -> None:
        """
        Initializes the service.

        Args:
            catalog_service (CatalogService): Used for the congruence check
                of partitions.
            max_index_size (int): Largest |I| or |Lambda| accepted by
                ``enumerate_triples``.

        Returns:
            None
        """

        self.catalog_service = catalog_service
        self.max_index_size = max_index_size

    # --- construction ----------------------------------------------------

    @staticmethod
    def element_index(rees: ReesMatrix, i: int, g: int, lam: int) -> int:
        """Position of (i, g, lam) in the table of ``build_rees``."""
        return (i * rees.group.order + g) * rees.lambda_size + lam

    def build_rees(self, rees: ReesMatrix) -> FinSemigroup:
        """
        Builds the semigroup on I x G x Lambda with
        (i, g, l)(j, h, m) = (i, g p_{l,j} h, m).

        Raises:
            NotAGroup: If the underlying semigroup is not a group.
        """

        group = rees.group
        if not group.is_group():
            raise NotAGroup(f"{group.label or 'semigroup'} is not a group")
        n_g, n_l = group.order, rees.lambda_size
        size = rees.i_size * n_g * n_l
        elements = np.arange(size)
        i, g, lam = elements // (n_g * n_l), (elements // n_l) % n_g, elements % n_l
        sandwich = rees.sandwich[lam[:, None], i[None, :]]
        middle = group.table[g[:, None], sandwich]
        product = group.table[middle, g[None, :]]
        table = (i[:, None] * n_g + product) * n_l + lam[None, :]
        names = tuple(
            f"({a + 1},{group.name(b)},{c + 1})"
            for a, b, c in itertools.product(
                range(rees.i_size), range(n_g), range(n_l)
            )
        )
        return FinSemigroup(
            table,
            names=names,
            label=f"M({rees.i_size},{group.label},{n_l})",
        )

    def normalize(self, rees: ReesMatrix) -> ReesMatrix:
        """
        Returns an isomorphic Rees matrix whose first row and column are the
        identity, using p'_{l,i} = p_{1,1} p_{l,1}^-1 p_{l,i} p_{1,i}^-1.
        """

        table, inverse = rees.group.table, rees.group.inverses
        p = rees.sandwich
        left = table[p[0, 0], inverse[p[:, 0]]]
        right = inverse[p[0, :]]
        normalized = table[table[left[:, None], p], right[None, :]]
        return ReesMatrix(rees.i_size, rees.lambda_size, rees.group, normalized)

    # --- normal subgroups ------------------------------------------------

    def _normal_closure(self, group: FinSemigroup, generators: set[int]) -> frozenset[int]:
        table, inverse = group.table, group.inverses
        closed = {group.find_identity()} | set(generators)
        frontier = list(closed)
        while frontier:
            fresh = []
            for a in frontier:
                candidates = [int(table[a, b]) for b in closed] + [int(inverse[a])]
                candidates += [
                    int(table[table[c, a], inverse[c]]) for c in range(group.order)
                ]
                for x in candidates:
                    if x not in closed:
                        closed.add(x)
                        fresh.append(x)
            frontier = fresh
        return frozenset(closed)

    def normal_subgroups(self, group: FinSemigroup) -> list[frozenset[int]]:
        """
        Lists the normal subgroups of a group as joins of normal closures
        of single elements.
        """

        principal = {self._normal_closure(group, {g}) for g in range(group.order)}
        found = set(principal)
        frontier = list(principal)
        while frontier:
            fresh = []
            for subgroup in frontier:
                for other in principal:
                    joined = self._normal_closure(group, set(subgroup | other))
                    if joined not in found:
                        found.add(joined)
                        fresh.append(joined)
            frontier = fresh
        return sorted(found, key=lambda s: (len(s), sorted(s)))

    def is_normal_subgroup(self, group: FinSemigroup, subset: frozenset[int]) -> bool:
        return bool(subset) and self._normal_closure(group, set(subset)) == subset

    # --- triples ---------------------------------------------------------

    def _cosets_agree(
        self, rees: ReesMatrix, a: int, b: int, normal: frozenset[int]
    ) -> bool:
        table, inverse = rees.group.table, rees.group.inverses
        return int(table[inverse[a], b]) in normal

    def triple_valid(self, rees: ReesMatrix, triple: CongruenceTriple) -> bool:
        """
        Checks that N is normal and that related indices give equal cosets:
        i rho1 j implies p_{l,i} N = p_{l,j} N for every l, and
        l rho2 m implies p_{l,i} N = p_{m,i} N for every i.
        """

        if not (
            is_partition_of(triple.rho1, rees.i_size)
            and is_partition_of(triple.rho2, rees.lambda_size)
            and self.is_normal_subgroup(rees.group, triple.normal_subgroup)
        ):
            return False
        p = rees.sandwich
        for block in triple.rho1:
            for i, j in itertools.combinations(block, 2):
                for lam in range(rees.lambda_size):
                    if not self._cosets_agree(
                        rees, p[lam, i], p[lam, j], triple.normal_subgroup
                    ):
                        return False
        for block in triple.rho2:
            for lam, mu in itertools.combinations(block, 2):
                for i in range(rees.i_size):
                    if not self._cosets_agree(
                        rees, p[lam, i], p[mu, i], triple.normal_subgroup
                    ):
                        return False
        return True

    def congruence_from_triple(
        self, rees: ReesMatrix, triple: CongruenceTriple
    ) -> Partition:
        """
        Relates (i, g, l) and (j, h, m) when i rho1 j, l rho2 m and gN = hN.

        Raises:
            NotACongruence: If the triple is not valid for ``rees``.
        """

        if not self.triple_valid(rees, triple):
            raise NotACongruence(f"invalid congruence triple {triple}")
        group = rees.group
        i_labels = to_labels(triple.rho1, rees.i_size)
        l_labels = to_labels(triple.rho2, rees.lambda_size)
        coset_labels = [
            min(int(group.table[g, n]) for n in triple.normal_subgroup)
            for g in range(group.order)
        ]
        labels = [
            (i_labels[i], coset_labels[g], l_labels[lam])
            for i, g, lam in itertools.product(
                range(rees.i_size), range(group.order), range(rees.lambda_size)
            )
        ]
        return from_labels(labels)

    def triple_from_congruence(
        self, rees: ReesMatrix, congruence: Partition
    ) -> CongruenceTriple:
        """
        Reads the triple of a congruence of a normalized Rees matrix
        semigroup off the elements with first or last coordinate 1.

        Raises:
            SemigroupError: If the sandwich matrix is not normalized.
            NotACongruence: If the partition is not a congruence.
        """

        if not rees.normalized:
            raise SemigroupError("triple extraction needs a normalized sandwich matrix")
        semigroup = self.build_rees(rees)
        if not is_partition_of(
            congruence, semigroup.order
        ) or not self.catalog_service.is_congruence(semigroup, congruence):
            raise NotACongruence(f"{congruence} is not a congruence")
        labels = to_labels(congruence, semigroup.order)
        e = rees.group.find_identity()

        def label(i: int, g: int, lam: int) -> int:
            return labels[self.element_index(rees, i, g, lam)]

        rho1 = from_labels([label(i, e, 0) for i in range(rees.i_size)])
        rho2 = from_labels([label(0, e, lam) for lam in range(rees.lambda_size)])
        normal = frozenset(
            g for g in range(rees.group.order) if label(0, g, 0) == label(0, e, 0)
        )
        return CongruenceTriple(rho1, rho2, normal)

    def enumerate_triples(self, rees: ReesMatrix) -> list[CongruenceTriple]:
        """
        Lists every valid triple over the partitions of I and Lambda and the
        normal subgroups of G.

        Raises:
            SizeGuardExceeded: If an index set is larger than the guard.
        """

        if max(rees.i_size, rees.lambda_size) > self.max_index_size:
            raise SizeGuardExceeded(
                f"triple enumeration is limited to index sets of size "
                f"{self.max_index_size}"
            )
        normals = self.normal_subgroups(rees.group)
        triples = [
            CongruenceTriple(rho1, rho2, normal)
            for rho1 in all_partitions(rees.i_size)
            for rho2 in all_partitions(rees.lambda_size)
            for normal in normals
            if self.triple_valid(rees, CongruenceTriple(rho1, rho2, normal))
        ]
        logger.info(f"Found {len(triples)} congruence triples")
        return triples

    def sandwich_matrices(
        self, group: FinSemigroup, i_size: int, lambda_size: int
    ) -> list[np.ndarray]:
        """
        Every normalized sandwich matrix of the given shape: the entries off
        the first row and column range over the group.
        """

        e = group.find_identity()
        free = (i_size - 1) * (lambda_size - 1)
        matrices = []
        for values in itertools.product(range(group.order), repeat=free):
            matrix = np.full((lambda_size, i_size), e, dtype=np.int64)
            if free:
                matrix[1:, 1:] = np.array(values).reshape(lambda_size - 1, i_size - 1)
            matrices.append(matrix)
        return matrices
