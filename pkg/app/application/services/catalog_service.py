"""
Builds the named finite semigroups and the standard constructions on them:
adjoining an identity, direct products, opposites and quotients.
"""

import itertools
import logging
import re

import numpy as np

from app.domain.entities import FinSemigroup
from app.domain.errors import NotACongruence, SemigroupError
from app.domain.partitions import Partition, is_partition_of, to_labels
from app.domain.terms import Signature

logger = logging.getLogger(__name__)

_FACTOR = re.compile(
    r"^(?P<base>Sl2|B2|N|T|Q8|[CDSA]\d+|[BC]\(\s*\d+\s*,\s*\d+\s*\))"
    r"(?P<suffixes>(\^(1|op))*)$"
)


def _permutation_name(p: tuple[int, ...]) -> str:
    seen: set[int] = set()
    cycles = []
    for start in range(len(p)):
        if start in seen or p[start] == start:
            continue
        cycle, i = [], start
        while i not in seen:
            seen.add(i)
            cycle.append(str(i))
            i = p[i]
        cycles.append("(" + ",".join(cycle) + ")")
    return "".join(cycles) or "()"


def _split_product(expression: str) -> list[str]:
    factors, depth, current = [], 0, ""
    for char in expression:
        depth += (char == "(") - (char == ")")
        if char == "*" and depth == 0:
            factors.append(current)
            current = ""
        else:
            current += char
    factors.append(current)
    return [f.strip() for f in factors]


class CatalogService:
    """
    Provides the catalog of named semigroups and the constructions used to
    combine them.
    """

    def catalog(self, name: str, *params: int) -> FinSemigroup:
        """
        Builds a named semigroup.

        Args:
            name (str): One of ``Sl2``, ``B`` (with m, n), ``C`` (with m, n
                for the monogenic semigroup, or n for the cyclic group),
                ``B2``, ``N``, ``T``, ``S`` / ``A`` / ``D`` (with n) or ``Q8``.
            params (int): The parameters of the family.

        Returns:
            FinSemigroup: The multiplication table of the named object.

        Raises:
            SemigroupError: If the name or the parameters are invalid.
        """

        if any(p < 1 for p in params):
            raise SemigroupError(f"parameters must be positive: {params}")
        match name, params:
            case "Sl2", ():
                return self._semilattice()
            case "B", (m, n):
                return self._rectangular_band(m, n)
            case "C", (m, n):
                return self._monogenic(m, n)
            case "C", (n,):
                return self.cyclic_group(n)
            case "B2", ():
                return self._brandt()
            case "N", ():
                return self._nilpotent()
            case "T", ():
                return self._t_semigroup()
            case "S", (n,) if n <= 5:
                return self._permutation_group(
                    f"S{n}", [tuple(range(1, n)) + (0,), (1, 0) + tuple(range(2, n))]
                    if n > 1
                    else [tuple(range(n))],
                    n,
                )
            case "A", (n,) if 3 <= n <= 5:
                gens = [(1, 2, 0) + tuple(range(3, n))]
                gens += [
                    tuple(range(i)) + (i + 1, i + 2, i) + tuple(range(i + 3, n))
                    for i in range(1, n - 2)
                ]
                return self._permutation_group(f"A{n}", gens, n)
            case "D", (n,) if n >= 3:
                rotation = tuple((i + 1) % n for i in range(n))
                reflection = tuple((-i) % n for i in range(n))
                return self._permutation_group(f"D{n}", [rotation, reflection], n)
            case "Q8", ():
                return self._quaternions()
        raise SemigroupError(f"unknown catalog entry {name}{params}")

    def resolve(self, expression: str) -> FinSemigroup:
        """
        Builds a semigroup from a catalog expression such as ``C(2,1)^1``,
        ``B(1,2)^op`` or ``C2*C3``.
        """

        factors = [self._resolve_factor(f) for f in _split_product(expression)]
        result = factors[0]
        for factor in factors[1:]:
            result = self.direct_product(result, factor)
        return result

    def _resolve_factor(self, text: str) -> FinSemigroup:
        match = _FACTOR.match(text.replace(" ", ""))
        if not match:
            raise SemigroupError(f"unknown catalog expression {text!r}")
        base = match["base"]
        if base in ("Sl2", "B2", "N", "T", "Q8"):
            semigroup = self.catalog(base)
        elif "(" in base:
            m, n = (int(v) for v in re.findall(r"\d+", base))
            semigroup = self.catalog(base[0], m, n)
        else:
            semigroup = self.catalog(base[0], int(base[1:]))
        for suffix in re.findall(r"\^(1|op)", match["suffixes"]):
            semigroup = (
                self.adjoin_identity(semigroup)
                if suffix == "1"
                else self.opposite(semigroup)
            )
        return semigroup

    # --- the named objects ---------------------------------------------

    def _semilattice(self) -> FinSemigroup:
        return FinSemigroup(
            np.array([[0, 1], [1, 1]]),
            identity=0,
            names=("1", "0"),
            signature=Signature.MONOID,
            label="Sl2",
        )

    def _rectangular_band(self, m: int, n: int) -> FinSemigroup:
        cells = list(itertools.product(range(m), range(n)))
        table = [[i * n + l for (_, l) in cells] for (i, _) in cells]
        return FinSemigroup(
            np.array(table),
            names=tuple(f"({i + 1},{j + 1})" for i, j in cells),
            label=f"B({m},{n})",
        )

    def _monogenic(self, m: int, n: int) -> FinSemigroup:
        size = m + n - 1

        def reduce(k: int) -> int:
            return k if k < m + n else m + (k - m) % n

        table = [[reduce(i + j + 2) - 1 for j in range(size)] for i in range(size)]
        return FinSemigroup(
            np.array(table),
            names=tuple("a" if k == 1 else f"a^{k}" for k in range(1, size + 1)),
            label=f"C({m},{n})",
        )

    def cyclic_group(self, n: int) -> FinSemigroup:
        table = [[(i + j) % n for j in range(n)] for i in range(n)]
        return FinSemigroup(
            np.array(table),
            identity=0,
            names=tuple(
                "1" if k == 0 else ("g" if k == 1 else f"g^{k}") for k in range(n)
            ),
            signature=Signature.MONOID,
            label=f"C{n}",
        )

    def _brandt(self) -> FinSemigroup:
        # Matrix units: a = E12, b = E21, ab = E11, ba = E22, and 0.
        units = [(1, 2), (2, 1), (1, 1), (2, 2), None]
        table = [
            [
                units.index((p[0], q[1])) if p and q and p[1] == q[0] else 4
                for q in units
            ]
            for p in units
        ]
        return FinSemigroup(
            np.array(table), names=("a", "b", "ab", "ba", "0"), label="B2"
        )

    def _nilpotent(self) -> FinSemigroup:
        table = np.full((4, 4), 3)
        table[0, 1] = 2
        return FinSemigroup(table, names=("a", "b", "ab", "0"), label="N")

    def _t_semigroup(self) -> FinSemigroup:
        # e^2 = e, ea = a, ae = a^2 = 0, with 0 absorbing.
        table = np.array([[0, 1, 2], [2, 2, 2], [2, 2, 2]])
        return FinSemigroup(table, names=("e", "a", "0"), label="T")

    def _permutation_group(
        self, label: str, generators: list[tuple[int, ...]], degree: int
    ) -> FinSemigroup:
        identity = tuple(range(degree))
        elements = [identity]
        frontier = [identity]
        while frontier:
            fresh = []
            for p in frontier:
                for g in generators:
                    q = tuple(p[g[i]] for i in range(degree))
                    if q not in elements:
                        elements.append(q)
                        fresh.append(q)
            frontier = fresh
        elements = [identity] + sorted(e for e in elements if e != identity)
        position = {p: k for k, p in enumerate(elements)}
        table = [
            [position[tuple(p[q[i]] for i in range(degree))] for q in elements]
            for p in elements
        ]
        logger.debug(f"Built {label} with {len(elements)} elements")
        return FinSemigroup(
            np.array(table),
            identity=0,
            names=tuple(_permutation_name(p) for p in elements),
            signature=Signature.MONOID,
            label=label,
        )

    def _quaternions(self) -> FinSemigroup:
        # Units as (sign, axis) with axis 0 = 1, 1 = i, 2 = j, 3 = k.
        units = [(s, a) for a in range(4) for s in (1, -1)]
        basis = {
            (1, 1): (-1, 0), (2, 2): (-1, 0), (3, 3): (-1, 0),
            (1, 2): (1, 3), (2, 3): (1, 1), (3, 1): (1, 2),
            (2, 1): (-1, 3), (3, 2): (-1, 1), (1, 3): (-1, 2),
        }  # fmt: skip

        def product(p: tuple[int, int], q: tuple[int, int]) -> tuple[int, int]:
            if p[1] == 0:
                return p[0] * q[0], q[1]
            if q[1] == 0:
                return p[0] * q[0], p[1]
            sign, axis = basis[(p[1], q[1])]
            return p[0] * q[0] * sign, axis

        table = [[units.index(product(p, q)) for q in units] for p in units]
        symbols = "1ijk"
        return FinSemigroup(
            np.array(table),
            identity=0,
            names=tuple(("" if s > 0 else "-") + symbols[a] for s, a in units),
            signature=Signature.MONOID,
            label="Q8",
        )

    # --- constructions ---------------------------------------------------

    def adjoin_identity(
        self, semigroup: FinSemigroup, force: bool = True
    ) -> FinSemigroup:
        """
        Adds a fresh identity as the last element.

        Args:
            semigroup (FinSemigroup): The semigroup S.
            force (bool): When False and S already has an identity, S is
                returned as a monoid without adding an element.

        Returns:
            FinSemigroup: The monoid S^1.
        """

        if not force:
            existing = semigroup.find_identity()
            if existing is not None:
                return FinSemigroup(
                    semigroup.table,
                    identity=existing,
                    names=semigroup.names,
                    signature=Signature.MONOID,
                    label=semigroup.label,
                )
        n = semigroup.order
        table = np.empty((n + 1, n + 1), dtype=np.int64)
        table[:n, :n] = semigroup.table
        table[n, :] = np.arange(n + 1)
        table[:, n] = np.arange(n + 1)
        names = [semigroup.name(i) for i in range(n)]
        fresh = "1"
        while fresh in names:
            fresh += "'"
        return FinSemigroup(
            table,
            identity=n,
            names=tuple(names + [fresh]),
            signature=Signature.MONOID,
            label=f"{semigroup.label}^1",
        )

    def direct_product(
        self, left: FinSemigroup, right: FinSemigroup
    ) -> FinSemigroup:
        """Element (s, t) has index s * |T| + t."""
        m = right.order
        table = (
            left.table[:, None, :, None] * m + right.table[None, :, None, :]
        ).reshape(left.order * m, left.order * m)
        identity = None
        if left.identity is not None and right.identity is not None:
            identity = left.identity * m + right.identity
        monoid = (
            left.signature is Signature.MONOID and right.signature is Signature.MONOID
        )
        return FinSemigroup(
            table,
            identity=identity,
            names=tuple(
                f"({left.name(s)},{right.name(t)})"
                for s in range(left.order)
                for t in range(m)
            ),
            signature=Signature.MONOID if monoid else Signature.SEMIGROUP,
            label=f"{left.label}*{right.label}",
        )

    def opposite(self, semigroup: FinSemigroup) -> FinSemigroup:
        return FinSemigroup(
            semigroup.table.T,
            identity=semigroup.identity,
            names=semigroup.names,
            signature=semigroup.signature,
            label=f"{semigroup.label}^op",
        )

    def is_congruence(self, semigroup: FinSemigroup, partition: Partition) -> bool:
        """Tells whether the partition is compatible with multiplication."""
        labels = np.array(to_labels(partition, semigroup.order))
        images = labels[semigroup.table]
        for block in partition:
            rows, cols = images[list(block), :], images[:, list(block)]
            if (rows != rows[0]).any() or (cols != cols[:, :1]).any():
                return False
        return True

    def quotient(
        self, semigroup: FinSemigroup, partition: Partition
    ) -> FinSemigroup:
        """
        Builds S / partition; blocks are numbered by their least element.

        Raises:
            NotACongruence: If the partition is not a congruence.
        """

        if not is_partition_of(partition, semigroup.order) or not self.is_congruence(
            semigroup, partition
        ):
            raise NotACongruence(f"{partition} is not a congruence")
        labels = np.array(to_labels(partition, semigroup.order))
        representatives = [block[0] for block in partition]
        table = labels[semigroup.table[np.ix_(representatives, representatives)]]
        identity = (
            int(labels[semigroup.identity]) if semigroup.identity is not None else None
        )
        return FinSemigroup(
            table,
            identity=identity,
            names=tuple(f"[{semigroup.name(r)}]" for r in representatives),
            signature=semigroup.signature,
            label=f"{semigroup.label}/~",
        )

    # --- pools -----------------------------------------------------------

    def catalog_pool(self) -> list[FinSemigroup]:
        """
        Every catalog object read as a monoid, followed by the objects that
        already had an identity with a fresh one adjoined.
        """

        expressions = [
            "Sl2", "B(1,2)", "B(2,1)", "B(2,2)", "C(2,1)", "C(1,2)", "C(2,2)",
            "C(3,1)", "C(1,3)", "C2", "C3", "C4", "B2", "N", "T", "S3",
        ]  # fmt: skip
        semigroups = [self.resolve(e) for e in expressions]
        return [self.adjoin_identity(s, force=False) for s in semigroups] + [
            self.adjoin_identity(s) for s in semigroups if s.find_identity() is not None
        ]

    def group_pool(self) -> list[FinSemigroup]:
        """Separating groups for identities of finite groups."""
        cyclic = [self.cyclic_group(n) for n in range(2, 9)]
        return cyclic + [self.resolve(e) for e in ("S3", "D4", "Q8", "A4", "S4")]

    def commutative_pool(self) -> list[FinSemigroup]:
        """
        The monoids C(m,n)^1 with m + n <= 6, then their pairwise direct
        products.  Products with the same table as an earlier member are
        dropped.
        """

        cyclic = [
            self.adjoin_identity(self.catalog("C", m, n))
            for m in range(1, 6)
            for n in range(1, 7 - m)
        ]
        pool = list(cyclic)
        seen = {(s.order, s.table.tobytes()) for s in pool}
        for left, right in itertools.combinations_with_replacement(cyclic, 2):
            product = self.direct_product(left, right)
            key = (product.order, product.table.tobytes())
            if key not in seen:
                seen.add(key)
                pool.append(product)
        return pool
