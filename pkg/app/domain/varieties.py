"""
Defining pseudoidentities of the pseudovarieties the proof corpus is about.
"""

from dataclasses import dataclass, field

from app.domain.errors import UnknownVariety
from app.domain.terms import Signature


@dataclass(frozen=True)
class Variety:
    """
    Represents a pseudovariety given by one or more bases of
    pseudoidentities, written in term syntax.
    """

    name: str
    signature: Signature
    bases: dict[str, tuple[str, ...]] = field(hash=False)
    description: str = ""

    def basis(self, name: str = "sigma") -> tuple[str, ...]:
        if name not in self.bases:
            raise UnknownVariety(f"{self.name} has no basis {name!r}")
        return self.bases[name]


VARIETIES: dict[str, Variety] = {
    v.name: v
    for v in (
        Variety(
            "A",
            Signature.MONOID,
            {"sigma": ("x^(w+1) = x^w",)},
            "aperiodic monoids",
        ),
        Variety(
            "R",
            Signature.MONOID,
            {"sigma": ("(xy)^w x = (xy)^w",)},
            "R-trivial monoids",
        ),
        Variety(
            "L",
            Signature.MONOID,
            {"sigma": ("y(xy)^w = (xy)^w",)},
            "L-trivial monoids",
        ),
        Variety(
            "J",
            Signature.MONOID,
            {
                "sigma": ("x^(w+1) = x^w", "(xy)^w = (yx)^w"),
                "gamma": ("(xy)^w x = (xy)^w", "y(xy)^w = (xy)^w"),
            },
            "J-trivial monoids",
        ),
        Variety(
            "DA",
            Signature.MONOID,
            {
                "sigma": ("x^(w+1) = x^w", "(xy)^w (yx)^w (xy)^w = (xy)^w"),
                "gamma": ("((xy)^w x)^2 = (xy)^w x",),
            },
            "monoids whose regular elements are idempotent",
        ),
        Variety(
            "LSl",
            Signature.SEMIGROUP,
            {
                "sigma": (
                    "x^w y x^w z x^w = x^w z x^w y x^w",
                    "x^w y x^w y x^w = x^w y x^w",
                ),
            },
            "local semilattices",
        ),
        Variety("G", Signature.MONOID, {"sigma": ("x^w = 1",)}, "groups"),
        Variety(
            "CS",
            Signature.SEMIGROUP,
            {
                "sigma": ("(xyx)^w = x^w", "x^(w+1) = x"),
                "gamma": ("(xy)^w x = x",),
            },
            "completely simple semigroups",
        ),
        Variety(
            "CR",
            Signature.SEMIGROUP,
            {"sigma": ("x^(w+1) = x",)},
            "completely regular semigroups",
        ),
        Variety(
            "Com",
            Signature.MONOID,
            {"sigma": ("xy = yx",)},
            "commutative monoids",
        ),
    )
}


def variety(name: str) -> Variety:
    if name not in VARIETIES:
        raise UnknownVariety(f"unknown variety {name!r}")
    return VARIETIES[name]
