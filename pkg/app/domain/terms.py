"""
Defines omega-term syntax trees and the purely syntactic operations on them:
substitution, context plugging, printing, and normalization by equalities
that hold in every finite monoid.
"""

from collections.abc import Callable, Iterator, Mapping
from dataclasses import dataclass
from enum import StrEnum

from app.domain.errors import (
    ContextError,
    SignatureError,
    SymbolicExponentError,
)
from app.domain.exponents import (
    ONE,
    ZERO,
    AnyExponent,
    Finite,
    OmegaPlus,
    is_symbolic,
    render_exponent,
    sym_add,
    sym_canonical,
    sym_mul,
    sym_threshold,
    sym_valid_from,
    substitute_nu,
)


class Signature(StrEnum):
    """The algebraic signature a term lives in."""

    MONOID = "monoid"
    SEMIGROUP = "semigroup"

    @property
    def minimum_exponent(self) -> int:
        return 0 if self is Signature.MONOID else 1


class Direction(StrEnum):
    LEFT = "left"
    RIGHT = "right"


@dataclass(frozen=True)
class Letter:
    name: str


@dataclass(frozen=True)
class Unit:
    pass


@dataclass(frozen=True)
class Hole:
    """The distinguished position of a context."""


@dataclass(frozen=True)
class Concat:
    """
    A product of at least two factors, none of which is a product or the
    unit.
    """

    parts: tuple["Term", ...]


@dataclass(frozen=True)
class Power:
    base: "Term"
    exp: AnyExponent


Term = Letter | Unit | Hole | Concat | Power


def hole_count(t: Term) -> int:
    match t:
        case Hole():
            return 1
        case Concat(parts):
            return sum(hole_count(p) for p in parts)
        case Power(base, _):
            return hole_count(base)
    return 0


@dataclass(frozen=True)
class Context:
    """
    A term with exactly one hole.
    """

    term: Term

    def __post_init__(self) -> None:
        if hole_count(self.term) != 1:
            raise ContextError(
                f"context must contain exactly one hole: {render_term(self.term)}"
            )


@dataclass(frozen=True)
class Pseudoidentity:
    """
    A formal equality between two terms.
    """

    lhs: Term
    rhs: Term
    signature: Signature = Signature.MONOID

    def flipped(self) -> "Pseudoidentity":
        return Pseudoidentity(self.rhs, self.lhs, self.signature)

    def __str__(self) -> str:
        return f"{render_term(self.lhs)} = {render_term(self.rhs)}"


def concat(*parts: Term) -> Term:
    """
    Multiplies terms, flattening nested products and dropping units.
    """

    flat: list[Term] = []
    for part in parts:
        match part:
            case Unit():
                continue
            case Concat(inner):
                flat.extend(inner)
            case _:
                flat.append(part)
    if not flat:
        return Unit()
    if len(flat) == 1:
        return flat[0]
    return Concat(tuple(flat))


def _rebuild(t: Term, leaf: Callable[[Term], Term]) -> Term:
    match t:
        case Concat(parts):
            return concat(*(_rebuild(p, leaf) for p in parts))
        case Power(base, exp):
            return Power(_rebuild(base, leaf), exp)
    return leaf(t)


def substitute(t: Term, sigma: Mapping[str, Term]) -> Term:
    """
    Applies the homomorphism determined by the letter images ``sigma``;
    letters without an image are fixed.
    """

    return _rebuild(
        t, lambda leaf: sigma.get(leaf.name, leaf) if isinstance(leaf, Letter) else leaf
    )


def plug(c: Context, t: Term) -> Term:
    """Replaces the hole of ``c`` by ``t``."""
    return _rebuild(c.term, lambda leaf: t if isinstance(leaf, Hole) else leaf)


def reverse_term(t: Term) -> Term:
    """Mirrors the order of every product in ``t``."""
    match t:
        case Concat(parts):
            return Concat(tuple(reverse_term(p) for p in reversed(parts)))
        case Power(base, exp):
            return Power(reverse_term(base), exp)
    return t


def letters(t: Term) -> list[str]:
    """Returns the sorted alphabet of ``t``."""
    found: set[str] = set()
    for leaf in _leaves(t):
        if isinstance(leaf, Letter):
            found.add(leaf.name)
    return sorted(found)


def _leaves(t: Term) -> Iterator[Term]:
    match t:
        case Concat(parts):
            for p in parts:
                yield from _leaves(p)
        case Power(base, _):
            yield from _leaves(base)
        case _:
            yield t


def exponents(t: Term) -> Iterator[AnyExponent]:
    match t:
        case Concat(parts):
            for p in parts:
                yield from exponents(p)
        case Power(base, exp):
            yield exp
            yield from exponents(base)


def is_constant(t: Term) -> bool:
    """Tells whether no exponent of ``t`` mentions the parameter."""
    return not any(is_symbolic(e) for e in exponents(t))


def map_exponents(t: Term, f: Callable[[AnyExponent], AnyExponent]) -> Term:
    match t:
        case Concat(parts):
            return concat(*(map_exponents(p, f) for p in parts))
        case Power(base, exp):
            return Power(map_exponents(base, f), f(exp))
    return t


def term_threshold(t: Term, signature: Signature) -> int:
    """The largest instantiation threshold among the exponents of ``t``."""
    return max(
        (
            sym_threshold(e, signature.minimum_exponent)
            for e in exponents(t)
            if is_symbolic(e)
        ),
        default=1,
    )


def term_valid_from(t: Term, signature: Signature) -> int:
    """
    Least integer from which every parameter value gives ``t`` valid
    exponents.  Symbolic exponents without omega must stay positive, since
    a zero factor would break the canonical form of products.
    """

    return max(
        (
            sym_valid_from(e, max(signature.minimum_exponent, 1))
            for e in exponents(t)
            if is_symbolic(e)
        ),
        default=1,
    )


def substitute_parameter(t: Term, value: AnyExponent) -> Term:
    """Replaces the parameter by ``value`` in every exponent of ``t``."""
    return map_exponents(
        t, lambda e: substitute_nu(e, value) if is_symbolic(e) else e
    )


def check_signature(t: Term, signature: Signature) -> None:
    """
    Raises:
        SignatureError: If ``t`` uses the unit or a zero exponent in
            semigroup signature.
    """

    if signature is Signature.MONOID:
        return
    if any(isinstance(leaf, Unit) for leaf in _leaves(t)):
        raise SignatureError(f"unit in semigroup signature: {render_term(t)}")
    if any(e == ZERO for e in exponents(t)):
        raise SignatureError(f"zero exponent in semigroup signature: {render_term(t)}")


# --- normalization -------------------------------------------------------


def _view(part: Term) -> tuple[Term, AnyExponent]:
    if isinstance(part, Power):
        return part.base, part.exp
    return part, ONE


def _power_parts(base: Term, exp: AnyExponent) -> list[Term]:
    """The factors of base^exp after the unit, one and expansion rules."""
    if isinstance(base, Unit) or exp == ZERO:
        return []
    if exp == ONE:
        return list(base.parts) if isinstance(base, Concat) else [base]
    if isinstance(base, Power):
        return _power_parts(base.base, sym_mul(base.exp, exp))
    if isinstance(base, Concat) and isinstance(exp, Finite):
        return list(base.parts) * exp.n
    return [Power(base, exp)]


def _absorbs(candidate: Term, run: list[Term]) -> bool:
    return (
        isinstance(candidate, Power)
        and isinstance(candidate.base, Concat)
        and list(candidate.base.parts) == run
    )


def _reduce_top(stack: list[Term]) -> bool:
    if len(stack) >= 2:
        (left_base, left_exp), (right_base, right_exp) = (
            _view(stack[-2]),
            _view(stack[-1]),
        )
        if left_base == right_base:
            stack[-2:] = _power_parts(left_base, sym_add(left_exp, right_exp))
            return True
    top = stack[-1] if stack else None
    if isinstance(top, Power) and isinstance(top.base, Concat):
        size = len(top.base.parts)
        if len(stack) > size and _absorbs(top, stack[-size - 1 : -1]):
            stack[-size - 1 :] = _power_parts(top.base, sym_add(top.exp, ONE))
            return True
    for index in range(len(stack) - 2, -1, -1):
        if _absorbs(stack[index], stack[index + 1 :]):
            power = stack[index]
            stack[index:] = _power_parts(power.base, sym_add(power.exp, ONE))
            return True
    return False


def _normalize_once(t: Term) -> Term:
    match t:
        case Power(base, exp):
            exp = sym_canonical(exp) if not isinstance(exp, Finite | OmegaPlus) else exp
            return concat(*_power_parts(_normalize_once(base), exp))
        case Concat(parts):
            stack: list[Term] = []
            flat = concat(*(_normalize_once(p) for p in parts))
            for part in flat.parts if isinstance(flat, Concat) else [flat]:
                stack.append(part)
                while _reduce_top(stack):
                    pass
            return concat(*stack)
    return t


def normalize_ambient(t: Term) -> Term:
    """
    Normalizes ``t`` by equalities valid in every finite monoid.

    Products are flattened and units dropped, powers with exponent 1 or 0
    are removed, powers of powers multiply their exponents, finite powers
    of products are expanded, and adjacent powers of the same base are
    merged.  A power of a product also absorbs an adjacent copy of that
    product, as in ``(xy)^w xy = (xy)^(w+1)``.
    """

    while True:
        normal = _normalize_once(t)
        if normal == t:
            return normal
        t = normal


def first_occurrence_order(t: Term, direction: Direction) -> list[str]:
    """
    Lists the letters of ``t`` in order of first occurrence when read from
    the given end.

    Raises:
        SymbolicExponentError: If ``t`` has a symbolic exponent.
    """

    seen: dict[str, None] = {}

    def scan(node: Term) -> None:
        match node:
            case Letter(name):
                seen.setdefault(name)
            case Concat(parts):
                ordered = parts if direction is Direction.LEFT else reversed(parts)
                for p in ordered:
                    scan(p)
            case Power(base, exp):
                if is_symbolic(exp):
                    raise SymbolicExponentError(
                        f"symbolic exponent in {render_term(t)}"
                    )
                if exp != ZERO:
                    scan(base)

    scan(t)
    return list(seen)


# --- printing ------------------------------------------------------------


def render_term(t: Term) -> str:
    """Prints ``t`` in the syntax accepted by the term parser."""
    match t:
        case Letter(name):
            return name
        case Unit():
            return "1"
        case Hole():
            return "_"
        case Power(base, exp):
            inner = render_term(base)
            if isinstance(base, Concat | Power):
                inner = f"({inner})"
            return f"{inner}^{render_exponent(exp)}"
        case Concat(parts):
            out = ""
            for i, part in enumerate(parts):
                if i and isinstance(parts[i - 1], Power) and out[-1].isalnum():
                    out += " "
                out += render_term(part)
            return out
    raise TypeError(f"not a term: {t!r}")
