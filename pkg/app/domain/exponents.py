"""
Defines the exponents of omega-terms: finite naturals and the values
omega + z, plus symbolic exponents in the schematic parameter ``k``.

A symbolic exponent stands for a family of exponents indexed by n, where
the parameter is instantiated at n!.  Two symbolic exponents are compared
through their canonical polynomial form, which describes the family for all
sufficiently large n.
"""

import math
from dataclasses import dataclass
from functools import reduce

from app.domain.errors import ExponentError, IllFormedInstantiation


@dataclass(frozen=True)
class Finite:
    """
    A finite exponent n >= 0.
    """

    n: int

    def __post_init__(self) -> None:
        if self.n < 0:
            raise ExponentError(f"finite exponent must be nonnegative: {self.n}")


@dataclass(frozen=True)
class OmegaPlus:
    """
    The exponent omega + z.
    """

    z: int


Exponent = Finite | OmegaPlus


@dataclass(frozen=True)
class IntConst:
    """An integer constant, possibly negative, inside a symbolic exponent."""

    z: int


@dataclass(frozen=True)
class Nu:
    """The schematic parameter, instantiated at n!."""


@dataclass(frozen=True)
class Sum:
    left: "SymExponent"
    right: "SymExponent"


@dataclass(frozen=True)
class Prod:
    left: "SymExponent"
    right: "SymExponent"


@dataclass(frozen=True)
class Const:
    """An exponent embedded in a symbolic expression."""

    value: Exponent


SymExponent = IntConst | Nu | Sum | Prod | Const

# Anything that may sit in the exponent slot of a power.
AnyExponent = Exponent | SymExponent

OMEGA = OmegaPlus(0)
ONE = Finite(1)
ZERO = Finite(0)


def exp_add(a: Exponent, b: Exponent) -> Exponent:
    """
    Adds two exponents.

    Args:
        a (Exponent): The first summand.
        b (Exponent): The second summand.

    Returns:
        Exponent: The sum; any omega summand absorbs into omega + z.
    """

    match a, b:
        case Finite(m), Finite(n):
            return Finite(m + n)
        case (Finite(n), OmegaPlus(z)) | (OmegaPlus(z), Finite(n)):
            return OmegaPlus(z + n)
        case OmegaPlus(z), OmegaPlus(w):
            return OmegaPlus(z + w)
    raise TypeError(f"not an exponent: {a!r}, {b!r}")


def exp_mul(a: Exponent, b: Exponent) -> Exponent:
    """
    Multiplies two exponents, i.e. composes the power maps.

    Args:
        a (Exponent): The first factor.
        b (Exponent): The second factor.

    Returns:
        Exponent: The product; Finite(0) is absorbing.
    """

    match a, b:
        case Finite(m), Finite(n):
            return Finite(m * n)
        case (Finite(0), OmegaPlus()) | (OmegaPlus(), Finite(0)):
            return ZERO
        case (Finite(n), OmegaPlus(z)) | (OmegaPlus(z), Finite(n)):
            return OmegaPlus(n * z)
        case OmegaPlus(z), OmegaPlus(w):
            return OmegaPlus(z * w)
    raise TypeError(f"not an exponent: {a!r}, {b!r}")


def is_exponent(e: AnyExponent) -> bool:
    return isinstance(e, Finite | OmegaPlus)


def is_symbolic(e: AnyExponent) -> bool:
    """Tells whether the schematic parameter occurs in ``e``."""
    match e:
        case Nu():
            return True
        case Sum(left, right) | Prod(left, right):
            return is_symbolic(left) or is_symbolic(right)
    return False


# --- canonical polynomial form -------------------------------------------
#
# A value is a pair (flagged, coefficients): an integer polynomial in the
# parameter, lowest degree first, trailing zeros trimmed.  Flagged values
# stand for omega + p(n!), unflagged ones for the integer p(n!).  The
# unflagged zero polynomial is the exponent 0 and absorbs products.


@dataclass(frozen=True)
class _Poly:
    flagged: bool
    coeffs: tuple[int, ...]

    @classmethod
    def make(cls, flagged: bool, coeffs: list[int] | tuple[int, ...]) -> "_Poly":
        coeffs = list(coeffs)
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        return cls(flagged, tuple(coeffs))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.flagged and not self.coeffs

    def constant(self) -> int:
        return self.coeffs[0] if self.coeffs else 0

    def at(self, value: int) -> int:
        return reduce(lambda acc, c: acc * value + c, reversed(self.coeffs), 0)

    def __add__(self, other: "_Poly") -> "_Poly":
        size = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (0,) * (size - len(self.coeffs))
        b = other.coeffs + (0,) * (size - len(other.coeffs))
        return _Poly.make(
            self.flagged or other.flagged, [x + y for x, y in zip(a, b)]
        )

    def __mul__(self, other: "_Poly") -> "_Poly":
        if self.is_zero or other.is_zero:
            return _Poly(False, ())
        out = [0] * (len(self.coeffs) + len(other.coeffs))
        for i, x in enumerate(self.coeffs):
            for j, y in enumerate(other.coeffs):
                out[i + j] += x * y
        return _Poly.make(self.flagged or other.flagged, out)


def _to_poly(e: AnyExponent) -> _Poly:
    match e:
        case Finite(n):
            return _Poly.make(False, [n])
        case OmegaPlus(z):
            return _Poly.make(True, [z])
        case IntConst(z):
            return _Poly.make(False, [z])
        case Const(value):
            return _to_poly(value)
        case Nu():
            return _Poly(False, (0, 1))
        case Sum(left, right):
            return _to_poly(left) + _to_poly(right)
        case Prod(left, right):
            return _to_poly(left) * _to_poly(right)
    raise TypeError(f"not an exponent: {e!r}")


def _monomial(coefficient: int, degree: int) -> SymExponent:
    power: SymExponent = Nu()
    for _ in range(degree - 1):
        power = Prod(power, Nu())
    return power if coefficient == 1 else Prod(IntConst(coefficient), power)


def _from_poly(p: _Poly) -> AnyExponent:
    if p.degree <= 0:
        if p.flagged:
            return OmegaPlus(p.constant())
        if p.constant() < 0:
            raise ExponentError(f"negative exponent {p.constant()}")
        return Finite(p.constant())
    parts = [
        _monomial(c, d)
        for d, c in reversed(list(enumerate(p.coeffs)))
        if d > 0 and c != 0
    ]
    if p.flagged:
        parts.append(Const(OmegaPlus(p.constant())))
    elif p.constant() != 0:
        parts.append(IntConst(p.constant()))
    return reduce(Sum, parts)


def sym_canonical(e: AnyExponent) -> AnyExponent:
    """
    Returns the canonical form of an exponent.

    Constant expressions collapse to an Exponent; symbolic ones become a
    left-nested sum of monomials, highest degree first, followed by the
    constant term.

    Raises:
        ExponentError: If ``e`` is a negative integer constant.
    """

    return _from_poly(_to_poly(e))


def sym_add(a: AnyExponent, b: AnyExponent) -> AnyExponent:
    if is_exponent(a) and is_exponent(b):
        return exp_add(a, b)
    return _from_poly(_to_poly(a) + _to_poly(b))


def sym_mul(a: AnyExponent, b: AnyExponent) -> AnyExponent:
    if is_exponent(a) and is_exponent(b):
        return exp_mul(a, b)
    return _from_poly(_to_poly(a) * _to_poly(b))


def sym_equal(a: AnyExponent, b: AnyExponent) -> bool:
    """Compares two exponents as families for all large n."""
    return _to_poly(a) == _to_poly(b)


def shift_nu(e: AnyExponent, by: AnyExponent) -> AnyExponent:
    """Substitutes ``k + by`` for the parameter and canonicalizes."""
    return substitute_nu(e, Sum(Nu(), _as_sym(by)))


def substitute_nu(e: AnyExponent, value: AnyExponent) -> AnyExponent:
    """Replaces the parameter by ``value`` and canonicalizes."""

    def walk(node: AnyExponent) -> AnyExponent:
        match node:
            case Nu():
                return _as_sym(value)
            case Sum(left, right):
                return Sum(walk(left), walk(right))
            case Prod(left, right):
                return Prod(walk(left), walk(right))
        return node

    return sym_canonical(walk(e))


def _as_sym(e: AnyExponent) -> SymExponent:
    return Const(e) if is_exponent(e) else e


# --- thresholds, instantiation and limits --------------------------------


def _sign_bound(p: _Poly, shift: int) -> int:
    """Smallest n with the sign of p(N) - shift fixed for all N >= n!."""
    coeffs = list(p.coeffs) or [0]
    coeffs[0] -= shift
    lead = abs(coeffs[-1])
    bound = 2 + max((abs(c) for c in coeffs[:-1]), default=0) // max(lead, 1)
    n = 1
    while math.factorial(n) <= bound:
        n += 1
    return n


def _eventually(p: _Poly, holds, shift: int) -> int:
    """
    Smallest n such that ``holds(p(m!))`` for every m >= n, assuming it
    holds for all large m.
    """

    start = _sign_bound(p, shift)
    n = start
    while n > 1 and holds(p.at(math.factorial(n - 1))):
        n -= 1
    return n


def sym_threshold(e: AnyExponent, minimum: int = 0) -> int:
    """
    Computes the instantiation threshold of an exponent.

    Instantiating ``e`` at every n >= the returned value yields a valid
    exponent (at least ``minimum`` when finite) and agrees with its
    canonical form.

    Args:
        e (AnyExponent): The exponent to analyse.
        minimum (int): 0 in monoid signature, 1 in semigroup signature.

    Returns:
        int: The threshold N0 >= 1.

    Raises:
        IllFormedInstantiation: If no threshold exists.
    """

    threshold = 1
    for node in _prod_nodes(e):
        pl, pr = _to_poly(node.left), _to_poly(node.right)
        for scalar, other in ((pl, pr), (pr, pl)):
            if not scalar.flagged and not scalar.is_zero and other.flagged:
                threshold = max(
                    threshold, _eventually(scalar, lambda v: v != 0, 0)
                )
    p = _to_poly(e)
    if p.flagged:
        return threshold
    if p.degree <= 0:
        if p.constant() < minimum:
            raise IllFormedInstantiation(
                f"exponent evaluates to {p.constant()} < {minimum}"
            )
        return threshold
    if p.coeffs[-1] < 0:
        raise IllFormedInstantiation(
            f"exponent {render_exponent(e)} is eventually negative"
        )
    return max(
        threshold, _eventually(p, lambda v: v >= minimum, minimum)
    )


def sym_valid_from(e: AnyExponent, minimum: int = 0) -> int:
    """
    Least integer s >= 1 such that the canonical form of ``e`` is a valid
    exponent for every integer value k >= s of the parameter.

    Raises:
        IllFormedInstantiation: If ``e`` is eventually negative.
    """

    p = _to_poly(e)
    if p.flagged:
        return 1
    if p.degree <= 0:
        if p.constant() < minimum:
            raise IllFormedInstantiation(
                f"exponent evaluates to {p.constant()} < {minimum}"
            )
        return 1
    if p.coeffs[-1] < 0:
        raise IllFormedInstantiation(
            f"exponent {render_exponent(e)} is eventually negative"
        )
    shifted = _Poly.make(False, [p.coeffs[0] - minimum, *p.coeffs[1:]])
    start = 2 + max(abs(c) for c in shifted.coeffs[:-1]) // shifted.coeffs[-1]
    while start > 1 and shifted.at(start - 1) >= 0:
        start -= 1
    return start


def _prod_nodes(e: AnyExponent):
    match e:
        case Prod(left, right):
            yield e
            yield from _prod_nodes(left)
            yield from _prod_nodes(right)
        case Sum(left, right):
            yield from _prod_nodes(left)
            yield from _prod_nodes(right)


_Value = int | OmegaPlus


def _eval_add(a: _Value, b: _Value) -> _Value:
    if isinstance(a, int) and isinstance(b, int):
        return a + b
    if isinstance(a, int):
        a, b = b, a
    return OmegaPlus(a.z + (b if isinstance(b, int) else b.z))


def _eval_mul(a: _Value, b: _Value) -> _Value:
    if isinstance(a, int) and isinstance(b, int):
        return a * b
    if isinstance(a, int):
        a, b = b, a
    if isinstance(b, int):
        return 0 if b == 0 else OmegaPlus(a.z * b)
    return OmegaPlus(a.z * b.z)


def _evaluate(e: AnyExponent, nu: _Value) -> _Value:
    match e:
        case Finite(n):
            return n
        case OmegaPlus():
            return e
        case IntConst(z):
            return z
        case Const(value):
            return _evaluate(value, nu)
        case Nu():
            return nu
        case Sum(left, right):
            return _eval_add(_evaluate(left, nu), _evaluate(right, nu))
        case Prod(left, right):
            return _eval_mul(_evaluate(left, nu), _evaluate(right, nu))
    raise TypeError(f"not an exponent: {e!r}")


def sym_instantiate(e: AnyExponent, n: int, minimum: int = 0) -> Exponent:
    """
    Instantiates the parameter at n! and evaluates.

    Args:
        e (AnyExponent): A well-formed exponent.
        n (int): A positive integer at or above the threshold of ``e``.
        minimum (int): 0 in monoid signature, 1 in semigroup signature.

    Returns:
        Exponent: The value of the instance.

    Raises:
        IllFormedInstantiation: If ``n`` is below the threshold or the
            instance is a negative integer.
    """

    if n < 1:
        raise IllFormedInstantiation(f"instantiation index must be positive: {n}")
    if not is_symbolic(e):
        return e if is_exponent(e) else _value_to_exponent(_evaluate(e, 0), minimum)
    threshold = sym_threshold(e, minimum)
    if n < threshold:
        raise IllFormedInstantiation(
            f"n={n} is below the threshold {threshold} of {render_exponent(e)}"
        )
    return _value_to_exponent(_evaluate(e, math.factorial(n)), minimum)


def _value_to_exponent(value: _Value, minimum: int) -> Exponent:
    if isinstance(value, OmegaPlus):
        return value
    if value < minimum:
        raise IllFormedInstantiation(f"instance evaluates to {value} < {minimum}")
    return Finite(value)


def sym_limit(e: AnyExponent, minimum: int = 0) -> Exponent:
    """
    Takes the limit n -> infinity of the instances of ``e``.

    The parameter tends to omega, so every nonconstant family converges to
    omega plus its constant term.

    Raises:
        IllFormedInstantiation: If ``e`` is not well formed.
    """

    if is_exponent(e):
        return e
    sym_threshold(e, minimum)
    p = _to_poly(e)
    if p.degree <= 0:
        return _from_poly(p)
    return OmegaPlus(p.constant())


# --- textual syntax -----------------------------------------------------


def _render_omega(z: int) -> str:
    if z == 0:
        return "w"
    return f"w+{z}" if z > 0 else f"w-{-z}"


def _render_monomial(node: SymExponent) -> tuple[int, str]:
    """Splits a canonical monomial into its coefficient and its power."""
    coefficient = 1
    if isinstance(node, Prod) and isinstance(node.left, IntConst):
        coefficient, node = node.left.z, node.right
    degree = 0
    while isinstance(node, Prod):
        degree += 1
        node = node.left
    return coefficient, "*".join(["k"] * (degree + 1))


def _render_general(e: AnyExponent) -> str:
    match e:
        case Finite(n):
            return str(n)
        case OmegaPlus(z):
            return _render_omega(z) if z == 0 else f"({_render_omega(z)})"
        case IntConst(z):
            return str(z) if z >= 0 else f"(-{-z})"
        case Const(value):
            return _render_general(value)
        case Nu():
            return "k"
        case Sum(left, right):
            return f"({_render_general(left)}+{_render_general(right)})"
        case Prod(left, right):
            return f"({_render_general(left)}*{_render_general(right)})"
    raise TypeError(f"not an exponent: {e!r}")


def _render_sum(e: SymExponent) -> str:
    terms: list[SymExponent] = []
    while isinstance(e, Sum):
        terms.append(e.right)
        e = e.left
    terms.append(e)
    out = ""
    for term in reversed(terms):
        match term:
            case Const(OmegaPlus(z)):
                piece = _render_omega(z)
                out += f"+{piece}" if out else piece
            case IntConst(z):
                out += f"{'+' if out else ''}{z}" if z >= 0 else f"-{-z}"
            case _:
                coefficient, power = _render_monomial(term)
                sign = "-" if coefficient < 0 else ("+" if out else "")
                magnitude = abs(coefficient)
                out += sign + (power if magnitude == 1 else f"{magnitude}{power}")
    return out


def _is_canonical(e: AnyExponent) -> bool:
    try:
        return sym_canonical(e) == e
    except ExponentError:
        return False


def render_exponent(e: AnyExponent) -> str:
    """
    Renders an exponent in the term syntax, e.g. ``5``, ``w``, ``(w-1)``,
    ``k`` or ``(2k-1)``.
    """

    match e:
        case Finite(n):
            return str(n)
        case OmegaPlus(z):
            return "w" if z == 0 else f"({_render_omega(z)})"
        case Nu():
            return "k"
    if _is_canonical(e):
        return f"({_render_sum(e)})"
    return _render_general(e)
