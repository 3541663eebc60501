"""
Parses omega-terms, contexts, pseudoidentities, substitutions and exponents.

The grammar lives in ``term_grammar.lark``; a single LALR parser is built on
first use and shared.  The transformer below turns lark trees into the
domain dataclasses of ``app.domain.terms`` and ``app.domain.exponents``.
"""

import functools

import lark
from lark.exceptions import UnexpectedInput, VisitError

from app.domain.errors import (
    ContextError,
    ExponentError,
    SignatureError,
    TermSyntaxError,
)
from app.domain.exponents import (
    OMEGA,
    AnyExponent,
    Const,
    Finite,
    IntConst,
    Nu,
    Prod,
    Sum,
    sym_canonical,
)
from app.domain.terms import (
    Context,
    Hole,
    Letter,
    Power,
    Pseudoidentity,
    Signature,
    Term,
    Unit,
    check_signature,
    hole_count,
    concat,
)


@functools.cache
def _parser() -> lark.Lark:
    """Create/retrieve a singleton Lark parser from the term grammar."""
    return lark.Lark.open(
        "term_grammar.lark",
        rel_to=__file__,
        parser="lalr",
        start=["term", "identity", "bindings", "exponent_value"],
    )


@lark.v_args(inline=True)
class _TermTransformer(lark.Transformer):
    def term(self, *factors: Term) -> Term:
        return concat(*factors)

    def letter(self, token: lark.Token) -> Term:
        return Letter(str(token))

    def unit(self) -> Term:
        return Unit()

    def hole(self) -> Term:
        return Hole()

    def power(self, base: Term, exp: AnyExponent) -> Term:
        try:
            return Power(base, sym_canonical(exp))
        except ExponentError as error:
            raise TermSyntaxError(str(error)) from error

    def exp_nat(self, token: lark.Token) -> AnyExponent:
        return Finite(int(token))

    def exp_omega(self) -> AnyExponent:
        return OMEGA

    def exp_nu(self) -> AnyExponent:
        return Nu()

    def s_int(self, token: lark.Token) -> AnyExponent:
        return IntConst(int(token))

    def s_omega(self) -> AnyExponent:
        return Const(OMEGA)

    def s_nu(self) -> AnyExponent:
        return Nu()

    def s_add(self, left: AnyExponent, right: AnyExponent) -> AnyExponent:
        return Sum(left, right)

    def s_sub(self, left: AnyExponent, right: AnyExponent) -> AnyExponent:
        return Sum(left, Prod(IntConst(-1), right))

    def s_neg(self, value: AnyExponent) -> AnyExponent:
        return Prod(IntConst(-1), value)

    def s_mul(self, left: AnyExponent, right: AnyExponent) -> AnyExponent:
        return Prod(left, right)

    def s_coef(self, token: lark.Token, value: AnyExponent) -> AnyExponent:
        return Prod(IntConst(int(token)), value)

    def identity(self, lhs: Term, rhs: Term) -> tuple[Term, Term]:
        return lhs, rhs

    def exponent_value(self, value: AnyExponent) -> AnyExponent:
        try:
            return sym_canonical(value)
        except ExponentError as error:
            raise TermSyntaxError(str(error)) from error

    def binding(self, token: lark.Token, image: Term) -> tuple[str, Term]:
        return str(token), image

    def bindings(self, *pairs: tuple[str, Term]) -> dict[str, Term]:
        return dict(pairs)


_transformer = _TermTransformer()


def _parse(text: str, start: str):
    try:
        tree = _parser().parse(text, start=start)
        return _transformer.transform(tree)
    except UnexpectedInput as error:
        raise TermSyntaxError(
            f"cannot parse {text!r}",
            text,
            max(getattr(error, "line", 1), 1),
            max(getattr(error, "column", 1), 1),
        ) from error
    except VisitError as error:
        original = error.orig_exc
        if isinstance(original, TermSyntaxError):
            raise TermSyntaxError(
                f"{original} in {text!r}", text
            ) from original
        raise


def _reject_holes(t: Term, text: str) -> None:
    if hole_count(t):
        raise TermSyntaxError(f"unexpected hole in {text!r}", text, 1, text.find("_") + 1)


def parse_term(text: str, signature: Signature = Signature.MONOID) -> Term:
    """
    Parses an omega-term.

    Args:
        text (str): The term text, e.g. ``(xy)^w x``.
        signature (Signature): The signature the term must live in.

    Returns:
        Term: The parsed term, with products flattened.

    Raises:
        TermSyntaxError: If the text is not a term of the signature.
    """

    t = _parse(text, "term")
    _reject_holes(t, text)
    _check(t, signature, text)
    return t


def parse_context(text: str, signature: Signature = Signature.MONOID) -> Context:
    """Parses a term with exactly one hole ``_``."""
    t = _parse(text, "term")
    _check(t, signature, text)
    try:
        return Context(t)
    except ContextError as error:
        raise TermSyntaxError(str(error), text) from error


def parse_identity(
    text: str, signature: Signature = Signature.MONOID
) -> Pseudoidentity:
    """Parses ``u = v``."""
    lhs, rhs = _parse(text, "identity")
    for side in (lhs, rhs):
        _reject_holes(side, text)
        _check(side, signature, text)
    return Pseudoidentity(lhs, rhs, signature)


def parse_bindings(
    text: str, signature: Signature = Signature.MONOID
) -> dict[str, Term]:
    """Parses a substitution such as ``x->x^w, y->x^w y``."""
    sigma = _parse(text, "bindings")
    for image in sigma.values():
        _reject_holes(image, text)
        _check(image, signature, text)
    return sigma


def parse_exponent(text: str) -> AnyExponent:
    """Parses an exponent such as ``w``, ``3`` or ``(k-1)``."""
    return _parse(text, "exponent_value")


def _check(t: Term, signature: Signature, text: str) -> None:
    try:
        check_signature(t, signature)
    except SignatureError as error:
        raise TermSyntaxError(str(error), text) from error
