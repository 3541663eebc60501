"""
Reads and writes proof scripts.

A script is line oriented::

    # comment
    # expect-reject s3
    sig monoid
    hyp h: x = x x
    step s1 = hyp h |- x = x x
    step s2 = ih |- x = x x^k
    goal: x = x x^w

Line structure is matched with regular expressions; every embedded term,
context, substitution and exponent goes through the term parser.
"""

import logging
import re
from pathlib import Path

from app.domain.entities import (
    AmbientJust,
    CtxJust,
    HypJust,
    IhJust,
    InductionJust,
    InstJust,
    IterateJust,
    Justification,
    LimitJust,
    MulJust,
    ProofScript,
    ReflJust,
    Step,
    SubstJust,
    SymJust,
    TransJust,
)
from app.domain.errors import FormatError, TermSyntaxError
from app.domain.exponents import render_exponent
from app.domain.terms import (
    Context,
    Pseudoidentity,
    Signature,
    Term,
    render_term,
)
from app.infrastructure.parsing.term_parser import (
    parse_bindings,
    parse_context,
    parse_exponent,
    parse_identity,
    parse_term,
)

logger = logging.getLogger(__name__)

_ID = r"[A-Za-z0-9_][\w.~'-]*"
_EXP = r"\([^)]*\)|\S+"

_SIG = re.compile(r"^sig\s+(?P<sig>monoid|semigroup)$")
_HYP = re.compile(rf"^hyp\s+(?P<name>{_ID})\s*:\s*(?P<identity>.+)$")
_STEP = re.compile(
    rf"^step\s+(?P<id>{_ID})\s*=\s*(?P<just>.+?)(?:\s*\|-\s*(?P<claim>.+))?$"
)
_GOAL = re.compile(r"^goal\s*:\s*(?P<identity>.+)$")
_EXPECT = re.compile(rf"^#\s*expect-reject\s+(?P<id>{_ID}|goal)\s*$")

_SUFFIX = r"(?:\s+subst\s+(?P<subst>.+?))?(?:\s+ctx\s+(?P<ctx>.+))?"
_JUSTIFICATIONS = {
    "hyp": re.compile(rf"^hyp\s+(?P<name>{_ID}){_SUFFIX}$"),
    "refl": re.compile(r"^refl(?:\s+(?P<term>.+))?$"),
    "sym": re.compile(rf"^sym\s+(?P<ref>{_ID})$"),
    "trans": re.compile(rf"^trans\s+(?P<left>{_ID})\s+(?P<right>{_ID})$"),
    "ctx": re.compile(rf"^ctx\s+(?P<ref>{_ID})\s+(?P<ctx>.+)$"),
    "subst": re.compile(rf"^subst\s+(?P<ref>{_ID})\s+(?P<subst>.+)$"),
    "ambient": re.compile(
        rf"^ambient\s+(?P<schema>\w+)"
        rf"(?:\s+a=(?P<a>{_EXP}))?(?:\s+b=(?P<b>{_EXP}))?{_SUFFIX}$"
    ),
    "ih": re.compile(r"^ih$"),
    "induction": re.compile(
        rf"^induction\s+base=(?P<base>{_ID})\s+step=(?P<step>{_ID})"
        r"(?:\s+from=(?P<start>\d+))?$"
    ),
    "limit": re.compile(rf"^limit\s+(?P<ref>{_ID})$"),
    "inst": re.compile(rf"^inst\s+(?P<ref>{_ID})\s+n=(?P<n>\d+)$"),
    "mul": re.compile(rf"^mul\s+(?P<left>{_ID})\s+(?P<right>{_ID})$"),
    "iterate": re.compile(
        rf"^iterate\s+(?P<ref>{_ID})\s+left=(?P<left>.+?)\s+right=(?P<right>.+?)"
        r"(?:\s+from=(?P<start>\d+))?$"
    ),
}


def _justification(text: str, sig: Signature) -> Justification:
    keyword = text.split(maxsplit=1)[0]
    pattern = _JUSTIFICATIONS.get(keyword)
    match = pattern.match(text) if pattern else None
    if match is None:
        raise FormatError(f"malformed justification {text!r}")
    m = match.groupdict()

    def sigma() -> dict[str, Term]:
        return parse_bindings(m["subst"], sig) if m.get("subst") else {}

    def context() -> Context | None:
        return parse_context(m["ctx"], sig) if m.get("ctx") else None

    match keyword:
        case "hyp":
            return HypJust(m["name"], sigma(), context())
        case "refl":
            return ReflJust(parse_term(m["term"], sig) if m["term"] else None)
        case "sym":
            return SymJust(m["ref"])
        case "trans":
            return TransJust(m["left"], m["right"])
        case "ctx":
            return CtxJust(m["ref"], context())
        case "subst":
            return SubstJust(m["ref"], sigma())
        case "ambient":
            params = {p: parse_exponent(m[p]) for p in ("a", "b") if m[p]}
            return AmbientJust(m["schema"], params, sigma(), context())
        case "ih":
            return IhJust()
        case "induction":
            return InductionJust(m["base"], m["step"], int(m["start"] or 1))
        case "limit":
            return LimitJust(m["ref"])
        case "inst":
            return InstJust(m["ref"], int(m["n"]))
        case "mul":
            return MulJust(m["left"], m["right"])
        case "iterate":
            return IterateJust(
                m["ref"],
                parse_term(m["left"], sig),
                parse_term(m["right"], sig),
                int(m["start"] or 1),
            )
    raise FormatError(f"unknown justification {keyword!r}")


def read_script(text: str, name: str = "") -> ProofScript:
    """
    Parses the text of a proof script.

    Args:
        text (str): The script.
        name (str): A display name, usually the file name.

    Returns:
        ProofScript: The parsed script.

    Raises:
        FormatError: On a malformed line, including term syntax errors.
    """

    sig = Signature.MONOID
    hypotheses: dict[str, Pseudoidentity] = {}
    steps: list[Step] = []
    goal = None
    expected = None
    seen_content = False
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            if expect := _EXPECT.match(line):
                expected = expect["id"]
            continue
        try:
            if m := _SIG.match(line):
                if seen_content:
                    raise FormatError("sig must come first", number)
                sig = Signature(m["sig"])
            elif m := _HYP.match(line):
                if m["name"] in hypotheses:
                    raise FormatError(f"duplicate hypothesis {m['name']}", number)
                hypotheses[m["name"]] = parse_identity(m["identity"], sig)
            elif m := _STEP.match(line):
                claim = parse_identity(m["claim"], sig) if m["claim"] else None
                steps.append(
                    Step(m["id"], _justification(m["just"].strip(), sig), claim, number)
                )
            elif m := _GOAL.match(line):
                goal = parse_identity(m["identity"], sig)
            else:
                raise FormatError(f"unrecognised line {line!r}", number)
        except TermSyntaxError as error:
            raise FormatError(str(error), number) from error
        except FormatError as error:
            if error.line:
                raise
            raise FormatError(str(error), number) from error
        seen_content = True
    if goal is None:
        raise FormatError("missing goal line")
    return ProofScript(sig, hypotheses, steps, goal, name, expected)


def load_script(path: str | Path) -> ProofScript:
    path = Path(path)
    logger.debug(f"Loading proof script {path}")
    return read_script(path.read_text(encoding="utf-8"), path.name)


# --- writing -------------------------------------------------------------


def _sigma_text(sigma) -> str:
    return ", ".join(f"{k}->{render_term(v)}" for k, v in sigma.items())


def _suffix(sigma, context: Context | None) -> str:
    text = ""
    if sigma:
        text += f" subst {_sigma_text(sigma)}"
    if context is not None:
        text += f" ctx {render_term(context.term)}"
    return text


def render_justification(just: Justification) -> str:
    match just:
        case HypJust(name, sigma, context):
            return f"hyp {name}{_suffix(sigma, context)}"
        case ReflJust(term):
            return "refl" if term is None else f"refl {render_term(term)}"
        case SymJust(ref):
            return f"sym {ref}"
        case TransJust(left, right):
            return f"trans {left} {right}"
        case CtxJust(ref, context):
            return f"ctx {ref} {render_term(context.term)}"
        case SubstJust(ref, sigma):
            return f"subst {ref} {_sigma_text(sigma)}"
        case AmbientJust(schema, params, sigma, context):
            values = "".join(f" {p}={render_exponent(e)}" for p, e in sorted(params.items()))
            return f"ambient {schema}{values}{_suffix(sigma, context)}"
        case IhJust():
            return "ih"
        case InductionJust(base, step, start):
            tail = f" from={start}" if start != 1 else ""
            return f"induction base={base} step={step}{tail}"
        case LimitJust(ref):
            return f"limit {ref}"
        case InstJust(ref, n):
            return f"inst {ref} n={n}"
        case MulJust(left, right):
            return f"mul {left} {right}"
        case IterateJust(ref, left, right, start):
            tail = f" from={start}" if start != 1 else ""
            return (
                f"iterate {ref} left={render_term(left)} "
                f"right={render_term(right)}{tail}"
            )
    raise TypeError(f"not a justification: {just!r}")


def render_script(script: ProofScript) -> str:
    """Writes a script back in the format accepted by ``read_script``."""
    lines = [f"sig {script.signature}"]
    lines += [f"hyp {name}: {hyp}" for name, hyp in script.hypotheses.items()]
    for step in script.steps:
        line = f"step {step.id} = {render_justification(step.justification)}"
        if step.claim is not None:
            line += f" |- {step.claim}"
        lines.append(line)
    if script.goal is not None:
        lines.append(f"goal: {script.goal}")
    return "\n".join(lines) + "\n"
