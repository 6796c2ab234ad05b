"""Propositions, guard formulas, and their two- and three-valued semantics.

Guards are propositional formulas over condition atoms plus the reserved
``UNC`` atom, which stands for "some relevant observation is uncertain".
Three-valued evaluation follows strong Kleene semantics, so a definite
``False`` operand decides a conjunction even when the other operand is
unknown.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping, Union

from .errors import GuardSyntaxError, InvalidDocument, UnboundAtom

#: Reserved atom id: true when any evaluated proposition is uncertain.
UNC_ID = "unc"

#: Reserved action id for the "no operation" output.
NOOP = "noop"

_ID_RE = re.compile(r"[a-z][a-z0-9_]*\Z")
# Spec bodies may additionally reference emitted actions as `act:<name>`.
_ACT_ID_RE = re.compile(r"act:[a-z][a-z0-9_]*\Z")


class TriBool(enum.Enum):
    """Three-valued truth: the third value marks an uncertain evaluation."""

    TRUE = "true"
    FALSE = "false"
    UNKNOWN = "unknown"

    @classmethod
    def from_bool(cls, value: bool) -> "TriBool":
        return cls.TRUE if value else cls.FALSE

    @property
    def is_definite(self) -> bool:
        return self is not TriBool.UNKNOWN

    def negate(self) -> "TriBool":
        if self is TriBool.UNKNOWN:
            return TriBool.UNKNOWN
        return TriBool.FALSE if self is TriBool.TRUE else TriBool.TRUE

    def and_(self, other: "TriBool") -> "TriBool":
        if TriBool.FALSE in (self, other):
            return TriBool.FALSE
        if TriBool.UNKNOWN in (self, other):
            return TriBool.UNKNOWN
        return TriBool.TRUE

    def or_(self, other: "TriBool") -> "TriBool":
        if TriBool.TRUE in (self, other):
            return TriBool.TRUE
        if TriBool.UNKNOWN in (self, other):
            return TriBool.UNKNOWN
        return TriBool.FALSE


@dataclass(frozen=True)
class Proposition:
    """An atomic condition with a canonical id and its source phrase."""

    id: str
    display_text: str = ""

    def __post_init__(self):
        if not _ID_RE.match(self.id):
            raise InvalidDocument(f"invalid proposition id {self.id!r}")
        if self.id == UNC_ID:
            raise InvalidDocument(f"{UNC_ID!r} is reserved and cannot be declared")


@dataclass(frozen=True)
class Atom:
    name: str


@dataclass(frozen=True)
class Not:
    operand: "Formula"


@dataclass(frozen=True)
class And:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Or:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Const:
    value: bool


Formula = Union[Atom, Not, And, Or, Const]

TRUE = Const(True)
FALSE = Const(False)
UNC = Atom(UNC_ID)


def atoms(formula: Formula) -> set[str]:
    """All atom names occurring in ``formula``, including ``unc``."""
    found: set[str] = set()
    stack = [formula]
    while stack:
        node = stack.pop()
        if isinstance(node, Atom):
            found.add(node.name)
        elif isinstance(node, Not):
            stack.append(node.operand)
        elif isinstance(node, (And, Or)):
            stack.append(node.left)
            stack.append(node.right)
    return found


def condition_atoms(formula: Formula) -> set[str]:
    """Atom names excluding the reserved ``unc`` atom."""
    return atoms(formula) - {UNC_ID}


def mentions_unc(formula: Formula) -> bool:
    return UNC_ID in atoms(formula)


def conjoin(parts: Iterable[Formula]) -> Formula:
    """Left-associated conjunction; empty input yields ``true``."""
    result: Formula | None = None
    for part in parts:
        result = part if result is None else And(result, part)
    return TRUE if result is None else result


def disjoin(parts: Iterable[Formula]) -> Formula:
    """Left-associated disjunction; empty input yields ``false``."""
    result: Formula | None = None
    for part in parts:
        result = part if result is None else Or(result, part)
    return FALSE if result is None else result


def negate(formula: Formula) -> Formula:
    """Negation with double-negation and constant collapsing."""
    if isinstance(formula, Not):
        return formula.operand
    if isinstance(formula, Const):
        return Const(not formula.value)
    return Not(formula)


def eval_classical(formula: Formula, valuation: Mapping[str, bool]) -> bool:
    """Standard boolean semantics; the ``unc`` atom reads as false.

    Raises :class:`UnboundAtom` for any other atom missing from ``valuation``.
    """
    if isinstance(formula, Const):
        return formula.value
    if isinstance(formula, Atom):
        if formula.name == UNC_ID:
            return bool(valuation.get(UNC_ID, False))
        try:
            return bool(valuation[formula.name])
        except KeyError:
            raise UnboundAtom(formula.name) from None
    if isinstance(formula, Not):
        return not eval_classical(formula.operand, valuation)
    if isinstance(formula, And):
        return eval_classical(formula.left, valuation) and eval_classical(formula.right, valuation)
    if isinstance(formula, Or):
        return eval_classical(formula.left, valuation) or eval_classical(formula.right, valuation)
    raise TypeError(f"not a formula node: {formula!r}")


def eval_three_valued(formula: Formula, valuation: Mapping[str, TriBool]) -> TriBool:
    """Strong Kleene semantics over a partial observation.

    The ``unc`` atom is derived, not observed: it evaluates definitely
    ``TRUE`` when at least one entry of ``valuation`` is ``UNKNOWN`` and
    definitely ``FALSE`` otherwise.
    """
    unc_value = TriBool.from_bool(any(v is TriBool.UNKNOWN for v in valuation.values()))
    return _eval_kleene(formula, valuation, unc_value)


def _eval_kleene(formula: Formula, valuation: Mapping[str, TriBool], unc_value: TriBool) -> TriBool:
    if isinstance(formula, Const):
        return TriBool.from_bool(formula.value)
    if isinstance(formula, Atom):
        if formula.name == UNC_ID:
            return unc_value
        try:
            return valuation[formula.name]
        except KeyError:
            raise UnboundAtom(formula.name) from None
    if isinstance(formula, Not):
        return _eval_kleene(formula.operand, valuation, unc_value).negate()
    if isinstance(formula, And):
        return _eval_kleene(formula.left, valuation, unc_value).and_(
            _eval_kleene(formula.right, valuation, unc_value)
        )
    if isinstance(formula, Or):
        return _eval_kleene(formula.left, valuation, unc_value).or_(
            _eval_kleene(formula.right, valuation, unc_value)
        )
    raise TypeError(f"not a formula node: {formula!r}")


def eval_over_label(formula: Formula, label: frozenset | set) -> bool:
    """Classical evaluation where an atom is true iff it belongs to ``label``."""
    return eval_classical(formula, {name: name in label for name in atoms(formula)})


def equivalent(left: Formula, right: Formula) -> bool:
    """Truth-table equivalence, treating ``unc`` as a free boolean atom."""
    names = sorted(atoms(left) | atoms(right))
    for bits in range(1 << len(names)):
        valuation = {name: bool(bits >> i & 1) for i, name in enumerate(names)}
        valuation[UNC_ID] = valuation.get(UNC_ID, False)
        if eval_classical(left, valuation) != eval_classical(right, valuation):
            return False
    return True


# --- concrete guard syntax -------------------------------------------------
#
# expr  := disj
# disj  := conj ("|" conj)*
# conj  := unary ("&" unary)*
# unary := "!" unary | "(" expr ")" | "true" | "false" | "UNC" | atom
#
# Atoms match [a-z][a-z0-9_]*; specification bodies may also use act:<name>.

_TOKEN_RE = re.compile(r"\s*(?:(?P<op>[!&|()])|(?P<word>UNC|act:[a-z][a-z0-9_]*|[a-z][a-z0-9_]*))")


def _tokenize(text: str) -> Iterator[tuple[str, str, int]]:
    pos = 0
    while pos < len(text):
        match = _TOKEN_RE.match(text, pos)
        if match is None:
            stripped = text[pos:].lstrip()
            if not stripped:
                break
            raise GuardSyntaxError(f"unexpected character {stripped[0]!r}", len(text) - len(stripped))
        if match.lastgroup == "op":
            yield "op", match.group("op"), match.start("op")
        else:
            yield "word", match.group("word"), match.start("word")
        pos = match.end()


class _Parser:
    def __init__(self, text: str, allow_actions: bool):
        self.text = text
        self.allow_actions = allow_actions
        self.tokens = list(_tokenize(text))
        self.index = 0

    def peek(self):
        return self.tokens[self.index] if self.index < len(self.tokens) else None

    def advance(self):
        token = self.peek()
        if token is None:
            raise GuardSyntaxError("unexpected end of input", len(self.text))
        self.index += 1
        return token

    def parse(self) -> Formula:
        node = self.disjunction()
        if self.peek() is not None:
            kind, value, pos = self.peek()
            raise GuardSyntaxError(f"unexpected token {value!r}", pos)
        return node

    def disjunction(self) -> Formula:
        node = self.conjunction()
        while self.peek() is not None and self.peek()[1] == "|":
            self.advance()
            node = Or(node, self.conjunction())
        return node

    def conjunction(self) -> Formula:
        node = self.unary()
        while self.peek() is not None and self.peek()[1] == "&":
            self.advance()
            node = And(node, self.unary())
        return node

    def unary(self) -> Formula:
        token = self.peek()
        if token is None:
            raise GuardSyntaxError("unexpected end of input", len(self.text))
        kind, value, pos = token
        if kind == "op" and value == "!":
            self.advance()
            return Not(self.unary())
        if kind == "op" and value == "(":
            self.advance()
            node = self.disjunction()
            closing = self.peek()
            if closing is None or closing[1] != ")":
                raise GuardSyntaxError("expected ')'", closing[2] if closing else len(self.text))
            self.advance()
            return node
        if kind == "word":
            self.advance()
            if value == "true":
                return TRUE
            if value == "false":
                return FALSE
            if value == "UNC":
                return UNC
            if value.startswith("act:"):
                if not self.allow_actions:
                    raise GuardSyntaxError("action atoms are not allowed in guards", pos)
                return Atom(value)
            return Atom(value)
        raise GuardSyntaxError(f"unexpected token {value!r}", pos)


def parse_guard(text: str, allow_actions: bool = False) -> Formula:
    """Parse the concrete guard syntax into a formula tree."""
    if not text.strip():
        raise GuardSyntaxError("empty formula", 0)
    return _Parser(text, allow_actions).parse()


def format_guard(formula: Formula) -> str:
    """Render a formula in the concrete guard syntax with minimal parentheses."""
    return _format(formula, 0)


_PRECEDENCE = {Or: 1, And: 2, Not: 3}


def _format(formula: Formula, parent_level: int) -> str:
    if isinstance(formula, Const):
        return "true" if formula.value else "false"
    if isinstance(formula, Atom):
        return "UNC" if formula.name == UNC_ID else formula.name
    if isinstance(formula, Not):
        return "!" + _format(formula.operand, _PRECEDENCE[Not])
    level = _PRECEDENCE[type(formula)]
    joiner = " | " if isinstance(formula, Or) else " & "
    text = joiner.join((_format(formula.left, level), _format(formula.right, level)))
    return f"({text})" if level < parent_level else text


def validate_atom_names(names: Iterable[str], allow_actions: bool = False) -> None:
    """Reject atom names outside the canonical identifier space."""
    for name in names:
        if _ID_RE.match(name):
            continue
        if allow_actions and _ACT_ID_RE.match(name):
            continue
        raise InvalidDocument(f"invalid atom name {name!r}")
