"""Terms, formulas and sequents of the bounded theory, with their
s-expression surface syntax.

Variables are numbered ``x1, x2, ...``. Terms are built from ``0``,
variables and the function symbols in :data:`ARITY`; formulas use the
predicates ``<=``, ``=``, ``E``, negation on atoms only, ``and``/``or``,
sharply bounded ``all`` and bounded ``ex``.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from typing import Iterable, Mapping, Union

from .sexpr import Atom as SAtom
from .sexpr import ParseError, SExpr, SList, read_one

ARITY: dict[str, int] = {
    "S": 1,
    "half": 1,
    "len": 1,
    "s0": 1,
    "s1": 1,
    "parity": 1,
    "+": 2,
    "*": 2,
    "#": 2,
    "bp": 2,
    "cond": 3,
}
FUNCTIONS = tuple(ARITY)

PREDICATES: dict[str, int] = {"<=": 2, "=": 2, "E": 1}

_KEYWORDS = set(ARITY) | set(PREDICATES) | {
    "not", "and", "or", "all", "ex", "seq", "ants", "sucs", "0",
}
_VAR_RE = re.compile(r"x([1-9][0-9]*)\Z")
_NAME_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_']*\Z")


# ---------------------------------------------------------------- terms


@dataclass(frozen=True)
class Zero:
    def __str__(self) -> str:
        return "0"


@dataclass(frozen=True)
class Var:
    index: int

    def __post_init__(self):
        if not isinstance(self.index, int) or self.index < 1:
            raise ValueError(f"variable index must be >= 1, got {self.index!r}")

    def __str__(self) -> str:
        return f"x{self.index}"


@dataclass(frozen=True)
class App:
    """Application of a function symbol from :data:`ARITY`."""

    op: str
    args: tuple["Term", ...]

    def __post_init__(self):
        if self.op not in ARITY:
            raise ValueError(f"unknown function symbol {self.op!r}")
        if len(self.args) != ARITY[self.op]:
            raise ValueError(f"{self.op} takes {ARITY[self.op]} arguments, got {len(self.args)}")

    def __str__(self) -> str:
        return print_term(self)


Term = Union[Zero, Var, App]
ZERO = Zero()


def app(op: str, *args: Term) -> App:
    return App(op, tuple(args))


def is_sharply_bounded(t: Term) -> bool:
    return isinstance(t, App) and t.op == "len"


def numeral(n: int) -> Term:
    """Shortest ``0``/``s0``/``s1`` notation for ``n``, low bit outermost."""
    if n < 0:
        raise ValueError("numerals are natural numbers")
    t: Term = ZERO
    for bit in bin(n)[2:] if n else "":
        t = App("s1" if bit == "1" else "s0", (t,))
    return t


def numeral_value(t: Term) -> int:
    """Read back a term built only from ``0``, ``s0`` and ``s1``."""
    bits = []
    while isinstance(t, App):
        if t.op == "s0":
            bits.append(0)
        elif t.op == "s1":
            bits.append(1)
        else:
            raise ValueError(f"not a numeral: {print_term(t)}")
        t = t.args[0]
    if not isinstance(t, Zero):
        raise ValueError(f"not a numeral: {t}")
    value = 0
    for b in reversed(bits):
        value = 2 * value + b
    return value


# ------------------------------------------------------------- formulas


@dataclass(frozen=True)
class Atom:
    """Atomic formula ``pred(args)``; ``pred`` is ``<=``, ``=`` or ``E``."""

    pred: str
    args: tuple[Term, ...]

    def __post_init__(self):
        if self.pred not in PREDICATES:
            raise ValueError(f"unknown predicate {self.pred!r}")
        if len(self.args) != PREDICATES[self.pred]:
            raise ValueError(f"{self.pred} takes {PREDICATES[self.pred]} arguments")

    def __str__(self) -> str:
        return print_formula(self)


@dataclass(frozen=True)
class Not:
    atom: Atom

    def __post_init__(self):
        if not isinstance(self.atom, Atom):
            raise ValueError("negation applies to atomic formulas only")

    def __str__(self) -> str:
        return print_formula(self)


@dataclass(frozen=True)
class And:
    left: "Formula"
    right: "Formula"

    def __str__(self) -> str:
        return print_formula(self)


@dataclass(frozen=True)
class Or:
    left: "Formula"
    right: "Formula"

    def __str__(self) -> str:
        return print_formula(self)


@dataclass(frozen=True)
class All:
    """``all x<var> <= bound . body``; the bound must have the form ``(len t)``."""

    var: int
    bound: Term
    body: "Formula"

    def __post_init__(self):
        if not is_sharply_bounded(self.bound):
            raise ValueError("universal quantifier bound must be sharply bounded (len t)")

    def __str__(self) -> str:
        return print_formula(self)


@dataclass(frozen=True)
class Ex:
    var: int
    bound: Term
    body: "Formula"

    def __str__(self) -> str:
        return print_formula(self)


Formula = Union[Atom, Not, And, Or, All, Ex]


def le(a: Term, b: Term) -> Atom:
    return Atom("<=", (a, b))


def eq(a: Term, b: Term) -> Atom:
    return Atom("=", (a, b))


def E(t: Term) -> Atom:
    return Atom("E", (t,))


@dataclass(frozen=True)
class Sequent:
    ants: tuple[Formula, ...] = ()
    sucs: tuple[Formula, ...] = ()

    def formulas(self) -> tuple[Formula, ...]:
        return self.ants + self.sucs

    def __str__(self) -> str:
        return print_sequent(self)


def sequent(ants: Iterable[Formula] = (), sucs: Iterable[Formula] = ()) -> Sequent:
    return Sequent(tuple(ants), tuple(sucs))


# -------------------------------------------------------------- printing


def print_term(t: Term) -> str:
    if isinstance(t, Zero):
        return "0"
    if isinstance(t, Var):
        return f"x{t.index}"
    return "(" + " ".join([t.op] + [print_term(a) for a in t.args]) + ")"


def print_formula(f: Formula) -> str:
    if isinstance(f, Atom):
        return "(" + " ".join([f.pred] + [print_term(a) for a in f.args]) + ")"
    if isinstance(f, Not):
        return f"(not {print_formula(f.atom)})"
    if isinstance(f, And):
        return f"(and {print_formula(f.left)} {print_formula(f.right)})"
    if isinstance(f, Or):
        return f"(or {print_formula(f.left)} {print_formula(f.right)})"
    if isinstance(f, All):
        return f"(all x{f.var} {print_term(f.bound)} {print_formula(f.body)})"
    if isinstance(f, Ex):
        return f"(ex x{f.var} {print_term(f.bound)} {print_formula(f.body)})"
    raise TypeError(f"not a formula: {f!r}")


def print_sequent(s: Sequent) -> str:
    ants = " ".join(print_formula(f) for f in s.ants)
    sucs = " ".join(print_formula(f) for f in s.sucs)
    return f"(seq (ants{' ' if ants else ''}{ants}) (sucs{' ' if sucs else ''}{sucs}))"


def show(obj) -> str:
    """Print a term, formula or sequent."""
    if isinstance(obj, Sequent):
        return print_sequent(obj)
    if isinstance(obj, (Zero, Var, App)):
        return print_term(obj)
    return print_formula(obj)


# --------------------------------------------------------------- parsing


class _Names:
    """Assigns indices to symbolic variable names (``x``, ``y``, ...).

    Names get fresh indices above every explicit ``x<k>`` in the input, in
    order of first appearance.
    """

    def __init__(self, text: str):
        explicit = [int(m.group(1)) for m in re.finditer(r"(?<![A-Za-z0-9_'])x([1-9][0-9]*)(?![A-Za-z0-9_'])", text)]
        self.next = max(explicit, default=0) + 1
        self.table: dict[str, int] = {}

    def index(self, atom: SAtom) -> int:
        m = _VAR_RE.match(atom.text)
        if m:
            return int(m.group(1))
        if atom.text in _KEYWORDS or not _NAME_RE.match(atom.text):
            raise ParseError(f"expected a variable, got {atom.text!r}", atom.pos)
        if atom.text not in self.table:
            self.table[atom.text] = self.next
            self.next += 1
        return self.table[atom.text]


def _term(e: SExpr, names: _Names) -> Term:
    if isinstance(e, SAtom):
        if e.text == "0":
            return ZERO
        if e.text in ARITY or e.text in _KEYWORDS:
            raise ParseError(f"symbol {e.text!r} used as a term", e.pos)
        if e.text.isdigit():
            raise ParseError(f"bare numeral {e.text!r}; write it with s0/s1", e.pos)
        return Var(names.index(e))
    head = e.head()
    if head is None:
        raise ParseError("expected a function symbol", e.pos)
    if head not in ARITY:
        raise ParseError(f"unknown function symbol {head!r}", e.pos)
    args = e.items[1:]
    if len(args) != ARITY[head]:
        raise ParseError(
            f"arity error: {head} takes {ARITY[head]} argument(s), got {len(args)}",
            e.pos,
            category="arity",
        )
    return App(head, tuple(_term(a, names) for a in args))


def _atom(e: SExpr, names: _Names) -> Atom:
    head = e.head() if isinstance(e, SList) else None
    if head not in PREDICATES:
        raise ParseError("negation applies to atomic formulas only", e.pos, category="negation")
    args = e.items[1:]
    if len(args) != PREDICATES[head]:
        raise ParseError(f"arity error: {head} takes {PREDICATES[head]} argument(s)", e.pos, category="arity")
    return Atom(head, tuple(_term(a, names) for a in args))


def _formula(e: SExpr, names: _Names) -> Formula:
    if not isinstance(e, SList) or e.head() is None:
        raise ParseError("expected a formula", e.pos)
    head = e.head()
    items = e.items
    if head in PREDICATES:
        return _atom(e, names)
    if head == "not":
        if len(items) != 2:
            raise ParseError("arity error: not takes 1 argument", e.pos, category="arity")
        return Not(_atom(items[1], names))
    if head in ("and", "or"):
        if len(items) != 3:
            raise ParseError(f"arity error: {head} takes 2 arguments", e.pos, category="arity")
        cls = And if head == "and" else Or
        return cls(_formula(items[1], names), _formula(items[2], names))
    if head in ("all", "ex"):
        if len(items) != 4 or not isinstance(items[1], SAtom):
            raise ParseError(f"expected ({head} <var> <bound> <formula>)", e.pos, category="arity")
        var = names.index(items[1])
        bound = _term(items[2], names)
        body = _formula(items[3], names)
        if head == "all":
            if not is_sharply_bounded(bound):
                raise ParseError(
                    "universal bound is not sharply bounded; expected (len t)", items[2].pos, category="bound"
                )
            return All(var, bound, body)
        return Ex(var, bound, body)
    raise ParseError(f"unknown formula head {head!r}", e.pos)


def _sequent(e: SExpr, names: _Names) -> Sequent:
    if not (isinstance(e, SList) and e.head() == "seq" and len(e) == 3):
        raise ParseError("expected (seq (ants ...) (sucs ...))", e.pos)
    parts = []
    for item, tag in zip(e.items[1:], ("ants", "sucs")):
        if not (isinstance(item, SList) and item.head() == tag):
            raise ParseError(f"expected ({tag} ...)", item.pos)
        parts.append(tuple(_formula(f, names) for f in item.items[1:]))
    return Sequent(parts[0], parts[1])


def term_from_sexpr(e: SExpr, names: _Names | None = None) -> Term:
    return _term(e, names or _Names(""))


def formula_from_sexpr(e: SExpr, names: _Names | None = None) -> Formula:
    return _formula(e, names or _Names(""))


def sequent_from_sexpr(e: SExpr, names: _Names | None = None) -> Sequent:
    return _sequent(e, names or _Names(""))


def parse_term(text: str) -> Term:
    return _term(read_one(text), _Names(text))


def parse_formula(text: str) -> Formula:
    return _formula(read_one(text), _Names(text))


def parse_sequent(text: str) -> Sequent:
    return _sequent(read_one(text), _Names(text))


# ------------------------------------------------------------- variables


def free_vars(obj) -> frozenset[int]:
    """Free variable indices of a term, formula or sequent."""
    if isinstance(obj, Zero):
        return frozenset()
    if isinstance(obj, Var):
        return frozenset((obj.index,))
    if isinstance(obj, (App, Atom)):
        return frozenset().union(*(free_vars(a) for a in obj.args))
    if isinstance(obj, Not):
        return free_vars(obj.atom)
    if isinstance(obj, (And, Or)):
        return free_vars(obj.left) | free_vars(obj.right)
    if isinstance(obj, (All, Ex)):
        return free_vars(obj.bound) | (free_vars(obj.body) - {obj.var})
    if isinstance(obj, Sequent):
        return frozenset().union(*(free_vars(f) for f in obj.formulas()))
    raise TypeError(f"unexpected object {obj!r}")


def all_vars(obj) -> frozenset[int]:
    """Every variable index occurring in ``obj``, free or bound."""
    if isinstance(obj, (All, Ex)):
        return frozenset((obj.var,)) | all_vars(obj.bound) | all_vars(obj.body)
    if isinstance(obj, Not):
        return all_vars(obj.atom)
    if isinstance(obj, (And, Or)):
        return all_vars(obj.left) | all_vars(obj.right)
    if isinstance(obj, Sequent):
        return frozenset().union(*(all_vars(f) for f in obj.formulas()))
    return free_vars(obj)


def _fresh(avoid: Iterable[int]) -> int:
    avoid = set(avoid)
    i = 1
    while i in avoid:
        i += 1
    return i


def substitute(obj, var: int, t: Term):
    """Replace free occurrences of ``x<var>`` by ``t``, renaming binders
    that would capture a variable of ``t``."""
    return substitute_many(obj, {var: t})


def substitute_many(obj, mapping: Mapping[int, Term]):
    """Simultaneous capture-avoiding substitution."""
    if not mapping:
        return obj
    if isinstance(obj, Zero):
        return obj
    if isinstance(obj, Var):
        return mapping.get(obj.index, obj)
    if isinstance(obj, App):
        return App(obj.op, tuple(substitute_many(a, mapping) for a in obj.args))
    if isinstance(obj, Atom):
        return Atom(obj.pred, tuple(substitute_many(a, mapping) for a in obj.args))
    if isinstance(obj, Not):
        return Not(substitute_many(obj.atom, mapping))
    if isinstance(obj, (And, Or)):
        return type(obj)(substitute_many(obj.left, mapping), substitute_many(obj.right, mapping))
    if isinstance(obj, (All, Ex)):
        bound = substitute_many(obj.bound, mapping)
        inner = {k: v for k, v in mapping.items() if k != obj.var and k in free_vars(obj.body)}
        if not inner:
            return type(obj)(obj.var, bound, obj.body)
        incoming = frozenset().union(*(free_vars(v) for v in inner.values()))
        var, body = obj.var, obj.body
        if var in incoming:
            new = _fresh(all_vars(obj) | incoming | set(inner))
            body = substitute_many(body, {var: Var(new)})
            var = new
        return type(obj)(var, bound, substitute_many(body, inner))
    if isinstance(obj, Sequent):
        return Sequent(
            tuple(substitute_many(f, mapping) for f in obj.ants),
            tuple(substitute_many(f, mapping) for f in obj.sucs),
        )
    raise TypeError(f"unexpected object {obj!r}")


def subterms(t: Term):
    """Subterm occurrences of ``t`` in pre-order, including ``t`` itself."""
    yield t
    if isinstance(t, App):
        for a in t.args:
            yield from subterms(a)


def formula_terms(f: Formula):
    """Top-level argument terms and quantifier bounds occurring in ``f``."""
    if isinstance(f, Atom):
        yield from f.args
    elif isinstance(f, Not):
        yield from f.atom.args
    elif isinstance(f, (And, Or)):
        yield from formula_terms(f.left)
        yield from formula_terms(f.right)
    elif isinstance(f, (All, Ex)):
        yield f.bound
        yield from formula_terms(f.body)


def term_size(t: Term) -> int:
    return sum(1 for _ in subterms(t))


def term_depth(t: Term) -> int:
    if isinstance(t, App):
        return 1 + max(term_depth(a) for a in t.args)
    return 0


# --------------------------------------------------------- classification


class FormClass(enum.Enum):
    PURE1 = "Pure1"
    SHARPLY_BOUNDED_ALL = "SharplyBoundedAll"
    QUANTIFIER_FREE = "QuantifierFree"
    E_ATOM = "EAtom"
    NOT_ONE_FORM = "NotOneForm"


def is_quantifier_free(f: Formula) -> bool:
    if isinstance(f, (Atom, Not)):
        return True
    if isinstance(f, (And, Or)):
        return is_quantifier_free(f.left) and is_quantifier_free(f.right)
    return False


def contains_e(f: Formula) -> bool:
    if isinstance(f, Atom):
        return f.pred == "E"
    if isinstance(f, Not):
        return f.atom.pred == "E"
    if isinstance(f, (And, Or)):
        return contains_e(f.left) or contains_e(f.right)
    return contains_e(f.body)


def _matrix(f: Formula) -> bool:
    return is_quantifier_free(f) and not contains_e(f)


def classify_form(f: Formula) -> FormClass:
    if isinstance(f, Atom) and f.pred == "E":
        return FormClass.E_ATOM
    if _matrix(f):
        return FormClass.QUANTIFIER_FREE
    if isinstance(f, All) and _matrix(f.body):
        return FormClass.SHARPLY_BOUNDED_ALL
    if isinstance(f, Ex) and isinstance(f.body, All) and _matrix(f.body.body):
        return FormClass.PURE1
    return FormClass.NOT_ONE_FORM


def is_one_form_or_e(f: Formula) -> bool:
    return classify_form(f) is not FormClass.NOT_ONE_FORM
