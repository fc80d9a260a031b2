"""Sequent proofs: representation, surface syntax and checking.

Principal formulas sit at the front of the antecedent and at the end of
the succedent, exactly as the rules are printed; moving formulas
elsewhere takes explicit exchanges. A proof is accepted when every
inference is correct, every formula is a 1-form or ``E t``, and the proof
is in free variable normal form (each eigenvariable belongs to exactly one
``all-r``/``ex-l`` inference and occurs only above it).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator, Optional

from .axioms import FAMILIES, match_axiom
from .coding import TAG_LIST, TAG_PROOF, DecodeError, decode_sequent, decode_term, encode_sequent, encode_term, pack, unpack
from .sexpr import Atom as SAtom
from .sexpr import ParseError, SExpr, SList, read_one
from .syntax import (
    All,
    And,
    Atom,
    E,
    Ex,
    Formula,
    Not,
    Or,
    Sequent,
    Term,
    Var,
    _Names,
    classify_form,
    FormClass,
    free_vars,
    print_formula,
    print_sequent,
    print_term,
    sequent_from_sexpr,
    substitute,
    term_from_sexpr,
)

RULES = (
    "identity",
    "axiom",
    "weak-l",
    "weak-r",
    "contr-l",
    "contr-r",
    "exch-l",
    "exch-r",
    "neg-l",
    "neg-r",
    "and-l1",
    "and-l2",
    "and-r",
    "or-l",
    "or-r1",
    "or-r2",
    "all-l",
    "all-r",
    "ex-l",
    "ex-r",
    "cut",
)
PREMISES = {r: 1 for r in RULES}
PREMISES.update({"identity": 0, "axiom": 0, "and-r": 2, "or-l": 2, "cut": 2})
EIGEN_RULES = ("all-r", "ex-l")

Path = tuple[int, ...]


@dataclass(frozen=True)
class Proof:
    rule: str
    sequent: Sequent
    premises: tuple["Proof", ...] = ()
    axiom: Optional[str] = None
    inst: tuple[tuple[int, Term], ...] = ()

    def nodes(self, path: Path = ()) -> Iterator[tuple[Path, "Proof"]]:
        """Pre-order traversal with child-index paths."""
        yield path, self
        for i, p in enumerate(self.premises):
            yield from p.nodes(path + (i,))

    def size(self) -> int:
        return sum(1 for _ in self.nodes())


def path_str(path: Path) -> str:
    return "root" if not path else "root." + ".".join(map(str, path))


class ProofError(ValueError):
    """A rejected proof. ``category`` names the kind of defect."""

    def __init__(self, category: str, message: str, path: Path = ()):
        self.category = category
        self.path = path
        self.message = message
        super().__init__(f"[{category}] at {path_str(path)}: {message}")


@dataclass(frozen=True)
class ProofNodeMeta:
    path: Path
    rule: str
    k: int
    code: int


@dataclass
class CheckedProof:
    proof: Proof
    end_sequent: Sequent
    meta: dict[Path, ProofNodeMeta] = field(default_factory=dict)


# ------------------------------------------------------------- coding


def encode_proof(p: Proof) -> int:
    rule = RULES.index(p.rule)
    ax = FAMILIES.index(p.axiom) + 1 if p.axiom else 0
    inst = pack((TAG_LIST, *(n for v, t in p.inst for n in (v, encode_term(t)))))
    return pack((TAG_PROOF, rule, ax, encode_sequent(p.sequent), inst, *(encode_proof(q) for q in p.premises)))


def decode_proof(code: int) -> Proof:
    fields = unpack(code)
    if len(fields) < 5 or fields[0] != TAG_PROOF or fields[1] >= len(RULES) or fields[2] > len(FAMILIES):
        raise DecodeError(f"code {code} is not a proof")
    inst_fields = unpack(fields[4])
    if not inst_fields or inst_fields[0] != TAG_LIST or len(inst_fields) % 2 != 1:
        raise DecodeError("bad instantiation list")
    pairs = inst_fields[1:]
    inst = tuple((pairs[i], decode_term(pairs[i + 1])) for i in range(0, len(pairs), 2))
    return Proof(
        RULES[fields[1]],
        decode_sequent(fields[3]),
        tuple(decode_proof(c) for c in fields[5:]),
        FAMILIES[fields[2] - 1] if fields[2] else None,
        inst,
    )


# -------------------------------------------------------- surface syntax


def _proof(e: SExpr, names: _Names, path: Path) -> Proof:
    where = path_str(path)
    if not (isinstance(e, SList) and e.head() == "proof" and len(e) >= 4):
        raise ParseError(f"{where}: expected (proof <rule> (concl ...) [(inst ...)] (prems ...))", e.pos)
    tag = e.items[1]
    axiom = None
    if isinstance(tag, SList) and tag.head() == "axiom" and len(tag) == 2 and isinstance(tag.items[1], SAtom):
        rule, axiom = "axiom", tag.items[1].text
        if axiom not in FAMILIES:
            raise ParseError(f"{where}: unknown axiom {axiom!r}", tag.pos, category="rule")
    elif isinstance(tag, SAtom) and tag.text in RULES:
        rule = tag.text
    else:
        shown = tag.text if isinstance(tag, SAtom) else "(...)"
        raise ParseError(f"{where}: unknown rule tag {shown!r}", tag.pos, category="rule")
    concl = e.items[2]
    if not (isinstance(concl, SList) and concl.head() == "concl" and len(concl) == 2):
        raise ParseError(f"{where}: expected (concl <sequent>)", concl.pos)
    seq = sequent_from_sexpr(concl.items[1], names)
    rest = list(e.items[3:])
    inst: list[tuple[int, Term]] = []
    if rest and isinstance(rest[0], SList) and rest[0].head() == "inst":
        for pair in rest.pop(0).items[1:]:
            if not (isinstance(pair, SList) and len(pair) == 2 and isinstance(pair.items[0], SAtom)):
                raise ParseError(f"{where}: expected (x<k> <term>) in inst", pair.pos)
            inst.append((names.index(pair.items[0]), term_from_sexpr(pair.items[1], names)))
    if len(rest) != 1 or not (isinstance(rest[0], SList) and rest[0].head() == "prems"):
        raise ParseError(f"{where}: expected a single (prems ...)", e.pos)
    prem_forms = rest[0].items[1:]
    if len(prem_forms) != PREMISES[rule]:
        raise ParseError(
            f"{where}: {rule} takes {PREMISES[rule]} premise(s), got {len(prem_forms)}",
            rest[0].pos,
            category="premise-count",
        )
    premises = tuple(_proof(q, names, path + (i,)) for i, q in enumerate(prem_forms))
    return Proof(rule, seq, premises, axiom, tuple(inst))


def parse_proof(text: str) -> Proof:
    return _proof(read_one(text), _Names(text), ())


def print_proof(p: Proof, indent: int = 0) -> str:
    pad = " " * indent
    tag = f"(axiom {p.axiom})" if p.axiom else p.rule
    lines = [f"{pad}(proof {tag}", f"{pad}  (concl {print_sequent(p.sequent)})"]
    if p.inst:
        pairs = " ".join(f"(x{v} {print_term(t)})" for v, t in p.inst)
        lines.append(f"{pad}  (inst {pairs})")
    if p.premises:
        lines.append(f"{pad}  (prems")
        lines.extend(print_proof(q, indent + 4) for q in p.premises)
        lines[-1] += "))"
    else:
        lines.append(f"{pad}  (prems))")
    return "\n".join(lines)


# ---------------------------------------------------------- rule checks


def alpha_eq(f: Formula, g: Formula, left: dict | None = None, right: dict | None = None) -> bool:
    """Equality up to renaming of bound variables."""
    left = left or {}
    right = right or {}

    def term_eq(s: Term, t: Term) -> bool:
        if isinstance(s, Var) and isinstance(t, Var):
            a, b = left.get(s.index), right.get(t.index)
            if a is None and b is None:
                return s.index == t.index
            return a is not None and a == b
        if type(s) is not type(t):
            return False
        if isinstance(s, Var) or not hasattr(s, "op"):
            return True
        return s.op == t.op and all(term_eq(x, y) for x, y in zip(s.args, t.args))

    if type(f) is not type(g):
        return False
    if isinstance(f, Atom):
        return f.pred == g.pred and all(term_eq(x, y) for x, y in zip(f.args, g.args))
    if isinstance(f, Not):
        return alpha_eq(f.atom, g.atom, left, right)
    if isinstance(f, (And, Or)):
        return alpha_eq(f.left, g.left, left, right) and alpha_eq(f.right, g.right, left, right)
    if not term_eq(f.bound, g.bound):
        return False
    depth = len(left) + 1
    return alpha_eq(f.body, g.body, {**left, f.var: depth}, {**right, g.var: depth})


def _fail(category: str, message: str, path: Path):
    raise ProofError(category, message, path)


def _need(cond: bool, message: str, path: Path, category: str = "principal-mismatch"):
    if not cond:
        raise ProofError(category, message, path)


def _check_axiom(p: Proof, path: Path) -> None:
    found = match_axiom(p.sequent, p.axiom)
    if found is None:
        target = f"axiom {p.axiom}" if p.axiom else "any axiom"
        _fail("axiom-mismatch", f"{print_sequent(p.sequent)} is not an instance of {target}", path)
    schema, sub = found
    for var, term in p.inst:
        if var in sub and sub[var] != term:
            _fail("inst-mismatch", f"x{var} is instantiated by {print_term(sub[var])}, not {print_term(term)}", path)


def _eigen_fresh(a: int, others: list, path: Path, rule: str) -> None:
    for f in others:
        if a in free_vars(f):
            _fail("eigenvariable", f"{rule}: eigenvariable x{a} occurs in {show_any(f)}", path)


def show_any(obj) -> str:
    if isinstance(obj, (Atom, Not, And, Or, All, Ex)):
        return print_formula(obj)
    return print_term(obj)


def _inst_hint(p: Proof, var: int, term: Term, path: Path) -> None:
    for v, t in p.inst:
        if v == var and t != term:
            _fail("inst-mismatch", f"inst gives x{v} := {print_term(t)}, inference uses {print_term(term)}", path)


def check_rule(p: Proof, path: Path = ()) -> None:
    """Check the single inference at ``p`` against its premises' end
    sequents. Raises :class:`ProofError`."""
    if p.rule not in RULES:
        _fail("unknown-rule", f"unknown rule {p.rule!r}", path)
    if len(p.premises) != PREMISES[p.rule]:
        _fail("premise-count", f"{p.rule} takes {PREMISES[p.rule]} premise(s), got {len(p.premises)}", path)
    c = p.sequent
    ca, cs = c.ants, c.sucs
    prem = [q.sequent for q in p.premises]
    rule = p.rule

    if rule == "identity":
        _need(len(ca) == 1 and len(cs) == 1 and ca[0] == cs[0], "identity must be a -> a", path)
        _need(isinstance(ca[0], Atom), f"identity on non-atomic {print_formula(ca[0])}", path, "not-atomic")
        return
    if rule == "axiom":
        _check_axiom(p, path)
        return

    if rule in ("and-r", "or-l", "cut"):
        left, right = prem
    else:
        left = prem[0]
    pa, ps = left.ants, left.sucs

    if rule == "weak-l":
        _need(len(ca) == len(pa) + 1 and ca[1:] == pa and cs == ps, "weak-l must add one antecedent in front", path)
    elif rule == "weak-r":
        _need(len(cs) == len(ps) + 1 and cs[:-1] == ps and ca == pa, "weak-r must add one succedent at the end", path)
    elif rule == "contr-l":
        _need(len(pa) >= 2 and pa[0] == pa[1] and ca == pa[1:] and cs == ps, "contr-l must merge A, A in front", path)
    elif rule == "contr-r":
        _need(len(ps) >= 2 and ps[-1] == ps[-2] and cs == ps[:-1] and ca == pa, "contr-r must merge A, A at the end", path)
    elif rule in ("exch-l", "exch-r"):
        before, after = (pa, ca) if rule == "exch-l" else (ps, cs)
        _need((ps == cs) if rule == "exch-l" else (pa == ca), f"{rule} changed the other side", path)
        ok = len(before) == len(after) and any(
            after == before[:i] + (before[i + 1], before[i]) + before[i + 2 :] for i in range(len(before) - 1)
        )
        _need(ok, f"{rule} must swap two adjacent formulas", path)
    elif rule == "neg-l":
        _need(bool(ps) and isinstance(ps[-1], Atom), "neg-l needs an atomic last succedent in the premise", path)
        _need(ca == (Not(ps[-1]),) + pa and cs == ps[:-1], "neg-l conclusion must be (not p), G -> D", path)
    elif rule == "neg-r":
        _need(bool(pa) and isinstance(pa[0], Atom), "neg-r needs an atomic first antecedent in the premise", path)
        atom = pa[0]
        es = tuple(E(t) for t in atom.args)
        _need(ca == es + pa[1:] and cs == ps + (Not(atom),), "neg-r conclusion must be E t.., G -> D, (not p)", path)
    elif rule in ("and-l1", "and-l2"):
        _need(bool(ca) and isinstance(ca[0], And) and bool(pa), f"{rule} principal must be a conjunction", path)
        part = ca[0].left if rule == "and-l1" else ca[0].right
        _need(part == pa[0] and ca[1:] == pa[1:] and cs == ps, f"{rule} conjunct does not match the premise", path)
    elif rule == "and-r":
        _need(bool(cs) and isinstance(cs[-1], And), "and-r principal must be a conjunction", path)
        ok = (
            pa == right.ants == ca
            and ps[:-1] == right.sucs[:-1] == cs[:-1]
            and (ps[-1:], right.sucs[-1:]) == ((cs[-1].left,), (cs[-1].right,))
        )
        _need(ok, "and-r premises must be G -> D, A and G -> D, B", path)
    elif rule == "or-l":
        _need(bool(ca) and isinstance(ca[0], Or), "or-l principal must be a disjunction", path)
        ok = (
            ps == right.sucs == cs
            and pa[1:] == right.ants[1:] == ca[1:]
            and (pa[:1], right.ants[:1]) == ((ca[0].left,), (ca[0].right,))
        )
        _need(ok, "or-l premises must be A, G -> D and B, G -> D", path)
    elif rule in ("or-r1", "or-r2"):
        _need(bool(cs) and isinstance(cs[-1], Or) and bool(ps), f"{rule} principal must be a disjunction", path)
        part = cs[-1].left if rule == "or-r1" else cs[-1].right
        _need(part == ps[-1] and cs[:-1] == ps[:-1] and ca == pa, f"{rule} disjunct does not match the premise", path)
    elif rule == "all-l":
        _need(len(ca) >= 2 and isinstance(ca[1], All), "all-l needs t <= s, (all x s A) in front", path)
        q = ca[1]
        _need(isinstance(ca[0], Atom) and ca[0].pred == "<=", "all-l needs t <= s in front", path)
        t, s = ca[0].args
        _need(s == q.bound, "all-l: s in t <= s differs from the quantifier bound", path, "bound-shape")
        _inst_hint(p, q.var, t, path)
        _need(bool(pa) and alpha_eq(pa[0], substitute(q.body, q.var, t)), "all-l premise must start with A(t)", path)
        _need(pa[1:] == ca[2:] and ps == cs, "all-l side formulas differ", path)
    elif rule == "all-r":
        _need(bool(cs) and isinstance(cs[-1], All), "all-r principal must be a universal formula", path)
        q = cs[-1]
        _need(q.bound.op == "len", "all-r bound must be sharply bounded", path, "bound-shape")
        _need(bool(ca) and ca[0] == E(q.bound), "all-r conclusion must start with E t for the bound t", path)
        _need(bool(pa) and isinstance(pa[0], Atom) and pa[0].pred == "<=" and isinstance(pa[0].args[0], Var)
              and pa[0].args[1] == q.bound, "all-r premise must start with a <= t", path)
        a = pa[0].args[0].index
        _inst_hint(p, q.var, Var(a), path)
        _need(bool(ps) and alpha_eq(ps[-1], substitute(q.body, q.var, Var(a))), "all-r premise must end with A(a)", path)
        _need(pa[1:] == ca[1:] and ps[:-1] == cs[:-1], "all-r side formulas differ", path)
        _eigen_fresh(a, list(ca[1:]) + list(cs[:-1]) + [q.bound], path, rule)
    elif rule == "ex-l":
        _need(bool(ca) and isinstance(ca[0], Ex), "ex-l principal must be an existential formula", path)
        q = ca[0]
        _need(len(pa) >= 2 and isinstance(pa[0], Atom) and pa[0].pred == "<=" and isinstance(pa[0].args[0], Var)
              and pa[0].args[1] == q.bound, "ex-l premise must start with a <= t, A(a)", path)
        a = pa[0].args[0].index
        _inst_hint(p, q.var, Var(a), path)
        _need(alpha_eq(pa[1], substitute(q.body, q.var, Var(a))), "ex-l premise must start with a <= t, A(a)", path)
        _need(pa[2:] == ca[1:] and ps == cs, "ex-l side formulas differ", path)
        _eigen_fresh(a, list(ca[1:]) + list(cs), path, rule)
    elif rule == "ex-r":
        _need(bool(cs) and isinstance(cs[-1], Ex), "ex-r principal must be an existential formula", path)
        q = cs[-1]
        _need(bool(ca) and isinstance(ca[0], Atom) and ca[0].pred == "<=" and ca[0].args[1] == q.bound,
              "ex-r conclusion must start with t <= s for the quantifier bound s", path)
        t = ca[0].args[0]
        _inst_hint(p, q.var, t, path)
        _need(bool(ps) and alpha_eq(ps[-1], substitute(q.body, q.var, t)), "ex-r premise must end with A(t)", path)
        _need(pa == ca[1:] and ps[:-1] == cs[:-1], "ex-r side formulas differ", path)
    elif rule == "cut":
        _need(bool(ps) and bool(right.ants) and ps[-1] == right.ants[0], "cut formulas of the premises differ", path)
        _need(ca == pa + right.ants[1:] and cs == ps[:-1] + right.sucs, "cut conclusion must be G, P -> D, L", path)


def eigenvariable(p: Proof) -> Optional[int]:
    if p.rule in EIGEN_RULES and p.premises and p.premises[0].sequent.ants:
        first = p.premises[0].sequent.ants[0]
        if isinstance(first, Atom) and isinstance(first.args[0], Var):
            return first.args[0].index
    return None


def check_free_variable_normal_form(p: Proof) -> None:
    nodes = list(p.nodes())
    owner: dict[int, Path] = {}
    for path, node in nodes:
        a = eigenvariable(node)
        if a is None:
            continue
        if a in owner:
            _fail("fvnf", f"eigenvariable x{a} already used at {path_str(owner[a])}", path)
        owner[a] = path
    for a, epath in owner.items():
        above = epath + (0,)
        for path, node in nodes:
            if path[: len(above)] == above:
                continue
            if a in free_vars(node.sequent):
                _fail("fvnf", f"eigenvariable x{a} of {path_str(epath)} occurs outside its subproof", path)


def check_proof(p: Proof) -> CheckedProof:
    """Validate a strictly 1-normal proof. Raises :class:`ProofError` at
    the first failing node (post-order)."""
    meta: dict[Path, ProofNodeMeta] = {}

    def visit(node: Proof, path: Path) -> int:
        codes = [visit(q, path + (i,)) for i, q in enumerate(node.premises)]
        for f in node.sequent.formulas():
            if classify_form(f) is FormClass.NOT_ONE_FORM:
                _fail("not-1-form", f"{print_formula(f)} is neither a 1-form nor E t", path)
        check_rule(node, path)
        code = encode_proof(node)
        assert all(c < code for c in codes)
        meta[path] = ProofNodeMeta(path, node.rule, len(free_vars(node.sequent)), code)
        return code

    visit(p, ())
    check_free_variable_normal_form(p)
    return CheckedProof(p, p.sequent, dict(sorted(meta.items())))
