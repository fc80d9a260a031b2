"""Gödel numbering.

A code is the integer whose binary expansion is ``1`` followed by each
field written as an Elias-gamma length prefix and then the field's bits.
Fields are naturals: a constructor tag, small integers, or the codes of
sub-objects embedded verbatim. Embedding makes every proper sub-object's
code strictly smaller than the code of the whole, and the prefix makes
decoding unambiguous.
"""

from __future__ import annotations

from functools import lru_cache

from .syntax import (
    ARITY,
    All,
    And,
    App,
    Atom,
    Ex,
    Formula,
    Not,
    Or,
    Sequent,
    Term,
    Var,
    Zero,
)

TAG_ZERO = 0
TAG_VAR = 1
TERM_TAGS = {op: 2 + i for i, op in enumerate(ARITY)}
TAG_LE, TAG_EQ, TAG_E = 16, 17, 18
TAG_NOT, TAG_AND, TAG_OR, TAG_ALL, TAG_EX = 19, 20, 21, 22, 23
TAG_SEQUENT = 32
TAG_PROOF = 33
TAG_VTREE = 34
TAG_TTREE = 35
TAG_LIST = 36
MAX_TAG = 63

_PRED_TAG = {"<=": TAG_LE, "=": TAG_EQ, "E": TAG_E}
_TAG_PRED = {v: k for k, v in _PRED_TAG.items()}
_TAG_OP = {v: k for k, v in TERM_TAGS.items()}


class DecodeError(ValueError):
    pass


def gamma_len(m: int) -> int:
    """Bit length of the Elias-gamma code of ``m >= 1``."""
    return 2 * m.bit_length() - 1


def pack(fields) -> int:
    acc = 1
    for n in fields:
        if n < 0:
            raise ValueError("fields must be natural numbers")
        width = n.bit_length()
        g = width + 1
        acc = (acc << gamma_len(g)) | g
        acc = (acc << width) | n
    return acc


def unpack(code: int) -> list[int]:
    if not isinstance(code, int) or code < 1:
        raise DecodeError(f"not a code: {code!r}")
    bits = bin(code)[3:]
    out = []
    i, n = 0, len(bits)
    while i < n:
        zeros = 0
        while i < n and bits[i] == "0":
            zeros += 1
            i += 1
        if i + zeros + 1 > n:
            raise DecodeError("truncated length prefix")
        g = int(bits[i : i + zeros + 1], 2)
        i += zeros + 1
        width = g - 1
        if i + width > n:
            raise DecodeError("truncated field")
        out.append(int(bits[i : i + width], 2) if width else 0)
        if width and bits[i] != "1":
            raise DecodeError("non-canonical field")
        i += width
    return out


# ------------------------------------------------------------ encoding


@lru_cache(maxsize=1 << 16)
def encode_term(t: Term) -> int:
    if isinstance(t, Zero):
        return pack((TAG_ZERO,))
    if isinstance(t, Var):
        return pack((TAG_VAR, t.index))
    return pack((TERM_TAGS[t.op], *(encode_term(a) for a in t.args)))


def app_code(op: str, arg_codes) -> int:
    """Code of ``op(args)`` from the argument codes."""
    return pack((TERM_TAGS[op], *arg_codes))


@lru_cache(maxsize=1 << 16)
def encode_formula(f: Formula) -> int:
    if isinstance(f, Atom):
        return pack((_PRED_TAG[f.pred], *(encode_term(a) for a in f.args)))
    if isinstance(f, Not):
        return pack((TAG_NOT, encode_formula(f.atom)))
    if isinstance(f, And):
        return pack((TAG_AND, encode_formula(f.left), encode_formula(f.right)))
    if isinstance(f, Or):
        return pack((TAG_OR, encode_formula(f.left), encode_formula(f.right)))
    if isinstance(f, All):
        return pack((TAG_ALL, f.var, encode_term(f.bound), encode_formula(f.body)))
    if isinstance(f, Ex):
        return pack((TAG_EX, f.var, encode_term(f.bound), encode_formula(f.body)))
    raise TypeError(f"not a formula: {f!r}")


def encode_sequent(s: Sequent) -> int:
    return pack((TAG_SEQUENT, len(s.ants), *(encode_formula(f) for f in s.formulas())))


def encode(obj) -> int:
    """Code of a term, formula, sequent or proof."""
    if isinstance(obj, (Zero, Var, App)):
        return encode_term(obj)
    if isinstance(obj, Sequent):
        return encode_sequent(obj)
    if isinstance(obj, (Atom, Not, And, Or, All, Ex)):
        return encode_formula(obj)
    from .proofs import Proof, encode_proof

    if isinstance(obj, Proof):
        return encode_proof(obj)
    raise TypeError(f"cannot encode {type(obj).__name__}")


# ------------------------------------------------------------ decoding


def decode_term(code: int) -> Term:
    fields = unpack(code)
    if not fields:
        raise DecodeError("empty code")
    tag, rest = fields[0], fields[1:]
    if tag == TAG_ZERO and not rest:
        return Zero()
    if tag == TAG_VAR and len(rest) == 1 and rest[0] >= 1:
        return Var(rest[0])
    op = _TAG_OP.get(tag)
    if op is None or len(rest) != ARITY[op]:
        raise DecodeError(f"code {code} is not a term")
    return App(op, tuple(decode_term(c) for c in rest))


def decode_formula(code: int) -> Formula:
    fields = unpack(code)
    if not fields:
        raise DecodeError("empty code")
    tag, rest = fields[0], fields[1:]
    if tag in _TAG_PRED:
        pred = _TAG_PRED[tag]
        if len(rest) != (1 if pred == "E" else 2):
            raise DecodeError("bad atom arity")
        return Atom(pred, tuple(decode_term(c) for c in rest))
    if tag == TAG_NOT and len(rest) == 1:
        inner = decode_formula(rest[0])
        if not isinstance(inner, Atom):
            raise DecodeError("negation of a non-atom")
        return Not(inner)
    if tag in (TAG_AND, TAG_OR) and len(rest) == 2:
        cls = And if tag == TAG_AND else Or
        return cls(decode_formula(rest[0]), decode_formula(rest[1]))
    if tag in (TAG_ALL, TAG_EX) and len(rest) == 3 and rest[0] >= 1:
        bound = decode_term(rest[1])
        body = decode_formula(rest[2])
        try:
            return (All if tag == TAG_ALL else Ex)(rest[0], bound, body)
        except ValueError as exc:
            raise DecodeError(str(exc)) from None
    raise DecodeError(f"code {code} is not a formula")


def decode_sequent(code: int) -> Sequent:
    fields = unpack(code)
    if len(fields) < 2 or fields[0] != TAG_SEQUENT or fields[1] > len(fields) - 2:
        raise DecodeError(f"code {code} is not a sequent")
    formulas = [decode_formula(c) for c in fields[2:]]
    k = fields[1]
    return Sequent(tuple(formulas[:k]), tuple(formulas[k:]))


def decode(code: int):
    """Inverse of :func:`encode`."""
    fields = unpack(code)
    if not fields:
        raise DecodeError("empty code")
    tag = fields[0]
    if tag <= max(TERM_TAGS.values()):
        return decode_term(code)
    if TAG_LE <= tag <= TAG_EX:
        return decode_formula(code)
    if tag == TAG_SEQUENT:
        return decode_sequent(code)
    if tag == TAG_PROOF:
        from .proofs import decode_proof

        return decode_proof(code)
    raise DecodeError(f"unknown tag {tag}")


# ----------------------------------------------------------- size bound


def tree_size_bound(code: int, u: int) -> int:
    """Upper bound on the code of any witness tree over an object coded by
    ``code`` whose node values are at most ``u``.

    A tree has at most ``bitlen(code)`` nodes (every constructor costs at
    least one bit of ``code``), each node carries a tag, the code of a
    sub-object (at most ``code``) and a value (at most ``u``), and each
    non-root node is additionally prefixed by the length of its own code.
    The total length ``L`` satisfies ``L <= n * (per_node + gamma_len(L + 1))``;
    the least fixed point of that inequality is found by iteration.
    Monotone in both arguments.
    """
    n = code.bit_length()
    lc = code.bit_length()
    lu = u.bit_length()
    tag_bits = gamma_len(MAX_TAG.bit_length() + 1) + MAX_TAG.bit_length()
    per_node = 1 + tag_bits + gamma_len(lc + 1) + lc + gamma_len(lu + 1) + lu
    prefix = 1
    while True:
        total = n * (per_node + prefix)
        nxt = gamma_len(total + 1)
        if nxt <= prefix:
            return (1 << total) - 1
        prefix = nxt


def size_bound(term_code: int, u: int) -> int:
    """Bound on the code of any valuation tree of the term coded by
    ``term_code`` with node values at most ``u``."""
    decode_term(term_code)
    return tree_size_bound(term_code, u)


def formula_size_bound(formula_code: int, u: int) -> int:
    """Bound on the code of any truth tree of the coded formula.

    Truth-tree node values are bits, so ``u`` does not enter the bound."""
    decode_formula(formula_code)
    return tree_size_bound(formula_code, 1)
