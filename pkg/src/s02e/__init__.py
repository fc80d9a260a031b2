"""Proof checking and bounded semantics for a weak bounded arithmetic with
an explicit convergence predicate ``E``."""

from .proofs import Proof, ProofError, check_proof, parse_proof, print_proof
from .semantics import eval_closed, eval_rewrite
from .soundness import check_node_soundness, check_proof_soundness
from .syntax import parse_formula, parse_sequent, parse_term
from .truth import holds, holds_qf
from .valuation import value_dn

__version__ = "0.1.0"

__all__ = [
    "Proof",
    "ProofError",
    "check_node_soundness",
    "check_proof",
    "check_proof_soundness",
    "eval_closed",
    "eval_rewrite",
    "holds",
    "holds_qf",
    "parse_formula",
    "parse_proof",
    "parse_sequent",
    "parse_term",
    "print_proof",
    "value_dn",
]
