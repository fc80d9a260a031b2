"""Node-by-node soundness checking of strictly 1-normal proofs.

At node ``r`` with sequent ``G -> D`` and proof code ``r``: for every
assignment ``env`` of values at most ``u`` to the node's free variables and
every ``u' <= u (-) r``, if every ``A`` in ``G`` holds at ``u'`` then some
``B`` in ``D`` holds at ``u' (+) r``.

``(+)`` appends the bits of ``r`` to ``u``. ``(-)`` is its upper adjoint:
``u (-) r`` is the largest ``v`` with ``v (+) r <= u`` (None if there is no
such ``v``).

Since proof codes are long, ``u (-) r`` is undefined for every small ``u``,
and the literal grid at ``u = 8`` has no admissible ``u'``. The *relative*
grid checks each node at ``u = U (+) r`` instead: ``u'`` then ranges over
exactly ``0..U``, and env entries are drawn from ``0..U``.
"""

from __future__ import annotations

import itertools
import os
import random
from dataclasses import asdict, dataclass, field
from typing import Iterable, Optional, Sequence

from .proofs import Path, Proof, ProofNodeMeta, check_proof, encode_proof, path_str
from .syntax import Formula, free_vars, is_quantifier_free
from .truth import holds, holds_qf

DEFAULT_CEILING = 2_000_000
CEILING_ENV_VAR = "S02E_INSTANCE_CEILING"
FALLBACK_SAMPLES = 10_000


def instance_ceiling() -> int:
    raw = os.environ.get(CEILING_ENV_VAR)
    return int(raw) if raw else DEFAULT_CEILING


# --------------------------------------------------------- budget arithmetic


def budget_concat(u: int, r: int) -> int:
    """``u (+) r``: the bits of ``u`` followed by the bits of ``r``."""
    return (u << r.bit_length()) + r


def budget_sub(u: int, r: int) -> Optional[int]:
    """``u (-) r``: the largest ``v`` with ``budget_concat(v, r) <= u``."""
    if u < r:
        return None
    return (u - r) >> r.bit_length()


def budget_sub_floor(u: int, r: int) -> int:
    """Plain low-bit removal; kept to show where the cut chain breaks."""
    return u >> r.bit_length()


@dataclass(frozen=True)
class BudgetViolation:
    law: str
    path: str
    u_prime: int
    detail: str


def audit_budget_laws(
    p: Proof, meta: dict[Path, ProofNodeMeta] | None = None, u_primes: Iterable[int] = range(0, 65)
) -> list[BudgetViolation]:
    """Check, at every node, the three inequalities the soundness argument
    relies on:

    * ``succ``: ``s_i u' <= u' (+) r``;
    * ``child``: ``u' (+) r1 <= u' (+) r`` for each premise ``r1``;
    * ``cut``: ``u' <= u (-) r`` implies ``u' (+) r1 <= u (-) r2`` at a cut
      with premises ``r1``, ``r2``. Checked at the least ``u`` admitting
      ``u'``, which is the hardest case since ``(-)`` is monotone.

    ``meta`` defaults to :func:`proof_meta` of ``p``.
    """
    meta = proof_meta(p) if meta is None else meta
    u_primes = list(u_primes)
    out: list[BudgetViolation] = []
    for path, m in meta.items():
        r = m.code
        kids = [meta[path + (i,)].code for i in range(len(_node(p, path).premises))]
        where = path_str(path)
        for up in u_primes:
            top = budget_concat(up, r)
            if not 2 * up + 1 <= top:
                out.append(BudgetViolation("succ", where, up, f"s1({up}) > {up} (+) r"))
            for i, r1 in enumerate(kids):
                if budget_concat(up, r1) > top:
                    out.append(BudgetViolation("child", where, up, f"premise {i} code exceeds the node's"))
            if m.rule == "cut":
                r1, r2 = kids
                room = budget_sub(top, r2)
                if room is None or budget_concat(up, r1) > room:
                    out.append(BudgetViolation("cut", where, up, "u' (+) r1 > u (-) r2"))
    return out


# ------------------------------------------------------------ node checks


def _node(p: Proof, path: Path) -> Proof:
    for i in path:
        p = p.premises[i]
    return p


def node_variables(node: Proof) -> list[int]:
    return sorted(free_vars(node.sequent))


def make_env(variables: Sequence[int], values: Sequence[int]) -> list[int]:
    """Index-based environment assigning ``values`` to ``variables``."""
    if len(values) != len(variables):
        raise ValueError(f"expected {len(variables)} values, got {len(values)}")
    env = [0] * (max(variables) if variables else 0)
    for v, c in zip(variables, values):
        env[v - 1] = c
    return env


def truth(u: int, f: Formula, env: Sequence[int]) -> bool:
    """``holds`` on 1-forms; tree semantics on any other quantifier-free
    formula (only reachable through forged or unchecked proofs)."""
    return holds_qf(u, f, env) if is_quantifier_free(f) else holds(u, f, env)


def check_node_soundness(node: Proof, u: int, env: Sequence[int], u_prime: int, code: int | None = None) -> bool:
    """Soundness of one node at one grid point.

    ``env`` lists values for the node's free variables in increasing index
    order. ``code`` defaults to the code of the subproof at ``node``.
    """
    r = encode_proof(node) if code is None else code
    variables = node_variables(node)
    if len(env) != len(variables):
        raise ValueError(f"node has {len(variables)} free variables, env has {len(env)} entries")
    if any(c < 0 or c > u for c in env):
        raise ValueError(f"env entries must lie in 0..{u}")
    room = budget_sub(u, r)
    if room is None or not 0 <= u_prime <= room:
        raise ValueError(f"u' = {u_prime} is not admissible (u (-) r = {room})")
    full = make_env(variables, env)
    if not all(truth(u_prime, a, full) for a in node.sequent.ants):
        return True
    top = budget_concat(u_prime, r)
    return any(truth(top, b, full) for b in node.sequent.sucs)


@dataclass
class NodeOutcome:
    nodePath: str
    rule: str
    k: int
    codeBits: int
    u: int
    uPrimeMax: Optional[int]
    gridPoints: int
    checked: int
    outcome: str  # holds | fails | vacuous
    strategy: str  # enumerate | sample | sample (ceiling)
    counterexample: Optional[dict] = None


@dataclass
class SoundnessReport:
    u: int
    mode: str
    relative: bool
    ceiling: int
    seed: Optional[int]
    samples: Optional[int]
    nodes: list[NodeOutcome] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(n.outcome != "fails" for n in self.nodes)

    @property
    def verdict(self) -> str:
        return "all nodes hold" if self.ok else "counterexample found"

    def to_json(self) -> dict:
        return {
            "u": self.u,
            "mode": self.mode,
            "relative": self.relative,
            "ceiling": self.ceiling,
            "seed": self.seed,
            "samples": self.samples,
            "verdict": self.verdict,
            "nodes": [{k: v for k, v in asdict(n).items() if not (k == "counterexample" and v is None)} for n in self.nodes],
        }


def _grid(k: int, env_max: int, room: int) -> Iterable[tuple[tuple[int, ...], int]]:
    for env in itertools.product(range(env_max + 1), repeat=k):
        for up in range(room + 1):
            yield env, up


def _samples(k: int, env_max: int, room: int, n: int, rng: random.Random):
    for _ in range(n):
        yield tuple(rng.randint(0, env_max) for _ in range(k)), rng.randint(0, room)


def proof_meta(p: Proof) -> dict[Path, ProofNodeMeta]:
    """Per-node metadata without checking the proof (for forged proofs)."""
    return {path: ProofNodeMeta(path, n.rule, len(free_vars(n.sequent)), encode_proof(n)) for path, n in p.nodes()}


def check_proof_soundness(
    p: Proof,
    u: int,
    mode: str = "enumerate",
    samples: int = 1000,
    seed: int = 0,
    relative: bool = False,
    ceiling: int | None = None,
    require_checked: bool = True,
) -> SoundnessReport:
    """Check every node of ``p`` over the enumerated or sampled grid.

    With ``relative=True`` node ``r`` is checked at ``u (+) r`` with env
    entries drawn from ``0..u``. ``require_checked=False`` skips
    :func:`check_proof`, for deliberately forged proofs.
    """
    if mode not in ("enumerate", "sample"):
        raise ValueError(f"unknown mode {mode!r}")
    ceiling = instance_ceiling() if ceiling is None else ceiling
    meta = check_proof(p).meta if require_checked else proof_meta(p)
    report = SoundnessReport(
        u, mode, relative, ceiling, seed if mode == "sample" else None, samples if mode == "sample" else None
    )
    rng = random.Random(seed)
    for path in sorted(meta):
        m = meta[path]
        node = _node(p, path)
        node_u = budget_concat(u, m.code) if relative else u
        room = budget_sub(node_u, m.code)
        env_max = u
        grid = 0 if room is None else (env_max + 1) ** m.k * (room + 1)
        strategy = mode
        if room is None:
            points: Iterable = ()
        elif mode == "enumerate" and grid <= ceiling:
            points = _grid(m.k, env_max, room)
        else:
            n = samples if mode == "sample" else min(FALLBACK_SAMPLES, ceiling)
            if mode == "enumerate":
                strategy = "sample (ceiling)"
            points = _samples(m.k, env_max, room, n, rng)
        checked = 0
        bad = None
        for env, up in points:
            checked += 1
            if not check_node_soundness(node, node_u, env, up, m.code):
                bad = {"env": list(env), "uPrime": up, "variables": [f"x{v}" for v in node_variables(node)]}
                break
        outcome = "fails" if bad else ("holds" if checked else "vacuous")
        report.nodes.append(
            NodeOutcome(path_str(path), m.rule, m.k, m.code.bit_length(), u,
                        room, grid, checked, outcome, strategy, bad)
        )
    return report


def recheck_counterexample(p: Proof, outcome: NodeOutcome, u: int, relative: bool) -> bool:
    """True when the recorded counterexample still refutes its node."""
    path = tuple(int(i) for i in outcome.nodePath.split(".")[1:])
    node = _node(p, path)
    code = encode_proof(node)
    node_u = budget_concat(u, code) if relative else u
    cx = outcome.counterexample
    return not check_node_soundness(node, node_u, cx["env"], cx["uPrime"], code)
