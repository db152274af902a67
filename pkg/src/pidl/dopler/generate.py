"""Seeded random model generation for benchmarking.

All randomness comes from splitmix64 so any implementation can reproduce
the corpus bit for bit.  Draw protocol, in order, for ``n`` variables named
``d1 .. dn``:

1. visible-set size ``s = 1 + next() % (n // 2)``;
2. the visible set: ``s`` draws without replacement, each picking the
   ``next() % remaining``-th name from the not-yet-chosen list (ascending);
3. per rule (``ceil(1.5 * n)`` of them): the action target g drawn from the
   invisible names; three distinct condition variables d, e, f drawn as in
   2 from all names except g; negation flags for e and f (``next() % 2``
   each, 1 = negated); the assigned value (``next() % 2``, 1 = true) —
   condition shape ``d || [!]e && [!]f``;
4. per constraint (``n`` of them): three distinct variables as in 2 and a
   negation flag per literal, yielding a clause over the ``_Yes`` variables.

Visible decisions carry visibility ``true``; invisible ones carry none, so
only rules can drive them.  Constraint clauses are plain propositional
clauses over the translated value variables (``pidl_constraints``).
"""

from __future__ import annotations

import math

from ..exprs import AndE, Assign, BoolAtom, NotE, OrE, TRUE_E
from .model import Decision, DoplerModel, Rule, validate_model

_MASK = (1 << 64) - 1


class SplitMix64:
    """The splitmix64 generator (Steele, Lea, Flood 2014)."""

    def __init__(self, seed: int):
        self.state = seed & _MASK

    def next(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & _MASK
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
        return z ^ (z >> 31)

    def below(self, n: int) -> int:
        return self.next() % n

    def sample(self, pool: list[str], k: int) -> list[str]:
        remaining = list(pool)
        out = []
        for _ in range(k):
            out.append(remaining.pop(self.below(len(remaining))))
        return out


def model_seed(seed: int, k: int) -> int:
    """Per-model stream seed for the k-th model of a batch."""
    return SplitMix64((seed << 20) ^ k).next()


def generate_random_model(
    n_vars: int,
    seed: int,
    rules_ratio: float = 1.5,
    constraints_ratio: float = 1.0,
) -> DoplerModel:
    """A boolean-only model with ``ceil(rules_ratio * n)`` rules of the fixed
    shape ``if (d || [!]e && [!]f) then g = true/false`` and
    ``round(constraints_ratio * n)`` ternary constraint clauses.  At most half
    the variables are visible and no visible variable is a rule target."""
    if n_vars < 4:
        raise ValueError("need at least 4 variables (rules use 4 distinct ones)")
    rng = SplitMix64(seed)
    names = [f"d{i}" for i in range(1, n_vars + 1)]
    visible_count = 1 + rng.below(n_vars // 2)
    visible = set(rng.sample(names, visible_count))
    invisible = [n for n in names if n not in visible]

    rules = []
    for _ in range(math.ceil(rules_ratio * n_vars)):
        g = invisible[rng.below(len(invisible))]
        d, e, f = rng.sample([n for n in names if n != g], 3)
        neg_e, neg_f = rng.below(2), rng.below(2)
        value = rng.below(2) == 1
        e_atom = NotE(BoolAtom(e)) if neg_e else BoolAtom(e)
        f_atom = NotE(BoolAtom(f)) if neg_f else BoolAtom(f)
        condition = OrE((BoolAtom(d), AndE((e_atom, f_atom))))
        rules.append(Rule(condition, (Assign(g, value),)))

    clauses = []
    for _ in range(round(constraints_ratio * n_vars)):
        a, b, c = rng.sample(names, 3)
        lits = [
            f"!{v}_Yes" if rng.below(2) else f"{v}_Yes"
            for v in (a, b, c)
        ]
        clauses.append(" || ".join(lits))

    decisions = tuple(
        Decision(name=n, kind="boolean", visibility=TRUE_E if n in visible else None)
        for n in names
    )
    return validate_model(
        DoplerModel(
            decisions=decisions,
            rules=tuple(rules),
            pidl_constraints=tuple(clauses),
        )
    )
