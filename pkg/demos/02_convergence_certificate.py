"""Certify the formula simplification system convergent.

Termination: a node-weight measure strictly decreases on every rewrite.
Confluence: every critical pair (two rules overlapping on one term) rejoins
at a common normal form.  Together: every formula has exactly one normal
form, no matter the rewrite order.
"""

import random

from gatelim import certify_convergence, critical_pairs, demorgan_system, normalize_term
from gatelim.terms import random_term, term_weight

trs = demorgan_system()
report = certify_convergence(trs, samples=1000, seed=0)
print(f"rules: {report.rule_count}")
print(f"critical pairs: {report.pair_count}, unjoinable: {len(report.unjoinable)}")
print(f"weight samples: {report.weight_samples}, violations: {report.weight_violations}")
print(f"convergent: {report.convergent}")
print()

# one overlap up close: (and g (not g)) on top of (not (not g2))
pair = next(
    p
    for p in critical_pairs(trs)
    if p.outer_rule == "taut_and_right" and p.inner_rule == "double_neg_elim"
)
print(f"overlap of {pair.outer_rule} with {pair.inner_rule} at {pair.position}:")
print(f"  one step gives  {pair.left}")
print(f"  the other gives {pair.right}")
print(f"  both normalize to {normalize_term(trs, pair.left)}")
print()

# the measure in action on a random formula
t = random_term(random.Random(11), 5)
nf = normalize_term(trs, t)
print("random formula:", t)
print("normal form:   ", nf)
print("weight fell from", term_weight(t), "to", term_weight(nf))
