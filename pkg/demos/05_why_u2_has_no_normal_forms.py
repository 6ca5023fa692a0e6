"""Why circuit simplification cannot be convergent over the full binary basis.

Op 4 negates its first input.  When one appears inside a circuit it is
superfluous, but there are two inequivalent ways to remove it: relabel the
gates that read it (push up) or complement the gate that feeds it (push
down).  Both preserve the function; the results are not isomorphic.  Since
passing-style substitutions keep regenerating such negation ops, any rule
system over this basis must include both directions and therefore diverges.
"""

import itertools

from gatelim import isomorphic, evaluate, serialize_circuit
from gatelim.u2 import nonconfluence_witness

witness, up, down = nonconfluence_witness()

print("witness (op 8 feeding a superfluous op 4, feeding op 10):")
print(serialize_circuit(witness))
print("pushed up (successor relabeled 10 -> 14):")
print(serialize_circuit(up))
print("pushed down (producer complemented 8 -> 7):")
print(serialize_circuit(down))

rows = list(itertools.product((0, 1), repeat=3))
same = all(evaluate(up, r) == evaluate(down, r) == evaluate(witness, r) for r in rows)
print(f"all {len(rows)} input rows agree: {same}")
print(f"isomorphic: {isomorphic(up, down)}")
