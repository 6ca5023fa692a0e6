"""Simplify a redundant circuit step by step.

Builds a deliberately wasteful circuit for (x1 and x2), normalizes it with
the deterministic strategy, and prints every rewrite the driver fired.
"""

from gatelim import CircuitBuilder, circuit_size, normalize_circuit, serialize_circuit, unroll_term

# ((x1 and x2) and 1) or (x3 and (not x3))  -- the right branch is always false
b = CircuitBuilder(3)
core = b.and_(b.input(1), b.input(2))
left = b.and_(core, b.const(1))
x3 = b.input(3)
right = b.and_(x3, b.not_(x3))
c = b.build(b.or_(left, right))

print("before:", unroll_term(c), f"({circuit_size(c)} binary gates)")
normal, trace = normalize_circuit(c)
for step in trace.steps:
    print(f"  step {step.step}: {step.rule} at wire {step.site}, size now {step.size_after}")
print("after: ", unroll_term(normal), f"({circuit_size(normal)} binary gates)")
print()
print(serialize_circuit(normal))
