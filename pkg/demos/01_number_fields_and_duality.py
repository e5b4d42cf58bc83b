"""Tour of the shipped number fields and their trace duality data.

Builds each field exactly, prints the trace Gram (whose determinant is the
discriminant of the order), the codifferent basis, the covolume identity,
and the guaranteed short vector of the codifferent.
"""

import math

from hermlat import (
    codifferent_covolume,
    duality_gap_constant,
    minkowski_codifferent_bound,
    minkowski_codifferent_vector,
    shipped_field,
    shipped_field_names,
    trace_gram,
    trace_module,
    unit_ball_volume,
)

for name in shipped_field_names():
    nf = shipped_field(name)
    print(f"=== {name}: poly {list(nf.defining_poly)} ===")
    print(f"degree {nf.degree}, signature {nf.signature}, disc {nf.discriminant}")
    print("trace Gram:")
    for row in trace_gram(nf):
        print("   ", [str(x) for x in row])

    tm = trace_module(nf)
    print("codifferent basis:", [str(c) for c in tm.codifferent_basis])
    print("metric weights per embedding:", tm.metric_weights)

    covol = codifferent_covolume(nf)
    closed = math.log(abs(nf.discriminant)) - 2 * nf.r2 * math.log(2)
    print(f"covolume (log): computed {covol:.12f}, closed form {closed:.12f}")
    print(f"unit ball volume: {unit_ball_volume(nf):.6f}")

    v, lg = minkowski_codifferent_vector(nf)
    bound = minkowski_codifferent_bound(nf)
    print(f"shortest codifferent vector {v} with sup log-norm {lg:.4f} <= bound {bound:.4f}")

    print("C(N, field) for N = 1..4:", [round(duality_gap_constant(n, nf), 4) for n in range(1, 5)])
    print()
