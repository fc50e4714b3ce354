"""A single photon spread over N modes is a W state; its entanglement is shared evenly."""

import math

from ecsmes import fock as fk
from ecsmes import schemes as sc
from ecsmes.measures import ckw_residual, w_state, wootters_concurrence

for n in range(2, 7):
    r = sc.run_w_generation(n)
    print(
        f"N={n}: deviation {r.checks['max_abs_deviation']:.1e}, "
        f"C_01 = {r.checks['C_pair_01']:.6f}, C_0|rest = {r.checks['C_0_rest']:.6f}, "
        f"CKW residual {r.checks['ckw_residual']:.1e}"
    )

# Three qubits: each pair has C = 2/3 and qubit 0 against the rest has 2*sqrt(2)/3.
w3 = fk.apply_gates(fk.basis_state(1, [1, 0, 0]), fk.un_network(3))
print("C_12 =", wootters_concurrence(fk.reduced_density(w3, [0, 1])), " 2/3 =", 2 / 3)
print("2*sqrt(2)/3 =", 2 * math.sqrt(2) / 3)

# The pairwise squares add up exactly to the one-vs-rest square: monogamy is saturated.
print("CKW residual for W_6:", ckw_residual(w_state(6), 0))

# Other readings of the splitter angles do not spread the photon evenly.
for convention in ("literal", "negated"):
    out = fk.apply_gates(fk.basis_state(1, [1, 0, 0]), fk.un_network(3, convention))
    print(convention, "amplitudes on |100>,|010>,|001>:", [round(float(abs(out.vector[k])), 4) for k in (4, 2, 1)])
