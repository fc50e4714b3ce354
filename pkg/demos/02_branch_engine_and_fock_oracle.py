"""The same circuit run twice: once on coherent labels, once in a truncated Fock space."""

import math

from ecsmes import branch as br
from ecsmes import fock as fk
from ecsmes.gates import BS50, CrossKerr, CurlyB, Kerr, Phase
from ecsmes.measures import concurrence_from_spectrum, entanglement_entropy
from ecsmes.two_branch import cross_kerr_concurrence

# Odd cat on mode 0, coherent state on mode 1.
state = br.tensor(br.cat_state(1.2, "odd"), br.coherent_state(0.7))
gates = [CurlyB(0, 1), Phase(1, -math.pi)]

out = br.apply_gates(state, gates)
print("branches after the circuit:")
for coeff, labels in out.branches():
    print(f"  {coeff:.4f}  {[f'{x:.4f}' for x in labels]}")
print("branch engine entropy:", entanglement_entropy(br.schmidt_across_cut(out, [0])))

# The Fock oracle never sees labels; it works with photon-number amplitudes.
cutoff = fk.choose_cutoff(1.5)
v = fk.apply_gates(fk.synthesize(state, cutoff), gates)
print(f"Fock cutoff {cutoff}, norm deficit {v.norm_deficit:.2e}")
print("Fock entropy:", entanglement_entropy(fk.reduced_density(v, [0]).spectrum()))
print("fidelity between the two routes:", fk.fock_fidelity(v, fk.synthesize(out, cutoff)))

# Curly-B is the 50/50 splitter dressed with two quarter-wave phase shifts.
direct = br.apply_gate(state, CurlyB(0, 1))
dressed = br.apply_gates(state, [Phase(1, -math.pi / 2), BS50(0, 1), Phase(1, -math.pi / 2)])
print("curly-B vs dressed BS50 fidelity:", br.fidelity(direct, dressed))

# Kerr makes a cat from one coherent state; cross-Kerr entangles two.
print("Kerr on |1>:", br.apply_gate(br.coherent_state(1.0), Kerr(0)).branches())
for a in (0.25, 0.5, 1.0, 2.0):
    w = fk.apply_gate(fk.synthesize(br.coherent_state(a, a), fk.choose_cutoff(a)), CrossKerr(0, 1))
    fock_c = concurrence_from_spectrum(fk.reduced_density(w, [0]).spectrum())
    print(f"cross-Kerr a={a}: closed form {cross_kerr_concurrence(a, a):.12f}  Fock {fock_c:.12f}")
