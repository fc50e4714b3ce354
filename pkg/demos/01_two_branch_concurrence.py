"""How entangled is mu|A>|B> + nu|C>|D> when the local states overlap?"""

import math

import numpy as np

from ecsmes import (
    TwoBranchDescriptor,
    build_family,
    concurrence_closed_form,
    mes_condition,
    qubit_embedding,
)

# Two coherent states |a> and |-a> overlap by exp(-2|a|^2); at a = 1 that is e^-2.
p = math.exp(-2.0)

# Antisymmetric combination: one ebit no matter how large the overlap is.
for overlap in (0.0, p, 0.5, 0.99):
    d = build_family("antisymmetric", overlap)
    print(f"antisymmetric  p={overlap:<6.4g} C={concurrence_closed_form(d):.12f}  mes_condition={mes_condition(d)}")

# Symmetric combination loses entanglement as the overlap grows: C = (1-p^2)/(1+p^2).
for overlap in (0.0, p, 0.5, 0.99):
    d = build_family("symmetric", overlap)
    print(f"symmetric      p={overlap:<6.4g} C={concurrence_closed_form(d):.12f}")

# The closed form agrees with the explicit qubit rewrite of the state.
d = TwoBranchDescriptor(mu=0.8, nu=-0.3 + 0.4j, p1=0.3 + 0.2j, p2=-0.1j)
amps = qubit_embedding(d)
print("qubit amplitudes:", np.round(amps.as_array(), 6))
print("closed form vs embedding:", concurrence_closed_form(d), amps.concurrence())

# Equal overlaps and opposite amplitudes are enough for C = 1, but not necessary.
print("orthogonal symmetric state:", concurrence_closed_form(TwoBranchDescriptor(1, 1, 0, 0)))
