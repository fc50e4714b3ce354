"""Bipartite cuts of |a>^N - |-a>^N: which splits carry a full ebit?"""

import math

import numpy as np

from ecsmes import branch as br
from ecsmes.measures import concurrence_from_spectrum
from ecsmes.two_branch import concurrence_closed_form, multipartite_cut_reduce


def cut_concurrence(alpha, n, cut):
    return concurrence_closed_form(multipartite_cut_reduce("ecs_pm", {"alpha": alpha, "n": n}, cut))


# One mode against two: interpolates between the W-like limit and one ebit.
print("alpha   C_1|23")
for alpha in np.geomspace(1e-3, 3, 8):
    print(f"{alpha:6.3f}  {cut_concurrence(alpha, 3, [0]):.10f}")
print("small-amplitude limit 2*sqrt(2)/3 =", 2 * math.sqrt(2) / 3)

# Splitting four modes in half gives equal overlaps on both sides, hence one ebit.
for alpha in (0.1, 0.5, 1.0):
    print(f"N=4 half cut, alpha={alpha}: C = {cut_concurrence(alpha, 4, [0, 1]):.12f}")

# With three modes, rescaling the last two by 1/sqrt(2) balances the cut.
d = multipartite_cut_reduce("odd_scaled", {"alpha": 1.0, "n": 1}, [0])
print("scaled three-mode state, cut 1|23:", concurrence_closed_form(d))

# Cross-check one value with the branch engine's Schmidt decomposition.
state = br.normalize(br.BranchState([1, -1], [[1.0] * 3, [-1.0] * 3]))
print("branch engine C_1|23 at alpha=1:", concurrence_from_spectrum(br.schmidt_across_cut(state, [0])))
