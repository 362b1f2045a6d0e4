# Detect an n-cycle in Sym(60) through the black-box k-set action.
#
# The detector never sees a permutation's cycle structure.  It draws group
# elements from an oracle, traces the orbits of four random 2-subsets, and
# accepts when every orbit length is a plausible multiple of the target
# cycle length.

import random

from ksettrace import algorithms, families
from ksettrace.perms import SYM

params = families.line_params(SYM, 60, families.LONG_CYCLE)
print(f"target: a {params.m}-cycle in {params.group}({params.n}), "
      f"tracing cap r*m = {params.r * params.m}")

rng = random.Random(2024)
oracle = algorithms.make_testbed_oracle(params, k=2)

element, transcript = algorithms.find_m_cycle(params, eps=0.2, M=4,
                                              oracle=oracle, rng=rng)

print(f"candidates examined: {len(transcript.entries)}")
for line in transcript.lines()[-3:]:
    print(" ", line)

if element is algorithms.FAIL:
    print("no candidate accepted within the trial budget")
else:
    # peek behind the black box to grade the answer
    natural = oracle.natural(element)
    has_cycle = params.m in natural.cycle_type()
    print(f"accepted element cycle type: {natural.cycle_type()}")
    print(f"contains a {params.m}-cycle: {has_cycle}")
