# Exact conditional acceptance vs Monte Carlo, at a size where both work.
#
# At n = 8 the full conjugacy-class sum gives the acceptance probability of
# the four-point tracing test as an exact rational.  A seeded sampling run
# should land within its Wilson interval of that value.

from ksettrace import families, montecarlo
from ksettrace.montecarlo import ExperimentConfig
from ksettrace.perms import SYM

params = families.line_params(SYM, 8, families.TRANSPOSITION)
exact = montecarlo.exact_conditional(params, k=2, M=4)

print(f"line {params.line}: {params.group}({params.n}), m = {params.m}, "
      f"r = {params.r}")
print(f"exact Prob(accept)        = {exact.accept} = {float(exact.accept):.6f}")
print(f"exact Prob(N | accept)    = {float(exact.n_given_accept):.6f}")
print(f"exact Prob(reject|N_good) = {float(exact.p1):.6f}")

config = ExperimentConfig(group=SYM, n=8, goal=families.TRANSPOSITION,
                          k=2, M=4, trials=100_000, seed=11)
stats = montecarlo.run_conditional(config)
est = stats.accept_overall()
lo, hi = est.ci

print(f"sampled Prob(accept)      = {est.value:.6f}  "
      f"(Wilson 95% interval [{lo:.6f}, {hi:.6f}])")
print(f"exact value inside interval: {lo <= float(exact.accept) <= hi}")
