"""Why chasing the largest current penalty fails badly.

The trap family pairs one heavy linear job against one long exponential
job. The naive rule keeps picking the linear job because its bill is
bigger right now, while the exponential job quietly doubles in the
background. Running the exponential job first is exponentially cheaper,
and the gap widens without limit as the exponential job gets longer.
"""

from schedlab import compare, gen_naive_lb, make_policy, run_policy

inst = gen_naive_lb(M=16, x=2, s=1, T=12)
print("the instance: one linear job (weight 16, work 4) and one")
print("exponential job (start penalty 1, work 12), released together.\n")

for name in ("naive", "expfirst"):
    trace, report = run_policy(inst, make_policy(name))
    order = [d for _, d in trace.decisions]
    print(f"{name} runs jobs in the order {order[:6]}... and pays:")
    for job_id, penalty in sorted(report.per_job.items()):
        print(f"  job {job_id}: {penalty}")
    print(f"  total {report.total}\n")

report = compare(inst, [make_policy("naive"), make_policy("expfirst")])
print(f"the exact optimum is {report.oracle_total}, so the ratios are:")
for outcome in report.outcomes:
    print(f"  {outcome.policy}: {outcome.ratio} = {float(outcome.ratio):.3f}")

print("\nstretching the exponential job stretches the naive ratio with it:")
print("  T    naive total    optimal    ratio")
for T in (8, 12, 16, 20):
    r = compare(gen_naive_lb(16, 2, 1, T), [make_policy("naive")])
    o = r.outcomes[0]
    print(f"  {T:>2}  {o.total:>12}  {r.oracle_total:>9}    {float(o.ratio):.3f}")
print("\nthe ratio approaches the weight-to-start-penalty gap M/s = 16.")
