"""How the two penalty shapes behave, and the keys that order jobs.

A linear job charges weight times flow time. An exponential job charges
its start penalty times x raised to the flow time, so every slot it sits
unfinished multiplies its bill by x. This script prices both shapes side
by side and then shows the two ordering keys the policies lean on.
"""

from schedlab import (
    Instance,
    completion_penalty,
    current_penalty,
    exp_job,
    exp_order_key,
    linear_job,
    potential,
    sequence_cost,
    smith_key,
)

lin = linear_job(0, release=0, work=3, weight=5)
exp_ = exp_job(1, release=0, work=3, start_penalty=5)

print("completion penalties as the finish time slips (x = 2):")
print("  C    linear 5*(C-r)    exponential 5*2^(C-r)")
for C in range(3, 9):
    print(f"  {C}    {completion_penalty(lin, C, 2):>13}    {completion_penalty(exp_, C, 2):>20}")

print()
print("the exponential job's current penalty grows even while it waits:")
for now in range(5):
    print(f"  now={now}  s' = {current_penalty(exp_, now, 2)}")

print()
print("potential is the bill if the job ran exclusively from this moment.")
print("processing one slot leaves it unchanged; skipping a slot doubles it:")
s_now, remaining = 5, 3
print(f"  now: potential({s_now}, {remaining}) = {potential(s_now, remaining, 2)}")
print(f"  after processing: potential({2 * s_now}, {remaining - 1}) = {potential(2 * s_now, remaining - 1, 2)}")
print(f"  after skipping:   potential({2 * s_now}, {remaining}) = {potential(2 * s_now, remaining, 2)}")

print()
print("smith_key orders linear jobs (smaller runs first):")
for w, t in ((5, 3), (9, 2), (1, 4)):
    print(f"  weight {w}, work {t}: key = {smith_key(w, t)}")

print()
print("exp_order_key orders exponential jobs (larger runs first).")
print("two jobs, one short and urgent, one long and cheap:")
a = exp_job(0, 0, 1, 4)
b = exp_job(1, 0, 3, 1)
key_a = exp_order_key(4, 1, 2)
key_b = exp_order_key(1, 3, 2)
print(f"  job 0: s=4, t=1, key = {key_a}")
print(f"  job 1: s=1, t=3, key = {key_b}")
inst = Instance(2, (a, b))
print(f"  running 0 then 1 costs {sequence_cost(inst, (0, 1))}")
print(f"  running 1 then 0 costs {sequence_cost(inst, (1, 0))}")
assert key_a > key_b and sequence_cost(inst, (0, 1)) < sequence_cost(inst, (1, 0))
print("  the larger key indeed goes first.")
