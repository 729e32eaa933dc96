"""One request on the bundled USNET: build the program, solve it, read the plan."""

from qkdplan import build, solve, uniform_request, usnet
from qkdplan.report import format_solution

net = usnet()
print(len(net.nodes), "nodes,", len(net.links), "directed links")

# Rate uniform over 0..4 kbps from node 1 to node 23.
req = uniform_request(1, 23, 4)
prog = build(net, [req])
print(len(prog.variables), "variables")
for tag, n in sorted(prog.census().items()):
    print(f"  {tag:6} {n}")

plan = solve(prog)
print(format_solution(plan))

# Every QKD link on the route reserves 9 of the 0/3/6/9/12 wavelengths it may need.
# On demand costs three reservation prices more than using a reserved wavelength,
# so a wavelength is worth reserving when it is needed with probability above 1/3.
# Wavelengths 10..12 are needed only at 4 kbps, probability 1/5.
print({key: a.reserved for (kind, key, f), a in plan.allocations.items() if kind == "qkd"})

# The reported total is the program objective at the plan's variable values.
assert prog.evaluate(plan.to_assignment()) == plan.total_cost
assert prog.violations(plan.to_assignment()) == []
