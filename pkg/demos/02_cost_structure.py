"""Total cost against a forced reservation level, QKD then KM.

Pinning the level turns reservation into a constraint. The free optimum sits
at the bottom of each curve, and from the peak demand upward nothing of the
swept kind is bought on demand.
"""

from qkdplan.experiments import parse_config, run_cost_structure_sweep

for axis in ("reserved_qkd", "reserved_km"):
    cfg = parse_config(
        f"""
        experiment = cost_structure
        axis = {axis}
        requests = 5
        k_min = 4
        k_max = 4
        seed = 2023
        """
    )
    header, rows = run_cost_structure_sweep(cfg)
    print(axis)
    print(f"{'level':>8} {'first':>14} {'second':>14} {'on-demand':>12} {'total':>14}")
    for kind, level, total_res, first, second, ond, total in rows:
        print(f"{level!s:>8} {float(first):14.2f} {float(second):14.2f} {float(ond):12.2f} {float(total):14.2f}")
    print()
