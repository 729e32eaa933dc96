"""Optimized plan against shortest-path provisioning on USNET, 10 to 60 requests.

Both baselines route on the shortest path. ``on_demand_only`` buys every
wavelength after the rate is known; ``reserve_max`` reserves for the peak
rate. Both are priced with the same objective as the optimized plan.
"""

from qkdplan.experiments import parse_config, run_baseline_comparison, write_csv

cfg = parse_config(
    """
    experiment = baseline
    axis = request_count
    values = 10:60:10
    k_min = 1
    k_max = 4
    seed = 2023
    workers = 4
    """
)
header, rows = run_baseline_comparison(cfg)
print(write_csv(header, rows))

for mode in ("on_demand_only", "reserve_max"):
    gains = [float(r[4]) for r in rows if r[1] == mode]
    print(f"{mode:15} mean improvement {sum(gains) / len(gains):.2f}%")
