"""Wavelengths by phase as a known key rate grows on a capacity-limited line.

Each kbps needs three QKD wavelengths and one KM wavelength per span. With 15
QKD and 3 KM wavelengths per span, reservations saturate at 5 and 3 kbps; the
remainder is bought on demand.
"""

from qkdplan.experiments import parse_config, run_utilization_sweep

cfg = parse_config(
    """
    experiment = utilization
    axis = secret_key_rate
    topology = line
    values = 0:10
    qkd_capacity = 15
    km_capacity = 3
    seed = 2023
    """
)
net = cfg.load_topology()
print("span lengths:", [float(l.length_km) for l in net.links if l.tail < l.head])

header, rows = run_utilization_sweep(cfg)
print(" ".join(f"{h:>13}" for h in header))
for row in rows:
    print(" ".join(f"{float(v):13.1f}" for v in row))
