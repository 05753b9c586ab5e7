"""Glue checks for the K3 catalog and cyclic root isometries."""

from eigenperiod.k3 import catalog, cyclic_root_isometry, glue_report, k3_lattice

K = k3_lattice()
print("K3 lattice: rank", K.rank, "signature", tuple(K.signature())[:2], "det", K.det())

for pair in catalog():
    r = glue_report(pair)
    m = pair.M.label if pair.M is not None else f"(rank {pair.rank_M}, disc {pair.m_factors})"
    print(f"{pair.name:10} M = {m:28} N = {pair.N.label:26} disc {r.disc_N} pass={r.passed}")

for p in (3, 5, 7):
    L, rho, report = cyclic_root_isometry(p)
    print(f"order-{p} rotation of {L.label}:", {k: v for k, v in report.items() if k != "p"})
