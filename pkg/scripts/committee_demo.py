#!/usr/bin/env python3
"""Print the committee example layer by layer, with each vertex's value and Phi."""
import argparse

from jumpfree.graph import ExplicitEdges, build_induced, layers
from jumpfree.harness.fixtures import EDGES, TABLE, points
from jumpfree.labelers import MaxRho, TableSelection, h_rho, s_hat, t_hat
from jumpfree.lattice import Cube, Domain
from jumpfree.regularity import check_regularity


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--rho", choices=["max"], default="max")
    args = ap.parse_args()

    D = Domain(points())
    G = build_induced(ExplicitEdges(EDGES, strict=True), D)
    F = TableSelection(3, {(z, tuple(reps)): i for z, reps, i in TABLE})
    s = s_hat(G, F, keep_phi=True)
    h = h_rho(G, F, MaxRho())
    t = t_hat(G)
    for m, layer in layers(D):
        for z in sorted(layer):
            kids = ", ".join(str(y) for y in G.children(z)) or "-"
            phi = sorted(s.phi[z]) or "empty"
            print(f"max {m:>2}  {str(z):<8} s={s[z]:<3} h={h[z]:<3} t={t[z]:<3} "
                  f"passes {s.reported(z):<3} Phi={phi}  -> {kids}")
    rep = check_regularity(s, Cube((7, 11), 2))
    print("regular over {7, 11}:", rep.is_regular, rep.to_json()["classes"])


if __name__ == "__main__":
    main()
