"""A short walk through the package: backends, the invariant, moves, and a broken backend.

    python3 demos/tour.py
"""

from modtv import builtins
from modtv.catdata import load_backend
from modtv.cli import validation_report
from modtv.statesum import Stats, fuzz_invariance, tv_invariant
from modtv.tricomplex import gauge_move_phi, load_h_triangulation, pachner_14, pachner_23, standard_h_triangulation

# The 3-sphere as the boundary of the 4-simplex, with a Hamiltonian 5-cycle as gamma.
for name in ("vec_z2", "vec_s3", "fib", "ising"):
    B = builtins.load_shipped(name)
    h = standard_h_triangulation(B.group, B)
    stats = Stats()
    val = tv_invariant(h, B, stats=stats)
    print(f"{name:7s} S^3 -> {val}  (~{val.to_complex().real:.6f}, {stats.states} states)")

# Fibonacci: 1/(2 + phi) exactly, whichever triangulation we use.
fib = builtins.load_shipped("fib")
h = standard_h_triangulation(fib.group, fib)
h = pachner_23(h, 3)
t, a, b = h.complex.edge_reps(min(h.gamma))[0]
h = pachner_14(h, t, (a, b))
print("after a 2-3 and a 1-4 move:", h.complex.counts(), "->", tv_invariant(h, fib))

# Ising is Z/2-graded; gauging the cocycle at a vertex changes phi but not the value.
ising = builtins.load_shipped("ising")
h = load_h_triangulation(builtins.backend_path("s3_pachner"), ising.group, ising)
g = gauge_move_phi(h, h.complex.vertices[0], 1)
print("ising, gauged:", sum(g.phi), "odd edges ->", tv_invariant(g, ising))

# A random walk of moves.
rep = fuzz_invariance(standard_h_triangulation(ising.group, ising), ising, 25, seed=1)
print("ising fuzz:", "pass" if rep.ok else "FAIL", sorted(rep.kinds()))

# Corrupted data is caught by the identity checks before anything is summed.
bad = load_backend(builtins.backend_path("fib_bad_tet"))
for row in validation_report(bad):
    if not row["ok"]:
        print("fib_bad_tet:", row["check"], row["witness"])
