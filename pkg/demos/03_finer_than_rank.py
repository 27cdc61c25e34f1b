"""Two grid modules with the same rank invariant but different filtered ranks.

X and Y live on the 1x1 grid with a 2-dimensional space at the origin.  X
sends the same basis vector up both arrows; Y sends different ones.  Every
individual structure map has the same rank, so the classical rank invariant
cannot tell them apart.
"""

from pathlib import Path

import jordanpers
from jordanpers import io
from jordanpers.jordan import filtered_rank, jordan_module_family, jordan_type, rank_invariant
from jordanpers.zigzag import R_vector

DATA = Path(jordanpers.__file__).parent / "data"

X, sx = io.load_module(DATA / "finer_X_grid.json")
Y, _ = io.load_module(DATA / "finer_Y_grid.json")
S = io.slices_from_json(X.poset, sx)

print("norm slices:", S)
print("rank invariants equal:", rank_invariant(X) == rank_invariant(Y))
print("Jordan types:", tuple(jordan_type(X, S)), tuple(jordan_type(Y, S)))

fx, fy = jordan_module_family(X, S), jordan_module_family(Y, S)
print("\ndegree-1 Jordan module dimension at the origin: X=%d, Y=%d" % (fx.dim(1, (0, 0)), fy.dim(1, (0, 0))))

tx, ty = filtered_rank(X, S, fx), filtered_rank(Y, S, fy)
for i in range(S.n):
    diff = [(x, y) for (x, y) in tx[i].values if tx[i].value(x, y) != ty[i].value(x, y)]
    print("degree %d: %d pairs differ" % (i, len(diff)), diff[:3])

# degree 0 never separates modules that the rank invariant identifies
print("\ndegree-0 tables equal:", tx[0] == ty[0])

# the zigzag view of the same pair: vertex 2 is the source, R entry (1,3) differs
Xz, _ = io.load_module(DATA / "finer_X_zigzag.json")
Yz, _ = io.load_module(DATA / "finer_Y_zigzag.json")

print("zigzag R(1,3):", R_vector(Xz)[(1, 3)], R_vector(Yz)[(1, 3)])
