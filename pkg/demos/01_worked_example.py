# The 2x1 grid module from the shipped fixture, sliced into three antichains.
#
# Run with:  python demos/01_worked_example.py

from pathlib import Path

import jordanpers
from jordanpers import io, jordan, module
from jordanpers.io import point_key

M, raw_slices = io.load_module(Path(jordanpers.__file__).parent / "data" / "worked_example_grid.json")
S = io.slices_from_json(M.poset, raw_slices)

print("dimensions:")
for x in sorted(M.poset.elements):
    print("  ", point_key(M.poset, x), M.dim(x))

print("functorial:", bool(module.validate(M)))

#
# The slice operator T has one block per pair of consecutive slices.  Each
# block holds the structure maps M_yx for x in one slice and y above it in
# the next; incomparable pairs get a zero block.
#

T = jordan.nilpotent_operator(M, S)
print("\nslice dims", T.slice_dims, "-> operator of size", T.size)
print(T.assembled.array)

ranks = T.power_ranks()
print("\nrank T^k for k = 0..n:", ranks)

# a_i = rank T^(i+1) + rank T^(i-1) - 2 rank T^i counts Jordan blocks of size i
print("Jordan type:", tuple(jordan.jordan_type(M, S)))
print("same count from the A_n decomposition:", tuple(jordan.an_decomposition_counts(M, S)))
