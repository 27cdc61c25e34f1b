# Barcodes of zigzag modules from multiranks alone.
#
# We plant a barcode, hide it behind random changes of basis at every vertex,
# and read it back from the multirank vector R(M).

import numpy as np

from jordanpers import ZigzagPoset
from jordanpers.zigzag import R_vector, barcode_from_R, interval_R_matrix, is_isomorphic, planted_module

Z = ZigzagPoset("FFBFFB")   # 1 -> 2 -> 3 <- 4 -> 5 -> 6 <- 7
print(Z)

planted = {(1, 7): 1, (2, 4): 2, (4, 6): 1, (5, 5): 1}
M = planted_module(Z, planted, seed=2024)
print("dims:", [M.dim(i) for i in range(1, 8)])

R = R_vector(M)
print("\nR(M), row i lists the entries (i, i) .. (i, 7):")
print(R.render())

print("\nrecovered barcode:", barcode_from_R(M))

A = interval_R_matrix(Z)
print("interval R-matrix is %dx%d with determinant %d" % (A.rows, A.cols, A.determinant()))

# the same barcode under different conjugations gives isomorphic modules
N = planted_module(Z, planted, seed=7)
print("\nM ~ N:", is_isomorphic(M, N))
print("M ~ (M without [5,5]):", is_isomorphic(M, planted_module(Z, {(1, 7): 1, (2, 4): 2, (4, 6): 1})))

rng = np.random.default_rng(0)
for trial in range(3):
    o = "".join(rng.choice(list("FB"), size=5))
    bars = {(1, 3): 1, (2, 6): 1, (3, 3): 2}
    got = barcode_from_R(planted_module(ZigzagPoset(o), bars, seed=trial))
    print(o, dict(got) == bars)
