# Stability of the filtered-rank distances under shifts.
#
# For a module M and its diagonal shift N = M[delta] there is a canonical
# delta-interleaving.  The landscape and erosion distances between the Jordan
# filtered ranks of M and N are then bounded by delta.

import csv
import io as _io

from jordanpers import GridPoset, norm_slices
from jordanpers.distances import check_stability, landscape
from jordanpers.jordan import filtered_rank
from jordanpers.module import box_module, canonical_shift_certificate, random_module, shift

G = GridPoset((2, 2))
S = norm_slices(G)

print("delta  d_L  d_E  chain")
for seed in range(4):
    M = random_module(G, 2, seed)
    for delta in (0, 1, 2):
        rep = check_stability(M, shift(M, delta), S, canonical_shift_certificate(M, delta))
        print("%5d  %3d  %3s  %s" % (delta, rep.d_L, rep.d_E, "ok" if rep.chain_ok else "BROKEN"))

#
# A landscape is exportable as CSV for plotting.  Here is the one of the
# degree-0 filtered rank of a 1-D interval module, sliced at {0}, {1}.
#

I = box_module((0,), (6,))
F0 = filtered_rank(I, [[(0,)], [(1,)]])[0]
L = landscape(F0, 2)

buf = _io.StringIO()
w = csv.writer(buf)
w.writerow(["k", "x", "lambda"])
w.writerows(L.to_csv_rows())
print()
print(buf.getvalue())
