"""Realise the integer cap min(h(A), h(full) - k) by an actual arrangement.

The construction works over an extension field large enough to hold a vector
outside every deficient flat.  Projecting away from that vector lowers the
full rank by one while leaving smaller ranks alone.
"""
from polyrep import field_make, rank_vector
from polyrep.constructs import fano_x1
from polyrep.represent import find_external_vector, integer_perturb


if __name__ == "__main__":
    arr = fano_x1(field_make(2))
    h = rank_vector(arr)
    ext = find_external_vector(arr)
    print(f"external vector found over GF(2^{ext.degree}): {ext.vector.tolist()}")
    for k in range(1, int(h.full) + 1):
        out = integer_perturb(arr, k)
        g = rank_vector(out)
        match = list(g.values()) == [min(v, h.full - k) for v in h.values()]
        print(f"k = {k}: arrangement over {out.field}, full rank {g.full}, matches cap: {match}")
