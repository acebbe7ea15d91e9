"""Pure-Python integer kernels.

These are the hot inner loops of the library: 2x2 unimodular transport
products around the singular origin and the ray-vector closure recurrence.
`tropcyl._speedups` provides a compiled drop-in replacement; both backends
must return bit-identical results (see tests/test_kernels.py).

All arithmetic is plain Python int, so results are exact for any input size.
"""

from itertools import product


def monodromy_product(ds):
    """Product of the forward wall transports once around the origin.

    `ds` is the cyclic self-intersection sequence (d_0, ..., d_{l-1}).
    Walls are crossed counterclockwise starting from cone 0, i.e. in the
    order 1, 2, ..., l-1, 0; each crossing acts on (e_i, e_{i+1})
    coordinates by the determinant-1 matrix [[-d, 1], [-1, 0]].
    Returns the row-major entries (a, b, c, d) of the composite.
    """
    l = len(ds)
    a, b, c, d = 1, 0, 0, 1
    for k in range(1, l + 1):
        dk = ds[k % l]
        # left-multiply by [[-dk, 1], [-1, 0]]
        a, b, c, d = -dk * a + c, -dk * b + d, -a, -b
    return a, b, c, d


def fan_closure_vectors(ds):
    """Ray vectors of the toric fan candidate, or None if it does not close.

    Runs v_0=(1,0), v_1=(0,1), v_{i+1} = -v_{i-1} - d_i * v_i and accepts
    exactly when the moving frame returns to the start after one cycle
    (v_l = v_0 and v_{l+1} = v_1), which happens precisely when the
    monodromy is the identity.
    """
    l = len(ds)
    vs = [(1, 0), (0, 1)]
    for i in range(1, l + 1):
        x0, y0 = vs[i - 1]
        x1, y1 = vs[i]
        di = ds[i % l]
        vs.append((-x0 - di * x1, -y0 - di * y1))
    if vs[l] == (1, 0) and vs[l + 1] == (0, 1):
        return vs[:l]
    return None


def verify_toric_grid(l, lo, hi):
    """Exhaustive check of `monodromy == identity  <=>  fan closes`.

    Sweeps every self-intersection sequence of length `l` with entries in
    [lo, hi].  Returns (pairs_checked, closures_found, mismatches).
    """
    pairs = 0
    closures = 0
    mismatches = 0
    for ds in product(range(lo, hi + 1), repeat=l):
        pairs += 1
        trivial = monodromy_product(ds) == (1, 0, 0, 1)
        closed = fan_closure_vectors(ds) is not None
        if closed:
            closures += 1
        if trivial != closed:
            mismatches += 1
    return pairs, closures, mismatches
