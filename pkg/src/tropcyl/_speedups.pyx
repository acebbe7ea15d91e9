# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled integer kernels (drop-in for tropcyl._kernels_py).

Works on C int64 with explicit magnitude guards: whenever an input or an
intermediate value could overflow, OverflowError is raised and the caller
falls back to the arbitrary-precision pure-Python kernel.
"""

from libc.stdint cimport int64_t

# Entries are kept below 1<<40 and inputs below 1<<20, so a multiply-add
# stays below 1<<62.
cdef int64_t MAX_ENTRY = <int64_t>1 << 40
cdef int64_t MAX_INPUT = <int64_t>1 << 20

cdef int MAXL = 64


cdef inline void _check_entry(int64_t x) except *:
    if x > MAX_ENTRY or x < -MAX_ENTRY:
        raise OverflowError("kernel entry out of int64 guard range")


cdef void _load(object ds, int64_t* buf, int l) except *:
    cdef int i
    cdef int64_t v
    for i in range(l):
        v = ds[i]
        if v > MAX_INPUT or v < -MAX_INPUT:
            raise OverflowError("self-intersection out of int64 guard range")
        buf[i] = v


cdef inline void _monodromy_raw(int64_t* ds, int l, int64_t* out) except *:
    cdef int64_t a = 1, b = 0, c = 0, d = 1
    cdef int64_t dk, na, nb
    cdef int k
    for k in range(1, l + 1):
        dk = ds[k % l]
        na = -dk * a + c
        nb = -dk * b + d
        c = -a
        d = -b
        a = na
        b = nb
        _check_entry(a)
        _check_entry(b)
    out[0] = a
    out[1] = b
    out[2] = c
    out[3] = d


cdef inline bint _closure_raw(int64_t* ds, int l, int64_t* vx, int64_t* vy) except *:
    cdef int i
    cdef int64_t di
    vx[0] = 1
    vy[0] = 0
    vx[1] = 0
    vy[1] = 1
    for i in range(1, l + 1):
        di = ds[i % l]
        vx[i + 1] = -vx[i - 1] - di * vx[i]
        vy[i + 1] = -vy[i - 1] - di * vy[i]
        _check_entry(vx[i + 1])
        _check_entry(vy[i + 1])
    return vx[l] == 1 and vy[l] == 0 and vx[l + 1] == 0 and vy[l + 1] == 1


def monodromy_product(ds):
    """See tropcyl._kernels_py.monodromy_product."""
    cdef int l = len(ds)
    if l < 1 or l > MAXL:
        raise OverflowError("sequence length outside compiled kernel range")
    cdef int64_t buf[64]
    cdef int64_t out[4]
    _load(ds, buf, l)
    _monodromy_raw(buf, l, out)
    return out[0], out[1], out[2], out[3]


def fan_closure_vectors(ds):
    """See tropcyl._kernels_py.fan_closure_vectors."""
    cdef int l = len(ds)
    if l < 1 or l > MAXL:
        raise OverflowError("sequence length outside compiled kernel range")
    cdef int64_t buf[64]
    cdef int64_t vx[66]
    cdef int64_t vy[66]
    cdef int i
    _load(ds, buf, l)
    if not _closure_raw(buf, l, vx, vy):
        return None
    return [(vx[i], vy[i]) for i in range(l)]


def verify_toric_grid(int l, int lo, int hi):
    """See tropcyl._kernels_py.verify_toric_grid."""
    if l < 1 or l > MAXL:
        raise OverflowError("sequence length outside compiled kernel range")
    if lo > hi:
        return 0, 0, 0
    if lo < -MAX_INPUT or hi > MAX_INPUT:
        raise OverflowError("grid bounds outside compiled kernel range")

    cdef int64_t buf[64]
    cdef int64_t out[4]
    cdef int64_t vx[66]
    cdef int64_t vy[66]
    cdef int i
    cdef long pairs = 0, closures = 0, mismatches = 0
    cdef bint trivial, closed

    for i in range(l):
        buf[i] = lo

    while True:
        pairs += 1
        _monodromy_raw(buf, l, out)
        trivial = out[0] == 1 and out[1] == 0 and out[2] == 0 and out[3] == 1
        closed = _closure_raw(buf, l, vx, vy)
        if closed:
            closures += 1
        if trivial != closed:
            mismatches += 1
        # odometer increment
        i = l - 1
        while i >= 0:
            if buf[i] < hi:
                buf[i] += 1
                break
            buf[i] = lo
            i -= 1
        if i < 0:
            break

    return pairs, closures, mismatches
