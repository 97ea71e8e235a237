# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled kernels; same contract as ``rainbowap._pykernels``.

The search and sweep loops run without the GIL so the thread pools in
``rainbowap.search`` and ``rainbowap.verifier`` get real parallelism.
"""
from cpython.mem cimport PyMem_Malloc, PyMem_Free
from libc.stdlib cimport free as c_free, realloc as c_realloc

BACKEND = "compiled"

cdef enum:
    C_EXHAUSTED = 0
    C_FOUND = 1
    C_BUDGET = 2

EXHAUSTED = C_EXHAUSTED
FOUND = C_FOUND
BUDGET = C_BUDGET


cdef int* _to_int_buffer(object seq, Py_ssize_t extra) except NULL:
    cdef Py_ssize_t n = len(seq)
    cdef int* buf = <int*> PyMem_Malloc((n + extra + 1) * sizeof(int))
    if buf == NULL:
        raise MemoryError()
    cdef Py_ssize_t i
    for i in range(n):
        buf[i] = seq[i]
    for i in range(n, n + extra + 1):
        buf[i] = 0
    return buf


def find_rainbow(colors):
    """Lexicographically least ``(a, d)`` rainbow triple, or ``None``."""
    cdef Py_ssize_t n = len(colors)
    cdef int* c = _to_int_buffer(colors, 0)
    cdef Py_ssize_t a, d, hit_a = -1, hit_d = -1
    cdef int x, y, z
    try:
        with nogil:
            for a in range(n):
                d = 1
                while a + 2 * d < n:
                    x = c[a]
                    y = c[a + d]
                    z = c[a + 2 * d]
                    if x != y and y != z and x != z:
                        hit_a = a
                        hit_d = d
                        break
                    d += 1
                if hit_a >= 0:
                    break
    finally:
        PyMem_Free(c)
    if hit_a < 0:
        return None
    return (hit_a, hit_d)


cdef inline bint _ok(const int* c, int i, int col) noexcept nogil:
    cdef int d, x, y
    for d in range(1, i // 2 + 1):
        x = c[i - 2 * d]
        y = c[i - d]
        if x != y and x != col and y != col:
            return False
    return True


cdef struct LeafBuffer:
    unsigned char* data
    Py_ssize_t count
    Py_ssize_t capacity


cdef int _push_leaf(LeafBuffer* buf, const int* c, int n) noexcept nogil:
    cdef Py_ssize_t newcap
    cdef unsigned char* grown
    cdef int j
    if buf.count == buf.capacity:
        newcap = buf.capacity * 2 if buf.capacity else 64
        grown = <unsigned char*> c_realloc(buf.data, newcap * n + 1)
        if grown == NULL:
            return -1
        buf.data = grown
        buf.capacity = newcap
    for j in range(n):
        buf.data[buf.count * n + j] = <unsigned char> c[j]
    buf.count += 1
    return 0


def search(int n, int k, int max_colors, prefix, long long node_limit, bint enumerate_all):
    """Depth-first search over canonical k-bounded rainbow-free colorings."""
    cdef int p = len(prefix)
    if enumerate_all and n > 255:
        raise ValueError("enumeration supports n <= 255")
    cdef int* c = _to_int_buffer(prefix, n - p)
    cdef int* sz = <int*> PyMem_Malloc((max_colors + 2) * sizeof(int))
    cdef int* mused = <int*> PyMem_Malloc((n + 2) * sizeof(int))
    cdef int* nxt = <int*> PyMem_Malloc((n + 2) * sizeof(int))
    cdef LeafBuffer leaves
    leaves.data = NULL
    leaves.count = 0
    leaves.capacity = 0
    cdef int i, m, lim, t, j, m0 = 0
    cdef long long nodes = 1
    cdef int status = C_EXHAUSTED
    cdef bint oom = False
    if sz == NULL or mused == NULL or nxt == NULL:
        PyMem_Free(c); PyMem_Free(sz); PyMem_Free(mused); PyMem_Free(nxt)
        raise MemoryError()
    try:
        for j in range(max_colors + 2):
            sz[j] = 0
        for j in range(p):
            sz[c[j]] += 1
            if c[j] + 1 > m0:
                m0 = c[j] + 1
        mused[p] = m0
        nxt[p] = 0
        i = p
        with nogil:
            while True:
                if i == n:
                    if not enumerate_all:
                        status = C_FOUND
                        break
                    if _push_leaf(&leaves, c, n) != 0:
                        oom = True
                        break
                    if i == p:
                        break
                    i -= 1
                    sz[c[i]] -= 1
                    continue
                m = mused[i]
                lim = m + 1 if m < max_colors else m
                t = nxt[i]
                while t < lim:
                    if sz[t] < k and _ok(c, i, t):
                        break
                    t += 1
                if t < lim:
                    c[i] = t
                    sz[t] += 1
                    nxt[i] = t + 1
                    mused[i + 1] = m + 1 if t == m else m
                    i += 1
                    nxt[i] = 0
                    nodes += 1
                    if node_limit > 0 and nodes > node_limit:
                        status = C_BUDGET
                        break
                else:
                    if i == p:
                        break
                    i -= 1
                    sz[c[i]] -= 1
        if oom:
            raise MemoryError()
        if enumerate_all:
            out = [tuple(leaves.data[j * n:(j + 1) * n]) for j in range(leaves.count)] if n else [()] * leaves.count
            if status != C_BUDGET:
                status = C_FOUND if leaves.count else C_EXHAUSTED
            return status, out, nodes
        if status == C_FOUND:
            return status, tuple([c[j] for j in range(n)]), nodes
        return status, None, nodes
    finally:
        PyMem_Free(c)
        PyMem_Free(sz)
        PyMem_Free(mused)
        PyMem_Free(nxt)
        c_free(leaves.data)


cdef inline bint _rainbow_free(const int* c, int n) noexcept nogil:
    cdef int i
    for i in range(2, n):
        if not _ok(c, i, c[i]):
            return False
    return True


def rainbow_free_colorings(int n, int q, prefix, bint prune):
    """All rainbow-free maps ``[0, n) -> [0, q)`` extending ``prefix``."""
    cdef int p = len(prefix)
    if p > n:
        raise ValueError("prefix longer than n")
    if q > 255:
        raise ValueError("at most 255 colors")
    cdef int free = n - p
    instances = int(q) ** int(free)
    cdef int* c = _to_int_buffer(prefix, free)
    cdef int* nxt = <int*> PyMem_Malloc((n + 2) * sizeof(int))
    cdef LeafBuffer leaves
    leaves.data = NULL
    leaves.count = 0
    leaves.capacity = 0
    cdef int i, j, t
    cdef bint oom = False
    if nxt == NULL:
        PyMem_Free(c)
        raise MemoryError()
    try:
        with nogil:
            if not prune:
                while True:
                    if _rainbow_free(c, n):
                        if _push_leaf(&leaves, c, n) != 0:
                            oom = True
                            break
                    j = n - 1
                    while j >= p and c[j] == q - 1:
                        c[j] = 0
                        j -= 1
                    if j < p:
                        break
                    c[j] += 1
            elif _rainbow_free(c, p):
                i = p
                nxt[p] = 0
                while True:
                    if i == n:
                        if _push_leaf(&leaves, c, n) != 0:
                            oom = True
                            break
                        if i == p:
                            break
                        i -= 1
                        continue
                    t = nxt[i]
                    while t < q and not _ok(c, i, t):
                        t += 1
                    if t < q:
                        c[i] = t
                        nxt[i] = t + 1
                        i += 1
                        nxt[i] = 0
                    else:
                        if i == p:
                            break
                        i -= 1
        if oom:
            raise MemoryError()
        if n == 0:
            return [()] * leaves.count, instances
        return [tuple(leaves.data[j * n:(j + 1) * n]) for j in range(leaves.count)], instances
    finally:
        PyMem_Free(c)
        PyMem_Free(nxt)
        c_free(leaves.data)
