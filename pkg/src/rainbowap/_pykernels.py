"""Pure-Python kernels.

Reference implementation of the hot loops; ``_ckernels.pyx`` mirrors every
function here with identical signatures and results. Positions are 0-based
indices into the color sequence.
"""

BACKEND = "python"

EXHAUSTED = 0
FOUND = 1
BUDGET = 2


def find_rainbow(colors):
    """Lexicographically least ``(a, d)`` with ``colors[a], colors[a+d],
    colors[a+2d]`` pairwise distinct, or ``None``."""
    c = list(colors)
    n = len(c)
    best = None
    # For each d, the first rainbow start; the overall winner minimises (a, d).
    for d in range(1, (n - 1) // 2 + 1):
        limit = n - 2 * d if best is None else min(n - 2 * d, best[0] + 1)
        for a, (x, y, z) in enumerate(zip(c[:limit], c[d:d + limit], c[2 * d:2 * d + limit])):
            if x != y and y != z and x != z:
                if best is None or a < best[0]:
                    best = (a, d)
                break
    return best


def _ok(c, i, col):
    # AP triples (i-2d, i-d, i) only; earlier triples were checked on entry.
    for d in range(1, i // 2 + 1):
        x = c[i - 2 * d]
        y = c[i - d]
        if x != y and x != col and y != col:
            return False
    return True


def search(n, k, max_colors, prefix, node_limit, enumerate_all):
    """Depth-first search over canonical k-bounded rainbow-free colorings.

    The prefix must itself be canonical, k-bounded and rainbow-free. Returns
    ``(status, payload, nodes)``; payload is the first witness (tuple) in
    decision mode, or the list of all leaves in enumeration mode.
    """
    p = len(prefix)
    c = list(prefix) + [0] * (n - p)
    sz = [0] * (max_colors + 1)
    for col in prefix:
        sz[col] += 1
    m0 = max(prefix) + 1 if p else 0
    mused = [0] * (n + 1)
    mused[p] = m0
    nxt = [0] * (n + 1)
    nodes = 1
    leaves = []
    i = p
    while True:
        if i == n:
            if not enumerate_all:
                return FOUND, tuple(c), nodes
            leaves.append(tuple(c))
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
            if node_limit and nodes > node_limit:
                return BUDGET, (leaves if enumerate_all else None), nodes
        else:
            if i == p:
                break
            i -= 1
            sz[c[i]] -= 1
    if enumerate_all:
        return (FOUND if leaves else EXHAUSTED), leaves, nodes
    return EXHAUSTED, None, nodes


def _rainbow_free(c):
    n = len(c)
    for i in range(2, n):
        z = c[i]
        for d in range(1, i // 2 + 1):
            x = c[i - 2 * d]
            y = c[i - d]
            if x != y and x != z and y != z:
                return False
    return True


def rainbow_free_colorings(n, q, prefix, prune):
    """All rainbow-free maps ``[0, n) -> [0, q)`` extending ``prefix``.

    Returns ``(colorings, instances)`` where ``instances`` is the number of
    raw assignments accounted for (always ``q ** (n - len(prefix))``). With
    ``prune`` false every raw assignment is generated and filtered.
    """
    p = len(prefix)
    free = n - p
    out = []
    if free < 0:
        raise ValueError("prefix longer than n")
    if not prune:
        c = list(prefix) + [0] * free
        while True:
            if _rainbow_free(c):
                out.append(tuple(c))
            j = n - 1
            while j >= p and c[j] == q - 1:
                c[j] = 0
                j -= 1
            if j < p:
                break
            c[j] += 1
        return out, q ** free

    if not _rainbow_free(prefix):
        return out, q ** free
    c = list(prefix) + [0] * free

    def rec(i):
        if i == n:
            out.append(tuple(c))
            return
        for col in range(q):
            if _ok(c, i, col):
                c[i] = col
                rec(i + 1)

    rec(p)
    return out, q ** free
