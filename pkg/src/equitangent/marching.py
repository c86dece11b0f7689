"""Marching-squares zero-set extraction on masked, optionally periodic grids.

Works in index space: values[i, j] lives at integer position (i, j).
Crossing positions are linearly interpolated along grid edges, and each
crossing is keyed by its grid edge, so segments from adjacent cells chain
exactly.  Zero values count as positive, which keeps node-exact zeros on
the contour without special cases.
"""

import numpy as np

EdgeKey = tuple[str, int, int]


def _cell_segments(case: int, center_pos: bool, i: int, j: int) -> list[tuple[EdgeKey, EdgeKey]]:
    bottom: EdgeKey = ("h", i, j)
    top: EdgeKey = ("h", i, j + 1)
    left: EdgeKey = ("v", i, j)
    right: EdgeKey = ("v", i + 1, j)
    table = {
        1: [(bottom, left)],
        2: [(bottom, right)],
        4: [(top, right)],
        8: [(top, left)],
        3: [(left, right)],
        6: [(bottom, top)],
        12: [(left, right)],
        9: [(bottom, top)],
        7: [(top, left)],
        11: [(top, right)],
        13: [(bottom, right)],
        14: [(bottom, left)],
    }
    if case in table:
        return table[case]
    if case == 5:  # bl, tr positive
        return [(bottom, right), (top, left)] if center_pos else [(bottom, left), (top, right)]
    if case == 10:  # br, tl positive
        return [(bottom, left), (top, right)] if center_pos else [(bottom, right), (top, left)]
    return []


def extract_chains(
    values: np.ndarray,
    mask: np.ndarray | None = None,
    wrap_x: bool = False,
    wrap_y: bool = False,
):
    """Chain the zero set of ``values`` into polylines.

    ``mask`` marks excluded nodes (True = excluded); cells touching an
    excluded or non-finite node are skipped, so chains end there.
    Returns (points, closed) where each entry of ``points`` is a list of
    (ix, iy) crossings in index space; on wrapped axes they stay within
    [0, n) and the caller unwraps.
    """
    nx, ny = values.shape
    finite = np.isfinite(values)
    ok = finite if mask is None else (finite & ~mask)
    sign = (values >= 0.0) & finite

    sx = np.roll(sign, -1, axis=0)
    sy = np.roll(sign, -1, axis=1)
    sxy = np.roll(sx, -1, axis=1)
    okx = np.roll(ok, -1, axis=0)
    oky = np.roll(ok, -1, axis=1)
    okxy = np.roll(okx, -1, axis=1)

    ncx = nx if wrap_x else nx - 1
    ncy = ny if wrap_y else ny - 1
    bl = sign[:ncx, :ncy]
    br = sx[:ncx, :ncy]
    tl = sy[:ncx, :ncy]
    tr = sxy[:ncx, :ncy]
    valid = ok[:ncx, :ncy] & okx[:ncx, :ncy] & oky[:ncx, :ncy] & okxy[:ncx, :ncy]
    case = (
        bl.astype(np.int8)
        + 2 * br.astype(np.int8)
        + 4 * tr.astype(np.int8)
        + 8 * tl.astype(np.int8)
    )
    active = np.argwhere(valid & (case > 0) & (case < 15))

    def val(i, j):
        return values[i % nx, j % ny]

    def canon(key: EdgeKey) -> EdgeKey:
        kind, i, j = key
        if wrap_x:
            i %= nx
        if wrap_y:
            j %= ny
        return (kind, i, j)

    segments: list[tuple[EdgeKey, EdgeKey]] = []
    seg_by_edge: dict[EdgeKey, list[int]] = {}
    for raw_i, raw_j in active:
        i, j = int(raw_i), int(raw_j)
        c = int(case[i, j])
        if c in (5, 10):
            center = val(i, j) + val(i + 1, j) + val(i, j + 1) + val(i + 1, j + 1)
            segs = _cell_segments(c, center >= 0.0, i, j)
        else:
            segs = _cell_segments(c, False, i, j)
        for a, b in segs:
            a, b = canon(a), canon(b)
            idx = len(segments)
            segments.append((a, b))
            seg_by_edge.setdefault(a, []).append(idx)
            seg_by_edge.setdefault(b, []).append(idx)

    seg_used = [False] * len(segments)

    def walk(start: EdgeKey):
        chain = [start]
        cur = start
        while True:
            nxt = next((si for si in seg_by_edge[cur] if not seg_used[si]), None)
            if nxt is None:
                return chain, False
            seg_used[nxt] = True
            a, b = segments[nxt]
            cur = b if a == cur else a
            if cur == chain[0]:
                return chain, True
            chain.append(cur)

    chains: list[list[EdgeKey]] = []
    closed: list[bool] = []
    odd_nodes = sorted(k for k, v in seg_by_edge.items() if len(v) % 2 == 1)
    for start in odd_nodes:
        if all(seg_used[si] for si in seg_by_edge[start]):
            continue
        chain, is_closed = walk(start)
        chains.append(chain)
        closed.append(is_closed)
    for start in sorted(seg_by_edge):
        if all(seg_used[si] for si in seg_by_edge[start]):
            continue
        chain, is_closed = walk(start)
        chains.append(chain)
        closed.append(is_closed)

    def edge_point(key: EdgeKey):
        kind, i, j = key
        v0 = val(i, j)
        v1 = val(i + 1, j) if kind == "h" else val(i, j + 1)
        denom = v0 - v1
        t = 0.5 if denom == 0.0 else v0 / denom
        t = min(max(float(t), 0.0), 1.0)
        return (i + t, float(j)) if kind == "h" else (float(i), j + t)

    points = [[edge_point(k) for k in chain] for chain in chains]
    return points, closed
