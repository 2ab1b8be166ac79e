"""Closed-form shortest-path routing on Q_n(d, r).

A shortest path from the identity to (a, x) walks around rings and takes
exactly one cube edge per set bit of ``a``.  It is described by an
(a, x)-sequence: the ring positions at which the bits are flipped, in
order.  The cost of a sequence is the sum of ring distances between
consecutive positions, and ``dist = |a| + min cost``.

Two regimes are handled separately.  When dr = n every bit can be flipped
at exactly one ring position and the optimum comes from the largest gap in
the sorted schedule that the walk can skip.  When dr >= 2n each bit has an
early position y_t and a late position z_t, and the walk either climbs
through the y's or drops back through the z's.
"""

from __future__ import annotations

from bisect import bisect_left, bisect_right
from dataclasses import dataclass, field

import numpy as np

from .errors import InvalidPath, WrongCaseError
from .group import (
    BitVec,
    Params,
    Vertex,
    inverse,
    multiply,
    popcount,
    rotate,
    support,
)


@dataclass(frozen=True)
class AxSequence:
    positions: tuple[int, ...]
    directions: tuple[int, ...]

    @property
    def s(self) -> int:
        return len(self.directions)

    def cost(self, r: int) -> int:
        """Sum of shorter-arc ring distances between consecutive positions."""
        total = 0
        for u, v in zip(self.positions, self.positions[1:]):
            step = (v - u) % r
            total += min(step, r - step)
        return total


@dataclass(frozen=True)
class LeapPair:
    leap1: int
    leap2: int
    case: str
    schedule: tuple[int, ...] = ()
    t_star: int | None = None
    h: int | None = None
    l_index: int | None = None


@dataclass(frozen=True)
class Path:
    """Vertices as packed indices ``a * r + x``."""

    params: Params
    indices: np.ndarray = field(repr=False)

    def __len__(self) -> int:
        return len(self.indices) - 1

    @property
    def length(self) -> int:
        return len(self.indices) - 1

    def vertices(self) -> list[Vertex]:
        return [self.params.vertex_at(int(i)) for i in self.indices]

    def cube_directions(self) -> list[int]:
        """Direction of every cube edge along the path, in order."""
        a = self.indices // self.params.r
        flips = a[1:] ^ a[:-1]
        return [int(f).bit_length() for f in flips[flips != 0]]

    def __str__(self) -> str:
        return "\n".join(str(v) for v in self.vertices())


def _require(p: Params, case: str) -> None:
    if p.regime != case:
        raise WrongCaseError(f"this step needs the {case} regime, got {p} ({p.regime})")


def _bits(a: BitVec | int) -> tuple[int, list[int]]:
    value = a.value if isinstance(a, BitVec) else a
    return value, support(value)


# ---------------------------------------------------------------- dr = n


@dataclass(frozen=True)
class _Entry:
    value: int
    tag: int  # 0 start, 1 bit, 2 end
    bit: int = 0


def _entries(bits: list[int], x: int, p: Params) -> list[_Entry]:
    ent = [_Entry(0, 0), _Entry(x, 2)]
    ent += [_Entry((i - 1) // p.d, 1, i) for i in bits]
    ent.sort(key=lambda e: (e.value, e.tag, e.bit))
    return ent


def sorted_schedule(a: BitVec | int, x: int, p: Params) -> tuple[tuple[int, ...], int]:
    """Sorted schedule (y_0, ..., y_{s+1}, y_{s+2} = r) and t*.

    Ties put the start first and x last, so t* is the largest index
    holding the value x.
    """
    _require(p, "dr=n")
    _, bits = _bits(a)
    ent = _entries(bits, x % p.r, p)
    t_star = next(t for t, e in enumerate(ent) if e.tag == 2)
    return tuple(e.value for e in ent) + (p.r,), t_star


def _case1(bits: list[int], x: int, p: Params):
    ent = _entries(bits, x, p)
    y = [e.value for e in ent] + [p.r]
    t_star = next(t for t, e in enumerate(ent) if e.tag == 2)
    gaps = [0] + [y[t] - y[t - 1] for t in range(1, len(y))]
    if x == 0:
        leap1, t1 = 0, 0
    else:
        t1 = max(range(1, t_star + 1), key=lambda t: (gaps[t], -t))
        leap1 = gaps[t1]
    t2 = max(range(t_star + 1, len(y)), key=lambda t: (gaps[t], -t))
    leap2 = gaps[t2]
    return ent, tuple(y), t_star, leap1, t1, leap2, t2


def leaps_case1(a: BitVec | int, x: int, p: Params) -> LeapPair:
    _require(p, "dr=n")
    _, bits = _bits(a)
    _, y, t_star, leap1, _, leap2, _ = _case1(bits, x % p.r, p)
    return LeapPair(leap1, leap2, "dr=n", schedule=y, t_star=t_star)


def _seq(entries: list[_Entry], x: int) -> AxSequence:
    bits = [e for e in entries if e.tag == 1]
    return AxSequence(
        (0,) + tuple(e.value for e in bits) + (x,),
        tuple(e.bit for e in bits),
    )


def candidate_sequences_case1(
    a: BitVec | int, x: int, p: Params
) -> tuple[AxSequence, AxSequence]:
    """The two candidates: climb then drop back (first), or drop back then climb."""
    _require(p, "dr=n")
    _, bits = _bits(a)
    x %= p.r
    ent, _, _, _, t1, _, t2 = _case1(bits, x, p)
    body = ent[1:t1] + list(reversed(ent[max(t1, 1):]))
    first = _seq(body, x)
    body = list(reversed(ent[t2:])) + ent[1:t2]
    second = _seq(body, x)
    return first, second


# ---------------------------------------------------------------- dr >= 2n


def _yzq(bits: list[int], p: Params) -> tuple[list[int], list[int], list[int]]:
    d, n, r, k = p.d, p.n, p.r, p.k
    y = [(i - 1) // d for i in bits]
    z = [(i + d * r - n - 1) // d for i in bits]
    q = [(i - d * yt + k - 1) // d for i, yt in zip(bits, y)]
    return y, z, q


def yz_schedules(a: BitVec | int, p: Params) -> tuple[tuple[int, ...], tuple[int, ...], tuple[int, ...]]:
    """Early positions y_t, late positions z_t and the offsets q_t for the set bits."""
    _require(p, "dr>=2n")
    _, bits = _bits(a)
    y, z, q = _yzq(bits, p)
    return tuple(y), tuple(z), tuple(q)


def _leap1(y, q, x: int, qbar: int) -> tuple[int, int]:
    """(h, leap1) for x < y_s; h is 1-indexed with y_{h-1} <= x < y_h."""
    s = len(y)
    h0 = bisect_right(y, x)  # 0-indexed position of y_h
    best = y[h0] - x + q[h0]
    for j in range(h0 + 1, s):
        best = max(best, y[j] - y[j - 1] + q[j])
    best = max(best, qbar - y[-1])
    return h0 + 1, best


def _leap2(z, q, x: int, r: int, qbar: int) -> tuple[int, int]:
    """(l, leap2) where l = #{t : z_t < x} >= 1."""
    l = bisect_left(z, x)
    best = x - z[l - 1] + q[l - 1]
    for j in range(l - 1):
        best = max(best, z[j + 1] - z[j] + q[j])
    best = max(best, z[0] - r + qbar)
    return l, best


def leaps_case2(a: BitVec | int, x: int, p: Params) -> LeapPair:
    """leap1 for x <= r//2 (leap2 = 0) or leap2 for x > r//2 (leap1 = 0)."""
    _require(p, "dr>=2n")
    _, bits = _bits(a)
    x %= p.r
    y, z, q = _yzq(bits, p)
    if x <= p.r // 2:
        if not bits or x >= y[-1]:
            return LeapPair(p.qbar - x, 0, "dr>=2n")
        h, leap1 = _leap1(y, q, x, p.qbar)
        return LeapPair(leap1, 0, "dr>=2n", h=h)
    l = bisect_left(z, x)
    if l == 0:
        return LeapPair(0, p.qbar - (p.r - x), "dr>=2n", l_index=0)
    l, leap2 = _leap2(z, q, x, p.r, p.qbar)
    return LeapPair(0, leap2, "dr>=2n", l_index=l)


def _case2_length(bits: list[int], x: int, p: Params) -> int:
    r, qbar = p.r, p.qbar
    if not bits:
        return min(x, r - x)
    y, z, q = _yzq(bits, p)
    if x <= r // 2:
        if x >= y[-1]:
            return x
        _, leap1 = _leap1(y, q, x, qbar)
        return 2 * qbar - x - 2 * leap1
    if z[0] >= x:
        return r - x
    _, leap2 = _leap2(z, q, x, r, qbar)
    return 2 * qbar - (r - x) - 2 * leap2


def _case2_sequence(bits: list[int], x: int, p: Params) -> AxSequence:
    r = p.r
    s = len(bits)
    if s == 0:
        return AxSequence((0, x), ())
    y, z, q = _yzq(bits, p)
    target = _case2_length(bits, x, p)
    if x <= r // 2:
        if x >= y[-1]:
            return AxSequence((0, *y, x), tuple(bits))
        h = bisect_right(y, x)  # 0-indexed t - 1 for t = h + 1
        for t0 in range(h, s + 1):
            pos = (0, *reversed(z[t0:]), *y[:t0], x)
            dirs = (*reversed(bits[t0:]), *bits[:t0])
            seq = AxSequence(pos, dirs)
            if seq.cost(r) == target:
                return seq
    else:
        l = bisect_left(z, x)
        for t in range(0, l + 1):
            pos = (0, *y[:t], *reversed(z[t:]), x)
            dirs = (*bits[:t], *reversed(bits[t:]))
            seq = AxSequence(pos, dirs)
            if seq.cost(r) == target:
                return seq
    raise AssertionError(f"no candidate sequence reaches l={target} for {bits}@{x} in {p}")


# ---------------------------------------------------------------- public API


def origin_l(a: BitVec | int, x: int, p: Params) -> int:
    """l(a, x): the ring cost of a shortest route from the identity."""
    _, bits = _bits(a)
    x %= p.r
    if not bits:
        return min(x, p.r - x)
    if p.regime == "dr=n":
        _, _, _, leap1, _, leap2, _ = _case1(bits, x, p)
        return min(p.r + x - 2 * leap1, 2 * p.r - x - 2 * leap2)
    return _case2_length(bits, x, p)


def distance_from_origin(a: BitVec | int, x: int, p: Params) -> int:
    value, _ = _bits(a)
    return popcount(value) + origin_l(a, x, p)


def optimal_sequence(a: BitVec | int, x: int, p: Params) -> AxSequence:
    _, bits = _bits(a)
    x %= p.r
    if not bits:
        return AxSequence((0, x), ())
    if p.regime == "dr=n":
        first, second = candidate_sequences_case1(bits_to_int(bits), x, p)
        c1, c2 = first.cost(p.r), second.cost(p.r)
        return first if c1 <= c2 else second
    return _case2_sequence(bits, x, p)


def bits_to_int(bits: list[int]) -> int:
    out = 0
    for i in bits:
        out |= 1 << (i - 1)
    return out


def _arc(u: int, v: int, r: int) -> list[int]:
    """Ring positions strictly after u up to v along the shorter arc."""
    fwd = (v - u) % r
    if fwd <= r - fwd:
        return [(u + k) % r for k in range(1, fwd + 1)]
    return [(u - k) % r for k in range(1, r - fwd + 1)]


def realize_path(seq: AxSequence, p: Params) -> Path:
    """Walk the shorter arc between consecutive positions, flipping at each stop."""
    pos = seq.positions
    if len(pos) != seq.s + 2 or pos[0] != 0:
        raise InvalidPath("positions must run (0, x_1, ..., x_s, x)")
    r, n, d = p.r, p.n, p.d
    a = 0
    out = [0]
    for t in range(1, len(pos)):
        for xx in _arc(pos[t - 1] % r, pos[t] % r, r):
            out.append(a * r + xx)
        if t <= seq.s:
            j = seq.directions[t - 1]
            xt = pos[t] % r
            if not 1 <= j <= n or (j - 1 - d * xt) % n >= d:
                raise InvalidPath(f"direction {j} is not available at ring position {xt}")
            if (a >> (j - 1)) & 1:
                raise InvalidPath(f"direction {j} used twice")
            a |= 1 << (j - 1)
            out.append(a * r + xt)
    return Path(p, np.asarray(out, dtype=np.int64))


def origin_path(a: BitVec | int, x: int, p: Params) -> Path:
    return realize_path(optimal_sequence(a, x, p), p)


def distance(u: Vertex, v: Vertex, p: Params) -> int:
    w = multiply(inverse(u, p), v, p)
    return distance_from_origin(w.a, w.x, p)


def translate(path: Path, u: Vertex) -> Path:
    """Left-multiply every vertex of ``path`` by ``u``."""
    p = path.params
    a, x = np.divmod(path.indices, p.r)
    shift = (p.d * u.x) % p.n
    mask = (1 << p.n) - 1
    rot = ((a << shift) | (a >> (p.n - shift))) & mask if shift else a
    idx = (u.a.value ^ rot) * p.r + (u.x + x) % p.r
    return Path(p, idx)


def shortest_path(u: Vertex, v: Vertex, p: Params) -> Path:
    w = multiply(inverse(u, p), v, p)
    return translate(origin_path(w.a, w.x, p), u)


def check_path(path: Path) -> None:
    """Raise InvalidPath unless consecutive vertices are adjacent and all distinct."""
    p = path.params
    idx = path.indices
    if len(np.unique(idx)) != len(idx):
        raise InvalidPath("path revisits a vertex")
    a, x = np.divmod(idx, p.r)
    da = a[1:] ^ a[:-1]
    dx = (x[1:] - x[:-1]) % p.r
    ring = (da == 0) & ((dx == 1) | (dx == p.r - 1))
    one_bit = (da != 0) & ((da & (da - 1)) == 0) & (dx == 0)
    j0 = np.zeros_like(da)
    nz = da != 0
    j0[nz] = np.log2(da[nz]).astype(np.int64)
    allowed = ((j0 - p.d * x[:-1]) % p.n) < p.d
    cube = one_bit & allowed
    bad = ~(ring | cube)
    if bad.any():
        k = int(np.argmax(bad))
        raise InvalidPath(f"step {k}: {p.vertex_at(int(idx[k]))} -> {p.vertex_at(int(idx[k + 1]))} is not an edge")


# ---------------------------------------------------------------- batch paths


def realize_paths(seqs: list[AxSequence], p: Params) -> tuple[np.ndarray, np.ndarray]:
    """Realize many sequences at once.

    Returns the concatenated vertex indices and an offsets array so that
    path k is ``flat[offsets[k]:offsets[k + 1]]``.  Same walk rule as
    ``realize_path``; direction availability is checked separately.
    """
    r = p.r
    seg_a: list[int] = []
    seg_u: list[int] = []
    seg_sign: list[int] = []
    seg_len: list[int] = []
    counts: list[int] = []
    for seq in seqs:
        pos = seq.positions
        a = 0
        total = 1
        seg_a.append(0), seg_u.append(0), seg_sign.append(0), seg_len.append(1)
        for t in range(1, len(pos)):
            u, v = pos[t - 1] % r, pos[t] % r
            fwd = (v - u) % r
            if fwd:
                if fwd <= r - fwd:
                    seg_a.append(a), seg_u.append(u), seg_sign.append(1), seg_len.append(fwd)
                    total += fwd
                else:
                    seg_a.append(a), seg_u.append(u), seg_sign.append(-1), seg_len.append(r - fwd)
                    total += r - fwd
            if t <= seq.s:
                a ^= 1 << (seq.directions[t - 1] - 1)
                seg_a.append(a), seg_u.append(v), seg_sign.append(0), seg_len.append(1)
                total += 1
        counts.append(total)
    lens = np.asarray(seg_len, dtype=np.int64)
    starts = np.cumsum(lens) - lens
    seg = np.repeat(np.arange(len(lens)), lens)
    k = np.arange(int(lens.sum()), dtype=np.int64) - starts[seg] + 1
    sa = np.asarray(seg_a, dtype=np.int64)[seg]
    su = np.asarray(seg_u, dtype=np.int64)[seg]
    ss = np.asarray(seg_sign, dtype=np.int64)[seg]
    flat = sa * r + (su + ss * k) % r
    offsets = np.concatenate([[0], np.cumsum(counts)])
    return flat, offsets


def validate_paths(
    flat: np.ndarray, offsets: np.ndarray, p: Params, targets: np.ndarray
) -> np.ndarray:
    """Boolean mask of paths that are NOT simple identity-to-target walks along edges."""
    r, n, d = p.r, p.n, p.d
    npaths = len(offsets) - 1
    pid = np.repeat(np.arange(npaths), np.diff(offsets))
    bad = np.zeros(npaths, dtype=bool)
    bad |= flat[offsets[:-1]] != 0
    bad |= flat[offsets[1:] - 1] != targets
    a, x = np.divmod(flat, r)
    same = pid[1:] == pid[:-1]
    da = a[1:] ^ a[:-1]
    dx = (x[1:] - x[:-1]) % r
    ring = (da == 0) & ((dx == 1) | (dx == r - 1))
    one_bit = (da != 0) & ((da & (da - 1)) == 0) & (dx == 0)
    j0 = np.zeros_like(da)
    nz = da != 0
    j0[nz] = np.log2(da[nz]).astype(np.int64)
    cube = one_bit & (((j0 - d * x[:-1]) % n) < d)
    step_bad = same & ~(ring | cube)
    bad[pid[1:][step_bad]] = True
    # simplicity: no vertex twice within a path
    order = np.lexsort((flat, pid))
    sp, sf = pid[order], flat[order]
    dup = (sp[1:] == sp[:-1]) & (sf[1:] == sf[:-1])
    bad[sp[1:][dup]] = True
    # exactly one cube edge per set bit of the target
    ncube = np.bincount(pid[1:][same & cube], minlength=npaths)
    bad |= ncube != hamming_weights(n)[targets // r]
    return bad


# ---------------------------------------------------------------- bulk evaluation


def origin_l_table(p: Params) -> np.ndarray:
    """l(a, x) for every vertex, shape (2**n, r).

    Computed per ``a`` and vectorized over x from the gap structure of the
    occupied ring positions; independent of the scalar code path above.
    """
    r, n, d, qbar = p.r, p.n, p.d, p.qbar
    xs = np.arange(r, dtype=np.int64)
    ring = np.minimum(xs, r - xs)
    out = np.empty((1 << n, r), dtype=np.int64)
    out[0] = ring
    case1 = p.regime == "dr=n"
    lower = xs <= r // 2
    xl, xu = xs[lower], xs[~lower]
    for a in range(1, 1 << n):
        bits = support(a)
        if case1:
            occ = sorted({(i - 1) // d for i in bits})
            # forward gaps among {0} + occ, capped at x
            u = np.array(sorted({0, *occ}), dtype=np.int64)
            ug = np.diff(u, prepend=0)
            upre = np.maximum.accumulate(ug)
            i1 = np.searchsorted(u, xs, side="right") - 1
            leap1 = np.maximum(upre[i1], xs - u[i1])
            # backward gaps among occ + [r], starting from x
            w = np.array(occ + [r], dtype=np.int64)
            wg = np.diff(w, prepend=w[0])
            wsuf = np.maximum.accumulate(wg[::-1])[::-1]
            i2 = np.searchsorted(w, xs, side="right")
            wsuf = np.append(wsuf, 0)
            leap2 = np.maximum(w[np.minimum(i2, len(w) - 1)] - xs, wsuf[i2 + 1])
            out[a] = np.minimum(r + xs - 2 * leap1, 2 * r - xs - 2 * leap2)
            continue
        y, z, q = (np.array(v, dtype=np.int64) for v in _yzq(bits, p))
        s = len(bits)
        # x <= r//2
        g = np.empty(s + 1, dtype=np.int64)  # g[h0] = max over j > h0 plus the tail term
        g[s] = qbar - y[-1]
        for j in range(s - 1, -1, -1):
            step = y[j + 1] - y[j] + q[j + 1] if j + 1 < s else qbar - y[-1]
            g[j] = max(g[j + 1], step)
        h0 = np.searchsorted(y, xl, side="right")
        inside = h0 < s
        hh = np.minimum(h0, s - 1)
        leap1 = np.maximum(y[hh] - xl + q[hh], g[hh])
        out[a, lower] = np.where(inside, 2 * qbar - xl - 2 * leap1, xl)
        # x > r//2
        f = np.empty(s + 1, dtype=np.int64)  # f[l] = max over j < l - 1 plus the head term
        f[0] = f[1] = z[0] - r + qbar
        for l in range(2, s + 1):
            f[l] = max(f[l - 1], z[l - 1] - z[l - 2] + q[l - 2])
        lc = np.searchsorted(z, xu, side="left")
        lm = np.maximum(lc, 1)
        leap2 = np.maximum(xu - z[lm - 1] + q[lm - 1], f[lm])
        out[a, ~lower] = np.where(lc > 0, 2 * qbar - (r - xu) - 2 * leap2, r - xu)
    return out


def origin_distance_table(p: Params) -> np.ndarray:
    """Router distance from the identity to every vertex, flat in index order."""
    l = origin_l_table(p)
    w = np.array([popcount(a) for a in range(1 << p.n)], dtype=np.int64)
    return (l + w[:, None]).ravel()


def hamming_weights(n: int) -> np.ndarray:
    a = np.arange(1 << n, dtype=np.int64)
    w = np.zeros_like(a)
    for i in range(n):
        w += (a >> i) & 1
    return w


__all__ = [
    "AxSequence",
    "LeapPair",
    "Path",
    "candidate_sequences_case1",
    "check_path",
    "distance",
    "distance_from_origin",
    "leaps_case1",
    "leaps_case2",
    "optimal_sequence",
    "origin_distance_table",
    "origin_l",
    "origin_l_table",
    "origin_path",
    "realize_path",
    "realize_paths",
    "validate_paths",
    "hamming_weights",
    "rotate",
    "shortest_path",
    "sorted_schedule",
    "translate",
    "yz_schedules",
]
