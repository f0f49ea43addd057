"""Integer feasibility in two dimensions.

All problems here have the shape: given a residual target ``r`` and
generator vectors ``g``, find non-negative integer multiplicities ``n`` with
``sum(n[g] * g) >= r`` componentwise.  Everything is exact integer or
``Fraction`` arithmetic.
"""
from __future__ import annotations

from collections import deque
from fractions import Fraction
from math import floor, gcd

from .errors import CapExceeded

Vec = tuple[int, int]


def _add(u, v, k=1):
    return (u[0] + k * v[0], u[1] + k * v[1])


def _dot(u, v):
    return u[0] * v[0] + u[1] * v[1]


def _covers(u, t):
    return u[0] >= t[0] and u[1] >= t[1]


def _ceil_div(a, b):
    return -((-a) // b)


def positive_direction(gens) -> dict | None:
    """Non-negative integer combination of ``gens`` that is ``>= (1, 1)``, if any.

    In the plane a cone meets the open positive quadrant iff a cone spanned by
    at most two of its generators does.
    """
    gens = list(gens)
    for g in gens:
        if g[0] > 0 and g[1] > 0:
            return {g: 1}
    for i, g in enumerate(gens):
        for h in gens[i + 1:]:
            lam = _open_interval_point(g, h)
            if lam is not None:
                p, q = lam.numerator, lam.denominator - lam.numerator
                return {g: p, h: q} if q else {g: p}
    return None


def _open_interval_point(g, h) -> Fraction | None:
    # lam in [0, 1] with lam*g + (1-lam)*h > 0 in both coordinates
    lo, hi = Fraction(0), Fraction(1)
    lo_open = hi_open = False
    for i in (0, 1):
        a = g[i] - h[i]  # coefficient of lam
        b = h[i]  # lam*a + b > 0
        if a == 0:
            if b <= 0:
                return None
        elif a > 0:
            bound = Fraction(-b, a)
            if bound >= lo:
                lo, lo_open = bound, True
        else:
            bound = Fraction(-b, a)
            if bound <= hi:
                hi, hi_open = bound, True
    if lo > hi or (lo == hi and (lo_open or hi_open)):
        return None
    if lo == hi:
        return lo
    if not lo_open and not hi_open:
        return lo
    return (lo + hi) / 2


def _primitive(v):
    k = gcd(v[0], v[1])
    return (v[0] // k, v[1] // k) if k else v


def separating_normals(gens) -> list[Vec]:
    """Extreme rays of ``{w >= 0 : w.g <= 0 for all g}`` (primitive integer vectors)."""
    cands = {(1, 0), (0, 1)}
    for g in gens:
        for w in ((g[1], -g[0]), (-g[1], g[0])):
            if w[0] >= 0 and w[1] >= 0 and w != (0, 0):
                cands.add(_primitive(w))
    return sorted(w for w in cands if all(_dot(w, g) <= 0 for g in gens))


def rational_feasible(r, gens) -> bool:
    """Is ``sum(lam[g] * g) >= r`` solvable with real ``lam >= 0``?  (Farkas test.)"""
    gens = [g for g in gens if g != (0, 0)]
    if r[0] <= 0 and r[1] <= 0:
        return True
    if positive_direction(gens) is not None:
        return True
    return all(_dot(w, r) <= 0 for w in separating_normals(gens))


def two_gen_feasibility(base, offsets, c1, c2, t):
    """Find ``m, n >= 0`` with ``base + sum(offsets) + m*c1 + n*c2 >= t``.

    ``c1``/``c2`` may be ``None``.  Returns ``(m, n)`` or ``None``.  When the
    two generators have a combination that is strictly positive in both
    coordinates the answer is obtained by scaling it; otherwise ``m`` is
    scanned up to ``M = 4 * (|r|_inf + 1) * (maxcomp + 1)**2`` and the least
    admissible ``n`` is computed exactly for each ``m``.  The bound covers
    every vertex of the feasible polygon plus one period of its recession
    cone, so the scan is exhaustive.
    """
    r = tuple(t)
    r = _add(r, base, -1)
    for o in offsets:
        r = _add(r, o, -1)
    if r[0] <= 0 and r[1] <= 0:
        return (0, 0)
    if c1 is None and c2 is None:
        return None
    if c1 is None:
        sol = two_gen_feasibility((0, 0), (), c2, None, r)
        return None if sol is None else (0, sol[0])
    if c2 is not None and tuple(c2) == tuple(c1):
        sol = two_gen_feasibility((0, 0), (), c1, None, r)
        return sol
    gens = [c1] if c2 is None else [c1, c2]
    direction = positive_direction(gens)
    if direction is not None:
        p = direction.get(c1, 0)
        q = direction.get(c2, 0) if c2 is not None else 0
        d = _add(_add((0, 0), c1, p), c2 or (0, 0), q)
        k = max(_ceil_div(r[i], d[i]) for i in (0, 1) if r[i] > 0)
        return (k * p, k * q)
    comps = [abs(x) for g in gens for x in g]
    maxcomp = max(comps, default=0)
    big_m = 4 * (max(abs(r[0]), abs(r[1])) + 1) * (maxcomp + 1) ** 2
    for m in range(big_m + 1):
        rest = _add(r, c1, -m)
        if c2 is None:
            if rest[0] <= 0 and rest[1] <= 0:
                return (m, 0)
            continue
        lo, hi = 0, None
        ok = True
        for i in (0, 1):
            if c2[i] > 0:
                lo = max(lo, _ceil_div(rest[i], c2[i]))
            elif c2[i] < 0:
                bound = floor(Fraction(rest[i], c2[i]))
                hi = bound if hi is None else min(hi, bound)
            elif rest[i] > 0:
                ok = False
        if ok and (hi is None or lo <= hi):
            return (m, lo)
    return None


def _semigroup_element(zs, lo, hi):
    """Some ``k`` in ``[lo, hi]`` (``None`` = unbounded) that is a non-negative
    integer combination of ``zs``, with the combination; or ``None``."""
    lo_f = float("-inf") if lo is None else lo
    hi_f = float("inf") if hi is None else hi
    if not zs:
        return (0, {}) if lo_f <= 0 <= hi_f else None
    pos = [z for z in zs if z > 0]
    neg = [z for z in zs if z < 0]
    if pos and neg:
        step = 0
        for z in zs:
            step = gcd(step, z)
        if lo_f <= 0 <= hi_f:
            k = 0
        elif lo_f > 0:
            k = _ceil_div(lo, step) * step
        else:
            k = (hi // step) * step
        if not lo_f <= k <= hi_f:
            return None
        return k, _decompose_group(zs, k)
    if neg:
        flipped = _semigroup_element(
            [-z for z in zs], None if hi is None else -hi, None if lo is None else -lo
        )
        if flipped is None:
            return None
        k, combo = flipped
        return -k, {-z: n for z, n in combo.items()}
    # only positive generators
    start = max(0, lo_f if lo is not None else 0)
    zmax = max(pos)
    upper = int(start) + zmax * zmax + zmax
    if hi is not None:
        upper = min(upper, hi)
    if upper < start:
        return None
    parent = {0: None}
    for v in range(1, upper + 1):
        for z in pos:
            if v - z in parent:
                parent[v] = z
                break
    for v in range(int(start), upper + 1):
        if v in parent:
            combo = {}
            cur = v
            while cur:
                z = parent[cur]
                combo[z] = combo.get(z, 0) + 1
                cur -= z
            return v, combo
    return None


def _decompose_group(zs, k):
    zmax = max(abs(z) for z in zs)
    margin = 2 * zmax
    while True:
        lo, hi = min(0, k) - margin, max(0, k) + margin
        parent = {0: None}
        queue = deque([0])
        while queue and k not in parent:
            v = queue.popleft()
            for z in zs:
                u = v + z
                if lo <= u <= hi and u not in parent:
                    parent[u] = z
                    queue.append(u)
        if k in parent:
            combo = {}
            cur = k
            while cur != 0:
                z = parent[cur]
                combo[z] = combo.get(z, 0) + 1
                cur -= z
            return combo
        margin *= 2


def cone_feasibility(r, gens, max_states: int = 200_000) -> dict | None:
    """Exact integer version of :func:`rational_feasible`.

    Returns multiplicities ``{generator: count}`` or ``None``.  If no
    combination is strictly positive there is a separating normal ``w >= 0``
    with ``w.g <= 0`` for every generator.  Generators with ``w.g < 0`` can
    then be used only boundedly often (their total cost is at most ``-w.r``)
    and are enumerated; generators with ``w.g = 0`` lie on one line and are
    handled as a one-dimensional numerical semigroup.
    """
    gens = sorted({tuple(g) for g in gens if tuple(g) != (0, 0)})
    r = tuple(r)
    if r[0] <= 0 and r[1] <= 0:
        return {}
    direction = positive_direction(gens)
    if direction is not None:
        d = (0, 0)
        for g, n in direction.items():
            d = _add(d, g, n)
        k = max(_ceil_div(r[i], d[i]) for i in (0, 1) if r[i] > 0)
        return {g: n * k for g, n in direction.items()}
    normals = separating_normals(gens)
    if any(_dot(w, r) > 0 for w in normals):
        return None
    w = min(normals, key=lambda v: (-_dot(v, r), v))
    budget = -_dot(w, r)
    costly = [g for g in gens if _dot(w, g) < 0]
    flat = [g for g in gens if _dot(w, g) == 0]
    e = _primitive((w[1], -w[0]))
    coeff = {}
    for g in flat:
        coeff[g] = g[0] // e[0] if e[0] else g[1] // e[1]
    zs = sorted(set(coeff.values()))
    by_z = {}
    for g, z in coeff.items():
        by_z.setdefault(z, g)

    parent = {(0, 0): None}
    order = [(0, 0)]
    queue = deque(order)
    while queue:
        s = queue.popleft()
        for g in costly:
            u = _add(s, g)
            if u not in parent and -_dot(w, u) <= budget:
                parent[u] = (s, g)
                order.append(u)
                queue.append(u)
                if len(parent) > max_states:
                    raise CapExceeded("cone_states", max_states)
    for s in order:
        lo = hi = None
        ok = True
        for i in (0, 1):
            need = r[i] - s[i]
            if e[i] > 0:
                b = _ceil_div(need, e[i])
                lo = b if lo is None else max(lo, b)
            elif e[i] < 0:
                b = floor(Fraction(need, e[i]))
                hi = b if hi is None else min(hi, b)
            elif need > 0:
                ok = False
        if not ok or (lo is not None and hi is not None and lo > hi):
            continue
        hit = _semigroup_element(zs, lo, hi)
        if hit is None:
            continue
        combo = {}
        cur = s
        while parent[cur] is not None:
            cur, g = parent[cur]
            combo[g] = combo.get(g, 0) + 1
        for z, n in hit[1].items():
            g = by_z[z]
            combo[g] = combo.get(g, 0) + n
        return combo
    return None


def combination(combo) -> Vec:
    total = (0, 0)
    for g, n in combo.items():
        total = _add(total, g, n)
    return total
