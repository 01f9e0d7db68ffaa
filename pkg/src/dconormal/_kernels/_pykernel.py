"""Pure-Python fallback for the polynomial reduction kernels.

Polynomials are dicts mapping a packed monomial (a non-negative int) to a
nonzero rational coefficient.  The packing is chosen by the caller so that
monomial multiplication is integer addition and the monomial order is the
natural integer order; the low ``emask`` bits hold the exponent vector with
one guard bit per field, which gives an O(1) divisibility test.
"""

from heapq import heapify, heappop, heappush


def divides(a, b, emask, guard):
    q = (b & emask) - (a & emask)
    return q >= 0 and not (q & guard)


def lcm_exponents(a, b, guard, top):
    """Fieldwise max of two guard-free exponent parts.

    ``top`` is the guard bit offset inside a field.  The guard bits of
    ``(a | guard) - b`` flag the fields with a >= b; spreading each flag over
    its field gives a select mask.
    """
    d = ((a | guard) - b) & guard
    sel = d | (d - (d >> top))
    return (a & sel) | (b & ~sel)


def gm_update(pairs, active, lead_e, h, guard, top):
    """Gebauer-Moeller update for a new basis element ``h``.

    ``pairs`` holds ``(g1, g2, lcm_e, lcm)`` tuples and ``lead_e`` the
    exponent parts of the leads.  Returns the surviving old pairs, the new
    pairs as ``(g, h, lcm_e)`` and the new active list.
    """
    lh = lead_e[h]
    lcms = {}
    for g in active:
        lcms[g] = lcm_exponents(lead_e[g], lh, guard, top)
    cands = list(active)
    kept = []
    pos = 0
    while pos < len(cands):
        g1 = cands[pos]
        pos += 1
        l1 = lcms[g1]
        if l1 != lead_e[g1] + lh:
            redundant = False
            for g2 in cands[pos:]:
                q = l1 - lcms[g2]
                if q >= 0 and not (q & guard):
                    redundant = True
                    break
            if not redundant:
                for g2 in kept:
                    q = l1 - lcms[g2]
                    if q >= 0 and not (q & guard):
                        redundant = True
                        break
            if redundant:
                continue
        kept.append(g1)
    new_pairs = [(g, h, lcms[g]) for g in kept if lcms[g] != lead_e[g] + lh]
    old = []
    for pr in pairs:
        le = pr[2]
        q = le - lh
        if (q >= 0 and not (q & guard)
                and lcm_exponents(lead_e[pr[0]], lh, guard, top) != le
                and lcm_exponents(lead_e[pr[1]], lh, guard, top) != le):
            continue
        old.append(pr)
    new_active = []
    for g in active:
        q = lead_e[g] - lh
        if not (q >= 0 and not (q & guard)):
            new_active.append(g)
    new_active.append(h)
    return old, new_pairs, new_active


def reduce_full(p, basis, leads, emask, guard):
    """Remainder of ``p`` on division by the monic polynomials ``basis``.

    ``leads[i]`` must be the leading monomial of ``basis[i]``.  Every term
    of the result is irreducible.
    """
    p = dict(p)
    heap = [-m for m in p]
    heapify(heap)
    rem = {}
    nb = len(leads)
    while heap:
        m = -heappop(heap)
        c = p.pop(m, None)
        if c is None:
            continue
        me = m & emask
        idx = 0
        while idx < nb:
            lm = leads[idx]
            q = me - (lm & emask)
            if q >= 0 and not (q & guard):
                break
            idx += 1
        else:
            rem[m] = c
            continue
        shift = m - lm
        for gm, gc in basis[idx].items():
            if gm == lm:
                continue
            nm = gm + shift
            v = p.get(nm)
            if v is None:
                p[nm] = -c * gc
                heappush(heap, -nm)
            else:
                v = v - c * gc
                if v:
                    p[nm] = v
                else:
                    del p[nm]
    return rem


def add_scaled(f, g, c, shift):
    """Return ``f + c * x**shift * g``."""
    out = dict(f)
    for gm, gc in g.items():
        nm = gm + shift
        v = out.get(nm)
        if v is None:
            out[nm] = c * gc
        else:
            v = v + c * gc
            if v:
                out[nm] = v
            else:
                del out[nm]
    return out


def spoly(f, g, lf, lg, lcm):
    """S-polynomial of two monic polynomials with leads ``lf``, ``lg``."""
    sf = lcm - lf
    sg = lcm - lg
    out = {}
    for m, c in f.items():
        if m != lf:
            out[m + sf] = c
    for m, c in g.items():
        if m == lg:
            continue
        nm = m + sg
        v = out.get(nm)
        if v is None:
            out[nm] = -c
        else:
            v = v - c
            if v:
                out[nm] = v
            else:
                del out[nm]
    return out


def mul(f, g):
    if len(f) < len(g):
        f, g = g, f
    out = {}
    for gm, gc in g.items():
        for fm, fc in f.items():
            nm = fm + gm
            v = out.get(nm)
            if v is None:
                out[nm] = fc * gc
            else:
                v = v + fc * gc
                if v:
                    out[nm] = v
                else:
                    del out[nm]
    return out
