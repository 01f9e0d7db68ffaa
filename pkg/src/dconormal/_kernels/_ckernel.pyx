# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled polynomial reduction kernels; same contract as ``_pykernel``."""

from heapq import heapify, heappop, heappush


def divides(a, b, emask, guard):
    q = (b & emask) - (a & emask)
    return q >= 0 and not (q & guard)


cpdef object lcm_exponents(object a, object b, object guard, int top):
    cdef object d = ((a | guard) - b) & guard
    cdef object sel = d | (d - (d >> top))
    return (a & sel) | (b & ~sel)


cdef inline bint _div(object a, object b, object guard):
    cdef object q = b - a
    return q >= 0 and not (q & guard)


def gm_update(list pairs, list active, list lead_e, Py_ssize_t h, object guard, int top):
    cdef object lh = lead_e[h]
    cdef dict lcms = {}
    cdef list cands = list(active)
    cdef list kept = []
    cdef list new_pairs, old = [], new_active = []
    cdef Py_ssize_t pos = 0, j, nc
    cdef bint redundant
    cdef object g, g1, g2, l1, le
    cdef tuple pr
    for g in active:
        lcms[g] = lcm_exponents(lead_e[g], lh, guard, top)
    nc = len(cands)
    while pos < nc:
        g1 = cands[pos]
        pos += 1
        l1 = lcms[g1]
        if l1 != lead_e[g1] + lh:
            redundant = False
            for j in range(pos, nc):
                if _div(lcms[cands[j]], l1, guard):
                    redundant = True
                    break
            if not redundant:
                for g2 in kept:
                    if _div(lcms[g2], l1, guard):
                        redundant = True
                        break
            if redundant:
                continue
        kept.append(g1)
    new_pairs = [(g, h, lcms[g]) for g in kept if lcms[g] != lead_e[g] + lh]
    for pr in pairs:
        le = pr[2]
        if (_div(lh, le, guard)
                and lcm_exponents(lead_e[pr[0]], lh, guard, top) != le
                and lcm_exponents(lead_e[pr[1]], lh, guard, top) != le):
            continue
        old.append(pr)
    for g in active:
        if not _div(lh, lead_e[g], guard):
            new_active.append(g)
    new_active.append(h)
    return old, new_pairs, new_active


def reduce_full(dict p, list basis, list leads, object emask, object guard):
    cdef dict work = dict(p)
    cdef dict rem = {}
    cdef list heap = [-m for m in work]
    cdef Py_ssize_t nb = len(leads)
    cdef Py_ssize_t idx
    cdef dict g
    cdef object m, c, me, lm, q, shift, gm, gc, nm, v
    cdef list lead_e = [lm & emask for lm in leads]
    heapify(heap)
    while heap:
        m = -heappop(heap)
        c = work.pop(m, None)
        if c is None:
            continue
        me = m & emask
        idx = 0
        while idx < nb:
            q = me - lead_e[idx]
            if q >= 0 and not (q & guard):
                break
            idx += 1
        if idx == nb:
            rem[m] = c
            continue
        lm = leads[idx]
        shift = m - lm
        g = basis[idx]
        for gm, gc in g.items():
            if gm == lm:
                continue
            nm = gm + shift
            v = work.get(nm)
            if v is None:
                work[nm] = -c * gc
                heappush(heap, -nm)
            else:
                v = v - c * gc
                if v:
                    work[nm] = v
                else:
                    del work[nm]
    return rem


def add_scaled(dict f, dict g, object c, object shift):
    cdef dict out = dict(f)
    cdef object gm, gc, nm, v
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


def spoly(dict f, dict g, object lf, object lg, object lcm):
    cdef object sf = lcm - lf
    cdef object sg = lcm - lg
    cdef dict out = {}
    cdef object m, c, nm, v
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


def mul(dict f, dict g):
    cdef dict out = {}
    cdef object fm, fc, gm, gc, nm, v
    if len(f) < len(g):
        f, g = g, f
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
