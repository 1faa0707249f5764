# cython: boundscheck=False, wraparound=False, cdivision=True
# distutils: language = c++
"""Native kernels, line-for-line ports of ``_pure``.

Masks are ``uint64``: ``sat``/``horn_sat``/``minimal`` accept up to 64
variables, ``closure`` up to 32 (it packs a clause into one hash key).
The dispatcher in ``__init__`` checks the limits.
"""
from libc.stdint cimport uint64_t
from libc.stdlib cimport malloc, free
from libcpp.vector cimport vector
from libcpp.unordered_set cimport unordered_set


cdef int _sat(const uint64_t* P, const uint64_t* N, Py_ssize_t m,
              uint64_t t, uint64_t f, uint64_t* out) noexcept nogil:
    cdef Py_ssize_t i
    cdef uint64_t up, un, allp, alln, purep, puren, free_, v
    cdef bint changed
    while True:
        changed = False
        allp = 0
        alln = 0
        for i in range(m):
            if (P[i] & t) or (N[i] & f):
                continue
            up = P[i] & ~f
            un = N[i] & ~t
            if up == 0 and un == 0:
                return 0
            if un == 0 and (up & (up - 1)) == 0:
                t |= up
                changed = True
                continue
            if up == 0 and (un & (un - 1)) == 0:
                f |= un
                changed = True
                continue
            allp |= up
            alln |= un
        if changed:
            continue
        purep = allp & ~alln
        puren = alln & ~allp
        if purep or puren:
            t |= purep
            f |= puren
            continue
        break
    free_ = allp | alln
    if free_ == 0:
        out[0] = t
        return 1
    v = free_ & (~free_ + 1)
    if _sat(P, N, m, t, f | v, out):
        return 1
    return _sat(P, N, m, t | v, f, out)


cdef void _load(list clauses, uint64_t* P, uint64_t* N):
    cdef Py_ssize_t i = 0
    for p, n in clauses:
        P[i] = p
        N[i] = n
        i += 1


def sat(list clauses, t=0, f=0):
    cdef Py_ssize_t m = len(clauses)
    cdef uint64_t* P = <uint64_t*> malloc((m + 1) * sizeof(uint64_t))
    cdef uint64_t* N = <uint64_t*> malloc((m + 1) * sizeof(uint64_t))
    cdef uint64_t out = 0
    cdef uint64_t t0 = t, f0 = f
    cdef int ok
    if P == NULL or N == NULL:
        free(P)
        free(N)
        raise MemoryError()
    try:
        _load(clauses, P, N)
        with nogil:
            ok = _sat(P, N, m, t0, f0, &out)
    finally:
        free(P)
        free(N)
    return out if ok else None


def horn_sat(list clauses, t=0, f=0):
    cdef Py_ssize_t m = len(clauses), i
    cdef vector[uint64_t] P, N
    cdef uint64_t tt = t, ff = f, rest
    cdef bint changed = True
    P.resize(m)
    N.resize(m)
    i = 0
    for p, n in clauses:
        P[i] = p
        N[i] = n
        i += 1
    while changed:
        changed = False
        for i in range(m):
            if (N[i] & ff) or (P[i] & tt):
                continue
            if N[i] & ~tt:
                continue
            rest = P[i] & ~ff
            if rest == 0:
                return None
            tt |= rest
            changed = True
    return tt


def closure(list clauses, Py_ssize_t cap):
    cdef vector[uint64_t] P, N
    cdef unordered_set[uint64_t] seen
    cdef Py_ssize_t start = 0, end, i, j
    cdef int rounds = 0
    cdef uint64_t p1, n1, p2, n2, clash, rp, rn, key
    for p, n in clauses:
        p1 = p
        n1 = n
        key = (p1 << 32) | n1
        if seen.count(key):
            continue
        seen.insert(key)
        P.push_back(p1)
        N.push_back(n1)
    if <Py_ssize_t> P.size() > cap:
        return None
    with nogil:
        while start < <Py_ssize_t> P.size():
            end = P.size()
            for i in range(start, end):
                p1 = P[i]
                n1 = N[i]
                for j in range(i):
                    p2 = P[j]
                    n2 = N[j]
                    clash = (p1 & n2) | (n1 & p2)
                    if clash == 0 or (clash & (clash - 1)) != 0:
                        continue
                    rp = (p1 | p2) & ~clash
                    rn = (n1 | n2) & ~clash
                    key = (rp << 32) | rn
                    if seen.count(key):
                        continue
                    seen.insert(key)
                    P.push_back(rp)
                    N.push_back(rn)
                    if <Py_ssize_t> P.size() > cap:
                        break
                if <Py_ssize_t> P.size() > cap:
                    break
            if <Py_ssize_t> P.size() > cap:
                break
            if <Py_ssize_t> P.size() > end:
                rounds += 1
            start = end
    if <Py_ssize_t> P.size() > cap:
        return None
    return [(P[i], N[i]) for i in range(<Py_ssize_t> P.size())], rounds


def minimal(list clauses):
    cdef list order = sorted(clauses, key=lambda c: (c[0].bit_count() + c[1].bit_count(), c))
    cdef vector[uint64_t] KP, KN
    cdef Py_ssize_t k
    cdef uint64_t p, n
    cdef bint dominated
    out = []
    for c in order:
        p = c[0]
        n = c[1]
        dominated = False
        for k in range(<Py_ssize_t> KP.size()):
            if (KP[k] & ~p) == 0 and (KN[k] & ~n) == 0:
                dominated = True
                break
        if not dominated:
            KP.push_back(p)
            KN.push_back(n)
            out.append(c)
    return out
