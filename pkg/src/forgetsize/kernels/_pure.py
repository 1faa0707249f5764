"""Pure-Python kernels over clause bitmask pairs ``(pos, neg)``.

These are the reference implementations; ``_native.pyx`` mirrors them
step by step so both backends return identical results.
"""


def sat(clauses, t=0, f=0):
    """DPLL with unit propagation and pure literals.

    ``t``/``f`` are masks of variables preassigned true/false.  Returns the
    mask of true variables of a model, or ``None``.  Branches on the lowest
    unassigned variable, false first.
    """
    while True:
        changed = False
        allp = alln = 0
        for p, n in clauses:
            if p & t or n & f:
                continue
            up = p & ~f
            un = n & ~t
            if not up and not un:
                return None
            if not un and not up & (up - 1):
                t |= up
                changed = True
                continue
            if not up and not un & (un - 1):
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
    free = allp | alln
    if not free:
        return t
    v = free & -free
    m = sat(clauses, t, f | v)
    if m is not None:
        return m
    return sat(clauses, t | v, f)


def horn_sat(clauses, t=0, f=0):
    """Minimal model of a Horn formula by forward chaining.

    ``f`` variables are forced false, ``t`` true.  Returns the true-mask of
    the least model extending ``t`` or ``None``.
    """
    changed = True
    while changed:
        changed = False
        for p, n in clauses:
            if n & f or p & t:
                continue
            if n & ~t:
                continue
            # all negative literals falsified
            rest = p & ~f
            if not rest:
                return None
            t |= rest
            changed = True
    return t


def closure(clauses, cap):
    """Resolution closure in rounds.

    Returns ``(clauses, rounds)`` with the input (deduplicated) first, or
    ``None`` when more than ``cap`` clauses would be produced.
    """
    items = list(dict.fromkeys(clauses))
    if len(items) > cap:
        return None
    seen = set(items)
    start = 0
    rounds = 0
    while start < len(items):
        end = len(items)
        for i in range(start, end):
            p1, n1 = items[i]
            for j in range(i):
                p2, n2 = items[j]
                clash = (p1 & n2) | (n1 & p2)
                if not clash or clash & (clash - 1):
                    continue
                r = ((p1 | p2) & ~clash, (n1 | n2) & ~clash)
                if r not in seen:
                    seen.add(r)
                    items.append(r)
                    if len(items) > cap:
                        return None
        if len(items) > end:
            rounds += 1
        start = end
    return items, rounds


def minimal(clauses):
    """Subset-minimal members of a duplicate-free clause list, in size order."""
    order = sorted(clauses, key=lambda c: (c[0].bit_count() + c[1].bit_count(), c))
    kept = []
    for p, n in order:
        for kp, kn in kept:
            if not kp & ~p and not kn & ~n:
                break
        else:
            kept.append((p, n))
    return kept
