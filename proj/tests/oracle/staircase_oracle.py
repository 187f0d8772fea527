#!/usr/bin/env python3
"""Independent brute-force oracle used to freeze expected values in the C++ tests.

Tableaux are dicts {(row, col): 'a' | 'b'}; validity is checked by the literal
filling rules on a fully assigned grid, with no incremental pruning state.
"""
from fractions import Fraction as Q
from itertools import product, combinations
import math
import sys


def boxes(n):
    return [(i, j) for j in range(1, n + 1) for i in range(1, n - j + 2)]


def valid(n, cells):
    for (i, j) in boxes(n):
        if i + j == n + 1 and (i, j) not in cells:
            return False
    for (i, j), s in cells.items():
        if s == 'a' and any((r, j) in cells for r in range(1, i)):
            return False
        if s == 'b' and any((i, c) in cells for c in range(1, j)):
            return False
    return True


def all_valid(n):
    """Naive product over every box, filtered. Feasible for n <= 5."""
    bx = boxes(n)
    out = []
    for choice in product('ab.', repeat=len(bx)):
        cells = {b: s for b, s in zip(bx, choice) if s != '.'}
        if valid(n, cells):
            out.append(cells)
    return out


def all_valid_rows(n):
    """Row-by-row generation (different order than the C++ search), n <= 8."""
    out = []

    def rec(i, cells):
        if i == 0:
            out.append(dict(cells))
            return
        length = n - i + 1
        for choice in product('ab.', repeat=length):
            if choice[-1] == '.':
                continue
            ok = True
            new = {}
            for c, s in enumerate(choice, start=1):
                if s == '.':
                    continue
                # beta: everything west empty
                if s == 'b' and any(choice[x] != '.' for x in range(c - 1)):
                    ok = False
                    break
                # alpha placed in a lower row: nothing above yet means we must
                # check later rows; we go bottom-up, so check the rows below:
                # any symbol below in the column forbids... handled after.
                new[(i, c)] = s
            if not ok:
                continue
            # an alpha at (r,c) below requires (i,c) empty
            if any(cells.get((r, c)) == 'a' for (_, c) in new for r in range(i + 1, n + 1)):
                continue
            cells.update(new)
            rec(i - 1, cells)
            for k in new:
                del cells[k]

    rec(n, {})
    return out


def ff(x, r):
    out = Q(1)
    for t in range(r):
        out *= (x - t)
    return out


def weight(n, cells, a, b):
    na = sum(1 for s in cells.values() if s == 'a')
    nb = sum(1 for s in cells.values() if s == 'b')
    return (a ** (n - na) if n - na else Q(1)) * (b ** (n - nb) if n - nb else Q(1))


def diag_box(n, k, j):
    return (n - k - j + 2, j)


def prob(n, tabs, a, b, pred):
    z = ff(a + b + n - 1, n)
    return sum(weight(n, t, a, b) for t in tabs if pred(t)) / z


def count_law(n, tabs, a, b, k, sym):
    z = ff(a + b + n - 1, n)
    law = {}
    for t in tabs:
        c = sum(1 for j in range(1, n - k + 2) if t.get(diag_box(n, k, j)) == sym)
        law[c] = law.get(c, Q(0)) + weight(n, t, a, b) / z
    return law


def pair_law(n, tabs, a, b, k):
    z = ff(a + b + n - 1, n)
    law = {}
    for t in tabs:
        ca = sum(1 for j in range(1, n - k + 2) if t.get(diag_box(n, k, j)) == 'a')
        cb = sum(1 for j in range(1, n - k + 2) if t.get(diag_box(n, k, j)) == 'b')
        law[(ca, cb)] = law.get((ca, cb), Q(0)) + weight(n, t, a, b) / z
    return law


def d_connected(n, t, events):
    """Closure membership: non-first-diagonal, non-event symbols of the region
    sharing a row/column with an event, closed under row/column sharing."""
    ev = set(events)
    cand = [b for b in t if b[0] + b[1] != n + 1 and b not in ev]
    member = set(c for c in cand if any(c[0] == e[0] or c[1] == e[1] for e in ev))
    grew = True
    while grew:
        grew = False
        for c in cand:
            if c not in member and any(c[0] == m[0] or c[1] == m[1] for m in member):
                member.add(c)
                grew = True
    return member


def direct_c(k):
    tabs = all_valid_rows(k)
    configs = {}
    for t in tabs:
        if t.get((1, 1)) != 'a':
            continue
        mem = d_connected(k, t, [(1, 1)])
        key = tuple(sorted((b, t[b]) for b in mem))
        configs.setdefault(len(mem), set()).add(key)
    return {h: len(v) for h, v in sorted(configs.items())}


def gapped_sum(r, m):
    lhs = 0
    for js in combinations(range(1, m + 1), r):
        if all(js[i] <= js[i + 1] - 2 for i in range(r - 1)):
            lhs += math.prod(js)
    return Q(lhs), ff(Q(m + 1), 2 * r) / (2 ** r * math.factorial(r))


def main():
    for n in range(1, 6):
        print('naive count', n, len(all_valid(n)))
    for n in range(1, 8):
        print('row-order count', n, len(all_valid_rows(n)))
    t2 = all_valid(2)
    print('n=2 marginal alpha (k=1,j=1):', prob(2, t2, Q(1), Q(1), lambda t: t.get((2, 1)) == 'a'))
    print('n=2 k=2 alpha law:', count_law(2, t2, Q(1), Q(1), 2, 'a'))
    print('n=2 k=2 pair law:', pair_law(2, t2, Q(1), Q(1), 2))
    print('n=2 event (1,1,a):', sum(1 for t in t2 if t.get((2, 1)) == 'a'))
    print('n=2 events (2,1,a),(1,1,a):', sum(1 for t in t2 if t.get((2, 1)) == 'a' and t.get((1, 1)) == 'a'))
    print('n=2 a=2 b=3 Z brute:', sum(weight(2, t, Q(2), Q(3)) for t in t2))
    t4 = all_valid_rows(4)
    print('n=4 k=2 j=1 alpha:', prob(4, t4, Q(1), Q(1), lambda t: t.get(diag_box(4, 2, 1)) == 'a'))
    print('n=4 k=2 j=1 beta:', prob(4, t4, Q(1), Q(1), lambda t: t.get(diag_box(4, 2, 1)) == 'b'))
    t5 = all_valid_rows(5)
    print('n=5 a=1 b=2 P(alpha k=2 j=1):', prob(5, t5, Q(1), Q(2), lambda t: t.get(diag_box(5, 2, 1)) == 'a'))
    print('n=5 k=2 joint (1,a),(4,a) a=b=1:', prob(5, t5, Q(1), Q(1),
          lambda t: t.get(diag_box(5, 2, 1)) == 'a' and t.get(diag_box(5, 2, 4)) == 'a'))
    t6 = all_valid_rows(6)
    tabs7 = all_valid_rows(7)
    for n, tabs in ((6, t6), (7, tabs7)):
        law = count_law(n, tabs, Q(1), Q(1), 2, 'a')
        mean = sum(c * p for c, p in law.items())
        f2 = sum(c * (c - 1) * p for c, p in law.items())
        print('n', n, 'E[A2]', mean, 'E(A2)_2', f2, 'law', law)
    for n in range(4, 11):
        s = sum(Q(j) / ((n + 1) * n) for j in range(1, n))
        print('closed-form mean', n, s, 'target', Q(n - 1, 2 * (n + 1)))
    for r in range(1, 5):
        for m in range(1, 15):
            lhs, rhs = gapped_sum(r, m)
            assert lhs == rhs, (r, m, lhs, rhs)
    print('gapped_sum ok; r=2 m=4', gapped_sum(2, 4), 'r=3 m=2', gapped_sum(3, 2))
    for k in (2, 3, 4, 5):
        print('direct C', k, direct_c(k))
    # fixture with two events on diagonal 8 of a size-11 tableau
    fig = {(1, 11): 'a', (2, 10): 'b', (3, 9): 'a', (4, 8): 'a', (5, 7): 'b', (6, 6): 'a',
           (7, 5): 'a', (8, 4): 'b', (9, 3): 'b', (10, 2): 'b', (11, 1): 'b',
           (1, 10): 'a', (4, 7): 'a', (4, 1): 'a', (7, 3): 'b', (6, 3): 'a', (6, 1): 'b',
           (1, 4): 'b'}
    print('fixture valid', valid(11, fig), 'symbols', len(fig))
    print('fixture D-connected', sorted(d_connected(11, fig, [(4, 1), (1, 4)])))
    # subtableau law n=4 (1,2) a=b=1 and n=5 (2,2) a=1/2 b=3
    for n, tabs, i, j, a, b in ((4, t4, 1, 2, Q(1), Q(1)), (5, t5, 2, 2, Q(1, 2), Q(3))):
        z = ff(a + b + n - 1, n)
        push = {}
        for t in tabs:
            sub = tuple(sorted(((r - i + 1, c - j + 1), s) for (r, c), s in t.items() if r >= i and c >= j))
            push[sub] = push.get(sub, Q(0)) + weight(n, t, a, b) / z
        m = n - i - j + 2
        ah, bh = a + i - 1, b + j - 1
        zz = ff(ah + bh + m - 1, m)
        worst = max(abs(p - weight(m, dict(s), ah, bh) / zz) for s, p in push.items())
        print('subtableau', n, i, j, 'states', len(push), 'discrepancy', worst)


if __name__ == '__main__':
    sys.setrecursionlimit(10000)
    main()
