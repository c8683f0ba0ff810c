"""Independent brute-force oracles, pure python over plain list tables.

Deliberately shares no code with the package: subgroups come from a
powerset scan, complements from definition-level checks.  Only usable at
tiny orders (powerset is 2^n), which is the point.
"""

from itertools import product


def table_of(group) -> list[list[int]]:
    """Extract a plain list-of-lists table from a FiniteGroup."""
    return [[int(v) for v in row] for row in group.mul]


def is_closed_subset(table, subset: frozenset) -> bool:
    return all(table[a][b] in subset for a in subset for b in subset)


def powerset_subgroups(table) -> list[frozenset]:
    """Every subgroup, found by scanning all subsets containing 0."""
    n = len(table)
    assert n <= 16, "powerset oracle only works at tiny orders"
    out = []
    rest = [x for x in range(n) if x != 0]
    for bits in range(1 << (n - 1)):
        subset = frozenset([0] + [rest[i] for i in range(n - 1) if bits >> i & 1])
        if n % len(subset) == 0 and is_closed_subset(table, subset):
            out.append(subset)
    out.sort(key=lambda s: (len(s), sorted(s)))
    return out


def brute_permutable_complements(table, h: frozenset, subgroups=None) -> list[frozenset]:
    n = len(table)
    subgroups = subgroups if subgroups is not None else powerset_subgroups(table)
    out = []
    for k in subgroups:
        if h & k != {0}:
            continue
        prod = {table[a][b] for a in h for b in k}
        if len(prod) == n:
            out.append(k)
    return out


def brute_is_c_group(table) -> bool:
    subs = powerset_subgroups(table)
    return all(brute_permutable_complements(table, h, subs) for h in subs)


def brute_center(table) -> frozenset:
    n = len(table)
    return frozenset(x for x in range(n)
                     if all(table[x][y] == table[y][x] for y in range(n)))


def brute_inverse(table, x: int) -> int:
    return next(y for y in range(len(table)) if table[x][y] == 0 and table[y][x] == 0)


def brute_derived(table) -> frozenset:
    n = len(table)
    comms = set()
    for x, y in product(range(n), repeat=2):
        xi, yi = brute_inverse(table, x), brute_inverse(table, y)
        comms.add(table[table[xi][yi]][table[x][y]])
    return brute_closure(table, comms)


def brute_closure(table, seed) -> frozenset:
    members = set(seed) | {0}
    while True:
        new = {table[a][b] for a in members for b in members} - members
        if not new:
            return frozenset(members)
        members |= new


def brute_element_order(table, x: int) -> int:
    y, o = x, 1
    while y != 0:
        y = table[y][x]
        o += 1
    return o


def brute_is_normal(table, h: frozenset) -> bool:
    n = len(table)
    for g in range(n):
        gi = brute_inverse(table, g)
        if any(table[table[g][x]][gi] not in h for x in h):
            return False
    return True
