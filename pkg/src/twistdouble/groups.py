"""Finite groups as multiplication tables, and their linear characters."""

from __future__ import annotations

from itertools import permutations, product

from .errors import InvalidGroupTable


class GroupTable:
    """A finite group given by its multiplication table (identity at index 0).

    `factors` records a decomposition into cyclic factors (mixed-radix,
    big-endian index layout) when the group was built as such a product.
    """

    def __init__(self, table, name: str = "", factors=None):
        self.table = tuple(tuple(row) for row in table)
        self.order = len(self.table)
        self.name = name or f"group{self.order}"
        self.factors = tuple(factors) if factors else None
        self._validate()
        self.inverse = tuple(self._find_inverse(i) for i in range(self.order))

    def _validate(self):
        n = self.order
        for row in self.table:
            if len(row) != n or any(not 0 <= x < n for x in row):
                raise InvalidGroupTable("table is not square over 0-based indices")
        for i in range(n):
            if self.table[0][i] != i or self.table[i][0] != i:
                raise InvalidGroupTable("index 0 is not a two-sided identity")
        for i in range(n):
            for j in range(n):
                for k in range(n):
                    if self.table[self.table[i][j]][k] != self.table[i][self.table[j][k]]:
                        raise InvalidGroupTable(f"associativity fails at ({i},{j},{k})")
        for i in range(n):
            if all(self.table[i][j] != 0 for j in range(n)):
                raise InvalidGroupTable(f"element {i} has no inverse")

    def _find_inverse(self, i):
        for j in range(self.order):
            if self.table[i][j] == 0:
                if self.table[j][i] != 0:
                    raise InvalidGroupTable(f"one-sided inverse at {i}")
                return j
        raise InvalidGroupTable(f"element {i} has no inverse")

    def mul(self, i, j):
        return self.table[i][j]

    def inv(self, i):
        return self.inverse[i]

    def conjugate(self, g, x):
        """x^-1 g x."""
        return self.mul(self.mul(self.inv(x), g), x)

    def element_order(self, i):
        k, cur = 1, i
        while cur != 0:
            cur = self.mul(cur, i)
            k += 1
        return k

    def is_abelian(self):
        return all(self.mul(i, j) == self.mul(j, i)
                   for i in range(self.order) for j in range(self.order))

    def closure(self, gens):
        seen = {0}
        frontier = [0]
        while frontier:
            nxt = []
            for a in frontier:
                for g in gens:
                    b = self.mul(a, g)
                    if b not in seen:
                        seen.add(b)
                        nxt.append(b)
            frontier = nxt
        return seen

    def generating_set(self):
        """Greedy deterministic generating set."""
        gens = []
        have = {0}
        for i in range(1, self.order):
            if i not in have:
                gens.append(i)
                have = self.closure(gens)
                if len(have) == self.order:
                    break
        return gens

    def __repr__(self):
        return f"GroupTable({self.name}, order={self.order})"


def cyclic_group(n: int) -> GroupTable:
    return GroupTable([[(i + j) % n for j in range(n)] for i in range(n)],
                      name=f"Z{n}", factors=(n,))


def direct_product(a: GroupTable, b: GroupTable) -> GroupTable:
    n = a.order * b.order
    table = [[0] * n for _ in range(n)]
    for i1, i2 in product(range(a.order), range(b.order)):
        for j1, j2 in product(range(a.order), range(b.order)):
            table[i1 * b.order + i2][j1 * b.order + j2] = \
                a.mul(i1, j1) * b.order + b.mul(i2, j2)
    factors = a.factors + b.factors if a.factors and b.factors else None
    return GroupTable(table, name=f"{a.name}x{b.name}", factors=factors)


def product_of_cyclics(orders) -> GroupTable:
    g = cyclic_group(orders[0])
    for n in orders[1:]:
        g = direct_product(g, cyclic_group(n))
    return g


def symmetric_group(n: int) -> GroupTable:
    """S_n on the permutations of range(n), identity first, lexicographic order."""
    elems = sorted(permutations(range(n)))
    index = {p: i for i, p in enumerate(elems)}
    table = [[index[tuple(p[q[x]] for x in range(n))] for q in elems] for p in elems]
    return GroupTable(table, name=f"S{n}")


def characters(group: GroupTable, field):
    """All homomorphisms from the group into the roots of unity of the field.

    Values are fixed on a generating set (each candidate value a root of
    unity of order dividing the generator's order), extended along the
    Cayley graph, and kept only when globally multiplicative.  The result
    is deterministic: sorted by the tuple of value sort keys.
    """
    gens = group.generating_set()
    if not gens:  # trivial group
        return [(field.one,)]
    candidates = [field.roots_of_unity(group.element_order(g)) for g in gens]
    found = {}
    for choice in product(*candidates):
        values = {0: field.one}
        frontier = [0]
        consistent = True
        while frontier and consistent:
            nxt = []
            for a in frontier:
                for g, val in zip(gens, choice):
                    b = group.mul(a, g)
                    w = values[a] * val
                    if b in values:
                        if values[b] != w:
                            consistent = False
                            break
                    else:
                        values[b] = w
                        nxt.append(b)
                if not consistent:
                    break
            frontier = nxt
        if not consistent or len(values) != group.order:
            continue
        vec = tuple(values[i] for i in range(group.order))
        if all(vec[group.mul(i, j)] == vec[i] * vec[j]
               for i in range(group.order) for j in range(group.order)):
            found[tuple(field.sort_key(v) for v in vec)] = vec
    return [found[k] for k in sorted(found)]
