"""Finite groups as Cayley tables with canonical generating sets.

Groups are concrete multiplication tables, not presentations; homomorphism
checking is all-pairs verification, which is trivially affordable at the
orders handled here and needs no coset enumeration.  Canonical generating
sets per family keep lift-enumeration sizes reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations
from math import gcd
from typing import Dict, List, Optional, Sequence, Tuple

from .galois import is_prime

MAX_ORDER = 2000
EXHAUSTIVE_ASSOC_ORDER = 256


class GroupConstructionError(ValueError):
    pass


class FiniteGroup:
    """Group law on indices 0..n-1 with identity 0, generators, and shortest words."""

    def __init__(self, table: Sequence[Sequence[int]], generators: Sequence[int],
                 name: str = "", element_names: Optional[Sequence[str]] = None,
                 validate: bool = True):
        self.n = len(table)
        if self.n == 0 or self.n > MAX_ORDER:
            raise GroupConstructionError(f"group order must be in 1..{MAX_ORDER}")
        self.table = tuple(tuple(row) for row in table)
        self.name = name or f"group-of-order-{self.n}"
        self.element_names = tuple(element_names) if element_names is not None \
            else tuple(f"g{i}" for i in range(self.n))
        if validate:
            self._validate_axioms()
        self.identity = self._find_identity()
        self.inverse = self._compute_inverses()
        self.generators = tuple(dict.fromkeys(generators))  # dedupe, keep order
        self.words = self._word_table()

    # -- construction checks --------------------------------------------------

    def _validate_axioms(self) -> None:
        n = self.n
        for row in self.table:
            if len(row) != n or any(not (0 <= x < n) for x in row):
                raise GroupConstructionError("malformed Cayley table")
        if n <= EXHAUSTIVE_ASSOC_ORDER:
            triples = range(n)
        else:
            # sampled associativity above the exhaustive threshold
            step = max(1, n // 64)
            triples = range(0, n, step)
        t = self.table
        for a in triples:
            for b in range(n):
                for c in range(n):
                    if t[t[a][b]][c] != t[a][t[b][c]]:
                        raise GroupConstructionError(
                            f"associativity fails at ({a},{b},{c})")
        # latin-square property gives inverses once identity exists
        for row in self.table:
            if len(set(row)) != n:
                raise GroupConstructionError("Cayley table rows must be permutations")

    def _find_identity(self) -> int:
        for e in range(self.n):
            if all(self.table[e][x] == x and self.table[x][e] == x
                   for x in range(self.n)):
                return e
        raise GroupConstructionError("no identity element")

    def _compute_inverses(self) -> Tuple[int, ...]:
        inv = [0] * self.n
        for a in range(self.n):
            found = None
            for b in range(self.n):
                if self.table[a][b] == self.identity:
                    found = b
                    break
            if found is None or self.table[found][a] != self.identity:
                raise GroupConstructionError(f"element {a} has no two-sided inverse")
            inv[a] = found
        return tuple(inv)

    def _word_table(self) -> Tuple[Tuple[int, ...], ...]:
        """Shortest word in the generators for each element (breadth-first)."""
        words: Dict[int, Tuple[int, ...]] = {self.identity: ()}
        frontier = [self.identity]
        while frontier:
            nxt = []
            for x in frontier:
                for gi, g in enumerate(self.generators):
                    y = self.table[x][g]
                    if y not in words:
                        words[y] = words[x] + (gi,)
                        nxt.append(y)
            frontier = nxt
        if len(words) != self.n:
            raise GroupConstructionError("generators do not generate the group")
        return tuple(words[x] for x in range(self.n))

    # -- group operations ------------------------------------------------------

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def inv(self, a: int) -> int:
        return self.inverse[a]

    def order_of(self, a: int) -> int:
        e, x = 1, a
        while x != self.identity:
            x = self.table[x][a]
            e += 1
        return e

    def elements(self) -> range:
        return range(self.n)

    def __repr__(self):
        return f"FiniteGroup({self.name}, order={self.n})"


# -- family constructors ------------------------------------------------------------


def cyclic(n: int) -> FiniteGroup:
    table = [[(i + j) % n for j in range(n)] for i in range(n)]
    gens = [1] if n > 1 else []
    return FiniteGroup(table, gens, name=f"C{n}",
                       element_names=[f"r^{i}" for i in range(n)])


def dihedral(n: int) -> FiniteGroup:
    """Dihedral group of order 2n; generators: rotation, reflection."""
    if n < 1:
        raise GroupConstructionError("dihedral parameter must be >= 1")
    # element (i, s) -> index s*n + i; (i,s)(j,t) = (i + (-1)^s j, s xor t)
    def idx(i, s):
        return s * n + i
    table = [[0] * (2 * n) for _ in range(2 * n)]
    for s in (0, 1):
        for i in range(n):
            for t in (0, 1):
                for j in range(n):
                    k = (i + (j if s == 0 else -j)) % n
                    table[idx(i, s)][idx(j, t)] = idx(k, s ^ t)
    names = [f"r^{i}" for i in range(n)] + [f"s*r^{i}" for i in range(n)]
    return FiniteGroup(table, [idx(1 % n, 0), idx(0, 1)], name=f"D{n}",
                       element_names=names)


def symmetric(n: int) -> FiniteGroup:
    """Symmetric group on n letters, n <= 5; generators: (0 1) and the n-cycle."""
    if n < 1 or n > 5:
        raise GroupConstructionError("symmetric groups supported for n in 1..5")
    perms = sorted(permutations(range(n)))
    index = {p: i for i, p in enumerate(perms)}

    def compose(a, b):  # (a*b)(x) = a(b(x))
        return tuple(a[b[x]] for x in range(n))

    table = [[index[compose(a, b)] for b in perms] for a in perms]
    gens = []
    if n >= 2:
        swap = tuple([1, 0] + list(range(2, n)))
        gens.append(index[swap])
    if n >= 3:
        cycle = tuple(list(range(1, n)) + [0])
        gens.append(index[cycle])
    names = ["(" + " ".join(map(str, p)) + ")" for p in perms]
    return FiniteGroup(table, gens, name=f"S{n}", element_names=names)


def quaternion8() -> FiniteGroup:
    """The quaternion group {±1, ±i, ±j, ±k}; generators i, j."""
    names = ["1", "-1", "i", "-i", "j", "-j", "k", "-k"]
    # encode q = (sign, axis) with axis in {1, i, j, k}
    def enc(sign, axis):
        return axis * 2 + (0 if sign == 1 else 1)

    def dec(x):
        return (1 if x % 2 == 0 else -1, x // 2)

    basemul = {  # axis multiplication: (a, b) -> (sign, axis)
        (0, 0): (1, 0), (0, 1): (1, 1), (0, 2): (1, 2), (0, 3): (1, 3),
        (1, 0): (1, 1), (1, 1): (-1, 0), (1, 2): (1, 3), (1, 3): (-1, 2),
        (2, 0): (1, 2), (2, 1): (-1, 3), (2, 2): (-1, 0), (2, 3): (1, 1),
        (3, 0): (1, 3), (3, 1): (1, 2), (3, 2): (-1, 1), (3, 3): (-1, 0),
    }
    table = [[0] * 8 for _ in range(8)]
    for x in range(8):
        sx, ax = dec(x)
        for y in range(8):
            sy, ay = dec(y)
            s, a = basemul[(ax, ay)]
            table[x][y] = enc(sx * sy * s, a)
    return FiniteGroup(table, [enc(1, 1), enc(1, 2)], name="Q8",
                       element_names=names)


def direct_product(G: FiniteGroup, H: FiniteGroup) -> FiniteGroup:
    n, m = G.n, H.n

    def idx(a, b):
        return a * m + b

    table = [[0] * (n * m) for _ in range(n * m)]
    for a in range(n):
        for b in range(m):
            for c in range(n):
                for d in range(m):
                    table[idx(a, b)][idx(c, d)] = idx(G.table[a][c], H.table[b][d])
    gens = [idx(g, H.identity) for g in G.generators] + \
           [idx(G.identity, h) for h in H.generators]
    names = [f"({G.element_names[a]},{H.element_names[b]})"
             for a in range(n) for b in range(m)]
    return FiniteGroup(table, gens, name=f"{G.name}x{H.name}", element_names=names)


def from_cayley_table(table: Sequence[Sequence[int]],
                      generators: Optional[Sequence[int]] = None,
                      name: str = "") -> FiniteGroup:
    gens = list(generators) if generators is not None else list(range(len(table)))
    return FiniteGroup(table, gens, name=name or "custom")


def build_group(kind: str, params: Sequence[int] = ()) -> FiniteGroup:
    kind = kind.lower()
    if kind in ("cyclic", "c"):
        return cyclic(params[0])
    if kind in ("dihedral", "d"):
        return dihedral(params[0])
    if kind in ("symmetric", "s"):
        return symmetric(params[0])
    if kind in ("quaternion8", "q8"):
        return quaternion8()
    if kind == "klein4":
        return direct_product(cyclic(2), cyclic(2))
    raise GroupConstructionError(f"unknown group family {kind!r}")


# -- utilities ------------------------------------------------------------------------


def p_part(G: FiniteGroup, p: int) -> Tuple[int, int]:
    """Write |G| = p^r * s with p not dividing s; returns (r, s)."""
    if not is_prime(p):
        raise ValueError(f"p = {p} is not prime")
    r, s = 0, G.n
    while s % p == 0:
        s //= p
        r += 1
    return r, s


def _subgroup_closure(G: FiniteGroup, seed: Sequence[int]) -> frozenset:
    elems = {G.identity}
    frontier = [G.identity]
    seed = set(seed) | {G.identity}
    elems |= seed
    frontier = list(seed)
    while frontier:
        x = frontier.pop()
        for y in list(elems):
            for z in (G.table[x][y], G.table[y][x]):
                if z not in elems:
                    elems.add(z)
                    frontier.append(z)
    return frozenset(elems)


def commutator_subgroup(G: FiniteGroup) -> frozenset:
    comms = {G.table[G.table[a][b]][G.table[G.inverse[a]][G.inverse[b]]]
             for a in range(G.n) for b in range(G.n)}
    return _subgroup_closure(G, comms)


def abelianization(G: FiniteGroup) -> List[int]:
    """Invariant factors d_1 | d_2 | ... of G/[G,G] (trivial group gives [])."""
    H = commutator_subgroup(G)
    # cosets of H, with induced multiplication
    coset_of: Dict[int, int] = {}
    reps: List[int] = []
    for x in range(G.n):
        if x in coset_of:
            continue
        r = len(reps)
        reps.append(x)
        for h in H:
            coset_of[G.table[x][h]] = r
    k = len(reps)
    mul = [[coset_of[G.table[reps[a]][reps[b]]] for b in range(k)] for a in range(k)]
    ident = coset_of[G.identity]

    def order_in_quotient(a: int) -> int:
        e, x = 1, a
        while x != ident:
            x = mul[x][a]
            e += 1
        return e

    orders = [order_in_quotient(a) for a in range(k)]
    # per-prime elementary divisors via counts of elements of order dividing p^j
    factors_by_prime: Dict[int, List[int]] = {}
    size = k
    d = 2
    nn = size
    primes = []
    while d * d <= nn:
        if nn % d == 0:
            primes.append(d)
            while nn % d == 0:
                nn //= d
        d += 1
    if nn > 1:
        primes.append(nn)
    for p in primes:
        counts = [1]  # counts[j] = #{x : x^(p^j) = 1}
        j = 1
        while True:
            Nj = sum(1 for o in orders if p ** j % o == 0)
            counts.append(Nj)
            if Nj == counts[-2]:
                break
            j += 1
        # a[j-1] = number of cyclic p-factors with exponent >= j
        a = []
        for j in range(1, len(counts)):
            ratio = counts[j] // counts[j - 1]
            e = 0
            while ratio > 1:
                ratio //= p
                e += 1
            a.append(e)
        divisors = []
        for j, aj in enumerate(a, start=1):
            nxt = a[j] if j < len(a) else 0
            divisors.extend([p ** j] * (aj - nxt))
        factors_by_prime[p] = sorted(divisors, reverse=True)
    # combine prime-power lists into invariant factors (largest first, then reverse)
    width = max((len(v) for v in factors_by_prime.values()), default=0)
    invariants = []
    for i in range(width):
        f = 1
        for p, lst in factors_by_prime.items():
            if i < len(lst):
                f *= lst[i]
        invariants.append(f)
    return sorted(invariants)


def extend_and_verify_hom(G: FiniteGroup, one, generator_images: Sequence):
    """Extend generator images along the word table and verify all |G|^2 pairs.

    The target needs only `*` and `==` (ring elements, matrices, or another
    group wrapped accordingly).  Returns (images, None) on success or
    (None, (a, b)) with the first violated pair.
    """
    if len(generator_images) != len(G.generators):
        raise ValueError("one image per generator required")
    images = [None] * G.n
    for x in range(G.n):
        acc = one
        for gi in G.words[x]:
            acc = acc * generator_images[gi]
        images[x] = acc
    for a in range(G.n):
        for b in range(G.n):
            if images[a] * images[b] != images[G.table[a][b]]:
                return None, (a, b)
    return images, None
