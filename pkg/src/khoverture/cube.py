"""Combinatorics of the cube {0,1}^n and sign assignments on its edges.

Vertices are tuples of 0/1.  The partial order is bitwise: u >= v iff
u_i >= v_i for all i.  An edge is a pair u > v differing in one
coordinate; a sign assignment labels each edge with a bit so that the
two edge-paths around every square have opposite total parity, which is
exactly what makes the totalized differential square to zero.
"""

from __future__ import annotations

from itertools import combinations, product


Vertex = tuple


def iter_vertices(n: int):
    """All vertices of {0,1}^n in lexicographic order."""
    return product((0, 1), repeat=n)


def weight(v) -> int:
    return sum(v)


def leq(v, u) -> bool:
    """v <= u in the cube partial order."""
    return all(a <= b for a, b in zip(v, u))


def flip(v, i):
    w = list(v)
    w[i] ^= 1
    return tuple(w)


def lower_edges(u):
    """All v < u with |u| - |v| = 1, as (v, flipped coordinate)."""
    return [(flip(u, i), i) for i, b in enumerate(u) if b]


def upper_edges(v):
    """All u > v with |u| - |v| = 1, as (u, flipped coordinate)."""
    return [(flip(v, i), i) for i, b in enumerate(v) if not b]


def diff_coords(u, v):
    """Coordinates where u has 1 and v has 0 (requires u >= v)."""
    if not leq(v, u):
        raise ValueError(f"{u} is not >= {v}")
    return [i for i, (a, b) in enumerate(zip(u, v)) if a > b]


def interval(u, v):
    """All w with u >= w >= v, in lexicographic order."""
    d = diff_coords(u, v)
    out = []
    for r in range(len(d) + 1):
        for extra in combinations(d, r):
            w = list(v)
            for i in extra:
                w[i] = 1
            out.append(tuple(w))
    return sorted(out)


class SignAssignment:
    """Edge labels s_{u,v} in F_2 with odd total parity around each square."""

    def __init__(self, n: int, label):
        self.n = n
        self._label = label

    def __call__(self, u, v) -> int:
        """Sign bit of the edge u > v with |u|-|v| = 1."""
        (i,) = diff_coords(u, v)
        return self._label(u, v, i)

    def check_squares(self) -> bool:
        """Exhaustively verify the 2-face axiom."""
        for u in iter_vertices(self.n):
            ones = [i for i, b in enumerate(u) if b]
            for i, j in combinations(ones, 2):
                v1, v2 = flip(u, i), flip(u, j)
                w = flip(v1, j)
                total = self(u, v1) + self(v1, w) + self(u, v2) + self(v2, w)
                if total % 2 != 1:
                    return False
        return True


def standard_sign_assignment(n: int) -> SignAssignment:
    """s_{u,v} = (number of 1s of u before the flipped coordinate) mod 2.

    The axiom only pins the assignment up to coboundary; this prefix
    popcount formula is the usual concrete choice.
    """
    if n < 0:
        raise ValueError("dimension must be >= 0")
    return SignAssignment(n, lambda u, v, i: sum(u[:i]) % 2)


def coboundary_difference(s1: SignAssignment, s2: SignAssignment):
    """Express s1 + s2 as the coboundary of f: {0,1}^n -> F_2, if possible.

    Returns the vertex potential f (as a dict) or None.  Any two sign
    assignments of the same cube differ by such a coboundary, since their
    sum is a cocycle on the (connected, simply connected) cube graph.
    """
    n = s1.n
    if n != s2.n:
        raise ValueError("dimension mismatch")
    f = {tuple([0] * n): 0}
    queue = [tuple([0] * n)]
    while queue:
        v = queue.pop()
        for u, _ in upper_edges(v):
            val = (f[v] + s1(u, v) + s2(u, v)) % 2
            if u in f:
                if f[u] != val:
                    return None
            else:
                f[u] = val
                queue.append(u)
    return f
