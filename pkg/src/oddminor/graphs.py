"""Immutable simple graphs on vertices 0..n-1 with bitmask adjacency rows.

Covers graph6 short-form I/O (n <= 62), an edge-list text format for
hand-written fixtures, construction combinators, and a canonical form used
for isomorphism deduplication at small scale.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator

GRAPH6_HEADER = ">>graph6<<"
GRAPH6_MAX_N = 62
CANONICAL_MAX_N = 16


class MalformedGraph6(ValueError):
    """graph6 input that violates the short-form encoding."""


class UnsupportedScale(ValueError):
    """Operation invoked beyond its size cap."""


def iter_bits(mask: int) -> Iterator[int]:
    """Yield the set bit positions of ``mask`` in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph; ``rows[v]`` is the neighbor bitmask of v."""

    n: int
    rows: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.n < 0:
            raise ValueError("negative vertex count")
        if len(self.rows) != self.n:
            raise ValueError("adjacency row count differs from n")
        full = (1 << self.n) - 1 if self.n else 0
        for v, row in enumerate(self.rows):
            if row & ~full:
                raise ValueError(f"row {v} references vertices outside 0..{self.n - 1}")
            if (row >> v) & 1:
                raise ValueError(f"loop at vertex {v}")
        for v, row in enumerate(self.rows):
            for u in iter_bits(row):
                if not (self.rows[u] >> v) & 1:
                    raise ValueError(f"asymmetric edge {v}-{u}")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        rows = [0] * n
        for u, v in edges:
            if u == v:
                raise ValueError(f"loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge {u}-{v} out of range for n={n}")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return cls(n, tuple(rows))

    def has_edge(self, u: int, v: int) -> bool:
        return bool((self.rows[u] >> v) & 1)

    def neighbors(self, v: int) -> frozenset[int]:
        return frozenset(iter_bits(self.rows[v]))

    def degree(self, v: int) -> int:
        return self.rows[v].bit_count()

    def degrees(self) -> list[int]:
        return [row.bit_count() for row in self.rows]

    @property
    def edge_count(self) -> int:
        return sum(row.bit_count() for row in self.rows) // 2

    def edges(self) -> list[tuple[int, int]]:
        out = []
        for v in range(self.n):
            for u in iter_bits(self.rows[v] >> (v + 1)):
                out.append((v, v + 1 + u))
        return out

    def __repr__(self) -> str:  # pragma: no cover - debugging aid
        return f"Graph(n={self.n}, edges={self.edges()})"


# ---------------------------------------------------------------------------
# builders


def empty_graph(n: int) -> Graph:
    return Graph(n, (0,) * n)


def complete(n: int) -> Graph:
    full = (1 << n) - 1
    return Graph(n, tuple(full ^ (1 << v) for v in range(n)))


def path(n: int) -> Graph:
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def cycle(n: int) -> Graph:
    if n < 3:
        raise ValueError("cycle needs at least 3 vertices")
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


# ---------------------------------------------------------------------------
# combinators


def complement(g: Graph) -> Graph:
    full = (1 << g.n) - 1 if g.n else 0
    return Graph(g.n, tuple((full ^ row) & ~(1 << v) for v, row in enumerate(g.rows)))


def induced(g: Graph, vertices: Iterable[int]) -> Graph:
    """Subgraph induced on ``vertices``, relabeled 0..k-1 in ascending order."""
    keep = sorted(set(vertices))
    for v in keep:
        if not 0 <= v < g.n:
            raise IndexError(f"vertex {v} out of range for n={g.n}")
    pos = {v: i for i, v in enumerate(keep)}
    rows = []
    for v in keep:
        row = 0
        for u in iter_bits(g.rows[v]):
            if u in pos:
                row |= 1 << pos[u]
        rows.append(row)
    return Graph(len(keep), tuple(rows))


def disjoint_union(g1: Graph, g2: Graph) -> Graph:
    rows = list(g1.rows) + [row << g1.n for row in g2.rows]
    return Graph(g1.n + g2.n, tuple(rows))


def join(g1: Graph, g2: Graph) -> Graph:
    """Disjoint union plus every edge between the two sides."""
    mask1 = (1 << g1.n) - 1
    mask2 = ((1 << g2.n) - 1) << g1.n
    rows = [row | mask2 for row in g1.rows]
    rows += [(row << g1.n) | mask1 for row in g2.rows]
    return Graph(g1.n + g2.n, tuple(rows))


def relabel(g: Graph, perm: Iterable[int]) -> Graph:
    """Relabel so that old vertex ``perm[i]`` becomes new vertex ``i``."""
    p = list(perm)
    if sorted(p) != list(range(g.n)):
        raise ValueError("not a permutation")
    pos = [0] * g.n
    for newi, old in enumerate(p):
        pos[old] = newi
    rows = []
    for old in p:
        row = 0
        for u in iter_bits(g.rows[old]):
            row |= 1 << pos[u]
        rows.append(row)
    return Graph(g.n, tuple(rows))


# ---------------------------------------------------------------------------
# graph6 short form (n <= 62): 6-bit chunks over the upper triangle, column
# by column, most significant bit first, zero padding.


def parse_graph6(text: str) -> Graph:
    line = text.strip()
    if line.startswith(GRAPH6_HEADER):
        line = line[len(GRAPH6_HEADER):]
    if not line:
        raise MalformedGraph6("empty graph6 string")
    if line[0] == ":":
        raise MalformedGraph6("sparse6 input is not supported")
    head = ord(line[0])
    if head == 126:
        raise MalformedGraph6("graph6 long form (n >= 63) is not supported")
    if head < 63 or head > 126:
        raise MalformedGraph6(f"header character {line[0]!r} outside graph6 range")
    n = head - 63
    nbits = n * (n - 1) // 2
    nchars = (nbits + 5) // 6
    body = line[1:]
    if len(body) != nchars:
        raise MalformedGraph6(
            f"expected {nchars} data characters for n={n}, got {len(body)}"
        )
    bits = 0
    for ch in body:
        val = ord(ch)
        if val < 63 or val > 126:
            raise MalformedGraph6(f"data character {ch!r} outside graph6 range")
        bits = (bits << 6) | (val - 63)
    pad = 6 * nchars - nbits
    if pad and bits & ((1 << pad) - 1):
        raise MalformedGraph6("nonzero padding bits")
    bits >>= pad
    rows = [0] * n
    # bits were accumulated most-significant-first; read them back in order
    k = nbits
    for col in range(1, n):
        for rowi in range(col):
            k -= 1
            if (bits >> k) & 1:
                rows[rowi] |= 1 << col
                rows[col] |= 1 << rowi
    return Graph(n, tuple(rows))


def to_graph6(g: Graph) -> str:
    if g.n > GRAPH6_MAX_N:
        raise UnsupportedScale(f"graph6 short form caps at n={GRAPH6_MAX_N}")
    n = g.n
    bits = 0
    nbits = n * (n - 1) // 2
    for col in range(1, n):
        for rowi in range(col):
            bits = (bits << 1) | ((g.rows[rowi] >> col) & 1)
    nchars = (nbits + 5) // 6
    pad = 6 * nchars - nbits
    bits <<= pad
    chars = []
    for i in range(nchars - 1, -1, -1):
        chars.append(chr(63 + ((bits >> (6 * i)) & 63)))
    return chr(63 + n) + "".join(chars)


# ---------------------------------------------------------------------------
# edge-list text format: first line "n m", then m lines "u v" (0-based)


def parse_edge_list(text: str) -> Graph:
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise ValueError("empty edge list")
    head = lines[0].split()
    if len(head) != 2:
        raise ValueError("first line must be 'n m'")
    n, m = int(head[0]), int(head[1])
    if len(lines) - 1 != m:
        raise ValueError(f"expected {m} edge lines, got {len(lines) - 1}")
    edges = []
    for ln in lines[1:]:
        parts = ln.split()
        if len(parts) != 2:
            raise ValueError(f"bad edge line: {ln!r}")
        edges.append((int(parts[0]), int(parts[1])))
    return Graph.from_edges(n, edges)


def format_edge_list(g: Graph) -> str:
    lines = [f"{g.n} {g.edge_count}"]
    lines += [f"{u} {v}" for u, v in g.edges()]
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# canonical form: individualization-refinement backtracking over an ordered
# partition, minimizing the relabeled adjacency rows.  Automorphisms found
# along the way prune branches whose roots are equivalent.


def _refine(rows: tuple[int, ...], cells: list[list[int]]) -> list[list[int]]:
    """Split cells by neighbor counts until the partition is equitable."""
    changed = True
    while changed:
        changed = False
        for si in range(len(cells)):
            smask = 0
            for v in cells[si]:
                smask |= 1 << v
            new_cells: list[list[int]] = []
            for cell in cells:
                if len(cell) == 1:
                    new_cells.append(cell)
                    continue
                groups: dict[int, list[int]] = {}
                for v in cell:
                    groups.setdefault((rows[v] & smask).bit_count(), []).append(v)
                if len(groups) == 1:
                    new_cells.append(cell)
                else:
                    changed = True
                    for d in sorted(groups):
                        new_cells.append(groups[d])
            cells = new_cells
            if changed:
                break
    return cells


def canonical_rows(n: int, rows: tuple[int, ...]) -> tuple[int, ...]:
    """Canonically relabeled adjacency rows; equal iff the graphs are isomorphic."""
    if n > CANONICAL_MAX_N:
        raise UnsupportedScale(f"canonical form caps at n={CANONICAL_MAX_N}")
    if n <= 1:
        return tuple(rows)

    best_key: tuple[int, ...] | None = None
    best_perm: tuple[int, ...] | None = None
    gens: list[tuple[int, ...]] = []
    identity = tuple(range(n))

    def leaf_key(perm: tuple[int, ...]) -> tuple[int, ...]:
        pos = [0] * n
        for newi, old in enumerate(perm):
            pos[old] = newi
        out = []
        for old in perm:
            row = rows[old]
            nr = 0
            while row:
                low = row & -row
                nr |= 1 << pos[low.bit_length() - 1]
                row ^= low
            out.append(nr)
        return tuple(out)

    def same_orbit(a: int, b: int, prefix: tuple[int, ...]) -> bool:
        active = [p for p in gens if all(p[x] == x for x in prefix)]
        if not active:
            return False
        seen = {a}
        frontier = [a]
        while frontier:
            v = frontier.pop()
            for p in active:
                w = p[v]
                if w not in seen:
                    if w == b:
                        return True
                    seen.add(w)
                    frontier.append(w)
        return b in seen

    def dfs(cells: list[list[int]], prefix: tuple[int, ...]) -> None:
        nonlocal best_key, best_perm
        target = -1
        for i, cell in enumerate(cells):
            if len(cell) > 1:
                target = i
                break
        if target < 0:
            perm = tuple(cell[0] for cell in cells)
            key = leaf_key(perm)
            if best_key is None or key < best_key:
                best_key, best_perm = key, perm
            elif key == best_key:
                aut = [0] * n
                for i in range(n):
                    aut[best_perm[i]] = perm[i]
                aut_t = tuple(aut)
                if aut_t != identity and aut_t not in gens:
                    gens.append(aut_t)
            return
        cell = cells[target]
        explored: list[int] = []
        for v in cell:
            if any(same_orbit(u, v, prefix) for u in explored):
                continue
            explored.append(v)
            split = cells[:target] + [[v], [u for u in cell if u != v]] + cells[target + 1:]
            dfs(_refine(rows, split), prefix + (v,))

    dfs(_refine(rows, [list(range(n))]), ())
    assert best_key is not None
    return best_key


def canonical_label(g: Graph) -> bytes:
    """Canonical byte key: equal keys iff isomorphic graphs (n <= 16)."""
    form = canonical_rows(g.n, g.rows)
    return bytes([g.n]) + b"".join(row.to_bytes(2, "big") for row in form)


def canonical_form(g: Graph) -> Graph:
    return Graph(g.n, canonical_rows(g.n, g.rows))
