"""Three-coloured chessboards with domain wall boundary conditions.

A board of size n is an (n+1) x (n+1) array of colours in Z/3 where adjacent
squares differ, the north-west and south-east squares have colour 0, and the
boundary colours increase cyclically away from those two corners.  Boards
are in bijection with n x n alternating sign matrices and with ice graphs.

Enumeration walks the board row by row.  Every admissible row is a walk of
+-1 steps with prescribed end colours, so candidate rows are generated once
in lexicographic order; depth-first search over compatible rows then yields
boards in the same order as cell-by-cell backtracking with colours tried in
ascending order.
"""

from __future__ import annotations

import json
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterator, Mapping

from .errors import InvalidASM, InvalidBoard, SizeGuardError
from .exactpoly import asm_count

ENUMERATION_GUARD = 8


@dataclass(frozen=True, slots=True)
class ThreeColourBoard:
    """Board of size n; ``grid[i][j]`` is the colour in row i, column j."""

    n: int
    grid: tuple[tuple[int, ...], ...]

    @classmethod
    def checked(cls, n: int, grid) -> "ThreeColourBoard":
        b = cls(n, tuple(tuple(int(c) for c in row) for row in grid))
        b.validate()
        return b

    def validate(self) -> None:
        n, g = self.n, self.grid
        if len(g) != n + 1 or any(len(row) != n + 1 for row in g):
            raise InvalidBoard("grid must be (n+1) x (n+1)")
        for i in range(n + 1):
            for j in range(n + 1):
                c = g[i][j]
                if c not in (0, 1, 2):
                    raise InvalidBoard(f"colour {c!r} at ({i},{j})")
                if i < n and g[i + 1][j] == c:
                    raise InvalidBoard(f"equal vertical neighbours at ({i},{j})")
                if j < n and g[i][j + 1] == c:
                    raise InvalidBoard(f"equal horizontal neighbours at ({i},{j})")
        for k in range(n + 1):
            if g[0][k] != k % 3 or g[k][0] != k % 3:
                raise InvalidBoard("north or west boundary violated")
            if g[n][k] != (n - k) % 3 or g[k][n] != (n - k) % 3:
                raise InvalidBoard("south or east boundary violated")

    def to_json_obj(self) -> dict:
        return {"n": self.n, "grid": [list(r) for r in self.grid]}

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj(), separators=(",", ":"))

    @classmethod
    def from_json(cls, text: str) -> "ThreeColourBoard":
        obj = json.loads(text)
        return cls.checked(obj["n"], obj["grid"])


@dataclass(frozen=True, slots=True)
class AlternatingSignMatrix:
    n: int
    entries: tuple[tuple[int, ...], ...]

    @classmethod
    def checked(cls, entries) -> "AlternatingSignMatrix":
        rows = tuple(tuple(int(v) for v in r) for r in entries)
        a = cls(len(rows), rows)
        a.validate()
        return a

    def validate(self) -> None:
        n = self.n
        if any(len(r) != n for r in self.entries):
            raise InvalidASM("matrix is not square")
        lines = list(self.entries) + [tuple(r[j] for r in self.entries) for j in range(n)]
        for line in lines:
            s = 0
            for v in line:
                if v not in (-1, 0, 1):
                    raise InvalidASM(f"entry {v} outside {{-1,0,1}}")
                s += v
                if s not in (0, 1):
                    raise InvalidASM("partial sums leave {0,1}")
            if s != 1:
                raise InvalidASM("line sum differs from 1")


@dataclass(frozen=True, slots=True)
class IceGraph:
    """Arrow orientations on the edges separating adjacent squares.

    ``h_edges[i][j]`` sits between squares (i,j) and (i+1,j) and is True when
    the arrow points east.  ``v_edges[i][j]`` sits between squares (i,j) and
    (i,j+1) and is True when the arrow points north.
    """

    n: int
    h_edges: tuple[tuple[bool, ...], ...]
    v_edges: tuple[tuple[bool, ...], ...]

    def in_degree(self, i: int, j: int) -> int:
        """Incoming arrows at the vertex shared by squares (i..i+1, j..j+1)."""
        return (
            (not self.v_edges[i][j])
            + self.v_edges[i + 1][j]
            + self.h_edges[i][j]
            + (not self.h_edges[i][j + 1])
        )

    def six_vertex_ok(self) -> bool:
        return all(self.in_degree(i, j) == 2 for i in range(self.n) for j in range(self.n))


def _larger(a: int, b: int) -> bool:
    """True when b follows a in the cyclic order 0 < 1 < 2 < 0."""
    return (a + 1) % 3 == b


# ---------------------------------------------------------------------------
# enumeration
# ---------------------------------------------------------------------------


def _rows_for(n: int, i: int) -> list[tuple[int, ...]]:
    start, end = i % 3, (n - i) % 3
    out: list[tuple[int, ...]] = []

    def walk(prefix: list[int]) -> None:
        if len(prefix) == n + 1:
            if prefix[-1] == end:
                out.append(tuple(prefix))
            return
        last = prefix[-1]
        for c in sorted(((last + 1) % 3, (last + 2) % 3)):
            prefix.append(c)
            walk(prefix)
            prefix.pop()

    walk([start])
    return out


def _compatible(r: tuple[int, ...], s: tuple[int, ...]) -> bool:
    return all(a != b for a, b in zip(r, s))


@lru_cache(maxsize=16)
def _row_graph(n: int):
    """Candidate rows per index and, for each, the compatible next rows."""
    rows = [_rows_for(n, i) for i in range(n + 1)]
    rows[0] = [r for r in rows[0] if r == tuple(j % 3 for j in range(n + 1))]
    rows[n] = [r for r in rows[n] if r == tuple((n - j) % 3 for j in range(n + 1))]
    nxt = []
    for i in range(n):
        nxt.append([[k for k, s in enumerate(rows[i + 1]) if _compatible(r, s)] for r in rows[i]])
    return rows, nxt


def _guard(n: int, force: bool) -> None:
    if n < 0:
        raise ValueError("n must be non-negative")
    if n > ENUMERATION_GUARD and not force:
        raise SizeGuardError(f"n={n} exceeds the enumeration guard {ENUMERATION_GUARD}; pass force")


def _walk(n: int, first: int | None = None) -> Iterator[tuple[int, ...]]:
    """Yield candidate-index paths (one index per row) of complete boards."""
    rows, nxt = _row_graph(n)
    if n == 0:
        yield (0,)
        return
    path = [0]
    stacks = [iter(nxt[0][0] if first is None else [first])]
    while stacks:
        try:
            k = next(stacks[-1])
        except StopIteration:
            stacks.pop()
            path.pop()
            continue
        path.append(k)
        depth = len(path) - 1
        if depth == n:
            yield tuple(path)
            path.pop()
            continue
        stacks.append(iter(nxt[depth][k]))


def enumerate_boards(n: int, force: bool = False) -> Iterator[ThreeColourBoard]:
    """Yield every board of size n exactly once, in lexicographic order."""
    _guard(n, force)
    rows, _ = _row_graph(n)
    for path in _walk(n):
        yield ThreeColourBoard(n, tuple(rows[i][k] for i, k in enumerate(path)))


def colour_counts(b: ThreeColourBoard) -> tuple[int, int, int]:
    c = Counter(v for row in b.grid for v in row)
    return (c[0], c[1], c[2])


def _tally(n: int, first: int | None) -> Counter:
    rows, _ = _row_graph(n)
    row_counts = [[(r.count(0), r.count(1), r.count(2)) for r in rs] for rs in rows]
    tally: Counter = Counter()
    for path in _walk(n, first):
        k0 = k1 = k2 = 0
        for i, k in enumerate(path):
            a, b, c = row_counts[i][k]
            k0 += a
            k1 += b
            k2 += c
        tally[(k0, k1, k2)] += 1
    return tally


def counting_table(n: int, force: bool = False, jobs: int = 1) -> "CountTable":
    """Exact N(k0,k1,k2) by full enumeration (optionally split across processes)."""
    _guard(n, force)
    tally: Counter = Counter()
    if jobs > 1 and n >= 2:
        _, nxt = _row_graph(n)
        firsts = list(nxt[0][0])
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            for part in pool.map(_tally, [n] * len(firsts), firsts):
                tally.update(part)
    else:
        tally = _tally(n, None)
    return CountTable(n, dict(tally))


def partition_polynomial(n: int, force: bool = False, jobs: int = 1) -> "TriPoly":
    return counting_table(n, force, jobs).as_tripoly()


# ---------------------------------------------------------------------------
# bijections
# ---------------------------------------------------------------------------


def heights(b: ThreeColourBoard) -> list[list[int]]:
    """Integer lift of the colours with adjacent labels differing by one."""
    n, g = b.n, b.grid
    h = [[0] * (n + 1) for _ in range(n + 1)]

    def step(prev: int, colour: int) -> int:
        return prev + 1 if (prev + 1) % 3 == colour else prev - 1

    for j in range(1, n + 1):
        h[0][j] = step(h[0][j - 1], g[0][j])
    for i in range(1, n + 1):
        h[i][0] = step(h[i - 1][0], g[i][0])
        for j in range(1, n + 1):
            h[i][j] = step(h[i - 1][j], g[i][j])
    return h


def board_to_asm(b: ThreeColourBoard) -> AlternatingSignMatrix:
    h = heights(b)
    n = b.n
    rows = []
    for i in range(n):
        row = []
        for j in range(n):
            a, bb, c, d = h[i][j], h[i][j + 1], h[i + 1][j], h[i + 1][j + 1]
            row.append((bb + c - a - d) // 2)
        rows.append(tuple(row))
    return AlternatingSignMatrix(n, tuple(rows))


def asm_to_board(a: AlternatingSignMatrix) -> ThreeColourBoard:
    a.validate()
    n = a.n
    # S[i][j] = sum of entries strictly above-left of corner (i, j)
    S = [[0] * (n + 1) for _ in range(n + 1)]
    for i in range(n):
        for j in range(n):
            S[i + 1][j + 1] = S[i][j + 1] + S[i + 1][j] - S[i][j] + a.entries[i][j]
    grid = tuple(tuple((i + j - 2 * S[i][j]) % 3 for j in range(n + 1)) for i in range(n + 1))
    return ThreeColourBoard(n, grid)


def board_to_ice(b: ThreeColourBoard) -> IceGraph:
    n, g = b.n, b.grid
    h_edges = tuple(
        tuple(_larger(g[i][j], g[i + 1][j]) for j in range(n + 1)) for i in range(n)
    )
    v_edges = tuple(
        tuple(_larger(g[i][j], g[i][j + 1]) for j in range(n)) for i in range(n + 1)
    )
    return IceGraph(n, h_edges, v_edges)


# ---------------------------------------------------------------------------
# counting tables and trivariate polynomials
# ---------------------------------------------------------------------------


class TriPoly:
    """Sparse polynomial in t0, t1, t2 (exponent triples may be negative
    during intermediate Laurent computations)."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[tuple[int, int, int], int | Fraction] | None = None):
        self.terms = {k: v for k, v in (terms or {}).items() if v != 0}

    @classmethod
    def monomial(cls, k: tuple[int, int, int], c=1) -> "TriPoly":
        return cls({tuple(k): c})

    def __add__(self, other: "TriPoly") -> "TriPoly":
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, 0) + v
        return TriPoly(out)

    def __neg__(self) -> "TriPoly":
        return TriPoly({k: -v for k, v in self.terms.items()})

    def __sub__(self, other: "TriPoly") -> "TriPoly":
        return self + (-other)

    def __mul__(self, other) -> "TriPoly":
        if not isinstance(other, TriPoly):
            return TriPoly({k: v * other for k, v in self.terms.items()})
        out: dict = {}
        for (a0, a1, a2), u in self.terms.items():
            for (b0, b1, b2), v in other.terms.items():
                k = (a0 + b0, a1 + b1, a2 + b2)
                out[k] = out.get(k, 0) + u * v
        return TriPoly(out)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "TriPoly":
        result = TriPoly({(0, 0, 0): 1})
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def shift(self, k: tuple[int, int, int]) -> "TriPoly":
        """Multiply by the monomial t^k."""
        return TriPoly({(a + k[0], b + k[1], c + k[2]): v for (a, b, c), v in self.terms.items()})

    def __eq__(self, other) -> bool:
        if isinstance(other, TriPoly):
            return self.terms == other.terms
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __repr__(self) -> str:
        return f"TriPoly({dict(sorted(self.terms.items()))})"

    def __call__(self, t0, t1, t2):
        total = 0
        for (a, b, c), v in self.terms.items():
            total += v * t0 ** a * t1 ** b * t2 ** c
        return total

    def permute(self, perm: tuple[int, int, int]) -> "TriPoly":
        """Rename variables: t_i becomes t_{perm[i]}."""
        out = {}
        for k, v in self.terms.items():
            nk = [0, 0, 0]
            for i in range(3):
                nk[perm[i]] = k[i]
            out[tuple(nk)] = v
        return TriPoly(out)

    def is_polynomial(self) -> bool:
        return all(min(k) >= 0 for k in self.terms)

    def degrees(self) -> set[int]:
        return {sum(k) for k in self.terms}

    def to_count_table(self, n: int) -> "CountTable":
        return CountTable(n, dict(self.terms))


@dataclass(frozen=True)
class CountTable:
    """N(k0,k1,k2) for boards of size n."""

    n: int
    counts: Mapping[tuple[int, int, int], int]

    def __getitem__(self, k) -> int:
        return self.counts.get(tuple(k), 0)

    def total(self) -> int:
        return sum(self.counts.values())

    def support(self) -> list[tuple[int, int, int]]:
        return sorted(self.counts)

    def as_tripoly(self) -> TriPoly:
        return TriPoly(self.counts)

    def to_json_obj(self) -> list[dict]:
        return [{"k": list(k), "count": str(self.counts[k])} for k in sorted(self.counts)]

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj(), separators=(",", ":"))

    @classmethod
    def from_json(cls, n: int, text: str) -> "CountTable":
        return cls(n, {tuple(e["k"]): int(e["count"]) for e in json.loads(text)})

    def to_csv(self) -> str:
        lines = ["k0,k1,k2,count"]
        lines += [f"{a},{b},{c},{self.counts[(a, b, c)]}" for a, b, c in sorted(self.counts)]
        return "\n".join(lines) + "\n"


def expected_total(n: int) -> int:
    return asm_count(n)
