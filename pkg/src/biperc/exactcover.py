"""Exact set cover: a small Algorithm X solver and the instance text format.

The solver is used as an independent yardstick for the reduction-generated
subnetwork instances; it shares no code with the subnetwork search.

Instance format: line 1 is ``universe_size k``; each following line is one
set as whitespace-separated element indices.  ``#`` starts a comment.
"""

from __future__ import annotations

from typing import Sequence


def solve_exact_cover(n_elements: int, sets: Sequence[Sequence[int]]) -> list[int] | None:
    """Indices of a subfamily covering every element exactly once, or None.

    Dictionary-based Algorithm X with min-branching column choice.
    """
    columns: dict[int, set[int]] = {e: set() for e in range(n_elements)}
    rows = {}
    for i, s in enumerate(sets):
        members = tuple(sorted(set(s)))
        for e in members:
            if e not in columns:
                raise ValueError(f"set {i} mentions unknown element {e}")
            columns[e].add(i)
        rows[i] = members

    solution: list[int] = []

    def select(i: int) -> list[set[int]]:
        removed = []
        for e in rows[i]:
            for j in columns[e]:
                for e2 in rows[j]:
                    if e2 != e:
                        columns[e2].discard(j)
            removed.append(columns.pop(e))
        return removed

    def deselect(i: int, removed: list[set[int]]) -> None:
        for e in reversed(rows[i]):
            columns[e] = removed.pop()
            for j in columns[e]:
                for e2 in rows[j]:
                    if e2 != e:
                        columns[e2].add(j)

    def search() -> bool:
        if not columns:
            return True
        col = min(columns, key=lambda e: len(columns[e]))
        for i in sorted(columns[col]):
            solution.append(i)
            removed = select(i)
            if search():
                return True
            deselect(i, removed)
            solution.pop()
        return False

    return solution if search() else None


def parse_cover_instance(text: str) -> tuple[int, int, list[tuple[int, ...]]]:
    rows = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            rows.append(line)
    if not rows:
        raise ValueError("empty cover instance")
    head = rows[0].split()
    if len(head) != 2:
        raise ValueError(f"bad header {rows[0]!r}: expected 'universe_size k'")
    universe_size, k = int(head[0]), int(head[1])
    sets = [tuple(int(tok) for tok in line.split()) for line in rows[1:]]
    return universe_size, k, sets


def format_cover_instance(universe_size: int, k: int, sets: Sequence[Sequence[int]]) -> str:
    lines = [f"{universe_size} {k}"]
    lines.extend(" ".join(str(e) for e in s) for s in sets)
    return "\n".join(lines) + "\n"
