"""graph6 reading and writing, restricted to the single-byte size header (n <= 62).

The upper triangle of the adjacency matrix is read column by column
(``(0,1), (0,2), (1,2), (0,3), ...``), packed big-endian into 6-bit groups,
each group stored as ``63 + value``. Padding bits must be zero so that every
graph has exactly one encoding.
"""

from __future__ import annotations

from typing import IO, Iterable, Iterator

from .graph import Graph

MAX_VERTICES = 62
_HEADER = b">>graph6<<"


class Graph6Error(ValueError):
    """Malformed graph6 input; ``offset`` is the offending byte position."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (byte {offset})")
        self.offset = offset


def parse_graph6(text: bytes | str) -> Graph:
    data = text.encode("ascii", errors="replace") if isinstance(text, str) else bytes(text)
    data = data.rstrip(b"\r\n")
    base = 0
    if data.startswith(_HEADER):
        base = len(_HEADER)
        data = data[base:]
    if not data:
        raise Graph6Error("missing size byte", base)
    first = data[0]
    if first == 126:
        raise Graph6Error(f"multi-byte size header unsupported (n > {MAX_VERTICES})", base)
    if not 63 <= first <= 125:
        raise Graph6Error(f"size byte {first} out of range", base)
    n = first - 63
    nbits = n * (n - 1) // 2
    nbytes = (nbits + 5) // 6
    body = data[1:]
    if len(body) < nbytes:
        raise Graph6Error(f"truncated bit-vector: need {nbytes} bytes, got {len(body)}", base + 1 + len(body))
    if len(body) > nbytes:
        raise Graph6Error("trailing bytes after bit-vector", base + 1 + nbytes)

    edges = []
    k = 0
    i, j = 0, 1
    for idx, b in enumerate(body):
        if not 63 <= b <= 126:
            raise Graph6Error(f"byte {b} out of range 63..126", base + 1 + idx)
        val = b - 63
        for shift in range(5, -1, -1):
            bit = (val >> shift) & 1
            if k < nbits:
                if bit:
                    edges.append((i, j))
                i += 1
                if i == j:
                    i, j = 0, j + 1
            elif bit:
                raise Graph6Error("nonzero padding bit", base + 1 + idx)
            k += 1
    return Graph(n, edges)


def write_graph6(g: Graph) -> bytes:
    n = g.n
    if n > MAX_VERTICES:
        raise ValueError(f"graph6 writer supports n <= {MAX_VERTICES}, got {n}")
    out = bytearray([63 + n])
    val = 0
    k = 0
    for j in range(1, n):
        for i in range(j):
            val = (val << 1) | (1 if g.has_edge(i, j) else 0)
            k += 1
            if k == 6:
                out.append(63 + val)
                val = k = 0
    if k:
        out.append(63 + (val << (6 - k)))
    return bytes(out)


def to_graph6_str(g: Graph) -> str:
    return write_graph6(g).decode("ascii")


def read_graph6_lines(lines: Iterable[bytes | str]) -> Iterator[tuple[int, Graph | Graph6Error]]:
    """Parse a stream of graph6 lines, yielding ``(line_number, graph_or_error)``.

    Blank lines are skipped; parse errors are yielded rather than raised so
    that corpus scans can keep going.
    """
    for lineno, line in enumerate(lines, start=1):
        raw = line.encode("ascii", errors="replace") if isinstance(line, str) else line
        raw = raw.strip()
        if not raw:
            continue
        try:
            yield lineno, parse_graph6(raw)
        except Graph6Error as exc:
            yield lineno, exc


def write_graph6_lines(graphs: Iterable[Graph], fh: IO[str]) -> int:
    count = 0
    for g in graphs:
        fh.write(to_graph6_str(g) + "\n")
        count += 1
    return count
