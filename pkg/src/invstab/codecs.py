"""graph6 and edge-list codecs.

graph6 here covers orders 0..62 (single length byte). Encoding is bit-exact:
order byte 63+n, then the upper-triangle adjacency bits in column order
(column j=1..n-1, rows i=0..j-1), packed big-endian into 6-bit groups,
zero padded, each group offset by 63. Decode errors carry the byte offset
of the offending byte. The optional ">>graph6<<" header is tolerated on
input and never emitted.
"""

from __future__ import annotations

from .graphs import Graph

HEADER = b">>graph6<<"
MAX_ORDER = 62


class Graph6Error(ValueError):
    """Malformed graph6 input; offset is the byte position in the input."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (byte offset {offset})")
        self.offset = offset


def _pair_index_iter(n: int):
    """Upper-triangle positions in graph6 bit order."""
    for j in range(1, n):
        for i in range(j):
            yield i, j


def encode_graph6(g: Graph) -> str:
    if g.order > MAX_ORDER:
        raise ValueError(f"graph6 single-byte orders stop at {MAX_ORDER}, got {g.order}")
    out = [g.order + 63]
    group = 0
    nbits = 0
    for i, j in _pair_index_iter(g.order):
        group = (group << 1) | (1 if (i, j) in g.edges else 0)
        nbits += 1
        if nbits == 6:
            out.append(group + 63)
            group = 0
            nbits = 0
    if nbits:
        out.append((group << (6 - nbits)) + 63)
    return bytes(out).decode("ascii")


def decode_graph6(data: str | bytes) -> Graph:
    raw = data.encode("ascii") if isinstance(data, str) else bytes(data)
    base = 0
    if raw.startswith(HEADER):
        base = len(HEADER)
    body = raw[base:]
    if body.endswith(b"\n"):
        body = body[:-1]
    if not body:
        raise Graph6Error("empty graph6 record", base)
    first = body[0]
    if first == 126:
        raise Graph6Error("multi-byte order prefix not supported (order > 62)", base)
    if not (63 <= first <= 125):
        raise Graph6Error(f"order byte {first} outside 63..125", base)
    n = first - 63
    nbits = n * (n - 1) // 2
    nbytes = (nbits + 5) // 6
    if len(body) - 1 < nbytes:
        raise Graph6Error(
            f"truncated record: need {nbytes} adjacency bytes, found {len(body) - 1}",
            base + len(body),
        )
    if len(body) - 1 > nbytes:
        raise Graph6Error("trailing bytes after graph6 record", base + 1 + nbytes)
    edges = []
    pairs = _pair_index_iter(n)
    k = 0
    for bi in range(nbytes):
        byte = body[1 + bi]
        if not (63 <= byte <= 126):
            raise Graph6Error(f"adjacency byte {byte} outside 63..126", base + 1 + bi)
        group = byte - 63
        for shift in range(5, -1, -1):
            bit = (group >> shift) & 1
            if k < nbits:
                if bit:
                    edges.append(next(pairs))
                else:
                    next(pairs)
                k += 1
            elif bit:
                raise Graph6Error("nonzero padding bits", base + 1 + bi)
    return Graph(n, frozenset(edges))


def encode_edge_list(g: Graph) -> str:
    """Header line "n m", then one "u v" line per edge, ascending."""
    lines = [f"{g.order} {g.size}"]
    lines.extend(f"{u} {v}" for u, v in g.edge_list)
    return "\n".join(lines) + "\n"


def parse_edge_list(text: str) -> Graph:
    lines = text.splitlines()
    idx = 0
    while idx < len(lines) and not lines[idx].strip():
        idx += 1
    if idx == len(lines):
        raise ValueError("edge list: missing header line")
    head = lines[idx].split()
    if len(head) != 2:
        raise ValueError(f"edge list line {idx + 1}: header must be 'n m'")
    try:
        n, m = int(head[0]), int(head[1])
    except ValueError:
        raise ValueError(f"edge list line {idx + 1}: header must be two integers") from None
    if n < 0 or m < 0:
        raise ValueError(f"edge list line {idx + 1}: negative counts")
    edges = []
    taken = 0
    for off, line in enumerate(lines[idx + 1 :], start=idx + 2):
        if not line.strip():
            continue
        if taken == m:
            raise ValueError(f"edge list line {off}: more than {m} edges")
        pair = line.split()
        if len(pair) != 2:
            raise ValueError(f"edge list line {off}: expected 'u v'")
        try:
            u, v = int(pair[0]), int(pair[1])
        except ValueError:
            raise ValueError(f"edge list line {off}: endpoints must be integers") from None
        if not (0 <= u < n and 0 <= v < n):
            raise ValueError(f"edge list line {off}: endpoint outside 0..{n - 1}")
        if u == v:
            raise ValueError(f"edge list line {off}: loop {u}-{v}")
        edges.append((u, v))
        taken += 1
    if taken != m:
        raise ValueError(f"edge list: header promised {m} edges, found {taken}")
    g = Graph.build(n, edges)
    if len(g.edges) != m:
        raise ValueError("edge list: duplicate edge")
    return g
