"""graph6 encoding (undirected graphs, no header).

Format: N(n) followed by the upper triangle of the adjacency matrix read
column by column ((0,1), (0,2), (1,2), (0,3), ...), packed six bits per
byte, each byte offset by 63.
"""
from __future__ import annotations

from .errors import ParseError
from .graph import MAX_VERTICES, Graph


def _encode_n(n: int) -> bytes:
    if n <= 62:
        return bytes([n + 63])
    return bytes([126, (n >> 12 & 63) + 63, (n >> 6 & 63) + 63, (n & 63) + 63])


def to_graph6(g: Graph) -> bytes:
    out = bytearray(_encode_n(g.n))
    acc = nbits = 0
    for j in range(1, g.n):
        col = g.adj[j]
        for i in range(j):
            acc = acc << 1 | (col >> i & 1)
            nbits += 1
            if nbits == 6:
                out.append(acc + 63)
                acc = nbits = 0
    if nbits:
        out.append((acc << (6 - nbits)) + 63)
    return bytes(out)


def from_graph6(data: bytes | str) -> Graph:
    if isinstance(data, str):
        data = data.encode("ascii")
    data = data.strip(b"\r\n")
    if data.startswith(b">>graph6<<"):
        raise ParseError("header lines are not accepted", 0)
    if not data:
        raise ParseError("empty input", 0)
    for pos, byte in enumerate(data):
        if not 63 <= byte <= 126:
            raise ParseError(f"byte {byte!r} outside printable graph6 range 63..126", pos)
    if data[0] != 126:
        n, pos = data[0] - 63, 1
    else:
        if len(data) < 4:
            raise ParseError("truncated vertex count", len(data))
        if data[1] == 126:
            raise ParseError("8-byte vertex counts exceed the vertex cap", 1)
        n = (data[1] - 63) << 12 | (data[2] - 63) << 6 | (data[3] - 63)
        pos = 4
    if n > MAX_VERTICES:
        raise ParseError(f"n={n} exceeds vertex cap {MAX_VERTICES}", 0)
    nbits = n * (n - 1) // 2
    nbytes = (nbits + 5) // 6
    body = data[pos:]
    if len(body) != nbytes:
        raise ParseError(f"expected {nbytes} edge bytes for n={n}, got {len(body)}", pos + min(len(body), nbytes))
    adj = [0] * n
    k = 0
    for j in range(1, n):
        for i in range(j):
            byte = body[k // 6] - 63
            if byte >> (5 - k % 6) & 1:
                adj[i] |= 1 << j
                adj[j] |= 1 << i
            k += 1
    if nbits % 6:
        pad = (body[-1] - 63) & ((1 << (6 - nbits % 6)) - 1)
        if pad:
            raise ParseError("nonzero padding bits", pos + nbytes - 1)
    return Graph(tuple(adj))
