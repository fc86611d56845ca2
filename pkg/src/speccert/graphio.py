"""graph6 parsing and emission, edge-list input, and JSON/CSV report output.

graph6 records: the order is one byte 63+n for n <= 62, or 126 followed by
three bytes holding an 18-bit big-endian value for n <= 258047; the upper
adjacency triangle follows column-major (pair (i, j), i < j, ordered by j
then i), packed 6 bits per byte MSB-first, each byte offset by 63.  Padding
bits must be zero, so every valid record has one canonical encoding.
"""

from __future__ import annotations

import csv
import io
import json

from .graphs import MAX_VERTICES, Graph, GraphError, from_edges

HEADER = b">>graph6<<"


class Graph6Error(ValueError):
    """Malformed graph6 record."""


def parse_graph6(line) -> Graph:
    """Decode one graph6 record (bytes or str)."""
    if isinstance(line, str):
        try:
            data = line.encode("ascii")
        except UnicodeEncodeError as exc:
            raise Graph6Error(f"non-ASCII character in record: {exc}") from None
    else:
        data = bytes(line)
    if data.startswith(HEADER):
        data = data[len(HEADER):]
    data = data.rstrip(b"\r\n")
    if not data:
        raise Graph6Error("empty record")
    for b in data:
        if not 63 <= b <= 126:
            raise Graph6Error(f"byte {b} outside printable graph6 range 63..126")

    if data[0] == 126:
        if len(data) >= 2 and data[1] == 126:
            raise Graph6Error("8-byte order form (n > 258047) not supported")
        if len(data) < 4:
            raise Graph6Error("truncated extended order field")
        n = ((data[1] - 63) << 12) | ((data[2] - 63) << 6) | (data[3] - 63)
        if n <= 62:
            raise Graph6Error("extended order field used for n <= 62")
        payload = data[4:]
    else:
        n = data[0] - 63
        payload = data[1:]

    if n > MAX_VERTICES:
        raise Graph6Error(f"order {n} exceeds supported maximum {MAX_VERTICES}")
    if n == 0:
        raise Graph6Error("order zero record")

    nbits = n * (n - 1) // 2
    need = (nbits + 5) // 6
    if len(payload) < need:
        raise Graph6Error(f"truncated bit stream: need {need} payload bytes, got {len(payload)}")
    if len(payload) > need:
        raise Graph6Error(f"trailing bytes after {need}-byte payload")

    rows = [0] * n
    bit = 0
    for b in payload:
        v = b - 63
        for k in range(5, -1, -1):
            if bit >= nbits:
                if v >> k & 1:
                    raise Graph6Error("nonzero padding bits")
                continue
            if v >> k & 1:
                i, j = _pair_at(bit)
                rows[i] |= 1 << j
                rows[j] |= 1 << i
            bit += 1
    return Graph(n, tuple(rows))


def _pair_at(bit: int) -> tuple[int, int]:
    # column-major upper triangle: bits for column j are the j entries
    # (0,j)..(j-1,j), laid out for j = 1, 2, ...
    j = 1
    base = 0
    while base + j <= bit:
        base += j
        j += 1
    return bit - base, j


def write_graph6(G: Graph) -> bytes:
    """Canonical graph6 encoding."""
    n = G.n
    if n > 258047:
        raise Graph6Error(f"order {n} exceeds the 3-byte size form")
    if n <= 62:
        head = bytes([63 + n])
    else:
        head = bytes([126, 63 + (n >> 12 & 63), 63 + (n >> 6 & 63), 63 + (n & 63)])
    bits = []
    for j in range(1, n):
        for i in range(j):
            bits.append(G.rows[i] >> j & 1)
    payload = bytearray()
    for k in range(0, len(bits), 6):
        chunk = bits[k:k + 6]
        chunk += [0] * (6 - len(chunk))
        v = 0
        for b in chunk:
            v = v << 1 | b
        payload.append(63 + v)
    return head + bytes(payload)


def parse_edge_list(text: str, n: int | None = None, label: str = "") -> Graph:
    """Parse "i j" lines into a graph; order defaults to 1 + max index."""
    edges = []
    top = -1
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.replace(",", " ").split()
        if len(parts) != 2:
            raise GraphError(f"line {lineno}: expected two vertex indices, got {raw!r}")
        try:
            i, j = int(parts[0]), int(parts[1])
        except ValueError:
            raise GraphError(f"line {lineno}: non-integer vertex in {raw!r}") from None
        if i < 0 or j < 0:
            raise GraphError(f"line {lineno}: negative vertex index")
        edges.append((i, j))
        top = max(top, i, j)
    if n is None:
        n = top + 1
    if n < 1:
        raise GraphError("edge list is empty and no order was given")
    if top >= n:
        raise GraphError(f"vertex {top} out of range for order {n}")
    return from_edges(n, edges, label)


CSV_COLUMNS = ["n", "m", "regular", "connected", "spectrum", "pattern", "in_G",
               "in_H", "srg_params", "nikiforov_equal", "km_equal", "label"]


def write_report(reports, format: str = "json", timestamp: str | None = None) -> bytes:
    """Serialize ClassReports: versioned JSON or fixed-column CSV."""
    rows = [r.to_dict() for r in reports]
    if format == "json":
        doc = {"schema": 1}
        if timestamp is not None:
            doc["timestamp"] = timestamp
        doc["reports"] = rows
        return (json.dumps(doc, indent=2, sort_keys=False) + "\n").encode("utf-8")
    if format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(CSV_COLUMNS)
        for row in rows:
            w.writerow([_csv_cell(row.get(c)) for c in CSV_COLUMNS])
        return buf.getvalue().encode("utf-8")
    raise ValueError(f"unknown report format {format!r}")


def _csv_cell(v):
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, (list, tuple)):
        return " ".join(map(str, v))
    return v
