"""Text energy files, PGM images/labelings and run summaries.

Energy file::

    # comment
    BPBE 1
    vars <N>
    constant <real>
    unary <K>
    <p> <u_p>          (K lines)
    pairwise <L>
    <p> <q> <w_pq>     (L lines)

Reals are written with ``repr`` (shortest string that round-trips).
"""

from __future__ import annotations

import os

import numpy as np

from .builders import GrayImage
from .energy import BinaryEnergy, as_labeling

MAGIC = "BPBE"
VERSION = 1


class FormatError(ValueError):
    pass


def dumps_energy(e: BinaryEnergy) -> str:
    lines = [f"{MAGIC} {VERSION}", f"vars {e.num_vars}", f"constant {e.constant!r}",
             f"unary {e.num_vars}"]
    lines += [f"{p} {u!r}" for p, u in enumerate(e.unary.tolist())]
    lines.append(f"pairwise {e.num_pairs}")
    lines += [f"{p} {q} {w!r}" for p, q, w in e.pairs]
    return "\n".join(lines) + "\n"


def _tokens(text: str):
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].split()
        if line:
            yield lineno, line


def loads_energy(text: str) -> BinaryEnergy:
    """Parse an energy file.

    Repeated unary indices and repeated pairs are summed; ``p > q`` is
    swapped and ``p == q`` is folded into the unary.
    """
    it = _tokens(text)

    def expect(keyword, nfields):
        try:
            lineno, tok = next(it)
        except StopIteration:
            raise FormatError(f"unexpected end of file, expected {keyword!r}") from None
        if tok[0] != keyword or len(tok) != nfields:
            raise FormatError(f"line {lineno}: expected {keyword!r}, got {' '.join(tok)!r}")
        return lineno, tok

    def rows(count, width, what):
        out = []
        for _ in range(count):
            try:
                lineno, tok = next(it)
            except StopIteration:
                raise FormatError(f"file ends inside the {what} block") from None
            if len(tok) != width:
                raise FormatError(f"line {lineno}: expected {width} fields in {what} row")
            out.append((lineno, tok))
        return out

    try:
        _, tok = expect(MAGIC, 2)
        if int(tok[1]) != VERSION:
            raise FormatError(f"unsupported version {tok[1]}")
        n = int(expect("vars", 2)[1][1])
        constant = float(expect("constant", 2)[1][1])
        unary = np.zeros(n)
        for lineno, (p, u) in rows(int(expect("unary", 2)[1][1]), 2, "unary"):
            if not 0 <= int(p) < n:
                raise FormatError(f"line {lineno}: variable {p} out of range")
            unary[int(p)] += float(u)
        pairs = [(int(p), int(q), float(w))
                 for _, (p, q, w) in rows(int(expect("pairwise", 2)[1][1]), 3, "pairwise")]
    except ValueError as exc:
        if isinstance(exc, FormatError):
            raise
        raise FormatError(str(exc)) from exc
    extra = next(it, None)
    if extra is not None:
        raise FormatError(f"line {extra[0]}: trailing content")
    try:
        return BinaryEnergy.from_terms(n, unary, pairs, constant)
    except ValueError as exc:
        raise FormatError(str(exc)) from exc


def write_energy(path, e: BinaryEnergy) -> None:
    with open(path, "w") as f:
        f.write(dumps_energy(e))


def read_energy(path) -> BinaryEnergy:
    with open(path) as f:
        return loads_energy(f.read())


def read_pgm(path) -> GrayImage:
    """Read P2 or P5; intensities are divided by maxval."""
    with open(path, "rb") as f:
        data = f.read()
    header, pos = [], 0
    while len(header) < 4:
        while pos < len(data) and data[pos:pos + 1].isspace():
            pos += 1
        if data[pos:pos + 1] == b"#":
            pos = data.index(b"\n", pos) + 1
            continue
        end = pos
        while end < len(data) and not data[end:end + 1].isspace():
            end += 1
        if end == pos:
            raise FormatError("truncated PGM header")
        header.append(data[pos:end].decode("ascii"))
        pos = end
    magic, w, h, maxval = header[0], int(header[1]), int(header[2]), int(header[3])
    if magic == "P2":
        vals = np.array(data[pos:].split(), dtype=np.float64)
    elif magic == "P5":
        dtype = ">u2" if maxval > 255 else "u1"
        vals = np.frombuffer(data[pos + 1:], dtype=dtype).astype(np.float64)
    else:
        raise FormatError(f"not a PGM file (magic {magic!r})")
    if vals.size < w * h:
        raise FormatError("PGM pixel data truncated")
    return GrayImage(w, h, vals[: w * h] / maxval)


def write_pgm(path, img: GrayImage, maxval: int = 255) -> None:
    """Write P2; intensities are clipped to [0, 1] and quantized to ``maxval``."""
    q = np.rint(np.clip(img.pixels, 0.0, 1.0) * maxval).astype(np.int64)
    _write_p2(path, img.width, img.height, maxval, q)


def _write_p2(path, w, h, maxval, values):
    rows = np.asarray(values).reshape(h, w)
    with open(path, "w") as f:
        f.write(f"P2\n{w} {h}\n{maxval}\n")
        for r in rows:
            f.write(" ".join(map(str, r.tolist())) + "\n")


def write_labeling(path, s, shape: tuple[int, int] | None = None) -> None:
    """Labeling as P2 with maxval 1; ``shape`` is (width, height), default (n, 1)."""
    s = as_labeling(s)
    w, h = shape if shape is not None else (s.size, 1)
    if w * h != s.size:
        raise ValueError(f"shape {w}x{h} does not match {s.size} labels")
    _write_p2(path, w, h, 1, s)


def read_labeling(path) -> np.ndarray:
    img = read_pgm(path)
    return as_labeling(np.rint(img.pixels).astype(np.uint8))


def format_summary(fields: dict) -> str:
    out = []
    for k, v in fields.items():
        out.append(f"{k}={v!r}" if isinstance(v, float) else f"{k}={v}")
    return "\n".join(out) + "\n"


def parse_summary(text: str) -> dict[str, str]:
    out = {}
    for line in text.splitlines():
        if "=" in line:
            k, v = line.split("=", 1)
            out[k.strip()] = v.strip()
    return out


def ensure_parent(path) -> None:
    d = os.path.dirname(os.fspath(path))
    if d:
        os.makedirs(d, exist_ok=True)
