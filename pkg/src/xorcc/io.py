"""Text file formats for functions, codes and protocols.

Masks over the 2^n points are written as hex of ceil(2^n / 8) bytes, lowest
byte first; bit i of the mask is bit (i mod 8) of byte i // 8. Binary strings
put coordinate x_1 first.
"""

from typing import List, Tuple

from ._errors import UsageError
from .boolfn import MessageMap, PartialFn
from .codes import CoveringCode
from .gf2 import Gf2Matrix, from_bitstring, to_bitstring
from .nadt import NadtProtocol
from .owcc import OneWayProtocol

__all__ = [
    "ParseError",
    "mask_to_hex",
    "hex_to_mask",
    "dump_function",
    "load_function",
    "dump_code",
    "load_code",
    "dump_nadt_protocol",
    "load_nadt_protocol",
    "dump_oneway_protocol",
    "load_oneway_protocol",
    "parse_table",
    "read_text",
    "write_text",
]

FN_HEADER = "xorcc-fn v1"
CODE_HEADER = "xorcc-code v1"
NADT_HEADER = "xorcc-nadt v1"
ONEWAY_HEADER = "xorcc-oneway v1"


class ParseError(UsageError):
    """Malformed input file, with a 1-based line and column."""

    def __init__(self, message: str, line: int, column: int = 1, source: str = "<input>"):
        super().__init__(f"{source}:{line}:{column}: {message}")
        self.line = line
        self.column = column


def mask_to_hex(mask: int, n: int) -> str:
    size = max(1, ((1 << n) + 7) // 8)
    return mask.to_bytes(size, "little").hex()


def hex_to_mask(text: str, n: int) -> int:
    size = max(1, ((1 << n) + 7) // 8)
    raw = bytes.fromhex(text)
    if len(raw) != size:
        raise ValueError(f"expected {size} bytes, got {len(raw)}")
    mask = int.from_bytes(raw, "little")
    if mask >> (1 << n):
        raise ValueError("bits set beyond the last point")
    return mask


class _Lines:
    """Cursor over non-empty lines with position-aware errors."""

    def __init__(self, text: str, source: str):
        self.source = source
        self.items = [(i + 1, line.rstrip("\r")) for i, line in enumerate(text.split("\n"))]
        while self.items and not self.items[-1][1].strip():
            self.items.pop()
        self.pos = 0

    def error(self, message: str, line: int = None, column: int = 1) -> ParseError:
        if line is None:
            line = self.items[self.pos - 1][0] if self.pos else 1
        return ParseError(message, line, column, self.source)

    def next(self, what: str) -> Tuple[int, str]:
        if self.pos >= len(self.items):
            last = self.items[-1][0] + 1 if self.items else 1
            raise ParseError(f"unexpected end of file, expected {what}", last, 1, self.source)
        item = self.items[self.pos]
        self.pos += 1
        return item

    def expect_header(self, header: str) -> None:
        lineno, text = self.next("header")
        if text.strip() != header:
            raise self.error(f"expected header {header!r}", lineno)

    def keyed_ints(self, *keys: str) -> List[int]:
        """Parse a line such as ``n 7 K 16 R 1``."""
        lineno, text = self.next(" ".join(keys))
        parts = text.split()
        if len(parts) != 2 * len(keys):
            raise self.error(f"expected '{' '.join(k + ' <int>' for k in keys)}'", lineno)
        out = []
        col = 1
        for j, key in enumerate(keys):
            word, value = parts[2 * j], parts[2 * j + 1]
            col = text.find(word, col - 1) + 1
            if word != key:
                raise self.error(f"expected key {key!r}, found {word!r}", lineno, col)
            vcol = text.find(value, col + len(word) - 1) + 1
            try:
                number = int(value)
            except ValueError:
                raise self.error(f"not an integer: {value!r}", lineno, vcol) from None
            if number < 0:
                raise self.error(f"negative value for {key}", lineno, vcol)
            out.append(number)
            col = vcol + len(value)
        return out

    def keyed_hex(self, key: str, n: int) -> int:
        lineno, text = self.next(key)
        parts = text.split()
        if len(parts) != 2 or parts[0] != key:
            raise self.error(f"expected '{key} <hex>'", lineno)
        return self.hex_at(parts[1], n, lineno, text.find(parts[1]) + 1)

    def hex_at(self, word: str, n: int, lineno: int, column: int) -> int:
        try:
            return hex_to_mask(word, n)
        except ValueError as exc:
            raise self.error(f"bad mask: {exc}", lineno, column) from None

    def finish(self) -> None:
        if self.pos < len(self.items):
            lineno, _ = self.items[self.pos]
            raise self.error("trailing content", lineno)


def _check_n(lines: _Lines, n: int, limit: int = 24) -> None:
    if n > limit:
        raise lines.error(f"n={n} exceeds {limit}")


def dump_function(f: PartialFn) -> str:
    return f"{FN_HEADER}\nn {f.n}\ndefined {mask_to_hex(f.defined, f.n)}\nvalue {mask_to_hex(f.value, f.n)}\n"


def load_function(text: str, source: str = "<input>") -> PartialFn:
    lines = _Lines(text, source)
    lines.expect_header(FN_HEADER)
    (n,) = lines.keyed_ints("n")
    _check_n(lines, n)
    defined = lines.keyed_hex("defined", n)
    value = lines.keyed_hex("value", n)
    if value & ~defined:
        raise lines.error("value has bits where the function is undefined")
    lines.finish()
    return PartialFn(n, defined, value)


def parse_table(text: str) -> PartialFn:
    """A function from a string of '0', '1' and '*' (undefined), one per point."""
    chars = [c for c in text if not c.isspace()]
    n = len(chars).bit_length() - 1
    if len(chars) != 1 << n:
        raise UsageError(f"table length {len(chars)} is not a power of two")
    table = []
    for i, c in enumerate(chars):
        if c not in "01*":
            raise ParseError(f"unexpected character {c!r}", 1, i + 1, "<table>")
        table.append(None if c == "*" else int(c))
    return PartialFn.from_table(n, table)


def dump_code(code: CoveringCode) -> str:
    lines = [CODE_HEADER, f"n {code.n} K {code.size} R {code.radius}"]
    lines.extend(code.strings())
    return "\n".join(lines) + "\n"


def load_code(text: str, source: str = "<input>") -> CoveringCode:
    lines = _Lines(text, source)
    lines.expect_header(CODE_HEADER)
    n, size, radius = lines.keyed_ints("n", "K", "R")
    if n > 64:
        raise lines.error(f"code length {n} exceeds 64")
    words = []
    for _ in range(size):
        lineno, word = lines.next("codeword")
        word = word.strip()
        if len(word) != n:
            raise lines.error(f"codeword has length {len(word)}, expected {n}", lineno)
        bad = next((j for j, c in enumerate(word) if c not in "01"), None)
        if bad is not None:
            raise lines.error(f"unexpected character {word[bad]!r}", lineno, bad + 1)
        words.append(from_bitstring(word) if n else 0)
    lines.finish()
    if not words:
        raise lines.error("a code needs at least one codeword")
    return CoveringCode(n, words, radius)


def dump_nadt_protocol(p: NadtProtocol) -> str:
    lines = [NADT_HEADER, f"n {p.n}", f"p {p.p}"]
    lines.extend(to_bitstring(r, p.n) for r in p.queries.rows)
    lines.append("".join(str(b) for b in p.table))
    return "\n".join(lines) + "\n"


def load_nadt_protocol(text: str, source: str = "<input>") -> NadtProtocol:
    lines = _Lines(text, source)
    lines.expect_header(NADT_HEADER)
    (n,) = lines.keyed_ints("n")
    _check_n(lines, n)
    (p,) = lines.keyed_ints("p")
    if p > n:
        raise lines.error(f"p={p} exceeds n={n}")
    rows = []
    for _ in range(p):
        lineno, word = lines.next("query row")
        word = word.strip()
        if len(word) != n or any(c not in "01" for c in word):
            raise lines.error(f"query row must be {n} binary digits", lineno)
        rows.append(from_bitstring(word))
    lineno, bits = lines.next("table")
    bits = bits.strip()
    if len(bits) != 1 << p:
        raise lines.error(f"table needs {1 << p} bits, got {len(bits)}", lineno)
    bad = next((j for j, c in enumerate(bits) if c not in "01"), None)
    if bad is not None:
        raise lines.error(f"unexpected character {bits[bad]!r}", lineno, bad + 1)
    lines.finish()
    return NadtProtocol(Gf2Matrix(n, rows), tuple(int(c) for c in bits))


def dump_oneway_protocol(p: OneWayProtocol) -> str:
    lines = [ONEWAY_HEADER, f"n {p.n}", f"t {p.t}", " ".join(str(v) for v in p.h.labels)]
    lines.extend(f"{mask_to_hex(v, p.n)} {mask_to_hex(c, p.n)}" for v, c in p.phi)
    return "\n".join(lines) + "\n"


def load_oneway_protocol(text: str, source: str = "<input>") -> OneWayProtocol:
    lines = _Lines(text, source)
    lines.expect_header(ONEWAY_HEADER)
    (n,) = lines.keyed_ints("n")
    _check_n(lines, n, 16)
    (t,) = lines.keyed_ints("t")
    if t > n:
        raise lines.error(f"t={t} exceeds n={n}")
    lineno, text_labels = lines.next("labels")
    words = text_labels.split()
    if len(words) != 1 << n:
        raise lines.error(f"expected {1 << n} labels, got {len(words)}", lineno)
    labels = []
    col = 0
    for w in words:
        col = text_labels.find(w, col)
        if not w.isdigit() or int(w) >> t:
            raise lines.error(f"bad label {w!r} for t={t}", lineno, col + 1)
        labels.append(int(w))
        col += len(w)
    rows = []
    for _ in range(1 << t):
        lineno, row = lines.next("phi row")
        parts = row.split()
        if len(parts) != 2:
            raise lines.error("expected '<value hex> <constrained hex>'", lineno)
        value = lines.hex_at(parts[0], n, lineno, row.find(parts[0]) + 1)
        constrained = lines.hex_at(parts[1], n, lineno, row.rfind(parts[1]) + 1)
        if value & ~constrained:
            raise lines.error("value bits outside the constrained mask", lineno)
        rows.append((value, constrained))
    lines.finish()
    return OneWayProtocol(MessageMap(n, t, labels), tuple(rows))


def read_text(path: str) -> str:
    try:
        with open(path, encoding="ascii") as fh:
            return fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    except UnicodeDecodeError:
        raise UsageError(f"{path} is not an ASCII text file") from None


def write_text(path: str, text: str) -> None:
    with open(path, "w", encoding="ascii", newline="\n") as fh:
        fh.write(text)
