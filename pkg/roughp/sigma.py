"""
Alphabet-generic string primitives
Description: weight, symmetry, sphere enumeration and the self-delimiting
block codec used by the padding wrapper.

Symbols of a k-letter alphabet are the integers 0..k-1. Text form is one
digit per symbol for k <= 10 and comma-separated integers otherwise; the
empty string prints as "" and also parses from "λ".
"""

from dataclasses import dataclass
import logging

from .config import DEFAULT_ENUM_BUDGET
from .errors import BudgetError, SymbolError

logger = logging.getLogger(__name__)

EMPTY_MARK = "λ"

# Block terminator pair; valid for every k >= 2
TERMINATOR = (0, 1)


@dataclass(frozen=True)
class Alphabet:
    k: int

    def __post_init__(self):
        if not isinstance(self.k, int) or self.k < 2:
            raise SymbolError(f"alphabet size must be an integer >= 2, got {self.k!r}")

    def empty(self):
        return SymString.raw((), self.k)

    def string(self, symbols):
        return SymString(tuple(symbols), self.k)

    def parse(self, text):
        return SymString.parse(text, self.k)


@dataclass(frozen=True)
class SymString:
    """Immutable finite string over {0, ..., k-1}"""

    symbols: tuple
    k: int = 2

    def __post_init__(self):
        symbols = tuple(self.symbols)
        object.__setattr__(self, "symbols", symbols)
        if not isinstance(self.k, int) or self.k < 2:
            raise SymbolError(f"alphabet size must be an integer >= 2, got {self.k!r}")
        for s in symbols:
            if not isinstance(s, int) or not 0 <= s < self.k:
                raise SymbolError(f"symbol {s!r} outside alphabet of size {self.k}")

    @classmethod
    def raw(cls, symbols, k):
        """Build without validation; symbols must already be a valid tuple"""
        obj = object.__new__(cls)
        object.__setattr__(obj, "symbols", symbols)
        object.__setattr__(obj, "k", k)
        return obj

    @classmethod
    def parse(cls, text, k):
        text = text.strip()
        if text in ("", EMPTY_MARK):
            return cls.raw((), k)
        try:
            if k <= 10:
                symbols = tuple(int(ch) for ch in text)
            else:
                symbols = tuple(int(part) for part in text.split(","))
        except ValueError:
            raise SymbolError(f"malformed string {text!r} for alphabet size {k}")
        return cls(symbols, k)

    def to_text(self):
        if self.k <= 10:
            return "".join(str(s) for s in self.symbols)
        return ",".join(str(s) for s in self.symbols)

    def display(self):
        return self.to_text() or EMPTY_MARK

    def __str__(self):
        return self.to_text()

    def __repr__(self):
        return f"SymString({self.display()!r}, k={self.k})"

    def __len__(self):
        return len(self.symbols)

    def __iter__(self):
        return iter(self.symbols)

    def __getitem__(self, index):
        if isinstance(index, slice):
            return SymString.raw(self.symbols[index], self.k)
        return self.symbols[index]

    def __add__(self, other):
        if not isinstance(other, SymString):
            return NotImplemented
        if other.k != self.k:
            raise SymbolError(f"cannot concatenate strings over k={self.k} and k={other.k}")
        return SymString.raw(self.symbols + other.symbols, self.k)


def weight(x):
    """Sum of the symbols"""
    return sum(x.symbols)


def is_symmetric(x):
    """True iff x = uu for some u; the empty string counts (λ = λλ)"""
    n = len(x.symbols)
    if n % 2:
        return False
    half = n // 2
    return x.symbols[:half] == x.symbols[half:]


def sphere_size(k, n):
    return k**n


def ball_size(k, max_len):
    return sum(k**i for i in range(max_len + 1))


def _check_budget(count, budget, what):
    if budget is not None and count > budget:
        raise BudgetError(
            f"{what} needs {count} strings, over the enumeration budget {budget}",
            requested=count,
            budget=budget,
        )


def enumerate_sphere(k, n, budget=DEFAULT_ENUM_BUDGET, chunk=0, chunks=1):
    """Yield every length-n string in lexicographic order.

    With ``chunks`` > 1 only the ``chunk``-th of that many disjoint
    contiguous slices is produced; the slices cover the sphere exactly.
    """
    if n < 0:
        raise ValueError(f"radius must be >= 0, got {n}")
    if not 0 <= chunk < chunks:
        raise ValueError(f"chunk {chunk} outside 0..{chunks - 1}")
    total = sphere_size(k, n)
    _check_budget(total, budget, f"sphere k={k} n={n}")
    return _odometer(k, n, chunk * total // chunks, (chunk + 1) * total // chunks)


def _odometer(k, n, start, stop):
    digits = [0] * n
    rest = start
    for i in range(n - 1, -1, -1):
        rest, digits[i] = divmod(rest, k)
    for _ in range(stop - start):
        yield SymString.raw(tuple(digits), k)
        i = n - 1
        while i >= 0:
            digits[i] += 1
            if digits[i] < k:
                break
            digits[i] = 0
            i -= 1


def enumerate_ball(k, max_len, budget=DEFAULT_ENUM_BUDGET):
    """All strings of length <= max_len, shortest first"""
    _check_budget(ball_size(k, max_len), budget, f"ball k={k} radius={max_len}")
    for n in range(max_len + 1):
        yield from enumerate_sphere(k, n, budget=None)


def random_string(rng, k, n):
    """Uniform length-n string drawn from a numpy Generator"""
    return SymString.raw(tuple(int(s) for s in rng.integers(0, k, size=n)), k)


def encode_block(y):
    """d(y)·(0,1): every symbol doubled, then the terminator pair"""
    doubled = []
    for s in y.symbols:
        doubled.append(s)
        doubled.append(s)
    return SymString.raw(tuple(doubled) + TERMINATOR, y.k)


def decode_block(z):
    """Read one leading block of z; returns (y, rest) or None"""
    symbols = z.symbols
    out = []
    for i in range(0, len(symbols) - 1, 2):
        a, b = symbols[i], symbols[i + 1]
        if a == b:
            out.append(a)
        elif (a, b) == TERMINATOR:
            return SymString.raw(tuple(out), z.k), SymString.raw(symbols[i + 2 :], z.k)
        else:
            return None
    return None


def encode_blocks(blocks, k):
    out = SymString.raw((), k)
    for block in blocks:
        out = out + encode_block(block)
    return out


def decode_blocks(z):
    """Split z entirely into blocks; None unless z is a whole block list"""
    blocks = []
    while len(z):
        decoded = decode_block(z)
        if decoded is None:
            return None
        block, z = decoded
        blocks.append(block)
    return blocks


def to_digits(value, k):
    """Base-k digits of a non-negative integer, most significant first; 0 -> ()"""
    digits = []
    while value:
        value, d = divmod(value, k)
        digits.append(d)
    return tuple(reversed(digits))


def from_digits(symbols, k):
    value = 0
    for s in symbols:
        value = value * k + s
    return value
