"""Arithmetic of the semidirect product Z_2^n x| Z_r.

Bit vectors are stored as Python ints: coordinate ``i`` (1-indexed, the
convention used on every interface) lives in bit ``i - 1``.  The textual
form writes coordinates 1..n left to right, so ``e_1`` with n=3 is "100".
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterator

from .errors import ParamsError

MAX_N = 64


def rotate(a: int, j: int, n: int) -> int:
    """Send coordinate i of ``a`` to coordinate i + j (mod n)."""
    j %= n
    if j == 0:
        return a
    mask = (1 << n) - 1
    return ((a << j) | (a >> (n - j))) & mask


def coord(i: int, n: int) -> int:
    """Representative of ``i`` modulo n in 1..n."""
    return (i - 1) % n + 1


def popcount(a: int) -> int:
    return bin(a).count("1")


def support(a: int) -> list[int]:
    """Ascending 1-indexed coordinates equal to 1."""
    out = []
    i = 1
    while a:
        if a & 1:
            out.append(i)
        a >>= 1
        i += 1
    return out


def reverse_bits(a: int, n: int) -> int:
    """Coordinate i goes to n + 1 - i."""
    out = 0
    for i in support(a):
        out |= 1 << (n - i)
    return out


@dataclass(frozen=True)
class GeneralParams:
    """(n, d, r) without the divisibility requirement.

    This is enough to describe the general family Q_n^-(d, r).
    """

    n: int
    d: int
    r: int

    def __post_init__(self) -> None:
        n, d, r = self.n, self.d, self.r
        if not all(isinstance(v, int) for v in (n, d, r)):
            raise ParamsError("n, d and r must be integers")
        if n < 2:
            raise ParamsError(f"n must be at least 2 (got {n})")
        if n > MAX_N:
            raise ParamsError(f"n must be at most {MAX_N} (got {n})")
        if not 1 <= d <= n:
            raise ParamsError(f"need 1 <= d <= n (got d={d}, n={n})")
        if r < 3:
            raise ParamsError(f"ring length r must be at least 3 (got {r})")

    @property
    def order(self) -> int:
        return (1 << self.n) * self.r

    @property
    def divisible(self) -> bool:
        return (self.d * self.r) % self.n == 0

    @property
    def connected(self) -> bool:
        return self.d * self.r >= self.n

    def index(self, v: "Vertex") -> int:
        return v.a.value * self.r + v.x % self.r

    def vertex_at(self, idx: int) -> "Vertex":
        a, x = divmod(idx, self.r)
        return Vertex(BitVec(a, self.n), x)

    def vertex(self, a: "BitVec | str | int", x: int) -> "Vertex":
        if isinstance(a, str):
            a = BitVec.parse(a)
        elif isinstance(a, int):
            a = BitVec(a, self.n)
        if a.n != self.n:
            raise ParamsError(f"bit vector has length {a.n}, expected {self.n}")
        return Vertex(a, x % self.r)

    def parse_vertex(self, text: str) -> "Vertex":
        v = Vertex.parse(text)
        return self.vertex(v.a, v.x)

    def vertices(self) -> Iterator["Vertex"]:
        for idx in range(self.order):
            yield self.vertex_at(idx)

    def __str__(self) -> str:
        return f"n={self.n} d={self.d} r={self.r}"


@dataclass(frozen=True)
class Params(GeneralParams):
    """A valid parameter triple for the Cayley graph Q_n(d, r)."""

    def __post_init__(self) -> None:
        super().__post_init__()
        if (self.d * self.r) % self.n:
            raise ParamsError(
                f"d*r = {self.d * self.r} is not a multiple of n = {self.n}; "
                "Q_n(d,r) needs d*r = 0 (mod n)"
            )

    @cached_property
    def qbar(self) -> int:
        """ceil(n / d)."""
        return -(-self.n // self.d)

    @cached_property
    def k(self) -> int:
        return self.qbar * self.d - self.n

    @property
    def multiplicity(self) -> int:
        """Number of ring positions at which a given direction is flippable."""
        return self.d * self.r // self.n

    @property
    def regime(self) -> str:
        return "dr=n" if self.d * self.r == self.n else "dr>=2n"

    @property
    def n_divisible_by_d(self) -> bool:
        return self.n % self.d == 0


@dataclass(frozen=True, order=True)
class BitVec:
    value: int
    n: int

    def __post_init__(self) -> None:
        if not 1 <= self.n <= MAX_N:
            raise ParamsError(f"bit vector length must be in 1..{MAX_N}")
        if not 0 <= self.value < (1 << self.n):
            raise ParamsError(f"value {self.value} does not fit in {self.n} bits")

    @classmethod
    def zeros(cls, n: int) -> "BitVec":
        return cls(0, n)

    @classmethod
    def ones(cls, n: int) -> "BitVec":
        return cls((1 << n) - 1, n)

    @classmethod
    def unit(cls, i: int, n: int) -> "BitVec":
        """e_i, subscript taken modulo n."""
        return cls(1 << (coord(i, n) - 1), n)

    @classmethod
    def parse(cls, text: str) -> "BitVec":
        text = text.strip()
        if not text or set(text) - {"0", "1"}:
            raise ParamsError(f"not a bit string: {text!r}")
        value = 0
        for i, ch in enumerate(text):
            if ch == "1":
                value |= 1 << i
        return cls(value, len(text))

    def __getitem__(self, i: int) -> int:
        return (self.value >> (coord(i, self.n) - 1)) & 1

    def __xor__(self, other: "BitVec") -> "BitVec":
        if other.n != self.n:
            raise ParamsError("bit vectors of different length")
        return BitVec(self.value ^ other.value, self.n)

    __add__ = __xor__

    def hamming(self) -> int:
        return popcount(self.value)

    def support(self) -> list[int]:
        return support(self.value)

    def reversed(self) -> "BitVec":
        return BitVec(reverse_bits(self.value, self.n), self.n)

    def __str__(self) -> str:
        return "".join("1" if (self.value >> i) & 1 else "0" for i in range(self.n))


@dataclass(frozen=True, order=True)
class Vertex:
    """Group element (a, x).  Construct through ``Params.vertex`` to reduce x."""

    a: BitVec
    x: int

    @classmethod
    def parse(cls, text: str) -> "Vertex":
        try:
            bits, pos = text.strip().split("@")
            x = int(pos)
        except ValueError:
            raise ParamsError(f"vertex must look like '0101@2', got {text!r}") from None
        if x < 0:
            raise ParamsError(f"ring position must be non-negative, got {x}")
        return cls(BitVec.parse(bits), x)

    def __str__(self) -> str:
        return f"{self.a}@{self.x}"


def identity(p: GeneralParams) -> Vertex:
    return Vertex(BitVec.zeros(p.n), 0)


def shift(a: BitVec, j: int) -> BitVec:
    """a M^j: coordinate i moves to coordinate i + j."""
    return BitVec(rotate(a.value, j, a.n), a.n)


def _check(u: Vertex, p: GeneralParams) -> None:
    if u.a.n != p.n:
        raise ParamsError(f"vertex {u} has length {u.a.n}, expected n={p.n}")


def multiply(u: Vertex, v: Vertex, p: Params) -> Vertex:
    """(a, x)(b, y) = (a + b M^{dx}, x + y)."""
    _check(u, p)
    _check(v, p)
    a = u.a.value ^ rotate(v.a.value, p.d * u.x, p.n)
    return Vertex(BitVec(a, p.n), (u.x + v.x) % p.r)


def inverse(u: Vertex, p: Params) -> Vertex:
    """(a, x)^-1 = (a M^{-dx}, -x); minus signs vanish over F_2."""
    _check(u, p)
    return Vertex(BitVec(rotate(u.a.value, -p.d * u.x, p.n), p.n), (-u.x) % p.r)


def mul_idx(u: int, v: int, p: Params) -> int:
    """``multiply`` on packed indices a*r + x."""
    a, x = divmod(u, p.r)
    b, y = divmod(v, p.r)
    return (a ^ rotate(b, p.d * x, p.n)) * p.r + (x + y) % p.r


def inv_idx(u: int, p: Params) -> int:
    a, x = divmod(u, p.r)
    return rotate(a, -p.d * x, p.n) * p.r + (-x) % p.r


def direction_set(x: int, p: GeneralParams) -> list[int]:
    """D(x) = {i + dx mod n : 1 <= i <= d}, in the order of i."""
    return [coord(i + p.d * x, p.n) for i in range(1, p.d + 1)]


def direction_set_minus(x: int, p: GeneralParams) -> list[int]:
    """D^-_x = D(-x), the direction set of the general family."""
    return [coord(i - p.d * x, p.n) for i in range(1, p.d + 1)]


def direction_mask(x: int, p: GeneralParams, minus: bool = False) -> int:
    dirs = direction_set_minus(x, p) if minus else direction_set(x, p)
    m = 0
    for j in dirs:
        m |= 1 << (j - 1)
    return m


def connection_set(p: Params) -> list[Vertex]:
    zero = BitVec.zeros(p.n)
    out = [Vertex(zero, 1), Vertex(zero, p.r - 1)]
    out.extend(Vertex(BitVec.unit(i, p.n), 0) for i in range(1, p.d + 1))
    return out


def flippable_positions(j: int, p: Params) -> list[int]:
    """Ring positions x with j in D(x), ascending."""
    return [x for x in range(p.r) if (j - 1 - p.d * x) % p.n < p.d]
