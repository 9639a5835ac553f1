"""Discrete N-ary operators on the digit alphabet {0..p-1}.

An operator is a bare law of composition (a magma): a lookup table of
p**N entries, each in [0, p-1]. The whole table packs into a single
arbitrary-precision integer code, the table read off as its base-p digits,
so every conceivable digitwise operator has one integer label.
"""

from __future__ import annotations

from typing import Iterable, Sequence

__all__ = [
    "MagmaOp",
    "from_code",
    "to_code",
    "apply",
    "mod_add_code",
    "carry_code",
    "is_commutative",
    "parse_op_literal",
    "format_op_literal",
]


class MagmaOp:
    """An N-ary operator over {0..p-1}, held as a flat table of p**N entries.

    Entry index for arguments (x_0, ..., x_{N-1}) is sum(p**k * x_k); the
    code is sum(table[n] * p**n), so table and code are the same data in
    two encodings.
    """

    __slots__ = ("radix", "arity", "table", "code")

    def __init__(self, radix: int, arity: int, table: Sequence[int]):
        if radix < 2:
            raise ValueError(f"radix must be >= 2, got {radix}")
        if arity < 1:
            raise ValueError(f"arity must be >= 1, got {arity}")
        table = tuple(table)
        if len(table) != radix**arity:
            raise ValueError(
                f"table must have {radix**arity} entries for radix {radix} "
                f"arity {arity}, got {len(table)}"
            )
        code = 0
        for n in reversed(range(len(table))):
            entry = table[n]
            if not 0 <= entry <= radix - 1:
                raise ValueError(
                    f"table entry {entry} at index {n} out of [0, {radix - 1}]"
                )
            code = code * radix + entry
        self.radix = radix
        self.arity = arity
        self.table = table
        self.code = code

    @classmethod
    def from_code(cls, code: int, radix: int, arity: int) -> "MagmaOp":
        """Decode an operator from its integer code (base-p digits = table)."""
        if code < 0:
            raise ValueError("code must be nonnegative")
        size = radix**arity
        table = []
        c = code
        while c:
            c, d = divmod(c, radix)
            table.append(d)
            if len(table) > size:
                raise ValueError(
                    f"code {code} out of range for radix {radix} arity {arity}"
                )
        table.extend([0] * (size - len(table)))
        return cls(radix, arity, table)

    def __call__(self, *args: int) -> int:
        return apply(self, *args)

    def __eq__(self, other) -> bool:
        if isinstance(other, MagmaOp):
            return (
                self.radix == other.radix
                and self.arity == other.arity
                and self.table == other.table
            )
        return NotImplemented

    def __hash__(self):
        return hash((self.radix, self.arity, self.table))

    def __repr__(self) -> str:
        return f"MagmaOp({format_op_literal(self)!r})"


def from_code(code: int, p: int, arity: int = 2) -> MagmaOp:
    return MagmaOp.from_code(code, p, arity)


def to_code(table: Iterable[int], p: int, arity: int = 2) -> int:
    """Pack a table into its integer code; inverse of from_code."""
    return MagmaOp(p, arity, tuple(table)).code


def apply(op: MagmaOp, *args: int) -> int:
    """Apply the operator to digits, each in [0, p-1]."""
    if len(args) != op.arity:
        raise ValueError(f"operator takes {op.arity} arguments, got {len(args)}")
    index = 0
    weight = 1
    for x in args:
        if not 0 <= x <= op.radix - 1:
            raise ValueError(f"argument {x} out of alphabet [0, {op.radix - 1}]")
        index += weight * x
        weight *= op.radix
    return op.table[index]


def mod_add_code(p: int) -> MagmaOp:
    """The binary addition-mod-p operator: entry (x0 + x1) % p."""
    if p < 2:
        raise ValueError("requires p >= 2")
    return MagmaOp(p, 2, [((n % p) + (n // p)) % p for n in range(p * p)])


def carry_code(p: int) -> MagmaOp:
    """The carry companion of mod-p addition: 1 where x0 + x1 >= p, else 0."""
    if p < 2:
        raise ValueError("requires p >= 2")
    return MagmaOp(p, 2, [((n % p) + (n // p)) // p for n in range(p * p)])


def is_commutative(op: MagmaOp) -> bool:
    """Whether a binary operator's table is symmetric in its arguments."""
    if op.arity != 2:
        raise ValueError("commutativity is defined for binary operators only")
    p = op.radix
    return all(
        op.table[x + p * y] == op.table[y + p * x]
        for x in range(p)
        for y in range(x + 1, p)
    )


def parse_op_literal(text: str) -> MagmaOp:
    """Parse an 'arity:code:radix' literal, e.g. '2:13903:3'.

    The code part may instead be a comma-separated digit table (index order),
    e.g. '2:0,1,1,0:2'.
    """
    parts = text.strip().split(":")
    if len(parts) != 3:
        raise ValueError(
            f"operator literal must be 'arity:code:radix', got {text!r}"
        )
    try:
        arity = int(parts[0])
        radix = int(parts[2])
    except ValueError as exc:
        raise ValueError(f"bad operator literal {text!r}") from exc
    if "," in parts[1]:
        try:
            table = [int(d) for d in parts[1].split(",")]
        except ValueError as exc:
            raise ValueError(f"bad table digits in {text!r}") from exc
        return MagmaOp(radix, arity, table)
    try:
        code = int(parts[1])
    except ValueError as exc:
        raise ValueError(f"bad operator code in {text!r}") from exc
    return MagmaOp.from_code(code, radix, arity)


def format_op_literal(op: MagmaOp) -> str:
    return f"{op.arity}:{op.code}:{op.radix}"
