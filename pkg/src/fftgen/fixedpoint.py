"""Bit-exact two's-complement complex arithmetic.

These are the reference semantics for the generated RTL: the butterfly
add/sub (with optional per-stage halving) and the complex multiply by an
encoded rotation constant with a round-to-nearest shrink.  Everything is
plain integer math so the dataflow simulator, the recursive reference FFT,
and the emitted Verilog can be compared bit for bit.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import NamedTuple


class ScalingMode(Enum):
    """Butterfly overflow policy for a whole design."""

    PER_STAGE_HALVING = "half"  # (a +/- b) >> 1, no overflow possible
    NONE = "none"               # raw sum/difference, wraps in W bits


@dataclass(frozen=True)
class FixedComplex:
    """A complex sample as two W-bit two's-complement integers."""

    re: int
    im: int
    width: int = 16

    def __post_init__(self):
        lo, hi = signed_range(self.width)
        if not (lo <= self.re <= hi and lo <= self.im <= hi):
            raise ValueError(
                f"({self.re}, {self.im}) does not fit in {self.width}-bit two's complement"
            )

    def to_complex(self) -> complex:
        return complex(self.re, self.im)

    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0


class ButterflyResult(NamedTuple):
    sum: "FixedComplex"
    diff: "FixedComplex"
    overflow: bool


def signed_range(width: int) -> tuple[int, int]:
    """Inclusive (min, max) of width-bit two's complement."""
    return -(1 << (width - 1)), (1 << (width - 1)) - 1


def wrap(value: int, width: int) -> int:
    """Reduce an integer into width-bit two's complement (hardware wraparound)."""
    value &= (1 << width) - 1
    if value >= 1 << (width - 1):
        value -= 1 << width
    return value


def butterfly_fixed(
    a: FixedComplex,
    b: FixedComplex,
    mode: ScalingMode = ScalingMode.PER_STAGE_HALVING,
) -> ButterflyResult:
    """Compute (a + b, a - b) per component.

    PER_STAGE_HALVING arithmetic-shifts each result right by one, which can
    never overflow; NONE keeps the raw result, wrapping in W bits and raising
    the overflow flag when the mathematical value did not fit.
    """
    if a.width != b.width:
        raise ValueError(f"width mismatch: {a.width} vs {b.width}")
    w = a.width
    add_re, add_im = a.re + b.re, a.im + b.im
    sub_re, sub_im = a.re - b.re, a.im - b.im

    if mode is ScalingMode.PER_STAGE_HALVING:
        # >> on Python ints is an arithmetic shift (floor), same as Verilog >>>
        s = FixedComplex(add_re >> 1, add_im >> 1, w)
        d = FixedComplex(sub_re >> 1, sub_im >> 1, w)
        return ButterflyResult(s, d, False)

    raw = (add_re, add_im, sub_re, sub_im)
    wrapped = tuple(wrap(v, w) for v in raw)
    overflow = wrapped != raw
    return ButterflyResult(
        FixedComplex(wrapped[0], wrapped[1], w),
        FixedComplex(wrapped[2], wrapped[3], w),
        overflow,
    )


def cmult_fixed(a: FixedComplex, w: "TwiddleWord") -> FixedComplex:
    """Multiply a sample by an encoded rotation constant.

    The constant is pre-scaled by 2^(W-1)-1, so the 2W-bit products are
    shrunk back with add-half-then-arithmetic-shift by W-1.  Python ints are
    unbounded, which trivially satisfies the exact-intermediate requirement.
    """
    width = a.width
    if width != w.width:
        raise ValueError(f"width mismatch: {width} vs {w.width}")
    half = 1 << (width - 2)
    shift = width - 1
    wf = w.fixed
    re = wrap((a.re * wf.re - a.im * wf.im + half) >> shift, width)
    im = wrap((a.re * wf.im + a.im * wf.re + half) >> shift, width)
    return FixedComplex(re, im, width)
