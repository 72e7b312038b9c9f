"""Rotation ("twiddle") constants and their fixed-point hardware encoding.

A constant exp(-j*2*pi*k/n) becomes a 2W-bit word through five steps:
trigonometric evaluation, scaling by 2^(W-1)-1, rounding half away from
zero, two's-complement conversion of each part, and concatenation with the
imaginary bits in the high half.  `quantize`/`twiddle_table` run the
pipeline at full float precision; `encoding_steps` narrates it the way an
engineer writes it out by hand, carrying the four-decimal display values
from step one into step two (the two can differ by one LSB for some n, k).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

from .fixedpoint import FixedComplex, signed_range


def is_power_of_two(n: int) -> bool:
    return n >= 1 and (n & (n - 1)) == 0


def round_half_away_from_zero(x: float) -> int:
    if x >= 0:
        return math.floor(x + 0.5)
    return math.ceil(x - 0.5)


def _check_size(n: int) -> None:
    if not is_power_of_two(n) or n < 2:
        raise ValueError(f"transform size must be a power of two >= 2, got {n}")


def compute_twiddle(n: int, k: int) -> complex:
    """exp(-j*2*pi*k/n) = cos(2*pi*k/n) - j*sin(2*pi*k/n)."""
    _check_size(n)
    if not 0 <= k < n // 2:
        raise ValueError(f"twiddle index {k} out of range [0, {n // 2}) for n={n}")
    theta = 2.0 * math.pi * k / n
    im = -math.sin(theta)
    return complex(math.cos(theta), im if im != 0.0 else 0.0)


def quantize(c: complex, width: int = 16) -> FixedComplex:
    """Scale by 2^(width-1)-1 and round half away from zero, per component.

    The scale keeps results strictly inside the symmetric range
    [-(2^(width-1)-1), 2^(width-1)-1]; -2^(width-1) can never occur.
    """
    if width < 2:
        raise ValueError(f"width must be >= 2, got {width}")
    if abs(c.real) > 1.0 or abs(c.imag) > 1.0:
        raise ValueError(f"components of {c} must lie in [-1, 1]")
    scale = (1 << (width - 1)) - 1
    return FixedComplex(
        round_half_away_from_zero(c.real * scale),
        round_half_away_from_zero(c.imag * scale),
        width,
    )


def encode_word(f: FixedComplex, width: int | None = None) -> int:
    """Pack a fixed complex into one 2*width-bit word, imaginary bits high."""
    width = f.width if width is None else width
    lo, hi = signed_range(width)
    if not (lo <= f.re <= hi and lo <= f.im <= hi):
        raise OverflowError(f"({f.re}, {f.im}) does not fit in {width} bits")
    mask = (1 << width) - 1
    return ((f.im & mask) << width) | (f.re & mask)


def decode_word(word: int, width: int = 16) -> FixedComplex:
    """Inverse of encode_word: split a 2*width-bit word into signed parts."""
    if not 0 <= word < 1 << (2 * width):
        raise ValueError(f"word 0x{word:X} does not fit in {2 * width} bits")
    mask = (1 << width) - 1
    re = word & mask
    im = (word >> width) & mask
    if re >= 1 << (width - 1):
        re -= 1 << width
    if im >= 1 << (width - 1):
        im -= 1 << width
    return FixedComplex(re, im, width)


@dataclass(frozen=True)
class TwiddleWord:
    """A rotation constant together with its encoded hardware word."""

    n: int
    k: int
    value: complex
    fixed: FixedComplex
    word: int
    width: int


@lru_cache(maxsize=None)
def _table_cached(n: int, width: int) -> tuple[TwiddleWord, ...]:
    entries = []
    for k in range(n // 2):
        value = compute_twiddle(n, k)
        fixed = quantize(value, width)
        entries.append(TwiddleWord(n, k, value, fixed, encode_word(fixed), width))
    return tuple(entries)


def twiddle_table(n: int, width: int = 16) -> list[TwiddleWord]:
    """All n/2 encoded constants for an n-point transform, k ascending."""
    _check_size(n)
    if not 2 <= width <= 32:
        raise ValueError(f"width must be in [2, 32], got {width}")
    return list(_table_cached(n, width))


# ---------------------------------------------------------------------------
# Step-by-step encoding trace (the hand derivation, also used for prompts)
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class EncodingSteps:
    """Intermediate values of the five-step encoding, as written by hand.

    Step one is displayed at four decimals and that displayed value is what
    the later steps operate on, e.g. 0.7071 * 32767 = 23169.5457 -> 23170.
    """

    n: int
    k: int
    width: int
    value: complex          # step 1: trig result at display precision
    scaled_re: float        # step 2: value * (2^(width-1) - 1)
    scaled_im: float
    rounded: FixedComplex   # step 3: half-away-from-zero rounding
    re_bits: str            # step 4: two's-complement bit strings
    im_bits: str
    word: int               # step 5: concatenation, imaginary high
    word_bits: str


def encoding_steps(n: int, k: int, width: int = 16, display_decimals: int = 4) -> EncodingSteps:
    exact = compute_twiddle(n, k)
    digits = 10 ** display_decimals
    value = complex(
        round_half_away_from_zero(exact.real * digits) / digits,
        round_half_away_from_zero(exact.imag * digits) / digits,
    )
    scale = (1 << (width - 1)) - 1
    scaled_re = value.real * scale
    scaled_im = value.imag * scale
    rounded = FixedComplex(
        round_half_away_from_zero(scaled_re),
        round_half_away_from_zero(scaled_im),
        width,
    )
    word = encode_word(rounded)
    return EncodingSteps(
        n=n,
        k=k,
        width=width,
        value=value,
        scaled_re=scaled_re,
        scaled_im=scaled_im,
        rounded=rounded,
        re_bits=format_bits(rounded.re, width),
        im_bits=format_bits(rounded.im, width),
        word=word,
        word_bits=format_word_bits(word, width),
    )


# ---------------------------------------------------------------------------
# Export formats
# ---------------------------------------------------------------------------

def format_bits(value: int, width: int) -> str:
    """Two's-complement bits grouped in nibbles: -23170 -> '1010,0101,0111,1110'."""
    bits = format(value & ((1 << width) - 1), f"0{width}b")
    groups = []
    while bits:
        groups.append(bits[-4:])
        bits = bits[:-4]
    return ",".join(reversed(groups))


def format_word_bits(word: int, width: int) -> str:
    """Full word bits, a comma+space between the imaginary and real halves."""
    f = decode_word(word, width)
    return f"{format_bits(f.im, width)}, {format_bits(f.re, width)}"


def format_table(entries: list[TwiddleWord]) -> str:
    """Human-readable table: k, float value, fixed parts, word bits."""
    lines = ["k   value                  re_fixed  im_fixed  word bits"]
    for e in entries:
        val = f"{e.value.real:+.4f} {e.value.imag:+.4f}i"
        lines.append(
            f"{e.k:<3d} {val:<22s} {e.fixed.re:>8d}  {e.fixed.im:>8d}  "
            f"{format_word_bits(e.word, e.width)}"
        )
    return "\n".join(lines) + "\n"


def table_records(entries: list[TwiddleWord]) -> list[dict]:
    """Machine-readable rows for JSON export."""
    return [
        {
            "n": e.n,
            "k": e.k,
            "re_float": e.value.real,
            "im_float": e.value.imag,
            "re_fixed": e.fixed.re,
            "im_fixed": e.fixed.im,
            "word_hex": f"0x{e.word:0{e.width // 2}X}",
        }
        for e in entries
    ]


def format_hdl_localparams(entries: list[TwiddleWord], name_prefix: str = "TW") -> str:
    """Verilog localparam block with one 2W-bit constant per index."""
    lines = []
    for e in entries:
        bits = format_word_bits(e.word, e.width).replace(",", "_").replace("_ ", "_")
        lines.append(
            f"localparam [{2 * e.width - 1}:0] {name_prefix}_{e.k} = "
            f"{2 * e.width}'b{bits};  "
            f"// exp(-j*2*pi*{e.k}/{e.n}) = {e.value.real:+.4f} {e.value.imag:+.4f}i"
        )
    return "\n".join(lines) + "\n"
