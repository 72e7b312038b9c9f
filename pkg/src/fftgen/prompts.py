"""Deterministic prompt-pack rendering.

Two prompt families, both rendered from the package's own outputs so the
files never drift from the code: question/answer pairs that grow an FFT
module from the half-size one (the embedded answer code is byte-identical
to the emitter's output), and a step-by-step derivation prompt whose
numeric intermediates come straight from `twiddle.encoding_steps`.  No LLM
client is included -- the pack is files on disk, replayable against any
model.
"""

from __future__ import annotations

from pathlib import Path
from typing import NamedTuple

from .codegen import EmitConfig, emit_butterfly, emit_cmult, emit_fft_suite
from .twiddle import encoding_steps, is_power_of_two


class IclPair(NamedTuple):
    question: str
    answer: str


def _suite_module(cfg: EmitConfig, m: int) -> str:
    for mod in emit_fft_suite(cfg):
        if mod.name == f"fft{m}":
            return mod.body
    raise ValueError(f"fft{m} not part of the n={cfg.n} suite")


def _question_text(m: int) -> str:
    half = m // 2
    provided = "two-point FFT below (identical to the butterfly IP core)" if half == 2 else f"{half}-point FFT module below"
    return (
        f"Q: Using the butterfly and complex-multiplication IP cores provided "
        f"earlier, and the {provided}, write a Verilog module implementing a "
        f"{m}-point FFT.\n"
        f"\n"
        f"Structure it as {m // 2} butterfly computations on input pairs "
        f"(i, i+{m // 2}), then {m // 2} complex multiplications of the "
        f"difference outputs by the rotation constants, then two parallel "
        f"{half}-point FFTs (one on the sums, one on the rotated differences). "
        f"Units inside a stage run in parallel; a stage may start only when "
        f"every unit of the previous stage has raised its 'done' output, so "
        f"connect each stage's 'enable' to the AND of the previous stage's "
        f"'done' signals.\n"
    )


def build_icl_pair(m: int, width: int = 16, cmult_delay: int = 1) -> IclPair:
    """Question embedding the provided fft{m/2} module; answer is fft{m}."""
    if not is_power_of_two(m) or m < 4:
        raise ValueError(f"pair size must be a power of two >= 4, got {m}")
    cfg = EmitConfig(n=m, width=width, cmult_delay=cmult_delay)
    question = _question_text(m) + "\n" + _suite_module(cfg, m // 2)
    answer = _suite_module(cfg, m)
    return IclPair(question, answer)


def build_ip_core_prompt(width: int = 16, cmult_delay: int = 1) -> IclPair:
    """The opening request for the two primitive cores, with reference code."""
    cfg = EmitConfig(n=2, width=width, cmult_delay=cmult_delay)
    question = (
        f"Q: Write two reusable Verilog IP cores for fixed-point complex "
        f"samples of parameterizable width DATA_WIDTH (default {width}).\n"
        f"\n"
        f"1. A butterfly computation core: outputs a + b and a - b for complex "
        f"inputs a and b, with an optional halving of both results to control "
        f"bit growth.  It has an 'enable' input and registers its outputs one "
        f"clock after enable, raising a 'done' output.\n"
        f"2. A complex multiplication core, parameterized by DATA_WIDTH and "
        f"DELAY: it multiplies a complex input by a complex constant that is "
        f"pre-scaled by 2^(DATA_WIDTH-1)-1, shrinks the product back with "
        f"round-to-nearest, and raises 'done' DELAY clocks after 'enable'.\n"
        f"\n"
        f"Both cores use an asynchronous active-low reset (include its negative "
        f"edge in every sequential sensitivity list), explicit wire/reg types "
        f"on every port, and comments.\n"
    )
    answer = emit_butterfly(cfg).body + "\n" + emit_cmult(cfg).body
    return IclPair(question, answer)


def build_target_question(n_target: int, width: int = 16, cmult_delay: int = 1) -> str:
    """The final, unanswered question of the replay sequence."""
    if not is_power_of_two(n_target) or n_target < 4:
        raise ValueError(f"target size must be a power of two >= 4, got {n_target}")
    cfg = EmitConfig(n=n_target, width=width, cmult_delay=cmult_delay)
    return _question_text(n_target) + "\n" + _suite_module(cfg, n_target // 2)


# ---------------------------------------------------------------------------
# Step-by-step derivation prompt
# ---------------------------------------------------------------------------

def _steps_text(n: int, k: int, width: int) -> str:
    s = encoding_steps(n, k, width)
    scale = (1 << (width - 1)) - 1
    return (
        f"Constant k={k} of the {n}-point FFT:\n"
        f"Step One (calculation): exp(-j*2*pi*{k}/{n}) = "
        f"{s.value.real:.4f} {s.value.imag:+.4f}i.\n"
        f"Step Two (scaling): multiply both parts by 2^{width - 1}-1 = {scale}: "
        f"real part {s.value.real:.4f} * {scale} = {s.scaled_re:.4f}, "
        f"imaginary part {s.value.imag:.4f} * {scale} = {s.scaled_im:.4f}.\n"
        f"Step Three (rounding): real part ~ {s.rounded.re}, "
        f"imaginary part ~ {s.rounded.im}.\n"
        f"Step Four (conversion to binary): {width}-bit two's complement: "
        f"real part {s.rounded.re} -> {s.re_bits}; "
        f"imaginary part {s.rounded.im} -> {s.im_bits}.\n"
        f"Step Five (concatenation): higher {width} bits imaginary, lower "
        f"{width} bits real: {s.word_bits}.\n"
    )


def build_cot_prompt(n_example: int, n_target: int, width: int = 16) -> str:
    """Worked five-step derivations for n_example, then the n_target request."""
    if not is_power_of_two(n_example) or not is_power_of_two(n_target):
        raise ValueError("sizes must be powers of two")
    if not 2 <= n_example < n_target:
        raise ValueError(f"need 2 <= n_example < n_target, got {n_example}, {n_target}")
    parts = [
        f"Q: A digital circuit stores each rotation constant of an FFT as one "
        f"{2 * width}-bit binary sequence: a {width}-bit two's-complement "
        f"imaginary part in the high bits and a {width}-bit real part in the "
        f"low bits, both scaled by 2^{width - 1}-1.  Worked examples for every "
        f"constant of the {n_example}-point FFT follow.\n",
    ]
    for k in range(n_example // 2):
        parts.append(_steps_text(n_example, k, width))
    parts.append(
        f"Following the same five steps, produce the {2 * width}-bit sequences "
        f"for all {n_target // 2} rotation constants of a {n_target}-point FFT "
        f"(k = 0 .. {n_target // 2 - 1}).\n"
    )
    return "\n".join(parts)


# ---------------------------------------------------------------------------
# Pack writing
# ---------------------------------------------------------------------------

def write_prompt_pack(
    n_target: int,
    out_dir: str | Path,
    width: int = 16,
    cmult_delay: int = 1,
    n_example: int = 8,
) -> list[Path]:
    """Write the replayable pack; returns paths in replay order, manifest last.

    Replay order: IP-core prompt, one pair per size 4 .. n_target/2, the
    target question, then the derivation prompt.  The derivation examples use
    n_example, clamped to n_target/2 so its precondition always holds.
    """
    if not is_power_of_two(n_target) or n_target < 4:
        raise ValueError(f"target size must be a power of two >= 4, got {n_target}")
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)

    entries: list[tuple[str, str]] = []  # (slug, content)

    ip = build_ip_core_prompt(width, cmult_delay)
    entries.append(("ip_cores", _pair_file(ip)))

    m = 4
    while m <= n_target // 2:
        entries.append((f"pair_fft{m}", _pair_file(build_icl_pair(m, width, cmult_delay))))
        m *= 2

    entries.append(
        (f"target_fft{n_target}", build_target_question(n_target, width, cmult_delay))
    )

    cot_example = min(n_example, n_target // 2)
    entries.append(("cot_twiddles", build_cot_prompt(cot_example, n_target, width)))

    paths: list[Path] = []
    manifest_lines = [f"prompt pack for a {n_target}-point FFT, replay top to bottom:"]
    for i, (slug, content) in enumerate(entries, start=1):
        filename = f"{i:02d}_{slug}.txt"
        path = out / filename
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(content)
        paths.append(path)
        manifest_lines.append(filename)

    manifest = out / "manifest.txt"
    with open(manifest, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(manifest_lines) + "\n")
    paths.append(manifest)
    return paths


ANSWER_MARK = "=== answer ===\n"


def _pair_file(pair: IclPair) -> str:
    """One file per pair; everything after ANSWER_MARK is exact answer bytes."""
    return pair.question + "\n" + ANSWER_MARK + pair.answer
