"""Radix-2 FFT core generator and verification toolkit.

Submodules:
  twiddle    - rotation constants and their fixed-point word encoding
  fixedpoint - bit-exact butterfly / complex-multiply semantics
  flowgraph  - staged dataflow graph of the iterative decomposition
  sim        - tick-based executor with enable/done stage chaining
  oracle     - independent references (float DFT, recursive fixed FFT)
  codegen    - Verilog emitter (cores, recursive FFT chain, testbench)
  lint       - structural checks over emitted (or any) Verilog text
  prompts    - deterministic prompt-pack rendering
  cli        - command-line front end
"""

from .fixedpoint import ButterflyResult, FixedComplex, ScalingMode, butterfly_fixed, cmult_fixed
from .twiddle import (
    EncodingSteps,
    TwiddleWord,
    compute_twiddle,
    encode_word,
    encoding_steps,
    quantize,
    twiddle_table,
)

__all__ = [
    "ButterflyResult",
    "FixedComplex",
    "ScalingMode",
    "butterfly_fixed",
    "cmult_fixed",
    "EncodingSteps",
    "TwiddleWord",
    "compute_twiddle",
    "encode_word",
    "encoding_steps",
    "quantize",
    "twiddle_table",
]

__version__ = "0.1.0"
