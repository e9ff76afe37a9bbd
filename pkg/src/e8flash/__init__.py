"""E8 lattice coded modulation with an outer Reed-Solomon code for
multi-level flash cells, and the Gray-coded PAM + BCH baseline."""

from .codec import FrameConfig, WordError, decode_frame, encode_frame, frame_config, rate
from .baseline import BaselineConfig, baseline_config, baseline_decode, baseline_encode
from .lattice import (LatticeSpec, build_error_table, e8_nearest, encode_cube,
                      index_point, lattice_spec, minimal_vectors)
from .rs import DecodeFailure

__all__ = [
    "BaselineConfig", "DecodeFailure", "FrameConfig", "LatticeSpec", "WordError",
    "baseline_config", "baseline_decode", "baseline_encode", "build_error_table",
    "decode_frame", "e8_nearest", "encode_cube", "encode_frame", "frame_config",
    "index_point", "lattice_spec", "minimal_vectors", "rate",
]
