"""Named code parameters for the RS/E8 and BCH/PAM comparison at q = 8."""

from __future__ import annotations

from functools import lru_cache

from .bch import BchCode, bch_code
from .rs import RsCode, rs_code

# name -> (n_c, k_c, t)
RS_PRESETS = {
    "rs-172-170-1": (172, 170, 1),
    "rs-172-168-2": (172, 168, 2),
    "rs-173-167-3": (173, 167, 3),
    "rs-174-166-4": (174, 166, 4),
    "rs-174-164-5": (174, 164, 5),
}

# name -> (n, k, t)
BCH_PRESETS = {
    "bch-4109-4096-1": (4109, 4096, 1),
    "bch-4122-4096-2": (4122, 4096, 2),
    "bch-4135-4096-3": (4135, 4096, 3),
    "bch-4148-4096-4": (4148, 4096, 4),
    "bch-4161-4096-5": (4161, 4096, 5),
}

# RS preset paired with the BCH preset of equal correcting capability
PAIRS = dict(zip(RS_PRESETS, BCH_PRESETS))

# published flash rates (bits/cell) at q = 8, rounded to 3 decimals
PUBLISHED_RATES = {
    "rs-172-170-1": 2.988, "rs-172-168-2": 2.977, "rs-173-167-3": 2.965,
    "rs-174-166-4": 2.954, "rs-174-164-5": 2.943,
    "bch-4109-4096-1": 2.991, "bch-4122-4096-2": 2.981, "bch-4135-4096-3": 2.972,
    "bch-4148-4096-4": 2.962, "bch-4161-4096-5": 2.953,
}


@lru_cache(maxsize=None)
def get_rs(name: str) -> RsCode:
    try:
        return rs_code(*RS_PRESETS[name])
    except KeyError:
        raise KeyError(f"unknown RS preset {name!r}; choose from {list(RS_PRESETS)}") from None


@lru_cache(maxsize=None)
def get_bch(name: str) -> BchCode:
    try:
        n, k, t = BCH_PRESETS[name]
    except KeyError:
        raise KeyError(f"unknown BCH preset {name!r}; choose from {list(BCH_PRESETS)}") from None
    code = bch_code(t, k)
    if code.n != n:
        raise AssertionError(f"realised BCH length {code.n} != {n}")
    return code
