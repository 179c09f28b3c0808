from ._vvckit import (
    ConfigError,
    ContractViolation,
    FormatError,
    IoError,
    __version__,
    alf_classify,
    alf_filter_plane,
    available_tiers,
    bench,
    dequant,
    interp_luma,
    inv_transform,
    luma_table,
    verify,
    wpp_critical_path,
)

__all__ = [
    "ConfigError",
    "ContractViolation",
    "FormatError",
    "IoError",
    "__version__",
    "alf_classify",
    "alf_filter_plane",
    "available_tiers",
    "bench",
    "dequant",
    "interp_luma",
    "inv_transform",
    "luma_table",
    "verify",
    "wpp_critical_path",
]
