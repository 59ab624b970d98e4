"""Kernel selection: the compiled extension when it imports, else the fallback."""

from __future__ import annotations

from . import _fallback

try:
    from . import _kernels as _compiled
except ImportError:  # extension not built
    _compiled = None

_BACKENDS = {"fallback": _fallback}
if _compiled is not None:
    _BACKENDS["compiled"] = _compiled

_active = _compiled or _fallback


def available() -> list[str]:
    return sorted(_BACKENDS)


def name() -> str:
    return "compiled" if _active is _compiled else "fallback"


def use(backend: str) -> None:
    """Switch the process-wide kernel implementation."""
    global _active
    try:
        _active = _BACKENDS[backend]
    except KeyError:
        raise ValueError(f"backend {backend!r} unavailable; have {available()}") from None


def box_scan(p, q, max_den, max_num):
    return _active.box_scan(p, q, max_den, max_num)


def base_scan(spf, num, den, limit, kind):
    return _active.base_scan(spf, num, den, limit, kind)
