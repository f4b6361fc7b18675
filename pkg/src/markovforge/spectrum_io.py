"""Spectrum file format (version 1).

JSON with big integers and interval endpoints as decimal strings; interval
endpoints are outward-rounded to 40 decimal places, which keeps enclosures
sound and makes load -> save a byte-exact identity.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Optional, Union

from .errors import SpectrumFileError
from .intervals import BetaValue, CReal, decimal_bounds, interval_from_decimals
from .spectrum import DigitTrace, LoopSpectrum, SpectrumMeta

FORMAT_VERSION = 1


@dataclass(frozen=True)
class SpectrumFile:
    """A spectrum plus pipeline metadata carried between CLI commands."""

    spectrum: LoopSpectrum
    period_lift: int = 1
    entropy_target: Optional[str] = None


def _interval_out(x: CReal) -> list[str]:
    return list(decimal_bounds(x))


def _interval_in(v, bits: int) -> CReal:
    try:
        lo, hi = v
        return interval_from_decimals(lo, hi, bits)
    except (TypeError, ValueError) as e:
        raise SpectrumFileError(f"bad interval {v!r}") from e


def to_dict(sf: SpectrumFile) -> dict:
    s = sf.spectrum
    payload = {
        "format_version": FORMAT_VERSION,
        "beta": None,
        "entropy_target": sf.entropy_target,
        "period_lift": sf.period_lift,
        "N_max": s.N_max,
        "a": [str(v) for v in s.a],
        "finite_support": s.finite_support,
        "meta": None,
        "digit_trace": None,
    }
    if s.meta is not None:
        m = s.meta
        payload["beta"] = {"kind": m.beta.kind, "value": str(m.beta.value),
                           "text": m.beta.text}
        payload["meta"] = {
            "precision_bits": m.precision_bits,
            "c": _interval_out(m.c),
            "delta": _interval_out(m.delta),
            "k": m.k,
            "M": _interval_out(m.M_bound),
            "L": _interval_out(m.L),
            "tail_at_L": _interval_out(m.tail_at_L),
            "deleted_loop": m.deleted_loop,
        }
    if s.digit_trace is not None:
        t = s.digit_trace
        payload["digit_trace"] = {
            "b": [str(v) for v in t.b],
            "d": [str(v) for v in t.d],
            "d_prime": [str(v) for v in t.d_prime],
        }
    return payload


def from_dict(payload: dict) -> SpectrumFile:
    try:
        if payload["format_version"] != FORMAT_VERSION:
            raise SpectrumFileError(f"unsupported format_version "
                                    f"{payload['format_version']!r}")
        n_max = int(payload["N_max"])
        a = tuple(int(v) for v in payload["a"])
        meta = None
        if payload.get("meta") is not None:
            b = payload["beta"]
            beta = BetaValue(b["kind"], Fraction(b["value"]), b["text"])
            m = payload["meta"]
            bits = int(m["precision_bits"])
            meta = SpectrumMeta(
                beta=beta,
                precision_bits=bits,
                c=_interval_in(m["c"], bits),
                delta=_interval_in(m["delta"], bits),
                k=int(m["k"]),
                M_bound=_interval_in(m["M"], bits),
                L=_interval_in(m["L"], bits),
                tail_at_L=_interval_in(m["tail_at_L"], bits),
                deleted_loop=m["deleted_loop"],
            )
        trace = None
        if payload.get("digit_trace") is not None:
            t = payload["digit_trace"]
            trace = DigitTrace(
                b=tuple(int(v) for v in t["b"]),
                d=tuple(int(v) for v in t["d"]),
                d_prime=tuple(int(v) for v in t["d_prime"]),
            )
        spectrum = LoopSpectrum(a, n_max, meta=meta, digit_trace=trace,
                                finite_support=bool(payload.get("finite_support", False)))
        return SpectrumFile(spectrum,
                            period_lift=int(payload.get("period_lift", 1)),
                            entropy_target=payload.get("entropy_target"))
    except (KeyError, ValueError, TypeError) as e:
        if isinstance(e, SpectrumFileError):
            raise
        raise SpectrumFileError(f"malformed spectrum file: {e}") from e


def to_bytes(sf: SpectrumFile) -> bytes:
    return (json.dumps(to_dict(sf), indent=2, sort_keys=True) + "\n").encode("utf-8")


def from_bytes(data: bytes) -> SpectrumFile:
    try:
        payload = json.loads(data.decode("utf-8"))
    except (UnicodeDecodeError, json.JSONDecodeError) as e:
        raise SpectrumFileError(f"not valid JSON: {e}") from e
    return from_dict(payload)


def save(sf: SpectrumFile, path: Union[str, Path]) -> None:
    Path(path).write_bytes(to_bytes(sf))


def load(path: Union[str, Path]) -> SpectrumFile:
    return from_bytes(Path(path).read_bytes())
