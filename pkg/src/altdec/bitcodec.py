"""Lossless fixed-width codec for decimated quantized samples.

Decimated outputs of alphabet-valued data live on a lattice: scaling the
averaging chain by rho^r makes every matrix entry an integer, so each
component times 2 rho^r / delta is an integer n with known parity (the row
sum of the integer matrix, mod 2) and known range (|n| <= (2L-1) times the
row's absolute sum). Encoding stores (n + range)/2 as an unsigned offset in
a fixed number of bits per component; no entropy coding, so the payload
size is provable.

Wire format (normative, fixed by a golden-file test):
- header, little-endian: magic "DCM8", version byte 0x01, then m, rho, r,
  eta, L as unsigned 32-bit, delta as IEEE-754 double, one flags byte
  (bit 0: complex payload, bit 1: circulant averaging variant);
- payload: per entry, real then imaginary offset, each w bits wide,
  concatenated big-endian and zero-padded to a whole byte, where
  w = ceil(log2(range_count)), range_count = (2L-1) rho + 1 at first order
  and ((2L-1) m + 1)^r beyond (a conservative per-fold range; decode
  recomputes exact per-row ranges from the header, so nothing else is
  stored).

decode . encode is the identity on lattice-exact inputs; decimate()
produces such inputs bit-exactly whenever delta is a dyadic rational and
magnitudes stay within exact double range, because both sides perform the
identical single division by rho^r.
"""

from __future__ import annotations

import math
import struct
from dataclasses import dataclass

import numpy as np

from altdec.decimation import DecimationPlan, Variant, lattice_row_profile
from altdec.errors import (
    DimensionMismatch,
    MalformedHeader,
    OffLattice,
    RangeOverflow,
    TruncatedPayload,
)
from altdec.numerics import as_complex_vector
from altdec.sigma_delta import Alphabet

__all__ = [
    "LatticeBlock",
    "component_width",
    "payload_bits",
    "encode",
    "decode",
    "parse_block",
    "block_values",
]

_MAGIC = b"DCM8"
_VERSION = 1
_HEADER = struct.Struct("<4sB5IdB")

_FLAG_COMPLEX = 1
_FLAG_CIRCULANT = 2

_SNAP_REL = 1e-9


@dataclass(frozen=True, eq=False)
class LatticeBlock:
    """Decoded form of one stream: header fields plus integer offsets."""

    m: int
    rho: int
    r: int
    eta: int
    L: int
    delta: float
    complex_mode: bool
    variant: Variant
    offsets_re: np.ndarray
    offsets_im: np.ndarray | None

    def plan(self) -> DecimationPlan:
        return DecimationPlan(m=self.m, rho=self.rho, r=self.r,
                              variant=self.variant)


def component_width(m: int, rho: int, r: int, L: int) -> int:
    """Bits per real component: ceil(log2) of the conservative range count."""
    if r == 1:
        range_count = (2 * L - 1) * rho + 1
    else:
        range_count = ((2 * L - 1) * m + 1) ** r
    return (range_count - 1).bit_length()


def payload_bits(plan: DecimationPlan, a: Alphabet) -> int:
    channels = 2 if a.complex_mode else 1
    return plan.eta * channels * component_width(plan.m, plan.rho, plan.r, a.L)


def _snap_component(scaled: np.ndarray, what: str) -> np.ndarray:
    n = np.rint(scaled)
    bad = np.abs(scaled - n) > _SNAP_REL * np.maximum(1.0, np.abs(n))
    if bad.any():
        j = int(np.argmax(bad))
        raise OffLattice(f"{what} component {j} is {scaled[j]!r}, "
                         "not within 1e-9 of the lattice")
    return n.astype(np.int64)


def _block_from_values(v: np.ndarray, plan: DecimationPlan,
                       a: Alphabet) -> LatticeBlock:
    abs_sums, sums = lattice_row_profile(plan)
    scale = 2.0 * plan.rho**plan.r / a.delta
    n_re = _snap_component(v.real * scale, "real")
    if a.complex_mode:
        n_im = _snap_component(v.imag * scale, "imaginary")
        parts = [("real", n_re), ("imaginary", n_im)]
    else:
        if np.abs(v.imag).max(initial=0.0) > _SNAP_REL:
            raise OffLattice("imaginary data in a real-mode block")
        n_im = None
        parts = [("real", n_re)]
    span = (2 * a.L - 1) * abs_sums
    for what, n in parts:
        over = np.abs(n) > span
        if over.any():
            j = int(np.argmax(over))
            raise RangeOverflow(f"{what} component {j} holds {int(n[j])}, "
                                f"outside +-{int(span[j])}")
        if (((n - sums) % 2) != 0).any():
            raise OffLattice(f"{what} component parity off the lattice")
    offs_re = (n_re + span) // 2
    offs_im = (n_im + span) // 2 if n_im is not None else None
    return LatticeBlock(m=plan.m, rho=plan.rho, r=plan.r, eta=plan.eta,
                        L=a.L, delta=a.delta, complex_mode=a.complex_mode,
                        variant=plan.variant, offsets_re=offs_re,
                        offsets_im=offs_im)


def _interleaved(block: LatticeBlock) -> list[int]:
    if block.offsets_im is None:
        return [int(o) for o in block.offsets_re]
    out = []
    for re, im in zip(block.offsets_re, block.offsets_im):
        out.append(int(re))
        out.append(int(im))
    return out


def _pack(block: LatticeBlock) -> bytes:
    flags = (_FLAG_COMPLEX if block.complex_mode else 0) \
        | (_FLAG_CIRCULANT if block.variant is Variant.CANONICAL else 0)
    header = _HEADER.pack(_MAGIC, _VERSION, block.m, block.rho, block.r,
                          block.eta, block.L, block.delta, flags)
    w = component_width(block.m, block.rho, block.r, block.L)
    comps = _interleaved(block)
    acc = 0
    for off in comps:
        acc = (acc << w) | off
    total_bits = w * len(comps)
    nbytes = (total_bits + 7) // 8
    acc <<= nbytes * 8 - total_bits
    return header + acc.to_bytes(nbytes, "big")


def encode(v, plan: DecimationPlan, a: Alphabet) -> bytes:
    """Serialize one decimated block; OffLattice/RangeOverflow when the
    input cannot have come from decimating alphabet-valued data."""
    v = as_complex_vector(v)
    if v.shape[0] != plan.eta:
        raise DimensionMismatch(f"expected {plan.eta} entries, got {v.shape[0]}")
    return _pack(_block_from_values(v, plan, a))


def parse_block(stream: bytes) -> LatticeBlock:
    """Validate the header, recompute ranges, and unpack all offsets."""
    if len(stream) < _HEADER.size:
        raise MalformedHeader("stream shorter than the header")
    magic, version, m, rho, r, eta, L, delta, flags = \
        _HEADER.unpack(stream[: _HEADER.size])
    if magic != _MAGIC:
        raise MalformedHeader(f"bad magic {magic!r}")
    if version != _VERSION:
        raise MalformedHeader(f"unsupported version {version}")
    if not (1 <= rho <= m) or r < 1 or L < 1:
        raise MalformedHeader("header fields out of range")
    if eta != m // rho:
        raise MalformedHeader("eta inconsistent with m and rho")
    if not (math.isfinite(delta) and delta > 0):
        raise MalformedHeader("delta must be a positive finite real")
    if flags & ~(_FLAG_COMPLEX | _FLAG_CIRCULANT):
        raise MalformedHeader("unknown flag bits set")
    complex_mode = bool(flags & _FLAG_COMPLEX)
    variant = Variant.CANONICAL if flags & _FLAG_CIRCULANT else Variant.ALTERNATIVE
    w = component_width(m, rho, r, L)
    ncomp = eta * (2 if complex_mode else 1)
    total_bits = ncomp * w
    nbytes = (total_bits + 7) // 8
    payload = stream[_HEADER.size:]
    if len(payload) < nbytes:
        raise TruncatedPayload(f"payload holds {len(payload)} bytes, need {nbytes}")
    if len(payload) > nbytes:
        raise MalformedHeader("trailing bytes after the payload")
    acc = int.from_bytes(payload, "big") >> (nbytes * 8 - total_bits)
    mask = (1 << w) - 1
    comps = [(acc >> (total_bits - w * (i + 1))) & mask for i in range(ncomp)]
    if complex_mode:
        offs_re = np.array(comps[0::2], dtype=np.int64)
        offs_im = np.array(comps[1::2], dtype=np.int64)
    else:
        offs_re = np.array(comps, dtype=np.int64)
        offs_im = None
    return LatticeBlock(m=m, rho=rho, r=r, eta=eta, L=L, delta=delta,
                        complex_mode=complex_mode, variant=variant,
                        offsets_re=offs_re, offsets_im=offs_im)


def block_values(block: LatticeBlock) -> np.ndarray:
    """Exact lattice values: (2 offset - range) * (delta/2) / rho^r, with
    the same operation order as decimate() so doubles agree bit-for-bit."""
    abs_sums, _ = lattice_row_profile(block.plan())
    span = (2 * block.L - 1) * abs_sums
    divisor = float(block.rho**block.r)
    half_delta = 0.5 * block.delta

    def component(offsets: np.ndarray) -> np.ndarray:
        n = (2 * offsets - span).astype(np.float64)
        return n * half_delta / divisor

    re = component(block.offsets_re)
    if block.offsets_im is None:
        return re.astype(np.complex128)
    return re + 1j * component(block.offsets_im)


def decode(stream: bytes) -> np.ndarray:
    return block_values(parse_block(stream))
