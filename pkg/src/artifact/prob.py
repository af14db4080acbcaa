"""Finite-alphabet building blocks for multi-sensor fusion models.

Alphabets are contiguous integer ranges [0, size).  Model components are
frozen dataclasses around dense numpy arrays, checked once at
construction.  Anything that is not a probability distribution within
PMF_ATOL is rejected rather than renormalized, so numerical drift
cannot hide a modeling mistake upstream.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ConfigurationError

PMF_ATOL = 1e-12


def _clean_array(raw: object, name: str, ndim: int) -> np.ndarray:
    arr = np.array(raw, dtype=float)
    if arr.ndim != ndim:
        raise ConfigurationError(
            f"{name}: expected a {ndim}-dimensional array, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ConfigurationError(f"{name}: entries must be finite")
    if arr.size and float(arr.min()) < 0.0:
        raise ConfigurationError(f"{name}: entries must be nonnegative")
    arr.setflags(write=False)
    return arr


def _check_rows_stochastic(arr: np.ndarray, name: str) -> None:
    sums = arr.sum(axis=-1)
    off = np.abs(sums - 1.0)
    if float(off.max()) > PMF_ATOL:
        idx = np.unravel_index(int(off.argmax()), off.shape)
        where = "".join(f"[{k}]" for k in idx)
        raise ConfigurationError(
            f"{name}{where}: row sums to {float(sums[idx])!r}, not 1 within {PMF_ATOL}")


@dataclass(frozen=True)
class JointSourcePmf:
    """Joint law of the source letter X and the context letter S.

    probs[x, s] is the joint probability.  Both marginals must charge
    every letter, so conditioning on either index is always defined.
    """

    x_size: int
    s_size: int
    probs: np.ndarray

    def __post_init__(self) -> None:
        if int(self.x_size) < 2:
            raise ConfigurationError("x_size must be at least 2")
        if int(self.s_size) < 1:
            raise ConfigurationError("s_size must be at least 1")
        arr = _clean_array(self.probs, "source probs", 2)
        if arr.shape != (self.x_size, self.s_size):
            raise ConfigurationError(
                f"source probs: shape {arr.shape} does not match "
                f"(x_size, s_size) = ({self.x_size}, {self.s_size})")
        total = float(arr.sum())
        if abs(total - 1.0) > PMF_ATOL:
            raise ConfigurationError(
                f"source probs: total mass {total!r} is not 1 within {PMF_ATOL}")
        if float(arr.sum(axis=1).min()) <= 0.0:
            raise ConfigurationError(
                "source probs: every source letter needs positive marginal mass")
        if float(arr.sum(axis=0).min()) <= 0.0:
            raise ConfigurationError(
                "source probs: every context letter needs positive marginal mass")
        object.__setattr__(self, "probs", arr)


@dataclass(frozen=True)
class ObservationChannel:
    """Sensing channel p(y | x, s), one pmf row per source/context pair.

    Rows for distinct (x, s) pairs must differ entrywise by more than
    PMF_ATOL somewhere; a channel that cannot tell two pairs apart at
    all would make every pairwise quantity downstream degenerate.
    """

    y_size: int
    rows: np.ndarray

    def __post_init__(self) -> None:
        if int(self.y_size) < 2:
            raise ConfigurationError("y_size must be at least 2")
        arr = _clean_array(self.rows, "observation rows", 3)
        if arr.shape[2] != self.y_size:
            raise ConfigurationError(
                f"observation rows: last axis {arr.shape[2]} does not match y_size {self.y_size}")
        if arr.shape[0] < 2 or arr.shape[1] < 1:
            raise ConfigurationError(
                f"observation rows: need at least 2 source and 1 context letters, got {arr.shape[:2]}")
        _check_rows_stochastic(arr, "observation rows")
        flat = arr.reshape(-1, self.y_size)
        for p in range(flat.shape[0]):
            for q in range(p + 1, flat.shape[0]):
                if float(np.max(np.abs(flat[p] - flat[q]))) <= PMF_ATOL:
                    pair_p = divmod(p, arr.shape[1])
                    pair_q = divmod(q, arr.shape[1])
                    raise ConfigurationError(
                        f"observation rows for (x, s) = {pair_p} and {pair_q} "
                        "coincide entrywise; the channel cannot distinguish them")
        object.__setattr__(self, "rows", arr)

    @property
    def x_size(self) -> int:
        return int(self.rows.shape[0])

    @property
    def s_size(self) -> int:
        return int(self.rows.shape[1])


@dataclass(frozen=True)
class TestChannel:
    """Local quantizer q(u | y) a sensor applies to its observation."""

    u_size: int
    rows: np.ndarray

    def __post_init__(self) -> None:
        if int(self.u_size) < 1:
            raise ConfigurationError("u_size must be at least 1")
        arr = _clean_array(self.rows, "test channel rows", 2)
        if arr.shape[1] != self.u_size:
            raise ConfigurationError(
                f"test channel rows: last axis {arr.shape[1]} does not match u_size {self.u_size}")
        if arr.shape[0] < 1:
            raise ConfigurationError("test channel rows: need at least one observation letter")
        _check_rows_stochastic(arr, "test channel rows")
        object.__setattr__(self, "rows", arr)

    @property
    def y_size(self) -> int:
        return int(self.rows.shape[0])


@dataclass(frozen=True)
class CodewordChannel:
    """Induced law p(u | x, s) of a quantized observation.

    Unlike ObservationChannel rows, rows here may coincide: a quantizer
    is free to destroy the distinction between two source letters.
    """

    rows: np.ndarray

    def __post_init__(self) -> None:
        arr = _clean_array(self.rows, "codeword rows", 3)
        if arr.shape[0] < 2 or arr.shape[1] < 1 or arr.shape[2] < 1:
            raise ConfigurationError(
                f"codeword rows: shape {arr.shape} is too small for an (x, s, u) channel")
        _check_rows_stochastic(arr, "codeword rows")
        object.__setattr__(self, "rows", arr)

    @property
    def x_size(self) -> int:
        return int(self.rows.shape[0])

    @property
    def s_size(self) -> int:
        return int(self.rows.shape[1])

    @property
    def u_size(self) -> int:
        return int(self.rows.shape[2])


def _check_model(source: JointSourcePmf, observation: ObservationChannel) -> None:
    if (source.x_size, source.s_size) != (observation.x_size, observation.s_size):
        raise ConfigurationError(
            f"source is ({source.x_size}, {source.s_size}) but observation rows are "
            f"({observation.x_size}, {observation.s_size})")


def induced_codeword_channel(observation: ObservationChannel,
                             test: TestChannel) -> CodewordChannel:
    """Compose sensing and quantization: p(u | x, s) = sum_y p(y | x, s) q(u | y)."""
    if test.y_size != observation.y_size:
        raise ConfigurationError(
            f"quantizer expects {test.y_size} observation letters, channel emits {observation.y_size}")
    return CodewordChannel(rows=np.einsum("xsy,yu->xsu", observation.rows, test.rows))


def conditional_mutual_information(source: JointSourcePmf,
                                   observation: ObservationChannel,
                                   test: TestChannel) -> float:
    """I(U; Y | X, S) in nats for the quantized observation U, with 0 log 0 = 0.

    This is the per-sensor rate cost of the quantizer: how much of its
    description still tells the fusion center something once the source
    and context are known.
    """
    _check_model(source, observation)
    if test.y_size != observation.y_size:
        raise ConfigurationError(
            f"quantizer expects {test.y_size} observation letters, channel emits {observation.y_size}")
    q = test.rows
    induced = np.einsum("xsy,yu->xsu", observation.rows, q)
    weight = observation.rows[:, :, :, None] * q[None, None, :, :]
    mask = weight > 0.0
    # induced >= weight entrywise, so both logs are finite wherever mask holds
    with np.errstate(divide="ignore", invalid="ignore"):
        diff = np.log(q)[None, None, :, :] - np.log(induced)[:, :, None, :]
    gain = np.zeros_like(weight)
    gain[mask] = weight[mask] * diff[mask]
    mi = float(np.einsum("xs,xsyu->", source.probs, gain))
    return mi if mi > 0.0 else 0.0


def conditional_entropy_y_given_xs(source: JointSourcePmf,
                                   observation: ObservationChannel) -> float:
    """H(Y | X, S) in nats, the ceiling for any quantizer's rate."""
    _check_model(source, observation)
    rows = observation.rows
    safe = np.where(rows > 0.0, rows, 1.0)
    ent = -(rows * np.log(safe)).sum(axis=2)
    h = float((source.probs * ent).sum())
    return h if h > 0.0 else 0.0
