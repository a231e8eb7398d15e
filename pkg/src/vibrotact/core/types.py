"""Canonical sensor data types.

Two payload kinds flow through the toolkit:

* :class:`SpikeTrain` -- asynchronous per-taxel +/- events with integer
  microsecond timestamps (event skin style, 40-taxel lattice per finger,
  4 kHz nominal rate).
* :class:`AnalogSignal` -- a uniformly sampled scalar stream (hydrophone
  pressure channel style).

Timestamps are integer microseconds since recording start: exact at the
4 kHz preset (250 us period) and immune to float drift.  All containers
are immutable after construction; numpy buffers are marked read-only so
they are safe to share across concurrent workers.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator, Mapping, Optional, Sequence, Union

import numpy as np

from ..errors import InvalidDataError

NUSKIN_RATE_HZ = 4000.0
NUSKIN_TAXELS = 40


def min_gap_us(rate_hz: float) -> int:
    """Smallest admissible per-taxel inter-event gap in whole microseconds.

    floor() so that rates with a non-integral period (e.g. 3 kHz) admit
    rounded timestamp grids.
    """
    return int(np.floor(1e6 / rate_hz))


@dataclass(frozen=True)
class TaxelLayout:
    """Lattice arrangement of taxels on one finger.

    ``rows`` runs along the grasped object's axis, ``cols`` across it.
    """

    rows: int
    cols: int
    finger_id: str = "f0"

    def __post_init__(self):
        if self.rows < 1 or self.cols < 1:
            raise InvalidDataError("layout dimensions must be positive")

    @property
    def taxel_count(self) -> int:
        return self.rows * self.cols


def nuskin_layout(finger_id: str = "left") -> TaxelLayout:
    """40-taxel lattice preset (8 rows along the object x 5 across)."""
    return TaxelLayout(rows=8, cols=5, finger_id=finger_id)


def two_finger_layouts() -> tuple[TaxelLayout, TaxelLayout]:
    """Two-finger preset: taxels 0-39 on the left finger, 40-79 right."""
    return (nuskin_layout("left"), nuskin_layout("right"))


def default_layouts(n_taxels: int) -> tuple[TaxelLayout, ...]:
    """Layout guess for a bare taxel count (40 -> lattice, 80 -> 2F)."""
    if n_taxels == NUSKIN_TAXELS:
        return (nuskin_layout(),)
    if n_taxels == 2 * NUSKIN_TAXELS:
        return two_finger_layouts()
    return (TaxelLayout(rows=1, cols=n_taxels, finger_id="f0"),)


@dataclass(frozen=True)
class SpikeEvent:
    """A single signed taxel event."""

    taxel: int
    t_us: int
    polarity: int

    def __post_init__(self):
        if self.polarity not in (-1, 1):
            raise InvalidDataError(f"polarity must be +1/-1, got {self.polarity}")
        if self.t_us < 0:
            raise InvalidDataError("timestamps must be non-negative")


def _frozen_array(values, dtype) -> np.ndarray:
    arr = np.ascontiguousarray(values, dtype=dtype)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True)
class SpikeTrain:
    """Time-ordered signed events over one or two taxel lattices.

    Invariants enforced at construction:

    * timestamps sorted non-decreasing, all within [0, duration_us),
    * taxel indices within the combined layout range,
    * polarities in {+1, -1},
    * per-taxel consecutive spacing >= floor(1e6 / nominal_rate_hz) us.
    """

    t_us: np.ndarray
    taxel: np.ndarray
    polarity: np.ndarray
    duration_us: int
    layouts: tuple[TaxelLayout, ...] = field(default_factory=lambda: (nuskin_layout(),))
    nominal_rate_hz: float = NUSKIN_RATE_HZ

    def __post_init__(self):
        object.__setattr__(self, "t_us", _frozen_array(self.t_us, np.int64))
        object.__setattr__(self, "taxel", _frozen_array(self.taxel, np.int64))
        object.__setattr__(self, "polarity", _frozen_array(self.polarity, np.int8))
        if not (len(self.t_us) == len(self.taxel) == len(self.polarity)):
            raise InvalidDataError("event arrays must have equal length")
        if self.nominal_rate_hz <= 0:
            raise InvalidDataError("nominal_rate_hz must be positive")
        if self.duration_us < 0:
            raise InvalidDataError("duration_us must be non-negative")
        n = len(self.t_us)
        if n == 0:
            return
        if self.t_us[0] < 0:
            raise InvalidDataError("timestamps must be non-negative")
        if np.any(np.diff(self.t_us) < 0):
            raise InvalidDataError("event timestamps must be sorted non-decreasing")
        if int(self.t_us[-1]) >= self.duration_us:
            raise InvalidDataError("event timestamps must lie within [0, duration_us)")
        if self.taxel.min() < 0 or self.taxel.max() >= self.taxel_count:
            raise InvalidDataError("taxel index out of range for layout")
        if not np.all(np.isin(self.polarity, (-1, 1))):
            raise InvalidDataError("polarities must be +1/-1")
        gap = min_gap_us(self.nominal_rate_hz)
        order = np.lexsort((self.t_us, self.taxel))
        same_taxel = self.taxel[order][1:] == self.taxel[order][:-1]
        dt = np.diff(self.t_us[order])
        if np.any(same_taxel & (dt < gap)):
            raise InvalidDataError(
                f"per-taxel event spacing below {gap} us (rate bound {self.nominal_rate_hz} Hz)"
            )

    @property
    def taxel_count(self) -> int:
        return sum(lay.taxel_count for lay in self.layouts)

    @property
    def n_events(self) -> int:
        return len(self.t_us)

    def events(self) -> Iterator[SpikeEvent]:
        for k in range(self.n_events):
            yield SpikeEvent(int(self.taxel[k]), int(self.t_us[k]), int(self.polarity[k]))

    @classmethod
    def from_events(
        cls,
        events: Sequence[SpikeEvent],
        duration_us: int,
        layouts: Optional[tuple[TaxelLayout, ...]] = None,
        nominal_rate_hz: float = NUSKIN_RATE_HZ,
    ) -> "SpikeTrain":
        t = np.array([e.t_us for e in events], dtype=np.int64)
        tx = np.array([e.taxel for e in events], dtype=np.int64)
        pol = np.array([e.polarity for e in events], dtype=np.int8)
        if layouts is None:
            n_taxels = int(tx.max()) + 1 if len(tx) else NUSKIN_TAXELS
            layouts = default_layouts(n_taxels)
        return cls(t, tx, pol, duration_us, layouts, nominal_rate_hz)

    def taxel_times(self, taxel: int) -> np.ndarray:
        """Event times of one taxel, in order."""
        return self.t_us[self.taxel == taxel]


@dataclass(frozen=True)
class AnalogSignal:
    """Uniformly sampled scalar stream, sample i at time i / rate_hz."""

    samples: np.ndarray
    rate_hz: float
    channel_name: str = "PAC"

    def __post_init__(self):
        object.__setattr__(self, "samples", _frozen_array(self.samples, np.float64))
        if self.rate_hz <= 0:
            raise InvalidDataError("rate_hz must be positive")
        if self.samples.ndim != 1:
            raise InvalidDataError("samples must be one-dimensional")

    @property
    def n_samples(self) -> int:
        return len(self.samples)

    @property
    def duration_us(self) -> int:
        return int(round(self.n_samples * 1e6 / self.rate_hz))

    def sample_times_us(self) -> np.ndarray:
        return np.round(np.arange(self.n_samples) * 1e6 / self.rate_hz).astype(np.int64)


Payload = Union[SpikeTrain, AnalogSignal]

REGRESSION = "regression"
CLASSIFICATION = "class"


@dataclass(frozen=True)
class Label:
    """Supervision target: a position in cm along the tool, or a class id."""

    kind: str
    value: float
    class_count: Optional[int] = None

    def __post_init__(self):
        if self.kind not in (REGRESSION, CLASSIFICATION):
            raise InvalidDataError(f"unknown label kind {self.kind!r}")
        if self.kind == CLASSIFICATION:
            if self.class_count is None or self.class_count < 2:
                raise InvalidDataError("class labels need class_count >= 2")
            if not float(self.value).is_integer():
                raise InvalidDataError("class id must be integral")
            if not 0 <= int(self.value) < self.class_count:
                raise InvalidDataError("class id out of range")
        else:
            if self.value < 0:
                raise InvalidDataError("regression position must be non-negative (cm)")

    @classmethod
    def regression(cls, position_cm: float) -> "Label":
        return cls(REGRESSION, float(position_cm))

    @classmethod
    def classification(cls, class_id: int, class_count: int) -> "Label":
        return cls(CLASSIFICATION, float(class_id), class_count)

    @property
    def class_id(self) -> int:
        if self.kind != CLASSIFICATION:
            raise InvalidDataError("not a class label")
        return int(self.value)


@dataclass(frozen=True)
class Recording:
    """One labeled sensor capture plus free-form string metadata."""

    payload: Payload
    label: Label
    meta: Mapping[str, str] = field(default_factory=dict)

    def __post_init__(self):
        if not isinstance(self.payload, (SpikeTrain, AnalogSignal)):
            raise InvalidDataError("payload must be a SpikeTrain or AnalogSignal")

    @property
    def duration_us(self) -> int:
        return self.payload.duration_us

    def with_meta(self, **extra: str) -> "Recording":
        merged = dict(self.meta)
        merged.update({k: str(v) for k, v in extra.items()})
        return Recording(self.payload, self.label, merged)


TASK_IDS = ("tap-localization", "grasp-stability", "food-id")


@dataclass(frozen=True)
class Dataset:
    """Homogeneous collection of recordings for one task."""

    recordings: tuple[Recording, ...]
    task_id: str
    provenance: str = "synthetic"

    def __post_init__(self):
        object.__setattr__(self, "recordings", tuple(self.recordings))
        if len(self.recordings) == 0:
            raise InvalidDataError("dataset must contain at least one recording")
        if self.task_id not in TASK_IDS:
            raise InvalidDataError(f"unknown task_id {self.task_id!r}")
        kinds = {type(r.payload) for r in self.recordings}
        if len(kinds) != 1:
            raise InvalidDataError("all recordings must share one payload kind")
        label_kinds = {r.label.kind for r in self.recordings}
        if len(label_kinds) != 1:
            raise InvalidDataError("all recordings must share one label kind")

    def __len__(self) -> int:
        return len(self.recordings)

    @property
    def label_kind(self) -> str:
        return self.recordings[0].label.kind

    @property
    def payload_kind(self) -> str:
        return "spikes" if isinstance(self.recordings[0].payload, SpikeTrain) else "analog"

    def labels(self) -> np.ndarray:
        return np.array([r.label.value for r in self.recordings], dtype=np.float64)

    def subset(self, indices) -> "Dataset":
        return Dataset(
            tuple(self.recordings[int(i)] for i in indices), self.task_id, self.provenance
        )
