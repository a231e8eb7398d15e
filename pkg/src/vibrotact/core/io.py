"""On-disk formats: event files, analog files, dataset manifests.

Event file (one event per line, non-decreasing ``t_us``; ties only across
taxels)::

    #nuskin-events v1 taxels=<n> rate_hz=<r>
    #meta duration_us=<d> fingers=<1|2> rows=<rows> cols=<cols>
    t_us,taxel,polarity

Analog file::

    #analog v1 rate_hz=<r> channel=<name>
    t_us,value

Dataset manifest (one recording per line)::

    #dataset-manifest v1 task=<task_id> provenance=<p>
    path,label_kind,label_value,task,key=value,...

Floats are written with ``repr`` so the encode -> decode round trip is
bit-exact.
"""

from __future__ import annotations

import hashlib
from pathlib import Path
from typing import Optional

import numpy as np

from ..errors import InvalidDataError
from .types import (
    AnalogSignal,
    Dataset,
    Label,
    Recording,
    SpikeTrain,
    TaxelLayout,
    default_layouts,
)

_EVENT_MAGIC = "#nuskin-events v1"
_ANALOG_MAGIC = "#analog v1"
_MANIFEST_MAGIC = "#dataset-manifest v1"


def _fmt_num(x: float) -> str:
    """Shortest exact decimal form; integers lose the trailing '.0'."""
    r = repr(float(x))
    return r[:-2] if r.endswith(".0") else r


def write_spike_train(train: SpikeTrain, path: Path) -> None:
    lines = [
        f"{_EVENT_MAGIC} taxels={train.taxel_count} rate_hz={_fmt_num(train.nominal_rate_hz)}",
        "#meta duration_us={d} fingers={f} rows={r} cols={c}".format(
            d=train.duration_us,
            f=len(train.layouts),
            r=train.layouts[0].rows,
            c=train.layouts[0].cols,
        ),
    ]
    order = np.lexsort((train.taxel, train.t_us))
    for k in order:
        lines.append(f"{train.t_us[k]},{train.taxel[k]},{train.polarity[k]:+d}")
    Path(path).write_text("\n".join(lines) + "\n")


def read_spike_train(path: Path) -> SpikeTrain:
    text = Path(path).read_text().splitlines()
    if not text or not text[0].startswith(_EVENT_MAGIC):
        raise InvalidDataError(f"{path}: not an event file")
    head = dict(tok.split("=", 1) for tok in text[0].split()[2:])
    n_taxels = int(head["taxels"])
    rate = float(head["rate_hz"])
    meta = {}
    body_start = 1
    if len(text) > 1 and text[1].startswith("#meta"):
        meta = dict(tok.split("=", 1) for tok in text[1].split()[1:])
        body_start = 2
    rows = []
    for line in text[body_start:]:
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        t, tx, pol = line.split(",")
        rows.append((int(t), int(tx), int(pol)))
    t_us = np.array([r[0] for r in rows], dtype=np.int64)
    taxel = np.array([r[1] for r in rows], dtype=np.int64)
    polarity = np.array([r[2] for r in rows], dtype=np.int8)
    duration = int(meta.get("duration_us", int(t_us.max()) + 1 if len(t_us) else 0))
    fingers = int(meta.get("fingers", 0))
    if "rows" in meta and "cols" in meta and fingers >= 1:
        per = TaxelLayout(int(meta["rows"]), int(meta["cols"]))
        if fingers == 2:
            layouts = (
                TaxelLayout(per.rows, per.cols, "left"),
                TaxelLayout(per.rows, per.cols, "right"),
            )
        else:
            layouts = (per,)
    else:
        layouts = default_layouts(n_taxels)
    if sum(l.taxel_count for l in layouts) != n_taxels:
        layouts = default_layouts(n_taxels)
    order = np.argsort(t_us, kind="stable")
    return SpikeTrain(t_us[order], taxel[order], polarity[order], duration, layouts, rate)


def write_analog(sig: AnalogSignal, path: Path) -> None:
    lines = [f"{_ANALOG_MAGIC} rate_hz={_fmt_num(sig.rate_hz)} channel={sig.channel_name}"]
    times = sig.sample_times_us()
    for t, v in zip(times, sig.samples):
        lines.append(f"{t},{repr(float(v))}")
    Path(path).write_text("\n".join(lines) + "\n")


def read_analog(path: Path) -> AnalogSignal:
    text = Path(path).read_text().splitlines()
    if not text or not text[0].startswith(_ANALOG_MAGIC):
        raise InvalidDataError(f"{path}: not an analog file")
    head = dict(tok.split("=", 1) for tok in text[0].split()[2:])
    values = []
    for line in text[1:]:
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        _, v = line.split(",")
        values.append(float(v))
    return AnalogSignal(np.array(values), float(head["rate_hz"]), head.get("channel", "PAC"))


def _meta_pairs(meta) -> str:
    parts = []
    for k in sorted(meta):
        v = str(meta[k])
        if "," in k or "=" in k or "," in v or "=" in v:
            raise InvalidDataError(f"meta entries must not contain ',' or '=': {k}={v}")
        parts.append(f"{k}={v}")
    return ",".join(parts)


def write_dataset(ds: Dataset, out_dir: Path, stem: str = "rec") -> Path:
    """Write every recording plus a manifest; returns the manifest path."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    lines = [f"{_MANIFEST_MAGIC} task={ds.task_id} provenance={ds.provenance}"]
    width = max(4, len(str(len(ds) - 1)))
    for i, rec in enumerate(ds.recordings):
        if isinstance(rec.payload, SpikeTrain):
            rel = f"{stem}_{i:0{width}d}.events"
            write_spike_train(rec.payload, out_dir / rel)
        else:
            rel = f"{stem}_{i:0{width}d}.analog"
            write_analog(rec.payload, out_dir / rel)
        label = rec.label
        meta = dict(rec.meta)
        if label.kind == "class":
            meta["class_count"] = str(label.class_count)
            value = str(label.class_id)
        else:
            value = _fmt_num(label.value)
        lines.append(f"{rel},{label.kind},{value},{ds.task_id},{_meta_pairs(meta)}")
    manifest = out_dir / "manifest.txt"
    manifest.write_text("\n".join(lines) + "\n")
    return manifest


def read_dataset(manifest_path: Path) -> Dataset:
    manifest_path = Path(manifest_path)
    text = manifest_path.read_text().splitlines()
    if not text or not text[0].startswith(_MANIFEST_MAGIC):
        raise InvalidDataError(f"{manifest_path}: not a dataset manifest")
    head = dict(tok.split("=", 1) for tok in text[0].split()[2:])
    base = manifest_path.parent
    recordings = []
    for line in text[1:]:
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        fields = line.split(",")
        rel, label_kind, value, _task = fields[:4]
        meta = dict(f.split("=", 1) for f in fields[4:] if f)
        if label_kind == "class":
            label = Label.classification(int(value), int(meta["class_count"]))
        else:
            label = Label.regression(float(value))
        path = base / rel
        if rel.endswith(".events"):
            payload = read_spike_train(path)
        else:
            payload = read_analog(path)
        recordings.append(Recording(payload, label, meta))
    return Dataset(tuple(recordings), head["task"], head.get("provenance", "imported"))


def recording_digest(rec: Recording) -> bytes:
    """Stable content digest of one recording (payload + label)."""
    h = hashlib.sha256()
    if isinstance(rec.payload, SpikeTrain):
        h.update(b"spikes")
        h.update(rec.payload.t_us.tobytes())
        h.update(rec.payload.taxel.tobytes())
        h.update(rec.payload.polarity.tobytes())
        h.update(np.int64(rec.payload.duration_us).tobytes())
    else:
        h.update(b"analog")
        h.update(rec.payload.samples.tobytes())
        h.update(np.float64(rec.payload.rate_hz).tobytes())
    h.update(repr(rec.label.value).encode())
    return h.digest()


def dataset_hash(ds: Dataset) -> str:
    """Order-sensitive hex digest over all recordings; keys protocol splits."""
    h = hashlib.sha256()
    h.update(ds.task_id.encode())
    for rec in ds.recordings:
        h.update(recording_digest(rec))
    return h.hexdigest()
