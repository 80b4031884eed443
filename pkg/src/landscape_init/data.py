"""Dataset loading, PCA reduction, standardization, synthetic benchmark
generation and stratified splitting.

Feature matrices are N_samp x N; labels are dense integers assigned by
sorted class-directory name.  All covariance and variance computations
use the population (1/N) convention so that PCA and standardization are
internally consistent.
"""

from __future__ import annotations

import os
from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class LabeledDataset:
    features: np.ndarray          # N_samp x N, float
    labels: np.ndarray            # N_samp ints in [0, class_count)
    class_count: int
    preprocessing_log: tuple = ()

    def __post_init__(self):
        x = self.features
        y = self.labels
        if x.ndim != 2 or y.ndim != 1 or len(x) != len(y):
            raise ValueError("features must be 2-d and aligned with labels")
        if y.min(initial=0) < 0 or (len(y) and y.max() >= self.class_count):
            raise ValueError("labels out of range")
        counts = np.bincount(y, minlength=self.class_count)
        if np.any(counts == 0):
            raise ValueError("every class must be non-empty")

    @property
    def per_feature_range(self) -> np.ndarray:
        """N x 2 array of per-feature (min, max)."""
        return np.stack([self.features.min(axis=0), self.features.max(axis=0)], axis=1)

    def class_samples(self, label: int) -> np.ndarray:
        return self.features[self.labels == label]

    def logged(self, entry: str) -> tuple:
        return self.preprocessing_log + (entry,)


@dataclass(frozen=True)
class PcaBasis:
    mean_vector: np.ndarray
    components: np.ndarray        # k x N, orthonormal rows
    eigenvalues: np.ndarray       # k values, non-increasing

    def __post_init__(self):
        gram = self.components @ self.components.T
        if np.max(np.abs(gram - np.eye(len(self.components)))) > 1e-10:
            raise ValueError("components must be orthonormal")
        if np.any(np.diff(self.eigenvalues) > 1e-12):
            raise ValueError("eigenvalues must be non-increasing")


# ---------------------------------------------------------------------------
# Loading


def _read_pgm(path: str) -> np.ndarray:
    """P2 (ASCII) or P5 (binary) grayscale image as a flat float vector."""
    with open(path, "rb") as fh:
        data = fh.read()

    def fail(msg):
        raise ValueError(f"{path}: {msg}")

    # Header tokens may be separated by whitespace and '#' comments.
    tokens = []
    pos = 0
    while len(tokens) < 4:
        while pos < len(data) and data[pos:pos + 1].isspace():
            pos += 1
        if pos >= len(data):
            fail("truncated header")
        if data[pos:pos + 1] == b"#":
            eol = data.find(b"\n", pos)
            pos = len(data) if eol < 0 else eol + 1
            continue
        start = pos
        while pos < len(data) and not data[pos:pos + 1].isspace():
            pos += 1
        tokens.append(data[start:pos])
    magic, w_s, h_s, maxval_s = tokens
    if magic not in (b"P2", b"P5"):
        fail("not a P2/P5 PGM file")
    try:
        width, height, maxval = int(w_s), int(h_s), int(maxval_s)
    except ValueError:
        fail("bad header numbers")
    if width <= 0 or height <= 0 or maxval <= 0:
        fail("bad header numbers")
    count = width * height
    if magic == b"P2":
        vals = np.array(data[pos:].split(), dtype=float)
        if len(vals) != count:
            fail("pixel count mismatch")
        return vals
    pos += 1  # single whitespace after maxval
    dtype = np.dtype(">u2") if maxval > 255 else np.uint8
    raw = np.frombuffer(data, dtype=dtype, count=count, offset=pos)
    if len(raw) != count:
        fail("pixel count mismatch")
    return raw.astype(float)


def _read_sample_csv(path: str) -> np.ndarray:
    vals = np.loadtxt(path, delimiter=",", dtype=float)
    return np.atleast_1d(vals).ravel()


def load_directory(path: str, fmt: str = "pgm") -> LabeledDataset:
    """One subdirectory per class; labels follow sorted directory names."""
    if fmt not in ("pgm", "csv"):
        raise ValueError("format must be pgm or csv")
    classes = sorted(d for d in os.listdir(path)
                     if os.path.isdir(os.path.join(path, d)))
    if not classes:
        raise ValueError(f"{path}: no class subdirectories")
    rows, labels = [], []
    width = None
    for ci, cname in enumerate(classes):
        cdir = os.path.join(path, cname)
        files = sorted(f for f in os.listdir(cdir)
                       if os.path.isfile(os.path.join(cdir, f)))
        if not files:
            raise ValueError(f"{cdir}: empty class directory")
        for fname in files:
            fpath = os.path.join(cdir, fname)
            try:
                vec = _read_pgm(fpath) if fmt == "pgm" else _read_sample_csv(fpath)
            except (ValueError, OSError) as exc:
                raise ValueError(f"failed to read {fpath}: {exc}") from exc
            if width is None:
                width = len(vec)
            elif len(vec) != width:
                raise ValueError(f"{fpath}: size {len(vec)} does not match {width}")
            rows.append(vec)
            labels.append(ci)
    return LabeledDataset(features=np.array(rows), labels=np.array(labels),
                          class_count=len(classes),
                          preprocessing_log=(f"load({fmt}, classes={len(classes)})",))


def dataset_to_csv(ds: LabeledDataset, path: str) -> None:
    """First column label, remaining columns features."""
    with open(path, "w") as fh:
        for lab, row in zip(ds.labels, ds.features):
            fh.write(",".join([str(int(lab))] + [f"{v:.17g}" for v in row]) + "\n")


def dataset_from_csv(path: str) -> LabeledDataset:
    data = np.loadtxt(path, delimiter=",", dtype=float, ndmin=2)
    labels = data[:, 0].astype(int)
    return LabeledDataset(features=data[:, 1:], labels=labels,
                          class_count=int(labels.max()) + 1,
                          preprocessing_log=("load(csv-table)",))


# ---------------------------------------------------------------------------
# Transforms


def fit_pca(ds: LabeledDataset, k: int) -> PcaBasis:
    """Top-k eigenvectors of the population covariance.

    Uses the Gram-matrix route when samples < dimensions (the usual
    regime for flattened images), the direct covariance otherwise.
    """
    x = ds.features
    m, n = x.shape
    if not 1 <= k <= min(m, n):
        raise ValueError("k out of range")
    mean = x.mean(axis=0)
    xc = x - mean
    if m < n:
        gram = (xc @ xc.T) / m
        vals, vecs = np.linalg.eigh(gram)
        vals, vecs = vals[::-1], vecs[:, ::-1]
        vals = np.maximum(vals, 0.0)
        comps = []
        for i in range(k):
            v = xc.T @ vecs[:, i]
            norm = np.linalg.norm(v)
            if norm < 1e-12:
                raise ValueError("rank of the data too small for requested k")
            comps.append(v / norm)
        components = np.array(comps)
        eigenvalues = vals[:k]
    else:
        cov = (xc.T @ xc) / m
        vals, vecs = np.linalg.eigh(cov)
        components = vecs[:, ::-1][:, :k].T
        eigenvalues = np.maximum(vals[::-1][:k], 0.0)
    return PcaBasis(mean_vector=mean, components=components, eigenvalues=eigenvalues)


def project(basis: PcaBasis, ds: LabeledDataset) -> LabeledDataset:
    z = (ds.features - basis.mean_vector) @ basis.components.T
    return LabeledDataset(features=z, labels=ds.labels, class_count=ds.class_count,
                          preprocessing_log=ds.logged(f"pca(k={len(basis.components)})"))


def standardize(ds: LabeledDataset, mean: np.ndarray = None,
                std: np.ndarray = None) -> LabeledDataset:
    """Center and scale to unit population variance per feature.

    Zero-variance features are centered only and recorded in the log.
    Pass `mean`/`std` to apply a transform fitted elsewhere (train
    statistics onto a test set).
    """
    x = ds.features
    if mean is None:
        mean = x.mean(axis=0)
    if std is None:
        std = x.std(axis=0)
    dead = np.flatnonzero(std <= 1e-12)
    safe = np.where(std > 1e-12, std, 1.0)
    z = (x - mean) / safe
    entry = "standardize" if len(dead) == 0 else f"standardize(zero_var={dead.tolist()})"
    return LabeledDataset(features=z, labels=ds.labels, class_count=ds.class_count,
                          preprocessing_log=ds.logged(entry))


def standardizer_stats(ds: LabeledDataset) -> tuple[np.ndarray, np.ndarray]:
    return ds.features.mean(axis=0), ds.features.std(axis=0)


# ---------------------------------------------------------------------------
# Synthetic benchmark and splitting


def synth_generate(class_count: int, dim: int, per_class: int,
                   separation: float, seed: int) -> LabeledDataset:
    """Gaussian blobs with unit covariance, class means on a sphere of
    radius `separation`."""
    if class_count < 1 or dim < 1 or per_class < 1 or separation < 0:
        raise ValueError("all sizes must be positive and separation >= 0")
    rng = np.random.default_rng(seed)
    dirs = rng.standard_normal((class_count, dim))
    dirs /= np.linalg.norm(dirs, axis=1, keepdims=True)
    means = separation * dirs
    feats = np.vstack([means[c] + rng.standard_normal((per_class, dim))
                       for c in range(class_count)])
    labels = np.repeat(np.arange(class_count), per_class)
    return LabeledDataset(features=feats, labels=labels, class_count=class_count,
                          preprocessing_log=(f"synth(classes={class_count}, dim={dim}, "
                                             f"per_class={per_class}, sep={separation})",))


def split(ds: LabeledDataset, train_fraction: float,
          seed: int) -> tuple[LabeledDataset, LabeledDataset]:
    """Stratified split; every class keeps at least one sample per side."""
    if not 0.0 < train_fraction < 1.0:
        raise ValueError("train_fraction must be in (0, 1)")
    rng = np.random.default_rng(seed)
    train_idx, test_idx = [], []
    for c in range(ds.class_count):
        idx = np.flatnonzero(ds.labels == c)
        if len(idx) < 2:
            raise ValueError(f"class {c} too small to stratify")
        n_train = int(round(train_fraction * len(idx)))
        if n_train < 1 or n_train >= len(idx):
            raise ValueError(f"class {c} too small to stratify at fraction {train_fraction}")
        perm = rng.permutation(idx)
        train_idx.extend(perm[:n_train])
        test_idx.extend(perm[n_train:])
    train_idx = np.array(sorted(train_idx))
    test_idx = np.array(sorted(test_idx))

    def take(indices, tag):
        return LabeledDataset(features=ds.features[indices], labels=ds.labels[indices],
                              class_count=ds.class_count,
                              preprocessing_log=ds.logged(f"split({tag}, f={train_fraction})"))

    return take(train_idx, "train"), take(test_idx, "test")


def restrict_classes(ds: LabeledDataset, keep: int) -> LabeledDataset:
    """First `keep` classes only, labels unchanged."""
    if not 1 <= keep <= ds.class_count:
        raise ValueError("keep out of range")
    mask = ds.labels < keep
    return LabeledDataset(features=ds.features[mask], labels=ds.labels[mask],
                          class_count=keep,
                          preprocessing_log=ds.logged(f"restrict(classes={keep})"))
