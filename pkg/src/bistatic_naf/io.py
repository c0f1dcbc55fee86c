"""Serialization: ResponseMap CSV/binary formats, truth lists, results CSV.

Map CSV layout: optional leading comment lines (# ...), then a header
row holding the RX grid, then one row per TX grid value: the TX
coordinate first, followed by one complex cell per RX coordinate
formatted like ``1.5-0.25j``. The binary format is little-endian: two
u32 grid lengths, the two f64 grids, then the complex values row-major
as f64 (re, im) pairs.

All floats are written with ``repr`` so parsing them back yields the
identical double; results CSV files are therefore byte-stable for
identical inputs.
"""

import struct

import numpy as np

from . import __version__
from .errors import ConfigError
from .signal import ResponseMap

_MAGIC_COMMENT = f"# bistatic-naf {__version__}"

RESULTS_HEADER = "sweep_value,method,p_md,r_fa,rmse_naf,n_iter,n_rmse_excluded"


def _format_complex(z):
    re, im = float(z.real), float(z.imag)
    im_s = repr(im)
    if not im_s.startswith("-"):
        im_s = "+" + im_s
    return f"{re!r}{im_s}j"


def write_map_csv(rmap, path):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(_MAGIC_COMMENT + "\n")
        fh.write("," + ",".join(repr(float(v)) for v in rmap.f_rx_grid) + "\n")
        for i, ft in enumerate(rmap.f_tx_grid):
            cells = ",".join(_format_complex(z) for z in rmap.values[i])
            fh.write(f"{float(ft)!r},{cells}\n")


def read_map_csv(path):
    with open(path, "r", encoding="utf-8") as fh:
        lines = [ln.rstrip("\n") for ln in fh if ln.strip() and not ln.startswith("#")]
    if not lines:
        raise ConfigError(f"{path}: empty map CSV")
    header = lines[0].split(",")
    if header[0] != "":
        raise ConfigError(f"{path}: map CSV must start with an empty header cell")
    f_rx = np.array([float(v) for v in header[1:]])
    f_tx = []
    rows = []
    for ln in lines[1:]:
        cells = ln.split(",")
        if len(cells) != f_rx.size + 1:
            raise ConfigError(f"{path}: row has {len(cells) - 1} cells, expected {f_rx.size}")
        f_tx.append(float(cells[0]))
        rows.append([complex(c) for c in cells[1:]])
    return ResponseMap(np.array(f_tx), f_rx, np.array(rows, dtype=complex))


def write_map_binary(rmap, path):
    with open(path, "wb") as fh:
        fh.write(struct.pack("<II", rmap.f_tx_grid.size, rmap.f_rx_grid.size))
        fh.write(rmap.f_tx_grid.astype("<f8").tobytes())
        fh.write(rmap.f_rx_grid.astype("<f8").tobytes())
        pairs = np.empty(rmap.values.shape + (2,), dtype="<f8")
        pairs[..., 0] = rmap.values.real
        pairs[..., 1] = rmap.values.imag
        fh.write(pairs.tobytes())


def read_map_binary(path):
    with open(path, "rb") as fh:
        head = fh.read(8)
        if len(head) != 8:
            raise ConfigError(f"{path}: truncated map header")
        nt, nr = struct.unpack("<II", head)
        grids = np.frombuffer(fh.read(8 * (nt + nr)), dtype="<f8")
        if grids.size != nt + nr:
            raise ConfigError(f"{path}: truncated grid data")
        flat = np.frombuffer(fh.read(16 * nt * nr), dtype="<f8")
        if flat.size != 2 * nt * nr:
            raise ConfigError(f"{path}: truncated map values")
    pairs = flat.reshape(nt, nr, 2)
    return ResponseMap(grids[:nt], grids[nt:], pairs[..., 0] + 1j * pairs[..., 1])


def write_map(rmap, path):
    """Dispatch on extension: .csv is text, anything else is binary."""
    if str(path).lower().endswith(".csv"):
        write_map_csv(rmap, path)
    else:
        write_map_binary(rmap, path)


def read_map(path):
    if str(path).lower().endswith(".csv"):
        return read_map_csv(path)
    return read_map_binary(path)


def write_truths_csv(truths, path):
    """One ``f_tx,f_rx`` line per truth."""
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(_MAGIC_COMMENT + "\n")
        fh.write("f_tx,f_rx\n")
        for ft, fr in truths:
            fh.write(f"{float(ft)!r},{float(fr)!r}\n")


def read_truths_csv(path):
    truths = []
    with open(path, "r", encoding="utf-8") as fh:
        for ln in fh:
            ln = ln.strip()
            if not ln or ln.startswith("#") or ln.startswith("f_tx"):
                continue
            parts = ln.split(",")
            if len(parts) != 2:
                raise ConfigError(f"{path}: truth rows need exactly f_tx,f_rx")
            truths.append((float(parts[0]), float(parts[1])))
    return truths


def format_results_csv(sweep_results):
    """Render sweep results as the canonical CSV text.

    One row per (sweep value, method); float fields use repr so the
    output is byte-identical for identical inputs.
    """
    lines = [_MAGIC_COMMENT, RESULTS_HEADER]
    for res in sweep_results:
        for method, met in res.per_method.items():
            lines.append(
                f"{float(res.sweep_value)!r},{method},{met.p_md!r},{met.r_fa!r},"
                f"{met.rmse_naf!r},{met.n_iterations},{met.n_rmse_excluded}"
            )
    return "\n".join(lines) + "\n"


def write_results_csv(sweep_results, path):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(format_results_csv(sweep_results))
