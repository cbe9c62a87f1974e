"""Command-line front end: plot file (+ CSV) in, rendered plot out.

Exit codes: 0 success, 2 invalid input, 3 pipeline failure.
"""

from __future__ import annotations

import argparse
import contextlib
import csv
import json
import logging
import math
import sys
import warnings
from importlib import resources
from pathlib import Path

import jsonschema

from .backends import backend_names, get_backend
from .errors import ArgumentError, PlotError
from .model import new_plot, plot_mut
from .pipeline import render
from .values import DataColumn

log = logging.getLogger("plotpipe")

EXIT_OK, EXIT_INPUT, EXIT_PIPELINE = 0, 2, 3


class InputError(Exception):
    """Problem with the user's files; reported with exit code 2."""


def load_schema(name: str) -> dict:
    return json.loads(resources.files("plotpipe.schemas").joinpath(name).read_text(encoding="utf-8"))


def load_csv(path, columns) -> dict[str, DataColumn]:
    """Read named float columns from a CSV file with a header row.

    Blank cells become NaN (missing); anything else unparseable is an error
    naming the row and column.
    """
    try:
        fh = open(path, newline="", encoding="utf-8")
    except OSError as e:
        raise InputError(f"cannot read CSV file {path}: {e.strerror}") from e
    with fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None:
            raise InputError(f"{path}: empty CSV file, expected a header row")
        header = [h.strip() for h in header]
        missing = [c for c in columns if c not in header]
        if missing:
            raise InputError(f"{path}: no column named {', '.join(map(repr, missing))}; "
                             f"available: {', '.join(header)}")
        idx = {c: header.index(c) for c in columns}
        values: dict[str, list] = {c: [] for c in columns}
        for lineno, row in enumerate(reader, start=2):
            if not row:
                continue
            for c, i in idx.items():
                cell = row[i].strip() if i < len(row) else ""
                if cell == "":
                    values[c].append(math.nan)
                    continue
                try:
                    values[c].append(float(cell))
                except ValueError:
                    raise InputError(f"{path}: line {lineno}, column {c!r}: cannot parse {cell!r} as a number") \
                        from None
    return {c: DataColumn(v, label=c) for c, v in values.items()}


def _parse_size(text: str) -> tuple[float, float]:
    try:
        w, h = text.lower().split("x")
        size = float(w), float(h)
    except ValueError:
        raise argparse.ArgumentTypeError(f"size must look like 600x400, got {text!r}") from None
    if not (size[0] > 0 and size[1] > 0):
        raise argparse.ArgumentTypeError(f"size must be positive, got {text!r}")
    return size


def read_plotfile(path: Path) -> dict:
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise InputError(f"cannot read input file {path}: {e.strerror}") from e
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise InputError(f"{path}: invalid JSON at line {e.lineno}, column {e.colno}: {e.msg}") from e
    validator = jsonschema.Draft202012Validator(load_schema("plotfile-v1.json"))
    errors = sorted(validator.iter_errors(doc), key=lambda e: list(e.absolute_path))
    if errors:
        err = errors[0]
        where = "/".join(str(p) for p in err.absolute_path) or "(top level)"
        raise InputError(f"{path}: invalid plot file at {where}: {err.message}")
    return doc


def _columns_used(doc) -> list[str]:
    names = []
    for s in doc["series"]:
        for key in ("x", "y"):
            ref = s.get(key)
            if isinstance(ref, dict) and ref["column"] not in names:
                names.append(ref["column"])
    return names


def _data(ref, table, where):
    if isinstance(ref, dict):
        if table is None:
            raise InputError(f"{where} refers to column {ref['column']!r} but the plot file names no csv")
        return table[ref["column"]]
    return [math.nan if v is None else v for v in ref]


def build_plot(doc: dict, base_dir: Path):
    """Construct the (unresolved) plot described by a validated plot file."""
    table = None
    cols = _columns_used(doc)
    if cols:
        if "csv" not in doc:
            raise InputError("series refer to CSV columns but the plot file names no csv")
        table = load_csv(base_dir / doc["csv"], cols)
    kwargs = dict(doc.get("attrs", {}))
    if "layout" in doc:
        kwargs["layout"] = doc["layout"]
    spec = new_plot((), kwargs)
    for i, s in enumerate(doc["series"]):
        where = f"series/{i}"
        sk = dict(s.get("attrs", {}))
        if "seriestype" in s:
            sk["seriestype"] = s["seriestype"]
        if "subplot" in s:
            sk["subplot"] = s["subplot"]
        if "z" in s:
            args = [[[math.nan if v is None else v for v in row] for row in s["z"]]]
            if "x" in s and "y" in s:
                args = [_data(s["x"], table, where), _data(s["y"], table, where)] + args
            sk.setdefault("seriestype", "heatmap")
        else:
            args = [_data(s["y"], table, where)]
            if "x" in s:
                args.insert(0, _data(s["x"], table, where))
        try:
            plot_mut(spec, args, sk)
        except ArgumentError as e:
            raise InputError(f"{where}: {e}") from e
    return spec


def make_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="plotpipe", description="Render a JSON plot description.")
    p.add_argument("--input", required=True, type=Path, help="plot file (JSON)")
    p.add_argument("--backend", default="svg", choices=backend_names())
    p.add_argument("--output", type=Path, help="output file (default: stdout)")
    p.add_argument("--size", type=_parse_size, default=(600.0, 400.0), metavar="WxH",
                   help="canvas size in points (default 600x400)")
    p.add_argument("--cols", type=int, default=80, help="terminal columns for the unicode backend")
    p.add_argument("--rows", type=int, default=24, help="terminal rows for the unicode backend")
    p.add_argument("--color", action="store_true", help="ANSI colors in unicode output")
    p.add_argument("--verbose", action="store_true")
    return p


def run_cli(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout if stdout is not None else sys.stdout
    stderr = stderr if stderr is not None else sys.stderr
    try:
        with contextlib.redirect_stderr(stderr), contextlib.redirect_stdout(stdout):
            args = make_parser().parse_args(argv)
    except SystemExit as e:
        return EXIT_INPUT if e.code else EXIT_OK

    logging.basicConfig(stream=stderr, level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="plotpipe: %(message)s", force=True)
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        try:
            doc = read_plotfile(args.input)
            spec = build_plot(doc, args.input.parent)
            log.debug("built plot with %d series in %d subplots", len(spec.series), len(spec.subplots))
            options = {}
            if args.backend == "unicode":
                options = {"cols": args.cols, "rows": args.rows, "color": args.color}
            text = render(spec, get_backend(args.backend), size=args.size, **options)
        except InputError as e:
            stderr.write(f"plotpipe: error: {e}\n")
            return EXIT_INPUT
        except PlotError as e:
            stderr.write(f"plotpipe: pipeline error: {type(e).__name__}: {e}\n")
            return EXIT_PIPELINE
        finally:
            for w in caught:
                stderr.write(f"plotpipe: warning: {w.message}\n")

    if args.output is None:
        stdout.write(text)
    else:
        try:
            args.output.write_text(text, encoding="utf-8", newline="\n")
        except OSError as e:
            stderr.write(f"plotpipe: error: cannot write {args.output}: {e.strerror}\n")
            return EXIT_INPUT
        log.debug("wrote %s", args.output)
    return EXIT_OK


def main():
    sys.exit(run_cli())


if __name__ == "__main__":
    main()
