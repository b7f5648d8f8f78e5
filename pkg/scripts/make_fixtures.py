#!/usr/bin/env python3
"""Regenerate the shipped fixture JSON files from their transcription data."""

import pathlib
import sys

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parents[1] / "src"))

from facposet.fixtures import regenerate_data_files  # noqa: E402

if __name__ == "__main__":
    out = pathlib.Path(__file__).resolve().parents[1] / "src" / "facposet" / "data"
    for path in regenerate_data_files(out):
        print(path)
