#!/usr/bin/env python3
# Copyright 2026 The spreadrec Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     https://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Materializes MovieLens-100K as data/ml-100k/u.data.

GroupLens hosts the canonical archive. When that host is unreachable, the
same 100000 ratings are taken from the RecBole wheel on PyPI, which ships
them (in original u.data order) as dataset_example/ml-100k/ml-100k.inter.
"""
import argparse
import glob
import io
import os
import subprocess
import sys
import tempfile
import urllib.request
import zipfile

GROUPLENS_URL = "https://files.grouplens.org/datasets/movielens/ml-100k.zip"
RECBOLE_MEMBER = "recbole/dataset_example/ml-100k/ml-100k.inter"


def from_grouplens():
    with urllib.request.urlopen(GROUPLENS_URL, timeout=30) as resp:
        archive = zipfile.ZipFile(io.BytesIO(resp.read()))
    return archive.read("ml-100k/u.data").decode("ascii")


def from_recbole():
    with tempfile.TemporaryDirectory() as tmp:
        subprocess.run(
            [sys.executable, "-m", "pip", "download", "--no-deps", "-q",
             "-d", tmp, "recbole==1.2.1"],
            check=True)
        wheel = zipfile.ZipFile(glob.glob(os.path.join(tmp, "*.whl"))[0])
        lines = wheel.read(RECBOLE_MEMBER).decode("ascii").splitlines()
    rows = []
    for line in lines[1:]:  # skip the typed header row
        user, item, rating, stamp = line.split("\t")
        rows.append(f"{user}\t{item}\t{int(float(rating))}\t{int(float(stamp))}\n")
    return "".join(rows)


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", default=os.path.join(
        os.path.dirname(os.path.abspath(__file__)), "..", "data", "ml-100k",
        "u.data"))
    args = parser.parse_args()

    try:
        text = from_grouplens()
    except Exception as err:  # noqa: BLE001
        print(f"grouplens unavailable ({err}); using the RecBole wheel",
              file=sys.stderr)
        text = from_recbole()

    n = text.count("\n")
    if n != 100000:
        sys.exit(f"expected 100000 ratings, got {n}")
    os.makedirs(os.path.dirname(os.path.abspath(args.out)), exist_ok=True)
    with open(args.out, "w", newline="\n") as f:
        f.write(text)
    print(f"wrote {n} ratings to {os.path.abspath(args.out)}")


if __name__ == "__main__":
    main()
