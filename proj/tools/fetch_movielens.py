#!/usr/bin/env python3
# Copyright 2026 The psdrec Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Materialize MovieLens 100K in its original on-disk layout.

Tries the GroupLens archive first. When that host is unreachable, falls back
to the copy of ML-100K shipped inside the RecBole wheel (fetched with
`pip download`), and rewrites it as `u.data` (tab separated) plus a
`movies.dat` genre file in the ML-1M `id::title::G1|G2` layout.
"""

import argparse
import io
import pathlib
import subprocess
import sys
import tempfile
import urllib.request
import zipfile

GROUPLENS_100K = "https://files.grouplens.org/datasets/movielens/ml-100k.zip"
GENRES_100K = [
    "unknown", "Action", "Adventure", "Animation", "Children's", "Comedy",
    "Crime", "Documentary", "Drama", "Fantasy", "Film-Noir", "Horror",
    "Musical", "Mystery", "Romance", "Sci-Fi", "Thriller", "War", "Western",
]


def from_grouplens(out: pathlib.Path) -> bool:
    try:
        blob = urllib.request.urlopen(GROUPLENS_100K, timeout=20).read()
    except OSError:
        return False
    with zipfile.ZipFile(io.BytesIO(blob)) as z:
        (out / "u.data").write_bytes(z.read("ml-100k/u.data"))
        items = z.read("ml-100k/u.item").decode("latin-1").splitlines()
    rows = []
    for line in items:
        f = line.split("|")
        if len(f) < 24:
            continue
        genres = [g for g, flag in zip(GENRES_100K, f[5:24]) if flag == "1"]
        rows.append(f"{f[0]}::{f[1]}::{'|'.join(genres)}")
    (out / "movies.dat").write_text("\n".join(rows) + "\n", encoding="latin-1")
    return True


def from_recbole(out: pathlib.Path) -> bool:
    with tempfile.TemporaryDirectory() as tmp:
        cmd = [sys.executable, "-m", "pip", "download", "--no-deps", "-q",
               "-d", tmp, "recbole==1.2.1"]
        if subprocess.call(cmd) != 0:
            return False
        wheel = next(pathlib.Path(tmp).glob("recbole-*.whl"))
        with zipfile.ZipFile(wheel) as z:
            inter = z.read("recbole/dataset_example/ml-100k/ml-100k.inter")
            item = z.read("recbole/dataset_example/ml-100k/ml-100k.item")
    lines = inter.decode("latin-1").splitlines()[1:]
    (out / "u.data").write_text("\n".join(lines) + "\n", encoding="latin-1")
    rows = []
    for line in item.decode("latin-1").splitlines()[1:]:
        f = line.split("\t")
        if len(f) < 4:
            continue
        genres = [g for g in f[3].split(" ") if g]
        rows.append(f"{f[0]}::{f[1]}::{'|'.join(genres)}")
    (out / "movies.dat").write_text("\n".join(rows) + "\n", encoding="latin-1")
    return True


def main() -> int:
    ap = argparse.ArgumentParser()
    ap.add_argument("--out", default=str(pathlib.Path(__file__).resolve().parent.parent / "data" / "ml-100k"))
    args = ap.parse_args()
    out = pathlib.Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    if from_grouplens(out) or from_recbole(out):
        n = sum(1 for _ in open(out / "u.data", encoding="latin-1"))
        print(f"wrote {out / 'u.data'} ({n} ratings) and {out / 'movies.dat'}")
        return 0
    print("could not obtain MovieLens 100K", file=sys.stderr)
    return 1


if __name__ == "__main__":
    sys.exit(main())
