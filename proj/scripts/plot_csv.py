# Copyright 2026 The hybridmap Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Plot a CSV written by `hybridmap fig1|simulate|sample`: every column against the first."""

import argparse
import csv

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("csv", help="input CSV with a header row")
    parser.add_argument("output", help="output image (png, pdf, svg)")
    parser.add_argument("--columns", nargs="*", help="subset of columns to plot")
    args = parser.parse_args()

    with open(args.csv, newline="") as f:
        rows = list(csv.reader(f))
    header, data = rows[0], rows[1:]
    x = [float(r[0]) for r in data]
    columns = args.columns or header[1:]

    fig, ax = plt.subplots(figsize=(6, 4))
    for name in columns:
        i = header.index(name)
        ax.plot(x, [float(r[i]) for r in data], label=name)
    ax.axhline(0.0, color="grey", linewidth=0.5)
    ax.set_xlabel(header[0])
    ax.legend()
    fig.tight_layout()
    fig.savefig(args.output)


if __name__ == "__main__":
    main()
